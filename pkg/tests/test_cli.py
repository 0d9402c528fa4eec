import json

import pytest

from tpgl.cli import main, parse_matrix_text

MEMBER_2 = "2\n3/2 1/2\n1/2 3/2\n"
LOWER_3 = "3\n1 0 0\n2 1 0\n1 2 1\n"


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestParsing:
    def test_fraction_tokens(self):
        from fractions import Fraction as F
        m = parse_matrix_text("2\n1/2 -3\n0 7/3\n")
        assert m.entries[0][0] == F(1, 2)
        assert m.entries[0][1] == -3
        assert m.entries[1][1] == F(7, 3)

    def test_bad_counts(self):
        from tpgl.cli import InputError
        with pytest.raises(InputError):
            parse_matrix_text("2\n1 2 3\n")
        with pytest.raises(InputError):
            parse_matrix_text("x\n1\n")
        with pytest.raises(InputError):
            parse_matrix_text("2\n1 2 3 1/0\n")


class TestCommands:
    def test_check_member(self, tmp_path, capsys):
        assert main(["check", write(tmp_path, "m.txt", MEMBER_2)]) == 0
        assert "totally positive: yes" in capsys.readouterr().out

    def test_check_nonmember_reports_witness(self, tmp_path, capsys):
        path = write(tmp_path, "m.txt", "2\n1 0\n0 1\n")
        assert main(["check", path]) == 0
        out = capsys.readouterr().out
        assert "totally positive: no" in out
        assert "rows [1] cols [2]" in out

    def test_check_missing_file_is_input_error(self, capsys):
        assert main(["check", "/nonexistent/m.txt"]) == 2

    def test_check_malformed_is_input_error(self, tmp_path, capsys):
        assert main(["check", write(tmp_path, "m.txt", "2\n1 2\n")]) == 2

    def test_tilde_roundtrip(self, tmp_path, capsys):
        path = write(tmp_path, "u.txt", "3\n1 0 0\n-2 1 0\n1 -2 1\n")
        assert main(["tilde", path]) == 0
        out = capsys.readouterr().out
        assert parse_matrix_text(out) == parse_matrix_text(
            "3\n1 -2/3 1\n0 1 -2\n0 0 1\n")

    def test_tilde_rejects_bad_input(self, tmp_path, capsys):
        # a lower-unitriangular matrix whose inverse is not totally positive
        path = write(tmp_path, "u.txt", "2\n1 0\n1 1\n")
        assert main(["tilde", path]) == 2

    def test_intersect(self, tmp_path, capsys):
        path = write(tmp_path, "u.txt", LOWER_3)
        assert main(["intersect", path, path]) == 0
        frame = parse_matrix_text(capsys.readouterr().out)
        assert frame == parse_matrix_text(
            "3\n1 -2/3 1/10\n2 -1/3 -1/5\n1 4/3 3/10\n")

    def test_pi(self, tmp_path, capsys):
        assert main(["pi", write(tmp_path, "m.txt", MEMBER_2)]) == 0
        out = capsys.readouterr().out
        assert "eigenvalues (exact): 2 1" in out

    def test_suite_passes(self, capsys):
        assert main(["suite", "--n", "2", "--seed", "1", "--samples", "2"]) == 0
        out = capsys.readouterr().out
        assert "checks passed" in out

    def test_conjecture_deterministic_files(self, tmp_path):
        flags = ["conjecture", "--part", "a", "--n", "2", "--seed", "5",
                 "--samples", "64"]
        out1, out2 = str(tmp_path / "r1.json"), str(tmp_path / "r2.json")
        assert main(flags + ["--out", out1]) == 0
        assert main(flags + ["--out", out2]) == 0
        assert (tmp_path / "r1.json").read_bytes() == (tmp_path / "r2.json").read_bytes()

    def test_conjecture_part_b_and_report_conversion(self, tmp_path):
        out = str(tmp_path / "b.json")
        assert main(["conjecture", "--part", "b", "--n", "2", "--seed", "5",
                     "--samples", "40", "--p-tol", "1/32", "--out", out]) == 0
        data = json.loads((tmp_path / "b.json").read_text())
        assert data["part"] == "b"
        csv_out = str(tmp_path / "b.csv")
        assert main(["report", "--in", out, "--format", "csv",
                     "--out", csv_out]) == 0
        assert (tmp_path / "b.csv").read_text().startswith("frame,")

    def test_report_missing_input(self, tmp_path):
        assert main(["report", "--in", str(tmp_path / "nope.json"),
                     "--format", "json", "--out", str(tmp_path / "o.json")]) == 2

    def test_conjecture_bad_grid(self, capsys):
        assert main(["conjecture", "--part", "a", "--n", "2", "--seed", "1",
                     "--samples", "4", "--grid", "oops"]) == 2
