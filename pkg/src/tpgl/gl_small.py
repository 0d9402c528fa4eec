"""Closed-form oracles for GL_2 and GL_3 torus intersections.

Everything here is an explicit rational formula, independent of the
generic flag/torus machinery, so the two can be cross-checked exactly.

For GL_3 the source of the formulas recorded several display variants
per matrix entry, and the variants are not mutually consistent: some
omit a 1/(A*C) scale on the middle term, one swaps a factor, one mixes
the two denominators, and the four inverse-entry displays were computed
with the conjugation S^-1 d S instead of S d S^-1 (they are not entries
of the inverse).  The functions used by this package (`gl3_g_entries`,
`gl3_conditions`) implement the forms reconciled against the exact
products; every recorded display variant is kept in
`ENTRY_FORM_VARIANTS`/`INVERSE_FORM_VARIANTS`/`CONDITION_THRESHOLD_VARIANTS`
and `reconciliation_log` reports which variants are identities and which
are not, with witnesses.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from tpgl.linalg import SquareMatrix, rat
from tpgl.pinning import is_in_G_pos
from tpgl.sampling import SplitMix64, log_uniform_fraction


@dataclass(frozen=True)
class GL2Params:
    """Positive parameters (a, c) of a GL_2 flag pair: the positive flag
    is reached by the lower generator with parameter a, the negative one
    with parameter c."""

    a: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", rat(self.a))
        object.__setattr__(self, "c", rat(self.c))
        if self.a <= 0 or self.c <= 0:
            raise ValueError("parameters must be positive")


def gl2_S(p: GL2Params) -> SquareMatrix:
    """Closed-form torus frame for GL_2."""
    a, c = p.a, p.c
    return SquareMatrix.from_rows([
        [1, Fraction(-1) / (a + c)],
        [a, c / (a + c)],
    ])


def gl2_torus_matrix(p: GL2Params, t, s) -> SquareMatrix:
    """The general point S diag(t, s) S^-1 of the GL_2 torus, closed form."""
    t, s = rat(t), rat(s)
    if t == 0 or s == 0:
        raise ValueError("torus coordinates must be nonzero")
    a, c = p.a, p.c
    den = a + c
    return SquareMatrix.from_rows([
        [(t * c + s * a) / den, (t - s) / den],
        [a * c * (t - s) / den, (t * a + s * c) / den],
    ])


def gl2_membership(p: GL2Params, t, s) -> bool:
    """Total positivity of gl2_torus_matrix(p, t, s): exactly t/s > 1."""
    t, s = rat(t), rat(s)
    if t <= 0 or s <= 0:
        raise ValueError("torus coordinates must be positive")
    return t / s > 1


@dataclass(frozen=True)
class GL3Params:
    """Positive parameters (a, b, c) and (ap, bp, cp) of a GL_3 flag pair.

    (a, b, c) fill the lower-unitriangular representative of the positive
    flag ((2,1), (3,1), (3,2) entries), and (ap, bp, cp) that of the
    negative flag's inverse; total positivity of those representatives
    requires a*c - b > 0 and ap*cp - bp > 0.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    ap: Fraction
    bp: Fraction
    cp: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "ap", "bp", "cp"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if any(getattr(self, name) <= 0 for name in ("a", "b", "c", "ap", "bp", "cp")):
            raise ValueError("parameters must be positive")
        if self.u_minor <= 0 or self.v_minor <= 0:
            raise ValueError("need a*c - b > 0 and ap*cp - bp > 0")
        if self.A <= 0 or self.C <= 0:
            raise ValueError("derived scales must be positive")

    @property
    def u_minor(self) -> Fraction:
        return self.a * self.c - self.b

    @property
    def v_minor(self) -> Fraction:
        return self.ap * self.cp - self.bp

    @property
    def A(self) -> Fraction:
        """Corner entry of u^-1 v^-1; the third-column scale of the frame."""
        return self.a * self.c + self.ap * self.c + self.ap * self.cp - self.b - self.bp

    @property
    def C(self) -> Fraction:
        """Trailing 2x2 minor of u^-1 v^-1; the second-column scale."""
        return self.a * self.cp + self.b + self.bp


def gl3_u(p: GL3Params) -> SquareMatrix:
    return SquareMatrix.from_rows([[1, 0, 0], [p.a, 1, 0], [p.b, p.c, 1]])


def gl3_v(p: GL3Params) -> SquareMatrix:
    return SquareMatrix.from_rows([[1, 0, 0], [p.ap, 1, 0], [p.bp, p.cp, 1]])


def gl3_S(p: GL3Params) -> SquareMatrix:
    """Closed-form GL_3 torus frame u * tilde(u^-1 v^-1)."""
    a, b, c, ap, bp, cp = p.a, p.b, p.c, p.ap, p.bp, p.cp
    A, C = p.A, p.C
    return SquareMatrix.from_rows([
        [1, -(c + cp) / C, 1 / A],
        [a, (-a * c + b + bp) / C, -ap / A],
        [b, (a * c * cp - b * cp + bp * c) / C, (ap * cp - bp) / A],
    ])


def gl3_S_inverse(p: GL3Params) -> SquareMatrix:
    """Closed-form inverse of gl3_S (gl3_S * gl3_S_inverse = identity)."""
    a, b, c, ap, bp, cp = p.a, p.b, p.c, p.ap, p.bp, p.cp
    A, C = p.A, p.C
    return SquareMatrix.from_rows([
        [bp / C, cp / C, 1 / C],
        [-(a * ap * cp - a * bp + ap * b) / A, (ap * cp - b - bp) / A, (a + ap) / A],
        [a * c - b, -c, 1],
    ])


def gl3_g_entries(p: GL3Params, t, s, r) -> SquareMatrix:
    """The general torus point S diag(t, s, r) S^-1, assembled from the
    reconciled per-entry closed forms (no matrix product involved)."""
    t, s, r = rat(t), rat(s), rat(r)
    if t == 0 or s == 0 or r == 0:
        raise ValueError("torus coordinates must be nonzero")
    a, b, c, ap, bp, cp = p.a, p.b, p.c, p.ap, p.bp, p.cp
    A, C = p.A, p.C
    um, vm = p.u_minor, p.v_minor
    g11 = bp * t / C + (c + cp) * (a * ap * cp - a * bp + ap * b) * s / (A * C) + um * r / A
    g12 = cp * (t - s) / C + c * (s - r) / A
    g13 = (t - s) / C - (s - r) / A
    g21 = a * bp * (t - s) / C + ap * um * (s - r) / A
    g22 = a * cp * (t - s) / C + (um + vm) * s / A + ap * c * r / A
    g23 = a * (t - s) / C + ap * (s - r) / A
    g31 = b * bp * (t - s) / C - um * vm * (s - r) / A
    g32 = b * cp * (t - s) / C + c * vm * (s - r) / A
    g33 = b * t / C + (a * c * cp - b * cp + bp * c) * (a + ap) * s / (A * C) + vm * r / A
    return SquareMatrix.from_rows([[g11, g12, g13], [g21, g22, g23], [g31, g32, g33]])


def gl3_conditions(p: GL3Params, t, s, r) -> tuple[bool, bool]:
    """The two corner-condition conjunctions characterizing total
    positivity of gl3_g_entries(p, t, s, r) for t > s > r > 0.

    Condition (a) is positivity of the (1,3) and (3,1) entries, written
    as thresholds on (t-s)/(s-r).  Condition (b) is positivity of the
    (1,3) and (3,1) entries of the inverse, written as thresholds on
    t(s-r)/(r(t-s)); the thresholds are the reconciled ones (A/C and its
    minor-weighted partner), not the unscaled display variants, which
    `reconciliation_log` shows fail to match the inverse.
    """
    t, s, r = rat(t), rat(s), rat(r)
    if not t > s > r > 0:
        raise ValueError("require t > s > r > 0")
    A, C = p.A, p.C
    um, vm = p.u_minor, p.v_minor
    ratio = (t - s) / (s - r)
    inv_ratio = t * (s - r) / (r * (t - s))
    cond_a = ratio > C / A and ratio > um * vm * C / (p.b * p.bp * A)
    cond_b = inv_ratio > A / C and inv_ratio > p.b * p.bp * A / (um * vm * C)
    return cond_a, cond_b


def gl3_membership(p: GL3Params, t, s, r) -> bool:
    """Total positivity of the closed-form torus point, via the ordering
    requirement plus both corner conditions."""
    t, s, r = rat(t), rat(s), rat(r)
    if t <= 0 or s <= 0 or r <= 0:
        raise ValueError("torus coordinates must be positive")
    if not t > s > r:
        return False
    cond_a, cond_b = gl3_conditions(p, t, s, r)
    return cond_a and cond_b


def random_gl3_params(rng: SplitMix64, lo, hi) -> GL3Params:
    """Rejection-sample admissible parameters log-uniformly from [lo, hi]."""
    lo, hi = rat(lo), rat(hi)
    while True:
        draws = [log_uniform_fraction(rng, lo, hi) for _ in range(6)]
        a, b, c, ap, bp, cp = draws
        if a * c - b > 0 and ap * cp - bp > 0:
            return GL3Params(a, b, c, ap, bp, cp)


# --- reconciliation audit -------------------------------------------------
#
# Each recorded display variant is a callable of (p, t, s, r).  The audit
# evaluates every variant against the authoritative product value and
# reports agreement; the identities here are frame-independent, so per-
# sample agreement over admissible samples is decisive.

EntryForm = Callable[[GL3Params, Fraction, Fraction, Fraction], Fraction]


def _e(p: GL3Params):
    return (p.a, p.b, p.c, p.ap, p.bp, p.cp, p.A, p.C, p.u_minor, p.v_minor)


ENTRY_FORM_VARIANTS: dict[str, list[tuple[str, EntryForm]]] = {
    "g11": [
        ("display-1", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            bp * t / C + (c + cp) * (a * ap * cp - a * bp + a * bp) * s + um * r / A)(*_e(p))),
    ],
    "g12": [
        ("display-1", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            cp * t / C - (c + cp) * (ap * cp - b - bp) * s - c * r / A)(*_e(p))),
        ("display-2", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            cp * (t - s) / C + c * (s - r) / A)(*_e(p))),
    ],
    "g13": [
        ("display-1", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            t / C - (a + ap) * (c + cp) * s + r / A)(*_e(p))),
        ("display-2", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            (t - s) / C - (s - r) / A)(*_e(p))),
    ],
    "g21": [
        ("display-1", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            a * bp * t / C - (b + bp - a * c) * (a * ap * cp - a * bp + ap * b) * s
            - ap * um * r / A)(*_e(p))),
        ("display-2", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            a * bp * (t - s) / C + ap * um * (s - r) / A)(*_e(p))),
    ],
    "g22": [
        ("display-1", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            a * cp * t / C + (b + bp - a * c) * (ap * cp - b - bp) * s + ap * c * r / A)(*_e(p))),
        ("display-2", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            a * cp * (t - s) / C + (vm + um) * (b + bp + a * cp) * s + ap * c * r / A)(*_e(p))),
    ],
    "g23": [
        ("display-1", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            a * t / C + (b + bp - a * c) * (a + ap) * s - ap * r / A)(*_e(p))),
        ("display-2", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            a * (t - s) / C + ap * (s - r) / A)(*_e(p))),
    ],
    "g31": [
        ("display-1", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            b * bp * t / C - (a * c * cp - b * cp + bp * c) * (a * ap * cp - a * bp + ap * b) * s
            + um * vm * r / A)(*_e(p))),
        ("display-2", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            b * bp * (t - s) / C - um * vm * (s - r) / A)(*_e(p))),
    ],
    "g32": [
        ("display-1", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            b * cp * t / A + (a * c * cp - b * cp + bp * c) * (ap * cp - b - bp) * s
            - c * vm * r / A)(*_e(p))),
        ("display-2", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            b * cp * (t - s) / A + c * vm * (s - r) / A)(*_e(p))),
    ],
    "g33": [
        ("display-1", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            b * t / C + (a * c * cp - b * cp + bp * c) * (a + ap) * s + vm * r / A)(*_e(p))),
    ],
}

INVERSE_FORM_VARIANTS: dict[str, list[tuple[str, EntryForm]]] = {
    "inv11": [
        ("display-1", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            bp / (C * t) + a * cp / (C * s) + b / (C * r))(*_e(p))),
    ],
    "inv13": [
        ("display-1", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            bp / (A * C * t) - ap * c / (A * C * s) + vm / (A * C * r))(*_e(p))),
        ("display-2", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            vm * (1 / r - 1 / s) / (A * C) - bp * (1 / s - 1 / t) / (A * C))(*_e(p))),
    ],
    "inv31": [
        ("display-1", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            um / t - a * c / s + b / r)(*_e(p))),
        ("display-2", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            b * (1 / r - 1 / s) - um * (1 / s - 1 / t))(*_e(p))),
    ],
    "inv33": [
        ("display-1", lambda p, t, s, r: (lambda a, b, c, ap, bp, cp, A, C, um, vm:
            um / (A * t) + ap * c / (A * s) + vm / (A * r))(*_e(p))),
    ],
}

# thresholds T for "inverse corner > 0  iff  t(s-r)/(r(t-s)) > T"
CONDITION_THRESHOLD_VARIANTS: dict[str, list[tuple[str, Callable[[GL3Params], Fraction]]]] = {
    "inv13": [
        ("display", lambda p: p.bp / p.v_minor),
        ("reconciled", lambda p: p.A / p.C),
    ],
    "inv31": [
        ("display", lambda p: p.u_minor / p.b),
        ("reconciled", lambda p: p.b * p.bp * p.A / (p.u_minor * p.v_minor * p.C)),
    ],
}

_INV_POS = {"inv11": (0, 0), "inv13": (0, 2), "inv31": (2, 0), "inv33": (2, 2)}


def gl3_product_oracle(p: GL3Params, t, s, r) -> SquareMatrix:
    """Authoritative value: the literal matrix product S diag S^-1."""
    return gl3_S(p) * SquareMatrix.diagonal([rat(t), rat(s), rat(r)]) * gl3_S_inverse(p)


def reconcile_closed_forms(p: GL3Params, t, s, r) -> list[dict]:
    """Evaluate every recorded display variant at one sample point against
    the product oracle (and, for inverse entries, against the true
    inverse).  Returns one record per variant."""
    t, s, r = rat(t), rat(s), rat(r)
    oracle = gl3_product_oracle(p, t, s, r)
    inv_oracle = gl3_product_oracle(p, 1 / t, 1 / s, 1 / r)
    records = []
    pos = {"g11": (0, 0), "g12": (0, 1), "g13": (0, 2),
           "g21": (1, 0), "g22": (1, 1), "g23": (1, 2),
           "g31": (2, 0), "g32": (2, 1), "g33": (2, 2)}
    for name, variants in ENTRY_FORM_VARIANTS.items():
        i, j = pos[name]
        expected = oracle.entries[i][j]
        for label, form in variants:
            records.append({
                "entry": name, "variant": label,
                "agrees": form(p, t, s, r) == expected,
            })
    for name, variants in INVERSE_FORM_VARIANTS.items():
        i, j = _INV_POS[name]
        expected = inv_oracle.entries[i][j]
        for label, form in variants:
            records.append({
                "entry": name, "variant": label,
                "agrees": form(p, t, s, r) == expected,
            })
    return records


def _threshold_agreement(p: GL3Params, t, s, r) -> list[dict]:
    """Check each recorded corner threshold against the sign of the true
    inverse corner at one ordered sample (t > s > r)."""
    inv_oracle = gl3_product_oracle(p, 1 / t, 1 / s, 1 / r)
    inv_ratio = t * (s - r) / (r * (t - s))
    records = []
    for name, variants in CONDITION_THRESHOLD_VARIANTS.items():
        i, j = _INV_POS[name]
        truth = inv_oracle.entries[i][j] > 0
        for label, threshold in variants:
            records.append({
                "entry": name, "variant": label,
                "agrees": (inv_ratio > threshold(p)) == truth,
            })
    return records


def reconciliation_log(seed: int, count: int) -> dict:
    """Aggregate variant-vs-oracle agreement over `count` seeded samples.

    The returned mapping has one record per recorded variant with the
    number of samples checked, the number of disagreements, the final
    verdict ("agrees" only when no sample disagreed), and, for flagged
    variants, the first witnessing sample.  Frame-level checks (S,
    S_inverse against the construction product and exact inversion) are
    included as entries "S" and "S_inverse".
    """
    from tpgl.flags import tilde_map
    from tpgl.linalg import inverse

    rng = SplitMix64(seed)
    lo, hi = Fraction(1, 8), Fraction(8)
    tally: dict[tuple[str, str], list] = {}

    def frac_str(x):
        return f"{x.numerator}/{x.denominator}"

    def record(entry, variant, agrees, witness):
        slot = tally.setdefault((entry, variant), [0, 0, None])
        slot[0] += 1
        if not agrees:
            slot[1] += 1
            if slot[2] is None:
                slot[2] = witness

    for _ in range(count):
        p = random_gl3_params(rng, lo, hi)
        draws = sorted(
            (log_uniform_fraction(rng, Fraction(1, 64), Fraction(64)) for _ in range(3)),
            reverse=True)
        if draws[0] == draws[1] or draws[1] == draws[2]:
            continue
        t, s, r = draws
        witness = {
            "params": [frac_str(x) for x in (p.a, p.b, p.c, p.ap, p.bp, p.cp)],
            "point": [frac_str(x) for x in (t, s, r)],
        }
        for rec in reconcile_closed_forms(p, t, s, r):
            record(rec["entry"], rec["variant"], rec["agrees"], witness)
        for rec in _threshold_agreement(p, t, s, r):
            record(rec["entry"], rec["variant"], rec["agrees"], witness)
        frame_product = gl3_u(p) * tilde_map(inverse(gl3_u(p)) * inverse(gl3_v(p)), check=False)
        record("S", "display", gl3_S(p) == frame_product, witness)
        record("S_inverse", "display", gl3_S_inverse(p) == inverse(gl3_S(p)), witness)
    entries = {
        f"{entry}:{variant}": {
            "checked": checked,
            "disagreements": bad,
            "verdict": "agrees" if bad == 0 else "disagrees",
            "witness": witness,
        }
        for (entry, variant), (checked, bad, witness) in sorted(tally.items())
    }
    return {"seed": seed, "samples": count, "forms": entries}


# --- eigenvalue-region probe ----------------------------------------------


@dataclass(frozen=True)
class GL3RegionReport:
    """Which ordered eigenvalue triples are realized on a fixed positive
    flag, across the sampled second-flag parameters.

    `base_bound` is (a*c - b)/b; `excluded_below_bound` lists the
    unrealized triples whose inverse-corner ratio does not exceed it
    (the prime-free necessary bound displayed for this region, valid in
    the small-second-flag limit)."""

    base: tuple[Fraction, Fraction, Fraction]
    base_bound: Fraction
    realized: tuple[tuple[Fraction, Fraction, Fraction], ...]
    unrealized: tuple[tuple[Fraction, Fraction, Fraction], ...]
    excluded_below_bound: tuple[tuple[Fraction, Fraction, Fraction], ...]
    skipped_primes: int
    skipped_triples: int


def gl3_eigen_region_probe(
    a, b, c, samples: Iterable[tuple[Sequence, Sequence]]
) -> GL3RegionReport:
    """Probe the eigenvalue region of the fixed positive flag (a, b, c).

    `samples` yields pairs ((ap, bp, cp), (t, s, r)).  Every sampled
    ordered triple is tested against every sampled admissible second
    flag; a triple is realized when some combination yields a totally
    positive torus point (checked by the exhaustive minor scan, not by
    the closed-form conditions).
    """
    a, b, c = rat(a), rat(b), rat(c)
    if a * c - b <= 0:
        raise ValueError("base parameters need a*c - b > 0")
    primes: list[tuple[Fraction, Fraction, Fraction]] = []
    triples: list[tuple[Fraction, Fraction, Fraction]] = []
    skipped_primes = 0
    skipped_triples = 0
    for prime, triple in samples:
        ap, bp, cp = (rat(x) for x in prime)
        if min(ap, bp, cp) > 0 and ap * cp - bp > 0:
            primes.append((ap, bp, cp))
        else:
            skipped_primes += 1
        t, s, r = (rat(x) for x in triple)
        if t > s > r > 0:
            triples.append((t, s, r))
        else:
            skipped_triples += 1
    realized = []
    unrealized = []
    for t, s, r in triples:
        hit = False
        for ap, bp, cp in primes:
            p = GL3Params(a, b, c, ap, bp, cp)
            if is_in_G_pos(gl3_g_entries(p, t, s, r)):
                hit = True
                break
        (realized if hit else unrealized).append((t, s, r))
    bound = (a * c - b) / b
    excluded = tuple(
        (t, s, r) for t, s, r in unrealized
        if t * (s - r) / (r * (t - s)) <= bound)
    return GL3RegionReport(
        base=(a, b, c),
        base_bound=bound,
        realized=tuple(realized),
        unrealized=tuple(unrealized),
        excluded_below_bound=excluded,
        skipped_primes=skipped_primes,
        skipped_triples=skipped_triples,
    )
