"""Exact total positivity for GL_n.

Layers, bottom up: `linalg` (exact rational matrices), `pinning`
(Chevalley generators, positive parameterizations, membership scans),
`flags` (complete flags and their positive parts), `tori` (maximal tori
as diagonalizing frames), `pimap` (eigenflags and centralizer tori),
`gl_small` (closed-form GL_2/GL_3 oracles), and `explorer` (seeded
scans, minimal-threshold searches, property suite, reports).  The
minor-enumeration hot loops live in a compiled extension with a
pure-Python twin (`kernels.backend_name()` tells which is active).
"""
from tpgl.kernels import backend_name
from tpgl.linalg import MinorIndex, Rational, SquareMatrix, rat

__all__ = ["MinorIndex", "Rational", "SquareMatrix", "backend_name", "rat"]

__version__ = "0.1.0"
