"""Exact and floating-point linear algebra on small dense coordinate vectors.

Vectors are plain tuples of scalars. A scalar is either a ``Fraction``
(rational mode, exact) or a ``float`` (float64 mode). Mixing the two in one
operation promotes to float, which is the usual Python behaviour.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

Scalar = Union[Fraction, float]
Vector = tuple
Matrix = Sequence[Sequence[Scalar]]

RATIONAL = "rational"
FLOAT64 = "float64"
MODES = (RATIONAL, FLOAT64)

DEFAULT_FLOAT_TOL = 1e-8
# pivots smaller than this (relative to the matrix scale) count as zero
_PIVOT_EPS = 1e-11


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown scalar mode {mode!r}")
    return mode


def parse_scalar(text, mode: str = RATIONAL) -> Scalar:
    """Parse ``"p/q"``, an integer, or a decimal string into a scalar.

    Raises ``ValueError`` on malformed input, including a zero denominator.
    """
    check_mode(mode)
    if isinstance(text, bool):
        raise ValueError(f"not a scalar: {text!r}")
    if isinstance(text, float):
        value = Fraction(text) if mode == RATIONAL else text
        return value
    try:
        value = Fraction(text)
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator in {text!r}") from exc
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed scalar {text!r}") from exc
    return value if mode == RATIONAL else float(value)


def format_scalar(x: Scalar) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def to_mode(x: Scalar, mode: str) -> Scalar:
    if mode == RATIONAL:
        return x if isinstance(x, Fraction) else Fraction(x)
    return float(x)


def zero(mode: str) -> Scalar:
    return Fraction(0) if mode == RATIONAL else 0.0


def one(mode: str) -> Scalar:
    return Fraction(1) if mode == RATIONAL else 1.0


def mode_of(*vectors: Iterable[Scalar]) -> str:
    """``float64`` if any entry is a float, else ``rational``."""
    for v in vectors:
        for x in v:
            if isinstance(x, float):
                return FLOAT64
    return RATIONAL


def vector(entries: Iterable, mode: str = RATIONAL) -> Vector:
    return tuple(to_mode(x if not isinstance(x, str) else parse_scalar(x, mode), mode) for x in entries)


def zeros(n: int, mode: str = RATIONAL) -> Vector:
    return (zero(mode),) * n


def unit_vector(n: int, i: int, mode: str = RATIONAL) -> Vector:
    z, o = zero(mode), one(mode)
    return tuple(o if k == i else z for k in range(n))


def _same_length(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise DimensionError(f"length {len(u)} != {len(v)}")


def vadd(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    _same_length(u, v)
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    _same_length(u, v)
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: Scalar, v: Sequence[Scalar]) -> Vector:
    return tuple(c * a for a in v)


def vcombine(coeffs: Sequence[Scalar], vectors: Sequence[Sequence[Scalar]], n: int, mode: str = RATIONAL) -> Vector:
    out = list(zeros(n, mode))
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def max_abs(v: Iterable[Scalar]) -> Scalar:
    return max((abs(a) for a in v), default=Fraction(0))


def is_zero(v: Iterable[Scalar], tol: float = 0) -> bool:
    return all(abs(a) <= tol for a in v)


def matvec(M: Matrix, v: Sequence[Scalar]) -> Vector:
    if M and len(M[0]) != len(v):
        raise DimensionError(f"matrix has {len(M[0])} columns, vector has length {len(v)}")
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), zero(mode_of(row, v))) for row in M)


def rref(rows: Matrix, *, exact: bool | None = None) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row-echelon form and pivot columns.

    Exact elimination for rational input; partial pivoting with a relative
    zero threshold for float input.
    """
    if exact is None:
        exact = mode_of(*rows) == RATIONAL
    conv = Fraction if exact else float
    R = [[conv(a) for a in r] for r in rows]
    if not R:
        return R, []
    ncols = len(R[0])
    scale = max((abs(a) for r in R for a in r), default=0) if not exact else 0
    eps = _PIVOT_EPS * max(1.0, float(scale)) if not exact else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(R):
            break
        if exact:
            p = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        else:
            p = max(range(r, len(R)), key=lambda i: abs(R[i][c]))
            if abs(R[p][c]) <= eps:
                p = None
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        R[r] = [a / piv for a in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        if not exact:
            for i in range(len(R)):
                if i != r:
                    R[i][c] = 0.0
        pivots.append(c)
        r += 1
    return R[: len(pivots)] + [row for row in R[len(pivots):]], pivots


def nullspace(M: Matrix, ncols: int) -> list[Vector]:
    """Basis of {x : Mx = 0}, one vector per free column."""
    if not M:
        return [unit_vector(ncols, i) for i in range(ncols)]
    R, pivots = rref(M)
    mode = mode_of(*R)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = list(zeros(ncols, mode))
        x[f] = one(mode)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class AffineSubspace:
    """``basepoint + span(directions)``, or the empty set."""

    dim_ambient: int
    basepoint: Vector | None
    directions: tuple[Vector, ...] = ()
    _span: "Subspace | None" = field(default=None, compare=False, repr=False)

    @classmethod
    def empty_set(cls, n: int) -> "AffineSubspace":
        return cls(n, None, ())

    @property
    def empty(self) -> bool:
        return self.basepoint is None

    @property
    def dim(self) -> int:
        """Affine dimension; -1 for the empty set."""
        return -1 if self.empty else len(self.directions)

    @property
    def direction_space(self) -> "Subspace":
        if self._span is None:
            object.__setattr__(self, "_span", Subspace.span(self.directions, self.dim_ambient))
        return self._span

    def point(self, params: Sequence[Scalar]) -> Vector:
        if self.empty:
            raise ValueError("empty affine set has no points")
        if len(params) != len(self.directions):
            raise DimensionError(f"expected {len(self.directions)} parameters, got {len(params)}")
        return vadd(self.basepoint, vcombine(params, self.directions, self.dim_ambient, mode_of(self.basepoint)))

    def contains(self, v: Sequence[Scalar], tol: float = 0) -> bool:
        if self.empty:
            return False
        return subspace_contains(self.direction_space, vsub(v, self.basepoint), tol)

    def same_set(self, other: "AffineSubspace", tol: float = 0) -> bool:
        if self.empty or other.empty:
            return self.empty and other.empty
        return (
            self.direction_space.same_span(other.direction_space, tol)
            and self.contains(other.basepoint, tol)
        )


def solve_linear(M: Matrix, b: Sequence[Scalar]) -> AffineSubspace:
    """All solutions of ``M x = b``."""
    if len(M) != len(b):
        raise DimensionError(f"{len(M)} equations but right-hand side of length {len(b)}")
    if not M:
        raise DimensionError("cannot infer the number of unknowns from an empty system")
    ncols = len(M[0])
    if any(len(row) != ncols for row in M):
        raise DimensionError("ragged matrix")
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = rref(aug)
    mode = mode_of(*aug)
    if ncols in pivots:
        return AffineSubspace.empty_set(ncols)
    base = list(zeros(ncols, mode))
    for row, p in zip(R, pivots):
        base[p] = row[ncols]
    directions = nullspace([row[:ncols] for row in R], ncols) if R else nullspace([], ncols)
    return AffineSubspace(ncols, tuple(base), tuple(directions))


@dataclass(frozen=True)
class Subspace:
    """A linear subspace held by its reduced row-echelon basis.

    In rational mode the basis is canonical, so ``==`` decides equality of
    spans. In float mode use ``same_span`` with a tolerance.
    """

    dim_ambient: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...] = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Scalar]], n: int) -> "Subspace":
        rows = [tuple(v) for v in vectors]
        for v in rows:
            if len(v) != n:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {n}")
        if not rows:
            return cls(n, (), ())
        R, pivots = rref(rows)
        return cls(n, tuple(tuple(r) for r in R[: len(pivots)]), tuple(pivots))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int, mode: str = RATIONAL) -> "Subspace":
        return cls(n, tuple(unit_vector(n, i, mode) for i in range(n)), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def mode(self) -> str:
        return mode_of(*self.basis)

    def contains(self, v: Sequence[Scalar], tol: float = 0) -> bool:
        return subspace_contains(self, v, tol)

    def contains_space(self, other: "Subspace", tol: float = 0) -> bool:
        return all(self.contains(v, tol) for v in other.basis)

    def same_span(self, other: "Subspace", tol: float = 0) -> bool:
        if self.dim_ambient != other.dim_ambient:
            return False
        if tol == 0 and self.mode == RATIONAL and other.mode == RATIONAL:
            return self == other
        return self.dim == other.dim and self.contains_space(other, tol) and other.contains_space(self, tol)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)


def subspace_sum(*spaces: Subspace) -> Subspace:
    if not spaces:
        raise ValueError("need at least one subspace")
    n = spaces[0].dim_ambient
    for s in spaces:
        if s.dim_ambient != n:
            raise DimensionError(f"ambient dimensions {n} and {s.dim_ambient} differ")
    return Subspace.span([v for s in spaces for v in s.basis], n)


def projection_residual(S: Subspace, v: Sequence[Scalar]) -> Scalar:
    """Euclidean norm of ``v`` minus its orthogonal projection onto ``S``."""
    if len(v) != S.dim_ambient:
        raise DimensionError(f"vector of length {len(v)} in ambient dimension {S.dim_ambient}")
    if S.mode == RATIONAL and mode_of(v) == RATIONAL:
        r = list(v)
        for row, p in zip(S.basis, S.pivots):
            c = r[p]
            if c:
                r = [a - c * b for a, b in zip(r, row)]
        # exact residual is only ever compared against zero
        return max_abs(r)
    x = np.asarray([float(a) for a in v])
    if S.dim == 0:
        return float(np.linalg.norm(x))
    B = np.asarray([[float(a) for a in row] for row in S.basis]).T
    Q, _ = np.linalg.qr(B)
    return float(np.linalg.norm(x - Q @ (Q.T @ x)))


def subspace_contains(S: Subspace, v: Sequence[Scalar], tol: float = 0) -> bool:
    """True iff ``v`` lies in ``S`` up to ``tol``.

    Exact when both ``S`` and ``v`` are rational; ``tol`` must then be zero.
    """
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    exact = S.mode == RATIONAL and mode_of(v) == RATIONAL
    if exact and tol != 0:
        raise ValueError("rational containment is exact; pass tol=0")
    return projection_residual(S, v) <= tol


def image_space(f, S: Subspace) -> Subspace:
    """Span of ``f(b)`` over the basis of ``S``, for a linear map ``f``."""
    return Subspace.span([f(b) for b in S.basis], S.dim_ambient)
