"""Structure-constant representation of 7-tuples and the model families.

A 7-tuple here is a finite-dimensional vector space carrying three bilinear
products: the product ``sharp``, the left product ``left`` and the right
product ``right``, plus a distinguished identity vector. Each product is a
:class:`StructureTensor` with ``b_i * b_j = sum_k c[i, j, k] b_k``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from . import linalg
from .linalg import RATIONAL, Scalar, Vector


class Op(str, Enum):
    SHARP = "sharp"
    LEFT = "left"
    RIGHT = "right"


class ModelError(ValueError):
    """A model failed its construction-time law check."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ParentMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StructureTensor:
    """Sparse multiplication table of one bilinear product."""

    dim: int
    entries: Mapping[tuple[int, int, int], Scalar]
    _rows: dict = field(init=False, repr=False, compare=False)
    _float: bool = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        clean = {}
        rows: dict[int, dict[int, list]] = {}
        for (i, j, k), c in sorted(self.entries.items()):
            for idx in (i, j, k):
                if not 0 <= idx < self.dim:
                    raise IndexError(f"index {idx} out of range for dimension {self.dim}")
            if c:
                clean[(i, j, k)] = c
                rows.setdefault(i, {}).setdefault(j, []).append((k, c))
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_float", any(isinstance(c, float) for c in clean.values()))

    @classmethod
    def from_bilinear(cls, dim: int, f: Callable[[Vector, Vector], Sequence[Scalar]], mode: str = RATIONAL):
        """Tabulate a bilinear map by evaluating it on basis pairs."""
        basis = [linalg.unit_vector(dim, i, mode) for i in range(dim)]
        entries = {}
        for i in range(dim):
            for j in range(dim):
                for k, c in enumerate(f(basis[i], basis[j])):
                    if c:
                        entries[(i, j, k)] = c
        return cls(dim, entries)

    @classmethod
    def zero(cls, dim: int) -> "StructureTensor":
        return cls(dim, {})

    def __eq__(self, other):
        return isinstance(other, StructureTensor) and self.dim == other.dim and self.entries == other.entries

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.entries.items()))))

    def __getitem__(self, key: tuple[int, int, int]) -> Scalar:
        return self.entries.get(key, 0)

    @property
    def mode(self) -> str:
        return linalg.mode_of(self.entries.values())

    def apply(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise linalg.DimensionError(f"operands of length {len(x)}, {len(y)} for dimension {self.dim}")
        out = [Fraction(0)] * self.dim
        nzy = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self._rows.get(i)
            if row is None:
                continue
            for j, b in nzy:
                for k, c in row.get(j, ()):
                    out[k] += a * b * c
        if self._float or linalg.mode_of(x, y) == linalg.FLOAT64:
            return tuple(float(v) for v in out)
        return tuple(out)

    __call__ = apply

    def left_matrix(self, x: Sequence[Scalar]) -> list[list[Scalar]]:
        """Matrix of ``y -> x * y``."""
        n = self.dim
        cols = [self.apply(x, linalg.unit_vector(n, j)) for j in range(n)]
        return [[cols[j][k] for j in range(n)] for k in range(n)]

    def right_matrix(self, y: Sequence[Scalar]) -> list[list[Scalar]]:
        """Matrix of ``x -> x * y``."""
        n = self.dim
        cols = [self.apply(linalg.unit_vector(n, i), y) for i in range(n)]
        return [[cols[i][k] for i in range(n)] for k in range(n)]

    def transpose(self) -> "StructureTensor":
        return StructureTensor(self.dim, {(j, i, k): c for (i, j, k), c in self.entries.items()})

    def __add__(self, other: "StructureTensor") -> "StructureTensor":
        return self._combine(other, 1)

    def __sub__(self, other: "StructureTensor") -> "StructureTensor":
        return self._combine(other, -1)

    def _combine(self, other, sign):
        if other.dim != self.dim:
            raise linalg.DimensionError(f"dimensions {self.dim} and {other.dim} differ")
        out = dict(self.entries)
        for key, c in other.entries.items():
            out[key] = out.get(key, 0) + sign * c
        return StructureTensor(self.dim, out)

    def to_mode(self, mode: str) -> "StructureTensor":
        return StructureTensor(self.dim, {k: linalg.to_mode(c, mode) for k, c in self.entries.items()})

    def max_abs_entry(self) -> Scalar:
        return linalg.max_abs(self.entries.values())

    def as_quadruples(self) -> list[list]:
        return [[i, j, k, linalg.format_scalar(c)] for (i, j, k), c in sorted(self.entries.items())]

    @classmethod
    def from_quadruples(cls, dim: int, quads: Iterable[Sequence], mode: str = RATIONAL) -> "StructureTensor":
        entries: dict = {}
        for q in quads:
            i, j, k, c = q
            key = (int(i), int(j), int(k))
            entries[key] = entries.get(key, 0) + linalg.parse_scalar(c, mode)
        return cls(dim, entries)


@dataclass(frozen=True, eq=False)
class SevenTuple:
    """A vector space with the products sharp, left and right and an identity."""

    dim: int
    sharp: StructureTensor
    left: StructureTensor
    right: StructureTensor
    identity: Vector
    mode: str = RATIONAL
    labels: tuple[str, ...] | None = None
    model: Mapping | None = None

    def __post_init__(self):
        linalg.check_mode(self.mode)
        for t in (self.sharp, self.left, self.right):
            if t.dim != self.dim:
                raise linalg.DimensionError(f"tensor of dimension {t.dim} in a {self.dim}-dimensional 7-tuple")
        if len(self.identity) != self.dim:
            raise linalg.DimensionError("identity vector has the wrong length")
        object.__setattr__(self, "identity", linalg.vector(self.identity, self.mode))
        if self.labels is not None and len(self.labels) != self.dim:
            raise linalg.DimensionError("one label per basis vector required")

    def __eq__(self, other):
        return (
            isinstance(other, SevenTuple)
            and self.dim == other.dim
            and self.mode == other.mode
            and (self.sharp, self.left, self.right) == (other.sharp, other.left, other.right)
            and self.identity == other.identity
        )

    __hash__ = object.__hash__

    def product(self, op: Op | str) -> StructureTensor:
        return {Op.SHARP: self.sharp, Op.LEFT: self.left, Op.RIGHT: self.right}[Op(op)]

    def tensors(self) -> tuple[StructureTensor, StructureTensor, StructureTensor]:
        return self.sharp, self.left, self.right

    def basis(self, i: int) -> Vector:
        return linalg.unit_vector(self.dim, i, self.mode)

    def basis_vectors(self) -> list[Vector]:
        return [self.basis(i) for i in range(self.dim)]

    def zero_vector(self) -> Vector:
        return linalg.zeros(self.dim, self.mode)

    def element(self, coords) -> "Element":
        return Element(linalg.vector(coords, self.mode), self)

    def with_products(self, **changes) -> "SevenTuple":
        return replace(self, **changes)

    def to_mode(self, mode: str) -> "SevenTuple":
        return replace(
            self,
            sharp=self.sharp.to_mode(mode),
            left=self.left.to_mode(mode),
            right=self.right.to_mode(mode),
            identity=tuple(linalg.to_mode(c, mode) for c in self.identity),
            mode=mode,
        )

    def max_abs_entry(self) -> Scalar:
        return max(t.max_abs_entry() for t in self.tensors())

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"b{i}"

    def describe(self, v: Sequence[Scalar]) -> str:
        """Render a vector as a combination of basis labels."""
        terms = []
        for i, c in enumerate(v):
            if c:
                s = linalg.format_scalar(c)
                terms.append(self.label(i) if c == 1 else f"{s}*{self.label(i)}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class Element:
    """A coordinate vector tied to the 7-tuple it lives in."""

    coords: Vector
    parent: SevenTuple = field(compare=False, repr=False)

    def __post_init__(self):
        if len(self.coords) != self.parent.dim:
            raise linalg.DimensionError("coordinate vector length differs from the ambient dimension")

    def _check(self, other: "Element") -> None:
        if other.parent is not self.parent:
            raise ParentMismatch("elements belong to different 7-tuples")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(linalg.vadd(self.coords, other.coords), self.parent)

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(linalg.vsub(self.coords, other.coords), self.parent)

    def __neg__(self) -> "Element":
        return Element(linalg.vscale(-1, self.coords), self.parent)

    def __rmul__(self, c: Scalar) -> "Element":
        return Element(linalg.vscale(c, self.coords), self.parent)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self):
        return self.parent.describe(self.coords)


def mul(A: SevenTuple, op: Op | str, x: Element, y: Element) -> Element:
    """``x * y`` under one of the three products of ``A``."""
    for e in (x, y):
        if e.parent is not A:
            raise ParentMismatch("operand does not belong to this 7-tuple")
    return Element(A.product(op).apply(x.coords, y.coords), A)


# --- upper-triangular matrices ------------------------------------------------


@dataclass(frozen=True)
class PhiModelSpec:
    """Upper-triangular ``n x n`` matrices with the diagonal projection."""

    n: int

    @property
    def dim(self) -> int:
        return self.n * (self.n + 1) // 2


def upper_triangular_positions(n: int) -> list[tuple[int, int]]:
    """Row-major positions ``(r, c)`` with ``r <= c``; the coordinate order."""
    return [(r, c) for r in range(n) for c in range(r, n)]


def coords_to_matrix(v: Sequence[Scalar], n: int) -> list[list[Scalar]]:
    pos = upper_triangular_positions(n)
    if len(v) != len(pos):
        raise linalg.DimensionError(f"expected {len(pos)} coordinates for U_{n}")
    z = Fraction(0) if linalg.mode_of(v) == RATIONAL else 0.0
    M = [[z] * n for _ in range(n)]
    for (r, c), a in zip(pos, v):
        M[r][c] = a
    return M


def matrix_to_coords(M: Sequence[Sequence[Scalar]]) -> Vector:
    n = len(M)
    for r in range(n):
        for c in range(r):
            if M[r][c]:
                raise ValueError("matrix is not upper triangular")
    return tuple(M[r][c] for r, c in upper_triangular_positions(n))


def matmul(X, Y):
    n = len(X)
    return [[sum((X[i][k] * Y[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def diagonal_part(M):
    n = len(M)
    z = M[0][0] * 0
    return [[M[i][j] if i == j else z for j in range(n)] for i in range(n)]


def _matrix_unit_tensor(n: int, positions, keep) -> StructureTensor:
    index = {p: i for i, p in enumerate(positions)}
    entries = {}
    for (a, b), i in index.items():
        for (c, d), j in index.items():
            if b == c and keep(a, b, c, d):
                k = index.get((a, d))
                if k is not None:
                    entries[(i, j, k)] = Fraction(1)
    return StructureTensor(len(positions), entries)


def build_phi_model(spec: PhiModelSpec | int) -> SevenTuple:
    """Upper-triangular matrices with ``x.y = x phi(y)``, ``x.y = phi(x) y``.

    ``phi`` keeps the diagonal; ``sharp`` is the matrix product.
    """
    if isinstance(spec, int):
        spec = PhiModelSpec(spec)
    n = spec.n
    if n < 1:
        raise ValueError("matrix size must be positive")
    pos = upper_triangular_positions(n)
    sharp = _matrix_unit_tensor(n, pos, lambda a, b, c, d: True)
    # E_ab phi(E_cd) survives only for diagonal E_cd, and symmetrically
    left = _matrix_unit_tensor(n, pos, lambda a, b, c, d: c == d)
    right = _matrix_unit_tensor(n, pos, lambda a, b, c, d: a == b)
    identity = tuple(Fraction(1) if r == c else Fraction(0) for r, c in pos)
    labels = tuple(f"E{r + 1}{c + 1}" for r, c in pos)
    return SevenTuple(
        len(pos), sharp, left, right, identity, RATIONAL, labels,
        {"family": "phi_upper_triangular", "n": n},
    )


def full_matrix_algebra(n: int) -> tuple[StructureTensor, Vector, tuple[str, ...]]:
    """Structure tensor, unit and labels of all ``n x n`` matrices."""
    pos = [(r, c) for r in range(n) for c in range(n)]
    t = _matrix_unit_tensor(n, pos, lambda a, b, c, d: True)
    unit = tuple(Fraction(1) if r == c else Fraction(0) for r, c in pos)
    return t, unit, tuple(f"E{r + 1}{c + 1}" for r, c in pos)


def _first_assoc_failure(t: StructureTensor):
    n = t.dim
    basis = [linalg.unit_vector(n, i) for i in range(n)]
    prod = [[t.apply(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = t.apply(prod[i][j], basis[k])
                rhs = t.apply(basis[i], prod[j][k])
                if lhs != rhs:
                    return (i, j, k), lhs, rhs
    return None


def build_collapse_model(assoc: StructureTensor, identity: Sequence[Scalar], labels=None) -> SevenTuple:
    """All three products equal to one associative unital product."""
    n = assoc.dim
    identity = linalg.vector(identity)
    failure = _first_assoc_failure(assoc)
    if failure is not None:
        triple, lhs, rhs = failure
        raise ModelError(f"product is not associative at basis triple {triple}", failure)
    for i in range(n):
        b = linalg.unit_vector(n, i)
        if assoc.apply(b, identity) != b or assoc.apply(identity, b) != b:
            raise ModelError(f"identity is not a two-sided unit at basis vector {i}", (i,))
    return SevenTuple(n, assoc, assoc, assoc, identity, RATIONAL, labels, {"family": "collapse", "n": n})


def build_scalar_collapse_model() -> SevenTuple:
    t = StructureTensor(1, {(0, 0, 0): Fraction(1)})
    return build_collapse_model(t, (1,), ("1",))


def build_endomorphism_model(
    assoc: StructureTensor,
    identity: Sequence[Scalar],
    phi_images: Sequence[Sequence[Scalar]],
    labels=None,
    model=None,
) -> SevenTuple:
    """7-tuple of a unital algebra with an idempotent algebra endomorphism.

    ``phi_images[j]`` is ``phi(b_j)``. Products are ``x phi(y)`` and ``phi(x) y``;
    the laws are checked afterwards by the axiom engine, not assumed here.
    """
    n = assoc.dim
    if len(phi_images) != n:
        raise linalg.DimensionError("need phi(b_j) for every basis vector")

    def phi(v):
        return linalg.vcombine(v, phi_images, n, linalg.mode_of(v))

    left = StructureTensor.from_bilinear(n, lambda x, y: assoc.apply(x, phi(y)))
    right = StructureTensor.from_bilinear(n, lambda x, y: assoc.apply(phi(x), y))
    return SevenTuple(n, assoc, left, right, tuple(identity), RATIONAL, labels, model)


def build_split_model() -> SevenTuple:
    """``k x k`` with componentwise product and ``phi(a, b) = (a, a)``.

    Its additive halo is the second factor, a copy of the scalars with its
    own unit, so a local identity exists.
    """
    t = StructureTensor(2, {(0, 0, 0): Fraction(1), (1, 1, 1): Fraction(1)})
    one = Fraction(1)
    return build_endomorphism_model(
        t, (one, one), [(one, one), (Fraction(0), Fraction(0))], ("u", "v"), {"family": "split"},
    )


def random_perturbation(A: SevenTuple, seed, magnitude: Scalar = Fraction(1)) -> SevenTuple:
    """Alter one structure constant of one tensor, deterministically in ``seed``."""
    if not magnitude:
        raise ValueError("perturbation magnitude must be nonzero")
    rng = random.Random(seed)
    op = rng.choice(list(Op))
    i, j, k = (rng.randrange(A.dim) for _ in range(3))
    t = A.product(op)
    entries = dict(t.entries)
    entries[(i, j, k)] = entries.get((i, j, k), 0) + linalg.to_mode(Fraction(magnitude), A.mode)
    model = {"family": "perturbed", "op": op.value, "entry": [i, j, k]}
    return replace(A, **{op.value: StructureTensor(A.dim, entries)}, model=model)


def direct_sum(A: SevenTuple, B: SevenTuple) -> SevenTuple:
    """Componentwise 7-tuple on ``A x B``."""
    n = A.dim

    def shifted(t: StructureTensor, off: int):
        return {(i + off, j + off, k + off): c for (i, j, k), c in t.entries.items()}

    tensors = [
        StructureTensor(n + B.dim, {**shifted(ta, 0), **shifted(tb, n)})
        for ta, tb in zip(A.tensors(), B.tensors())
    ]
    labels = None
    if A.labels or B.labels:
        labels = tuple(f"a.{A.label(i)}" for i in range(A.dim)) + tuple(f"b.{B.label(i)}" for i in range(B.dim))
    return SevenTuple(n + B.dim, *tensors, tuple(A.identity) + tuple(B.identity), A.mode, labels, {"family": "direct_sum"})
