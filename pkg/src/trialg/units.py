"""Bar-units and what they induce.

Covers the halo and additive halo, the left/right additions and Hu-Liu
product induced by a bar-unit, one-sided and sharp inverses, diconjugation,
the local identity, and sampled verifiers for the two structural
propositions about these objects.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .axioms import (
    CheckReport, LawId, _Tally, check_monoid, check_quasitrisemigroup, check_rng, check_triunit,
)
from .linalg import AffineSubspace, Scalar, Subspace, Vector
from .trialgebra import SevenTuple, StructureTensor


class NotBarUnit(ValueError):
    def __init__(self, index: int):
        super().__init__(f"not a bar-unit: unit law fails at basis vector {index}")
        self.index = index


class NotOneSidedInvertible(ValueError):
    def __init__(self, sides: Sequence[str]):
        super().__init__(f"no one-sided inverse on side(s): {', '.join(sides)}")
        self.sides = tuple(sides)


class NoInverse(ValueError):
    """``code`` is ``"no_solution"`` or ``"one_sided_only"``."""

    def __init__(self, code: str):
        super().__init__(f"not sharp-invertible ({code})")
        self.code = code


class ConsistencyError(AssertionError):
    """A well-definedness claim failed at runtime."""


def random_rational(rng: random.Random, bound: int = 3, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den))


def random_vector(rng: random.Random, n: int, **kw) -> Vector:
    return tuple(random_rational(rng, **kw) for _ in range(n))


def _tol(A: SevenTuple, tol):
    if tol is not None:
        return tol
    return 0 if A.mode == linalg.RATIONAL else linalg.DEFAULT_FLOAT_TOL


# --- halo -------------------------------------------------------------------


@dataclass(frozen=True)
class Halo:
    """The set of bar-units, as an affine solution set."""

    solutions: AffineSubspace
    ambient: SevenTuple

    @property
    def empty(self) -> bool:
        return self.solutions.empty

    @property
    def dim(self) -> int:
        return self.solutions.dim

    @property
    def basepoint(self) -> Vector:
        return self.solutions.basepoint

    @property
    def directions(self) -> tuple[Vector, ...]:
        return self.solutions.directions

    def contains(self, e: Sequence[Scalar], tol: float = 0) -> bool:
        return self.solutions.contains(tuple(e), tol)

    def point(self, params) -> Vector:
        return self.solutions.point(params)

    def sample(self, rng: random.Random) -> Vector:
        return self.point([random_rational(rng) for _ in self.directions])


def bar_unit_violation(A: SevenTuple, e: Sequence[Scalar], tol: float = 0) -> int | None:
    """First basis index where ``e<-b = b = b->e`` fails, else None."""
    e = tuple(e)
    for i, b in enumerate(A.basis_vectors()):
        if not linalg.is_zero(linalg.vsub(A.right(e, b), b), tol) or not linalg.is_zero(
            linalg.vsub(A.left(b, e), b), tol
        ):
            return i
    return None


def is_bar_unit(A: SevenTuple, e, tol: float = 0) -> bool:
    return bar_unit_violation(A, e, tol) is None


def compute_halo(A: SevenTuple) -> Halo:
    """Solve ``e<-b_i = b_i`` and ``b_i->e = b_i`` for all i, linear in e."""
    n = A.dim
    rows, rhs = [], []
    for i in range(n):
        b = A.basis(i)
        # coefficient of e_m in (e<-b_i)_k is right[m, i, k]; in (b_i->e)_k it is left[i, m, k]
        Mr = A.right.right_matrix(b)
        Ml = A.left.left_matrix(b)
        for k in range(n):
            rows.append(Mr[k])
            rhs.append(b[k])
            rows.append(Ml[k])
            rhs.append(b[k])
    return Halo(linalg.solve_linear(rows, rhs), A)


@dataclass(frozen=True)
class AdditiveHalo:
    kernel: Subspace
    derived_from: Vector


def compute_additive_halo(A: SevenTuple, e: Sequence[Scalar], tol: float | None = None) -> AdditiveHalo:
    """Kernel of ``a -> e->a`` for a bar-unit ``e``."""
    e = tuple(e)
    bad = bar_unit_violation(A, e, _tol(A, tol))
    if bad is not None:
        raise NotBarUnit(bad)
    M = A.left.left_matrix(e)
    return AdditiveHalo(Subspace.span(linalg.nullspace(M, A.dim), A.dim), e)


# --- induced operations --------------------------------------------------------


@dataclass(frozen=True)
class InducedOps:
    """Left addition, right addition and Hu-Liu product induced by ``bar_unit``."""

    ambient: SevenTuple
    bar_unit: Vector
    hu_liu: StructureTensor

    def left_add(self, x, y) -> Vector:
        return linalg.vadd(x, self.ambient.left(self.bar_unit, y))

    def right_add(self, x, y) -> Vector:
        return linalg.vadd(self.ambient.right(x, self.bar_unit), y)

    def product(self, x, y) -> Vector:
        return self.hu_liu.apply(x, y)

    def product_direct(self, x, y) -> Vector:
        """The Hu-Liu product straight from its defining formula."""
        A, e = self.ambient, self.bar_unit
        return linalg.vsub(linalg.vadd(A.right(x, y), A.left(x, y)), A.left(A.right(x, e), y))


def induced_operations(A: SevenTuple, e: Sequence[Scalar], tol: float | None = None) -> InducedOps:
    e = linalg.vector(e, A.mode)
    bad = bar_unit_violation(A, e, _tol(A, tol))
    if bad is not None:
        raise NotBarUnit(bad)
    draft = InducedOps(A, e, StructureTensor.zero(A.dim))
    hu = StructureTensor.from_bilinear(A.dim, draft.product_direct, A.mode)
    ops = InducedOps(A, e, hu)
    for b in A.basis_vectors():
        for c in A.basis_vectors():
            if ops.product(b, c) != draft.product_direct(b, c):
                raise ConsistencyError("Hu-Liu tensor disagrees with its defining formula")
    return ops


def hu_liu_structure(A: SevenTuple, e: Sequence[Scalar]) -> SevenTuple:
    """``A`` with its product replaced by the Hu-Liu product and identity ``e``."""
    ops = induced_operations(A, e)
    return A.with_products(sharp=ops.hu_liu, identity=ops.bar_unit, model={"family": "hu_liu", "base": dict(A.model or {})})


def verify_prop_2_1(A: SevenTuple, e: Sequence[Scalar]) -> list[CheckReport]:
    """The Hu-Liu product with the two side products forms a quasitrimonoid
    with triunit ``e``. The full triassociative law and the derived unit law
    are recorded without entering the verdict."""
    B = hu_liu_structure(A, e)
    reports = check_quasitrisemigroup(B) + check_triunit(B, B.identity)
    eq1 = check_eq1_only(B)
    eq1.required = False
    eq1.note = "recorded only; not claimed for the Hu-Liu structure"
    for r in reports:
        if r.law == LawId.EQ8.value:
            r.required = False
            r.note = "recorded only; derived law holds for trimonoids"
    return [eq1] + reports


def check_eq1_only(A: SevenTuple) -> CheckReport:
    from .axioms import sweep_laws

    return sweep_laws(A, [LawId.EQ1])[0]


# --- inverses -----------------------------------------------------------------


@dataclass(frozen=True)
class OneSidedInverse:
    left: Vector
    right: Vector
    bar_unit: Vector
    left_solutions: AffineSubspace
    right_solutions: AffineSubspace

    @property
    def unique(self) -> bool:
        return self.left_solutions.dim == 0 and self.right_solutions.dim == 0


def satisfies_eq8(A: SevenTuple, e, tol: float = 0) -> bool:
    e = tuple(e)
    return all(linalg.is_zero(linalg.vsub(A.left(e, b), A.right(b, e)), tol) for b in A.basis_vectors())


def one_sided_inverse(A: SevenTuple, x: Sequence[Scalar], e: Sequence[Scalar] | None = None, tol=None) -> OneSidedInverse:
    """Solve ``w->x = e`` and ``x<-z = e``."""
    tol = _tol(A, tol)
    x = tuple(x)
    e = tuple(A.identity if e is None else e)
    bad = bar_unit_violation(A, e, tol)
    if bad is not None:
        raise NotBarUnit(bad)
    left = linalg.solve_linear(A.left.right_matrix(x), e)
    right = linalg.solve_linear(A.right.left_matrix(x), e)
    missing = [side for side, s in (("left", left), ("right", right)) if s.empty]
    if missing:
        raise NotOneSidedInvertible(missing)
    inv = OneSidedInverse(left.basepoint, right.basepoint, e, left, right)
    if satisfies_eq8(A, e, tol) and not left.same_set(right, tol):
        raise ConsistencyError("left and right inverses differ although e satisfies the derived unit law")
    return inv


def is_one_sided_invertible(A: SevenTuple, x, e=None, tol=None) -> bool:
    try:
        one_sided_inverse(A, x, e, tol)
    except NotOneSidedInvertible:
        return False
    return True


def sharp_inverse(A: SevenTuple, a: Sequence[Scalar], tol=None) -> Vector:
    tol = _tol(A, tol)
    a = tuple(a)
    sol = linalg.solve_linear(A.sharp.left_matrix(a), A.identity)
    if sol.empty:
        raise NoInverse("no_solution")
    b = sol.basepoint
    if not linalg.is_zero(linalg.vsub(A.sharp(b, a), A.identity), tol):
        raise NoInverse("one_sided_only")
    return b


# --- diconjugation ---------------------------------------------------------------


class Diconjugator:
    """``x -> a_l<-x->a`` for a one-sided invertible ``a``.

    Each evaluation is cross-checked against the right inverse and against
    the inverse taken with respect to a second bar-unit when one exists.
    """

    def __init__(self, A: SevenTuple, a: Sequence[Scalar], e=None, tol=None, halo: Halo | None = None):
        self.A = A
        self.a = tuple(a)
        self.tol = _tol(A, tol)
        self.inverse = one_sided_inverse(A, self.a, e, tol)
        self.alternates: list[Vector] = [self.inverse.right]
        halo = halo if halo is not None else compute_halo(A)
        if halo.directions:
            other = linalg.vadd(self.inverse.bar_unit, halo.directions[0])
            try:
                alt = one_sided_inverse(A, self.a, other, tol)
            except NotOneSidedInvertible as exc:
                raise ConsistencyError("one-sided invertibility depends on the bar-unit") from exc
            self.alternates.append(alt.left)

    def _apply(self, w, x):
        return self.A.left(self.A.right(w, x), self.a)

    def __call__(self, x: Sequence[Scalar]) -> Vector:
        x = tuple(x)
        y = self._apply(self.inverse.left, x)
        for w in self.alternates:
            if not linalg.is_zero(linalg.vsub(y, self._apply(w, x)), self.tol):
                raise ConsistencyError("diconjugation depends on the choice of inverse or bar-unit")
        return y

    def matrix(self) -> list[list[Scalar]]:
        cols = [self(b) for b in self.A.basis_vectors()]
        n = self.A.dim
        return [[cols[j][k] for j in range(n)] for k in range(n)]


def diconjugation(A: SevenTuple, a: Sequence[Scalar], x: Sequence[Scalar], tol=None) -> Vector:
    return Diconjugator(A, a, tol=tol)(x)


# --- local identity -------------------------------------------------------------------


def find_local_identity(A: SevenTuple, e: Sequence[Scalar] | None = None) -> Vector | None:
    """Unit of the additive halo under sharp, if it has one."""
    e = A.identity if e is None else e
    H = compute_additive_halo(A, e).kernel
    n, r = A.dim, H.dim
    if r == 0:
        return A.zero_vector()
    rows, rhs = [], []
    # u = sum c_i alpha_i; u#alpha_j = alpha_j and alpha_j#u = alpha_j
    for alpha in H.basis:
        lcols = [A.sharp(g, alpha) for g in H.basis]
        rcols = [A.sharp(alpha, g) for g in H.basis]
        for k in range(n):
            rows.append([col[k] for col in lcols])
            rhs.append(alpha[k])
            rows.append([col[k] for col in rcols])
            rhs.append(alpha[k])
    sol = linalg.solve_linear(rows, rhs)
    if sol.empty:
        return None
    return linalg.vcombine(sol.basepoint, H.basis, n, A.mode)


# --- structural propositions ----------------------------------------------------------


def sample_one_sided_invertibles(A: SevenTuple, rng: random.Random, count: int, attempts: int = 50) -> list[Vector]:
    out = []
    for _ in range(count * attempts):
        if len(out) == count:
            break
        x = random_vector(rng, A.dim)
        if is_one_sided_invertible(A, x):
            out.append(x)
    return out


def _preimage_in_halo(D: Diconjugator, halo: Halo, h: Vector) -> bool:
    """Whether ``h = D(g)`` for some ``g`` in the halo (exact linear solve)."""
    A = D.A
    M = D.matrix()
    base_img = linalg.matvec(M, halo.basepoint)
    dir_imgs = [linalg.matvec(M, d) for d in halo.directions]
    target = linalg.vsub(h, base_img)
    if not dir_imgs:
        return linalg.is_zero(target, D.tol)
    rows = [[img[k] for img in dir_imgs] for k in range(A.dim)]
    return not linalg.solve_linear(rows, target).empty


def verify_prop_2_2(A: SevenTuple, sample_count: int = 100, seed: int = 0, bar_units: int = 5) -> list[CheckReport]:
    """Sampled check of the halo, additive-halo and diconjugation properties.

    Returns reports keyed ``prop2.2(i)`` through ``prop2.2(v)``; item (v) is
    split per operation.
    """
    rng = random.Random(seed)
    tol = _tol(A, None)
    halo = compute_halo(A)
    if halo.empty:
        raise ValueError("the halo is empty")
    pts = [halo.sample(rng) for _ in range(sample_count)]
    reports = []

    r = check_monoid(pts, A.sharp, A.identity, halo.contains, law="prop2.2(i)", tol=tol, seed=seed)
    reports.append(r)

    plus = compute_additive_halo(A, A.identity).kernel
    r = check_rng(plus, A, tol, law="prop2.2(ii)")
    same = all(
        compute_additive_halo(A, halo.sample(rng)).kernel.same_span(plus, tol) for _ in range(bar_units)
    )
    r.note = "additive halo identical across sampled bar-units" if same else "additive halo depends on the bar-unit"
    reports.append(r)

    units = [halo.sample(rng) for _ in range(bar_units)]
    tally3 = _Tally("prop2.2(iii)", tol, sampled=True)
    for e in units:
        ops = induced_operations(A, e)
        sub = check_monoid(pts, ops.product, e, halo.contains, tol=tol, seed=seed)
        tally3.count += sub.checked
        if sub.witness is not None and tally3.witness is None:
            tally3.witness = sub.witness
        tally3.max_residual = max(tally3.max_residual, sub.max_residual)
    reports.append(tally3.report())

    invertibles = sample_one_sided_invertibles(A, rng, max(1, sample_count // 10))
    t4 = _Tally("prop2.2(iv)", tol, sampled=True)
    laws5 = {name: _Tally(f"prop2.2(v).{name}", tol, sampled=True)
             for name in ("add", "sharp", "left", "right", "left_add", "right_add", "hu_liu")}
    for a in invertibles:
        D = Diconjugator(A, a, halo=halo, tol=tol)
        for h in pts[: max(1, sample_count // 10)]:
            t4.count += 1
            img = D(h)
            if not halo.contains(img, tol):
                t4.fail(("halo_into", a, h), img, img, note="image of a bar-unit leaves the halo")
            t4.count += 1
            if not _preimage_in_halo(D, halo, h):
                t4.fail(("halo_onto", a, h), note="bar-unit has no preimage in the halo")
        plus_img = linalg.image_space(D, plus)
        t4.count += 1
        if not plus_img.same_span(plus, tol):
            t4.fail(("additive_halo", a), note="diconjugation does not preserve the additive halo")

        for s in range(max(1, sample_count // 10)):
            x, y = random_vector(rng, A.dim), random_vector(rng, A.dim)
            dx, dy = D(x), D(y)
            laws5["add"].add((a, x, y), D(linalg.vadd(x, y)), linalg.vadd(dx, dy))
            for name in ("sharp", "left", "right"):
                t = getattr(A, name)
                laws5[name].add((a, x, y), D(t(x, y)), t(dx, dy))
            e = units[s % len(units)]
            ops = induced_operations(A, e)
            shifted = induced_operations(A, D(e))
            laws5["left_add"].add((a, e, x, y), D(ops.left_add(x, y)), shifted.left_add(dx, dy))
            laws5["right_add"].add((a, e, x, y), D(ops.right_add(x, y)), shifted.right_add(dx, dy))
            laws5["hu_liu"].add((a, e, x, y), D(ops.product(x, y)), shifted.product(dx, dy))
    reports.append(t4.report())
    reports.extend(t.report() for t in laws5.values())
    if not invertibles:
        for r in reports[-8:]:
            r.note = "no one-sided invertible samples found"
    return reports
