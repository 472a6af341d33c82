"""Angle and square brackets and the local Leibniz algebra verifier."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import linalg
from .axioms import CheckReport, _Tally, law_tolerance
from .linalg import Scalar, Subspace, Vector
from .trialgebra import SevenTuple, StructureTensor


class LeibnizForm(str, Enum):
    # <<x,y>,z> = <<x,z>,y> + <x,<y,z>>
    RIGHT = "right"
    # <x,<y,z>> = <<x,y>,z> + <y,<x,z>>
    LEFT = "left"


LEIBNIZ_FORM = LeibnizForm.RIGHT


@dataclass(frozen=True)
class BracketPair:
    """``angle(x, y) = x->y - y<-x`` and ``square(x, y) = x#y - y#x``.

    Built by :func:`brackets_from`; constructing one directly (as negative
    controls do) leaves ``source`` empty.
    """

    angle: StructureTensor
    square: StructureTensor
    source: SevenTuple | None = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return self.angle.dim

    def ang(self, x, y) -> Vector:
        return self.angle.apply(x, y)

    def sq(self, x, y) -> Vector:
        return self.square.apply(x, y)


def brackets_from(A: SevenTuple) -> BracketPair:
    angle = A.left - A.right.transpose()
    square = A.sharp - A.sharp.transpose()
    pair = BracketPair(angle, square, A)
    for x in A.basis_vectors():
        for y in A.basis_vectors():
            if pair.ang(x, y) != linalg.vsub(A.left(x, y), A.right(y, x)):
                raise AssertionError("angle bracket tensor is not the literal difference")
            if pair.sq(x, y) != linalg.vsub(A.sharp(x, y), A.sharp(y, x)):
                raise AssertionError("square bracket tensor is not the literal commutator")
    return pair


def _sum(*vs):
    out = vs[0]
    for v in vs[1:]:
        out = linalg.vadd(out, v)
    return out


def eq18_sides(pair: BracketPair, x, y, z) -> tuple[Vector, Vector]:
    a, s = pair.ang, pair.sq
    lhs = _sum(s(x, a(y, z)), s(y, a(z, x)), s(z, a(x, y)))
    rhs = _sum(
        s(x, a(z, y)), s(z, a(y, x)), s(y, a(x, z)),
        a(s(x, y), z), a(s(y, z), x), a(s(z, x), y),
    )
    return lhs, rhs


def huliu_terms(pair: BracketPair, alpha, beta, z) -> tuple[Vector, Vector, Vector]:
    a, s = pair.ang, pair.sq
    return a(s(alpha, beta), z), s(a(beta, z), alpha), s(beta, a(alpha, z))


def leibniz_sides(pair: BracketPair, x, y, z, form: LeibnizForm = LEIBNIZ_FORM) -> tuple[Vector, Vector]:
    a = pair.ang
    if form == LeibnizForm.RIGHT:
        return a(a(x, y), z), linalg.vadd(a(a(x, z), y), a(x, a(y, z)))
    return a(x, a(y, z)), linalg.vadd(a(a(x, y), z), a(y, a(x, z)))


def jacobi_sides(pair: BracketPair, x, y, z) -> tuple[Vector, Vector]:
    s = pair.sq
    return _sum(s(s(x, y), z), s(s(y, z), x), s(s(z, x), y)), linalg.zeros(len(x))


def _pair_tol(pair: BracketPair, tol):
    if tol is not None:
        return tol
    if pair.source is not None:
        return law_tolerance(pair.source)
    return 0 if pair.angle.mode == linalg.RATIONAL and pair.square.mode == linalg.RATIONAL else 1e-9


def check_eq18(pair_or_A: BracketPair | SevenTuple, tol=None) -> CheckReport:
    pair = brackets_from(pair_or_A) if isinstance(pair_or_A, SevenTuple) else pair_or_A
    tally = _Tally("eq18", _pair_tol(pair, tol))
    basis = [linalg.unit_vector(pair.dim, i) for i in range(pair.dim)]
    for i, j, k in itertools.product(range(pair.dim), repeat=3):
        tally.add((i, j, k), *eq18_sides(pair, basis[i], basis[j], basis[k]))
    return tally.report()


def check_leibniz_form(pair: BracketPair, form: LeibnizForm = LEIBNIZ_FORM, space: Subspace | None = None, tol=None) -> CheckReport:
    tally = _Tally("leibniz", _pair_tol(pair, tol))
    B = _basis(pair, space)
    for x, y, z in itertools.product(B, repeat=3):
        tally.add((x, y, z), *leibniz_sides(pair, x, y, z, form))
    return tally.report(note=f"{form.value} Leibniz identity")


def _basis(pair: BracketPair, space: Subspace | None) -> list[Vector]:
    if space is None:
        return [linalg.unit_vector(pair.dim, i) for i in range(pair.dim)]
    return [tuple(b) for b in space.basis]


def _check_local_containment(pair: BracketPair, L1: Subspace, B: list[Vector], tol) -> tuple[CheckReport, CheckReport]:
    ann = _Tally("eq20_annihilation", tol)
    cont = _Tally("eq20_containment", tol)
    zero = linalg.zeros(pair.dim)
    for z in B:
        for alpha in L1.basis:
            ann.add((z, alpha), pair.ang(z, alpha), zero)
            v = pair.ang(alpha, z)
            cont.count += 1
            if not L1.contains(v, tol):
                cont.fail((alpha, z), v, v, residual=linalg.projection_residual(L1, v),
                          note="angle bracket leaves the local part")
    return ann.report(), cont.report()


def check_huliu_identity(pair: BracketPair, L1: Subspace, space: Subspace | None = None, tol=None) -> CheckReport:
    """Hu-Liu identity for alpha, beta in the local part and z in the space.

    The square bracket is only defined on the local part, so both clauses of
    the local-part compatibility (annihilation and containment) are checked
    first; a violation is a structural failure, reported with note
    ``structural``.
    """
    tol = _pair_tol(pair, tol)
    tally = _Tally("eq19", tol)
    B = _basis(pair, space)
    zero = linalg.zeros(pair.dim)
    for pre in _check_local_containment(pair, L1, B, tol):
        if not pre.passed:
            w = pre.witness
            tally.fail(w.args, w.lhs, w.rhs, residual=w.residual,
                       note=f"structural: {pre.law} violated, square bracket would leave the local part")
            return tally.report()
    for alpha, beta in itertools.product(L1.basis, repeat=2):
        for z in B:
            for w in (pair.ang(beta, z), pair.ang(alpha, z)):
                if not L1.contains(w, tol):
                    tally.fail((alpha, beta, z), w, w, residual=linalg.projection_residual(L1, w),
                               note="structural: square bracket applied outside the local part")
                    return tally.report()
            tally.add((alpha, beta, z), _sum(*huliu_terms(pair, alpha, beta, z)), zero)
    return tally.report()


@dataclass
class LocalLeibnizReport:
    space: Subspace
    local_part: Subspace
    checks: list[CheckReport]

    def get(self, law: str) -> CheckReport:
        return next(r for r in self.checks if r.law == law)

    @property
    def leibniz_ok(self) -> bool:
        return self.get("leibniz").passed

    @property
    def eq20_ok(self) -> bool:
        return self.get("eq20_annihilation").passed and self.get("eq20_containment").passed

    @property
    def jacobi_ok(self) -> bool:
        return self.get("jacobi").passed

    @property
    def antisym_ok(self) -> bool:
        return self.get("eq21").passed

    @property
    def huliu_ok(self) -> bool:
        return self.get("eq19").passed

    @property
    def max_residual(self) -> Scalar:
        return max((r.max_residual for r in self.checks), default=Fraction(0))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.checks if r.required)

    @property
    def kind(self) -> str:
        return "Leibniz algebra" if self.local_part.dim == 0 else "local Leibniz algebra"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.passed,
            "space_dim": self.space.dim,
            "local_part_dim": self.local_part.dim,
            "local_part_basis": [[linalg.format_scalar(c) for c in b] for b in self.local_part.basis],
            "max_residual": linalg.format_scalar(self.max_residual),
            "checks": [r.to_json() for r in self.checks],
        }


def check_lie(pair: BracketPair, L: Subspace, tol) -> list[CheckReport]:
    """Closure, antisymmetry and Jacobi for the square bracket on ``L``."""
    closure = _Tally("square_closure", tol)
    anti = _Tally("eq21", tol)
    jac = _Tally("jacobi", tol)
    B = [tuple(b) for b in L.basis]
    for x, y in itertools.product(B, repeat=2):
        v = pair.sq(x, y)
        closure.count += 1
        if not L.contains(v, tol):
            closure.fail((x, y), v, v, residual=linalg.projection_residual(L, v),
                         note="square bracket leaves the subspace")
        anti.add((x, y), v, linalg.vscale(-1, pair.sq(y, x)))
    for x, y, z in itertools.product(B, repeat=3):
        jac.add((x, y, z), *jacobi_sides(pair, x, y, z))
    return [closure.report(), anti.report(), jac.report()]


def verify_local_leibniz(pair: BracketPair, L1: Subspace, space: Subspace | None = None, tol=None,
                         form: LeibnizForm = LEIBNIZ_FORM) -> LocalLeibnizReport:
    """Check that ``space`` (default: everything) with local part ``L1`` is a
    local Leibniz algebra under ``pair``."""
    tol = _pair_tol(pair, tol)
    space_ = space if space is not None else Subspace.full(pair.dim)
    B = [tuple(b) for b in space_.basis]
    checks = []

    local_inside = _Tally("local_part_inside", tol)
    for alpha in L1.basis:
        local_inside.count += 1
        if not space_.contains(alpha, tol):
            local_inside.fail((alpha,), alpha, alpha, note="local part is not inside the space")
    checks.append(local_inside.report())

    closure = _Tally("angle_closure", tol)
    for x, y in itertools.product(B, repeat=2):
        v = pair.ang(x, y)
        closure.count += 1
        if not space_.contains(v, tol):
            closure.fail((x, y), v, v, residual=linalg.projection_residual(space_, v),
                         note="angle bracket leaves the space")
    checks.append(closure.report())

    checks.append(check_leibniz_form(pair, form, space_, tol))
    checks.extend(_check_local_containment(pair, L1, B, tol))
    checks.extend(check_lie(pair, L1, tol))
    checks.append(check_huliu_identity(pair, L1, space_, tol))
    return LocalLeibnizReport(space_, L1, checks)


def select_leibniz_form(A: SevenTuple) -> LeibnizForm | None:
    """Brute-force oracle: the first Leibniz form that holds on all basis
    triples of ``A``."""
    pair = brackets_from(A)
    for form in (LeibnizForm.RIGHT, LeibnizForm.LEFT):
        if check_leibniz_form(pair, form).passed:
            return form
    return None
