"""Residual checkers for the trisemigroup and triunit laws.

Laws on the whole space are swept over all basis triples: every law here is
trilinear, so vanishing on basis triples is equivalent to vanishing
everywhere. Monoid and group checks on nonlinear carriers are sampled and
say so in their reports.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .linalg import RATIONAL, Scalar, Subspace, Vector
from .trialgebra import SevenTuple


class LawId(str, Enum):
    EQ1 = "eq1"
    EQ2 = "eq2"
    EQ3 = "eq3"
    EQ4 = "eq4"
    EQ5 = "eq5"
    EQ6 = "eq6"
    EQ7 = "eq7"
    EQ8 = "eq8"
    ASSOC_SHARP = "assoc_sharp"
    ASSOC_LEFT = "assoc_left"
    ASSOC_RIGHT = "assoc_right"


@dataclass(frozen=True)
class Witness:
    args: tuple
    lhs: Vector
    rhs: Vector
    residual: Scalar

    def to_json(self) -> dict:
        return {
            "args": [a if isinstance(a, (int, str)) else [linalg.format_scalar(c) for c in a] for a in self.args],
            "lhs": [linalg.format_scalar(c) for c in self.lhs],
            "rhs": [linalg.format_scalar(c) for c in self.rhs],
            "residual": linalg.format_scalar(self.residual),
        }


@dataclass
class CheckReport:
    """Outcome of one law or property check.

    ``required`` is false for outcomes that are recorded but do not enter a
    verdict. ``sampled`` marks checks over finite samples of an infinite set.
    """

    law: str
    passed: bool
    witness: Witness | None = None
    checked: int = 0
    max_residual: Scalar = Fraction(0)
    sampled: bool = False
    required: bool = True
    note: str = ""

    def __post_init__(self):
        if isinstance(self.law, Enum):
            self.law = self.law.value
        if self.passed != (self.witness is None):
            raise ValueError("a report fails exactly when it carries a witness")

    def to_json(self) -> dict:
        return {
            "law": self.law,
            "passed": self.passed,
            "required": self.required,
            "sampled": self.sampled,
            "checked": self.checked,
            "max_residual": linalg.format_scalar(self.max_residual),
            "witness": self.witness.to_json() if self.witness else None,
            "note": self.note,
        }


def verdict(reports: Sequence[CheckReport]) -> bool:
    return all(r.passed for r in reports if r.required)


def law_tolerance(A: SevenTuple, tol: float | None = None) -> Scalar:
    """Zero in rational mode; scale-aware in float mode."""
    if tol is not None:
        return tol
    if A.mode == RATIONAL:
        return 0
    return 1e-9 * (1 + float(A.max_abs_entry()))


class _Tally:
    """Collects residuals for one law, keeping the first failing witness."""

    def __init__(self, law, tol, sampled=False):
        self.law, self.tol, self.sampled = law, tol, sampled
        self.witness = None
        self.count = 0
        self.max_residual = Fraction(0)

    def add(self, args, lhs, rhs) -> bool:
        self.count += 1
        res = linalg.max_abs(linalg.vsub(lhs, rhs))
        if res > self.max_residual:
            self.max_residual = res
        if res > self.tol:
            if self.witness is None:
                self.witness = Witness(tuple(args), tuple(lhs), tuple(rhs), res)
            return False
        return True

    def fail(self, args, lhs=(), rhs=(), residual=1, note=""):
        self.count += 1
        if residual > self.max_residual:
            self.max_residual = residual
        if self.witness is None:
            self.witness = Witness(tuple(args), tuple(lhs), tuple(rhs), residual)
            self.note = note

    def report(self, note="") -> CheckReport:
        note = getattr(self, "note", "") or note
        return CheckReport(
            self.law, self.witness is None, self.witness, self.count, self.max_residual, self.sampled, note=note,
        )


# Each law maps (A, x, y, z) to (lhs, rhs).
def _eq1(A, x, y, z):
    return A.sharp(A.left(x, y), z), A.sharp(x, A.right(y, z))


def _eq2(A, x, y, z):
    return A.left(A.sharp(x, y), z), A.sharp(x, A.left(y, z))


def _eq3(A, x, y, z):
    return A.right(x, A.sharp(y, z)), A.sharp(A.right(x, y), z)


def _eq4(A, x, y, z):
    return A.left(x, A.sharp(y, z)), A.left(A.left(x, y), z)


def _eq5(A, x, y, z):
    return A.right(A.sharp(x, y), z), A.right(x, A.right(y, z))


def _assoc(name):
    def law(A, x, y, z):
        t = getattr(A, name)
        return t(t(x, y), z), t(x, t(y, z))

    return law


LAWS: dict[LawId, Callable] = {
    LawId.EQ1: _eq1,
    LawId.EQ2: _eq2,
    LawId.EQ3: _eq3,
    LawId.EQ4: _eq4,
    LawId.EQ5: _eq5,
    LawId.ASSOC_SHARP: _assoc("sharp"),
    LawId.ASSOC_LEFT: _assoc("left"),
    LawId.ASSOC_RIGHT: _assoc("right"),
}

TRISEMIGROUP_LAWS = (LawId.EQ1, LawId.EQ2, LawId.EQ3, LawId.EQ4, LawId.EQ5,
                     LawId.ASSOC_SHARP, LawId.ASSOC_LEFT, LawId.ASSOC_RIGHT)
QUASI_LAWS = TRISEMIGROUP_LAWS[1:]


def evaluate_law(A: SevenTuple, law: LawId | str, x, y, z) -> tuple[Vector, Vector]:
    return LAWS[LawId(law)](A, tuple(x), tuple(y), tuple(z))


def sweep_laws(A: SevenTuple, laws: Sequence[LawId], tol: float | None = None) -> list[CheckReport]:
    """Evaluate each law on every basis triple, in lexicographic order."""
    tol = law_tolerance(A, tol)
    basis = A.basis_vectors()
    reports = []
    for law in laws:
        f = LAWS[LawId(law)]
        tally = _Tally(law, tol)
        for i, j, k in itertools.product(range(A.dim), repeat=3):
            lhs, rhs = f(A, basis[i], basis[j], basis[k])
            tally.add((i, j, k), lhs, rhs)
        reports.append(tally.report())
    return reports


def check_trisemigroup(A: SevenTuple, tol: float | None = None) -> list[CheckReport]:
    return sweep_laws(A, TRISEMIGROUP_LAWS, tol)


def check_quasitrisemigroup(A: SevenTuple, tol: float | None = None) -> list[CheckReport]:
    return sweep_laws(A, QUASI_LAWS, tol)


def sample_law(A: SevenTuple, law: LawId, elements: Sequence[Vector], tol=None) -> CheckReport:
    """Evaluate a law on consecutive triples of arbitrary elements."""
    tally = _Tally(law, law_tolerance(A, tol), sampled=True)
    m = len(elements)
    for s in range(m):
        x, y, z = elements[s], elements[(s + 1) % m], elements[(s + 2) % m]
        tally.add((x, y, z), *evaluate_law(A, law, x, y, z))
    return tally.report()


def check_triunit(A: SevenTuple, e: Sequence[Scalar], tol: float | None = None) -> list[CheckReport]:
    """Unit laws for ``e``: sharp two-sided, left product on the right, right
    product on the left. The derived law ``e.x = x.e`` is reported as well."""
    tol = law_tolerance(A, tol)
    e = tuple(e)
    t6, t7, t8 = _Tally(LawId.EQ6, tol), _Tally(LawId.EQ7, tol), _Tally(LawId.EQ8, tol)
    for i, x in enumerate(A.basis_vectors()):
        t6.add((i, "x#e"), A.sharp(x, e), x)
        t6.add((i, "e#x"), A.sharp(e, x), x)
        t7.add((i, "x->e"), A.left(x, e), x)
        t7.add((i, "e<-x"), A.right(e, x), x)
        t8.add((i,), A.left(e, x), A.right(x, e))
    return [t6.report(), t7.report(), t8.report(note="derived consequence for trimonoids")]


Member = Callable[[Vector], bool]
BinOp = Callable[[Vector, Vector], Vector]


def _triples(m: int, budget: int, rng: random.Random):
    if m ** 3 <= budget:
        return list(itertools.product(range(m), repeat=3))
    return [(rng.randrange(m), rng.randrange(m), rng.randrange(m)) for _ in range(budget)]


def _pairs(m: int, budget: int, rng: random.Random):
    if m * m <= budget:
        return list(itertools.product(range(m), repeat=2))
    return [(rng.randrange(m), rng.randrange(m)) for _ in range(budget)]


def check_monoid(
    samples: Sequence[Sequence[Scalar]],
    op: BinOp,
    unit: Sequence[Scalar],
    member: Member,
    *,
    law: str = "monoid",
    tol: Scalar = 0,
    seed: int = 0,
    pair_budget: int = 2500,
    triple_budget: int = 500,
) -> CheckReport:
    """Sampled monoid check: unit membership and laws, closure, associativity."""
    if not samples:
        raise ValueError("monoid check needs at least one sample")
    samples = [tuple(s) for s in samples]
    unit = tuple(unit)
    rng = random.Random(seed)
    tally = _Tally(law, tol, sampled=True)
    tally.count += 1
    if not member(unit):
        tally.fail(("unit",), unit, unit, note="unit is outside the carrier")
    for x in samples:
        if not member(x):
            tally.fail(("sample", x), note="sample is outside the carrier")
        tally.add(("unit_left", x), op(unit, x), x)
        tally.add(("unit_right", x), op(x, unit), x)
    for i, j in _pairs(len(samples), pair_budget, rng):
        tally.count += 1
        p = op(samples[i], samples[j])
        if not member(p):
            tally.fail(("closure", samples[i], samples[j]), p, p, note="product leaves the carrier")
    for i, j, k in _triples(len(samples), triple_budget, rng):
        x, y, z = samples[i], samples[j], samples[k]
        tally.add(("assoc", x, y, z), op(op(x, y), z), op(x, op(y, z)))
    return tally.report()


def check_rng(subspace: Subspace, A: SevenTuple, tol: Scalar = 0, law: str = "rng") -> CheckReport:
    """Closure of ``subspace`` under sharp, associativity and distributivity
    on its basis."""
    tally = _Tally(law, tol)
    B = [tuple(b) for b in subspace.basis]
    for a, b in itertools.product(B, repeat=2):
        p = A.sharp(a, b)
        tally.count += 1
        if not subspace.contains(p, tol):
            tally.fail(("closure", a, b), p, p, note="product leaves the subspace")
    for a, b, c in itertools.product(B, repeat=3):
        tally.add(("assoc", a, b, c), A.sharp(A.sharp(a, b), c), A.sharp(a, A.sharp(b, c)))
        tally.add(("dist_left", a, b, c), A.sharp(a, linalg.vadd(b, c)), linalg.vadd(A.sharp(a, b), A.sharp(a, c)))
        tally.add(("dist_right", a, b, c), A.sharp(linalg.vadd(a, b), c), linalg.vadd(A.sharp(a, c), A.sharp(b, c)))
    return tally.report()


def check_group(
    samples: Sequence[Sequence[Scalar]],
    A: SevenTuple,
    member: Member | None = None,
    *,
    law: str = "group",
    tol: Scalar = 0,
    seed: int = 0,
    pair_budget: int = 2500,
) -> CheckReport:
    """Sampled check that the samples sit in a group under sharp with unit
    the identity of ``A``: closure, unit, and inverses inside the carrier."""
    from .units import NoInverse, sharp_inverse

    if not samples:
        raise ValueError("group check needs at least one sample")
    samples = [tuple(s) for s in samples]
    if member is None:
        span = Subspace.span(samples, A.dim)

        def member(v):
            return span.contains(v, tol)

    unit = A.identity
    rng = random.Random(seed)
    tally = _Tally(law, tol, sampled=True)
    tally.count += 1
    if not member(unit):
        tally.fail(("unit",), unit, unit, note="identity is outside the carrier")
    for x in samples:
        tally.count += 1
        if not member(x):
            tally.fail(("sample", x), note="sample is outside the carrier")
            continue
        try:
            inv = sharp_inverse(A, x, tol=tol)
        except NoInverse as exc:
            tally.fail(("inverse", x), note=f"no inverse: {exc.code}")
            continue
        if not member(inv):
            tally.fail(("inverse", x), inv, inv, note="inverse is outside the carrier")
    for i, j in _pairs(len(samples), pair_budget, rng):
        tally.count += 1
        p = A.sharp(samples[i], samples[j])
        if not member(p):
            tally.fail(("closure", samples[i], samples[j]), p, p, note="product leaves the carrier")
    for i, j, k in _triples(len(samples), 200, rng):
        x, y, z = samples[i], samples[j], samples[k]
        tally.add(("assoc", x, y, z), A.sharp(A.sharp(x, y), z), A.sharp(x, A.sharp(y, z)))
    return tally.report()
