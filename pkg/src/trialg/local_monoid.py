"""(Delta, Omega)-local monoids given by membership predicates and curves."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .axioms import CheckReport, _Tally, check_group, check_monoid
from .linalg import Vector
from .trialgebra import SevenTuple, upper_triangular_positions
from .units import (
    Diconjugator, NotBarUnit, NotOneSidedInvertible, NoInverse, compute_halo, induced_operations,
    random_rational, sharp_inverse,
)

Member = Callable[[Vector], bool]
Sampler = Callable[[random.Random], Vector]


@dataclass(frozen=True)
class DeltaOp:
    """Either the product ``sharp`` or the Hu-Liu product of a bar-unit ``e``."""

    kind: str
    e: Vector | None = None

    def __post_init__(self):
        if self.kind not in ("sharp", "huliu"):
            raise ValueError(f"unknown operation {self.kind!r}")
        if (self.kind == "huliu") != (self.e is not None):
            raise ValueError("the Hu-Liu product needs its bar-unit, sharp takes none")
        if self.e is not None:
            object.__setattr__(self, "e", linalg.vector(self.e))

    @classmethod
    def sharp(cls) -> "DeltaOp":
        return cls("sharp")

    @classmethod
    def huliu(cls, e) -> "DeltaOp":
        return cls("huliu", tuple(e))

    @property
    def key(self) -> str:
        if self.kind == "sharp":
            return "sharp"
        return "huliu(" + ",".join(linalg.format_scalar(c) for c in self.e) + ")"

    def unit(self, A: SevenTuple) -> Vector:
        return A.identity if self.kind == "sharp" else self.e

    def operation(self, A: SevenTuple):
        if self.kind == "sharp":
            return A.sharp.apply
        return induced_operations(A, self.e).product


@dataclass(frozen=True)
class Curve:
    """A curve through a unit, tagged with the set it runs in.

    ``target`` is ``"omega"`` or a :class:`DeltaOp`. Polynomial curves carry
    coefficient vectors ``c0 + c1 t + ...``; sampled curves carry a callback.
    """

    target: object
    coefficients: tuple[Vector, ...] = ()
    func: Callable[[float], Sequence] | None = field(default=None, compare=False)
    domain: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if (self.func is None) == (not self.coefficients):
            raise ValueError("give either polynomial coefficients or a callback")
        if self.coefficients:
            object.__setattr__(self, "coefficients", tuple(tuple(c) for c in self.coefficients))
        if self.target != "omega" and not isinstance(self.target, DeltaOp):
            raise ValueError("curve target must be 'omega' or a DeltaOp")

    @property
    def kind(self) -> str:
        return "polynomial" if self.coefficients else "sampled"

    def __call__(self, t) -> Vector:
        if self.func is not None:
            return tuple(self.func(t))
        out = self.coefficients[-1]
        for c in reversed(self.coefficients[:-1]):
            out = linalg.vadd(linalg.vscale(t, out), c)
        return out

    @property
    def base_point(self) -> Vector:
        return self.coefficients[0] if self.coefficients else self(0.0)

    def target_key(self) -> str:
        return "omega" if self.target == "omega" else self.target.key


@dataclass(frozen=True)
class LocalMonoidSpec:
    ambient: SevenTuple
    g_member: Member
    delta: tuple[DeltaOp, ...]
    omega_member: Member
    curves: tuple[Curve, ...] = ()
    g_sampler: Sampler | None = None
    omega_sampler: Sampler | None = None
    samples: int = 20
    seed: int = 0
    tol: float | None = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("sample budget must be at least 1")
        object.__setattr__(self, "delta", tuple(self.delta))
        object.__setattr__(self, "curves", tuple(self.curves))

    @property
    def tolerance(self):
        if self.tol is not None:
            return self.tol
        return 0 if self.ambient.mode == linalg.RATIONAL else 1e-9

    def with_trivial_omega(self) -> "LocalMonoidSpec":
        """The same data with Omega replaced by the identity alone."""
        A = self.ambient
        return replace(
            self,
            omega_member=lambda v: linalg.is_zero(linalg.vsub(v, A.identity), self.tolerance),
            omega_sampler=lambda rng: A.identity,
            curves=tuple(c for c in self.curves if c.target != "omega"),
        )

    def curve_points(self, rng: random.Random, target_filter) -> list[Vector]:
        pts = []
        for c in self.curves:
            if c.kind == "polynomial" and target_filter(c.target):
                t = Fraction(rng.randint(-100, 100), 100) * c.domain
                pts.append(c(t))
        return pts


# --- named predicates ------------------------------------------------------------


def _diagonal_indices(A: SevenTuple) -> tuple[list[int], list[int]]:
    model = A.model or {}
    n = model.get("n")
    if n is None or A.dim != n * (n + 1) // 2:
        raise ValueError("named predicate needs an upper-triangular matrix model")
    pos = upper_triangular_positions(n)
    diag = [i for i, (r, c) in enumerate(pos) if r == c]
    off = [i for i, (r, c) in enumerate(pos) if r != c]
    return diag, off


def named_membership(A: SevenTuple, name: str, params: dict | None = None, tol: float = 0) -> tuple[Member, Sampler]:
    """Membership predicate and sampler for a named subset of ``A``.

    ``positive_diagonal`` and ``unipotent`` (option ``nonnegative``) refer to
    upper-triangular matrix models; ``identity`` and ``halo`` work anywhere.
    """
    params = dict(params or {})
    if name == "identity":
        return (lambda v: linalg.is_zero(linalg.vsub(v, A.identity), tol)), (lambda rng: A.identity)
    if name == "halo":
        halo = compute_halo(A)
        return (lambda v: halo.contains(v, tol)), halo.sample
    diag, off = _diagonal_indices(A)
    if name == "positive_diagonal":
        def member(v):
            return all(v[i] > tol for i in diag)

        def sampler(rng):
            v = [Fraction(0)] * A.dim
            for i in diag:
                v[i] = Fraction(rng.randint(1, 12), rng.randint(1, 4))
            for i in off:
                v[i] = random_rational(rng)
            return tuple(v)

        return member, sampler
    if name == "unipotent":
        nonneg = bool(params.get("nonnegative", False))

        def member(v):
            return all(abs(v[i] - 1) <= tol for i in diag) and (not nonneg or all(v[i] >= -tol for i in off))

        def sampler(rng):
            v = [Fraction(0)] * A.dim
            for i in diag:
                v[i] = Fraction(1)
            for i in off:
                x = random_rational(rng)
                v[i] = abs(x) if nonneg else x
            return tuple(v)

        return member, sampler
    raise ValueError(f"unknown membership predicate {name!r}")


# --- verification -------------------------------------------------------------------------


def _merge(law: str, reports: Sequence[CheckReport], note: str = "") -> CheckReport:
    tally = _Tally(law, 0, sampled=True)
    for r in reports:
        tally.count += r.checked
        tally.max_residual = max(tally.max_residual, r.max_residual)
        if r.witness is not None and tally.witness is None:
            tally.witness = r.witness
            tally.note = r.note
    return tally.report(note)


def verify_local_monoid(spec: LocalMonoidSpec) -> list[CheckReport]:
    """Sampled checks of the five local-monoid properties, keyed
    ``def2.2(i)`` through ``def2.2(v)``."""
    A = spec.ambient
    tol = spec.tolerance
    rng = random.Random(spec.seed)
    halo = compute_halo(A)

    omega_pts = [spec.omega_sampler(rng) for _ in range(spec.samples)] if spec.omega_sampler else []
    omega_pts += spec.curve_points(rng, lambda t: t == "omega")
    g_pts = [spec.g_sampler(rng) for _ in range(spec.samples)] if spec.g_sampler else []
    g_pts += spec.curve_points(rng, lambda t: t != "omega")
    g_pts += [op.unit(A) for op in spec.delta]
    if not g_pts:
        g_pts = [A.identity]

    conj_count = max(1, min(len(g_pts), 8))
    conjugators: list[tuple[Vector, Diconjugator]] = []
    t1 = _Tally("def2.2(i)", tol, sampled=True)
    for a in g_pts[:conj_count]:
        t1.count += 1
        try:
            conjugators.append((a, Diconjugator(A, a, halo=halo, tol=tol)))
        except NotOneSidedInvertible:
            t1.fail(("not_one_sided_invertible", a), note="sample of G is not one-sided invertible")
    for a, D in conjugators:
        for g in g_pts:
            t1.count += 1
            img = D(g)
            if not spec.g_member(img):
                t1.fail((a, g), img, img, note="diconjugation leaves G")
    reports = [t1.report()]

    t2 = _Tally("def2.2(ii)", tol, sampled=True)
    for op in spec.delta:
        t2.count += 1
        if op.kind == "huliu":
            if not spec.g_member(op.e):
                t2.fail(("not_in_G", op.e), note=f"{op.key}: bar-unit is outside G")
            elif not halo.contains(op.e, tol):
                t2.fail(("not_bar_unit", op.e), note=f"{op.key}: not a bar-unit")
    reports.append(t2.report())

    t3 = _Tally("def2.2(iii)", tol, sampled=True)
    units = [op.e for op in spec.delta if op.kind == "huliu"]
    for e in units:
        for a, D in conjugators:
            t3.count += 1
            shifted = D(e)
            if not any(linalg.is_zero(linalg.vsub(shifted, u), tol) for u in units):
                t3.fail((a, e), shifted, shifted, note="shifted Hu-Liu product is not in Delta")
    reports.append(t3.report())

    sub4 = []
    for op in spec.delta:
        try:
            fn = op.operation(A)
        except NotBarUnit:
            t = _Tally("def2.2(iv)", tol, sampled=True)
            t.fail(("not_bar_unit", op.e), note=f"{op.key}: Hu-Liu product undefined")
            sub4.append(t.report())
            continue
        sub4.append(check_monoid(g_pts, fn, op.unit(A), spec.g_member, law="def2.2(iv)", tol=tol, seed=spec.seed))
    reports.append(_merge("def2.2(iv)", sub4, note=", ".join(op.key for op in spec.delta)))

    t5 = _Tally("def2.2(v)", tol, sampled=True)
    for w in omega_pts:
        t5.count += 1
        if not spec.omega_member(w):
            t5.fail(("curve_leaves_omega", w), note="a point of an Omega curve is outside Omega")
            continue
        if not spec.g_member(w):
            t5.fail(("omega_not_in_G", w), note="element of Omega is outside G")
        elif not halo.contains(w, tol):
            t5.fail(("omega_not_in_halo", w), note="element of Omega is not a bar-unit")
        else:
            try:
                sharp_inverse(A, w, tol=tol)
            except NoInverse:
                t5.fail(("omega_not_invertible", w), note="element of Omega is not invertible")
        for a, D in conjugators:
            t5.count += 1
            img = D(w)
            if not spec.omega_member(img):
                t5.fail(("conjugate_leaves_omega", a, w), img, img, note="diconjugation leaves Omega")
    group_samples = omega_pts or [A.identity]
    group = check_group(group_samples, A, spec.omega_member, law="def2.2(v)", tol=tol, seed=spec.seed)
    reports.append(_merge("def2.2(v)", [t5.report(), group]))
    return reports
