"""Tangent-like spaces of a local monoid and the certified passage to a
local Leibniz algebra.

Tangent sets are the spans of the supplied curves' derivatives at their
base points, so they are lower bounds ("generated tangent spaces") for the
sets defined by quantifying over every differentiable curve.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

from . import linalg
from .axioms import CheckReport, _Tally
from .leibniz import LocalLeibnizReport, brackets_from, check_lie, verify_local_leibniz
from .linalg import Subspace, Vector
from .local_monoid import Curve, LocalMonoidSpec, _merge
from .units import ConsistencyError, compute_additive_halo

RICHARDSON_STEPS = (1e-2, 1e-3, 1e-4)
SAMPLED_BASE_TOL = 1e-9
SAMPLED_SPACE_TOL = 1e-8


class CurveBaseError(ValueError):
    def __init__(self, index: int, message: str):
        super().__init__(f"curve {index}: {message}")
        self.index = index


class Derivative(NamedTuple):
    value: Vector
    error: float


def curve_derivative(c: Curve) -> Derivative:
    """Exact first coefficient for polynomial curves; Richardson-extrapolated
    central differences for sampled ones."""
    if c.kind == "polynomial":
        if len(c.coefficients) < 2:
            return Derivative(linalg.zeros(len(c.coefficients[0])), 0.0)
        return Derivative(c.coefficients[1], 0.0)
    return _richardson(c)


def _central(c: Curve, h: float) -> list[float]:
    try:
        fp, fm = c(h), c(-h)
    except Exception as exc:
        raise ValueError(f"curve callback failed at t = +/-{h}") from exc
    return [(float(a) - float(b)) / (2 * h) for a, b in zip(fp, fm)]


def _richardson(c: Curve) -> Derivative:
    steps = [h for h in RICHARDSON_STEPS if h <= float(c.domain)]
    if not steps:
        raise ValueError("curve domain is too small for the difference steps")
    table = [_central(c, h) for h in steps]
    ratio = steps[0] / steps[1] if len(steps) > 1 else 10.0
    # central differences have error expansion in h^2, h^4, ...
    power = 2
    error = float("inf")
    while len(table) > 1:
        f = ratio ** power
        nxt = [[(f * b - a) / (f - 1) for a, b in zip(lo, hi)] for lo, hi in zip(table, table[1:])]
        error = max(abs(a - b) for a, b in zip(nxt[-1], table[-1]))
        table = nxt
        power += 2
    if error == float("inf"):
        error = 0.0
    return Derivative(tuple(table[0]), error)


@dataclass
class TangentReport:
    t_omega: Subspace
    t_star: dict[str, Subspace]
    t_total: Subspace
    derivatives: list[tuple[str, Vector, float]]
    checks: list[CheckReport] = field(default_factory=list)
    local_leibniz: LocalLeibnizReport | None = None
    halo_containment: bool | None = None
    local_monoid: list[CheckReport] = field(default_factory=list)

    @property
    def tolerance(self) -> float:
        return 0 if all(s.mode == linalg.RATIONAL for s in self._spaces()) else SAMPLED_SPACE_TOL

    def _spaces(self):
        return [self.t_omega, self.t_total, *self.t_star.values()]

    @property
    def kind(self) -> str:
        return "Leibniz algebra" if self.t_omega.dim == 0 else "local Leibniz algebra"

    @property
    def passed(self) -> bool:
        parts = [r.passed for r in self.checks + self.local_monoid if r.required]
        if self.local_leibniz is not None:
            parts.append(self.local_leibniz.passed)
        if self.halo_containment is not None:
            parts.append(self.halo_containment)
        return all(parts)

    def to_json(self, describe=None) -> dict:
        def space(s: Subspace) -> dict:
            out = {"dim": s.dim, "basis": [[linalg.format_scalar(c) for c in b] for b in s.basis]}
            if describe is not None:
                out["span"] = "span{" + ", ".join(describe(b) for b in s.basis) + "}"
            return out

        return {
            "kind": self.kind,
            "generated": True,
            "T_omega": space(self.t_omega),
            "T_star": {k: space(v) for k, v in self.t_star.items()},
            "T_total": space(self.t_total),
            "derivatives": [
                {"target": t, "value": [linalg.format_scalar(c) for c in v], "error": e}
                for t, v, e in self.derivatives
            ],
            "checks": [r.to_json() for r in self.checks],
            "local_leibniz": self.local_leibniz.to_json() if self.local_leibniz else None,
            "halo_containment": self.halo_containment,
        }


def _check_base_points(spec: LocalMonoidSpec) -> None:
    A = spec.ambient
    keys = {op.key for op in spec.delta}
    for idx, c in enumerate(spec.curves):
        expected = A.identity if c.target == "omega" else c.target.unit(A)
        if c.target != "omega" and c.target.key not in keys:
            raise CurveBaseError(idx, f"target {c.target.key} is not in Delta")
        base = c.base_point
        if len(base) != A.dim:
            raise CurveBaseError(idx, "wrong dimension")
        tol = 0 if c.kind == "polynomial" and linalg.mode_of(base) == linalg.RATIONAL else SAMPLED_BASE_TOL
        if not linalg.is_zero(linalg.vsub(base, expected), tol):
            raise CurveBaseError(idx, f"base point {base} differs from the required unit {expected}")
        member = spec.omega_member if c.target == "omega" else spec.g_member
        if not member(base):
            raise CurveBaseError(idx, "base point is outside the target set")


def tangent_spaces(spec: LocalMonoidSpec) -> TangentReport:
    _check_base_points(spec)
    A = spec.ambient
    groups: dict[str, list[Vector]] = {"omega": []}
    for op in spec.delta:
        groups.setdefault(op.key, [])
    derivs = []
    for c in spec.curves:
        d = curve_derivative(c)
        groups[c.target_key()].append(d.value)
        derivs.append((c.target_key(), d.value, d.error))
    t_omega = Subspace.span(groups["omega"], A.dim)
    t_star = {op.key: Subspace.span(groups[op.key], A.dim) for op in spec.delta}
    t_total = linalg.subspace_sum(t_omega, *t_star.values())
    return TangentReport(t_omega, t_star, t_total, derivs)


def _containment(law: str, pairs, bracket, target: Subspace | None, tol) -> CheckReport:
    """``bracket(x, y)`` vanishes (target None) or lies in ``target``."""
    tally = _Tally(law, tol)
    for x, y in pairs:
        v = bracket(x, y)
        if target is None:
            tally.add((x, y), v, linalg.zeros(len(v)))
        else:
            tally.count += 1
            if not target.contains(v, tol):
                tally.fail((x, y), v, v, residual=linalg.projection_residual(target, v),
                           note="bracket image escapes the target space")
    return tally.report()


def verify_passage(spec: LocalMonoidSpec, report: TangentReport | None = None) -> TangentReport:
    """Check the bracket claims on the generated tangent spaces and certify
    the result as a (local) Leibniz algebra with local part ``T_omega``."""
    A = spec.ambient
    report = report or tangent_spaces(spec)
    tol = report.tolerance
    pair = brackets_from(A)
    T_om = [tuple(b) for b in report.t_omega.basis]
    T_st = {k: [tuple(b) for b in s.basis] for k, s in report.t_star.items()}
    all_star = [v for vs in T_st.values() for v in vs]
    star_sum = linalg.subspace_sum(Subspace.zero(A.dim), *report.t_star.values())

    checks = [
        _merge("eq23", check_lie(pair, report.t_omega, tol), note="T_omega is a Lie algebra under the square bracket"),
        CheckReport("eq24", True, checked=len(T_st), note="each T_* is a span, hence a subspace"),
        _containment("eq25", itertools.product(T_om, T_om), pair.ang, None, tol),
        _containment("eq26", itertools.product(all_star, T_om), pair.ang, None, tol),
        _containment("eq27", itertools.product(T_om, all_star), pair.ang, report.t_omega, tol),
        _containment("eq28", itertools.product(all_star, all_star), pair.ang, star_sum, tol),
    ]
    for r in checks:
        r.sampled = False
    report.checks = checks
    report.local_leibniz = verify_local_leibniz(pair, report.t_omega, report.t_total, tol)

    plus = compute_additive_halo(A, A.identity).kernel
    report.halo_containment = plus.contains_space(report.t_omega, tol)
    checks.append(CheckReport(
        "prop3.1_halo", True, checked=report.t_omega.dim, note="T_omega inside the additive halo",
    ) if report.halo_containment else CheckReport(
        "prop3.1_halo", False, _escape_witness(plus, report.t_omega, tol), report.t_omega.dim,
        note="T_omega leaves the additive halo",
    ))

    if report.t_omega.dim == 0:
        local_items = ("eq20_annihilation", "eq20_containment", "square_closure", "eq21", "jacobi", "eq19")
        for r in report.local_leibniz.checks:
            if r.law in local_items and (r.checked or not r.passed):
                raise ConsistencyError("zero local part must make every local-part condition vacuous")
    return report


def _escape_witness(S: Subspace, T: Subspace, tol):
    from .axioms import Witness

    for b in T.basis:
        if not S.contains(b, tol):
            return Witness((tuple(b),), tuple(b), tuple(b), linalg.projection_residual(S, b))
    raise AssertionError("no escaping vector")
