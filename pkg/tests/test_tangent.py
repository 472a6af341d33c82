import math
from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trialg import linalg
from trialg.linalg import Subspace
from trialg.local_monoid import Curve, DeltaOp
from trialg.specfile import parse_algebra, parse_local_monoid, upper_triangular_passage_document
from trialg.tangent import CurveBaseError, curve_derivative, tangent_spaces, verify_passage

SHARP = DeltaOp.sharp()


def spec_for(n, delta=("sharp",)):
    doc = upper_triangular_passage_document(n, delta)
    A = parse_algebra(doc)
    return A, parse_local_monoid(doc, A)


def test_polynomial_derivative_exact():
    c = Curve("omega", ((1, 0, 1), (0, 1, 0)))
    assert curve_derivative(c) == ((0, 1, 0), 0.0)


def test_sampled_exp_derivative():
    c = Curve(SHARP, func=lambda t: (math.exp(t), 0.0, 1.0))
    d = curve_derivative(c)
    assert max(abs(a - b) for a, b in zip(d.value, (1, 0, 0))) <= 1e-8


def test_sampled_even_function():
    c = Curve("omega", func=lambda t: (1.0, t * t, 1.0))
    assert max(abs(a) for a in curve_derivative(c).value) <= 1e-8


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.fractions(-3, 3, max_denominator=4), min_size=3, max_size=3), min_size=2, max_size=5))
def test_sampled_path_matches_polynomial(coeffs):
    coeffs = [tuple(c) for c in coeffs]
    poly = Curve("omega", coeffs)

    def f(t):
        return tuple(float(x) for x in poly(F(t)))

    d = curve_derivative(Curve("omega", func=f))
    assert max(abs(a - float(b)) for a, b in zip(d.value, coeffs[1])) <= 1e-9


def test_u2_tangent_spaces():
    A, spec = spec_for(2, ("sharp", "huliu"))
    rep = tangent_spaces(spec)
    assert rep.t_omega == Subspace.span([(0, 1, 0)], 3)
    assert rep.t_total == Subspace.full(3)
    assert rep.t_total == linalg.subspace_sum(rep.t_omega, *rep.t_star.values())


def test_sampled_sharp_curves_span_everything():
    A, spec = spec_for(2)
    curves = (
        Curve("omega", func=lambda t: (1.0, t, 1.0)),
        Curve(SHARP, func=lambda t: (math.exp(t), 0.0, 1.0)),
        Curve(SHARP, func=lambda t: (1.0, t, 1.0)),
        Curve(SHARP, func=lambda t: (1.0, 0.0, math.exp(t))),
    )
    rep = tangent_spaces(replace(spec, curves=curves))
    assert rep.t_star["sharp"].dim == 3
    assert rep.t_omega.same_span(Subspace.span([(0, 1, 0)], 3), 1e-8)
    rep = verify_passage(replace(spec, curves=curves))
    assert rep.passed


def test_missing_tag_gives_zero_summand():
    A, spec = spec_for(2)
    rep = tangent_spaces(replace(spec, curves=tuple(c for c in spec.curves if c.target == "omega")))
    assert rep.t_star["sharp"].dim == 0


def test_base_point_mismatch():
    A, spec = spec_for(2)
    bad = Curve("omega", ((1, 1, 1), (0, 1, 0)))
    with pytest.raises(CurveBaseError) as info:
        tangent_spaces(replace(spec, curves=spec.curves + (bad,)))
    assert info.value.index == len(spec.curves)
    off = Curve("omega", func=lambda t: (1.0, 1e-6 + t, 1.0))
    with pytest.raises(CurveBaseError):
        tangent_spaces(replace(spec, curves=(off,)))


def test_monotonicity():
    A, spec = spec_for(3)
    prev = None
    for k in range(len(spec.curves) + 1):
        rep = tangent_spaces(replace(spec, curves=spec.curves[:k]))
        spaces = [rep.t_omega, rep.t_total, *rep.t_star.values()]
        if prev is not None:
            assert all(b.contains_space(a) for a, b in zip(prev, spaces))
        prev = spaces


@pytest.mark.parametrize("n,delta", [(2, ("sharp", "huliu")), (3, ("sharp",)), (2, ("sharp",))])
def test_passage(n, delta):
    A, spec = spec_for(n, delta)
    rep = verify_passage(spec)
    assert rep.passed
    assert rep.t_omega.dim == n * (n - 1) // 2
    assert rep.halo_containment
    assert [r.law for r in rep.checks] == ["eq23", "eq24", "eq25", "eq26", "eq27", "eq28", "prop3.1_halo"]
    assert rep.kind == "local Leibniz algebra"


def test_trivial_omega_gives_leibniz_algebra():
    A, spec = spec_for(2)
    rep = verify_passage(spec.with_trivial_omega())
    assert rep.passed and rep.t_omega.dim == 0 and rep.kind == "Leibniz algebra"


def test_local_part_outside_additive_halo_fails():
    # a local part outside the additive halo breaks the bracket claims
    A, spec = spec_for(2)
    bad = Curve("omega", ((1, 0, 1), (1, 0, 0)))

    def anything(v):
        return True

    rep = verify_passage(replace(spec, curves=spec.curves + (bad,), omega_member=anything))
    assert not rep.passed
    assert not rep.halo_containment
