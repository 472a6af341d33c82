from dataclasses import replace

import pytest

from trialg.local_monoid import DeltaOp, named_membership, verify_local_monoid
from trialg.specfile import parse_local_monoid, upper_triangular_passage_document
from trialg.specfile import parse_algebra


def u2_spec(**kw):
    doc = upper_triangular_passage_document(2, ("sharp", "huliu"), samples=kw.pop("samples", 20))
    A = parse_algebra(doc)
    return A, parse_local_monoid(doc, A, **kw)


def by_law(reports):
    return {r.law: r for r in reports}


def test_u2_local_monoid_passes():
    A, spec = u2_spec()
    reports = verify_local_monoid(spec)
    assert [r.law for r in reports] == [f"def2.2({i})" for i in ("i", "ii", "iii", "iv", "v")]
    assert all(r.passed and r.sampled for r in reports)


def test_trivial_omega_rerun_passes():
    A, spec = u2_spec()
    assert all(r.passed for r in verify_local_monoid(spec.with_trivial_omega()))


def test_nonnegative_unipotents_are_not_a_group():
    A, spec = u2_spec()
    member, sampler = named_membership(A, "unipotent", {"nonnegative": True})
    curves = tuple(c for c in spec.curves if c.target != "omega")
    r = by_law(verify_local_monoid(replace(spec, omega_member=member, omega_sampler=sampler, curves=curves)))
    assert not r["def2.2(v)"].passed
    assert r["def2.2(v)"].witness.args[0] == "inverse"
    # a two-sided curve through the identity leaves the one-sided set
    r = by_law(verify_local_monoid(replace(spec, omega_member=member, omega_sampler=sampler)))
    assert r["def2.2(v)"].witness.args[0] == "curve_leaves_omega"


def test_non_bar_unit_hu_liu_fails_item_ii():
    A, spec = u2_spec()
    spec = replace(spec, delta=spec.delta + (DeltaOp.huliu((2, 0, 1)),))
    r = by_law(verify_local_monoid(spec))
    assert not r["def2.2(ii)"].passed
    assert "not a bar-unit" in r["def2.2(ii)"].note


def test_deterministic_in_seed():
    _, a = u2_spec(seed=3)
    _, b = u2_spec(seed=3)
    ja = [r.to_json() for r in verify_local_monoid(a)]
    jb = [r.to_json() for r in verify_local_monoid(b)]
    assert ja == jb


def test_delta_op_validation():
    with pytest.raises(ValueError):
        DeltaOp("huliu")
    with pytest.raises(ValueError):
        DeltaOp("plus")
    assert DeltaOp.huliu((1, 0, 1)).key == "huliu(1,0,1)"


def test_unknown_predicate():
    A, _ = u2_spec()
    with pytest.raises(ValueError):
        named_membership(A, "compact")
