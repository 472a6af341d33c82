import pytest

from trialg.axioms import check_trisemigroup, check_triunit
from trialg.search import search
from trialg.specfile import parse_algebra
from trialg.units import compute_halo


def test_dim1_includes_scalar_collapse():
    docs = search(1, seed=0, budget=300)
    As = [parse_algebra(d) for d in docs]
    assert any(A.sharp == A.left == A.right and A.sharp[(0, 0, 0)] == 1 for A in As)


@pytest.mark.parametrize("dim,seed,budget", [(2, 1, 2000), (3, 42, 500)])
def test_survivors_recheck(dim, seed, budget):
    for doc in search(dim, seed, budget):
        A = parse_algebra(doc)
        assert all(r.passed for r in check_trisemigroup(A) + check_triunit(A, A.identity))
        assert not compute_halo(A).empty


def test_deterministic():
    assert search(2, 5, 200) == search(2, 5, 200)


def test_dimension_guard():
    with pytest.raises(ValueError):
        search(7, 0, 10)
