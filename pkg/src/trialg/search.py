"""Randomized search for small 7-tuples satisfying the trisemigroup laws."""

from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction

from . import linalg
from .axioms import LAWS, TRISEMIGROUP_LAWS, check_triunit
from .specfile import algebra_document
from .trialgebra import SevenTuple, StructureTensor
from .units import compute_halo

MAX_SEARCH_DIM = 6
_VALUES = (Fraction(1), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2))


def first_failure(A: SevenTuple, laws=TRISEMIGROUP_LAWS):
    """First ``(law, triple)`` violated exactly on a basis triple, or None."""
    basis = A.basis_vectors()
    for law in laws:
        f = LAWS[law]
        for i, j, k in itertools.product(range(A.dim), repeat=3):
            lhs, rhs = f(A, basis[i], basis[j], basis[k])
            if lhs != rhs:
                return law, (i, j, k)
    return None


def _random_tensor(rng: random.Random, n: int, density: float) -> StructureTensor:
    entries = {}
    for key in itertools.product(range(n), repeat=3):
        if rng.random() < density:
            entries[key] = rng.choice(_VALUES)
    return StructureTensor(n, entries)


def _sharp_unit(t: StructureTensor):
    n = t.dim
    rows, rhs = [], []
    for i in range(n):
        b = linalg.unit_vector(n, i)
        for M in (t.right_matrix(b), t.left_matrix(b)):
            rows.extend(M)
            rhs.extend(b)
    sol = linalg.solve_linear(rows, rhs)
    return None if sol.empty else sol.basepoint


def candidate(rng: random.Random, n: int) -> SevenTuple | None:
    density = rng.choice((1 / n, 1 / (n * n), 2 / (n * n)))
    sharp = _random_tensor(rng, n, density)
    unit = _sharp_unit(sharp)
    if unit is None:
        return None
    left = sharp if rng.random() < 0.5 else _random_tensor(rng, n, density)
    right = sharp if rng.random() < 0.5 else _random_tensor(rng, n, density)
    return SevenTuple(n, sharp, left, right, unit, model={"family": "search"})


def search(dim: int, seed: int, budget: int) -> list[dict]:
    """Algebra documents of every surviving candidate, in discovery order."""
    if not 1 <= dim <= MAX_SEARCH_DIM:
        raise ValueError(f"search dimension must be between 1 and {MAX_SEARCH_DIM}")
    rng = random.Random(seed)
    seen, out = set(), []
    for _ in range(budget):
        A = candidate(rng, dim)
        if A is None or first_failure(A) is not None:
            continue
        if not all(r.passed for r in check_triunit(A, A.identity)):
            continue
        if compute_halo(A).empty:
            continue
        doc = algebra_document(A)
        key = json.dumps(doc, sort_keys=True)
        if key not in seen:
            seen.add(key)
            out.append(doc)
    return out
