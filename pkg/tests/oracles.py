"""Independent reference computations for the upper-triangular model.

Products are computed on explicit n x n matrices of Fractions, without
touching the package, so they can serve as ground truth.
"""

from __future__ import annotations

from fractions import Fraction as F


def positions(n):
    return [(r, c) for r in range(n) for c in range(r, n)]


def to_matrix(v, n):
    M = [[F(0)] * n for _ in range(n)]
    for (r, c), x in zip(positions(n), v):
        M[r][c] = F(x)
    return M


def to_coords(M):
    n = len(M)
    return tuple(M[r][c] for r, c in positions(n))


def mm(X, Y):
    n = len(X)
    return [[sum((X[i][k] * Y[k][j] for k in range(n)), F(0)) for j in range(n)] for i in range(n)]


def diag(X):
    n = len(X)
    return [[X[i][j] if i == j else F(0) for j in range(n)] for i in range(n)]


def sharp(x, y, n):
    return to_coords(mm(to_matrix(x, n), to_matrix(y, n)))


def left(x, y, n):
    """x -> y = x phi(y)"""
    return to_coords(mm(to_matrix(x, n), diag(to_matrix(y, n))))


def right(x, y, n):
    """x <- y = phi(x) y"""
    return to_coords(mm(diag(to_matrix(x, n)), to_matrix(y, n)))


def dim(n):
    return n * (n + 1) // 2


def identity(n):
    return to_coords([[F(int(i == j)) for j in range(n)] for i in range(n)])


def basis(n):
    d = dim(n)
    return [tuple(F(int(i == k)) for k in range(d)) for i in range(d)]


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def angle(x, y, n):
    return sub(left(x, y, n), right(y, x, n))


def square(x, y, n):
    return sub(sharp(x, y, n), sharp(y, x, n))


def strictly_upper_basis(n):
    d = dim(n)
    return [tuple(F(int(i == k)) for k in range(d)) for i, (r, c) in enumerate(positions(n)) if r != c]


# Frozen values for U_2 in coordinates (E11, E12, E22), derived by hand from
# the matrix formulas above and re-checked against them in test_oracles.py.
U2_FROZEN = {
    "sharp(E11,E12)": (F(0), F(1), F(0)),
    "sharp(E12,E22)": (F(0), F(1), F(0)),
    "sharp(E12,E11)": (F(0), F(0), F(0)),
    "left(E12,E22)": (F(0), F(1), F(0)),
    "left(E11,E12)": (F(0), F(0), F(0)),
    "right(E11,E12)": (F(0), F(1), F(0)),
    "huliu_e111(E11,E22)": (F(0), F(-1), F(0)),
    "left_inverse(2,0,1)": (F(1, 2), F(0), F(1)),
    "sharp_inverse(2,3,4)": (F(1, 2), F(-3, 8), F(1, 4)),
    "psi_(1,0,2)(E12)": (F(0), F(2), F(0)),
    "psi_(1,0,2)(1,3,1)": (F(1), F(6), F(1)),
    "halo_basepoint": (F(1), F(0), F(1)),
}
