from fractions import Fraction as F

import oracles as O


def test_frozen_products_match_matrix_formulas():
    E11, E12, E22 = O.basis(2)
    assert O.sharp(E11, E12, 2) == O.U2_FROZEN["sharp(E11,E12)"]
    assert O.sharp(E12, E22, 2) == O.U2_FROZEN["sharp(E12,E22)"]
    assert O.sharp(E12, E11, 2) == O.U2_FROZEN["sharp(E12,E11)"]
    assert O.left(E12, E22, 2) == O.U2_FROZEN["left(E12,E22)"]
    assert O.left(E11, E12, 2) == O.U2_FROZEN["left(E11,E12)"]
    assert O.right(E11, E12, 2) == O.U2_FROZEN["right(E11,E12)"]


def test_frozen_inverse_values():
    x = (F(2), F(0), F(1))
    w = O.U2_FROZEN["left_inverse(2,0,1)"]
    assert O.left(w, x, 2) == O.identity(2)
    a = (F(2), F(3), F(4))
    assert O.sharp(a, O.U2_FROZEN["sharp_inverse(2,3,4)"], 2) == O.identity(2)


def test_frozen_hu_liu_value():
    e = (F(1), F(1), F(1))
    E11, _, E22 = O.basis(2)
    # x.y = x<-y + x->y - (x<-e)->y
    v = O.sub(O.add(O.right(E11, E22, 2), O.left(E11, E22, 2)), O.left(O.right(E11, e, 2), E22, 2))
    assert v == O.U2_FROZEN["huliu_e111(E11,E22)"]
