from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gridhom.errors import NotDivisible
from gridhom.laurent import LaurentPoly, bareiss_det, product

polys = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=5).map(LaurentPoly)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly()


@given(polys, polys)
def test_exact_division(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a


def test_inexact_division_raises():
    with pytest.raises(NotDivisible):
        LaurentPoly({0: 1, 1: 1}).exact_div(LaurentPoly({0: 2}))


@given(polys)
def test_list_roundtrip_and_evaluate(a):
    off, cs = a.to_list()
    assert LaurentPoly.from_list(off, cs) == a
    assert a.evaluate(Fraction(2)) == sum(Fraction(2) ** e * v for e, v in a.c.items())


def test_normalized_symmetrizes():
    p = LaurentPoly({0: 1, 1: -1, 2: 1}).normalized()
    assert p.to_list() == (-1, [1, -1, 1])
    assert LaurentPoly({0: -1, 1: 1, 2: -1}).normalized() == p
    assert product([p, p]) == p * p


@given(st.lists(st.lists(polys, min_size=3, max_size=3), min_size=3, max_size=3))
def test_bareiss_matches_fraction_determinant(M):
    from itertools import permutations
    det = bareiss_det(M)
    for t in (Fraction(2), Fraction(-3, 2)):
        ev = [[p.evaluate(t) for p in row] for row in M]
        ref = Fraction(0)
        for perm in permutations(range(3)):
            sign = 1
            for i in range(3):
                for j in range(i + 1, 3):
                    if perm[i] > perm[j]:
                        sign = -sign
            ref += sign * ev[0][perm[0]] * ev[1][perm[1]] * ev[2][perm[2]]
        assert det.evaluate(t) == ref
