import pytest
from hypothesis import given
from hypothesis import strategies as st

from gridhom.braids import (BraidWord, braid_closure_grid, diagonal_family_grid, family_word,
                            parse_word)
from gridhom.diagonal import top_report
from gridhom.errors import NotAKnot, ParseError, ValidationError
from gridhom.grid import component_count, is_diagonal
from gridhom.homology import hat_homology
from gridhom.laurent import LaurentPoly
from gridhom.planar import fox_alexander_grid, from_grid

TREF = LaurentPoly.from_list(-1, [1, -1, 1])


def test_parse_and_format():
    w = parse_word("a1^4 a2 a1^3 a2^2")
    assert w.strands == 3 and len(w) == 10
    assert str(w) == "a1^4 a2 a1^3 a2^2"
    assert parse_word("s1, σ2^-2").letters == (1, -2, -2)
    assert parse_word("a1", strands=4).strands == 4


@pytest.mark.parametrize("bad", ["b1", "a0", "a1^x", "a"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_word(bad)


def test_generator_range():
    with pytest.raises(ValidationError):
        BraidWord(2, (2,))


def test_small_closures():
    U = braid_closure_grid(parse_word("a1"))
    assert fox_alexander_grid(U) == LaurentPoly.const(1)
    T = braid_closure_grid(parse_word("a1^3"))
    assert T.n == 2 * 3 + 2 * 2
    assert fox_alexander_grid(T) == TREF
    with pytest.raises(NotAKnot):
        braid_closure_grid(parse_word("a1^2"))


def test_closure_chirality():
    pos = braid_closure_grid(parse_word("a1^3"))
    neg = braid_closure_grid(parse_word("a1^-3"))
    assert all(from_grid(pos).sign(c) == 1 for c in from_grid(pos).crossings)
    assert all(from_grid(neg).sign(c) == -1 for c in from_grid(neg).crossings)
    hp = hat_homology(pos, [1])
    hn = hat_homology(neg, [1])
    assert hp[(0, 1)] == 1 and hn[(2, 1)] == 1            # right- vs left-handed trefoil


def test_10_139():
    w = parse_word("a1^4 a2 a1^3 a2^2")
    B = braid_closure_grid(w)
    D = diagonal_family_grid([4, 3], 1)
    want = LaurentPoly.from_list(-4, [1, -1, 0, 2, -3, 2, 0, -1, 1])
    assert fox_alexander_grid(B) == want == fox_alexander_grid(D)
    assert is_diagonal(D) and D.n == 13
    assert family_word([4, 3], 1) == w


@pytest.mark.parametrize("ms, l, size", [([1], 0, 7), ([1, 1], 0, 8), ([3], 0, 9), ([3], 2, 10),
                                         ([2, 1], 1, 9), ([5], 0, 11), ([1, 3], 2, 12), ([4, 3], 1, 13)])
def test_family_sizes(ms, l, size):
    assert diagonal_family_grid(ms, l).n == size


@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), st.integers(0, 3))
def test_family_grid_matches_closure(ms, l):
    w = family_word(ms, l)
    if w.closure_components() != 1:
        with pytest.raises(NotAKnot):
            diagonal_family_grid(ms, l)
        return
    D = diagonal_family_grid(ms, l)
    assert is_diagonal(D) and component_count(D) == 1
    assert fox_alexander_grid(D) == fox_alexander_grid(braid_closure_grid(w))


def test_two_two_family_is_never_a_knot():
    # s1 only ever appears squared, so the first strand closes up by itself
    for l in range(4):
        assert family_word([2, 2], l).closure_components() >= 2
        with pytest.raises(NotAKnot):
            diagonal_family_grid([2, 2], l)
    tr = top_report(diagonal_family_grid([2, 1], 1))
    assert tr.top == {0: 1} and tr.next == {-1: 1}


@given(st.lists(st.sampled_from([1, 2, -1, -2]), min_size=1, max_size=7))
def test_random_closure_is_consistent(letters):
    w = BraidWord(3, tuple(letters))
    if w.closure_components() != 1:
        return
    G = braid_closure_grid(w)
    assert G.n == 2 * len(letters) + 6
    assert len(from_grid(G).crossings) == len(letters)
