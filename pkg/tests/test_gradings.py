from itertools import permutations

from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import grids
from gridhom.diagonal import x0
from gridhom.gradings import (alexander, alexander_direct, contribution_table, maslov, maslov_direct,
                              recut_state)
from gridhom.grid import all_diagonal_grids, cyclic_shift


@given(grids(max_n=5))
def test_gradings_match_reference(G):
    ct = contribution_table(G)
    for x in permutations(range(G.n)):
        m, a = oracles.gradings(G, x)
        assert maslov(G, x) == m == maslov_direct(G, x)
        assert alexander(G, x) == a == alexander_direct(G, x) == ct.evaluate(x)


@given(grids(max_n=5), st.integers(0, 4), st.integers(0, 4))
def test_cut_invariance(G, dc, dr):
    H = cyclic_shift(G, dc, dr)
    for x in list(permutations(range(G.n)))[:60]:
        y = recut_state(x, dc, dr)
        assert (maslov(G, x), alexander(G, x)) == (maslov(H, y), alexander(H, y))


def test_x0_is_top_on_diagonal_grids():
    for n in range(2, 7):
        for G in all_diagonal_grids(n):
            top = x0(G)
            assert maslov(G, top) == 0
            a = alexander(G, top)
            others = [x for x in permutations(range(n)) if x != top]
            assert all(maslov(G, x) < 0 for x in others)
            assert all(alexander(G, x) <= a for x in others)
            assert sum(1 for x in others if alexander(G, x) == a) == 0
