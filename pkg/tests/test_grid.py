import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import data_file, grids
from gridhom.errors import IllegalMove, NotDiagonal, ParseError, ValidationError
from gridhom.grid import (KINDS, commute, component_count, connected_sum, corner_join, cyclic_shift,
                          destabilize, diagonal_cut, find_destabilization, from_sigma, is_diagonal,
                          load_grid, new_grid, parse_compact, parse_grid, parse_json, reflect_diagonal,
                          simplify_diagonal, stabilize, to_sigma, torus_grid)
from gridhom.planar import fox_alexander_grid
from math import gcd


def test_json_and_compact_roundtrip(trefoil):
    assert parse_json(trefoil.to_json()) == trefoil
    assert parse_compact(trefoil.to_compact()) == trefoil
    assert parse_grid(trefoil.to_compact() + "\n") == trefoil
    assert load_grid(data_file("trefoil.json")) == trefoil


@pytest.mark.parametrize("text, field", [
    ('{"size": 3, "O": [0,1,2], "X": [0,2,1]}', "collision"),
    ('{"size": 3, "O": [0,1,1], "X": [1,2,0]}', "O"),
    ('{"size": 3, "O": [0,1], "X": [1,2,0]}', "O"),
    ('{"size": 0, "O": [], "X": []}', "n"),
    ('{"size": 2, "O": [1,0]}', "json"),
    ('{"size": 2, "O": [1,0], "X": [0,1], "extra": 1}', "json"),
    ("{not json", "json"),
    ("3;0,1,2;1,2", "X"),
    ("3; 0,1,2;1,2,0", "compact"),
    ("3;0,a,2;1,2,0", "compact"),
])
def test_malformed_grids_rejected(text, field):
    with pytest.raises(ValidationError) as exc:
        parse_grid(text)
    assert exc.value.field == field
    assert exc.value.payload()["error"] in ("ValidationError", "ParseError")


def test_parse_error_is_validation_error():
    assert issubclass(ParseError, ValidationError)


derangements = st.permutations(range(7)).filter(lambda s: all(s[j] != j for j in range(7)))


@given(derangements)
def test_sigma_roundtrip(sigma):
    G = from_sigma(sigma)
    assert is_diagonal(G)
    assert to_sigma(G) == list(sigma)


def test_to_sigma_needs_diagonal():
    with pytest.raises(NotDiagonal):
        to_sigma(new_grid(3, [0, 1, 2], [1, 2, 0]))


@pytest.mark.parametrize("n", range(2, 10))
def test_torus_grid_components(n):
    for k in range(1, n):
        assert component_count(torus_grid(n, k)) == gcd(n, k)


@given(grids(max_n=6), st.integers(0, 5), st.integers(0, 5))
def test_cyclic_shift_is_invertible_and_isotopic(G, dc, dr):
    H = cyclic_shift(G, dc, dr)
    assert cyclic_shift(H, -dc, -dr) == G
    assert fox_alexander_grid(H) == fox_alexander_grid(G)


@given(grids(max_n=6), st.integers(0, 5), st.sampled_from(KINDS))
def test_stabilize_destabilize_inverse(G, c, kind):
    c %= G.n
    S = stabilize(G, c, kind)
    assert S.n == G.n + 1
    assert destabilize(S, c, kind) == G
    assert fox_alexander_grid(S) == fox_alexander_grid(G)


def test_illegal_commutation():
    with pytest.raises(IllegalMove):
        commute(new_grid(3, [0, 1, 2], [2, 0, 1]), 0, "columns")   # intervals [0,2], [0,1] share an end
    with pytest.raises(IllegalMove):
        commute(new_grid(4, [0, 1, 2, 3], [2, 3, 0, 1]), 0, "columns")   # [0,2], [1,3] interleave
    with pytest.raises(IllegalMove):
        commute(new_grid(3, [0, 1, 2], [2, 0, 1]), 5)
    with pytest.raises(IllegalMove):
        destabilize(from_sigma([3, 4, 0, 1, 2]), 0, "SW")


def test_find_destabilization_on_stabilized_trefoil(trefoil):
    S = stabilize(trefoil, 2, "NE")
    c, kind = find_destabilization(S)
    assert fox_alexander_grid(destabilize(S, c, kind)) == fox_alexander_grid(trefoil)


def test_reflect_diagonal_is_involution(trefoil):
    R = reflect_diagonal(trefoil)
    assert is_diagonal(R)
    assert reflect_diagonal(R) == trefoil
    assert fox_alexander_grid(R) == fox_alexander_grid(trefoil)


def test_connected_sum_sizes(trefoil):
    S = connected_sum(trefoil, trefoil)
    J = corner_join(trefoil, trefoil)
    d = fox_alexander_grid(trefoil) ** 2
    assert (S.n, J.n) == (8, 9)
    assert is_diagonal(S) and is_diagonal(J)
    assert fox_alexander_grid(S) == d == fox_alexander_grid(J)


def test_connected_sum_requires_diagonal(trefoil):
    with pytest.raises(NotDiagonal):
        connected_sum(trefoil, new_grid(3, [0, 1, 2], [1, 2, 0]))


@given(derangements, st.integers(0, 6), st.integers(0, 6))
def test_diagonal_cut_finds_shift(sigma, dc, dr):
    H = cyclic_shift(from_sigma(sigma), dc, dr)
    cut = diagonal_cut(H)
    assert cut is not None and is_diagonal(cut)


def test_simplify_diagonal_shrinks_nonminimal_trefoil():
    # a stabilized trefoil kept diagonal by a corner join with the 3x3 unknot
    U = from_sigma([1, 2, 0])
    G = corner_join(from_sigma([3, 4, 0, 1, 2]), U)
    K = simplify_diagonal(G)
    assert K is not None and K.n < G.n and is_diagonal(K)
    assert fox_alexander_grid(K) == fox_alexander_grid(G)
