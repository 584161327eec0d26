import json
import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gridhom.complexes import (PlanarGrid, associated_graded_homology, compositions, one_sided_point,
                               parse_planar, partition_complex, partition_homology, planar_complex,
                               planar_domains, planar_report, split_part)
from gridhom.errors import ParseError, ValidationError


@pytest.mark.parametrize("N", range(1, 10))
def test_partition_dims_and_homology(N):
    C = partition_complex(N)
    assert C.dims() == {m: comb(N - 1, m - 1) for m in range(1, N + 1)}
    assert partition_homology(N) == ({1: 1} if N == 1 else {})
    assert C.d_squared_zero()


def test_split_part():
    assert split_part((3,)) == [(1, 2), (2, 1)]
    assert sorted(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]


def all_planar(l):
    free = [(c, r) for c in range(l) for r in range(l) if c + r != l - 1]
    for k in range(len(free) + 1):
        for xs in combinations(free, k):
            yield PlanarGrid(l, frozenset(xs))


@pytest.mark.parametrize("l", range(1, 7))
def test_no_x_grid(l):
    E = PlanarGrid(l)
    doms = planar_domains(E)
    assert len(doms) == 3 ** (l - 1)
    assert planar_complex(E, doms).homology() == {0: 1}
    assert associated_graded_homology(E) == {0: {0: 1}, **{k: {} for k in range(1, l)}} or \
        associated_graded_homology(E)[0] == {0: 1}


def test_single_corner_x_gives_staircase_complex():
    for X in ({(0, 0)}, {(2, 2)}):
        E = PlanarGrid(3, frozenset(X))
        assert planar_complex(E).dims() == {0: 1, 1: 2, 2: 1}


@pytest.mark.parametrize("l", range(1, 5))
def test_domain_invariants(l):
    for E in all_planar(l):
        doms = planar_domains(E)
        assert len({D.bits for D in doms}) == len(doms)
        C = planar_complex(E, doms)
        assert C.d_squared_zero()
        x0 = E.x0()
        for D in doms:
            sw, ne = D.sw_ne(x0)
            assert sw + ne + D.grading == l + 1
            assert all(D.has(c, r) for c, r in E.X) and all(D.has(c, r) for c, r in E.O)


def _acyclic_iff_one_sided(E):
    doms = planar_domains(E)
    H = planar_complex(E, doms).homology()
    side = one_sided_point(E) is not None
    return (not H) == side and (len(doms) % 2 == 0) == side


@pytest.mark.parametrize("l", range(1, 5))
def test_acyclicity_characterization_exhaustive(l):
    """C(E) is acyclic, with an even number of domains, exactly when some x0
    point sees X's on one side only (strictly NE or strictly SW)."""
    for E in all_planar(l):
        assert _acyclic_iff_one_sided(E), E.to_json()


def test_acyclicity_characterization_random_size_five():
    rng = random.Random(0)
    free = [(c, r) for c in range(5) for r in range(5) if c + r != 4]
    for _ in range(300):
        E = PlanarGrid(5, frozenset(p for p in free if rng.random() < rng.choice((0.15, 0.3, 0.5))))
        assert _acyclic_iff_one_sided(E), E.to_json()


def test_non_symmetric_grid_with_homology():
    """A size-4 grid with no symmetric X pair and several domains that is not acyclic."""
    E = PlanarGrid(4, frozenset({(0, 1), (1, 3), (2, 2)}))
    assert not E.has_symmetric_pair()
    doms = planar_domains(E)
    assert len(doms) == 3
    assert planar_complex(E, doms).homology() == {2: 1}
    assert one_sided_point(E) is None


def _brute_domains(E):
    """All 0/1 subsets of squares that satisfy the corner conditions; exponential."""
    l = E.size
    x0 = E.x0()
    forced = {c + l * r for c, r in E.X} | {c + l * r for c, r in E.O}
    free = [k for k in range(l * l) if k not in forced]
    base = sum(1 << k for k in forced)
    out = set()
    for mask in range(1 << len(free)):
        bits = base | sum(1 << free[i] for i in range(len(free)) if mask >> i & 1)
        has = lambda c, r: 0 <= c < l and 0 <= r < l and bool(bits >> (c + l * r) & 1)  # noqa: E731
        state, ok = {}, True
        for i in range(l + 1):
            pts = []
            for r in range(l + 1):
                d = has(i, r) + has(i - 1, r - 1) - has(i - 1, r) - has(i, r - 1)
                on = x0[i] == r
                if d == 0 and on or d == 1 and not on:
                    pts.append(r)
                elif d != 0 and not (d == -1 and on):
                    ok = False
            if not ok or len(pts) != 1:
                ok = False
                break
            state[i] = pts[0]
        if ok and len(set(state.values())) == l + 1:
            out.add(bits)
    return out


@given(st.integers(1, 3).flatmap(lambda l: st.tuples(st.just(l), st.sets(
    st.tuples(st.integers(0, l - 1), st.integers(0, l - 1)).filter(lambda p: p[0] + p[1] != l - 1)))))
def test_domains_match_brute_force(args):
    l, xs = args
    E = PlanarGrid(l, frozenset(xs))
    assert {D.bits for D in planar_domains(E)} == _brute_domains(E)


def test_parse_planar_and_errors():
    E = parse_planar('{"size": 4, "X": [[0,1],[1,3],[2,2]]}')
    assert E.to_json() == {"size": 4, "X": [[0, 1], [1, 3], [2, 2]]}
    with pytest.raises(ParseError):
        parse_planar("[1]")
    with pytest.raises(ParseError):
        parse_planar('{"size": 3, "X": [[0]]}')
    with pytest.raises(ValidationError):
        parse_planar('{"size": 3, "X": [[0,2]]}')     # O square
    with pytest.raises(ValidationError):
        parse_planar('{"size": 3, "X": [[5,0]]}')
    with pytest.raises(ValidationError):
        parse_planar('{"size": 3, "X": [[0,0],[0,0]]}')


def test_planar_report_is_json_serializable():
    r = planar_report(PlanarGrid(3, frozenset({(0, 0)})))
    assert json.loads(json.dumps(r))["homology"] == {}
