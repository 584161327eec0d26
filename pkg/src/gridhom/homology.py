"""State enumeration, the tilde complex and its homology over GF(2), hat
extraction, genus and the Alexander polynomial."""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import NotDivisible, ResourceBudgetExceeded, SizeCapExceeded
from .grid import GridDiagram, is_diagonal, require_knot
from .gradings import alexander, tables
from .laurent import LaurentPoly

log = logging.getLogger(__name__)

State = tuple[int, ...]


@dataclass(frozen=True)
class EngineConfig:
    max_full_enum: int = 10
    budget_mb: float = 6000.0
    threads: int = 1

    def max_states(self, n: int) -> int:
        per_state = 160 + 16 * n  # tuple + dict slot + bookkeeping, rough
        return int(self.budget_mb * 1024 * 1024 / per_state)


DEFAULT = EngineConfig()


class BigradedDims:
    """Map (Maslov, Alexander) -> dimension; zero entries are dropped."""

    def __init__(self, dims: Mapping[tuple[int, int], int] | None = None):
        self.dims = {k: v for k, v in (dims or {}).items() if v}

    def __getitem__(self, key):
        return self.dims.get(key, 0)

    def __eq__(self, other):
        if isinstance(other, Mapping):
            other = BigradedDims(other)
        return isinstance(other, BigradedDims) and self.dims == other.dims

    def __repr__(self):
        return f"BigradedDims({dict(sorted(self.dims.items(), reverse=True))})"

    def items(self):
        return self.dims.items()

    def stratum(self, s: int) -> dict[int, int]:
        return {m: v for (m, a), v in sorted(self.dims.items()) if a == s}

    def alexander_values(self) -> set[int]:
        return {a for _, a in self.dims}

    def total(self) -> int:
        return sum(self.dims.values())

    def euler(self) -> LaurentPoly:
        out: dict[int, int] = {}
        for (m, a), v in self.dims.items():
            out[a] = out.get(a, 0) + (-1) ** (m % 2) * v
        return LaurentPoly(out)

    def restrict(self, min_a: int) -> "BigradedDims":
        return BigradedDims({k: v for k, v in self.dims.items() if k[1] >= min_a})

    def merged(self, other: "BigradedDims") -> "BigradedDims":
        d = dict(self.dims)
        for k, v in other.dims.items():
            d[k] = d.get(k, 0) + v
        return BigradedDims(d)

    def to_json(self) -> list[list[int]]:
        return [[m, a, v] for (m, a), v in sorted(self.dims.items(), key=lambda kv: (-kv[0][1], -kv[0][0]))]


# ---------------------------------------------------------------- states

def lehmer_code(rows: Sequence[int]) -> int:
    """Rank of the permutation in lexicographic order."""
    n = len(rows)
    code = 0
    for i in range(n):
        smaller = sum(1 for k in range(i + 1, n) if rows[k] < rows[i])
        code = code * (n - i) + smaller
    return code


def enumerate_states(G: GridDiagram, min_alexander: int | None = None,
                     config: EngineConfig = DEFAULT) -> Iterator[State]:
    """All states with A >= min_alexander (or every state when None).

    Columns are filled left to right; a branch is cut as soon as the partial
    Alexander sum plus the best possible remaining contributions falls below
    the threshold."""
    n = G.n
    if min_alexander is None:
        if n > config.max_full_enum:
            raise SizeCapExceeded(f"full enumeration of {n}! states exceeds cap n <= {config.max_full_enum}")
        yield from itertools.permutations(range(n))
        return
    t = tables(G)
    a2 = t.a2
    need = 2 * min_alexander - t.const2
    best_rest = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        best_rest[j] = best_rest[j + 1] + max(a2[r][j] for r in range(n))
    cap = config.max_states(n)
    rows = [0] * n
    used = [False] * n
    emitted = 0

    def rec(j: int, partial: int):
        nonlocal emitted
        if j == n:
            emitted += 1
            if emitted > cap:
                raise ResourceBudgetExceeded(f"stratum enumeration exceeded {cap} states (budget {config.budget_mb} MB)")
            yield tuple(rows)
            return
        rest = best_rest[j + 1]
        for r in range(n):
            if not used[r]:
                p = partial + a2[r][j]
                if p + rest >= need:
                    used[r] = True
                    rows[j] = r
                    yield from rec(j + 1, p)
                    used[r] = False

    yield from rec(0, 0)


def max_alexander(G: GridDiagram) -> int:
    """Largest Alexander grading of any state (assignment problem, solved by
    branch and bound)."""
    t = tables(G)
    n = G.n
    best_rest = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        best_rest[j] = best_rest[j + 1] + max(t.a2[r][j] for r in range(n))
    best = [-10**9]
    used = [False] * n

    def rec(j, partial):
        if partial + best_rest[j] <= best[0]:
            return
        if j == n:
            best[0] = partial
            return
        for r in sorted(range(n), key=lambda r: -t.a2[r][j]):
            if not used[r]:
                used[r] = True
                rec(j + 1, partial + t.a2[r][j])
                used[r] = False

    rec(0, 0)
    return (best[0] + t.const2) // 2


# ---------------------------------------------------------------- differential

def tilde_differential(G: GridDiagram, x: Sequence[int]) -> list[State]:
    """Targets of empty, marking-free rectangles from x (with multiplicity)."""
    n = G.n
    O, X = G.O, G.X
    out = []
    for a in range(n):
        xa = x[a]
        for w in range(1, n):
            b = (a + w) % n
            h = (x[b] - xa) % n
            ok = True
            for k in range(w):
                c = (a + k) % n
                if (O[c] - xa) % n < h or (X[c] - xa) % n < h:
                    ok = False
                    break
                if k and 0 < (x[c] - xa) % n < h:
                    ok = False
                    break
            if ok:
                y = list(x)
                y[a], y[b] = x[b], xa
                out.append(tuple(y))
    return out


def rank_gf2(rows: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for v in rows:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                rank += 1
                break
            v ^= p
    return rank


@dataclass
class StratumComplex:
    s: int
    by_maslov: dict[int, list[State]] = field(default_factory=dict)


def _group(G: GridDiagram, states: Iterable[State]) -> dict[int, dict[int, list[State]]]:
    t = tables(G)
    out: dict[int, dict[int, list[State]]] = {}
    for x in states:
        a = t.alexander2(x) // 2
        m = t.maslov(x)
        out.setdefault(a, {}).setdefault(m, []).append(x)
    return out


def homology_of_stratum(G: GridDiagram, by_maslov: Mapping[int, list[State]]) -> dict[int, int]:
    """Tilde homology dims of one Alexander stratum from its generators."""
    index = {m: {lehmer_code(x): i for i, x in enumerate(xs)} for m, xs in by_maslov.items()}
    ranks: dict[int, int] = {}
    for m, xs in by_maslov.items():
        tgt = index.get(m - 1)
        if not tgt:
            ranks[m] = 0
            continue
        vecs = []
        for x in xs:
            v = 0
            for y in tilde_differential(G, x):
                v ^= 1 << tgt[lehmer_code(y)]
            vecs.append(v)
        ranks[m] = rank_gf2(vecs)
    dims = {}
    for m, xs in by_maslov.items():
        d = len(xs) - ranks.get(m, 0) - ranks.get(m + 1, 0)
        if d:
            dims[m] = d
    return dims


def tilde_homology(G: GridDiagram, strata: Iterable[int] | None = None,
                   config: EngineConfig = DEFAULT) -> BigradedDims:
    """Tilde homology at the requested Alexander gradings (all when None)."""
    require_knot(G)
    if strata is None:
        grouped = _group(G, enumerate_states(G, None, config))
        wanted = sorted(grouped)
    else:
        wanted = sorted(set(strata))
        grouped = _group(G, enumerate_states(G, min(wanted), config)) if wanted else {}

    def work(s):
        return s, homology_of_stratum(G, grouped.get(s, {}))

    if config.threads > 1 and len(wanted) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as ex:
            results = list(ex.map(work, wanted))
    else:
        results = [work(s) for s in wanted]
    dims = {}
    for s, d in results:
        for m, v in d.items():
            dims[(m, s)] = v
    return BigradedDims(dims)


def stratum_homology(G: GridDiagram, s: int, config: EngineConfig = DEFAULT) -> dict[int, int]:
    """Tilde homology at Alexander grading s as {Maslov: dim}."""
    return tilde_homology(G, [s], config).stratum(s)


def hat_from_tilde(P: BigradedDims, n: int, min_a: int | None = None) -> BigradedDims:
    """Undo the tensor factor W^(n-1), W spanned by gradings (0,0), (-1,-1).

    Works top down in A, so P must be complete for every A >= min_a."""
    if not P.dims:
        return BigradedDims()
    top = max(a for _, a in P.dims)
    bottom = min(a for _, a in P.dims) if min_a is None else min_a
    maslovs = [m for m, _ in P.dims]
    mlo, mhi = min(maslovs) - 1, max(maslovs) + 1
    hat: dict[tuple[int, int], int] = {}
    for s in range(top, bottom - 1, -1):
        for d in range(mhi, mlo - 1, -1):
            v = P[(d, s)]
            for k in range(1, n):
                v -= comb(n - 1, k) * hat.get((d + k, s + k), 0)
            if v < 0:
                raise NotDivisible(f"negative coefficient at (M={d}, A={s}) while removing W^{n - 1}")
            if v:
                hat[(d, s)] = v
    out = BigradedDims(hat)
    back = tilde_from_hat(out, n)
    if (back != P) if min_a is None else (back.restrict(bottom) != P.restrict(bottom)):
        raise NotDivisible(f"tilde table is not a multiple of W^{n - 1}")
    return out


def tilde_from_hat(H: BigradedDims, n: int) -> BigradedDims:
    out: dict[tuple[int, int], int] = {}
    for (m, a), v in H.items():
        for k in range(n):
            key = (m - k, a - k)
            out[key] = out.get(key, 0) + comb(n - 1, k) * v
    return BigradedDims(out)


def hat_homology(G: GridDiagram, strata: Iterable[int] | None = None,
                 config: EngineConfig = DEFAULT) -> BigradedDims:
    """Hat homology at the requested strata.

    Needs the tilde groups at every A from the requested minimum up to the
    top grading, which are computed here."""
    require_knot(G)
    if strata is None:
        tilde = tilde_homology(G, None, config)
        return hat_from_tilde(tilde, G.n)
    wanted = sorted(set(strata))
    lo = wanted[0]
    top = alexander_top(G)
    tilde = tilde_homology(G, range(lo, top + 1), config)
    hat = hat_from_tilde(tilde, G.n, lo)
    return BigradedDims({k: v for k, v in hat.items() if k[1] in wanted})


def alexander_top(G: GridDiagram) -> int:
    if is_diagonal(G):
        x0 = tuple((o + 1) % G.n for o in G.O)
        return alexander(G, x0)
    return max_alexander(G)


def genus(G: GridDiagram, config: EngineConfig = DEFAULT) -> int:
    """Top Alexander grading with nonzero hat homology.

    Tilde and hat share their top nonzero grading, so the tilde groups are
    scanned downward from the largest grading any state attains."""
    require_knot(G)
    if is_diagonal(G):
        x0 = tuple((o + 1) % G.n for o in G.O)
        return alexander(G, x0)
    s = max_alexander(G)
    while True:
        if G.n > config.max_full_enum and s < max_alexander(G) - 3:
            raise SizeCapExceeded("generic genus search went too deep for the size cap")
        if any(stratum_homology(G, s, config).values()):
            return s
        s -= 1


# ---------------------------------------------------------------- counting

def _all_permutations_blocks(n: int, block_fixed: int = 2) -> Iterator[np.ndarray]:
    k = min(block_fixed, n)
    rest = n - k
    base = np.array(list(itertools.permutations(range(rest))), dtype=np.int16).reshape(-1, rest) if rest \
        else np.zeros((1, 0), dtype=np.int16)
    for head in itertools.permutations(range(n), k):
        remaining = np.array([v for v in range(n) if v not in head], dtype=np.int16)
        block = np.empty((base.shape[0], n), dtype=np.int16)
        block[:, :k] = head
        if rest:
            block[:, k:] = remaining[base]
        yield block


def graded_state_counts(G: GridDiagram, config: EngineConfig = DEFAULT) -> dict[tuple[int, int], int]:
    """Number of states in each (M, A), over all n! states."""
    n = G.n
    if n > config.max_full_enum:
        raise SizeCapExceeded(f"full enumeration of {n}! states exceeds cap n <= {config.max_full_enum}")
    t = tables(G)
    a2 = np.array(t.a2, dtype=np.int64)
    mo = np.array(t.mo, dtype=np.int64)
    cols = np.arange(n)
    counts: dict[tuple[int, int], int] = {}
    for block in _all_permutations_blocks(n):
        b = block.astype(np.int64)
        A2 = a2[b, cols].sum(axis=1) + t.const2
        if np.any(A2 % 2):
            from .errors import NotAKnot
            raise NotAKnot("half-integral Alexander grading")
        noninv = np.zeros(b.shape[0], dtype=np.int64)
        for j in range(n):
            for k in range(j + 1, n):
                noninv += b[:, j] < b[:, k]
        M = noninv - mo[b, cols].sum(axis=1) + t.ioo + 1
        keys, cnt = np.unique(np.stack([M, A2 // 2], axis=1), axis=0, return_counts=True)
        for (m, a), c in zip(keys.tolist(), cnt.tolist()):
            counts[(m, a)] = counts.get((m, a), 0) + c
    return counts


def stratum_state_counts(G: GridDiagram, min_alexander: int,
                         config: EngineConfig = DEFAULT) -> dict[tuple[int, int], int]:
    t = tables(G)
    counts: dict[tuple[int, int], int] = {}
    for x in enumerate_states(G, min_alexander, config):
        key = (t.maslov(x), t.alexander2(x) // 2)
        counts[key] = counts.get(key, 0) + 1
    return counts


def _w_power(n: int) -> LaurentPoly:
    return LaurentPoly({0: 1, -1: -1}) ** (n - 1)


def alexander_poly(G: GridDiagram, method: str = "euler", config: EngineConfig = DEFAULT) -> LaurentPoly:
    """Symmetrized Alexander polynomial as the graded Euler characteristic.

    ``euler`` uses the chain groups (equal Euler characteristic to the
    homology), ``homology`` computes the full hat table first."""
    require_knot(G)
    if method == "homology":
        return hat_homology(G, None, config).euler().normalized()
    counts = graded_state_counts(G, config)
    chi: dict[int, int] = {}
    for (m, a), c in counts.items():
        chi[a] = chi.get(a, 0) + (-1) ** (m % 2) * c
    return LaurentPoly(chi).exact_div(_w_power(G.n)).normalized()


def alexander_top_coefficients(G: GridDiagram, k: int = 3, config: EngineConfig = DEFAULT) -> list[int]:
    """Coefficients of t^top, t^(top-1), ... of Delta from the top k strata
    only, using pruned enumeration (works past the full-enumeration cap)."""
    require_knot(G)
    top = alexander_top(G)
    counts = stratum_state_counts(G, top - k + 1, config)
    chi_tilde = {s: 0 for s in range(top - k + 1, top + 1)}
    for (m, a), c in counts.items():
        if a in chi_tilde:
            chi_tilde[a] += (-1) ** (m % 2) * c
    w = _w_power(G.n)
    hat: dict[int, int] = {}
    for s in range(top, top - k, -1):
        v = chi_tilde[s]
        for e in range(1, G.n):
            v -= w.coeff(-e) * hat.get(s + e, 0)
        hat[s] = v
    return [hat[s] for s in range(top, top - k, -1)]
