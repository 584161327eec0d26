"""Two small combinatorial chain complexes over F2: ordered partitions of N
under part splitting, and 0/1 domains of a planar grid under rectangle removal."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

from .errors import ParseError, ValidationError
from .homology import rank_gf2


# ---------------------------------------------------------------- generic complex

@dataclass
class GradedComplex:
    """Finite graded F2 complex; ``degree`` is the grading shift of d (+1 or -1)."""
    basis: dict[int, list[Hashable]]
    d: Callable[[Hashable], Iterable[Hashable]]
    degree: int = 1

    def dims(self) -> dict[int, int]:
        return {k: len(v) for k, v in sorted(self.basis.items()) if v}

    def matrix_ranks(self) -> dict[int, int]:
        ranks = {}
        for k, gens in self.basis.items():
            tgt = {g: i for i, g in enumerate(self.basis.get(k + self.degree, []))}
            vecs = []
            for g in gens:
                v = 0
                for h in self.d(g):
                    if h not in tgt:
                        raise ValueError(f"differential of {g!r} leaves the complex")
                    v ^= 1 << tgt[h]
                vecs.append(v)
            ranks[k] = rank_gf2(vecs)
        return ranks

    def homology(self) -> dict[int, int]:
        r = self.matrix_ranks()
        out = {}
        for k, gens in self.basis.items():
            h = len(gens) - r.get(k, 0) - r.get(k - self.degree, 0)
            if h:
                out[k] = h
        return dict(sorted(out.items()))

    def d_squared_zero(self) -> bool:
        for gens in self.basis.values():
            for g in gens:
                acc: dict = {}
                for h in self.d(g):
                    for q in self.d(h):
                        acc[q] = acc.get(q, 0) ^ 1
                if any(acc.values()):
                    return False
        return True


# ---------------------------------------------------------------- partitions

def compositions(N: int, m: int | None = None) -> list[tuple[int, ...]]:
    """Ordered partitions of N (of length m when given)."""
    out = []
    for k in ([m] if m is not None else range(1, N + 1)):
        for cuts in combinations(range(1, N), k - 1):
            b = (0,) + cuts + (N,)
            out.append(tuple(b[i + 1] - b[i] for i in range(k)))
    return out


def split_part(lam: Sequence[int]) -> list[tuple[int, ...]]:
    """All ways of splitting one part into two positive ordered parts."""
    lam = tuple(lam)
    out = []
    for k, p in enumerate(lam):
        for a in range(1, p):
            out.append(lam[:k] + (a, p - a) + lam[k + 1:])
    return out


def partition_complex(N: int) -> GradedComplex:
    if N < 1:
        raise ValidationError("N must be positive", "N")
    basis = {m: compositions(N, m) for m in range(1, N + 1)}
    return GradedComplex(basis, split_part, degree=1)


def partition_homology(N: int) -> dict[int, int]:
    return partition_complex(N).homology()


# ---------------------------------------------------------------- planar grids

@dataclass(frozen=True)
class PlanarGrid:
    """l x l planar grid; O's in squares (i, l-1-i), X's anywhere else."""
    size: int
    X: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        l = self.size
        if l < 1:
            raise ValidationError("size must be positive", "size")
        xs = frozenset(tuple(p) for p in self.X)
        object.__setattr__(self, "X", xs)
        for c, r in xs:
            if not (0 <= c < l and 0 <= r < l):
                raise ValidationError(f"X at {(c, r)} lies outside the grid", "X")
            if c + r == l - 1:
                raise ValidationError(f"X at {(c, r)} sits on an O square", "X")

    @property
    def O(self) -> list[tuple[int, int]]:
        return [(i, self.size - 1 - i) for i in range(self.size)]

    def x0(self) -> tuple[int, ...]:
        """Row of the x0 point on each of the l+1 vertical lines."""
        return tuple(self.size - i for i in range(self.size + 1))

    def has_symmetric_pair(self) -> bool:
        l = self.size
        return any((l - 1 - r, l - 1 - c) in self.X and (l - 1 - r, l - 1 - c) != (c, r)
                   for c, r in self.X)

    def to_json(self) -> dict:
        return {"size": self.size, "X": sorted([list(p) for p in self.X])}


def parse_planar(text: str) -> PlanarGrid:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", "E") from exc
    if not isinstance(data, dict) or set(data) != {"size", "X"}:
        raise ParseError("planar grid must be an object with keys size and X", "E")
    size, xs = data["size"], data["X"]
    if not isinstance(size, int) or isinstance(size, bool):
        raise ParseError("size must be an integer", "size")
    if not isinstance(xs, list) or any(not isinstance(p, list) or len(p) != 2
                                       or not all(isinstance(v, int) and not isinstance(v, bool) for v in p)
                                       for p in xs):
        raise ParseError("X must be a list of [col, row] pairs", "X")
    if len({tuple(p) for p in xs}) != len(xs):
        raise ValidationError("duplicate X marking", "X")
    return PlanarGrid(size, frozenset(tuple(p) for p in xs))


@dataclass(frozen=True)
class GridDomain:
    """0/1 domain stored as a bitmap; bit c + l*r is square (c, r)."""
    size: int
    bits: int
    state: tuple[int, ...]     # row of the state point on each vertical line
    grading: int

    def squares(self) -> list[tuple[int, int]]:
        l = self.size
        return [(k % l, k // l) for k in range(l * l) if self.bits >> k & 1]

    def has(self, c: int, r: int) -> bool:
        l = self.size
        return 0 <= c < l and 0 <= r < l and bool(self.bits >> (c + l * r) & 1)

    def corner_index(self, i: int, r: int) -> int:
        """NE + SW - NW - SE multiplicities around lattice point (i, r)."""
        h = self.has
        return h(i, r) + h(i - 1, r - 1) - h(i - 1, r) - h(i, r - 1)

    def sw_ne(self, x0: Sequence[int]) -> tuple[int, int]:
        """Corners of the domain at state points off x0: (southwest, northeast)."""
        sw = ne = 0
        for i, r in enumerate(self.state):
            if r == x0[i]:
                continue
            if self.has(i, r) and not self.has(i - 1, r) and not self.has(i, r - 1):
                sw += 1
            elif self.has(i - 1, r - 1) and not self.has(i - 1, r) and not self.has(i, r - 1):
                ne += 1
        return sw, ne


def _row_masks(E: PlanarGrid, r: int) -> list[int]:
    """Subsets of row r that contain the row's O and X's."""
    l = E.size
    forced = 1 << (l - 1 - r)
    for c, rr in E.X:
        if rr == r:
            forced |= 1 << c
    free = [c for c in range(l) if not forced >> c & 1]
    out = []
    for k in range(1 << len(free)):
        m = forced
        for j, c in enumerate(free):
            if k >> j & 1:
                m |= 1 << c
        out.append(m)
    return out


def planar_domains(E: PlanarGrid) -> list[GridDomain]:
    """Every 0/1 domain from some state to x0 containing all O's and X's.

    Rows are chosen top to bottom; once two neighbouring rows are fixed the
    corner index along the line between them is known and must be -1 only at
    x0 points, +1 only off x0, with exactly one state point on the line.
    """
    l = E.size
    x0 = E.x0()
    choices = [_row_masks(E, r) for r in range(l)]
    out: list[GridDomain] = []

    def line(r: int, above: int, below: int, used_cols: int):
        """State point on horizontal line r, or None if the line is invalid."""
        pt = None
        for i in range(l + 1):
            ne = above >> i & 1 if i < l else 0
            nw = above >> (i - 1) & 1 if i > 0 else 0
            se = below >> i & 1 if i < l else 0
            sw = below >> (i - 1) & 1 if i > 0 else 0
            d = ne + sw - nw - se
            on_x0 = x0[i] == r
            if d == 0:
                here = on_x0
            elif d == 1 and not on_x0:
                here = True
            elif d == -1 and on_x0:
                here = False
            else:
                return None
            if here:
                if pt is not None or used_cols >> i & 1:
                    return None
                pt = i
        return pt

    rows = [0] * l

    def rec(r: int, state: dict, used: int):
        # lines above r (indices > r) are settled; choose row r-1 ... go downward
        if r < 0:
            return
        for m in choices[r]:
            rows[r] = m
            above = rows[r + 1] if r + 1 < l else 0
            pt = line(r + 1, above, m, used)
            if pt is None:
                continue
            st = dict(state)
            st[pt] = r + 1
            if r == 0:
                pt0 = line(0, m, 0, used | 1 << pt)
                if pt0 is None:
                    continue
                st[pt0] = 0
                x = tuple(st[i] for i in range(l + 1))
                bits = 0
                for rr in range(l):
                    bits |= rows[rr] << (l * rr)
                gr = sum(1 for i in range(l + 1) if x[i] == x0[i])
                out.append(GridDomain(l, bits, x, gr))
            else:
                rec(r - 1, st, used | 1 << pt)

    rec(l - 1, {}, 0)
    return out


def _is_rectangle(bits: int, l: int) -> bool:
    if not bits:
        return False
    cells = [(k % l, k // l) for k in range(l * l) if bits >> k & 1]
    cs = [c for c, _ in cells]
    rs = [r for _, r in cells]
    w, h = max(cs) - min(cs) + 1, max(rs) - min(rs) + 1
    return w * h == len(cells)


def planar_complex(E: PlanarGrid, domains: list[GridDomain] | None = None) -> GradedComplex:
    doms = domains if domains is not None else planar_domains(E)
    l = E.size
    by_bits = {D.bits: D for D in doms}
    basis: dict[int, list] = {}
    for D in doms:
        basis.setdefault(D.grading, []).append(D.bits)
    for k in range(l):
        basis.setdefault(k, [])

    def d(bits: int):
        for other in by_bits:
            if other != bits and other & bits == other and _is_rectangle(bits ^ other, l):
                yield other

    return GradedComplex(basis, d, degree=-1)


def planar_homology(E: PlanarGrid) -> dict[int, int]:
    return planar_complex(E).homology()


def virtual_level(E: PlanarGrid, D: GridDomain) -> int:
    """Number of squares just above an O (excluding the top row) inside D."""
    l = E.size
    return sum(1 for i in range(1, l) if D.has(i, l - i))


def associated_graded_homology(E: PlanarGrid) -> dict[int, dict[int, int]]:
    """Homology of each level of the filtration by virtual markings."""
    doms = planar_domains(E)
    level = {D.bits: virtual_level(E, D) for D in doms}
    out = {}
    for k in sorted(set(level.values())):
        sub = [D for D in doms if level[D.bits] == k]
        C = planar_complex(E, sub)
        out[k] = C.homology()
    return out


def one_sided_point(E: PlanarGrid) -> int | None:
    """Index i of an x0 point with X's strictly to its northeast or strictly
    to its southwest but not both, or None.  When one exists and pi+(E) has
    more than D_E, domains pair off through that point and C(E) is acyclic."""
    l = E.size
    for i in range(l + 1):
        r = l - i
        ne = any(c >= i and rr >= r for c, rr in E.X)
        sw = any(c < i and rr < r for c, rr in E.X)
        if ne != sw:
            return i
    return None


def planar_report(E: PlanarGrid) -> dict:
    doms = planar_domains(E)
    C = planar_complex(E, doms)
    return {
        "size": E.size,
        "domains": len(doms),
        "dims": {str(k): v for k, v in C.dims().items()},
        "homology": {str(k): v for k, v in C.homology().items()},
        "only_full_domain": len(doms) == 1,
        "symmetric_pair": E.has_symmetric_pair(),
        "one_sided_point": one_sided_point(E),
    }
