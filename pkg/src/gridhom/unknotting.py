"""Seifert circles of planar diagrams and the crossing-exchange procedure that
unknots a diagonal knot in exactly g(K) steps."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import CaseMismatch, NoCrossings, NotAKnot, PreconditionViolated
from .grid import GridDiagram, require_diagonal, require_knot, simplify_diagonal
from .laurent import LaurentPoly
from .planar import AnnotatedDiagram, fox_alexander, from_grid


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


@dataclass
class Band:
    crossing: int
    circles: tuple[int, int]


@dataclass
class SeifertDecomposition:
    diagram: AnnotatedDiagram
    circles: list[list[int]]                  # edge cycles
    bands: list[Band]
    sides: list[tuple[int, int]] = field(default_factory=list)   # (left region, right region) per circle
    outer_region: Optional[int] = None
    inner_region: dict = field(default_factory=dict)              # circle -> region on its far side
    depth: dict = field(default_factory=dict)                     # circle -> nesting depth

    @property
    def d(self) -> int:
        return len(self.circles)

    @property
    def c(self) -> int:
        return len(self.bands)

    @property
    def genus(self) -> int:
        """Genus of the Seifert surface, (c - d + 1) / 2."""
        return (self.c - self.d + 1) // 2

    def bands_on(self, circle: int) -> list[Band]:
        return [b for b in self.bands if circle in b.circles]

    def innermost(self) -> list[int]:
        """Circles whose inner side contains no other circle."""
        out = []
        for ci in range(self.d):
            reg = self.inner_region.get(ci)
            if reg is not None and sum(1 for cj in range(self.d) if reg in self.sides[cj]) == 1:
                out.append(ci)
        return out

    def outermost(self) -> list[int]:
        return [ci for ci in range(self.d) if self.outer_region in self.sides[ci]]


def seifert(D: AnnotatedDiagram) -> SeifertDecomposition:
    """Seifert circles, their bands and the nesting tree of the diagram."""
    if not D.crossings:
        return SeifertDecomposition(D, [[]], [], [(0, 1)], 0, {0: 1}, {0: 0})
    D.passages()  # raises NotAKnot for links
    face = D.faces()
    uf = _UnionFind()
    for f in set(face.values()):
        uf.find(f)
    for cid, c in D.crossings.items():
        ins = sorted(s for s in range(4) if c.ends[s][1] == "h")
        k = ins[0] if (ins[0] + 1) % 4 == ins[1] else ins[1]

        def corner(q):  # face in the corner between slots q and q+1
            e, kind = c.ends[(q + 1) % 4]
            return face[(e, kind == "h")]

        uf.union(corner(k), corner((k + 2) % 4))
    circles = D.seifert_circles()
    circ_of = {e: i for i, cyc in enumerate(circles) for e in cyc}
    sides = []
    for cyc in circles:
        left = {uf.find(face[(e, True)]) for e in cyc}
        right = {uf.find(face[(e, False)]) for e in cyc}
        if len(left) != 1 or len(right) != 1:
            raise NotAKnot("smoothing produced an inconsistent circle")
        sides.append((left.pop(), right.pop()))
    bands = []
    for cid in sorted(D.crossings, key=D.label):
        c = D.crossings[cid]
        cs = tuple(sorted({circ_of[c.ends[s][0]] for s in range(4)}))
        bands.append(Band(cid, cs if len(cs) == 2 else (cs[0], cs[0])))
    root = D.outer_face(face)
    root = uf.find(root) if root is not None else sides[0][0]
    adj: dict = {}
    for ci, (l, r) in enumerate(sides):
        adj.setdefault(l, []).append(ci)
        adj.setdefault(r, []).append(ci)
    inner, depth = {}, {}
    q = deque([(root, 0)])
    seen = {root}
    while q:
        reg, dep = q.popleft()
        for ci in adj.get(reg, []):
            if ci in inner:
                continue
            l, r = sides[ci]
            other = r if l == reg else l
            inner[ci] = other
            depth[ci] = dep
            if other not in seen:
                seen.add(other)
                q.append((other, dep + 1))
    return SeifertDecomposition(D, circles, bands, sides, root, inner, depth)


@dataclass(frozen=True)
class Selection:
    crossing: int
    circle: int
    m: int
    side: str            # 'SW' or 'NE': which arc of the circle the band sits on

    @property
    def case(self) -> int:
        return 1 if self.m > 3 else (2 if self.m == 3 else 3)


def _band_side(D: AnnotatedDiagram, cid: int) -> str:
    pos = D.crossings[cid].pos
    if pos is None or D.size is None:
        raise PreconditionViolated("band sides need crossing positions inherited from a grid")
    return "SW" if pos[0] + pos[1] < D.size else "NE"


def select_crossing(S: SeifertDecomposition) -> Selection:
    """Pick a crossing on an innermost circle among the m-1 bands that attach
    from the same side (deterministic: lowest circle, then lowest label)."""
    D = S.diagram
    if not D.crossings:
        raise NoCrossings("diagram has no crossings")
    if D.find_r1() is not None:
        raise PreconditionViolated("a Reidemeister I kink is still present")
    choices = []
    for ci in S.innermost():
        bands = S.bands_on(ci)
        m = len(bands)
        if m < 2:
            raise PreconditionViolated(f"innermost circle {ci} has {m} band(s)")
        groups: dict[str, list[int]] = {"SW": [], "NE": []}
        for b in bands:
            groups[_band_side(D, b.crossing)].append(b.crossing)
        sizes = sorted(len(g) for g in groups.values())
        if sizes != [1, m - 1]:
            continue
        side = "SW" if len(groups["SW"]) == m - 1 else "NE"
        if m == 2:
            side = min(groups, key=lambda k: min(D.label(c) for c in groups[k]))
        pick = min(groups[side], key=D.label)
        choices.append((min(D.label(b.crossing) for b in bands), Selection(pick, ci, m, side)))
    if not choices:
        raise PreconditionViolated("no innermost circle has m-1 bands on one side")
    return min(choices, key=lambda t: t[0])[1]


def candidates(S: SeifertDecomposition) -> list[Selection]:
    """Every band on an innermost circle, in preference order: the geometric
    m-1 group first (what :func:`select_crossing` returns heads the list),
    then the remaining bands of that circle, then other innermost circles."""
    D = S.diagram
    out: list[Selection] = []
    try:
        first = select_crossing(S)
        out.append(first)
    except PreconditionViolated:
        first = None
    order = sorted(S.innermost(), key=lambda ci: (first is None or ci != first.circle, ci))
    for ci in order:
        bands = S.bands_on(ci)
        m = len(bands)
        if m < 2:
            continue
        for b in sorted(bands, key=lambda b: D.label(b.crossing)):
            sel = Selection(b.crossing, ci, m, _band_side(D, b.crossing))
            if sel not in out and all(o.crossing != sel.crossing or o.circle != ci for o in out):
                out.append(sel)
    return out


def expected_counts(c: int, d: int, m: int) -> tuple[int, int]:
    if m > 3:
        return c - 2, d
    if m == 3:
        return c - 3, d - 1
    return c - 2, d


def exchange_and_reduce(D: AnnotatedDiagram, crossing: int, m: int | None = None) -> AnnotatedDiagram:
    """Change the crossing and simplify with R1/R2 moves.

    When m (the band count of the selected circle) is given the resulting
    crossing and circle counts are checked against the expected case table."""
    before = seifert(D)
    out = D.copy()
    out.flip(crossing)
    out.reduce(r2=True)
    if m is not None:
        after = seifert(out)
        want = expected_counts(before.c, before.d, m)
        got = (after.c, after.d)
        if got != want:
            raise CaseMismatch(f"m={m}: expected (c, d) = {want} after reduction, got {got}")
    return out


def _positive(D: AnnotatedDiagram) -> bool:
    return all(D.sign(c) > 0 for c in D.crossings)


def fallback_exchange(D: AnnotatedDiagram) -> tuple[int, AnnotatedDiagram] | None:
    """First crossing (by label) whose change, after R1/R2 reduction, leaves a
    positive diagram of Seifert genus one less."""
    g = seifert(D).genus
    for cid in sorted(D.crossings, key=D.label):
        out = D.copy()
        out.flip(cid)
        out.reduce(r2=True)
        if _positive(out) and seifert(out).genus == g - 1:
            return cid, out
    return None


@dataclass
class ExchangeStep:
    crossing_label: int
    position: Optional[tuple]
    m: Optional[int]
    case: Optional[int]
    crossings_before: int
    circles_before: int
    crossings_after: int
    circles_after: int
    alexander: LaurentPoly
    case_table: bool = True
    note: str = ""

    def to_json(self) -> dict:
        off, coeffs = self.alexander.to_list()
        out = {
            "crossing": self.crossing_label,
            "position": list(self.position) if self.position else None,
            "m": self.m,
            "case": self.case,
            "case_table": self.case_table,
            "before": {"crossings": self.crossings_before, "circles": self.circles_before},
            "after": {"crossings": self.crossings_after, "circles": self.circles_after},
            "alexander": {"offset": off, "coeffs": coeffs},
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class UnknottingResult:
    steps: list[ExchangeStep]
    initial_alexander: LaurentPoly
    initial_r1: int
    grid: GridDiagram                       # grid the exchanges were run on
    simplified_from: list[GridDiagram] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    @property
    def used_fallback(self) -> bool:
        return any(not s.case_table for s in self.steps)


def _try_exchange(D: AnnotatedDiagram, sel: Selection) -> AnnotatedDiagram | None:
    try:
        out = exchange_and_reduce(D, sel.crossing, sel.m)
    except CaseMismatch:
        return None
    return out if _positive(out) else None


def _run(G: GridDiagram, strict: bool) -> tuple[list[ExchangeStep], int]:
    D = from_grid(G)
    D.reduce(r2=False)
    initial_r1 = D.r1_removed
    delta = fox_alexander(D)
    steps = []
    while D.crossings:
        S = seifert(D)
        if strict:
            sel = select_crossing(S)
            D2 = exchange_and_reduce(D, sel.crossing, sel.m)
            if not _positive(D2):
                raise CaseMismatch("reduced diagram is not positive")
            cid, ok, note = sel.crossing, True, ""
        else:
            sel = D2 = None
            for cand in candidates(S):
                D2 = _try_exchange(D, cand)
                if D2 is not None:
                    sel = cand
                    break
            if sel is not None:
                cid, ok, note = sel.crossing, True, ""
            else:
                fb = fallback_exchange(D)
                if fb is None:
                    raise CaseMismatch("no genus-reducing crossing change")
                cid, D2 = fb
                ok, note = False, "no innermost band matched the case table"
        pos, label = D.crossings[cid].pos, D.label(cid)
        S2 = seifert(D2)
        new_delta = fox_alexander(D2)
        if new_delta.max_exp() != delta.max_exp() - 1:
            raise CaseMismatch(f"Alexander degree went from {delta.max_exp()} to {new_delta.max_exp()}")
        steps.append(ExchangeStep(label, pos, sel.m if sel else None, sel.case if sel else None,
                                  S.c, S.d, S2.c, S2.d, new_delta, ok, note))
        D, delta = D2, new_delta
    if delta != LaurentPoly.const(1):
        raise CaseMismatch("procedure ended with a nontrivial Alexander polynomial")
    return steps, initial_r1


def unknotting_sequence(G: GridDiagram, strict: bool = False, search_depth: int = 6,
                        search_nodes: int = 20000) -> UnknottingResult:
    """Exchange crossings until the unknot is reached, checking after every
    step that the Alexander degree falls by exactly one.

    With ``strict`` any departure from the case table raises.  Otherwise a
    failed selection falls back to any genus-reducing exchange, and if that is
    also stuck the grid is first simplified to a smaller diagonal grid.
    """
    require_diagonal(G)
    require_knot(G)
    H, chain = G, []
    while True:
        try:
            steps, r1 = _run(H, strict)
            break
        except (CaseMismatch, PreconditionViolated) as exc:
            if strict:
                raise
            K = simplify_diagonal(H, search_depth, search_nodes)
            if K is None:
                raise CaseMismatch(f"stuck and no smaller diagonal grid found: {exc}") from exc
            chain.append(H)
            H = K
    return UnknottingResult(steps, fox_alexander(from_grid(G)), r1, H, chain)
