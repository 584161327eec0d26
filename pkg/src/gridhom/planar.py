"""Planar knot diagrams.

A diagram is stored combinatorially: crossings carry their four edge ends in
counterclockwise order (slot 0 east, 1 north, 2 west, 3 south for diagrams
drawn from a grid) and a flag saying which opposite pair of slots is the
over strand.  Edges are the arcs between consecutive crossing passages and
are oriented along the knot.  Diagrams produced from grids additionally keep
their rectilinear segments; the combinatorial part is what every algorithm
here consumes, so diagrams that were modified by crossing changes and
Reidemeister reductions remain fully usable.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Optional

from .errors import NotAKnot
from .grid import GridDiagram, component_count, successor
from .laurent import LaurentPoly, bareiss_det

End = tuple[int, str]          # (edge id, 'h' head / 't' tail)
Slot = tuple[int, int]         # (crossing id, slot 0..3)


@dataclass
class Crossing:
    ends: list            # four End entries, counterclockwise
    over: int             # 0: slots 0/2 carry the over strand, 1: slots 1/3
    pos: Optional[tuple] = None   # (x, y) when drawn from a grid
    label: Optional[int] = None   # stable identifier inherited from the grid

    def strand_slots(self, slot: int) -> tuple[int, int]:
        return (slot % 2, slot % 2 + 2)

    def is_over_slot(self, slot: int) -> bool:
        return slot % 2 == self.over


@dataclass
class Segment:
    kind: str          # 'h' or 'v'
    fixed: float       # y for horizontal, x for vertical
    start: float
    end: float

    def lo(self):
        return min(self.start, self.end)

    def hi(self):
        return max(self.start, self.end)


@dataclass
class AnnotatedDiagram:
    crossings: dict = field(default_factory=dict)   # id -> Crossing
    edges: dict = field(default_factory=dict)       # id -> [tail Slot, head Slot]
    segments: list = field(default_factory=list)    # rectilinear drawing, may be empty
    outer: Optional[tuple] = None                   # (edge id, 'L'|'R'): a side on the unbounded face
    size: Optional[int] = None                      # grid size; the diagonal is x + y = size
    r1_removed: int = 0
    r2_removed: int = 0
    _next_edge: int = 0

    # ------------------------------------------------------------ basics
    def copy(self) -> "AnnotatedDiagram":
        return copy.deepcopy(self)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def slot_of(self, end: End) -> Slot:
        e, side = end
        return self.edges[e][1] if side == "h" else self.edges[e][0]

    def end_at(self, cid: int, slot: int) -> End:
        return self.crossings[cid].ends[slot]

    def new_edge(self, tail: Slot, head: Slot) -> int:
        eid = self._next_edge
        self._next_edge += 1
        self.edges[eid] = [tail, head]
        if tail is not None:
            self.crossings[tail[0]].ends[tail[1]] = (eid, "t")
        if head is not None:
            self.crossings[head[0]].ends[head[1]] = (eid, "h")
        return eid

    def in_slot(self, cid: int, strand: int) -> int:
        """Slot where the strand through slots {strand, strand+2} enters."""
        c = self.crossings[cid]
        return strand if c.ends[strand][1] == "h" else strand + 2

    def sign(self, cid: int) -> int:
        c = self.crossings[cid]
        over_out = (self.in_slot(cid, c.over) + 2) % 4
        under_out = (self.in_slot(cid, 1 - c.over) + 2) % 4
        return 1 if (under_out - over_out) % 4 == 1 else -1

    def writhe(self) -> int:
        return sum(self.sign(c) for c in self.crossings)

    def label(self, cid: int):
        c = self.crossings[cid]
        return c.label if c.label is not None else cid

    # ------------------------------------------------------------ traversal
    def passages(self) -> list[tuple[int, bool, int]]:
        """Crossings along the knot as (crossing, over?, incoming edge)."""
        if not self.crossings:
            return []
        start = min(self.edges)
        out = []
        e = start
        while True:
            cid, slot = self.edges[e][1]
            c = self.crossings[cid]
            out.append((cid, c.is_over_slot(slot), e))
            e = c.ends[(slot + 2) % 4][0]
            if e == start:
                break
        if len(out) != 2 * len(self.crossings):
            raise NotAKnot("diagram has more than one component")
        return out

    def check(self) -> None:
        for eid, (t, h) in self.edges.items():
            assert self.crossings[t[0]].ends[t[1]] == (eid, "t"), (eid, t)
            assert self.crossings[h[0]].ends[h[1]] == (eid, "h"), (eid, h)
        for cid, c in self.crossings.items():
            for s in range(2):
                kinds = {c.ends[s][1], c.ends[s + 2][1]}
                assert kinds == {"h", "t"}, (cid, c.ends)
        self.passages()

    # ------------------------------------------------------------ faces
    def _dart_next(self, dart):
        e, fwd = dart
        cid, slot = self.edges[e][1] if fwd else self.edges[e][0]
        ne, kind = self.crossings[cid].ends[(slot - 1) % 4]
        return (ne, kind == "t")

    def faces(self) -> dict:
        """Map dart -> face id (the face on the dart's left)."""
        face = {}
        fid = 0
        for e in self.edges:
            for fwd in (True, False):
                d = (e, fwd)
                if d in face:
                    continue
                while d not in face:
                    face[d] = fid
                    d = self._dart_next(d)
                fid += 1
        return face

    def outer_face(self, face=None):
        if self.outer is None:
            return None
        face = face or self.faces()
        e, side = self.outer
        return face[(e, side == "L")]

    # ------------------------------------------------------------ Seifert
    def seifert_successor(self) -> dict:
        """Edge following e on its Seifert circle."""
        nxt = {}
        for e, (_, head) in self.edges.items():
            cid, slot = head
            c = self.crossings[cid]
            for s in ((slot + 1) % 4, (slot + 3) % 4):
                if c.ends[s][1] == "t":
                    nxt[e] = c.ends[s][0]
        return nxt

    def seifert_circles(self) -> list[list[int]]:
        nxt = self.seifert_successor()
        seen = set()
        circles = []
        for e in sorted(self.edges):
            if e in seen:
                continue
            cyc = []
            while e not in seen:
                seen.add(e)
                cyc.append(e)
                e = nxt[e]
            circles.append(cyc)
        return circles

    # ------------------------------------------------------------ edits
    def _join(self, e_in: int, e_out: int) -> Optional[int]:
        """Replace e_in followed by e_out with a single edge; the sides of the
        strand keep their names."""
        tail = self.edges[e_in][0]
        head = self.edges[e_out][1]
        del self.edges[e_in]
        if e_out != e_in:
            del self.edges[e_out]
        else:
            return None   # closed loop without crossings
        new = self.new_edge(tail, head)
        if self.outer and self.outer[0] in (e_in, e_out):
            self.outer = (new, self.outer[1])
        return new

    def _remove_crossing(self, cid: int) -> None:
        """Delete a crossing by letting both strands pass straight through.
        Only meaningful as part of an R1 or R2 move."""
        c = self.crossings[cid]
        for strand in (0, 1):
            c = self.crossings[cid]
            i = self.in_slot(cid, strand)
            e_in, e_out = c.ends[i][0], c.ends[(i + 2) % 4][0]
            self._join(e_in, e_out)
        del self.crossings[cid]
        if not self.crossings:
            self.edges.clear()
            self.outer = None

    def find_r1(self) -> Optional[int]:
        """Crossing with a kink: an edge leaving and re-entering it directly."""
        for cid in sorted(self.crossings, key=self.label):
            c = self.crossings[cid]
            for s in range(4):
                e, kind = c.ends[s]
                if kind == "t" and self.edges[e][1][0] == cid:
                    return cid
        return None

    def remove_r1(self, cid: int) -> None:
        c = self.crossings[cid]
        loop = next(e for e, kind in c.ends if kind == "t" and self.edges[e][1][0] == cid)
        if self.outer and self.outer[0] == loop and len(self.crossings) > 1:
            loop_slots = {self.edges[loop][0][1], self.edges[loop][1][1]}
            p = next(s for s in range(4) if s not in loop_slots and c.ends[s][1] == "h")
            a = c.ends[p][0]
            self.outer = (a, "L" if (p - 1) % 4 in loop_slots else "R")
        self._remove_crossing(cid)
        self.r1_removed += 1

    def find_r2(self) -> Optional[tuple[int, int]]:
        """Bigon face whose two corners have the same strand on top."""
        face = self.faces()
        members: dict = {}
        for d, f in face.items():
            members.setdefault(f, []).append(d)
        found = []
        for f, darts in members.items():
            if len(darts) != 2:
                continue
            (e1, _), (e2, _) = darts
            if e1 == e2:
                continue
            t1, h1 = self.edges[e1]
            c1, c2 = t1[0], h1[0]
            if c1 == c2:
                continue
            ends2 = {self.edges[e2][0][0], self.edges[e2][1][0]}
            if ends2 != {c1, c2}:
                continue
            over1 = self.crossings[c1].is_over_slot(t1[1])
            over2 = self.crossings[c2].is_over_slot(h1[1])
            if over1 == over2:
                found.append(tuple(sorted((c1, c2), key=self.label)))
        if not found:
            return None
        return min(found, key=lambda pr: (self.label(pr[0]), self.label(pr[1])))

    def remove_r2(self, pair: tuple[int, int]) -> None:
        for cid in pair:
            self._remove_crossing(cid)
        self.r2_removed += 1

    def reduce(self, r2: bool = True) -> "AnnotatedDiagram":
        """Apply R1 (and optionally R2) removals until none apply."""
        while self.crossings:
            cid = self.find_r1()
            if cid is not None:
                self.remove_r1(cid)
                continue
            if r2:
                pair = self.find_r2()
                if pair is not None:
                    self.remove_r2(pair)
                    continue
            break
        return self

    def flip(self, cid: int) -> None:
        self.crossings[cid].over ^= 1


def from_grid(G: GridDiagram) -> AnnotatedDiagram:
    """Rectilinear diagram of a knot grid: horizontal segments run O to X,
    vertical ones X to O, and verticals always pass over."""
    if component_count(G) != 1:
        raise NotAKnot("grid is a link")
    n = G.n
    succ = successor(G)
    segs = []
    j = 0
    for _ in range(n):
        r = G.O[j]
        c2 = succ[j]
        segs.append(Segment("h", r + 0.5, j + 0.5, c2 + 0.5))
        segs.append(Segment("v", c2 + 0.5, G.X[c2] + 0.5, G.O[c2] + 0.5))
        j = c2
    hs = [s for s in segs if s.kind == "h"]
    vs = [s for s in segs if s.kind == "v"]
    points = {}
    for h in hs:
        for v in vs:
            if h.lo() < v.fixed < h.hi() and v.lo() < h.fixed < v.hi():
                points[(v.fixed, h.fixed)] = len(points)
    D = AnnotatedDiagram(segments=segs, size=n)
    if not points:
        return D
    # passages in traversal order
    seq = []   # (point, kind, direction sign)
    first_on_top = None
    top_row = max(h.fixed for h in hs)
    for s in segs:
        d = 1 if s.end > s.start else -1
        if s.kind == "h":
            pts = sorted((p for p in points if p[1] == s.fixed and s.lo() < p[0] < s.hi()), key=lambda p: d * p[0])
        else:
            pts = sorted((p for p in points if p[0] == s.fixed and s.lo() < p[1] < s.hi()), key=lambda p: d * p[1])
        if s.kind == "h" and s.fixed == top_row:
            first_on_top = (len(seq), d)
        for p in pts:
            seq.append((p, s.kind, d))
    m = len(seq)
    for p, cid in points.items():
        D.crossings[cid] = Crossing([None] * 4, over=1, pos=p, label=cid)
    # slots: 0 east, 1 north, 2 west, 3 south
    for i, (p, kind, d) in enumerate(seq):
        cid = points[p]
        if kind == "h":
            in_s, out_s = (2, 0) if d > 0 else (0, 2)
        else:
            in_s, out_s = (3, 1) if d > 0 else (1, 3)
        D.crossings[cid].ends[in_s] = ("pending_in", i)
        D.crossings[cid].ends[out_s] = ("pending_out", i)
    D._next_edge = m
    for i in range(m):
        # edge i runs from passage i to passage i+1
        p_from, p_to = seq[i][0], seq[(i + 1) % m][0]
        c_from, c_to = D.crossings[points[p_from]], D.crossings[points[p_to]]
        ts = next(s for s in range(4) if c_from.ends[s] == ("pending_out", i))
        hs_ = next(s for s in range(4) if c_to.ends[s] == ("pending_in", (i + 1) % m))
        D.edges[i] = [(points[p_from], ts), (points[p_to], hs_)]
    for eid, (t, h) in D.edges.items():
        D.crossings[t[0]].ends[t[1]] = (eid, "t")
        D.crossings[h[0]].ends[h[1]] = (eid, "h")
    # the top horizontal segment borders the unbounded face on its upper side
    idx, d = first_on_top
    e = (idx - 1) % m          # edge entering the first crossing of that segment
    D.outer = (e, "L" if d > 0 else "R")
    D.check()
    return D


# ---------------------------------------------------------------- Fox calculus

def fox_alexander(D: AnnotatedDiagram) -> LaurentPoly:
    """Alexander polynomial from the Wirtinger presentation."""
    if not D.crossings:
        return LaurentPoly.const(1)
    pas = D.passages()
    # over-arcs: a new arc starts after each under-passage
    # an over-arc starts right after every under-passage
    arc_of_edge = {}
    start = next(i for i, (_, over, _) in enumerate(pas) if not over)
    m = len(pas)
    arc = -1
    for step in range(m):
        i = (start + step) % m
        cid, over, e_in = pas[i]
        if not over:
            arc += 1
        c = D.crossings[cid]
        slot = D.edges[e_in][1][1]
        e_out = c.ends[(slot + 2) % 4][0]
        arc_of_edge[e_out] = arc
    narcs = arc + 1
    t = LaurentPoly.t(1)
    one = LaurentPoly.const(1)
    rows = []
    for cid, c in D.crossings.items():
        row = [LaurentPoly() for _ in range(narcs)]
        over_edge = c.ends[c.over][0]
        k_arc = arc_of_edge[over_edge]
        u_in_slot = D.in_slot(cid, 1 - c.over)
        i_arc = arc_of_edge[c.ends[u_in_slot][0]]
        j_arc = arc_of_edge[c.ends[(u_in_slot + 2) % 4][0]]
        if D.sign(cid) > 0:
            coeffs = ((k_arc, one - t), (i_arc, t), (j_arc, -one))
        else:
            coeffs = ((k_arc, one - t), (i_arc, -one), (j_arc, t))
        for a, v in coeffs:
            row[a] = row[a] + v
        rows.append(row)
    minor = [r[1:] for r in rows[1:]]
    return bareiss_det(minor).normalized()


def fox_alexander_grid(G: GridDiagram) -> LaurentPoly:
    return fox_alexander(from_grid(G))
