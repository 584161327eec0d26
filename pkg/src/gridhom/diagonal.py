"""Diagonal grids: the canonical state x0, states one or two moves away from it,
square domains along the diagonal, essential squares and their tangles.

In a diagonal grid the O's run from the top-left to the bottom-right corner and
x0 sits on the lattice points of that anti-diagonal.  Swapping the x0 points of
columns a and b produces a state whose two domains to x0 are squares: the
interval of columns [a, b) and its cyclic complement [b, a+n), each with its
main anti-diagonal on the grid's.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import AdjacencyViolation, MalformedTangle, PreconditionViolated
from .gradings import alexander, maslov
from .grid import GridDiagram, require_diagonal, require_knot
from .homology import DEFAULT, EngineConfig, hat_homology
from .laurent import LaurentPoly

State = tuple


def x0(G: GridDiagram) -> State:
    """Upper-left corners of the O squares."""
    return tuple((G.O[j] + 1) % G.n for j in range(G.n))


@dataclass(frozen=True)
class DiagonalSquare:
    """Square over the cyclic column interval [start, start + length)."""
    n: int
    start: int
    length: int

    def __post_init__(self):
        if not 1 <= self.length <= self.n - 1:
            raise ValueError("square length must be between 1 and n-1")
        object.__setattr__(self, "start", self.start % self.n)

    @property
    def end(self) -> int:
        return (self.start + self.length) % self.n

    @property
    def bottom(self) -> int:
        return (self.n - self.start - self.length) % self.n

    def columns(self) -> list[int]:
        return [(self.start + k) % self.n for k in range(self.length)]

    def rows(self) -> list[int]:
        return [(self.bottom + k) % self.n for k in range(self.length)]

    def local(self, col: int, row: int) -> tuple[int, int]:
        """Coordinates relative to the square's lower-left corner."""
        return (col - self.start) % self.n, (row - self.bottom) % self.n

    def contains(self, col: int, row: int) -> bool:
        u, v = self.local(col, row)
        return u < self.length and v < self.length

    def complement(self) -> "DiagonalSquare":
        return DiagonalSquare(self.n, self.end, self.n - self.length)

    def o_count(self, G: GridDiagram) -> int:
        return sum(1 for c in self.columns() if self.contains(c, G.O[c]))

    def x_count(self, G: GridDiagram) -> int:
        return sum(1 for c in self.columns() if self.contains(c, G.X[c]))

    def count(self, G: GridDiagram) -> int:
        return self.o_count(G) - self.x_count(G)

    def x_local(self, G: GridDiagram) -> list[tuple[int, int]]:
        return [self.local(c, G.X[c]) for c in self.columns() if self.contains(c, G.X[c])]

    def state(self, G: GridDiagram) -> State:
        """x0 with the points at the two ends of the interval exchanged."""
        x = list(x0(G))
        a, b = self.start, self.end
        x[a], x[b] = x[b], x[a]
        return tuple(x)

    def sub_squares(self) -> list["DiagonalSquare"]:
        """Diagonal squares strictly inside this one."""
        return [DiagonalSquare(self.n, self.start + i, k)
                for k in range(1, self.length) for i in range(self.length - k + 1)]

    def to_json(self) -> dict:
        return {"start": self.start, "length": self.length}


def swap_states(G: GridDiagram) -> list[State]:
    """The n states obtained by exchanging cyclically adjacent x0 points."""
    require_diagonal(G)
    return [DiagonalSquare(G.n, j, 1).state(G) for j in range(G.n)]


def pair_states(G: GridDiagram) -> list[tuple[State, DiagonalSquare, DiagonalSquare]]:
    """Every state differing from x0 by an exchange of two points, with its
    two square domains (the one not wrapping past column 0 first)."""
    require_diagonal(G)
    out = []
    for a in range(G.n):
        for b in range(a + 1, G.n):
            D = DiagonalSquare(G.n, a, b - a)
            out.append((D.state(G), D, D.complement()))
    return out


# ---------------------------------------------------------------- top strata

@dataclass
class TopReport:
    genus: int
    top: dict
    next: dict

    def to_json(self) -> dict:
        return {"genus": self.genus,
                "top": {str(k): v for k, v in sorted(self.top.items())},
                "next": {str(k): v for k, v in sorted(self.next.items())}}


def top_report(G: GridDiagram, config: EngineConfig = DEFAULT) -> TopReport:
    require_diagonal(G)
    require_knot(G)
    g = alexander(G, x0(G))
    if g == 0:
        H = hat_homology(G, [0], config)
        return TopReport(0, H.stratum(0), {})
    H = hat_homology(G, [g, g - 1], config)
    return TopReport(g, H.stratum(g), H.stratum(g - 1))


# ---------------------------------------------------------------- essential squares

def _require_count(G: GridDiagram, D: DiagonalSquare, want: int = 2) -> None:
    c = D.count(G)
    if c != want:
        raise PreconditionViolated(f"square {D.to_json()} has O-X count {c}, expected {want}")


def marking_free_rectangles(G: GridDiagram, D: DiagonalSquare) -> list[tuple[int, int, int, int]]:
    """Empty rectangles from D's pair state lying inside D and missing every
    marking, as (left, bottom, width, height) in D's local coordinates.

    The state's points in the closed square are its two far corners and the
    x0 points strictly between them on the anti-diagonal; only rectangles
    from the lower-left corner to a diagonal point, or from a diagonal point
    to the upper-right corner, fit.  None of them contains an O, so only X's
    can block them.
    """
    l = D.length
    xs = D.x_local(G)
    out = []
    for i in range(1, l):
        lower = (0, 0, i, l - i)
        upper = (i, l - i, l - i, i)
        for r in (lower, upper):
            u0, v0, w, h = r
            if not any(u0 <= u < u0 + w and v0 <= v < v0 + h for u, v in xs):
                out.append(r)
    return out


def is_essential(G: GridDiagram, D: DiagonalSquare) -> bool:
    """No empty marking-free rectangle from the pair state fits inside D."""
    _require_count(G, D)
    return not marking_free_rectangles(G, D)


def adjacency_violations(G: GridDiagram) -> list[tuple[int, int]]:
    """Columns j whose X shares an edge with an O in the plane."""
    n, bad = G.n, []
    o_at = {(j, G.O[j]) for j in range(n)}
    for j in range(n):
        x, y = j, G.X[j]
        if any(p in o_at for p in ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1))):
            bad.append((x, y))
    return bad


def is_two_bridge_torus_fingerprint(delta: LaurentPoly) -> bool:
    """Coefficients all +-1 and alternating in sign, as for T(2, q)."""
    off, cs = delta.to_list()
    if not cs or any(abs(c) != 1 for c in cs):
        return False
    return all(cs[i] == -cs[i + 1] for i in range(len(cs) - 1))


@dataclass
class EssentialCount:
    m: int
    witnesses: list[tuple[DiagonalSquare, DiagonalSquare]]
    two_bridge_torus: bool = False
    warnings: list[str] = field(default_factory=list)


def essential_pair_count(G: GridDiagram, delta: Optional[LaurentPoly] = None) -> EssentialCount:
    """States x with (M, A) = (-1, g-2) both of whose squares are essential."""
    require_diagonal(G)
    require_knot(G)
    bad = adjacency_violations(G)
    if bad:
        raise AdjacencyViolation(f"X marking(s) next to an O at {bad}")
    g = alexander(G, x0(G))
    wit = []
    for x, D1, D2 in pair_states(G):
        if D1.count(G) != 2 or D2.count(G) != 2:
            continue
        if maslov(G, x) != -1 or alexander(G, x) != g - 2:
            continue      # not reached when the counts are 2; kept as a guard
        if is_essential(G, D1) and is_essential(G, D2):
            wit.append((D1, D2))
    if delta is None:
        from .planar import fox_alexander_grid
        delta = fox_alexander_grid(G)
    torus = is_two_bridge_torus_fingerprint(delta)
    warnings = ["Alexander polynomial looks like a (2,q) torus knot; the count has no homological meaning there"] if torus else []
    return EssentialCount(len(wit), wit, torus, warnings)


# ---------------------------------------------------------------- tangles

@dataclass
class Tangle:
    """Two-strand tangle read off a square; points are in doubled local
    coordinates (marking centres are odd, boundary points are 0 or 2l)."""
    size: int
    strands: list[list[tuple[int, int]]]
    crossings: list[tuple[int, int, int, int]]     # (x, y, over strand, under strand)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def to_json(self) -> dict:
        return {"size": self.size,
                "strands": [[list(p) for p in s] for s in self.strands],
                "crossings": [list(c) for c in self.crossings]}


def extract_tangle(G: GridDiagram, D: DiagonalSquare) -> Tangle:
    """Segments join markings sharing a row or column of D; an O whose row
    (column) partner lies outside D gets a ray to the right (downward).
    Each strand runs horizontally out of an O and vertically into one."""
    _require_count(G, D)
    l = D.length
    O = {}
    X = {}
    for c in D.columns():
        u, v = D.local(c, G.O[c])
        O[u] = v
        if D.contains(c, G.X[c]):
            u2, v2 = D.local(c, G.X[c])
            X[u2] = v2
    x_in_row = {v: u for u, v in X.items()}
    # successor of a marking along the strand: O -> (horizontal) -> X -> (vertical) -> O
    pts = []          # strands as lists of doubled points
    horizontals = []  # (y, x_from, x_to, strand)
    verticals = []    # (x, y_from, y_to, strand)
    starts = [u for u in range(l) if X.get(u) is None]   # columns whose O gets a downward ray: strand heads
    used_o = set()
    for s_idx, u in enumerate(sorted(starts)):
        v = O[u]
        path = [(2 * u + 1, 0), (2 * u + 1, 2 * v + 1)]
        verticals.append((2 * u + 1, 0, 2 * v + 1, s_idx))
        while True:
            used_o.add(u)
            if v not in x_in_row:
                path.append((2 * l, 2 * v + 1))
                horizontals.append((2 * v + 1, 2 * u + 1, 2 * l, s_idx))
                break
            ux = x_in_row[v]
            path.append((2 * ux + 1, 2 * v + 1))
            horizontals.append((2 * v + 1, 2 * u + 1, 2 * ux + 1, s_idx))
            # X to the O of its column
            vo = O[ux]
            path.append((2 * ux + 1, 2 * vo + 1))
            verticals.append((2 * ux + 1, 2 * X[ux] + 1, 2 * vo + 1, s_idx))
            u, v = ux, vo
            if u in used_o:
                raise MalformedTangle("strand closed up inside the square")
        pts.append(path)
    if len(pts) != 2 or len(used_o) != l:
        raise MalformedTangle(f"square yields {len(pts)} open strand(s) and closed components")
    crossings = []
    for (x, y1, y2, sv) in verticals:
        lo, hi = sorted((y1, y2))
        for (y, x1, x2, sh) in horizontals:
            a, b = sorted((x1, x2))
            if a < x < b and lo < y < hi:
                crossings.append((x, y, sv, sh))
    return Tangle(l, pts, sorted(crossings))


def is_integer_tangle(G: GridDiagram, D: DiagonalSquare) -> bool:
    """D not essential and no count-2 diagonal square inside it essential."""
    _require_count(G, D)
    subs = D.sub_squares()
    for S in subs:
        if S.length > 1 and S.count(G) == 1:
            raise PreconditionViolated(f"square {S.to_json()} inside {D.to_json()} has O-X count 1")
    if is_essential(G, D):
        return False
    return not any(S.count(G) == 2 and is_essential(G, S) for S in subs)


def e_square(l: int) -> tuple[GridDiagram, DiagonalSquare]:
    """A diagonal grid containing the l x l square of O's on the diagonal
    with an X two squares to the right of each O but the last two."""
    from .grid import component_count, torus_grid
    n = l + 2
    while True:
        G = torus_grid(n, n - 2)
        if component_count(G) == 1:
            return G, DiagonalSquare(n, 0, l)
        n += 1


# ---------------------------------------------------------------- report

def diagonal_report(G: GridDiagram, config: EngineConfig = DEFAULT,
                    assert_minimal: bool = False) -> dict:
    from .planar import fox_alexander_grid
    tr = top_report(G, config)
    out = tr.to_json()
    delta = fox_alexander_grid(G)
    try:
        ec = essential_pair_count(G, delta)
    except AdjacencyViolation as exc:
        out.update({"m": None, "witnesses": [], "tangle_classification": [],
                    "warnings": [str(exc)], "minimal_asserted": assert_minimal})
        return out
    out["m"] = ec.m
    out["witnesses"] = [{"interval1": [a.start, a.end], "interval2": [b.start, b.end],
                         "sizes": [a.length, b.length]} for a, b in ec.witnesses]
    cls = []
    seen = set()
    for x, D1, D2 in pair_states(G):
        for D in (D1, D2):
            if D in seen or D.count(G) != 2 or D.length < 2:
                continue
            seen.add(D)
            entry = {"square": D.to_json(), "essential": is_essential(G, D)}
            try:
                entry["integer_tangle"] = is_integer_tangle(G, D)
            except PreconditionViolated as exc:
                entry["integer_tangle"] = None
                entry["note"] = str(exc)
            cls.append(entry)
    out["tangle_classification"] = cls
    warnings = list(ec.warnings)
    out["minimal_asserted"] = assert_minimal
    if assert_minimal and tr.genus >= 2:
        H = hat_homology(G, [tr.genus - 2], config)
        out["top2"] = {str(k): v for k, v in sorted(H.stratum(tr.genus - 2).items())}
        if not ec.two_bridge_torus:
            out["top2_matches_m"] = H.stratum(tr.genus - 2) == ({-1: ec.m} if ec.m else {})
    elif not assert_minimal:
        warnings.append("minimality not asserted; m is reported without homological interpretation")
    out["warnings"] = warnings
    return out
