"""Grid diagrams: the data model, validation, file formats and grid moves.

Conventions: columns 0..n-1 run left to right, rows 0..n-1 bottom to top.
``O[j]`` and ``X[j]`` are the rows of the markings in column ``j``.  A grid is
diagonal when ``O[j] == n-1-j``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import IllegalMove, NotAKnot, NotDiagonal, ParseError, ValidationError

# Position of the new O inside the 2x2 stabilization block.
KINDS = ("SW", "SE", "NW", "NE")


@dataclass(frozen=True)
class GridDiagram:
    n: int
    O: tuple[int, ...]
    X: tuple[int, ...]

    def __post_init__(self):
        _validate(self.n, self.O, self.X)

    def to_dict(self) -> dict:
        return {"size": self.n, "O": list(self.O), "X": list(self.X)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def to_compact(self) -> str:
        return f"{self.n};{','.join(map(str, self.O))};{','.join(map(str, self.X))}"

    def o_column(self, row: int) -> int:
        return self.O.index(row)

    def x_column(self, row: int) -> int:
        return self.X.index(row)

    def __str__(self) -> str:
        rows = []
        for r in range(self.n - 1, -1, -1):
            rows.append("".join("O" if self.O[j] == r else "X" if self.X[j] == r else "." for j in range(self.n)))
        return "\n".join(rows)


def _validate(n, O, X):
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError("size must be a positive integer", "n")
    for name, seq in (("O", O), ("X", X)):
        if len(seq) != n:
            raise ValidationError(f"{name} has length {len(seq)}, expected {n}", name)
        if any(not isinstance(v, int) or isinstance(v, bool) for v in seq):
            raise ValidationError(f"{name} entries must be integers", name)
        if sorted(seq) != list(range(n)):
            raise ValidationError(f"{name} is not a permutation of 0..{n - 1}", name)
    for j in range(n):
        if O[j] == X[j]:
            raise ValidationError(f"O and X share the square in column {j}", "collision")


def new_grid(n: int, O: Sequence[int], X: Sequence[int]) -> GridDiagram:
    return GridDiagram(n, tuple(O), tuple(X))


def from_sigma(sigma: Sequence[int]) -> GridDiagram:
    """Diagonal grid whose horizontal segment starting at column j ends at
    column sigma[j]."""
    n = len(sigma)
    X = [0] * n
    for j, s in enumerate(sigma):
        X[s] = n - 1 - j
    return new_grid(n, [n - 1 - j for j in range(n)], X)


def to_sigma(G: GridDiagram) -> list[int]:
    if not is_diagonal(G):
        raise NotDiagonal("grid is not diagonal")
    return [G.x_column(G.O[j]) for j in range(G.n)]


def torus_grid(n: int, k: int) -> GridDiagram:
    """Diagonal grid with X[j] = (O[j]-k) mod n; a (k, n-k) torus link."""
    O = [n - 1 - j for j in range(n)]
    return new_grid(n, O, [(o - k) % n for o in O])


# ---------------------------------------------------------------- file formats

def parse_json(text: str) -> GridDiagram:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}", "json") from None
    if not isinstance(obj, dict) or set(obj) != {"size", "O", "X"}:
        raise ParseError('expected an object with exactly the keys "size", "O", "X"', "json")
    if not isinstance(obj["O"], list) or not isinstance(obj["X"], list):
        raise ParseError("O and X must be arrays", "json")
    return new_grid(obj["size"], obj["O"], obj["X"])


def parse_compact(text: str) -> GridDiagram:
    if text.endswith("\n"):
        text = text[:-1]
    parts = text.split(";")
    if len(parts) != 3 or any(c.isspace() for c in text):
        raise ParseError("compact form is 'n;o0,o1,...;x0,x1,...' without whitespace", "compact")
    try:
        n = int(parts[0])
        O = [int(v) for v in parts[1].split(",")]
        X = [int(v) for v in parts[2].split(",")]
    except ValueError:
        raise ParseError("non-integer entry in compact form", "compact") from None
    return new_grid(n, O, X)


def parse_grid(text: str) -> GridDiagram:
    return parse_json(text) if text.lstrip().startswith("{") else parse_compact(text)


def load_grid(path: str) -> GridDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_grid(fh.read())


# ---------------------------------------------------------------- basic queries

def successor(G: GridDiagram) -> list[int]:
    """Column successor j -> X^{-1}(O[j]) (follow the horizontal segment)."""
    xcol = [0] * G.n
    for c, r in enumerate(G.X):
        xcol[r] = c
    return [xcol[G.O[j]] for j in range(G.n)]


def component_count(G: GridDiagram) -> int:
    succ = successor(G)
    seen = [False] * G.n
    count = 0
    for j in range(G.n):
        if not seen[j]:
            count += 1
            while not seen[j]:
                seen[j] = True
                j = succ[j]
    return count


def require_knot(G: GridDiagram) -> None:
    if component_count(G) != 1:
        raise NotAKnot(f"grid has {component_count(G)} components")


def is_diagonal(G: GridDiagram) -> bool:
    return all(G.O[j] == G.n - 1 - j for j in range(G.n))


def require_diagonal(G: GridDiagram) -> None:
    if not is_diagonal(G):
        raise NotDiagonal("grid is not diagonal")


def cyclic_shift(G: GridDiagram, dc: int, dr: int) -> GridDiagram:
    """Move column j to j+dc and row r to r+dr (mod n); a different planar cut
    of the same toroidal diagram."""
    n = G.n
    O = [0] * n
    X = [0] * n
    for j in range(n):
        O[(j + dc) % n] = (G.O[j] + dr) % n
        X[(j + dc) % n] = (G.X[j] + dr) % n
    return new_grid(n, O, X)


# ---------------------------------------------------------------- grid moves

def _interval(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _compatible(i1, i2) -> bool:
    (a, b), (c, d) = i1, i2
    disjoint = b < c or d < a
    nested = (a < c and d < b) or (c < a and b < d)
    return disjoint or nested


def commute(G: GridDiagram, index: int, axis: str = "columns") -> GridDiagram:
    """Swap columns (or rows) index and index+1.

    Legal only when the two marking intervals are disjoint or nested."""
    n = G.n
    if not 0 <= index < n - 1:
        raise IllegalMove(f"index {index} out of range for adjacent pair")
    if axis == "columns":
        i1 = _interval(G.O[index], G.X[index])
        i2 = _interval(G.O[index + 1], G.X[index + 1])
        if not _compatible(i1, i2):
            raise IllegalMove(f"columns {index},{index + 1} have interleaved marking intervals")
        O = list(G.O)
        X = list(G.X)
        O[index], O[index + 1] = O[index + 1], O[index]
        X[index], X[index + 1] = X[index + 1], X[index]
        return new_grid(n, O, X)
    if axis == "rows":
        oc = [G.o_column(r) for r in (index, index + 1)]
        xc = [G.x_column(r) for r in (index, index + 1)]
        if not _compatible(_interval(oc[0], xc[0]), _interval(oc[1], xc[1])):
            raise IllegalMove(f"rows {index},{index + 1} have interleaved marking intervals")
        swap = {index: index + 1, index + 1: index}
        return new_grid(n, [swap.get(r, r) for r in G.O], [swap.get(r, r) for r in G.X])
    raise ValueError("axis must be 'rows' or 'columns'")


def _block_layout(kind: str) -> tuple[tuple[int, int], list[tuple[int, int]]]:
    """(O offset, X offsets) inside the 2x2 block, offsets as (dcol, drow)."""
    pos = {"SW": (0, 0), "SE": (1, 0), "NW": (0, 1), "NE": (1, 1)}
    if kind not in pos:
        raise ValueError(f"kind must be one of {KINDS}")
    o = pos[kind]
    xs = [(0, 0), (1, 1)] if kind in ("SE", "NW") else [(0, 1), (1, 0)]
    return o, xs


def stabilize(G: GridDiagram, column: int, kind: str) -> GridDiagram:
    """Replace the X in ``column`` by a 2x2 block whose new O sits at ``kind``."""
    n = G.n
    c, r = column, G.X[column]
    oc_row = G.O[c]              # O sharing the column
    or_col = G.o_column(r)       # O sharing the row
    shift_c = lambda j: j + 1 if j > c else j  # noqa: E731
    shift_r = lambda i: i + 1 if i > r else i  # noqa: E731
    O = [None] * (n + 1)
    X = [None] * (n + 1)
    for j in range(n):
        if j == c:
            continue
        O[shift_c(j)] = shift_r(G.O[j]) if j != or_col else None
        X[shift_c(j)] = shift_r(G.X[j])
    (do, ro), xs = _block_layout(kind)
    for dc, dr in xs:
        X[c + dc] = r + dr
    O[c + do] = r + ro
    O[c + 1 - do] = shift_r(oc_row)
    O[shift_c(or_col)] = r + 1 - ro
    return new_grid(n + 1, O, X)


def destabilize(G: GridDiagram, column: int, kind: str) -> GridDiagram:
    """Inverse of :func:`stabilize`; ``column`` is the left block column."""
    n = G.n
    c = column
    if not 0 <= c < n - 1 or n < 3:
        raise IllegalMove("no room for a 2x2 block")
    (do, ro), xs = _block_layout(kind)
    r = G.X[c] - xs[0][1]
    if not 0 <= r < n - 1 or any(G.X[c + dc] != r + dr for dc, dr in xs) or G.O[c + do] != r + ro:
        raise IllegalMove(f"no {kind} stabilization pattern at column {c}")
    ext_row = G.O[c + 1 - do]             # O in block columns outside block rows
    ext_col = G.o_column(r + 1 - ro)       # O in block rows outside block columns
    unshift_c = lambda j: j - 1 if j > c else j  # noqa: E731
    unshift_r = lambda i: i - 1 if i > r else i  # noqa: E731
    O = [None] * (n - 1)
    X = [None] * (n - 1)
    for j in range(n):
        if j in (c, c + 1):
            continue
        X[unshift_c(j)] = unshift_r(G.X[j])
        O[unshift_c(j)] = unshift_r(G.O[j]) if j != ext_col else r
    X[c] = r
    O[c] = unshift_r(ext_row)
    return new_grid(n - 1, O, X)


def find_destabilization(G: GridDiagram) -> tuple[int, str] | None:
    """Smallest (column, kind) at which a destabilization applies."""
    for c in range(G.n - 1):
        for kind in KINDS:
            try:
                destabilize(G, c, kind)
            except IllegalMove:
                continue
            return c, kind
    return None


def reflect_diagonal(G: GridDiagram) -> GridDiagram:
    """Reflect across the top-left/bottom-right diagonal: the reversed link."""
    n = G.n
    O = [0] * n
    X = [0] * n
    for j in range(n):
        O[n - 1 - G.O[j]] = n - 1 - j
        X[n - 1 - G.X[j]] = n - 1 - j
    return new_grid(n, O, X)


def connected_sum(G1: GridDiagram, G2: GridDiagram) -> GridDiagram:
    """Diagonal grid of size n1+n2-2 for the connected sum.

    The last two diagonal positions of G1 are overlaid on the first two of G2;
    G1's last and G2's first position are dropped and the two knots are
    spliced through the survivors."""
    for G in (G1, G2):
        require_diagonal(G)
        require_knot(G)
    a, b = to_sigma(G1), to_sigma(G2)
    n1, n2 = len(a), len(b)
    off = n1 - 2
    sigma = [0] * (n1 + n2 - 2)
    for j in range(n1 - 1):
        sigma[j] = b[0] + off if a[j] == n1 - 1 else a[j]
    for p in range(1, n2):
        sigma[p + off] = a[n1 - 1] if b[p] == 0 else b[p] + off
    return from_sigma(sigma)


def corner_join(G1: GridDiagram, G2: GridDiagram) -> GridDiagram:
    """Connected sum of size n1+n2-1: G2's first O square is identified with
    G1's last one and the two knots are spliced there."""
    for G in (G1, G2):
        require_diagonal(G)
        require_knot(G)
    a, b = to_sigma(G1), to_sigma(G2)
    n1, n2 = len(a), len(b)
    off = n1 - 1
    sigma = [0] * (n1 + n2 - 1)
    for j in range(n1 - 1):
        sigma[j] = a[j]
    sigma[off] = b[0] + off
    for p in range(1, n2):
        sigma[p + off] = a[n1 - 1] if b[p] == 0 else b[p] + off
    return from_sigma(sigma)


def diagonal_cut(G: GridDiagram) -> GridDiagram | None:
    """A cyclic shift of G that is diagonal, if one exists."""
    n = G.n
    if len({(G.O[j] + j) % n for j in range(n)}) != 1:
        return None
    S = cyclic_shift(G, 0, (n - 1 - G.O[0]) % n)
    return S if is_diagonal(S) else None


def simplify_diagonal(G: GridDiagram, max_depth: int = 6, max_nodes: int = 20000) -> GridDiagram | None:
    """Breadth-first search over cyclic shifts and commutations for a grid
    that admits a destabilization landing on a diagonal grid.

    Returns the smaller diagonal grid, or None when the search budget runs out.
    """
    from collections import deque
    seen = {G}
    queue = deque([(G, 0)])
    while queue:
        H, depth = queue.popleft()
        for c in range(H.n - 1):
            for kind in KINDS:
                try:
                    K = destabilize(H, c, kind)
                except IllegalMove:
                    continue
                D = diagonal_cut(K)
                if D is not None:
                    return D
        if depth >= max_depth:
            continue
        nbrs = [cyclic_shift(H, 1, 0), cyclic_shift(H, 0, 1)]
        for i in range(H.n - 1):
            for axis in ("columns", "rows"):
                try:
                    nbrs.append(commute(H, i, axis))
                except IllegalMove:
                    pass
        for N in nbrs:
            if N not in seen:
                if len(seen) >= max_nodes:
                    return None
                seen.add(N)
                queue.append((N, depth + 1))
    return None


def grids_equal(G1: GridDiagram, G2: GridDiagram) -> bool:
    return G1 == G2


def all_diagonal_grids(n: int, knots_only: bool = True) -> Iterable[GridDiagram]:
    """Every diagonal grid of size n, optionally only the knots."""
    from itertools import permutations
    O = [n - 1 - j for j in range(n)]
    for X in permutations(range(n)):
        if any(X[j] == O[j] for j in range(n)):
            continue
        G = new_grid(n, O, X)
        if knots_only and component_count(G) != 1:
            continue
        yield G
