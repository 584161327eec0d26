"""Rectangles on the grid torus connecting two states."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .grid import GridDiagram


@dataclass(frozen=True)
class Rectangle:
    """Torus rectangle with lower-left corner (left, bottom), extending
    ``width`` columns right and ``height`` rows up (indices mod n)."""
    n: int
    left: int
    bottom: int
    width: int
    height: int

    @property
    def right(self) -> int:
        return (self.left + self.width) % self.n

    @property
    def top(self) -> int:
        return (self.bottom + self.height) % self.n

    def columns(self) -> list[int]:
        return [(self.left + k) % self.n for k in range(self.width)]

    def rows(self) -> list[int]:
        return [(self.bottom + k) % self.n for k in range(self.height)]

    def contains_square(self, col: int, row: int) -> bool:
        return (col - self.left) % self.n < self.width and (row - self.bottom) % self.n < self.height

    def has_interior_point(self, col: int, row: int) -> bool:
        dc = (col - self.left) % self.n
        dr = (row - self.bottom) % self.n
        return 0 < dc < self.width and 0 < dr < self.height

    def o_count(self, G: GridDiagram) -> int:
        return sum(1 for c in self.columns() if self.contains_square(c, G.O[c]))

    def x_count(self, G: GridDiagram) -> int:
        return sum(1 for c in self.columns() if self.contains_square(c, G.X[c]))

    def interior_count(self, x: Sequence[int]) -> int:
        return sum(1 for c in self.columns() if self.has_interior_point(c, x[c]))

    def is_square(self) -> bool:
        return self.width == self.height


def rectangle_from(n: int, x: Sequence[int], a: int, b: int) -> Rectangle:
    """The rectangle from x whose lower-left corner is x's point in column a
    and upper-right corner x's point in column b."""
    return Rectangle(n, a, x[a], (b - a) % n, (x[b] - x[a]) % n)


def apply(x: Sequence[int], a: int, b: int) -> tuple[int, ...]:
    y = list(x)
    y[a], y[b] = x[b], x[a]
    return tuple(y)


def rectangles_from(G: GridDiagram, x: Sequence[int]) -> Iterator[tuple[Rectangle, tuple[int, ...]]]:
    n = G.n
    for a in range(n):
        for b in range(n):
            if a != b:
                yield rectangle_from(n, x, a, b), apply(x, a, b)


def rectangles_between(G: GridDiagram, x: Sequence[int], y: Sequence[int]) -> list[Rectangle]:
    diff = [j for j in range(G.n) if x[j] != y[j]]
    if len(diff) != 2:
        return []
    a, b = diff
    return [rectangle_from(G.n, x, a, b), rectangle_from(G.n, x, b, a)]


def is_empty(R: Rectangle, x: Sequence[int]) -> bool:
    return all(not R.has_interior_point(c, x[c]) for c in R.columns()[1:])


def avoids_markings(R: Rectangle, G: GridDiagram) -> bool:
    for c in R.columns():
        if R.contains_square(c, G.O[c]) or R.contains_square(c, G.X[c]):
            return False
    return True
