"""Braid words, grid diagrams of braid closures, and diagonal grids for the
three-strand family [m_1]...[m_i] s2^l where [m] = s1^m s2."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotAKnot, ParseError, ValidationError
from .grid import GridDiagram, component_count, from_sigma, new_grid

_LETTER = re.compile(r"^[asσ](\d+)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class BraidWord:
    """Signed generator indices: +i is sigma_i, -i its inverse."""
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise ValidationError("braid needs at least one strand", "strands")
        for g in self.letters:
            if g == 0 or abs(g) > self.strands - 1:
                raise ValidationError(f"generator {g} out of range for {self.strands} strands", "word")

    def __len__(self):
        return len(self.letters)

    def is_positive(self) -> bool:
        return all(g > 0 for g in self.letters)

    def permutation(self) -> list[int]:
        """Position after the braid of the strand starting at each position."""
        at = list(range(self.strands))          # at[pos] = strand id
        for g in self.letters:
            i = abs(g) - 1
            at[i], at[i + 1] = at[i + 1], at[i]
        perm = [0] * self.strands
        for pos, s in enumerate(at):
            perm[s] = pos
        return perm

    def closure_components(self) -> int:
        perm, seen, count = self.permutation(), set(), 0
        for s in range(self.strands):
            if s not in seen:
                count += 1
                while s not in seen:
                    seen.add(s)
                    s = perm[s]
        return count

    def __str__(self) -> str:
        out, prev, run = [], None, 0
        for g in list(self.letters) + [None]:
            if g == prev:
                run += 1
                continue
            if prev is not None:
                e = run if prev > 0 else -run
                out.append(f"a{abs(prev)}" + (f"^{e}" if e != 1 else ""))
            prev, run = g, 1
        return " ".join(out)


def parse_word(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``"a1^4 a2 a1^-1"``; ``s`` or ``σ`` may replace ``a``."""
    letters: list[int] = []
    for tok in text.replace(",", " ").split():
        m = _LETTER.match(tok)
        if not m:
            raise ParseError(f"bad braid letter {tok!r}", "word")
        i, e = int(m.group(1)), int(m.group(2) or 1)
        if i < 1:
            raise ParseError(f"generator index must be >= 1 in {tok!r}", "word")
        if e == 0:
            continue
        letters.extend([i if e > 0 else -i] * abs(e))
    k = strands if strands is not None else (max((abs(g) for g in letters), default=0) + 1)
    return BraidWord(k, tuple(letters))


def family_word(ms: Sequence[int], l: int) -> BraidWord:
    """The 3-braid [m_1]...[m_i] s2^l."""
    if not ms or any(m < 1 for m in ms) or l < 0:
        raise ValidationError("family needs positive blocks and a nonnegative twist count", "family")
    letters: list[int] = []
    for m in ms:
        letters += [1] * m + [2]
    letters += [2] * l
    return BraidWord(3, tuple(letters))


def braid_closure_grid(w: BraidWord) -> GridDiagram:
    """Grid diagram of the closure of ``w``.

    The braid is laid out left to right.  Each letter uses two columns, one
    for each strand that changes level, so exactly one crossing is created per
    letter; the closing arcs are nested rectangles around the braid and add
    none.  Size is 2*len(w) + 2*strands.
    """
    k, L = w.strands, len(w.letters)
    eps = Fraction(1, 4 * (L + 2))
    y = [Fraction(p) for p in range(k)]          # current row of the strand at each level
    path_of = list(range(k))                     # strand occupying each level
    pts: list[list[tuple[Fraction, Fraction]]] = [[(Fraction(-(k - p)), Fraction(p))] for p in range(k)]
    for t, g in enumerate(w.letters):
        i = abs(g) - 1
        a, b = path_of[i], path_of[i + 1]        # a moves up, b moves down
        ya, yb = y[i], y[i + 1]
        x1, x2 = Fraction(2 * t + 1), Fraction(2 * t + 2)
        if g > 0:
            # b drops below a's row, passing over it; a rises afterwards
            nb = i - (2 * t + 1) * eps
        else:
            # b drops but stays above a's row; a then rises over b's new row
            nb = i + (2 * t + 1) * eps
        na = i + 1 + (2 * t + 2) * eps
        pts[b] += [(x1, yb), (x1, nb)]
        pts[a] += [(x2, ya), (x2, na)]
        y[i], y[i + 1] = nb, na
        path_of[i], path_of[i + 1] = b, a
    right = Fraction(2 * L + 1)
    top = Fraction(k)
    for p in range(k):
        s = path_of[p]
        off = k - p
        pts[s] += [(right + off, y[p]), (right + off, top + off), (Fraction(-off), top + off)]
    # pieces end at the left column of their final level; chain them into one loop per component
    end_level = {path_of[p]: p for p in range(k)}
    seen: set[int] = set()
    corners: list[tuple[Fraction, Fraction, str]] = []
    for s0 in range(k):
        if s0 in seen:
            continue
        loop: list[tuple[Fraction, Fraction]] = []
        s = s0
        while s not in seen:
            seen.add(s)
            loop += pts[s]
            s = end_level[s]                      # the piece ending at level p continues as strand p
        m = len(loop)
        for idx, (px, py) in enumerate(loop):
            nx, ny = loop[(idx + 1) % m]
            # entering a horizontal segment at this corner means O, a vertical means X
            corners.append((px, py, "O" if ny == py else "X"))
    xs = sorted({c[0] for c in corners})
    ys = sorted({c[1] for c in corners})
    col = {x: j for j, x in enumerate(xs)}
    row = {v: j for j, v in enumerate(ys)}
    n = len(xs)
    O: list = [None] * n
    X: list = [None] * n
    for px, py, kind in corners:
        (O if kind == "O" else X)[col[px]] = row[py]
    G = new_grid(n, O, X)
    if component_count(G) != 1:
        raise NotAKnot(f"closure of {w} has {component_count(G)} components")
    return G


# ---------------------------------------------------------------- diagonal family

def _queue_sigma(events: Sequence[tuple]) -> list[int] | None:
    """Diagonal permutation from a sequence of column events.

    ``('^', pu, pl)`` opens a strand pair entering the upper and lower queues at
    those positions, ``('v',)`` closes the front of both queues, ``('U', p)``
    and ``('L', p)`` pass the front of the upper (lower) queue on and requeue
    it at position p.
    """
    s: list = [None] * len(events)
    uq: list[int] = []
    lq: list[int] = []
    for t, e in enumerate(events):
        if e[0] == "^":
            uq.insert(e[1] - 1, t)
            lq.insert(e[2] - 1, t)
        elif e[0] == "v":
            if not uq or not lq:
                return None
            s[uq.pop(0)] = t
            s[t] = lq.pop(0)
        elif e[0] == "U":
            if not uq or e[1] > len(uq):
                return None
            s[uq.pop(0)] = t
            uq.insert(e[1] - 1, t)
        else:
            if not lq or e[1] > len(lq):
                return None
            s[t] = lq.pop(0)
            lq.insert(e[1] - 1, t)
    if uq or lq:
        return None
    return s


_OPEN = [("^", 1, 1)] * 3
_CLOSE = [("v",)]


def _family_events(ms: Sequence[int], l: int) -> list[tuple]:
    U2, U3, L3 = ("U", 2), ("U", 3), ("L", 3)
    ev = list(_OPEN)
    if l == 0:
        for m in ms:
            ev += [U2] * (m - 1) + [U3]
        return ev + _CLOSE * 3
    if ms[0] == 1:
        for m in ms[1:]:
            ev += [U2] * (m - 1) + [U3]
        return ev + [U3] + [U2] * l + _CLOSE * 3
    ev += [U2] * (ms[0] - 2) + [U3]
    for m in ms[1:]:
        ev += [U2] * (m - 1) + [U3]
    return ev + [L3] + _CLOSE + [U2] * (l - 1) + _CLOSE * 2


def diagonal_family_grid(ms: Sequence[int], l: int = 0) -> GridDiagram:
    """Diagonal grid of the closure of [m_1]...[m_i] s2^l."""
    w = family_word(ms, l)
    if w.closure_components() != 1:
        raise NotAKnot(f"closure of {w} is a {w.closure_components()}-component link")
    sigma = _queue_sigma(_family_events(list(ms), l))
    if sigma is None:
        raise NotAKnot("construction did not close up")  # unreachable for knot closures
    G = from_sigma(sigma)
    if component_count(G) != 1:
        raise NotAKnot("construction produced a link")
    return G
