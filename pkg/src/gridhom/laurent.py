"""Integer Laurent polynomials in t and a fraction-free determinant."""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import NotDivisible


class LaurentPoly:
    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.c = {e: v for e, v in (coeffs or {}).items() if v}

    # construction helpers
    @classmethod
    def const(cls, v: int) -> "LaurentPoly":
        return cls({0: v})

    @classmethod
    def t(cls, e: int = 1) -> "LaurentPoly":
        return cls({e: 1})

    @classmethod
    def from_list(cls, offset: int, coeffs: Sequence[int]) -> "LaurentPoly":
        return cls({offset + i: v for i, v in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.c

    def min_exp(self) -> int:
        return min(self.c) if self.c else 0

    def max_exp(self) -> int:
        return max(self.c) if self.c else 0

    def degree_span(self) -> int:
        return self.max_exp() - self.min_exp() if self.c else -1

    def coeff(self, e: int) -> int:
        return self.c.get(e, 0)

    def to_list(self) -> tuple[int, list[int]]:
        if not self.c:
            return 0, []
        lo, hi = self.min_exp(), self.max_exp()
        return lo, [self.c.get(e, 0) for e in range(lo, hi + 1)]

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other):
        other = _lift(other)
        d = dict(self.c)
        for e, v in other.c.items():
            d[e] = d.get(e, 0) + v
        return LaurentPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self.c.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        d: dict[int, int] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                d[e1 + e2] = d.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: v for e, v in self.c.items()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient q with self = q*other, raising NotDivisible otherwise."""
        other = _lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = dict(self.c)
        q: dict[int, int] = {}
        dlo, dhi = other.min_exp(), other.max_exp()
        lead = other.c[dhi]
        while rem:
            top = max(rem)
            if top - dhi < min(rem) - dlo:
                raise NotDivisible("polynomial division leaves a remainder")
            v = rem[top]
            if v % lead:
                raise NotDivisible("leading coefficient not divisible")
            k = top - dhi
            f = v // lead
            q[k] = f
            for e, w in other.c.items():
                nv = rem.get(e + k, 0) - f * w
                if nv:
                    rem[e + k] = nv
                else:
                    rem.pop(e + k, None)
        return LaurentPoly(q)

    def evaluate(self, t) -> object:
        return sum(v * t**e for e, v in self.c.items())

    def normalized(self) -> "LaurentPoly":
        """Symmetric representative (t^-k ... t^k) with value +1 at t=1, or
        the closest to it when the polynomial is not symmetric-able."""
        if not self.c:
            return self
        lo, hi = self.min_exp(), self.max_exp()
        if (lo + hi) % 2:
            raise ValueError("span is odd; cannot centre the polynomial")
        p = self.shift(-(lo + hi) // 2)
        if p.evaluate(1) < 0:
            p = -p
        return p

    def mirror(self) -> "LaurentPoly":
        return LaurentPoly({-e: v for e, v in self.c.items()})

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for e in sorted(self.c, reverse=True):
            v = self.c[e]
            mon = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mon and abs(v) == 1:
                s = ("-" if v < 0 else "+") + mon
            else:
                s = f"{v:+d}" + ("*" + mon if mon else "")
            terms.append(s)
        out = "".join(terms)
        return out[1:] if out.startswith("+") else out


def _lift(v) -> LaurentPoly:
    if isinstance(v, LaurentPoly):
        return v
    if isinstance(v, int):
        return LaurentPoly.const(v)
    raise TypeError(f"cannot use {type(v).__name__} as a Laurent polynomial")


def bareiss_det(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free Gaussian elimination; exact over Z[t, t^-1]."""
    m = [[_lift(v) for v in row] for row in matrix]
    n = len(m)
    if n == 0:
        return LaurentPoly.const(1)
    sign = 1
    prev = LaurentPoly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if piv is None:
                return LaurentPoly()
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = LaurentPoly()
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def product(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    out = LaurentPoly.const(1)
    for p in polys:
        out = out * p
    return out
