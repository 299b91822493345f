"""Windowed Laurent series with integer coefficients.

A series knows its coefficients on the window ``[lo, hi]``.  Outside the
window a coefficient is zero unless the corresponding side is *open*
(a truncated series is open above).  Within the window, coefficients in
``[exact_lo, exact_hi]`` are certified; ``exact_below`` is ``exact_hi``.
"""
from __future__ import annotations

import math
import re
from typing import Iterable, Mapping

INF = math.inf


class LaurentSeries:
    __slots__ = ("coeffs", "lo", "hi", "open_above", "open_below", "exact_lo", "exact_hi")

    def __init__(
        self,
        coeffs: Mapping[int, int] | None = None,
        lo: int | None = None,
        hi: int | None = None,
        *,
        open_above: bool = False,
        open_below: bool = False,
        exact_below: float | None = None,
        exact_above: float | None = None,
    ):
        c = {int(d): int(v) for d, v in (coeffs or {}).items() if v != 0}
        if lo is None:
            lo = min(c) if c else 0
        if hi is None:
            hi = max(c) if c else lo - 1 if not (open_above or open_below) else lo
        if any(d < lo or d > hi for d in c):
            raise ValueError("coefficient outside window")
        self.coeffs = c
        self.lo = lo
        self.hi = hi
        self.open_above = open_above
        self.open_below = open_below
        self.exact_hi = hi if exact_below is None else min(exact_below, hi)
        self.exact_lo = lo if exact_above is None else max(exact_above, lo)

    # ------------------------------------------------------------------ basics
    @classmethod
    def polynomial(cls, coeffs: Mapping[int, int]) -> "LaurentSeries":
        return cls(coeffs)

    @classmethod
    def monomial(cls, d: int, c: int = 1) -> "LaurentSeries":
        return cls({d: c})

    @classmethod
    def zero(cls) -> "LaurentSeries":
        return cls({})

    @classmethod
    def geometric(cls, step: int, hi: int, start: int = 0) -> "LaurentSeries":
        """q^start / (1 - q^step) truncated at degree ``hi``."""
        if step <= 0:
            raise ValueError("step must be positive")
        c = {d: 1 for d in range(start, hi + 1, step)}
        return cls(c, start, max(hi, start - 1) if hi >= start else start - 1, open_above=True)

    @property
    def exact_below(self):
        return self.exact_hi

    @property
    def is_polynomial(self) -> bool:
        return not (self.open_above or self.open_below) and self.exact_lo <= self.lo and self.exact_hi >= self.hi

    def _top(self) -> float:
        return self.hi if self.open_above else INF

    def _bottom(self) -> float:
        return self.lo if self.open_below else -INF

    def _etop(self) -> float:
        if self.exact_hi < self.hi:
            return self.exact_hi
        return self._top()

    def _ebot(self) -> float:
        if self.exact_lo > self.lo:
            return self.exact_lo
        return self._bottom()

    def __getitem__(self, d: int) -> int:
        if d > self.hi and self.open_above or d < self.lo and self.open_below:
            raise KeyError(f"coefficient of q^{d} lies outside the known window")
        return self.coeffs.get(d, 0)

    def known(self, d: int) -> bool:
        return not (d > self.hi and self.open_above or d < self.lo and self.open_below)

    def items(self):
        return sorted(self.coeffs.items())

    def __repr__(self) -> str:
        tail = " + O(q^%d)" % (self.hi + 1) if self.open_above else ""
        return f"LaurentSeries({format_laurent(self.coeffs)}{tail})"

    # ----------------------------------------------------------------- algebra
    @staticmethod
    def _make(c, top, bottom, etop, ebot):
        nz = {d: v for d, v in c.items() if v != 0}
        lo = int(bottom) if bottom != -INF else (min(nz) if nz else 0)
        if top != INF:
            hi = int(top)
        else:
            hi = max(nz) if nz else lo - 1
            hi = max(hi, lo - 1)
        if bottom == -INF and nz:
            lo = min(lo, min(nz))
        nz = {d: v for d, v in nz.items() if lo <= d <= hi}
        out = LaurentSeries.__new__(LaurentSeries)
        out.coeffs = nz
        out.lo, out.hi = lo, hi
        out.open_above = top != INF
        out.open_below = bottom != -INF
        out.exact_hi = hi if etop >= hi else int(etop)
        out.exact_lo = lo if ebot <= lo else int(ebot)
        return out

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentSeries({0: other})
        c = dict(self.coeffs)
        for d, v in other.coeffs.items():
            c[d] = c.get(d, 0) + v
        return self._make(
            c,
            min(self._top(), other._top()),
            max(self._bottom(), other._bottom()),
            min(self._etop(), other._etop()),
            max(self._ebot(), other._ebot()),
        )

    __radd__ = __add__

    def __neg__(self):
        return self._make({d: -v for d, v in self.coeffs.items()}, self._top(), self._bottom(), self._etop(), self._ebot())

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentSeries({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self._make({d: v * other for d, v in self.coeffs.items()}, self._top(), self._bottom(), self._etop(), self._ebot())
        if self.open_above and other.open_below or self.open_below and other.open_above:
            raise ValueError("product of series open in opposite directions is undefined")
        c: dict[int, int] = {}
        for d1, v1 in self.coeffs.items():
            for d2, v2 in other.coeffs.items():
                c[d1 + d2] = c.get(d1 + d2, 0) + v1 * v2
        la, lb = self.lo, other.lo
        ha, hb = self.hi, other.hi
        top = INF
        etop = INF
        if self.open_above:
            top = min(top, ha + lb)
        if other.open_above:
            top = min(top, hb + la)
        if self._etop() != INF:
            etop = min(etop, self._etop() + lb)
        if other._etop() != INF:
            etop = min(etop, other._etop() + la)
        bottom = -INF
        ebot = -INF
        if self.open_below:
            bottom = max(bottom, la + hb)
        if other.open_below:
            bottom = max(bottom, lb + ha)
        if self._ebot() != -INF:
            ebot = max(ebot, self._ebot() + hb)
        if other._ebot() != -INF:
            ebot = max(ebot, other._ebot() + ha)
        out = self._make(c, top, bottom, etop, ebot)
        if not (self.open_above or other.open_above) and top == INF:
            pass
        return out

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by q^k."""
        sh = lambda x: x + k  # noqa: E731
        return self._make(
            {d + k: v for d, v in self.coeffs.items()},
            sh(self._top()),
            sh(self._bottom()),
            sh(self._etop()),
            sh(self._ebot()),
        )

    def bar(self) -> "LaurentSeries":
        neg = lambda x: -x  # noqa: E731
        return self._make(
            {-d: v for d, v in self.coeffs.items()},
            neg(self._bottom()),
            neg(self._top()),
            neg(self._ebot()),
            neg(self._etop()),
        )

    def truncate(self, hi: int) -> "LaurentSeries":
        top = min(self._top(), hi)
        return self._make(dict(self.coeffs), top, self._bottom(), min(self._etop(), hi), self._ebot())

    def is_bar_invariant(self) -> bool:
        if not self.is_polynomial:
            raise ValueError("bar-invariance is only decidable for polynomials")
        return all(self.coeffs.get(-d, 0) == v for d, v in self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    # --------------------------------------------------------------- equality
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentSeries({0: other})
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.coeffs == other.coeffs
            and self.lo == other.lo
            and self.hi == other.hi
            and self.open_above == other.open_above
            and self.open_below == other.open_below
            and self.exact_lo == other.exact_lo
            and self.exact_hi == other.exact_hi
        )

    def __hash__(self):
        return hash((tuple(sorted(self.coeffs.items())), self.lo, self.hi, self.open_above, self.open_below))

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equality of coefficients on the intersection of exact regions."""
        top = min(self._etop(), other._etop())
        bot = max(self._ebot(), other._ebot())
        degs = set(self.coeffs) | set(other.coeffs)
        for d in degs:
            if bot <= d <= top and self.coeffs.get(d, 0) != other.coeffs.get(d, 0):
                return False
        return True

    # ------------------------------------------------------------------ json
    def to_json(self) -> dict:
        out = {
            "lo": self.lo,
            "hi": self.hi,
            "exact_below": self.exact_hi,
            "coeffs": {str(d): v for d, v in sorted(self.coeffs.items())},
        }
        if self.open_above or self.open_below:
            out["open"] = [s for s, f in (("below", self.open_below), ("above", self.open_above)) if f]
        if self.exact_lo > self.lo:
            out["exact_above"] = self.exact_lo
        return out

    @classmethod
    def from_json(cls, data: dict) -> "LaurentSeries":
        opens = data.get("open", [])
        return cls(
            {int(d): v for d, v in data["coeffs"].items()},
            data["lo"],
            data["hi"],
            open_above="above" in opens,
            open_below="below" in opens,
            exact_below=data.get("exact_below"),
            exact_above=data.get("exact_above"),
        )


def quantum_integer(n: int) -> LaurentSeries:
    """[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}."""
    return LaurentSeries({n - 1 - 2 * k: 1 for k in range(n)})


def product_geometric(steps: Iterable[int], hi: int) -> LaurentSeries:
    """prod 1/(1 - q^s) truncated at degree ``hi``."""
    out = LaurentSeries({0: 1})
    for s in steps:
        out = out * LaurentSeries.geometric(s, hi)
    return out.truncate(hi)


def format_laurent(coeffs: Mapping[int, int]) -> str:
    """Render ``{0: 1, 2: 1}`` as ``1+q^2``."""
    items = sorted((d, v) for d, v in coeffs.items() if v != 0)
    if not items:
        return "0"
    parts = []
    for d, v in items:
        if d == 0:
            mono = str(abs(v))
        else:
            q = "q" if d == 1 else f"q^{d}"
            mono = q if abs(v) == 1 else f"{abs(v)}{q}"
        sign = "-" if v < 0 else "+"
        parts.append((sign, mono))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, mono in parts[1:]:
        s += sign + mono
    return s


_TERM = re.compile(r"([+-]?)(\d*)(q(?:\^(-?\d+))?)?")


def parse_laurent(text: str) -> dict[int, int]:
    """Inverse of :func:`format_laurent`."""
    text = text.replace(" ", "")
    if text == "0":
        return {}
    out: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        sign, num, qpart, exp = m.groups()
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        d = 0 if not qpart else (int(exp) if exp is not None else 1)
        if not num and not qpart:
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        out[d] = out.get(d, 0) + c
        pos = m.end()
    return {d: v for d, v in out.items() if v != 0}
