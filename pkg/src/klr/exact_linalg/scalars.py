"""Coefficient domains: rationals, prime fields and the integers.

Each domain is a callable that canonicalises a value.  Rationals use the
gmpy2-backed ``mpq`` type that sympy exposes as ``QQ.dtype``; prime-field
elements are plain ints in ``0..p-1``; integers are plain ints.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import GF as _SympyGF
from sympy import QQ as _SympyQQ
from sympy import ZZ as _SympyZZ
from sympy import isprime

_mpq = _SympyQQ.dtype


class Domain:
    name: str = ""
    characteristic: int = 0
    is_field: bool = True

    def __call__(self, x):
        raise NotImplementedError

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def inv(self, x):
        raise NotImplementedError

    def sympy_domain(self):
        raise NotImplementedError

    def from_sympy(self, x):
        raise NotImplementedError

    def to_str(self, x) -> str:
        return str(x)

    def parse(self, s: str):
        return self(Fraction(s))

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other) -> bool:
        return isinstance(other, Domain) and other.name == self.name

    def __hash__(self) -> int:
        return hash(self.name)


class RationalField(Domain):
    name = "QQ"
    characteristic = 0
    is_field = True

    def __call__(self, x):
        if type(x) is _mpq:
            return x
        if isinstance(x, Fraction):
            return _mpq(x.numerator, x.denominator)
        return _mpq(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / self(x)

    def sympy_domain(self):
        return _SympyQQ

    def from_sympy(self, x):
        return self(x)

    def to_str(self, x) -> str:
        x = self(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"


class PrimeField(Domain):
    is_field = True

    def __init__(self, p: int):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF{p}"
        self._sd = _SympyGF(p)

    def __call__(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, (Fraction, _mpq)):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        x = self(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def sympy_domain(self):
        return self._sd

    def from_sympy(self, x):
        return int(x) % self.p


class IntegerRing(Domain):
    name = "ZZ"
    characteristic = 0
    is_field = False

    def __call__(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, (Fraction, _mpq)):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x.numerator)
        return int(x)

    def inv(self, x):
        if x in (1, -1):
            return x
        raise ZeroDivisionError(f"{x} is not a unit in ZZ")

    def sympy_domain(self):
        return _SympyZZ

    def from_sympy(self, x):
        return int(x)


QQ = RationalField()
ZZ = IntegerRing()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_domain(label: str) -> Domain:
    """Accepts ``Q``/``QQ``, ``Z``/``ZZ``, ``F3``/``GF3``/``GF(3)``."""
    s = label.strip().upper().replace("(", "").replace(")", "")
    if s in ("Q", "QQ"):
        return QQ
    if s in ("Z", "ZZ"):
        return ZZ
    for prefix in ("GF", "F"):
        if s.startswith(prefix) and s[len(prefix):].isdigit():
            return GF(int(s[len(prefix):]))
    raise ValueError(f"unknown coefficient domain {label!r}")
