"""A divisible model of the multiplicative group.

Elements are ``sign * prod p^a_p * prod t^b_t`` with rational exponents on
primes ``p`` and on formal symbols ``t``.  The sign lives in Z/2 and only
admits roots of odd order; asking for anything else raises
:class:`GmObstruction`.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint


class GmObstruction(ArithmeticError):
    """A root that does not exist in the exact model (e.g. sqrt(-1))."""


def _clean(d) -> tuple:
    return tuple(sorted((k, Fraction(v)) for k, v in d.items() if v))


@dataclass(frozen=True)
class GmElem:
    sign: int = 1
    primes: tuple = ()  # sorted ((p, exponent), ...)
    symbols: tuple = ()  # sorted ((name, exponent), ...)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "primes", _clean(dict(self.primes)))
        object.__setattr__(self, "symbols", _clean(dict(self.symbols)))

    # construction -----------------------------------------------------------

    @classmethod
    def one(cls) -> "GmElem":
        return cls()

    @classmethod
    def minus_one(cls) -> "GmElem":
        return cls(-1)

    @classmethod
    def from_rational(cls, x) -> "GmElem":
        x = Fraction(x)
        if x == 0:
            raise ZeroDivisionError("0 is not in the multiplicative group")
        primes = {}
        for p, e in factorint(abs(x.numerator)).items():
            primes[int(p)] = Fraction(e)
        for p, e in factorint(x.denominator).items():
            primes[int(p)] = primes.get(int(p), 0) - e
        return cls(1 if x > 0 else -1, tuple(primes.items()))

    @classmethod
    def symbol(cls, name: str) -> "GmElem":
        return cls(1, (), ((name, Fraction(1)),))

    # group law -------------------------------------------------------------

    def __mul__(self, other) -> "GmElem":
        if not isinstance(other, GmElem):
            other = GmElem.from_rational(other)
        pr = dict(self.primes)
        for k, v in other.primes:
            pr[k] = pr.get(k, 0) + v
        sy = dict(self.symbols)
        for k, v in other.symbols:
            sy[k] = sy.get(k, 0) + v
        return GmElem(self.sign * other.sign, tuple(pr.items()), tuple(sy.items()))

    __rmul__ = __mul__

    def inverse(self) -> "GmElem":
        return GmElem(
            self.sign,
            tuple((k, -v) for k, v in self.primes),
            tuple((k, -v) for k, v in self.symbols),
        )

    def __truediv__(self, other) -> "GmElem":
        if not isinstance(other, GmElem):
            other = GmElem.from_rational(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "GmElem":
        return GmElem.from_rational(other) * self.inverse()

    def __pow__(self, e) -> "GmElem":
        e = Fraction(e)
        if self.sign == -1:
            if e.denominator % 2 == 0:
                raise GmObstruction(f"no root of order {e.denominator} of a negative element")
            sign = -1 if e.numerator % 2 else 1
        else:
            sign = 1
        return GmElem(
            sign,
            tuple((k, v * e) for k, v in self.primes),
            tuple((k, v * e) for k, v in self.symbols),
        )

    def is_one(self) -> bool:
        return self.sign == 1 and not self.primes and not self.symbols

    def is_rational(self) -> bool:
        return not self.symbols and all(v.denominator == 1 for _, v in self.primes)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational number")
        x = Fraction(self.sign)
        for p, v in self.primes:
            x *= Fraction(p) ** int(v)
        return x

    # I/O --------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "primes": {str(p): str(v) for p, v in self.primes},
            "symbols": {k: str(v) for k, v in self.symbols},
        }

    @classmethod
    def from_json(cls, data) -> "GmElem":
        if isinstance(data, (int, str)) and not isinstance(data, bool):
            return cls.from_rational(Fraction(data))
        sign = int(data.get("sign", 1))
        primes = {}
        for p, v in data.get("primes", {}).items():
            p = int(p)
            if p < 2 or len(factorint(p)) != 1 or sum(factorint(p).values()) != 1:
                raise ValueError(f"{p} is not a prime")
            primes[p] = Fraction(v)
        symbols = {str(k): Fraction(v) for k, v in data.get("symbols", {}).items()}
        return cls(sign, tuple(primes.items()), tuple(symbols.items()))

    def __str__(self) -> str:
        parts = [] if self.sign == 1 else ["-1"]
        for k, v in self.primes + self.symbols:
            parts.append(str(k) if v == 1 else f"{k}^({v})")
        return "*".join(parts) or "1"


ONE = GmElem()
MINUS_ONE = GmElem(-1)


def gm_product(elems) -> GmElem:
    out = ONE
    for e in elems:
        out = out * e
    return out


class _SymbolCounter:
    """Process-wide source of fresh symbol names (thread safe)."""

    def __init__(self):
        self._lock = threading.Lock()
        self._count = itertools.count(1)

    def next(self, prefix: str) -> str:
        with self._lock:
            return f"{prefix}{next(self._count)}"


_COUNTER = _SymbolCounter()


def fresh_symbol(prefix: str = "g") -> GmElem:
    """A formal symbol never returned before in this process."""
    return GmElem.symbol(_COUNTER.next(prefix))
