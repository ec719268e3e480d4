"""Exact fields: the rationals, prime fields and small extension fields.

Elements are plain Python values (``Fraction`` or ``int``); the field object
carries the arithmetic.  ``GF(q)`` picks the lexicographically smallest monic
irreducible modulus, so the same ``q`` always gives the same presentation.
"""

from __future__ import annotations

import itertools
from random import Random
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator

__all__ = ["Field", "Rationals", "PrimeField", "ExtensionField", "GF", "QQ", "parse_field"]


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


class Field:
    """Arithmetic interface shared by all exact fields."""

    name: str
    characteristic: int
    order: int | None  # None for infinite fields

    zero: Any
    one: Any

    def add(self, a, b): raise NotImplementedError
    def sub(self, a, b): raise NotImplementedError
    def mul(self, a, b): raise NotImplementedError
    def neg(self, a): raise NotImplementedError
    def inv(self, a): raise NotImplementedError
    def from_int(self, n: int): raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def random(self, rng: Random):
        raise NotImplementedError

    def elements(self) -> Iterator:
        raise FieldError(f"{self.name} is infinite")

    def to_json(self, a):
        return a

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)


class Rationals(Field):
    name = "QQ"
    characteristic = 0
    order = None
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b): return a + b
    def sub(self, a, b): return a - b
    def mul(self, a, b): return a * b
    def neg(self, a): return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def from_int(self, n: int): return Fraction(n)

    def random(self, rng: Random):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))

    def to_json(self, a):
        a = Fraction(a)
        return int(a) if a.denominator == 1 else str(a)


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.characteristic = p
        self.order = p
        self.zero = 0
        self.one = 1

    def add(self, a, b): return (a + b) % self.p
    def sub(self, a, b): return (a - b) % self.p
    def mul(self, a, b): return (a * b) % self.p
    def neg(self, a): return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def from_int(self, n: int): return n % self.p
    def random(self, rng): return rng.randrange(self.p)
    def elements(self): return iter(range(self.p))


class ExtensionField(Field):
    """``GF(p)[t] / (modulus)``; element ``sum c_i p^i`` encodes
    ``sum c_i t^i``."""

    def __init__(self, p: int, modulus: tuple[int, ...]):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        k = len(modulus) - 1
        if k < 2 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree >= 2")
        if not _irreducible_mod_p(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p, self.k, self.modulus = p, k, tuple(modulus)
        self.order = q = p ** k
        self.characteristic = p
        self.name = f"GF({p}^{k})"
        self.zero, self.one = 0, 1
        digits = [self._digits(a) for a in range(q)]
        self._add = [[self._encode([(x + y) % p for x, y in zip(da, db)]) for db in digits]
                     for da in digits]
        self._neg = [self._encode([(-x) % p for x in da]) for da in digits]
        self._mul = [[self._encode(self._polymul(da, db)) for db in digits] for da in digits]
        self._inv = [0] * q
        for a in range(1, q):
            row = self._mul[a]
            self._inv[a] = row.index(1)

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _encode(self, digits) -> int:
        return sum(c * self.p ** i for i, c in enumerate(digits))

    def _polymul(self, a, b) -> list[int]:
        p, k, mod = self.p, self.k, self.modulus
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
        return prod[:k]

    def add(self, a, b): return self._add[a][b]
    def sub(self, a, b): return self._add[a][self._neg[b]]
    def mul(self, a, b): return self._mul[a][b]
    def neg(self, a): return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def from_int(self, n: int): return n % self.p
    def random(self, rng): return rng.randrange(self.order)
    def elements(self): return iter(range(self.order))

    def generator(self) -> int:
        """The class of ``t``."""
        return self.p


def _irreducible_mod_p(poly: tuple[int, ...], p: int) -> bool:
    """Brute force: no monic factor of degree <= deg/2."""
    n = len(poly) - 1
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            rem = list(poly)
            for shift in range(n - d, -1, -1):
                c = rem[shift + d] % p
                if c:
                    for i in range(d + 1):
                        rem[shift + i] = (rem[shift + i] - c * div[i]) % p
            if not any(x % p for x in rem[:d]):
                return False
    return True


@lru_cache(maxsize=None)
def GF(q: int) -> Field:
    """Finite field of order ``q``."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1 or not _is_prime(p):
        raise FieldError(f"{q} is not a prime power")
    if k == 1:
        return PrimeField(p)
    if q > 1024:
        raise FieldError(f"extension fields are capped at 1024 elements, got {q}")
    for tail in itertools.product(range(p), repeat=k):
        cand = tuple(reversed(tail)) + (1,)
        if cand[0] and _irreducible_mod_p(cand, p):
            return ExtensionField(p, cand)
    raise AssertionError("no irreducible polynomial found")


QQ = Rationals()


def parse_field(spec: str | int) -> Field:
    """``"QQ"``/``"rationals"``, a prime power ``"9"``, or ``"GF(9)"``/``"F9"``."""
    if isinstance(spec, int):
        return GF(spec)
    s = spec.strip().lower()
    if s in ("qq", "q", "rationals"):
        return QQ
    for pre in ("gf(", "f_", "f", "gf"):
        if s.startswith(pre):
            s = s[len(pre):]
            break
    s = s.rstrip(")")
    if "^" in s:
        base, exp = s.split("^")
        return GF(int(base) ** int(exp))
    try:
        return GF(int(s))
    except ValueError:
        raise FieldError(f"unrecognised field {spec!r}") from None
