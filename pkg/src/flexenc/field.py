"""Prime field arithmetic GF(p).

Two kinds of fields are used.  *Encoding* fields have p = 2 (mod 3), where
cubing is a bijection and every element has exactly one cube root.
*Geometry* fields have p = 1 (mod 3); they contain a primitive cube root of
unity and are only used to check the flex configuration.
"""

from __future__ import annotations

import functools
from typing import Union

import gmpy2

from .errors import (
    BadCharacteristic,
    CapabilityError,
    DivisionByZero,
    ModulusMismatch,
    NotPrime,
    SpecError,
)

ENCODING = "encoding"
GEOMETRY = "geometry"

# Miller-Rabin rounds; error probability <= 4**-40 = 2**-80.
_MR_ROUNDS = 40


def parse_int(text: Union[str, int]) -> int:
    """Parse a decimal or 0x-prefixed hexadecimal integer."""
    if isinstance(text, bool):
        raise SpecError(f"not an integer: {text!r}")
    if isinstance(text, int):
        return text
    s = str(text).strip()
    try:
        if s.lower().startswith(("0x", "-0x")):
            return int(s, 16)
        return int(s, 10)
    except ValueError:
        raise SpecError(f"not an integer: {text!r}") from None


class PrimeModulus:
    """The field GF(p) together with the constants it needs."""

    __slots__ = ("p", "capability", "cube_exp", "_zeta3")

    def __init__(self, p: int):
        if p < 5 or p % 3 == 0:
            if p in (2, 3):
                raise BadCharacteristic(f"characteristic {p} is not supported")
            if p < 2 or not gmpy2.is_prime(p, _MR_ROUNDS):
                raise NotPrime(f"{p} is not prime")
            raise BadCharacteristic(f"characteristic {p} is not supported")
        if not gmpy2.is_prime(p, _MR_ROUNDS):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        if p % 3 == 2:
            self.capability = ENCODING
            self.cube_exp = (2 * p - 1) // 3
        else:
            self.capability = GEOMETRY
            self.cube_exp = None
        self._zeta3 = None

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeModulus) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (make_field, (self.p,))

    @property
    def is_encoding(self) -> bool:
        return self.capability == ENCODING

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ModulusMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, str):
            value = parse_int(value)
        return FieldElement(int(value) % self.p, self)

    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def elements(self):
        for v in range(self.p):
            yield FieldElement(v, self)

    def random(self, rng) -> "FieldElement":
        return FieldElement(rng.randrange(self.p), self)

    # integer-level helpers, used by the polynomial and solver internals

    def inv(self, v: int) -> int:
        v %= self.p
        if v == 0:
            raise DivisionByZero(f"0 has no inverse in {self!r}")
        return pow(v, -1, self.p)

    def cbrt(self, v: int) -> int:
        if self.cube_exp is None:
            raise CapabilityError(f"cube roots are not unique in {self!r} (p = 1 mod 3)")
        return pow(v, self.cube_exp, self.p)

    def is_square(self, v: int) -> bool:
        v %= self.p
        return v == 0 or pow(v, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, v: int) -> int:
        """A square root of ``v``; raises ValueError for non-residues."""
        p = self.p
        v %= p
        if v == 0:
            return 0
        if pow(v, (p - 1) // 2, p) != 1:
            raise ValueError(f"{v} is not a square mod {p}")
        if p % 4 == 3:
            return pow(v, (p + 1) // 4, p)
        return _tonelli_shanks(v, p)

    def zeta3_int(self) -> int:
        if self.capability != GEOMETRY:
            raise CapabilityError(f"{self!r} has no primitive cube root of unity")
        if self._zeta3 is None:
            p = self.p
            g = 2
            while True:
                z = pow(g, (p - 1) // 3, p)
                if z != 1:
                    break
                g += 1
            self._zeta3 = min(z, z * z % p)
        return self._zeta3


def _tonelli_shanks(n: int, p: int) -> int:
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


@functools.lru_cache(maxsize=256)
def make_field(p) -> PrimeModulus:
    """Return GF(p), checking primality and the characteristic."""
    return PrimeModulus(parse_int(p))


Coercible = Union["FieldElement", int]


class FieldElement:
    """An immutable element of GF(p).

    Arithmetic with plain ``int`` operands coerces them into the field;
    arithmetic between different fields raises ModulusMismatch.
    """

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeModulus):
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.value, self.field))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise ModulusMismatch(f"GF({self.field.p}) vs GF({other.field.p})")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value + o) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value - o) % self.field.p, self.field)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement((o - self.value) % self.field.p, self.field)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value * o % self.field.p, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value * self.field.inv(o) % self.field.p, self.field)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(o * self.field.inv(self.value) % self.field.p, self.field)

    def __neg__(self):
        return FieldElement(-self.value % self.field.p, self.field)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(pow(self.field.inv(self.value), -e, self.field.p), self.field)
        return FieldElement(pow(self.value, e, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"FieldElement({self.value}, GF({self.field.p}))"

    def __str__(self):
        return str(self.value)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def is_square(self) -> bool:
        return self.field.is_square(self.value)

    def sqrt(self) -> "FieldElement":
        return FieldElement(self.field.sqrt(self.value), self.field)

    def cube_root(self) -> "FieldElement":
        return FieldElement(self.field.cbrt(self.value), self.field)

    def signed(self) -> int:
        """Representative in (-p/2, p/2]."""
        p = self.field.p
        return self.value - p if self.value > p // 2 else self.value


# -- the operations named in the API ------------------------------------------

def field_ops(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown field operation {op!r}")


def invert(x: FieldElement) -> FieldElement:
    return x.inverse()


def cube_root(x: FieldElement) -> FieldElement:
    return x.cube_root()


def zeta3(field: PrimeModulus) -> FieldElement:
    """Canonical primitive cube root of unity (the smaller representative)."""
    return FieldElement(field.zeta3_int(), field)


def sqrt_minus3(field: PrimeModulus) -> FieldElement:
    return 2 * zeta3(field) + 1


def is_square(x: FieldElement) -> bool:
    return x.is_square()


def random_prime(bits: int, residue: int, rng) -> int:
    """Random prime of exactly ``bits`` bits with p = residue (mod 3)."""
    while True:
        start = rng.getrandbits(bits) | (1 << (bits - 1))
        p = int(gmpy2.next_prime(start))
        while p % 3 != residue:
            p = int(gmpy2.next_prime(p))
        if p.bit_length() == bits:
            return p
