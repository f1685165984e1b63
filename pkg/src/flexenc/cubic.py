"""Tartaglia-Cardan root extraction over fields with unique cube roots.

The cubic is h(x) = x^3 - s1 x^2 + s2 x - s3.  Given delta with
delta^2 = Delta (the discriminant times -3), one root is

    rho  = cbrt(s1^3 + 27/2 s3 - 9/2 s1 s2 - 3/2 delta)
    rho' = (s1^2 - 3 s2) / rho          (or cbrt of the conjugate when rho = 0)
    r0   = (s1 + rho + rho') / 3
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadWitness, CapabilityError, ModulusMismatch
from .field import FieldElement, PrimeModulus


@dataclass(frozen=True)
class MonicCubic:
    s1: FieldElement
    s2: FieldElement
    s3: FieldElement

    def __post_init__(self):
        p = self.s1.field.p
        if self.s2.field.p != p or self.s3.field.p != p:
            raise ModulusMismatch("cubic coefficients in different fields")

    @classmethod
    def from_ints(cls, s1: int, s2: int, s3: int, field: PrimeModulus) -> "MonicCubic":
        return cls(field(s1), field(s2), field(s3))

    @classmethod
    def from_roots(cls, r0, r1, r2) -> "MonicCubic":
        return cls(r0 + r1 + r2, r0 * r1 + r1 * r2 + r2 * r0, r0 * r1 * r2)

    @property
    def field(self) -> PrimeModulus:
        return self.s1.field

    def __call__(self, x):
        return ((x - self.s1) * x + self.s2) * x - self.s3


@dataclass(frozen=True)
class DeltaWitness:
    delta: FieldElement


def twisted_discriminant_of(s1, s2, s3):
    """-3 times the discriminant, for any ring supporting + and *."""
    return (81 * s3 * s3 - 54 * s3 * s1 * s2 - 3 * s1 * s1 * s2 * s2
            + 12 * s1 * s1 * s1 * s3 + 12 * s2 * s2 * s2)


def twisted_discriminant(c: MonicCubic) -> FieldElement:
    return twisted_discriminant_of(c.s1, c.s2, c.s3)


def _root_int(s1: int, s2: int, s3: int, delta: int, field: PrimeModulus) -> int:
    p = field.p
    inv2 = field.inv(2)
    base = (s1 * s1 * s1 + (27 * s3 - 9 * s1 * s2) * inv2) % p
    half_delta = 3 * delta * inv2 % p
    rho = field.cbrt((base - half_delta) % p)
    if rho:
        rho_c = (s1 * s1 - 3 * s2) * field.inv(rho) % p
    else:
        rho_c = field.cbrt((base + half_delta) % p)
    return (s1 + rho + rho_c) * field.inv(3) % p


def solve_with_delta(c: MonicCubic, w) -> FieldElement:
    """One root of ``c``; ``w`` is a DeltaWitness or a bare FieldElement.

    Raises BadWitness when the result fails h(r0) = 0, which happens
    exactly when delta^2 differs from the twisted discriminant.
    """
    field = c.field
    if not field.is_encoding:
        raise CapabilityError(f"cube roots are not unique in {field!r}")
    delta = w.delta if isinstance(w, DeltaWitness) else w
    if isinstance(delta, FieldElement) and delta.field.p != field.p:
        raise ModulusMismatch("delta and cubic in different fields")
    r0 = field(_root_int(c.s1.value, c.s2.value, c.s3.value, int(delta) % field.p, field))
    if c(r0):
        raise BadWitness(f"delta = {int(delta)} does not square to the twisted discriminant")
    return r0


def solve_int(s1: int, s2: int, s3: int, delta: int, field: PrimeModulus):
    """Integer fast path for batch encoders; None when the post-check fails."""
    p = field.p
    r = _root_int(s1, s2, s3, delta, field)
    if (((r - s1) * r + s2) * r - s3) % p:
        return None
    return r
