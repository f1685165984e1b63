"""Plane cubic models, projective points and line restriction.

Weierstrass:  F = Y^2 Z - X^3 - a X Z^2 - b Z^3
Hessian:      F = X^3 + Y^3 + Z^3 - 3 a X Y Z
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .cubic import MonicCubic
from .errors import (
    DegenerateDirection,
    ModulusMismatch,
    NoValidSpan,
    NotOnCurve,
    SingularCurve,
    SpecError,
)
from .field import FieldElement, PrimeModulus, make_field, parse_int
from .poly import Form, form_eval, form_partial

WEIERSTRASS = "weierstrass"
HESSIAN = "hessian"


class ProjectivePoint:
    """A point (X:Y:Z) of the projective plane, compared up to scaling."""

    __slots__ = ("X", "Y", "Z")

    def __init__(self, X, Y, Z, field: PrimeModulus = None):
        if field is None:
            field = next(c.field for c in (X, Y, Z) if isinstance(c, FieldElement))
        X, Y, Z = field(X), field(Y), field(Z)
        if not (X or Y or Z):
            raise ValueError("(0:0:0) is not a projective point")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "Z", Z)

    def __setattr__(self, name, value):
        raise AttributeError("ProjectivePoint is immutable")

    @property
    def field(self) -> PrimeModulus:
        return self.X.field

    def coords(self) -> Tuple[int, int, int]:
        return (self.X.value, self.Y.value, self.Z.value)

    def normalized(self) -> "ProjectivePoint":
        """Scale so that the last nonzero coordinate is 1."""
        c = self.coords()
        k = next(v for v in reversed(c) if v)
        inv = self.field.inv(k)
        p = self.field.p
        return ProjectivePoint(*(v * inv % p for v in c), field=self.field)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        if other.field.p != self.field.p:
            return False
        return self.normalized().coords() == other.normalized().coords()

    def __hash__(self):
        return hash((self.normalized().coords(), self.field.p))

    def __repr__(self):
        return f"({self.X.value}:{self.Y.value}:{self.Z.value})"

    def to_json(self, model: str = None) -> dict:
        n = self.normalized()
        if model == WEIERSTRASS and n.coords() == (0, 1, 0):
            return {"infinity": True}
        return {"X": str(n.X.value), "Y": str(n.Y.value), "Z": str(n.Z.value)}


def point_from_json(data, field: PrimeModulus) -> ProjectivePoint:
    if data.get("infinity"):
        return ProjectivePoint(0, 1, 0, field=field)
    return ProjectivePoint(*(parse_int(data[k]) for k in ("X", "Y", "Z")), field=field)


class _CubicCurve:
    model: str
    field: PrimeModulus
    form: Form

    def F(self, x: int, y: int, z: int) -> int:
        return form_eval(self.form, x, y, z, self.field.p)

    def on_curve(self, P: ProjectivePoint) -> bool:
        if P.field.p != self.field.p:
            raise ModulusMismatch("point and curve in different fields")
        return self.F(*P.coords()) == 0

    def gradient(self, P: ProjectivePoint) -> Tuple[FieldElement, FieldElement, FieldElement]:
        p = self.field.p
        return tuple(self.field(form_eval(form_partial(self.form, v, p), *P.coords(), p)) for v in range(3))

    def tangent(self, P: ProjectivePoint) -> ProjectivePoint:
        """Dual-plane point of the tangent line at a smooth point P."""
        if not self.on_curve(P):
            raise NotOnCurve(f"{P} is not on {self}")
        return ProjectivePoint(*self.gradient(P))


class WeierstrassCurve(_CubicCurve):
    model = WEIERSTRASS

    def __init__(self, field: PrimeModulus, a, b):
        self.field = field
        self.a = field(a)
        self.b = field(b)
        if not (4 * self.a ** 3 + 27 * self.b ** 2):
            raise SingularCurve("4a^3 + 27b^2 = 0")
        p = field.p
        self.form = {(0, 2, 1): 1, (3, 0, 0): p - 1, (1, 0, 2): -self.a.value % p, (0, 0, 3): -self.b.value % p}
        self.form = {k: v for k, v in self.form.items() if v}

    @property
    def symbols(self):
        return {"a": self.a.value, "b": self.b.value}

    def designated_point(self) -> ProjectivePoint:
        return ProjectivePoint(0, 1, 0, field=self.field)

    def __repr__(self):
        return f"WeierstrassCurve(GF({self.field.p}), a={self.a.value}, b={self.b.value})"

    def to_json(self) -> dict:
        return {"p": str(self.field.p), "model": WEIERSTRASS, "a": str(self.a.value), "b": str(self.b.value)}


class HessianCurve(_CubicCurve):
    model = HESSIAN

    def __init__(self, field: PrimeModulus, a):
        self.field = field
        self.a = field(a)
        if self.a ** 3 == 1:
            raise SingularCurve("a^3 = 1")
        p = field.p
        self.form = {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1, (1, 1, 1): -3 * self.a.value % p}
        self.form = {k: v for k, v in self.form.items() if v}

    @property
    def symbols(self):
        return {"a": self.a.value}

    def designated_point(self) -> ProjectivePoint:
        return ProjectivePoint(0, -1, 1, field=self.field)

    def __repr__(self):
        return f"HessianCurve(GF({self.field.p}), a={self.a.value})"

    def to_json(self) -> dict:
        return {"p": str(self.field.p), "model": HESSIAN, "a": str(self.a.value)}


def curve_from_json(data) -> _CubicCurve:
    """Build a curve from {"p": ..., "model": ..., "a": ..., "b": ...}."""
    if not isinstance(data, dict):
        raise SpecError("curve spec must be a JSON object")
    try:
        field = make_field(data["p"])
        model = data["model"]
        if model == WEIERSTRASS:
            return WeierstrassCurve(field, parse_int(data["a"]), parse_int(data["b"]))
        if model == HESSIAN:
            return HessianCurve(field, parse_int(data["a"]))
    except KeyError as exc:
        raise SpecError(f"curve spec is missing {exc.args[0]!r}") from None
    raise SpecError(f"unknown curve model {data.get('model')!r}")


def on_curve(curve, P: ProjectivePoint) -> bool:
    return curve.on_curve(P)


def gauss_map_hessian(curve: HessianCurve, P: ProjectivePoint) -> ProjectivePoint:
    """(X:Y:Z) -> (X^2 - aYZ : Y^2 - aXZ : Z^2 - aXY)."""
    if not curve.on_curve(P):
        raise NotOnCurve(f"{P} is not on {curve}")
    a = curve.a
    X, Y, Z = P.X, P.Y, P.Z
    return ProjectivePoint(X * X - a * Y * Z, Y * Y - a * X * Z, Z * Z - a * X * Y)


def hessian_dual_form(a: int, p: int) -> Form:
    """The sextic G(U, V, W) whose zero set is the dual of the Hessian cubic."""
    a %= p
    c4 = -6 * a * a % p
    c33 = (4 * a ** 3 - 2) % p
    c222 = (12 * a - 3 * a ** 4) % p
    form = {(6, 0, 0): 1, (0, 6, 0): 1, (0, 0, 6): 1,
            (4, 1, 1): c4, (1, 4, 1): c4, (1, 1, 4): c4,
            (3, 3, 0): c33, (3, 0, 3): c33, (0, 3, 3): c33,
            (2, 2, 2): c222}
    return {k: v for k, v in form.items() if v}


def hessian_dual_eval(a: FieldElement, Q: ProjectivePoint) -> FieldElement:
    p = a.field.p
    return a.field(form_eval(hessian_dual_form(a.value, p), *Q.coords(), p))


def hessian_dual_gradient(a: FieldElement, Q: ProjectivePoint):
    p = a.field.p
    G = hessian_dual_form(a.value, p)
    return tuple(a.field(form_eval(form_partial(G, v, p), *Q.coords(), p)) for v in range(3))


def hessian_j_invariant(a: FieldElement) -> FieldElement:
    den = (a - 1) ** 3 * (a * a + a + 1) ** 3
    if not den:
        raise SingularCurve("a^3 = 1")
    return 27 * a ** 3 * (a + 2) ** 3 * (a * a - 2 * a + 4) ** 3 / den


@dataclass(frozen=True)
class BackMap:
    """i -> P0 + i * P1, a parameterization of the line through P0 and P1."""

    P0: ProjectivePoint
    P1: ProjectivePoint

    def __post_init__(self):
        if self.P0 == self.P1:
            raise ValueError("back-map points must be projectively distinct")

    def __call__(self, i) -> ProjectivePoint:
        i = self.P0.field(i)
        return ProjectivePoint(self.P0.X + i * self.P1.X, self.P0.Y + i * self.P1.Y, self.P0.Z + i * self.P1.Z)


def restrict_coefficients(curve, P0: Tuple[int, int, int], P1: Tuple[int, int, int]):
    """Coefficients (c0, c1, c2, c3) of F(P0 + i P1) as a cubic in i."""
    p = curve.field.p
    F = curve.F
    c0 = F(*P0)
    c3 = F(*P1)
    plus = F(*((u + v) % p for u, v in zip(P0, P1)))
    minus = F(*((u - v) % p for u, v in zip(P0, P1)))
    inv2 = curve.field.inv(2)
    even = (plus + minus) * inv2 % p
    odd = (plus - minus) * inv2 % p
    return c0, (odd - c3) % p, (even - c0) % p, c3


def restrict_via_parameterization(curve, bm: BackMap) -> MonicCubic:
    """Monic cubic in i whose roots i0 give the intersection points bm(i0)."""
    c0, c1, c2, c3 = restrict_coefficients(curve, bm.P0.coords(), bm.P1.coords())
    if not c3:
        raise DegenerateDirection(f"direction point {bm.P1} lies on the curve")
    field = curve.field
    inv = field.inv(c3)
    p = field.p
    return MonicCubic.from_ints(-c2 * inv % p, c1 * inv % p, -c0 * inv % p, field)


def _line_candidates(u: int, v: int, w: int, p: int):
    # coordinate-axis intersections first
    yield (0, w, -v % p)
    yield (-w % p, 0, u)
    yield (v, -u % p, 0)
    if w:
        inv = pow(w, -1, p)
        for i in range(p):
            yield (1, i, -(u + v * i) * inv % p)
    else:
        for i in range(p):
            yield (-v % p, u, i)


def span_line(u, v, w, curve) -> BackMap:
    """Deterministic pair (P0, P1) on uX + vY + wZ = 0 with F(P1) != 0."""
    field = curve.field
    p = field.p
    u, v, w = int(u) % p, int(v) % p, int(w) % p
    if not (u or v or w):
        raise ValueError("(0:0:0) does not define a line")
    P0 = None
    for cand in _line_candidates(u, v, w, p):
        if not any(cand):
            continue
        pt = ProjectivePoint(*cand, field=field)
        if P0 is None:
            P0 = pt
            continue
        if pt != P0 and curve.F(*cand):
            return BackMap(P0, pt)
    raise NoValidSpan(f"no point off the curve on the line ({u}:{v}:{w})")
