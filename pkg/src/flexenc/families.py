"""Line families, even-intersection certification and encoders.

A family of lines U(t) X + V(t) Y + W(t) Z = 0 restricts the curve to a
cubic whose coefficients s1, s2, s3 are rational functions of t.  When the
twisted discriminant Delta(t) of that cubic is a square in k(t), a square
root delta(t) is computed once and every parameter t0 then yields a point
using field operations and one cube root.  That compiled object is an
EncoderPlan.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .cubic import MonicCubic, solve_int, solve_with_delta, twisted_discriminant_of
from .curves import (
    HESSIAN,
    WEIERSTRASS,
    HessianCurve,
    ProjectivePoint,
    WeierstrassCurve,
    curve_from_json,
    point_from_json,
)
from .errors import (
    DegenerateFamily,
    IcartRequiresNonzeroA,
    InternalBadWitness,
    ModelMismatch,
    NotASquare,
    NotEven,
    SingularParameterSet,
    SpecError,
    UnknownFamily,
)
from .field import FieldElement, PrimeModulus, parse_int
from .poly import (
    Polynomial,
    RationalFunction,
    compose,
    gcd,
    poly_from_strings,
    poly_to_json,
    ratfun_from_json,
    ratfun_sqrt,
    ratfun_to_json,
    roots,
)

PolyTriple = Tuple[Polynomial, Polynomial, Polynomial]

_A = "(a^2+a+1)"
_B = "(a+2)^3"

_BUILTINS: Dict[str, dict] = {
    # conic UW - aV^2 = 0 through six cusps
    "farashahi": dict(model=HESSIAN, U=["1"], V=["0", "-1"], W=["0", "0", "a"], span="X"),
    # rational quartic through all nine cusps of the Weierstrass dual
    "icart": dict(model=WEIERSTRASS, U=["0", "0", "6"], V=["0", "0", "0", "6"],
                  W=["-1", "0", "0", "0", "3*a"], span="Y"),
    "octic": dict(model=WEIERSTRASS,
                  U=["0", "0", "4/27", "0", "0", "0", "4*a"],
                  V=["0", "0", "0", "4/27", "0", "0", "0", "4*a"],
                  W=["1/81", "0", "0", "0", "2*a/27", "0", "4*b", "0", "a^2"],
                  span="Y"),
    # line through the cusps (a:1:1) and (1:a:1); not even
    "pencil-raw": dict(model=HESSIAN, U=["1", "a"], V=["a", "1"], W=["1", "1"],
                       span={"P0": [["1"], ["0", "-1"], ["-1", "1"]],
                             "P1": [["1"], ["1"], ["-a-1"]]}),
    # pencil-raw with t = T(j)/K(j) from the conic parameterization
    "pencil": dict(model=HESSIAN,
                   U=[f"{_A}*{_B}", f"-3*a*{_A} - 3*{_A}", "a"],
                   V=[f"a*{_A}*{_B}", f"-3*{_A} - 3*a*{_A}", "1"],
                   W=[f"{_A}*{_B}", f"-6*{_A}", "1"],
                   span={"P0": [[f"{_A}*{_B}", f"-3*{_A}"], ["0", f"3*{_A}", "-1"], [f"-{_A}*{_B}", "0", "1"]],
                         "P1": [["1"], ["1"], ["-a-1"]]}),
}

BUILTIN_NAMES = tuple(_BUILTINS)
_ELIMINATIONS = ("Y", "X", "Z")


@dataclass(frozen=True)
class LineFamily:
    """Coefficient strings for U(t), V(t), W(t), ascending degree.

    Strings may use rational literals and the curve symbols "a", "b"; they
    are resolved against a curve by :meth:`bind`.  ``span`` picks the
    back-map: "auto", an eliminated coordinate "X"/"Y"/"Z", or explicit
    point polynomials ``{"P0": [Xc, Yc, Zc], "P1": [...]}``.
    """

    name: str
    model: str
    U: Tuple[str, ...]
    V: Tuple[str, ...]
    W: Tuple[str, ...]
    span: object = "auto"
    constraints: str = "roots of F(P1(t)) and of the back-map degeneracy"

    def bind(self, curve) -> PolyTriple:
        if curve.model != self.model:
            raise ModelMismatch(f"family {self.name!r} is for {self.model} curves, got {curve.model}")
        sym = curve.symbols
        return tuple(poly_from_strings(c, curve.field, sym) for c in (self.U, self.V, self.W))

    def bind_span(self, curve):
        if not isinstance(self.span, Mapping):
            return None
        sym = curve.symbols
        return tuple(
            tuple(poly_from_strings(c, curve.field, sym) for c in self.span[key])
            for key in ("P0", "P1")
        )


def builtin_family(name: str, curve) -> LineFamily:
    if name not in _BUILTINS:
        raise UnknownFamily(f"unknown family {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    spec = _BUILTINS[name]
    fam = LineFamily(name=name, model=spec["model"], U=tuple(spec["U"]), V=tuple(spec["V"]),
                     W=tuple(spec["W"]), span=spec["span"])
    if curve.model != fam.model:
        raise ModelMismatch(f"family {name!r} is for {fam.model} curves, got {curve.model}")
    if name == "icart" and not curve.a:
        raise IcartRequiresNonzeroA("the Icart family needs a != 0")
    return fam


def family_from_json(data, name: str = "user") -> LineFamily:
    if not isinstance(data, dict):
        raise SpecError("family spec must be a JSON object")
    try:
        model = data["model"]
        U, V, W = (tuple(str(c) for c in data[k]) for k in ("U", "V", "W"))
    except (KeyError, TypeError) as exc:
        raise SpecError(f"family spec needs model, U, V, W ({exc})") from None
    if model not in (WEIERSTRASS, HESSIAN):
        raise SpecError(f"unknown model {model!r}")
    span = data.get("span", "auto")
    if isinstance(span, str):
        if span not in ("auto",) + _ELIMINATIONS:
            raise SpecError(f"span must be auto, X, Y or Z, got {span!r}")
    elif not (isinstance(span, dict) and "P0" in span and "P1" in span):
        raise SpecError('explicit span must be {"P0": [...], "P1": [...]}')
    return LineFamily(name=data.get("name", name), model=model, U=U, V=V, W=W, span=span)


def _eliminating(var: str, U, V, W) -> Tuple[PolyTriple, PolyTriple]:
    zero = U * 0
    if var == "X":
        return (-W, zero, U), (-V, U, zero)
    if var == "Y":
        return (zero, -W, V), (V, -U, zero)
    return (zero, W, -V), (W, zero, -U)


def _cross(P0: PolyTriple, P1: PolyTriple) -> PolyTriple:
    return (P0[1] * P1[2] - P0[2] * P1[1],
            P0[2] * P1[0] - P0[0] * P1[2],
            P0[0] * P1[1] - P0[1] * P1[0])


def _restriction(curve, P0: PolyTriple, P1: PolyTriple):
    form = curve.form
    c0 = compose(form, P0)
    c3 = compose(form, P1)
    plus = compose(form, [x + y for x, y in zip(P0, P1)])
    minus = compose(form, [x - y for x, y in zip(P0, P1)])
    half = curve.field.inv(2)
    c2 = (plus + minus) * half - c0
    c1 = (plus - minus) * half - c3
    return c0, c1, c2, c3


@dataclass(frozen=True)
class _Span:
    P0: PolyTriple
    P1: PolyTriple
    c: Tuple[Polynomial, Polynomial, Polynomial, Polynomial]


def _choose_span(curve, fam: LineFamily) -> _Span:
    U, V, W = fam.bind(curve)
    if U.is_zero() and V.is_zero() and W.is_zero():
        raise DegenerateFamily(f"family {fam.name!r} has U = V = W = 0")
    explicit = fam.bind_span(curve)
    if explicit is not None:
        P0, P1 = explicit
        for pt in (P0, P1):
            if U * pt[0] + V * pt[1] + W * pt[2]:
                raise SpecError(f"span point {pt} is not on the line family")
        candidates = [(P0, P1)]
    else:
        content = gcd(gcd(U, V), W)
        if not content.is_one():
            U, V, W = (q.exact_div(content) for q in (U, V, W))
        order = _ELIMINATIONS if fam.span == "auto" else (fam.span,)
        coeff = {"X": U, "Y": V, "Z": W}
        candidates = [_eliminating(var, U, V, W) for var in order if coeff[var]]
    for P0, P1 in candidates:
        if all(c.is_zero() for c in _cross(P0, P1)):
            continue
        c = _restriction(curve, P0, P1)
        if not c[3].is_zero():
            return _Span(P0, P1, c)
    raise DegenerateFamily(f"restriction of {fam.name!r} to {curve} is degenerate for every t")


def _symmetric_functions(sp: _Span):
    c0, c1, c2, c3 = sp.c
    return RationalFunction(-c2, c3), RationalFunction(c1, c3), RationalFunction(-c0, c3)


def family_discriminant(curve, fam: LineFamily) -> RationalFunction:
    """Twisted discriminant of the family's restriction, as a function of t."""
    s1, s2, s3 = _symmetric_functions(_choose_span(curve, fam))
    return twisted_discriminant_of(s1, s2, s3)


@dataclass
class EncoderPlan:
    """A certified family compiled for repeated encoding."""

    curve: object
    name: str
    s1: RationalFunction
    s2: RationalFunction
    s3: RationalFunction
    Delta: RationalFunction
    delta: RationalFunction
    P0: PolyTriple
    P1: PolyTriple
    excluded: Tuple[int, ...]
    designated: ProjectivePoint
    _excluded_set: frozenset = dc_field(init=False, repr=False)

    def __post_init__(self):
        self._excluded_set = frozenset(self.excluded)

    @property
    def field(self) -> PrimeModulus:
        return self.curve.field

    def is_excluded(self, t0) -> bool:
        return int(t0) % self.field.p in self._excluded_set

    def specialize(self, t0) -> Tuple[MonicCubic, FieldElement]:
        t0 = int(t0)
        F = self.field
        return (MonicCubic.from_ints(self.s1.eval_int(t0), self.s2.eval_int(t0), self.s3.eval_int(t0), F),
                F(self.delta.eval_int(t0)))

    def backmap_points(self, t0) -> Tuple[Tuple[int, int, int], Tuple[int, int, int]]:
        t0 = int(t0)
        return (tuple(c.eval_int(t0) for c in self.P0), tuple(c.eval_int(t0) for c in self.P1))

    def check(self) -> bool:
        """The defining invariant delta^2 = Delta."""
        return self.delta * self.delta == self.Delta

    def to_json(self) -> dict:
        return {
            "even": True,
            "family": self.name,
            "curve": self.curve.to_json(),
            "s1": ratfun_to_json(self.s1),
            "s2": ratfun_to_json(self.s2),
            "s3": ratfun_to_json(self.s3),
            "Delta": ratfun_to_json(self.Delta),
            "delta": ratfun_to_json(self.delta),
            "backmap": {"P0": [poly_to_json(c) for c in self.P0],
                        "P1": [poly_to_json(c) for c in self.P1]},
            "excluded": [str(t) for t in self.excluded],
            "designated": self.designated.to_json(self.curve.model),
        }

    @classmethod
    def from_json(cls, data, curve=None) -> "EncoderPlan":
        """Re-import an exported plan, trusting its precomputed delta.

        The plan invariant delta^2 = Delta is re-checked and the exclusion
        set is widened with the back-map degeneracies.
        """
        if not isinstance(data, dict) or "delta" not in data:
            raise SpecError("not an exported encoder plan")
        if curve is None:
            curve = curve_from_json(data["curve"])
        F = curve.field
        try:
            s1, s2, s3, Delta, delta = (ratfun_from_json(data[k], F) for k in ("s1", "s2", "s3", "Delta", "delta"))
            P0, P1 = (tuple(poly_from_strings(c, F) for c in data["backmap"][k]) for k in ("P0", "P1"))
            excluded = {parse_int(t) % F.p for t in data.get("excluded", [])}
            designated = point_from_json(data["designated"], F) if "designated" in data else curve.designated_point()
        except (KeyError, TypeError) as exc:
            raise SpecError(f"malformed plan ({exc})") from None
        if delta * delta != Delta:
            raise SpecError("plan delta does not square to Delta")
        excluded |= set(_degeneracies(curve, P0, P1))
        return cls(curve, data.get("family", "imported"), s1, s2, s3, Delta, delta, P0, P1,
                   tuple(sorted(excluded)), designated)


def _degeneracies(curve, P0: PolyTriple, P1: PolyTriple):
    c3 = compose(curve.form, P1)
    found = set(roots(c3)) if not c3.is_zero() else set()
    cross = _cross(P0, P1)
    g = None
    for c in cross:
        if c:
            g = c if g is None else gcd(g, c)
    if g is not None:
        found |= set(roots(g))
    return found


def certify_even(curve, fam: LineFamily) -> EncoderPlan:
    """Compile ``fam`` into an EncoderPlan, or raise NotEven with a witness."""
    if not curve.field.is_encoding:
        raise SpecError(f"encoding needs p = 2 mod 3, got p = {curve.field.p}")
    sp = _choose_span(curve, fam)
    s1, s2, s3 = _symmetric_functions(sp)
    Delta = twisted_discriminant_of(s1, s2, s3)
    try:
        delta = ratfun_sqrt(Delta)
    except NotASquare as exc:
        raise NotEven(f"family {fam.name!r}: discriminant is not a square ({exc})", witness=exc.witness) from None
    excluded = tuple(sorted(_degeneracies(curve, sp.P0, sp.P1)))
    return EncoderPlan(curve, fam.name, s1, s2, s3, Delta, delta, sp.P0, sp.P1, excluded,
                       curve.designated_point())


def encode(plan: EncoderPlan, t0, sign: int = 1) -> ProjectivePoint:
    """Point on the plan's curve for parameter t0.

    ``sign`` selects the global sign of delta; both signs give points on
    the curve.  Excluded parameters map to the designated flex.
    """
    F = plan.field
    p = F.p
    t = int(t0) % p
    if t in plan._excluded_set:
        return plan.designated
    s1, s2, s3 = plan.s1.eval_int(t), plan.s2.eval_int(t), plan.s3.eval_int(t)
    d = sign * plan.delta.eval_int(t) % p
    r = solve_int(s1, s2, s3, d, F)
    if r is None:
        raise InternalBadWitness(f"plan {plan.name!r} produced a bad delta at t = {t}")
    P0, P1 = plan.backmap_points(t)
    return ProjectivePoint(*((x + r * y) % p for x, y in zip(P0, P1)), field=F).normalized()


# -- closed forms ---------------------------------------------------------------

def icart_encode(curve: WeierstrassCurve, t0) -> ProjectivePoint:
    """x = 1/(3t^2) + cbrt(a^2 t^2/4 - 1/(108 t^6) - b - a/(6 t^2)), y = 1/(6t^3) - at/2 - x/t."""
    F = curve.field
    if not curve.a:
        raise IcartRequiresNonzeroA("the Icart encoding needs a != 0")
    t = F(t0)
    if not t:
        return curve.designated_point()
    a, b = curve.a, curve.b
    t2 = t * t
    arg = a * a * t2 / 4 - 1 / (108 * t2 ** 3) - b - a / (6 * t2)
    x = 1 / (3 * t2) + arg.cube_root()
    y = 1 / (6 * t2 * t) - a * t / 2 - x / t
    return ProjectivePoint(x, y, F.one())


def farashahi_encode(curve: HessianCurve, t0) -> ProjectivePoint:
    """(-t c : a t - c : 1) with c = cbrt((a^3 t^3 + 1) / (t^3 + 1))."""
    F = curve.field
    t = F(t0)
    a = curve.a
    t3 = t ** 3
    if not (t3 + 1):
        return curve.designated_point()
    c = ((a ** 3 * t3 + 1) / (t3 + 1)).cube_root()
    return ProjectivePoint(-t * c, a * t - c, F.one())


def _pencil_constants(a: FieldElement):
    A = a * a + a + 1
    if not A:
        raise SingularParameterSet("a^2 + a + 1 = 0")
    return A, (a + 2) ** 3


def conic_param(a: FieldElement, j0):
    """(S, T, K) on the conic A S^2 = 9A T^2 + 2(2a+1)(a^2+a+7) T K + 9A K^2."""
    A, B = _pencil_constants(a)
    j = a.field(j0)
    S = 3 * j * j - 2 * B * j + 3 * B * A
    T = j * (j - 3 * A)
    K = A * (B - 3 * j)
    return S, T, K


def pencil_parameter(a: FieldElement, j0) -> FieldElement:
    """t = T(j)/K(j); undefined when 3j = (a+2)^3."""
    _, T, K = conic_param(a, j0)
    return T / K


def pencil_delta(a: FieldElement, j0) -> FieldElement:
    A, B = _pencil_constants(a)
    j = a.field(j0)
    return 9 * j * (3 * j * j - 2 * B * j + 3 * A * B) * (3 * A - j) / ((B - 3 * j) ** 2 * A ** 3)


def pencil_encode(curve: HessianCurve, j0) -> ProjectivePoint:
    """Pseudo-parameterization from the pencil of lines through two flex tangents."""
    F = curve.field
    a = curve.a
    A, B = _pencil_constants(a)
    j = F(j0)
    if 3 * j == B:
        return curve.designated_point()
    t = pencil_parameter(a, j)
    cubic = MonicCubic(F.zero(), 3 * t * (a + 2) / A, -3 * t * (1 - t) / A)
    i = solve_with_delta(cubic, pencil_delta(a, j))
    return ProjectivePoint(i + 1, i - t, t - 1 - (a + 1) * i)


def message_to_parameter(data: bytes, field: PrimeModulus) -> FieldElement:
    """Big-endian integer of ``data`` reduced mod p.

    Not uniform: fine for demonstrations, not for hashing.
    """
    return field(int.from_bytes(bytes(data), "big"))


def calibrate_sign(plan: EncoderPlan, closed_form, params: Sequence) -> Optional[int]:
    """The global sign of delta for which the plan matches ``closed_form``.

    Returns +1 or -1 (preferring +1), or None when neither sign agrees at
    every non-excluded parameter.
    """
    for s in (1, -1):
        if all(encode(plan, t, s) == closed_form(plan.curve, t) for t in params if not plan.is_excluded(t)):
            return s
    return None
