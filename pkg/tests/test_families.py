import random

import pytest

from flexenc.cubic import twisted_discriminant
from flexenc.curves import BackMap, HessianCurve, ProjectivePoint, WeierstrassCurve, restrict_via_parameterization
from flexenc.errors import (
    DegenerateFamily,
    IcartRequiresNonzeroA,
    ModelMismatch,
    NotEven,
    SingularParameterSet,
    SpecError,
    UnknownFamily,
)
from flexenc.families import (
    EncoderPlan,
    builtin_family,
    calibrate_sign,
    certify_even,
    conic_param,
    encode,
    family_discriminant,
    family_from_json,
    farashahi_encode,
    icart_encode,
    message_to_parameter,
    pencil_encode,
    pencil_parameter,
)
from flexenc.field import make_field
from flexenc.poly import Polynomial, RationalFunction, ratfun_sqrt

F251 = make_field(251)


def poly(F, *c):
    return Polynomial(c, F)


def rf(num, den=None):
    return RationalFunction(num, den)


def farashahi_delta(curve):
    F, a = curve.field, curve.a.value
    return rf(poly(F, 9, 0, 0, 9 * a ** 3), poly(F, 1, 0, 0, 1))


def icart_delta(curve):
    # (-1/t^6 - 108b - 18a/t^2 + 27a^2 t^2)/12
    F, a, b = curve.field, curve.a.value, curve.b.value
    num = poly(F, -1, 0, 0, 0, -18 * a, 0, -108 * b, 0, 27 * a * a)
    return rf(num, poly(F, 0, 0, 0, 0, 0, 0, 12))


def pencil_raw_quadratic(F, a):
    A = a * a + a + 1
    return poly(F, 9 * A, 2 * (2 * a + 1) * (a * a + a + 7), 9 * A)


# -- builtins --------------------------------------------------------------------

def test_builtin_coefficients(w11, h11):
    fam = builtin_family("farashahi", h11)
    U, V, W = fam.bind(h11)
    assert (U, V, W) == (poly(h11.field, 1), poly(h11.field, 0, -1), poly(h11.field, 0, 0, 2))
    U, V, W = builtin_family("icart", w11).bind(w11)
    F = w11.field
    assert (U, V, W) == (poly(F, 0, 0, 6), poly(F, 0, 0, 0, 6), poly(F, -1, 0, 0, 0, 3))
    W = builtin_family("octic", w11).bind(w11)[2]
    a, b = 1, 3
    expect = poly(F, 1, 0, 0, 0, 6 * a, 0, 81 * 4 * b, 0, 81 * a * a) * F.inv(81)
    assert W == expect


def test_builtin_errors(w11, h11, F11):
    with pytest.raises(UnknownFamily):
        builtin_family("nope", h11)
    with pytest.raises(ModelMismatch):
        builtin_family("icart", h11)
    with pytest.raises(ModelMismatch):
        builtin_family("farashahi", w11)
    with pytest.raises(IcartRequiresNonzeroA):
        builtin_family("icart", WeierstrassCurve(F11, 0, 3))


# -- discriminants and certification --------------------------------------------

def test_farashahi_discriminant(h11):
    d = farashahi_delta(h11)
    assert family_discriminant(h11, builtin_family("farashahi", h11)) == d * d


def test_icart_discriminant(w11):
    d = icart_delta(w11)
    assert family_discriminant(w11, builtin_family("icart", w11)) == d * d


def test_pencil_raw_discriminant(h11):
    F, a = h11.field, 2
    A = a * a + a + 1
    expect = rf(poly(F, 0, 0, 81) * pencil_raw_quadratic(F, a), poly(F, A ** 3))
    assert family_discriminant(h11, builtin_family("pencil-raw", h11)) == expect


def test_certify_farashahi(h11):
    plan = certify_even(h11, builtin_family("farashahi", h11))
    d = farashahi_delta(h11)
    assert plan.delta in (d, -d)
    assert plan.check()
    assert plan.excluded == (10,)


def test_certify_icart(w11):
    plan = certify_even(w11, builtin_family("icart", w11))
    d = icart_delta(w11)
    assert plan.delta in (d, -d)
    assert plan.excluded == (0,)


def test_certify_octic(w11):
    plan = certify_even(w11, builtin_family("octic", w11))
    assert plan.delta * plan.delta == plan.Delta


def test_pencil_raw_not_even(h11):
    with pytest.raises(NotEven) as info:
        certify_even(h11, builtin_family("pencil-raw", h11))
    assert info.value.witness == pencil_raw_quadratic(h11.field, 2).monic()


def test_certify_needs_encoding_field():
    curve = HessianCurve(make_field(13), 2)
    with pytest.raises(SpecError):
        certify_even(curve, builtin_family("farashahi", curve))


def test_zero_family_is_degenerate(h11):
    fam = family_from_json({"model": "hessian", "U": ["0"], "V": ["0"], "W": ["0"]})
    with pytest.raises(DegenerateFamily):
        certify_even(h11, fam)


def test_family_content_is_removed(h11):
    # the conic family multiplied through by (t + 3)
    fam = family_from_json({"model": "hessian", "U": ["3", "1"], "V": ["0", "-3", "-1"],
                            "W": ["0", "0", "3*a", "a"], "span": "X"})
    plan = certify_even(h11, fam)
    ref = certify_even(h11, builtin_family("farashahi", h11))
    assert (plan.s1, plan.s2, plan.s3, plan.delta) == (ref.s1, ref.s2, ref.s3, ref.delta)
    for t in range(11):
        assert encode(plan, t) == encode(ref, t)


@pytest.mark.parametrize("span", ["X", "Y", "Z", "auto"])
def test_user_family_spans_agree_on_curve(w11, span):
    fam = family_from_json({"model": "weierstrass", "U": ["0", "0", "6"], "V": ["0", "0", "0", "6"],
                            "W": ["-1", "0", "0", "0", "3*a"], "span": span})
    try:
        plan = certify_even(w11, fam)
    except DegenerateFamily:
        pytest.skip(f"span {span} degenerate for this family")
    for t in range(11):
        P = encode(plan, t)
        assert w11.on_curve(P)


@pytest.mark.parametrize("bad", [
    [1], {"model": "hessian"}, {"model": "edwards", "U": [], "V": [], "W": []},
    {"model": "hessian", "U": ["1"], "V": ["1"], "W": ["1"], "span": "Q"},
    {"model": "hessian", "U": ["1"], "V": ["1"], "W": ["1"], "span": {"P0": []}},
])
def test_family_json_errors(bad):
    with pytest.raises(SpecError):
        family_from_json(bad)


# -- encoders --------------------------------------------------------------------

def test_generic_encode_examples(w11, h11, F11):
    assert encode(certify_even(h11, builtin_family("farashahi", h11)), F11(1)) == ProjectivePoint(1, 3, 1, field=F11)
    assert encode(certify_even(w11, builtin_family("icart", w11)), F11(1)) == ProjectivePoint(9, 9, 1, field=F11)
    assert encode(certify_even(w11, builtin_family("octic", w11)), F11(1)) == ProjectivePoint(3, 0, 1, field=F11)


def test_octic_point_by_root_scan(F11, w11):
    # line 7X + 7Y + Z = 0 at t = 1; x^3 - x^2 + 7x + 5 has the single root 3
    assert [x for x in range(11) if (x ** 3 - x * x + 7 * x + 5) % 11 == 0] == [3]
    assert 7 * 3 + 7 * 0 + 1 == 22


def test_icart_closed_form(F11, w11):
    assert icart_encode(w11, 1) == ProjectivePoint(9, 9, 1, field=F11)
    assert icart_encode(w11, 2) == ProjectivePoint(1, 7, 1, field=F11)
    assert icart_encode(w11, 0) == ProjectivePoint(0, 1, 0, field=F11)
    with pytest.raises(IcartRequiresNonzeroA):
        icart_encode(WeierstrassCurve(F11, 0, 3), 1)


def test_farashahi_closed_form(F11, h11):
    assert farashahi_encode(h11, 1) == ProjectivePoint(1, 3, 1, field=F11)
    assert farashahi_encode(h11, 2) == ProjectivePoint(6, 7, 1, field=F11)
    assert farashahi_encode(h11, 10) == ProjectivePoint(0, -1, 1, field=F11)


def test_pencil_closed_form(F11, h11):
    assert pencil_encode(h11, 1) == ProjectivePoint(1, 1, 3, field=F11)
    assert pencil_encode(h11, 0) == ProjectivePoint(1, 0, -1, field=F11)
    # 3j = (a+2)^3 = 64 = 9 mod 11 -> j = 3
    assert pencil_encode(h11, 3) == ProjectivePoint(0, -1, 1, field=F11)
    assert pencil_parameter(h11.a, 1) == 10


def test_pencil_singular_parameter_set():
    # 3^2 + 3 + 1 = 13
    with pytest.raises(SingularParameterSet):
        conic_param(make_field(13)(3), 1)


def test_pencil_on_curve_exhaustive():
    curve = HessianCurve(F251, 2)
    for j in range(251):
        assert curve.on_curve(pencil_encode(curve, j))


def test_conic_param(F11, rng):
    a = F11(2)
    S, T, K = conic_param(a, 0)
    assert ProjectivePoint(S, T, K) == ProjectivePoint(3, 0, 1, field=F11)
    A = a * a + a + 1
    for j in range(11):
        S, T, K = conic_param(a, j)
        assert A * S * S == 9 * A * T * T + 2 * (2 * a + 1) * (a * a + a + 7) * T * K + 9 * A * K * K
    p = 1000003
    F = make_field(p)
    for _ in range(20):
        a = F(rng.randrange(p))
        j = rng.randrange(1, p)
        S, T, K = conic_param(a, j)
        A = a * a + a + 1
        assert A * S * S == 9 * A * T * T + 2 * (2 * a + 1) * (a * a + a + 7) * T * K + 9 * A * K * K


def test_conic_param_at_infinity():
    # S, T, K have degree <= 2 in j; the j^2 coefficients give the point at j = oo
    F = make_field(1000003)
    a = F(2)
    at = [conic_param(a, j) for j in (0, 1, -1)]
    lead = [(at[1][k] + at[2][k] - 2 * at[0][k]) / 2 for k in range(3)]
    assert ProjectivePoint(*lead) == ProjectivePoint(3, 1, 0, field=F)


def test_message_to_parameter(F11):
    assert message_to_parameter(b"", F11) == 0
    assert message_to_parameter(b"\x0b", F11) == 0
    assert message_to_parameter(b"\x01\x00", F11) == 3


# -- plans -----------------------------------------------------------------------

@pytest.mark.parametrize("name,model,params", [
    ("farashahi", "hessian", (2,)), ("icart", "weierstrass", (1, 3)), ("octic", "weierstrass", (5, 7)),
    ("pencil", "hessian", (5,)),
])
def test_plan_soundness(name, model, params):
    curve = HessianCurve(F251, *params) if model == "hessian" else WeierstrassCurve(F251, *params)
    plan = certify_even(curve, builtin_family(name, curve))
    rng = random.Random(name)
    checked = 0
    while checked < 100:
        t = rng.randrange(251)
        if plan.is_excluded(t):
            continue
        cubic, delta = plan.specialize(t)
        P0, P1 = plan.backmap_points(t)
        bm = BackMap(ProjectivePoint(*P0, field=F251), ProjectivePoint(*P1, field=F251))
        assert restrict_via_parameterization(curve, bm) == cubic
        assert plan.Delta.eval_int(t) == twisted_discriminant(cubic)
        assert delta * delta == twisted_discriminant(cubic)
        checked += 1


def test_pencil_raw_becomes_even_after_reparameterization(h11):
    a = 2
    F = h11.field
    Delta = family_discriminant(h11, builtin_family("pencil-raw", h11))
    A, B = a * a + a + 1, (a + 2) ** 3
    T = poly(F, 0, -3 * A, 1)
    K = poly(F, A * B, -3 * A)
    composed = Delta.substitute(rf(T, K))
    root = ratfun_sqrt(composed)
    assert root * root == composed
    # the builtin spans with P0 scaled by K, so its roots are K times the raw ones
    plan = certify_even(h11, builtin_family("pencil", h11))
    assert plan.Delta == composed * rf(K ** 6)


@pytest.mark.parametrize("p,a", [(11, 2), (251, 2), (251, 7)])
def test_pencil_family_matches_closed_form(p, a):
    curve = HessianCurve(make_field(p), a)
    plan = certify_even(curve, builtin_family("pencil", curve))
    assert calibrate_sign(plan, pencil_encode, range(p)) is not None


def test_plan_json_roundtrip(w11):
    plan = certify_even(w11, builtin_family("octic", w11))
    again = EncoderPlan.from_json(plan.to_json())
    assert again.to_json() == plan.to_json()
    for t in range(11):
        assert encode(again, t) == encode(plan, t)


def test_plan_json_rejects_bad_delta(w11):
    data = certify_even(w11, builtin_family("icart", w11)).to_json()
    data["delta"] = {"num": ["1"], "den": ["1"]}
    with pytest.raises(SpecError):
        EncoderPlan.from_json(data)
    with pytest.raises(SpecError):
        EncoderPlan.from_json({"even": False})


def test_sign_calibration(w11, h11):
    assert calibrate_sign(certify_even(w11, builtin_family("icart", w11)), icart_encode, range(11)) == 1
    assert calibrate_sign(certify_even(h11, builtin_family("farashahi", h11)), farashahi_encode, range(11)) == 1
