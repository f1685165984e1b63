import random

import pytest

from flexenc.curves import WeierstrassCurve, hessian_j_invariant
from flexenc.errors import CapabilityError, SingularCurve
from flexenc.field import make_field
from flexenc.geometry import (
    CHECKS,
    all_coconic_conics,
    build_cusp_table,
    degree24_product,
    displayed_conics,
    hessian_quartic,
    hessian_quartic_parameterization,
    hessian_quartic_report,
    nine_point_cubic,
    random_geometry_fields,
    run_geometry_suite,
    singular_dual_witness,
    suite_passed,
    verify_coconic,
    verify_cusps_singular,
    verify_gauss_images,
    verify_hessian_quartic,
    verify_nine_point_cubic,
    verify_no_three_colinear,
    verify_weierstrass_quartic,
)
from flexenc.poly import Polynomial, compose, form_eval

F13 = make_field(13)
F31 = make_field(31)


def test_table_rows():
    t = build_cusp_table(F13, 2)
    assert t.zeta == 3
    assert t.flexes[0] == (0, 12, 1) and t.cusps[0] == (2, 1, 1)
    assert t.flexes[1] == (12, 1, 0) and t.cusps[1] == (1, 1, 2)
    assert t.flexes[3] == (12, 3, 0) and t.cusps[3] == (9, 3, 2)


def test_table_preconditions():
    with pytest.raises(CapabilityError):
        build_cusp_table(make_field(11), 2)
    with pytest.raises(SingularCurve):
        build_cusp_table(F13, 3)


def test_gf13_a2_all_checks():
    t = build_cusp_table(F13, 2)
    assert verify_gauss_images(t)
    assert verify_cusps_singular(t)
    assert verify_no_three_colinear(t)
    assert verify_coconic(t)
    assert verify_nine_point_cubic(t)
    assert verify_hessian_quartic(t)


def test_gf31_twenty_random_a():
    rng = random.Random(31)
    done = 0
    while done < 20:
        a = rng.randrange(31)
        if pow(a, 3, 31) == 1 or not hessian_j_invariant(F31(a)):
            continue
        t = build_cusp_table(F31, a)
        assert verify_cusps_singular(t) and verify_no_three_colinear(t)
        assert verify_coconic(t) and verify_nine_point_cubic(t) and verify_hessian_quartic(t)
        done += 1


@pytest.mark.parametrize("a", [0, 11])
def test_colinear_triples_when_j_vanishes(a):
    assert not verify_no_three_colinear(build_cusp_table(F13, a))


def test_perturbed_cusp_is_not_singular():
    a = 2
    assert singular_dual_witness(a, (a + 1, 1, 1), 13) is not None
    assert singular_dual_witness(a, (a, 1, 1), 13) is None


def test_displayed_conic_incidences():
    t = build_cusp_table(F13, 2)
    c1, c2 = displayed_conics(t)[0][0], displayed_conics(t)[1][0]
    assert form_eval(c1, *t.cusps[0], 13) == 0
    assert form_eval(c2, *t.cusps[3], 13) == 0
    p = 10009
    t = build_cusp_table(make_field(p), 4321)
    conics = all_coconic_conics(t)
    assert len(conics) == 12
    for conic, stated in displayed_conics(t):
        assert tuple(k for k, B in enumerate(t.cusps) if form_eval(conic, *B, p) == 0) == stated


def test_nine_point_cubic_negative_control():
    assert form_eval(nine_point_cubic(2, 13), 1, 1, 1, 13) == (3 * 2 - 10) % 13
    assert form_eval(nine_point_cubic(2, 13), 1, 1, 1, 13) != 0


def test_hessian_quartic_at_gf31():
    a = 2
    U, V, W = hessian_quartic_parameterization(a, F31)
    assert U.degree == V.degree == W.degree == 4
    assert compose(hessian_quartic(a, 31), (U, V, W)).is_zero()
    report = hessian_quartic_report(build_cusp_table(F31, a))
    assert report.ok and report.constant
    assert degree24_product(a, F31).degree == 24
    assert form_eval(hessian_quartic(a, 31), a, 1, 1, 31) == 0


def test_degree24_constant():
    # measured: the ratio is (a - 1)^4 (a^2 + a + 1)^4
    for F in random_geometry_fields(2, 64, 3):
        p = F.p
        for a in (2, 5, 123456789):
            report = hessian_quartic_report(build_cusp_table(F, a))
            assert report.constant == pow(a - 1, 4, p) * pow(a * a + a + 1, 4, p) % p


def test_weierstrass_quartic_discrepancy():
    F = make_field(11)
    r = verify_weierstrass_quartic(WeierstrassCurve(F, 2, 1))
    assert r.corrected_vanishes
    assert not r.displayed_vanishes
    assert r.displayed_residual == Polynomial([0] * 12 + [3888 * (2 - 1)], F)
    r = verify_weierstrass_quartic(WeierstrassCurve(F, 1, 1))
    assert r.corrected_vanishes and r.displayed_vanishes
    rng = random.Random(10007)
    G = make_field(10007)
    for _ in range(5):
        a = rng.randrange(2, 10007)
        if (4 * a ** 3 + 27) % 10007 == 0:
            continue
        r = verify_weierstrass_quartic(WeierstrassCurve(G, a, 1))
        assert r.corrected_vanishes
        assert r.displayed_residual == Polynomial([0] * 12 + [3888 * (a - 1)], G)


def test_suite_report_shape():
    report = run_geometry_suite(F13, 5, seed=1)
    assert suite_passed(report)
    for name in CHECKS:
        assert report[name] == {"trials": 5, "failures": 0}
    assert report["negative_controls"]["failures"] == 0


def test_suite_reports_witness_on_failure(monkeypatch):
    import flexenc.geometry as geo

    monkeypatch.setattr(geo, "find_nine_point_failure", lambda table: {"row": 4, "value": 1})
    report = geo.run_geometry_suite(F13, 3, seed=2)
    entry = report["nine_point_cubic"]
    assert entry["failures"] == 3 and entry["witness"]["row"] == "4" and "a" in entry["witness"]
    assert not suite_passed(report)


def test_suite_rejects_encoding_field():
    with pytest.raises(CapabilityError):
        run_geometry_suite(make_field(11), 1)
