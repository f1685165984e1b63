"""Checks on the configuration of the nine flex tangents of a Hessian cubic.

The nine cusps of the dual sextic G are the tangent lines at the flexes.
Identities in the Hessian parameter a are certified by evaluating them
exactly at random a over large primes p = 1 (mod 3), where the cube roots
of unity needed by six of the flexes are rational.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from .curves import (
    HessianCurve,
    ProjectivePoint,
    WeierstrassCurve,
    gauss_map_hessian,
    hessian_dual_form,
    hessian_j_invariant,
)
from .errors import CapabilityError, SingularCurve
from .field import PrimeModulus, make_field, random_prime, zeta3
from .poly import Form, Polynomial, compose, form_eval, form_partial

Coords = Tuple[int, int, int]


@dataclass(frozen=True)
class CuspTable:
    """Flexes A0..A8 and their Gauss images B0..B8."""

    field: PrimeModulus
    a: int
    zeta: int
    flexes: Tuple[Coords, ...]
    cusps: Tuple[Coords, ...]

    @property
    def curve(self) -> HessianCurve:
        return HessianCurve(self.field, self.a)


def build_cusp_table(field: PrimeModulus, a) -> CuspTable:
    if field.capability != "geometry":
        raise CapabilityError(f"the flex table needs p = 1 mod 3, got {field!r}")
    p = field.p
    a = int(a) % p
    if pow(a, 3, p) == 1:
        raise SingularCurve("a^3 = 1")
    z = zeta3(field).value
    z2 = z * z % p
    m1 = p - 1
    flexes = ((0, m1, 1), (m1, 1, 0), (1, 0, m1),
              (m1, z, 0), (z, 0, m1), (0, m1, z),
              (z, m1, 0), (m1, 0, z), (0, z, m1))
    cusps = ((a, 1, 1), (1, 1, a), (1, a, 1),
             (z2, z, a), (z, a, z2), (a, z2, z),
             (z, z2, a), (z2, a, z), (a, z, z2))
    return CuspTable(field, a, z, flexes, cusps)


def _proj_equal(P: Coords, Q: Coords, p: int) -> bool:
    return all((P[i] * Q[j] - P[j] * Q[i]) % p == 0 for i in range(3) for j in range(i + 1, 3))


def _det3(P: Coords, Q: Coords, R: Coords, p: int) -> int:
    return (P[0] * (Q[1] * R[2] - Q[2] * R[1])
            - P[1] * (Q[0] * R[2] - Q[2] * R[0])
            + P[2] * (Q[0] * R[1] - Q[1] * R[0])) % p


# -- witness finders: return None when the check passes -------------------------

def find_gauss_mismatch(table: CuspTable) -> Optional[dict]:
    curve = table.curve
    p = table.field.p
    for k, (A, B) in enumerate(zip(table.flexes, table.cusps)):
        if curve.F(*A):
            return {"row": k, "flex": list(A), "reason": "flex not on curve"}
        image = gauss_map_hessian(curve, ProjectivePoint(*A, field=table.field)).coords()
        if not _proj_equal(image, B, p):
            return {"row": k, "image": list(image), "cusp": list(B)}
    return None


def singular_dual_witness(a: int, Q: Coords, p: int) -> Optional[dict]:
    G = hessian_dual_form(a, p)
    values = [form_eval(G, *Q, p)] + [form_eval(form_partial(G, v, p), *Q, p) for v in range(3)]
    if any(values):
        return {"point": list(Q), "G_and_gradient": values}
    return None


def find_nonsingular_cusp(table: CuspTable) -> Optional[dict]:
    for k, B in enumerate(table.cusps):
        w = singular_dual_witness(table.a, B, table.field.p)
        if w is not None:
            return {"row": k, **w}
    return None


def find_colinear_triple(table: CuspTable) -> Optional[dict]:
    p = table.field.p
    for i, j, k in itertools.combinations(range(9), 3):
        if _det3(table.cusps[i], table.cusps[j], table.cusps[k], p) == 0:
            return {"triple": [i, j, k]}
    return None


def _conic(terms: Dict[Tuple[int, int, int], int], p: int) -> Form:
    return {k: v % p for k, v in terms.items() if v % p}


def displayed_conics(table: CuspTable) -> List[Tuple[Form, Tuple[int, ...]]]:
    """The four displayed coconic conics with their stated cusp sets."""
    p, a, z = table.field.p, table.a, table.zeta
    z2 = z * z % p
    c1 = _conic({(1, 0, 1): 1, (0, 2, 0): -a}, p)
    c2 = _conic({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1,
                 (1, 1, 0): a + 1, (1, 0, 1): a + 1, (0, 1, 1): a + 1}, p)
    c3 = _conic({(2, 0, 0): 1, (0, 2, 0): z, (0, 0, 2): z2,
                 (1, 1, 0): (a + 1) * z2, (1, 0, 1): (a + 1) * z, (0, 1, 1): a + 1}, p)
    c4 = _conic({(2, 0, 0): z, (0, 2, 0): 1, (0, 0, 2): z,
                 (1, 1, 0): a + z2, (1, 0, 1): (a + z2) * z2, (0, 1, 1): a + z2}, p)
    return [(c1, (0, 1, 3, 5, 6, 8)), (c2, (3, 4, 5, 6, 7, 8)),
            (c3, (0, 1, 2, 3, 4, 5)), (c4, (0, 1, 4, 5, 6, 7))]


def _normalize_form(form: Form, p: int) -> Tuple:
    keys = sorted(form)
    inv = pow(form[keys[0]], -1, p)
    return tuple((k, form[k] * inv % p) for k in keys)


def _permute_form(form: Form, perm) -> Form:
    return {tuple(k[perm[i]] for i in range(3)): v for k, v in form.items()}


def _scale_form(form: Form, scale: Coords, p: int) -> Form:
    out = {}
    for k, v in form.items():
        for s, e in zip(scale, k):
            v = v * pow(s, e, p)
        out[k] = v % p
    return out


def all_coconic_conics(table: CuspTable) -> List[Form]:
    """Orbit of the displayed conics under the symmetries of the curve.

    These are the coordinate permutations, the diagonal scalings
    (1, zeta^i, zeta^2i), and swapping zeta with zeta^2 in the coefficients.
    """
    p, z = table.field.p, table.zeta
    scalings = [(1, pow(z, i, p), pow(z, 2 * i, p)) for i in range(3)]
    conjugate = replace(table, zeta=z * z % p)
    seen = {}
    for conic, _ in displayed_conics(table) + displayed_conics(conjugate):
        for perm in itertools.permutations(range(3)):
            for sc in scalings:
                image = _scale_form(_permute_form(conic, perm), sc, p)
                seen.setdefault(_normalize_form(image, p), image)
    return list(seen.values())


def find_coconic_failure(table: CuspTable) -> Optional[dict]:
    p = table.field.p
    for n, (conic, stated) in enumerate(displayed_conics(table)):
        on = tuple(k for k, B in enumerate(table.cusps) if form_eval(conic, *B, p) == 0)
        if on != stated:
            return {"displayed_conic": n, "cusps_on_conic": list(on), "stated": list(stated)}
    conics = all_coconic_conics(table)
    if len(conics) != 12:
        return {"distinct_conics": len(conics)}
    for n, conic in enumerate(conics):
        on = [k for k, B in enumerate(table.cusps) if form_eval(conic, *B, p) == 0]
        if len(on) != 6:
            return {"conic": n, "cusps_on_conic": on}
        off = [table.flexes[k] for k in range(9) if k not in on]
        if _det3(*off, p):
            return {"conic": n, "remaining_flexes_not_colinear": [list(f) for f in off]}
    return None


def nine_point_cubic(a: int, p: int) -> Form:
    """a(U^3 + V^3 + W^3) - (a^3 + 2) U V W."""
    return _conic({(3, 0, 0): a, (0, 3, 0): a, (0, 0, 3): a, (1, 1, 1): -(a ** 3 + 2)}, p)


def find_nine_point_failure(table: CuspTable) -> Optional[dict]:
    p = table.field.p
    cubic = nine_point_cubic(table.a, p)
    for k, B in enumerate(table.cusps):
        v = form_eval(cubic, *B, p)
        if v:
            return {"row": k, "value": v}
    return None


# -- the rational quartic through the nine cusps ----------------------------------

def hessian_quartic(a: int, p: int) -> Form:
    terms = {
        (4, 0, 0): 1, (0, 4, 0): a, (0, 0, 4): a,
        (3, 1, 0): -2 * a, (3, 0, 1): -2 * a, (0, 3, 1): -2 * a, (0, 1, 3): -2 * a,
        (1, 3, 0): -(a ** 3 + 1), (1, 0, 3): -(a ** 3 + 1),
        (2, 2, 0): 3 * a * a, (2, 0, 2): 3 * a * a,
        (0, 2, 2): a ** 4 + 2 * a,
        (1, 2, 1): 1 - a ** 3, (1, 1, 2): 1 - a ** 3,
    }
    return _conic(terms, p)


def hessian_quartic_parameterization(a: int, field: PrimeModulus):
    U = Polynomial([a, -2 * a * a, a ** 3 + 2, -2 * a, a * a], field)
    V = Polynomial([1, -2 * a, 3 * a * a, 1 - 3 * a ** 3, a ** 4], field)
    W = Polynomial([1, -2 * a, 3 * a * a, -(a ** 3 + 1), a], field)
    return U, V, W


def degree24_product(a: int, field: PrimeModulus) -> Polynomial:
    """t^6 (t+1)^2 (t^2-t+1)^2 (at-2)^2 ((a+1)t-1)^2 ((a^2-a+1)t^2+(1-2a)t+1)^2 (a^2t^2-at+1)^2."""
    P = lambda c: Polynomial(c, field)  # noqa: E731
    factors = [P([1, 1]), P([1, -1, 1]), P([-2, a]), P([-1, a + 1]),
               P([1, 1 - 2 * a, a * a - a + 1]), P([1, -a, a * a])]
    out = P([0, 0, 0, 0, 0, 0, 1])
    for f in factors:
        out = out * f * f
    return out


@dataclass(frozen=True)
class QuarticReport:
    vanishes_at_cusps: bool
    parameterization_identity: bool
    proportional: bool
    constant: Optional[int]

    @property
    def ok(self) -> bool:
        return self.vanishes_at_cusps and self.parameterization_identity and self.proportional


def hessian_quartic_report(table: CuspTable) -> QuarticReport:
    field, a = table.field, table.a
    p = field.p
    Q = hessian_quartic(a, p)
    at_cusps = all(form_eval(Q, *B, p) == 0 for B in table.cusps)
    UVW = hessian_quartic_parameterization(a, field)
    identity = compose(Q, UVW).is_zero()
    g = compose(hessian_dual_form(a, p), UVW)
    prod = degree24_product(a, field)
    proportional = bool(g) and g * prod.lc == prod * g.lc
    constant = g.lc * field.inv(prod.lc) % p if proportional else None
    return QuarticReport(at_cusps, identity, proportional, constant)


def verify_gauss_images(table: CuspTable) -> bool:
    return find_gauss_mismatch(table) is None


def verify_cusps_singular(table: CuspTable) -> bool:
    return find_nonsingular_cusp(table) is None


def verify_no_three_colinear(table: CuspTable) -> bool:
    return find_colinear_triple(table) is None


def verify_coconic(table: CuspTable) -> bool:
    return find_coconic_failure(table) is None


def verify_nine_point_cubic(table: CuspTable) -> bool:
    return find_nine_point_failure(table) is None


def verify_hessian_quartic(table: CuspTable) -> bool:
    return hessian_quartic_report(table).ok


# -- the Weierstrass quartic ----------------------------------------------------

@dataclass(frozen=True)
class WeierstrassQuarticReport:
    """Residuals of the two candidate quartics on (6t^2, 6t^3, 3at^4 - 1)."""

    displayed_residual: Polynomial    # U^4 - 3V^4 + 6UV^2W
    corrected_residual: Polynomial    # U^4 - 3aV^4 + 6UV^2W

    @property
    def displayed_vanishes(self) -> bool:
        return self.displayed_residual.is_zero()

    @property
    def corrected_vanishes(self) -> bool:
        return self.corrected_residual.is_zero()


def verify_weierstrass_quartic(curve: WeierstrassCurve) -> WeierstrassQuarticReport:
    field = curve.field
    p = field.p
    a = curve.a.value
    UVW = (Polynomial([0, 0, 6], field), Polynomial([0, 0, 0, 6], field), Polynomial([-1, 0, 0, 0, 3 * a], field))
    displayed = {(4, 0, 0): 1, (0, 4, 0): p - 3, (1, 2, 1): 6}
    corrected = _conic({(4, 0, 0): 1, (0, 4, 0): -3 * a, (1, 2, 1): 6}, p)
    return WeierstrassQuarticReport(compose(displayed, UVW), compose(corrected, UVW))


# -- the self-test driver --------------------------------------------------------

CHECKS = (
    "flexes_and_gauss_images",
    "cusps_singular",
    "no_three_colinear",
    "coconic",
    "nine_point_cubic",
    "hessian_quartic_at_cusps",
    "hessian_quartic_parameterization",
    "degree24_proportional",
)


def random_parameter(field: PrimeModulus, rng: random.Random) -> int:
    """Random a with a^3 != 1 and j(a) != 0."""
    p = field.p
    while True:
        a = rng.randrange(p)
        if pow(a, 3, p) == 1:
            continue
        if hessian_j_invariant(field(a)):
            return a


def _trial(table: CuspTable) -> Dict[str, Optional[dict]]:
    quartic = hessian_quartic_report(table)
    return {
        "flexes_and_gauss_images": find_gauss_mismatch(table),
        "cusps_singular": find_nonsingular_cusp(table),
        "no_three_colinear": find_colinear_triple(table),
        "coconic": find_coconic_failure(table),
        "nine_point_cubic": find_nine_point_failure(table),
        "hessian_quartic_at_cusps": None if quartic.vanishes_at_cusps else {"a": table.a},
        "hessian_quartic_parameterization": None if quartic.parameterization_identity else {"a": table.a},
        "degree24_proportional": None if quartic.proportional else {"a": table.a},
    }


def run_geometry_suite(field: PrimeModulus, trials: int, seed: int = 0) -> Dict[str, dict]:
    """Run every check for ``trials`` random a; report failures per check.

    Negative controls (j = 0 parameters, a perturbed cusp) are reported as
    failures when they unexpectedly pass.
    """
    if field.capability != "geometry":
        raise CapabilityError(f"the geometry suite needs p = 1 mod 3, got {field!r}")
    rng = random.Random(seed)
    report = {name: {"trials": 0, "failures": 0} for name in CHECKS}
    for _ in range(trials):
        table = build_cusp_table(field, random_parameter(field, rng))
        for name, witness in _trial(table).items():
            entry = report[name]
            entry["trials"] += 1
            if witness is not None:
                entry["failures"] += 1
                entry.setdefault("witness", {"a": str(table.a), **_stringify(witness)})

    p = field.p
    controls = {"trials": 0, "failures": 0}
    for a in (0, p - 2):
        controls["trials"] += 1
        if verify_no_three_colinear(build_cusp_table(field, a)):
            controls["failures"] += 1
            controls.setdefault("witness", {"a": str(a), "reason": "no colinear triple although j(a) = 0"})
    a = random_parameter(field, rng)
    B0 = (a + 1, 1, 1)
    controls["trials"] += 1
    if singular_dual_witness(a, B0, p) is None:
        controls["failures"] += 1
        controls.setdefault("witness", {"a": str(a), "reason": "perturbed cusp is singular"})
    report["negative_controls"] = controls

    wq = {"trials": 0, "failures": 0}
    for _ in range(max(1, min(trials, 10))):
        a = rng.randrange(1, p)
        b = _smooth_b(field, a, rng)
        r = verify_weierstrass_quartic(WeierstrassCurve(field, a, b))
        expected = Polynomial([0] * 12 + [3888 * (a - 1)], field)
        wq["trials"] += 1
        if not r.corrected_vanishes or r.displayed_residual != expected:
            wq["failures"] += 1
            wq.setdefault("witness", {"a": str(a), "displayed_residual": [str(c) for c in r.displayed_residual.coeffs]})
    report["weierstrass_quartic_discrepancy"] = wq
    return report


def _smooth_b(field: PrimeModulus, a: int, rng: random.Random) -> int:
    p = field.p
    while True:
        b = rng.randrange(p)
        if (4 * a ** 3 + 27 * b * b) % p:
            return b


def _stringify(d: dict) -> dict:
    return {k: (str(v) if isinstance(v, int) else v) for k, v in d.items()}


def suite_passed(report: Dict[str, dict]) -> bool:
    return all(entry["failures"] == 0 for entry in report.values())


def random_geometry_fields(count: int, bits: int, seed: int) -> List[PrimeModulus]:
    rng = random.Random(seed)
    return [make_field(random_prime(bits, 1, rng)) for _ in range(count)]
