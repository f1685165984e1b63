import random

import pytest

from flexenc.errors import BadCharacteristic, CapabilityError, DivisionByZero, ModulusMismatch, NotPrime
from flexenc.field import (
    cube_root,
    field_ops,
    invert,
    is_square,
    make_field,
    parse_int,
    random_prime,
    sqrt_minus3,
    zeta3,
)


def test_make_field_capabilities():
    F = make_field(11)
    assert F.capability == "encoding"
    assert F.cube_exp == 7
    assert (3 * F.cube_exp) % (F.p - 1) == 1
    assert make_field(13).capability == "geometry"
    assert make_field("0x0b") == F


@pytest.mark.parametrize("p,exc", [(9, NotPrime), (3, BadCharacteristic), (2, BadCharacteristic),
                                   (1, NotPrime), (15, NotPrime)])
def test_make_field_rejects(p, exc):
    with pytest.raises(exc):
        make_field(p)


def test_field_ops_examples(F11):
    assert field_ops(F11(7), F11(8), "add") == 4
    assert field_ops(F11(7), F11(8), "mul") == 1
    assert field_ops(F11(0), F11(1), "sub") == 10


def test_modulus_mismatch(F11):
    with pytest.raises(ModulusMismatch):
        F11(1) + make_field(13)(1)


def test_invert(F11):
    assert invert(F11(1)) == 1
    assert invert(F11(7)) == 8
    with pytest.raises(DivisionByZero):
        invert(F11(0))
    for p in (11, 23):
        F = make_field(p)
        for x in range(1, p):
            assert F(x) * invert(F(x)) == 1


def test_cube_root_examples(F11):
    assert cube_root(F11(8)) == 2
    assert cube_root(F11(0)) == 0
    assert cube_root(F11(10)) == 10
    with pytest.raises(CapabilityError):
        cube_root(make_field(13)(8))


def test_cube_root_is_bijection_gf11(F11):
    images = set()
    for x in range(11):
        r = cube_root(F11(x))
        assert r ** 3 == x
        assert cube_root(F11(x) ** 3) == x
        images.add(r.value)
    assert len(images) == 11


def test_cube_root_multiplicative():
    rng = random.Random(3)
    F = make_field(random_prime(64, 2, rng))
    for _ in range(1000):
        x, y = F.random(rng), F.random(rng)
        assert cube_root(x * y) == cube_root(x) * cube_root(y)


def test_zeta3():
    assert zeta3(make_field(7)) == 2
    assert zeta3(make_field(13)) == 3
    with pytest.raises(CapabilityError):
        zeta3(make_field(11))
    for p in (7, 13, 31, 10009):
        F = make_field(p)
        z = zeta3(F)
        assert z != 1 and z ** 3 == 1
        assert sqrt_minus3(F) ** 2 == -3


def test_is_square(F11):
    assert is_square(F11(3))
    assert not is_square(F11(6))
    assert is_square(F11(0))
    assert {x * x % 11 for x in range(1, 11)} == {x for x in range(1, 11) if is_square(F11(x))}


@pytest.mark.parametrize("p", [11, 13, 17, 41, 10009])
def test_sqrt_roundtrip(p):
    F = make_field(p)
    for x in range(min(p, 200)):
        if F.is_square(x):
            assert F.sqrt(x) ** 2 % p == x


def test_parse_int():
    assert parse_int("0x10") == 16
    assert parse_int(" 42 ") == 42
    assert parse_int(7) == 7
    with pytest.raises(ValueError):
        parse_int("seven")


def test_element_immutable_and_hashable(F11):
    x = F11(3)
    with pytest.raises(AttributeError):
        x.value = 4
    assert {x, F11(14)} == {x}


def test_random_prime_residue():
    rng = random.Random(1)
    for residue in (1, 2):
        p = random_prime(40, residue, rng)
        assert p % 3 == residue and p.bit_length() == 40
