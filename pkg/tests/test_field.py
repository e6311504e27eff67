import math

import pytest

import jacarith as ja
from jacarith.field import sqrt_mod


def test_make_prime_field_sigma_defaults():
    assert ja.make_prime_field(1009).sigma_size == 1009
    assert ja.make_prime_field(2**61 - 1).sigma_size == 1 << 16


def test_composite_modulus_rejected():
    with pytest.raises(ja.CompositeModulus):
        ja.make_prime_field(4)
    with pytest.raises(ja.CompositeModulus):
        ja.make_prime_field(1)


def test_primality_battery():
    primes = [2, 3, 5, 1009, 65537, 2**31 - 1, 2**61 - 1]
    composites = [0, 1, 4, 1001, 2**31, 3215031751, 2**61 + 1]
    assert all(ja.is_probable_prime(p) for p in primes)
    assert not any(ja.is_probable_prime(c) for c in composites)


def test_basic_arithmetic(f1009):
    assert f1009.add(1008, 2) == 1
    assert f1009.mul(0, 517) == 0
    assert f1009.inv(1) == 1
    assert f1009.inv(2) == 505
    assert f1009.mul(2, 505) == 1
    with pytest.raises(ja.DivisionByZero):
        f1009.inv(0)


@pytest.mark.parametrize("p", [1009, 2**61 - 1])
def test_field_axioms_random(p):
    field = ja.make_prime_field(p)
    rng = ja.RandomStream(f"axioms-{p}")
    for _ in range(10_000 if p == 1009 else 500):
        a, b, c = (rng.randrange(p) for _ in range(3))
        assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
        assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
        assert field.add(a, field.neg(a)) == 0
        if a:
            assert field.mul(a, field.inv(a)) == 1


def test_sample_sigma_replayable(f1009):
    draws1 = [ja.sample_sigma(f1009, ja.RandomStream("s0").split(i)) for i in range(50)]
    draws2 = [ja.sample_sigma(f1009, ja.RandomStream("s0").split(i)) for i in range(50)]
    assert draws1 == draws2


def test_sample_sigma_small_sigma():
    field = ja.make_prime_field(1009, sigma_size=2)
    rng = ja.RandomStream("tiny")
    assert {ja.sample_sigma(field, rng) for _ in range(200)} == {0, 1}


def test_sample_sigma_uniform(f1009):
    # each residue count within 5 sigma of the binomial expectation
    n = 100_000
    rng = ja.RandomStream("freq")
    counts = [0] * f1009.p
    for _ in range(n):
        counts[ja.sample_sigma(f1009, rng)] += 1
    q = 1 / f1009.p
    bound = 5 * math.sqrt(n * q * (1 - q))
    assert all(abs(c - n * q) <= bound for c in counts)


def test_sqrt_mod():
    p = 1009  # p = 1 mod 8, exercises the general Tonelli-Shanks branch
    rng = ja.RandomStream("sqrt")
    hits = 0
    for _ in range(200):
        a = rng.randrange(p)
        r = sqrt_mod(a, p)
        if r is not None:
            hits += 1
            assert r * r % p == a % p
    assert hits > 80  # about half of the residues are squares
    assert sqrt_mod(0, p) == 0


def test_stream_split_independent():
    base = ja.RandomStream(42)
    a = base.split("left")
    b = base.split("right")
    assert [a.randrange(10**6) for _ in range(8)] != [b.randrange(10**6) for _ in range(8)]
    one = ja.RandomStream(42).split("left")
    two = ja.RandomStream(42).split("left")
    assert [one.randrange(10**6) for _ in range(8)] == [two.randrange(10**6) for _ in range(8)]
