from __future__ import annotations

import random
from fractions import Fraction

import pytest

from pureil.errors import NotPredicateSymmetricError, PureILError
from pureil.invariance import (
    AltNotation,
    DiscreteMeasure,
    bernstein,
    dirac,
    from_alt,
    to_alt,
    transfer,
)
from pureil.language import all_state_descriptions
from pureil.probability import ProductFunction, SimplexPoint, restrict, uniform_point

F = Fraction


def random_alt(rng: random.Random, q: int) -> AltNotation:
    from math import comb

    raw = [F(rng.randint(0, 9)) for _ in range(q + 1)]
    if all(v == 0 for v in raw):
        raw[0] = F(1)
    total = sum(comb(q, k) * v for k, v in enumerate(raw))
    return AltNotation(q, tuple(v / total for v in raw))


def test_alt_validation():
    with pytest.raises(PureILError):
        AltNotation(2, (F(1), F(1), F(1)))
    with pytest.raises(PureILError):
        AltNotation(1, (F(1),))
    AltNotation(2, (F(1, 4), F(1, 4), F(1, 4)))


def test_to_alt_uniform():
    assert to_alt(uniform_point(2)) == AltNotation(2, (F(1, 4), F(1, 4), F(1, 4)))


def test_to_alt_point_mass():
    c = SimplexPoint(2, (F(1), F(0), F(0), F(0)))
    assert to_alt(c) == AltNotation(2, (F(1), F(0), F(0)))


def test_to_alt_rejects_asymmetric_point():
    c = SimplexPoint(2, (F(0), F(1), F(0), F(0)))
    with pytest.raises(NotPredicateSymmetricError) as err:
        to_alt(c)
    assert err.value.atom_pair == (2, 3)


def test_alt_roundtrip():
    rng = random.Random(13)
    for q in (1, 2, 3, 4):
        for _ in range(10):
            C = random_alt(rng, q)
            assert to_alt(from_alt(C)) == C
    # and the other direction on symmetric points
    c = from_alt(AltNotation(2, (F(1, 2), F(1, 8), F(1, 4))))
    assert from_alt(to_alt(c)) == c


def test_transfer_base_case():
    D = AltNotation(2, (F(1, 4), F(1, 4), F(1, 4)))
    assert transfer(D, 1) == AltNotation(1, (F(1, 2), F(1, 2)))


def test_transfer_binomial_sum():
    D = AltNotation(3, (F(0), F(1, 3), F(0), F(0)))
    assert transfer(D, 1) == AltNotation(1, (F(2, 3), F(1, 3)))


def test_transfer_identity_and_errors():
    D = AltNotation(2, (F(1, 4), F(1, 4), F(1, 4)))
    assert transfer(D, 2) is D
    with pytest.raises(PureILError):
        transfer(D, 3)


def test_transfer_base_case_random():
    # against the stated two-term recurrence at one level down
    rng = random.Random(31)
    for _ in range(50):
        q = rng.randint(1, 4)
        D = random_alt(rng, q + 1)
        C = transfer(D, q)
        assert C.C == tuple(D.C[j] + D.C[j + 1] for j in range(q + 1))


def test_transfer_transitivity():
    rng = random.Random(37)
    for _ in range(25):
        D = random_alt(rng, 5)
        assert transfer(transfer(D, 3), 1) == transfer(D, 1)


def test_bernstein_point_masses():
    assert bernstein(dirac(0), 3) == AltNotation(3, (F(1), F(0), F(0), F(0)))
    assert bernstein(dirac(F(1, 2)), 2) == AltNotation(2, (F(1, 4), F(1, 4), F(1, 4)))
    two_point = DiscreteMeasure(((F(0), F(1, 2)), (F(1), F(1, 2))))
    assert bernstein(two_point, 2) == AltNotation(2, (F(1, 2), F(0), F(1, 2)))


def test_bernstein_transfer_compatible():
    # moving the measure between levels commutes with the binomial transfer
    measures = [
        dirac(F(1, 2)),
        DiscreteMeasure(((F(0), F(1, 2)), (F(1), F(1, 2)))),
        DiscreteMeasure(((F(1, 4), F(1, 3)), (F(4, 5), F(2, 3)))),
    ]
    for rho in measures:
        for r in range(1, 6):
            for q in range(1, r + 1):
                assert transfer(bernstein(rho, r), q) == bernstein(rho, q)


def test_bernstein_family_restriction_consistency():
    rho = DiscreteMeasure(((F(1, 4), F(1, 3)), (F(4, 5), F(2, 3))))
    for r in (2, 3):
        for q in range(1, r):
            high = ProductFunction(from_alt(bernstein(rho, r)))
            low = ProductFunction(from_alt(bernstein(rho, q)))
            restricted = restrict(high, q)
            for theta in all_state_descriptions(q, 2):
                assert restricted.eval_sd(theta) == low.eval_sd(theta)


def test_measure_validation():
    with pytest.raises(PureILError):
        DiscreteMeasure(((F(2), F(1)),))
    with pytest.raises(PureILError):
        DiscreteMeasure(((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2))))
    with pytest.raises(PureILError):
        DiscreteMeasure(((F(1, 2), F(1, 3)),))
