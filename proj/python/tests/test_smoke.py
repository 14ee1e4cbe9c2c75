import cmath
import math
from fractions import Fraction

import pytest

import halfline as hl


def simple_walk():
    return hl.Measure([Fraction(1, 2), 0, Fraction(1, 2)], min_index=-1)


def test_measure_roundtrip():
    m = simple_walk()
    assert m.to_dict() == {-1: Fraction(1, 2), 1: Fraction(1, 2)}
    assert hl.Measure.from_dict({1: "1/2", -1: 0.5}) == m
    assert hl.Measure.from_json(m.to_json()) == m
    assert (m ** 2).to_dict() == {-2: Fraction(1, 4), 0: Fraction(1, 2), 2: Fraction(1, 4)}
    assert m * m == hl.power(m, 2)
    assert m.total_mass() == 1


def test_traces_and_identities():
    t = hl.traces(simple_walk(), 2)
    assert t[0].to_dict() == {1: Fraction(1, 2)}
    assert t[1].to_dict() == {2: Fraction(1, 4)}
    m = hl.generate_measure("random_signed", -3, 3, seed=5)
    assert all(hl.binomial_check(m, n) for n in range(1, 5))
    report = hl.verify_lemma(m, m, 3)
    assert report["premise_holds"] and report["conclusions_hold"]


def test_fluctuation_laws():
    m = simple_walk()
    assert hl.running_max_dist(m, 2) == {0: Fraction(1, 2), 1: Fraction(1, 4), 2: Fraction(1, 4)}
    table = hl.ladder_joint_dist(m, 3)
    assert table.cells()[(1, 1)] == Fraction(1, 2)
    assert table.cells()[(3, 1)] == Fraction(1, 8)
    q = 0.5
    expected = (1 - math.sqrt(1 - q * q)) / q
    a = hl.wh_factor_from_traces(hl.traces(m, hl.traces_required(q, 1e-10)), q, 1.0, 1e-10)
    b = hl.wh_factor_from_ladder(hl.ladder_joint_dist(m, 60), q, 1.0)
    assert abs(a.value - expected) <= 1e-9
    assert abs(b.value - expected) <= 1e-9


def test_factorization():
    f = hl.factorize(num_roots=[-2j], den_roots=[1j])
    assert f.zeros == [(-2j, 1)]
    for z in (0.5 - 1j, -3 - 0.2j, 2 - 4j):
        assert abs(abs((z + 2j) / (z - 1j)) - f.modulus(z)) <= 1e-6
    assert f.is_bounded(2.0 + 1e-8)
    z = -1j
    assert abs(hl.singular_modulus(0.0, [(0.0, math.pi)], z) - abs(cmath.exp(1j / z))) <= 1e-15


def test_phi_and_counterexample():
    assert abs(hl.extension_phi(simple_walk(), -1j) - math.e / 2) <= 1e-14
    assert abs(hl.counterexample_char(0.01)) < 1e-4
    assert abs(hl.counterexample_char(0.01j)) > 1e30
    assert hl.counterexample_ratio_check(1 + 1j) <= 1e-12
    with pytest.raises(hl.DomainError):
        hl.counterexample_char(0)


def test_reconstruct():
    m = hl.Measure([Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)], min_index=-1)
    report = hl.reconstruct(hl.traces(m, 8), window=1)
    assert report["verdict"] == "unique"
    assert max(abs(a - b) for a, b in zip(report["solutions"][0]["nonpos_coeffs"], [0.25, 0.25])) <= 1e-8
    left, right = hl.degenerate_witness()
    assert hl.reconstruct(hl.traces(left, 6), window=2, mass=1.0)["verdict"] == "non_unique"


def test_errors():
    with pytest.raises(hl.InsufficientData):
        hl.reconstruct(hl.traces(simple_walk(), 1), window=2)
    with pytest.raises(hl.InvalidInput):
        hl.Measure(["x"])
    with pytest.raises(hl.InvalidInput):
        hl.factorize(den_roots=[-1j])
