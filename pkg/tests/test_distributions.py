import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxeter_clt.coxeter import CoxeterGroup, make_irreducible, parse_group
from coxeter_clt.distributions import (
    DiscreteDistribution,
    convolve,
    exact_t_distribution,
    moments,
    product_t_distribution,
    standardize,
    view_moments,
)
from coxeter_clt.errors import OrderExceedsCap, ZeroVariance
from oracles import brute_t_law

F = Fraction
H3_LAW = {0: F(1, 120), 2: F(43, 120), 3: F(4, 15), 4: F(43, 120), 6: F(1, 120)}


def law(mapping):
    return DiscreteDistribution.from_mapping(mapping)


def test_validation():
    with pytest.raises(ValueError):
        DiscreteDistribution((0, 1), (F(1, 2), F(1, 3)))
    with pytest.raises(ValueError):
        DiscreteDistribution((1, 0), (F(1, 2), F(1, 2)))
    with pytest.raises(ValueError):
        DiscreteDistribution((0,), (F(1),), shift=0, scale_sq=0)


def test_factor_law_examples():
    assert exact_t_distribution(make_irreducible("A", 1)).as_dict() == {0: F(1, 2), 2: F(1, 2)}
    i23 = exact_t_distribution(make_irreducible("I2", 3))
    assert i23.as_dict() == {0: F(1, 6), 2: F(2, 3), 4: F(1, 6)}
    assert i23.as_dict() == brute_t_law(parse_group("A2"))


def test_h3_law_frozen_by_cayley_oracle():
    got = exact_t_distribution(make_irreducible("H3")).as_dict()
    assert got == H3_LAW == brute_t_law(parse_group("H3"))


@pytest.mark.parametrize("text", ["A1", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "I2(8)"])
def test_factor_laws_match_cayley_oracle(text):
    g = parse_group(text)
    assert exact_t_distribution(g.factors[0]).as_dict() == brute_t_law(g)


def test_convolution_examples():
    d = exact_t_distribution(make_irreducible("H3"))
    assert convolve(d, DiscreteDistribution.point_mass(0)) == d
    a1 = exact_t_distribution(make_irreducible("A", 1))
    assert convolve(a1, a1).as_dict() == {0: F(1, 4), 2: F(1, 2), 4: F(1, 4)}


@pytest.mark.parametrize("text", ["A2xB2", "A1xI2(5)xA2", "I2(3)xI2(4)", "I2(5)xI2(5)", "A1xA1xA1", "H3xA1"])
def test_product_law_equals_enumeration(text):
    g = parse_group(text)
    assert product_t_distribution(g).as_dict() == brute_t_law(g)


def test_product_examples():
    assert product_t_distribution(CoxeterGroup(())).as_dict() == {0: 1}
    i25 = law({0: F(1, 10), 2: F(4, 5), 4: F(1, 10)})
    assert product_t_distribution(parse_group("I2(5)xI2(5)")) == convolve(i25, i25)
    assert product_t_distribution(parse_group("A1xA1xA1")).as_dict() == {
        0: F(1, 8), 2: F(3, 8), 4: F(3, 8), 6: F(1, 8)
    }


def test_cap_identifies_factor():
    with pytest.raises(OrderExceedsCap) as info:
        product_t_distribution(parse_group("I2(500)xA6"), cap=1000)
    assert str(info.value.factor) == "A6"
    # dihedral factors never need enumeration
    assert product_t_distribution(parse_group("I2(1000000)"), cap=10).as_dict()[2] == F(999999, 1000000)


def test_moment_examples():
    assert moments(DiscreteDistribution.point_mass(3)).variance == 0
    m = moments(exact_t_distribution(make_irreducible("A", 1)))
    assert (m.mean, m.variance) == (1, 1)


@pytest.mark.parametrize("m", range(3, 13))
def test_dihedral_moments(m):
    oracle = brute_t_law(parse_group(f"I2({m})"))
    d = exact_t_distribution(make_irreducible("I2", m))
    assert d.as_dict() == oracle
    mo = moments(d)
    assert mo.mean == 2 and mo.variance == F(4, m)


def test_standardize_examples():
    s = standardize(exact_t_distribution(make_irreducible("A", 1)))
    assert list(s.values()) == [-1.0, 1.0]
    assert view_moments(s) == (0, 1)
    with pytest.raises(ZeroVariance):
        standardize(DiscreteDistribution.point_mass(0))
    s4 = standardize(exact_t_distribution(make_irreducible("I2", 4)))
    assert list(s4.values()) == [-2.0, 0.0, 2.0]
    assert s4.probs == (F(1, 8), F(3, 4), F(1, 8))


laws = st.dictionaries(
    st.integers(-20, 20), st.integers(1, 50), min_size=1, max_size=6
).map(lambda d: law({k: F(v, sum(d.values())) for k, v in d.items()}))


@settings(max_examples=60, deadline=None)
@given(laws, laws)
def test_variance_additivity(d1, d2):
    m1, m2, m = moments(d1), moments(d2), moments(convolve(d1, d2))
    assert m.mean == m1.mean + m2.mean
    assert m.variance == m1.variance + m2.variance


@settings(max_examples=40, deadline=None)
@given(laws)
def test_standardize_round_trip(d):
    if moments(d).variance == 0:
        return
    s = standardize(d)
    assert s.exact() == d
    assert view_moments(s) == (0, 1)
    assert DiscreteDistribution.from_json(json.loads(json.dumps(s.to_json()))) == s


def test_json_schema():
    d = exact_t_distribution(make_irreducible("I2", 3))
    obj = d.to_json()
    assert obj == {"support": ["0", "2", "4"], "probs": ["1/6", "2/3", "1/6"], "shift": None, "scale": None}
    assert DiscreteDistribution.from_json(json.dumps(obj)) == d
    s = standardize(d).to_json()
    assert s["shift"] == 2.0 and s["scale"] == pytest.approx((4 / 3) ** 0.5)


SMALL_TYPES = ["A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "D4", "H3", "F4"] + [
    f"I2({m})" for m in range(3, 21)
]


@pytest.mark.parametrize("text", SMALL_TYPES)
def test_support_and_third_moment_bounds(text):
    t = parse_group(text).factors[0]
    d = exact_t_distribution(t)
    assert all(0 <= x <= 2 * t.rank for x in d.support)
    m = moments(d)
    assert m.abs_third <= 2 * t.rank * float(m.variance) + 1e-12
