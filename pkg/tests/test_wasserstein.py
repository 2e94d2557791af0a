import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxeter_clt.coxeter import make_irreducible
from coxeter_clt.distributions import exact_t_distribution, standardize
from coxeter_clt.errors import ConstraintViolated
from coxeter_clt.wasserstein import (
    check_mallows_sum_inequality,
    d2_discrete,
    d2_to_normal,
    normal_partial_moments,
    quantile_view,
)
from oracles import min_coupling_two_point, quad_d2_to_normal, quad_half_normal_mean

# frozen by quad_d2_to_normal([-1, 1], [0.5, 0.5])
D2_STANDARD_A1 = 0.635791536900476


def point(x):
    return (np.array([x], dtype=float), np.array([1.0]))


def random_law(rng, k=None):
    k = k or int(rng.integers(1, 7))
    return (rng.normal(size=k) * rng.uniform(0.2, 3), rng.dirichlet(np.ones(k)))


def test_point_masses():
    assert d2_discrete(point(1.5), point(-2.0)) == pytest.approx(3.5, abs=1e-12)
    assert d2_to_normal(point(0.0)) == pytest.approx(1.0, abs=1e-12)


def test_self_distance():
    d = exact_t_distribution(make_irreducible("H3"))
    assert d2_discrete(d, d) == 0.0


def test_two_point_coupling_oracle():
    mu = ([0.0, 1.0], [0.5, 0.5])
    nu = ([0.0, 2.0], [0.5, 0.5])
    assert d2_discrete(mu, nu) == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert min_coupling_two_point([0, 1], [0.5, 0.5], [0, 2], [0.5, 0.5]) == pytest.approx(math.sqrt(0.5), abs=1e-9)


def test_standard_a1_to_normal():
    s = standardize(exact_t_distribution(make_irreducible("A", 1)))
    assert d2_to_normal(s) == pytest.approx(D2_STANDARD_A1, abs=1e-6)


def test_a_family_decreases():
    dists = [d2_to_normal(standardize(exact_t_distribution(make_irreducible("A", p)))) for p in range(2, 10)]
    assert dists[-1] < dists[0]
    assert dists[-1] < 0.2
    for p, value in zip((2, 5, 9), (dists[0], dists[3], dists[7])):
        s = standardize(exact_t_distribution(make_irreducible("A", p)))
        assert value == pytest.approx(quad_d2_to_normal(list(s.values()), list(s.weights())), abs=1e-6)


def test_partial_moments():
    first, second = normal_partial_moments(0.0, 1.0)
    assert first == pytest.approx(0.0, abs=1e-15) and second == pytest.approx(1.0, abs=1e-15)
    first, _ = normal_partial_moments(0.0, 0.5)
    assert first == pytest.approx(-1 / math.sqrt(2 * math.pi), abs=1e-12)
    assert first == pytest.approx(quad_half_normal_mean(), abs=1e-7)
    assert normal_partial_moments(0.3, 0.3) == (0.0, 0.0)
    a, b = normal_partial_moments(0.3, 0.3 + 1e-12)
    assert abs(a) < 1e-11 and abs(b) < 1e-11


def test_quantile_view():
    q = quantile_view(exact_t_distribution(make_irreducible("I2", 4)))
    assert list(q([0.05, 0.5, 0.95])) == [0.0, 2.0, 4.0]


def test_agrees_with_quadrature_on_random_laws():
    rng = np.random.default_rng(17)
    for _ in range(50):
        v, w = random_law(rng)
        assert d2_to_normal((v, w)) == pytest.approx(quad_d2_to_normal(list(v), list(w)), abs=1e-6)


def test_metric_axioms_random_triples():
    rng = np.random.default_rng(3)
    for _ in range(300):
        a, b, c = (random_law(rng) for _ in range(3))
        ab, bc, ac = d2_discrete(a, b), d2_discrete(b, c), d2_discrete(a, c)
        assert ab == pytest.approx(d2_discrete(b, a), abs=1e-12)
        assert ac <= ab + bc + 1e-9
        assert d2_discrete(a, a) <= 1e-12


def _random_coupling_cost(rng, mu, nu):
    """L2 cost of a random (not necessarily optimal) coupling with the right marginals."""
    (x, p), (y, q) = mu, nu
    plan = np.zeros((len(p), len(q)))
    # random order north-west corner rule: always a valid coupling
    rows, cols = rng.permutation(len(p)), rng.permutation(len(q))
    pr, qc = p.copy(), q.copy()
    i = j = 0
    while i < len(p) and j < len(q):
        m = min(pr[rows[i]], qc[cols[j]])
        plan[rows[i], cols[j]] += m
        pr[rows[i]] -= m
        qc[cols[j]] -= m
        if pr[rows[i]] <= 1e-15:
            i += 1
        else:
            j += 1
    return math.sqrt(float(np.sum(plan * (x[:, None] - y[None, :]) ** 2)))


def test_random_couplings_never_beat_quantile_coupling():
    rng = np.random.default_rng(5)
    for _ in range(20):
        mu, nu = random_law(rng), random_law(rng)
        best = d2_discrete(mu, nu)
        for _ in range(100):
            assert best <= _random_coupling_cost(rng, mu, nu) + 1e-9


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32), st.floats(-5, 5).filter(lambda c: abs(c) > 1e-3))
def test_scaling_covariance(seed, c):
    rng = np.random.default_rng(seed)
    (x, p), (y, q) = random_law(rng), random_law(rng)
    assert d2_discrete((c * x, p), (c * y, q)) == pytest.approx(abs(c) * d2_discrete((x, p), (y, q)), rel=1e-9, abs=1e-12)


def test_mallows_examples():
    a1 = standardize(exact_t_distribution(make_irreducible("A", 1)))
    lhs, rhs = check_mallows_sum_inequality([a1], [1.0])
    assert lhs == rhs
    lhs, rhs = check_mallows_sum_inequality([a1, a1], [1 / math.sqrt(2)] * 2)
    assert lhs <= rhs + 1e-9
    # sum of two Rademachers over sqrt 2 is uniform on {-sqrt2, 0, sqrt2} with weights 1/4, 1/2, 1/4
    assert lhs == pytest.approx(quad_d2_to_normal([-math.sqrt(2), 0, math.sqrt(2)], [0.25, 0.5, 0.25]), abs=1e-6)
    i23 = standardize(exact_t_distribution(make_irreducible("I2", 3)))
    lhs, rhs = check_mallows_sum_inequality([i23] * 10, [1 / math.sqrt(10)] * 10)
    single = d2_to_normal(i23)
    assert lhs <= rhs + 1e-9 and lhs < single
    assert rhs == pytest.approx(single, abs=1e-12)


def test_mallows_preconditions():
    raw = exact_t_distribution(make_irreducible("A", 1))
    with pytest.raises(ConstraintViolated):
        check_mallows_sum_inequality([raw], [1.0])
    a1 = standardize(raw)
    with pytest.raises(ConstraintViolated):
        check_mallows_sum_inequality([a1, a1], [0.5, 0.5])
