"""Fixed audit suites for the characteristic-function and Mallows inequalities.

Grids and trial counts live here so the test suite and the ``audit`` command
run exactly the same instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .charfn import TOL, check_lindeberg_bound, check_lipschitz_bound, check_simplified_bound, product_difference_bound
from .coxeter import IrreducibleType, make_irreducible
from .distributions import exact_t_distribution, moments, standardize
from .wasserstein import check_mallows_sum_inequality, d2_to_normal

ZETA_GRID = tuple(round(0.1 * k, 1) for k in range(1, 31))
S_N_MULTIPLIERS = (1.0, 1.5, 3.0, 10.0, 100.0)
TRIALS = 1000
SUM_POINT_BUDGET = 200_000


def small_factor_types(max_order: int = 10**4) -> list[IrreducibleType]:
    """Every irreducible type of order at most ``max_order`` (dihedral m = 3..20)."""
    out = []
    for fam, lo in (("A", 1), ("B", 2), ("D", 4)):
        p = lo
        while make_irreducible(fam, p).order <= max_order:
            out.append(make_irreducible(fam, p))
            p += 1
    out += [make_irreducible("I2", m) for m in range(3, 21)]
    out += [t for t in map(make_irreducible, ("H3", "H4", "F4", "E6", "E7", "E8")) if t.order <= max_order]
    return out


@dataclass
class AuditResult:
    name: str
    checks: int
    violations: int
    worst_margin: float

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.checks} checks, {self.violations} violations, worst lhs-rhs {self.worst_margin:.3e}"


class _Tally:
    def __init__(self, name):
        self.name, self.checks, self.violations, self.worst = name, 0, 0, -math.inf

    def add(self, lhs, rhs, tol=TOL):
        self.checks += 1
        self.worst = max(self.worst, lhs - rhs)
        if lhs > rhs + tol:
            self.violations += 1

    def result(self):
        return AuditResult(self.name, self.checks, self.violations, self.worst)


def audit_fourier_bounds(types=None) -> list[AuditResult]:
    """Lindeberg-type bound and its simplified form on the full zeta/s_n grid."""
    lind, simp = _Tally("lindeberg bound"), _Tally("simplified bound")
    for t in types or small_factor_types():
        law = exact_t_distribution(t)
        var = float(moments(law).variance)
        k_bound = 2 * t.rank
        for zeta in ZETA_GRID:
            base = max(zeta * math.sqrt(var), zeta)
            for mult in S_N_MULTIPLIERS:
                s_n = base * mult
                lind.add(*check_lindeberg_bound(law, s_n, zeta))
                simp.add(*check_simplified_bound(law, s_n, zeta, k_bound))
    return [lind.result(), simp.result()]


def audit_product_inequality(trials: int = TRIALS, seed: int = 0) -> AuditResult:
    rng = np.random.default_rng(seed)
    tally = _Tally("product inequality")
    for _ in range(trials):
        k = int(rng.integers(1, 21))
        pts = []
        for _ in range(2):
            r = np.sqrt(rng.uniform(0, 1, k))
            pts.append(r * np.exp(1j * rng.uniform(0, 2 * np.pi, k)))
        tally.add(*product_difference_bound(list(pts[0]), list(pts[1])))
    return tally.result()


def audit_lipschitz(trials: int = TRIALS, seed: int = 0) -> AuditResult:
    rng = np.random.default_rng(seed)
    tally = _Tally("lipschitz estimate")
    laws = [standardize(exact_t_distribution(make_irreducible("I2", m))) for m in range(3, 13)]
    laws.append(standardize(exact_t_distribution(make_irreducible("A", 5))))
    dists = [d2_to_normal(d) for d in laws]
    for _ in range(trials):
        k = int(rng.integers(len(laws)))
        tally.add(*check_lipschitz_bound(laws[k], float(rng.uniform(0, 1)), float(rng.uniform(-5, 5)), dists[k]))
    return tally.result()


def _random_standard_law(rng, points):
    v = rng.normal(size=points)
    w = rng.dirichlet(np.ones(points))
    mean = float(w @ v)
    sd = math.sqrt(float(w @ (v - mean) ** 2))
    return ((v - mean) / sd, w)


def mallows_instances(trials: int = TRIALS, seed: int = 0):
    """Randomized (laws, coefficients) pairs with 1 to 10 factors."""
    rng = np.random.default_rng(seed)
    pool = [standardize(exact_t_distribution(t)) for t in small_factor_types(200)]
    for _ in range(trials):
        k = int(rng.integers(1, 11))
        laws, budget = [], 1
        for _ in range(k):
            if rng.uniform() < 0.5:
                law = pool[int(rng.integers(len(pool)))]
                size = len(law.support)
            else:
                size = int(rng.integers(2, 5))
                law = _random_standard_law(rng, size)
            if budget * size > SUM_POINT_BUDGET:
                law, size = pool[0], 2
            laws.append(law)
            budget *= size
        coeffs = rng.normal(size=k) if rng.uniform() < 0.8 else np.ones(k)
        coeffs = coeffs / math.sqrt(math.fsum(coeffs**2))
        yield laws, [float(a) for a in coeffs]


def audit_mallows_sum(trials: int = TRIALS, seed: int = 0) -> AuditResult:
    tally = _Tally("mallows sum inequality")
    for laws, coeffs in mallows_instances(trials, seed):
        tally.add(*check_mallows_sum_inequality(laws, coeffs, tol=1e-9))
    return tally.result()


def run_all(trials: int = TRIALS, seed: int = 0) -> list[AuditResult]:
    return [
        *audit_fourier_bounds(),
        audit_product_inequality(trials, seed),
        audit_lipschitz(trials, seed),
        audit_mallows_sum(trials, seed),
    ]
