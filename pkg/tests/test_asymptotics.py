import math
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from qpurify.asymptotics import (
    binom_phi,
    binom_phi_limit,
    c_coefficient,
    convergence_report,
    phi_formula,
    phi_lower_crude,
    phi_lower_refined,
    phi_rate,
)
from qpurify.repspace import DomainError
from qpurify.states import make_noise

LAMBDAS = (0.3, 0.5, 0.9)


@pytest.mark.parametrize("kind, expected", [("zero", 1.0), ("one", 2.0), ("infinity", 6.0)])
def test_coefficients(kind, expected):
    assert c_coefficient(kind, 0.5) == expected


@pytest.mark.parametrize("lam", [0.0, 1.0, -0.5])
def test_coefficients_reject_boundary(lam):
    with pytest.raises(DomainError):
        c_coefficient("one", lam)
    with pytest.raises(DomainError):
        c_coefficient("sideways", 0.5)


def test_rate_curve_examples():
    assert phi_rate(0.5, 0.5) == pytest.approx(2 / 3, rel=1e-15)
    assert phi_rate(1.0, 0.5) == pytest.approx(1 / 3, rel=1e-15)
    assert phi_rate(1e-9, 0.5) == pytest.approx(1.0, abs=1e-8)
    assert phi_rate(1e9, 0.5) < 1e-9
    for mu in (0.0, -1.0):
        with pytest.raises(DomainError):
            phi_rate(mu, 0.5)
    with pytest.raises(DomainError):
        phi_rate(0.5, 1.0)


def test_rate_curve_at_full_polarization():
    assert phi_formula(0.5, 1.0) == 1.0
    assert phi_formula(1.0, 1.0) == 1.0
    assert phi_formula(4.0, 1.0) == 0.25


def test_branch_continuity_at_natural_point():
    for k in range(1, 21):
        lam = k / 21
        assert abs(phi_formula(lam, lam) - 2 * lam / (1 + lam)) <= 1e-14
        assert abs(2 * lam**2 / (lam * (1 + lam)) - 2 * lam / (1 + lam)) <= 1e-14
        z = make_noise(lam=lam).z
        assert phi_rate(lam, lam) == pytest.approx(1 - z, abs=1e-14)


def test_rate_curve_monotonicity():
    mus = np.linspace(0.001, 5, 800)
    for lam in (0.1, 0.3, 0.5, 0.9, 0.99):
        vals = [phi_rate(m, lam) for m in mus]
        assert all(b <= a for a, b in zip(vals, vals[1:]))
        assert all(0 < v <= 1 for v in vals)
    lams = np.linspace(0.05, 0.95, 91)
    for mu in (0.01, 0.04, 0.05):
        vals = [phi_rate(mu, lam) for lam in lams if mu <= lam]
        assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_lower_bound_examples():
    assert phi_lower_crude(0.1, 0.5) == pytest.approx(0.7, rel=1e-14)
    assert phi_lower_crude(1.0, 0.5) == pytest.approx(-2.0, rel=1e-14)
    assert phi_lower_refined(0.5, 0.5) == pytest.approx(0.5, rel=1e-14)


@pytest.mark.parametrize("lam", LAMBDAS)
def test_lower_bounds_are_ordered(lam):
    assert abs(phi_lower_refined(lam, lam) - (2 - lam * (1 + lam) / (2 * lam**2))) <= 1e-14
    for mu in np.linspace(3 / 200, 3, 200):
        crude, refined, exact = phi_lower_crude(mu, lam), phi_lower_refined(mu, lam), phi_rate(mu, lam)
        assert refined >= crude - 1e-12
        if refined >= 0:
            assert exact >= refined - 1e-12


def test_binom_phi_examples():
    assert binom_phi(2, 1, 1 / 3) == pytest.approx(7 / 6, rel=1e-15)
    for K in range(0, 51):
        assert binom_phi(K, K, 0.7) == 1.0
    assert binom_phi(5, 0, 0.0) == 1.0


def test_binom_phi_against_exact_sum():
    z = Fraction(1, 3)
    for K in range(0, 40):
        for M in range(0, K + 1):
            exact = sum(comb(R, M) * z ** (K - R) for R in range(M, K + 1)) / comb(K, M)
            assert binom_phi(K, M, float(z)) == pytest.approx(float(exact), rel=1e-13)


def test_binom_phi_domain():
    with pytest.raises(DomainError):
        binom_phi(3, 4, 0.5)
    with pytest.raises(DomainError):
        binom_phi(3, 1, 1.0)


def test_binom_phi_limit():
    assert binom_phi_limit(1, 0.9) == 1.0
    assert binom_phi_limit(0.5, 1 / 3) == pytest.approx(1.2, rel=1e-15)
    res = [abs(binom_phi(2 * n, n, 1 / 3) - 1.2) for n in (10, 50, 200)]
    assert res[0] > res[1] > res[2]
    for c in (0.0, 1.5):
        with pytest.raises(DomainError):
            binom_phi_limit(c, 0.5)


@pytest.mark.parametrize("lam", LAMBDAS)
def test_limit_reproduces_rate_curve(lam):
    z = make_noise(lam=lam).z
    for mu in np.linspace(lam / 50, lam, 50):
        assert (1 - z) * binom_phi_limit(mu / lam, z) == pytest.approx(phi_rate(mu, lam), abs=1e-12)


def test_convergence_report_examples(half):
    rows = convergence_report(half, "c_infinity", [1000, 100, 300])
    assert [r.N for r in rows] == [100, 300, 1000]
    assert all(r.limit == 3.0 for r in rows)
    assert rows[0].residual > rows[1].residual > rows[2].residual
    assert rows[2].residual <= 0.1

    rows = convergence_report(half, "c_one", [100, 1000])
    assert rows[1].residual < rows[0].residual and rows[1].residual <= 0.04

    rows = convergence_report(half, "c_zero", [100, 1000])
    assert all(r.residual <= 1e-12 for r in rows)

    (row,) = convergence_report(half, "phi", [400], mu=0.5)
    assert row.limit == pytest.approx(2 / 3)
    assert row.residual <= 0.02


def test_convergence_report_guards(half):
    with pytest.raises(DomainError):
        convergence_report(half, "phi", [100])
    with pytest.raises(DomainError):
        convergence_report(half, "phi", [1001], mu=0.5)
    with pytest.raises(DomainError):
        convergence_report(half, "c_one", [5001])
    with pytest.raises(DomainError):
        convergence_report(half, "c_two", [10])


@pytest.mark.parametrize("lam", LAMBDAS)
def test_c_coefficients_match_finite_n_trend(lam):
    noise = make_noise(lam=lam)
    for kind in ("c_zero", "c_one", "c_infinity"):
        rows = convergence_report(noise, kind, [200, 800, 3200])
        res = [r.residual for r in rows]
        assert res[-1] <= 0.05 * rows[-1].limit + 1e-12
        assert all(b <= a or a <= 1e-12 for a, b in zip(res, res[1:]))
