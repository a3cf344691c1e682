"""Tabular datasets behind the four standard plots.

Each builder returns ``(header, rows)``; the CLI writes them as CSV.
"""
from __future__ import annotations

from typing import Sequence

from . import asymptotics as asy
from .purifiers import fidelity_one_max, fidelity_one_max_inf, fidelity_one_max_zero
from .repspace import DomainError
from .states import make_noise, weight_table

FIG2_LAMBDAS = tuple(round(0.1 * k, 10) for k in range(1, 11))


def _mu_grid(mu_max: float, points: int, extra: Sequence[float] = ()) -> list[float]:
    if not mu_max > 0 or points < 1:
        raise DomainError("need mu_max > 0 and points >= 1")
    grid = {round(mu_max * i / points, 12) for i in range(1, points + 1)}
    grid.update(x for x in extra if 0 < x <= mu_max)
    return sorted(grid)


def fig1(lam: float, n_max: int = 100):
    """One-output fidelities at M = 0, 1 and infinity against N."""
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    noise = make_noise(lam=lam)
    rows = [
        [
            n,
            fidelity_one_max_zero(n, noise),
            fidelity_one_max(n, 1, noise).value,
            fidelity_one_max_inf(n, noise).value,
        ]
        for n in range(1, n_max + 1)
    ]
    return ["n", "f_zero", "f_one", "f_inf"], rows


def fig2(lambdas: Sequence[float] = FIG2_LAMBDAS, mu_max: float = 3.0, points: int = 300):
    """Rate curve Phi(mu) for several noise levels.

    ``lambda = 1`` is evaluated from the same closed form (Phi = 1 up to
    mu = 1, then 1/mu).  The ``natural`` column traces the natural purifier's
    operating points (mu = lambda, Phi = 2 mu/(1 + mu)); rows whose mu equals
    one of the requested lambdas carry ``flag = natural``.
    """
    for lam in lambdas:
        if not 0 < lam <= 1:
            raise DomainError(f"lambda must lie in (0, 1], got {lam}")
    header = ["mu", *(f"phi_{lam:g}" for lam in lambdas), "natural", "flag"]
    rows = []
    for mu in _mu_grid(mu_max, points, lambdas):
        phis = [asy.phi_formula(mu, lam) if lam == 1 else asy.phi_rate(mu, lam) for lam in lambdas]
        natural = 2 * mu / (1 + mu) if mu <= 1 else ""
        flag = "natural" if mu in lambdas else ""
        rows.append([mu, *phis, natural, flag])
    return header, rows


def fig3(lam: float, Ns: Sequence[int] = (10, 100, 1000)):
    """Block weights as a density in x = 2s/N, scaled to unit area.

    Consecutive support points are 2/N apart, so the density is w * N / 2.
    """
    noise = make_noise(lam=lam)
    rows = []
    for N in Ns:
        table = weight_table(N, noise)
        for two_s, w in zip(table.support, table.probabilities()):
            rows.append([N, two_s, two_s / N, float(w) * N / 2])
    return ["n", "two_s", "x", "density"], rows


def fig4(lam: float, mu_max: float = 3.0, points: int = 200):
    """Lower bounds on Phi next to the exact curve."""
    make_noise(lam=lam)
    rows = [
        [mu, asy.phi_lower_crude(mu, lam), asy.phi_lower_refined(mu, lam), asy.phi_rate(mu, lam)]
        for mu in _mu_grid(mu_max, points)
    ]
    return ["mu", "crude", "refined", "exact"], rows
