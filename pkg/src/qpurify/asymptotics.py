"""Large-N behaviour of the optimal purifier.

Limit formulas are evaluated directly.  :func:`convergence_report` sets them
against finite-N values as a diagnostic; nothing here extrapolates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal, Optional

from .purifiers import (
    fidelity_all_max,
    fidelity_one_max,
    fidelity_one_max_inf,
    fidelity_one_max_zero_complement,
)
from .repspace import DomainError, log_binomial
from .states import Noise

Kind = Literal["zero", "one", "infinity"]


def _check_lambda(lam: float) -> None:
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {lam}")


def _check_rate(mu: float) -> None:
    if not mu > 0:
        raise DomainError(f"rate mu must be > 0, got {mu}")


def c_coefficient(kind: Kind, lam: float) -> float:
    """Coefficient c in F_one^max(N, M) ~ 1 - c/(2N) for M = 0, 1, infinity."""
    _check_lambda(lam)
    if kind == "zero":
        return (1 - lam) / lam
    if kind == "one":
        return (1 - lam) / lam**2
    if kind == "infinity":
        return (1 + lam) / lam**2
    raise DomainError(f"unknown coefficient kind {kind!r}")


def phi_formula(mu: float, lam: float) -> float:
    """The rate curve without domain checks; lam = 1 is allowed."""
    if mu <= lam:
        return 2 * lam**2 / (2 * lam**2 + mu * (1 - lam))
    return 2 * lam**2 / (mu * (1 + lam))


def phi_rate(mu: float, lam: float) -> float:
    """Limiting all-output fidelity at output rate mu = M/N.

    Tends to 1 as mu -> 0 (mu = 0 itself is excluded) and to 0 as mu -> inf.
    """
    _check_rate(mu)
    _check_lambda(lam)
    return phi_formula(mu, lam)


def phi_lower_crude(mu: float, lam: float) -> float:
    """1 - mu * c_inf / 2; may be negative (vacuous)."""
    _check_rate(mu)
    return 1 - mu * c_coefficient("infinity", lam) / 2


def phi_lower_refined(mu: float, lam: float) -> float:
    _check_rate(mu)
    _check_lambda(lam)
    if mu <= lam:
        return 1 - mu * (1 - lam) / (2 * lam**2)
    return 2 - mu * (1 + lam) / (2 * lam**2)


def binom_phi(K: int, M: int, z: float) -> float:
    """C(K,M)^{-1} * sum_{R=M}^{K} C(R,M) z^{K-R}.

    Written as sum_R c(K,M,R) z^R with c(K,M,R) = C(K-R,M)/C(K,M) in [0, 1].
    """
    if not 0 <= M <= K:
        raise DomainError(f"need 0 <= M <= K, got M={M}, K={K}")
    if not -1 < z < 1:
        raise DomainError(f"need |z| < 1, got {z}")
    lkm = log_binomial(K, M).log_magnitude
    terms = []
    for R in range(K - M + 1):
        if z == 0 and R > 0:
            break
        c = math.exp(log_binomial(K - R, M).log_magnitude - lkm)
        terms.append(c * z**R)
    return math.fsum(terms)


def binom_phi_limit(c: float, z: float) -> float:
    """Limit of binom_phi(K, M, z) as M/K -> c, for c in (0, 1]."""
    if not 0 < c <= 1:
        raise DomainError(f"need 0 < c <= 1, got {c}")
    if not -1 < z < 1:
        raise DomainError(f"need |z| < 1, got {z}")
    return 1 / (1 - (1 - c) * z)


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    finite: float
    limit: float
    residual: float


ReportKind = Literal["c_zero", "c_one", "c_infinity", "phi"]


def convergence_report(
    noise: Noise,
    kind: ReportKind,
    Ns: Iterable[int],
    mu: Optional[float] = None,
) -> list[ConvergenceRow]:
    """Finite-N quantities next to their limits, one row per N (ascending).

    For the c kinds the finite quantity is N * (1 - F_one^max); for ``phi`` it
    is F_all^max(N, round(mu N)).
    """
    Ns = sorted(Ns)
    lam = noise.lam
    rows = []
    if kind == "phi":
        if mu is None:
            raise DomainError("kind='phi' needs mu")
        limit = phi_rate(mu, lam)
        for N in Ns:
            if N > 1000:
                raise DomainError(f"phi report limited to N <= 1000, got {N}")
            M = max(1, math.floor(mu * N + 0.5))
            val = fidelity_all_max(N, M, noise).value
            rows.append(ConvergenceRow(N, val, limit, abs(val - limit)))
        return rows

    coeff = {"c_zero": "zero", "c_one": "one", "c_infinity": "infinity"}.get(kind)
    if coeff is None:
        raise DomainError(f"unknown report kind {kind!r}")
    limit = c_coefficient(coeff, lam) / 2
    for N in Ns:
        if N > 5000:
            raise DomainError(f"report limited to N <= 5000, got {N}")
        if kind == "c_zero":
            comp = fidelity_one_max_zero_complement(N, noise)
        elif kind == "c_one":
            comp = fidelity_one_max(N, 1, noise).complement
        else:
            comp = fidelity_one_max_inf(N, noise).complement
        val = N * comp
        rows.append(ConvergenceRow(N, val, limit, abs(val - limit)))
    return rows
