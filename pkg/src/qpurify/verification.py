"""Closed forms checked against the dense oracle and against each other.

Each check reports the largest residual it saw; it passes when that residual
is within the tolerance.  Drives ``qpurify verify``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from . import asymptotics as asy
from .oracle import MAX_FIDELITY_M, MAX_FIDELITY_N, oracle_fidelities, oracle_weight
from .purifiers import (
    f_all,
    f_one,
    fidelity_all_max,
    fidelity_one_max,
    fidelity_one_max_inf,
    top_occupation,
)
from .repspace import DomainError, multiplicity, multiplicity_exact, spin_support
from .states import gamma_block, make_noise, weight, weight_table


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def _oracle_checks(lambdas, max_n, max_m, tol):
    for lam in lambdas:
        noise = make_noise(lam=lam)
        for N in range(1, max_n + 1):
            r_one = r_all = 0.0
            for M in range(1, max_m + 1):
                o_one, o_all = oracle_fidelities(N, M, noise)
                r_one = max(r_one, abs(fidelity_one_max(N, M, noise).value - o_one))
                r_all = max(r_all, abs(fidelity_all_max(N, M, noise).value - o_all))
            r_w = max(
                abs(float(weight(N, t, noise)) - oracle_weight(N, t, noise))
                for t in spin_support(N)
            )
            yield CheckResult(f"oracle_f_one[lambda={lam:g},N={N}]", r_one, tol)
            yield CheckResult(f"oracle_f_all[lambda={lam:g},N={N}]", r_all, tol)
            yield CheckResult(f"oracle_weight[lambda={lam:g},N={N}]", r_w, tol)


def _structural_checks(lambdas, tol):
    for lam in lambdas:
        noise = make_noise(lam=lam)
        Ns = [*range(1, 101), 1000, 2000]
        r = max(abs(weight_table(N, noise).total() - 1) for N in Ns)
        yield CheckResult(f"weight_normalization[lambda={lam:g}]", r, tol)

        r = max(
            abs(fidelity_one_max(N, 1, noise).value - fidelity_all_max(N, 1, noise).value)
            for N in range(1, 21)
        )
        yield CheckResult(f"m1_criteria_coincide[lambda={lam:g}]", r, tol)

        r = 0.0
        for N in range(1, 13):
            for M in range(1, 9):
                one = fidelity_one_max(N, M, noise).value
                alle = fidelity_all_max(N, M, noise).value
                r = max(r, (1 - one) - (1 - alle), (1 - alle) - M * (1 - one))
        yield CheckResult(f"sandwich[lambda={lam:g}]", max(r, 0.0), tol)

        # both formula pairs evaluated on the boundary 2s = M
        r = max(
            max(abs(f_one(M, noise, M) - 0.5 * (1 + gamma_block(M, noise))),
                abs(f_all(M, noise, M) - top_occupation(noise, M)))
            for M in range(1, 41)
        )
        yield CheckResult(f"branch_continuity[lambda={lam:g}]", r, tol)

        r = 0.0
        for N in range(1, 13):
            prev_one = prev_all = math.inf
            for M in range(1, 13):
                one = fidelity_one_max(N, M, noise).value
                alle = fidelity_all_max(N, M, noise).value
                r = max(r, one - prev_one, alle - prev_all)
                prev_one, prev_all = one, alle
        yield CheckResult(f"monotone_in_M[lambda={lam:g}]", max(r, 0.0), tol)

    r = 0.0
    for N in range(1, 41):
        for t in spin_support(N):
            pascal = multiplicity_exact(N - 1, t - 1) + multiplicity_exact(N - 1, t + 1)
            r = max(r, abs(multiplicity_exact(N, t) - pascal) if N > 1 else 0)
            exact = multiplicity_exact(N, t)
            r = max(r, abs(float(multiplicity(N, t)) - exact) / exact)
        dims = sum((t + 1) * multiplicity_exact(N, t) for t in spin_support(N))
        r = max(r, abs(dims - 2 ** N))
    yield CheckResult("multiplicity_pascal_and_dimension", r, tol)

    noise = make_noise(lam=0.5)
    spots = [
        (fidelity_one_max(1, 1, noise).value, 0.75),
        (fidelity_one_max(3, 1, noise).value, 0.8125),
        (fidelity_all_max(2, 2, noise).value, 0.625),
        (fidelity_one_max_inf(1, noise).value, 7 / 12),
        (gamma_block(2, noise), 8 / 13),
    ]
    yield CheckResult("spot_values[lambda=0.5]", max(abs(a - b) for a, b in spots), tol)

    r = max(
        abs(asy.phi_formula(lam, lam) - 2 * lam / (1 + lam))
        for lam in (k / 21 for k in range(1, 21))
    )
    yield CheckResult("phi_branch_continuity", r, tol)


def run_checks(
    max_n: int = MAX_FIDELITY_N,
    max_m: int = MAX_FIDELITY_M,
    lambdas: Iterable[float] = (0.3, 0.5, 0.9),
    tol: float = 1e-10,
) -> list[CheckResult]:
    if not 1 <= max_n <= MAX_FIDELITY_N:
        raise DomainError(f"max_n must be in 1..{MAX_FIDELITY_N}, got {max_n}")
    if not 1 <= max_m <= MAX_FIDELITY_M:
        raise DomainError(f"max_m must be in 1..{MAX_FIDELITY_M}, got {max_m}")
    if not tol > 0:
        raise DomainError(f"tolerance must be > 0, got {tol}")
    lambdas = list(lambdas)
    for lam in lambdas:
        make_noise(lam=lam)
    return [*_oracle_checks(lambdas, max_n, max_m, tol), *_structural_checks(lambdas, tol)]
