"""Fidelities of the natural and optimal purifiers.

The optimal N -> M purifier first projects onto a spin block (producing 2s
qubits in the state rho_s) and then either discards qubits (2s >= M) or runs
the optimal universal 2s -> M cloner (2s < M).  Both figures of merit are
weight averages over blocks of a per-block fidelity.

Block sums run over ascending two_s and are accumulated with ``math.fsum`` so
the results are bit-stable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional

import numpy as np
from scipy.special import gammaln, logsumexp

from .repspace import DomainError, log_binomial
from .states import (
    Noise,
    gamma_block,
    gamma_deficit,
    weight_table,
)

Criterion = Literal["one", "all"]


def _check_outputs(M: int) -> None:
    if M < 1:
        raise DomainError(f"number of outputs M must be >= 1, got {M}")


def cloner_gain(M: int, two_s: int) -> Fraction:
    """omega of the optimal fully symmetric map onto a spin-s block.

    ``Q(L_3) = omega * L_3^{(s)}``; the two branches meet at 2s = M with value 1.
    """
    _check_outputs(M)
    if two_s < 0:
        raise DomainError(f"two_s must be non-negative, got {two_s}")
    if two_s >= M:
        return Fraction(M, two_s)
    return Fraction(M + 2, two_s + 2)


def _one_prefactor(M: int, two_s: int) -> Fraction:
    # gamma of the output = omega * (2s/M) * gamma(rho_s)
    return cloner_gain(M, two_s) * Fraction(two_s, M)


def f_one(M: int, noise: Noise, two_s: int) -> float:
    """Single-output fidelity of the optimal purifier restricted to one block."""
    _check_outputs(M)
    if two_s == 0:
        return 0.5
    c = _one_prefactor(M, two_s)
    return 0.5 * (1.0 + float(c) * gamma_block(two_s, noise))


def f_one_complement(M: int, noise: Noise, two_s: int) -> float:
    """1 - f_one, evaluated without cancellation near fidelity 1."""
    _check_outputs(M)
    if two_s == 0:
        return 0.5
    c = _one_prefactor(M, two_s)
    return 0.5 * (float(1 - c) + float(c) * gamma_deficit(two_s, noise))


def top_occupation(noise: Noise, two_s: int) -> float:
    """<psi^{⊗2s}| rho_s |psi^{⊗2s}> = (1 - e^{-2b}) / (1 - e^{-(4s+2)b})."""
    b = noise.beta
    return math.expm1(-2 * b) / math.expm1(-2 * (two_s + 1) * b)


def f_all(M: int, noise: Noise, two_s: int) -> float:
    """All-output fidelity <psi^{⊗M}| out |psi^{⊗M}> for one block."""
    _check_outputs(M)
    if two_s < 0:
        raise DomainError(f"two_s must be non-negative, got {two_s}")
    if two_s < M:
        return (two_s + 1) / (M + 1) * top_occupation(noise, two_s)
    # partial trace: the surviving M qubits are all favoured with probability
    # C(K, M)/C(2s, M) in occupation state K
    b = noise.beta
    K = np.arange(M, two_s + 1)
    log_num = logsumexp(gammaln(K + 1) - gammaln(K - M + 1) - gammaln(M + 1) + 2 * b * K)
    Kall = np.arange(two_s + 1)
    log_den = log_binomial(two_s, M).log_magnitude + logsumexp(2 * b * Kall)
    return math.exp(log_num - log_den)


@dataclass(frozen=True)
class FidelityReport:
    """A purifier figure of merit with its per-block breakdown.

    ``M is None`` stands for the M -> infinity limit.  ``complement`` is
    ``1 - value`` accumulated block by block from stable per-block terms.
    """

    N: int
    M: Optional[int]
    criterion: Criterion
    value: float
    per_block: list[tuple[int, float, float]] = field(repr=False)
    complement: float = field(repr=False, default=float("nan"))


def _report(N, M, criterion, table, fids, comps=None) -> FidelityReport:
    ws = table.probabilities()
    per_block = [(t, float(w), float(f)) for t, w, f in zip(table.support, ws, fids)]
    value = math.fsum(w * f for _, w, f in per_block)
    if comps is None:
        complement = 1.0 - value
    else:
        complement = math.fsum(float(w) * c for w, c in zip(ws, comps))
    return FidelityReport(N, M, criterion, value, per_block, complement)


def fidelity_one_max(N: int, M: int, noise: Noise) -> FidelityReport:
    """Best worst-case single-output fidelity of an N -> M purifier."""
    _check_outputs(M)
    table = weight_table(N, noise)
    fids = [f_one(M, noise, t) for t in table.support]
    comps = [f_one_complement(M, noise, t) for t in table.support]
    return _report(N, M, "one", table, fids, comps)


def _f_one_inf(noise: Noise, two_s: int) -> tuple[float, float]:
    # M -> infinity: every block goes through the cloner, gamma scaled by 2s/(2s+2)
    if two_s == 0:
        return 0.5, 0.5
    g = two_s / (two_s + 2) * gamma_block(two_s, noise)
    comp = 0.5 * (2 + two_s * gamma_deficit(two_s, noise)) / (two_s + 2)
    return 0.5 * (1 + g), comp


def fidelity_one_max_inf(N: int, noise: Noise) -> FidelityReport:
    """Limit M -> infinity of :func:`fidelity_one_max`."""
    table = weight_table(N, noise)
    pairs = [_f_one_inf(noise, t) for t in table.support]
    return _report(N, None, "one", table, [p[0] for p in pairs], [p[1] for p in pairs])


def fidelity_one_max_zero(N: int, noise: Noise) -> float:
    """Best fidelity when the device may also fail to produce any output.

    This is the fidelity of the natural purifier's best outcome, 2s = N.
    """
    if N < 1:
        raise DomainError(f"N must be a positive integer, got {N}")
    return 0.5 * (1 + gamma_block(N, noise))


def fidelity_one_max_zero_complement(N: int, noise: Noise) -> float:
    if N < 1:
        raise DomainError(f"N must be a positive integer, got {N}")
    return 0.5 * gamma_deficit(N, noise)


def fidelity_all_max(N: int, M: int, noise: Noise) -> FidelityReport:
    """Best fidelity of the whole M-qubit output with the pure product target."""
    _check_outputs(M)
    table = weight_table(N, noise)
    fids = [f_all(M, noise, t) for t in table.support]
    return _report(N, M, "all", table, fids)


def fidelity_max(N: int, M: int, noise: Noise, criterion: Criterion) -> FidelityReport:
    if criterion == "one":
        return fidelity_one_max(N, M, noise)
    if criterion == "all":
        return fidelity_all_max(N, M, noise)
    raise DomainError(f"criterion must be 'one' or 'all', got {criterion!r}")


@dataclass(frozen=True)
class InstrumentOutcome:
    """One branch of the natural purifier.

    ``empty`` marks the no-output branch (two_s = 0), whose f_one is 1/2 by
    the completely-mixed convention and whose f_all is the vacuous 1.
    """

    two_s: int
    probability: float
    output_count: int
    f_one: float
    f_all: float
    empty: bool = False


def natural_instrument(N: int, noise: Noise) -> list[InstrumentOutcome]:
    table = weight_table(N, noise)
    out = []
    for t, p in zip(table.support, table.probabilities()):
        if t == 0:
            out.append(InstrumentOutcome(0, float(p), 0, 0.5, 1.0, empty=True))
            continue
        out.append(InstrumentOutcome(
            t, float(p), t,
            0.5 * (1 + gamma_block(t, noise)),
            top_occupation(noise, t),
        ))
    return out
