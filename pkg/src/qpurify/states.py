"""Depolarized input states and their decomposition into spin blocks.

A qubit exposed to the depolarizing channel with parameter ``lam`` is, in its
eigenbasis, ``rho(beta) = exp(beta * sigma_3) / (2 cosh beta)`` with
``lam = tanh(beta)``.  Its N-fold tensor power splits over the spin blocks into
``w_N(s) * rho_s(beta) ⊗ 1/dim K_{N,s}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .repspace import DomainError, LogValue, in_support, multiplicity, spin_support


@dataclass(frozen=True)
class Noise:
    """Depolarizing strength, as ``lam`` and the pseudo-temperature ``beta``."""

    lam: float
    beta: float

    @classmethod
    def from_lambda(cls, lam: float) -> "Noise":
        lam = float(lam)
        if not 0.0 < lam < 1.0:
            raise DomainError(f"lambda must lie in the open interval (0, 1), got {lam}")
        return cls(lam, math.atanh(lam))

    @classmethod
    def from_beta(cls, beta: float) -> "Noise":
        beta = float(beta)
        if not 0.0 < beta < math.inf:
            raise DomainError(f"beta must lie in (0, inf), got {beta}")
        lam = math.tanh(beta)
        if lam >= 1.0:
            raise DomainError(f"beta={beta} is too large: tanh(beta) rounds to 1")
        return cls(lam, beta)

    @property
    def z(self) -> float:
        """exp(-2 beta) = (1 - lam)/(1 + lam)."""
        return math.exp(-2.0 * self.beta)


def make_noise(*, lam: float | None = None, beta: float | None = None) -> Noise:
    if (lam is None) == (beta is None):
        raise DomainError("give exactly one of lam= or beta=")
    return Noise.from_lambda(lam) if lam is not None else Noise.from_beta(beta)


def log_sinh(x):
    """log(sinh x) for x > 0 without overflow."""
    x = np.asarray(x, dtype=float)
    out = x + np.log(-np.expm1(-2.0 * x)) - math.log(2.0)
    return out if out.ndim else float(out)


def log_two_cosh(x):
    x = np.asarray(x, dtype=float)
    out = np.abs(x) + np.log1p(np.exp(-2.0 * np.abs(x)))
    return out if out.ndim else float(out)


def coth_minus_one(x):
    """coth(x) - 1 = 2/(exp(2x) - 1), accurate for large x."""
    x = np.asarray(x, dtype=float)
    e = np.exp(-2.0 * x)
    out = 2.0 * e / -np.expm1(-2.0 * x)
    return out if out.ndim else float(out)


def coth(x):
    return 1.0 + coth_minus_one(x)


def _log_weight(N: int, two_s: int, noise: Noise) -> float:
    b = noise.beta
    return (
        log_sinh((two_s + 1) * b)
        - log_sinh(b)
        - N * log_two_cosh(b)
        + multiplicity(N, two_s).log_magnitude
    )


def weight(N: int, two_s: int, noise: Noise) -> LogValue:
    """w_N(s): probability that rho^{⊗N} is found in the spin-s block."""
    if not in_support(N, two_s):
        return LogValue.zero()
    return LogValue(1, _log_weight(N, two_s, noise))


@dataclass(frozen=True)
class WeightTable:
    N: int
    noise: Noise
    entries: dict[int, LogValue] = field(repr=False)

    @property
    def support(self) -> list[int]:
        return list(self.entries)

    def probabilities(self) -> np.ndarray:
        """Materialized weights, ordered like :attr:`support`."""
        return np.exp([v.log_magnitude for v in self.entries.values()])

    def as_dict(self) -> dict[int, float]:
        return {k: float(v) for k, v in self.entries.items()}

    def total(self) -> float:
        return math.fsum(self.probabilities())


def weight_table(N: int, noise: Noise) -> WeightTable:
    support = spin_support(N)
    entries = {t: LogValue(1, _log_weight(N, t, noise)) for t in support}
    return WeightTable(N, noise, entries)


@dataclass(frozen=True)
class SpinBlockState:
    """rho_s(beta) in the occupation basis; entry n has n favoured qubits.

    ``log_weights`` keeps the exact geometric structure where the materialized
    weights underflow (low occupations of large blocks at strong polarization).
    """

    two_s: int
    occupation_weights: np.ndarray
    log_weights: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.two_s + 1


def block_state(two_s: int, noise: Noise) -> SpinBlockState:
    if two_s < 0:
        raise DomainError(f"two_s must be non-negative, got {two_s}")
    if two_s == 0:
        return SpinBlockState(0, np.ones(1), np.zeros(1))
    b = noise.beta
    n = np.arange(two_s + 1)
    logp = 2 * b * n - b * two_s + log_sinh(b) - log_sinh((two_s + 1) * b)
    return SpinBlockState(two_s, np.exp(logp), logp)


def gamma_block(two_s: int, noise: Noise) -> float:
    """Black-cow parameter of rho_s: mean polarization per output qubit.

    The empty block (two_s = 0) gives 0.
    """
    if two_s < 0:
        raise DomainError(f"two_s must be non-negative, got {two_s}")
    if two_s == 0:
        return 0.0
    b = noise.beta
    return ((two_s + 1) * coth((two_s + 1) * b) - coth(b)) / two_s


def gamma_deficit(two_s: int, noise: Noise) -> float:
    """1 - gamma_block, without cancellation when gamma is close to 1."""
    if two_s == 0:
        return 1.0
    b = noise.beta
    return (coth_minus_one(b) - (two_s + 1) * coth_minus_one((two_s + 1) * b)) / two_s


def expect_under_weights(N: int, noise: Noise, f: Callable[[float], float]) -> float:
    """Sum over blocks of w_N(s) * f(2s/N)."""
    table = weight_table(N, noise)
    terms = []
    for two_s, w in table.entries.items():
        fx = f(two_s / N)
        if fx == 0 or w.log_magnitude < -745:
            continue
        terms.append(math.copysign(math.exp(w.log_magnitude + math.log(abs(fx))), fx))
    return math.fsum(terms)
