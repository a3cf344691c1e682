"""Spin-block bookkeeping for N qubits.

Spins are always carried as the integer ``two_s = 2s`` so that half-integral
spins index exactly.  Combinatorial quantities are available on two routes:
exact Python integers, and a log-domain :class:`LogValue` that stays finite for
N in the thousands.

The log route is backed by :func:`math.lgamma` (the C library ``lgamma``);
``tests/test_repspace.py`` checks it against exact factorials up to 60.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.special import logsumexp


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class LogValue:
    """A real number stored as ``sign * exp(log_magnitude)``.

    ``sign == 0`` encodes exact zero; ``log_magnitude`` is then ``-inf`` and
    carries no information.
    """

    sign: int
    log_magnitude: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(0, -math.inf)

    @classmethod
    def from_log(cls, log_magnitude: float, sign: int = 1) -> "LogValue":
        if sign == 0 or log_magnitude == -math.inf:
            return cls.zero()
        return cls(sign, float(log_magnitude))

    @classmethod
    def from_float(cls, x: float) -> "LogValue":
        if x == 0:
            return cls.zero()
        if not math.isfinite(x):
            raise ValueError(f"cannot encode non-finite value {x!r}")
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    @property
    def value(self) -> float:
        return float(self)

    def __mul__(self, other: "LogValue") -> "LogValue":
        if not isinstance(other, LogValue):
            return NotImplemented
        if self.sign == 0 or other.sign == 0:
            return LogValue.zero()
        return LogValue(self.sign * other.sign, self.log_magnitude + other.log_magnitude)

    def __truediv__(self, other: "LogValue") -> "LogValue":
        if not isinstance(other, LogValue):
            return NotImplemented
        if other.sign == 0:
            raise ZeroDivisionError("LogValue division by zero")
        if self.sign == 0:
            return LogValue.zero()
        return LogValue(self.sign * other.sign, self.log_magnitude - other.log_magnitude)

    def __add__(self, other: "LogValue") -> "LogValue":
        if not isinstance(other, LogValue):
            return NotImplemented
        return log_sum([self, other])

    def __neg__(self) -> "LogValue":
        return LogValue(-self.sign, self.log_magnitude)


def log_sum(values: Iterable[LogValue]) -> LogValue:
    """Signed log-sum-exp of a collection of LogValues."""
    values = [v for v in values if v.sign != 0]
    if not values:
        return LogValue.zero()
    logs = np.array([v.log_magnitude for v in values])
    signs = np.array([v.sign for v in values], dtype=float)
    total, sign = logsumexp(logs, b=signs, return_sign=True)
    if sign == 0 or total == -np.inf:
        return LogValue.zero()
    return LogValue(int(sign), float(total))


def spin_support(N: int) -> list[int]:
    """Values of two_s occurring in (C^2)^{⊗N}, ascending."""
    if N < 1:
        raise DomainError(f"N must be a positive integer, got {N}")
    return list(range(N % 2, N + 1, 2))


def in_support(N: int, two_s: int) -> bool:
    return N >= 1 and 0 <= two_s <= N and (N - two_s) % 2 == 0


_STIRLING_MIN = 30
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


def _stirling_remainder(x: int) -> float:
    # lgamma(x+1) - [(x+1/2) log x - x + log(2 pi)/2]; truncation error < 1e-16 for x >= 30
    if x < _STIRLING_MIN:
        return math.lgamma(x + 1) - ((x + 0.5) * math.log(x) - x + _HALF_LOG_2PI)
    r = 1.0 / x
    r2 = r * r
    return r * (1 / 12 - r2 * (1 / 360 - r2 * (1 / 1260 - r2 / 1680)))


def log_binomial(n: int, k: int) -> LogValue:
    """log C(n, k); zero outside 0 <= k <= n.

    Evaluated as a difference of log-gamma values in Stirling form, so that
    the O(n log n) parts cancel analytically instead of in floating point
    (plain ``lgamma(n+1) - ...`` loses ~1e-12 absolute at n ~ 2000).  Short
    ranges fall back to a direct sum of logs.
    """
    if n < 0 or k < 0 or k > n:
        return LogValue.zero()
    m = min(k, n - k)
    if m == 0:
        return LogValue(1, 0.0)
    if m < _STIRLING_MIN:
        return LogValue(1, math.fsum(math.log((n - j) / (j + 1)) for j in range(m)))
    p = k / n
    val = math.fsum((
        -k * math.log(p),
        -(n - k) * math.log1p(-p),
        0.5 * math.log(n / (2 * math.pi * k * (n - k))),
        _stirling_remainder(n),
        -_stirling_remainder(k),
        -_stirling_remainder(n - k),
    ))
    return LogValue(1, val)


def multiplicity_exact(N: int, two_s: int) -> int:
    """dim K_{N,s} as an exact integer (0 off the support)."""
    if not in_support(N, two_s):
        return 0
    num = (two_s + 1) * math.comb(N, (N - two_s) // 2) * 2
    den = N + two_s + 2
    q, r = divmod(num, den)
    assert r == 0, (N, two_s)
    return q


def multiplicity(N: int, two_s: int) -> LogValue:
    """dim K_{N,s} = (2s+1)/(N/2+s+1) * C(N, N/2-s), in log form."""
    if not in_support(N, two_s):
        return LogValue.zero()
    lb = log_binomial(N, (N - two_s) // 2).log_magnitude
    return LogValue(1, math.log(two_s + 1) + lb - math.log((N + two_s) / 2 + 1))
