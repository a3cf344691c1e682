"""Exact rational references at rational lambda (e^{2 beta} = (1+lam)/(1-lam)).

These use counting arguments only: magnetic levels of each spin block,
geometric occupation weights, and hypergeometric survival of favoured qubits
under partial trace.
"""
from fractions import Fraction
from math import comb

from qpurify.repspace import multiplicity_exact, spin_support


def weight(N: int, two_s: int, lam: Fraction) -> Fraction:
    up, down = (1 + lam) / 2, (1 - lam) / 2
    levels = sum(up ** ((N + k) // 2) * down ** ((N - k) // 2) for k in range(-two_s, two_s + 1, 2))
    return multiplicity_exact(N, two_s) * levels


def occupations(two_s: int, lam: Fraction) -> list[Fraction]:
    ratio = (1 + lam) / (1 - lam)
    p = [ratio ** n for n in range(two_s + 1)]
    total = sum(p)
    return [x / total for x in p]


def gamma(two_s: int, lam: Fraction) -> Fraction:
    if two_s == 0:
        return Fraction(0)
    return sum(p * (2 * n - two_s) for n, p in enumerate(occupations(two_s, lam))) / two_s


def gain(M: int, two_s: int) -> Fraction:
    return Fraction(M, two_s) if two_s >= M else Fraction(M + 2, two_s + 2)


def block_one(M: int, two_s: int, lam: Fraction) -> Fraction:
    if two_s == 0:
        return Fraction(1, 2)
    return (1 + gain(M, two_s) * Fraction(two_s, M) * gamma(two_s, lam)) / 2


def block_all(M: int, two_s: int, lam: Fraction) -> Fraction:
    p = occupations(two_s, lam)
    if two_s < M:
        return Fraction(two_s + 1, M + 1) * p[-1]
    return sum(p[K] * Fraction(comb(K, M), comb(two_s, M)) for K in range(M, two_s + 1))


def one_max(N: int, M: int, lam: Fraction) -> Fraction:
    return sum(weight(N, t, lam) * block_one(M, t, lam) for t in spin_support(N))


def all_max(N: int, M: int, lam: Fraction) -> Fraction:
    return sum(weight(N, t, lam) * block_all(M, t, lam) for t in spin_support(N))
