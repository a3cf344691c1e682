"""Brute-force dense simulation on (C^2)^{⊗n}, n <= 10.

Everything here works with explicit 2^n x 2^n matrices and never consults the
closed-form weights or fidelities, so it can adjudicate them.  Qubit 0 is the
leftmost tensor factor; the favoured state psi = (1, 0) is basis index 0.

The full optimal purifier is built without any closed form: spin blocks come
from Lagrange projectors in the Casimir L^2, the H_s ⊗ K_{N,s} structure from
highest-weight vectors and the lowering operator, and the cloner from the
permutation-averaged symmetrizer.

Also hosts the seeded sampler for the natural purifier's outcome distribution.
"""
from __future__ import annotations

from functools import lru_cache
import numpy as np

from .repspace import DomainError, spin_support
from .states import Noise, block_state, weight_table

MAX_QUBITS = 10
MAX_FIDELITY_N = 8
MAX_FIDELITY_M = 6

_SX = np.array([[0, 1], [1, 0]], dtype=complex) / 2
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex) / 2
_SZ = np.array([[1, 0], [0, -1]], dtype=complex) / 2


def _guard(n: int, limit: int = MAX_QUBITS, what: str = "qubits") -> None:
    if n < 0 or n > limit:
        raise DomainError(f"dense oracle supports 0..{limit} {what}, got {n}")


def n_qubits(op: np.ndarray) -> int:
    d = op.shape[0]
    n = d.bit_length() - 1
    if op.shape != (d, d) or 1 << n != d:
        raise ValueError(f"not an operator on qubits: shape {op.shape}")
    return n


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _site_op(a: np.ndarray, i: int, n: int) -> np.ndarray:
    return np.kron(np.kron(np.eye(2 ** i), a), np.eye(2 ** (n - i - 1)))


def qubit_state(noise: Noise) -> np.ndarray:
    return np.diag([(1 + noise.lam) / 2, (1 - noise.lam) / 2]).astype(complex)


def dense_product_state(N: int, noise: Noise, unitary: np.ndarray | None = None) -> np.ndarray:
    """rho^{⊗N}, optionally rotated to (U rho U^†)^{⊗N}."""
    _guard(N)
    rho = qubit_state(noise)
    if unitary is not None:
        rho = unitary @ rho @ unitary.conj().T
    out = np.ones((1, 1), dtype=complex)
    for _ in range(N):
        out = np.kron(out, rho)
    return out


@lru_cache(maxsize=None)
def total_spin_ops(N: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(L1, L2, L3, L^2) for N spin-1/2 sites."""
    _guard(N)
    d = 2 ** N
    L = [np.zeros((d, d), dtype=complex) for _ in range(3)]
    for i in range(N):
        for Lk, a in zip(L, (_SX, _SY, _SZ)):
            Lk += _site_op(a, i, N)
    Lsq = L[0] @ L[0] + L[1] @ L[1] + L[2] @ L[2]
    return tuple(_freeze(x) for x in (*L, Lsq))


def _casimir(two_s: int) -> float:
    return two_s * (two_s + 2) / 4


@lru_cache(maxsize=None)
def casimir_projector(N: int, two_s: int) -> np.ndarray:
    """Projector onto the total-spin-s subspace, as a polynomial in L^2."""
    _guard(N)
    support = spin_support(N)
    if two_s not in support:
        raise DomainError(f"two_s={two_s} is not in the spin support of N={N}")
    Lsq = total_spin_ops(N)[3]
    eye = np.eye(2 ** N, dtype=complex)
    P = eye.copy()
    c = _casimir(two_s)
    for t in support:
        if t == two_s:
            continue
        ct = _casimir(t)
        P = P @ (Lsq - ct * eye) / (c - ct)
    return _freeze(P)


def oracle_weight(N: int, two_s: int, noise: Noise) -> float:
    """tr(P_s rho^{⊗N})."""
    P = casimir_projector(N, two_s)
    return float(np.real(np.trace(P @ dense_product_state(N, noise))))


def _swap_perm(n: int, i: int, j: int) -> np.ndarray:
    """Basis-index permutation exchanging qubits i and j."""
    idx = np.arange(2 ** n)
    bi = (idx >> (n - 1 - i)) & 1
    bj = (idx >> (n - 1 - j)) & 1
    flip = bi != bj
    mask = (1 << (n - 1 - i)) | (1 << (n - 1 - j))
    return np.where(flip, idx ^ mask, idx)


@lru_cache(maxsize=None)
def symmetrizer(M: int) -> np.ndarray:
    """Average of all M! qubit-permutation unitaries.

    Built from the coset factorization sum_{S_M} = sum_{S_{M-1}} (1 + sum_j (j M)),
    so no permutation is enumerated twice and M = 10 stays cheap.
    """
    _guard(M)
    S = np.ones((1, 1))
    for m in range(1, M + 1):
        base = np.kron(S, np.eye(2))
        acc = base.copy()
        for j in range(m - 1):
            acc += base[:, _swap_perm(m, j, m - 1)]
        S = acc / m
    return _freeze(S.astype(complex))


def _lowering(N: int) -> np.ndarray:
    L1, L2, _, _ = total_spin_ops(N)
    return L1 - 1j * L2


def _ladder(top: np.ndarray, lower: np.ndarray, two_s: int) -> np.ndarray:
    """Columns ordered by occupation n = 0..2s, n = 2s being ``top``."""
    cols = [top]
    v = top
    for _ in range(two_s):
        v = lower @ v
        nrm = np.linalg.norm(v, axis=0)
        v = v / nrm
        cols.append(v)
    return np.stack(cols[::-1])


@lru_cache(maxsize=None)
def dicke_basis(n: int) -> np.ndarray:
    """Occupation basis of the symmetric subspace, shape (2^n, n+1).

    Column k is the normalized symmetrization of psi^{⊗k} ⊗ phi^{⊗(n-k)}.
    """
    _guard(n)
    top = np.zeros((2 ** n, 1), dtype=complex)
    top[0, 0] = 1
    if n == 0:
        return _freeze(top)
    lad = _ladder(top, _lowering(n), n)  # (n+1, 2^n, 1)
    return _freeze(lad[:, :, 0].T.copy())


@lru_cache(maxsize=None)
def schur_block_basis(N: int, two_s: int) -> np.ndarray:
    """Orthonormal |s, n, k> spanning the spin-s block, shape (2s+1, 2^N, dim K).

    Highest-weight vectors are taken from the range of P_s inside the
    L3 = s eigenspace; the rest of each multiplet follows by lowering.
    """
    P = casimir_projector(N, two_s)
    n_up = (N + two_s) // 2
    idx = np.array([i for i in range(2 ** N) if N - bin(i).count("1") == n_up])
    sub = P[np.ix_(idx, idx)]
    vals, vecs = np.linalg.eigh((sub + sub.conj().T) / 2)
    keep = vecs[:, vals > 0.5]
    top = np.zeros((2 ** N, keep.shape[1]), dtype=complex)
    top[idx, :] = keep
    return _freeze(_ladder(top, _lowering(N), two_s))


def natural_purifier_predual(rho: np.ndarray) -> dict[int, np.ndarray]:
    """Unnormalized 2s-qubit outputs of the natural purifier, keyed by two_s.

    The trace of each output is the probability of that outcome.
    """
    N = n_qubits(rho)
    _guard(N)
    out = {}
    for two_s in spin_support(N):
        V = schur_block_basis(N, two_s)  # (n, x, k)
        block = np.einsum("axk,xy,byk->ab", V.conj(), rho, V)
        D = dicke_basis(two_s)
        out[two_s] = D @ block @ D.conj().T
    return out


def _check_qubits(theta: np.ndarray, n: int) -> None:
    if n_qubits(theta) != n:
        raise DomainError(f"theta must act on {n} qubits")


def cloner_predual_apply(two_s: int, M: int, theta: np.ndarray) -> np.ndarray:
    """Optimal 2s -> M cloner: (2s+1)/(M+1) S_M (theta ⊗ 1^{M-2s}) S_M."""
    if not M > two_s:
        raise DomainError(f"cloner needs M > 2s, got M={M}, two_s={two_s}")
    _guard(M)
    _check_qubits(theta, two_s)
    S = symmetrizer(two_s)
    if np.abs(S @ theta @ S - theta).max() > 1e-10:
        raise DomainError("theta is not supported on the symmetric subspace")
    SM = symmetrizer(M)
    big = np.kron(theta, np.eye(2 ** (M - two_s)))
    return (two_s + 1) / (M + 1) * SM @ big @ SM


def partial_trace_front(theta: np.ndarray, k: int) -> np.ndarray:
    """Trace out the first k qubits."""
    n = n_qubits(theta)
    a, b = 2 ** k, 2 ** (n - k)
    return np.einsum("aiaj->ij", theta.reshape(a, b, a, b))


def reduce_predual_apply(two_s: int, M: int, theta: np.ndarray) -> np.ndarray:
    """Discard the first 2s - M qubits."""
    if not 0 <= M <= two_s:
        raise DomainError(f"reduction needs M <= 2s, got M={M}, two_s={two_s}")
    _guard(two_s)
    _check_qubits(theta, two_s)
    return partial_trace_front(theta, two_s - M)


def embed_block_state(two_s: int, noise: Noise) -> np.ndarray:
    """rho_s(beta) placed on the symmetric subspace of 2s qubits."""
    _guard(two_s)
    D = dicke_basis(two_s)
    p = block_state(two_s, noise).occupation_weights
    return (D * p) @ D.conj().T


def optimal_purifier_predual(rho: np.ndarray, M: int) -> np.ndarray:
    """M-qubit output of the optimal purifier on an arbitrary N-qubit input."""
    _guard(M)
    out = np.zeros((2 ** M, 2 ** M), dtype=complex)
    for two_s, theta in natural_purifier_predual(rho).items():
        if two_s < M:
            out += cloner_predual_apply(two_s, M, theta)
        else:
            out += reduce_predual_apply(two_s, M, theta)
    return out


def one_site_marginal(theta: np.ndarray, i: int) -> np.ndarray:
    """Reduced 2x2 state of qubit i."""
    n = n_qubits(theta)
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows = list(letters[:n])
    cols = list(rows)
    cols[i] = "Z"
    subscripts = "".join(rows) + "".join(cols) + "->" + rows[i] + "Z"
    return np.einsum(subscripts, theta.reshape((2,) * (2 * n)))


def oracle_fidelities(
    N: int, M: int, noise: Noise, unitary: np.ndarray | None = None
) -> tuple[float, float]:
    """(F_one, F_all) of the optimal N -> M purifier by dense simulation.

    With ``unitary`` the input is (U rho U^†)^{⊗N} and the target is U psi.
    """
    _guard(N, MAX_FIDELITY_N, "input qubits")
    if not 1 <= M <= MAX_FIDELITY_M:
        raise DomainError(f"dense fidelity runs support 1..{MAX_FIDELITY_M} outputs, got {M}")
    U = np.eye(2, dtype=complex) if unitary is None else unitary
    out = optimal_purifier_predual(dense_product_state(N, noise, unitary), M)
    psi = U[:, 0]
    target = np.ones(1, dtype=complex)
    for _ in range(M):
        target = np.kron(target, psi)
    f_all = float(np.real(target.conj() @ out @ target))
    f_sites = [
        float(np.real(psi.conj() @ one_site_marginal(out, i) @ psi)) for i in range(M)
    ]
    return min(f_sites), f_all


def sample_instrument(N: int, noise: Noise, seed: int, count: int) -> dict[int, int]:
    """Draw ``count`` outcomes of the natural purifier, returned as two_s -> count.

    Inverse-CDF sampling over the weight table with a fresh numpy
    ``default_rng(seed)`` (PCG64) per call, so equal arguments give equal
    histograms.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    if not 1 <= N <= 2000:
        raise DomainError(f"sampler supports 1 <= N <= 2000, got {N}")
    table = weight_table(N, noise)
    cdf = np.cumsum(table.probabilities())
    cdf /= cdf[-1]
    rng = np.random.default_rng(seed)
    idx = np.searchsorted(cdf, rng.random(count), side="right")
    idx = np.minimum(idx, len(cdf) - 1)
    counts = np.bincount(idx, minlength=len(cdf))
    return {t: int(c) for t, c in zip(table.support, counts)}
