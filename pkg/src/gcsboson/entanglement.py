"""Bipartite entanglement of coherent-state superpositions.

Splitting the modes into a left part ``1..M_L`` and a right part turns every
coherent state into a binomial sum of products of unnormalised left and right
coherent states. The left reduced density matrix is block diagonal in the
number ``n`` of particles on the right, and block ``n`` is

    rho^(n) = C(S, n) sum_jk C_jk W_k W_j^dagger,
    C_jk    = A_k A_j^* (O_R[j, k])^n,

where ``W_k`` is the left Fock vector of the truncated state ``|S-n, xi_kL>``
and ``W_j^dagger W_k = (O_L[j, k])^(S-n)``. Only the ``N x N`` overlap
matrices ``O_L`` and ``O_R`` are ever needed; the Fock dimension never enters.

Writing ``G = O_L^(S-n)`` (entrywise) and ``K = C^T``, the nonzero spectrum of
``rho^(n)`` is that of ``C(S, n) G K`` and

    Tr rho_L^alpha = sum_n C(S, n)^alpha Tr[(G K)^alpha].
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import DimensionError, NumericalError, PreconditionError, SizeGuardError
from .fock import basis_dimension, enumerate_basis
from .gcs import GCSEnsemble, fock_coefficients, sign_vectors

IMAG_TOL = 1e-9
EIG_CLIP = 1e-9
EIG_FAIL = 1e-6
BLOCK_DIM_MAX = 5000
CLOSED_FORM_MAX_S = 8


@dataclass(frozen=True, eq=False)
class BipartitionContext:
    """Left/right overlap matrices of an ensemble cut after mode ``M_L``.

    ``O_L[j, k] = sum_{i <= M_L} conj(xi_ji) xi_ki`` and ``O_R`` likewise
    over the remaining modes.
    """

    M_L: int
    O_L: np.ndarray
    O_R: np.ndarray


def partition_overlaps(ens: GCSEnsemble, M_L: int) -> BipartitionContext:
    if not 0 <= M_L <= ens.M:
        raise PreconditionError(f"split M_L={M_L} outside [0, {ens.M}]")
    left = ens.params[:, :M_L]
    right = ens.params[:, M_L:]
    return BipartitionContext(int(M_L), left.conj() @ left.T, right.conj() @ right.T)


def block_factors(ctx: BipartitionContext, amplitudes: np.ndarray, S: int,
                  n: int) -> tuple[np.ndarray, np.ndarray]:
    """``(G, K)`` for block ``n``: ``G = O_L^(S-n)`` and ``K = C^T`` (Hermitian, PSD)."""
    A = np.asarray(amplitudes)
    G = ctx.O_L ** (S - n)
    K = (A[:, np.newaxis] * A.conj()[np.newaxis, :]) * (ctx.O_R.T ** n)
    return G, K


def _check_alpha(alpha) -> int:
    if isinstance(alpha, bool) or int(alpha) != alpha or alpha < 2:
        raise PreconditionError(f"Renyi index must be an integer >= 2, got {alpha!r}")
    return int(alpha)


def _real(value: complex, what: str, tol: float = IMAG_TOL) -> float:
    if abs(value.imag) > tol:
        raise NumericalError(f"{what} has imaginary residue {value.imag:.3e}")
    return float(value.real)


def renyi_trace(ctx: BipartitionContext, amplitudes: np.ndarray, S: int, alpha: int) -> float:
    """``Tr(rho_L^alpha)`` for integer ``alpha >= 2``, ``O(alpha N^3)`` per block."""
    alpha = _check_alpha(alpha)
    total = 0j
    for n in range(S + 1):
        G, K = block_factors(ctx, amplitudes, S, n)
        X = G @ K
        total += math.comb(S, n) ** alpha * np.trace(np.linalg.matrix_power(X, alpha))
    return _real(complex(total), "Tr rho_L^alpha")


def renyi_trace_literal(ctx: BipartitionContext, amplitudes: np.ndarray, S: int,
                        alpha: int) -> float:
    """Reference evaluation of ``Tr(rho_L^alpha)`` as an explicit ``2 alpha``-fold sum.

    For ``alpha = 2``

        sum_n C(S,n)^2 sum_{k j k' j'} C_jk C_j'k' [O_L[j, k'] O_L[j', k]]^(S-n)

    and the ``alpha = 3`` case chains one more pair of indices around the
    trace. Cost is ``N^(2 alpha)``; meant for small ensembles only.
    """
    alpha = _check_alpha(alpha)
    if alpha not in (2, 3):
        raise PreconditionError("the literal evaluator supports alpha in {2, 3}")
    A = np.asarray(amplitudes)
    N = A.shape[0]
    if N ** (2 * alpha) > 5_000_000:
        raise SizeGuardError(f"literal {2 * alpha}-fold sum over N={N} is too large")
    OL, OR = ctx.O_L, ctx.O_R
    total = 0j
    idx = range(N)
    for n in range(S + 1):
        m = S - n
        b = math.comb(S, n) ** alpha
        C = [[A[k] * np.conj(A[j]) * OR[j, k] ** n for k in idx] for j in idx]
        block = 0j
        if alpha == 2:
            for k, j, kp, jp in itertools.product(idx, repeat=4):
                block += C[j][k] * C[jp][kp] * (OL[j, kp] * OL[jp, k]) ** m
        else:
            for k, j, kp, jp, kq, jq in itertools.product(idx, repeat=6):
                block += (C[j][k] * C[jp][kp] * C[jq][kq]
                          * (OL[j, kp] * OL[jp, kq] * OL[jq, k]) ** m)
        total += b * block
    return _real(complex(total), "literal Tr rho_L^alpha")


def renyi_entropy(trace_value: float, alpha: int) -> float:
    """``S_alpha = ln(Tr rho^alpha) / (1 - alpha)`` in nats."""
    alpha = _check_alpha(alpha)
    if not trace_value > 0:
        raise NumericalError(
            f"Tr rho^{alpha} = {trace_value!r} is not positive; the state is numerically degenerate")
    if trace_value > 1.0 + 1e-9:
        raise NumericalError(f"Tr rho^{alpha} = {trace_value!r} exceeds 1")
    trace_value = min(trace_value, 1.0)
    if trace_value == 1.0:
        return 0.0
    return math.log(trace_value) / (1 - alpha)


def linear_entropy(ctx: BipartitionContext, amplitudes: np.ndarray, S: int) -> float:
    return 1.0 - renyi_trace(ctx, amplitudes, S, 2)


def block_spectrum(ctx: BipartitionContext, amplitudes: np.ndarray, S: int, n: int) -> np.ndarray:
    """Nonzero-part spectrum of ``rho_L^(n)`` (length ``N``, padded with zeros).

    ``G`` is a Gram matrix, so with ``G = L L^dagger`` the product ``G K`` is
    similar on its range to the Hermitian ``L^dagger K L``, which is
    diagonalised instead of the non-normal ``G K``.
    """
    G, K = block_factors(ctx, amplitudes, S, n)
    g, V = np.linalg.eigh(0.5 * (G + G.conj().T))
    L = V * np.sqrt(np.clip(g, 0.0, None))[np.newaxis, :]
    H = math.comb(S, n) * (L.conj().T @ K @ L)
    scale = max(1.0, float(np.max(np.abs(H)))) if H.size else 1.0
    defect = float(np.max(np.abs(H - H.conj().T))) / scale if H.size else 0.0
    if defect > EIG_FAIL:
        raise NumericalError(f"block {n} is not Hermitian (defect {defect:.3e})")
    lam = np.linalg.eigvalsh(0.5 * (H + H.conj().T))
    if lam.size and lam.min() < -EIG_CLIP:
        raise NumericalError(f"block {n} has eigenvalue {lam.min():.3e} < -{EIG_CLIP}")
    return np.clip(lam, 0.0, None)


def von_neumann_entropy(ctx: BipartitionContext, amplitudes: np.ndarray, S: int) -> float:
    """``-Tr rho_L ln rho_L`` summed over the particle-number blocks."""
    total = 0.0
    for n in range(S + 1):
        G, K = block_factors(ctx, amplitudes, S, n)
        if abs(np.trace(G @ K)) * math.comb(S, n) < 1e-14:
            continue
        lam = block_spectrum(ctx, amplitudes, S, n)
        lam = lam[lam > 0]
        total -= float(np.sum(lam * np.log(lam)))
    return total


def block_density_matrix(ens: GCSEnsemble, M_L: int, n: int) -> np.ndarray:
    """Materialise ``rho_L^(n)`` in the reverse-lex Fock basis of ``S-n`` particles on ``M_L`` modes."""
    S = ens.S
    if not 0 <= n <= S:
        raise PreconditionError(f"block index n={n} outside [0, {S}]")
    dim = basis_dimension(S - n, M_L)
    if dim > BLOCK_DIM_MAX:
        raise SizeGuardError(f"left block dimension {dim} exceeds {BLOCK_DIM_MAX}")
    ctx = partition_overlaps(ens, M_L)
    if dim == 0:
        return np.zeros((0, 0), dtype=complex)
    left = enumerate_basis(S - n, M_L)
    W = fock_coefficients(left.states, S - n, ens.params[:, :M_L])
    _, K = block_factors(ctx, ens.amplitudes, S, n)
    return math.comb(S, n) * (W @ K @ W.conj().T)


def lambda_matrices(U: np.ndarray, S: int, M_L: int) -> tuple[np.ndarray, np.ndarray]:
    """``Lambda_L = T_L T_L^dagger`` and ``Lambda_R = T_R T_R^dagger``.

    ``T = U[:S, :]`` holds the first ``S`` entries of every column; ``T_L`` are
    its first ``M_L`` columns and ``T_R`` the rest.
    """
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise DimensionError(f"expected a square matrix, got {U.shape}")
    if not 1 <= S <= U.shape[0] or not 0 <= M_L <= U.shape[0]:
        raise PreconditionError(f"invalid S={S} or M_L={M_L} for M={U.shape[0]}")
    T = U[:S, :]
    TL, TR = T[:, :M_L], T[:, M_L:]
    return TL @ TL.conj().T, TR @ TR.conj().T


def purity_closed_form(U: np.ndarray, S: int, M_L: int) -> float:
    """Purity of the left part of ``R |1..1 0..0>`` written through ``U`` alone.

        Tr rho_L^2 = 2^(-4(S-1)) sum_n [(S-n)! n!]^(-2)
            sum_{k j k' j'} x_k x_j x_k' x_j'
                (x_k' L x_j . x_k L x_j')^(S-n) (x_k R x_j . x_k' R x_j')^n

    with sign vectors ``x`` (first entry +1), their products written as
    ``x_k = prod_i x_ki``, and ``L, R`` the Lambda matrices. The quadruple sum
    is evaluated term by term (``2^(4(S-1))`` terms per block).
    """
    if S > CLOSED_FORM_MAX_S:
        raise SizeGuardError(f"S={S} exceeds the closed-form guard {CLOSED_FORM_MAX_S}")
    lam_L, lam_R = lambda_matrices(U, S, M_L)
    x = sign_vectors(S)
    p = np.prod(x, axis=1)
    XL = x @ lam_L @ x.T
    XR = x @ lam_R @ x.T
    total = 0j
    for n in range(S + 1):
        Q = p[:, np.newaxis] * p[np.newaxis, :] * XR ** n
        Ln = XL ** (S - n)
        # Q[k,j] Q[k',j'] Ln[k',j] Ln[k,j'] summed over all four indices
        s = np.einsum("kj,lm,lj,km->", Q, Q, Ln, Ln, optimize=False)
        total += s / (math.factorial(S - n) * math.factorial(n)) ** 2
    return _real(complex(total) / 2.0 ** (4 * (S - 1)), "closed-form purity")
