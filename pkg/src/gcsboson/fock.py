"""Brute-force Fock-space reference implementation.

Nothing here touches the coherent-state machinery: the circuit is applied by
exponentiating its second-quantised one-body Hamiltonian in the full
``binom(M+S-1, S)``-dimensional Fock basis, and entropies come from dense
eigendecompositions of the reduced density matrix. Use it for small systems
only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exceptions import NumericalError, ParticleNumberError, SizeGuardError
from .gcs import as_fock
from .unitary import phase_matrix

BASIS_MAX = 200_000
DENSE_MAX = 6_000


def basis_dimension(S: int, M: int) -> int:
    if M == 0:
        return 1 if S == 0 else 0
    return math.comb(M + S - 1, S)


@dataclass(frozen=True, eq=False)
class FockBasis:
    """Occupation vectors of ``S`` particles on ``M`` modes, reverse-lexicographic."""

    S: int
    M: int
    states: np.ndarray
    _index: dict = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.states.shape[0]

    def index(self, occupations: Sequence[int]) -> int:
        return self._index[tuple(int(s) for s in occupations)]


def _compositions(S: int, M: int):
    if M == 0:
        if S == 0:
            yield ()
        return
    if M == 1:
        yield (S,)
        return
    for first in range(S, -1, -1):
        for rest in _compositions(S - first, M - 1):
            yield (first,) + rest


def enumerate_basis(S: int, M: int) -> FockBasis:
    """All occupation vectors with ``sum = S`` in descending lexicographic order.

    >>> enumerate_basis(2, 2).states.tolist()
    [[2, 0], [1, 1], [0, 2]]
    """
    D = basis_dimension(S, M)
    if D > BASIS_MAX:
        raise SizeGuardError(f"Fock basis of dimension {D} exceeds the guard {BASIS_MAX}")
    states = list(_compositions(S, M))
    arr = np.array(states, dtype=int).reshape(len(states), M)
    return FockBasis(S, M, arr, {s: i for i, s in enumerate(states)})


def one_body_hamiltonian(h: np.ndarray, basis: FockBasis) -> np.ndarray:
    """Dense matrix of ``sum_ij h_ij a_i^dagger a_j`` on ``basis``."""
    D, M = basis.dim, basis.M
    H = np.zeros((D, D), dtype=complex)
    for col, state in enumerate(basis.states):
        for j in range(M):
            if state[j] == 0:
                continue
            lowered = state.copy()
            lowered[j] -= 1
            amp_j = math.sqrt(state[j])
            for i in range(M):
                if h[i, j] == 0:
                    continue
                raised = lowered.copy()
                raised[i] += 1
                H[basis.index(raised), col] += h[i, j] * amp_j * math.sqrt(raised[i])
    return H


def single_particle_generator(U: np.ndarray) -> np.ndarray:
    """Hermitian ``h`` with ``expm(-1j * h) == U.T``.

    The circuit maps ``a_i^dagger -> sum_j U_ij a_j^dagger``, so in the
    one-particle sector it acts as the matrix ``U.T``. With
    ``Phi = i ln U^dagger`` we have ``U.T = conj(U^dagger)``, hence ``h = -conj(Phi)``.
    """
    return -np.conj(phase_matrix(U))


def evolve_fock(U: np.ndarray, fock: Sequence[int], t: float = 1.0,
                basis: FockBasis | None = None) -> np.ndarray:
    """State vector of ``exp(-i H t) |fock>`` on the full Fock basis."""
    occ = as_fock(fock)
    U = np.asarray(U, dtype=complex)
    if len(occ) != U.shape[0]:
        raise ParticleNumberError(f"{len(occ)} modes for a {U.shape[0]}-mode circuit")
    S = sum(occ)
    basis = basis or enumerate_basis(S, len(occ))
    if basis.dim > DENSE_MAX:
        raise SizeGuardError(f"dense evolution of dimension {basis.dim} exceeds {DENSE_MAX}")
    H = one_body_hamiltonian(single_particle_generator(U), basis)
    H = 0.5 * (H + H.conj().T)
    energies, V = np.linalg.eigh(H)
    psi0 = np.zeros(basis.dim, dtype=complex)
    psi0[basis.index(occ)] = 1.0
    return V @ (np.exp(-1j * energies * t) * (V.conj().T @ psi0))


def reduced_density(state: np.ndarray, S: int, M: int, M_L: int,
                    basis: FockBasis | None = None) -> list[np.ndarray]:
    """Blocks of the left reduced density matrix.

    ``blocks[n]`` is the block with ``n`` particles on the right (modes
    ``M_L+1..M``) and ``S-n`` on the left, expressed in the reverse-lex left
    basis of ``S-n`` particles on ``M_L`` modes. Empty blocks have shape (0, 0).
    """
    basis = basis or enumerate_basis(S, M)
    state = np.asarray(state, dtype=complex)
    blocks = []
    for n in range(S + 1):
        left = enumerate_basis(S - n, M_L)
        right = enumerate_basis(n, M - M_L)
        psi = np.zeros((left.dim, right.dim), dtype=complex)
        for a, ls in enumerate(left.states):
            for b, rs in enumerate(right.states):
                psi[a, b] = state[basis.index(np.concatenate([ls, rs]))]
        blocks.append(psi @ psi.conj().T)
    return blocks


def block_eigenvalues(blocks: list[np.ndarray], tol: float = 1e-8) -> np.ndarray:
    """Concatenated spectra of the blocks, tiny negatives clipped to 0."""
    vals = [np.linalg.eigvalsh(0.5 * (b + b.conj().T)) for b in blocks if b.size]
    lam = np.concatenate(vals) if vals else np.zeros(0)
    if lam.size and lam.min() < -tol:
        raise NumericalError(f"reduced density matrix has eigenvalue {lam.min():.3e} < -{tol}")
    return np.clip(lam, 0.0, None)


def oracle_entropies(blocks: list[np.ndarray], alphas: Sequence[int] = (2,)) -> dict:
    """Von Neumann and Renyi entropies (nats) from the dense block spectra.

    Returns a mapping with key ``"vN"`` and one integer key per requested alpha.
    """
    lam = block_eigenvalues(blocks)
    nz = lam[lam > 0]
    out: dict = {"vN": float(-np.sum(nz * np.log(nz)))}
    for a in alphas:
        out[int(a)] = float(np.log(np.sum(lam ** a)) / (1 - a))
    return out
