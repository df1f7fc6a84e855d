"""Fock states as finite superpositions of SU(M) generalized coherent states.

A generalized coherent state (GCS) of ``S`` bosons on ``M`` modes is

    |S, xi> = (S!)^(-1/2) (sum_i xi_i a_i^dagger)^S |0>,   sum_i |xi_i|^2 = 1.

Kan's identity for monomials turns any Fock state into a signed, finite sum of
such states. Because a linear-optical circuit maps each creation operator to a
linear combination of creation operators, the expansion is propagated exactly
by multiplying the parameter rows with the circuit matrix; the amplitudes never
change.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import DimensionError, ParticleNumberError, PreconditionError

MAX_PARTICLES = 20

FockState = tuple[int, ...]


def as_fock(occupations: Iterable[int]) -> FockState:
    """Validate and normalise an occupation vector to a tuple of ints."""
    occ = tuple(int(s) for s in occupations)
    if len(occ) < 1:
        raise DimensionError("a Fock state needs at least one mode")
    if any(s < 0 for s in occ):
        raise ParticleNumberError(f"negative occupation in {occ}")
    return occ


@dataclass(frozen=True, eq=False)
class GCSEnsemble:
    """Exact multi-configuration state ``sum_k A_k |S, xi_k>``.

    Attributes
    ----------
    S : int
        Particle number.
    amplitudes : ndarray, shape (N,)
        Time-independent coefficients ``A_k``.
    params : ndarray, shape (N, M)
        Parameter rows ``xi_k``.
    """

    S: int
    amplitudes: np.ndarray
    params: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        params = np.array(self.params, dtype=complex)
        if params.ndim != 2 or params.shape[0] != amps.shape[0]:
            raise DimensionError(
                f"params must have shape (N, M) with N={amps.shape[0]}, got {params.shape}")
        amps.setflags(write=False)
        params.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "S", int(self.S))

    @property
    def N(self) -> int:
        return self.params.shape[0]

    @property
    def M(self) -> int:
        return self.params.shape[1]

    def gram(self) -> np.ndarray:
        """Matrix of parameter inner products ``xi_j^* . xi_k`` (index ``[j, k]``)."""
        return self.params.conj() @ self.params.T

    def norm(self) -> float:
        """Squared norm ``sum_jk A_j^* A_k (xi_j^* . xi_k)^S``."""
        overlaps = self.gram() ** self.S
        value = self.amplitudes.conj() @ overlaps @ self.amplitudes
        return float(value.real)

    def row_norm_defect(self) -> float:
        return float(np.max(np.abs(np.sum(np.abs(self.params) ** 2, axis=1) - 1.0)))

    def with_amplitudes(self, amplitudes: np.ndarray) -> "GCSEnsemble":
        return GCSEnsemble(self.S, amplitudes, self.params)

    def to_json(self) -> str:
        return json.dumps({
            "S": self.S,
            "amplitudes": complex_to_pairs(self.amplitudes),
            "params": complex_to_pairs(self.params),
        })

    @classmethod
    def from_json(cls, text: str) -> "GCSEnsemble":
        data = json.loads(text)
        return cls(data["S"], pairs_to_complex(data["amplitudes"]),
                   pairs_to_complex(data["params"]))


def complex_to_pairs(a: np.ndarray) -> list:
    """Nested lists of ``[re, im]`` pairs, row-major."""
    a = np.asarray(a, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def pairs_to_complex(pairs) -> np.ndarray:
    a = np.asarray(pairs, dtype=float)
    if a.shape[-1] != 2:
        raise DimensionError("expected trailing [re, im] pairs")
    return a[..., 0] + 1j * a[..., 1]


def _check_supported(S: int) -> None:
    if S < 1:
        raise PreconditionError("expansion of the vacuum (S = 0) is empty")
    if S > MAX_PARTICLES:
        raise PreconditionError(f"S={S} exceeds the supported maximum {MAX_PARTICLES}")


def kan_expand_general(fock: Sequence[int]) -> GCSEnsemble:
    """Expand an arbitrary Fock state over ``prod_i (s_i + 1)`` coherent states.

    Index vectors ``nu`` with ``0 <= nu_i <= s_i`` are enumerated in
    lexicographic order. With ``h_i = s_i/2 - nu_i`` each term contributes

        A = (-1)^{sum nu} prod_i C(s_i, nu_i) |h|^S / sqrt(S! prod_i s_i!),
        xi = h / |h|.

    Terms with ``h == 0`` have zero amplitude and are dropped.
    """
    occ = as_fock(fock)
    S = sum(occ)
    _check_supported(S)
    s = np.array(occ, dtype=float)
    norm_pref = 1.0 / math.sqrt(math.factorial(S) * math.prod(math.factorial(k) for k in occ))
    amps, rows = [], []
    for nu in itertools.product(*(range(k + 1) for k in occ)):
        h = s / 2.0 - np.array(nu, dtype=float)
        hn = math.sqrt(float(h @ h))
        if hn == 0.0:
            continue
        sign = -1.0 if sum(nu) % 2 else 1.0
        binoms = math.prod(math.comb(k, v) for k, v in zip(occ, nu))
        amps.append(sign * binoms * hn ** S * norm_pref)
        rows.append(h / hn)
    return GCSEnsemble(S, np.array(amps), np.array(rows))


def kan_expand_single_occupancy(S: int, M: int) -> GCSEnsemble:
    """Reduced ``2^(S-1)``-term expansion of ``|1...1 0...0>`` (first ``S`` modes occupied).

    Fixing ``nu_1 = 0`` keeps one member of every pair of complementary index
    vectors; the partner is the same coherent state up to ``(-1)^S`` and an
    equal signed amplitude, so each kept amplitude is doubled. Row ``k`` has
    ``(nu_2, ..., nu_S)`` equal to the binary digits of ``k`` (``nu_2`` most
    significant) and ``xi_k = (x_k1, ..., x_kS, 0, ..., 0) / sqrt(S)`` with
    ``x = 1 - 2 nu``.
    """
    _check_supported(S)
    if M < S:
        raise PreconditionError(f"need at least S={S} modes, got M={M}")
    x = sign_vectors(S)
    N = x.shape[0]
    amp0 = 2.0 * (S / 4.0) ** (S / 2.0) / math.sqrt(math.factorial(S))
    amps = amp0 * np.prod(x, axis=1)
    params = np.zeros((N, M))
    params[:, :S] = x / math.sqrt(S)
    return GCSEnsemble(S, amps, params)


def sign_vectors(n: int) -> np.ndarray:
    """All ``2^(n-1)`` vectors in ``{+1, -1}^n`` with first entry ``+1``.

    Row ``k`` carries the binary digits of ``k`` (a 1 bit maps to ``-1``),
    most significant digit in column 1.
    """
    bits = np.array(list(itertools.product((0, 1), repeat=n - 1)), dtype=float)
    bits = bits.reshape(2 ** (n - 1), n - 1)
    return np.hstack([np.ones((bits.shape[0], 1)), 1.0 - 2.0 * bits])


def gcs_overlap(S: int, xi_j: np.ndarray, xi_k: np.ndarray) -> complex:
    """``<S, xi_j | S, xi_k> = (xi_j^* . xi_k)^S``; vectors need not be normalised."""
    xi_j, xi_k = np.asarray(xi_j), np.asarray(xi_k)
    if xi_j.shape != xi_k.shape:
        raise DimensionError(f"length mismatch {xi_j.shape} vs {xi_k.shape}")
    return complex(np.vdot(xi_j, xi_k) ** S)


def fock_coefficient(occupations: Sequence[int], S: int, xi: np.ndarray) -> complex:
    """``<n_1 ... n_M | S, xi> = sqrt(S! / prod n_i!) prod_i xi_i^{n_i}``."""
    occ = tuple(int(n) for n in occupations)
    xi = np.asarray(xi)
    if sum(occ) != S:
        raise ParticleNumberError(f"occupations {occ} carry {sum(occ)} particles, expected {S}")
    if len(occ) != xi.shape[-1]:
        raise DimensionError(f"{len(occ)} occupations for {xi.shape[-1]} modes")
    pref = math.sqrt(math.factorial(S) / math.prod(math.factorial(n) for n in occ))
    return complex(pref * np.prod(np.power(xi.astype(complex), occ)))


def fock_coefficients(basis: np.ndarray, S: int, params: np.ndarray) -> np.ndarray:
    """Vectorised :func:`fock_coefficient`: returns ``[b, k] = <basis_b | S, xi_k>``."""
    basis = np.asarray(basis, dtype=int).reshape(-1, np.shape(params)[-1])
    params = np.asarray(params, dtype=complex)
    if np.any(basis.sum(axis=1) != S):
        raise ParticleNumberError("basis states do not all carry S particles")
    log_fact = np.array([math.lgamma(n + 1) for n in range(S + 1)])
    pref = np.exp(0.5 * (log_fact[S] - log_fact[basis].sum(axis=1)))
    mono = np.prod(params[np.newaxis, :, :] ** basis[:, np.newaxis, :], axis=2)
    return pref[:, np.newaxis] * mono


def evolve(ens: GCSEnsemble, U: np.ndarray) -> GCSEnsemble:
    """Propagate through the circuit ``a_i^dagger -> sum_j U_ij a_j^dagger``.

    Amplitudes are unchanged and the parameter matrix becomes ``params @ U``.
    Unitarity of ``U`` is not required by the algebra.
    """
    U = np.asarray(U, dtype=complex)
    if U.shape != (ens.M, ens.M):
        raise DimensionError(f"circuit of shape {U.shape} for an ensemble on {ens.M} modes")
    return GCSEnsemble(ens.S, ens.amplitudes, ens.params @ U)


def reconstruct_amplitude(ens: GCSEnsemble, fock: Sequence[int]) -> complex:
    """Fock-basis amplitude ``<m | Psi> = sum_k A_k <m | S, xi_k>``."""
    occ = as_fock(fock)
    if sum(occ) != ens.S:
        raise ParticleNumberError(f"state {occ} has {sum(occ)} particles, ensemble has {ens.S}")
    if len(occ) != ens.M:
        raise DimensionError(f"{len(occ)} modes for an ensemble on {ens.M} modes")
    coeffs = fock_coefficients(np.array([occ]), ens.S, ens.params)[0]
    return complex(coeffs @ ens.amplitudes)


def reconstruct_state(ens: GCSEnsemble, basis: np.ndarray) -> np.ndarray:
    """Amplitudes of the ensemble on every row of ``basis``."""
    return fock_coefficients(basis, ens.S, ens.params) @ ens.amplitudes
