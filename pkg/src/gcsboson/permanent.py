"""Matrix permanents and boson-sampling amplitudes.

Three independent evaluators are provided:

* :func:`permanent_naive` sums over all permutations and serves as the oracle,
* :func:`permanent_ryser` is Ryser's inclusion-exclusion formula,
* :func:`permanent_glynn` is Glynn's sign-vector formula.

Both exponential algorithms walk a reflected binary Gray code so that every
step changes one column (Ryser) or one sign (Glynn) and the running sums are
updated in ``O(n)``.
"""
from __future__ import annotations

import itertools
import math
from typing import Sequence

import numpy as np

from .exceptions import DimensionError, ParticleNumberError, SizeGuardError
from .gcs import as_fock, evolve, kan_expand_single_occupancy, reconstruct_amplitude

NAIVE_MAX = 10
GRAY_MAX = 30


class _CompensatedSum:
    """Neumaier summation applied to real and imaginary parts separately."""

    __slots__ = ("re", "im", "c_re", "c_im")

    def __init__(self):
        self.re = self.im = self.c_re = self.c_im = 0.0

    @staticmethod
    def _step(total, comp, x):
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        return t, comp

    def add(self, z: complex) -> None:
        self.re, self.c_re = self._step(self.re, self.c_re, z.real)
        self.im, self.c_im = self._step(self.im, self.c_im, z.imag)

    @property
    def value(self) -> complex:
        return complex(self.re + self.c_re, self.im + self.c_im)


def _square(A, limit: int) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"permanent needs a square matrix, got shape {A.shape}")
    if A.shape[0] > limit:
        raise SizeGuardError(f"{A.shape[0]}x{A.shape[0]} matrix exceeds the size guard {limit}")
    return A


def _gray_flips(m: int):
    """Yield ``(bit, now_set)`` for the ``2^m - 1`` steps of the reflected Gray code."""
    for k in range(1, 1 << m):
        bit = (k & -k).bit_length() - 1
        gray = k ^ (k >> 1)
        yield bit, bool(gray >> bit & 1)


def permanent_naive(A) -> complex:
    """Permanent by explicit summation over all ``n!`` permutations."""
    A = _square(A, NAIVE_MAX)
    n = A.shape[0]
    total = 0j
    rows = range(n)
    for perm in itertools.permutations(range(n)):
        p = 1 + 0j
        for i in rows:
            p *= A[i, perm[i]]
        total += p
    return complex(total)


def permanent_ryser(A) -> complex:
    """Ryser's formula with Gray-code ordered column subsets, ``O(n 2^n)``.

    per(A) = (-1)^n sum_{T subset cols} (-1)^{|T|} prod_i sum_{j in T} A_ij
    """
    A = _square(A, GRAY_MAX)
    n = A.shape[0]
    if n == 0:
        return 1 + 0j
    row_sums = np.zeros(n, dtype=complex)
    acc = _CompensatedSum()
    size = 0
    for col, added in _gray_flips(n):
        if added:
            row_sums += A[:, col]
            size += 1
        else:
            row_sums -= A[:, col]
            size -= 1
        term = complex(np.prod(row_sums))
        acc.add(term if size % 2 == 0 else -term)
    return acc.value if n % 2 == 0 else -acc.value


def permanent_glynn(A) -> complex:
    """Glynn's formula over the ``2^(n-1)`` sign vectors with ``x_1 = +1``.

    per(A) = 2^(1-n) sum_x (prod_i x_i) prod_m (x . A[:, m])
    """
    A = _square(A, GRAY_MAX)
    n = A.shape[0]
    if n == 0:
        return 1 + 0j
    col_dots = A.sum(axis=0)
    acc = _CompensatedSum()
    acc.add(complex(np.prod(col_dots)))
    sign = 1
    # Gray code over the signs of rows 2..n
    for bit, flipped in _gray_flips(n - 1):
        row = bit + 1
        if flipped:
            col_dots -= 2.0 * A[row]
        else:
            col_dots += 2.0 * A[row]
        sign = -sign
        term = complex(np.prod(col_dots))
        acc.add(term if sign > 0 else -term)
    return acc.value / 2.0 ** (n - 1)


def permanent_via_gcs(U) -> complex:
    """Permanent as ``<1...1| R |1...1>`` computed from the coherent-state expansion.

    The all-ones input is expanded over ``2^(n-1)`` coherent states, propagated
    through ``U`` and projected back on ``|1...1>``. Works for any square matrix.
    """
    U = _square(U, GRAY_MAX)
    n = U.shape[0]
    if n == 0:
        return 1 + 0j
    ens = evolve(kan_expand_single_occupancy(n, n), U)
    return reconstruct_amplitude(ens, (1,) * n)


def submatrix(U, n_in: Sequence[int], m_out: Sequence[int]) -> np.ndarray:
    """Boson-sampling submatrix ``U_nm``.

    Row ``k`` of ``U`` is repeated ``m_out[k]`` times and column ``k`` is
    repeated ``n_in[k]`` times, so rows are labelled by output modes and columns
    by input modes: ``result[a, b] = U[out_a, in_b]``.
    """
    U = np.asarray(U, dtype=complex)
    n_in, m_out = as_fock(n_in), as_fock(m_out)
    if len(n_in) != U.shape[1] or len(m_out) != U.shape[0]:
        raise DimensionError(f"occupation vectors do not match a {U.shape} matrix")
    if sum(n_in) != sum(m_out):
        raise ParticleNumberError(f"input has {sum(n_in)} particles, output has {sum(m_out)}")
    rows = np.repeat(np.arange(len(m_out)), m_out)
    cols = np.repeat(np.arange(len(n_in)), n_in)
    return U[np.ix_(rows, cols)]


def transition_amplitude(U, n_in: Sequence[int], m_out: Sequence[int]) -> complex:
    """``per(U_nm) / sqrt(prod_k n_k! m_k!)``; reduces to ``per(U_nm)`` without collisions."""
    sub = submatrix(U, n_in, m_out)
    norm = math.prod(math.factorial(k) for k in as_fock(n_in)) * \
        math.prod(math.factorial(k) for k in as_fock(m_out))
    per = permanent_ryser(sub) if sub.shape[0] > 0 else 1 + 0j
    return per / math.sqrt(norm)


def output_probability(U, n_in: Sequence[int], m_out: Sequence[int]) -> float:
    """``|per(U_nm)|^2 / (prod n_k! prod m_k!)``.

    This is the probability of detecting ``m_out`` when ``n_in`` enters the
    circuit that sends input mode ``b`` to ``sum_a U[a, b] a_a^dagger``, i.e.
    the circuit simulated by ``evolve(ensemble, U.T)``.
    """
    return abs(transition_amplitude(U, n_in, m_out)) ** 2
