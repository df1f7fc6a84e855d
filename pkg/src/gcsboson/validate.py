"""Cross-checks between independent routes through the library.

Each suite computes the same quantity two ways and records the largest
deviation it saw. :func:`run_validate` returns a :class:`ValidationReport`;
the CLI turns a failing report into exit status 2.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import entanglement as ent
from .fock import enumerate_basis, evolve_fock, oracle_entropies, reduced_density
from .gcs import (evolve, kan_expand_general, kan_expand_single_occupancy, reconstruct_state)
from .permanent import (permanent_glynn, permanent_naive, permanent_ryser, permanent_via_gcs)
from .unitary import fractional_power, haar_unitary

DEFAULT_TOLERANCES = {
    "permanent": 1e-10,
    "kan": 1e-12,
    "evolution": 1e-9,
    "entropy-oracle": 1e-8,
    "literal-sum": 1e-10,
    "gcs-permanent": 1e-9,
    "closed-purity": 1e-8,
}


@dataclass
class SuiteResult:
    name: str
    max_deviation: float
    tolerance: float
    runtime_s: float
    cases: int

    @property
    def passed(self) -> bool:
        return bool(self.max_deviation <= self.tolerance)


@dataclass
class ValidationReport:
    suites: list[SuiteResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def table(self) -> str:
        lines = [f"{'suite':<16} {'status':<6} {'max deviation':>14} {'tolerance':>10} "
                 f"{'cases':>6} {'runtime [s]':>12}"]
        for s in self.suites:
            lines.append(f"{s.name:<16} {'PASS' if s.passed else 'FAIL':<6} {s.max_deviation:>14.3e} "
                         f"{s.tolerance:>10.1e} {s.cases:>6d} {s.runtime_s:>12.3f}")
        return "\n".join(lines)


def _relative(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(b))


def suite_permanent(rng: np.random.Generator, count: int = 60) -> tuple[float, int]:
    worst = 0.0
    for i in range(count):
        n = 2 + i % 6
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        naive, ryser, glynn = permanent_naive(A), permanent_ryser(A), permanent_glynn(A)
        worst = max(worst, _relative(ryser, naive), _relative(glynn, naive), _relative(glynn, ryser))
    return worst, count


def suite_kan(rng: np.random.Generator, fault: bool = False) -> tuple[float, int]:
    worst, cases = 0.0, 0
    for S in range(1, 4):
        for M in range(1, 4):
            basis = enumerate_basis(S, M)
            for target in basis.states:
                ens = kan_expand_general(target)
                if fault:
                    amps = np.array(ens.amplitudes)
                    amps[0] *= 1 + 1e-3
                    ens = ens.with_amplitudes(amps)
                expected = np.zeros(basis.dim)
                expected[basis.index(target)] = 1.0
                worst = max(worst, float(np.max(np.abs(reconstruct_state(ens, basis.states) - expected))))
                cases += 1
    return worst, cases


def suite_evolution(rng: np.random.Generator, seeds: int = 3) -> tuple[float, int]:
    worst, cases = 0.0, 0
    for S, M in [(2, 3), (3, 4)]:
        basis = enumerate_basis(S, M)
        fock = (1,) * S + (0,) * (M - S)
        for _ in range(seeds):
            U = haar_unitary(M, int(rng.integers(2**32)))
            for t in (0.0, 0.5, 1.0):
                gcs = reconstruct_state(evolve(kan_expand_single_occupancy(S, M), fractional_power(U, t)),
                                        basis.states)
                ref = evolve_fock(U, fock, t, basis)
                worst = max(worst, float(np.max(np.abs(gcs - ref))))
                cases += 1
    return worst, cases


def suite_entropy(rng: np.random.Generator) -> tuple[float, float, int]:
    worst_oracle, worst_literal, cases = 0.0, 0.0, 0
    for S, M in [(2, 4), (3, 5)]:
        U = haar_unitary(M, int(rng.integers(2**32)))
        ens = evolve(kan_expand_single_occupancy(S, M), U)
        psi = evolve_fock(U, (1,) * S + (0,) * (M - S))
        for M_L in range(M + 1):
            ctx = ent.partition_overlaps(ens, M_L)
            ref = oracle_entropies(reduced_density(psi, S, M, M_L), (2, 3))
            for a in (2, 3):
                tr = ent.renyi_trace(ctx, ens.amplitudes, S, a)
                worst_oracle = max(worst_oracle, abs(ent.renyi_entropy(tr, a) - ref[a]))
                worst_literal = max(worst_literal,
                                    abs(tr - ent.renyi_trace_literal(ctx, ens.amplitudes, S, a)))
            worst_oracle = max(worst_oracle,
                               abs(ent.von_neumann_entropy(ctx, ens.amplitudes, S) - ref["vN"]))
            cases += 1
    return worst_oracle, worst_literal, cases


def suite_gcs_permanent(rng: np.random.Generator, count: int = 20) -> tuple[float, int]:
    worst = 0.0
    for i in range(count):
        n = 2 + i % 5
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        worst = max(worst, _relative(permanent_via_gcs(A), permanent_glynn(A)))
    hom = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    worst = max(worst, abs(permanent_via_gcs(hom)))
    return worst, count + 1


def suite_closed_purity(rng: np.random.Generator, count: int = 6) -> tuple[float, int]:
    worst, cases = 0.0, 0
    for i in range(count):
        S = 2 + i % 3
        M = S + 2 + i
        U = haar_unitary(M, int(rng.integers(2**32)))
        ens = evolve(kan_expand_single_occupancy(S, M), U)
        for M_L in range(M + 1):
            ctx = ent.partition_overlaps(ens, M_L)
            worst = max(worst, abs(ent.purity_closed_form(U, S, M_L)
                                   - ent.renyi_trace(ctx, ens.amplitudes, S, 2)))
            cases += 1
    return worst, cases


def run_validate(seed: int = 0, tolerances: dict | None = None,
                 inject_fault: bool = False) -> ValidationReport:
    """Run every cross-check suite with seeded inputs.

    ``inject_fault`` perturbs one amplitude of every Kan expansion by a
    relative ``1e-3`` so the reconstruction suite must fail.
    """
    tol = {**DEFAULT_TOLERANCES, **(tolerances or {})}
    rng = np.random.default_rng(seed)
    report = ValidationReport()

    def timed(fn: Callable, *args, **kwargs):
        start = time.perf_counter()
        out = fn(*args, **kwargs)
        return out, time.perf_counter() - start

    (dev, n), dt = timed(suite_permanent, rng)
    report.suites.append(SuiteResult("permanent", dev, tol["permanent"], dt, n))
    (dev, n), dt = timed(suite_kan, rng, fault=inject_fault)
    report.suites.append(SuiteResult("kan", dev, tol["kan"], dt, n))
    (dev, n), dt = timed(suite_evolution, rng)
    report.suites.append(SuiteResult("evolution", dev, tol["evolution"], dt, n))
    (dev_o, dev_l, n), dt = timed(suite_entropy, rng)
    report.suites.append(SuiteResult("entropy-oracle", dev_o, tol["entropy-oracle"], dt, n))
    report.suites.append(SuiteResult("literal-sum", dev_l, tol["literal-sum"], dt, n))
    (dev, n), dt = timed(suite_gcs_permanent, rng)
    report.suites.append(SuiteResult("gcs-permanent", dev, tol["gcs-permanent"], dt, n))
    (dev, n), dt = timed(suite_closed_purity, rng)
    report.suites.append(SuiteResult("closed-purity", dev, tol["closed-purity"], dt, n))
    return report
