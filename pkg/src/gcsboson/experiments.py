"""Averaged entanglement sweeps over Haar-random circuits.

Every experiment follows the same loop: for realization ``r`` a seed is
derived from ``(master seed, r)``, a Haar unitary is sampled, the
single-occupancy input ``|1..1 0..0>`` is propagated (optionally through a
fractional power of the unitary) and Renyi entropies are evaluated at the
requested cuts. Entropies, not traces, are averaged over realizations.

Realizations run on a thread pool; results are collected in realization order
so the output does not depend on the number of workers.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .entanglement import partition_overlaps, renyi_entropy, renyi_trace
from .exceptions import ConfigError
from .gcs import MAX_PARTICLES, evolve, kan_expand_single_occupancy
from .unitary import fractional_power, haar_unitary

logger = logging.getLogger(__name__)

EXPERIMENTS = ("page-curve", "alpha-sweep", "mode-saturation", "buildup", "asymmetric",
               "permanent", "validate")

CSV_HEADER = ["experiment", "S", "M", "M_L", "alpha", "t", "realizations",
              "entropy_mean", "entropy_stderr", "wall_time_s"]

_KEYS = {
    "experiment": "experiment",
    "S": "S",
    "M": "M",
    "M-list": "M_list",
    "alpha-list": "alpha_list",
    "t": "t",
    "t-list": "t_list",
    "ML-list": "ML_list",
    "realizations": "realizations",
    "seed": "seed",
    "output": "output",
    "tolerances": "tolerances",
    "inject-fault": "inject_fault",
    "matrix": "matrix",
}

Sampler = Callable[[int, int], np.ndarray]


@dataclass
class ExperimentConfig:
    """Parameters of one experiment; JSON keys are the kebab-case names in ``_KEYS``.

    ``ML_list`` is a list of cut positions, ``"all"`` (``0..M``) or ``"half"``
    (``M // 2``).
    """

    experiment: str = "page-curve"
    S: int = 4
    M: int = 50
    M_list: list[int] | None = None
    alpha_list: list[int] = field(default_factory=lambda: [2])
    t: float = 1.0
    t_list: list[float] | None = None
    ML_list: list[int] | str = "all"
    realizations: int = 20
    seed: int = 0
    output: str | None = None
    tolerances: dict = field(default_factory=dict)
    inject_fault: bool = False
    matrix: list | None = None

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}")
        if self.experiment in ("permanent", "validate"):
            return
        if not isinstance(self.S, int) or not 1 <= self.S <= MAX_PARTICLES:
            raise ConfigError(f"S must be an integer in [1, {MAX_PARTICLES}], got {self.S!r}")
        for M in self.mode_numbers():
            if not isinstance(M, int) or M < self.S:
                raise ConfigError(f"mode number {M!r} must be an integer >= S={self.S}")
        if not self.alpha_list or any(isinstance(a, bool) or not isinstance(a, int) or a < 2
                                      for a in self.alpha_list):
            raise ConfigError(f"alpha-list must hold integers >= 2, got {self.alpha_list!r}")
        if not isinstance(self.realizations, int) or self.realizations < 1:
            raise ConfigError(f"realizations must be a positive integer, got {self.realizations!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed!r}")
        for t in self.times():
            if not isinstance(t, (int, float)) or not 0.0 <= t <= 1.0:
                raise ConfigError(f"t values must lie in [0, 1], got {t!r}")
        if isinstance(self.ML_list, str):
            if self.ML_list not in ("all", "half"):
                raise ConfigError(f"ML-list must be a list, 'all' or 'half', got {self.ML_list!r}")
        else:
            for M in self.mode_numbers():
                bad = [c for c in self.ML_list if not isinstance(c, int) or not 0 <= c <= M]
                if bad:
                    raise ConfigError(f"cuts {bad} outside [0, {M}]")

    def mode_numbers(self) -> list[int]:
        return list(self.M_list) if self.M_list is not None else [self.M]

    def times(self) -> list[float]:
        return [float(t) for t in self.t_list] if self.t_list is not None else [float(self.t)]

    def cuts(self, M: int) -> list[int]:
        if self.ML_list == "all":
            return list(range(M + 1))
        if self.ML_list == "half":
            return [M // 2]
        return list(self.ML_list)

    @classmethod
    def from_dict(cls, data: dict, text: str | None = None) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("configuration must be a JSON object")
        kwargs = {}
        for key, value in data.items():
            if key not in _KEYS:
                raise ConfigError(_where(text, key) + f"unknown key {key!r}")
            kwargs[_KEYS[key]] = value
        try:
            return cls(**kwargs)
        except ConfigError as exc:
            key = _guess_key(str(exc), data)
            raise ConfigError(_where(text, key) + str(exc)) from None
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(data, text)


def _where(text: str | None, key: str | None) -> str:
    if not text or not key:
        return ""
    needle = f'"{key}"'
    for lineno, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return f"line {lineno}: "
    return ""


def _guess_key(message: str, data: dict) -> str | None:
    inverse = {
        "S must": "S", "mode number": "M-list" if "M-list" in data else "M",
        "alpha-list": "alpha-list", "realizations": "realizations", "seed": "seed",
        "t values": "t-list" if "t-list" in data else "t", "ML-list": "ML-list",
        "cuts": "ML-list", "unknown experiment": "experiment",
    }
    for prefix, key in inverse.items():
        if message.startswith(prefix):
            return key
    return None


@dataclass(frozen=True)
class EntropyRecord:
    experiment: str
    S: int
    M: int
    M_L: int
    alpha: int
    t: float
    realizations: int
    entropy_mean: float
    entropy_stderr: float
    wall_time_s: float = 0.0


def realization_seed(master: int, index: int) -> int:
    """64-bit seed for realization ``index``, mixed from the master seed by SeedSequence."""
    ss = np.random.SeedSequence(entropy=int(master), spawn_key=(int(index),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _points(cfg: ExperimentConfig) -> list[tuple[int, float, int, int]]:
    return [(M, t, cut, a)
            for M in cfg.mode_numbers()
            for t in cfg.times()
            for cut in cfg.cuts(M)
            for a in cfg.alpha_list]


def _realization(cfg: ExperimentConfig, sampler: Sampler, r: int) -> tuple[np.ndarray, np.ndarray]:
    seed = realization_seed(cfg.seed, r)
    values, times = [], []
    S = cfg.S
    for M in cfg.mode_numbers():
        U = sampler(M, seed)
        initial = kan_expand_single_occupancy(S, M)
        for t in cfg.times():
            ens = evolve(initial, fractional_power(U, t))
            for cut in cfg.cuts(M):
                start = time.perf_counter()
                ctx = partition_overlaps(ens, cut)
                for a in cfg.alpha_list:
                    values.append(renyi_entropy(renyi_trace(ctx, ens.amplitudes, S, a), a))
                    times.append(time.perf_counter() - start)
                    start = time.perf_counter()
    return np.array(values), np.array(times)


def run_sweep(cfg: ExperimentConfig, *, sampler: Sampler = haar_unitary, threads: int = 1,
              record_timing: bool = False) -> list[EntropyRecord]:
    """Average entropies over realizations at every ``(M, t, M_L, alpha)`` point of ``cfg``."""
    R = cfg.realizations
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda r: _realization(cfg, sampler, r), range(R)))
    else:
        results = [_realization(cfg, sampler, r) for r in range(R)]
    values = np.stack([v for v, _ in results])
    wall = np.stack([w for _, w in results]).sum(axis=0)
    mean = values.mean(axis=0)
    stderr = values.std(axis=0, ddof=1) / math.sqrt(R) if R > 1 else np.zeros_like(mean)
    records = []
    for i, (M, t, cut, a) in enumerate(_points(cfg)):
        records.append(EntropyRecord(
            cfg.experiment, cfg.S, M, cut, a, t, R, float(mean[i]), float(stderr[i]),
            float(wall[i]) if record_timing else 0.0))
    logger.info("%s: %d records from %d realizations", cfg.experiment, len(records), R)
    return records


def _with(cfg: ExperimentConfig, experiment: str, **defaults) -> ExperimentConfig:
    data = asdict(cfg)
    data["experiment"] = experiment
    for key, value in defaults.items():
        if data[key] is None:
            data[key] = value
    return ExperimentConfig(**data)


def run_page_curve(cfg: ExperimentConfig, **kw) -> list[EntropyRecord]:
    """Entropy versus cut position at ``t = 1``."""
    return run_sweep(_with(cfg, "page-curve"), **kw)


def run_alpha_sweep(cfg: ExperimentConfig, **kw) -> list[EntropyRecord]:
    """Page curves for several Renyi indices (default 2, 3, 4)."""
    if cfg.alpha_list == [2]:
        cfg = ExperimentConfig(**{**asdict(cfg), "alpha_list": [2, 3, 4]})
    return run_sweep(_with(cfg, "alpha-sweep"), **kw)


def run_mode_saturation(cfg: ExperimentConfig, **kw) -> list[EntropyRecord]:
    """Equal-partition entropy for each mode number in ``M_list``."""
    data = {**asdict(cfg), "ML_list": "half"}
    if data["M_list"] is None:
        data["M_list"] = [cfg.M]
    return run_sweep(_with(ExperimentConfig(**data), "mode-saturation"), **kw)


def run_buildup(cfg: ExperimentConfig, **kw) -> list[EntropyRecord]:
    """Entropy versus the exponent ``t`` of ``U**t``.

    All cuts are swept by default because for ``t < 1`` the largest entropy is
    not at the equal partition; :func:`maximum_curve` extracts it.
    """
    data = asdict(cfg)
    if data["t_list"] is None:
        data["t_list"] = [round(0.1 * i, 10) for i in range(11)]
    return run_sweep(_with(ExperimentConfig(**data), "buildup"), **kw)


def run_asymmetric(cfg: ExperimentConfig, **kw) -> list[EntropyRecord]:
    """Full cut sweep at (small) exponents ``t``."""
    data = asdict(cfg)
    if data["t_list"] is None:
        data["t_list"] = [0.1, 0.5, 1.0]
    return run_sweep(_with(ExperimentConfig(**data), "asymmetric"), **kw)


RUNNERS = {
    "page-curve": run_page_curve,
    "alpha-sweep": run_alpha_sweep,
    "mode-saturation": run_mode_saturation,
    "buildup": run_buildup,
    "asymmetric": run_asymmetric,
}


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        text = f"{float(value):.12g}"
        return "0" if text == "-0" else text
    return str(value)


def records_to_csv(records: Sequence[EntropyRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow([_fmt(getattr(rec, name)) for name in CSV_HEADER])
    return buf.getvalue()


def records_to_json(records: Sequence[EntropyRecord]) -> str:
    return json.dumps([asdict(r) for r in records], indent=2)


def select(records: Sequence[EntropyRecord], **where) -> list[EntropyRecord]:
    """Records whose attributes equal all given keyword values."""
    return [r for r in records if all(getattr(r, k) == v for k, v in where.items())]


def curve(records: Sequence[EntropyRecord], x: str = "M_L", **where) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(x, mean, stderr)`` arrays for the records matching ``where``, sorted by ``x``."""
    rows = sorted(select(records, **where), key=lambda r: getattr(r, x))
    return (np.array([getattr(r, x) for r in rows]),
            np.array([r.entropy_mean for r in rows]),
            np.array([r.entropy_stderr for r in rows]))


def maximum_curve(records: Sequence[EntropyRecord], x: str = "t", **where) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Largest averaged entropy over all cuts, as a function of ``x``.

    Returns ``(x values, maximum, cut position of the maximum)``.
    """
    rows = select(records, **where)
    xs = sorted({getattr(r, x) for r in rows})
    best = [max((r for r in rows if getattr(r, x) == v), key=lambda r: r.entropy_mean) for v in xs]
    return (np.array(xs), np.array([b.entropy_mean for b in best]),
            np.array([b.M_L for b in best]))
