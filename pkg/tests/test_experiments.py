import json

import numpy as np
import pytest

from gcsboson.exceptions import ConfigError
from gcsboson.experiments import (CSV_HEADER, ExperimentConfig, curve, maximum_curve,
                                  realization_seed, records_to_csv, records_to_json,
                                  run_alpha_sweep, run_buildup, run_mode_saturation,
                                  run_page_curve, run_sweep, select)


def small(**kw):
    base = dict(S=2, M=6, realizations=3, seed=1)
    base.update(kw)
    return ExperimentConfig(**base)


def test_identity_sampler_gives_zero_entropy():
    recs = run_sweep(small(), sampler=lambda M, seed: np.eye(M))
    assert all(abs(r.entropy_mean) <= 1e-12 for r in recs)
    assert all(r.entropy_stderr == 0 for r in recs)


def test_seed_mixing_is_distinct_and_stable():
    seeds = [realization_seed(0, r) for r in range(50)]
    assert len(set(seeds)) == 50
    assert realization_seed(0, 3) == realization_seed(0, 3) != realization_seed(1, 3)


def test_single_realization_has_zero_stderr():
    recs = run_page_curve(small(realizations=1))
    assert all(r.entropy_stderr == 0 for r in recs)


def test_page_curve_shape():
    recs = run_page_curve(small())
    x, mean, _ = curve(recs, alpha=2)
    assert x.tolist() == list(range(7))
    assert abs(mean[0]) <= 1e-12 and abs(mean[-1]) <= 1e-12
    assert np.all(mean >= 0)


def test_alpha_sweep_ordering():
    recs = run_alpha_sweep(small(S=3, M=8))
    for cut in range(9):
        s2, s3, s4 = (select(recs, M_L=cut, alpha=a)[0].entropy_mean for a in (2, 3, 4))
        assert s2 >= s3 - 1e-9 and s3 >= s4 - 1e-9


def test_mode_saturation_uses_half_cut():
    recs = run_mode_saturation(small(M_list=[4, 6, 8]))
    assert [(r.M, r.M_L) for r in recs] == [(4, 2), (6, 3), (8, 4)]


def test_buildup_default_grid_and_zero_time():
    recs = run_buildup(small())
    ts, best, _ = maximum_curve(recs)
    assert len(ts) == 11 and ts[0] == 0
    assert abs(best[0]) <= 1e-9


def test_csv_format_and_determinism():
    a = records_to_csv(run_page_curve(small()))
    b = records_to_csv(run_page_curve(small()))
    assert a == b
    lines = a.strip().split("\n")
    assert lines[0].split(",") == CSV_HEADER
    assert len(lines) == 1 + 7
    assert json.loads(records_to_json(run_page_curve(small())))[0]["experiment"] == "page-curve"


def test_threads_do_not_change_results():
    one = run_page_curve(small(realizations=6), threads=1)
    four = run_page_curve(small(realizations=6), threads=4)
    assert max(abs(x.entropy_mean - y.entropy_mean) for x, y in zip(one, four)) <= 1e-12


@pytest.mark.parametrize("bad", [
    {"S": 0}, {"S": 3, "M": 2}, {"alpha-list": [1]}, {"alpha-list": [2.5]},
    {"realizations": 0}, {"seed": -1}, {"t": 1.5}, {"ML-list": [99]}, {"ML-list": "middle"},
    {"experiment": "nope"}, {"colour": 1},
])
def test_config_errors(bad):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(bad)


def test_config_error_reports_line():
    text = '{\n  "S": 3,\n  "realizations": -2\n}'
    with pytest.raises(ConfigError, match="line 3"):
        ExperimentConfig.from_json(text)
    with pytest.raises(ConfigError, match="line 1"):
        ExperimentConfig.from_json("{oops")


def test_kebab_keys_map_to_fields():
    cfg = ExperimentConfig.from_json(json.dumps(
        {"experiment": "buildup", "S": 3, "M": 9, "t-list": [0, 1], "ML-list": "half",
         "alpha-list": [2, 3], "realizations": 2, "seed": 7}))
    assert cfg.times() == [0.0, 1.0] and cfg.cuts(9) == [4] and cfg.alpha_list == [2, 3]
