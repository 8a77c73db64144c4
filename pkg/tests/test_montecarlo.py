import json
import math
from collections import Counter
from fractions import Fraction

import jsonschema
import pytest

from randsts.exactdist import commutator_class_distribution, vertex_count_pgf
from randsts.montecarlo import (
    CSV_COLUMNS,
    SUMMARY_SCHEMA,
    ExperimentConfig,
    TrialRecord,
    cycle_count_reference,
    gaussian_genus_profile,
    genus_reference,
    iter_trials,
    read_csv,
    run_experiment,
    run_trial,
    stratum_mode,
    summarize,
    write_csv,
    write_summary_json,
)
from randsts.partitions import parse_partition


def cfg(**kw):
    base = dict(model="hr", n=20, trials=200, seed=3, mu=(20,))
    base.update(kw)
    return ExperimentConfig(**base)


@pytest.mark.parametrize(
    "kw",
    [
        dict(model="bogus"),
        dict(n=0),
        dict(trials=-1),
        dict(seed=-1),
        dict(workers=0),
        dict(mu=None),
        dict(mu=(19,)),
        dict(model="hr_random", mu=None, max_parts=None),
        dict(model="hr_random", mu=None, max_parts=21),
    ],
)
def test_invalid_config(kw):
    with pytest.raises(ValueError):
        cfg(**kw)


def test_reference_values():
    mean, var = genus_reference(1000)
    assert mean == pytest.approx(497.258, abs=5e-4)
    assert var == pytest.approx(1.460, abs=5e-4)
    m, v = cycle_count_reference(1000)
    ell = round(m)
    if (1000 - ell) % 2:
        ell += 1 if m > ell else -1
    peak = 2 / math.sqrt(2 * math.pi * v)
    assert gaussian_genus_profile(1000, ell) == pytest.approx(peak, rel=0.05)
    far = int(m + 5 * math.sqrt(v)) // 2 * 2
    assert gaussian_genus_profile(1000, far) < 1e-4
    with pytest.raises(ValueError):
        gaussian_genus_profile(1000, 7)


def test_record_invariants():
    for model in ("hr", "standard", "hr_random"):
        c = cfg(model=model, mu=(20,) if model == "hr" else None, max_parts=3 if model == "hr_random" else None)
        for rec in iter_trials(c):
            assert rec.vertices % 2 == c.n % 2
            assert rec.genus == (c.n - rec.vertices) // 2 + 1
            assert rec.holonomy in "HVU"
            if model == "hr_random":
                assert len(parse_partition(rec.mu)) <= 3


def test_trial_is_pure_function_of_index():
    c = cfg()
    recs = list(iter_trials(c))
    assert run_trial(c, 57) == recs[57]
    assert list(iter_trials(cfg(trials=60))) == recs[:60]


def test_zero_trials(tmp_path):
    out = tmp_path / "r.csv"
    s = run_experiment(cfg(trials=0, csv_path=str(out)))
    assert s.trials == 0
    assert out.read_text() == ",".join(CSV_COLUMNS) + "\n"


def test_workers_do_not_change_stream(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_experiment(cfg(trials=5000, csv_path=str(a), workers=1))
    run_experiment(cfg(trials=5000, csv_path=str(b), workers=3))
    assert a.read_bytes() == b.read_bytes()


def test_csv_round_trip(tmp_path):
    recs = list(iter_trials(cfg(model="hr_random", mu=None, max_parts=4, trials=3)))
    path = tmp_path / "r.csv"
    assert write_csv(recs, str(path)) == 3
    assert len(path.read_text().splitlines()) == 4
    assert read_csv(str(path)) == recs
    assert read_csv(path.read_text(), text=True) == recs
    with pytest.raises(ValueError):
        read_csv("a,b\n1,2\n", text=True)


def test_summary_schema_and_meta(tmp_path):
    out = tmp_path / "s.json"
    s = run_experiment(cfg(trials=300, summary_path=str(out)))
    data = json.loads(out.read_text())
    jsonschema.validate(data, SUMMARY_SCHEMA)
    assert sum(data["vertex_histogram"].values()) == 300
    assert sum(data["stratum_histogram"].values()) + data["stratum_overflow"] == 300
    for v in data["holonomy_fractions"].values():
        assert 0 <= v <= 1
    # payload is stable; only meta carries run-dependent values
    again = run_experiment(cfg(trials=300)).to_json_dict()
    first = s.to_json_dict()
    first.pop("meta"), again.pop("meta")
    assert first == again


def test_summarize_matches_run():
    c = cfg(trials=400)
    a = run_experiment(c).to_json_dict()
    b = summarize(iter_trials(c), c).to_json_dict()
    a.pop("meta"), b.pop("meta")
    assert a == b


def test_single_trial_mode():
    c = cfg(trials=1)
    (rec,) = list(iter_trials(c))
    assert str(stratum_mode(summarize([rec], c))) == rec.stratum


def test_stratum_mode_tie_break():
    c = cfg(trials=2)
    recs = [
        TrialRecord(0, 20, "hr", "20", True, 1, 2, 10, "9.9", "V", 1),
        TrialRecord(1, 20, "hr", "20", True, 1, 2, 10, "18", "V", 1),
    ]
    mode = stratum_mode(summarize(recs, c))
    assert mode.orders == (18,) and mode.marked_points == 1


def _class_of(rec):
    # stratum orders plus marked points give the commutator cycle type
    orders = parse_partition(rec.stratum)
    marked = rec.n - sum(a + 1 for a in orders)
    return tuple(a + 1 for a in orders) + (1,) * marked


def _cross_validate(trials, n=6, seed=2024):
    c = ExperimentConfig(model="hr", n=n, trials=trials, seed=seed, mu=(n,))
    classes, verts = Counter(), Counter()
    for rec in iter_trials(c):
        classes[_class_of(rec)] += 1
        verts[rec.vertices] += 1
    exact_c = commutator_class_distribution((n,))
    exact_v = vertex_count_pgf((n,))
    worst = 0.0
    for g, p in exact_c.items():
        p = float(p)
        se = math.sqrt(max(p * (1 - p), 1e-12) / trials)
        worst = max(worst, abs(classes[g] / trials - p) / se)
    for x, p in enumerate(exact_v.coefficients):
        p = float(p)
        if p:
            se = math.sqrt(p * (1 - p) / trials)
            worst = max(worst, abs(verts[x] / trials - p) / se)
    assert set(classes) <= {g for g, p in exact_c.items() if p > 0}
    return worst


def test_cross_validation_small():
    assert _cross_validate(50_000) <= 4


@pytest.mark.slow
def test_cross_validation_million():
    assert _cross_validate(1_000_000) <= 4
