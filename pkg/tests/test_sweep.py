import pytest

from liectrl.sweep import run_sweep, subset_count, worker_count


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("LIECTRL_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("LIECTRL_THREADS", "zero")
    with pytest.raises(ValueError):
        worker_count()
    monkeypatch.setenv("LIECTRL_THREADS", "0")
    with pytest.raises(ValueError):
        worker_count()
    monkeypatch.delenv("LIECTRL_THREADS")
    assert worker_count() >= 1


def test_subset_counts():
    assert subset_count("standard_son", 4) == 64
    assert subset_count("son_split", 0) == 64
    assert subset_count("sl3c", 0) == 256
    assert subset_count("formation", 5) == 1024
    with pytest.raises(ValueError):
        subset_count("nope", 3)


def test_parallel_equals_serial():
    a = run_sweep("standard_son", 4, workers=1)
    b = run_sweep("standard_son", 4, workers=3)
    assert [(o.mask, o.verdicts, o.rank, o.detail) for o in a.outcomes] == \
        [(o.mask, o.verdicts, o.rank, o.detail) for o in b.outcomes]


def test_standard_n4_summary():
    r = run_sweep("standard_son", 4, workers=1)
    assert r.total == 64 and not r.mismatches
    assert len(r.controllable()) == 38 and r.min_controllable_size() == 3


def test_split_and_sl3_sweeps():
    split = run_sweep("son_split", workers=1)
    assert not split.mismatches and split.min_controllable_size() == 4
    sl3 = run_sweep("sl3c", workers=1)
    assert len(sl3.mismatches) == 28 and len(sl3.controllable()) == 72


def test_bad_sizes():
    with pytest.raises(ValueError):
        run_sweep("formation", 1)
    with pytest.raises(ValueError):
        run_sweep("standard_son", 0)
