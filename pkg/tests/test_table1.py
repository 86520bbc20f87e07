import dataclasses

import pytest

import packdist.data_files as data_files
from packdist.data_files import ChecksumMismatch, content_digest, load_bundled, manifest
from packdist.table1 import ROWS, reproduce_table1


def test_rows_cover_the_table():
    assert len(ROWS) == 13
    assert {r.dset for r in ROWS if r.starred} == {
        (1, 2), (1, 3), (1, 5), (1, 6), (1, 7), (1, 8), (1, 9), (2, 4), (2, 6)
    }


def test_upper_bounds_without_search():
    reps = {r.row.dset: r for r in reproduce_table1(searches=False)}
    assert reps[(1, 2)].upper_found == 8 and reps[(1, 2)].period_found == 54
    assert reps[(2, 4)].upper_found == 8 and reps[(2, 4)].period_found == 108
    assert reps[(2, 6)].upper_found == 9
    assert reps[(1, 2, 3)].lower_found == 19
    assert reps[(2, 3)].lower_found == 11
    assert reps[(2, 5)].lower_found == 14
    assert reps[(1, 5)].upper_found is None
    assert not any(r.errors for r in reps.values())


def test_drift_is_detected(monkeypatch):
    entries = dict(manifest())
    entries["B3"] = dataclasses.replace(entries["B3"], sha256="0" * 64)
    monkeypatch.setattr(data_files, "manifest", lambda: entries)
    with pytest.raises(ChecksumMismatch):
        load_bundled("B3")


def test_digest_ignores_comments():
    col = load_bundled("D13-p32")
    assert content_digest(col) == manifest()["D13-p32"].sha256
