from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from listqec.aqecc import PrivateAQECC, build_ptc
from listqec.css import sample_random_css
from listqec.gf import field
from listqec.sim import (
    CSV_COLUMNS,
    AdversaryModel,
    ResultsTable,
    TrialRecord,
    run_private_trials,
    trial_rng,
    wilson,
)


def test_wilson_reference_values():
    lo, hi = wilson(5, 10)
    assert lo == pytest.approx(0.2365896, abs=1e-6)
    assert hi == pytest.approx(0.7634104, abs=1e-6)
    assert wilson(0, 10)[0] == 0.0
    assert wilson(0, 0) == (0.0, 1.0)


def test_trial_streams_are_independent_of_order():
    a = trial_rng(3, 7).integers(0, 1 << 30, size=4)
    trial_rng(3, 1).integers(0, 10)
    b = trial_rng(3, 7).integers(0, 1 << 30, size=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, trial_rng(3, 8).integers(0, 1 << 30, size=4))


def test_adversary_models():
    F = field(3)
    rng = np.random.default_rng(0)
    burst = AdversaryModel(3, "burst")
    supp = burst.choose_support(5, rng)
    assert len(supp) == 3 and len({(int(i) - int(supp[0])) % 5 for i in supp}) == 3
    fixed = AdversaryModel(2, "fixed", fixed_support=(1, 4))
    assert fixed.choose_support(6, rng).tolist() == [1, 4]
    ident = AdversaryModel(2, error="identity")
    _, v = ident.sample(F, 6, 1, rng)
    assert not v.any()
    with pytest.raises(ValueError):
        AdversaryModel(1, "fixed", fixed_support=(0, 1))
    with pytest.raises(ValueError):
        AdversaryModel(1, "diagonal")


@given(st.integers(0, 6), st.integers(0, 10**6))
def test_sampled_error_lives_on_support(w, seed):
    F = field(2, 2)
    supp, v = AdversaryModel(w).sample(F, 6, 1, np.random.default_rng(seed))
    M = 6 * F.m
    hit = {i for i in range(6) if v[i * 2 : i * 2 + 2].any() or v[M + i * 2 : M + i * 2 + 2].any()}
    assert hit == set(supp.tolist()) and len(supp) == w


def test_table_outputs():
    recs = [TrialRecord(i, 1, 1, (i,), 0, "ab", "success" if i else "reject") for i in range(4)]
    tab = ResultsTable("t", recs, 1, Fraction(1, 2))
    assert tab.counts() == {"success": 3, "miscorrect": 0, "reject": 1}
    assert tab.failure_rate == 0.25 and tab.within_bound()
    rows = list(csv.reader(io.StringIO(tab.to_csv())))
    assert tuple(rows[0]) == CSV_COLUMNS and len(rows) == 5
    summary = json.loads(tab.to_json())
    assert summary["bound"] == {"fraction": "1/2", "decimal": 0.5}
    with pytest.raises(ValueError):
        TrialRecord(0, 1, 0, (), None, "", "lost")


def test_private_trials_reproducible_across_threads():
    qld = sample_random_css(12, 4, field(3), np.random.default_rng(7))
    pa = PrivateAQECC(qld, build_ptc(field(3), 2, 4), Fraction(1, 12))
    adv = AdversaryModel(1)
    one = run_private_trials(pa, adv, 40, 11, threads=1)
    two = run_private_trials(pa, adv, 40, 11, threads=3)
    assert one.to_csv() == two.to_csv()
    assert one.failures == 0
    with pytest.raises(ValueError):
        run_private_trials(pa, AdversaryModel(2), 1, 0)
