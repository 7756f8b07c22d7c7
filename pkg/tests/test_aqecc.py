from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from listqec.aqecc import (
    AQECC,
    PrivateAQECC,
    RSSScheme,
    build_direct_aqecc,
    build_ptc,
    corrupt_shares,
    exhaustive_private_sweep,
    lifted_detection_eps,
    plan_parameters,
    private_decode,
    private_outcome,
    ptc_eps_target,
    rss_key_part_is_verbatim,
    rss_reconstruct,
    rss_share,
    singleton_check,
)
from listqec.ael import random_regular
from listqec.css import quantum_grs, sample_random_css
from listqec.gf import field
from listqec.pauli import symplectic_form


def oracle_ptc_eps(fam) -> Fraction:
    """Enumerate each key's stabilizer group explicitly; count keys where a Pauli is a nontrivial logical."""
    p = fam.spec.p
    width = 2 * fam.n_ptc * fam.spec.m
    allv = np.array(list(product(range(p), repeat=width)), dtype=np.int64)[1:]
    counts = np.zeros(len(allv), dtype=np.int64)
    for key in range(fam.key_count):
        G = fam.gens(key)
        group = {tuple((np.array(c) @ G) % p) for c in product(range(p), repeat=G.shape[0])}
        commute = ~np.any(symplectic_form(p, allv, G) != 0, axis=1)
        inside = np.array([tuple(v) in group for v in allv])
        counts += commute & ~inside
    return Fraction(int(counts.max()), fam.key_count)


@pytest.mark.parametrize("p,lam,n_ptc", [(2, 2, 4), (3, 2, 4), (2, 3, 6)])
def test_explicit_ptc_matches_oracle(p, lam, n_ptc):
    fam = build_ptc(field(p), lam, n_ptc)
    assert fam.eps_measured == oracle_ptc_eps(fam)
    assert fam.ok and fam.eps_measured <= ptc_eps_target(p, lam, n_ptc)


def test_ptc_frozen_values():
    # (2s - 1) / q^lam for the polynomial family
    assert build_ptc(field(2), 4, 8).eps_measured == Fraction(3, 16)
    assert build_ptc(field(3), 3, 6).eps_measured == Fraction(1, 9)
    assert ptc_eps_target(2, 4, 8) == Fraction(1, 4)


def test_random_ptc_meets_target():
    fam = build_ptc(field(2), 2, 4, construction="random", seed=0)
    assert fam.ok and fam.eps_measured == oracle_ptc_eps(fam)


def test_ptc_rejects_bad_shape():
    with pytest.raises(ValueError):
        build_ptc(field(2), 3, 4)


@pytest.fixture(scope="module")
def private():
    qld = sample_random_css(12, 4, field(3), np.random.default_rng(7))
    return PrivateAQECC(qld, build_ptc(field(3), 2, 4), Fraction(1, 12))


def test_private_unique_regime_never_fails(private):
    assert private.L == 1
    rep = exhaustive_private_sweep(private)
    assert rep.max_error_failure == 0 and rep.ok


def test_lifted_detection_within_ptc_eps(private):
    assert lifted_detection_eps(private) <= private.ptc.eps_measured


def test_private_decode_rejects_on_mismatch(private):
    st_ = private.qld.stab
    E = np.zeros(2 * st_.M, dtype=np.int64)
    E[0] = 1
    s = st_.syndrome(E)
    good = private.ptc_syndrome(0, E)
    assert private_decode(private, 0, s, good).status == "ok"
    bad = (good + 1) % 3
    assert private_decode(private, 0, s, bad).status == "reject"
    assert private_outcome(private, 0, E) == "success"
    assert private_outcome(private, 0, E, strict=True) == "success"


def test_private_shape_checks():
    qld = sample_random_css(12, 4, field(3), np.random.default_rng(7))
    with pytest.raises(ValueError):
        PrivateAQECC(qld, build_ptc(field(3), 3, 6), Fraction(1, 12))


def test_rss_roundtrip_and_forgery_rate():
    sch = RSSScheme(101, 6, 2)
    assert sch.eps == Fraction(8, 101)
    rng = np.random.default_rng(0)
    wrong = 0
    for t in range(300):
        sec = rng.integers(0, 101, size=1)
        shares = rss_share(sch, sec, rng=rng)
        assert np.array_equal(rss_reconstruct(sch, shares), sec)
        bad = corrupt_shares(sch, shares, rng.choice(6, size=2, replace=False), rng)
        got = rss_reconstruct(sch, bad)
        wrong += got is None or not np.array_equal(got, sec)
    assert wrong / 300 <= float(sch.eps) + 3 * np.sqrt(float(sch.eps) / 300)


def test_rss_key_part_verbatim():
    # the full view comparison runs in the acceptance suite
    assert rss_key_part_is_verbatim(RSSScheme(5, 4, 1), [1])


def test_rss_parameter_checks():
    with pytest.raises(ValueError):
        RSSScheme(101, 5, 2)
    with pytest.raises(ValueError):
        RSSScheme(7, 8, 1)


def test_aqecc_key_mapping_and_capacity(private):
    aq = AQECC(private, RSSScheme(1009, 12, 1))
    for key in range(private.ptc.key_count):
        assert aq.secret_to_key(aq.key_to_secret(key)) == key
    assert aq.eps == private.claimed_failure + Fraction(11, 1009)
    qld6 = sample_random_css(12, 6, field(3), np.random.default_rng(8))
    big_keys = PrivateAQECC(qld6, build_ptc(field(3), 3, 6), Fraction(1, 12), L=1, check_distance=False)
    with pytest.raises(ValueError, match="capacity"):
        AQECC(big_keys, RSSScheme(13, 12, 1))


def test_direct_block_sweep_within_bound():
    outer = quantum_grs(field(3, 3), 10, Fraction(1, 5))
    inner = sample_random_css(10, 6, field(3), np.random.default_rng(6))
    ptc = build_ptc(field(3), 3, 6)
    G = random_regular(100, 1, np.random.default_rng(10))
    d = build_direct_aqecc(outer, inner, ptc, G, Fraction(1, 10))
    worst, classes = d.block_sweep()
    assert worst <= d.block_bound
    assert (worst, classes) == (Fraction(5, 27), 81)
    zero = np.zeros(d.n, dtype=np.int64)
    assert d.decode_error(zero, zero, [0] * outer.n)["success"]
    tails = [d.binomial_tail(k) for k in range(d.radius_out + 2)]
    assert tails == sorted(tails) and tails[-1] == 1.0


def test_planner_frozen_example():
    plan = plan_parameters(Fraction(1, 2), Fraction(1, 4))
    assert plan.gamma2 == Fraction(1, 16)
    assert plan.R1 == Fraction(8, 15)
    assert plan.radius >= plan.target_radius


def test_singleton_exact_at_zero_eps():
    res = singleton_check(100, 80, 4, Fraction(1, 10))
    assert (res.bound, res.slack, res.ok) == (80.0, 0.0, True)
    assert not singleton_check(100, 81, 4, Fraction(1, 10)).ok


@given(st.integers(0, 100), st.integers(0, 10**6))
def test_rss_honest_reconstruction(secret, seed):
    sch = RSSScheme(101, 7, 2)
    shares = rss_share(sch, [secret], rng=np.random.default_rng(seed))
    assert rss_reconstruct(sch, shares).tolist() == [secret]


@given(st.fractions(Fraction(1, 20), Fraction(19, 20)), st.fractions(Fraction(1, 50), Fraction(1, 2)))
def test_singleton_eps_monotone(R, delta):
    n = 40
    k = R * n
    a = singleton_check(n, k, 4, delta, 0.0).bound
    b = singleton_check(n, k, 4, delta, 0.01).bound
    assert b >= a
