from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from listqec import linalg as la
from listqec.classical import (
    CosetCode,
    LinearCode,
    agreement_counts,
    berlekamp_welch,
    coset_list_decode,
    even_weight_code,
    expand,
    fold,
    grs_build,
    grs_dual,
    GRSSpec,
    hamming_code,
    list_decode,
    list_recover,
    rs_code,
    sample_nested_pair,
    unique_decode,
)
from listqec.gf import field


def all_words(code: LinearCode) -> np.ndarray:
    """Every codeword via itertools over messages (independent of code.codewords)."""
    F = code.spec
    msgs = np.array(list(itertools.product(range(F.q), repeat=code.dim)), dtype=np.int64)
    out = np.zeros((len(msgs), code.N), dtype=np.int64)
    for i, m in enumerate(msgs):
        acc = np.zeros(code.N, dtype=np.int64)
        for c, row in zip(m, code.generator):
            acc = F.add(acc, F.mul(int(c), row))
        out[i] = acc
    return out


def sym_weight(code, w) -> int:
    return int(np.count_nonzero(np.asarray(w).reshape(code.n, code.ext).any(axis=1)))


def oracle_distance(code) -> int:
    return min(sym_weight(code, w) for w in all_words(code) if w.any())


def test_hamming_distance_is_three():
    H = hamming_code(3)
    assert (H.n, H.dim) == (7, 4)
    assert H.min_distance("enumerate") == 3
    assert H.min_distance("support") == 3


@pytest.mark.parametrize("q,n,k", [(5, 4, 2), (7, 6, 3), (8, 7, 2), (9, 8, 4), (11, 6, 2)])
def test_rs_distance_matches_oracle(q, n, k):
    C = rs_code(field(*_pm(q)), n, k)
    d = oracle_distance(C)
    assert d == n - k + 1
    assert C.min_distance("enumerate") == d
    assert C.min_distance("support") == d


def _pm(q):
    for p in (2, 3, 5, 7, 11, 13, 17):
        m = 1
        while p**m < q:
            m += 1
        if p**m == q:
            return p, m
    raise ValueError(q)


def test_grs_dual_is_the_dual_code():
    F = field(7)
    g = GRSSpec.make(F, 6, 2, multipliers=[1, 2, 3, 4, 5, 6])
    C = grs_build(g)
    D = grs_build(grs_dual(g))
    assert D.same_code(C.dual())
    assert not np.any(la.matmul(F, C.generator, D.generator.T))


def test_parity_annihilates_and_dual_involution():
    C = hamming_code(3)
    assert np.all(C.contains(all_words(C)))
    assert C.dual().dual().same_code(C)
    assert even_weight_code(field(3), 5).dim == 4


@pytest.mark.parametrize("q,n,k", [(7, 6, 2), (8, 7, 3), (11, 10, 4)])
def test_berlekamp_welch_matches_brute(q, n, k):
    F = field(*_pm(q))
    C = rs_code(F, n, k)
    rng = np.random.default_rng(q)
    t = (n - k) // 2
    for _ in range(30):
        cw = C.encode(rng.integers(0, F.q, size=k))
        e = np.zeros(n, dtype=np.int64)
        pos = rng.choice(n, size=rng.integers(0, t + 1), replace=False)
        e[pos] = rng.integers(1, F.q, size=len(pos))
        r = F.add(cw, e)
        assert np.array_equal(berlekamp_welch(C, r, t), cw)
        assert np.array_equal(unique_decode(C, r, t, mode="brute"), cw)
        assert np.array_equal(unique_decode(C, r, t, mode="syndrome"), cw)


def test_unique_decode_warns_beyond_half_distance():
    C = rs_code(field(7), 6, 2)
    with pytest.warns(UserWarning):
        unique_decode(C, np.zeros(6, dtype=np.int64), 3, mode="brute")


@pytest.mark.parametrize("tau", [Fraction(1, 6), Fraction(2, 6), Fraction(3, 6)])
def test_list_decode_matches_ball_oracle(tau):
    F = field(5)
    C = rs_code(F, 4, 2)
    words = all_words(C)
    rng = np.random.default_rng(1)
    for _ in range(10):
        r = rng.integers(0, F.q, size=4)
        got = list_decode(C, r, tau)
        radius = int(tau * 4)
        expect = {tuple(w) for w in words if np.count_nonzero(w != r) <= radius}
        assert {tuple(w) for w in got} == expect


def test_list_recover_matches_oracle():
    F = field(5)
    C = rs_code(F, 4, 2)
    words = all_words(C)
    rng = np.random.default_rng(2)
    for _ in range(10):
        sets = [list(rng.choice(5, size=2, replace=False)) for _ in range(4)]
        got = list_recover(C, sets, Fraction(3, 4), ell=2)
        expect = {tuple(w) for w in words if sum(int(w[i]) in sets[i] for i in range(4)) >= 3}
        assert {tuple(w) for w in got} == expect
        if len(got):
            assert np.all(agreement_counts(C, got, sets) >= 3)


def test_coset_list_is_deduplicated():
    C = hamming_code(3)
    inner = C.dual()
    cc = CosetCode(C, inner)
    r = np.array([1, 0, 0, 0, 0, 0, 0])
    reps = coset_list_decode(cc, r, Fraction(2, 7))
    full = list_decode(C, r, Fraction(2, 7))
    canon = {tuple(x) for x in cc.canonical(full)}
    assert len(reps) == len(canon)
    assert cc.min_distance() == 3


def test_fold_keeps_dimension_and_distance_grows():
    C = rs_code(field(17), 16, 4)
    Fc = fold(C, 4)
    assert (Fc.n, Fc.ext, Fc.dim) == (4, 4, 4)
    assert Fc.min_distance("support") == oracle_distance(Fc)


def test_expand_pairs_alpha_and_beta_with_trace():
    big = field(2, 2)
    C = rs_code(big, 3, 1)
    D = C.dual()
    Ca, Db = expand(C, field(2), "alpha"), expand(D, field(2), "beta")
    assert (Ca.dim, Db.dim) == (2 * C.dim, 2 * D.dim)
    assert not np.any(la.matmul(field(2), Ca.generator, Db.generator.T))


@given(st.integers(4, 8), st.data())
def test_nested_pair_contains_dual(n, data):
    k1 = data.draw(st.integers((n + 1) // 2, n))
    C1, C2 = sample_nested_pair(n, k1, n - k1, field(3), np.random.default_rng(data.draw(st.integers(0, 99))))
    assert C1.contains_code(C2.dual())


@given(st.integers(0, 10**6))
def test_syndrome_is_linear(seed):
    rng = np.random.default_rng(seed)
    C = rs_code(field(7), 6, 3)
    F = C.spec
    a, b = rng.integers(0, 7, size=6), rng.integers(0, 7, size=6)
    assert np.array_equal(C.syndrome(F.add(a, b)), F.add(C.syndrome(a), C.syndrome(b)))
