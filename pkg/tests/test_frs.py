from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from listqec.classical import fold, list_decode, list_recover, rs_code
from listqec.frs import best_s, frs_decoding_radius, frs_list_recover, frs_params
from listqec.gf import field


def folded(n=16, k=4, m=4, q=17):
    return fold(rs_code(field(q), n, k), m)


def noisy(code, rng, errors):
    F = code.spec
    cw = code.encode(rng.integers(0, F.q, size=code.dim))
    r = cw.copy().reshape(code.n, code.ext)
    for i in rng.choice(code.n, size=errors, replace=False):
        r[i] = rng.integers(0, F.q, size=code.ext)
    return cw, r.reshape(-1)


def test_params_sanity():
    p = frs_params(4, 4, 4, 2, [1] * 4)
    assert p.windows == 3
    assert p.constraints == 12
    # unknowns strictly exceed constraints
    assert (p.D + 4) + 2 * (p.D + 1) > p.constraints
    with pytest.raises(ValueError):
        frs_params(4, 4, 4, 5, [1] * 4)


def test_radius_beats_half_distance():
    C = fold(rs_code(field(17), 16, 2), 4)
    half = (C.min_distance() - 1) // 2
    s = best_s(C)
    assert frs_decoding_radius(C, s) > half


@pytest.mark.parametrize("n,k,m", [(16, 2, 4), (16, 4, 4), (12, 2, 3)])
def test_list_decode_matches_brute(n, k, m):
    C = folded(n, k, m)
    s = best_s(C)
    radius = frs_decoding_radius(C, s)
    rng = np.random.default_rng(n + k + m)
    tau = radius / C.n
    for _ in range(20):
        cw, r = noisy(C, rng, radius)
        got = list_decode(C, r, tau, mode="frs", s=s)
        ref = list_decode(C, r, tau, mode="brute")
        assert {tuple(w) for w in got} == {tuple(w) for w in ref}
        assert tuple(cw) in {tuple(w) for w in got}


def test_list_recover_matches_brute():
    C = folded(16, 2, 4)
    rng = np.random.default_rng(5)
    ell = 2
    s = best_s(C, ell)
    need = C.n - frs_decoding_radius(C, s, ell)
    for _ in range(10):
        cw = C.encode(rng.integers(0, 17, size=C.dim)).reshape(C.n, C.ext)
        sets = []
        for i in range(C.n):
            other = tuple(rng.integers(0, 17, size=C.ext).tolist())
            sets.append([tuple(cw[i].tolist()), other] if i < need else [other])
        got = frs_list_recover(C, sets, need, s=s)
        ref = list_recover(C, sets, need / C.n, ell)
        assert {tuple(w) for w in got} == {tuple(w) for w in ref}


def test_below_guarantee_raises():
    C = folded(16, 4, 4)
    with pytest.raises(ValueError):
        frs_list_recover(C, [[tuple([0] * 4)] for _ in range(4)], 0, s=1)


def test_unfolded_code_rejected():
    with pytest.raises(TypeError):
        frs_list_recover(rs_code(field(17), 8, 2), [[(0,)]] * 8, 8, s=1)


@given(st.integers(0, 10**6))
def test_transmitted_word_always_listed(seed):
    C = folded(16, 4, 4)
    rng = np.random.default_rng(seed)
    s = best_s(C)
    radius = frs_decoding_radius(C, s)
    cw, r = noisy(C, rng, radius)
    got = list_decode(C, r, radius / C.n, mode="frs", s=s)
    assert tuple(cw) in {tuple(w) for w in got}
