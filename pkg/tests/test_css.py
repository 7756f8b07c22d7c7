from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from listqec import linalg as la
from listqec.classical import rs_code
from listqec.css import (
    CSSCode,
    build_fqrs,
    class_keys,
    css_422,
    expand_css,
    fold_quantum,
    low_weight_classes,
    min_weight_in_class,
    qld_decode,
    qlr_decode,
    quantum_grs,
    sample_qwozencraft,
    sample_random_css,
    steane_code,
    syndrome_from_key,
    syndrome_key,
    verify_qld,
)
from listqec.gf import field
from listqec.pauli import brute_force_distance


def test_named_codes():
    st7 = steane_code()
    assert (st7.n, st7.k, st7.distance()) == (7, 1, 3)
    c4 = css_422()
    assert (c4.n, c4.k, c4.distance()) == (4, 2, 2)


@pytest.mark.parametrize("maker", [steane_code, css_422, lambda: quantum_grs(field(7), 6, Fraction(1, 3))])
def test_coset_distance_matches_symplectic_enumeration(maker):
    css = maker()
    assert css.distance("enumerate") == brute_force_distance(css.stab)
    assert css.distance("support") == brute_force_distance(css.stab)


def test_qgrs_parameters():
    css = quantum_grs(field(7), 6, Fraction(1, 3))
    assert css.k == 2
    # C1 has dimension 4, so the distance is n - k1 + 1
    assert css.distance() == 3
    with pytest.raises(ValueError):
        quantum_grs(field(7), 7, Fraction(1, 3))


def test_duality_preserving_encoders():
    css = quantum_grs(field(2, 3), 6, Fraction(1, 3))
    F = css.spec
    assert np.array_equal(la.matmul(F, css.enc1, css.enc2.T), np.eye(css.k_qudits, dtype=np.int64))
    assert not np.any(la.matmul(F, css.hx, css.hz.T))


def test_fq_and_fp_syndromes_agree():
    css = quantum_grs(field(2, 2), 3, Fraction(1, 3))
    F = css.spec
    rng = np.random.default_rng(1)
    for _ in range(20):
        a, b = rng.integers(0, F.q, size=css.n), rng.integers(0, F.q, size=css.n)
        s = css.syndrome(css.frame(a, b))
        assert np.array_equal(css.fp_from_fq(*css.fq_syndrome(a, b)), s)
        ex, ez = css.solve_syndrome(s)
        assert np.array_equal(css.syndrome(css.frame(ex, ez)), s)


def test_expand_and_fold_preserve_parameters():
    css = quantum_grs(field(2, 2), 3, Fraction(1, 3))
    small = expand_css(css, field(2))
    assert small.k_qudits == css.k_qudits * 2
    assert small.distance() >= css.distance()
    fq = build_fqrs(16, Fraction(1, 2), 4, field(17))
    assert (fq.n, fq.ext, fq.k) == (4, 4, 2)
    assert fold_quantum(steane_code(), 1) is not None


def test_wozencraft_rate():
    css = sample_qwozencraft(2, 4, field(2), np.random.default_rng(3))
    assert css.n == 8 and css.k_qudits == 4


def qld_oracle_match(css, tau):
    stab = css.stab
    oracle = low_weight_classes(stab, int(tau * css.n))
    for sk, classes in oracle.items():
        s = syndrome_from_key(stab, sk)
        got = qld_decode(css, s, tau, prune=True)
        assert class_keys(stab, got) == classes
        assert all(f.weight <= int(tau * css.n) for f in got)
        full = qld_decode(css, s, tau)
        assert classes <= class_keys(stab, full)


def test_qld_matches_oracle_on_steane():
    qld_oracle_match(steane_code(), Fraction(2, 7))


def test_qld_matches_oracle_on_422():
    qld_oracle_match(css_422(), Fraction(1, 4))


def test_syndrome_key_roundtrip():
    stab = steane_code().stab
    s = np.array([1, 0, 1, 1, 0, 1])
    assert np.array_equal(syndrome_from_key(stab, syndrome_key(stab, s)), s)


def test_verify_qld_unique_within_half_distance():
    rep = verify_qld(steane_code(), Fraction(1, 7), ell=1)
    assert rep.ok and rep.max_count == 1


def test_min_weight_in_class():
    css = steane_code()
    g = css.stab.generator_frames()[0]
    w, rep = min_weight_in_class(css, g)
    assert w == 0 and rep.is_identity()


def test_qlr_contains_true_error():
    css = quantum_grs(field(7), 6, Fraction(1, 3))
    rng = np.random.default_rng(4)
    a, b = np.zeros(6, dtype=np.int64), np.zeros(6, dtype=np.int64)
    a[0], b[1] = 3, 5
    E = css.frame(a, b)
    s = css.syndrome(E)
    sets = [[(int(a[i]), int(b[i])), (int(rng.integers(7)), int(rng.integers(7)))] for i in range(6)]
    out = qlr_decode(css, s, sets, Fraction(1), 2)
    assert css.stab.canonical(E).tobytes() in {css.stab.canonical(f).tobytes() for f in out}


def test_bad_pair_rejected():
    F = field(7)
    with pytest.raises(ValueError):
        CSSCode(rs_code(F, 6, 2), rs_code(F, 6, 2))


@given(st.integers(0, 10**6))
def test_random_css_is_valid(seed):
    css = sample_random_css(8, 2, field(3), np.random.default_rng(seed))
    assert css.k_qudits == 2
    assert css.stab.r == 6
