from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import sqrt

import numpy as np
import pytest
from hypothesis import given, strategies as st

from listqec.ael import (
    BipartiteGraph,
    ael_list_decode,
    ael_unique_decode,
    block_loads,
    build_ael,
    build_expander,
    complete_graph,
    expperm_check,
    overload_sweep,
    matching_graph,
    pi_apply,
    pi_invert,
    pi_table,
    pseudorandom_eps,
    random_regular,
    spectral_certificate,
)
from listqec.css import class_keys, css_422, low_weight_classes, quantum_grs, steane_code, syndrome_from_key
from listqec.gf import field


def naive_eps(G: BipartiteGraph) -> float:
    """max |E(S,T) - r|S||T|/n| / (r sqrt(|S||T|)) over all nonempty S, T by loops."""
    n, r = G.n, G.r
    edges = [(i, int(G.adjacency[i, j, 0])) for i in range(n) for j in range(r)]
    best = 0.0
    subsets = [c for k in range(1, n + 1) for c in combinations(range(n), k)]
    for S in subsets:
        Sset = set(S)
        for T in subsets:
            Tset = set(T)
            e = sum(1 for a, b in edges if a in Sset and b in Tset)
            best = max(best, abs(e - r * len(S) * len(T) / n) / (r * sqrt(len(S) * len(T))))
    return best


@pytest.mark.parametrize("n,r,seed", [(4, 2, 0), (5, 2, 1), (5, 3, 2)])
def test_pseudorandom_eps_matches_loops(n, r, seed):
    G = random_regular(n, r, np.random.default_rng(seed))
    assert pseudorandom_eps(G).eps == pytest.approx(naive_eps(G), abs=1e-12)
    # the mixing-lemma certificate can only be weaker
    assert spectral_certificate(G) >= pseudorandom_eps(G).eps - 1e-12


def test_complete_graph_is_perfectly_mixing():
    assert pseudorandom_eps(complete_graph(5)).eps == pytest.approx(0.0, abs=1e-12)
    G, eps = build_expander(8, 6, 0.9, seed=1)
    assert eps <= 0.9 and pseudorandom_eps(G).eps <= 0.9 + 1e-12


def test_graph_validation():
    with pytest.raises(ValueError):
        BipartiteGraph(2, 1, np.array([[[0, 0]], [[0, 0]]]))
    G = random_regular(6, 2, np.random.default_rng(0))
    assert BipartiteGraph.from_config(G.to_config()).adjacency.tolist() == G.adjacency.tolist()


@given(st.integers(2, 8), st.integers(1, 3), st.integers(0, 1000))
def test_permutation_is_a_bijection(n, r, seed):
    G = random_regular(n, r, np.random.default_rng(seed))
    perm = pi_table(G)
    assert sorted(perm.tolist()) == list(range(n * r))
    idx = np.arange(n * r)
    assert np.array_equal(pi_invert(G, pi_apply(G, idx)), idx)
    assert G.biadjacency().sum(axis=0).tolist() == [r] * n


def test_block_loads_by_hand():
    G = matching_graph(4)
    assert block_loads(G, [0, 2]).tolist() == [1, 0, 1, 0]
    assert expperm_check(G, [0, 2], 1.0) == 2


def test_overload_sweep_has_no_violations():
    G, _ = build_expander(8, 3, 0.9, seed=3)
    eps0 = pseudorandom_eps(G).eps
    grid = [0.2, 0.4, 0.6, 0.8, 1.0]
    assert overload_sweep(G, eps0, grid, grid) == []


def test_concatenation_sizes_and_rate():
    inner = css_422()
    outer = quantum_grs(field(2, 2), 3, Fraction(1, 3))
    a = build_ael(outer, inner, random_regular(3, 4, np.random.default_rng(0)))
    assert a.rate == outer.rate * inner.rate
    assert a.stab.r == outer.stab.r + outer.n * inner.stab.r
    with pytest.raises(ValueError):
        build_ael(outer, inner, random_regular(4, 4, np.random.default_rng(0)))


def test_distance_at_least_bound():
    st7 = steane_code()
    a = build_ael(st7, st7, complete_graph(7))
    d = a.css.distance()
    assert d >= a.distance_bound(0.0) * a.n - 1e-9
    assert d == 3  # symbols of 7 qubits each


def test_unique_decode_single_block_errors():
    st7 = steane_code()
    a = build_ael(st7, st7, complete_graph(7))
    rng = np.random.default_rng(0)
    for _ in range(40):
        v = rng.integers(0, 7)
        ax, az = np.zeros(49, dtype=np.int64), np.zeros(49, dtype=np.int64)
        ax[v * 7 : (v + 1) * 7] = rng.integers(0, 2, 7)
        az[v * 7 : (v + 1) * 7] = rng.integers(0, 2, 7)
        E = a.frame(ax, az)
        res = ael_unique_decode(a, E)
        assert res.ok and a.stab.is_stabilizer_equivalent(E, res.correction)


def test_list_decode_matches_oracle_reducing():
    inner = css_422()
    outer = quantum_grs(field(2, 2), 3, Fraction(1, 3))
    a = build_ael(outer, inner, random_regular(6, 2, np.random.default_rng(1)), "reducing")
    delta = Fraction(1, a.n)
    oracle = low_weight_classes(a.stab, 1)
    for key, classes in oracle.items():
        got = ael_list_decode(a, syndrome_from_key(a.stab, key), delta, inner_radius=1, prune=True)
        assert class_keys(a.stab, got) == classes
