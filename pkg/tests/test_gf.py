from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from listqec.gf import (
    dual_basis,
    field,
    field_from_config,
    field_from_order,
    find_modulus,
    is_irreducible,
    trace,
)

FIELDS = [(2, 1), (3, 1), (7, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]


def naive_mul(a: int, b: int, p: int, modulus) -> int:
    """Schoolbook polynomial product reduced by the modulus (independent oracle)."""
    m = len(modulus) - 1
    da = [(a // p**i) % p for i in range(m)]
    db = [(b // p**i) % p for i in range(m)]
    prod = [0] * (2 * m)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(2 * m - 1, m - 1, -1):
        c = prod[deg]
        if c:
            for t in range(m + 1):
                prod[deg - m + t] = (prod[deg - m + t] - c * modulus[t]) % p
    return sum(prod[i] * p**i for i in range(m))


@pytest.mark.parametrize("p,m", FIELDS)
def test_multiplication_matches_schoolbook_oracle(p, m):
    F = field(p, m)
    a = np.arange(F.q)
    table = F.mul(a[:, None], a[None, :])
    for x in range(F.q):
        for y in range(F.q):
            assert table[x, y] == naive_mul(x, y, p, F.modulus)


@pytest.mark.parametrize("p,m", FIELDS)
def test_inverse_and_primitive(p, m):
    F = field(p, m)
    nz = np.arange(1, F.q)
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    powers = {int(F.pow(F.primitive, i)) for i in range(F.q - 1)}
    assert powers == set(range(1, F.q))


def test_gf4_cube_root_of_unity():
    F = field(2, 2)
    w = F.element(2)
    assert int(w * w * w) == 1


def test_modulus_tables_are_irreducible():
    for p, m in FIELDS:
        assert is_irreducible(find_modulus(p, m), p)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        field(2, 2, modulus=(1, 0, 1))


def test_field_from_order_and_config():
    assert field_from_order(27) is field(3, 3)
    with pytest.raises(ValueError):
        field_from_order(12)
    F = field(2, 3)
    G = field_from_config(F.to_config())
    assert (G.p, G.m, tuple(G.modulus), G.primitive) == (F.p, F.m, tuple(F.modulus), F.primitive)
    with pytest.raises(ValueError):
        field_from_config({"p": 2, "m": 3, "colour": 1})


@pytest.mark.parametrize("p,m", FIELDS)
def test_trace_is_linear_onto_prime_field(p, m):
    F = field(p, m)
    a = np.arange(F.q)
    tr = F.trace(a)
    assert set(tr.tolist()) == (set(range(p)) if m > 1 or p > 1 else {0})
    assert np.array_equal(F.trace(F.add(a[:, None], a[None, :])), (tr[:, None] + tr[None, :]) % p)
    assert int(F.trace(3 % p)) == (m * (3 % p)) % p


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (2, 4)])
def test_dual_digits_pair_through_trace(p, m):
    F = field(p, m)
    a = np.arange(F.q)
    # tr(a b) equals the dot product of polynomial digits and dual digits
    lhs = F.trace(F.mul(a[:, None], a[None, :]))
    rhs = (F.to_digits(a) @ F.to_dual_digits(a).T) % p
    assert np.array_equal(lhs, rhs)
    assert np.array_equal(F.from_dual_digits(F.to_dual_digits(a)), a)
    assert np.array_equal(F.from_digits(F.to_digits(a)), a)


def test_dual_basis_gram_identity():
    F = field(2, 3)
    pair = dual_basis([F.element(3), F.element(5), F.element(7)])
    assert np.array_equal(pair.gram(), np.eye(3, dtype=np.int64))
    assert trace(F.element(1)) == 1


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pm, data):
    F = field(*pm)
    el = st.integers(0, F.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.q - 1) == 1
