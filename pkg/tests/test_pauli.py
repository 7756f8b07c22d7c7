from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from listqec.css import css_422, steane_code
from listqec.gf import field
from listqec.pauli import (
    PauliFrame,
    StabilizerCode,
    brute_force_distance,
    commutation_phase,
    compose,
    count_low_weight,
    identity_code,
    iter_weight,
    symbol_paulis,
    symplectic_form,
    tensor,
)


def matrix(E: PauliFrame) -> np.ndarray:
    """Dense operator omega^phase X^a Z^b with X_a|x> = |x+a>, Z_b|x> = omega^tr(bx)|x>."""
    F = E.spec
    p, q = F.p, F.q
    w = np.exp(2j * np.pi / p)
    out = np.array([[1.0 + 0j]])
    for a, b in zip(E.x, E.z):
        M = np.zeros((q, q), dtype=complex)
        for x in range(q):
            M[int(F.add(x, int(a))), x] = w ** int(F.trace(F.mul(int(b), x)))
        out = np.kron(out, M)
    return out * w**E.phase


def frames(F, n, data):
    el = st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n)
    return PauliFrame(np.array(data.draw(el)), np.array(data.draw(el)), F), PauliFrame(np.array(data.draw(el)), np.array(data.draw(el)), F)


@given(st.sampled_from([(2, 1), (3, 1), (2, 2)]), st.data())
def test_product_matches_matrices(pm, data):
    F = field(*pm)
    E, G = frames(F, 2, data)
    assert np.allclose(matrix(E) @ matrix(G), matrix(E * G))
    assert np.allclose(matrix(E.dagger()), matrix(E).conj().T)


@given(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1)]), st.data())
def test_commutation_phase_matches_matrices(pm, data):
    F = field(*pm)
    E, G = frames(F, 2, data)
    c = commutation_phase(E, G)
    w = np.exp(2j * np.pi / F.p)
    # E G = omega^(-c) G E with the trace pairing above
    assert np.allclose(matrix(E) @ matrix(G), w ** (-c) * (matrix(G) @ matrix(E)))
    assert commutation_phase(G, E) == (-c) % F.p


def test_text_roundtrip():
    F = field(3)
    E = PauliFrame(np.array([1, 0, 2]), np.array([0, 2, 2]), F, phase=1)
    back = PauliFrame.from_text(E.to_text(), F)
    assert back.same_operator(E) and back.phase == 1
    assert E.weight == 3 and E.support() == [0, 1, 2]


def test_symbol_paulis_and_counts():
    F = field(2, 2)
    assert symbol_paulis(F, 1).shape[0] == 15
    assert count_low_weight(field(2), 3, 1, 1) == 1 + 3 * 3
    total = sum(V.shape[0] for V in iter_weight(field(3), 3, 1, 2))
    assert total == 3 * 8 * 8


def test_steane_stabilizer_classification():
    stab = steane_code().stab
    assert (stab.r, stab.k) == (6, 1)
    LX, LZ = stab.logical_frames()
    assert stab.classify(LX[0]) == "logical"
    assert stab.classify(stab.generator_frames()[0]) == "stabilizer"
    e = PauliFrame(np.array([1, 0, 0, 0, 0, 0, 0]), np.zeros(7, dtype=np.int64), field(2))
    assert stab.classify(e) == "detectable"
    assert brute_force_distance(stab) == 3


def test_logical_coordinates_invert_lift():
    stab = css_422().stab
    V = np.array([[1, 0, 0, 1], [0, 1, 1, 1]])
    assert np.array_equal(stab.logical_coordinates(stab.lift(V)), V)


def test_solve_syndrome_and_canonical():
    stab = steane_code().stab
    rng = np.random.default_rng(0)
    for _ in range(20):
        s = rng.integers(0, 2, size=stab.r)
        v = stab.solve_syndrome(s)
        assert np.array_equal(stab.syndrome(v), s)
        g = stab.generators[rng.integers(stab.r)]
        assert np.array_equal(stab.canonical(v), stab.canonical((v + g) % 2))


def test_bad_generators_rejected():
    F = field(2)
    with pytest.raises(ValueError):
        StabilizerCode(F, 1, np.array([[1, 0], [0, 1]]))


def test_compose_with_identity_and_tensor():
    steane = steane_code().stab
    comp = compose(steane, identity_code(field(2), 1))
    assert comp.r == steane.r and comp.k == 1
    inner = css_422().stab
    assert compose(tensor([identity_code(field(2), 2), identity_code(field(2), 2)]), inner).k == 2
    T = tensor([steane, steane])
    assert (T.n, T.r, T.k) == (14, 12, 2)
    assert not np.any(symplectic_form(2, T.generators, T.generators))
