"""Linear-algebraic list recovery for folded Reed-Solomon codes.

The received data is a list of candidate blocks per folded position.  We
interpolate a nonzero

    Q(X, Y_1, ..., Y_s) = A_0(X) + A_1(X) Y_1 + ... + A_s(X) Y_s

with deg A_0 <= D + k - 1 and deg A_l <= D that vanishes on every window
(gamma^(im+j), y_j, ..., y_(j+s-1)), j = 0..m-s, of every candidate block.
Any message polynomial f agreeing with the candidates on more than
(D + k - 1) / (m - s + 1) blocks satisfies

    A_0(X) + sum_l A_l(X) f(gamma^(l-1) X) = 0,

an affine system in the coefficients of f.  Its solution space is
enumerated and filtered by true agreement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .classical import FoldedCode, LinearCode, agreement_counts

CANDIDATE_LIMIT = 1 << 20


@dataclass(frozen=True)
class FRSParams:
    s: int
    D: int
    windows: int
    min_agreement: int
    constraints: int


def frs_params(N: int, m: int, k: int, s: int, set_sizes) -> FRSParams:
    """Interpolation degree and guaranteed agreement threshold."""
    if not 1 <= s <= m:
        raise ValueError(f"need 1 <= s <= m, got s={s}, m={m}")
    windows = m - s + 1
    constraints = int(sum(set_sizes)) * windows
    # unknowns (D + k) + s (D + 1) must exceed the number of constraints
    D = max(0, (constraints - k - s) // (s + 1) + 1)
    min_agreement = (D + k - 1) // windows + 1
    return FRSParams(s, D, windows, min_agreement, constraints)


def frs_decoding_radius(code: FoldedCode, s: int, ell: int = 1) -> int:
    """Largest number of erroneous blocks the decoder is guaranteed to handle."""
    base = code.base
    prm = frs_params(code.n, code.fold, base.grs.k, s, [ell] * code.n)
    return code.n - prm.min_agreement


def best_s(code: FoldedCode, ell: int = 1) -> int:
    best, arg = -1, 1
    for s in range(1, code.fold + 1):
        r = frs_decoding_radius(code, s, ell)
        if r > best:
            best, arg = r, s
    return arg


def _check_code(code: LinearCode) -> FoldedCode:
    if not isinstance(code, FoldedCode) or code.base.grs is None or code.base.ext != 1:
        raise TypeError("the algebraic decoder needs a folded GRS code")
    return code


def frs_list_recover(code: LinearCode, sets, agreement: int, s: int | None = None) -> np.ndarray:
    """Codewords whose blocks lie in the candidate sets on >= ``agreement`` positions.

    ``sets[i]`` is a collection of length-m tuples (codeword symbols).  Raises
    ValueError if ``agreement`` is below the decoder's guarantee.
    """
    code = _check_code(code)
    g = code.base.grs
    F = code.spec
    m, N, k = code.fold, code.n, g.k
    if len(sets) != N:
        raise ValueError(f"need {N} candidate sets")
    s = best_s(code, max(len(S) for S in sets) or 1) if s is None else s
    prm = frs_params(N, m, k, s, [len(S) for S in sets])
    if agreement < prm.min_agreement:
        raise ValueError(
            f"agreement {agreement} below the algebraic guarantee {prm.min_agreement} (s={s}, D={prm.D})"
        )
    D = prm.D
    pts = g.points()
    u = np.array(g.multipliers, dtype=np.int64)
    n_a0 = D + k
    n_unknowns = n_a0 + s * (D + 1)

    rows = []
    for i, S in enumerate(sets):
        for block in S:
            y = np.asarray(block, dtype=np.int64).reshape(m)
            y = F.div(y, u[i * m : (i + 1) * m])
            for j in range(prm.windows):
                x = int(pts[i * m + j])
                xp = np.array([int(F.pow(x, d)) for d in range(n_a0)], dtype=np.int64)
                row = np.zeros(n_unknowns, dtype=np.int64)
                row[:n_a0] = xp
                for l in range(s):
                    off = n_a0 + l * (D + 1)
                    row[off : off + D + 1] = F.mul(y[j + l], xp[: D + 1])
                rows.append(row)
    if not rows:
        return np.zeros((0, code.N), dtype=np.int64)
    basis = la.nullspace(F, np.array(rows, dtype=np.int64), n_unknowns)
    if basis.shape[0] == 0:
        return np.zeros((0, code.N), dtype=np.int64)

    # stack the root-finding systems of every interpolating polynomial
    gpow = [np.array([int(F.pow(F.pow(g.gamma, l), i)) for i in range(k)], dtype=np.int64) for l in range(s)]
    blocks_M, blocks_b = [], []
    for Qv in basis:
        A0 = Qv[:n_a0]
        A = [Qv[n_a0 + l * (D + 1) : n_a0 + (l + 1) * (D + 1)] for l in range(s)]
        M = np.zeros((n_a0, k), dtype=np.int64)
        for d in range(n_a0):
            for i in range(k):
                t = d - i
                if 0 <= t <= D:
                    acc = 0
                    for l in range(s):
                        acc = int(F.add(acc, F.mul(A[l][t], gpow[l][i])))
                    M[d, i] = acc
        blocks_M.append(M)
        blocks_b.append(F.neg(A0))
    M = np.vstack(blocks_M)
    b = np.concatenate(blocks_b)
    f0 = la.solve(F, M, b)
    if f0 is None:
        return np.zeros((0, code.N), dtype=np.int64)
    null = la.nullspace(F, M, k)
    count = F.q ** null.shape[0]
    if count > CANDIDATE_LIMIT:
        raise ValueError(f"candidate space of size {count} is too large to enumerate")
    if null.shape[0]:
        combos = np.concatenate([c for _, c in la.enumerate_span(F, null)], axis=0)
        msgs = F.add(combos, f0[None, :])
    else:
        msgs = f0[None, :]
    words = code.encode(msgs)
    agree = agreement_counts(code, words, sets)
    keep = agree >= agreement
    msgs, words = msgs[keep], words[keep]
    if words.shape[0] == 0:
        return words
    # lexicographic message order, duplicates removed
    _, idx = np.unique(msgs, axis=0, return_index=True)
    return words[idx]
