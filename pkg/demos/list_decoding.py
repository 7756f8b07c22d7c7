"""List decoding beyond half the distance: folded RS, then quantum CSS codes."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from listqec.classical import fold, list_decode, rs_code
from listqec.css import class_keys, qld_decode, quantum_grs, steane_code
from listqec.frs import best_s, frs_decoding_radius
from listqec.gf import field


def folded_rs(rng):
    C = fold(rs_code(field(17), 16, 2), 4)
    s = best_s(C)
    radius = frs_decoding_radius(C, s)
    half = (C.min_distance() - 1) // 2
    cw = C.encode(rng.integers(0, 17, size=C.dim))
    r = cw.reshape(C.n, C.ext).copy()
    r[rng.choice(C.n, size=radius, replace=False)] = rng.integers(0, 17, size=(radius, C.ext))
    got = list_decode(C, r.reshape(-1), Fraction(radius, C.n), mode="frs", s=s)
    hit = any(np.array_equal(w, cw) for w in got)
    print(f"FRS n={C.n} fold={C.fold} s={s}: {radius} bad blocks (half distance {half}), list {len(got)}, sent word listed: {hit}")


def quantum(rng):
    for code, w in [(steane_code(), 2), (quantum_grs(field(7), 6, Fraction(1, 3)), 2)]:
        st = code.stab
        sizes = []
        for _ in range(20):
            s = rng.integers(0, code.spec.p, size=st.r)
            L = qld_decode(code, s, Fraction(w, code.n), prune=True)
            sizes.append(len(class_keys(st, L)))
        print(f"{code}: tau={w}/{code.n}, d={code.distance()}, list sizes over 20 syndromes {sorted(sizes)}")


if __name__ == "__main__":
    rng = np.random.default_rng(0)
    folded_rs(rng)
    quantum(rng)
