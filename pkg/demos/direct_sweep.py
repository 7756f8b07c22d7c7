"""Key-free construction without list recovery: failure rate against block length."""
from __future__ import annotations

import sys
from fractions import Fraction

import numpy as np

from listqec.ael import random_regular
from listqec.aqecc import build_direct_aqecc, build_ptc
from listqec.css import quantum_grs, sample_random_css
from listqec.gf import field
from listqec.sim import AdversaryModel, run_direct_trials

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
F3 = field(3)
inner = sample_random_css(10, 6, F3, np.random.default_rng(6))
ptc = build_ptc(F3, 3, 6)
print("n_out  N    weight  failure  tail")
for n_out in (10, 15, 20, 25):
    outer = quantum_grs(field(3, 3), n_out, Fraction(1, 5))
    G = random_regular(n_out * 10, 1, np.random.default_rng(n_out))
    d = build_direct_aqecc(outer, inner, ptc, G, Fraction(1, 10))
    w = 3 * d.n // 50
    res = run_direct_trials(d, AdversaryModel(w), trials, 3)
    print(f"{n_out:5d}  {d.n:4d} {w:6d}  {res.failure_rate:.4f}   {float(res.bound):.4f}")
