"""Private AQECC with a shared key, then the key-free version with the key secret shared."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from listqec.aqecc import PrivateAQECC, RSSScheme, build_aqecc, build_ptc, exhaustive_private_sweep
from listqec.css import sample_random_css
from listqec.gf import field
from listqec.sim import AdversaryModel, run_aqecc_trials, run_private_trials

F3 = field(3)
qld = sample_random_css(12, 4, F3, np.random.default_rng(7))
ptc = build_ptc(F3, 2, 4)
pa = PrivateAQECC(qld, ptc, Fraction(2, 12))
print(f"QLD {qld}, PTC eps {pa.eps}, list bound L={pa.L}")

rep = exhaustive_private_sweep(pa)
print(f"exhaustive sweep: {rep.errors} error classes x {rep.keys} keys, max {rep.max_error_failure}, mean {rep.mean_failure}")

adv = AdversaryModel(2)
priv = run_private_trials(pa, adv, 2000, 1)
full = run_aqecc_trials(build_aqecc(pa, RSSScheme(1009, 12, 2, 1)), adv, 2000, 1)
for t in (priv, full):
    lo, hi = t.interval()
    print(f"{t.name:8s} failure {t.failure_rate:.4f}  wilson95 [{lo:.4f}, {hi:.4f}]")
