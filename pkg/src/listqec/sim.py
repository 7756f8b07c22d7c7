"""Adversary models, trial runners and result tables.

Every trial draws its randomness from a generator seeded by
(master seed, trial index), so results do not depend on thread count or
execution order.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import sqrt
from typing import Callable

import numpy as np

from .pauli import symbol_paulis

OUTCOMES = ("success", "miscorrect", "reject")
CSV_COLUMNS = ("trial", "seed", "weight", "support", "key", "syndrome", "outcome", "extra")


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(trial),)))


@dataclass
class AdversaryModel:
    """Chooses a support of at most ``weight_budget`` symbols and a Pauli on it.

    support: ``random-subset`` (uniform set of exactly the budget),
    ``fixed`` (``fixed_support``) or ``burst`` (cyclic window at a random offset).
    error: ``uniform-pauli-on-support`` (each chosen symbol gets a uniform
    nonidentity Pauli) or ``identity`` (support only, used for share-layer
    corruption without a Pauli error).
    """

    weight_budget: int
    support: str = "random-subset"
    error: str = "uniform-pauli-on-support"
    fixed_support: tuple = ()

    def __post_init__(self):
        if self.weight_budget < 0:
            raise ValueError("weight budget must be nonnegative")
        if self.support not in ("random-subset", "fixed", "burst"):
            raise ValueError(f"unknown support model {self.support!r}")
        if self.error not in ("uniform-pauli-on-support", "identity"):
            raise ValueError(f"unknown error model {self.error!r}")
        if self.support == "fixed" and len(self.fixed_support) > self.weight_budget:
            raise ValueError("fixed support exceeds the weight budget")

    def choose_support(self, n: int, rng: np.random.Generator) -> np.ndarray:
        w = min(self.weight_budget, n)
        if self.support == "fixed":
            supp = np.array(sorted(self.fixed_support), dtype=np.int64)
            if supp.size and (supp.min() < 0 or supp.max() >= n):
                raise ValueError("fixed support out of range")
            return supp
        if self.support == "burst":
            start = int(rng.integers(0, n))
            return np.sort((start + np.arange(w)) % n)
        return np.sort(rng.choice(n, size=w, replace=False)).astype(np.int64)

    def sample(self, spec, n: int, ext: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        """(support, F_p symplectic row) for a code of n symbols with ``ext`` qudits each."""
        supp = self.choose_support(n, rng)
        d = ext * spec.m
        M = n * d
        v = np.zeros(2 * M, dtype=np.int64)
        if self.error == "identity" or supp.size == 0:
            return supp, v
        sym = _symbols(spec, ext)
        picks = rng.integers(0, sym.shape[0], size=supp.size)
        for pos, c in zip(supp, picks):
            v[pos * d : (pos + 1) * d] = sym[c, :d]
            v[M + pos * d : M + (pos + 1) * d] = sym[c, d:]
        return supp, v

    def to_config(self) -> dict:
        return {"weight_budget": self.weight_budget, "support": self.support, "error": self.error, "fixed_support": list(self.fixed_support)}


_SYM_CACHE: dict = {}


def _symbols(spec, ext: int) -> np.ndarray:
    key = (spec.p, spec.m, ext)
    if key not in _SYM_CACHE:
        _SYM_CACHE[key] = symbol_paulis(spec, ext)
    return _SYM_CACHE[key]


def digest(v) -> str:
    return hashlib.sha1(np.ascontiguousarray(np.asarray(v, dtype=np.int64)).tobytes()).hexdigest()[:12]


@dataclass
class TrialRecord:
    trial: int
    seed: int
    weight: int
    support: tuple
    key: int | str | None
    syndrome: str
    outcome: str
    extra: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.outcome not in OUTCOMES:
            raise ValueError(f"unknown outcome {self.outcome!r}")

    def row(self) -> list:
        key = "" if self.key is None else self.key
        extra = json.dumps(self.extra, sort_keys=True) if self.extra else ""
        return [self.trial, self.seed, self.weight, " ".join(map(str, self.support)), key, self.syndrome, self.outcome, extra]


def wilson(k: int, n: int, z: float = 1.96) -> tuple[float, float]:
    if n == 0:
        return 0.0, 1.0
    ph = k / n
    den = 1 + z * z / n
    mid = (ph + z * z / (2 * n)) / den
    half = z * sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / den
    return max(0.0, mid - half), min(1.0, mid + half)


def _num(x):
    if isinstance(x, Fraction):
        return {"fraction": f"{x.numerator}/{x.denominator}", "decimal": float(x)}
    return x


@dataclass
class ResultsTable:
    name: str
    records: list
    master_seed: int
    bound: Fraction | float | None = None
    meta: dict = dc_field(default_factory=dict)

    @property
    def trials(self) -> int:
        return len(self.records)

    def counts(self) -> dict:
        c = {o: 0 for o in OUTCOMES}
        for r in self.records:
            c[r.outcome] += 1
        return c

    @property
    def failures(self) -> int:
        c = self.counts()
        return c["miscorrect"] + c["reject"]

    @property
    def failure_rate(self) -> float:
        return self.failures / self.trials if self.trials else 0.0

    def interval(self) -> tuple[float, float]:
        return wilson(self.failures, self.trials)

    def within_bound(self) -> bool | None:
        """Lower end of the Wilson interval does not exceed the analytic bound."""
        if self.bound is None:
            return None
        return self.interval()[0] <= float(self.bound)

    def summary(self) -> dict:
        lo, hi = self.interval()
        return {
            "name": self.name,
            "master_seed": self.master_seed,
            "trials": self.trials,
            "counts": self.counts(),
            "failure_rate": {"fraction": f"{self.failures}/{self.trials}", "decimal": self.failure_rate},
            "wilson95": [lo, hi],
            "bound": _num(self.bound),
            "within_bound": self.within_bound(),
            "meta": {k: _num(v) for k, v in self.meta.items()},
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.records:
            w.writerow(r.row())
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True)


def _run(trials: int, master_seed: int, one: Callable[[int, np.random.Generator], TrialRecord], threads: int = 1) -> list:
    if trials < 0:
        raise ValueError("trials must be nonnegative")

    def job(t):
        return one(t, trial_rng(master_seed, t))

    if threads <= 1 or trials < 2:
        return [job(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(job, range(trials)))


# ---------------------------------------------------------------------------


def run_private_trials(paqecc, adversary: AdversaryModel, trials: int, master_seed: int, strict: bool = False, threads: int = 1) -> ResultsTable:
    """Random key and adversarial error per trial; compared against 2 L eps."""
    from .aqecc import private_outcome

    st = paqecc.qld.stab
    if adversary.weight_budget > paqecc.radius:
        raise ValueError(f"adversary budget {adversary.weight_budget} exceeds delta*n = {paqecc.radius}")
    K = paqecc.ptc.key_count

    def one(t, rng):
        key = int(rng.integers(0, K))
        supp, V = adversary.sample(st.spec, st.n, st.ext, rng)
        out = private_outcome(paqecc, key, V, strict)
        return TrialRecord(t, master_seed, int(supp.size), tuple(int(i) for i in supp), key, digest(st.syndrome(V)), out)

    recs = _run(trials, master_seed, one, threads)
    return ResultsTable("private", recs, master_seed, paqecc.claimed_failure, {"L": paqecc.L, "eps": paqecc.eps, "strict": strict})


def run_aqecc_trials(aqecc, adversary: AdversaryModel, trials: int, master_seed: int, threads: int = 1) -> ResultsTable:
    """Same support corrupted in the Pauli layer and the share layer.

    The adversary replaces the shares it touches with random values (a
    function of nothing it is not allowed to see).  A reconstructed key
    different from the true one counts as a miscorrection; an abort as a
    rejection.
    """
    from .aqecc import corrupt_shares, rss_share

    pa, rss = aqecc.paqecc, aqecc.rss
    st = pa.qld.stab
    if adversary.weight_budget > min(pa.radius, rss.d):
        raise ValueError("adversary budget exceeds the code's radius or the sharing threshold")
    K = pa.ptc.key_count

    def one(t, rng):
        key = int(rng.integers(0, K))
        shares = rss_share(rss, aqecc.key_to_secret(key), rng=rng)
        supp, V = adversary.sample(st.spec, st.n, st.ext, rng)
        shares = corrupt_shares(rss, shares, [int(i) for i in supp], rng)
        status, corr, got = aqecc.decode(shares, st.syndrome(V), lambda k: pa.ptc_syndrome(k, V))
        if status == "abort":
            out = "reject"
        elif got != key:
            out = "miscorrect"
        elif status == "reject":
            out = "reject"
        else:
            diff = (corr.symplectic() - V) % st.spec.p
            out = "success" if pa.composed(key).in_stabilizer(diff) else "miscorrect"
        return TrialRecord(t, master_seed, int(supp.size), tuple(int(i) for i in supp), key, digest(st.syndrome(V)), out,
                           {"key_ok": got == key})

    recs = _run(trials, master_seed, one, threads)
    return ResultsTable("aqecc", recs, master_seed, aqecc.eps, {"private_bound": pa.claimed_failure, "eps_rss": rss.eps})


def run_ael_trials(ael, adversary: AdversaryModel, trials: int, master_seed: int, alpha_in: float | None = None, threads: int = 1) -> ResultsTable:
    """Unique decoding of the AEL code; records the overloaded-block fraction per trial.

    A block is overloaded when at least alpha_in * n_in of its qudits are hit
    (default: more than the inner unique-decoding radius).
    """
    from .ael import ael_unique_decode, block_loads

    st = ael.stab
    n_in = ael.inner.n
    if alpha_in is None:
        alpha_in = ((ael.inner.distance() - 1) // 2 + 1) / n_in

    def one(t, rng):
        supp, V = adversary.sample(st.spec, st.n, st.ext, rng)
        E = st.frame(V)
        res = ael_unique_decode(ael, E)
        if res.ok:
            diff = (res.correction.symplectic() - V) % st.spec.p
            out = "success" if st.in_stabilizer(diff) else "miscorrect"
        else:
            out = "reject"
        loads = block_loads(ael.graph, supp, ael.b)
        over = int(np.sum(loads >= alpha_in * n_in - 1e-12))
        return TrialRecord(t, master_seed, int(supp.size), tuple(int(i) for i in supp), None, digest(st.syndrome(V)), out,
                           {"overloaded": over, "overloaded_fraction": over / ael.outer.n})

    recs = _run(trials, master_seed, one, threads)
    fr = max((r.extra["overloaded_fraction"] for r in recs), default=0.0)
    return ResultsTable("ael", recs, master_seed, None, {"alpha_in": alpha_in, "max_overloaded_fraction": fr})


def run_direct_trials(direct, adversary: AdversaryModel, trials: int, master_seed: int, threads: int = 1) -> ResultsTable:
    """Direct construction: independent key per inner block, outer unique decoding.

    Each trial also records the number of overloaded blocks S' and the
    binomial tail Pr[Bin(n - |S'|, delta_out / 10) + |S'| >= t]; the table bound is
    the mean tail over trials.
    """
    F = direct.inner.spec
    r = direct.graph.r
    N = direct.n
    q = F.q
    K = direct.ptc.key_count

    def one(t, rng):
        keys = rng.integers(0, K, size=direct.outer.n)
        supp = adversary.choose_support(N, rng)
        ax = np.zeros(N * r, dtype=np.int64)
        az = np.zeros(N * r, dtype=np.int64)
        if adversary.error != "identity":
            for v in supp:
                while True:
                    x = rng.integers(0, q, size=r)
                    z = rng.integers(0, q, size=r)
                    if np.any(x) or np.any(z):
                        break
                ax[v * r : (v + 1) * r] = x
                az[v * r : (v + 1) * r] = z
        res = direct.decode_error(ax, az, keys)
        tail = direct.binomial_tail(res["overloaded"])
        out = "success" if res["success"] else "miscorrect"
        extra = {"failed_blocks": res["failed_blocks"], "overloaded": res["overloaded"], "bad_symbols": res["bad_symbols"], "tail": tail}
        return TrialRecord(t, master_seed, int(supp.size), tuple(int(i) for i in supp), digest(keys), digest(np.concatenate([ax, az])), out, extra)

    recs = _run(trials, master_seed, one, threads)
    mean_tail = float(np.mean([r.extra["tail"] for r in recs])) if recs else 0.0
    return ResultsTable("direct", recs, master_seed, mean_tail, {"n_out": direct.outer.n, "block_bound": direct.block_bound, "radius_out": direct.radius_out})
