"""Approximate quantum error correction from list decoding.

Purity-testing code families, the private (keyed) decoder, robust secret
sharing to remove the shared key, a direct concatenated construction with
independent keys per inner block, a parameter planner and Singleton-type
bound calculators.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from math import comb, floor, log2, sqrt

import numpy as np

from . import linalg as la
from .classical import as_fraction, radius_of, unique_decode
from .css import CSSCode, low_weight_table, qld_decode, verify_qld, _pack
from .gf import FieldSpec, field
from .pauli import PauliFrame, StabilizerCode, compose, symplectic_form, to_symplectic

PTC_LIMIT = 1 << 22


# ---------------------------------------------------------------------------
# purity testing codes


def ptc_eps_target(q: int, lam: int, n_ptc: int) -> Fraction:
    """Analytic bound 2 n q^-lambda / lambda."""
    return Fraction(2 * n_ptc, lam * q**lam)


@dataclass
class PTCFamily:
    """Keyed family of [[n_ptc, n_ptc - lam]]_q stabilizer codes, keys 0 .. q^lam - 1.

    Generators are F_p symplectic rows of length 2 * n_ptc * m.
    """

    spec: FieldSpec
    n_ptc: int
    lam: int
    construction: str
    generators: dict = dc_field(repr=False, default_factory=dict)
    eps_target: Fraction = Fraction(1)
    eps_measured: Fraction | None = None
    ok: bool = True
    seed: int | None = None
    _codes: dict = dc_field(default_factory=dict, repr=False)

    @property
    def key_count(self) -> int:
        return self.spec.q**self.lam

    @property
    def k_qudits(self) -> int:
        return self.n_ptc - self.lam

    def gens(self, key: int) -> np.ndarray:
        if not 0 <= key < self.key_count:
            raise ValueError(f"key {key} out of range")
        if key not in self.generators:
            if self.construction != "explicit":
                raise KeyError(key)
            self.generators[key] = _explicit_generators(self.spec, self.n_ptc, self.lam, key)
        return self.generators[key]

    def code(self, key: int) -> StabilizerCode:
        c = self._codes.get(key)
        if c is None:
            c = StabilizerCode(self.spec, self.n_ptc, self.gens(key), name=f"PTC[{key}]")
            self._codes[key] = c
        return c

    def to_config(self) -> dict:
        return {
            "p": self.spec.p, "m": self.spec.m, "n_ptc": self.n_ptc, "lam": self.lam,
            "construction": self.construction, "seed": self.seed,
            "eps_target": str(self.eps_target),
            "eps_measured": None if self.eps_measured is None else str(self.eps_measured),
        }


def _explicit_generators(spec: FieldSpec, n_ptc: int, lam: int, key: int) -> np.ndarray:
    """Key k in GF(q^lam): the F-multiples of (u, w) with u_i = k^i, w_i = k^(s+i).

    An operator (x, z) on s = n_ptc / lam big symbols commutes with all of
    them iff sum z_i k^i - x_i k^(s+i) = 0, a nonzero polynomial of degree
    < 2s unless x = z = 0, so at most 2s - 1 keys fail to detect it.
    """
    big = field(spec.p, spec.m * lam)
    s = n_ptc // lam
    u = np.array([int(big.pow(key, i)) for i in range(s)], dtype=np.int64)
    w = np.array([int(big.pow(key, s + i)) for i in range(s)], dtype=np.int64)
    rows = []
    for j in range(big.m):
        c = big.p**j
        rows.append(to_symplectic(big, big.mul(u, c), big.mul(w, c)))
    return np.array(rows, dtype=np.int64)


def _random_isotropic(p: int, M: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    P = field(p)
    rows: list[np.ndarray] = []
    while len(rows) < dim:
        v = rng.integers(0, p, size=2 * M)
        if rows:
            R = np.array(rows)
            if np.any(symplectic_form(p, R, v)) or la.rank(P, np.vstack([R, v])) <= len(rows):
                continue
        elif not np.any(v):
            continue
        rows.append(v)
    return np.array(rows, dtype=np.int64)


def build_ptc(
    spec: FieldSpec,
    lam: int,
    n_ptc: int,
    construction: str = "explicit",
    seed: int = 0,
    retries: int = 50,
    measure: bool = True,
) -> PTCFamily:
    """Keyed family with q^lam keys; measured eps stored next to the analytic target.

    ``explicit`` is the polynomial-evaluation family; ``random`` samples an
    independent isotropic subspace per key and retries until the measured
    eps meets the target (``ok`` is False if the budget runs out).
    """
    if lam < 1 or n_ptc % lam:
        raise ValueError(f"lambda={lam} must divide n_ptc={n_ptc}")
    if lam >= n_ptc and construction == "explicit":
        raise ValueError("need lambda < n_ptc to encode at least one qudit")
    target = ptc_eps_target(spec.q, lam, n_ptc)
    if construction == "explicit":
        fam = PTCFamily(spec, n_ptc, lam, "explicit", eps_target=target, seed=None)
        for k in range(fam.key_count):
            fam.gens(k)
        if measure:
            fam.eps_measured = ptc_measure_eps(fam)
            fam.ok = fam.eps_measured <= target
        return fam
    if construction != "random":
        raise ValueError(f"unknown PTC construction {construction!r}")
    rng = np.random.default_rng(seed)
    best = None
    for attempt in range(retries):
        fam = PTCFamily(spec, n_ptc, lam, "random", eps_target=target, seed=seed)
        for k in range(fam.key_count):
            fam.generators[k] = _random_isotropic(spec.p, n_ptc * spec.m, lam * spec.m, rng)
        if not measure:
            return fam
        fam.eps_measured = ptc_measure_eps(fam)
        if best is None or fam.eps_measured < best.eps_measured:
            best = fam
        if fam.eps_measured <= target:
            fam.ok = True
            return fam
    best.ok = False
    return best


def _all_vectors(p: int, width: int, chunk: int = 1 << 16):
    total = p**width
    pw = p ** np.arange(width - 1, -1, -1, dtype=np.int64)
    for start in range(1, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        yield (idx[:, None] // pw[None, :]) % p


def ptc_measure_eps(family: PTCFamily, limit: int = PTC_LIMIT) -> Fraction:
    """max over nonidentity Paulis E of Pr_key[E in N(Q_k) \\ S(Q_k)] (exhaustive)."""
    p = family.spec.p
    width = 2 * family.n_ptc * family.spec.m
    total = p**width
    if total * family.key_count > limit * 64 or total > limit:
        raise ValueError(f"exhaustive PTC measurement over {total} Paulis x {family.key_count} keys is infeasible")
    codes = [family.code(k) for k in range(family.key_count)]
    worst = 0
    for V in _all_vectors(p, width):
        cnt = np.zeros(V.shape[0], dtype=np.int64)
        for c in codes:
            undetected = ~np.any(c.syndrome(V) != 0, axis=1)
            if np.any(undetected):
                idx = np.flatnonzero(undetected)
                bad = ~c.in_stabilizer(V[idx])
                cnt[idx] += np.asarray(bad, dtype=np.int64)
        worst = max(worst, int(cnt.max()))
    return Fraction(worst, family.key_count)


# ---------------------------------------------------------------------------
# private AQECC


class PrivateAQECC:
    """Q_LD composed with a keyed PTC; decoding needs the key."""

    def __init__(self, qld: CSSCode, ptc: PTCFamily, delta, L: int | None = None, check_distance: bool = True):
        if qld.spec.q != ptc.spec.q:
            raise ValueError("QLD and PTC alphabets differ")
        if qld.stab.logical_x.shape[0] != ptc.n_ptc * ptc.spec.m:
            raise ValueError(f"QLD code encodes {qld.k_qudits} qudits but PTC blocks have {ptc.n_ptc}")
        self.qld = qld
        self.ptc = ptc
        self.delta = as_fraction(delta)
        self.radius = radius_of(self.delta, qld.n)
        if check_distance and qld.distance() <= self.radius:
            raise ValueError(f"QLD distance {qld.distance()} must exceed delta*n = {self.radius}")
        self.L = verify_qld(qld, self.delta).max_count if L is None else L
        self._composed: dict = {}
        self._lists: dict = {}

    @property
    def eps(self) -> Fraction:
        return self.ptc.eps_measured if self.ptc.eps_measured is not None else self.ptc.eps_target

    @property
    def claimed_failure(self) -> Fraction:
        return 2 * self.L * self.eps

    def composed(self, key: int) -> StabilizerCode:
        c = self._composed.get(key)
        if c is None:
            c = compose(self.qld.stab, self.ptc.code(key), name=f"QLDoPTC[{key}]")
            self._composed[key] = c
        return c

    def lifted_ptc(self, key: int) -> np.ndarray:
        return self.composed(key).generators[self.qld.stab.r :]

    def ptc_syndrome(self, key: int, E) -> np.ndarray:
        """Syndrome against the PTC generators lifted into the composed code."""
        V = self.qld.stab.vec(E)
        G = self.lifted_ptc(key)
        M = self.qld.stab.M
        return (V[..., M:] @ G[:, :M].T - V[..., :M] @ G[:, M:].T) % self.qld.spec.p

    def candidates(self, s_qld) -> np.ndarray:
        """Stabilizer-distinct candidates of weight <= delta n, in canonical order."""
        key = np.asarray(s_qld, dtype=np.int64).tobytes()
        hit = self._lists.get(key)
        if hit is None:
            L = qld_decode(self.qld, s_qld, self.delta, prune=True)
            if len(L):
                V = L.vectors()
                canon = self.qld.stab.canonical(V)
                order = np.lexsort(_pack(canon, self.qld.spec.p).T[::-1])
                hit = V[order]
            else:
                hit = np.zeros((0, 2 * self.qld.stab.M), dtype=np.int64)
            self._lists[key] = hit
        return hit


def lifted_detection_eps(paqecc: PrivateAQECC) -> Fraction:
    """max over E in N(Q_LD) \\ S(Q_LD) of Pr_key[E in N(Q_LD o Q_k) \\ S(Q_LD o Q_k)].

    Logical classes of Q_LD are enumerated as lifts of all nonidentity
    message Paulis; the result should not exceed the PTC's eps.
    """
    st = paqecc.qld.stab
    kk = st.logical_x.shape[0]
    K = paqecc.ptc.key_count
    worst = 0
    for Vm in _all_vectors(st.spec.p, 2 * kk):
        E = st.lift(Vm)
        cnt = np.zeros(E.shape[0], dtype=np.int64)
        for key in range(K):
            comp = paqecc.composed(key)
            und = ~np.any(comp.syndrome(E) != 0, axis=1)
            idx = np.flatnonzero(und)
            if idx.size:
                cnt[idx] += np.asarray(~comp.in_stabilizer(E[idx]), dtype=np.int64)
        worst = max(worst, int(cnt.max()))
    return Fraction(worst, K)


@dataclass
class PrivateDecodeResult:
    status: str  # "ok" or "reject"
    correction: PauliFrame | None
    matches: int = 0
    index: int = -1


def private_decode(paqecc: PrivateAQECC, key: int, s_qld, s_ptc) -> PrivateDecodeResult:
    """List decode the QLD syndrome, keep candidates whose lifted-PTC syndrome matches,
    and return the first in canonical order (or reject)."""
    cand = paqecc.candidates(s_qld)
    if cand.shape[0] == 0:
        return PrivateDecodeResult("reject", None)
    syn = paqecc.ptc_syndrome(key, cand)
    match = np.flatnonzero(np.all(syn == np.asarray(s_ptc)[None, :], axis=1))
    if match.size == 0:
        return PrivateDecodeResult("reject", None)
    i = int(match[0])
    return PrivateDecodeResult("ok", paqecc.qld.stab.frame(cand[i]), int(match.size), i)


def private_outcome(paqecc: PrivateAQECC, key: int, E, strict: bool = False) -> str:
    """'success', 'miscorrect' or 'reject' for error E under ``key``.

    ``strict`` counts a trial as failed when any matching candidate would
    miscorrect, not only the selected one.
    """
    st = paqecc.qld.stab
    V = st.vec(E)
    s_qld = st.syndrome(V)
    s_ptc = paqecc.ptc_syndrome(key, V)
    res = private_decode(paqecc, key, s_qld, s_ptc)
    if res.status == "reject":
        return "reject"
    comp = paqecc.composed(key)
    if strict:
        cand = paqecc.candidates(s_qld)
        syn = paqecc.ptc_syndrome(key, cand)
        match = np.all(syn == s_ptc[None, :], axis=1)
        diffs = (cand[match] - V[None, :]) % st.spec.p
        return "success" if bool(np.all(comp.in_stabilizer(diffs))) else "miscorrect"
    diff = (res.correction.symplectic() - V) % st.spec.p
    return "success" if comp.in_stabilizer(diff) else "miscorrect"


@dataclass
class SweepReport:
    """Exhaustive (error x key) sweep of the private decoder."""

    errors: int
    keys: int
    max_error_failure: Fraction
    mean_failure: Fraction
    L: int
    eps: Fraction
    worst_error: np.ndarray | None

    @property
    def per_error_bound(self) -> Fraction:
        return self.L * self.eps

    @property
    def ok(self) -> bool:
        return self.max_error_failure <= self.per_error_bound and self.mean_failure <= 2 * self.per_error_bound


def exhaustive_private_sweep(paqecc: PrivateAQECC, strict: bool = False) -> SweepReport:
    """Failure of the private decoder for every error of weight <= delta n and every key.

    An error's outcome depends only on its stabilizer class (syndromes are
    class functions and the lifted PTC generators commute with the QLD
    stabilizers), so classes are swept and weighted by their number of
    low-weight members.
    """
    from .pauli import iter_weight

    st = paqecc.qld.stab
    p = st.spec.p
    weights: dict = {}
    for w in range(paqecc.radius + 1):
        for V in iter_weight(st.spec, st.n, st.ext, w):
            ck = _pack(st.canonical(V), p)
            u, inv, cnt = np.unique(ck, axis=0, return_inverse=True, return_counts=True)
            first = np.zeros(u.shape[0], dtype=np.int64)
            first[inv[::-1]] = np.arange(V.shape[0])[::-1]
            for row, c, f in zip(u, cnt, first):
                k = row.tobytes()
                if k in weights:
                    weights[k][1] += int(c)
                else:
                    weights[k] = [V[f].copy(), int(c)]
    K = paqecc.ptc.key_count
    worst, worst_vec, total_fail, total_err = Fraction(0), None, 0, 0
    for rep, mult in weights.values():
        fails = sum(private_outcome(paqecc, key, rep, strict) != "success" for key in range(K))
        fr = Fraction(fails, K)
        if fr > worst:
            worst, worst_vec = fr, rep
        total_fail += fails * mult
        total_err += mult
    return SweepReport(total_err, K, worst, Fraction(total_fail, total_err * K), paqecc.L, paqecc.eps, worst_vec)


# ---------------------------------------------------------------------------
# robust secret sharing


@dataclass(frozen=True)
class RSSShare:
    index: int
    sigma: tuple  # Shamir share, one field element per secret coordinate
    tags: tuple  # tags[j]: authenticates sigma towards player j
    keys: tuple  # keys[j] = (b_1..b_s, c): verifies player j's sigma

    def flat(self) -> tuple:
        out = list(self.sigma) + list(self.tags)
        for k in self.keys:
            out.extend(k)
        return tuple(out)


@dataclass
class RSSScheme:
    """Shamir sharing of degree d over F_a with pairwise one-time MACs.

    Player i holds sigma_i = f(x_i), tags t_ij = c_ij + <b_ij, sigma_i> and
    the keys (b_ji, c_ji) that check every other player.  A share is accepted
    when at least d + 1 other players' keys verify it; the secret is then
    interpolated from accepted shares.  Needs n >= 2d + 2.
    """

    a: int
    n: int
    d: int
    s: int = 1

    def __post_init__(self):
        self.F = field(self.a)
        if not self.F.is_prime:
            raise ValueError("share alphabet must be a prime")
        if self.n < 2 * self.d + 2:
            raise ValueError(f"need n >= 2d + 2 (n={self.n}, d={self.d})")
        if self.n >= self.a:
            raise ValueError("need n < a for distinct evaluation points")

    @property
    def eps(self) -> Fraction:
        """Forgery bound: <= d corrupted shares, each must fool one of n - d honest keys."""
        return Fraction(self.d * (self.n - self.d), self.a)

    @property
    def points(self) -> np.ndarray:
        return np.arange(1, self.n + 1, dtype=np.int64)

    @property
    def randomness_size(self) -> int:
        n, s = self.n, self.s
        return self.d * s + n * (n - 1) * (s + 1)

    def capacity_bits(self) -> float:
        return self.s * log2(self.a)


def _share_arrays(scheme: RSSScheme, secret: np.ndarray, rnd: np.ndarray):
    """Batched sharing: rnd is (B, randomness_size); returns sigma (B,n,s), tags (B,n,n), held keys (B,n,n,s+1).

    held[:, i, j] is the MAC key of pair (j -> i), which player i stores for j.
    """
    a, n, d, s = scheme.a, scheme.n, scheme.d, scheme.s
    B = rnd.shape[0]
    coeffs = np.concatenate([np.broadcast_to(secret, (B, 1, s)), rnd[:, : d * s].reshape(B, d, s)], axis=1)
    x = scheme.points
    V = (x[:, None] ** np.arange(d + 1)[None, :]) % a
    sigma = np.einsum("nd,bds->bns", V, coeffs) % a
    macs = rnd[:, d * s :].reshape(B, n, n - 1, s + 1)
    keys = np.zeros((B, n, n, s + 1), dtype=np.int64)
    for i in range(n):
        others = [j for j in range(n) if j != i]
        keys[:, i, others] = macs[:, i]
    tags = (keys[..., s] + np.einsum("bijs,bis->bij", keys[..., :s], sigma)) % a
    idx = np.arange(n)
    tags[:, idx, idx] = 0
    held = keys.transpose(0, 2, 1, 3).copy()
    held[:, idx, idx] = 0
    return sigma, tags, held


def rss_share(scheme: RSSScheme, secret, randomness=None, rng: np.random.Generator | None = None) -> list[RSSShare]:
    """Share ``secret`` (s field elements).  ``randomness`` (length randomness_size) overrides ``rng``."""
    a, n, s = scheme.a, scheme.n, scheme.s
    secret = np.asarray(secret, dtype=np.int64).reshape(s)
    if np.any(secret < 0) or np.any(secret >= a):
        raise ValueError("secret outside the share alphabet")
    if randomness is None:
        rng = np.random.default_rng() if rng is None else rng
        randomness = rng.integers(0, a, size=scheme.randomness_size)
    rnd = np.asarray(randomness, dtype=np.int64)
    if rnd.size != scheme.randomness_size:
        raise ValueError(f"need {scheme.randomness_size} random field elements")
    sigma, tags, held = _share_arrays(scheme, secret, rnd.reshape(1, -1))
    sigma, tags, held = sigma[0].tolist(), tags[0].tolist(), held[0].tolist()
    return [
        RSSShare(i, tuple(sigma[i]), tuple(tags[i]), tuple(tuple(k) for k in held[i]))
        for i in range(n)
    ]


def rss_reconstruct(scheme: RSSScheme, shares: list[RSSShare]) -> np.ndarray | None:
    """Secret, or None (abort) when fewer than d + 1 shares are accepted or they disagree."""
    a, n, d, s = scheme.a, scheme.n, scheme.d, scheme.s
    if len(shares) != n:
        return None
    accepted = []
    for i, sh in enumerate(shares):
        try:
            sig = np.asarray(sh.sigma, dtype=np.int64).reshape(s)
        except ValueError:
            continue
        votes = 0
        for j in range(n):
            if j == i:
                continue
            try:
                kb = np.asarray(shares[j].keys[i], dtype=np.int64).reshape(s + 1)
                t = int(sh.tags[j])
            except (ValueError, IndexError, TypeError):
                continue
            if (kb[s] + kb[:s] @ sig) % a == t % a:
                votes += 1
        if votes >= d + 1:
            accepted.append((i, sig % a))
    if len(accepted) < d + 1:
        return None
    xs = np.array([scheme.points[i] for i, _ in accepted], dtype=np.int64)
    ys = np.array([sg for _, sg in accepted], dtype=np.int64)
    # interpolate from the first d + 1 accepted shares, check the rest agree
    F = scheme.F
    use = slice(0, d + 1)
    V = (xs[use, None] ** np.arange(d + 1)[None, :]) % a
    coeffs = la.solve_many(F, V, ys[use].T)
    if coeffs is None:
        return None
    coeffs = coeffs.T  # (d + 1, s)
    Vall = (xs[:, None] ** np.arange(d + 1)[None, :]) % a
    if np.any((Vall @ coeffs) % a != ys):
        return None
    return coeffs[0] % a


def rss_view(shares: list[RSSShare], A) -> tuple:
    return tuple(v for i in sorted(A) for v in shares[i].flat())


def rss_view_distribution(scheme: RSSScheme, secret, A) -> dict:
    """Exact distribution of the view of players A, by enumerating the randomness it depends on.

    The view of A reads the polynomial coefficients and the MAC keys of pairs
    (i -> j) with i in A (through the tags, or verbatim when j is in A too).
    Keys of pairs (j -> i) with j outside A appear verbatim and independently
    of everything else; :func:`rss_key_part_is_verbatim` checks that.  Other
    randomness is held at zero.
    """
    a, n, d, s = scheme.a, scheme.n, scheme.d, scheme.s
    A = sorted(A)
    idx = list(range(d * s))
    base = d * s
    for i in A:
        for slot in range(n - 1):
            off = base + (i * (n - 1) + slot) * (s + 1)
            idx.extend(range(off, off + s + 1))
    if a ** len(idx) > 1 << 24:
        raise ValueError("view randomness too large to enumerate")
    secret = np.asarray(secret, dtype=np.int64).reshape(s)
    combos = np.array(list(product(range(a), repeat=len(idx))), dtype=np.int64).reshape(-1, len(idx))
    rnd = np.zeros((combos.shape[0], scheme.randomness_size), dtype=np.int64)
    rnd[:, idx] = combos
    sigma, tags, held = _share_arrays(scheme, secret, rnd)
    # keys from players outside A are verbatim uniform values, checked separately
    parts = [np.concatenate([sigma[:, i], tags[:, i], held[:, i, A].reshape(len(rnd), -1)], axis=1) for i in A]
    views = np.concatenate(parts, axis=1) if parts else np.zeros((len(rnd), 0), dtype=np.int64)
    rows, counts = np.unique(views, axis=0, return_counts=True)
    return {tuple(int(v) for v in r): int(c) for r, c in zip(rows, counts)}


def rss_key_part_is_verbatim(scheme: RSSScheme, A) -> bool:
    """The keys held by A are raw random values: changing one changes exactly that view entry."""
    a, n, d, s = scheme.a, scheme.n, scheme.d, scheme.s
    rng = np.random.default_rng(0)
    rnd = rng.integers(0, a, size=scheme.randomness_size)
    secret = np.zeros(s, dtype=np.int64)
    ref = rss_share(scheme, secret, rnd)
    for i in A:
        for j in range(n):
            if j == i or j in A:
                continue
            slot = i if i < j else i - 1
            off = d * s + (j * (n - 1) + slot) * (s + 1)
            for t in range(s + 1):
                r2 = rnd.copy()
                r2[off + t] = (r2[off + t] + 1) % a
                sh = rss_share(scheme, secret, r2)
                if sh[i].keys[j][t] != (ref[i].keys[j][t] + 1) % a:
                    return False
                if sh[i].sigma != ref[i].sigma:
                    return False
    return True


def rss_privacy_check(scheme: RSSScheme, secret0, secret1, A) -> bool:
    return rss_view_distribution(scheme, secret0, A) == rss_view_distribution(scheme, secret1, A)


def corrupt_shares(scheme: RSSScheme, shares: list[RSSShare], A, rng: np.random.Generator) -> list[RSSShare]:
    """Replace the shares in A with uniformly random values (same shape)."""
    a, n, s = scheme.a, scheme.n, scheme.s
    out = list(shares)
    for i in A:
        sig = tuple(int(v) for v in rng.integers(0, a, size=s))
        tags = tuple(int(v) for v in rng.integers(0, a, size=n))
        keys = tuple(tuple(int(v) for v in rng.integers(0, a, size=s + 1)) for _ in range(n))
        out[i] = RSSShare(i, sig, tags, keys)
    return out


# ---------------------------------------------------------------------------
# removing the shared key


class AQECC:
    """Private AQECC whose key is robustly secret shared across the code symbols.

    Symbol i carries code symbol i together with share i.
    """

    def __init__(self, paqecc: PrivateAQECC, rss: RSSScheme):
        if rss.n != paqecc.qld.n:
            raise ValueError(f"need one share per code symbol ({paqecc.qld.n}), got {rss.n}")
        if rss.a**rss.s < paqecc.ptc.key_count:
            raise ValueError(
                "secret capacity a^s = {} is below the key count {} (key length must not exceed the shared secret)".format(
                    rss.a**rss.s, paqecc.ptc.key_count
                )
            )
        if rss.d < paqecc.radius:
            raise ValueError(f"sharing threshold d={rss.d} is below the error budget {paqecc.radius}")
        self.paqecc = paqecc
        self.rss = rss

    @property
    def eps(self) -> Fraction:
        return self.paqecc.claimed_failure + self.rss.eps

    @property
    def alphabet(self) -> int:
        q = self.paqecc.qld.spec.q ** self.paqecc.qld.ext
        return q * self.rss.a ** (self.rss.s + self.rss.n + self.rss.n * (self.rss.s + 1))

    def key_to_secret(self, key: int) -> np.ndarray:
        a, s = self.rss.a, self.rss.s
        return np.array([(key // a**i) % a for i in range(s)], dtype=np.int64)

    def secret_to_key(self, secret) -> int:
        a = self.rss.a
        return int(sum(int(v) * a**i for i, v in enumerate(secret)))

    def decode(self, shares: list[RSSShare], s_qld, s_ptc_fn) -> tuple[str, PauliFrame | None, int | None]:
        """Reconstruct the key, then run the private decoder.

        ``s_ptc_fn(key)`` returns the PTC syndrome measured under the true key
        (the codestate was prepared with it; the receiver measures using the
        reconstructed key, so a wrong key gives a meaningless syndrome).
        """
        sec = rss_reconstruct(self.rss, shares)
        if sec is None:
            return "abort", None, None
        key = self.secret_to_key(sec)
        if key >= self.paqecc.ptc.key_count:
            return "abort", None, key
        res = private_decode(self.paqecc, key, s_qld, s_ptc_fn(key))
        return res.status, res.correction, key


def build_aqecc(paqecc: PrivateAQECC, rss: RSSScheme) -> AQECC:
    return AQECC(paqecc, rss)


# ---------------------------------------------------------------------------
# direct construction with independent keys per inner block


class DirectAQECC:
    """Outer CSS code over GF(q_in^k_P), inner blocks (Q_in o P^key_i), expander permutation.

    Decoding is outer unique decoding after per-block private decoding.
    Every block has its own key; the per-block logical dictionary is that of
    the composed block code for that key.
    """

    def __init__(self, outer: CSSCode, inner: CSSCode, ptc: PTCFamily, graph, delta_in, mode: str = "reducing"):
        from .ael import pi_table

        if inner.k_qudits != ptc.n_ptc or inner.spec.q != ptc.spec.q:
            raise ValueError("inner code must encode exactly one PTC block")
        if not inner.spec.is_prime or inner.ext != 1 or outer.ext != 1:
            raise ValueError("direct construction needs a prime inner alphabet and unblocked codes")
        if outer.spec.p != inner.spec.p or outer.spec.m != ptc.k_qudits:
            raise ValueError(f"outer alphabet must be q_in^{ptc.k_qudits}")
        n_in = inner.n
        if mode == "basic":
            b = 1
            if graph.r != n_in or graph.n != outer.n:
                raise ValueError("basic mode needs an n_in-regular graph on n_out vertices")
        else:
            if n_in % graph.r or graph.n != outer.n * (n_in // graph.r):
                raise ValueError("reducing mode needs r | n_in and n_out * n_in / r vertices")
            b = n_in // graph.r
        self.outer, self.inner, self.ptc, self.graph, self.mode, self.b = outer, inner, ptc, graph, mode, b
        self.delta_in = as_fraction(delta_in)
        self.r_in = radius_of(self.delta_in, n_in)
        if inner.distance() <= self.r_in:
            raise ValueError("inner distance must exceed its list radius")
        self.perm = pi_table(graph)
        self.table = low_weight_table(inner.stab, self.r_in)
        self.L_in = max(len(v) for v in self.table.values())
        self.radius_out = (min(outer.c1.distance, outer.c2.distance) - 1) // 2
        self._comp: dict = {}
        self._memo: dict = {}

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def eps_in(self) -> Fraction:
        return self.ptc.eps_measured if self.ptc.eps_measured is not None else self.ptc.eps_target

    @property
    def block_bound(self) -> Fraction:
        """Per-block failure bound L_in * eps_in for blocks within the inner radius."""
        return self.L_in * self.eps_in

    @property
    def rate(self) -> Fraction:
        return Fraction(self.outer.k_qudits * self.ptc.k_qudits, self.outer.n * self.inner.n)

    def composed(self, key: int):
        c = self._comp.get(key)
        if c is None:
            comp = compose(self.inner.stab, self.ptc.code(key))
            lifted = comp.generators[self.inner.stab.r :]
            c = (comp, lifted)
            self._comp[key] = c
        return c

    def block_outcome(self, V: np.ndarray, key: int) -> tuple[int, int, str]:
        """(outer x symbol, outer z symbol, status) for block error V under ``key``.

        The symbols are the logical residual after private decoding (0, 0
        when the block is corrected up to a stabilizer).
        """
        mk = (V.tobytes(), key)
        hit = self._memo.get(mk)
        if hit is not None:
            return hit
        st = self.inner.stab
        p = st.spec.p
        comp, lifted = self.composed(key)
        M = st.M
        s_qld = st.syndrome(V)
        s_ptc = (V[M:] @ lifted[:, :M].T - V[:M] @ lifted[:, M:].T) % p
        cands = self.table.get(_pack(s_qld, p)[0].tobytes(), [])
        chosen = None
        for _, rep in cands:
            cs = (rep[M:] @ lifted[:, :M].T - rep[:M] @ lifted[:, M:].T) % p
            if np.array_equal(cs, s_ptc):
                chosen = rep
                break
        status = "ok"
        if chosen is None:
            status = "reject"
            chosen = comp.solve_syndrome(comp.syndrome(V))
        resid = (V - chosen) % p
        coords = comp.logical_coordinates(resid)[0]
        k = self.ptc.k_qudits
        Fo = self.outer.spec
        out = (int(Fo.from_digits(coords[:k])), int(Fo.from_dual_digits(coords[k:])), status)
        if out[0] or out[1]:
            out = (out[0], out[1], "reject" if status == "reject" else "miscorrect")
        if len(self._memo) > 1 << 20:
            self._memo.clear()
        self._memo[mk] = out
        return out

    def decode_error(self, ax: np.ndarray, az: np.ndarray, keys) -> dict:
        """Run the pipeline on an error given in permuted (transmitted) order."""
        n_out, n_in = self.outer.n, self.inner.n
        F = self.inner.spec
        cx = np.asarray(ax)[self.perm].reshape(n_out, n_in)
        cz = np.asarray(az)[self.perm].reshape(n_out, n_in)
        V = np.concatenate([F.to_digits(cx).reshape(n_out, -1), F.to_dual_digits(cz).reshape(n_out, -1)], axis=1)
        ex = np.zeros(n_out, dtype=np.int64)
        ez = np.zeros(n_out, dtype=np.int64)
        failed = 0
        overloaded = 0
        for i in range(n_out):
            wt = int(np.sum((cx[i] != 0) | (cz[i] != 0)))
            overloaded += wt > self.r_in
            if wt == 0:
                continue
            x, z, status = self.block_outcome(V[i], int(keys[i]))
            ex[i], ez[i] = x, z
            failed += status != "ok"
        bad_symbols = int(np.sum((ex != 0) | (ez != 0)))
        if bad_symbols <= self.radius_out:
            success = True  # unique decoding within radius returns the exact error
        else:
            cw_x = unique_decode(self.outer.c1, ex, self.radius_out)
            cw_z = unique_decode(self.outer.c2, ez, self.radius_out)
            success = False
            if cw_x is not None and cw_z is not None:
                # residual outer error after correction is (cw_x, cw_z); harmless iff a stabilizer
                E = self.outer.frame(cw_x, cw_z)
                success = bool(self.outer.stab.in_stabilizer(E))
        return {"success": success, "failed_blocks": failed, "bad_symbols": bad_symbols, "overloaded": overloaded}

    @property
    def delta_out(self) -> Fraction:
        return Fraction(self.radius_out, self.outer.n)

    def binomial_tail(self, overloaded: int, p_block: float | None = None) -> float:
        """Pr[Bin(n_out - |S'|, p) + |S'| >= t] with t = outer radius + 1.

        ``p`` defaults to delta_out / 10, the per-block failure rate the
        analysis budgets for blocks outside S'.
        """
        p = float(self.delta_out) / 10 if p_block is None else p_block
        p = min(1.0, p)
        n = self.outer.n - overloaded
        t = self.radius_out + 1 - overloaded
        if t <= 0:
            return 1.0
        return float(sum(comb(n, j) * p**j * (1 - p) ** (n - j) for j in range(t, n + 1)))

    def block_sweep(self) -> tuple[Fraction, int]:
        """Exhaustive over block errors of weight <= inner radius and all keys.

        Returns the worst key-averaged block failure (nonzero logical
        residual or rejection) and the number of stabilizer classes swept.
        The key-average must not exceed L_in * eps_in.
        """
        K = self.ptc.key_count
        worst = Fraction(0)
        classes = 0
        for bucket in self.table.values():
            for _, rep in bucket:
                classes += 1
                fails = sum(self.block_outcome(rep, key)[2] != "ok" for key in range(K))
                worst = max(worst, Fraction(fails, K))
        return worst, classes


def build_direct_aqecc(outer: CSSCode, inner_css: CSSCode, ptc: PTCFamily, G, delta_in, mode: str = "reducing") -> DirectAQECC:
    return DirectAQECC(outer, inner_css, ptc, G, delta_in, mode)


# ---------------------------------------------------------------------------
# planner and bounds


def h2(x: float) -> float:
    if x <= 0 or x >= 1:
        return 0.0
    return -x * log2(x) - (1 - x) * log2(1 - x)


@dataclass
class ParameterPlan:
    R: Fraction
    gamma: Fraction
    gamma2: Fraction  # gamma''
    R1: Fraction  # R'
    gamma1: float  # gamma'
    r_rss: Fraction
    f_value: float
    case: str
    log2_q: int
    log2_a: int
    radius: float
    target_radius: float
    n: int | None = None
    lam: int | None = None
    n_ptc: int | None = None
    notes: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        d = {}
        for k, v in self.__dict__.items():
            d[k] = str(v) if isinstance(v, Fraction) else v
        return d


def plan_parameters(R, gamma, n: int | None = None, c: float = 1.0) -> ParameterPlan:
    """Rate/radius bookkeeping for the key-free construction.

    gamma'' = gamma / 4, R' = R / (1 - gamma''), RSS rate r = gamma'',
    f(gamma'') = c * gamma''^(3/5) and gamma' = gamma'' if gamma'' < f else f.
    Alphabet exponents use unit constants: log2 q = ceil(1 / gamma'^5) and
    log2 a = ceil(1 / gamma''^2).
    """
    R = as_fraction(R)
    gamma = as_fraction(gamma)
    if not 0 < R < 1 or gamma <= 0:
        raise ValueError("need 0 < R < 1 and gamma > 0")
    g2 = gamma / 4
    notes = []
    R1 = R / (1 - g2) if g2 < 1 else Fraction(10**9)
    f = c * float(g2) ** 0.6
    if float(g2) < f:
        g1, case = float(g2), "gamma'' < f(gamma'')"
    else:
        g1, case = f, "gamma'' >= f(gamma'')"
    r_rss = g2
    target = max(0.0, float(1 - R - gamma) / 2)
    if R > 1 - gamma or R1 >= 1:
        notes.append("R > 1 - gamma: decoding radius is 0")
        radius = 0.0
    else:
        radius = 0.5 * min(1 - float(R1) - g1, 1 - float(r_rss) - float(g2))
        radius = max(radius, 0.0)
    log2_q = int(np.ceil(1 / g1**5))
    log2_a = int(np.ceil(1 / float(g2) ** 2))
    plan = ParameterPlan(R, gamma, g2, R1, g1, r_rss, f, case, log2_q, log2_a, radius, target, notes=notes)
    if n is not None:
        plan.n = n
        plan.lam = max(1, int(np.ceil(n / log2_q)))
        n_ptc = int(np.ceil((float(R1) + g1 / 2) * n))
        n_ptc += (-n_ptc) % plan.lam
        plan.n_ptc = n_ptc
        if n_ptc > n:
            notes.append("n_ptc exceeds n at this block length")
    return plan


@dataclass
class SingletonResult:
    ok: bool
    bound: float
    slack: float
    d: int


def singleton_check(n: int, k, q: int, delta, eps: float = 0.0) -> SingletonResult:
    """Robust quantum Singleton: k <= n - 2(d - 1) + 12 sqrt(eps) n + H2(min(4 sqrt(eps), 1/2)) / log2 q."""
    delta = as_fraction(delta)
    d = floor(delta * n) + 1
    e = sqrt(eps)
    bound = n - 2 * (d - 1) + 12 * e * n + h2(min(4 * e, 0.5)) / log2(q)
    if eps == 0:
        bound = float(n - 2 * (d - 1))
    slack = bound - float(k)
    return SingletonResult(slack >= 0, bound, slack, d)
