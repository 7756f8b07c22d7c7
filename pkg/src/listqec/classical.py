"""Classical F_q-linear codes over blocked alphabets.

A code of length ``n`` with alphabet extension ``ext`` lives in
``(F_q^ext)^n``; words are flat int arrays of length ``n * ext`` and the
weight of a word counts nonzero ``ext``-blocks.  Lists returned by the
decoders are 2-D arrays (one codeword per row) in lexicographic order of
their messages.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

import numpy as np

from . import linalg as la
from .gf import FieldSpec

BRUTE_FORCE_LIMIT = 1 << 24


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    return Fraction(x)


def radius_of(tau, n: int) -> int:
    """Number of tolerated symbol errors, floor(tau * n)."""
    return math.floor(as_fraction(tau) * n)


def agreement_of(eta, n: int) -> int:
    """Number of required agreements, ceil(eta * n)."""
    return math.ceil(as_fraction(eta) * n)


class LinearCode:
    """F_q-linear code with generator (dim x n*ext) and parity check matrices."""

    def __init__(
        self,
        spec: FieldSpec,
        generator,
        n: int | None = None,
        ext: int = 1,
        parity=None,
        grs: GRSSpec | None = None,
        name: str = "",
        reduce: bool = False,
    ):
        G = la.as_matrix(generator, None if n is None else n * ext)
        if n is None:
            if G.shape[1] % ext:
                raise ValueError("generator width is not a multiple of ext")
            n = G.shape[1] // ext
        if G.shape[1] != n * ext:
            raise ValueError(f"generator has {G.shape[1]} columns, expected {n * ext}")
        if np.any((G < 0) | (G >= spec.q)):
            raise ValueError("generator entries outside the field")
        if reduce and G.shape[0]:
            G, _ = la.rref(spec, G)
        rk = la.rank(spec, G)
        if rk != G.shape[0]:
            raise ValueError(f"generator rows are dependent (rank {rk} < {G.shape[0]})")
        self.spec = spec
        self.n = n
        self.ext = ext
        self.generator = G
        self.grs = grs
        self.name = name
        if parity is None:
            parity = la.nullspace(spec, G, n * ext)
        self.parity = la.as_matrix(parity, n * ext)
        if self.parity.shape[0] != n * ext - G.shape[0]:
            raise ValueError("parity matrix has the wrong number of rows")
        if G.shape[0] and self.parity.shape[0] and np.any(la.matmul(spec, G, self.parity.T)):
            raise ValueError("generator and parity are not orthogonal")
        self._rref = None
        self._distance = None

    # -- sizes ------------------------------------------------------------

    @property
    def N(self) -> int:
        return self.n * self.ext

    @property
    def dim(self) -> int:
        """Dimension over the base field."""
        return self.generator.shape[0]

    @property
    def k(self) -> Fraction:
        """Dimension measured in alphabet symbols."""
        return Fraction(self.dim, self.ext)

    @property
    def rate(self) -> Fraction:
        return Fraction(self.dim, self.N)

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        alpha = f"{self.spec.q}^{self.ext}" if self.ext > 1 else f"{self.spec.q}"
        return f"<LinearCode{tag} [{self.n},{self.k}]_{alpha}>"

    # -- basic maps -------------------------------------------------------

    def encode(self, msgs) -> np.ndarray:
        return la.matmul(self.spec, np.asarray(msgs, dtype=np.int64), self.generator)

    def syndrome(self, words) -> np.ndarray:
        return la.matmul(self.spec, np.asarray(words, dtype=np.int64), self.parity.T)

    def contains(self, words) -> np.ndarray | bool:
        s = self.syndrome(words)
        res = ~np.any(s != 0, axis=-1)
        return bool(res) if np.ndim(words) == 1 else res

    def symbols(self, words) -> np.ndarray:
        w = np.asarray(words, dtype=np.int64)
        return w.reshape(w.shape[:-1] + (self.n, self.ext))

    def symbol_ids(self, words) -> np.ndarray:
        """Each ext-block packed into one integer (base q, first digit most significant)."""
        pw = self.spec.q ** np.arange(self.ext - 1, -1, -1, dtype=np.int64)
        return self.symbols(words) @ pw

    def weight(self, words) -> np.ndarray:
        return np.any(self.symbols(words) != 0, axis=-1).sum(axis=-1)

    def distance_between(self, a, b) -> np.ndarray:
        diff = self.spec.sub(np.asarray(a), np.asarray(b))
        return self.weight(diff)

    def rref(self) -> tuple[np.ndarray, list[int]]:
        if self._rref is None:
            self._rref = la.rref(self.spec, self.generator) if self.dim else (self.generator, [])
        return self._rref

    def message_of(self, words) -> np.ndarray:
        """Inverse of encode on codewords."""
        X = la.solve_many(self.spec, self.generator.T, np.atleast_2d(words))
        if X is None:
            raise ValueError("word is not a codeword")
        return X[0] if np.ndim(words) == 1 else X

    def codewords(self, chunk: int | None = None) -> Iterable[tuple[np.ndarray, np.ndarray]]:
        """Yield (messages, codewords) blocks in lexicographic message order."""
        count = self.spec.q**self.dim
        if count > BRUTE_FORCE_LIMIT:
            raise ValueError(f"refusing to enumerate {count} codewords (limit {BRUTE_FORCE_LIMIT})")
        yield from la.enumerate_span(self.spec, self.generator, chunk)

    def all_codewords(self) -> np.ndarray:
        return np.concatenate([c for _, c in self.codewords()], axis=0)

    def dual(self) -> LinearCode:
        g = grs_dual(self.grs) if self.grs is not None and self.ext == 1 else None
        return LinearCode(self.spec, self.parity, self.n, self.ext, parity=self.generator, grs=g)

    def same_code(self, other: LinearCode) -> bool:
        if self.N != other.N or self.dim != other.dim:
            return False
        if self.dim == 0:
            return True
        return bool(np.all(self.contains(other.generator)))

    def contains_code(self, other: LinearCode) -> bool:
        if other.dim == 0:
            return True
        return bool(np.all(self.contains(other.generator)))

    # -- distance ---------------------------------------------------------

    def min_distance(self, method: str = "auto") -> int:
        """Exact minimum symbol distance.

        ``enumerate`` scans one representative of every nonzero codeword up
        to scaling.  ``support`` searches for the smallest symbol set that
        carries a nonzero codeword, using rank tests on column subsets.
        """
        if self.dim == 0:
            return self.n + 1
        if method == "auto":
            method = "enumerate" if self.spec.q ** (self.dim - 1) <= (1 << 22) else "support"
        if method == "enumerate":
            return _min_weight_enumerate(self)
        if method == "support":
            return _min_weight_support(self)
        raise ValueError(f"unknown method {method!r}")

    @property
    def distance(self) -> int:
        if self._distance is None:
            if self.grs is not None and self.ext == 1:
                self._distance = self.n - self.dim + 1
            else:
                self._distance = self.min_distance()
        return self._distance


def _min_weight_enumerate(code: LinearCode) -> int:
    F, K = code.spec, code.dim
    if F.q ** (K - 1) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"enumeration of {F.q ** (K - 1)} codewords refused")
    best = code.n + 1
    for lead in range(K):
        tail = K - lead - 1
        base = code.generator[lead]
        rest = code.generator[lead + 1 :]
        if tail == 0:
            best = min(best, int(code.weight(base)))
            continue
        for _, words in la.enumerate_span(F, rest):
            words = F.add(words, base[None, :])
            best = min(best, int(code.weight(words).min()))
    return best


def _min_weight_support(code: LinearCode) -> int:
    K = code.dim
    G = code.generator
    for w in range(1, code.n + 1):
        # a nonzero codeword of weight <= w vanishes on some n-w symbols
        for zero in combinations(range(code.n), code.n - w):
            cols = [s * code.ext + e for s in zero for e in range(code.ext)]
            if la.rank(code.spec, G[:, cols]) < K:
                return w
    return code.n + 1


# ---------------------------------------------------------------------------
# polynomials over F (coefficients low -> high)


def poly_eval(F: FieldSpec, coeffs, points) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=np.int64)
    points = np.asarray(points, dtype=np.int64)
    out = np.zeros(points.shape, dtype=np.int64)
    for c in coeffs[::-1]:
        out = F.add(F.mul(out, points), c)
    return out


def poly_trim(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


def poly_divmod(F: FieldSpec, a, b) -> tuple[np.ndarray, np.ndarray]:
    a = poly_trim(a).copy()
    b = poly_trim(b)
    if b.size == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if a.size < b.size:
        return np.zeros(0, dtype=np.int64), a
    inv_lead = F.inv(b[-1])
    quot = np.zeros(a.size - b.size + 1, dtype=np.int64)
    for shift in range(a.size - b.size, -1, -1):
        c = F.mul(a[shift + b.size - 1], inv_lead)
        if c:
            quot[shift] = c
            a[shift : shift + b.size] = F.sub(a[shift : shift + b.size], F.mul(c, b))
    return quot, poly_trim(a)


# ---------------------------------------------------------------------------
# generalised Reed-Solomon codes


@dataclass(frozen=True)
class GRSSpec:
    """Evaluation code f -> (u_i f(gamma^i))_i for deg f < k."""

    spec: FieldSpec
    n: int
    k: int
    gamma: int
    multipliers: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")
        if self.n >= self.spec.q:
            raise ValueError(f"need n < q, got n={self.n}, q={self.spec.q}")
        if len(self.multipliers) != self.n or any(u == 0 for u in self.multipliers):
            raise ValueError("multipliers must be n nonzero field elements")
        pts = self.points()
        if len(set(pts.tolist())) != self.n:
            raise ValueError("evaluation points gamma^i are not distinct")

    @classmethod
    def make(cls, spec: FieldSpec, n: int, k: int, gamma: int | None = None, multipliers=None) -> GRSSpec:
        gamma = spec.primitive if gamma is None else int(gamma)
        u = (1,) * n if multipliers is None else tuple(int(x) for x in multipliers)
        return cls(spec, n, k, gamma, u)

    def points(self) -> np.ndarray:
        return np.array([int(self.spec.pow(self.gamma, i)) for i in range(self.n)], dtype=np.int64)

    def generator(self) -> np.ndarray:
        F = self.spec
        pts = self.points()
        u = np.array(self.multipliers, dtype=np.int64)
        G = np.zeros((self.k, self.n), dtype=np.int64)
        cur = np.ones(self.n, dtype=np.int64)
        for i in range(self.k):
            G[i] = F.mul(u, cur)
            cur = F.mul(cur, pts)
        return G


def grs_dual(g: GRSSpec) -> GRSSpec:
    """Dual GRS code: same points, dimension n-k, multipliers (u_i prod_{j!=i}(a_i-a_j))^-1."""
    F = g.spec
    pts = g.points()
    v = []
    for i in range(g.n):
        prod = int(g.multipliers[i])
        for j in range(g.n):
            if j != i:
                prod = int(F.mul(prod, F.sub(pts[i], pts[j])))
        v.append(int(F.inv(prod)))
    return GRSSpec(F, g.n, g.n - g.k, g.gamma, tuple(v))


def grs_build(g: GRSSpec) -> LinearCode:
    if g.k < 1 or g.k >= g.n:
        raise ValueError(f"GRS code needs 1 <= k < n, got k={g.k}, n={g.n}")
    d = grs_dual(g)
    code = LinearCode(g.spec, g.generator(), g.n, 1, parity=d.generator(), grs=g, name=f"GRS[{g.n},{g.k}]")
    return code


def rs_code(spec: FieldSpec, n: int, k: int, gamma: int | None = None, multipliers=None) -> LinearCode:
    return grs_build(GRSSpec.make(spec, n, k, gamma, multipliers))


# ---------------------------------------------------------------------------
# folding


class FoldedCode(LinearCode):
    """The m-folded version of a base code: m consecutive symbols form one."""

    def __init__(self, base: LinearCode, fold: int):
        if fold < 1 or base.n % fold:
            raise ValueError(f"fold {fold} does not divide block length {base.n}")
        super().__init__(
            base.spec,
            base.generator,
            base.n // fold,
            base.ext * fold,
            parity=base.parity,
            name=f"{base.name}^({fold})" if base.name else "",
        )
        self.base = base
        self.fold = fold

    def unfold(self, words) -> np.ndarray:
        return np.asarray(words)

    def dual(self) -> FoldedCode:
        return FoldedCode(self.base.dual(), self.fold)


def fold(code: LinearCode, m: int) -> LinearCode:
    if m == 1:
        return code
    return FoldedCode(code, m)


# ---------------------------------------------------------------------------
# unique decoding


def berlekamp_welch(code: LinearCode, received, radius: int) -> np.ndarray | None:
    g = code.grs
    if g is None or code.ext != 1:
        raise ValueError("Berlekamp-Welch needs an unfolded GRS code")
    F = code.spec
    n, k = g.n, g.k
    y = F.div(np.asarray(received, dtype=np.int64), np.array(g.multipliers))
    pts = g.points()
    e = min(radius, (n - k) // 2)
    # unknowns: N_0..N_{e+k-1}, E_0..E_{e-1}; E monic of degree e
    cols_n = e + k
    A = np.zeros((n, cols_n + e), dtype=np.int64)
    pw = np.ones(n, dtype=np.int64)
    rhs = y
    for j in range(cols_n):
        A[:, j] = pw
        if j < e:
            A[:, cols_n + j] = F.neg(F.mul(y, pw))
        if j == e:
            rhs = F.mul(y, pw)
        pw = F.mul(pw, pts)
    sol = la.solve(F, A, rhs)
    if sol is None:
        return None
    quot, rem = poly_divmod(F, sol[:cols_n], np.concatenate([sol[cols_n:], [1]]))
    if rem.size or quot.size > k:
        return None
    msg = np.zeros(k, dtype=np.int64)
    msg[: quot.size] = quot
    cw = code.encode(msg)
    if int(code.distance_between(cw, received)) <= radius:
        return cw
    return None


class _SyndromeTable:
    def __init__(self, code: LinearCode, radius: int):
        F = code.spec
        self.code = code
        self.radius = radius
        self.table: dict[bytes, np.ndarray] = {}
        nonzero = np.arange(1, F.q**code.ext)
        pw = F.q ** np.arange(code.ext - 1, -1, -1)
        sym = (nonzero[:, None] // pw[None, :]) % F.q
        zero = np.zeros(code.N, dtype=np.int64)
        self.table[self.code.syndrome(zero).tobytes()] = zero
        for w in range(1, radius + 1):
            for supp in combinations(range(code.n), w):
                grids = np.array(np.meshgrid(*[np.arange(len(sym))] * w, indexing="ij")).reshape(w, -1).T
                errs = np.zeros((grids.shape[0], code.N), dtype=np.int64)
                for t, s in enumerate(supp):
                    errs[:, s * code.ext : (s + 1) * code.ext] = sym[grids[:, t]]
                synd = code.syndrome(errs)
                for e, sy in zip(errs, synd):
                    # keep the first (lowest weight) leader per syndrome
                    self.table.setdefault(sy.tobytes(), e)

    def decode(self, received):
        key = self.code.syndrome(received).tobytes()
        e = self.table.get(key)
        if e is None:
            return None
        return self.code.spec.sub(received, e)


def unique_decode(code: LinearCode, received, radius: int, mode: str = "auto") -> np.ndarray | None:
    """Codeword within ``radius`` symbol errors of ``received``, if unique.

    Modes: ``bw`` (Berlekamp-Welch, GRS only), ``syndrome`` (coset leader
    table), ``brute`` (list decode and require a single hit).  Radii above
    half the minimum distance trigger a warning.
    """
    received = np.asarray(received, dtype=np.int64)
    if received.shape != (code.N,):
        raise ValueError(f"received word must have length {code.N}")
    if mode == "auto":
        mode = "bw" if code.grs is not None and code.ext == 1 else "brute"
    d = code.distance if (code.grs is not None or code.spec.q ** max(code.dim - 1, 0) <= (1 << 20)) else None
    if d is not None and radius > (d - 1) // 2:
        warnings.warn(f"radius {radius} exceeds half the minimum distance {d}", stacklevel=2)
    if mode == "bw":
        return berlekamp_welch(code, received, radius)
    if mode == "syndrome":
        cw = _SyndromeTable(code, radius).decode(received)
        if cw is None or int(code.distance_between(cw, received)) > radius:
            return None
        return cw
    if mode == "brute":
        hits = list_decode(code, received, Fraction(radius, max(code.n, 1)), mode="brute")
        return hits[0] if len(hits) == 1 else None
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# list decoding and list recovery


def _brute_ball(code: LinearCode, received, radius: int) -> tuple[np.ndarray, np.ndarray]:
    received = np.asarray(received, dtype=np.int64)
    msgs_out, words_out = [], []
    for msgs, words in code.codewords():
        dist = code.distance_between(words, received[None, :])
        keep = dist <= radius
        if np.any(keep):
            msgs_out.append(msgs[keep])
            words_out.append(words[keep])
    if not words_out:
        return np.zeros((0, code.dim), dtype=np.int64), np.zeros((0, code.N), dtype=np.int64)
    return np.concatenate(msgs_out), np.concatenate(words_out)


def list_decode(code: LinearCode, received, tau, mode: str = "brute", s: int | None = None) -> np.ndarray:
    """All codewords within floor(tau*n) symbol errors, as rows.

    ``brute`` enumerates the code.  ``frs`` runs the linear-algebraic folded
    RS decoder with interpolation parameter ``s`` and filters its candidates
    by true distance; it raises if the radius is outside its guarantee.
    """
    radius = radius_of(tau, code.n)
    received = np.asarray(received, dtype=np.int64)
    if received.shape != (code.N,):
        raise ValueError(f"received word must have length {code.N}")
    if mode == "brute":
        return _brute_ball(code, received, radius)[1]
    if mode == "frs":
        from .frs import frs_list_recover

        sets = [[tuple(b)] for b in code.symbols(received)]
        return frs_list_recover(code, sets, code.n - radius, s=s)
    raise ValueError(f"unknown list-decoding mode {mode!r}")


@dataclass
class CosetCode:
    """Quotient C / C' with C' contained in C."""

    outer: LinearCode
    inner: LinearCode

    def __post_init__(self):
        if self.outer.N != self.inner.N or self.outer.ext != self.inner.ext:
            raise ValueError("coset code components have different shapes")
        if not self.outer.contains_code(self.inner):
            raise ValueError("inner code is not contained in the outer code")
        self._inner_rref = self.inner.rref()

    def canonical(self, words) -> np.ndarray:
        R, piv = self._inner_rref
        if not piv:
            return np.asarray(words, dtype=np.int64)
        return la.reduce_rows(self.outer.spec, R, piv, words)

    @property
    def dim(self) -> int:
        return self.outer.dim - self.inner.dim

    def min_distance(self, method: str = "auto") -> int:
        """Minimum weight of outer codewords outside the inner code."""
        return coset_min_distance(self.outer, self.inner, method)


def coset_min_distance(outer: LinearCode, inner: LinearCode, method: str = "auto") -> int:
    if outer.dim == inner.dim:
        return outer.n + 1
    F = outer.spec
    if method == "auto":
        method = "enumerate" if F.q**outer.dim <= (1 << 20) else "support"
    if method == "enumerate":
        R, piv = inner.rref()
        best = outer.n + 1
        for _, words in outer.codewords():
            red = la.reduce_rows(F, R, piv, words) if piv else words
            outside = np.any(red != 0, axis=1)
            if np.any(outside):
                best = min(best, int(outer.weight(words[outside]).min()))
        return best
    if method == "support":
        # a codeword of C \ C' lives on a symbol set T iff C restricted to T
        # is strictly larger than C' restricted to T
        for w in range(1, outer.n + 1):
            for supp in combinations(range(outer.n), w):
                zero = [s for s in range(outer.n) if s not in supp]
                cols = [s * outer.ext + e for s in zero for e in range(outer.ext)]
                d_out = outer.dim - la.rank(F, outer.generator[:, cols])
                d_in = inner.dim - (la.rank(F, inner.generator[:, cols]) if inner.dim else 0)
                if d_out > d_in:
                    return w
        return outer.n + 1
    raise ValueError(f"unknown method {method!r}")


def coset_list_decode(cc: CosetCode, received, tau, mode: str = "brute", s: int | None = None) -> np.ndarray:
    """One representative (lexicographically first) of every coset of C/C'
    that meets the radius-floor(tau*n) ball around ``received``."""
    words = list_decode(cc.outer, received, tau, mode=mode, s=s)
    return dedupe_mod(cc, words)


def dedupe_mod(cc: CosetCode, words) -> np.ndarray:
    words = np.asarray(words, dtype=np.int64)
    if words.shape[0] == 0:
        return words
    canon = cc.canonical(words)
    _, first = np.unique(canon, axis=0, return_index=True)
    return words[np.sort(first)]


def _normalize_sets(code: LinearCode, sets) -> list[np.ndarray]:
    if len(sets) != code.n:
        raise ValueError(f"need {code.n} symbol sets, got {len(sets)}")
    pw = code.spec.q ** np.arange(code.ext - 1, -1, -1, dtype=np.int64)
    out = []
    for S in sets:
        ids = []
        for sym in S:
            arr = np.atleast_1d(np.asarray(sym, dtype=np.int64))
            if arr.size != code.ext:
                raise ValueError(f"symbol {sym!r} does not have {code.ext} digits")
            ids.append(int(arr @ pw))
        out.append(np.unique(np.array(ids, dtype=np.int64)))
    return out


def list_recover(
    code: LinearCode, sets, eta, ell: int, mode: str = "brute", s: int | None = None
) -> np.ndarray:
    """All codewords whose symbol lies in S_i for at least ceil(eta*n) positions."""
    for S in sets:
        if len(S) > ell:
            raise ValueError(f"symbol set of size {len(S)} exceeds ell={ell}")
    need = agreement_of(eta, code.n)
    if mode == "brute":
        ids_sets = _normalize_sets(code, sets)
        out = []
        for _, words in code.codewords():
            ids = code.symbol_ids(words)
            agree = np.zeros(words.shape[0], dtype=np.int64)
            for i, S in enumerate(ids_sets):
                agree += np.isin(ids[:, i], S)
            keep = agree >= need
            if np.any(keep):
                out.append(words[keep])
        if not out:
            return np.zeros((0, code.N), dtype=np.int64)
        return np.concatenate(out)
    if mode == "frs":
        from .frs import frs_list_recover

        norm = [[tuple(np.atleast_1d(np.asarray(sym, dtype=np.int64)).tolist()) for sym in S] for S in sets]
        return frs_list_recover(code, norm, need, s=s)
    raise ValueError(f"unknown list-recovery mode {mode!r}")


def agreement_counts(code: LinearCode, words, sets) -> np.ndarray:
    ids_sets = _normalize_sets(code, sets)
    ids = code.symbol_ids(np.atleast_2d(words))
    agree = np.zeros(ids.shape[0], dtype=np.int64)
    for i, S in enumerate(ids_sets):
        agree += np.isin(ids[:, i], S)
    return agree


# ---------------------------------------------------------------------------
# random nested pairs and small named codes


def sample_nested_pair(
    n: int, k1: int, k2: int, spec: FieldSpec, rng: np.random.Generator | None = None, retries: int = 100
) -> tuple[LinearCode, LinearCode]:
    """Random (C1, C2) with C2-dual inside C1.

    Draws k1 independent vectors; C1 is their span and C2 is the code with
    parity-check rows equal to the first k2 of them.
    """
    if k2 != n - k1 or k1 < k2 or k2 < 0:
        raise ValueError(f"need k2 = n - k1 and k1 >= k2 (n={n}, k1={k1}, k2={k2})")
    rng = np.random.default_rng() if rng is None else rng
    for _ in range(retries):
        V = rng.integers(0, spec.q, size=(k1, n))
        if la.rank(spec, V) == k1:
            break
    else:
        raise RuntimeError("could not sample independent vectors")
    C1 = LinearCode(spec, V, n, name="C1")
    G2 = V[:k2]
    C2 = LinearCode(spec, la.nullspace(spec, G2, n), n, parity=G2, name="C2")
    return C1, C2


def hamming_code(r: int = 3) -> LinearCode:
    """Binary Hamming code of length 2^r - 1."""
    from .gf import field

    F = field(2)
    n = 2**r - 1
    H = np.array([[(j + 1) >> i & 1 for j in range(n)] for i in range(r)], dtype=np.int64)
    return LinearCode(F, la.nullspace(F, H, n), n, parity=H, name=f"Hamming[{n},{n - r}]")


def full_code(spec: FieldSpec, n: int, ext: int = 1) -> LinearCode:
    return LinearCode(spec, np.eye(n * ext, dtype=np.int64), n, ext, name="full")


def zero_code(spec: FieldSpec, n: int, ext: int = 1) -> LinearCode:
    return LinearCode(spec, np.zeros((0, n * ext), dtype=np.int64), n, ext, name="zero")


def even_weight_code(spec: FieldSpec, n: int) -> LinearCode:
    H = np.ones((1, n), dtype=np.int64)
    return LinearCode(spec, la.nullspace(spec, H, n), n, parity=H, name=f"even[{n},{n - 1}]")


def expand(code: LinearCode, small: FieldSpec, basis: str = "alpha") -> LinearCode:
    """View a code over GF(p^r) as a code over GF(p) with each symbol split into r digits.

    ``alpha`` uses polynomial-basis coordinates, ``beta`` the dual-basis
    coordinates; expanding C1 in one and C2 in the other keeps the standard
    inner product equal to the trace of the big-field inner product.
    """
    big = code.spec
    if not small.is_prime or big.p != small.p:
        raise ValueError("expansion is supported down to the prime subfield only")
    r = big.m
    rows = []
    for g in code.generator:
        for j in range(r):
            scaled = big.mul(g, big.p**j)
            coords = big.to_digits(scaled) if basis == "alpha" else big.to_dual_digits(scaled)
            rows.append(coords.reshape(-1))
    G = np.array(rows, dtype=np.int64).reshape(len(rows), code.N * r)
    return LinearCode(small, G, code.n, code.ext * r, name=f"{code.name}|{basis}")
