"""CSS codes, folded quantum Reed-Solomon codes, and CSS list decoding.

Syndromes follow one convention throughout: X-type checks (rows of C2-dual)
come first, Z-type checks (rows of C1-dual) second, and every F_q check row
contributes m F_p phases, one per polynomial-basis multiple of the row.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg as la
from .classical import (
    CosetCode,
    GRSSpec,
    LinearCode,
    agreement_of,
    as_fraction,
    coset_list_decode,
    coset_min_distance,
    fold,
    grs_build,
    grs_dual,
    list_recover,
    radius_of,
    sample_nested_pair,
)
from .gf import FieldSpec, field
from .pauli import PauliFrame, StabilizerCode, count_low_weight, iter_weight, to_symplectic

ORACLE_LIMIT = 1 << 24


class CSSCode:
    """CSS(C1, C2) with C2-dual contained in C1.

    ``enc1``/``enc2`` are bases of C1/C2-dual and C2/C1-dual normalised so that
    enc1 @ enc2.T is the identity; they define the logical dictionary and
    serve as duality-preserving inner encoders for concatenation.
    """

    def __init__(self, c1: LinearCode, c2: LinearCode, name: str = "", x_logicals=None):
        if c1.spec != c2.spec or c1.N != c2.N or c1.ext != c2.ext:
            raise ValueError("CSS components must share field, length and alphabet")
        F = c1.spec
        bad = ~c1.contains(c2.parity) if c2.parity.shape[0] else np.zeros(0, dtype=bool)
        if np.any(bad):
            witness = c2.parity[int(np.flatnonzero(bad)[0])]
            raise ValueError(f"C2-dual is not contained in C1; witness {witness.tolist()}")
        self.c1 = c1
        self.c2 = c2
        self.spec = F
        self.n = c1.n
        self.ext = c1.ext
        self.name = name
        self.c2_dual = LinearCode(F, c2.parity, c1.n, c1.ext, parity=c2.generator, reduce=False)
        self.c1_dual = LinearCode(F, c1.parity, c1.n, c1.ext, parity=c1.generator, reduce=False)
        self.hx = self.c2_dual.rref()[0] if self.c2_dual.dim else np.zeros((0, c1.N), dtype=np.int64)
        self.hz = self.c1_dual.rref()[0] if self.c1_dual.dim else np.zeros((0, c1.N), dtype=np.int64)
        self.x_cosets = CosetCode(c1, self.c2_dual)
        self.z_cosets = CosetCode(c2, self.c1_dual)
        self._distance = None
        self._build_logicals(x_logicals)
        self.stab = self._build_stabilizer()

    # -- construction -------------------------------------------------------

    def _build_logicals(self, x_logicals) -> None:
        F = self.spec
        if x_logicals is None:
            A = la.complement_basis(F, self.c2_dual.generator, self.c1.generator)
        else:
            A = la.as_matrix(x_logicals, self.c1.N)
        B = la.complement_basis(F, self.c1_dual.generator, self.c2.generator)
        K = self.c1.dim - self.c2_dual.dim
        if A.shape[0] != K or B.shape[0] != K:
            raise ValueError("logical bases have inconsistent sizes")
        if K:
            gram = la.matmul(F, A, B.T)
            Minv = la.inverse(F, gram)
            B = la.matmul(F, Minv.T, B)
        self.enc1 = A
        self.enc2 = B

    def _build_stabilizer(self) -> StabilizerCode:
        F = self.spec
        m = F.m
        N = self.c1.N
        zero = np.zeros(N, dtype=np.int64)
        alphas = [F.p**j for j in range(m)]
        beta = F.dual_of_polynomial_basis()
        rows = []
        for h in self.hx:
            for a in alphas:
                rows.append(to_symplectic(F, F.mul(h, a), zero))
        for h in self.hz:
            for a in alphas:
                rows.append(to_symplectic(F, zero, F.mul(h, a)))
        LX, LZ = [], []
        for i in range(self.enc1.shape[0]):
            for j in range(m):
                LX.append(to_symplectic(F, F.mul(self.enc1[i], alphas[j]), zero))
                LZ.append(to_symplectic(F, zero, F.mul(self.enc2[i], int(beta[j]))))
        width = 2 * N * m
        G = np.array(rows, dtype=np.int64).reshape(-1, width)
        LX = np.array(LX, dtype=np.int64).reshape(-1, width)
        LZ = np.array(LZ, dtype=np.int64).reshape(-1, width)
        return StabilizerCode(F, self.n, G, self.ext, LX, LZ, name=self.name)

    # -- parameters ---------------------------------------------------------

    @property
    def k(self) -> Fraction:
        return Fraction(self.c1.dim - self.c2_dual.dim, self.ext)

    @property
    def k_qudits(self) -> int:
        return self.c1.dim - self.c2_dual.dim

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k_qudits, self.c1.N)

    def distance(self, method: str = "auto") -> int:
        """Exact distance: lightest codeword of C1 \\ C2-dual or C2 \\ C1-dual."""
        if self._distance is not None:
            return self._distance
        dx = coset_min_distance(self.c1, self.c2_dual, method)
        dz = coset_min_distance(self.c2, self.c1_dual, method)
        self._distance = min(dx, dz)
        return self._distance

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        alpha = f"{self.spec.q}^{self.ext}" if self.ext > 1 else f"{self.spec.q}"
        return f"<CSSCode{tag} [[{self.n},{self.k}]]_{alpha}>"

    # -- syndromes ------------------------------------------------------------

    def fq_syndrome(self, a, b) -> tuple[np.ndarray, np.ndarray]:
        """(Hx b, Hz a) over F_q for X-part a and Z-part b."""
        F = self.spec
        sx = la.matmul(F, np.asarray(b), self.hx.T)
        sz = la.matmul(F, np.asarray(a), self.hz.T)
        return sx, sz

    def fp_from_fq(self, sx, sz) -> np.ndarray:
        F = self.spec
        tx = F.to_dual_digits(np.asarray(sx)).reshape(np.shape(sx)[:-1] + (-1,))
        tz = F.to_dual_digits(F.neg(np.asarray(sz))).reshape(np.shape(sz)[:-1] + (-1,))
        return np.concatenate([tx, tz], axis=-1)

    def fq_from_fp(self, s) -> tuple[np.ndarray, np.ndarray]:
        F = self.spec
        s = np.asarray(s, dtype=np.int64)
        rx = self.hx.shape[0] * F.m
        tx = s[..., :rx].reshape(s.shape[:-1] + (self.hx.shape[0], F.m))
        tz = s[..., rx:].reshape(s.shape[:-1] + (self.hz.shape[0], F.m))
        return F.from_dual_digits(tx), F.neg(F.from_dual_digits(tz))

    def syndrome(self, E: PauliFrame) -> np.ndarray:
        return self.stab.syndrome(E)

    def frame(self, a, b, phase: int = 0) -> PauliFrame:
        return PauliFrame(np.asarray(a), np.asarray(b), self.spec, self.ext, phase)

    def solve_syndrome(self, s) -> tuple[np.ndarray, np.ndarray]:
        """Any (e_x, e_z) whose syndrome is s, by Gaussian elimination."""
        sx, sz = self.fq_from_fp(s)
        F = self.spec
        ex = la.solve(F, self.hz, sz)
        ez = la.solve(F, self.hx, sx)
        if ex is None or ez is None:
            raise RuntimeError("syndrome has no preimage; check matrices are not full rank")
        return ex, ez


def build_css(c1: LinearCode, c2: LinearCode, name: str = "") -> CSSCode:
    return CSSCode(c1, c2, name=name)


def steane_code() -> CSSCode:
    from .classical import hamming_code

    h = hamming_code(3)
    return CSSCode(h, h, name="Steane")


def css_422() -> CSSCode:
    from .classical import even_weight_code

    F = field(2)
    c = even_weight_code(F, 4)
    return CSSCode(c, c, name="[[4,2,2]]")


def fold_quantum(css: CSSCode, m: int) -> CSSCode:
    if m == 1:
        return css
    if css.n % m:
        raise ValueError(f"fold {m} does not divide n={css.n}")
    return CSSCode(fold(css.c1, m), fold(css.c2, m), name=f"{css.name}^({m})", x_logicals=css.enc1)


def quantum_grs(spec: FieldSpec, n: int, R, gamma: int | None = None) -> CSSCode:
    """CSS code with C1 = RS of dimension n(1+R)/2 and C2-dual = RS of dimension n(1-R)/2."""
    R = as_fraction(R)
    k1 = n * (1 + R) / 2
    k2 = n * (1 - R) / 2
    problems = []
    if k1.denominator != 1 or k2.denominator != 1:
        problems.append(f"n(1+R)/2 = {k1} and n(1-R)/2 = {k2} must be integers")
    if n >= spec.q:
        problems.append(f"n = {n} must be smaller than q = {spec.q}")
    if not 0 < R < 1:
        problems.append("rate must lie strictly between 0 and 1")
    if problems:
        raise ValueError("; ".join(problems))
    k1, k2 = int(k1), int(k2)
    g1 = GRSSpec.make(spec, n, k1, gamma)
    g2perp = GRSSpec.make(spec, n, k2, gamma)
    c1 = grs_build(g1)
    c2 = grs_build(grs_dual(g2perp))
    # monomials of degree k2..k1-1 represent C1 / C2-dual
    return CSSCode(c1, c2, name=f"QGRS[[{n},{k1 - k2}]]", x_logicals=c1.generator[k2:])


class FQRSCode(CSSCode):
    """m-folded quantum Reed-Solomon code."""

    def __init__(self, base: CSSCode, m: int, R: Fraction):
        if base.n % m:
            raise ValueError(f"fold {m} does not divide n={base.n}")
        super().__init__(fold(base.c1, m), fold(base.c2, m), name=f"FQRS[[{base.n // m}]]", x_logicals=base.enc1)
        self.base = base
        self.fold = m
        self.R = R


def build_fqrs(n: int, R, m: int, spec: FieldSpec, gamma: int | None = None) -> FQRSCode:
    R = as_fraction(R)
    problems = []
    if m < 1 or n % m:
        problems.append(f"fold m = {m} must divide n = {n}")
    try:
        base = quantum_grs(spec, n, R, gamma)
    except ValueError as exc:
        problems.append(str(exc))
    if problems:
        raise ValueError("; ".join(problems))
    return FQRSCode(base, m, R)


# ---------------------------------------------------------------------------
# quantum list decoding


@dataclass
class QLDList:
    """Output of :func:`qld_decode`.

    Row t of ``x``/``z`` is one candidate E_{x_t, z_t}; candidates are
    pairwise stabilizer-distinct.  Without pruning they are all pairs of X
    and Z coset representatives; with pruning only classes that contain an
    operator of weight <= the radius are kept, each represented by a
    minimum-weight element.
    """

    x: np.ndarray
    z: np.ndarray
    css: CSSCode = dc_field(repr=False)
    x_reps: np.ndarray = dc_field(repr=False, default=None)
    z_reps: np.ndarray = dc_field(repr=False, default=None)
    raw_size: int = 0
    dedup_size: int = 0
    pruned: bool = False
    min_weights: list[int] = dc_field(default_factory=list)
    _frames: list | None = dc_field(default=None, repr=False)

    @property
    def frames(self) -> list[PauliFrame]:
        if self._frames is None:
            self._frames = [self.css.frame(a, b) for a, b in zip(self.x, self.z)]
        return self._frames

    def vectors(self) -> np.ndarray:
        """Candidates as F_p symplectic rows."""
        return to_symplectic(self.css.spec, self.x, self.z)

    def __len__(self) -> int:
        return self.x.shape[0]

    def __iter__(self):
        return iter(self.frames)

    def __getitem__(self, i):
        return self.frames[i]


def _symbol_masks(code: LinearCode, words: np.ndarray) -> np.ndarray:
    nz = np.any(code.symbols(words) != 0, axis=-1)
    pw = (1 << np.arange(code.n, dtype=np.int64))
    return nz.astype(np.int64) @ pw


_POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int64)


def _popcount(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    return (_POP16[a & 0xFFFF] + _POP16[(a >> 16) & 0xFFFF]
            + _POP16[(a >> 32) & 0xFFFF] + _POP16[(a >> 48) & 0xFFFF])


MASK_TABLE_SYMBOLS = 10


class _ClassWeights:
    """Minimum weights of X-classes a + C2-dual and Z-classes b + C1-dual.

    For each representative the support masks of all coset members are
    computed once and cached; pairs are combined by OR-ing masks.
    """

    def __init__(self, css: CSSCode):
        if css.spec.q ** max(css.c2_dual.dim, css.c1_dual.dim) > ORACLE_LIMIT:
            raise ValueError("stabilizer cosets too large for the bounded search")
        if css.n > 62:
            raise ValueError("bounded search supports at most 62 symbols")
        self.css = css
        self.sx = css.c2_dual.all_codewords() if css.c2_dual.dim else np.zeros((1, css.c1.N), dtype=np.int64)
        self.sz = css.c1_dual.all_codewords() if css.c1_dual.dim else np.zeros((1, css.c1.N), dtype=np.int64)
        self._cache: dict = {}

    def members(self, rep, which: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(unique masks, their popcounts, one member word per mask), lightest first."""
        rep = np.asarray(rep, dtype=np.int64)
        key = (which, rep.tobytes())
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        F = self.css.spec
        S = self.sx if which == "x" else self.sz
        words = F.add(S, rep[None, :])
        masks = _symbol_masks(self.css.c1, words)
        um, idx = np.unique(masks, return_index=True)
        pc = _popcount(um)
        order = np.argsort(pc, kind="stable")
        out = (um[order], pc[order], words[idx[order]])
        if len(self._cache) > 4096:
            self._cache.clear()
        self._cache[key] = out
        return out

    def best_pair(self, a, b, limit: int | None = None) -> tuple[int, np.ndarray, np.ndarray]:
        """Lightest element of the class of (a, b); with ``limit`` only weights <= limit are searched.

        Returns weight limit + 1 (and the inputs) when nothing that light exists.
        """
        ma, pa, wa = self.members(a, "x")
        mb, pb, wb = self.members(b, "z")
        if limit is not None:
            ka, kb = np.searchsorted(pa, limit, "right"), np.searchsorted(pb, limit, "right")
            ma, pa, wa, mb, pb, wb = ma[:ka], pa[:ka], wa[:ka], mb[:kb], pb[:kb], wb[:kb]
            if not ka or not kb:
                return limit + 1, np.asarray(a), np.asarray(b)
        best, arg = None, (0, 0)
        step = max(1, (1 << 22) // max(1, mb.size))
        for s0 in range(0, ma.size, step):
            comb = _popcount(ma[s0 : s0 + step, None] | mb[None, :])
            k = int(np.argmin(comb))
            i, j = divmod(k, comb.shape[1])
            if best is None or comb[i, j] < best:
                best, arg = int(comb[i, j]), (s0 + i, j)
        if limit is not None and best > limit:
            return limit + 1, np.asarray(a), np.asarray(b)
        return best, wa[arg[0]], wb[arg[1]]

    def best_pairs(self, xreps, zreps, limit: int) -> list[tuple[int, int, int, np.ndarray, np.ndarray]]:
        """(i, j, weight, x word, z word) for every pair of representatives whose
        class has an element of weight <= limit, in row-major (i, j) order."""
        n = self.css.n
        if n > MASK_TABLE_SYMBOLS:
            out = []
            for i, a in enumerate(xreps):
                for j, b in enumerate(zreps):
                    w, a2, b2 = self.best_pair(a, b, limit=limit)
                    if w <= limit:
                        out.append((i, j, w, a2, b2))
            return out
        size = 1 << n
        big = n + 1
        table = self._or_table()
        xi, X, Xw, Xpos = self._dense(xreps, "x", limit)
        zi, Z, Zw, Zpos = self._dense(zreps, "z", limit)
        if not xi.size or not zi.size:
            return []
        out = []
        step = max(1, (1 << 22) // (size * max(size, zi.size)))
        for r0 in range(0, xi.size, step):
            Xc = X[r0 : r0 + step]
            # lightest union weight against every z mask, per x class
            minx = np.where(Xc[:, :, None], table[None, :, :], big).min(axis=1)
            W = np.where(Z[None, :, :], minx[:, None, :], big)
            best = W.min(axis=2)
            rs, cs = np.nonzero(best <= limit)
            if rs.size == 0:
                continue
            mb = W[rs, cs].argmin(axis=1)
            ma = np.where(Xc[rs], table[:, mb].T, big).argmin(axis=1)
            wa = Xw[Xpos[r0 + rs, ma]]
            wb = Zw[Zpos[cs, mb]]
            for t in range(rs.size):
                out.append((int(xi[r0 + rs[t]]), int(zi[cs[t]]), int(best[rs[t], cs[t]]), wa[t], wb[t]))
        return out

    def _dense(self, reps, which: str, limit: int):
        """Coset members of every representative, as mask indicators.

        Returns (kept rows, indicator[row, mask] for masks of weight <= limit,
        stacked member words, index[row, mask] into them).
        """
        F = self.css.spec
        S = self.sx if which == "x" else self.sz
        reps = np.asarray(reps, dtype=np.int64).reshape(-1, S.shape[1])
        size = 1 << self.css.n
        words = F.add(S[None, :, :], reps[:, None, :]).reshape(-1, S.shape[1])
        masks = _symbol_masks(self.css.c1, words)
        rows = np.repeat(np.arange(reps.shape[0]), S.shape[0])
        light = _popcount(masks) <= limit
        key = rows[light] * size + masks[light]
        uk, first = np.unique(key, return_index=True)
        kept = np.unique(uk // size)
        where = np.full(reps.shape[0], -1, dtype=np.int64)
        where[kept] = np.arange(kept.size)
        ind = np.zeros((kept.size, size), dtype=bool)
        pos = np.zeros((kept.size, size), dtype=np.int64)
        r, m = where[uk // size], uk % size
        ind[r, m] = True
        pos[r, m] = np.arange(uk.size)
        return kept, ind, words[light][first], pos

    def _or_table(self) -> np.ndarray:
        if not hasattr(self, "_table"):
            idx = np.arange(1 << self.css.n, dtype=np.int64)
            self._table = _popcount(idx[:, None] | idx[None, :])
        return self._table


def qld_decode(
    css: CSSCode,
    s,
    tau,
    mode: str = "brute",
    s_param: int | None = None,
    prune: bool = False,
) -> QLDList:
    """List of stabilizer-distinct Paulis with syndrome ``s`` covering the radius-floor(tau n) ball.

    Picks any (e_x, e_z) with the right syndrome, coset-list-decodes C1/C2-dual
    around e_x and C2/C1-dual around e_z, and returns every combination.
    ``mode`` is passed to the classical list decoder (``brute`` or ``frs``).
    ``prune`` keeps only classes with an element of weight <= floor(tau n).
    """
    F = css.spec
    ex, ez = css.solve_syndrome(s)
    cx = coset_list_decode(css.x_cosets, ex, tau, mode=mode, s=s_param)
    cz = coset_list_decode(css.z_cosets, ez, tau, mode=mode, s=s_param)
    xr = F.sub(ex[None, :], cx) if cx.shape[0] else cx
    zr = F.sub(ez[None, :], cz) if cz.shape[0] else cz
    radius = radius_of(tau, css.n)
    weights = []
    if not prune:
        A = np.repeat(xr, zr.shape[0], axis=0)
        B = np.tile(zr, (xr.shape[0], 1))
    else:
        picked = _ClassWeights(css).best_pairs(xr, zr, radius)
        weights = [w for _, _, w, _, _ in picked]
        A = np.array([a for _, _, _, a, _ in picked], dtype=np.int64).reshape(len(picked), css.c1.N)
        B = np.array([b for _, _, _, _, b in picked], dtype=np.int64).reshape(len(picked), css.c1.N)
    raw = xr.shape[0] * zr.shape[0]
    if A.shape[0]:
        keys = css.stab.canonical(to_symplectic(F, A, B))
        dedup = np.unique(keys, axis=0).shape[0]
    else:
        dedup = 0
    return QLDList(A, B, css, xr, zr, raw, dedup, prune, weights)


def min_weight_in_class(css: CSSCode, E: PauliFrame) -> tuple[int, PauliFrame]:
    """Minimum weight over the stabilizer class of E (bounded search over cosets)."""
    w, a, b = _ClassWeights(css).best_pair(E.x, E.z)
    return w, css.frame(a, b)


def qlr_decode(css: CSSCode, s, sets: Sequence[Sequence], eta, ell: int, mode: str = "brute") -> list[PauliFrame]:
    """Quantum list recovery.

    ``sets[i]`` lists candidate single-symbol Paulis as (x_symbol, z_symbol)
    pairs.  Returns stabilizer-distinct Paulis with syndrome ``s`` whose
    symbol at position i lies in ``sets[i]`` for at least ceil(eta n)
    positions.
    """
    if len(sets) != css.n:
        raise ValueError(f"need {css.n} candidate sets")
    for S in sets:
        if len(S) > ell:
            raise ValueError(f"candidate set of size {len(S)} exceeds ell={ell}")
    F = css.spec
    e = css.ext
    ex, ez = css.solve_syndrome(s)
    ex_sym = ex.reshape(css.n, e)
    ez_sym = ez.reshape(css.n, e)
    sx, sz = [], []
    for i, S in enumerate(sets):
        xs = {tuple(F.sub(ex_sym[i], np.atleast_1d(np.asarray(a)))) for a, _ in S}
        zs = {tuple(F.sub(ez_sym[i], np.atleast_1d(np.asarray(b)))) for _, b in S}
        sx.append(sorted(xs))
        sz.append(sorted(zs))
    cx = list_recover(css.c1, sx, eta, ell, mode=mode)
    cz = list_recover(css.c2, sz, eta, ell, mode=mode)
    need = agreement_of(eta, css.n)
    keys_seen = set()
    out = []
    cand = {i: {(tuple(np.atleast_1d(np.asarray(a)).tolist()), tuple(np.atleast_1d(np.asarray(b)).tolist())) for a, b in S} for i, S in enumerate(sets)}
    for c in cx:
        a = F.sub(ex, c)
        a_sym = a.reshape(css.n, e)
        for d in cz:
            b = F.sub(ez, d)
            b_sym = b.reshape(css.n, e)
            agree = sum(
                (tuple(a_sym[i].tolist()), tuple(b_sym[i].tolist())) in cand[i] for i in range(css.n)
            )
            if agree < need:
                continue
            E = css.frame(a, b)
            key = css.stab.canonical(E).tobytes()
            if key in keys_seen:
                continue
            keys_seen.add(key)
            out.append(E)
    return out


# ---------------------------------------------------------------------------
# exhaustive oracle


def _digits_per_word(p: int) -> int:
    d = 1
    while p ** (d + 1) < (1 << 62):
        d += 1
    return d


def _pack(rows: np.ndarray, p: int) -> np.ndarray:
    """Pack F_p rows into int64 words (several digits per word)."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    d = _digits_per_word(p)
    width = max(1, -(-rows.shape[1] // d))
    out = np.zeros((rows.shape[0], width), dtype=np.int64)
    for w in range(width):
        chunk = rows[:, w * d : (w + 1) * d]
        if chunk.shape[1]:
            out[:, w] = chunk @ (p ** np.arange(chunk.shape[1], dtype=np.int64))
    return out


def _keys(rows: np.ndarray, p: int) -> list[bytes]:
    return [r.tobytes() for r in _pack(rows, p)]


def low_weight_classes(stab: StabilizerCode, max_weight: int, limit: int = ORACLE_LIMIT) -> dict:
    """Map syndrome key -> set of stabilizer-class keys of Paulis with weight <= max_weight."""
    total = count_low_weight(stab.spec, stab.n, stab.ext, max_weight)
    if total > limit:
        raise ValueError(f"oracle would enumerate {total} operators (limit {limit})")
    p = stab.spec.p
    out: dict = {}
    for w in range(max_weight + 1):
        for V in iter_weight(stab.spec, stab.n, stab.ext, w):
            sk = _pack(stab.syndrome(V), p)
            ck = _pack(stab.canonical(V), p)
            pairs = np.unique(np.concatenate([sk, ck], axis=1), axis=0)
            ws = sk.shape[1]
            for row in pairs:
                out.setdefault(row[:ws].tobytes(), set()).add(row[ws:].tobytes())
    return out


def low_weight_table(stab: StabilizerCode, max_weight: int, limit: int = ORACLE_LIMIT) -> dict:
    """syndrome key -> list of (class key, lightest representative), sorted by class key.

    This is the exhaustive quantum list: every stabilizer class with an
    element of weight <= max_weight, grouped by syndrome.
    """
    total = count_low_weight(stab.spec, stab.n, stab.ext, max_weight)
    if total > limit:
        raise ValueError(f"table would enumerate {total} operators (limit {limit})")
    p = stab.spec.p
    found: dict = {}
    for w in range(max_weight + 1):
        for V in iter_weight(stab.spec, stab.n, stab.ext, w):
            sk = _pack(stab.syndrome(V), p)
            ck = _pack(stab.canonical(V), p)
            both = np.concatenate([sk, ck], axis=1)
            _, first = np.unique(both, axis=0, return_index=True)
            for i in first:
                syn = sk[i].tobytes()
                cls = ck[i].tobytes()
                bucket = found.setdefault(syn, {})
                if cls not in bucket:
                    bucket[cls] = V[i].copy()
    return {k: sorted(v.items()) for k, v in found.items()}


def class_keys(stab: StabilizerCode, frames: Sequence[PauliFrame] | QLDList) -> set:
    if isinstance(frames, QLDList):
        return set(_keys(stab.canonical(frames.vectors()), stab.spec.p)) if len(frames) else set()
    if not frames:
        return set()
    V = to_symplectic(stab.spec, np.array([f.x for f in frames]), np.array([f.z for f in frames]))
    return set(_keys(stab.canonical(V), stab.spec.p))


def syndrome_key(stab: StabilizerCode, s) -> bytes:
    return _keys(np.atleast_2d(s), stab.spec.p)[0]


def syndrome_from_key(stab: StabilizerCode, key: bytes) -> np.ndarray:
    p = stab.spec.p
    d = _digits_per_word(p)
    words = np.frombuffer(key, dtype=np.int64)
    digits = [(int(w) // p**j) % p for w in words for j in range(d)]
    return np.array(digits[: stab.r], dtype=np.int64)


@dataclass
class QLDReport:
    radius: int
    max_count: int
    counts: dict
    ell: int | None

    @property
    def ok(self) -> bool:
        return self.ell is None or self.max_count <= self.ell


def verify_qld(css: CSSCode | StabilizerCode, tau, ell: int | None = None) -> QLDReport:
    """Exhaustively count stabilizer-distinct low-weight Paulis per syndrome."""
    stab = css.stab if isinstance(css, CSSCode) else css
    radius = radius_of(tau, stab.n)
    classes = low_weight_classes(stab, radius)
    counts = {k: len(v) for k, v in classes.items()}
    return QLDReport(radius, max(counts.values()) if counts else 0, counts, ell)


# ---------------------------------------------------------------------------
# random ensembles


def sample_random_css(n: int, k: int, spec: FieldSpec, rng: np.random.Generator | None = None) -> CSSCode:
    if (n + k) % 2 or not 0 <= k <= n:
        raise ValueError(f"need n + k even and 0 <= k <= n (n={n}, k={k})")
    k1 = (n + k) // 2
    c1, c2 = sample_nested_pair(n, k1, n - k1, spec, rng)
    return CSSCode(c1, c2, name=f"random[[{n},{k}]]")


def sample_qwozencraft(r: int, s: int, spec: FieldSpec, rng: np.random.Generator | None = None, retries: int = 100) -> CSSCode:
    """Random pair of hyperplanes C1 = h1-dual, C2 = h2-dual in GF(q^r)^s with <h1, h2> = 0.

    The big-field codes are expanded to F_q (C1 in the polynomial basis, C2
    in its dual) giving a CSS code of length r*s and rate 1 - 2/s.
    """
    if not spec.is_prime:
        raise ValueError("the Wozencraft ensemble is implemented over prime fields")
    if s < 3:
        raise ValueError("need s >= 3 for a positive rate")
    rng = np.random.default_rng() if rng is None else rng
    big = field(spec.p, r)
    for _ in range(retries):
        h1 = rng.integers(0, big.q, size=s)
        if not np.any(h1):
            continue
        # uniform nonzero h2 orthogonal to h1
        basis = la.nullspace(big, h1[None, :], s)
        coeffs = rng.integers(0, big.q, size=basis.shape[0])
        if not np.any(coeffs):
            continue
        h2 = la.matmul(big, coeffs[None, :], basis)[0]
        break
    else:
        raise RuntimeError("could not sample a Wozencraft pair")
    from .classical import expand

    big_c1 = LinearCode(big, la.nullspace(big, h1[None, :], s), s, parity=h1[None, :])
    big_c2 = LinearCode(big, la.nullspace(big, h2[None, :], s), s, parity=h2[None, :])
    c1 = expand(big_c1, spec, "alpha")
    c2 = expand(big_c2, spec, "beta")
    flat1 = LinearCode(spec, c1.generator, r * s, 1)
    flat2 = LinearCode(spec, c2.generator, r * s, 1)
    return CSSCode(flat1, flat2, name=f"Wozencraft[[{r * s},{r * (s - 2)}]]")


def expand_css(css: CSSCode, small: FieldSpec) -> CSSCode:
    """The same quantum code over the prime subfield (each symbol becomes m qudits)."""
    from .classical import expand

    return CSSCode(expand(css.c1, small, "alpha"), expand(css.c2, small, "beta"), name=f"{css.name}|p")
