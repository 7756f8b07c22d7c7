"""Expander-based distance amplification (AEL) for CSS codes.

Layout conventions.  A concatenated code has n_out inner blocks of n_in
qudits; qudit j of block i sits at flat index i * n_in + j.  The graph has
n_out * b left vertices of degree r with n_in = b * r, and left vertex
i * b + t owns qudits t * r .. t * r + r - 1 of block i.  The permutation
sends (left vertex L, port j) to (right vertex v, port j'), i.e. flat index
L * r + j to v * r + j'.  After permutation every right vertex is one
symbol of r qudits.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import sqrt

import numpy as np

from . import linalg as la
from .classical import LinearCode, expand, radius_of, unique_decode, list_recover
from .css import CSSCode, _ClassWeights
from .gf import FieldSpec
from .pauli import PauliFrame, iter_weight

EXHAUSTIVE_LIMIT = 12


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    """r-biregular bipartite (multi)graph with port labels.

    ``adjacency[i, j] = (v, j')``: the j-th edge of left vertex i lands on
    right vertex v, which labels it j'.
    """

    n: int
    r: int
    adjacency: np.ndarray
    note: str = ""

    def __post_init__(self):
        adj = np.asarray(self.adjacency, dtype=np.int64)
        if adj.shape != (self.n, self.r, 2):
            raise ValueError(f"adjacency must have shape ({self.n}, {self.r}, 2)")
        if np.any(adj[..., 0] < 0) or np.any(adj[..., 0] >= self.n):
            raise ValueError("right vertex out of range")
        ports = adj[..., 0] * self.r + adj[..., 1]
        if np.any(adj[..., 1] < 0) or np.any(adj[..., 1] >= self.r) or np.unique(ports).size != self.n * self.r:
            raise ValueError("right port labels do not form a permutation at every vertex")
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, n: int, r: int, edges, note: str = "") -> BipartiteGraph:
        """Build from an edge multiset [(left, right), ...] with lexicographic ports.

        Left ports are ordered by right endpoint (parallel edges consecutively);
        right ports by left endpoint.
        """
        edges = sorted((int(a), int(b)) for a, b in edges)
        if len(edges) != n * r:
            raise ValueError(f"need {n * r} edges, got {len(edges)}")
        left_deg = np.bincount([a for a, _ in edges], minlength=n)
        right_deg = np.bincount([b for _, b in edges], minlength=n)
        if np.any(left_deg != r) or np.any(right_deg != r):
            raise ValueError("edge list is not r-biregular")
        adj = np.zeros((n, r, 2), dtype=np.int64)
        lport = np.zeros(n, dtype=np.int64)
        rport = np.zeros(n, dtype=np.int64)
        # edges are sorted by (left, right) so both port orders are lexicographic
        for a, b in edges:
            adj[a, lport[a]] = (b, rport[b])
            lport[a] += 1
            rport[b] += 1
        return cls(n, r, adj, note)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, int(self.adjacency[i, j, 0])) for i in range(self.n) for j in range(self.r)]

    def biadjacency(self) -> np.ndarray:
        B = np.zeros((self.n, self.n), dtype=np.int64)
        np.add.at(B, (np.repeat(np.arange(self.n), self.r), self.adjacency[..., 0].reshape(-1)), 1)
        return B

    def to_config(self) -> dict:
        return {"n": self.n, "r": self.r, "adjacency": self.adjacency.tolist(), "note": self.note}

    @classmethod
    def from_config(cls, cfg: dict) -> BipartiteGraph:
        extra = set(cfg) - {"n", "r", "adjacency", "note"}
        if extra:
            raise ValueError(f"unknown graph keys {sorted(extra)}")
        return cls(int(cfg["n"]), int(cfg["r"]), np.array(cfg["adjacency"]), cfg.get("note", ""))


def complete_graph(n: int) -> BipartiteGraph:
    return BipartiteGraph.from_edges(n, n, [(i, j) for i in range(n) for j in range(n)], note="complete")


def matching_graph(n: int) -> BipartiteGraph:
    return BipartiteGraph.from_edges(n, 1, [(i, i) for i in range(n)], note="identity matching")


def random_regular(n: int, r: int, rng: np.random.Generator) -> BipartiteGraph:
    """Union of r uniformly random perfect matchings (parallel edges allowed)."""
    edges = []
    for _ in range(r):
        perm = rng.permutation(n)
        edges.extend((i, int(perm[i])) for i in range(n))
    return BipartiteGraph.from_edges(n, r, edges, note="random matchings")


# ---------------------------------------------------------------------------
# pseudorandomness


@dataclass
class PseudorandomReport:
    ok: bool
    eps: float
    witness: tuple[tuple[int, ...], tuple[int, ...]]
    exhaustive: bool


def _subset_matrix(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.float64)


def _mask_to_set(mask: np.ndarray) -> tuple[int, ...]:
    return tuple(int(i) for i in np.flatnonzero(mask))


def pseudorandom_eps(G: BipartiteGraph, samples: int | None = None, rng: np.random.Generator | None = None) -> PseudorandomReport:
    """Smallest eps for which G is eps-pseudorandom (exhaustive), or the worst sampled ratio."""
    n, r = G.n, G.r
    B = G.biadjacency().astype(np.float64)
    if samples is None:
        if n > EXHAUSTIVE_LIMIT + 2:
            raise ValueError(f"exhaustive check limited to n <= {EXHAUSTIVE_LIMIT + 2}; pass samples=")
        subs = _subset_matrix(n)[1:]
        left, right = subs, subs
        exhaustive = True
    else:
        rng = np.random.default_rng() if rng is None else rng
        left = (rng.random((samples, n)) < rng.random((samples, 1))).astype(np.float64)
        right = (rng.random((samples, n)) < rng.random((samples, 1))).astype(np.float64)
        left[left.sum(1) == 0, 0] = 1
        right[right.sum(1) == 0, 0] = 1
        exhaustive = False
    ts = right.sum(1)
    RB = right @ B.T  # RB[t, i] = edges from left i into T
    best, arg = -1.0, (0, 0)
    step = 512
    for start in range(0, left.shape[0], step):
        S = left[start : start + step]
        ss = S.sum(1)
        E = S @ RB.T
        dev = np.abs(E - r * np.outer(ss, ts) / n) / (r * np.sqrt(np.outer(ss, ts)))
        k = int(np.argmax(dev))
        if dev.flat[k] > best:
            best = float(dev.flat[k])
            arg = (start + k // dev.shape[1], k % dev.shape[1])
    witness = (_mask_to_set(left[arg[0]]), _mask_to_set(right[arg[1]]))
    return PseudorandomReport(True, max(0.0, best), witness, exhaustive)


def check_pseudorandom(G: BipartiteGraph, eps: float, samples: int | None = None, rng=None) -> tuple[bool, PseudorandomReport]:
    rep = pseudorandom_eps(G, samples, rng)
    rep.ok = rep.eps <= eps + 1e-12
    return rep.ok, rep


def spectral_certificate(G: BipartiteGraph) -> float:
    """sigma_2 / r: by the expander mixing lemma G is (sigma_2 / r)-pseudorandom."""
    sv = np.linalg.svd(G.biadjacency().astype(np.float64), compute_uv=False)
    return float(sv[1] / G.r) if sv.size > 1 else 0.0


def build_expander(n: int, r: int, eps_target: float, seed: int = 0, retries: int = 200) -> tuple[BipartiteGraph, float]:
    """r-regular bipartite graph on n + n vertices that is eps_target-pseudorandom.

    Small graphs (n <= 12) are certified by the exhaustive check or the
    spectral bound; larger ones by the spectral bound, which needs
    r >= 4 / eps_target^2 to be reachable.  Returns (graph, certified eps).
    """
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n (n={n}, r={r})")
    if r == n:
        return complete_graph(n), 0.0
    if n > EXHAUSTIVE_LIMIT and r < 4 / eps_target**2:
        raise ValueError(f"degree r={r} is below 4/eps^2 = {4 / eps_target**2:.3f}")
    rng = np.random.default_rng(seed)
    best_eps = np.inf
    for attempt in range(retries):
        G = random_regular(n, r, rng)
        eps = spectral_certificate(G)
        if eps > eps_target and n <= EXHAUSTIVE_LIMIT:
            eps = min(eps, pseudorandom_eps(G).eps)
        if eps < best_eps:
            best_eps = eps
        if eps <= eps_target + 1e-12:
            note = f"random matchings seed={seed} attempt={attempt}"
            return BipartiteGraph(G.n, G.r, G.adjacency, note), eps
    raise RuntimeError(f"no {eps_target}-pseudorandom graph found; best eps {best_eps:.4f}")


# ---------------------------------------------------------------------------
# permutation


def pi_table(G: BipartiteGraph) -> np.ndarray:
    """perm[L * r + j] = v * r + j'."""
    adj = G.adjacency
    return (adj[..., 0] * G.r + adj[..., 1]).reshape(-1)


def _flat(G: BipartiteGraph, positions) -> np.ndarray:
    pos = np.asarray(positions, dtype=np.int64)
    if pos.ndim >= 1 and pos.shape[-1:] == (2,) and pos.ndim == 2:
        if np.any(pos[:, 1] < 0) or np.any(pos[:, 1] >= G.r):
            raise ValueError("port index out of range")
        pos = pos[:, 0] * G.r + pos[:, 1]
    if np.any(pos < 0) or np.any(pos >= G.n * G.r):
        raise ValueError("position out of range")
    return pos


def pi_apply(G: BipartiteGraph, positions) -> np.ndarray:
    """Flat indices (or (vertex, port) rows) on the left mapped to flat indices on the right."""
    return pi_table(G)[_flat(G, positions)]


def pi_invert(G: BipartiteGraph, positions) -> np.ndarray:
    perm = pi_table(G)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(perm.size)
    return inv[_flat(G, positions)]


# ---------------------------------------------------------------------------
# concatenation


def _check_alphabets(outer: CSSCode, inner: CSSCode) -> None:
    Fi, Fo = inner.spec, outer.spec
    if not Fi.is_prime or inner.ext != 1:
        raise ValueError("inner code must be over a prime field with one qudit per symbol")
    if outer.ext != 1:
        raise ValueError("outer code must have one field element per symbol")
    if Fo.p != Fi.p or Fo.m != inner.k_qudits:
        raise ValueError(
            f"alphabet mismatch: q_out = {Fo.q} but q_in^k_in = {Fi.q}^{inner.k_qudits}"
        )


def _block_encode(words: np.ndarray, enc: np.ndarray, F: FieldSpec, n_out: int) -> np.ndarray:
    k = enc.shape[0]
    blocks = np.asarray(words, dtype=np.int64).reshape(words.shape[0], n_out, k)
    return la.matmul(F, blocks, enc).reshape(words.shape[0], -1)


def _blockdiag(rows: np.ndarray, n_out: int, n_in: int) -> np.ndarray:
    out = np.zeros((n_out * rows.shape[0], n_out * n_in), dtype=np.int64)
    for i in range(n_out):
        out[i * rows.shape[0] : (i + 1) * rows.shape[0], i * n_in : (i + 1) * n_in] = rows
    return out


def concat_components(outer: CSSCode, inner: CSSCode) -> tuple[LinearCode, LinearCode, np.ndarray]:
    """Classical components of the concatenation, plus its X-logical basis."""
    _check_alphabets(outer, inner)
    Fi = inner.spec
    n_out, n_in = outer.n, inner.n
    e1 = expand(outer.c1, Fi, "alpha").generator
    e2 = expand(outer.c2, Fi, "beta").generator
    rows1 = [_block_encode(e1, inner.enc1, Fi, n_out)] if e1.shape[0] else []
    rows2 = [_block_encode(e2, inner.enc2, Fi, n_out)] if e2.shape[0] else []
    if inner.c2_dual.dim:
        rows1.append(_blockdiag(inner.c2_dual.generator, n_out, n_in))
    if inner.c1_dual.dim:
        rows2.append(_blockdiag(inner.c1_dual.generator, n_out, n_in))
    width = n_out * n_in
    G1 = np.vstack(rows1) if rows1 else np.zeros((0, width), dtype=np.int64)
    G2 = np.vstack(rows2) if rows2 else np.zeros((0, width), dtype=np.int64)
    lx = np.zeros((0, width), dtype=np.int64)
    if outer.enc1.shape[0]:
        from .classical import LinearCode as _LC

        ex = expand(_LC(outer.spec, outer.enc1, outer.n), Fi, "alpha").generator
        lx = _block_encode(ex, inner.enc1, Fi, n_out)
    c1 = LinearCode(Fi, G1, n_out, n_in, name="C1 concat")
    c2 = LinearCode(Fi, G2, n_out, n_in, name="C2 concat")
    return c1, c2, lx


def concat_css(outer: CSSCode, inner: CSSCode) -> CSSCode:
    """CSS concatenation with the duality-preserving inner encoders (enc1, enc2)."""
    c1, c2, lx = concat_components(outer, inner)
    return CSSCode(c1, c2, name=f"{outer.name}<>{inner.name}", x_logicals=lx)


def _permute_code(code: LinearCode, inv: np.ndarray, n: int, r: int) -> LinearCode:
    return LinearCode(code.spec, code.generator[:, inv], n, r, name=code.name)


class AELCode:
    """pi_G applied to the concatenation of ``outer`` and ``inner``.

    ``mode`` is ``basic`` (graph degree n_in on n_out vertices) or
    ``reducing`` (degree r dividing n_in on n_out * n_in / r vertices).
    """

    def __init__(self, outer: CSSCode, inner: CSSCode, graph: BipartiteGraph, mode: str = "basic"):
        n_out, n_in = outer.n, inner.n
        if mode == "basic":
            if graph.r != n_in or graph.n != n_out:
                raise ValueError(f"basic mode needs an {n_in}-regular graph on {n_out} vertices")
            b = 1
        elif mode == "reducing":
            if n_in % graph.r:
                raise ValueError(f"degree r={graph.r} must divide n_in={n_in}")
            b = n_in // graph.r
            if graph.n != n_out * b:
                raise ValueError(f"reducing mode needs a graph on n_out*b = {n_out * b} vertices")
        else:
            raise ValueError(f"unknown AEL mode {mode!r}")
        self.outer = outer
        self.inner = inner
        self.graph = graph
        self.mode = mode
        self.b = b
        self.r = graph.r
        self.concat = concat_css(outer, inner)
        self.perm = pi_table(graph)
        self.inv = np.empty_like(self.perm)
        self.inv[self.perm] = np.arange(self.perm.size)
        n = graph.n
        c1 = _permute_code(self.concat.c1, self.inv, n, self.r)
        c2 = _permute_code(self.concat.c2, self.inv, n, self.r)
        self.css = CSSCode(c1, c2, name=f"AEL[{mode}]", x_logicals=self.concat.enc1[:, self.inv])
        self.stab = self.css.stab
        self.spec = inner.spec
        self.n = n
        self.enc1 = inner.enc1
        self.enc2 = inner.enc2
        self._inner_table = None

    @property
    def rate(self):
        return self.css.rate

    def __repr__(self) -> str:
        return f"<AELCode {self.mode} n={self.n} r={self.r} k_qudits={self.css.k_qudits}>"

    # -- layout maps ----------------------------------------------------------

    def to_concat(self, v: np.ndarray) -> np.ndarray:
        """AEL-ordered qudit vector(s) -> concatenated order."""
        return np.asarray(v)[..., self.perm]

    def from_concat(self, v: np.ndarray) -> np.ndarray:
        return np.asarray(v)[..., self.inv]

    def frame(self, a, b) -> PauliFrame:
        return self.css.frame(a, b)

    # -- analytic bounds ------------------------------------------------------

    def distance_bound(self, eps0: float, d_in: int | None = None, d_out: int | None = None) -> float:
        d_in = self.inner.distance() if d_in is None else d_in
        d_out = self.outer.distance() if d_out is None else d_out
        D_in, D_out = d_in / self.inner.n, d_out / self.outer.n
        if self.mode == "basic":
            return D_in - 2 * eps0 * sqrt(D_in / D_out)
        return D_in - 6 * (eps0 / 2 * sqrt(D_in / D_out)) ** (2 / 3)

    # -- decoding -----------------------------------------------------------

    def inner_table(self) -> dict:
        """Minimum-weight inner correction for every inner syndrome (first found per weight order)."""
        if self._inner_table is None:
            st = self.inner.stab
            table: dict = {}
            for w in range(self.inner.n + 1):
                for V in iter_weight(st.spec, st.n, st.ext, w):
                    S = st.syndrome(V)
                    keys = [s.tobytes() for s in S]
                    for key, v in zip(keys, V):
                        if key not in table:
                            table[key] = v
                if len(table) == st.spec.p**st.r:
                    break
            self._inner_table = table
        return self._inner_table


def build_ael(outer: CSSCode, inner: CSSCode, G: BipartiteGraph, mode: str = "basic") -> AELCode:
    return AELCode(outer, inner, G, mode)


# ---------------------------------------------------------------------------
# overload counting (expander permutation property)


def block_loads(G: BipartiteGraph, T, b: int = 1) -> np.ndarray:
    """Per inner block, the number of its qudits that the permutation sends into T."""
    mask = np.zeros(G.n, dtype=bool)
    mask[list(T)] = True
    hits = mask[G.adjacency[..., 0]].sum(axis=1)
    return hits.reshape(-1, b).sum(axis=1)


def expperm_check(G: BipartiteGraph, T, alpha_in: float, alpha_out: float | None = None, b: int = 1) -> int:
    """Number of inner blocks with at least alpha_in * n_in of their qudits mapped into T."""
    n_in = G.r * b
    loads = block_loads(G, T, b)
    return int(np.sum(loads >= alpha_in * n_in - 1e-12))


def expperm_budget(eps0: float, alpha_in: float, alpha_out: float, n: int) -> int:
    return int(np.floor((alpha_in - eps0 * sqrt(alpha_in / alpha_out)) * n + 1e-12))


def max_overload(G: BipartiteGraph, size: int, threshold: int, b: int = 1) -> int:
    """max over |T| = size of #blocks whose load exceeds ``threshold`` qudits (exhaustive)."""
    if size <= 0:
        return 0
    size = min(size, G.n)
    B = G.biadjacency()
    best = 0
    for T in combinations(range(G.n), size):
        hits = B[:, list(T)].sum(axis=1).reshape(-1, b).sum(axis=1)
        best = max(best, int(np.sum(hits > threshold)))
        if best == hits.size:
            break
    return best


def overload_sweep(G: BipartiteGraph, eps0: float, alphas_in, alphas_out) -> list[tuple]:
    """All (alpha_in, alpha_out, T, count) where the overload guarantee fails (expected: none)."""
    bad = []
    n = G.n
    for ai in alphas_in:
        for ao in alphas_out:
            budget = expperm_budget(eps0, ai, ao, n)
            if budget < 0:
                continue
            for size in range(budget + 1):
                for T in combinations(range(n), size):
                    c = expperm_check(G, T, ai, ao)
                    if c >= ao * n:
                        bad.append((ai, ao, T, c))
    return bad


# ---------------------------------------------------------------------------
# decoding


@dataclass
class AELDecodeResult:
    ok: bool
    correction: PauliFrame | None
    failed_blocks: int = 0
    reason: str = ""


def ael_unique_decode(ael: AELCode, E: PauliFrame, outer_radius: int | None = None) -> AELDecodeResult:
    """Outer unique decode after per-block minimum-weight inner decoding.

    Works from the syndrome of E only; returns an estimate of E that is
    stabilizer-equivalent to E whenever the error is within the guarantee.
    """
    F = ael.spec
    inner, outer = ael.inner, ael.outer
    n_out, n_in = outer.n, inner.n
    s = ael.css.syndrome(E)
    ex, ez = ael.css.solve_syndrome(s)
    # a syndrome-equivalent representative carries all the information we use
    ax, az = ael.to_concat(ex).reshape(n_out, n_in), ael.to_concat(ez).reshape(n_out, n_in)
    table = ael.inner_table()
    st = inner.stab
    corr_x = np.zeros_like(ax)
    corr_z = np.zeros_like(az)
    out_x = np.zeros(n_out, dtype=np.int64)
    out_z = np.zeros(n_out, dtype=np.int64)
    Fo = outer.spec
    for i in range(n_out):
        v = st.vec(inner.frame(ax[i], az[i]))
        key = st.syndrome(v).tobytes()
        c = table[key]
        cx, cz = st.frame(c).x, st.frame(c).z
        corr_x[i], corr_z[i] = cx, cz
        resid = (v - c) % F.p
        coords = st.logical_coordinates(resid)[0]
        k = inner.k_qudits
        out_x[i] = Fo.from_digits(coords[:k])
        out_z[i] = Fo.from_dual_digits(coords[k:])
    radius = (outer.distance() - 1) // 2 if outer_radius is None else outer_radius
    cw_x = unique_decode(outer.c1, out_x, radius)
    cw_z = unique_decode(outer.c2, out_z, radius)
    if cw_x is None or cw_z is None:
        return AELDecodeResult(False, None, reason="outer decoding failed")
    est_x = Fo.sub(out_x, cw_x)
    est_z = Fo.sub(out_z, cw_z)
    # re-encode the outer estimate into inner logical operators
    x_dig = Fo.to_digits(est_x).reshape(n_out, -1)
    z_dig = Fo.to_dual_digits(est_z).reshape(n_out, -1)
    tot_x = F.add(corr_x, la.matmul(F, x_dig, inner.enc1))
    tot_z = F.add(corr_z, la.matmul(F, z_dig, inner.enc2))
    a = ael.from_concat(tot_x.reshape(-1))
    b = ael.from_concat(tot_z.reshape(-1))
    return AELDecodeResult(True, ael.frame(a, b))


def ael_list_threshold(ael: AELCode, delta, inner_radius: int) -> int:
    """Outer agreement guaranteed for every error of weight <= floor(delta n)."""
    budget = radius_of(delta, ael.n)
    bad = max_overload(ael.graph, budget, inner_radius, ael.b)
    return ael.outer.n - bad


def _component_list(ael, e_concat, inner_cc, outer_code, enc_pair, basis, inner_radius, agreement, mode):
    from .classical import coset_list_decode

    inner, outer = ael.inner, ael.outer
    F, Fo = ael.spec, outer.spec
    n_out, n_in = outer.n, inner.n
    blocks = e_concat.reshape(n_out, n_in)
    tau_in = inner_radius / n_in if n_in else 0
    sets = []
    for i in range(n_out):
        cands = coset_list_decode(inner_cc, blocks[i], tau_in)
        coords = la.matmul(F, cands, enc_pair.T) if cands.shape[0] else np.zeros((0, enc_pair.shape[0]), dtype=np.int64)
        syms = Fo.from_digits(coords) if basis == "alpha" else Fo.from_dual_digits(coords)
        sets.append(sorted({int(x) for x in np.atleast_1d(syms)}))
    ell = max(1, max(len(S) for S in sets))
    eta = agreement / n_out
    words = list_recover(outer_code, sets, eta, ell, mode=mode)
    return words, sets


def ael_list_decode(
    ael: AELCode,
    s,
    delta,
    inner_radius: int | None = None,
    mode: str = "brute",
    prune: bool = False,
) -> list[PauliFrame]:
    """Stabilizer-distinct Paulis with syndrome s covering every error of weight <= floor(delta n).

    Each inner block is list decoded (coset lists of radius ``inner_radius``),
    the resulting outer-symbol candidate sets are list recovered by the outer
    components, and every recovered outer word is re-encoded.  ``prune``
    keeps only classes with an element of weight <= floor(delta n).
    """
    inner, outer = ael.inner, ael.outer
    F, Fo = ael.spec, outer.spec
    n_out = outer.n
    if inner_radius is None:
        inner_radius = max(0, inner.distance() - 1)
    agreement = ael_list_threshold(ael, delta, inner_radius)
    if agreement <= 0:
        raise ValueError("the radius leaves no guaranteed outer agreement")
    ex, ez = ael.css.solve_syndrome(s)
    cx, cz = ael.to_concat(ex), ael.to_concat(ez)
    wx, _ = _component_list(ael, cx, inner.x_cosets, outer.c1, inner.enc2, "alpha", inner_radius, agreement, mode)
    wz, _ = _component_list(ael, cz, inner.z_cosets, outer.c2, inner.enc1, "beta", inner_radius, agreement, mode)
    # re-encode recovered outer words and subtract from the syndrome representative
    xs = []
    for w in wx:
        dig = Fo.to_digits(w).reshape(n_out, -1)
        xs.append(F.sub(cx, la.matmul(F, dig, inner.enc1).reshape(-1)))
    zs = []
    for w in wz:
        dig = Fo.to_dual_digits(w).reshape(n_out, -1)
        zs.append(F.sub(cz, la.matmul(F, dig, inner.enc2).reshape(-1)))
    radius = radius_of(delta, ael.n)
    bounded = _ClassWeights(ael.css) if prune else None
    seen, out = set(), []
    for a in xs:
        for b in zs:
            A, B = ael.from_concat(a), ael.from_concat(b)
            if bounded is not None:
                w, A, B = bounded.best_pair(A, B, limit=radius)
                if w > radius:
                    continue
            E = ael.frame(A, B)
            key = ael.stab.canonical(E).tobytes()
            if key in seen:
                continue
            seen.add(key)
            out.append(E)
    return out
