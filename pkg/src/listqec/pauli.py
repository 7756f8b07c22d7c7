"""Generalised Pauli operators and stabilizer codes in symplectic form.

A Pauli on ``n`` symbols of ``ext`` qudits of dimension q = p^m is a pair
(a, b) of F_q vectors.  Internally every operator is expanded to an F_p
vector of length 2 * n * ext * m: x-part digits in the polynomial basis,
z-part digits in its trace-dual basis.  With this choice the commutation
phase <a, b'> - <a', b> (via the trace) is an ordinary F_p dot-product
difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

import numpy as np

from . import linalg as la
from .gf import FieldSpec, field

ENUMERATION_LIMIT = 1 << 24
_ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True, eq=False)
class PauliFrame:
    """E_{a,b} with a = ``x``, b = ``z`` over F_q; ``ext`` qudits per symbol."""

    x: np.ndarray
    z: np.ndarray
    spec: FieldSpec
    ext: int = 1
    phase: int = 0

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.int64).reshape(-1)
        z = np.asarray(self.z, dtype=np.int64).reshape(-1)
        if x.shape != z.shape:
            raise ValueError("x and z parts differ in length")
        if x.size % self.ext:
            raise ValueError("length is not a multiple of ext")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "phase", int(self.phase) % self.spec.p)

    @property
    def n(self) -> int:
        return self.x.size // self.ext

    @property
    def nqudits(self) -> int:
        return self.x.size

    @classmethod
    def identity(cls, spec: FieldSpec, n: int, ext: int = 1) -> PauliFrame:
        z = np.zeros(n * ext, dtype=np.int64)
        return cls(z, z.copy(), spec, ext)

    @property
    def weight(self) -> int:
        nz = (self.x != 0) | (self.z != 0)
        return int(nz.reshape(self.n, self.ext).any(axis=1).sum())

    def support(self) -> list[int]:
        nz = ((self.x != 0) | (self.z != 0)).reshape(self.n, self.ext).any(axis=1)
        return [int(i) for i in np.flatnonzero(nz)]

    def symplectic(self) -> np.ndarray:
        return to_symplectic(self.spec, self.x, self.z)

    @classmethod
    def from_symplectic(cls, spec: FieldSpec, v, ext: int = 1) -> PauliFrame:
        x, z = from_symplectic(spec, v)
        return cls(x, z, spec, ext)

    def __mul__(self, other: PauliFrame) -> PauliFrame:
        _check_shapes(self, other)
        F = self.spec
        cross = int(F.trace(_dot(F, self.z, other.x)))
        return PauliFrame(F.add(self.x, other.x), F.add(self.z, other.z), F, self.ext, self.phase + other.phase + cross)

    def dagger(self) -> PauliFrame:
        F = self.spec
        cross = int(F.trace(_dot(F, self.x, self.z)))
        return PauliFrame(F.neg(self.x), F.neg(self.z), F, self.ext, cross - self.phase)

    def is_identity(self) -> bool:
        return not (np.any(self.x) or np.any(self.z))

    def same_operator(self, other: PauliFrame) -> bool:
        return np.array_equal(self.x, other.x) and np.array_equal(self.z, other.z)

    def to_text(self) -> str:
        return f"X:{_fmt(self.spec, self.x, self.ext)};Z:{_fmt(self.spec, self.z, self.ext)};ph:{self.phase}"

    @classmethod
    def from_text(cls, text: str, spec: FieldSpec, ext: int = 1) -> PauliFrame:
        parts = dict(p.split(":", 1) for p in text.strip().split(";"))
        if set(parts) != {"X", "Z", "ph"}:
            raise ValueError(f"malformed Pauli text {text!r}")
        x = _parse(spec, parts["X"])
        z = _parse(spec, parts["Z"])
        return cls(x, z, spec, ext, int(parts["ph"]))

    def __repr__(self) -> str:
        return f"PauliFrame({self.to_text()})"


def _fmt(spec: FieldSpec, v: np.ndarray, ext: int) -> str:
    blocks = v.reshape(-1, ext)
    if spec.q <= len(_ALPHABET):
        parts = ["".join(_ALPHABET[int(c)] for c in b) for b in blocks]
    else:
        parts = [",".join(str(int(c)) for c in b) for b in blocks]
    return ".".join(parts) if ext > 1 or spec.q > len(_ALPHABET) else "".join(parts)


def _parse(spec: FieldSpec, s: str) -> np.ndarray:
    if spec.q <= len(_ALPHABET):
        vals = [_ALPHABET.index(c) for c in s if c != "."]
    else:
        vals = [int(t) for t in s.replace(".", ",").split(",") if t]
    arr = np.array(vals, dtype=np.int64)
    if np.any(arr >= spec.q):
        raise ValueError("digit outside the field")
    return arr


def _dot(F: FieldSpec, a, b) -> int:
    prod = F.mul(a, b)
    acc = 0
    for v in np.asarray(prod).reshape(-1):
        acc = int(F.add(acc, v))
    return acc


def _check_shapes(E: PauliFrame, F: PauliFrame) -> None:
    if E.spec != F.spec or E.x.shape != F.x.shape:
        raise ValueError("Pauli operators have different shapes or fields")


def to_symplectic(spec: FieldSpec, x, z) -> np.ndarray:
    """F_p expansion [x digits | z dual digits]; works on batches."""
    x = np.asarray(x, dtype=np.int64)
    z = np.asarray(z, dtype=np.int64)
    xd = spec.to_digits(x).reshape(x.shape[:-1] + (-1,))
    zd = spec.to_dual_digits(z).reshape(z.shape[:-1] + (-1,))
    return np.concatenate([xd, zd], axis=-1)


def from_symplectic(spec: FieldSpec, v) -> tuple[np.ndarray, np.ndarray]:
    v = np.asarray(v, dtype=np.int64)
    M = v.shape[-1] // 2
    m = spec.m
    xd = v[..., :M].reshape(v.shape[:-1] + (M // m, m))
    zd = v[..., M:].reshape(v.shape[:-1] + (M // m, m))
    return spec.from_digits(xd), spec.from_dual_digits(zd)


def symplectic_form(p: int, U, V) -> np.ndarray:
    """omega(u, v) = u_x . v_z - v_x . u_z over F_p, for row batches."""
    U = np.atleast_2d(np.asarray(U, dtype=np.int64))
    V = np.atleast_2d(np.asarray(V, dtype=np.int64))
    M = U.shape[1] // 2
    return (U[:, :M] @ V[:, M:].T - U[:, M:] @ V[:, :M].T) % p


def commutation_phase(E: PauliFrame, F: PauliFrame) -> int:
    """<a, b'> - <a', b> through the trace; zero iff E and F commute."""
    _check_shapes(E, F)
    return int(symplectic_form(E.spec.p, E.symplectic(), F.symplectic())[0, 0])


# ---------------------------------------------------------------------------


class StabilizerCode:
    """Stabilizer code stored as an F_p matrix of symplectic generators.

    ``n`` counts symbols of ``ext`` qudits; ``logical_x``/``logical_z`` hold
    F_p symplectic rows forming a standard symplectic basis of N(S)/S.
    """

    def __init__(
        self,
        spec: FieldSpec,
        n: int,
        generators,
        ext: int = 1,
        logical_x=None,
        logical_z=None,
        name: str = "",
        check: bool = True,
    ):
        self.spec = spec
        self.prime = field(spec.p)
        self.n = n
        self.ext = ext
        self.name = name
        self.M = n * ext * spec.m
        G = la.as_matrix(generators, 2 * self.M) % spec.p
        if G.shape[1] != 2 * self.M:
            raise ValueError(f"generators must have {2 * self.M} F_p columns")
        self.generators = G
        if check:
            if la.rank(self.prime, G) != G.shape[0]:
                raise ValueError("stabilizer generators are not independent")
            if G.shape[0] and np.any(symplectic_form(spec.p, G, G)):
                raise ValueError("stabilizer generators do not commute")
        self._rref = la.rref(self.prime, G) if G.shape[0] else (G, [])
        if logical_x is None or logical_z is None:
            logical_x, logical_z = _symplectic_logicals(self)
        self.logical_x = la.as_matrix(logical_x, 2 * self.M) % spec.p
        self.logical_z = la.as_matrix(logical_z, 2 * self.M) % spec.p
        if check:
            self._check_logicals()

    def _check_logicals(self) -> None:
        p = self.spec.p
        L = np.vstack([self.logical_x, self.logical_z])
        kk = self.logical_x.shape[0]
        if self.logical_z.shape[0] != kk or 2 * kk + 2 * self.r != 2 * self.M or kk + self.r != self.M:
            raise ValueError("logical dictionary has the wrong size")
        if L.shape[0] and self.r and np.any(symplectic_form(p, self.generators, L)):
            raise ValueError("logical operators do not commute with the stabilizers")
        gram = symplectic_form(p, L, L)
        J = np.zeros_like(gram)
        J[:kk, kk:] = np.eye(kk, dtype=np.int64)
        J[kk:, :kk] = (-np.eye(kk, dtype=np.int64)) % p
        if not np.array_equal(gram, J):
            raise ValueError("logical dictionary is not a standard symplectic basis")

    # -- sizes --------------------------------------------------------------

    @property
    def r(self) -> int:
        return self.generators.shape[0]

    @property
    def nqudits(self) -> int:
        return self.n * self.ext

    @property
    def k(self) -> Fraction:
        """Logical dimension in symbols, n - r / (m ext)."""
        return Fraction(self.nqudits * self.spec.m - self.r, self.spec.m * self.ext)

    @property
    def k_qudits(self) -> Fraction:
        return Fraction(self.nqudits * self.spec.m - self.r, self.spec.m)

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<StabilizerCode{tag} [[{self.n},{self.k}]] q={self.spec.q} ext={self.ext} r={self.r}>"

    # -- symplectic helpers ----------------------------------------------

    def vec(self, E) -> np.ndarray:
        if isinstance(E, PauliFrame):
            if E.x.size != self.nqudits or E.spec != self.spec:
                raise ValueError("Pauli does not match the code shape")
            return E.symplectic()
        v = np.asarray(E, dtype=np.int64)
        if v.shape[-1] != 2 * self.M:
            raise ValueError("symplectic vector has the wrong length")
        return v

    def frame(self, v) -> PauliFrame:
        return PauliFrame.from_symplectic(self.spec, v, self.ext)

    def generator_frames(self) -> list[PauliFrame]:
        return [self.frame(g) for g in self.generators]

    def logical_frames(self) -> tuple[list[PauliFrame], list[PauliFrame]]:
        return [self.frame(v) for v in self.logical_x], [self.frame(v) for v in self.logical_z]

    def syndrome(self, E) -> np.ndarray:
        """s_i = phase(g_i, E); accepts a PauliFrame or a batch of F_p rows."""
        V = self.vec(E)
        G = self.generators
        M = self.M
        s = (V[..., M:] @ G[:, :M].T - V[..., :M] @ G[:, M:].T) % self.spec.p
        return s

    def canonical(self, E) -> np.ndarray:
        """Representative of E modulo the stabilizer group (row reduction)."""
        V = self.vec(E) % self.spec.p
        R, piv = self._rref
        if not piv:
            return V
        return la.reduce_rows(self.prime, R, piv, V)

    def in_stabilizer(self, E) -> np.ndarray | bool:
        red = self.canonical(E)
        res = ~np.any(red != 0, axis=-1)
        return bool(res) if np.ndim(res) == 0 else res

    def is_stabilizer_equivalent(self, O, O2) -> bool:
        d = (self.vec(O) - self.vec(O2)) % self.spec.p
        return bool(self.in_stabilizer(d))

    def classify(self, E) -> str:
        if np.any(self.syndrome(E)):
            return "detectable"
        return "stabilizer" if self.in_stabilizer(E) else "logical"

    def logical_coordinates(self, V) -> np.ndarray:
        """For V in N(S): digits (x | z) with V = sum x_t LX_t + z_t LZ_t mod S."""
        V = np.atleast_2d(self.vec(V))
        p = self.spec.p
        xs = symplectic_form(p, V, self.logical_z)
        zs = (-symplectic_form(p, V, self.logical_x)) % p
        return np.concatenate([xs, zs], axis=1)

    def solve_syndrome(self, s) -> np.ndarray:
        """Some F_p symplectic vector with the given syndrome."""
        G = self.generators
        M = self.M
        K = np.concatenate([(-G[:, M:].T) % self.spec.p, G[:, :M].T], axis=0)
        v = la.solve(self.prime, K.T, np.asarray(s, dtype=np.int64) % self.spec.p)
        if v is None:
            raise RuntimeError("syndrome has no preimage")
        return v

    def lift(self, V) -> np.ndarray:
        """Map message-space symplectic rows through the logical dictionary."""
        V = np.atleast_2d(np.asarray(V, dtype=np.int64))
        kk = self.logical_x.shape[0]
        if V.shape[1] != 2 * kk:
            raise ValueError(f"message vectors need {2 * kk} F_p entries")
        L = np.vstack([self.logical_x, self.logical_z])
        return (V @ L) % self.spec.p


def _symplectic_logicals(code: StabilizerCode) -> tuple[np.ndarray, np.ndarray]:
    """Symplectic Gram-Schmidt on a complement of S inside N(S)."""
    P = code.prime
    p = code.spec.p
    M = code.M
    G = code.generators
    if G.shape[0]:
        normal = la.nullspace(P, np.concatenate([(-G[:, M:]) % p, G[:, :M]], axis=1), 2 * M)
    else:
        normal = np.eye(2 * M, dtype=np.int64)
    comp = la.complement_basis(P, G, normal) if G.shape[0] else normal
    vecs = [v.copy() for v in comp]
    LX, LZ = [], []
    while vecs:
        u = vecs.pop(0)
        partner = None
        for idx, w in enumerate(vecs):
            f = int(symplectic_form(p, u, w)[0, 0])
            if f:
                partner = idx
                break
        if partner is None:
            raise ValueError("failed to pair logical operators")
        w = vecs.pop(partner)
        w = (w * pow(f, p - 2, p)) % p
        rest = []
        for v in vecs:
            a = int(symplectic_form(p, v, w)[0, 0])
            b = int(symplectic_form(p, v, u)[0, 0])
            # remove components so that v is orthogonal to both u and w
            v = (v - a * u + b * w) % p
            rest.append(v)
        vecs = rest
        LX.append(u)
        LZ.append(w)
    width = 2 * M
    return (
        np.array(LX, dtype=np.int64).reshape(-1, width),
        np.array(LZ, dtype=np.int64).reshape(-1, width),
    )


def syndrome(code: StabilizerCode, E: PauliFrame) -> np.ndarray:
    return code.syndrome(E)


def is_stabilizer_equivalent(code: StabilizerCode, O: PauliFrame, O2: PauliFrame) -> bool:
    return code.is_stabilizer_equivalent(O, O2)


def classify(code: StabilizerCode, E: PauliFrame) -> str:
    return code.classify(E)


def identity_code(spec: FieldSpec, n: int, ext: int = 1) -> StabilizerCode:
    """[[n, n]]: no stabilizers, logical operators are the single-qudit Paulis."""
    M = n * ext * spec.m
    I = np.eye(M, dtype=np.int64)
    Z = np.zeros((M, M), dtype=np.int64)
    return StabilizerCode(
        spec, n, np.zeros((0, 2 * M), dtype=np.int64), ext,
        logical_x=np.concatenate([I, Z], axis=1),
        logical_z=np.concatenate([Z, I], axis=1),
        name="identity",
    )


def compose(outer: StabilizerCode, inner: StabilizerCode, name: str = "") -> StabilizerCode:
    """Encode ``inner`` into the logical qudits of ``outer``.

    The result has the generators of ``outer`` plus those of ``inner`` lifted
    through the logical dictionary of ``outer``; its logical dictionary is the
    lift of ``inner``'s.
    """
    if outer.spec.p != inner.spec.p:
        raise ValueError("codes over different characteristics")
    if outer.logical_x.shape[0] != inner.M:
        raise ValueError(
            f"message size mismatch: outer encodes {outer.logical_x.shape[0]} F_p digits, inner block has {inner.M}"
        )
    lifted = outer.lift(inner.generators) if inner.r else np.zeros((0, 2 * outer.M), dtype=np.int64)
    G = np.vstack([outer.generators, lifted])
    if G.shape[0] and np.any(symplectic_form(outer.spec.p, G, G)):
        raise AssertionError("lifted generators do not commute; logical dictionary is corrupt")
    LX = outer.lift(inner.logical_x) if inner.logical_x.shape[0] else inner.logical_x.reshape(0, 2 * outer.M)
    LZ = outer.lift(inner.logical_z) if inner.logical_z.shape[0] else inner.logical_z.reshape(0, 2 * outer.M)
    return StabilizerCode(outer.spec, outer.n, G, outer.ext, LX, LZ, name=name or f"{outer.name}o{inner.name}")


def _place(rows: np.ndarray, M: int, offset: int, total: int) -> np.ndarray:
    out = np.zeros((rows.shape[0], 2 * total), dtype=np.int64)
    out[:, offset : offset + M] = rows[:, :M]
    out[:, total + offset : total + offset + M] = rows[:, M:]
    return out


def tensor(codes: Sequence[StabilizerCode], name: str = "") -> StabilizerCode:
    """Side-by-side copies; logical qudits are ordered block by block."""
    spec, ext = codes[0].spec, codes[0].ext
    if any(c.spec != spec or c.ext != ext for c in codes):
        raise ValueError("tensor factors must share field and alphabet")
    total = sum(c.M for c in codes)
    G, LX, LZ = [], [], []
    off = 0
    for c in codes:
        G.append(_place(c.generators, c.M, off, total))
        LX.append(_place(c.logical_x, c.M, off, total))
        LZ.append(_place(c.logical_z, c.M, off, total))
        off += c.M
    n = sum(c.n for c in codes)
    return StabilizerCode(spec, n, np.vstack(G), ext, np.vstack(LX), np.vstack(LZ), name=name or "x".join(c.name for c in codes))


# ---------------------------------------------------------------------------
# enumeration of low-weight operators


def symbol_paulis(spec: FieldSpec, ext: int) -> np.ndarray:
    """All nonidentity single-symbol Paulis as F_p rows (x digits | z digits)."""
    q = spec.q
    k = 2 * ext
    idx = np.arange(1, q**k, dtype=np.int64)
    pw = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    vals = (idx[:, None] // pw[None, :]) % q
    return to_symplectic(spec, vals[:, :ext], vals[:, ext:])


def count_low_weight(spec: FieldSpec, n: int, ext: int, max_weight: int) -> int:
    per = spec.q ** (2 * ext) - 1
    return sum(comb(n, w) * per**w for w in range(max_weight + 1))


def iter_weight(spec: FieldSpec, n: int, ext: int, w: int, chunk: int = 1 << 18) -> Iterator[np.ndarray]:
    """Yield batches of F_p rows for every Pauli of symbol weight exactly w."""
    M = n * ext * spec.m
    d = ext * spec.m
    if w == 0:
        yield np.zeros((1, 2 * M), dtype=np.int64)
        return
    sym = symbol_paulis(spec, ext)
    per = sym.shape[0]
    for supp in combinations(range(n), w):
        total = per**w
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            out = np.zeros((idx.size, 2 * M), dtype=np.int64)
            rem = idx
            for pos in reversed(supp):
                choice = rem % per
                rem = rem // per
                out[:, pos * d : (pos + 1) * d] = sym[choice, :d]
                out[:, M + pos * d : M + (pos + 1) * d] = sym[choice, d:]
            yield out


def brute_force_distance(code: StabilizerCode, limit: int = ENUMERATION_LIMIT) -> int:
    """Minimum weight of an operator in N(S) \\ S, by weight-stratified enumeration."""
    total = 0
    per = code.spec.q ** (2 * code.ext) - 1
    for w in range(1, code.n + 1):
        total += comb(code.n, w) * per**w
        if total > limit:
            raise ValueError(f"enumeration would visit more than {limit} operators (reached weight {w})")
        for V in iter_weight(code.spec, code.n, code.ext, w):
            s = code.syndrome(V)
            cand = V[~np.any(s != 0, axis=1)]
            if cand.shape[0] and not np.all(code.in_stabilizer(cand)):
                return w
    return code.n + 1
