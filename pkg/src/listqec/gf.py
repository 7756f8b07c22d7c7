"""Arithmetic in GF(p^m) with trace and dual-basis support.

Elements are stored as integers in ``[0, p^m)``.  The base-p digits of an
integer are its coordinates in the polynomial basis ``1, x, ..., x^(m-1)``,
least significant digit first.  All array operations are vectorised with
numpy and work on integer arrays of any shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

# Primitive moduli, coefficients listed from x^0 up to the leading 1.
# Entries are re-verified (irreducible and primitive) whenever a field is built.
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1),
    (2, 15): (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
}

MAX_ORDER = 1 << 20
_ADD_TABLE_LIMIT = 1024


# ---------------------------------------------------------------------------
# polynomials over GF(p), lists of coefficients low -> high


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, f, p)


def _poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _monic_polys(p: int, deg: int) -> Iterable[list[int]]:
    for idx in range(p**deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(idx % p)
            idx //= p
        yield coeffs + [1]


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    f = list(f)
    deg = len(f) - 1
    if deg < 1 or f[-1] % p == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(f, g, p):
                return False
    return True


def is_primitive_modulus(f: Sequence[int], p: int) -> bool:
    """True when f is irreducible and x generates the multiplicative group."""
    m = len(f) - 1
    if not is_irreducible(f, p):
        return False
    order = p**m - 1
    x = [0, 1]
    if _poly_powmod(x, order, f, p) != [1]:
        return False
    return all(_poly_powmod(x, order // r, f, p) != [1] for r in _prime_factors(order))


def find_modulus(p: int, m: int) -> tuple[int, ...]:
    """Tabulated modulus if present, else the first primitive monic polynomial."""
    if (p, m) in MODULI:
        return MODULI[(p, m)]
    if m == 1:
        g = primitive_root(p)
        return ((-g) % p, 1)
    for f in _monic_polys(p, m):
        if f[0] != 0 and is_primitive_modulus(f, p):
            return tuple(f)
    raise ValueError(f"no primitive polynomial found for p={p}, m={m}")


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
            return g
    raise ValueError(f"no primitive root mod {p}")


# ---------------------------------------------------------------------------
# field specification


class FieldSpec:
    """GF(p^m) with lookup tables.

    Use :func:`field` to get a cached instance.  Instances are immutable
    after construction and safe to share.
    """

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if p**m > MAX_ORDER:
            raise ValueError(f"field order {p}^{m} exceeds the supported limit {MAX_ORDER}")
        if modulus is None:
            modulus = find_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self.is_prime = m == 1
        self._build_tables()
        self.primitive = self._find_primitive()
        self._build_exp_log()
        self._build_trace()

    # -- construction helpers --------------------------------------------

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        self.powers = p ** np.arange(m, dtype=np.int64)
        vals = np.arange(q, dtype=np.int64)
        self.digits = (vals[:, None] // self.powers[None, :]) % p
        self.neg_table = ((-self.digits) % p) @ self.powers
        if not self.is_prime and q <= _ADD_TABLE_LIMIT:
            d = self.digits
            self.add_table = ((d[:, None, :] + d[None, :, :]) % p) @ self.powers
        else:
            self.add_table = None

    def _int_mul(self, a: int, b: int) -> int:
        if self.is_prime:
            return a * b % self.p
        pa = [int(c) for c in self.digits[a]]
        pb = [int(c) for c in self.digits[b]]
        r = _poly_mulmod(_trim(pa), _trim(pb), self.modulus, self.p)
        return sum(c * self.p**i for i, c in enumerate(r))

    def _find_primitive(self) -> int:
        if self.is_prime:
            return primitive_root(self.p)
        if is_primitive_modulus(self.modulus, self.p):
            return self.p  # the element x
        order = self.q - 1
        factors = _prime_factors(order)
        for g in range(2, self.q):
            if all(self._int_pow(g, order // r) != 1 for r in factors):
                return g
        raise ValueError("no primitive element")

    def _int_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._int_mul(result, base)
            base = self._int_mul(base, base)
            e >>= 1
        return result

    def _build_exp_log(self) -> None:
        q = self.q
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        g = self.primitive
        x = 1
        if self.is_prime or g == self.p:
            # multiply by x (or by g in a prime field) digit-wise
            for i in range(q - 1):
                exp[i] = x
                log[x] = i
                x = self._times_generator(x)
        else:
            for i in range(q - 1):
                exp[i] = x
                log[x] = i
                x = self._int_mul(x, g)
        if x != 1 or len(set(exp[: q - 1].tolist())) != q - 1:
            raise ValueError("primitive element check failed")
        exp[q - 1 :] = exp[: q - 1]
        self.exp = exp
        self.log = log

    def _times_generator(self, x: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return x * self.primitive % p
        top = x // p ** (m - 1)
        shifted = (x % p ** (m - 1)) * p
        if top == 0:
            return shifted
        red = [(-top * c) % p for c in self.modulus[:m]]
        d = [int(v) for v in self.digits[shifted]]
        return sum(((d[i] + red[i]) % p) * p**i for i in range(m))

    def _build_trace(self) -> None:
        vals = np.arange(self.q, dtype=np.int64)
        acc = np.zeros(self.q, dtype=np.int64)
        cur = vals.copy()
        for _ in range(self.m):
            acc = self.add(acc, cur)
            cur = self.pow(cur, self.p)
        if np.any(acc >= self.p):
            raise ValueError("trace table does not land in the prime field")
        self.trace_table = acc
        # dual coordinates of z with respect to the polynomial basis:
        # dual_digits[z, j] = tr(x^j * z)
        basis = self.p ** np.arange(self.m, dtype=np.int64)
        prods = self.mul(vals[:, None], basis[None, :])
        self.dual_digits = self.trace_table[prods]
        self._beta = None

    # -- elementwise arithmetic (integer arrays) --------------------------

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.is_prime:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.add_table is not None:
            return self.add_table[a, b]
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for pw in self.powers:
            out += (((a // pw) + (b // pw)) % self.p) * pw
        return out

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.is_prime:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.is_prime:
            return (a * b) % self.p
        r = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        e = int(e)
        if e == 0:
            return np.ones_like(a)
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = self.exp[(self.log[a] * (e % (self.q - 1))) % (self.q - 1)]
        return np.where(a == 0, 0, r)

    def trace(self, a):
        return self.trace_table[np.asarray(a, dtype=np.int64)]

    def scalar(self, c: int) -> int:
        """Embed an integer from GF(p) into the field."""
        return int(c) % self.p

    def element(self, value: int) -> FieldElement:
        return FieldElement(int(value), self)

    def gen_power(self, i: int) -> int:
        return int(self.exp[i % (self.q - 1)])

    # -- coordinates ------------------------------------------------------

    def to_digits(self, a) -> np.ndarray:
        """Polynomial-basis coordinates, shape ``a.shape + (m,)``."""
        return self.digits[np.asarray(a, dtype=np.int64)]

    def from_digits(self, d) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) % self.p) @ self.powers

    def to_dual_digits(self, a) -> np.ndarray:
        """Coordinates in the basis dual to the polynomial basis."""
        return self.dual_digits[np.asarray(a, dtype=np.int64)]

    def from_dual_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64) % self.p
        beta = self.dual_of_polynomial_basis()
        out = np.zeros(d.shape[:-1], dtype=np.int64)
        for j in range(self.m):
            out = self.add(out, self.mul(d[..., j], beta[j]))
        return out

    def dual_of_polynomial_basis(self) -> np.ndarray:
        if self._beta is None:
            alpha = [self.element(self.p**i) for i in range(self.m)]
            pair = dual_basis(alpha)
            self._beta = np.array([b.value for b in pair.beta], dtype=np.int64)
        return self._beta

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def to_config(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus), "primitive": self.primitive}

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))


@lru_cache(maxsize=None)
def _cached_field(p: int, m: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    return FieldSpec(p, m, modulus)


def field(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Cached field constructor."""
    return _cached_field(p, m, None if modulus is None else tuple(int(c) for c in modulus))


def field_from_order(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1:
                break
            return field(p, m)
    raise ValueError(f"{q} is not a prime power")


def field_from_config(cfg: dict) -> FieldSpec:
    allowed = {"p", "m", "modulus", "primitive"}
    extra = set(cfg) - allowed
    if extra:
        raise ValueError(f"unknown field keys: {sorted(extra)}")
    F = field(int(cfg["p"]), int(cfg.get("m", 1)), cfg.get("modulus"))
    if "primitive" in cfg and int(cfg["primitive"]) != F.primitive:
        raise ValueError("primitive element in config does not match the field tables")
    return F


# ---------------------------------------------------------------------------
# scalar element wrapper


@dataclass(frozen=True)
class FieldElement:
    """A single field element.  ``coeffs`` gives polynomial-basis digits."""

    value: int
    spec: FieldSpec

    def __post_init__(self):
        if not 0 <= self.value < self.spec.q:
            raise ValueError(f"{self.value} is not an element of {self.spec}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.spec.digits[self.value])

    def _check(self, other) -> FieldElement:
        if isinstance(other, int):
            return FieldElement(other % self.spec.p, self.spec)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise TypeError(f"field mismatch: {self.spec} vs {other.spec}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(int(self.spec.add(self.value, other.value)), self.spec)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(int(self.spec.sub(self.value, other.value)), self.spec)

    def __neg__(self):
        return FieldElement(int(self.spec.neg(self.value)), self.spec)

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(int(self.spec.mul(self.value, other.value)), self.spec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def inverse(self) -> FieldElement:
        return FieldElement(int(self.spec.inv(self.value)), self.spec)

    def __pow__(self, e: int):
        return FieldElement(int(self.spec.pow(self.value, e)), self.spec)

    def trace(self) -> int:
        return int(self.spec.trace(self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.spec}({self.value})"


def _same_spec(a: FieldElement, b: FieldElement) -> FieldSpec:
    if a.spec != b.spec:
        raise TypeError(f"field mismatch: {a.spec} vs {b.spec}")
    return a.spec


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_spec(a, b)
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_spec(a, b)
    return a * b


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def field_pow(a: FieldElement, e: int) -> FieldElement:
    """Power by repeated squaring."""
    result = FieldElement(1, a.spec)
    base = a
    if e < 0:
        base, e = a.inverse(), -e
    while e:
        if e & 1:
            result = result * base
        base = base * base
        e >>= 1
    return result


def trace(a: FieldElement) -> int:
    """Absolute trace tr(a) = sum_i a^(p^i), an element of GF(p)."""
    spec = a.spec
    acc = FieldElement(0, spec)
    cur = a
    for _ in range(spec.m):
        acc = acc + cur
        cur = field_pow(cur, spec.p)
    return acc.value


# ---------------------------------------------------------------------------
# dual bases


@dataclass(frozen=True)
class DualBasisPair:
    alpha: tuple[FieldElement, ...]
    beta: tuple[FieldElement, ...]

    def gram(self) -> np.ndarray:
        """Trace Gram matrix tr(alpha_i beta_j); the identity for a valid pair."""
        spec = self.alpha[0].spec
        a = np.array([x.value for x in self.alpha])
        b = np.array([x.value for x in self.beta])
        return spec.trace(spec.mul(a[:, None], b[None, :]))

    def alpha_coords(self, a) -> np.ndarray:
        """Coordinates c with a = sum_i c_i alpha_i, computed as tr(a beta_i)."""
        spec = self.alpha[0].spec
        b = np.array([x.value for x in self.beta])
        return spec.trace(spec.mul(np.asarray(a)[..., None], b))

    def beta_coords(self, a) -> np.ndarray:
        spec = self.alpha[0].spec
        al = np.array([x.value for x in self.alpha])
        return spec.trace(spec.mul(np.asarray(a)[..., None], al))


def _inverse_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    n = M.shape[0]
    A = np.concatenate([M % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r, c] % p), None)
        if piv is None:
            raise ValueError("basis is linearly dependent over the prime field")
        A[[c, piv]] = A[[piv, c]]
        A[c] = A[c] * pow(int(A[c, c]), p - 2, p) % p
        for r in range(n):
            if r != c and A[r, c]:
                A[r] = (A[r] - A[r, c] * A[c]) % p
    return A[:, n:]


def dual_basis(alpha: Sequence[FieldElement]) -> DualBasisPair:
    """Return the basis beta with tr(alpha_i beta_j) equal to the Kronecker delta."""
    if not alpha:
        raise ValueError("empty basis")
    spec = alpha[0].spec
    if len(alpha) != spec.m:
        raise ValueError(f"a basis of {spec} needs {spec.m} elements")
    for a in alpha:
        _same_spec(a, alpha[0])
    vals = np.array([a.value for a in alpha], dtype=np.int64)
    gram = spec.trace(spec.mul(vals[:, None], vals[None, :]))
    # trace form is nondegenerate, so gram is invertible iff alpha is a basis
    C = _inverse_mod_p(gram, spec.p)
    beta = []
    for j in range(spec.m):
        acc = 0
        for k in range(spec.m):
            acc = int(spec.add(acc, spec.mul(int(C[j, k]), vals[k])))
        beta.append(FieldElement(acc, spec))
    pair = DualBasisPair(tuple(alpha), tuple(beta))
    if not np.array_equal(pair.gram(), np.eye(spec.m, dtype=np.int64)):
        raise AssertionError("dual basis verification failed")
    return pair
