"""Finite fields F_q with q = p^e, elements encoded as integers 0..q-1.

Prime fields use plain residue arithmetic.  Extension fields encode an
element sum(d_i * alpha^i) as the integer sum(d_i * p^i), where alpha is a
root of a fixed irreducible modulus (the lexicographically least monic
irreducible of degree e over F_p, so the encoding is reproducible across
runs).  Multiplication and inversion go through discrete log/exp tables,
addition is carry-free base-p digit addition, so everything stays O(1) per
operation after construction.  Intended range: q <= 2**12.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _factor_int(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FieldSpec:
    """Order data for F_q: characteristic p, extension degree e, q = p^e."""

    p: int
    e: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.e < 1:
            raise ValueError("extension degree must be >= 1")

    @property
    def q(self) -> int:
        return self.p**self.e

    @staticmethod
    def from_order(q: int) -> "FieldSpec":
        f = _factor_int(q)
        if len(f) != 1:
            raise ValueError(f"{q} is not a prime power")
        (p, e), = f.items()
        return FieldSpec(p, e)


# ---------------------------------------------------------------------------
# bootstrap polynomial arithmetic over F_p (lists of ints), used only to
# construct extension-field tables; the public Poly type lives in poly.py


def _fp_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        k = len(a) - 1 - dm
        c = a[-1] * inv_lead % p
        for j, mj in enumerate(m):
            a[k + j] = (a[k + j] - c * mj) % p
        _fp_trim(a)
    return a


def _fp_powmod(a: list[int], n: int, m: list[int], p: int) -> list[int]:
    out = [1]
    a = _fp_mod(a, m, p)
    while n:
        if n & 1:
            out = _fp_mod(_fp_mul(out, a, p), m, p)
        a = _fp_mod(_fp_mul(a, a, p), m, p)
        n >>= 1
    return out


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _fp_trim([(x - y) % p for x, y in zip(a, b)])


def _fp_is_irreducible(f: list[int], p: int) -> bool:
    # Rabin test: T^(p^n) == T mod f, and gcd(T^(p^(n/ell)) - T, f) = 1
    n = len(f) - 1
    x = [0, 1]
    h = x
    for _ in range(n):
        h = _fp_powmod(h, p, f, p)
    if _fp_sub(h, x, p):
        return False
    for ell in _factor_int(n):
        h = x
        for _ in range(n // ell):
            h = _fp_powmod(h, p, f, p)
        g = _fp_gcd(f, _fp_sub(h, x, p), p)
        if len(g) - 1 >= 1:
            return False
    return True


def _least_irreducible(p: int, e: int) -> list[int]:
    # scan monic T^e + c in order of the integer encoding of the tail c
    for tail in range(p**e):
        c, digits = tail, []
        for _ in range(e):
            digits.append(c % p)
            c //= p
        f = digits + [1]
        if _fp_is_irreducible(f, p):
            return f
    raise RuntimeError("no irreducible modulus found")  # unreachable


class Field:
    """Concrete arithmetic for F_q on integer-encoded elements."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.e = spec.e
        self.q = spec.q
        if self.q > 2**12:
            raise ValueError("field order above 2**12 not supported")
        if self.e == 1:
            self.modulus = None
            self._exp = self._log = None
            self.generator = self._prime_field_generator()
        else:
            self.modulus = _least_irreducible(self.p, self.e)
            self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _prime_field_generator(self) -> int:
        n = self.p - 1
        fac = _factor_int(n)
        for g in range(2, self.p):
            if all(pow(g, n // ell, self.p) != 1 for ell in fac):
                return g
        return 1  # p == 2

    def _encode(self, digits: list[int]) -> int:
        v = 0
        for d in reversed(digits):
            v = v * self.p + d
        return v

    def _decode(self, v: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(v % self.p)
            v //= self.p
        return out

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        mod = self.modulus

        def raw_mul(a: int, b: int) -> int:
            da, db = self._decode(a), self._decode(b)
            prod = _fp_mod(_fp_mul(_fp_trim(da), _fp_trim(db), p), mod, p)
            return self._encode(prod + [0] * (e - len(prod)))

        n = q - 1
        fac = _factor_int(n)

        def order_is_full(g: int) -> bool:
            for ell in fac:
                x, k = 1, n // ell
                b = g
                while k:
                    if k & 1:
                        x = raw_mul(x, b)
                    b = raw_mul(b, b)
                    k >>= 1
                if x == 1:
                    return False
            return True

        gen = next(g for g in range(2, q) if order_is_full(g))
        self.generator = gen
        exp = [1] * n
        for i in range(1, n):
            exp[i] = raw_mul(exp[i - 1], gen)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp, self._log = exp, log
        # precomputed digit vectors make carry-free addition cheap
        self._digits = [self._decode(v) for v in range(q)]

    # -- arithmetic -----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        da, db = self._digits[a], self._digits[b]
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self._encode([(-x) % self.p for x in self._digits[a]])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        out, b = 1, a
        while n:
            if n & 1:
                out = self.mul(out, b)
            b = self.mul(b, b)
            n >>= 1
        return out

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    # -- identity plumbing ----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"Field(q={self.q})"


@functools.lru_cache(maxsize=None)
def field(q: int) -> Field:
    """Shared Field instance for the given prime-power order."""
    return Field(FieldSpec.from_order(q))
