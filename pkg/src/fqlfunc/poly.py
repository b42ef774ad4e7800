"""Dense polynomials over F_q[T].

Coefficients are stored lowest-degree first as a tuple of field-element
encodings with no trailing zeros, so polynomials hash and compare by value.
The degree of the zero polynomial is NEG_INF rather than -1, which keeps
degree comparisons honest.  The canonical text form is ``q=3:[1,2,1]``
(field order, then coefficients lowest first).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from .fields import Field, field

NEG_INF = float("-inf")


class FieldMismatchError(ValueError):
    pass


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, f: Field, coeffs: Iterable[int], *, _trusted: bool = False):
        if _trusted:
            cs = coeffs
        else:
            cs = tuple(coeffs)
            while cs and cs[-1] == 0:
                cs = cs[:-1]
            if any(not (0 <= c < f.q) for c in cs):
                raise ValueError("coefficient out of field range")
        object.__setattr__(self, "field", f)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def zero(f: Field) -> "Poly":
        return Poly(f, (), _trusted=True)

    @staticmethod
    def one(f: Field) -> "Poly":
        return Poly(f, (1,), _trusted=True)

    @staticmethod
    def x(f: Field) -> "Poly":
        return Poly(f, (0, 1), _trusted=True)

    @staticmethod
    def constant(f: Field, c: int) -> "Poly":
        return Poly(f, (c,) if c else ())

    # -- basic queries ---------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return self.coeffs == (1,)

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def norm(self) -> int:
        """|A| = q^(deg A), with |0| = 0."""
        return 0 if self.is_zero else self.field.q ** (len(self.coeffs) - 1)

    def leading(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    # -- ring operations ---------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.field is not other.field and self.field != other.field:
            raise FieldMismatchError("operands over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return Poly(f, out)

    def __neg__(self) -> "Poly":
        f = self.field
        return Poly(f, tuple(f.neg(c) for c in self.coeffs), _trusted=True)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly(self.field, _mul(self.coeffs, other.coeffs, self.field), _trusted=True)

    def scale(self, c: int) -> "Poly":
        f = self.field
        if c == 0:
            return Poly.zero(f)
        return Poly(f, tuple(f.mul(c, a) for a in self.coeffs), _trusted=True)

    def shift(self, n: int) -> "Poly":
        """Multiply by T^n."""
        if self.is_zero:
            return self
        return Poly(self.field, (0,) * n + self.coeffs, _trusted=True)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q, r = _divmod(self.coeffs, other.coeffs, self.field)
        return Poly(self.field, q, _trusted=True), Poly(self.field, r, _trusted=True)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        return Poly(self.field, _mod(self.coeffs, other.coeffs, self.field), _trusted=True)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out, b = Poly.one(self.field), self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        lead = self.coeffs[-1]
        return self if lead == 1 else self.scale(self.field.inv(lead))

    def __call__(self, x: int) -> int:
        """Evaluate at a field element (Horner)."""
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    # -- dunder plumbing ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.field.q, self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({self.to_text()})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("T" if c == 1 else f"{c}*T")
            else:
                terms.append(f"T^{i}" if c == 1 else f"{c}*T^{i}")
        return " + ".join(reversed(terms))

    # -- canonical text form ----------------------------------------------------

    def to_text(self) -> str:
        return f"q={self.field.q}:[{','.join(str(c) for c in self.coeffs)}]"

    @staticmethod
    def from_text(text: str) -> "Poly":
        text = text.strip()
        if not text.startswith("q="):
            raise ValueError(f"bad polynomial literal {text!r}")
        head, _, body = text.partition(":")
        q = int(head[2:])
        body = body.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"bad polynomial literal {text!r}")
        inner = body[1:-1].strip()
        coeffs = [int(t) for t in inner.split(",")] if inner else []
        return Poly(field(q), coeffs)


# ---------------------------------------------------------------------------
# tuple-level kernels (prime fields get an inline mod-p fast path)

_KARATSUBA_CUTOFF = 32


def _mul(a: tuple, b: tuple, f: Field) -> tuple:
    if not a or not b:
        return ()
    if min(len(a), len(b)) >= _KARATSUBA_CUTOFF:
        return _karatsuba(a, b, f)
    if f.e == 1:
        p = f.p
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return tuple(c % p for c in out)
    out = [0] * (len(a) + len(b) - 1)
    add, mul = f.add, f.mul
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = add(out[i + j], mul(ai, bj))
    return tuple(out)


def _karatsuba(a: tuple, b: tuple, f: Field) -> tuple:
    n = max(len(a), len(b))
    h = n // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _mul(a0, b0, f)
    z2 = _mul(a1, b1, f)
    s1 = _add_t(a0, a1, f)
    s2 = _add_t(b0, b1, f)
    z1 = _sub_t(_sub_t(_mul(s1, s2, f), z0, f), z2, f)
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] = f.add(out[i], c)
    for i, c in enumerate(z1):
        out[i + h] = f.add(out[i + h], c)
    for i, c in enumerate(z2):
        out[i + 2 * h] = f.add(out[i + 2 * h], c)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _add_t(a: tuple, b: tuple, f: Field) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = f.add(out[i], c)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _sub_t(a: tuple, b: tuple, f: Field) -> tuple:
    return _add_t(a, tuple(f.neg(c) for c in b), f)


def _divmod(a: tuple, b: tuple, f: Field) -> tuple[tuple, tuple]:
    db = len(b) - 1
    inv_lead = f.inv(b[-1])
    rem = list(a)
    quot = [0] * max(0, len(a) - db)
    while len(rem) - 1 >= db and rem:
        c = f.mul(rem[-1], inv_lead)
        k = len(rem) - 1 - db
        quot[k] = c
        for j, bj in enumerate(b):
            if bj:
                rem[k + j] = f.sub(rem[k + j], f.mul(c, bj))
        while rem and rem[-1] == 0:
            rem.pop()
    while quot and quot[-1] == 0:
        quot.pop()
    return tuple(quot), tuple(rem)


def _mod(a: tuple, b: tuple, f: Field) -> tuple:
    if len(a) < len(b):
        return a
    return _divmod(a, b, f)[1]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    a._check(b)
    ca, cb = a.coeffs, b.coeffs
    f = a.field
    while cb:
        ca, cb = cb, _mod(ca, cb, f)
    g = Poly(f, ca, _trusted=True)
    return g.monic()


def poly_extended_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with g = s*a + t*b, g monic."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(f), Poly.zero(f)
    t0, t1 = Poly.zero(f), Poly.one(f)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    lead_inv = f.inv(r0.leading())
    return r0.scale(lead_inv), s0.scale(lead_inv), t0.scale(lead_inv)


def inverse_mod(a: Poly, modulus: Poly) -> Poly:
    g, s, _ = poly_extended_gcd(a, modulus)
    if not g.is_one:
        raise ZeroDivisionError(f"{a} not invertible mod {modulus}")
    return s % modulus


def powmod(a: Poly, n: int, modulus: Poly) -> Poly:
    f = a.field
    out = Poly.one(f)
    b = a % modulus
    while n:
        if n & 1:
            out = (out * b) % modulus
        b = (b * b) % modulus
        n >>= 1
    return out


# ---------------------------------------------------------------------------
# enumeration

def polys_of_degree_below(f: Field, n: int) -> Iterator[Poly]:
    """All polynomials of degree < n (including zero)."""
    for coeffs in itertools.product(f.elements(), repeat=n):
        yield Poly(f, coeffs)


def monic_polys_of_degree(f: Field, n: int) -> Iterator[Poly]:
    if n == 0:
        yield Poly.one(f)
        return
    for tail in itertools.product(f.elements(), repeat=n):
        yield Poly(f, tail + (1,), _trusted=True)


def monic_polys_up_to(f: Field, n: int) -> Iterator[Poly]:
    for d in range(n + 1):
        yield from monic_polys_of_degree(f, d)
