"""Prime enumeration and multiplicative arithmetic functions on F_q[T].

Irreducibility is decided by the deterministic distinct-degree (Rabin)
test.  Factorization is trial division against cached prime lists, which
is plenty at the degrees this package targets.  ``monic_primes_up_to``
switches to a sieve of Eratosthenes over byte-encoded polynomials when a
whole range of degrees is needed, since the per-candidate Rabin scan gets
slow past degree ~8.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .fields import Field, _factor_int
from .poly import Poly, monic_polys_of_degree, poly_gcd, powmod


class NotMonicError(ValueError):
    pass


def _require_monic(f: Poly):
    if not f.is_monic:
        raise NotMonicError(f"{f!r} is not monic and nonzero")


# ---------------------------------------------------------------------------
# irreducibility and prime enumeration

def is_irreducible(f: Poly) -> bool:
    """Deterministic irreducibility test for deg f >= 1."""
    n = f.degree
    if f.is_zero or n == 0:
        raise ValueError("irreducibility is undefined for constants")
    if n == 1:
        return True
    q = f.field.q
    x = Poly.x(f.field)
    h = x
    for _ in range(n):
        h = powmod(h, q, f)
    if h != x % f:
        return False
    for ell in _factor_int(n):
        h = x
        for _ in range(n // ell):
            h = powmod(h, q, f)
        if poly_gcd(f, h - x).degree >= 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def prime_count(q: int, n: int) -> int:
    """Number of monic primes of degree n, by the prime polynomial theorem."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    total = sum(mobius_int(d) * q ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return total // n


def mobius_int(n: int) -> int:
    fac = _factor_int(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


@functools.lru_cache(maxsize=None)
def primes_of_degree(f: Field, n: int) -> tuple[Poly, ...]:
    """All monic primes of degree n, in lexicographic encoding order."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    if n >= 7:
        # scanning q^n candidates with Rabin is slow; sieve the whole range
        return tuple(monic_primes_up_to(f, n)[n])
    return tuple(p for p in monic_polys_of_degree(f, n) if is_irreducible(p))


# -- sieve over byte-encoded polynomials -------------------------------------
#
# A monic polynomial is packed into an int whose little-endian bytes are the
# coefficients.  Products of packed polynomials are plain integer products as
# long as no convolution coefficient reaches 256, and coefficient reduction
# mod q is a bytes.translate call; both run at C speed.

def _pack(p: Poly) -> int:
    return int.from_bytes(bytes(p.coeffs), "little") if p.coeffs else 0


def _byte_mul_table(q: int) -> bytes:
    return bytes(b % q for b in range(256))


@functools.lru_cache(maxsize=None)
def monic_primes_up_to(f: Field, n: int) -> dict[int, tuple[Poly, ...]]:
    """Monic primes grouped by degree for all degrees <= n (sieved)."""
    q = f.q
    if f.e != 1 or (q - 1) * (q - 1) * (n + 1) >= 256:
        # packed products need plain mod-p coefficient bytes that cannot
        # overflow; outside that envelope fall back to the Rabin scan
        return {d: tuple(p for p in monic_polys_of_degree(f, d) if is_irreducible(p))
                for d in range(1, n + 1)}
    table = _byte_mul_table(q)

    def canon(v: int, deg: int) -> int:
        return int.from_bytes(v.to_bytes(deg + 1, "little").translate(table), "little")

    def monic_packed(d: int):
        if d == 0:
            yield 1
            return
        top = 1 << (8 * d)
        for tail in itertools.product(range(q), repeat=d):
            v = top
            for i, c in enumerate(tail):
                v |= c << (8 * i)
            yield v

    composite: set[int] = set()
    primes: dict[int, list[int]] = {}
    for d in range(1, n + 1):
        found = [v for v in monic_packed(d) if v not in composite]
        primes[d] = found
        for pv in found:
            for e in range(1, n - d + 1):
                for mv in monic_packed(e):
                    composite.add(canon(pv * mv, d + e))

    def unpack(v: int, d: int) -> Poly:
        return Poly(f, tuple(v.to_bytes(d + 1, "little")))

    return {d: tuple(unpack(v, d) for v in vs) for d, vs in primes.items()}


# ---------------------------------------------------------------------------
# factorization

@dataclass(frozen=True)
class Factorization:
    """unit * prod(prime^exponent), primes monic, distinct, ascending."""

    unit: int
    factors: tuple[tuple[Poly, int], ...]

    def product(self, f: Field) -> Poly:
        out = Poly.constant(f, self.unit)
        for p, e in self.factors:
            out = out * p**e
        return out

    @property
    def omega(self) -> int:
        return len(self.factors)

    def radical(self, f: Field) -> Poly:
        out = Poly.one(f)
        for p, _ in self.factors:
            out = out * p
        return out


@functools.lru_cache(maxsize=None)
def factorize(f: Poly) -> Factorization:
    """Trial-division factorization of a nonzero polynomial."""
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    unit = f.leading()
    rem = f.monic()
    factors = []
    d = 1
    while rem.degree >= 1:
        if 2 * d > rem.degree:
            # no divisor of degree <= deg/2 remains, so rem is prime
            factors.append((rem, 1))
            break
        for p in primes_of_degree(f.field, d):
            e = 0
            while True:
                q_, r = divmod(rem, p)
                if not r.is_zero:
                    break
                rem = q_
                e += 1
            if e:
                factors.append((p, e))
        d += 1
    factors.sort(key=lambda pe: (pe[0].degree, pe[0].coeffs))
    return Factorization(unit, tuple(factors))


def divisors(f: Poly) -> list[Poly]:
    """All monic divisors of a monic polynomial."""
    _require_monic(f)
    fac = factorize(f)
    out = [Poly.one(f.field)]
    for p, e in fac.factors:
        powers = [p**i for i in range(e + 1)]
        out = [d * pw for d in out for pw in powers]
    return out


# ---------------------------------------------------------------------------
# multiplicative functions (monic nonzero inputs)

def mobius(f: Poly) -> int:
    _require_monic(f)
    fac = factorize(f)
    if any(e > 1 for _, e in fac.factors):
        return 0
    return -1 if fac.omega % 2 else 1


def euler_phi(f: Poly) -> int:
    """Order of the unit group of F_q[T]/f."""
    _require_monic(f)
    out = 1
    for p, e in factorize(f).factors:
        np = p.norm
        out *= np ** (e - 1) * (np - 1)
    return out


def von_mangoldt_deg(f: Poly) -> int:
    """Lambda(f) in units of log q: deg P on prime powers P^j, else 0."""
    _require_monic(f)
    if f.is_one:
        return 0
    fac = factorize(f)
    if fac.omega != 1:
        return 0
    return fac.factors[0][0].degree


def omega(f: Poly) -> int:
    _require_monic(f)
    return factorize(f).omega


def radical(f: Poly) -> Poly:
    _require_monic(f)
    return factorize(f).radical(f.field)


def prime_exponent(f: Poly, p: Poly) -> int:
    """Largest e with p^e | f."""
    _require_monic(f)
    e = 0
    while True:
        q_, r = divmod(f, p)
        if not r.is_zero:
            return e
        f = q_
        e += 1


def d_k(f: Poly, k: int) -> int:
    """k-fold divisor function: multiplicative, C(m+k-1, k-1) on P^m."""
    _require_monic(f)
    if k < 0:
        raise ValueError("k must be >= 0")
    out = 1
    for _, m in factorize(f).factors:
        out *= math.comb(m + k - 1, k - 1)
    return out


def is_coprime(a: Poly, b: Poly) -> bool:
    return poly_gcd(a, b).is_one


# ---------------------------------------------------------------------------
# counting helpers used by harmonic sums and predictions

def coprime_count(modulus: Poly, n: int) -> int:
    """Number of monic A of degree n with gcd(A, modulus) = 1."""
    _require_monic(modulus)
    q = modulus.field.q
    total = 0
    for d in squarefree_divisors(modulus):
        dd = d.degree if not d.is_one else 0
        if dd <= n:
            total += mobius(d) * q ** (n - dd)
    return total


def squarefree_divisors(f: Poly) -> list[Poly]:
    _require_monic(f)
    fac = factorize(f)
    out = [Poly.one(f.field)]
    for p, _ in fac.factors:
        out = out + [d * p for d in out]
    return out


def zeta_a(s: complex, q: int) -> complex:
    """zeta of the affine line: 1 / (1 - q^(1-s)); poles at s = 1 + 2*pi*i*m/log q."""
    w = 1 - q ** (1 - s)
    if abs(w) < 1e-13:
        raise ZeroDivisionError("evaluation at a pole of zeta_A")
    return 1 / w


def local_dk_sq_sum(k: int, x: Fraction) -> Fraction:
    """Exact sum over m >= 0 of d_k(P^m)^2 * x^m with x = 1/|P|.

    d_k(P^m)^2 = C(m+k-1, k-1)^2 is a degree-2(k-1) polynomial in m, so the
    series is a rational function of x; it is assembled exactly through the
    binomial-basis identity sum_m C(m,j) x^m = x^j / (1-x)^(j+1).
    """
    if k == 0:
        return Fraction(1)
    deg = 2 * (k - 1)
    vals = [Fraction(math.comb(m + k - 1, k - 1) ** 2) for m in range(deg + 1)]
    # forward differences give the coefficients in the C(m, j) basis
    diffs = list(vals)
    coeffs = []
    for _ in range(deg + 1):
        coeffs.append(diffs[0])
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
    one_minus = 1 - x
    total = Fraction(0)
    for j, a in enumerate(coeffs):
        total += a * x**j / one_minus ** (j + 1)
    return total
