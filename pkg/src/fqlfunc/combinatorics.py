"""Exact combinatorial identities on monic polynomials.

Three pieces used by the fourth-moment bookkeeping, each testable in exact
arithmetic: the nine-factor rewriting of a constrained triple product
(a bijection recovered through closed gcd formulas), the 2^omega count of
ordered coprime splittings with avoidance conditions, and the gamma weight
whose factorization sum telescopes to a per-prime closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import divisors, factorize, is_coprime, omega
from .poly import Poly, poly_gcd


@dataclass(frozen=True)
class TripleDecomposition:
    """A_i = G_i V_{i,j} V_{i,k}; B_i = G_i V_{j,i} V_{k,i}."""

    g: tuple[Poly, Poly, Poly]
    v: dict[tuple[int, int], Poly]  # keys (i, j), i != j, 1-based

    def check_coprimality(self) -> bool:
        for (i1, j1), p1 in self.v.items():
            for (i2, j2), p2 in self.v.items():
                if i1 != i2 and j1 != j2:
                    if not is_coprime(p1, p2):
                        return False
        return True


def decompose_triple_product(a: tuple[Poly, Poly, Poly],
                             b: tuple[Poly, Poly, Poly]) -> TripleDecomposition:
    """Split monic triples with A1 A2 A3 = B1 B2 B3 into the nine gcd factors."""
    prod_a = a[0] * a[1] * a[2]
    prod_b = b[0] * b[1] * b[2]
    if prod_a != prod_b:
        raise ValueError("triple products do not match")
    g = tuple(poly_gcd(ai, bi) for ai, bi in zip(a, b))
    hat_a = tuple(ai // gi for ai, gi in zip(a, g))
    hat_b = tuple(bi // gi for bi, gi in zip(b, g))
    v: dict[tuple[int, int], Poly] = {}
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            k = 3 - i - j
            num = hat_b[i] * hat_b[j]
            quot, rem = divmod(num, hat_a[k])
            if not rem.is_zero:
                raise ArithmeticError("hat product not divisible; inputs invalid")
            v[(i + 1, j + 1)] = poly_gcd(hat_b[j], quot)
    return TripleDecomposition(g, v)


def compose_triple(dec: TripleDecomposition
                   ) -> tuple[tuple[Poly, Poly, Poly], tuple[Poly, Poly, Poly]]:
    g, v = dec.g, dec.v
    a = tuple(g[i - 1] * v[(i, j)] * v[(i, k)]
              for i, j, k in ((1, 2, 3), (2, 1, 3), (3, 1, 2)))
    b = tuple(g[i - 1] * v[(j, i)] * v[(k, i)]
              for i, j, k in ((1, 2, 3), (2, 1, 3), (3, 1, 2)))
    return a, b


# ---------------------------------------------------------------------------
# counting ordered coprime splittings

def count_coprime_splittings(v: Poly, v13: Poly, v23: Poly,
                             v31: Poly, v32: Poly) -> int:
    """#{(V12, V21): V12 V21 = V, (V12, V23 V31) = 1, (V21, V13 V32) = 1,
    (V12, V21) = 1}, by the closed form 2^(omega(V) - omega((V, V13 V23 V31 V32)))."""
    _check_splitting_preconditions(v, v13, v23, v31, v32)
    blocked = poly_gcd(v, v13 * v23 * v31 * v32)
    return 2 ** (omega(v) - omega(blocked))


def brute_count_coprime_splittings(v: Poly, v13: Poly, v23: Poly,
                                   v31: Poly, v32: Poly) -> int:
    """Direct enumeration over ordered divisor pairs of V."""
    _check_splitting_preconditions(v, v13, v23, v31, v32)
    count = 0
    for d in divisors(v):
        e = v // d
        if (is_coprime(d, e) and is_coprime(d, v23 * v31)
                and is_coprime(e, v13 * v32)):
            count += 1
    return count


def _check_splitting_preconditions(v, v13, v23, v31, v32):
    if not (is_coprime(v13, v31 * v32) and is_coprime(v23, v31 * v32)):
        raise ValueError("side polynomials violate the coprimality hypotheses")
    if not is_coprime(v, poly_gcd(v13 * v31, v23 * v32)):
        raise ValueError("V shares a prime with (V13 V31, V23 V32)")


# ---------------------------------------------------------------------------
# the gamma weight and its factorization-sum identity

def gamma_weight(a: Poly) -> Fraction:
    """prod over P | A of (1 + e_P(A) (1 - 1/|P|)/(1 + 1/|P|)), exact."""
    if not a.is_monic:
        raise ValueError("gamma weight needs a monic input")
    out = Fraction(1)
    for p, e in factorize(a).factors:
        x = Fraction(1, p.norm)
        out *= 1 + e * (1 - x) / (1 + x)
    return out


def gamma_identity_sides(b3: Poly) -> tuple[Fraction, Fraction]:
    """Both sides of the factorization-sum identity for the gamma weight.

    Left: sum over ordered splittings V13 V23 = B3 of
        prod_{P | B3} (1-1/|P|)/(1+1/|P|)
        * prod_{P | B3, P not | (V13, V23)} 1/(1-1/|P|).
    Right: gamma(B3).  Equality is exact in rationals.
    """
    if not b3.is_monic:
        raise ValueError("needs a monic input")
    lhs = Fraction(0)
    base = Fraction(1)
    prime_xs = {}
    for p, _ in factorize(b3).factors:
        x = Fraction(1, p.norm)
        prime_xs[p] = x
        base *= (1 - x) / (1 + x)
    for v13 in divisors(b3):
        v23 = b3 // v13
        shared = poly_gcd(v13, v23)
        term = base
        for p, x in prime_xs.items():
            if not (shared % p).is_zero:
                term /= 1 - x
        lhs += term
    return lhs, gamma_weight(b3)


def valid_splitting_instances(field_obj, rng, count: int,
                              max_prime_deg: int = 2, max_parts: int = 3):
    """Random (V, V13, V23, V31, V32) tuples satisfying the hypotheses.

    Primes are drawn with replacement and assigned to slots so that the
    coprimality preconditions hold by construction; used to sample inputs
    for the splitting-count cross-check.
    """
    from .arith import primes_of_degree
    pool = [p for d in range(1, max_prime_deg + 1)
            for p in primes_of_degree(field_obj, d)]
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        picks = {name: Poly.one(field_obj)
                 for name in ("v", "v13", "v23", "v31", "v32")}
        n_parts = int(rng.integers(0, max_parts + 1))
        names = ("v", "v13", "v23", "v31", "v32")
        for _ in range(n_parts):
            p = pool[int(rng.integers(0, len(pool)))]
            slot = names[int(rng.integers(0, len(names)))]
            picks[slot] = picks[slot] * p
        try:
            _check_splitting_preconditions(picks["v"], picks["v13"],
                                           picks["v23"], picks["v31"],
                                           picks["v32"])
        except ValueError:
            continue
        out.append((picks["v"], picks["v13"], picks["v23"],
                    picks["v31"], picks["v32"]))
    return out
