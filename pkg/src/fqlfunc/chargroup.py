"""Dirichlet characters mod R on F_q[T].

The unit group (F_q[T]/R)* is decomposed through the CRT into local groups
mod P^e, and each local group gets an explicit basis (independent
generators of prime-power order) found by a greedy max-order search inside
each Sylow subgroup.  A full discrete-log table (residue -> exponent
vector) is enumerated once per modulus; everything downstream (character
values, coefficient transforms, orthogonality) is a table lookup.

Character values are exact rotation numbers k/n meaning exp(2*pi*i*k/n),
kept as Fractions until a complex value is actually needed.
"""

from __future__ import annotations

import cmath
import functools
import itertools
import json
import math
import os
from fractions import Fraction
from typing import Iterator, Optional

from .arith import (Factorization, euler_phi, factorize, is_coprime, mobius,
                    squarefree_divisors, _factor_int)
from .fields import Field
from .poly import Poly, inverse_mod, polys_of_degree_below

TWO_PI = 2 * math.pi


def _local_basis(modulus: Poly, units: list[Poly]) -> tuple[list[Poly], list[int]]:
    """Independent generators of prime-power order for (F_q[T]/P^e)*.

    Greedy per Sylow subgroup: repeatedly take an element whose image in
    the quotient by the current span has maximal order, then divide out its
    span component so the generator's true order equals its image order
    (the span stays a pure subgroup, so the correction always exists).
    Projection into the Sylow subgroup is lazy and the scan stops early
    once the image order hits its cap, which makes the cyclic case (prime
    moduli) a constant number of exponentiations.
    """
    from .poly import inverse_mod, powmod
    m = len(units)
    gens: list[Poly] = []
    orders: list[int] = []
    one = Poly.one(modulus.field)
    for ell, a in sorted(_factor_int(m).items()):
        syl_size = ell**a
        cof = m // syl_size
        basis: list[Poly] = []
        basis_orders: list[int] = []
        span_dlog: dict[Poly, tuple[int, ...]] = {one: ()}

        def image_order(x: Poly) -> int:
            y, c = x, 1
            while y not in span_dlog:
                y = powmod(y, ell, modulus)
                c *= ell
            return c

        def adjust(x: Poly, c: int) -> Optional[Poly]:
            # solve x' = x / h with h^c = x^c in the span; None if unsolvable
            w = powmod(x, c, modulus)
            exps = span_dlog[w]
            h = one
            for g_i, n_i, s_i in zip(basis, basis_orders, exps):
                if n_i <= c:
                    if s_i != 0:
                        return None
                    continue
                if s_i % c:
                    return None
                h = h * powmod(g_i, s_i // c, modulus) % modulus
            x_adj = x * inverse_mod(h, modulus) % modulus
            if not powmod(x_adj, c, modulus).is_one:
                return None
            return x_adj

        while len(span_dlog) < syl_size:
            cap = syl_size // len(span_dlog)
            chosen = None
            candidates: list[tuple[int, Poly]] = []
            for u in units:
                x = powmod(u, cof, modulus)
                if x in span_dlog:
                    continue
                c = image_order(x)
                if c == cap:
                    adj = adjust(x, c)
                    if adj is not None:
                        chosen = (adj, c)
                        break
                candidates.append((c, x))
            if chosen is None:
                for c, x in sorted(candidates, key=lambda t: -t[0]):
                    adj = adjust(x, c)
                    if adj is not None:
                        chosen = (adj, c)
                        break
            if chosen is None:
                raise RuntimeError("abelian basis extension failed")
            gen, order = chosen
            new_dlog: dict[Poly, tuple[int, ...]] = {}
            power = one
            for j in range(order):
                for s, vec in span_dlog.items():
                    new_dlog[s * power % modulus] = vec + (j,)
                power = power * gen % modulus
            if len(new_dlog) != len(span_dlog) * order:
                raise RuntimeError("span enumeration collided")
            span_dlog = new_dlog
            basis.append(gen)
            basis_orders.append(order)
        gens.extend(basis)
        orders.extend(basis_orders)
    return gens, orders


class UnitGroup:
    """(F_q[T]/R)* with explicit generators, orders, and a dlog table."""

    def __init__(self, modulus: Poly, verify: Optional[bool] = None):
        if not modulus.is_monic or modulus.degree < 1:
            raise ValueError("modulus must be monic of degree >= 1")
        self.field: Field = modulus.field
        self.modulus = modulus
        self.factorization: Factorization = factorize(modulus)
        self.phi = euler_phi(modulus)
        self._build()
        if verify is None:
            verify = self.phi <= 10_000
        if verify:
            self._verify()

    def _build(self):
        f = self.field
        R = self.modulus
        gens: list[Poly] = []
        orders: list[int] = []
        for p, e in self.factorization.factors:
            local_mod = p**e
            # units mod P^e = residues minus multiples of P
            multiples = {(p * mpoly).coeffs for mpoly in
                         polys_of_degree_below(f, local_mod.degree - p.degree)}
            units = [u for u in polys_of_degree_below(f, local_mod.degree)
                     if u.coeffs not in multiples]
            lgens, lords = _local_basis(local_mod, units)
            # lift each local generator to a global residue: itself mod P^e,
            # 1 mod the complementary factor
            other = R // local_mod
            if other.is_one:
                gens.extend(lgens)
            else:
                for lg in lgens:
                    gens.append(_crt_pair(lg, local_mod, Poly.one(f), other))
            orders.extend(lords)
        self.generators = tuple(g % R for g in gens)
        self.orders = tuple(orders)
        assert math.prod(self.orders, start=1) == self.phi
        # exact orders are what make the exponent map a homomorphism
        from .poly import powmod
        for g, n in zip(self.generators, self.orders):
            if not powmod(g, n, R).is_one:
                raise RuntimeError(f"generator order {n} not exact for {g}")
            for ell in _factor_int(n):
                if powmod(g, n // ell, R).is_one:
                    raise RuntimeError(f"generator order {n} not exact for {g}")
        # enumerate all products of generator powers -> exponent vectors
        dlog: dict[tuple, tuple[int, ...]] = {}
        exps = [0] * len(self.generators)
        cur = Poly.one(self.field)
        if not self.generators:
            dlog[cur.coeffs] = ()
        else:
            gen_pows = []  # gen_pows[i][j] = g_i^j mod R
            for g, n in zip(self.generators, self.orders):
                pows = [Poly.one(self.field)]
                for _ in range(n - 1):
                    pows.append(pows[-1] * g % R)
                gen_pows.append(pows)
            for combo in itertools.product(*(range(n) for n in self.orders)):
                val = gen_pows[0][combo[0]]
                for i in range(1, len(combo)):
                    val = val * gen_pows[i][combo[i]] % R
                dlog[val.coeffs] = combo
        self._dlog = dlog
        self.lcm_order = math.lcm(*self.orders) if self.orders else 1

    def _verify(self):
        # round trip: every unit appears exactly once in the dlog table
        count = 0
        for u in polys_of_degree_below(self.field, self.modulus.degree):
            if u.is_zero or not is_coprime(u, self.modulus):
                continue
            count += 1
            if u.coeffs not in self._dlog:
                raise RuntimeError(f"unit {u} missing from dlog table")
        if count != self.phi or len(self._dlog) != self.phi:
            raise RuntimeError("unit group enumeration does not match phi")
        # the exponent map must be a homomorphism; spot-check products
        items = sorted(self._dlog.items())
        step = max(1, len(items) // 8)
        sample = [Poly(self.field, cs) for cs, _ in items[::step]][:8]
        for u in sample:
            for v in sample:
                uv = u * v % self.modulus
                want = tuple((a + b) % n for a, b, n in
                             zip(self._dlog[u.coeffs], self._dlog[v.coeffs],
                                 self.orders))
                if self._dlog[uv.coeffs] != want:
                    raise RuntimeError("exponent map is not a homomorphism")

    # -- queries -----------------------------------------------------------------

    def dlog(self, a: Poly) -> Optional[tuple[int, ...]]:
        """Exponent vector of a mod R, or None when gcd(a, R) != 1."""
        r = a % self.modulus
        return self._dlog.get(r.coeffs)

    def units(self) -> Iterator[Poly]:
        f = self.field
        for coeffs in self._dlog:
            yield Poly(f, coeffs)

    def subgroup_one_mod(self, divisor: Poly) -> list[tuple[int, ...]]:
        """dlog vectors of the units congruent to 1 mod the given divisor."""
        out = []
        for coeffs, vec in self._dlog.items():
            u = Poly(self.field, coeffs)
            if (u - Poly.one(self.field)) % divisor == Poly.zero(self.field):
                out.append(vec)
        return out

    def __repr__(self):
        return f"UnitGroup(R={self.modulus.to_text()}, orders={list(self.orders)})"


def _crt_pair(a: Poly, mod_a: Poly, b: Poly, mod_b: Poly) -> Poly:
    """x with x = a mod mod_a and x = b mod mod_b (comaximal moduli)."""
    inv = inverse_mod(mod_a % mod_b, mod_b)
    t = (b - a) * inv % mod_b
    return (a + mod_a * t) % (mod_a * mod_b)


@functools.lru_cache(maxsize=64)
def unit_group(modulus: Poly) -> UnitGroup:
    return UnitGroup(modulus)


class DirichletCharacter:
    """Character of (F_q[T]/R)*, stored as exponents against the group basis."""

    __slots__ = ("group", "exponents", "_primitive", "_even")

    def __init__(self, group: UnitGroup, exponents: tuple[int, ...]):
        if len(exponents) != len(group.orders):
            raise ValueError("exponent vector length mismatch")
        self.group = group
        self.exponents = tuple(t % n for t, n in zip(exponents, group.orders))
        self._primitive: Optional[bool] = None
        self._even: Optional[bool] = None

    @property
    def modulus(self) -> Poly:
        return self.group.modulus

    @property
    def is_trivial(self) -> bool:
        return all(t == 0 for t in self.exponents)

    def rotation(self, a: Poly) -> Optional[Fraction]:
        """chi(a) as a rotation number in [0, 1), or None when chi(a) = 0."""
        vec = self.group.dlog(a)
        if vec is None:
            return None
        return self._rotation_of_vec(vec)

    def _rotation_of_vec(self, vec: tuple[int, ...]) -> Fraction:
        L = self.group.lcm_order
        num = 0
        for t, x, n in zip(self.exponents, vec, self.group.orders):
            num += t * x * (L // n)
        return Fraction(num % L, L)

    def __call__(self, a: Poly) -> complex:
        rot = self.rotation(a)
        if rot is None:
            return 0j
        return cmath.exp(TWO_PI * 1j * float(rot))

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(
            self.group, tuple(-t % n for t, n in zip(self.exponents, self.group.orders)))

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.group is not self.group:
            raise ValueError("characters on different groups")
        return DirichletCharacter(
            self.group, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    @property
    def is_even(self) -> bool:
        """True when chi is 1 on every scalar in F_q^*."""
        if self._even is None:
            f = self.group.field
            self._even = all(
                self.rotation(Poly.constant(f, c)) == 0 for c in range(1, f.q))
        return self._even

    @property
    def is_primitive(self) -> bool:
        """No induced modulus of smaller degree.

        Tested on the maximal divisors only: chi is primitive iff it is
        non-constant on every subgroup {A = 1 mod R/P}; induction through
        intermediate moduli makes this equivalent to the full definition
        (cross-checked exhaustively against it in the test suite).
        """
        if self._primitive is None:
            self._primitive = all(
                any(self._rotation_of_vec(v) != 0 for v in vecs)
                for vecs in _maximal_kernel_vectors(self.group))
        return self._primitive

    def induced_by(self, divisor: Poly) -> bool:
        """True when some character mod divisor induces chi (divisor | R)."""
        return all(self._rotation_of_vec(v) == 0
                   for v in self.group.subgroup_one_mod(divisor))

    def key(self) -> str:
        return ",".join(str(t) for t in self.exponents)

    def __eq__(self, other):
        return (isinstance(other, DirichletCharacter)
                and self.group.modulus == other.group.modulus
                and self.exponents == other.exponents)

    def __hash__(self):
        return hash((self.group.modulus, self.exponents))

    def __repr__(self):
        return f"chi(R={self.modulus.to_text()}, exps={list(self.exponents)})"


@functools.lru_cache(maxsize=64)
def _maximal_kernel_vectors(group: UnitGroup) -> tuple[tuple[tuple[int, ...], ...], ...]:
    out = []
    R = group.modulus
    for p, _ in group.factorization.factors:
        out.append(tuple(group.subgroup_one_mod(R // p)))
    return tuple(out)


def all_characters(group: UnitGroup) -> list[DirichletCharacter]:
    """The full dual group, trivial character first."""
    return [DirichletCharacter(group, combo)
            for combo in itertools.product(*(range(n) for n in group.orders))]


def primitive_characters(group: UnitGroup) -> list[DirichletCharacter]:
    return [chi for chi in all_characters(group) if chi.is_primitive]


def phi_star(modulus: Poly) -> int:
    """Number of primitive characters mod R: sum over EF = R of mu(E) phi(F)."""
    if not modulus.is_monic or modulus.degree < 1:
        raise ValueError("modulus must be monic of degree >= 1")
    total = 0
    for e_div in squarefree_divisors(modulus):
        total += mobius(e_div) * euler_phi(modulus // e_div)
    return total


def orthogonality_sum(modulus: Poly, a: Poly, b: Poly,
                      even_only: bool = False) -> tuple[complex, complex]:
    """Both sides of the primitive-character orthogonality identity.

    Returns (direct, closed): the direct sum over primitive (optionally
    even) characters of chi(a) * conj(chi(b)), and the divisor-sum closed
    form it must equal.
    """
    group = unit_group(modulus)
    direct = 0j
    for chi in primitive_characters(group):
        if even_only and not chi.is_even:
            continue
        ra = chi.rotation(a)
        rb = chi.rotation(b)
        if ra is None or rb is None:
            continue
        direct += cmath.exp(TWO_PI * 1j * float(ra - rb))

    return direct, orthogonality_closed_form(modulus, a, b, even_only)


def orthogonality_closed_form(modulus: Poly, a: Poly, b: Poly,
                              even_only: bool = False) -> complex:
    """Divisor-sum side of the orthogonality identity."""
    ra = a % modulus
    rb = b % modulus
    coprime = (not ra.is_zero and not rb.is_zero
               and is_coprime(ra, modulus) and is_coprime(rb, modulus))
    if not coprime:
        return 0j
    if not even_only:
        return complex(_mu_phi_divisor_sum(modulus, a - b))
    f = modulus.field
    total = sum(_mu_phi_divisor_sum(modulus, a - b.scale(c))
                for c in range(1, f.q))
    return complex(total / (f.q - 1))


def _mu_phi_divisor_sum(modulus: Poly, delta: Poly) -> int:
    total = 0
    for d in _all_divisor_pairs(modulus):
        e_div, f_div = d
        if mobius(e_div) == 0:
            continue
        if (delta % f_div).is_zero:
            total += mobius(e_div) * euler_phi(f_div)
    return total


@functools.lru_cache(maxsize=256)
def _all_divisor_pairs(modulus: Poly) -> tuple[tuple[Poly, Poly], ...]:
    from .arith import divisors
    return tuple((d, modulus // d) for d in divisors(modulus))


class PrimitiveValueTable:
    """Dense value matrix of all primitive characters over the units.

    Row i is the value vector of the i-th primitive character on the unit
    residues (canonical dlog-table order); batch orthogonality sums reduce
    to row dot products.
    """

    def __init__(self, group: UnitGroup):
        import numpy as np
        self.group = group
        self.characters = primitive_characters(group)
        self.even_mask = np.array([c.is_even for c in self.characters])
        units = list(group._dlog.keys())
        self.unit_index = {u: i for i, u in enumerate(units)}
        n_gen = len(group.orders)
        xs = np.array([group._dlog[u] for u in units], dtype=np.float64) \
            if n_gen else np.zeros((len(units), 0))
        ts = np.array([c.exponents for c in self.characters],
                      dtype=np.float64) if n_gen else \
            np.zeros((len(self.characters), 0))
        inv_orders = np.array([1.0 / n for n in group.orders]) if n_gen \
            else np.zeros(0)
        phase = (ts * inv_orders) @ xs.T  # rotations, rows chi cols unit
        self.values = np.exp(TWO_PI * 1j * phase)

    def column(self, a: Poly):
        """Value vector of all primitive characters at a, zero off units."""
        import numpy as np
        r = a % self.group.modulus
        idx = self.unit_index.get(r.coeffs)
        if idx is None:
            return np.zeros(len(self.characters), dtype=np.complex128)
        return self.values[:, idx]

    def pair_sum(self, a: Poly, b: Poly, even_only: bool = False) -> complex:
        """Direct sum over primitive (optionally even) chi of chi(a) conj(chi(b))."""
        col = self.column(a) * self.column(b).conj()
        if even_only:
            col = col[self.even_mask]
        return complex(col.sum())


# ---------------------------------------------------------------------------
# character-table cache files

def cache_path(cache_dir: str, modulus: Poly) -> str:
    safe = modulus.to_text().replace(":", "_").replace(",", "-") \
        .replace("[", "").replace("]", "")
    return os.path.join(cache_dir, f"chartable_{safe}.json")


def save_group_cache(group: UnitGroup, cache_dir: str) -> str:
    """Persist orders + dlog table keyed by the canonical modulus text."""
    os.makedirs(cache_dir, exist_ok=True)
    path = cache_path(cache_dir, group.modulus)
    payload = {
        "schema_version": 1,
        "modulus": group.modulus.to_text(),
        "orders": list(group.orders),
        "generators": [g.to_text() for g in group.generators],
        "dlog": {",".join(map(str, k)): list(v) for k, v in group._dlog.items()},
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)
    return path


def load_group_cache(modulus: Poly, cache_dir: str) -> Optional[UnitGroup]:
    path = cache_path(cache_dir, modulus)
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("modulus") != modulus.to_text():
        return None
    group = UnitGroup.__new__(UnitGroup)
    group.field = modulus.field
    group.modulus = modulus
    group.factorization = factorize(modulus)
    group.phi = euler_phi(modulus)
    group.generators = tuple(Poly.from_text(t) for t in payload["generators"])
    group.orders = tuple(payload["orders"])
    group._dlog = {
        tuple(int(c) for c in k.split(",")) if k else (): tuple(v)
        for k, v in payload["dlog"].items()
    }
    group.lcm_order = math.lcm(*group.orders) if group.orders else 1
    return group
