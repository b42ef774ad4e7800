"""L-functions of Dirichlet characters on F_q[T].

For non-trivial chi the L-function is the polynomial in u = q^(-s) with
coefficients c_n = sum over monic A of degree n of chi(A), which vanish for
n >= deg R.  Everything here is finite: evaluation is Horner, zeros come
from companion-matrix eigenvalues polished by Newton, and the short-sum
identity for |L(1/2)|^2 is a coefficient convolution.

The trivial character is handled by its closed form
prod_{P | R} (1 - |P|^(-s)) / (1 - q^(1-s)) and never as a polynomial.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import factorize, monic_primes_up_to
from .chargroup import TWO_PI, DirichletCharacter, UnitGroup
from .poly import Poly, monic_polys_of_degree

CRITICAL_TOL = 1e-6
RESIDUAL_TOL = 1e-12


class TrivialCharacterError(ValueError):
    """The trivial character has a pole; it has no LPolynomial."""


class EvaluationAtZeroError(ArithmeticError):
    pass


class RootFindingError(RuntimeError):
    pass


@dataclass(frozen=True)
class LPolynomial:
    """Finite polynomial sum c_n u^n, u = q^(-s), for a non-trivial character."""

    character: DirichletCharacter
    coeffs: tuple[complex, ...]  # length deg R; c_0 = 1

    @property
    def q(self) -> int:
        return self.character.group.field.q

    @property
    def effective_degree(self) -> int:
        scale = max(abs(c) for c in self.coeffs)
        deg = 0
        for n, c in enumerate(self.coeffs):
            if abs(c) > 1e-8 * scale:
                deg = n
        return deg

    def eval_u(self, u: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def eval_s(self, s: complex) -> complex:
        return self.eval_u(self.q ** (-s))

    def deriv_u(self, u: complex) -> complex:
        acc = 0j
        for n in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * u + n * self.coeffs[n]
        return acc

    def log_deriv_s(self, s: complex) -> complex:
        """L'(s)/L(s) from the polynomial; raises at a zero of L."""
        u = complex(self.q) ** (-complex(s))
        val = self.eval_u(u)
        scale = max(abs(c) for c in self.coeffs)
        if abs(val) < 1e-12 * scale:
            raise EvaluationAtZeroError(f"L({s}) = 0 within tolerance")
        return -math.log(self.q) * u * self.deriv_u(u) / val


def l_coeffs(chi: DirichletCharacter) -> LPolynomial:
    """Coefficients by direct summation over monic A of each degree < deg R.

    Rotation numbers are accumulated exactly and rounded only when the final
    complex coefficient is formed, so this path is the oracle for the
    transform-based scan.
    """
    if chi.is_trivial:
        raise TrivialCharacterError("the trivial character has no finite L-polynomial")
    group = chi.group
    f = group.field
    deg_r = group.modulus.degree
    coeffs = []
    for n in range(deg_r):
        counts: dict[Fraction, int] = {}
        for a in monic_polys_of_degree(f, n):
            rot = chi.rotation(a)
            if rot is not None:
                counts[rot] = counts.get(rot, 0) + 1
        c = sum(cnt * cmath.exp(TWO_PI * 1j * float(rot))
                for rot, cnt in counts.items())
        coeffs.append(c)
    return LPolynomial(chi, tuple(coeffs))


def coefficient_table(group: UnitGroup) -> dict[tuple[int, ...], np.ndarray]:
    """All characters' coefficient vectors at once via a group transform.

    For each degree n < deg R the indicator of monic degree-n residues is
    transformed over the product of cyclic factors, producing c_n for every
    exponent vector simultaneously.  The trivial character's row is included
    but is not an L-polynomial (callers skip it).
    """
    f = group.field
    deg_r = group.modulus.degree
    orders = group.orders
    if not orders:
        return {(): np.array([1.0 + 0j] + [0j] * (deg_r - 1))}
    tables = []
    for n in range(deg_r):
        w = np.zeros(orders, dtype=np.complex128)
        for a in monic_polys_of_degree(f, n):
            vec = group.dlog(a)
            if vec is not None:
                w[vec] += 1.0
        tables.append(np.fft.ifftn(w) * group.phi)
    out: dict[tuple[int, ...], np.ndarray] = {}
    for combo in itertools.product(*(range(n) for n in orders)):
        out[combo] = np.array([tables[n][combo] for n in range(deg_r)])
    return out


def l_polynomial_from_row(chi: DirichletCharacter, row: np.ndarray) -> LPolynomial:
    return LPolynomial(chi, tuple(complex(c) for c in row))


def l_eval(chi: DirichletCharacter, s: complex) -> complex:
    """L(s, chi); the trivial character uses the closed form with its poles."""
    if chi.is_trivial:
        return l_eval_trivial(chi.group.modulus, s)
    return l_coeffs(chi).eval_s(s)


def l_eval_trivial(modulus: Poly, s: complex) -> complex:
    q = modulus.field.q
    denom = 1 - q ** (1 - complex(s))
    if abs(denom) < 1e-13:
        raise ZeroDivisionError("pole of the trivial-character L-function")
    out = 1 / denom
    for p, _ in factorize(modulus).factors:
        out *= 1 - complex(p.norm) ** (-complex(s))
    return out


# ---------------------------------------------------------------------------
# zeros

@dataclass
class ZeroSet:
    """Roots of the L-polynomial in the u-plane plus their s-plane images."""

    character: DirichletCharacter
    u_roots: list[complex]
    classes: list[str]  # 'critical' | 'unit' | 'other'
    s_fundamental: list[complex]  # principal s with Im in (-pi/log q, pi/log q]
    tolerance: float = CRITICAL_TOL

    @property
    def n_critical(self) -> int:
        return self.classes.count("critical")

    @property
    def n_unit(self) -> int:
        return self.classes.count("unit")

    @property
    def n_other(self) -> int:
        return self.classes.count("other")

    def periodic_copies(self, m: int) -> list[complex]:
        """s-plane zeros with vertical period shifts up to |m| periods."""
        log_q = math.log(self.character.group.field.q)
        out = []
        for s0 in self.s_fundamental:
            for j in range(-m, m + 1):
                out.append(s0 + 2j * math.pi * j / log_q)
        return out


def l_zeros(lp: LPolynomial, tol: float = CRITICAL_TOL) -> ZeroSet:
    q = lp.q
    deg = lp.effective_degree
    if deg == 0:
        return ZeroSet(lp.character, [], [], [], tol)
    cs = np.array(lp.coeffs[: deg + 1], dtype=np.complex128)
    roots = np.roots(cs[::-1])
    scale = float(np.max(np.abs(cs)))
    polished = []
    for r in roots:
        u = complex(r)
        for _ in range(60):
            val = lp.eval_u(u)
            if abs(val) <= RESIDUAL_TOL * scale:
                break
            d = lp.deriv_u(u)
            if d == 0:
                break
            step = val / d
            u -= step
            if abs(step) < 1e-16 * max(1.0, abs(u)):
                break
        if abs(lp.eval_u(u)) > 1e-9 * scale:
            raise RootFindingError(
                f"root polishing failed for {lp.character!r}: residual "
                f"{abs(lp.eval_u(u)):.3e}")
        polished.append(u)
    target = q ** (-0.5)
    classes = []
    s_fund = []
    log_q = math.log(q)
    for u in polished:
        mod = abs(u)
        if abs(mod - target) < tol:
            classes.append("critical")
        elif abs(mod - 1.0) < tol:
            classes.append("unit")
        else:
            classes.append("other")
        # u = q^(-s) => s = -Log(u)/log q, principal branch
        s0 = -cmath.log(u) / log_q
        if s0.imag <= -math.pi / log_q:
            s0 += 2j * math.pi / log_q
        s_fund.append(s0)
    return ZeroSet(lp.character, polished, classes, s_fund, tol)


@dataclass
class RHReport:
    """Classification summary of one character's zeros."""

    character_key: str
    n_critical: int
    n_unit: int
    n_other: int
    max_critical_deviation: float
    tolerance: float

    @property
    def satisfies_rh(self) -> bool:
        return self.n_other == 0


def rh_report(lp: LPolynomial, tol: float = CRITICAL_TOL) -> RHReport:
    zs = l_zeros(lp, tol)
    q = lp.q
    target = q ** (-0.5)
    dev = 0.0
    for u, cls in zip(zs.u_roots, zs.classes):
        if cls == "critical":
            dev = max(dev, abs(abs(u) - target))
    return RHReport(lp.character.key(), zs.n_critical, zs.n_unit, zs.n_other,
                    dev, tol)


# ---------------------------------------------------------------------------
# the exact short-sum identity for |L(1/2)|^2

def short_sum_sides(lp: LPolynomial) -> tuple[float, float]:
    """(|L(1/2)|^2, short double sum + parity correction) for primitive chi."""
    chi = lp.character
    if not chi.is_primitive:
        raise ValueError("short-sum identity requires a primitive character")
    q = lp.q
    deg_r = chi.group.modulus.degree
    cs = list(lp.coeffs) + [0j]  # pad so convolution at m = deg R is defined
    def conv(m: int) -> float:
        total = 0j
        for i in range(m + 1):
            j = m - i
            if i < len(cs) and j < len(cs):
                total += cs[i] * cs[j].conjugate()
        return (total * q ** (-m / 2)).real

    lhs = abs(lp.eval_s(0.5)) ** 2
    rhs = 2 * sum(conv(m) for m in range(deg_r))
    sq = math.sqrt(q)
    if chi.is_even:
        rhs += (-q / (sq - 1) ** 2 * conv(deg_r - 2)
                - 2 * sq / (sq - 1) * conv(deg_r - 1)
                + 1 / (sq - 1) ** 2 * conv(deg_r))
    else:
        rhs += -conv(deg_r - 1)
    return lhs, rhs


# ---------------------------------------------------------------------------
# log derivative: polynomial form vs the prime-power Dirichlet series

def l_log_deriv(lp: LPolynomial, s: complex) -> complex:
    return lp.log_deriv_s(s)


def log_deriv_dirichlet_series(chi: DirichletCharacter, s: complex,
                               max_deg: int) -> complex:
    """sum over monic A with deg A <= max_deg of chi(A) Lambda(A) / |A|^s.

    Equals -L'/L(s) up to the tail beyond max_deg.  Primes are enumerated
    (sieved), so this is independent of the polynomial coefficients.
    """
    q = chi.group.field.q
    primes = monic_primes_up_to(chi.group.field, max_deg)
    log_q = math.log(q)
    total = 0j
    for d in range(1, max_deg + 1):
        rots = [chi.rotation(p) for p in primes[d]]
        j = 1
        while j * d <= max_deg:
            sub = 0j
            for rot in rots:
                if rot is not None:
                    sub += cmath.exp(TWO_PI * 1j * float(rot) * j)
            total += sub * d * log_q * q ** (-complex(s) * j * d)
            j += 1
    return total
