"""Hybrid factorization L = P_X * Z_X and its coefficient systems.

P_X is the exponential of the prime-power sum truncated at degree X.  Z_X
can be formed two ways: as the quotient L / P_X (exact), or as the
exponential of a smoothed sum over all zeros of L, each zero expanded into
its vertical family of period 2*pi/log q.  Matching the two is the main
numerical consistency check of the module.

The coefficient systems alpha_k, alpha_{-1}, beta are the multiplicative
Dirichlet coefficients of powers of the tempered Euler product P_X^*; all
their local values are exact rationals.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .arith import factorize, primes_of_degree
from .chargroup import TWO_PI, DirichletCharacter
from .lfunc import LPolynomial, l_coeffs, l_zeros
from .poly import Poly
from .special import BumpProfile, u_cap_many, u_mellin_many


def p_x_eval(chi: DirichletCharacter, s: complex, X: int) -> complex:
    """P_X(s, chi): exp of sum over prime powers P^j with j deg P <= X."""
    if X < 1:
        raise ValueError("X must be >= 1")
    f = chi.group.field
    q = f.q
    total = 0j
    for d in range(1, X + 1):
        for p in primes_of_degree(f, d):
            rot = chi.rotation(p)
            if rot is None:
                continue
            n_p = X // d
            u = q ** (-complex(s) * d)
            val = cmath.exp(TWO_PI * 1j * float(rot))
            term = val * u
            for j in range(1, n_p + 1):
                total += term / j
                term *= val * u
    return cmath.exp(total)


# ---------------------------------------------------------------------------
# coefficient systems

def _dk_local(r: int, k: int) -> Fraction:
    return Fraction(math.comb(r + k - 1, k - 1))


def _tempered_local(r: int, k: int) -> Fraction:
    """x^r coefficient of (1-x)^(-k) (1 + x^2/2)^(-k)."""
    total = Fraction(0)
    for j in range(0, r // 2 + 1):
        total += (Fraction(math.comb(k + j - 1, j)) * Fraction(-1, 2) ** j
                  * _dk_local(r - 2 * j, k))
    return total


@dataclass(frozen=True)
class CoefficientSystem:
    """Multiplicative coefficients supported on X-smooth monic polynomials.

    kind 'alpha_k' needs k >= 1; 'alpha_minus1' and 'beta' ignore k.  Local
    values depend only on deg P (small primes: deg P <= X/2, large primes:
    X/2 < deg P <= X) and the exponent.
    """

    kind: str
    X: int
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("alpha_k", "alpha_minus1", "beta"):
            raise ValueError(f"unknown coefficient system {self.kind!r}")
        if self.kind == "alpha_k" and self.k < 1:
            raise ValueError("alpha_k needs k >= 1")
        object.__setattr__(self, "_memo", {})

    def local_value(self, p_deg: int, r: int) -> Fraction:
        """Value at P^r as a function of deg P."""
        if r == 0:
            return Fraction(1)
        if p_deg > self.X:
            return Fraction(0)
        large = 2 * p_deg > self.X  # X/2 < deg P <= X
        if self.kind == "alpha_k":
            if not large:
                return _dk_local(r, self.k)
            return _tempered_local(r, self.k)
        if self.kind == "alpha_minus1":
            table = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2)) \
                if large else (Fraction(1), Fraction(-1))
        else:  # beta
            table = (Fraction(1), Fraction(-2), Fraction(2)) if large \
                else (Fraction(1), Fraction(-2), Fraction(1))
        return table[r] if r < len(table) else Fraction(0)

    def local_poly(self, p_deg: int, max_r: int) -> list[Fraction]:
        return [self.local_value(p_deg, r) for r in range(max_r + 1)]

    def coeff(self, a: Poly) -> Fraction:
        """Coefficient at a monic polynomial (0 unless X-smooth)."""
        if not a.is_monic:
            raise ValueError("coefficient systems are defined on monic inputs")
        memo = self.__dict__["_memo"]
        if a in memo:
            return memo[a]
        out = Fraction(1)
        for p, e in factorize(a).factors:
            out *= self.local_value(p.degree, e)
            if out == 0:
                break
        memo[a] = out
        return out


def smooth_monics(f, X: int, max_deg: int) -> list[Poly]:
    """All X-smooth monic polynomials of degree <= max_deg."""
    prime_pool = [p for d in range(1, min(X, max_deg) + 1)
                  for p in primes_of_degree(f, d)]
    out = [Poly.one(f)]

    def extend(i: int, current: Poly):
        for j in range(i, len(prime_pool)):
            p = prime_pool[j]
            nxt = current * p
            while nxt.degree <= max_deg:
                out.append(nxt)
                extend(j + 1, nxt)
                nxt = nxt * p

    extend(0, Poly.one(f))
    out.sort(key=lambda a: (a.degree, a.coeffs))
    return out


def p_series_eval(system: CoefficientSystem, chi: DirichletCharacter,
                  s: complex, max_deg: int) -> complex:
    """Truncated Dirichlet series sum of coeff(A) chi(A) / |A|^s."""
    f = chi.group.field
    q = f.q
    total = 0j
    for a in smooth_monics(f, system.X, max_deg):
        c = system.coeff(a)
        if c == 0:
            continue
        rot = chi.rotation(a)
        if rot is None:
            continue
        total += float(c) * cmath.exp(TWO_PI * 1j * float(rot)) \
            * q ** (-complex(s) * a.degree)
    return total


def p_series_full(system: CoefficientSystem, chi: DirichletCharacter,
                  s: complex) -> complex:
    """Complete Dirichlet series for the finite systems (alpha_minus1, beta).

    Their local values vanish beyond exponent 3 (resp. 2), so the support is
    a finite set of exponent patterns; summing it exactly must reproduce
    euler_product_eval to rounding.
    """
    if system.kind == "alpha_k":
        raise ValueError("alpha_k has unbounded support; use p_series_eval")
    max_e = 3 if system.kind == "alpha_minus1" else 2
    f = chi.group.field
    q = f.q
    prime_rots = []
    for d in range(1, system.X + 1):
        for p in primes_of_degree(f, d):
            prime_rots.append((d, chi.rotation(p)))
    total = 0j

    def rec(i: int, acc_coeff: Fraction, acc_rot: float, acc_deg: int):
        nonlocal total
        if i == len(prime_rots):
            total += float(acc_coeff) * cmath.exp(TWO_PI * 1j * acc_rot) \
                * q ** (-complex(s) * acc_deg)
            return
        d, rot = prime_rots[i]
        rec(i + 1, acc_coeff, acc_rot, acc_deg)
        if rot is None:
            return
        for e in range(1, max_e + 1):
            c = system.local_value(d, e)
            if c == 0:
                continue
            rec(i + 1, acc_coeff * c, acc_rot + float(rot) * e, acc_deg + d * e)

    rec(0, Fraction(1), 0.0, 0)
    return total


def euler_product_eval(system: CoefficientSystem, chi: DirichletCharacter,
                       s: complex) -> complex:
    """The same object as the full Dirichlet series, as a product of local factors.

    alpha_k local factors are closed forms; alpha_minus1 and beta are finite
    local polynomials, so for those the product equals the completed series
    exactly.
    """
    f = chi.group.field
    q = f.q
    X = system.X
    out = 1.0 + 0j
    for d in range(1, X + 1):
        u = q ** (-complex(s) * d)
        for p in primes_of_degree(f, d):
            rot = chi.rotation(p)
            if rot is None:
                continue
            xv = cmath.exp(TWO_PI * 1j * float(rot)) * u
            large = 2 * d > X
            if system.kind == "alpha_k":
                loc = (1 - xv) ** (-system.k)
                if large:
                    loc *= (1 + xv * xv / 2) ** (-system.k)
            elif system.kind == "alpha_minus1":
                loc = 1 - xv
                if large:
                    loc *= 1 + xv * xv / 2
            else:  # beta
                b2 = 2 if large else 1
                loc = 1 - 2 * xv + b2 * xv * xv
            out *= loc
    return out


# ---------------------------------------------------------------------------
# Z_X two ways

def z_x_quotient(chi: DirichletCharacter, s: complex, X: int,
                 lp: Optional[LPolynomial] = None) -> complex:
    """Z_X = L / P_X, exact up to evaluation rounding."""
    lp = lp or l_coeffs(chi)
    return lp.eval_s(s) / p_x_eval(chi, s, X)


@dataclass
class ZeroSumResult:
    value: complex
    perturbed: bool  # s was nudged off a branch-cut alignment
    n_terms: int


def z_x_from_zeros(chi: DirichletCharacter, s: complex, X: int,
                   bump: BumpProfile, m_periods: int = 200,
                   lp: Optional[LPolynomial] = None) -> ZeroSumResult:
    """Z_X as exp(-sum over zeros of U((s - rho)(log q) X)).

    Every root of the L-polynomial contributes its full vertical family
    rho + 2 pi i m / log q for |m| <= m_periods, accumulated in symmetric
    +-m pairs.  If s - rho lands on the branch cut of E1 for some copy, s
    is nudged by 1e-8 i, implementing the limit definition.
    """
    lp = lp or l_coeffs(chi)
    zeros = l_zeros(lp)
    log_q = math.log(chi.group.field.q)
    s = complex(s)
    scale = log_q * X

    def run(s_val: complex) -> Optional[complex]:
        total = 0j
        for rho0 in zeros.s_fundamental:
            ms = np.arange(-m_periods, m_periods + 1)
            rhos = rho0 + 2j * math.pi * ms / log_q
            zs = (s_val - rhos) * scale
            near_cut = (np.abs(zs.imag) < 1e-12 * np.maximum(1.0, np.abs(zs))) \
                & (zs.real <= 0)
            if np.any(near_cut):
                return None
            u_vals = u_cap_many(zs, bump)
            total += u_vals[m_periods]
            for j in range(1, m_periods + 1):
                total += u_vals[m_periods + j] + u_vals[m_periods - j]
        return total

    perturbed = False
    total = run(s)
    if total is None:
        perturbed = True
        total = run(s + 1e-8j)
        if total is None:
            raise ArithmeticError("zero-sum still on a branch cut after nudge")
    n_terms = len(zeros.s_fundamental) * (2 * m_periods + 1)
    return ZeroSumResult(cmath.exp(-total), perturbed, n_terms)


def hybrid_identity_delta(chi: DirichletCharacter, s: complex, X: int,
                          bump: BumpProfile, m_periods: int = 200,
                          lp: Optional[LPolynomial] = None) -> dict:
    """Relative gap between the zero-sum and quotient forms of Z_X."""
    lp = lp or l_coeffs(chi)
    quo = z_x_quotient(chi, s, X, lp)
    zsr = z_x_from_zeros(chi, s, X, bump, m_periods, lp)
    denom = max(abs(quo), 1e-300)
    return {
        "z_quotient": complex(quo),
        "z_zero_sum": complex(zsr.value),
        "rel_error": float(abs(zsr.value - quo) / denom),
        "perturbed": zsr.perturbed,
    }


# ---------------------------------------------------------------------------
# the explicit formula

def explicit_formula_sides(chi: DirichletCharacter, s: complex, X: int,
                           bump: BumpProfile, m_periods: int = 400,
                           lp: Optional[LPolynomial] = None
                           ) -> tuple[complex, complex]:
    """(-L'/L(s), prime sum up to X + smoothed zero sum), both computed.

    The left side comes from the polynomial; the right side sums
    chi(A) Lambda(A)/|A|^s over deg A <= X plus
    u~(1 + (rho - s) (log q) X) / (rho - s) over the periodized zeros.
    """
    from .lfunc import l_log_deriv, log_deriv_dirichlet_series
    lp = lp or l_coeffs(chi)
    lhs = -l_log_deriv(lp, s)
    prime_side = log_deriv_dirichlet_series(chi, s, X)
    zeros = l_zeros(lp)
    log_q = math.log(chi.group.field.q)
    scale = log_q * X
    s = complex(s)
    zero_side = 0j
    for rho0 in zeros.s_fundamental:
        ms = np.arange(-m_periods, m_periods + 1)
        rhos = rho0 + 2j * math.pi * ms / log_q
        args = 1.0 + (rhos - s) * scale
        vals = u_mellin_many(args, bump) / (rhos - s)
        zero_side += vals[m_periods]
        for j in range(1, m_periods + 1):
            zero_side += vals[m_periods + j] + vals[m_periods - j]
    return lhs, prime_side + zero_side
