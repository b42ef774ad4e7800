"""Moment averages over primitive characters and their predictions.

Empirical side: |L|^{2k}, |P_X|^{2k}, |Z_X|^{2k} at s = 1/2 averaged over
primitive characters mod R, with the coefficient transform doing the heavy
lifting.  Theoretical side: the arithmetic factor a(k), the random-matrix
factor f(k) (exact rational), the finite-field Mertens product, and the
closed-form predictions for the L / Euler / Hadamard moments.  Averages
use exactly-rounded summation so results do not depend on character order.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, asdict
from fractions import Fraction
from typing import Optional

from .arith import (coprime_count, euler_phi, factorize, local_dk_sq_sum,
                    prime_count, primes_of_degree)
from .chargroup import DirichletCharacter, UnitGroup, phi_star, unit_group
from .hybrid import p_x_eval
from .lfunc import LPolynomial, coefficient_table, l_polynomial_from_row
from .poly import Poly
from .special import EULER_GAMMA


@dataclass
class MomentReport:
    """One empirical-vs-predicted moment comparison, serializable."""

    q: int
    modulus: str
    deg_r: int
    k: int
    X: int
    kind: str  # 'L' | 'P' | 'Z' | 'split'
    empirical: float
    predicted: float
    ratio: Optional[float]
    phi_star: int
    regime_flag: str  # 'in-regime' | 'out-of-regime'
    wall_time: float
    tolerance: Optional[float] = None

    def as_dict(self) -> dict:
        return asdict(self)

    CSV_COLUMNS = ("q", "R", "degR", "k", "X", "kind", "empirical",
                   "predicted", "ratio", "phi_star", "regime_flag")

    def csv_row(self) -> list:
        return [self.q, self.modulus, self.deg_r, self.k, self.X, self.kind,
                repr(self.empirical), repr(self.predicted),
                "" if self.ratio is None else repr(self.ratio),
                self.phi_star, self.regime_flag]


class NoPrimitiveCharactersError(ValueError):
    pass


# ---------------------------------------------------------------------------
# constants of the predictions

def f_k(k: int) -> Fraction:
    """Random-matrix moment factor prod_{i=0}^{k-1} i!/(i+k)!, exact."""
    if k < 0:
        raise ValueError("k must be >= 0")
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(math.factorial(i), math.factorial(i + k))
    return out


def a_k(k: int, q: int, degree_cutoff: int = 40) -> tuple[float, float]:
    """Arithmetic factor a(k) truncated over prime degrees <= cutoff.

    Returns (value, tail_estimate); the per-degree contribution decays like
    q^(-d)/d, so the tail is estimated geometrically from the last term.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 1.0, 0.0
    log_total = 0.0
    last = 0.0
    for d in range(1, degree_cutoff + 1):
        x = Fraction(1, q**d)
        local = (1 - x) ** (k * k) * local_dk_sq_sum(k, x)
        # local is 1 + O(x^2); feed log1p the exact deviation so the huge
        # prime counts do not amplify rounding near 1
        contrib = prime_count(q, d) * math.log1p(float(local - 1))
        log_total += contrib
        if contrib != 0.0:
            last = abs(contrib)
    tail = last * q / max(q - 1, 1)
    return math.exp(log_total), tail


def mertens_product(q: int, n: int) -> tuple[Fraction, float]:
    """(exact product over deg P <= n of (1 - 1/|P|)^(-1), ratio to e^gamma n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    prod = Fraction(1)
    for d in range(1, n + 1):
        prod *= (1 - Fraction(1, q**d)) ** (-prime_count(q, d))
    ratio = float(prod) / (math.exp(EULER_GAMMA) * n)
    return prod, ratio


def coprime_harmonic_sum(modulus: Poly, x: int) -> tuple[Fraction, Fraction]:
    """(exact sum of 1/|A| over monic A, deg <= x, coprime to R; main term).

    The main term is phi(R)/|R| * x; the exact sum comes from per-degree
    coprime counts, all in rational arithmetic.
    """
    if x < 0:
        raise ValueError("x must be >= 0")
    q = modulus.field.q
    total = Fraction(0)
    for n in range(x + 1):
        total += Fraction(coprime_count(modulus, n), q**n)
    main = Fraction(euler_phi(modulus), modulus.norm) * x
    return total, main


# ---------------------------------------------------------------------------
# predictions

_PREDICTION_KINDS = ("L", "euler", "hadamard", "hadamard2", "hadamard4")


def predicted_moment(modulus: Poly, k: int, X: int, which: str,
                     mertens_exact: bool = False) -> tuple[float, str]:
    """Closed-form prediction and its regime flag.

    which = 'L': f(k) a(k) prod_{P|R} S_k(1/|P|)^(-1) (deg R)^(k^2)
    which = 'euler': a(k) prod_{deg P <= X, P|R} S_k(1/|P|)^(-1) (e^g X)^(k^2)
    which = 'hadamard': f(k) (deg R / (e^g X))^(k^2)
    which = 'hadamard2': (deg R/(e^g X)) prod_{deg P > X, P|R} (1 - 1/|P|)
    which = 'hadamard4': (1/12) (deg R/(e^g X))^4
                         prod_{deg P > X, P|R} (1-1/|P|)^3/(1+1/|P|)

    With mertens_exact the e^gamma X occurrences are replaced by the finite
    Mertens product over deg P <= X that they approximate; at small X that
    removes the dominant finite-size distortion of the X-asymptotics.
    """
    if which not in _PREDICTION_KINDS:
        raise ValueError(f"unknown prediction {which!r}")
    q = modulus.field.q
    deg_r = modulus.degree
    eg_x = float(mertens_product(q, X)[0]) if mertens_exact \
        else math.exp(EULER_GAMMA) * X
    primes = [p for p, _ in factorize(modulus).factors]

    def local_sum_inv(p: Poly) -> float:
        return 1.0 / float(local_dk_sq_sum(k, Fraction(1, p.norm)))

    if which == "L":
        val = float(f_k(k)) * a_k(k, q)[0]
        for p in primes:
            val *= local_sum_inv(p)
        val *= float(deg_r) ** (k * k)
    elif which == "euler":
        val = a_k(k, q)[0]
        for p in primes:
            if p.degree <= X:
                val *= local_sum_inv(p)
        val *= eg_x ** (k * k)
    elif which == "hadamard":
        val = float(f_k(k)) * (deg_r / eg_x) ** (k * k)
    elif which == "hadamard2":
        val = deg_r / eg_x
        for p in primes:
            if p.degree > X:
                val *= 1 - 1 / p.norm
    else:  # hadamard4
        val = (deg_r / eg_x) ** 4 / 12
        for p in primes:
            if p.degree > X:
                x = 1 / p.norm
                val *= (1 - x) ** 3 / (1 + x)

    if which == "hadamard4":
        # X <= log_q log deg R; unreachable at desk scale for X >= 2
        in_regime = deg_r > 1 and X <= _log_q(q, math.log(deg_r))
    elif which in ("euler", "hadamard", "hadamard2"):
        in_regime = X <= _log_q(q, deg_r) if deg_r >= 1 else False
    else:  # 'L' has no X in its statement
        in_regime = True
    return val, "in-regime" if in_regime else "out-of-regime"


def _log_q(q: int, x: float) -> float:
    return math.log(x) / math.log(q) if x > 0 else float("-inf")


# ---------------------------------------------------------------------------
# empirical averages

_KIND_TO_PREDICTION = {"L": "L", "P": "euler", "Z": "hadamard"}


def _z_prediction_kind(k: int) -> str:
    return {1: "hadamard2", 2: "hadamard4"}.get(k, "hadamard")


_ROWS_CACHE: dict = {}


def _primitive_l_rows(group: UnitGroup) -> list[tuple[DirichletCharacter, LPolynomial]]:
    """(character, L-polynomial) for every primitive character; cached per modulus."""
    key = group.modulus
    if key in _ROWS_CACHE:
        return _ROWS_CACHE[key]
    table = coefficient_table(group)
    out = []
    from .chargroup import all_characters
    for chi in all_characters(group):
        if chi.is_trivial or not chi.is_primitive:
            continue
        out.append((chi, l_polynomial_from_row(chi, table[chi.exponents])))
    if len(_ROWS_CACHE) > 32:
        _ROWS_CACHE.clear()
    _ROWS_CACHE[key] = out
    return out


def empirical_moment(modulus: Poly, k: int, kind: str, X: int,
                     group: Optional[UnitGroup] = None) -> MomentReport:
    """Average of |value at 1/2|^(2k) over primitive characters mod R."""
    if kind not in ("L", "P", "Z"):
        raise ValueError("kind must be 'L', 'P' or 'Z'")
    if k < 0:
        raise ValueError("k must be >= 0")
    t0 = time.perf_counter()
    group = group or unit_group(modulus)
    pstar = phi_star(modulus)
    if pstar < 1:
        raise NoPrimitiveCharactersError(
            f"modulus {modulus.to_text()} has no primitive characters")
    rows = _primitive_l_rows(group)
    assert len(rows) == pstar
    values = []
    for chi, lp in rows:
        if kind == "L":
            v = abs(lp.eval_s(0.5))
        elif kind == "P":
            v = abs(p_x_eval(chi, 0.5, X))
        else:
            v = abs(lp.eval_s(0.5)) / abs(p_x_eval(chi, 0.5, X))
        values.append(v ** (2 * k))
    emp = math.fsum(values) / pstar
    which = _z_prediction_kind(k) if kind == "Z" else _KIND_TO_PREDICTION[kind]
    pred, regime = predicted_moment(modulus, k, X, which)
    ratio = emp / pred if pred != 0 else None
    return MomentReport(
        q=modulus.field.q, modulus=modulus.to_text(), deg_r=modulus.degree,
        k=k, X=X, kind=kind, empirical=emp, predicted=pred, ratio=ratio,
        phi_star=pstar, regime_flag=regime,
        wall_time=time.perf_counter() - t0)


def splitting_ratio(modulus: Poly, k: int, X: int,
                    group: Optional[UnitGroup] = None) -> MomentReport:
    """Diagnostic: L-moment / (P-moment * Z-moment).  Never a pass/fail gate."""
    t0 = time.perf_counter()
    group = group or unit_group(modulus)
    l_rep = empirical_moment(modulus, k, "L", X, group)
    p_rep = empirical_moment(modulus, k, "P", X, group)
    z_rep = empirical_moment(modulus, k, "Z", X, group)
    denom = p_rep.empirical * z_rep.empirical
    ratio = l_rep.empirical / denom if denom else float("nan")
    return MomentReport(
        q=modulus.field.q, modulus=modulus.to_text(), deg_r=modulus.degree,
        k=k, X=X, kind="split", empirical=ratio, predicted=1.0, ratio=ratio,
        phi_star=l_rep.phi_star, regime_flag=l_rep.regime_flag,
        wall_time=time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# primorials

@dataclass(frozen=True)
class PrimorialRecord:
    """Product of the first n monic primes in degree-then-encoding order."""

    n: int
    modulus: Poly
    m: int  # all primes of degree <= m included
    r: int  # plus r primes of degree m + 1
    loglog_deviation: float  # log_q log_q |R_n| - m

    def as_dict(self) -> dict:
        return {"n": self.n, "modulus": self.modulus.to_text(), "m": self.m,
                "r": self.r, "loglog_deviation": self.loglog_deviation}


def primorial(field_obj, n: int) -> PrimorialRecord:
    if n < 1:
        raise ValueError("n must be >= 1")
    q = field_obj.q
    # m = largest degree with all its primes included; r = overflow count
    m, consumed = 0, 0
    while consumed + prime_count(q, m + 1) <= n:
        consumed += prime_count(q, m + 1)
        m += 1
    r = n - consumed
    prod = Poly.one(field_obj)
    count = 0
    d = 1
    while count < n:
        for p in primes_of_degree(field_obj, d):
            prod = prod * p
            count += 1
            if count == n:
                break
        d += 1
    deg = prod.degree
    dev = _log_q(q, _log_q(q, float(prod.norm))) - m if deg > 0 else float("nan")
    return PrimorialRecord(n, prod, m, r, dev)
