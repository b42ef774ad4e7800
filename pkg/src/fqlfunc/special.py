"""Exponential/cosine integrals and the smooth bump-weight quadrature.

E1 uses the alternating power series for |z| <= 4 and a modified Lentz
continued fraction beyond; both accept complex arguments off the branch
cut arg(z) = pi.  Ci follows the same split (series below 4, the E1
fraction at iy above).

BumpProfile packages a positive C-infinity weight supported on
[e, e^(1 + q^(-X))], normalized to unit mass, as Gauss-Legendre nodes and
weights.  Transforms against the bump (Mellin values, E1 smoothings) pick
their node count from the oscillation across the support; once the
integrand oscillates faster than any practical node count can resolve, the
true value is far below double precision (the bump's transforms decay
super-polynomially) and the transform is treated as zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EULER_GAMMA = 0.57721566490153286061
E_SERIES_CUTOFF = 4.0
_SERIES_TERMS = 64
_CF_MAX_ITER = 400
_TINY = 1e-300

# transforms against the bump: node ladder and give-up threshold
_NODE_LADDER = (64, 128, 256, 512)
_OMEGA_PER_NODE = 0.65  # resolvable oscillation (radians of phase) per node
_OMEGA_SKIP = 320.0


class BranchCutError(ValueError):
    pass


class ConvergenceError(ArithmeticError):
    pass


def _check_cut(z: np.ndarray):
    if np.any(z == 0):
        raise BranchCutError("E1 is undefined at 0")
    on_cut = (z.imag == 0) & (z.real < 0)
    if np.any(on_cut):
        raise BranchCutError("E1 evaluated on the branch cut arg(z) = pi")


def e1_vec(z: np.ndarray) -> np.ndarray:
    """Principal-branch exponential integral E1 on a complex array."""
    z = np.asarray(z, dtype=np.complex128)
    _check_cut(z)
    out = np.empty_like(z)
    small = np.abs(z) <= E_SERIES_CUTOFF
    if np.any(small):
        zs = z[small]
        # E1(z) = -gamma - log z + sum_{n>=1} (-1)^(n+1) z^n / (n n!)
        acc = np.zeros_like(zs)
        term = np.ones_like(zs)
        for n in range(1, _SERIES_TERMS + 1):
            term = term * (-zs) / n
            acc -= term / n
        out[small] = -EULER_GAMMA - np.log(zs) + acc
    if np.any(~small):
        zb = z[~small]
        # modified Lentz on E1(z) = e^(-z) / (z + 1 - 1^2/(z + 3 - 2^2/(...)))
        b = zb + 1.0
        c = np.full_like(zb, 1 / _TINY)
        d = 1.0 / b
        h = d.copy()
        converged = np.zeros(zb.shape, dtype=bool)
        for i in range(1, _CF_MAX_ITER + 1):
            a = -(i * i)
            b = b + 2.0
            d = 1.0 / (a * d + b)
            c = b + a / c
            c[c == 0] = _TINY
            delta = c * d
            h = h * delta
            converged |= np.abs(delta - 1.0) < 1e-15
            if converged.all():
                break
        else:
            if not converged.all():
                raise ConvergenceError("E1 continued fraction did not converge")
        out[~small] = np.exp(-zb) * h
    return out


def e1(z: complex) -> complex:
    """E1(z) for a single complex argument; relative accuracy ~1e-10."""
    return complex(e1_vec(np.array([z]))[0])


def ci_vec(y: np.ndarray) -> np.ndarray:
    """Cosine integral Ci(y) for positive real y."""
    y = np.asarray(y, dtype=np.float64)
    if np.any(y <= 0):
        raise ValueError("Ci requires y > 0")
    out = np.empty_like(y)
    small = y <= E_SERIES_CUTOFF
    if np.any(small):
        ys = y[small]
        # Ci(y) = gamma + log y + sum_{n>=1} (-1)^n y^(2n) / (2n (2n)!)
        acc = np.zeros_like(ys)
        y2 = ys * ys
        term = np.ones_like(ys)
        for n in range(1, _SERIES_TERMS // 2 + 1):
            term = term * (-y2) / ((2 * n - 1) * (2 * n))
            acc += term / (2 * n)
        out[small] = EULER_GAMMA + np.log(ys) + acc
    if np.any(~small):
        # Re E1(iy) = -Ci(y) for real y > 0
        out[~small] = -e1_vec(1j * y[~small]).real
    return out


def ci(y: float) -> float:
    return float(ci_vec(np.array([y]))[0])


# ---------------------------------------------------------------------------
# the bump weight

@dataclass(frozen=True)
class BumpProfile:
    """Quadrature view of a unit-mass smooth weight on [e, e^(1 + q^(-X))].

    The shape is exp(-sharpness / (t (1 - t))) in the affine coordinate t of
    the support; any sharpness > 0 gives an admissible weight, which is how
    the weight-independence of the zero-sum factor gets exercised.
    """

    X: int
    q: int
    base_nodes: int = 64
    sharpness: float = 1.0

    def __post_init__(self):
        if self.X < 1:
            raise ValueError("X must be >= 1")
        object.__setattr__(self, "_cache", {})

    @property
    def lower(self) -> float:
        return math.e

    @property
    def upper(self) -> float:
        return math.exp(1.0 + self.q ** (-self.X))

    @property
    def log_width(self) -> float:
        """Width of log x across the support."""
        return self.q ** (-self.X)

    def nodes(self, n: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """(x_i, W_i) with sum W_i = 1; W_i absorbs the bump values."""
        n = n or self.base_nodes
        cache = self.__dict__["_cache"]
        if n not in cache:
            xi, wi = np.polynomial.legendre.leggauss(n)
            t = (xi + 1.0) / 2.0
            raw = np.exp(-self.sharpness / (t * (1.0 - t)))
            weights = wi * raw
            weights = weights / weights.sum()
            x = self.lower + (self.upper - self.lower) * t
            cache[n] = (x, weights)
        return cache[n]

    def integrate(self, fn, n: int | None = None) -> complex:
        """Quadrature of integral u(x) fn(x) dx."""
        x, w = self.nodes(n)
        return complex(np.sum(w * fn(x)))

    def nodes_for_oscillation(self, omega: float) -> int | None:
        """Node count resolving a phase swing of omega radians, else None."""
        if omega > _OMEGA_SKIP:
            return None
        need = omega / _OMEGA_PER_NODE
        for n in _NODE_LADDER:
            if n >= need and n >= self.base_nodes:
                return n
        return _NODE_LADDER[-1]


def u_mellin(s: complex, bump: BumpProfile) -> complex:
    """Mellin transform of the bump: integral of x^(s-1) u(x) dx."""
    omega = abs(complex(s).imag) * bump.log_width
    n = bump.nodes_for_oscillation(omega)
    if n is None:
        return 0j
    x, w = bump.nodes(n)
    return complex(np.sum(w * np.exp((complex(s) - 1.0) * np.log(x))))


def u_cap(z: complex, bump: BumpProfile) -> complex:
    """U(z) = integral of u(x) E1(z log x) dx."""
    omega = abs(complex(z).imag) * bump.log_width
    n = bump.nodes_for_oscillation(omega)
    if n is None:
        return 0j
    x, w = bump.nodes(n)
    return complex(np.sum(w * e1_vec(complex(z) * np.log(x))))


def u_cap_many(zs: np.ndarray, bump: BumpProfile) -> np.ndarray:
    """Vectorized U over an array of z, bucketed by required node count."""
    zs = np.asarray(zs, dtype=np.complex128)
    out = np.zeros_like(zs)
    omegas = np.abs(zs.imag) * bump.log_width
    needs = np.array([bump.nodes_for_oscillation(float(o)) or -1 for o in omegas])
    for n in np.unique(needs):
        if n < 0:
            continue
        mask = needs == n
        x, w = bump.nodes(int(n))
        args = zs[mask][:, None] * np.log(x)[None, :]
        out[mask] = e1_vec(args) @ w
    return out


def u_mellin_many(ss: np.ndarray, bump: BumpProfile) -> np.ndarray:
    """Vectorized Mellin transform over an array of s."""
    ss = np.asarray(ss, dtype=np.complex128)
    out = np.zeros_like(ss)
    omegas = np.abs(ss.imag) * bump.log_width
    needs = np.array([bump.nodes_for_oscillation(float(o)) or -1 for o in omegas])
    for n in np.unique(needs):
        if n < 0:
            continue
        mask = needs == n
        x, w = bump.nodes(int(n))
        args = (ss[mask][:, None] - 1.0) * np.log(x)[None, :]
        out[mask] = np.exp(args) @ w
    return out
