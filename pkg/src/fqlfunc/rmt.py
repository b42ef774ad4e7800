"""CUE sampling and the random-matrix side of the moment comparisons.

Haar unitaries come from QR of a complex Ginibre matrix with the usual
R-diagonal phase fix.  Randomness is counter-based (Philox) with one key
per stream, so parallel Monte Carlo runs are reproducible and order
independent.  The Hadamard-side average smooths the cosine integral
against the bump over every eigenphase and its 2*pi translates; the
scalar profile c -> integral of u(x) Ci(c log x) dx is tabulated once and
interpolated, which turns the triple loop into table lookups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .moments import f_k
from .special import EULER_GAMMA, BumpProfile, ci_vec

UNITARITY_TOL = 1e-12


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator with a per-stream key."""
    return np.random.Generator(np.random.Philox(key=(seed << 17) ^ stream))


@dataclass(frozen=True)
class UnitarySample:
    """Eigenphases of one Haar-distributed unitary, sorted in (-pi, pi]."""

    n: int
    phases: np.ndarray
    seed: int
    stream: int


def sample_haar_unitary(n: int, rng: np.random.Generator,
                        seed: int = 0, stream: int = 0) -> UnitarySample:
    """QR-based Haar sample; raises if unitarity degrades past 1e-12."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    resid = np.max(np.abs(q @ q.conj().T - np.eye(n)))
    if resid >= UNITARITY_TOL:
        raise ArithmeticError(f"unitarity residual {resid:.2e} too large")
    phases = np.sort(np.angle(np.linalg.eigvals(q)))
    return UnitarySample(n, phases, seed, stream)


def char_poly_abs2k(phases: np.ndarray, theta: float, k: int) -> float:
    """|det(I - U e^(-i theta))|^(2k) from the eigenphases."""
    vals = 1.0 - np.exp(1j * (phases - theta))
    return float(np.prod(np.abs(vals) ** 2) ** k)


@dataclass
class MonteCarloEstimate:
    mean: float
    std_error: float
    samples: int


def char_poly_moment(n: int, k: int, theta: float, samples: int,
                     seed: int = 0, streams: int = 1) -> MonteCarloEstimate:
    """Monte Carlo E|Z(U, theta)|^(2k) over Haar unitaries."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return MonteCarloEstimate(1.0, 0.0, samples)
    per = [0] * streams
    for i in range(samples):
        per[i % streams] += 1
    vals = []
    for stream, count in enumerate(per):
        rng = make_rng(seed, stream)
        for _ in range(count):
            s = sample_haar_unitary(n, rng, seed, stream)
            vals.append(char_poly_abs2k(s.phases, theta, k))
    arr = np.array(vals)
    return MonteCarloEstimate(float(arr.mean()),
                              float(arr.std(ddof=1) / math.sqrt(len(arr)))
                              if len(arr) > 1 else 0.0,
                              samples)


def cue_moment_exact_smalln(n: int, k: int, grid: int = 64) -> float:
    """E|Z|^(2k) by direct integration of the eigenvalue density, n <= 3.

    The integrand is a trigonometric polynomial, so a uniform grid beyond
    its bandwidth integrates it exactly.
    """
    if n > 3:
        raise ValueError("exact oracle is for n <= 3")
    thetas = np.linspace(-math.pi, math.pi, grid, endpoint=False)
    mesh = np.meshgrid(*([thetas] * n), indexing="ij")
    flat = [m.ravel() for m in mesh]
    dens = np.ones_like(flat[0])
    for i in range(n):
        for j in range(i + 1, n):
            dens = dens * np.abs(np.exp(1j * flat[i]) - np.exp(1j * flat[j])) ** 2
    integrand = dens
    for i in range(n):
        integrand = integrand * np.abs(1 - np.exp(1j * flat[i])) ** (2 * k)
    norm = dens.mean()
    return float(integrand.mean() / norm)


# ---------------------------------------------------------------------------
# the smoothed-Ci average that models the Hadamard factor

class CiBumpProfileTable:
    """Interpolation table for g(c) = integral of u(x) Ci(c log x) dx.

    Linear in c on a dense grid above c0; below c0 the log singularity of
    Ci is handled by the exact small-argument form g(c) = gamma + log c + h
    with h tabulated on a log grid.  Beyond the oscillation cutoff the
    transform is below double precision and reads 0.
    """

    def __init__(self, bump: BumpProfile, c_max: float, nodes: int = 256,
                 grid_step: float = 0.02):
        self.bump = bump
        self.c_max = c_max
        x, w = bump.nodes(nodes)
        logx = np.log(x)
        self._logx = logx
        self._w = w
        self.c0 = 0.5
        # small-c table: h(c) = g(c) - (gamma + log c) is smooth in log c
        cs_small = np.exp(np.linspace(math.log(1e-9), math.log(self.c0), 200))
        hs = []
        for c in cs_small:
            g = float(np.sum(w * ci_vec(c * logx)))
            hs.append(g - (EULER_GAMMA + math.log(c)))
        self._small_logc = np.log(cs_small)
        self._small_h = np.array(hs)
        # dense linear table above c0
        count = max(16, int((c_max - self.c0) / grid_step) + 2)
        cs = np.linspace(self.c0, c_max, count)
        mat = ci_vec(cs[:, None] * logx[None, :])
        self._cs = cs
        self._gs = mat @ w

    def __call__(self, c: np.ndarray) -> np.ndarray:
        c = np.asarray(c, dtype=np.float64)
        out = np.zeros_like(c)
        small = c < self.c0
        if np.any(small):
            h = np.interp(np.log(c[small]), self._small_logc, self._small_h)
            out[small] = EULER_GAMMA + np.log(c[small]) + h
        big = ~small
        if np.any(big):
            out[big] = np.interp(c[big], self._cs, self._gs)
        return out


def hadamard_rmt_average(n: int, X: int, q: int, k: int, m_periods: int,
                         samples: int, seed: int = 0,
                         bump: Optional[BumpProfile] = None,
                         streams: int = 1) -> MonteCarloEstimate:
    """Monte Carlo CUE average of exp(2k sum_n integral u Ci(|theta_n,m| c log x))
    with c = (log q) X, eigenphases periodized by 2 pi m, |m| <= m_periods."""
    if k == 0:
        return MonteCarloEstimate(1.0, 0.0, samples)
    bump = bump or BumpProfile(X=X, q=q)
    scale = math.log(q) * X
    # largest |theta + 2 pi m| seen: (2 m_periods + 1) pi
    c_max = scale * (2 * m_periods + 1) * math.pi * 1.01 + 1.0
    # beyond the oscillation cutoff the profile reads zero; cap the table there
    cutoff_c = 320.0 / bump.log_width
    table = CiBumpProfileTable(bump, min(c_max, cutoff_c))
    shifts = 2 * math.pi * np.arange(-m_periods, m_periods + 1)
    per = [0] * streams
    for i in range(samples):
        per[i % streams] += 1
    vals = []
    for stream, count in enumerate(per):
        rng = make_rng(seed, stream)
        for _ in range(count):
            s = sample_haar_unitary(n, rng, seed, stream)
            phases = s.phases.copy()
            phases[np.abs(phases) < 1e-12] = 1e-12  # measure-zero guard
            cvals = np.abs(phases[:, None] + shifts[None, :]) * scale
            cvals = np.clip(cvals, 1e-12, None)
            inside = cvals <= table.c_max
            total = float(np.sum(table(cvals[inside])))
            vals.append(math.exp(2 * k * total))
    arr = np.array(vals)
    return MonteCarloEstimate(float(arr.mean()),
                              float(arr.std(ddof=1) / math.sqrt(len(arr)))
                              if len(arr) > 1 else 0.0,
                              samples)


def hadamard_conjecture_surrogate(n: int, X: int, q: int, k: int) -> float:
    """f(k) (N / (log q * e^gamma * X))^(k^2), the matrix-side prediction."""
    return float(f_k(k)) * (n / (math.log(q) * math.exp(EULER_GAMMA) * X)) ** (k * k)
