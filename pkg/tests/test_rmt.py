import math

import numpy as np
import pytest
from scipy import stats

from fqlfunc import rmt
from fqlfunc.special import BumpProfile


def test_unitarity_invariant():
    rng = rmt.make_rng(1, 0)
    s = rmt.sample_haar_unitary(12, rng)
    assert s.n == 12
    assert len(s.phases) == 12
    assert np.all(np.diff(s.phases) >= 0)
    assert np.all((s.phases > -math.pi) & (s.phases <= math.pi))


def test_n1_phase_uniform_ks():
    rng = rmt.make_rng(2024, 0)
    phases = [rmt.sample_haar_unitary(1, rng).phases[0] for _ in range(10_000)]
    res = stats.kstest(np.array(phases), stats.uniform(-math.pi, 2 * math.pi).cdf)
    assert res.pvalue > 0.01


def test_trace_mean_near_zero():
    rng = rmt.make_rng(7, 0)
    traces = []
    for _ in range(10_000):
        s = rmt.sample_haar_unitary(4, rng)
        traces.append(np.sum(np.exp(1j * s.phases)))
    arr = np.array(traces)
    se = arr.real.std(ddof=1) / math.sqrt(len(arr))
    assert abs(arr.real.mean()) < 3 * se + 1e-12
    se_im = arr.imag.std(ddof=1) / math.sqrt(len(arr))
    assert abs(arr.imag.mean()) < 3 * se_im + 1e-12


def test_sorted_phase_density_chi2_n2():
    # sorted smaller eigenphase of a 2x2 CUE sample: density
    # g(a) = (2 (pi - a) - 2 sin(pi - a)) / (4 pi^2) on (-pi, pi)
    rng = rmt.make_rng(11, 0)
    lows = np.array([rmt.sample_haar_unitary(2, rng).phases[0]
                     for _ in range(10_000)])
    edges = np.linspace(-math.pi, math.pi, 21)

    def cdf_density(a):
        return (2 * (math.pi - a) - 2 * math.sin(math.pi - a)) / (4 * math.pi**2)

    from scipy.integrate import quad
    probs = np.array([quad(cdf_density, lo, hi)[0]
                      for lo, hi in zip(edges[:-1], edges[1:])])
    probs /= probs.sum()
    counts, _ = np.histogram(lows, edges)
    res = stats.chisquare(counts, probs * len(lows))
    assert res.pvalue > 0.01


def test_char_poly_moment_n1_k1():
    # E|1 - e^(i theta)|^2 = 2 for a uniform phase
    est = rmt.char_poly_moment(1, 1, 0.0, 4000, seed=3)
    assert abs(est.mean - 2) < 5 * est.std_error + 0.05


def test_char_poly_moment_k0_exact():
    est = rmt.char_poly_moment(5, 0, 0.3, 17, seed=1)
    assert est.mean == 1.0 and est.std_error == 0.0


def test_exact_small_n_oracle():
    # E|Z|^2 = N + 1; general closed form prod_j j!(j+2k)!/((j+k)!)^2
    for n in (1, 2, 3):
        assert abs(rmt.cue_moment_exact_smalln(n, 1) - (n + 1)) < 1e-9
    want = 1.0
    for j in range(3):
        want *= math.factorial(j) * math.factorial(j + 4) \
            / math.factorial(j + 2) ** 2
    assert abs(rmt.cue_moment_exact_smalln(3, 2) - want) < 1e-9
    with pytest.raises(ValueError):
        rmt.cue_moment_exact_smalln(4, 1)


def test_monte_carlo_matches_exact_oracle():
    est = rmt.char_poly_moment(3, 1, 0.0, 20_000, seed=5)
    exact = rmt.cue_moment_exact_smalln(3, 1)
    assert abs(est.mean - exact) / exact < 0.02


def test_theta_independence():
    a = rmt.char_poly_moment(8, 1, 0.0, 4000, seed=21)
    b = rmt.char_poly_moment(8, 1, 1.1, 4000, seed=22)
    sigma = math.hypot(a.std_error, b.std_error)
    assert abs(a.mean - b.mean) < 3 * sigma + 0.05


def test_determinism_fixed_seed():
    a = rmt.char_poly_moment(6, 1, 0.0, 300, seed=9)
    b = rmt.char_poly_moment(6, 1, 0.0, 300, seed=9)
    assert a.mean == b.mean and a.std_error == b.std_error
    h1 = rmt.hadamard_rmt_average(8, 1, 3, 1, 10, 100, seed=4)
    h2 = rmt.hadamard_rmt_average(8, 1, 3, 1, 10, 100, seed=4)
    assert h1.mean == h2.mean


def test_streams_partition_samples():
    one = rmt.char_poly_moment(4, 1, 0.0, 600, seed=13, streams=1)
    four = rmt.char_poly_moment(4, 1, 0.0, 600, seed=13, streams=4)
    # different stream decomposition, same sample budget, consistent stats
    assert one.samples == four.samples == 600
    sigma = math.hypot(one.std_error, four.std_error)
    assert abs(one.mean - four.mean) < 5 * sigma + 0.1


def test_hadamard_average_k0():
    est = rmt.hadamard_rmt_average(5, 1, 3, 0, 10, 10, seed=0)
    assert est.mean == 1.0


def test_hadamard_truncation_stability():
    a = rmt.hadamard_rmt_average(10, 1, 3, 1, 10, 300, seed=17)
    b = rmt.hadamard_rmt_average(10, 1, 3, 1, 50, 300, seed=17)
    assert abs(a.mean - b.mean) / b.mean < 0.05


def test_hadamard_surrogate_value():
    sur = rmt.hadamard_conjecture_surrogate(20, 1, 3, 1)
    want = 20 / (math.log(3) * math.exp(0.5772156649015329))
    assert abs(sur - want) < 1e-12


def test_ci_bump_table_accuracy():
    bump = BumpProfile(X=1, q=3)
    table = rmt.CiBumpProfileTable(bump, 50.0)
    from fqlfunc.special import ci_vec
    x, w = bump.nodes(256)
    logx = np.log(x)
    for c in (0.01, 0.2, 0.7, 3.3, 17.0, 42.0):
        direct = float(np.sum(w * ci_vec(c * logx)))
        assert abs(float(table(np.array([c]))[0]) - direct) < 2e-4


def test_rejects_bad_dimension():
    rng = rmt.make_rng(0, 0)
    with pytest.raises(ValueError):
        rmt.sample_haar_unitary(0, rng)
