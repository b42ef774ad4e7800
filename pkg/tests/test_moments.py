import math
import random
from fractions import Fraction

import pytest

from fqlfunc import moments
from fqlfunc.arith import local_dk_sq_sum, primes_of_degree
from fqlfunc.fields import field
from fqlfunc.poly import Poly
from fqlfunc.special import EULER_GAMMA


def p(q, *cs):
    return Poly(field(q), cs)


# -- constants -------------------------------------------------------------------

def test_f_k_values():
    assert moments.f_k(0) == 1
    assert moments.f_k(1) == 1
    assert moments.f_k(2) == Fraction(1, 12)
    assert moments.f_k(3) == Fraction(42, math.factorial(9))
    assert moments.f_k(4) == Fraction(24024, math.factorial(16))


def test_a_k_special_values():
    for q in (2, 3, 5):
        val, tail = moments.a_k(1, q)
        assert val == 1.0  # every local factor is exactly 1
        val2, tail2 = moments.a_k(2, q)
        assert abs(val2 - (1 - 1 / q)) < max(1e-12, 10 * tail2)
    assert moments.a_k(0, 3) == (1.0, 0.0)


def test_a_k_increasing_cutoff_converges():
    v1, _ = moments.a_k(3, 2, degree_cutoff=12)
    v2, t2 = moments.a_k(3, 2, degree_cutoff=40)
    assert abs(v1 - v2) < 1e-3
    assert t2 < 1e-11


# -- local factor identities (exact) ------------------------------------------------

@pytest.mark.parametrize("q", [2, 3])
def test_local_factor_identities_all_primes(q):
    f = field(q)
    for d in range(1, 7):
        for pr in primes_of_degree(f, d):
            x = Fraction(1, pr.norm)
            assert 1 / local_dk_sq_sum(1, x) == 1 - x
            assert 1 / local_dk_sq_sum(2, x) == (1 - x) ** 3 / (1 + x)


# -- Mertens ----------------------------------------------------------------------

def test_mertens_small_value():
    prod, ratio = moments.mertens_product(2, 1)
    assert prod == 4  # (1 - 1/2)^(-2), two degree-1 primes
    assert abs(ratio - 4 / math.exp(EULER_GAMMA)) < 1e-12


def test_mertens_converges():
    _, r15 = moments.mertens_product(2, 15)
    assert abs(r15 - 1) < 0.05
    deviations = [abs(moments.mertens_product(2, n)[1] - 1)
                  for n in range(5, 16)]
    assert all(a >= b for a, b in zip(deviations, deviations[1:]))


# -- harmonic sums -------------------------------------------------------------------

def test_coprime_harmonic_examples():
    t = p(3, 0, 1)
    total, main = moments.coprime_harmonic_sum(t, 2)
    assert total == Fraction(7, 3)
    assert main == Fraction(4, 3)
    total0, _ = moments.coprime_harmonic_sum(t, 0)
    assert total0 == 1
    # error term bounded by a modest multiple of phi(R)/|R|
    assert abs(total - main) <= 2 * Fraction(2, 3)


def test_coprime_harmonic_error_scale():
    modulus = p(3, 0, 1) * p(3, 1, 1) * p(3, 1, 0, 1)
    for x in (4, 6, 10):
        total, main = moments.coprime_harmonic_sum(modulus, x)
        phi_over = Fraction(moments.euler_phi(modulus), modulus.norm)
        assert abs(total - main) <= 3 * phi_over


# -- empirical moments ---------------------------------------------------------------

def test_k_zero_moment_is_one():
    modulus = p(3, 0, 0, 1)
    for kind in ("L", "P", "Z"):
        rep = moments.empirical_moment(modulus, 0, kind, 1)
        assert rep.empirical == 1.0


def test_unit_l_moment():
    rep = moments.empirical_moment(p(3, 0, 1), 1, "L", 1)
    assert rep.empirical == 1.0
    assert rep.phi_star == 1


def test_moment_report_fields():
    modulus = p(3, 0, 0, 1)
    rep = moments.empirical_moment(modulus, 1, "Z", 1)
    assert rep.q == 3 and rep.deg_r == 2 and rep.kind == "Z"
    assert rep.empirical >= 0
    assert rep.phi_star == 4
    assert rep.ratio == rep.empirical / rep.predicted
    d = rep.as_dict()
    assert d["modulus"] == modulus.to_text()
    assert len(rep.csv_row()) == len(moments.MomentReport.CSV_COLUMNS)


def test_moment_rejects_bad_inputs():
    with pytest.raises(ValueError):
        moments.empirical_moment(p(3, 0, 0, 1), 1, "Q", 1)
    with pytest.raises(moments.NoPrimitiveCharactersError):
        moments.empirical_moment(p(2, 0, 1), 1, "L", 1)  # phi*(T) = 0 at q=2


def test_moment_order_invariance():
    # fsum-based averaging is invariant under character permutation
    modulus = primes_of_degree(field(3), 3)[0]
    rep = moments.empirical_moment(modulus, 1, "L", 1)
    rows = moments._primitive_l_rows(moments.unit_group(modulus))
    vals = [abs(lp.eval_s(0.5)) ** 2 for _, lp in rows]
    rng = random.Random(5)
    for _ in range(5):
        rng.shuffle(vals)
        assert math.fsum(vals) / len(vals) == rep.empirical


def test_splitting_ratio_k0():
    rep = moments.splitting_ratio(p(3, 0, 0, 1), 0, 1)
    assert rep.empirical == 1.0
    assert rep.kind == "split"


# -- predictions -----------------------------------------------------------------------

def test_predicted_moment_instantiations():
    modulus = primes_of_degree(field(3), 4)[0]
    deg_r = 4
    eg = math.exp(EULER_GAMMA)
    # hadamard2 for prime R with deg R > X
    val, flag = moments.predicted_moment(modulus, 1, 1, "hadamard2")
    want = deg_r / eg * (1 - 1 / modulus.norm)
    assert abs(val - want) < 1e-12
    # euler with k = 1 and no small prime divisors
    val, _ = moments.predicted_moment(modulus, 1, 1, "euler")
    assert abs(val - eg) < 1e-12
    # L with k = 2 matches the closed fourth-moment form
    val, _ = moments.predicted_moment(modulus, 2, 1, "L")
    x = 1 / modulus.norm
    want = (1 - 1 / 3) / 12 * (1 - x) ** 3 / (1 + x) * deg_r ** 4
    assert abs(val - want) < 1e-12 * want


def test_predicted_moment_regime_flags():
    modulus = primes_of_degree(field(3), 4)[0]
    _, flag = moments.predicted_moment(modulus, 1, 1, "hadamard2")
    assert flag == "in-regime"  # X = 1 <= log_3 4
    _, flag = moments.predicted_moment(modulus, 1, 3, "hadamard2")
    assert flag == "out-of-regime"
    _, flag = moments.predicted_moment(modulus, 2, 2, "hadamard4")
    assert flag == "out-of-regime"  # X <= log_q log deg R unreachable here


def test_predicted_moment_mertens_exact_variant():
    modulus = primes_of_degree(field(3), 4)[0]
    v_asym, _ = moments.predicted_moment(modulus, 1, 1, "hadamard2")
    v_fin, _ = moments.predicted_moment(modulus, 1, 1, "hadamard2",
                                        mertens_exact=True)
    ratio = float(moments.mertens_product(3, 1)[0]) / (math.exp(EULER_GAMMA))
    assert abs(v_asym / v_fin - ratio) < 1e-12


def test_euler_prediction_k1_uses_phi_over_norm():
    # k = 1: prod over deg P <= X, P | R of the local sums inverts to
    # prod (1 - 1/|P|)
    modulus = p(3, 0, 1) * p(3, 1, 1)  # two degree-1 primes
    val, _ = moments.predicted_moment(modulus, 1, 2, "euler")
    eg2 = math.exp(EULER_GAMMA) * 2
    assert abs(val - (1 - Fraction(1, 3)) ** 2 * eg2) < 1e-12


# -- primorials ----------------------------------------------------------------------

def test_primorial_examples():
    f3 = field(3)
    rec1 = moments.primorial(f3, 1)
    assert rec1.m == 0 and rec1.r == 1 and rec1.modulus.degree == 1
    rec3 = moments.primorial(f3, 3)
    assert rec3.m == 1 and rec3.r == 0
    assert rec3.modulus == p(3, 0, 1) * p(3, 1, 1) * p(3, 2, 1)
    rec4 = moments.primorial(f3, 4)
    assert rec4.m == 1 and rec4.r == 1
    assert rec4.modulus.degree == 5


def test_primorial_decomposition_invariant():
    f2 = field(2)
    for n in range(1, 12):
        rec = moments.primorial(f2, n)
        # r is strictly below the next degree's prime count
        assert 0 <= rec.r < moments.prime_count(2, rec.m + 1)
        # reconstruct the stated product shape
        total = sum(moments.prime_count(2, d) for d in range(1, rec.m + 1))
        assert total + rec.r == n


def test_primorial_loglog_tracks_m():
    f2 = field(2)
    for n in (8, 20, 40):
        rec = moments.primorial(f2, n)
        assert abs(rec.loglog_deviation) < 2.0
