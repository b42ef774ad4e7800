import math
import random
from fractions import Fraction

import pytest

from fqlfunc import chargroup as cg
from fqlfunc.arith import euler_phi, is_coprime, primes_of_degree
from fqlfunc.fields import field
from fqlfunc.poly import Poly, monic_polys_of_degree, monic_polys_up_to, \
    polys_of_degree_below


def p(q, *cs):
    return Poly(field(q), cs)


def test_unit_group_examples():
    t = p(3, 0, 1)
    g = cg.unit_group(t)
    assert g.phi == 2 and list(g.orders) == [2]
    g2 = cg.unit_group(t * t)
    assert g2.phi == 6 and math.prod(g2.orders) == 6
    g3 = cg.unit_group(t * p(3, 1, 1))
    assert sorted(g3.orders) == [2, 2]


def test_unit_group_rejects_bad_modulus():
    with pytest.raises(ValueError):
        cg.UnitGroup(p(3, 1, 2))  # not monic
    with pytest.raises(ValueError):
        cg.UnitGroup(Poly.one(field(3)))


@pytest.mark.parametrize("q,deg", [(2, 4), (3, 3), (5, 2)])
def test_dlog_roundtrip_exhaustive(q, deg):
    f = field(q)
    for modulus in monic_polys_of_degree(f, deg):
        g = cg.UnitGroup(modulus)  # construction verifies the table
        # orders are exact: generator^order = 1, proper power != 1
        from fqlfunc.poly import powmod
        for gen, order in zip(g.generators, g.orders):
            assert powmod(gen, order, modulus).is_one
            for ell in {d for d in range(2, order + 1) if order % d == 0
                        and all(d % e for e in range(2, d))}:
                assert not powmod(gen, order // ell, modulus).is_one


def test_character_counts():
    t3 = p(3, 0, 1)
    assert len(cg.all_characters(cg.unit_group(t3))) == 2
    t5 = p(5, 0, 1)
    assert len(cg.all_characters(cg.unit_group(t5 * t5))) == 20


def test_character_value_tables_distinct():
    g = cg.unit_group(p(3, 0, 0, 1))
    tables = []
    units = list(g.units())
    for chi in cg.all_characters(g):
        tables.append(tuple(chi.rotation(u) for u in units))
    assert len(set(tables)) == g.phi


def test_evaluate_basics():
    t = p(3, 0, 1)
    g = cg.unit_group(t)
    chi0, chi = cg.all_characters(g)
    assert chi0.is_trivial
    assert chi0(p(3, 1, 1)) == 1
    assert chi(t) == 0
    assert abs(chi(p(3, 2, 1)) - (-1)) < 1e-12  # chi(T+2) = -1


def test_multiplicativity_and_period():
    g = cg.unit_group(p(3, 1, 1, 1))
    for chi in cg.all_characters(g)[:4]:
        for a in monic_polys_up_to(field(3), 2):
            for b in monic_polys_up_to(field(3), 2):
                va, vb, vab = chi(a), chi(b), chi(a * b)
                assert abs(va * vb - vab) < 1e-12
            shifted = a + g.modulus
            assert abs(chi(shifted) - chi(a)) < 1e-12


def test_even_characters():
    t = p(3, 0, 1)
    chars = cg.all_characters(cg.unit_group(t))
    assert chars[0].is_even
    assert not chars[1].is_even  # chi(2) = -1
    # over F_2 the scalar group is trivial: everything is even
    for chi in cg.all_characters(cg.unit_group(p(2, 1, 1, 1))):
        assert chi.is_even


def test_primitivity_examples():
    t = p(3, 0, 1)
    g2 = cg.unit_group(t * t)
    chars = cg.all_characters(g2)
    assert not chars[0].is_primitive  # trivial character never primitive
    prim = [c for c in chars if c.is_primitive]
    assert len(prim) == 4  # phi(T^2) - phi(T)
    for pr_mod in primes_of_degree(field(3), 2):
        g = cg.unit_group(pr_mod)
        for chi in cg.all_characters(g):
            assert chi.is_primitive == (not chi.is_trivial)


@pytest.mark.parametrize("q", [2, 3])
def test_primitivity_kernel_test_matches_definition(q):
    # maximal-divisor kernel test vs the literal induced-modulus definition
    f = field(q)
    from fqlfunc.arith import divisors
    for deg in range(1, 5):
        for modulus in monic_polys_of_degree(f, deg):
            group = cg.UnitGroup(modulus)
            proper = [d for d in divisors(modulus) if d != modulus]
            for chi in cg.all_characters(group):
                literal = not any(chi.induced_by(d) for d in proper)
                assert chi.is_primitive == literal, (modulus, chi.exponents)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_phi_star_matches_enumeration_deg_le_3(q):
    f = field(q)
    for deg in range(1, 4):
        for modulus in monic_polys_of_degree(f, deg):
            group = cg.UnitGroup(modulus)
            enumerated = sum(1 for c in cg.all_characters(group)
                             if c.is_primitive)
            assert cg.phi_star(modulus) == enumerated


def test_phi_star_wild_prime_powers():
    # higher prime powers have non-cyclic one-unit groups whose basis needs
    # the span correction; the divisor formula is the independent count
    cases = [(3, 4), (3, 5), (2, 5), (2, 6)]
    for q, deg in cases:
        f = field(q)
        shift = Poly(f, (1, 1))  # (T+1)^deg exercises a non-zero prime too
        for base in (Poly.x(f), shift):
            modulus = base**deg
            group = cg.UnitGroup(modulus)
            enumerated = sum(1 for c in cg.all_characters(group)
                             if c.is_primitive)
            assert cg.phi_star(modulus) == enumerated, modulus.to_text()


def test_character_multiplicative_on_wild_modulus():
    f = field(3)
    modulus = (Poly.x(f) + Poly.one(f)) ** 5
    group = cg.UnitGroup(modulus)
    chi = next(c for c in cg.all_characters(group) if c.is_primitive)
    units = list(group.units())[::7]
    for u in units:
        for v in units:
            assert abs(chi(u) * chi(v) - chi(u * v)) < 1e-10


def test_phi_star_examples():
    assert cg.phi_star(p(3, 0, 1)) == 1
    assert cg.phi_star(p(5, 0, 0, 1)) == 16
    assert cg.phi_star(p(3, 0, 1) * p(3, 1, 1)) == 1


def test_parity_partition():
    modulus = p(3, 0, 0, 1) * p(3, 1, 1)
    group = cg.unit_group(modulus)
    prim = [c for c in cg.all_characters(group) if c.is_primitive]
    evens = sum(1 for c in prim if c.is_even)
    odds = sum(1 for c in prim if not c.is_even)
    assert evens + odds == cg.phi_star(modulus)


def test_dual_group_completeness():
    # sum over all characters of chi(A) = phi(R) if A = 1 mod R else 0
    for modulus in [p(3, 0, 0, 1), p(3, 1, 1, 1), p(3, 0, 0, 0, 0, 1)]:
        group = cg.unit_group(modulus)
        chars = cg.all_characters(group)
        for u in list(group.units())[:20]:
            total = sum(chi(u) for chi in chars)
            expect = group.phi if (u % modulus).is_one else 0
            assert abs(total - expect) < 1e-9 * group.phi


def test_orthogonality_trivial_cases():
    modulus = p(3, 0, 0, 1)
    one = Poly.one(field(3))
    d, c = cg.orthogonality_sum(modulus, one, one)
    assert abs(d - cg.phi_star(modulus)) < 1e-12
    assert abs(c - cg.phi_star(modulus)) < 1e-12
    # (AB, R) != 1 -> both sides zero
    d, c = cg.orthogonality_sum(modulus, p(3, 0, 1), one)
    assert d == 0 and c == 0


@pytest.mark.parametrize("even_only", [False, True])
def test_orthogonality_random_pairs(even_only):
    rng = random.Random(99)
    f = field(3)
    for modulus in [p(3, 0, 0, 1), p(3, 1, 1) * p(3, 0, 1),
                    p(3, 2, 2, 0, 1)]:
        group = cg.unit_group(modulus)
        for _ in range(25):
            a = Poly(f, [rng.randrange(3) for _ in range(modulus.degree)])
            b = Poly(f, [rng.randrange(3) for _ in range(modulus.degree)])
            d, c = cg.orthogonality_sum(modulus, a, b, even_only=even_only)
            assert abs(d - c) <= 1e-9 * group.phi


def test_conjugate_character():
    group = cg.unit_group(p(3, 0, 0, 1))
    for chi in cg.all_characters(group):
        conj = chi.conjugate()
        for u in group.units():
            assert abs(conj(u) - chi(u).conjugate()) < 1e-12


def test_rotation_values_exact():
    group = cg.unit_group(p(3, 0, 0, 1))
    chi = cg.all_characters(group)[1]
    for u in group.units():
        rot = chi.rotation(u)
        assert isinstance(rot, Fraction)
        assert 0 <= rot < 1


def test_group_cache_roundtrip(tmp_path):
    modulus = p(3, 1, 1, 1)
    group = cg.unit_group(modulus)
    path = cg.save_group_cache(group, str(tmp_path))
    loaded = cg.load_group_cache(modulus, str(tmp_path))
    assert loaded is not None
    assert loaded.orders == group.orders
    assert loaded.generators == group.generators
    assert loaded._dlog == group._dlog
    assert cg.load_group_cache(p(3, 0, 1), str(tmp_path)) is None
    assert path.endswith(".json")


def test_characters_vanish_off_units():
    modulus = p(2, 0, 0, 1)  # T^2 over F_2
    group = cg.unit_group(modulus)
    for chi in cg.all_characters(group):
        for a in polys_of_degree_below(field(2), 2):
            if a.is_zero or not is_coprime(a, modulus):
                assert chi(a) == 0


def test_phi_consistency():
    for modulus in [p(3, 0, 0, 1), p(3, 1, 1, 1), p(2, 1, 1, 0, 1)]:
        assert cg.unit_group(modulus).phi == euler_phi(modulus)
