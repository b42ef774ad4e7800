"""Dirichlet L-functions over F_q[T]: exact arithmetic, hybrid
Euler-Hadamard factorization, and moment experiments at desk scale."""

__version__ = "0.1.0"

from .arith import (Factorization, d_k, euler_phi, factorize, is_irreducible,
                    mobius, omega, prime_count, primes_of_degree, radical,
                    von_mangoldt_deg)
from .chargroup import (DirichletCharacter, UnitGroup, all_characters,
                        orthogonality_sum, phi_star, primitive_characters,
                        unit_group)
from .combinatorics import (count_coprime_splittings,
                            decompose_triple_product, gamma_identity_sides,
                            gamma_weight)
from .fields import Field, FieldSpec, field
from .hybrid import (CoefficientSystem, explicit_formula_sides, p_series_eval,
                     p_x_eval, z_x_from_zeros, z_x_quotient)
from .lfunc import (LPolynomial, ZeroSet, l_coeffs, l_eval, l_zeros,
                    rh_report, short_sum_sides)
from .moments import (MomentReport, PrimorialRecord, a_k, coprime_harmonic_sum,
                      empirical_moment, f_k, mertens_product, predicted_moment,
                      primorial, splitting_ratio)
from .poly import NEG_INF, Poly, poly_gcd
from .rmt import (char_poly_moment, hadamard_rmt_average, make_rng,
                  sample_haar_unitary)
from .special import BumpProfile, ci, e1, u_cap, u_mellin

__all__ = [
    "__version__",
    "Field", "FieldSpec", "field",
    "Poly", "NEG_INF", "poly_gcd",
    "Factorization", "factorize", "is_irreducible", "prime_count",
    "primes_of_degree", "mobius", "euler_phi", "von_mangoldt_deg", "omega",
    "radical", "d_k",
    "UnitGroup", "DirichletCharacter", "unit_group", "all_characters",
    "primitive_characters", "phi_star", "orthogonality_sum",
    "LPolynomial", "ZeroSet", "l_coeffs", "l_eval", "l_zeros", "rh_report",
    "short_sum_sides",
    "BumpProfile", "e1", "ci", "u_cap", "u_mellin",
    "CoefficientSystem", "p_x_eval", "p_series_eval", "z_x_quotient",
    "z_x_from_zeros", "explicit_formula_sides",
    "MomentReport", "PrimorialRecord", "empirical_moment", "splitting_ratio",
    "a_k", "f_k", "predicted_moment", "mertens_product",
    "coprime_harmonic_sum", "primorial",
    "count_coprime_splittings", "decompose_triple_product", "gamma_weight",
    "gamma_identity_sides",
    "sample_haar_unitary", "char_poly_moment", "hadamard_rmt_average",
    "make_rng",
]
