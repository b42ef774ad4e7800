"""Pydantic request/response models for the compute service.

Every response carries schema_version and an echo of the resolved request,
so written artifacts are reproducible from their own headers.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

SCHEMA_VERSION = 1


class ServiceResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    config: dict


# -- primes -------------------------------------------------------------------

class PrimesRequest(BaseModel):
    q: int = Field(ge=2, le=4096)
    degree: int = Field(ge=1, le=16)
    include_list: bool = True
    limit: Optional[int] = Field(default=None, ge=1)


class PrimesResponse(ServiceResponse):
    count_formula: int
    count_enumerated: Optional[int]
    primes: list[str]


# -- character tables -----------------------------------------------------------

class CharTableRequest(BaseModel):
    modulus: str  # canonical text form, e.g. "q=3:[0,0,1]"
    cache_dir: Optional[str] = None


class CharacterInfo(BaseModel):
    exponents: list[int]
    is_primitive: bool
    is_even: bool


class CharTableResponse(ServiceResponse):
    modulus: str
    generator_orders: list[int]
    phi: int
    phi_star: int
    n_primitive_enumerated: int
    characters: list[CharacterInfo]
    cache_file: Optional[str]


# -- L-functions -----------------------------------------------------------------

class LFuncRequest(BaseModel):
    modulus: str
    all_primitive: bool = True
    exponents: Optional[list[int]] = None  # single character when given
    zeros: bool = True

    @field_validator("exponents")
    @classmethod
    def _exps_or_all(cls, v, info):
        return v


class LFuncEntry(BaseModel):
    exponents: list[int]
    is_even: bool
    coefficients: list[tuple[float, float]]  # (re, im), degree order
    value_half: tuple[float, float]
    zeros_u: Optional[list[tuple[float, float]]] = None
    zero_classes: Optional[list[str]] = None
    n_other_class: Optional[int] = None


class LFuncResponse(ServiceResponse):
    modulus: str
    q: int
    entries: list[LFuncEntry]


# -- identity verification ---------------------------------------------------------

class VerifyIdentityRequest(BaseModel):
    modulus: str
    X: int = Field(default=1, ge=1, le=12)
    M: int = Field(default=200, ge=1)
    s: tuple[float, float] = (0.5, 0.0)
    bump_nodes: int = Field(default=64, ge=8)
    explicit_s: tuple[float, float] = (2.0, 0.0)
    explicit_M: int = Field(default=400, ge=1)
    hybrid_rtol: float = 1e-3
    short_sum_rtol: float = 1e-8
    explicit_rtol: float = 1e-4


class IdentityRecord(BaseModel):
    exponents: list[int]
    hybrid_rel_error: Optional[float]
    hybrid_skipped_at_zero: bool
    short_sum_rel_error: float
    explicit_rel_error: Optional[float]
    passed: bool


class VerifyIdentityResponse(ServiceResponse):
    modulus: str
    n_characters: int
    records: list[IdentityRecord]
    all_passed: bool


# -- moment scans -----------------------------------------------------------------

class MomentScanRequest(BaseModel):
    q: int = Field(ge=2, le=4096)
    deg_r_min: int = Field(ge=1)
    deg_r_max: int = Field(ge=1)
    moduli: Literal["all", "primes", "primorials", "list"] = "primes"
    modulus_list: Optional[list[str]] = None
    k: int = Field(default=1, ge=0, le=4)
    X: int = Field(default=1, ge=1, le=12)
    kinds: list[Literal["L", "P", "Z", "split"]] = ["L"]
    max_moduli_per_degree: Optional[int] = Field(default=None, ge=1)
    threads: int = Field(default=1, ge=1, le=64)

    @field_validator("deg_r_max")
    @classmethod
    def _range_ok(cls, v, info):
        lo = info.data.get("deg_r_min")
        if lo is not None and v < lo:
            raise ValueError("deg_r_max must be >= deg_r_min")
        return v


class MomentRow(BaseModel):
    q: int
    modulus: str
    deg_r: int
    k: int
    X: int
    kind: str
    empirical: float
    predicted: float
    ratio: Optional[float]
    phi_star: int
    regime_flag: str
    wall_time: float


class MomentScanResponse(ServiceResponse):
    rows: list[MomentRow]


# -- RMT --------------------------------------------------------------------------

class RmtCompareRequest(BaseModel):
    N: int = Field(ge=1, le=256)
    k: int = Field(default=1, ge=0, le=4)
    samples: int = Field(default=1000, ge=1)
    theta: float = 0.0
    X: int = Field(default=1, ge=1, le=12)
    q: int = Field(default=3, ge=2)
    periods: int = Field(default=50, ge=1)
    seed: int = 0
    streams: int = Field(default=1, ge=1, le=64)
    hadamard: bool = True


class RmtCompareResponse(ServiceResponse):
    char_poly_mean: float
    char_poly_std_error: float
    char_poly_asymptotic: float
    hadamard_mean: Optional[float]
    hadamard_std_error: Optional[float]
    hadamard_surrogate: Optional[float]


# -- combinatorics ------------------------------------------------------------------

class CombinatoricsRequest(BaseModel):
    q: int = Field(default=2, ge=2, le=9)
    triple_max_deg: int = Field(default=2, ge=1, le=3)
    splitting_samples: int = Field(default=200, ge=1)
    gamma_max_deg: int = Field(default=4, ge=1, le=8)
    seed: int = 0


class CombinatoricsResponse(ServiceResponse):
    triples_checked: int
    triples_failed: int
    splittings_checked: int
    splittings_failed: int
    gamma_checked: int
    gamma_failed: int
    all_passed: bool
