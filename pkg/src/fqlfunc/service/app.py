"""FastAPI front end over the core library.

The service is stateless per request but keeps the process-level caches
(unit groups, prime tables, coefficient rows) warm, which is the point of
running scans against a long-lived worker instead of cold CLI processes.
"""

from __future__ import annotations

import concurrent.futures
import math

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..arith import is_irreducible, prime_count, primes_of_degree
from ..chargroup import (all_characters, phi_star, save_group_cache,
                         unit_group)
from ..combinatorics import (brute_count_coprime_splittings, compose_triple,
                             count_coprime_splittings,
                             decompose_triple_product, gamma_identity_sides,
                             valid_splitting_instances)
from ..fields import field
from ..hybrid import explicit_formula_sides, hybrid_identity_delta
from ..lfunc import (EvaluationAtZeroError, l_polynomial_from_row, l_zeros,
                     short_sum_sides)
from ..moments import MomentReport, empirical_moment, primorial, splitting_ratio
from ..poly import Poly, monic_polys_of_degree
from ..rmt import (char_poly_moment, hadamard_conjecture_surrogate,
                   hadamard_rmt_average, make_rng)
from ..special import BumpProfile
from . import schemas as sch

app = FastAPI(title="fqlfunc", version=__version__)


def _parse_modulus(text: str) -> Poly:
    try:
        m = Poly.from_text(text)
    except (ValueError, TypeError) as exc:
        raise HTTPException(status_code=422, detail=f"bad modulus: {exc}")
    if not m.is_monic or m.degree < 1:
        raise HTTPException(status_code=422,
                            detail="modulus must be monic of degree >= 1")
    return m


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/primes", response_model=sch.PrimesResponse)
def primes(req: sch.PrimesRequest) -> sch.PrimesResponse:
    try:
        f = field(req.q)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    formula = prime_count(req.q, req.degree)
    listed: list[str] = []
    enumerated = None
    if req.include_list:
        ps = primes_of_degree(f, req.degree)
        enumerated = len(ps)
        listed = [p.to_text() for p in ps[: req.limit or len(ps)]]
    return sch.PrimesResponse(config=req.model_dump(), count_formula=formula,
                              count_enumerated=enumerated, primes=listed)


@app.post("/char-table", response_model=sch.CharTableResponse)
def char_table(req: sch.CharTableRequest) -> sch.CharTableResponse:
    modulus = _parse_modulus(req.modulus)
    group = unit_group(modulus)
    chars = all_characters(group)
    infos = [sch.CharacterInfo(exponents=list(c.exponents),
                               is_primitive=c.is_primitive,
                               is_even=c.is_even) for c in chars]
    cache_file = None
    if req.cache_dir:
        cache_file = save_group_cache(group, req.cache_dir)
    return sch.CharTableResponse(
        config=req.model_dump(), modulus=modulus.to_text(),
        generator_orders=list(group.orders), phi=group.phi,
        phi_star=phi_star(modulus),
        n_primitive_enumerated=sum(1 for c in chars if c.is_primitive),
        characters=infos, cache_file=cache_file)


@app.post("/lfunc", response_model=sch.LFuncResponse)
def lfunc_endpoint(req: sch.LFuncRequest) -> sch.LFuncResponse:
    from ..lfunc import coefficient_table
    modulus = _parse_modulus(req.modulus)
    group = unit_group(modulus)
    table = coefficient_table(group)
    entries = []
    for chi in all_characters(group):
        if chi.is_trivial:
            continue
        if req.exponents is not None:
            if list(chi.exponents) != req.exponents:
                continue
        elif req.all_primitive and not chi.is_primitive:
            continue
        lp = l_polynomial_from_row(chi, table[chi.exponents])
        entry = sch.LFuncEntry(
            exponents=list(chi.exponents), is_even=chi.is_even,
            coefficients=[(c.real, c.imag) for c in lp.coeffs],
            value_half=((v := lp.eval_s(0.5)).real, v.imag))
        if req.zeros:
            zs = l_zeros(lp)
            entry.zeros_u = [(u.real, u.imag) for u in zs.u_roots]
            entry.zero_classes = zs.classes
            entry.n_other_class = zs.n_other
        entries.append(entry)
    if req.exponents is not None and not entries:
        raise HTTPException(status_code=422,
                            detail="no non-trivial character with those exponents")
    return sch.LFuncResponse(config=req.model_dump(), modulus=modulus.to_text(),
                             q=modulus.field.q, entries=entries)


@app.post("/verify-identity", response_model=sch.VerifyIdentityResponse)
def verify_identity(req: sch.VerifyIdentityRequest) -> sch.VerifyIdentityResponse:
    from ..lfunc import coefficient_table
    modulus = _parse_modulus(req.modulus)
    group = unit_group(modulus)
    q = modulus.field.q
    bump = BumpProfile(X=req.X, q=q, base_nodes=req.bump_nodes)
    table = coefficient_table(group)
    s = complex(*req.s)
    s_exp = complex(*req.explicit_s)
    records = []
    for chi in all_characters(group):
        if chi.is_trivial or not chi.is_primitive:
            continue
        lp = l_polynomial_from_row(chi, table[chi.exponents])
        scale = max(abs(c) for c in lp.coeffs)
        at_zero = abs(lp.eval_s(s)) < 1e-10 * scale
        hybrid_err = None
        if not at_zero:
            delta = hybrid_identity_delta(chi, s, req.X, bump, req.M, lp)
            hybrid_err = delta["rel_error"]
        lhs, rhs = short_sum_sides(lp)
        ss_err = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)
        exp_err = None
        try:
            el, er = explicit_formula_sides(chi, s_exp, req.X, bump,
                                            req.explicit_M, lp)
            exp_err = float(abs(el - er) / max(abs(el), 1e-12))
        except EvaluationAtZeroError:
            pass
        ok = bool(ss_err <= req.short_sum_rtol
                  and (hybrid_err is None or hybrid_err <= req.hybrid_rtol)
                  and (exp_err is None or exp_err <= req.explicit_rtol))
        records.append(sch.IdentityRecord(
            exponents=list(chi.exponents), hybrid_rel_error=hybrid_err,
            hybrid_skipped_at_zero=at_zero, short_sum_rel_error=ss_err,
            explicit_rel_error=exp_err, passed=ok))
    return sch.VerifyIdentityResponse(
        config=req.model_dump(), modulus=modulus.to_text(),
        n_characters=len(records), records=records,
        all_passed=all(r.passed for r in records))


def _scan_moduli(req: sch.MomentScanRequest) -> list[Poly]:
    f = field(req.q)
    out: list[Poly] = []
    if req.moduli == "list":
        if not req.modulus_list:
            raise HTTPException(status_code=422,
                                detail="moduli='list' needs modulus_list")
        return [_parse_modulus(t) for t in req.modulus_list]
    if req.moduli == "primorials":
        n = 1
        while True:
            rec = primorial(f, n)
            d = rec.modulus.degree
            if d > req.deg_r_max:
                break
            if d >= req.deg_r_min:
                out.append(rec.modulus)
            n += 1
        return out
    for d in range(req.deg_r_min, req.deg_r_max + 1):
        if req.moduli == "primes":
            group = list(primes_of_degree(f, d))
        else:  # all monic of the degree
            group = list(monic_polys_of_degree(f, d))
        if req.max_moduli_per_degree:
            group = group[: req.max_moduli_per_degree]
        out.extend(group)
    return out


@app.post("/moment-scan", response_model=sch.MomentScanResponse)
def moment_scan(req: sch.MomentScanRequest) -> sch.MomentScanResponse:
    moduli = _scan_moduli(req)
    if not moduli:
        raise HTTPException(status_code=422, detail="empty scan range")
    jobs = []
    for m in moduli:
        if phi_star(m) < 1:
            continue
        for kind in req.kinds:
            jobs.append((m, kind))

    def run(job) -> MomentReport:
        m, kind = job
        if kind == "split":
            return splitting_ratio(m, req.k, req.X)
        return empirical_moment(m, req.k, kind, req.X)

    if req.threads > 1:
        with concurrent.futures.ThreadPoolExecutor(req.threads) as pool:
            reports = list(pool.map(run, jobs))
    else:
        reports = [run(j) for j in jobs]
    rows = [sch.MomentRow(
        q=r.q, modulus=r.modulus, deg_r=r.deg_r, k=r.k, X=r.X, kind=r.kind,
        empirical=r.empirical, predicted=r.predicted, ratio=r.ratio,
        phi_star=r.phi_star, regime_flag=r.regime_flag, wall_time=r.wall_time)
        for r in reports]
    return sch.MomentScanResponse(config=req.model_dump(), rows=rows)


@app.post("/rmt-compare", response_model=sch.RmtCompareResponse)
def rmt_compare(req: sch.RmtCompareRequest) -> sch.RmtCompareResponse:
    est = char_poly_moment(req.N, req.k, req.theta, req.samples,
                           seed=req.seed, streams=req.streams)
    asym = float(req.N) ** (req.k * req.k)
    from ..moments import f_k
    asym *= float(f_k(req.k))
    had_mean = had_se = had_sur = None
    if req.hadamard:
        had = hadamard_rmt_average(req.N, req.X, req.q, req.k, req.periods,
                                   req.samples, seed=req.seed,
                                   streams=req.streams)
        had_mean, had_se = had.mean, had.std_error
        had_sur = hadamard_conjecture_surrogate(req.N, req.X, req.q, req.k)
    return sch.RmtCompareResponse(
        config=req.model_dump(), char_poly_mean=est.mean,
        char_poly_std_error=est.std_error, char_poly_asymptotic=asym,
        hadamard_mean=had_mean, hadamard_std_error=had_se,
        hadamard_surrogate=had_sur)


@app.post("/combinatorics-check", response_model=sch.CombinatoricsResponse)
def combinatorics_check(req: sch.CombinatoricsRequest) -> sch.CombinatoricsResponse:
    f = field(req.q)
    monics = [p for d in range(0, req.triple_max_deg + 1)
              for p in monic_polys_of_degree(f, d)]
    triples = failed_triples = 0
    import itertools
    for a in itertools.product(monics, repeat=3):
        pa = a[0] * a[1] * a[2]
        for b in itertools.product(monics, repeat=3):
            if pa != b[0] * b[1] * b[2]:
                continue
            triples += 1
            try:
                dec = decompose_triple_product(a, b)
                back_a, back_b = compose_triple(dec)
                if back_a != a or back_b != b or not dec.check_coprimality():
                    failed_triples += 1
            except (ValueError, ArithmeticError):
                failed_triples += 1
    rng = make_rng(req.seed, 0)
    instances = valid_splitting_instances(f, rng, req.splitting_samples)
    split_failed = 0
    for inst in instances:
        if count_coprime_splittings(*inst) != brute_count_coprime_splittings(*inst):
            split_failed += 1
    gamma_checked = gamma_failed = 0
    from ..poly import monic_polys_up_to
    for b3 in monic_polys_up_to(f, req.gamma_max_deg):
        gamma_checked += 1
        lhs, rhs = gamma_identity_sides(b3)
        if lhs != rhs:
            gamma_failed += 1
    return sch.CombinatoricsResponse(
        config=req.model_dump(), triples_checked=triples,
        triples_failed=failed_triples, splittings_checked=len(instances),
        splittings_failed=split_failed, gamma_checked=gamma_checked,
        gamma_failed=gamma_failed,
        all_passed=not (failed_triples or split_failed or gamma_failed))
