"""Command-line client for the fqlfunc service.

Each subcommand builds a request model, posts it to the service (an
in-process ASGI mount by default, or a remote base URL via --server), and
writes the JSON/CSV artifact with the echoed config.  Exit status: 0 on
success, 1 when a gated verification fails, 2 on invalid configuration.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from typing import Optional

import click

from .poly import Poly

_MOMENT_CSV_COLUMNS = ("q", "R", "degR", "k", "X", "kind", "empirical",
                       "predicted", "ratio", "phi_star", "regime_flag")


class ServiceClient:
    """Thin POST wrapper; in-process ASGI mount unless a server URL is given."""

    def __init__(self, server: Optional[str]):
        self._server = server
        if not server:
            from .service.app import app
            self._app = app

    def _post_remote(self, path: str, payload: dict):
        import httpx
        with httpx.Client(base_url=self._server, timeout=3600.0) as client:
            return client.post(path, json=payload)

    def _post_inprocess(self, path: str, payload: dict):
        import asyncio
        import httpx

        async def go():
            transport = httpx.ASGITransport(app=self._app)
            async with httpx.AsyncClient(transport=transport,
                                         base_url="http://service",
                                         timeout=None) as client:
                return await client.post(path, json=payload)

        return asyncio.run(go())

    def post(self, path: str, payload: dict) -> dict:
        resp = (self._post_remote if self._server else self._post_inprocess)(
            path, payload)
        if resp.status_code == 422:
            detail = resp.json().get("detail", resp.text)
            raise click.UsageError(f"invalid request: {detail}")
        if resp.status_code != 200:
            raise click.ClickException(
                f"service error {resp.status_code}: {resp.text[:500]}")
        return resp.json()


def _write_json(data: dict, out: Optional[str]):
    text = json.dumps(data, indent=2)
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text + "\n")
        click.echo(f"wrote {out}", err=True)
    else:
        click.echo(text)


def _write_moment_csv(data: dict, out: Optional[str]):
    buf = io.StringIO()
    buf.write(f"# schema_version={data['schema_version']}\n")
    buf.write(f"# config={json.dumps(data['config'])}\n")
    writer = csv.writer(buf)
    writer.writerow(_MOMENT_CSV_COLUMNS)
    for row in data["rows"]:
        writer.writerow([row["q"], row["modulus"], row["deg_r"], row["k"],
                         row["X"], row["kind"], repr(row["empirical"]),
                         repr(row["predicted"]),
                         "" if row["ratio"] is None else repr(row["ratio"]),
                         row["phi_star"], row["regime_flag"]])
    text = buf.getvalue()
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text)
        click.echo(f"wrote {out}", err=True)
    else:
        click.echo(text, nl=False)


def _check_modulus(q: Optional[int], modulus: str) -> str:
    try:
        m = Poly.from_text(modulus)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if q is not None and m.field.q != q:
        raise click.UsageError(
            f"--q {q} disagrees with modulus field order {m.field.q}")
    return modulus


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Base URL of a running service; default runs in-process.")
@click.option("--cache-dir", envvar="FQLFUNC_CACHE_DIR", default=None,
              help="Directory for character-table caches.")
@click.option("--threads", default=1, show_default=True,
              help="Worker threads for scans.")
@click.pass_context
def main(ctx, server, cache_dir, threads):
    """Dirichlet L-functions over F_q[T]: scans, identities, RMT comparisons."""
    ctx.ensure_object(dict)
    ctx.obj["client"] = ServiceClient(server)
    ctx.obj["cache_dir"] = cache_dir
    ctx.obj["threads"] = threads


@main.command()
@click.option("--q", type=int, required=True)
@click.option("--degree", type=int, required=True)
@click.option("--limit", type=int, default=None)
@click.option("--no-list", is_flag=True, help="Count by formula only.")
@click.option("--out", default="-")
@click.pass_context
def primes(ctx, q, degree, limit, no_list, out):
    """Enumerate/count monic primes of one degree."""
    data = ctx.obj["client"].post("/primes", {
        "q": q, "degree": degree, "limit": limit,
        "include_list": not no_list})
    _write_json(data, out)
    if data["count_enumerated"] is not None \
            and data["count_enumerated"] != data["count_formula"]:
        raise click.ClickException("prime count mismatch between formula and scan")


@main.command("char-table")
@click.option("--q", type=int, default=None)
@click.option("--modulus", required=True)
@click.option("--out", default="-")
@click.pass_context
def char_table(ctx, q, modulus, out):
    """Build the character group mod R; optionally persist the dlog cache."""
    modulus = _check_modulus(q, modulus)
    data = ctx.obj["client"].post("/char-table", {
        "modulus": modulus, "cache_dir": ctx.obj["cache_dir"]})
    _write_json(data, out)
    if data["phi_star"] != data["n_primitive_enumerated"]:
        raise click.ClickException("phi* disagrees with enumerated primitives")


@main.command()
@click.option("--q", type=int, default=None)
@click.option("--modulus", required=True)
@click.option("--all-primitive/--single", default=True)
@click.option("--exponents", default=None,
              help="Comma-separated exponent vector of one character.")
@click.option("--zeros/--no-zeros", default=True)
@click.option("--out", default="-")
@click.pass_context
def lfunc(ctx, q, modulus, all_primitive, exponents, zeros, out):
    """L-polynomial coefficients and zeros per character."""
    modulus = _check_modulus(q, modulus)
    exps = None
    if exponents is not None:
        try:
            exps = [int(t) for t in exponents.split(",")]
        except ValueError:
            raise click.UsageError("--exponents must be comma-separated integers")
    data = ctx.obj["client"].post("/lfunc", {
        "modulus": modulus, "all_primitive": all_primitive,
        "exponents": exps, "zeros": zeros})
    _write_json(data, out)


@main.command("verify-identity")
@click.option("--q", type=int, default=None)
@click.option("--modulus", required=True)
@click.option("--x", "--X", "x_cut", type=int, default=1, show_default=True)
@click.option("--m", "--M", "m_periods", type=int, default=200, show_default=True)
@click.option("--s", default="0.5,0", show_default=True, metavar="RE,IM")
@click.option("--bump-nodes", type=int, default=64, show_default=True)
@click.option("--explicit-m", type=int, default=400, show_default=True)
@click.option("--out", default="-")
@click.pass_context
def verify_identity(ctx, q, modulus, x_cut, m_periods, s, bump_nodes,
                    explicit_m, out):
    """Hybrid-product, short-sum, and explicit-formula checks per character.

    Exit 0 only if every primitive character passes at the configured
    tolerances.
    """
    modulus = _check_modulus(q, modulus)
    try:
        s_re, s_im = (float(t) for t in s.split(","))
    except ValueError:
        raise click.UsageError("--s must look like '0.5,0'")
    data = ctx.obj["client"].post("/verify-identity", {
        "modulus": modulus, "X": x_cut, "M": m_periods,
        "s": (s_re, s_im), "bump_nodes": bump_nodes,
        "explicit_M": explicit_m})
    _write_json(data, out)
    if not data["all_passed"]:
        raise SystemExit(1)


@main.command("moment-scan")
@click.option("--q", type=int, required=True)
@click.option("--deg-r-min", type=int, required=True)
@click.option("--deg-r-max", type=int, required=True)
@click.option("--moduli", type=click.Choice(["all", "primes", "primorials",
                                             "list"]), default="primes",
              show_default=True)
@click.option("--modulus", "modulus_list", multiple=True,
              help="Explicit moduli for --moduli list (repeatable).")
@click.option("--k", type=int, default=1, show_default=True)
@click.option("--x", "--X", "x_cut", type=int, default=1, show_default=True)
@click.option("--kinds", default="L", show_default=True,
              help="Comma-separated subset of L,P,Z,split.")
@click.option("--max-moduli-per-degree", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.option("--out", default="-")
@click.pass_context
def moment_scan(ctx, q, deg_r_min, deg_r_max, moduli, modulus_list, k, x_cut,
                kinds, max_moduli_per_degree, fmt, out):
    """Empirical vs predicted moment averages over a range of moduli."""
    kind_list = [t.strip() for t in kinds.split(",") if t.strip()]
    for t in kind_list:
        if t not in ("L", "P", "Z", "split"):
            raise click.UsageError(f"unknown kind {t!r}")
    if not kind_list:
        raise click.UsageError("--kinds must name at least one of L,P,Z,split")
    data = ctx.obj["client"].post("/moment-scan", {
        "q": q, "deg_r_min": deg_r_min, "deg_r_max": deg_r_max,
        "moduli": moduli, "modulus_list": list(modulus_list) or None,
        "k": k, "X": x_cut, "kinds": kind_list,
        "max_moduli_per_degree": max_moduli_per_degree,
        "threads": ctx.obj["threads"]})
    if fmt == "csv":
        _write_moment_csv(data, out)
    else:
        _write_json(data, out)


@main.command("rmt-compare")
@click.option("--n", "--N", "n_dim", type=int, required=True)
@click.option("--k", type=int, default=1, show_default=True)
@click.option("--samples", type=int, default=1000, show_default=True)
@click.option("--theta", type=float, default=0.0, show_default=True)
@click.option("--x", "--X", "x_cut", type=int, default=1, show_default=True)
@click.option("--q", type=int, default=3, show_default=True)
@click.option("--periods", type=int, default=50, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--streams", type=int, default=1, show_default=True)
@click.option("--no-hadamard", is_flag=True)
@click.option("--out", default="-")
@click.pass_context
def rmt_compare(ctx, n_dim, k, samples, theta, x_cut, q, periods, seed,
                streams, no_hadamard, out):
    """CUE characteristic-polynomial and smoothed-eigenphase averages."""
    data = ctx.obj["client"].post("/rmt-compare", {
        "N": n_dim, "k": k, "samples": samples, "theta": theta, "X": x_cut,
        "q": q, "periods": periods, "seed": seed, "streams": streams,
        "hadamard": not no_hadamard})
    _write_json(data, out)


@main.command("combinatorics-check")
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--triple-max-deg", type=int, default=2, show_default=True)
@click.option("--splitting-samples", type=int, default=200, show_default=True)
@click.option("--gamma-max-deg", type=int, default=4, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", default="-")
@click.pass_context
def combinatorics_check(ctx, q, triple_max_deg, splitting_samples,
                        gamma_max_deg, seed, out):
    """Triple-product bijection, splitting counts, gamma identity; gated."""
    data = ctx.obj["client"].post("/combinatorics-check", {
        "q": q, "triple_max_deg": triple_max_deg,
        "splitting_samples": splitting_samples,
        "gamma_max_deg": gamma_max_deg, "seed": seed})
    _write_json(data, out)
    if not data["all_passed"]:
        raise SystemExit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the service under uvicorn."""
    import uvicorn
    uvicorn.run("fqlfunc.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
