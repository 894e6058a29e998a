"""Command-line interface: ``akproj p1 | verdict | table | cells | verify``."""
from __future__ import annotations

import csv
import io
import json
import sys
from typing import Iterable, List, Optional

import click

from . import catalog, obstruction, steenrod, verification
from .catalog import CITE
from .fp import FieldError, as_prime

SPACES = {
    "BSU": lambda n: steenrod.RootModel("chern", n),
    "BSO_odd": lambda n: steenrod.RootModel("pontrjagin", n),
    "BSO_even": lambda n: steenrod.RootModel("pontrjagin_euler", n),
    "BSp": lambda n: steenrod.RootModel("pontrjagin", n, prefix="q"),
    "BSpin8": lambda n: steenrod.RootModel("pontrjagin_euler", 4),
}
EXCEPTIONAL = ("BE6", "BE8")


class InvalidInput(click.ClickException):
    exit_code = 2


def dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def emit(command: dict, payload, citations: Iterable[str], status: str = "ok", pretty: Optional[str] = None):
    if pretty is not None:
        click.echo(pretty)
        return
    click.echo(dump({"command": command, "payload": payload,
                     "citations": sorted(set(citations)), "status": status}))


def fail_invalid(command: dict, err: Exception):
    click.echo(dump({"command": command, "status": "invalid",
                     "payload": {"error": type(err).__name__, "message": str(err)}, "citations": []}))
    sys.exit(2)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Steenrod P^1 computations and A_k verdicts for projections G -> H."""


# ---------------------------------------------------------------- p1

@main.command()
@click.option("--space", required=True, type=click.Choice(sorted(SPACES) + list(EXCEPTIONAL)))
@click.option("--param", type=int, default=None, help="n for BSU(n), BSO(2n+1), BSO(2n), BSp(n)")
@click.option("--prime", "p", required=True, type=int)
@click.option("--class", "klass", required=True, help="generator name, e.g. c2, p1, e4, x16")
@click.option("--method", type=click.Choice(["roots", "wu", "both"]), default="roots")
@click.option("--pretty", is_flag=True)
def p1(space, param, p, klass, method, pretty):
    """P^1 of a generator of H^*(BG; F_p)."""
    cmd = {"name": "p1", "space": space, "param": param, "prime": p, "class": klass, "method": method}
    try:
        P = as_prime(p).require_odd()
        if space in EXCEPTIONAL:
            sol = steenrod.p1_exceptional(space[1:], klass, P)
            payload = {"terms": sol.to_json(), "degree": sol.degree, "notes": sol.notes}
            cites = [CITE["e8"]] + ([CITE["e6"]] if space == "BE6" else [])
            text = "\n".join(f"{t['coefficient'] if t['status'] == 'unique' else '?'}  {t['monomial']}"
                             f"  [{t['status']}]" for t in payload["terms"])
            return emit(cmd, payload, cites, pretty=text if pretty else None)
        if space != "BSpin8" and param is None:
            raise click.UsageError("--param is required for this space")
        model = SPACES[space](param)
        if klass not in model.algebra(P).index:
            raise KeyError(f"{klass} is not a generator of {model.algebra(P)!r}")
        payload, cites = {}, [CITE["roots"]]
        results = {}
        if method in ("roots", "both"):
            results["roots"] = steenrod.p1_generator_roots(model, klass, P)
        if method in ("wu", "both"):
            results["wu"] = steenrod.p1_wu(model, klass, P)
            cites.append(CITE["wu_chern"] if model.kind == "chern" else CITE["wu_pont"])
        main_poly = results.get("roots", results.get("wu"))
        payload["terms"] = main_poly.to_json()
        payload["degree"] = main_poly.homogeneous_degree()
        if method == "both":
            payload["methods_agree"] = results["roots"] == results["wu"]
        text = str(main_poly)
        emit(cmd, payload, cites if method != "roots" else [CITE["roots"]], pretty=text if pretty else None)
    except (click.UsageError, click.BadParameter):
        raise
    except (FieldError, ValueError, KeyError, LookupError) as e:
        fail_invalid(cmd, e)


# ---------------------------------------------------------------- verdict

@main.command()
@click.option("--pair", "family", required=True, type=click.Choice(catalog.FAMILIES))
@click.option("--param", type=int, default=None)
@click.option("--prime", "p", required=True, type=int)
@click.option("--k", "k", required=True, type=int)
@click.option("--pretty", is_flag=True)
def verdict(family, param, p, k, pretty):
    """Is the projection G -> H an A_k-map at p?"""
    cmd = {"name": "verdict", "pair": family, "param": param, "prime": p, "k": k}
    try:
        pair = catalog.instantiate_pair(family, param, p)
        v = obstruction.ak_verdict(pair, p, k)
    except (FieldError, ValueError, KeyError) as e:
        return fail_invalid(cmd, e)
    payload = v.to_json()
    if v.status == "unknown":
        payload["gap"] = [obstruction._not_ak_threshold(pair, k), pair.a(k)]
    cites = [c for _, c in v.reasons] + ([CITE["c_k"]] if family == "SU_SO" else [])
    text = f"{pair.label} p={p} k={k}: {v.status}\n" + "\n".join(f"  - {r} [{c}]" for r, c in v.reasons)
    emit(cmd, payload, cites, pretty=text if pretty else None)


# ---------------------------------------------------------------- table

def table_rows(families: List[str], params: Iterable[int], kmax: int, kmin: int = 1) -> List[dict]:
    rows = []
    for fam in families:
        ps = [None] if fam in ("E6_F4", "Spin8_G2") else list(params)
        for n in ps:
            try:
                m, l = catalog.m_l_value(fam, n)
            except catalog.BadParameter:
                continue
            for k in range(kmin, kmax + 1):
                rows.append({
                    "family": fam, "parameter": n, "k": k, "m": m, "l": l,
                    "a_k": catalog.a_value(fam, n, k),
                    "b_k": catalog.b_value(fam, n, k) if k >= 2 else None,
                })
    return rows


@main.command()
@click.option("--family", "families", multiple=True, type=click.Choice(catalog.FAMILIES))
@click.option("--param", "params", multiple=True, type=int)
@click.option("--kmax", type=click.IntRange(min=1), default=6)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
def table(families, params, kmax, fmt):
    """Thresholds a_k and b_k."""
    families = list(families) or list(catalog.FAMILIES)
    params = list(params) or list(range(1, 9))
    rows = table_rows(families, params, kmax)
    if fmt == "csv":
        buf = io.StringIO()
        cols = ["family", "parameter", "k", "m", "l", "a_k", "b_k"]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({c: "" if r[c] is None else r[c] for c in cols})
        click.echo(buf.getvalue(), nl=False)
        return
    cmd = {"name": "table", "families": families, "params": params, "kmax": kmax}
    emit(cmd, {"rows": rows}, [CITE["a_k"], CITE["b_k"]])


# ---------------------------------------------------------------- cells

@main.command()
@click.option("--pair", "family", required=True, type=click.Choice(catalog.FAMILIES))
@click.option("--param", type=int, default=None)
@click.option("--k", "k", required=True, type=int)
@click.option("--prime", "p", required=True, type=int)
@click.option("--pretty", is_flag=True)
def cells(family, param, k, p, pretty):
    """Cell dimensions of X and the homotopy clearance check."""
    cmd = {"name": "cells", "pair": family, "param": param, "k": k, "prime": p}
    try:
        pair = catalog.instantiate_pair(family, param, p)
        cs = obstruction.x_cells(pair, k, p)
    except (FieldError, ValueError, KeyError) as e:
        return fail_invalid(cmd, e)
    ok, failing = obstruction.clearance(pair.G, cs, p)
    payload = {"dims": list(cs.dims), "max": cs.max, "two_bk": 2 * pair.b(k), "clear": ok, "failing": failing}
    cites = [CITE["cells"], CITE["clearance"], CITE["b_k"]]
    if pair.G.family == "E6":
        cites.append(CITE["e6_ext"])
    text = f"dims {cs.dims}\nmax {cs.max} (2 b_k = {2 * pair.b(k)})\nclear {ok} {failing}"
    emit(cmd, payload, cites, pretty=text if pretty else None)


# ---------------------------------------------------------------- verify

@main.command()
@click.option("--suite", type=click.Choice(list(verification.SUITES) + ["all"]), default="all")
@click.option("--grid", type=click.Choice(["small", "full"]), default="small")
@click.option("--json", "as_json", is_flag=True, help="emit results as JSON instead of PASS/FAIL lines")
def verify(suite, grid, as_json):
    """Run reproduction checks; exit 1 if any fails."""
    results = verification.run_suite(suite, grid)
    results.sort(key=lambda r: (len(r.key), r.key))
    if as_json:
        click.echo(dump({"suite": suite, "grid": grid, "results": [r.to_json() for r in results]}))
    else:
        for r in results:
            click.echo(f"{r.line()}  -- {r.citation}")
    sys.exit(0 if all(r.passed for r in results) else 1)


if __name__ == "__main__":
    main()
