"""Command-line interface: evaluate level norms, run interpolation
sandwiches, and drive the verification suite.

Exit codes: 0 success / all selected checks pass; 1 check failure;
2 configuration or input errors.

Tuple file format (plain text, diff-able):
    n k l
    <k lines of l whitespace-separated complex entries>   (n blocks)
Complex entries use `a+bi` notation, e.g. `1.5-0.25i`, `2i`, `3`.
Blank lines and lines starting with `#` are ignored.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import click
import numpy as np

from . import interp, spaces, verify
from .errors import OpspaceError
from .params import SolverParams

CAPS = {"n": 6, "k": 4, "l": 4, "m": 4, "samples": 1000}

SUITES = ["all"] + verify.SUITE


# ---------------------------------------------------------------------------
# Tuple file parsing
# ---------------------------------------------------------------------------

def parse_complex(token: str) -> complex:
    """Parse `a+bi` style complex scalars."""
    t = token.strip().lower().replace("i", "j")
    try:
        value = complex(t)
    except ValueError as exc:
        raise OpspaceError(f"bad complex entry {token!r}") from exc
    return value


def format_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_tuple_file(path: str) -> spaces.MatrixTuple:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise OpspaceError(f"cannot read {path}: {exc}") from exc
    return parse_tuple_text(raw, name=path)


def parse_tuple_text(text: str, name: str = "<input>") -> spaces.MatrixTuple:
    lines = [ln for ln in (s.strip() for s in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise OpspaceError(f"{name}: empty tuple file")
    header = lines[0].split()
    if len(header) != 3:
        raise OpspaceError(f"{name}: header must be `n k l`")
    try:
        n, k, l = (int(h) for h in header)
    except ValueError as exc:
        raise OpspaceError(f"{name}: non-integer header") from exc
    if min(n, k, l) < 1:
        raise OpspaceError(f"{name}: header entries must be positive")
    body = lines[1:]
    if len(body) != n * k:
        raise OpspaceError(
            f"{name}: expected {n * k} matrix rows, found {len(body)}")
    mats = np.zeros((n, k, l), dtype=np.complex128)
    for i in range(n):
        for r in range(k):
            row = body[i * k + r].split()
            if len(row) != l:
                raise OpspaceError(
                    f"{name}: block {i + 1} row {r + 1} has {len(row)} "
                    f"entries, expected {l}")
            for c, tok in enumerate(row):
                mats[i, r, c] = parse_complex(tok)
    return spaces.MatrixTuple(mats)


def write_tuple_text(t: spaces.MatrixTuple) -> str:
    out = [f"{t.n} {t.k} {t.l}"]
    for i in range(t.n):
        for r in range(t.k):
            out.append(" ".join(format_complex(z) for z in t.mats[i, r]))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Structures and couples by name
# ---------------------------------------------------------------------------

def build_structure(name: str, n: int) -> spaces.SpaceStructure:
    base = {
        "row": lambda: spaces.RowSpace(n),
        "column": lambda: spaces.ColumnSpace(n),
        "oh": lambda: spaces.OHSpace(n),
        "rc-intersection": lambda: spaces.IntersectionSpace(
            spaces.RowSpace(n), spaces.ColumnSpace(n)),
        "rc-sum": lambda: spaces.SumSpace(spaces.RowSpace(n),
                                          spaces.ColumnSpace(n)),
    }
    key = name.lower()
    opp = key.endswith("-op")
    if opp:
        key = key[:-3]
    if key not in base:
        raise OpspaceError(f"unknown structure {name!r}")
    s = base[key]()
    return s.opposite() if opp else s


def _solver_from(config: "RunConfig") -> SolverParams:
    return SolverParams(degree=config.degree, grid=config.grid,
                        max_iter=config.iters, restarts=config.restarts,
                        seed=config.seed)


@dataclass
class RunConfig:
    degree: int
    grid: int
    iters: int
    restarts: int
    seed: int


def default_seed() -> int:
    env = os.environ.get("OPSPACE_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise OpspaceError(f"OPSPACE_SEED={env!r} is not an integer")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

@click.group()
def cli():
    """Operator-space level norms, interpolation bounds, and verification."""


def _fail_usage(msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(2)


@cli.command("norm")
@click.option("--space", "space_name", required=True,
              help="row | column | oh | rc-intersection | rc-sum, "
                   "optionally with -op suffix for the opposite structure.")
@click.option("--input", "input_path", required=True,
              type=click.Path(), help="Tuple file (see module help).")
@click.option("--n", "n_expect", type=int, default=None,
              help="Validate the tuple length.")
@click.option("--level", "level_expect", default=None,
              help="Validate the level, e.g. 2x2.")
@click.option("--seed", type=int, default=None)
def cmd_norm(space_name, input_path, n_expect, level_expect, seed):
    """Evaluate the level norm of a tuple under a named structure."""
    try:
        t = parse_tuple_file(input_path)
        if n_expect is not None and t.n != n_expect:
            raise OpspaceError(f"tuple has n={t.n}, expected {n_expect}")
        if level_expect is not None:
            parts = level_expect.lower().split("x")
            if len(parts) != 2:
                raise OpspaceError("--level must look like 2x2")
            if (t.k, t.l) != (int(parts[0]), int(parts[1])):
                raise OpspaceError(
                    f"tuple level is {t.k}x{t.l}, expected {level_expect}")
        if t.n > CAPS["n"] or t.k > CAPS["k"] or t.l > CAPS["l"]:
            raise OpspaceError("tuple exceeds the size caps "
                               f"(n<={CAPS['n']}, k,l<={CAPS['k']})")
        s = build_structure(space_name, t.n)
        value = s.level_norm(t)
    except OpspaceError as exc:
        _fail_usage(str(exc))
    click.echo(f"structure={space_name} n={t.n} level={t.k}x{t.l} "
               f"norm={value:.12g}")


@cli.command("interp")
@click.option("--couple", "couple_name", required=True,
              type=click.Choice(["linf-l1", "rc", "l2-l2"]),
              help="Endpoint couple for the sandwich.")
@click.option("--theta", type=float, default=0.5, show_default=True)
@click.option("--input", "input_path", required=True, type=click.Path())
@click.option("--degree", type=int, default=8, show_default=True)
@click.option("--grid", type=int, default=64, show_default=True)
@click.option("--iters", type=int, default=300, show_default=True)
@click.option("--restarts", type=int, default=5, show_default=True)
@click.option("--seed", type=int, default=None)
def cmd_interp(couple_name, theta, input_path, degree, grid, iters,
               restarts, seed):
    """Certified interpolation bounds for a tuple or vector."""
    try:
        if not (0.0 < theta < 1.0):
            raise OpspaceError("theta must be in (0, 1)")
        t = parse_tuple_file(input_path)
        if t.n > CAPS["n"] or t.k > CAPS["k"] or t.l > CAPS["l"]:
            raise OpspaceError("tuple exceeds the size caps")
        solver = SolverParams(degree=degree, grid=grid, max_iter=iters,
                              restarts=restarts,
                              seed=default_seed() if seed is None else seed)
        x = t.flat()
        if couple_name == "linf-l1":
            if (t.k, t.l) != (1, 1):
                raise OpspaceError("linf-l1 expects a level-(1,1) tuple")
            cl = interp.linf_l1_couple(t.n)
        elif couple_name == "l2-l2":
            if (t.k, t.l) != (1, 1):
                raise OpspaceError("l2-l2 expects a level-(1,1) tuple")
            e = interp.EuclideanNorm(t.n)
            cl = interp.CoupleLevel(t.n, e, e, e, e)
        else:
            cl = spaces.couple_level(spaces.RowSpace(t.n),
                                     spaces.ColumnSpace(t.n), t.k, t.l)
        nb = interp.interp_norm_bounds(cl, theta, x, solver)
    except OpspaceError as exc:
        _fail_usage(str(exc))
    witness = type(nb.upper_witness).__name__
    click.echo(f"couple={couple_name} theta={theta} lower={nb.lower:.12g} "
               f"upper={nb.upper:.12g} grid_upper={nb.grid_upper:.12g} "
               f"delta_g={nb.delta_g:.3g} witness={witness} "
               f"converged={nb.converged_upper and nb.converged_lower}")


def _run_check_job(args):
    name, seed, strict, overrides = args
    return verify._run_one(name, seed, strict, overrides)


@cli.command("verify")
@click.option("--suite", required=True, type=click.Choice(SUITES),
              help="Check selector.")
@click.option("--n", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--m", type=int, default=None)
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--degree", type=int, default=None)
@click.option("--grid", type=int, default=None)
@click.option("--iters", type=int, default=None)
@click.option("--restarts", type=int, default=None)
@click.option("--serial/--parallel", "serial", default=True,
              help="Serial mode guarantees reproducible bytes.")
@click.option("--strict", is_flag=True, default=False,
              help="Enforce stretch-check thresholds.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]),
              default="json", show_default=True)
@click.option("--output", "output_path", type=click.Path(), default=None)
def cmd_verify(suite, n, k, m, samples, seed, degree, grid, iters, restarts,
               serial, strict, fmt, output_path):
    """Run verification checks and emit a report array."""
    try:
        for name, val in (("n", n), ("k", k), ("m", m),
                          ("samples", samples)):
            if val is not None and not (1 <= val <= CAPS[name]):
                raise OpspaceError(
                    f"{name}={val} outside 1..{CAPS[name]}")
        seed = default_seed() if seed is None else seed
        solver = None
        if any(v is not None for v in (degree, grid, iters, restarts)):
            solver = SolverParams(
                degree=8 if degree is None else degree,
                grid=64 if grid is None else grid,
                max_iter=300 if iters is None else iters,
                restarts=5 if restarts is None else restarts,
                seed=seed)
        overrides = {"n": n, "k": k, "m": m, "samples": samples,
                     "solver": solver}
        names = verify.SUITE if suite == "all" else [suite]
        # per-check caps are validated before any work starts
        for name in names:
            _precheck_caps(name, overrides)
    except OpspaceError as exc:
        _fail_usage(str(exc))

    try:
        if serial or len(names) == 1:
            reports = verify.run_suite(names, seed=seed, strict=strict,
                                       overrides=overrides)
        else:
            jobs = [(name, seed, strict, overrides) for name in names]
            with ProcessPoolExecutor() as pool:
                chunks = list(pool.map(_run_check_job, jobs))
            reports = [r for chunk in chunks for r in chunk]
    except OpspaceError as exc:
        _fail_usage(str(exc))

    payload = render_reports(reports, fmt)
    if output_path is not None:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        click.echo(payload, nl=False)

    enforced = [r for r in reports
                if strict or r.check not in verify.STRETCH]
    sys.exit(0 if all(r.passed for r in enforced) else 1)


def _precheck_caps(name: str, overrides: dict):
    caps = verify.CHECK_CAPS.get(name, {})
    for key in ("n", "k", "m"):
        val = overrides.get(key)
        if val is not None and key in caps and val > caps[key]:
            raise OpspaceError(
                f"{name}: {key}={val} exceeds the check cap {caps[key]}")


def render_reports(reports, fmt: str) -> str:
    dicts = [r.to_dict() for r in reports]
    if fmt == "json":
        doc = {"schema": 1,
               "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
               "reports": dicts}
        return json.dumps(doc, indent=2, default=_json_default) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["check", "params", "lhs", "rhs", "lower", "upper",
                         "margin", "pass", "runtime_ms", "seed"])
        for d in dicts:
            v = d["values"]
            writer.writerow([d["check"], json.dumps(d["params"],
                                                    default=_json_default),
                             v["lhs"], v["rhs"], v["lower"], v["upper"],
                             d["margin"], d["pass"], d["runtime_ms"],
                             d["seed"]])
        return buf.getvalue()
    lines = []
    for d in dicts:
        status = "PASS" if d["pass"] else "FAIL"
        lines.append(f"[{status}] {d['check']} margin={d['margin']:.3e} "
                     f"params={json.dumps(d['params'], default=_json_default)}")
    return "\n".join(lines) + "\n"


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def normalized_report_bytes(payload: str) -> bytes:
    """Report bytes with the volatile fields (timestamp, runtimes) removed;
    two serial runs with identical config and seed must agree on this."""
    doc = json.loads(payload)
    doc.pop("timestamp", None)
    for rep in doc.get("reports", []):
        rep.pop("runtime_ms", None)
    return json.dumps(doc, indent=2, sort_keys=True).encode()


def main():
    cli(standalone_mode=True)


if __name__ == "__main__":
    main()
