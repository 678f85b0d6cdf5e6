"""Command-line interface.

Exit codes: 0 success / true, 1 usage or parse error, 2 semantic failure /
false, 3 budget exceeded (inconclusive).
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass

import click

from .dihedral import GroupContext
from .errors import (
    BudgetExceeded,
    ContextMismatch,
    InvalidHurwitzVector,
    NotRealizable,
    ParseError,
)
from .hurwitz import candidate_types, covering_genus, numerical_type, parse_vector, violation
from .normal_form import canonical_form, reduce_detailed
from .oracle import DEFAULT_MAX_STATES, same_orbit, verify_theorem

EXIT_OK, EXIT_USAGE, EXIT_FALSE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class Config:
    max_states: int = DEFAULT_MAX_STATES
    threads: int = 0
    output: str = "text"
    seed: int = 0


def load_config(path, output, max_states, threads, seed) -> Config:
    """Defaults < config file < environment < flags."""
    cfg = Config()
    if path:
        with open(path) as fh:
            data = json.load(fh)
        unknown = set(data) - {"max_states", "threads", "output", "seed"}
        if unknown:
            raise click.UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        for key, value in data.items():
            setattr(cfg, key, value)
    env = os.environ.get("HURWITZ_MAX_STATES")
    if env is not None:
        cfg.max_states = int(env)
    if max_states is not None:
        cfg.max_states = max_states
    if threads is not None:
        cfg.threads = threads
    if output is not None:
        cfg.output = output
    if seed is not None:
        cfg.seed = seed
    if cfg.max_states < 1:
        raise click.UsageError("max_states must be at least 1")
    if cfg.output not in ("text", "json"):
        raise click.UsageError("output must be text or json")
    return cfg


def _emit(cfg: Config, text: str, payload: dict):
    if cfg.output == "json":
        click.echo(json.dumps(payload, sort_keys=False))
    else:
        click.echo(text)


def _parse(text: str):
    try:
        return parse_vector(text)
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        raise click.exceptions.Exit(EXIT_USAGE)


def _validated(cfg, v):
    problem = violation(v.ctx, v.entries)
    if problem is not None:
        _emit(cfg, f"invalid: {problem.label()}", {"valid": False, "vector": str(v), "condition": problem.label()})
        raise click.exceptions.Exit(EXIT_FALSE)
    return v


@click.group()
@click.option("--output", type=click.Choice(["text", "json"]), default=None)
@click.option("--max-states", type=int, default=None, help="State budget for exhaustive commands.")
@click.option("--threads", type=int, default=None, help="Worker threads, 0 for one per core.")
@click.option("--seed", type=int, default=None)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.pass_context
def cli(ctx, output, max_states, threads, seed, config_path):
    """Hurwitz vectors over dihedral groups."""
    ctx.obj = load_config(config_path, output, max_states, threads, seed)


@cli.command()
@click.argument("vector")
@click.pass_obj
def validate(cfg, vector):
    """Check the Hurwitz conditions for VECTOR."""
    v = _validated(cfg, _parse(vector))
    _emit(cfg, str(v), {"valid": True, "vector": str(v)})


@cli.command()
@click.argument("vector")
@click.option("--trace", "show_trace", is_flag=True, help="Also print the move trace.")
@click.option("--check", is_flag=True, help="Replay the trace before printing.")
@click.pass_obj
def reduce(cfg, vector, show_trace, check):
    """Bring VECTOR to its normal form."""
    v = _validated(cfg, _parse(vector))
    r = reduce_detailed(v)
    ok = True
    if check:
        ok = r.trace.replay(v) == r.vector.entries
    payload = {
        "input": str(v),
        "normal_form": str(r.vector),
        "type": numerical_type(v).to_json(),
        "case": r.case,
    }
    lines = [str(r.vector)]
    if show_trace:
        payload["trace"] = r.trace.to_json()
        lines.append(r.trace.dumps())
    if check:
        payload["check"] = ok
        lines.append("check: " + ("ok" if ok else "MISMATCH"))
    _emit(cfg, "\n".join(lines), payload)
    if not ok:
        raise click.exceptions.Exit(EXIT_FALSE)


@cli.command()
@click.argument("n", type=int)
@click.argument("d", type=int)
@click.option("--all", "show_all", is_flag=True, help="Also list candidates that are not realizable.")
@click.pass_obj
def types(cfg, n, d, show_all):
    """List the realizable numerical types of length D over D_N."""
    ctx = _context(n)
    rows = []
    for t in candidate_types(ctx, d):
        try:
            form = canonical_form(t)
        except NotRealizable as exc:
            if show_all:
                rows.append({"type": t.to_json(), "realizable": False, "reason": exc.reason})
            continue
        rows.append({"type": t.to_json(), "realizable": True, "form": str(form), "genus": covering_genus(form)})
    text = []
    for row in rows:
        label = _type_text(row["type"])
        if row["realizable"]:
            text.append(f"{label}  {row['form']}  g={row['genus']}")
        else:
            text.append(f"{label}  NotRealizable({row['reason']})")
    _emit(cfg, "\n".join(text) if text else "(no types)", {"n": n, "d": d, "types": rows})


def _type_text(t: dict) -> str:
    if "k" in t:
        return f"k={t['k']} rot={t['rot']}"
    return f"k_even={t['k_even']} k_odd={t['k_odd']} rot={t['rot']}"


def _context(n):
    try:
        return GroupContext(n)
    except ValueError as exc:
        raise click.UsageError(str(exc))


@cli.command()
@click.argument("n", type=int)
@click.argument("d", type=int)
@click.option("--samples", type=int, default=25, help="Members reduced per orbit (0 for all).")
@click.pass_obj
def verify(cfg, n, d, samples):
    """Check that BA-orbits and realizable types match for (N, D)."""
    ctx = _context(n)
    try:
        report = verify_theorem(
            ctx,
            d,
            max_states=cfg.max_states,
            threads=cfg.threads,
            reduce_samples=None if samples == 0 else samples,
            seed=cfg.seed,
        )
    except BudgetExceeded as exc:
        _emit(cfg, f"BudgetExceeded: {exc}", {"n": n, "d": d, "theorem": "BudgetExceeded",
                                             "required": exc.required, "configured": exc.configured})
        raise click.exceptions.Exit(EXIT_BUDGET)
    payload = report.to_json()
    if report.passed:
        text = f"PASS  n={n} d={d} valid={payload['valid_count']} orbits={len(payload['orbits'])}"
    else:
        text = "FAIL\n" + json.dumps(report.counterexamples, indent=2)
    _emit(cfg, text, payload)
    if not report.passed:
        raise click.exceptions.Exit(EXIT_FALSE)


@cli.command()
@click.argument("first")
@click.argument("second")
@click.option("--flavor", type=click.Choice(["b", "ba"], case_sensitive=False), default="ba")
@click.pass_obj
def orbit(cfg, first, second, flavor):
    """Decide whether FIRST and SECOND lie in one orbit."""
    v, w = _parse(first), _parse(second)
    if v.n != w.n or len(v) != len(w):
        click.echo("vectors must share n and length", err=True)
        raise click.exceptions.Exit(EXIT_USAGE)
    _validated(cfg, v)
    _validated(cfg, w)
    try:
        verdict = same_orbit(v, w, flavor.lower(), cfg.max_states)
    except BudgetExceeded as exc:
        _emit(cfg, "inconclusive", {"verdict": "inconclusive", "required": exc.required, "configured": exc.configured})
        raise click.exceptions.Exit(EXIT_BUDGET)
    except ContextMismatch as exc:
        click.echo(str(exc), err=True)
        raise click.exceptions.Exit(EXIT_USAGE)
    _emit(cfg, "true" if verdict else "false", {"verdict": verdict, "flavor": flavor.lower()})
    if not verdict:
        raise click.exceptions.Exit(EXIT_FALSE)


@cli.command()
@click.argument("vector")
@click.pass_obj
def genus(cfg, vector):
    """Genus of the cover with monodromy VECTOR."""
    v = _validated(cfg, _parse(vector))
    try:
        g = covering_genus(v)
    except InvalidHurwitzVector as exc:
        _emit(cfg, f"invalid: {exc.label()}", {"vector": str(v), "condition": exc.label()})
        raise click.exceptions.Exit(EXIT_FALSE)
    _emit(cfg, str(g), {"vector": str(v), "genus": g})


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="dihedral-hurwitz", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
