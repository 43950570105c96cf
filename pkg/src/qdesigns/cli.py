"""Command-line interface.

Every option can also be set through the environment with the ``QDESIGNS_``
prefix, e.g. ``QDESIGNS_KM_GROUP=singer``.

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 size guard exceeded, 4 solver timeout.
"""

from __future__ import annotations

import json
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click

from .errors import DEFAULT_GUARD, GuardError
from .gf import make_field, read_poly_file

EXIT_UNBALANCED, EXIT_GUARD, EXIT_TIMEOUT = 1, 3, 4


@dataclass
class RunConfig:
    q: int | None = None
    n: int | None = None
    t: int | None = None
    K: tuple[int, ...] = ()
    group: dict = field(default_factory=lambda: {"kind": "borel"})
    overrides: dict = field(default_factory=dict)
    fmt: str = "json"
    guard: int = DEFAULT_GUARD
    seed: int = 0
    max_solutions: int | None = None
    time_limit: float | None = None

    def validate(self) -> None:
        if self.q is not None and self.q < 1:
            raise click.BadParameter("q must be positive", param_hint="--q")
        if self.n is not None and not 1 <= self.n <= 16:
            raise click.BadParameter("n must lie in 1..16", param_hint="--n")
        if self.t is not None and self.t < 0:
            raise click.BadParameter("t must be nonnegative", param_hint="--t")
        if self.n is not None and self.t is not None:
            for k in self.K:
                if not self.t <= k <= self.n:
                    raise click.BadParameter(f"need t <= k <= n for k={k}", param_hint="--K")
        if self.guard < 1:
            raise click.BadParameter("guard must be positive", param_hint="--guard-orbit-size")
        if self.fmt not in ("json", "csv", "text"):
            raise click.BadParameter("format must be json, csv or text", param_hint="--format")


def _parse_K(value: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in value.replace("{", "").replace("}", "").split(",") if x.strip())
    except ValueError:
        raise click.BadParameter(f"cannot parse dimension list {value!r}", param_hint="--K") from None


def _parse_group(value: str) -> dict:
    if value.startswith("@"):
        value = Path(value[1:]).read_text()
    if value.lstrip().startswith("{"):
        try:
            return json.loads(value)
        except json.JSONDecodeError as exc:
            raise click.BadParameter(f"bad group descriptor: {exc}", param_hint="--group") from None
    return {"kind": value}


def _overrides(poly_file) -> dict:
    if not poly_file:
        return {}
    try:
        return read_poly_file(poly_file)
    except (OSError, ValueError) as exc:
        raise click.BadParameter(str(exc), param_hint="--poly-file") from None


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


class _Group(click.Group):
    """Maps library errors onto the documented exit codes."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except GuardError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_GUARD)
        except (ValueError, KeyError, json.JSONDecodeError) as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(2)


poly_opt = click.option("--poly-file", type=click.Path(exists=True, dir_okay=False),
                        help="Primitive polynomial overrides, lines 'q m c_0 ... c_m'.")
guard_opt = click.option("--guard-orbit-size", "guard", type=int, default=DEFAULT_GUARD, show_default=True,
                         help="Refuse to materialize more subspaces than this.")
out_opt = click.option("-o", "--out", type=click.Path(dir_okay=False), help="Write to a file instead of stdout.")


@click.group(cls=_Group, context_settings={"auto_envvar_prefix": "QDESIGNS"})
def main():
    """Subspace designs: q-binomials, Kramer-Mesner matrices, construction, search, verification."""


@main.command("qbinom")
@click.argument("n", type=int)
@click.argument("k", type=int)
@click.argument("q", type=int)
def cmd_qbinom(n, k, q):
    """Print the Gaussian binomial [n choose k]_q."""
    from .subspaces import qbinom

    if n < 0 or q < 1:
        raise click.BadParameter("need n >= 0 and q >= 1")
    click.echo(qbinom(n, k, q))


@main.command("km")
@click.option("--group", "group", default="borel", show_default=True,
              help="borel | singer | singer_frobenius | trivial, a JSON descriptor, or @file.")
@click.option("--n", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.option("--t", type=int, required=True)
@click.option("--K", "K", required=True, help="Block dimensions, e.g. 3,4.")
@click.option("--format", "fmt", default="json", show_default=True, type=click.Choice(["json", "csv", "text"]))
@click.option("--family-columns", is_flag=True,
              help="Borel only: keep the columns chosen by the family construction, in block order.")
@poly_opt
@guard_opt
@out_opt
def cmd_km(group, n, q, t, K, fmt, family_columns, poly_file, guard, out):
    """Write the Kramer-Mesner matrix A_{t,K}^G."""
    from .groups import group_from_descriptor
    from .incidence import borel_family_matrix, km_concat

    cfg = RunConfig(q=q, n=n, t=t, K=_parse_K(K), group=_parse_group(group),
                    overrides=_overrides(poly_file), fmt=fmt, guard=guard)
    cfg.validate()
    F = make_field(q, overrides=cfg.overrides)
    g = group_from_descriptor(cfg.group, F, n, cfg.overrides)
    split = None
    if family_columns:
        if not g.is_borel or cfg.K != (t + 1, t + 2):
            raise click.BadParameter("--family-columns needs --group borel and K = t+1,t+2")
        m = borel_family_matrix(F, n, t)
        split = (len([s for s in m.row_labels if n not in s.pivots]),
                 len([1 for k, _ in m.col_labels if k == t + 1]))
    else:
        m = km_concat(g, t, cfg.K, cfg.guard)
    if fmt == "json":
        doc = m.to_json()
        if F.m > 1:
            doc["modulus"] = list(F.modulus)
        _emit(json.dumps(doc) + "\n", out)
    elif fmt == "csv":
        _emit(m.to_csv(), out)
    else:
        _emit(m.to_text(*split) if split else m.to_text(), out)


@main.command("construct")
@click.argument("t", type=int)
@click.argument("q", type=int)
@click.option("--blocks", "with_blocks", is_flag=True, help="Also list every block explicitly.")
@out_opt
def cmd_construct(t, q, with_blocks, out):
    """Write the Borel family design t-(t+4,{t+1,t+2},q^3+q^2+q+1;q) as JSON (q=1: set design)."""
    from .designs import borel_family_selection, design_to_json, expand

    if t < 1 or q < 1:
        raise click.BadParameter("need t >= 1 and q >= 1")
    sel, params = borel_family_selection(t, q)
    doc = design_to_json(params, sel, expand(sel) if with_blocks else None)
    _emit(json.dumps(doc) + "\n", out)


@main.command("trivial")
@click.option("--n", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.option("--t", type=int, required=True)
@click.option("--K", "K", required=True)
@out_opt
def cmd_trivial(n, q, t, K, out):
    """Write the trivial design (all subspaces with dimension in K) as Borel orbits."""
    from .designs import DesignParams, OrbitSelection, design_to_json, lambda_max
    from .groups import borel_group
    from .subspaces import enum_pivot_sets, standard_rep

    cfg = RunConfig(q=q, n=n, t=t, K=_parse_K(K))
    cfg.validate()
    params = DesignParams(t, n, cfg.K, lambda_max(n, cfg.K, t, q), q)
    if q == 1:
        sel = OrbitSelection(None, n, 1, tuple(pi for k in cfg.K for pi in enum_pivot_sets(n, k)))
    else:
        F = make_field(q)
        reps = tuple(standard_rep(pi, F, n) for k in cfg.K for pi in enum_pivot_sets(n, k))
        sel = OrbitSelection(borel_group(F, n), n, q, reps)
    _emit(json.dumps(design_to_json(params, sel)) + "\n", out)


@main.command("verify")
@click.argument("design_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--t", type=int, default=None, help="Override t from the file.")
@click.option("--index", type=int, default=0, show_default=True, help="Solution to check in a solver output file.")
@poly_opt
@guard_opt
def cmd_verify(design_file, t, index, poly_file, guard):
    """Brute-force check of a design file (or a solver result); exit 0 iff balanced."""
    from .designs import load_design, verify_design, verify_set_design
    from .incidence import label_str

    doc = json.loads(Path(design_file).read_text())
    if "solutions" in doc:
        if not doc["solutions"]:
            click.echo("no solutions in file", err=True)
            sys.exit(EXIT_UNBALANCED)
        doc = doc["solutions"][index]["design"]
    params, F, blocks = load_design(doc, _overrides(poly_file), guard)
    t = params.t if t is None else t
    if F is None:
        res = verify_set_design(blocks, params.n, t)
    else:
        res = verify_design(blocks, t, F, params.n, guard)
    if res.balanced:
        click.echo(f"lambda={res.lam}")
        if params.lam and res.lam != params.lam:
            click.echo(f"note: file declares lambda={params.lam}", err=True)
            sys.exit(EXIT_UNBALANCED)
        return
    click.echo("violations:")
    for obj, count in res.violations:
        name = label_str(obj) if F is not None else "{" + ",".join(map(str, obj)) + "}"
        click.echo(f"  {name} covered {count} times")
    sys.exit(EXIT_UNBALANCED)


@main.command("solve")
@click.argument("matrix_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--lambda", "lam", type=int, required=True)
@click.option("--max-solutions", type=int, default=None)
@click.option("--time-limit", type=float, default=None, help="Seconds.")
@poly_opt
@out_opt
def cmd_solve(matrix_file, lam, max_solutions, time_limit, poly_file, out):
    """Find 0/1 vectors x with A x = lambda * 1 for a matrix written by 'km'."""
    from .designs import DesignParams, design_to_json, OrbitSelection
    from .groups import group_from_descriptor
    from .incidence import KMMatrix, label_json
    from .solver import SolveRequest, solve

    data = json.loads(Path(matrix_file).read_text())
    overrides = _overrides(poly_file)
    F = make_field(data["q"], data.get("modulus"), overrides)
    m = KMMatrix.from_json(data, F)
    res = solve(SolveRequest(m, lam, max_solutions, time_limit))
    group = group_from_descriptor(m.group, F, m.n, overrides)
    params = DesignParams(m.t, m.n, m.K, lam, m.q)
    sols = []
    for sol in res.solutions:
        reps = tuple(m.col_labels[j][1] for j in sol)
        design = design_to_json(params, OrbitSelection(group, m.n, m.q, reps))
        sols.append({"indices": list(sol),
                     "columns": [{"k": m.col_labels[j][0], **label_json(m.col_labels[j][1])} for j in sol],
                     "design": design})
    doc = {"status": res.status, "lambda": lam, "n": m.n, "q": m.q, "t": m.t, "K": list(m.K),
           "group": m.group, "solutions": sols}
    _emit(json.dumps(doc) + "\n", out)
    click.echo(f"{len(sols)} solution(s), status {res.status}", err=True)
    if res.status == "timeout":
        sys.exit(EXIT_TIMEOUT)


@main.command("props")
@click.option("--n", type=int, default=6, show_default=True)
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def cmd_props(n, q, trials, seed):
    """Seeded spot check: random Borel elements preserve pivot sets."""
    from .linalg import apply, random_borel, random_subspace

    cfg = RunConfig(q=q, n=n, seed=seed)
    cfg.validate()
    F = make_field(q)
    rng = random.Random(seed)
    failures = 0
    for _ in range(trials):
        s = random_subspace(F, n, rng.randint(1, n), rng)
        if apply(random_borel(F, n, rng), s).pivots != s.pivots:
            failures += 1
    click.echo(f"borel pivot invariance: {trials - failures}/{trials} ok (seed {seed})")
    if failures:
        sys.exit(EXIT_UNBALANCED)


if __name__ == "__main__":
    main()
