"""Command line front end.

Heavy numeric modules are imported inside the commands so that --threads
can pin the BLAS pool sizes before numpy first loads.

Diagram arguments accept a JSON file path, "-" for stdin, a zoo name
(Q22, fan2, collapse, ...), or a family spec: grid:PxQ, fan:M,
heisenberg:N, disk:WORD.  Presentations accept z2, fan, heisenberg,
free:N, surface:G, or a file in the presentation text format.
"""
from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .presentations import Presentation, parse_word

_THREAD_VARS = (
    "OMP_NUM_THREADS",
    "OPENBLAS_NUM_THREADS",
    "MKL_NUM_THREADS",
    "NUMEXPR_NUM_THREADS",
)


def _load_diagram(spec: str):
    from .families import (
        collapse_fixture,
        fan,
        fixture_zoo,
        grid,
        single_relator_disk,
        heisenberg_filling,
    )
    from .halfedge import DiskDiagram

    if spec == "-":
        return DiskDiagram.from_json(sys.stdin.read())
    path = Path(spec)
    if path.exists():
        return DiskDiagram.from_json(path.read_text())
    if ":" in spec:
        kind, _, arg = spec.partition(":")
        if kind == "grid":
            p, _, q = arg.partition("x")
            return grid(int(p), int(q))
        if kind == "fan":
            return fan(int(arg))
        if kind in ("heis", "heisenberg"):
            return heisenberg_filling(int(arg)).diagram
        if kind == "disk":
            return single_relator_disk(parse_word(arg))
        raise click.UsageError(f"unknown diagram family {kind!r}")
    for name, diagram, _ in fixture_zoo():
        if name == spec:
            return diagram
    if spec == "collapse":
        return collapse_fixture().base
    raise click.UsageError(f"no file or fixture named {spec!r}")


def _load_presentation(spec: str, completed: bool) -> Presentation:
    from .presentations import (
        fan_presentation,
        free_presentation,
        heisenberg_presentation,
        surface_presentation,
        z2_presentation,
    )

    path = Path(spec)
    if path.exists():
        p = Presentation.parse(path.read_text())
    elif spec == "z2":
        p = z2_presentation()
    elif spec == "fan":
        p = fan_presentation()
    elif spec in ("heis", "heisenberg"):
        p = heisenberg_presentation()
    elif spec.startswith("free:"):
        p = free_presentation(int(spec.split(":", 1)[1]))
    elif spec.startswith("surface:"):
        p = surface_presentation(int(spec.split(":", 1)[1]))
    else:
        raise click.UsageError(f"no file or stock presentation named {spec!r}")
    return p.free_completion() if completed else p


def _emit(ctx, payload: dict, lines: list[str]) -> None:
    if ctx.obj["out"] == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            click.echo(line)


def _faces_option(_ctx, _param, value):
    if value is None:
        return None
    try:
        return frozenset(int(x) for x in value.replace(",", " ").split())
    except ValueError:
        raise click.UsageError("--faces wants a comma separated id list")


@click.group()
@click.option("--tol", type=float, default=1e-9, show_default=True,
              help="Numeric tolerance used by the checking commands.")
@click.option("--threads", type=int, default=None,
              help="Pin BLAS/OpenMP thread pools to this size.")
@click.option("--out", type=click.Choice(["text", "json", "csv"]),
              default="text", show_default=True, help="Output format.")
@click.pass_context
def main(ctx, tol: float, threads: int | None, out: str):
    """Disk diagram spectra, isoperimetry, and filling invariants."""
    if threads is not None:
        for var in _THREAD_VARS:
            os.environ[var] = str(threads)
    ctx.ensure_object(dict)
    ctx.obj["tol"] = tol
    ctx.obj["out"] = out


@main.command()
@click.argument("kind", type=click.Choice(
    ["grid", "fan", "disk", "heisenberg", "collapse"]))
@click.option("--p", type=int, default=2, show_default=True)
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--m", type=int, default=2, show_default=True)
@click.option("--n", type=int, default=1, show_default=True)
@click.option("--relator", type=str, default="a b a- b-", show_default=True)
@click.option("--unfolded", is_flag=True, help="Collapse fixture: emit the sigma-unfolded diagram.")
@click.option("-o", "--output", type=click.Path(dir_okay=False),
              default=None, help="Write here instead of stdout.")
def gen(kind, p, q, m, n, relator, unfolded, output):
    """Build a stock diagram and print its JSON."""
    from .families import (
        collapse_fixture,
        fan,
        grid,
        heisenberg_filling,
        single_relator_disk,
    )

    if kind == "grid":
        d = grid(p, q)
    elif kind == "fan":
        d = fan(m)
    elif kind == "disk":
        d = single_relator_disk(parse_word(relator))
    elif kind == "heisenberg":
        d = heisenberg_filling(n).diagram
    else:
        fx = collapse_fixture()
        d = fx.unfolded if unfolded else fx.base
    text = d.to_json()
    if output:
        Path(output).write_text(text + "\n")
        click.echo(f"wrote {output}")
    else:
        click.echo(text)


@main.command()
@click.argument("diagram")
@click.pass_context
def spectrum(ctx, diagram):
    """Primal gap and both dual gaps of a diagram."""
    from .spectra import dual_mu1_unweighted, dual_mu1_weighted, primal_lambda1

    d = _load_diagram(diagram)
    lam = primal_lambda1(d)
    unw = dual_mu1_unweighted(d)
    wtd = dual_mu1_weighted(d)
    payload = {
        "lambda1": lam.value.to_json(),
        "mu1_unweighted": unw.value.to_json(),
        "mu1_weighted": wtd.value.to_json(),
        "methods": {
            "lambda1": lam.method,
            "mu1_unweighted": unw.method,
            "mu1_weighted": wtd.method,
        },
    }
    _emit(ctx, payload, [
        f"lambda1         = {lam.value}",
        f"mu1 unweighted  = {unw.value}",
        f"mu1 weighted    = {wtd.value}",
    ])


@main.command()
@click.argument("diagram")
@click.option("--side", type=click.Choice(["primal", "dual", "both"]),
              default="both", show_default=True)
@click.option("--cap", type=int, default=20, show_default=True,
              help="Exhaustive enumeration limit on |interior| or |faces|.")
@click.pass_context
def cheeger(ctx, diagram, side, cap):
    """Primal and dual bottleneck ratios."""
    from .isoperimetry import cheeger_dual, cheeger_primal

    d = _load_diagram(diagram)
    payload = {}
    lines = []
    if side in ("primal", "both"):
        r = cheeger_primal(d, cap=cap)
        payload["primal"] = {
            "value": r.value.to_json(),
            "subset": sorted(r.subset),
            "exhaustive": r.exhaustive,
        }
        lines.append(f"primal h = {r.value}  subset={sorted(r.subset)}"
                     f"  exhaustive={r.exhaustive}")
    if side in ("dual", "both"):
        r = cheeger_dual(d, cap=cap)
        payload["dual"] = {
            "value": r.value.to_json(),
            "subset": sorted(r.subset),
            "exhaustive": r.exhaustive,
        }
        lines.append(f"dual   h = {r.value}  subset={sorted(r.subset)}"
                     f"  exhaustive={r.exhaustive}")
    _emit(ctx, payload, lines)


@main.command()
@click.argument("diagram")
@click.option("--method", type=click.Choice(["exact", "greedy"]),
              default="exact", show_default=True)
@click.option("--cap", type=int, default=18, show_default=True,
              help="Exact search limit on faces plus whiskers.")
@click.pass_context
def fl(ctx, diagram, method, cap):
    """Filling length of a diagram by shelling."""
    from .filling import fl_exact, fl_greedy

    d = _load_diagram(diagram)
    r = fl_exact(d, cap=cap) if method == "exact" else fl_greedy(d)
    payload = {
        "value": r.value,
        "exhaustive": r.exhaustive,
        "profile": list(r.profile),
    }
    _emit(ctx, payload, [
        f"FL = {r.value}  exhaustive={r.exhaustive}",
        f"profile: {' '.join(map(str, r.profile))}",
    ])


@main.command()
@click.argument("word")
@click.option("--presentation", "-p", "pres", required=True,
              help="z2, fan, heisenberg, free:N, surface:G, or a file.")
@click.option("--completed", is_flag=True,
              help="Adjoin the free inverse bigons first.")
@click.option("--max-area", type=int, default=64, show_default=True)
@click.option("--max-nodes", type=int, default=400_000, show_default=True)
@click.pass_context
def fillarea(ctx, word, pres, completed, max_area, max_nodes):
    """Minimal relator count filling WORD, by exhaustive search."""
    from .filling import fillarea_oracle

    p = _load_presentation(pres, completed)
    w = parse_word(word)
    r = fillarea_oracle(p, w, max_area=max_area, max_nodes=max_nodes)
    payload = {"status": r.status, "value": r.value, "nodes": r.nodes}
    _emit(ctx, payload, [f"status={r.status} value={r.value} nodes={r.nodes}"])
    if r.status in ("indeterminate",):
        ctx.exit(3)


@main.command("hqmcheck")
@click.argument("diagram")
@click.option("--presentation", "-p", "pres", required=True)
@click.option("--completed", is_flag=True)
@click.option("--kappa", type=float, default=1.0, show_default=True)
@click.option("--cap", type=int, default=20, show_default=True)
@click.option("--holes/--no-holes", default=False, show_default=True,
              help="Also check subsets that enclose holes.")
@click.pass_context
def hqmcheck(ctx, diagram, pres, completed, kappa, cap, holes):
    """Quasi-minimality of every dual-connected face subset.

    Exit status: 0 pass, 1 fail, 3 indeterminate.
    """
    from .filling import hfmhqm_check, mhqm_check

    d = _load_diagram(diagram)
    p = _load_presentation(pres, completed)
    check = mhqm_check if holes else hfmhqm_check
    r = check(d, p, kappa=kappa, cap=cap)
    payload = {
        "status": r.status,
        "kappa": r.kappa,
        "subsets_checked": r.subsets_checked,
        "failures": [
            {"faces": sorted(a), "area": ar, "fill": fi}
            for a, ar, fi in r.failures
        ],
        "undecided": [sorted(a) for a in r.undecided],
    }
    lines = [f"status={r.status} subsets={r.subsets_checked} kappa={r.kappa}"]
    for a, ar, fi in r.failures:
        lines.append(f"  FAIL faces={sorted(a)} area={ar} fill={fi}")
    for a in r.undecided:
        lines.append(f"  UNDECIDED faces={sorted(a)}")
    _emit(ctx, payload, lines)
    if r.status == "fail":
        ctx.exit(1)
    if r.status == "indeterminate":
        ctx.exit(3)


@main.command()
@click.argument("diagram")
@click.option("--faces", callback=_faces_option, required=True,
              help="Comma separated face ids.")
@click.pass_context
def multiboundary(ctx, diagram, faces):
    """Boundary loops of a face subset, with their words."""
    from .isoperimetry import multiboundary as mb

    d = _load_diagram(diagram)
    r = mb(d, faces)
    words = [
        " ".join(f"{g}{'-' if s < 0 else ''}" for g, s in
                 (d.label[h] for h in loop))
        for loop in r.loops
    ]
    payload = {
        "loops": [list(loop) for loop in r.loops],
        "words": words,
        "norm": r.norm,
    }
    lines = [f"norm = {r.norm}  loops = {len(r.loops)}"]
    for loop, w in zip(r.loops, words):
        lines.append(f"  loop {list(loop)}")
        lines.append(f"  word {w}")
    _emit(ctx, payload, lines)


@main.command()
@click.argument("diagram")
@click.option("--faces", callback=_faces_option, required=True)
@click.pass_context
def holefill(ctx, diagram, faces):
    """Smallest hole-free superset of a face subset."""
    from .isoperimetry import hole_fill, is_hole_free

    d = _load_diagram(diagram)
    filled = hole_fill(d, faces)
    payload = {
        "faces": sorted(faces),
        "filled": sorted(filled),
        "was_hole_free": is_hole_free(d, faces),
    }
    _emit(ctx, payload, [
        f"input  {sorted(faces)} hole-free={payload['was_hole_free']}",
        f"filled {sorted(filled)}",
    ])


@main.command()
@click.argument("diagram")
@click.option("--vertex", type=int, required=True)
@click.pass_context
def resistance(ctx, diagram, vertex):
    """Effective resistance from a vertex to the grounded boundary."""
    from .resistance import distance_to_boundary, effective_resistance

    d = _load_diagram(diagram)
    r = effective_resistance(d, vertex)
    dist = distance_to_boundary(d)[vertex]
    payload = {"vertex": vertex, "resistance": r, "distance": dist}
    _emit(ctx, payload, [f"R_eff({vertex} <-> boundary) = {r:.12g}  dist = {dist}"])


@main.command("inversion-check")
@click.argument("diagram")
@click.pass_context
def inversion_check(ctx, diagram):
    """Resistance sandwich at the ground-state maximum; exit 1 on failure."""
    from .resistance import extremal_inversion_check

    d = _load_diagram(diagram)
    r = extremal_inversion_check(d, tol=ctx.obj["tol"])
    payload = {
        "v0": r.v0,
        "lambda1": r.lambda1,
        "vol_interior": r.vol_interior,
        "resistance": r.resistance,
        "lower_bound": r.lower_bound,
        "distance": r.distance,
        "fill_length": r.fill_length,
        "ok": r.ok,
    }
    _emit(ctx, payload, r.lines() + [f"ok = {r.ok}"])
    if not r.ok:
        ctx.exit(1)


@main.group()
def profile():
    """Sweep tables over the stock families."""


def _rows_out(ctx, rows):
    import dataclasses as dc

    fields = [f.name for f in dc.fields(rows[0])]
    if ctx.obj["out"] == "csv":
        import csv as _csv
        import io

        buf = io.StringIO()
        w = _csv.writer(buf)
        w.writerow(fields)
        for r in rows:
            w.writerow([getattr(r, f) for f in fields])
        click.echo(buf.getvalue(), nl=False)
    elif ctx.obj["out"] == "json":
        click.echo(json.dumps([dc.asdict(r) for r in rows], indent=2))
    else:
        click.echo("  ".join(fields))
        for r in rows:
            click.echo("  ".join(str(getattr(r, f)) for f in fields))


@profile.command("grid")
@click.option("--max", "pmax", type=int, default=8, show_default=True)
@click.pass_context
def profile_grid(ctx, pmax):
    from .profiles import sweep_grid_profiles

    _rows_out(ctx, sweep_grid_profiles(pmax))


@profile.command("heisenberg")
@click.option("--max", "nmax", type=int, default=4, show_default=True)
@click.pass_context
def profile_heisenberg(ctx, nmax):
    from .profiles import sweep_heisenberg

    _rows_out(ctx, sweep_heisenberg(nmax))


@profile.command("separation")
@click.option("--min", "mmin", type=int, default=5, show_default=True)
@click.option("--max", "mmax", type=int, default=20, show_default=True)
@click.pass_context
def profile_separation(ctx, mmin, mmax):
    from .profiles import spectral_separation_report

    _rows_out(ctx, spectral_separation_report(mmin, mmax))


@main.command()
@click.option("--out-dir", type=click.Path(file_okay=False), required=True)
@click.option("--grids-max", type=int, default=10, show_default=True)
@click.option("--heisenberg-max", type=int, default=4, show_default=True)
@click.option("--refreeze", is_flag=True,
              help="Also regenerate the frozen constants file.")
@click.pass_context
def suite(ctx, out_dir, grids_max, heisenberg_max, refreeze):
    """Write all sweep CSVs and a summary JSON to a directory."""
    from .profiles import regenerate_frozen, run_suite

    summary = run_suite(out_dir, grids_max=grids_max,
                        heisenberg_max=heisenberg_max)
    if refreeze:
        regenerate_frozen()
        summary["refroze"] = True
    _emit(ctx, summary, [f"{k} = {v}" for k, v in summary.items()])


@main.command()
@click.argument("diagram")
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]),
              default="json", show_default=True)
@click.option("--check", is_flag=True, help="Run the full validator first.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def export(ctx, diagram, fmt, check, output):
    """Serialize a diagram to canonical JSON or Graphviz dot."""
    d = _load_diagram(diagram)
    if check:
        report = d.validate()
        if not report.ok:
            click.echo(str(report), err=True)
            ctx.exit(1)
    text = d.to_json() if fmt == "json" else d.to_dot()
    if output:
        Path(output).write_text(text + ("\n" if not text.endswith("\n") else ""))
        click.echo(f"wrote {output}")
    else:
        click.echo(text)


if __name__ == "__main__":
    main()
