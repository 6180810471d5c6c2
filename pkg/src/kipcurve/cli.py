"""Command-line interface.

Subcommands: analyze, trace, render, fuzz, paper-examples, canon.
Exit codes: 0 success, 1 check failure, 2 parse error, 3 validation error.
All commands are pure functions of their inputs and flags; outputs carry
no timestamps or machine identifiers.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from . import criteria, io, kipp, pisom, refdata, render, verify

EXIT_CHECK = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_input(path: str, project: bool):
    """Shared ingest: parse the document and optionally repair rounding.

    Returns (matrix, metadata, tolerances) where the tolerances reflect
    whether the input was projected from rounded data.
    """
    try:
        a, meta = io.load_matrix(path)
    except io.MatrixDocumentError as exc:
        _fail(EXIT_PARSE, str(exc))
    except FileNotFoundError:
        _fail(EXIT_PARSE, f"no such file: {path}")
    except ValueError as exc:
        _fail(EXIT_VALIDATION, str(exc))
    tols = {
        "detect": kipp.DETECT_TOL,
        "disk": kipp.DISK_TOL,
        "point": kipp.POINT_TOL,
        "canon_residual": pisom.CANON_RESIDUAL,
        "crith": criteria.CRITERION_TOL,
        "pi": 1e-8,
    }
    if project:
        try:
            a = pisom.project_to_partial_isometry(a)
        except (pisom.AmbiguousSingularValueError, ValueError) as exc:
            _fail(EXIT_VALIDATION, f"cannot repair input: {exc}")
        tols = {
            "detect": verify.ROUNDED_DETECT_TOL,
            "disk": verify.ROUNDED_DISK_TOL,
            "point": verify.ROUNDED_POINT_TOL,
            "canon_residual": verify.ROUNDED_CANON_RESIDUAL,
            "crith": verify.ROUNDED_CRITERION_TOL,
            "pi": 1e-10,
        }
    return a, meta, tols


def _as_rank3_6x6(a: np.ndarray) -> np.ndarray:
    """Compress to the active subspace and zero-pad to 6x6."""
    core = pisom.compress_to_active_subspace(a)
    n = core.shape[0]
    if n > 6:
        raise pisom.CanonicalFormError("active subspace larger than 6")
    out = np.zeros((6, 6), dtype=complex)
    out[:n, :n] = core
    return out


def _complex_pair(z: complex):
    return [float(np.real(z)), float(np.imag(z))]


def _analysis_report(a: np.ndarray, meta: dict, tols: dict) -> dict:
    s = np.linalg.svd(a, compute_uv=False)
    rank = int(np.sum(s > 1e-9 * s[0])) if s.size and s[0] > 0 else 0
    report = kipp.detect_circles(
        a, tol=tols["detect"], disk_tol=tols["disk"], point_tol=tols["point"]
    )
    w, arg_thetas = kipp.numerical_radius(a)
    out = {
        "label": meta.get("label"),
        "n": int(a.shape[0]),
        "rank": rank,
        "defect": pisom.defect(a),
        "numericalRadius": w,
        "radiusArgAngles": [float(t) for t in arg_thetas[:8]],
        "circles": [
            {
                "center": _complex_pair(c.center),
                "radius": float(c.radius),
                "degenerate": bool(c.degenerate),
                "source": c.source,
            }
            for c in report.circles
        ],
        "disk": report.disk,
    }
    pi_dev = float(np.max(np.minimum(np.abs(s), np.abs(s - 1.0)))) if s.size else 0.0
    out["partialIsometry"] = {"is": bool(pi_dev <= tols["pi"]), "deviation": pi_dev}
    if out["partialIsometry"]["is"] and rank == 3:
        try:
            a6 = _as_rank3_6x6(a)
            pi = pisom.validate(a6, max(tols["pi"], 1e-10))
            form6, _, phase = pisom.canonicalize_rank3(pi)
            out["canonicalRank3"] = {
                "a": form6.a,
                "b": form6.b,
                "c": form6.c,
                "v": form6.v,
                "d": _complex_pair(form6.d),
                "e": _complex_pair(form6.e),
                "f": _complex_pair(form6.f),
                "lambda2": _complex_pair(form6.lambda2),
                "lambda3": _complex_pair(form6.lambda3),
                "phase": float(phase),
            }
            if pisom.defect(pi) >= 2:
                form, _, _ = pisom.canonicalize_defect2(
                    pi, residual_tol=tols["canon_residual"]
                )
                closed = criteria.circles_defect2(
                    form, ztol=max(criteria.ZTOL, tols["detect"])
                )
                tag, reason = criteria.disk_classification(form, crith_tol=tols["crith"])
                out["canonicalDefect2"] = {
                    k: float(getattr(form, k)) for k in ("b", "c", "d", "e", "f", "g", "h")
                }
                out["closedFormCircles"] = [float(r) for r in closed]
                out["closedFormDisk"] = {"classification": tag, "reason": reason}
        except pisom.CanonicalFormError as exc:
            out["canonicalNote"] = str(exc)
    return out


def _print_analysis(rep: dict):
    if rep.get("label"):
        click.echo(f"label: {rep['label']}")
    click.echo(f"n: {rep['n']}  rank: {rep['rank']}  defect: {rep['defect']}")
    click.echo(f"numerical radius: {rep['numericalRadius']:.10f}")
    if rep["circles"]:
        for c in rep["circles"]:
            kind = "degenerate point" if c["degenerate"] else "circle"
            click.echo(
                f"{kind}: center {c['center'][0]:.6g}{c['center'][1]:+.6g}i"
                f" radius {c['radius']:.10f} [{c['source']}]"
            )
    else:
        click.echo("no circles")
    click.echo(f"disk classification: {rep['disk']}")
    if "canonicalDefect2" in rep:
        p = rep["canonicalDefect2"]
        click.echo(
            "canonical parameters: "
            + " ".join(f"{k}={p[k]:.6f}" for k in ("b", "c", "d", "e", "f", "g", "h"))
        )
        closed = rep.get("closedFormCircles", [])
        click.echo(
            "closed-form radii: "
            + (" ".join(f"{r:.10f}" for r in closed) if closed else "none")
        )
        cf = rep["closedFormDisk"]
        click.echo(f"closed-form disk: {cf['classification']} ({cf['reason']})")
    if "canonicalNote" in rep:
        click.echo(f"canonical form note: {rep['canonicalNote']}")


@click.group()
def main():
    """Kippenhahn curves and circular components of partial isometries."""


@main.command()
@click.argument("input", type=click.Path())
@click.option("--project", is_flag=True, help="Repair rounded input to an exact partial isometry.")
@click.option("--json", "json_path", type=click.Path(), default=None, help="Also write the report as JSON.")
def analyze(input, project, json_path):
    """Rank, defect, circles, disk classification, numerical radius."""
    a, meta, tols = _load_input(input, project)
    rep = _analysis_report(a, meta, tols)
    _print_analysis(rep)
    if json_path:
        Path(json_path).write_text(json.dumps(rep, indent=2, sort_keys=True) + "\n")


@main.command()
@click.argument("input", type=click.Path())
@click.option("--steps", default=720, show_default=True, help="Theta steps (>= 4).")
@click.option("--out", "out_path", type=click.Path(), required=True, help="CSV output path.")
@click.option("--project", is_flag=True, help="Repair rounded input first.")
def trace(input, steps, out_path, project):
    """Trace the curve to CSV (columns theta,branch,lambda,re,im)."""
    a, _, _ = _load_input(input, project)
    if steps < 4:
        _fail(EXIT_VALIDATION, "need --steps >= 4")
    tr = kipp.trace_curve(a, steps)
    try:
        io.write_curve_csv(out_path, tr)
    except OSError as exc:
        _fail(EXIT_VALIDATION, f"cannot write {out_path}: {exc}")


@main.command(name="render")
@click.argument("input", type=click.Path())
@click.option("--steps", default=2048, show_default=True, help="Theta steps for the traced branches.")
@click.option("--out", "out_path", type=click.Path(), required=True, help="Figure path (.svg or .png).")
@click.option("--project", is_flag=True, help="Repair rounded input first.")
def render_cmd(input, steps, out_path, project):
    """Render the curve and detected circles to a figure file."""
    a, meta, tols = _load_input(input, project)
    report = kipp.detect_circles(
        a, tol=tols["detect"], disk_tol=tols["disk"], point_tol=tols["point"]
    )
    try:
        render.render_curve(
            a, out_path, steps=steps, circles=report.circles, title=meta.get("label")
        )
    except OSError as exc:
        _fail(EXIT_VALIDATION, f"cannot write {out_path}: {exc}")


@main.command()
@click.option("--seed", default=0, show_default=True)
@click.option("--trials", default=50, show_default=True, help="Trials per theorem.")
@click.option("--theorem", default=None, help="Run a single theorem id.")
@click.option("--json", "json_path", type=click.Path(), default=None, help="Write the JSON report.")
def fuzz(seed, trials, theorem, json_path):
    """Run the seeded theorem-check suite; exit 1 on any failure."""
    try:
        reports = verify.run_suite(seed, trials, theorem)
    except KeyError as exc:
        _fail(EXIT_PARSE, str(exc.args[0]))
    click.echo(verify.suite_table(reports))
    if json_path:
        Path(json_path).write_text(verify.suite_to_json(reports) + "\n")
    failures = sum(r.failures for r in reports if not r.exploratory)
    if failures:
        click.echo(f"{failures} failing trials", err=True)
        sys.exit(EXIT_CHECK)


@main.command(name="paper-examples")
@click.option("--json", "json_path", type=click.Path(), default=None, help="Write the comparison as JSON.")
def paper_examples(json_path):
    """Compare bundled reference configurations against published values."""
    rows, ok = verify.reproduce_reference_examples()
    click.echo(verify.reference_table(rows))
    if json_path:
        Path(json_path).write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n")
    if not ok:
        click.echo("reference comparison has failures", err=True)
        sys.exit(EXIT_CHECK)


@main.command()
@click.argument("input", type=click.Path())
@click.option("--project", is_flag=True, help="Repair rounded input first.")
@click.option("--json", "json_path", type=click.Path(), default=None)
def canon(input, project, json_path):
    """Canonical forms of a rank-three partial isometry."""
    a, meta, tols = _load_input(input, project)
    try:
        pi = pisom.validate(_as_rank3_6x6(a), max(tols["pi"], 1e-10))
    except (pisom.NotPartialIsometryError, pisom.CanonicalFormError) as exc:
        _fail(EXIT_VALIDATION, str(exc))
    if pi.rank != 3:
        _fail(EXIT_VALIDATION, f"need rank 3, got rank {pi.rank}")
    rep = _analysis_report(pi.matrix, meta, tols)
    out = {k: rep[k] for k in rep if k.startswith("canonical") or k.startswith("closedForm")}
    if "canonicalRank3" in rep:
        p = rep["canonicalRank3"]
        click.echo(
            "general form: a={a:.6f} b={b:.6f} c={c:.6f} v={v:.6f} "
            "d={d[0]:.6f}{d[1]:+.6f}i e={e[0]:.6f}{e[1]:+.6f}i "
            "f={f[0]:.6f}{f[1]:+.6f}i".format(**p)
        )
        click.echo(
            "eigenvalues: lambda2={lambda2[0]:.6f}{lambda2[1]:+.6f}i "
            "lambda3={lambda3[0]:.6f}{lambda3[1]:+.6f}i".format(**p)
        )
    if "canonicalDefect2" in rep:
        p = rep["canonicalDefect2"]
        click.echo(
            "defect-2 form: "
            + " ".join(f"{k}={p[k]:.6f}" for k in ("b", "c", "d", "e", "f", "g", "h"))
        )
    elif "canonicalNote" in rep:
        click.echo(f"note: {rep['canonicalNote']}")
    if json_path:
        Path(json_path).write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
