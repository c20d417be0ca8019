"""Command-line interface.

Usage:
    wmub enumerate --p1 3 --p2 7
    wmub table --p1 3 --p2 7 --out table.csv
    wmub verify --p1 3 --p2 7 --out report.json
    wmub zeros --p1 3 --p2 7 --labels "2,3;2,5" --m 4
    wmub plot --p1 3 --p2 7 --labels "2,3;2,5" --out lines.svg
    wmub plot --p1 3 --p2 7 --labels "2,3;2,5" --m 4 --out zeros.svg

Exit codes: 0 success, 1 verification failure, 2 bad input.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass

import click

from .bases import BasisLabel, all_labels, enumerate_wmubs, unfactored_label
from .errors import InvalidDimension, NotMaximal, TrialityViolation, WmubError
from .geometry import enumerate_lines, line, line_for_label
from .modring import CrtContext, crt_context
from .theta import half_integer_lattice, zero_line
from .triality import build_triality, verify_intersections

__all__ = ["RunConfig", "cli", "main", "parse_labels", "plot_svg", "table_rows", "verify_report"]

SCHEMA_VERSION = 1
MAX_DIMENSION = 255
TABLE_HEADER = (
    "unfactored_basis",
    "factored_basis",
    "unfactored_line",
    "factored_line",
    "unfactored_zeroset",
    "factored_zeroset",
)


@dataclass(frozen=True)
class RunConfig:
    p1: int
    p2: int
    command: str
    out: str | None = None
    fmt: str = "csv"
    tol: float = 1e-7

    def __post_init__(self):
        if self.p1 * self.p2 > MAX_DIMENSION:
            raise InvalidDimension(f"d = {self.p1 * self.p2} exceeds {MAX_DIMENSION}")

    @property
    def ctx(self) -> CrtContext:
        return crt_context(self.p1, self.p2)


def parse_labels(text: str, ctx: CrtContext, unfactored: bool = False) -> list[BasisLabel]:
    """'a,b;c,d' -> labels.  With ``unfactored`` the pairs are (rho, sigma) of a line."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            a, b = (int(x) for x in chunk.replace("−", "-").split(","))
        except ValueError:
            raise ValueError(f"cannot read label {chunk!r}") from None
        if unfactored:
            out.append(line(a, b, ctx).factored_label)
        else:
            out.append(BasisLabel.of(a, b, ctx))
    if not out:
        raise ValueError("no labels given")
    return out


# -- table ------------------------------------------------------------------------

MATH_B, MATH_L, MATH_A = "\U0001d4d1", "\U0001d4db", "\U0001d4d0"


def table_rows(ctx: CrtContext) -> list[tuple[str, ...]]:
    rows = []
    for rec in build_triality(ctx, verify_zeros=False):
        lab = rec.basis_label
        ub = "({},{})".format(*rec.unfactored_basis)
        ul = "({},{})".format(*rec.line.pair)
        uz = "({},{})".format(*rec.zero_set.unfactored_label)
        rows.append(
            (f"B{ub}", f"{MATH_B}{lab}", f"L{ul}", f"{MATH_L}{rec.line.factored_label}", f"A{uz}", f"{MATH_A}{rec.zero_set.label}")
        )
    return rows


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# -- verify -----------------------------------------------------------------------


def _zero_sum_offset(total: complex, d: int) -> tuple[float, float]:
    """(sum - d^2/2 (1+i)) / d, which must be a Gaussian integer."""
    off = (total - d * d / 2 * (1 + 1j)) / d
    return off.real, off.imag


def verify_report(ctx: CrtContext, tol: float = 1e-7) -> dict:
    d = ctx.d
    psi = (ctx.p1 + 1) * (ctx.p2 + 1)
    checks: dict[str, dict] = {}
    mismatches: list[dict] = []

    def check(name, passed, **detail):
        checks[name] = {"pass": bool(passed), **detail}

    n_bases, n_lines = len(enumerate_wmubs(ctx)), len(enumerate_lines(ctx))
    check("psi_count", n_bases == psi and n_lines == psi, bases=n_bases, lines=n_lines)
    if n_bases != psi or n_lines != psi:
        mismatches.append({"check": "psi_count", "bases": n_bases, "lines": n_lines})

    try:
        records = build_triality(ctx, rtol=tol)
    except (TrialityViolation, WmubError) as exc:
        check("triality", False, error=str(exc))
        mismatches.append({"check": "triality", "label": str(getattr(exc, "label", "")), "error": str(exc)})
        return _report(ctx, psi, [], checks, mismatches)
    check("triality", True, records=len(records))

    bad_slope = [str(r.basis_label) for r in records if not r.slope_ok]
    check("slopes", not bad_slope, failures=bad_slope)
    bad_offsets = [str(r.basis_label) for r in records if not r.offsets_match]
    check("line_offsets", not bad_offsets, failures=bad_offsets)

    residual = max(zl.max_residual for r in records for zl in r.zero_set.lines)
    check("zero_residual", residual < tol, max_relative=residual, tol=tol)

    lattice = half_integer_lattice(d)
    bad_lattice = [str(r.basis_label) for r in records if r.zero_set.union() != lattice]
    check("zero_lattice", not bad_lattice, failures=bad_lattice)

    bad_sum, literal_misses = [], 0
    for r in records:
        for zl in r.zero_set.lines:
            re, im = _zero_sum_offset(zl.zero_sum(), d)
            if abs(re - round(re)) > 1e-9 or abs(im - round(im)) > 1e-9:
                bad_sum.append({"label": str(r.basis_label), "m": zl.m})
            elif round(re) or round(im):
                literal_misses += 1
    check(
        "zero_sum_congruence",
        not bad_sum,
        failures=bad_sum,
        literal_mismatches=literal_misses,
        vectors=d * len(records),
    )

    report = verify_intersections(ctx, records)
    check("intersections", report.ok, pairs=len(report.checks), failures=len(report.mismatches))
    for c in report.mismatches:
        mismatches.append(
            {
                "check": "intersections",
                "a": str(c.a),
                "b": str(c.b),
                "predicted": c.predicted,
                "line_count": c.line_count,
                "zero_counts": list(c.zero_counts),
                "overlap_profile": [str(x) for x in c.overlap_profile],
            }
        )
    for name in ("slopes", "line_offsets", "zero_residual", "zero_lattice", "zero_sum_congruence"):
        if not checks[name]["pass"]:
            mismatches.append({"check": name, **{k: v for k, v in checks[name].items() if k != "pass"}})

    return _report(ctx, psi, records, checks, mismatches)


def _report(ctx, psi, records, checks, mismatches) -> dict:
    d = ctx.d
    rec_out = []
    for r in records:
        direction = r.zero_set.direction
        rec_out.append(
            {
                "label": list(r.basis_label.pair),
                "unfactored_basis": list(r.unfactored_basis),
                "line": list(r.line.pair),
                "zero_direction": [direction.real, direction.imag],
                "slope_cross": r.slope_cross,
                "offsets_match": r.offsets_match,
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "dimension": d,
        "primes": [ctx.p1, ctx.p2],
        "psi": psi,
        "records": rec_out,
        "checks": checks,
        "mismatches": mismatches,
        "pass_count": sum(c["pass"] for c in checks.values()),
        "check_count": len(checks),
    }


# -- svg --------------------------------------------------------------------------

SVG_SIZE = 600
SVG_MARGIN = 10
_COLORS = ("#1f4e9c", "#2a8a3e", "#8a5a2a", "#6a2a8a")


def plot_svg(point_sets: list[list[tuple[float, float]]], d: int, title: str = "") -> str:
    """Scatter plot over [0,d)^2; the first set is drawn with circles, the second
    with crosses, and points common to every set are highlighted."""
    span = SVG_SIZE - 2 * SVG_MARGIN
    scale = span / d

    def xy(p):
        return SVG_MARGIN + p[0] * scale, SVG_SIZE - SVG_MARGIN - p[1] * scale

    r = max(2.0, scale * 0.3)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f"<title>{title}</title>",
        f'<rect x="{SVG_MARGIN}" y="{SVG_MARGIN}" width="{span}" height="{span}" fill="none" stroke="#999"/>',
    ]
    for k, pts in enumerate(point_sets):
        color = _COLORS[k % len(_COLORS)]
        for p in sorted(pts):
            x, y = xy(p)
            if k % 2 == 0:
                parts.append(f'<circle class="set{k}" cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}" fill="none" stroke="{color}"/>')
            else:
                parts.append(
                    f'<path class="set{k}" d="M{x - r:.2f},{y - r:.2f}L{x + r:.2f},{y + r:.2f}'
                    f'M{x - r:.2f},{y + r:.2f}L{x + r:.2f},{y - r:.2f}" stroke="{color}"/>'
                )
    if len(point_sets) > 1:
        shared = set(point_sets[0]).intersection(*point_sets[1:])
        for p in sorted(shared):
            x, y = xy(p)
            parts.append(f'<circle class="shared" cx="{x:.2f}" cy="{y:.2f}" r="{r * 1.6:.2f}" fill="#d62728" fill-opacity="0.5"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# -- commands ---------------------------------------------------------------------


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _config(p1, p2, command, out=None, fmt="csv", tol=1e-7) -> RunConfig:
    try:
        cfg = RunConfig(p1, p2, command, out, fmt, tol)
        cfg.ctx
    except (InvalidDimension, ValueError) as exc:
        raise click.UsageError(str(exc)) from None
    return cfg


def _labels(text, ctx, unfactored) -> list[BasisLabel]:
    try:
        return parse_labels(text, ctx, unfactored)
    except (ValueError, NotMaximal) as exc:
        raise click.UsageError(str(exc)) from None


prime_opts = [
    click.option("--p1", type=int, required=True, help="First odd prime."),
    click.option("--p2", type=int, required=True, help="Second odd prime."),
]


def _with_primes(f):
    for opt in reversed(prime_opts):
        f = opt(f)
    return f


@click.group()
def cli():
    """Weak mutually unbiased bases, phase-space lines and theta zeros for d = p1*p2."""


@cli.command("enumerate")
@_with_primes
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
def enumerate_cmd(p1, p2, out, fmt):
    """List every basis label with its unfactored label and line."""
    ctx = _config(p1, p2, "enumerate", out, fmt).ctx
    rows = []
    for lab in all_labels(ctx):
        ln = line_for_label(lab, ctx)
        rows.append((lab.nu1, lab.nu2, *unfactored_label(lab, ctx), ln.rho, ln.sigma))
    if fmt == "json":
        keys = ("nu1", "nu2", "mu_hat", "nu_hat", "rho", "sigma")
        _emit(json.dumps({"dimension": ctx.d, "psi": len(rows), "labels": [dict(zip(keys, r)) for r in rows]}, indent=2) + "\n", out)
    else:
        _emit(_csv_text(("nu1", "nu2", "mu_hat", "nu_hat", "rho", "sigma"), rows), out)


@cli.command()
@_with_primes
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
def table(p1, p2, out, fmt):
    """Correspondence table of bases, lines and zero sets."""
    ctx = _config(p1, p2, "table", out, fmt).ctx
    rows = table_rows(ctx)
    if fmt == "json":
        _emit(json.dumps([dict(zip(TABLE_HEADER, r)) for r in rows], ensure_ascii=False, indent=2) + "\n", out)
    else:
        _emit(_csv_text(TABLE_HEADER, rows), out)


@cli.command()
@_with_primes
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["json"]), default="json")
@click.option("--tol", type=float, default=1e-7, show_default=True, help="Relative zero residual bound.")
def verify(p1, p2, out, fmt, tol):
    """Check the correspondence; exit 1 on any mismatch."""
    ctx = _config(p1, p2, "verify", out, fmt, tol).ctx
    report = verify_report(ctx, tol)
    _emit(json.dumps(report, indent=2) + "\n", out)
    n_bad = len(report["mismatches"])
    click.echo(
        f"d={ctx.d}: {report['pass_count']}/{report['check_count']} checks passed, {n_bad} mismatches",
        err=True,
    )
    if n_bad:
        sys.exit(1)


@cli.command()
@_with_primes
@click.option("--labels", required=True, help='Factored labels, e.g. "2,3;2,5".')
@click.option("--m", "m", type=int, required=True, help="Vector index in Z(d).")
@click.option("--unfactored", is_flag=True, help="Read labels as line pairs (rho,sigma).")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--tol", type=float, default=1e-7, show_default=True)
def zeros(p1, p2, labels, m, unfactored, out, fmt, tol):
    """Zeros in the cell [0,d)^2 of the analytic representation of basis vectors."""
    ctx = _config(p1, p2, "zeros", out, fmt, tol).ctx
    labs = _labels(labels, ctx, unfactored)
    lines = [zero_line(lab, *ctx.to_bar_components(m), ctx, rtol=tol) for lab in labs]
    if fmt == "json":
        doc = [
            {"label": list(zl.label.pair), "m": zl.m, "zeros": [[z.real, z.imag] for z in zl.zeros], "max_residual": zl.max_residual}
            for zl in lines
        ]
        _emit(json.dumps(doc, indent=2) + "\n", out)
    else:
        rows = [(zl.label.nu1, zl.label.nu2, zl.m, k, z.real, z.imag) for zl in lines for k, z in enumerate(zl.zeros)]
        _emit(_csv_text(("nu1", "nu2", "m", "index", "re", "im"), rows), out)


@cli.command()
@_with_primes
@click.option("--labels", required=True, help='Factored labels, e.g. "2,3;2,5".')
@click.option("--m", "m", type=int, default=None, help="Plot zeros of vector m instead of lines.")
@click.option("--unfactored", is_flag=True, help="Read labels as line pairs (rho,sigma).")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["svg"]), default="svg")
def plot(p1, p2, labels, m, unfactored, out, fmt):
    """SVG of lines (or, with --m, lines of zeros) for the given labels."""
    ctx = _config(p1, p2, "plot", out, fmt).ctx
    labs = _labels(labels, ctx, unfactored)
    if m is None:
        sets = [list(line_for_label(lab, ctx).points) for lab in labs]
        title = "lines " + " ".join(str(lab) for lab in labs)
    else:
        sets = [[(z.real, z.imag) for z in zero_line(lab, *ctx.to_bar_components(m), ctx).zeros] for lab in labs]
        title = f"zeros m={m % ctx.d} " + " ".join(str(lab) for lab in labs)
    _emit(plot_svg(sets, ctx.d, title), out)


def main():
    cli(prog_name="wmub")


if __name__ == "__main__":
    main()
