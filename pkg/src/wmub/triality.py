"""The label-preserving correspondence between WMUBs, maximal lines and zero lines.

For each label (nu1, nu2) the record ties together

    B(nu1, nu2)  the weak MUB,
    L(nu1, nu2)  the maximal line through the origin,
    A(nu1, nu2)  the d parallel lines of zeros of the basis vectors,

and checks that the zero lines run parallel to the geometric line and that
pairwise intersections agree across all three pictures.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .bases import (
    BasisLabel,
    all_labels,
    measured_overlap_profile,
    predicted_overlap,
    unfactored_label,
    wmub_basis,
)
from .errors import OverlapMismatch, TrialityViolation
from .geometry import Line, common_points, line_for_label, slope_cross
from .modring import CrtContext
from .theta import ZeroLine, half_integer_lattice, zero_line

__all__ = [
    "IntersectionReport",
    "PairCheck",
    "TrialityRecord",
    "ZeroLineSet",
    "build_triality",
    "build_zero_line_set",
    "direction_pair",
    "max_pair_residual",
    "shared_zeros",
    "verify_intersections",
]


def direction_pair(direction: complex, d: int) -> tuple[int, int]:
    """(Re, Im) of a zero-line step as integers mod d."""
    return (int(round(direction.real)) % d, int(round(direction.imag)) % d)


@dataclass(frozen=True, eq=False)
class ZeroLineSet:
    label: BasisLabel
    lines: tuple[ZeroLine, ...]  # indexed by m
    unfactored_label: tuple[int, int]

    @property
    def d(self) -> int:
        return len(self.lines)

    @property
    def direction(self) -> complex:
        return self.lines[0].direction

    def is_parallel(self) -> bool:
        return all(zl.direction == self.direction for zl in self.lines)

    def union(self) -> frozenset[complex]:
        return frozenset(z for zl in self.lines for z in zl.zeros)

    def covers_lattice(self) -> bool:
        return self.union() == half_integer_lattice(self.d)

    def __str__(self):
        return f"A({self.unfactored_label[0]},{self.unfactored_label[1]})"


def build_zero_line_set(
    label: BasisLabel, ctx: CrtContext, verify: bool = True, rtol: float = 1e-7
) -> ZeroLineSet:
    lines = tuple(
        zero_line(label, *ctx.to_bar_components(m), ctx, verify=verify, rtol=rtol)
        for m in range(ctx.d)
    )
    return ZeroLineSet(label, lines, unfactored_label(label, ctx))


@dataclass(frozen=True)
class PairCheck:
    """Intersection counts for one label pair; zero counts are listed per m."""

    a: BasisLabel
    b: BasisLabel
    predicted: int
    line_count: int
    zero_counts: tuple[int, ...]
    overlap_profile: tuple[Fraction, ...]

    @property
    def expected_profile(self) -> tuple[Fraction, ...]:
        d = len(self.zero_counts)
        if self.predicted == 1:
            return (Fraction(1, d),)
        return (Fraction(0), Fraction(self.predicted, d))

    @property
    def ok(self) -> bool:
        return (
            self.line_count == self.predicted
            and all(c == self.predicted for c in self.zero_counts)
            and self.overlap_profile == self.expected_profile
        )


@dataclass(frozen=True, eq=False)
class TrialityRecord:
    basis_label: BasisLabel
    unfactored_basis: tuple[int, int]
    line: Line
    zero_set: ZeroLineSet
    slope_cross: int
    offsets_match: bool
    pair_checks: tuple[PairCheck, ...] = field(default=())

    @property
    def labels_agree(self) -> bool:
        return self.basis_label == self.line.factored_label == self.zero_set.label

    @property
    def slope_ok(self) -> bool:
        return self.slope_cross == 0


def _offsets(zl: ZeroLine, d: int) -> set[tuple[int, int]]:
    z0 = zl.zeros[0]
    return {(int(round((z - z0).real)) % d, int(round((z - z0).imag)) % d) for z in zl.zeros}


def build_triality(
    ctx: CrtContext, verify_zeros: bool = True, rtol: float = 1e-7
) -> list[TrialityRecord]:
    """One record per label, in label order.

    Raises TrialityViolation if the three labels disagree, the zero lines of a
    basis are not parallel, or their direction is not the slope of the line.
    """
    d = ctx.d
    records = []
    for label in all_labels(ctx):
        ln = line_for_label(label, ctx)
        zs = build_zero_line_set(label, ctx, verify=verify_zeros, rtol=rtol)
        cross = slope_cross(ln.pair, direction_pair(zs.direction, d), d)
        offsets = all(_offsets(zl, d) == set(ln.points) for zl in zs.lines)
        rec = TrialityRecord(label, unfactored_label(label, ctx), ln, zs, cross, offsets)
        if not rec.labels_agree:
            raise TrialityViolation(label, f"line carries {ln.factored_label}")
        if not zs.is_parallel():
            raise TrialityViolation(label, "zero lines are not parallel")
        if not rec.slope_ok:
            raise TrialityViolation(label, f"{ln} against zero direction {zs.direction} (cross {cross})")
        records.append(rec)
    return records


@dataclass(frozen=True)
class IntersectionReport:
    checks: tuple[PairCheck, ...]

    @property
    def mismatches(self) -> list[PairCheck]:
        return [c for c in self.checks if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def for_label(self, label: BasisLabel) -> tuple[PairCheck, ...]:
        return tuple(c for c in self.checks if label.pair in (c.a.pair, c.b.pair))

    def attach(self, records: list[TrialityRecord]) -> list[TrialityRecord]:
        return [replace(r, pair_checks=self.for_label(r.basis_label)) for r in records]


def verify_intersections(ctx: CrtContext, records: list[TrialityRecord] | None = None) -> IntersectionReport:
    """Compare |Z(m;a) & Z(m;b)|, |L(a) & L(b)| and r(a|b) for every pair and every m,
    along with the squared-overlap profile of the two bases."""
    if records is None:
        records = build_triality(ctx)
    bases = {r.basis_label.pair: wmub_basis(r.basis_label, ctx) for r in records}
    zero_sets = [[zl.point_set() for zl in r.zero_set.lines] for r in records]
    checks = []
    for i, ra in enumerate(records):
        for j in range(i + 1, len(records)):
            rb = records[j]
            a, b = ra.basis_label, rb.basis_label
            counts = tuple(len(za & zb) for za, zb in zip(zero_sets[i], zero_sets[j]))
            try:
                profile = tuple(sorted(measured_overlap_profile(bases[a.pair], bases[b.pair])))
            except OverlapMismatch:
                profile = ()
            checks.append(
                PairCheck(
                    a,
                    b,
                    predicted_overlap(a, b, ctx),
                    len(common_points(ra.line, rb.line)),
                    counts,
                    profile,
                )
            )
    return IntersectionReport(tuple(checks))


def shared_zeros(a: ZeroLine, b: ZeroLine) -> list[complex]:
    """Common zeros of two vectors, sorted by real then imaginary part."""
    return sorted(a.point_set() & b.point_set(), key=lambda z: (z.real, z.imag))


def max_pair_residual(records: list[TrialityRecord]) -> float:
    """Largest recorded zero residual across all records (nan when unverified)."""
    vals = [zl.max_residual for r in records for zl in r.zero_set.lines]
    return float(np.nanmax(vals)) if vals else float("nan")
