"""Kangaroo points: the four necessary conditions, candidate points, detection and tagging.

A kangaroo point is an equiconstant point after a blowup where the shade
goes up.  The point before it is the antelope point, and the oasis is the
last earlier point at which none of the exceptional components through the
antelope had been created yet.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .blowup import BlowupStep, InseparableForm, ResolutionState, Snapshot, weak_transform
from .fpoly import INFINITY, Poly, order
from .oblique import Disqualified, obliqueness_test
from .shade import Jump, shade_jump


class NecessityViolation(AssertionError):
    """A kangaroo jump happened although one of the necessary conditions failed."""


class MohViolation(AssertionError):
    """The shade rose by more than p^(e-1) across one blowup."""


# ---------------------------------------------------------------------------
# arithmetic conditions

def residues(r, c: int) -> tuple[int, ...]:
    if c <= 0:
        raise ValueError("c must be positive")
    return tuple(a % c for a in r)


def phi(r, c: int) -> int:
    return sum(1 for a in residues(r, c) if a)


def condition1(r, ordg: int | float, p: int) -> bool:
    if ordg == INFINITY:
        return False
    return (sum(r) + int(ordg)) % p == 0


def inequality_form(r, c: int) -> bool:
    """``sum of residues <= (phi - 1) * c``."""
    return sum(residues(r, c)) <= (phi(r, c) - 1) * c


def condition2(r, p: int) -> bool:
    return inequality_form(r, p)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def ceiling_form(r, c: int) -> bool:
    """``sum ceil(rbar_i / c) <= ceil(sum rbar_i / c)`` as printed."""
    rb = residues(r, c)
    return sum(_ceil_div(a, c) for a in rb) <= _ceil_div(sum(rb), c)


def ceiling_equivalence_check(r, c: int) -> bool:
    """Whether the inequality form and the ceiling form agree on ``r``."""
    return inequality_form(r, c) == ceiling_form(r, c)


def strict_ceiling_form(r, c: int) -> bool:
    """``sum ceil(rbar_i / c) > ceil(sum rbar_i / c)``.

    The left side counts the nonzero residues, so this is ``phi > ceil(S/c)``,
    i.e. ``S <= (phi - 1) c``: the same statement as the inequality form.
    """
    rb = residues(r, c)
    return sum(_ceil_div(a, c) for a in rb) > _ceil_div(sum(rb), c)


# ---------------------------------------------------------------------------
# candidate points

def exceptional_points(yvars, p: int) -> list[BlowupStep]:
    """Every F_p-rational point of the exceptional divisor that lies in a y-chart.

    A point with homogeneous coordinates on the y-variables is listed once,
    in the chart of its last nonzero coordinate, scaled to 1 there.
    """
    out = []
    for ci, chart in enumerate(yvars):
        before = yvars[:ci]
        for values in itertools.product(range(p), repeat=len(before)):
            out.append(BlowupStep(chart, dict(zip(before, values))))
    return out


def lies_off_components(step: BlowupStep, form: InseparableForm) -> bool:
    """Condition (3): off every old component y_i = 0 with p not dividing r_i."""
    p = form.p
    for v, a in zip(form.yvars, form.r):
        if v == step.chart:
            continue
        if a % p and step.t(v) % p == 0:
            return False
    return True


def condition3_candidates(form: InseparableForm, p: int | None = None) -> list[BlowupStep]:
    p = form.p if p is None else p
    return [s for s in exceptional_points(form.yvars, p) if lies_off_components(s, form)]


# ---------------------------------------------------------------------------
# reports and detection

@dataclass
class ConditionReport:
    cond1: bool
    cond2: bool
    cond3: bool
    cond3_candidates: list[BlowupStep]
    cond4: bool | None
    residues: tuple[int, ...]
    phi: int
    order: int | float
    k: int | float
    disqualified: bool = False

    @property
    def all_hold(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3 and bool(self.cond4)

    def line(self) -> str:
        c4 = "-" if self.cond4 is None else str(self.cond4).lower()
        return (f"cond1={str(self.cond1).lower()} cond2={str(self.cond2).lower()} "
                f"cond3={str(self.cond3).lower()} cond4={c4} residues={','.join(map(str, self.residues))} "
                f"phi={self.phi} order={self.order}")


def tangent_cone(form: InseparableForm, snap_shade) -> Poly:
    """``y^r`` times the lowest-degree part of ``g`` for the stripped form."""
    return snap_shade.stripped.homogeneous_part(order(snap_shade.stripped))


def condition4(form: InseparableForm, snap_shade, step: BlowupStep) -> tuple[bool, bool]:
    """(holds, disqualified) for the tangent cone at the translation of ``step``."""
    if snap_shade.bold_regular:
        return False, False
    P = tangent_cone(form, snap_shade)
    t = {v: step.t(v) for v in form.yvars if v != step.chart}
    try:
        return obliqueness_test(P, t=t, main=step.chart, r=form.r), False
    except Disqualified:
        return False, True


def condition_report(form: InseparableForm, snap_shade, step: BlowupStep, *, with_cond4: bool | None = None) -> ConditionReport:
    """Conditions (1)-(4) at the current point for a blowup towards ``step``.

    Condition (4) is only evaluated when (1)-(3) hold unless ``with_cond4``
    forces it either way.
    """
    p = form.p
    k = snap_shade.shade
    c1 = condition1(form.r, k, p)
    c2 = condition2(form.r, p)
    cands = condition3_candidates(form)
    c3 = BlowupStep(step.chart, {v: a % p for v, a in step.translation}) in cands
    c4 = None
    disq = False
    want = (c1 and c2 and c3) if with_cond4 is None else with_cond4
    if want:
        c4, disq = condition4(form, snap_shade, step)
    total = sum(form.r) + k if k != INFINITY else INFINITY
    return ConditionReport(c1, c2, c3, cands, c4, residues(form.r, p), phi(form.r, p), total, k, disq)


@dataclass
class Detection:
    classification: str
    report: ConditionReport
    shade_before: int | float
    shade_after: int | float | None
    state: ResolutionState
    blocked: bool = False

    def line(self) -> str:
        after = "-" if self.shade_after is None else _fmt(self.shade_after)
        extra = " blocked-by-higher-order-terms" if self.blocked else ""
        return f"{self.classification} shade {_fmt(self.shade_before)} -> {after} {self.report.line()}{extra}"


def _fmt(v) -> str:
    return "inf" if v == INFINITY else str(v)


def detect_kangaroo(state: ResolutionState, step: BlowupStep, *, check: bool = True) -> Detection:
    """Blow up towards ``step`` and classify the new point.

    For order-p forms (e = 1) a jump with a failed condition raises
    ``NecessityViolation``; any jump above p^(e-1) raises ``MohViolation``.
    """
    snap = state.last
    form = snap.form
    report = condition_report(form, snap.shade, step)
    new_state = weak_transform(state, step)
    before = snap.shade.shade
    if new_state.status != "active":
        return Detection("order-dropped", report, before, None, new_state)
    after_snap = new_state.last
    after = after_snap.shade.shade
    jump = shade_jump((snap.order, before), (after_snap.order, after))
    if jump is Jump.KANGAROO:
        if report.cond4 is None:
            report.cond4, report.disqualified = condition4(form, snap.shade, step)
        if check:
            if after - before > form.c // form.p:
                raise MohViolation(f"shade rose from {before} to {after} at {step} for {form}")
            if form.e == 1 and not report.all_hold:
                raise NecessityViolation(f"jump at {step} for {form} with {report.line()}")
        return Detection("kangaroo", report, before, after, new_state)
    blocked = form.e == 1 and report.all_hold
    return Detection("not-kangaroo", report, before, after, new_state, blocked)


# ---------------------------------------------------------------------------
# history tagging

@dataclass(frozen=True)
class Triple:
    oasis: int | None
    antelope: int
    kangaroo: int
    shade_oasis: int | float | None
    shade_antelope: int | float
    shade_kangaroo: int | float


@dataclass
class History:
    tags: list[set[str]] = field(default_factory=list)
    triples: list[Triple] = field(default_factory=list)

    def summary(self) -> list[str]:
        return [",".join(sorted(t)) if t else "ordinary" for t in self.tags]


def oasis_index(snap: Snapshot) -> int | None:
    """Last point before ``snap`` at which none of its exceptional components existed."""
    born = [lab for lab in snap.labels if lab is not None]
    if not born:
        return snap.index - 1 if snap.index > 0 else None
    first = min(born)
    return first - 1 if first > 0 else None


def classify_history(state: ResolutionState) -> History:
    hist = state.history
    if not hist:
        raise ValueError("empty history")
    out = History([set() for _ in hist])
    for i in range(1, len(hist)):
        a, b = hist[i - 1], hist[i]
        if shade_jump((a.order, a.shade.shade), (b.order, b.shade.shade)) is not Jump.KANGAROO:
            continue
        oasis = oasis_index(a)
        out.tags[i].add("kangaroo")
        out.tags[i - 1].add("antelope")
        if oasis is not None:
            out.tags[oasis].add("oasis")
        out.triples.append(Triple(
            oasis, i - 1, i,
            hist[oasis].shade.shade if oasis is not None else None,
            a.shade.shade, b.shade.shade,
        ))
    return out
