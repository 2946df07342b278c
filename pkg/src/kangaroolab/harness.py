"""Verification campaigns: Moh's bound, kangaroo scans, the oasis fact and the golden replay.

Every campaign is deterministic in its master seed.  Trial ``i`` draws from
``random.Random(f"{seed}:{i}")`` so results do not depend on the worker count.
"""

from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import dataclass, field
from importlib import resources
from multiprocessing import Pool
from typing import Any, Callable, Iterable, Sequence

from .blowup import (
    BlowupScript,
    BlowupStep,
    FormError,
    InseparableForm,
    ResolutionState,
    replay,
    weak_transform,
)
from .fpoly import INFINITY, Poly, order
from .kangaroo import (
    Triple,
    classify_history,
    condition_report,
    detect_kangaroo,
    exceptional_points,
)
from .oblique import ObliqueParams, integral_oblique, uniqueness_search
from .zwickel import SweepRecord, ZwickelContext, check_context, contexts

SURFACE = ("y", "z")


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("KANGAROOLAB_WORKERS", "1")))
    except ValueError:
        return 1


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with Pool(workers) as pool:
        return pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers)))


def reproduction_script(form: InseparableForm, steps: Sequence[BlowupStep], **extra) -> dict[str, Any]:
    script = BlowupScript(form.p, form.e, str(form.to_poly()), tuple(steps), form.r, form.x, form.yvars,
                          dict(extra))
    return script.to_json()


# ---------------------------------------------------------------------------
# Moh's bound

@dataclass
class MohRecord:
    trial: int
    shade_before: int | float
    shade_after: int | float | None
    skipped: bool = False
    script: dict | None = None


@dataclass
class MohReport:
    p: int
    e: int
    trials: int
    seed: int
    jumps: dict[int, int] = field(default_factory=dict)
    skipped: int = 0
    dropped: int = 0
    violations: list[MohRecord] = field(default_factory=list)

    @property
    def ceiling(self) -> int:
        return self.p ** (self.e - 1)

    @property
    def max_jump(self) -> int:
        ups = [d for d in self.jumps if d > 0]
        return max(ups, default=0)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = [f"moh p={self.p} e={self.e} trials={self.trials} seed={self.seed} skipped={self.skipped} "
               f"dropped={self.dropped} ceiling={self.ceiling} max_jump={self.max_jump} "
               f"violations={len(self.violations)}"]
        for d in sorted(self.jumps):
            out.append(f"moh-jump delta={d} count={self.jumps[d]}")
        for v in self.violations:
            out.append("moh-violation " + json.dumps(v.script, sort_keys=True))
        return out


def random_homogeneous(rng: random.Random, p: int, vars: Sequence[str], degree: int, density: float) -> Poly:
    terms = {}
    m = len(vars)
    for e in _compositions(degree, m):
        if rng.random() < density:
            terms[e] = rng.randrange(1, p)
    if not terms:
        terms[rng.choice(list(_compositions(degree, m)))] = rng.randrange(1, p)
    return Poly(p, vars, terms)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for a in range(total, -1, -1):
        for rest in _compositions(total - a, parts - 1):
            yield (a,) + rest


def random_form(rng: random.Random, p: int, e: int, *, m: int = 2, rmax: int = 4, extra: int = 3,
                density: float = 0.4) -> InseparableForm:
    """``x^c + y^r g`` with ``|r| + ord g >= 2c`` so every y-chart point keeps the order."""
    c = p ** e
    vars = SURFACE if m == 2 else tuple(f"y{m - i}" for i in range(m))
    r = tuple(rng.randint(0, rmax) for _ in range(m))
    k = max(0, 2 * c - sum(r)) + rng.randint(0, 2)
    g = Poly.zero(p, vars)
    for d in range(k, k + extra + 1):
        if d == k or rng.random() < 0.5:
            g = g + random_homogeneous(rng, p, vars, d, density)
    return InseparableForm(Poly.monomial(r, p, vars) * g, r, c)


def oblique_seeded_form(rng: random.Random, p: int, *, rmax: int = 5, kmax: int = 4,
                        extra: int = 2) -> tuple[InseparableForm, BlowupStep] | None:
    """An order-p form whose tangent cone is an integral-form oblique, plus its jump point."""
    for _ in range(20):
        r = rng.randint(1, rmax)
        s = rng.randint(1, rmax)
        if r % p == 0 or s % p == 0 or r % p + s % p > p:
            continue
        k = rng.randint(0, kmax)
        k += (-(r + s + k)) % p
        if r + s + k < 2 * p:
            k += p
        t = rng.randrange(1, p)
        P = integral_oblique(s, r, k, t, p)
        if P.is_zero():
            continue
        higher = Poly.zero(p, SURFACE)
        for d in range(k + 1, k + extra + 1):
            if rng.random() < 0.5:
                higher = higher + random_homogeneous(rng, p, SURFACE, d, 0.3)
        F = P + Poly.monomial((r, s), p, SURFACE) * higher
        try:
            form = InseparableForm(F, (r, s), p)
        except FormError:
            continue
        return form, BlowupStep("z", {"y": t})
    return None


@dataclass(frozen=True)
class MohBounds:
    rmax: int = 4
    extra: int = 3
    density: float = 0.4
    seeded: float = 0.3


def _moh_one(args: tuple[int, int, int, int, MohBounds]) -> MohRecord:
    p, e, seed, i, bounds = args
    rng = random.Random(f"{seed}:{i}")
    step = None
    seeded = oblique_seeded_form(rng, p) if rng.random() < bounds.seeded else None
    if seeded is not None:
        form, step = seeded
        if e > 1:
            # in characteristic p, F -> F^(p^(e-1)) multiplies every shade by p^(e-1)
            q = p ** (e - 1)
            form = InseparableForm(form.F ** q, tuple(a * q for a in form.r), p ** e)
    else:
        form = random_form(rng, p, e, rmax=bounds.rmax, extra=bounds.extra, density=bounds.density)
    state = ResolutionState.start(form)
    before = state.last.shade.shade
    if before == INFINITY:
        return MohRecord(i, before, None, skipped=True)
    if step is None:
        points = exceptional_points(form.yvars, p)
        step = rng.choice(points)
    new = weak_transform(state, step)
    if new.status != "active":
        return MohRecord(i, before, None, skipped=True)
    after = new.last.shade.shade
    record = MohRecord(i, before, after)
    if after != INFINITY and after - before > p ** (e - 1):
        record.script = reproduction_script(form, [step], trial=i, seed=seed)
    return record


def moh_trial(p: int, e: int, trials: int, seed: int = 0, workers: int | None = None,
              bounds: MohBounds | None = None) -> MohReport:
    """Random equiconstant blowups checking ``shade' <= shade + p^(e-1)``."""
    workers = default_workers() if workers is None else workers
    bounds = bounds or MohBounds()
    report = MohReport(p, e, trials, seed)
    records = _map(_moh_one, [(p, e, seed, i, bounds) for i in range(trials)], workers)
    for rec in records:
        if rec.skipped:
            report.skipped += 1
            continue
        if rec.shade_after == INFINITY:
            report.dropped += 1
            continue
        delta = int(rec.shade_after - rec.shade_before)
        report.jumps[delta] = report.jumps.get(delta, 0) + 1
        if rec.script is not None:
            report.violations.append(rec)
    return report


# ---------------------------------------------------------------------------
# kangaroo scan at tangent-cone scale

@dataclass
class ScanEvent:
    r: tuple[int, ...]
    g: Poly
    step: BlowupStep
    classification: str
    shade_before: int | float
    shade_after: int | float | None
    conditions: tuple[bool, bool, bool, bool]

    @property
    def form(self) -> InseparableForm:
        return InseparableForm(Poly.monomial(self.r, self.g.p, self.g.vars) * self.g, self.r, self.g.p)

    def line(self) -> str:
        cs = ",".join("1" if c else "0" for c in self.conditions)
        after = "-" if self.shade_after is None else self.shade_after
        return (f"r={','.join(map(str, self.r))} g={self.g} point=({self.step}) {self.classification} "
                f"shade {self.shade_before} -> {after} conditions={cs}")


@dataclass
class ScanReport:
    p: int
    rmax: int
    kmax: int
    forms: int = 0
    jumps: list[ScanEvent] = field(default_factory=list)
    necessity_failures: list[ScanEvent] = field(default_factory=list)
    sufficiency_failures: list[ScanEvent] = field(default_factory=list)
    order_drops: list[ScanEvent] = field(default_factory=list)
    uniqueness: dict[tuple[tuple[int, ...], int], int] = field(default_factory=dict)
    admissible: set = field(default_factory=set)

    @property
    def unexpected_drops(self) -> list[ScanEvent]:
        """Order drops at points satisfying (1)-(4) that are not explained by |r| + k = p."""
        return [ev for ev in self.order_drops if sum(ev.r) + ev.g.degree() != self.p]

    @property
    def uniqueness_failures(self) -> list[tuple]:
        out = []
        for key, n in sorted(self.uniqueness.items()):
            if (n == 1) != (key in self.admissible):
                out.append((key, n))
        return out

    @property
    def ok(self) -> bool:
        return not (self.necessity_failures or self.sufficiency_failures or self.unexpected_drops
                    or self.uniqueness_failures)

    def lines(self) -> list[str]:
        out = [f"kangaroo-scan p={self.p} rmax={self.rmax} kmax={self.kmax} forms={self.forms} "
               f"jumps={len(self.jumps)} necessity_failures={len(self.necessity_failures)} "
               f"sufficiency_failures={len(self.sufficiency_failures)} "
               f"non_equiconstant={len(self.order_drops)} unexpected={len(self.unexpected_drops)} "
               f"uniqueness_failures={len(self.uniqueness_failures)}"]
        out += ["jump " + ev.line() for ev in self.jumps]
        out += ["necessity-failure " + ev.line() for ev in self.necessity_failures]
        out += ["sufficiency-failure " + ev.line() for ev in self.sufficiency_failures]
        out += ["non-equiconstant " + ev.line() for ev in self.order_drops]
        for (r, k), n in sorted(self.uniqueness.items()):
            if (r, k) in self.admissible or n:
                out.append(f"oblique-classes r={','.join(map(str, r))} k={k} classes={n}")
        return out


def _scan_one(args: tuple[int, tuple[int, int], int, tuple[int, ...]]) -> list[ScanEvent]:
    p, r, k, coeffs = args
    monos = list(_compositions(k, 2))
    g = Poly(p, SURFACE, {e: c for e, c in zip(monos, coeffs) if c})
    F = Poly.monomial(r, p, SURFACE) * g
    form = InseparableForm(F, r, p)
    state = ResolutionState.start(form)
    if state.last.shade.bold_regular:
        return []
    events = []
    for step in exceptional_points(SURFACE, p):
        det = detect_kangaroo(state, step, check=False)
        rep = condition_report(form, state.last.shade, step, with_cond4=True)
        conds = (rep.cond1, rep.cond2, rep.cond3, bool(rep.cond4))
        events.append(ScanEvent(r, g, step, det.classification, det.shade_before, det.shade_after, conds))
    return events


def kangaroo_scan(p: int, rmax: int, kmax: int, workers: int | None = None) -> ScanReport:
    """All forms ``x^p + y^r g`` with g homogeneous, r <= (rmax, rmax), deg g <= kmax."""
    workers = default_workers() if workers is None else workers
    report = ScanReport(p, rmax, kmax)
    jobs = []
    for ry in range(rmax + 1):
        for rz in range(rmax + 1):
            for k in range(kmax + 1):
                if ry + rz + k < p:
                    continue
                for coeffs in itertools.product(range(p), repeat=k + 1):
                    if any(coeffs):
                        jobs.append((p, (ry, rz), k, coeffs))
    results = _map(_scan_one, jobs, workers)
    for events in results:
        if events:
            report.forms += 1
        for ev in events:
            holds = all(ev.conditions)
            if ev.classification == "kangaroo":
                report.jumps.append(ev)
                if not holds:
                    report.necessity_failures.append(ev)
            elif holds:
                if ev.classification == "order-dropped":
                    report.order_drops.append(ev)
                else:
                    report.sufficiency_failures.append(ev)
    for ry in range(rmax + 1):
        for rz in range(rmax + 1):
            for k in range(kmax + 1):
                params = ObliqueParams(p, (rz, ry), k)
                # main variable z first, so r is listed as (r_z, r_y)
                classes = uniqueness_search(params, 2, ("z", "y"))
                report.uniqueness[((ry, rz), k)] = len(classes)
                if params.admissible:
                    report.admissible.add(((ry, rz), k))
    return report


# ---------------------------------------------------------------------------
# the oasis fact

def blow_down(form: InseparableForm, rng: random.Random) -> tuple[InseparableForm, BlowupStep] | None:
    """A random earlier point whose blowup leads to ``form``, verified by blowing up again."""
    p, c = form.p, form.c
    yv = form.yvars
    if len(yv) != 2:
        raise NotImplementedError("blow-downs are implemented for surfaces")
    vi = rng.randrange(2)
    ui = 1 - vi
    v, u = yv[vi], yv[ui]
    if form.r[ui] > 0:
        tu = 0
    else:
        tu = rng.randrange(p)
    # F_prev = V^c F'(U/V - t, V), term a U^i V^j -> a (U - tV)^i V^(j + c - i)
    U = Poly.var(u, p, yv)
    V = Poly.var(v, p, yv)
    F_prev = Poly.zero(p, yv)
    base = U - V.scale(tu)
    for e, a in form.F.items():
        i, j = e[ui], e[vi]
        if j + c - i < 0:
            return None
        F_prev = F_prev + (base ** i) * (V ** (j + c - i)).scale(a)
    if F_prev.is_zero() or order(F_prev) < c:
        return None
    content = F_prev.monomial_content()
    r_prev = [0, 0]
    if form.r[ui] > 0:
        r_prev[ui] = form.r[ui]
    elif tu and content[ui] and rng.random() < 0.5:
        r_prev[ui] = rng.randint(1, content[ui])
    if content[vi] and rng.random() < 0.5:
        r_prev[vi] = rng.randint(1, content[vi])
    try:
        prev = InseparableForm(F_prev, tuple(r_prev), c, form.x)
    except FormError:
        return None
    step = BlowupStep(v, {u: tu})
    after = weak_transform(ResolutionState.start(prev), step)
    if after.status != "active" or after.current.F != form.F or after.current.r != form.r:
        return None
    return prev, step


def fact_sequences(antelopes: Iterable[tuple[InseparableForm, BlowupStep]], seed: int = 0,
                   prefixes: int = 3, depth: int = 5) -> list[ResolutionState]:
    """Blowup sequences ending in a kangaroo jump, extended backwards by random blow-downs."""
    out = []
    for n, (form, jump_step) in enumerate(antelopes):
        for trial in range(prefixes + 1):
            rng = random.Random(f"{seed}:{n}:{trial}")
            current, steps = form, [jump_step]
            if trial:
                for _ in range(rng.randint(1, depth)):
                    down = None
                    for _attempt in range(8):
                        down = blow_down(current, rng)
                        if down is not None:
                            break
                    if down is None:
                        break
                    current, step = down
                    steps.insert(0, step)
                    if not any(current.r):
                        break
            state = ResolutionState.start(current)
            for step in steps:
                state = weak_transform(state, step)
            out.append(state)
    return out


@dataclass
class FactReport:
    sequences: int = 0
    triples: list[Triple] = field(default_factory=list)
    without_oasis: int = 0
    exceptional: list[Triple] = field(default_factory=list)
    violations: list[Triple] = field(default_factory=list)
    scripts: list[dict] = field(default_factory=list)

    @property
    def checked(self) -> int:
        return len(self.triples) - self.without_oasis - len(self.exceptional)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = [f"fact sequences={self.sequences} triples={len(self.triples)} checked={self.checked} "
               f"without_oasis={self.without_oasis} oasis_shade_2={len(self.exceptional)} "
               f"violations={len(self.violations)}"]
        for t in self.triples:
            if t.oasis is None:
                continue
            out.append(f"triple oasis={t.oasis} antelope={t.antelope} kangaroo={t.kangaroo} "
                       f"shades={t.shade_oasis},{t.shade_antelope},{t.shade_kangaroo}")
        for s in self.scripts:
            out.append("fact-violation " + json.dumps(s, sort_keys=True))
        return out


def oasis_fact_check(states: Iterable[ResolutionState]) -> FactReport:
    """``shade(antelope) <= floor(shade(oasis) / 2)`` on every tagged triple; oasis shade 2 is set aside."""
    report = FactReport()
    for state in states:
        report.sequences += 1
        for t in classify_history(state).triples:
            report.triples.append(t)
            if t.oasis is None:
                report.without_oasis += 1
            elif t.shade_oasis == 2:
                report.exceptional.append(t)
            elif t.shade_oasis != INFINITY and t.shade_antelope > t.shade_oasis // 2:
                report.violations.append(t)
                first = state.history[0].form
                report.scripts.append(reproduction_script(first, state.steps))
    return report


def fact_campaign(p: int = 2, rmax: int = 5, kmax: int = 4, seed: int = 0, prefixes: int = 16,
                  scan: ScanReport | None = None, workers: int | None = None) -> FactReport:
    scan = scan or kangaroo_scan(p, rmax, kmax, workers)
    antelopes = [(ev.form, ev.step) for ev in scan.jumps]
    return oasis_fact_check(fact_sequences(antelopes, seed, prefixes))


# ---------------------------------------------------------------------------
# golden replay

GOLDEN_SHADES = (5, 2, 2, 3)
GOLDEN_R = ((0, 0), (3, 0), (3, 3), (0, 6))
GOLDEN_WITNESS = "y*z^3"
GOLDEN_ANTELOPE = "y^5*z^3+y^3*z^5"


@dataclass
class GoldenReport:
    checks: list[tuple[str, bool, str]]
    state: ResolutionState

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        return [f"golden {name} {'ok' if ok else 'MISMATCH'} {detail}" for name, ok, detail in self.checks]


def golden_script() -> BlowupScript:
    with resources.files("kangaroolab").joinpath("data/kangaroo_p2.json").open() as fh:
        return BlowupScript.from_json(json.load(fh))


def golden_replay(script: BlowupScript | None = None) -> GoldenReport:
    script = script or golden_script()
    state = replay(script)
    hist = state.history
    orders = tuple(s.order for s in hist)
    shades = tuple(s.shade.shade for s in hist)
    rs = tuple(s.r for s in hist)
    tags = classify_history(state)
    kangaroo_steps = [t.kangaroo for t in tags.triples]
    witness = str(hist[-1].shade.witness)
    checks = [
        ("status", state.status == "active", state.status),
        ("orders", orders == (2, 2, 2, 2), str(orders)),
        ("shades", shades == GOLDEN_SHADES, str(shades)),
        ("divisors", rs == GOLDEN_R, str(rs)),
        ("kangaroo", kangaroo_steps == [3], str(kangaroo_steps)),
        ("witness", witness == GOLDEN_WITNESS, witness),
        ("antelope", len(hist) > 2 and str(hist[2].form.F) == GOLDEN_ANTELOPE, str(hist[2].form.F) if len(hist) > 2 else "-"),
    ]
    return GoldenReport(checks, state)


# ---------------------------------------------------------------------------
# zwickel sweep

@dataclass
class ZwickelReport:
    params: dict[str, int]
    seed: int
    records: list[SweepRecord]

    @property
    def failures(self) -> list[SweepRecord]:
        return [r for r in self.records if not r.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self, verbose: bool = False) -> list[str]:
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        out = [f"zwickel {ps} seed={self.seed} contexts={len(self.records)} failures={len(self.failures)}"]
        out += [r.line() for r in (self.records if verbose else self.failures)]
        return out


def _zwickel_one(args: tuple[ZwickelContext, int, bool]) -> SweepRecord:
    ctx, seed, exact = args
    return check_context(ctx, seed, exact=exact)


def zwickel_sweep(mmax: int = 3, cmax: int = 4, degmax: int = 12, p: int = 2, seed: int = 0,
                  exact: bool = False, workers: int | None = None) -> ZwickelReport:
    """Slices, oracle matrix, determinant monomiality and round trip on every context."""
    workers = default_workers() if workers is None else workers
    ctxs = contexts(mmax, cmax, degmax, p)
    jobs = [(ctx, seed * 1_000_003 + i, exact) for i, ctx in enumerate(ctxs)]
    records = _map(_zwickel_one, jobs, workers)
    return ZwickelReport({"mmax": mmax, "cmax": cmax, "degmax": degmax, "p": p}, seed, records)
