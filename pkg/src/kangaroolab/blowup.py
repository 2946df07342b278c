"""Point blowups of purely inseparable forms ``x^c + F(y)`` in chart coordinates.

A chart along the y-variable ``v`` with translation ``t`` is the map
``x -> x*v``, ``y_j -> v*(y_j + t_j)`` for ``j != v``, ``v -> v``; the weak
transform divides by ``v^c``.  Before blowing up, ``F`` is replaced by its
stripped form (the coordinate change ``x -> x - witness``) so the center
lies on a hypersurface of weak maximal contact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping, Sequence

from .fpoly import (
    Poly,
    DivisionError,
    divide_exact,
    order,
    p_power_exponent,
    parse,
)
from .shade import INFINITY, Jump, ShadeResult, shade, shade_jump


class FormError(ValueError):
    """A polynomial that does not have the shape x^c + y^r * g(y)."""


class ResolutionFinished(RuntimeError):
    """A further blowup was requested after the order already dropped."""


@dataclass(frozen=True)
class InseparableForm:
    """``x^c + F(y)`` with exceptional multiplicities ``r`` on the y-variables."""

    F: Poly
    r: tuple[int, ...]
    c: int
    x: str = "x"

    def __post_init__(self) -> None:
        r = tuple(int(a) for a in self.r)
        object.__setattr__(self, "r", r)
        try:
            p_power_exponent(self.c, self.F.p)
        except ValueError as exc:
            raise FormError(f"x-degree: {exc}") from None
        if self.x in self.F.vars:
            raise FormError(f"F must not involve the variable {self.x!r}")
        if len(r) != len(self.F.vars):
            raise FormError(f"r has {len(r)} entries for {len(self.F.vars)} y-variables")
        if any(a < 0 for a in r):
            raise FormError("multiplicities must be natural numbers")
        try:
            divide_exact(self.F, r)
        except DivisionError as exc:
            raise FormError(f"y^r does not divide F: {exc}") from None
        if order(self.F) < self.c:
            raise FormError(f"F has order {order(self.F)} < c = {self.c}; the form is not of order c")

    @property
    def p(self) -> int:
        return self.F.p

    @property
    def e(self) -> int:
        return p_power_exponent(self.c, self.F.p)

    @property
    def yvars(self) -> tuple[str, ...]:
        return self.F.vars

    def to_poly(self) -> Poly:
        vars = (self.x,) + self.F.vars
        xc = Poly.monomial((self.c,) + (0,) * len(self.F.vars), self.p, vars)
        return xc + self.F.with_vars(vars)

    @classmethod
    def from_poly(cls, f: Poly, r: Sequence[int] | None = None, x: str = "x") -> InseparableForm:
        ix = f.index(x)
        xterms = [(e, c) for e, c in f.items() if e[ix]]
        if len(xterms) != 1:
            raise FormError(f"expected exactly one term involving {x}, found {len(xterms)}")
        (e, coeff), = xterms
        if coeff != 1 or any(a for i, a in enumerate(e) if i != ix):
            raise FormError(f"the {x}-term must be a pure power with coefficient 1")
        yvars = tuple(v for v in f.vars if v != x)
        F = f.filter_terms(lambda ex, _: not ex[ix]).with_vars(yvars)
        r = tuple(r) if r is not None else (0,) * len(yvars)
        return cls(F, r, e[ix], x)

    @classmethod
    def parse(cls, text: str, p: int, r: Sequence[int] | None = None, x: str = "x",
              yvars: Sequence[str] | None = None) -> InseparableForm:
        if yvars is None:
            f = parse(text, p)
            if x not in f.vars:
                f = f.with_vars((x,) + f.vars)
        else:
            f = parse(text, p, (x,) + tuple(yvars))
        return cls.from_poly(f, r, x)

    def __str__(self) -> str:
        return str(self.to_poly())


@dataclass(frozen=True)
class BlowupStep:
    """Chart variable plus the coordinates of the target point on the exceptional divisor."""

    chart: str
    translation: tuple[tuple[str, int], ...] = ()

    def __init__(self, chart: str, translation: Mapping[str, int] | Sequence[tuple[str, int]] = ()) -> None:
        items = dict(translation)
        if chart in items:
            raise ValueError(f"the chart variable {chart!r} cannot carry a translation")
        object.__setattr__(self, "chart", chart)
        # zero entries are dropped so equal points compare equal
        object.__setattr__(self, "translation", tuple(sorted((v, int(a)) for v, a in items.items() if int(a))))

    def t(self, var: str) -> int:
        for v, a in self.translation:
            if v == var:
                return a
        return 0

    def as_dict(self) -> dict[str, Any]:
        return {"chart": self.chart, "translation": dict(self.translation)}

    def __str__(self) -> str:
        moves = ", ".join(f"{v}+{a}" for v, a in self.translation)
        return f"chart {self.chart}" + (f" at ({moves})" if moves else "")


@dataclass(frozen=True)
class Snapshot:
    """One visited point: the form there, its order and shade, and who made its components."""

    index: int
    step: BlowupStep | None
    form: InseparableForm
    order: int
    shade: ShadeResult
    labels: tuple[int | None, ...]

    @property
    def r(self) -> tuple[int, ...]:
        return self.form.r


@dataclass(frozen=True)
class ResolutionState:
    history: tuple[Snapshot, ...]
    status: str = "active"
    dropped: Poly | None = None
    dropped_step: BlowupStep | None = None

    @classmethod
    def start(cls, form: InseparableForm) -> ResolutionState:
        labels = tuple(0 if a > 0 else None for a in form.r)
        return cls((Snapshot(0, None, form, form.c, shade(form), labels),))

    @property
    def current(self) -> InseparableForm:
        return self.history[-1].form

    @property
    def last(self) -> Snapshot:
        return self.history[-1]

    @property
    def p(self) -> int:
        return self.current.p

    @property
    def steps(self) -> list[BlowupStep]:
        return [s.step for s in self.history[1:]]


def chart_map(vars: Sequence[str], step: BlowupStep, p: int, extra: Sequence[str] = ()) -> dict[str, Poly]:
    """Images of ``vars`` under the chart map of ``step`` (over ``vars + extra``)."""
    amb = tuple(vars) + tuple(extra)
    if step.chart not in amb:
        raise ValueError(f"unknown chart variable {step.chart!r}")
    for v, _ in step.translation:
        if v not in amb:
            raise ValueError(f"translation names unknown variable {v!r}")
    u = Poly.var(step.chart, p, amb)
    images = {}
    for v in vars:
        if v == step.chart:
            images[v] = u
        else:
            images[v] = u * (Poly.var(v, p, amb) + step.t(v))
    return images


def blowup_poly(F: Poly, step: BlowupStep, c: int) -> Poly:
    """Weak transform ``F(chart map) / chart^c`` of the y-part, without validation."""
    if step.chart not in F.vars:
        raise ValueError(f"chart {step.chart!r} is not a y-variable")
    G = F.substitute(chart_map(F.vars, step, F.p))
    exp = tuple(c if v == step.chart else 0 for v in F.vars)
    return divide_exact(G, exp)


def transform_divisor(r: Sequence[int], shade_value: int | float, c: int, step: BlowupStep,
                      yvars: Sequence[str]) -> tuple[int, ...]:
    """Multiplicities at the new point: the chart hyperplane gets ``|r| + shade - c``.

    An old component ``y_i = 0`` survives with its multiplicity iff the
    point lies on its strict transform, i.e. iff ``t_i = 0``.
    """
    if step.chart not in yvars:
        raise ValueError(f"chart {step.chart!r} is not a y-variable")
    total = sum(r)
    if shade_value == INFINITY:
        new = 0
    else:
        new = total + int(shade_value) - c
        if new < 0:
            raise ValueError(f"|r| + shade = {total + shade_value} < c = {c}")
    out = []
    for v, a in zip(yvars, r):
        if v == step.chart:
            out.append(new)
        else:
            out.append(a if step.t(v) == 0 else 0)
    return tuple(out)


def is_equiconstant(before: InseparableForm, after: InseparableForm | Poly) -> bool:
    F = after.F if isinstance(after, InseparableForm) else after
    return order(F) >= before.c


def weak_transform(state: ResolutionState, step: BlowupStep) -> ResolutionState:
    """Blow up the origin of the current chart and move to the point ``step``.

    An x-chart or an order below ``c`` ends the process: the returned state
    has status ``"order-dropped"`` and keeps the offending transform.
    """
    if state.status != "active":
        raise ResolutionFinished(f"resolution already {state.status}")
    snap = state.last
    form = snap.form
    p = form.p
    step = BlowupStep(step.chart, {v: a % p for v, a in step.translation})
    if step.chart == form.x:
        f = form.to_poly()
        amb = f.vars
        images = chart_map(amb, step, p)
        g = f.substitute(images)
        exp = tuple(form.c if v == form.x else 0 for v in amb)
        dropped = divide_exact(g, exp)
        return replace(state, status="order-dropped", dropped=dropped, dropped_step=step)
    if step.chart not in form.yvars:
        raise ValueError(f"unknown chart variable {step.chart!r}")
    sh = snap.shade
    F_new = blowup_poly(sh.stripped, step, form.c)
    if not is_equiconstant(form, F_new):
        return replace(state, status="order-dropped", dropped=F_new, dropped_step=step)
    r_new = transform_divisor(form.r, sh.shade, form.c, step, form.yvars)
    new_form = InseparableForm(F_new, r_new, form.c, form.x)
    idx = snap.index + 1
    labels = tuple(
        idx if v == step.chart else (lab if step.t(v) == 0 else None)
        for v, lab in zip(form.yvars, snap.labels)
    )
    new_snap = Snapshot(idx, step, new_form, form.c, shade(new_form), labels)
    return replace(state, history=state.history + (new_snap,))


def step_classification(before: Snapshot, after: Snapshot) -> Jump:
    return shade_jump((before.order, before.shade.shade), (after.order, after.shade.shade))


# ---------------------------------------------------------------------------
# blowup scripts

@dataclass(frozen=True)
class BlowupScript:
    p: int
    e: int
    f0: str
    steps: tuple[BlowupStep, ...]
    r0: tuple[int, ...] | None = None
    x: str = "x"
    yvars: tuple[str, ...] | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def initial_form(self) -> InseparableForm:
        form = InseparableForm.parse(self.f0, self.p, self.r0, self.x, self.yvars)
        if form.c != self.p ** self.e:
            raise FormError(f"f0 has x-degree {form.c}, expected p^e = {self.p ** self.e}")
        return form

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"p": self.p, "e": self.e, "f0": self.f0,
                               "steps": [s.as_dict() for s in self.steps]}
        if self.r0 is not None:
            out["r0"] = list(self.r0)
        if self.x != "x":
            out["x"] = self.x
        if self.yvars is not None:
            out["y"] = list(self.yvars)
        out.update(self.extra)
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> BlowupScript:
        try:
            steps = tuple(BlowupStep(s["chart"], s.get("translation", {})) for s in data["steps"])
            known = {"p", "e", "f0", "steps", "r0", "x", "y"}
            return cls(
                p=int(data["p"]),
                e=int(data["e"]),
                f0=str(data["f0"]),
                steps=steps,
                r0=tuple(data["r0"]) if "r0" in data else None,
                x=data.get("x", "x"),
                yvars=tuple(data["y"]) if "y" in data else None,
                extra={k: v for k, v in data.items() if k not in known},
            )
        except KeyError as exc:
            raise ValueError(f"blowup script is missing the field {exc.args[0]!r}") from None


def load_script(path: str | Path) -> BlowupScript:
    with open(path) as fh:
        return BlowupScript.from_json(json.load(fh))


def replay(script: BlowupScript) -> ResolutionState:
    state = ResolutionState.start(script.initial_form())
    for step in script.steps:
        state = weak_transform(state, step)
        if state.status != "active":
            break
    return state
