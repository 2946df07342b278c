import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kangaroolab.blowup import (
    BlowupScript,
    BlowupStep,
    FormError,
    InseparableForm,
    ResolutionFinished,
    ResolutionState,
    blowup_poly,
    chart_map,
    is_equiconstant,
    load_script,
    replay,
    transform_divisor,
    weak_transform,
)
from kangaroolab.fpoly import INFINITY, Poly, order, parse, substitute
from kangaroolab.harness import golden_script
from kangaroolab.kangaroo import exceptional_points
from kangaroolab.shade import shade

YZ = ("y", "z")


def form(text, r, c=2, p=2):
    return InseparableForm(parse(text, p, YZ), r, c)


def test_step_normalization():
    assert BlowupStep("z", {"y": 0}) == BlowupStep("z")
    assert str(BlowupStep("z", {"y": 1})) == "chart z at (y+1)"
    with pytest.raises(ValueError):
        BlowupStep("z", {"z": 1})


def test_form_parse_and_print():
    f = InseparableForm.parse("x^2 + y^7 + y*z^4", 2)
    assert f.c == 2 and f.p == 2 and f.e == 1 and f.yvars == YZ
    assert f.to_poly() == parse("x^2 + y^7 + y*z^4", 2)
    with pytest.raises(FormError):
        InseparableForm.parse("x^2 + x*y^3 + y^7", 2)
    with pytest.raises(FormError):
        InseparableForm.parse("x^3 + y^7", 2)


def test_first_blowup():
    s0 = ResolutionState.start(form("y^7+y*z^4", (0, 0)))
    s1 = weak_transform(s0, BlowupStep("y", {"z": 0}))
    assert s1.current.F == parse("y^3*(y^2+z^4)", 2, YZ)
    assert s1.last.r == (3, 0)


def test_third_blowup():
    s = ResolutionState.start(form("y^3*z^3*(y^2+z^2)", (3, 3)))
    s = weak_transform(s, BlowupStep("z", {"y": 1}))
    assert s.current.F == parse("z^6*(y+1)^3*((y+1)^2+1)", 2, YZ)
    assert s.last.r == (0, 6)


def test_bold_regular_passes_through():
    zero = InseparableForm(Poly.zero(2, YZ), (0, 0), 2)
    for step in exceptional_points(YZ, 2):
        s = weak_transform(ResolutionState.start(zero), step)
        assert s.status == "active"
        assert s.current.F.is_zero() and s.last.r == (0, 0)


def test_transform_divisor_examples():
    assert transform_divisor((3, 3), 2, 2, BlowupStep("z", {"y": 1}), YZ) == (0, 6)
    assert transform_divisor((0, 0), 5, 2, BlowupStep("y"), YZ) == (3, 0)
    assert transform_divisor((0, 0), 2, 2, BlowupStep("y", {"z": 1}), YZ) == (0, 0)
    assert transform_divisor((1, 0), INFINITY, 2, BlowupStep("z"), YZ) == (1, 0)
    with pytest.raises(ValueError):
        transform_divisor((0, 0), 1, 2, BlowupStep("y"), YZ)


def test_equiconstancy():
    f = form("y^3*z^3*(y^2+z^2)", (3, 3))
    assert is_equiconstant(f, parse("y^2+y*z", 2, YZ))
    assert not is_equiconstant(f, parse("y+z^4", 2, YZ))
    assert is_equiconstant(f, Poly.zero(2, YZ))


def test_order_drop_and_x_chart_end_the_process():
    s = ResolutionState.start(form("y^3+z^3", (0, 0)))
    dropped = weak_transform(s, BlowupStep("z"))
    assert dropped.status == "order-dropped"
    assert order(dropped.dropped) < 2
    with pytest.raises(ResolutionFinished):
        weak_transform(dropped, BlowupStep("z"))
    xs = weak_transform(s, BlowupStep("x"))
    assert xs.status == "order-dropped"


def test_golden_sequence():
    state = replay(golden_script())
    hist = state.history
    assert [s.order for s in hist] == [2, 2, 2, 2]
    assert [s.shade.shade for s in hist] == [5, 2, 2, 3]
    assert [s.r for s in hist] == [(0, 0), (3, 0), (3, 3), (0, 6)]
    assert hist[2].form.F == parse("y^3*z^3*(y^2+z^2)", 2, YZ)
    assert hist[3].shade.witness == parse("y*z^3", 2, YZ)
    assert [s.labels for s in hist] == [(None, None), (1, None), (1, 2), (None, 3)]


def test_script_round_trip(tmp_path):
    script = golden_script()
    path = tmp_path / "s.json"
    path.write_text(json.dumps(script.to_json()))
    again = load_script(path)
    assert again == script
    assert replay(again).history == replay(script).history


def test_script_errors():
    with pytest.raises(ValueError):
        BlowupScript.from_json({"p": 2, "e": 1, "steps": []})
    bad = BlowupScript(2, 2, "x^2+y^3", ())
    with pytest.raises(FormError):
        bad.initial_form()


@st.composite
def states(draw):
    p = draw(st.sampled_from([2, 3]))
    r = (draw(st.integers(0, 3)), draw(st.integers(0, 3)))
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        d = draw(st.integers(max(p - sum(r), 0), 5))
        a = draw(st.integers(0, d))
        terms[(a + r[0], d - a + r[1])] = draw(st.integers(1, p - 1))
    F = Poly(p, YZ, terms)
    if order(F) < p:
        return None
    return ResolutionState.start(InseparableForm(F, r, p)), draw(st.integers(0, 10 ** 6))


@given(states())
@settings(max_examples=60, deadline=None)
def test_weak_transform_is_the_chart_substitution(pair):
    if pair is None:
        return
    state, seed = pair
    snap = state.last
    f = snap.form
    points = exceptional_points(f.yvars, f.p)
    step = points[seed % len(points)]
    new = weak_transform(state, step)
    G = blowup_poly(snap.shade.stripped, step, f.c)
    assert G * Poly.monomial(tuple(f.c if v == step.chart else 0 for v in f.yvars), f.p, f.yvars) == \
        substitute(snap.shade.stripped, chart_map(f.yvars, step, f.p))
    if new.status == "active":
        assert new.current.F == G
        # the new multiplicities divide the transform
        InseparableForm(G, new.last.r, f.c)
        assert new.last.shade == shade(new.current)
    else:
        assert order(G) < f.c
