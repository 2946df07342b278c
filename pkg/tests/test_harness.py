import dataclasses
import json
import random

from kangaroolab import cli
from kangaroolab.blowup import BlowupStep, InseparableForm, ResolutionState, replay, weak_transform
from kangaroolab.fpoly import parse
from kangaroolab.harness import (
    MohBounds,
    blow_down,
    fact_campaign,
    fact_sequences,
    golden_replay,
    golden_script,
    kangaroo_scan,
    moh_trial,
    oasis_fact_check,
    random_form,
    reproduction_script,
    zwickel_sweep,
)
from kangaroolab.kangaroo import classify_history

YZ = ("y", "z")


# ---------------------------------------------------------------------------
# golden replay

def test_golden_replay_passes():
    rep = golden_replay()
    assert rep.ok, rep.lines()
    assert len(rep.lines()) == len(rep.checks)


def test_golden_replay_with_untranslated_last_step_has_no_kangaroo():
    script = golden_script()
    steps = script.steps[:-1] + (BlowupStep(script.steps[-1].chart),)
    rep = golden_replay(dataclasses.replace(script, steps=steps))
    assert not rep.ok
    assert dict((n, ok) for n, ok, _ in rep.checks)["kangaroo"] is False


def test_golden_truncated_after_two_steps_is_the_antelope():
    script = golden_script()
    state = replay(dataclasses.replace(script, steps=script.steps[:2]))
    assert state.current.F == parse("y^3*z^3*(y^2+z^2)", 2, YZ)
    assert state.current.r == (3, 3)


# ---------------------------------------------------------------------------
# Moh trials

def test_random_forms_are_valid_and_seeded():
    a = [random_form(random.Random(f"s:{i}"), 2, 1) for i in range(20)]
    b = [random_form(random.Random(f"s:{i}"), 2, 1) for i in range(20)]
    assert a == b
    for f in a:
        assert isinstance(f, InseparableForm) and f.c == 2


def test_moh_trial_is_deterministic_and_bounded():
    r1 = moh_trial(2, 1, 300, seed=4, workers=1)
    r2 = moh_trial(2, 1, 300, seed=4, workers=1)
    assert r1.lines() == r2.lines()
    assert r1.ok and r1.max_jump <= 1
    r3 = moh_trial(3, 1, 200, seed=1, workers=1, bounds=MohBounds(rmax=3))
    assert r3.ok and r3.max_jump <= 1


def test_moh_trial_e2_reaches_but_respects_its_ceiling():
    rep = moh_trial(2, 2, 400, seed=0, workers=1)
    assert rep.ok and rep.ceiling == 2
    assert rep.max_jump <= 2


def test_moh_workers_do_not_change_the_report():
    assert moh_trial(2, 1, 120, seed=9, workers=1).lines() == moh_trial(2, 1, 120, seed=9, workers=2).lines()


# ---------------------------------------------------------------------------
# kangaroo scan

def test_small_scan():
    rep = kangaroo_scan(2, 3, 2, workers=1)
    assert rep.ok, rep.lines()
    assert any(ev.r == (3, 3) and ev.step == BlowupStep("z", {"y": 1}) for ev in rep.jumps)
    # condition (2) fails for r = (2, 2): nothing jumps there
    assert not any(ev.r == (2, 2) for ev in rep.jumps)
    assert rep.lines() == kangaroo_scan(2, 3, 2, workers=1).lines()


# ---------------------------------------------------------------------------
# the fact

def test_blow_down_inverts_a_blowup():
    form = InseparableForm(parse("y^3*z^3*(y^2+z^2)", 2, YZ), (3, 3), 2)
    rng = random.Random(0)
    found = 0
    for _ in range(40):
        down = blow_down(form, rng)
        if down is None:
            continue
        prev, step = down
        s = weak_transform(ResolutionState.start(prev), step)
        assert s.current.F == form.F and s.current.r == form.r
        found += 1
    assert found


def test_fact_on_golden_sequence():
    rep = oasis_fact_check([replay(golden_script())])
    assert rep.ok and rep.checked == 1
    (t,) = rep.triples
    assert t.shade_antelope == t.shade_oasis // 2


def test_fact_sequences_end_in_the_jump():
    form = InseparableForm(parse("y^3*z^3*(y^2+z^2)", 2, YZ), (3, 3), 2)
    states = fact_sequences([(form, BlowupStep("z", {"y": 1}))], seed=1, prefixes=4)
    assert len(states) == 5
    for s in states:
        assert classify_history(s).triples[-1].kangaroo == len(s.steps)


def test_fact_campaign_small():
    rep = fact_campaign(2, 3, 2, seed=0, prefixes=4, workers=1)
    assert rep.ok, rep.lines()
    assert rep.lines() == fact_campaign(2, 3, 2, seed=0, prefixes=4, workers=1).lines()


# ---------------------------------------------------------------------------
# zwickel sweep

def test_small_zwickel_sweep():
    rep = zwickel_sweep(2, 2, 4, 2, seed=3, exact=True, workers=1)
    assert rep.ok, rep.lines()
    assert rep.lines(verbose=True)[1:] == [r.line() for r in rep.records]


# ---------------------------------------------------------------------------
# reproduction scripts

def test_reproduction_script_replays_through_the_cli(tmp_path, capsys):
    form = InseparableForm(parse("y^3*z^3*(y^2+z^2)", 2, YZ), (3, 3), 2)
    data = reproduction_script(form, [BlowupStep("z", {"y": 1})], note="example")
    path = tmp_path / "repro.json"
    path.write_text(json.dumps(data))
    assert cli.main(["replay", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.rstrip().endswith("KANGAROO at step 1: shade 2 -> 3")
