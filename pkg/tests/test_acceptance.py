"""The eight acceptance criteria at their stated scales and time limits.

Each test records one PASS/FAIL line, printed in the terminal summary.
"""

import itertools
import time

import pytest

from kangaroolab.fpoly import Poly, binom_residue, delete_c_power_monomials, parse
from kangaroolab.harness import (
    fact_campaign,
    golden_replay,
    kangaroo_scan,
    moh_trial,
    zwickel_sweep,
)
from kangaroolab.kangaroo import ceiling_equivalence_check
from kangaroolab.oblique import hybrid, hybrid_oblique, integral_oblique, wagner_scalar

YZ = ("y", "z")


class Criterion:
    def __init__(self, log, n, title, limit=None):
        self.log, self.n, self.title, self.limit = log, n, title, limit

    def __enter__(self):
        self.start = time.perf_counter()
        self.detail = ""
        self.log[self.n] = f"criterion {self.n} FAIL {self.title} (did not finish)"
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        in_time = self.limit is None or elapsed < self.limit
        ok = exc_type is None and in_time
        limit = f" limit={self.limit}s" if self.limit else ""
        self.log[self.n] = (f"criterion {self.n} {'PASS' if ok else 'FAIL'} {self.title} "
                            f"time={elapsed:.2f}s{limit} {self.detail}".rstrip())
        print(self.log[self.n])
        if exc_type is None and not in_time:
            pytest.fail(f"criterion {self.n} took {elapsed:.2f}s, limit {self.limit}s")
        return False


@pytest.fixture(scope="module")
def scan():
    # shared by criteria 5 and 8
    start = time.perf_counter()
    report = kangaroo_scan(2, 5, 4)
    return report, time.perf_counter() - start


def test_criterion_1_golden_replay(acceptance_log):
    with Criterion(acceptance_log, 1, "golden replay", 1.0) as cr:
        rep = golden_replay()
        hist = rep.state.history
        cr.detail = "; ".join(rep.lines())
        assert tuple(s.order for s in hist) == (2, 2, 2, 2)
        assert tuple(s.shade.shade for s in hist) == (5, 2, 2, 3)
        assert tuple(s.r for s in hist) == ((0, 0), (3, 0), (3, 3), (0, 6))
        assert hist[-1].shade.witness == parse("y*z^3", 2, YZ)
        assert rep.ok


def test_criterion_2_hybrid_integral_cross_check(acceptance_log):
    with Criterion(acceptance_log, 2, "hybrid/integral agreement", 10.0) as cr:
        cases, degenerate, exceptions = 0, 0, []
        for p in (2, 3, 5):
            for r, s, k in itertools.product(range(7), repeat=3):
                if (r + s + k) % p:
                    continue
                w = int(wagner_scalar(r, k, p))
                for t in range(1, p):
                    H = hybrid_oblique(r, s, k, t, p)
                    I = integral_oblique(s, r, k, t, p)
                    cases += 1
                    if not delete_c_power_monomials(H - I.scale(w), p)[0].is_zero():
                        exceptions.append((p, r, s, k, t))
                    if w == 0:
                        degenerate += 1
                        if not delete_c_power_monomials(H, p)[0].is_zero():
                            exceptions.append((p, r, s, k, t, "degenerate"))
        cr.detail = f"cases={cases} degenerate={degenerate} exceptions={len(exceptions)}"
        assert not exceptions, exceptions[:10]


def test_criterion_3_specific_values(acceptance_log):
    with Criterion(acceptance_log, 3, "specific values") as cr:
        vars = ("y", "z", "t")
        y, z, t = (Poly.var(v, 2, vars) for v in vars)
        # integral form at the only nonzero t of F_2, where t^2 = t = 1
        assert integral_oblique(3, 3, 2, 1, 2) == parse("y^3*z^3*(y^2+z^2)", 2, YZ)
        # hybrid form with t kept symbolic: y^r z^s H(y, t z - y)
        H = hybrid(3, 2, 2, vars[:2]).with_vars(vars)
        sym = parse("y^3*z^3", 2, vars) * H.substitute({"y": y, "z": t * z - y, "t": t})
        assert sym == t * parse("y^4*z^4", 2, vars)
        assert hybrid_oblique(3, 3, 2, 1, 2) == parse("y^4*z^4", 2, YZ)
        assert binom_residue(-3, 3, 2) == 0
        assert binom_residue(-1, 3, 2) == 1
        cr.detail = "integral=y^3*z^3*(y^2+z^2) hybrid=t*y^4*z^4 C(-3,3)=0 C(-1,3)=1"


def test_criterion_4_moh_bound(acceptance_log):
    with Criterion(acceptance_log, 4, "Moh bound", 60.0) as cr:
        reports = [moh_trial(2, 1, 10_000, seed=0), moh_trial(3, 1, 10_000, seed=0), moh_trial(2, 2, 10_000, seed=0)]
        cr.detail = " | ".join(r.lines()[0] for r in reports)
        for rep in reports:
            assert rep.ok, rep.lines()
            assert rep.max_jump <= rep.ceiling
        assert [r.ceiling for r in reports] == [1, 1, 2]


def test_criterion_5_kangaroo_scan(acceptance_log, scan):
    report, elapsed = scan
    with Criterion(acceptance_log, 5, "kangaroo necessity/sufficiency", 300.0 - elapsed) as cr:
        cr.detail = report.lines()[0] + f" scan_time={elapsed:.2f}s"
        assert not report.necessity_failures
        assert not report.sufficiency_failures
        assert not report.unexpected_drops
        assert not report.uniqueness_failures
        assert report.admissible and all(report.uniqueness[key] == 1 for key in report.admissible)
        assert report.ok


def test_criterion_6_ceiling_form_equivalence(acceptance_log):
    # the printed ceiling form is the negation of the inequality form on every
    # residue vector, so this criterion fails as stated; see test_kangaroo for
    # the corrected strict form, which agrees everywhere
    with Criterion(acceptance_log, 6, "ceiling-form equivalence", 10.0) as cr:
        total, exceptions = 0, []
        for c in range(1, 8):
            for m in range(1, 5):
                for rb in itertools.product(range(c), repeat=m):
                    total += 1
                    if not ceiling_equivalence_check(rb, c):
                        exceptions.append((c, rb))
        cr.detail = f"vectors={total} exceptions={len(exceptions)}"
        assert not exceptions, f"{len(exceptions)} of {total} residue vectors disagree, e.g. {exceptions[:3]}"


def test_criterion_7_zwickel_sweep(acceptance_log):
    with Criterion(acceptance_log, 7, "zwickel sweep", 300.0) as cr:
        rep = zwickel_sweep(3, 4, 12, 2, seed=0)
        cr.detail = rep.lines()[0]
        assert rep.ok, rep.lines()[:20]


def test_criterion_8_fact(acceptance_log, scan):
    report, _ = scan
    with Criterion(acceptance_log, 8, "shade halving between oasis and antelope") as cr:
        fact = fact_campaign(2, 5, 4, seed=0, prefixes=16, scan=report)
        cr.detail = fact.lines()[0]
        assert fact.checked > 0
        assert not fact.violations, fact.lines()
