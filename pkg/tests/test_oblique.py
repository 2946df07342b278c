import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kangaroolab.fpoly import Poly, binom_residue, delete_c_power_monomials, parse
from kangaroolab.kangaroo import condition1, condition2
from kangaroolab.oblique import (
    Disqualified,
    MohCeilingError,
    ObliqueParams,
    atlas,
    hybrid,
    hybrid_is_degenerate,
    hybrid_oblique,
    integral_oblique,
    jet_construction,
    obliqueness_test,
    oblique_order,
    pth_power_factor_test,
    uniqueness_search,
    wagner_scalar,
)

YZ = ("y", "z")


def P(text, p=2, vars=YZ):
    return parse(text, p, vars)


# ---------------------------------------------------------------------------
# closed forms

def test_hybrid_examples():
    assert hybrid(1, 2, 2) == P("y^2+y*w+w^2", vars=("y", "w"))
    assert hybrid(3, 2, 2) == P("y^2+y*w", vars=("y", "w"))
    for p in (2, 3, 5):
        for n in range(6):
            assert hybrid(0, n, p) == P(f"(y+w)^{n}", p, ("y", "w"))


def test_hybrid_is_nonnegative_part_of_laurent_expansion():
    # y^(-r) (y + w)^(k + r): keep the terms with a nonnegative power of y
    for p in (2, 3, 5):
        for r in range(5):
            for k in range(5):
                want = {(i, k - i): binom_residue(k + r, i + r, p) for i in range(k + 1)}
                assert hybrid(r, k, p) == Poly(p, ("y", "w"), want)


def test_hybrid_oblique_examples():
    assert hybrid_oblique(3, 3, 2, 1, 2) == P("y^4*z^4")
    assert hybrid_is_degenerate(3, 2, 2)
    assert hybrid_oblique(2, 3, 0, 1, 3) == P("y^2*z^3", 3)
    assert hybrid_oblique(1, 1, 1, 1, 3) == P("y*z*(2*z-y)", 3)
    assert not hybrid_is_degenerate(1, 1, 3)


def test_integral_oblique_examples():
    assert integral_oblique(3, 3, 2, 1, 2) == P("y^3*z^3*(y^2+z^2)")
    assert integral_oblique(2, 3, 0, 1, 5) == P("y^3*z^2", 5).scale(pow(3, -1, 5))
    with pytest.raises(ValueError):
        integral_oblique(3, 3, 2, 0, 2)


def test_integral_oblique_against_rational_oracle():
    for p in (2, 3, 5, 7):
        for r, s, k in itertools.product(range(1, 5), range(4), range(5)):
            for t in range(1, p):
                want = Poly.monomial((r, s), p, YZ) * _integral_oracle(s, r, k, t, p)
                assert integral_oblique(s, r, k, t, p) == want


def _integral_oracle(s, r, k, t, p):
    """(1/y^r z^s) * z^s * integral of y^(r-1) (y - t z)^k dy, term by term with exact rationals."""
    from fractions import Fraction
    import math
    terms = {}
    for i in range(k + 1):
        if (r + i) % p == 0:
            continue
        v = Fraction(math.comb(k, i) * (-t) ** (k - i), r + i)
        terms[(i, k - i)] = v.numerator * pow(v.denominator, -1, p) % p
    return Poly(p, YZ, terms)


def test_wagner_scalar_examples():
    assert wagner_scalar(3, 2, 2) == 0
    for p in (2, 3, 5):
        for r in range(8):
            assert wagner_scalar(r, 0, p) == r % p


def test_wagner_relation_on_grid():
    for p in (2, 3, 5):
        for r in range(7):
            for s in range(7):
                for k in range(7):
                    if (r + s + k) % p or r % p == 0:
                        continue
                    for t in range(1, p):
                        H = hybrid_oblique(r, s, k, t, p)
                        I = integral_oblique(s, r, k, t, p)
                        w = int(wagner_scalar(r, k, p))
                        diff = H - I.scale(w)
                        assert delete_c_power_monomials(diff, p)[0].is_zero(), (p, r, s, k, t)


def test_wagner_relation_needs_degree_divisible_by_p():
    # off the grid r + s + k = 0 mod p the relation genuinely fails somewhere
    fails = 0
    for r, s, k in itertools.product(range(1, 7), range(7), range(7)):
        if (r + s + k) % 2 == 0 or r % 2 == 0:
            continue
        diff = hybrid_oblique(r, s, k, 1, 2) - integral_oblique(s, r, k, 1, 2).scale(int(wagner_scalar(r, k, 2)))
        if not delete_c_power_monomials(diff, 2)[0].is_zero():
            fails += 1
    assert fails > 0


# ---------------------------------------------------------------------------
# recognition

def test_pth_power_factor_examples():
    assert pth_power_factor_test(P("y^3*z^3*(y^2+z^2)"), 2)
    for p in (2, 3, 5):
        assert not pth_power_factor_test(P("y*z", p), p)
        assert pth_power_factor_test(P(f"(y+z)^{p}*y", p), p)


def _brute_pth_power_factor(Q, p):
    """Search linear and quadratic forms whose p-th power divides Q / monomial content."""
    from kangaroolab.fpoly import divide_exact, exact_quotient, DivisionError
    g = divide_exact(Q, Q.monomial_content())
    for deg in (1, 2):
        monos = [(a, deg - a) for a in range(deg + 1)]
        for coeffs in itertools.product(range(p), repeat=deg + 1):
            L = Poly(p, YZ, dict(zip(monos, coeffs)))
            if L.is_zero() or L.is_monomial():
                continue
            try:
                exact_quotient(g, L ** p)
                return True
            except DivisionError:
                pass
    return False


@given(st.sampled_from([2, 3]), st.lists(st.integers(0, 2), min_size=3, max_size=6))
@settings(max_examples=80, deadline=None)
def test_pth_power_factor_against_brute_force(p, coeffs):
    k = len(coeffs) - 1
    Q = Poly(p, YZ, {(i, k - i): c % p for i, c in enumerate(coeffs)})
    if Q.is_zero():
        return
    # irreducible factors of a binary form of degree <= 5 with a p-th power have degree <= 2
    assert pth_power_factor_test(Q, p) == _brute_pth_power_factor(Q, p)


def test_obliqueness_examples():
    Q = P("y2*y1*(y2^2+y1^2)", vars=("y2", "y1"))
    assert oblique_order(Q, "y2", {"y1": 1}) == 3
    assert obliqueness_test(Q, t={"y1": 1})
    antelope = P("y2^3*y1^3*(y2^2+y1^2)", vars=("y2", "y1"))
    with pytest.raises(Disqualified):
        obliqueness_test(antelope, literal_factor_check=True)
    # modulo p-th power monomials the class contains y^3 z^3 (y^2 + yz + z^2), which is square-free
    assert obliqueness_test(antelope)
    with pytest.raises(Disqualified):
        obliqueness_test(P("y*z*(y+z)^2"), literal_factor_check=True)
    # no cube monomial of degree 5 is divisible by yz, so the class of yz(y+z)^3 is a singleton
    with pytest.raises(Disqualified):
        obliqueness_test(P("y*z*(y+z)^3", 3))


def test_obliqueness_k_zero_reduces_to_conditions_one_and_two():
    # for P = y^r the test holds exactly when (1) and (2) hold; a p-th power y^r is disqualified
    for p in (2, 3, 5):
        for r in itertools.product(range(7), repeat=2):
            if not any(r):
                continue
            mono = Poly.monomial(r, p, ("z", "y"))
            want = condition1(r, 0, p) and condition2(r, p)
            if all(a % p == 0 for a in r):
                with pytest.raises(Disqualified):
                    obliqueness_test(mono, r=r)
            else:
                assert obliqueness_test(mono, r=r) == want, (p, r)


def test_translated_order_never_exceeds_k_plus_one():
    # the ceiling guarded by MohCeilingError: over small grids it is never reached
    for p in (2, 3):
        for r in itertools.product(range(4), repeat=2):
            for k in range(1, 5):
                for coeffs in itertools.product(range(p), repeat=k + 1):
                    g = Poly(p, YZ, {(i, k - i): c for i, c in enumerate(coeffs) if c})
                    if g.is_zero():
                        continue
                    Q = Poly.monomial(r, p, YZ) * g
                    try:
                        obliqueness_test(Q, r=r)
                    except Disqualified:
                        continue
                    except MohCeilingError as exc:
                        pytest.fail(str(exc))


def test_jet_construction_examples():
    v = P("y1", vars=("y1",))
    assert jet_construction((3,), 2, v, 2, r_m=3) == P("y2^3*y1^3*(y2^2+y1^2)", vars=("y2", "y1"))
    one = P("1", vars=("y1",))
    assert jet_construction((3,), 0, one, 2, r_m=2) == P("y2^2*y1^3", vars=("y2", "y1"))
    # constant v: the degree k + 1 form of (z + 1)^(-s) survives, here C(-1, 2) = 1
    assert jet_construction((1,), 1, one, 2) == P("y1^2", vars=("y2", "y1"))


def test_uniqueness_examples():
    classes = uniqueness_search(ObliqueParams(2, (3, 3), 2))
    assert len(classes) == 1
    assert classes[0].representative == P("y^3*z^3*(y^2+z^2)")
    assert uniqueness_search(ObliqueParams(2, (3, 3), 1)) == []       # condition (1) fails
    assert uniqueness_search(ObliqueParams(2, (2, 2), 2)) == []       # condition (2) fails


def test_uniqueness_matches_admissibility():
    for p, rmax, kmax in ((2, 4, 4), (3, 3, 3)):
        for r in itertools.product(range(rmax + 1), repeat=2):
            for k in range(kmax + 1):
                params = ObliqueParams(p, r, k)
                n = len(uniqueness_search(params))
                assert n == (1 if params.admissible else 0), (p, r, k, n)


def test_atlas_records():
    recs = atlas(2, 3, 2)
    assert len(recs) == 4 * 4 * 3
    rec = next(r for r in recs if r.r == (3, 3) and r.k == 2)
    assert rec.classes == 1 and rec.representative == "y^3*z^3*(y^2+z^2)"
    assert rec.line().startswith("p=2 r=3,3 k=2 classes=1")
