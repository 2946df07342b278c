import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kangaroolab.fpoly import Poly
from kangaroolab.linalg import SingularMatrix, bareiss_det, det_mod_p, rank_mod_p, solve_mod_p


def _leibniz(M, p):
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term *= M[i][j]
        total += term
    return total % p


@st.composite
def square(draw, nmax=5):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    n = draw(st.integers(1, nmax))
    M = [[draw(st.integers(0, p - 1)) for _ in range(n)] for _ in range(n)]
    return p, M


@given(square())
@settings(max_examples=200)
def test_det_against_leibniz(pm):
    p, M = pm
    assert det_mod_p(M, p) == _leibniz(M, p)


@given(square())
@settings(max_examples=200)
def test_rank_full_iff_det_nonzero(pm):
    p, M = pm
    assert (rank_mod_p(M, p) == len(M)) == (det_mod_p(M, p) != 0)


@given(square(), st.integers(0, 10 ** 6))
@settings(max_examples=200)
def test_solve(pm, seed):
    p, M = pm
    n = len(M)
    b = [(seed >> (3 * i)) % p for i in range(n)]
    if det_mod_p(M, p) == 0:
        with pytest.raises(SingularMatrix):
            solve_mod_p(M, b, p)
        return
    x = solve_mod_p(M, b, p)
    assert [sum(M[i][j] * x[j] for j in range(n)) % p for i in range(n)] == b


def test_rank_examples():
    assert rank_mod_p([[1, 2], [2, 4]], 5) == 1
    assert rank_mod_p([[1, 1], [1, 1], [0, 1]], 2) == 2
    assert rank_mod_p([[0, 0]], 3) == 0


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det_mod_p([[1, 2]], 3)


@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.data())
@settings(max_examples=60, deadline=None)
def test_bareiss_commutes_with_evaluation(p, n, data):
    vars = ("t",)
    entries = st.dictionaries(st.tuples(st.integers(0, 2)), st.integers(1, p - 1), max_size=3)
    M = [[Poly(p, vars, data.draw(entries)) for _ in range(n)] for _ in range(n)]
    det = bareiss_det(M)
    for t in range(p):
        num = [[int(e.evaluate({"t": t}).constant_term()) for e in row] for row in M]
        assert int(det.evaluate({"t": t}).constant_term()) == det_mod_p(num, p)


def test_bareiss_example():
    t = Poly.var("t", 3, ("t",))
    one = Poly.const(1, 3, ("t",))
    assert bareiss_det([[t, one], [one, t]]) == t * t - one
