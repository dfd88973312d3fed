import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import fm_solve
from polarcyl.lp import LinearProgram, MalformedProgram, Status, lp_solve


def test_min_x_at_least_three():
    r = lp_solve(LinearProgram(c=[1], A_ub=[[-1]], b_ub=[-3]))
    assert r.status is Status.OPTIMAL
    assert r.value == 3 and r.x == (3,)


def test_unbounded_and_infeasible():
    assert lp_solve(LinearProgram(c=[-1], A_ub=[[-1]], b_ub=[-3])).status is Status.UNBOUNDED
    assert lp_solve(LinearProgram(c=[0], A_eq=[[1]], b_eq=[-1])).status is Status.INFEASIBLE
    r = lp_solve(LinearProgram(c=[1, 1], A_ub=[[1, 1], [-1, -1]], b_ub=[1, -2]))
    assert r.status is Status.INFEASIBLE and not r.feasible


def test_free_variables_and_maximize():
    # max x - y with x, y free, -1 <= x <= 2, y >= -3/2
    r = lp_solve(LinearProgram(
        c=[1, -1], A_ub=[[1, 0], [-1, 0], [0, -1]], b_ub=[2, 1, "3/2"],
        nonneg=[False, False], maximize=True,
    ))
    assert r.status is Status.OPTIMAL
    assert r.value == Fraction(7, 2)
    assert r.x == (2, Fraction(-3, 2))


def test_malformed():
    with pytest.raises(MalformedProgram):
        lp_solve(LinearProgram(c=[1, 2], A_eq=[[1]], b_eq=[1]))
    with pytest.raises(MalformedProgram):
        lp_solve(LinearProgram(c=[1], A_ub=[[1]], b_ub=[1, 2]))
    with pytest.raises(MalformedProgram):
        lp_solve(LinearProgram(c=[1], nonneg=[True, False]))


def test_degenerate_program_terminates():
    # a classic cycling example for the largest-coefficient rule
    c = ["-3/4", 150, "-1/50", 6]
    A = [["1/4", -60, "-1/25", 9], ["1/2", -90, "-1/50", 3], [0, 0, 1, 0]]
    r = lp_solve(LinearProgram(c=c, A_ub=A, b_ub=[0, 0, 1]))
    assert r.status is Status.OPTIMAL
    assert r.value == Fraction(-1, 20)


def _random_program(rng):
    nv = rng.randint(1, 4)
    m = rng.randint(1, 8)
    ne = rng.randint(0, min(3, m))
    A = [[rng.randint(-5, 5) for _ in range(nv)] for _ in range(m)]
    b = [rng.randint(-3, 10) for _ in range(m)]
    c = [rng.randint(-4, 4) for _ in range(nv)]
    nonneg = [rng.random() < 0.8 for _ in range(nv)]
    return dict(c=c, A_eq=A[:ne], b_eq=b[:ne], A_ub=A[ne:], b_ub=b[ne:],
                nonneg=nonneg, maximize=rng.random() < 0.5)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_agrees_with_fourier_motzkin(seed):
    p = _random_program(random.Random(seed))
    r = lp_solve(LinearProgram(**p))
    status, value = fm_solve(**p)
    assert r.status.value == status
    if status == "optimal":
        assert r.value == value


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_optimal_points_are_feasible(seed):
    p = _random_program(random.Random(seed))
    r = lp_solve(LinearProgram(**p))
    if r.status is not Status.OPTIMAL:
        return
    x = r.x
    for row, b in zip(p["A_eq"], p["b_eq"]):
        assert sum(a * v for a, v in zip(row, x)) == b
    for row, b in zip(p["A_ub"], p["b_ub"]):
        assert sum(a * v for a, v in zip(row, x)) <= b
    for v, flag in zip(x, p["nonneg"]):
        assert not flag or v >= 0
    assert sum(ci * v for ci, v in zip(p["c"], x)) == r.value


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_duals_certify_equality_programs(seed):
    # min c.x, A x = b, x >= 0: dual y with c - A^T y >= 0 and b.y = optimum
    rng = random.Random(seed)
    nv, m = rng.randint(2, 5), rng.randint(1, 3)
    A = [[rng.randint(-3, 4) for _ in range(nv)] for _ in range(m)]
    b = [rng.randint(0, 6) for _ in range(m)]
    c = [rng.randint(0, 5) for _ in range(nv)]
    r = lp_solve(LinearProgram(c=c, A_eq=A, b_eq=b))
    if r.status is not Status.OPTIMAL:
        return
    y = r.duals
    for j in range(nv):
        assert c[j] - sum(A[i][j] * y[i] for i in range(m)) >= 0
    assert sum(bi * yi for bi, yi in zip(b, y)) == r.value


def test_deterministic():
    p = _random_program(random.Random(3))
    assert lp_solve(LinearProgram(**p)) == lp_solve(LinearProgram(**p))
