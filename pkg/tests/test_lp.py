from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from vitpoly import lp


def test_small_lp_with_phase_one():
    # min -x1 - x2  s.t. x1 + 2 x2 + s1 = 4, 3 x1 + x2 + s2 = 6
    cols = [(1, 3), (2, 1), (1, 0), (0, 1)]
    res = lp.solve([-1, -1, 0, 0], cols, [4, 6])
    assert res.status == "optimal"
    assert res.x[:2] == [F(8, 5), F(6, 5)] and res.value == F(-14, 5)
    # dual feasibility and strong duality
    assert sum(y * b for y, b in zip(res.y, [4, 6])) == res.value
    for j, col in enumerate(cols):
        assert sum(y * a for y, a in zip(res.y, col)) <= [-1, -1, 0, 0][j]


def test_infeasible_and_unbounded():
    assert lp.solve([0], [(1,)], [-1]).status == "infeasible"
    assert lp.solve([-1, 0], [(1,), (-1,)], [0]).status == "unbounded"


def test_rational_data():
    # min x1/2 + x2/3  s.t.  x1/2 + x2/5 = 1/7: x1 is cheaper per unit of b
    res = lp.solve([F(1, 2), F(1, 3)], [(F(1, 2),), (F(1, 5),)], [F(1, 7)])
    assert res.status == "optimal" and res.x == [F(2, 7), 0] and res.value == F(1, 7)
    assert res.y == [1]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_matches_scipy_and_dual_certificate(m, extra, data):
    n = m + extra
    ints = st.integers(-3, 3)
    cols = [tuple(data.draw(ints) for _ in range(m)) for _ in range(n)]
    x0 = [data.draw(st.integers(0, 2)) for _ in range(n)]
    b = [sum(cols[j][i] * x0[j] for j in range(n)) for i in range(m)]
    c = [data.draw(st.integers(0, 4)) for _ in range(n)]  # bounded below by 0
    rule = data.draw(st.sampled_from([lp.BLAND, lp.DANTZIG]))
    res = lp.solve(c, cols, b, rule=rule)
    assert res.status == "optimal"
    assert all(x >= 0 for x in res.x)
    assert [sum(cols[j][i] * res.x[j] for j in range(n)) for i in range(m)] == b
    assert sum(y * bb for y, bb in zip(res.y, b)) == res.value
    assert all(sum(y * a for y, a in zip(res.y, cols[j])) <= c[j] for j in range(n))
    ref = linprog(c, A_eq=[[cols[j][i] for j in range(n)] for i in range(m)], b_eq=b,
                  bounds=(0, None), method="highs")
    assert abs(ref.fun - float(res.value)) < 1e-7
