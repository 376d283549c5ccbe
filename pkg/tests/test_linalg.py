from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hopfinv.linalg import echelon, nullspace, solve


def _apply(rows, x):
    return [sum(v * x[c] for c, v in r.items()) for r in rows]


def test_nullspace_small():
    rows = [{0: 1, 1: 1}, {1: 1, 2: -1}]
    ns = nullspace(rows, 3)
    assert len(ns) == 1
    assert _apply(rows, ns[0]) == [0, 0]


def test_solve_inconsistent():
    rows = [{0: 1}, {0: 2}]
    assert solve(rows, [1, 3], 1) is None
    assert solve(rows, [1, 2], 1) == [1]


mats = st.lists(
    st.dictionaries(st.integers(0, 4), st.builds(Fraction, st.integers(-8, 8), st.integers(1, 5)),
                    max_size=4),
    max_size=5)


@settings(max_examples=80, deadline=None)
@given(mats)
def test_rank_nullity(rows):
    rows = [{c: Fraction(v) for c, v in r.items() if v} for r in rows]
    ns = nullspace(rows, 5)
    assert echelon(rows).rank + len(ns) == 5
    for v in ns:
        assert all(x == 0 for x in _apply(rows, v))


@settings(max_examples=80, deadline=None)
@given(mats, st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_finds_planted_solution(rows, x):
    rhs = _apply(rows, x)
    y = solve(rows, rhs, 5)
    assert y is not None
    assert _apply(rows, y) == rhs
