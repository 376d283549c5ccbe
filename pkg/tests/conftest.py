import functools
from fractions import Fraction

import pytest

from hopfinv.graded import GradedMorphism, GradedSpace, TRIVIAL, tensor
from hopfinv.hopf import HopfAlgebraData, parse_algebra_spec
from hopfinv.integrals import build_good_pair, build_integral_data


@functools.lru_cache(maxsize=None)
def algebra(spec):
    return parse_algebra_spec(spec)


@functools.lru_cache(maxsize=None)
def pair(spec):
    return build_good_pair(build_integral_data(algebra(spec)))


def sweedler():
    """Sweedler's 4-dimensional Hopf algebra g^a x^b: a Hopf algebra whose
    antipode has order 4, so it is not involutory."""
    A = GradedSpace([0, 0, 0, 0], TRIVIAL)
    unit = GradedSpace.unit(TRIVIAL)

    def idx(a, b):
        return a + 2 * b

    mu_cols = []
    for i in range(4):
        a, b = i % 2, i // 2
        for j in range(4):
            c, d = j % 2, j // 2
            if b + d >= 2:
                mu_cols.append({})
            else:
                mu_cols.append({idx((a + c) % 2, b + d): Fraction((-1) ** (b * c))})
    # Delta(g) = g (x) g, Delta(x) = x (x) 1 + g (x) x, Delta(gx) = gx (x) g + 1 (x) gx
    delta_cols = [
        {0: Fraction(1)},
        {idx(1, 0) * 4 + idx(1, 0): Fraction(1)},
        {idx(0, 1) * 4 + idx(0, 0): Fraction(1), idx(1, 0) * 4 + idx(0, 1): Fraction(1)},
        {idx(1, 1) * 4 + idx(1, 0): Fraction(1), idx(0, 0) * 4 + idx(1, 1): Fraction(1)},
    ]
    S_cols = [{0: Fraction(1)}, {1: Fraction(1)}, {3: Fraction(-1)}, {2: Fraction(1)}]
    return HopfAlgebraData(
        A=A,
        mu=GradedMorphism(tensor(A, A), A, mu_cols),
        eta=GradedMorphism(unit, A, [{0: Fraction(1)}]),
        delta=GradedMorphism(A, tensor(A, A), delta_cols),
        eps=GradedMorphism(A, unit, [{0: Fraction(1)}, {0: Fraction(1)}, {}, {}]),
        antipode=GradedMorphism(A, A, S_cols),
        basis_names=("1", "g", "x", "g*x"),
        name="sweedler",
    )


@pytest.fixture
def sweedler_algebra():
    return sweedler()


# acceptance lines, collected by tests/test_acceptance.py and echoed at the end
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
