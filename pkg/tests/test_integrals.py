from fractions import Fraction

import pytest

from hopfinv.graded import GradedSpace, identity, sigma_of, tensor
from hopfinv.hopf import build_group_algebra, build_Hn, dual_hopf, parse_algebra_spec
from hopfinv.integrals import (
    A5Violation,
    GoodPair,
    GoodPairFormatError,
    build_good_pair,
    build_integral_data,
    check_centrality,
    check_good_pair,
    dual_pair,
    good_pair_lemma_suite,
    lemma_suite,
    solve_integrals,
)
from hopfinv.scalars import zeta

PAIR_SPECS = ["group:1", "group:2", "group:3", "group:4", "hn:2:0", "hn:2:1", "hn:3:0",
              "hn:3:1", "anomega:1:2:0", "anomega:2:2:0"]


@pytest.fixture(scope="module")
def data():
    cache = {}

    def get(spec):
        if spec not in cache:
            cache[spec] = build_integral_data(parse_algebra_spec(spec))
        return cache[spec]
    return get


def as_vector(m):
    return m.cols[0]


def as_functional(m):
    return {x: c[0] for x, c in enumerate(m.cols) if c}


def test_group_integral():
    H = build_group_algebra(3)
    (d, sols), = solve_integrals(H, "left", "integral")
    assert d == (0,) and len(sols) == 1
    v = as_vector(sols[0])
    assert set(v) == {0, 1, 2} and len(set(v.values())) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hn_integral_and_cointegral(n):
    H = build_Hn(n)
    (d, sols), = solve_integrals(H, "left", "integral")
    assert d == (1,) and len(sols) == 1
    v = as_vector(sols[0])
    thetas = {H.index("theta")} | {H.index(f"theta*t^{k}" if k > 1 else "theta*t")
                                    for k in range(1, n)}
    assert set(v) == thetas and len(set(v.values())) == 1
    (d, sols), = solve_integrals(H, "right", "cointegral")
    assert d == (1,) and len(sols) == 1
    f = as_functional(sols[0])
    assert list(f) == [H.index("theta")]


@pytest.mark.parametrize("n", [2, 3])
def test_hn_distinguished(data, n):
    D = data(f"hn:{n}:0")
    H = D.H
    assert as_vector(D.g) == {H.index("t"): 1}
    assert D.m == n
    assert D.alpha == H.eps and D.n == 1
    assert D.lam @ D.Lambda == identity(D.I)
    assert as_functional(D.lam) == {H.index("theta"): 1}


def test_group_distinguished(data):
    D = data("group:4")
    assert D.g == D.H.eta and D.m == 1
    assert D.alpha == D.H.eps and D.n == 1


def test_anomega_distinguished(data):
    for spec, omega, m, n in [("anomega:2:2:1", Fraction(-1), 2, 2),
                              ("anomega:2:2:0", Fraction(1), 2, 1)]:
        D = data(spec)
        H = D.H
        assert as_vector(D.g) == {H.index("t1*t2"): 1}
        assert D.m == m, spec
        assert D.n == n, spec
        assert D.alpha.apply({H.index("t1"): 1}) == {0: 1 / omega}
        assert D.alpha.apply({H.index("t2"): 1}) == {0: omega}


def test_anomega_cyclotomic_alpha():
    D = build_integral_data(parse_algebra_spec("anomega:3:3:1"))
    H = D.H
    assert D.alpha.apply({H.index("t1"): 1}) == {0: zeta(3, 2)}
    assert D.alpha.apply({H.index("t2"): 1}) == {0: zeta(3)}
    assert D.n == 3 and D.m == 3
    assert check_centrality(D) == (False, False)


@pytest.mark.parametrize("spec", PAIR_SPECS + ["anomega:2:2:1"])
def test_integral_data_validates(data, spec):
    D = data(spec)
    rep = D.validate()
    assert rep.passed(), str(rep)
    assert "universality: surrogate criterion" in rep.notes
    # S Lambda is a right integral, lambda S a left cointegral
    H = D.H
    SL, lS = H.antipode @ D.Lambda, D.lam @ H.antipode
    I_A = identity(H.A)
    assert H.mu @ tensor(SL, I_A) == tensor(SL, H.eps)
    assert tensor(I_A, lS) @ H.delta == tensor(H.eta, lS)


def test_centrality(data):
    assert check_centrality(data("hn:2:0")) == (True, True)
    assert check_centrality(data("anomega:2:2:1")) == (False, False)
    assert check_centrality(data("anomega:2:2:0")) == (True, True)


@pytest.mark.parametrize("spec", PAIR_SPECS)
def test_good_pair_built_and_checked(data, spec):
    D = data(spec)
    P = build_good_pair(D)
    rep, nu, gamma, _, _ = check_good_pair(D.H, P.phi, P.Omega, P.f, P.h)
    assert rep.passed(), str(rep)
    assert nu == P.nu == D.sigma_I == sigma_of(P.I)
    assert gamma == P.gamma == (1 if nu == 1 else 2)
    # witnesses from the construction: f = (alpha (x) id) Delta, h = mu (id (x) g)
    H = D.H
    assert P.f.cols == (tensor(D.alpha, identity(H.A)) @ H.delta).cols
    assert P.h.cols == (H.mu @ tensor(identity(H.A), D.g)).cols
    lem = good_pair_lemma_suite(P)
    assert lem.passed(), str(lem)


@pytest.mark.parametrize("n", [2, 3])
def test_hn_good_pair_values(data, n):
    P = build_good_pair(data(f"hn:{n}:0"))
    H = P.H
    phi = as_functional(P.phi)
    for k in range(n):
        name = "theta" + ("" if k == 0 else "*t" if k == 1 else f"*t^{k}")
        assert phi[H.index(name)] == Fraction(1, n)
    assert all(H.A.degrees[x] == (1,) for x in phi)
    assert P.Omega == data(f"hn:{n}:0").Lambda
    assert (P.nu, P.gamma) == (-1, 2)


def test_group_pair_is_lambda_Lambda(data):
    D = data("group:3")
    P = build_good_pair(D)
    assert P.phi == D.lam and P.Omega == D.Lambda
    assert (P.nu, P.gamma) == (1, 1)


def test_a5_refused(data):
    with pytest.raises(A5Violation, match=r"\(A5\) violated"):
        build_good_pair(data("anomega:2:2:1"))


def test_scaled_pair_fails_gp1(data):
    P = build_good_pair(data("hn:2:0"))
    rep, *_ = check_good_pair(P.H, P.phi, P.Omega.scale(2))
    assert not rep.get("GP1")


def test_solved_witnesses(data):
    P = build_good_pair(data("hn:3:0"))
    rep, nu, gamma, f, h = check_good_pair(P.H, P.phi, P.Omega)
    assert rep.passed() and f is not None and h is not None


@pytest.mark.parametrize("spec", ["hn:2:0", "anomega:2:2:0"])
def test_lemma_suite_passes(data, spec):
    rep = lemma_suite(data(spec))
    assert rep.passed(), str(rep)
    assert [n for n, _, _ in rep.items] == ["(a)", "(b)", "(c)", "(d)", "(e)", "(f)"]


def test_lemma_suite_without_a5(data):
    rep = lemma_suite(data("anomega:2:2:1"))
    assert rep.passed()
    detail = dict((n, d) for n, _, d in rep.items)["(f)"]
    assert detail == "g central: False, alpha central: False"


def test_good_pair_text_round_trip(data):
    for spec in ["hn:2:0", "group:3", "anomega:2:2:0"]:
        P = build_good_pair(data(spec))
        text = P.to_text()
        Q = GoodPair.from_text(text)
        assert Q.phi == P.phi and Q.Omega == P.Omega
        assert (Q.nu, Q.gamma, Q.I) == (P.nu, P.gamma, P.I)
        assert Q.to_text() == text


def test_good_pair_text_example():
    text = "\n".join([
        "goodpair", "algebra hn:2:0", "degree 1", "nu -1", "gamma 2",
        "phi theta 1/2", "phi theta*t 1/2", "Omega theta 1", "Omega theta*t 1", ""])
    P = GoodPair.from_text(text)
    assert P.to_text() == text


@pytest.mark.parametrize("text, msg", [
    ("pair\n", "line 1"),
    ("goodpair\nalgebra hn:2:0\ndegree 1\nphi xi 1\n", "unknown basis element"),
    ("goodpair\nalgebra hn:2:0\ndegree 1\nphi theta 1.5\n", "line 4"),
    ("goodpair\nalgebra hn:2:0\nfoo 1\n", "unknown keyword"),
    ("goodpair\nalgebra hn:2:0\n", "missing"),
    ("goodpair\nalgebra hn:2:0\ndegree 0\nphi theta 1\n", None),
])
def test_good_pair_format_errors(text, msg):
    with pytest.raises(GoodPairFormatError, match=msg):
        GoodPair.from_text(text)


@pytest.mark.parametrize("spec", ["hn:2:0", "group:3", "hn:2:1"])
def test_dual_pair_is_good(data, spec):
    P = build_good_pair(data(spec))
    Q = dual_pair(P)
    rep, nu, *_ = check_good_pair(Q.H, Q.phi, Q.Omega)
    assert rep.passed()
    assert nu == P.nu
