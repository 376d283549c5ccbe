import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfinv.graded import (
    SUPER,
    Bicharacter,
    GradedMorphism,
    GradedSpace,
    GradingError,
    GradingGroup,
    SparseVector,
    dimension,
    dual_data,
    identity,
    koszul_sign,
    norm_on_invertible,
    permutation_morphism,
    sigma_of,
    symmetry,
    tensor,
    trace,
)
from hopfinv.scalars import zeta

KLEIN = Bicharacter(GradingGroup([2, 2]), {(0, 1): -1, (1, 0): -1})
Z4 = Bicharacter(GradingGroup([4]), {(0, 0): -1})
CHIS = [SUPER, KLEIN, Z4]


def random_space(rng, chi, max_dim=3):
    G = chi.group
    elems = list(G.elements())
    return GradedSpace([rng.choice(elems) for _ in range(rng.randint(1, max_dim))], chi)


def random_morphism(rng, X, Y):
    cols = []
    for dj in X.degrees:
        cols.append({i: Fraction(rng.randint(-3, 3)) for i, di in enumerate(Y.degrees)
                     if di == dj and rng.random() < 0.8})
    return GradedMorphism(X, Y, cols)


def test_tensor_lines():
    L = tensor(GradedSpace.line(1), GradedSpace.line(1))
    assert L.dim == 1 and L.degrees == ((0,),)
    K = Bicharacter.trivial(GradingGroup([3]))
    assert tensor(GradedSpace.line(2, K), GradedSpace.line(2, K)).degrees == ((1,),)


def test_tensor_identities_and_kronecker():
    X = GradedSpace([0, 1])
    Y = GradedSpace([0, 0])
    assert tensor(identity(X), identity(Y)) == identity(tensor(X, Y))
    swap = GradedMorphism.from_matrix(Y, Y, [[0, 1], [1, 0]])
    m = tensor(identity(Y), swap)
    assert m.to_rows() == [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]


def test_mismatched_groups_rejected():
    with pytest.raises(GradingError):
        tensor(GradedSpace([0], SUPER), GradedSpace([0], KLEIN))


def test_grading_preservation_enforced():
    with pytest.raises(GradingError):
        GradedMorphism(GradedSpace([0]), GradedSpace([1]), [{0: 1}])


def test_symmetry_super():
    E, O = GradedSpace([0]), GradedSpace([1])
    assert symmetry(E, E) == identity(E)
    assert symmetry(O, O).entry(0, 0) == -1
    I = GradedSpace.line(1)
    assert norm_on_invertible(symmetry(I, I)) == -1


def test_permutation_examples():
    A = GradedSpace([0, 1])
    assert permutation_morphism(A, [0, 1, 2]) == identity(A.power(3))
    assert permutation_morphism(A, [1, 0]) == symmetry(A, A)
    # o (x) e (x) o with factors 1 and 3 exchanged
    assert koszul_sign(SUPER, [(1,), (0,), (1,)], [2, 1, 0]) == -1
    P = permutation_morphism(A, [2, 1, 0])
    src = 1 * 4 + 0 * 2 + 1
    assert P.cols[src] == {src: -1}


def test_permutation_brute_force_signs():
    # every permutation of three factors against direct adjacent-swap composition
    A = GradedSpace([0, 1])
    tau = symmetry(A, A)
    I = identity(A)
    s1 = tensor(tau, I)
    s2 = tensor(I, tau)
    gens = {(1, 0, 2): s1, (0, 2, 1): s2}
    for sigma in itertools.permutations(range(3)):
        # bubble sort sigma into adjacent swaps applied in order
        cur = list(range(3))
        target = [None] * 3
        for i, s in enumerate(sigma):
            target[s] = i
        m = identity(A.power(3))
        for _ in range(3):
            for k in range(2):
                if target.index(cur[k]) > target.index(cur[k + 1]):
                    cur[k], cur[k + 1] = cur[k + 1], cur[k]
                    m = gens[(1, 0, 2) if k == 0 else (0, 2, 1)] @ m
        assert m == permutation_morphism(A, sigma), sigma


def test_bad_permutation():
    with pytest.raises(ValueError):
        permutation_morphism(GradedSpace([0]), [0, 0])


def test_dual_data_examples():
    U = GradedSpace.unit()
    Ud, lev, lcoev, rev, rcoev = dual_data(U)
    assert Ud == U and lev == identity(U)
    I = GradedSpace.line(1)
    assert dual_data(I)[0] == I
    assert dimension(I) == -1
    assert trace(identity(GradedSpace([0, 0, 1]))) == 1


def test_norm_and_sigma():
    I = GradedSpace.line(1)
    assert norm_on_invertible(identity(I)) == 1
    assert norm_on_invertible(GradedMorphism.zero(I, I)) == 0
    assert sigma_of(GradedSpace.unit()) == 1
    assert sigma_of(I) == -1
    with pytest.raises(GradingError):
        sigma_of(GradedSpace([0, 1]))


def test_z4_bicharacter_with_zeta4_rejected():
    with pytest.raises(GradingError):
        Bicharacter(GradingGroup([4]), {(0, 0): zeta(4)})


def test_sparse_vector_collects_terms():
    v = SparseVector(GradedSpace([0, 1]), 2)
    v.add_term((0, 1), 2)
    v.add_term((0, 1), -2)
    v.add_term((1, 1), 1)
    assert len(v) == 1
    with pytest.raises(ValueError):
        v.add_term((0,), 1)


seeds = st.integers(0, 10 ** 6)


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(CHIS))
def test_hexagon_and_involutivity(seed, chi):
    rng = random.Random(seed)
    X, Y, Z = (random_space(rng, chi) for _ in range(3))
    lhs = symmetry(tensor(X, Y), Z)
    rhs = tensor(symmetry(X, Z), identity(Y)) @ tensor(identity(X), symmetry(Y, Z))
    assert lhs == rhs
    assert symmetry(Y, X) @ symmetry(X, Y) == identity(tensor(X, Y))


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(CHIS))
def test_naturality(seed, chi):
    rng = random.Random(seed)
    X, Y, X2, Y2 = (random_space(rng, chi) for _ in range(4))
    f, g = random_morphism(rng, X, X2), random_morphism(rng, Y, Y2)
    assert symmetry(X2, Y2) @ tensor(f, g) == tensor(g, f) @ symmetry(X, Y)


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(CHIS), st.integers(1, 4))
def test_permutations_compose(seed, chi, n):
    rng = random.Random(seed)
    A = random_space(rng, chi, 2)
    s = list(range(n)); rng.shuffle(s)
    r = list(range(n)); rng.shuffle(r)
    composite = [s[r[i]] for i in range(n)]
    assert permutation_morphism(A, s) @ permutation_morphism(A, r) == \
        permutation_morphism(A, composite)


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(CHIS))
def test_triangle_identities(seed, chi):
    rng = random.Random(seed)
    X = random_space(rng, chi, 4)
    Xd, lev, lcoev, rev, rcoev = dual_data(X)
    idX, idXd = identity(X), identity(Xd)
    assert tensor(idX, lev) @ tensor(lcoev, idX) == idX
    assert tensor(lev, idXd) @ tensor(idXd, lcoev) == idXd
    assert tensor(rev, idX) @ tensor(idX, rcoev) == idX
    assert tensor(idXd, rev) @ tensor(rcoev, idXd) == idXd


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(CHIS))
def test_trace_properties(seed, chi):
    rng = random.Random(seed)
    X, Y = random_space(rng, chi), random_space(rng, chi)
    p, q = random_morphism(rng, X, Y), random_morphism(rng, Y, X)
    assert trace(p @ q) == trace(q @ p)
    assert dimension(tensor(X, Y)) == dimension(X) * dimension(Y)
    f, g = random_morphism(rng, X, X), random_morphism(rng, Y, Y)
    assert trace(tensor(f, g)) == trace(f) * trace(g)


@pytest.mark.parametrize("chi", CHIS)
def test_norm_is_dim_times_trace(chi):
    for d in chi.group.elements():
        I = GradedSpace.line(d, chi)
        f = identity(I).scale(Fraction(7, 3))
        assert norm_on_invertible(f, I) == dimension(I) * trace(f)
        assert sigma_of(I) == dimension(I)
        assert sigma_of(I) ** 2 == 1
