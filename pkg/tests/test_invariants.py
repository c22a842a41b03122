import random
from fractions import Fraction

import pytest

from conftest import mat
from tdpair.construct import conjugate, leonard_from_parameter_array, random_parameter_array
from tdpair.errors import FieldMismatch, NoIntertwiner
from tdpair.invariants import (anti_automorphism, bilinear_form, form_solution_space,
                               intertwiner, isomorphic_pairs, isomorphic_systems,
                               parameter_arrays_of_pair, sharpness_report)
from tdpair.linalg import Matrix
from tdpair.scalars import GF, QQ
from tdpair.split import parameter_array
from tdpair.tdcore import verify_td_system


def test_running_example_form(running_system):
    S = running_system
    sols = form_solution_space(S.A, S.Astar)
    assert len(sols) == 1
    # the solutions are the multiples of [[-1, 1], [1, 1]]; normalized, the first entry is 1
    G = bilinear_form(S).gram
    assert G.scale(-1) == mat(QQ, [[-1, 1], [1, 1]])
    assert G == mat(QQ, [[1, -1], [-1, -1]])
    form = bilinear_form(S)
    u, v = [1, 2], [3, -1]
    assert form(S.A.apply(u), v) == form(u, S.A.apply(v))


def test_trivial_form():
    S = verify_td_system(mat(QQ, [[2]]), mat(QQ, [[7]]))
    assert bilinear_form(S).gram == mat(QQ, [[1]])


def test_form_transforms_under_conjugation(small_pool):
    for item in small_pool:
        G = bilinear_form(item.system).gram
        Pinv = item.conjugator.inverse()
        expected = (Pinv.T @ G @ Pinv).normalized()
        assert bilinear_form(item.conjugated).gram == expected


def test_dagger_examples(running_system):
    S = running_system
    I = Matrix.identity(QQ, 2)
    assert anti_automorphism(S, S.A) == S.A
    assert anti_automorphism(S, S.Astar) == S.Astar
    assert anti_automorphism(S, I) == I
    X = mat(QQ, [[0, 1], [0, 0]])
    h = Fraction(1, 2)
    Xd = anti_automorphism(S, X)
    assert Xd == mat(QQ, [[-h, h], [-h, h]])
    assert anti_automorphism(S, Xd) == X
    with pytest.raises(FieldMismatch):
        anti_automorphism(S, Matrix.identity(GF(5), 2))


def test_sharpness_report(running_system):
    rep = sharpness_report(running_system)
    assert rep["rho0"] == 1 and rep["sharp"]
    assert "not algebraically closed" in rep["note"]


def test_isomorphism_of_systems(small_pool):
    for item in small_pool:
        S, T = item.system, item.conjugated
        assert isomorphic_systems(S, S).isomorphic
        assert isomorphic_systems(S, T).isomorphic
        assert isomorphic_systems(T, S).isomorphic
        assert isomorphic_pairs(S, T).isomorphic


def test_isomorphism_is_an_equivalence(small_pool):
    systems = [x for item in small_pool for x in (item.system, item.conjugated)]
    rel = {(i, j): isomorphic_systems(a, b).isomorphic
           for i, a in enumerate(systems) for j, b in enumerate(systems)}
    k = len(systems)
    for i in range(k):
        assert rel[i, i]
        for j in range(k):
            assert rel[i, j] == rel[j, i]
            for m in range(k):
                if rel[i, j] and rel[j, m]:
                    assert rel[i, m]
    # conjugates pair up and nothing else coincides in this pool
    assert sum(rel.values()) == 2 * k


def test_reversed_ordering_is_the_same_pair(running_system):
    S = running_system
    R = S.reordered(thetas=(1, 0))
    assert not isomorphic_systems(S, R).isomorphic
    assert isomorphic_pairs(S, R).isomorphic


def test_pairs_with_disjoint_array_sets():
    F = GF(7)
    S = leonard_from_parameter_array(random_parameter_array(F, 1, 1))
    T = leonard_from_parameter_array(random_parameter_array(F, 1, 2))
    a, b = parameter_arrays_of_pair(S), parameter_arrays_of_pair(T)
    assert len(a) == len(b) == 4
    assert not set(a) & set(b)
    assert not isomorphic_pairs(S, T).isomorphic


def test_intertwiner_examples(small_pool):
    for item in small_pool:
        S, T = item.system, item.conjugated
        assert intertwiner(S, S).gamma == Matrix.identity(S.field, S.n)
        gamma = intertwiner(S, T).gamma
        assert gamma == item.conjugator.normalized()
        # transporting S along gamma reproduces T's array
        assert parameter_array(conjugate(S, gamma)) == parameter_array(T)
    S, T = small_pool[0].system, small_pool[1].system
    with pytest.raises(NoIntertwiner):
        intertwiner(S, T)


def test_perturbed_zeta_is_not_isomorphic():
    # d = 1: any nonzero zeta_1 other than (th_0 - th_1)(th*_1 - th*_0) is realizable
    F = GF(101)
    arr = random_parameter_array(F, 1, 3)
    bad = F.reduce((arr.thetas[0] - arr.thetas[1]) * (arr.theta_stars[1] - arr.theta_stars[0]))
    z = next(c for c in range(1, 101) if c not in (arr.zetas[1], bad))
    S, T = (leonard_from_parameter_array(a) for a in (arr, arr.with_zeta(1, z)))
    assert not isomorphic_systems(S, T).isomorphic
    assert not isomorphic_pairs(S, T).isomorphic or \
        parameter_array(T) in parameter_arrays_of_pair(S)
    with pytest.raises(NoIntertwiner):
        intertwiner(S, T)


def test_field_mismatch(running_system):
    other = leonard_from_parameter_array(random_parameter_array(GF(5), 1, 0))
    with pytest.raises(FieldMismatch):
        isomorphic_systems(running_system, other)


def test_random_dagger_properties(small_pool):
    rng = random.Random(11)
    for item in small_pool:
        S = item.system
        for _ in range(10):
            X = Matrix.random(S.field, S.n, S.n, rng)
            Y = Matrix.random(S.field, S.n, S.n, rng)
            assert anti_automorphism(S, anti_automorphism(S, X)) == X
            assert anti_automorphism(S, X @ Y) == \
                anti_automorphism(S, Y) @ anti_automorphism(S, X)
