import pytest

from conftest import mat
from oracles import brute_force_orderings, matmul
from tdpair.errors import (NoTridiagonalOrdering, NotDiagonalizable, NotDiagonalizableOverField,
                           Reducible)
from tdpair.linalg import Matrix, Subspace
from tdpair.scalars import GF, QQ
from tdpair.tdcore import (eigendecompose, find_standard_orderings, idempotent_identity_failures,
                           is_irreducible, primitive_idempotents, shape_of, spin,
                           verify_td_system, eigen_data)


def test_eigendecompose_examples():
    eigs = eigendecompose(Matrix.diagonal(QQ, [1, 2]))
    assert eigs == [(1, Subspace.span(QQ, 2, [[1, 0]])), (2, Subspace.span(QQ, 2, [[0, 1]]))]
    with pytest.raises(NotDiagonalizable):
        eigendecompose(mat(QQ, [[0, 1], [0, 0]]))
    eigs = eigendecompose(mat(QQ, [[0, 0], [1, 1]]))
    assert eigs == [(0, Subspace.span(QQ, 2, [[1, -1]])), (1, Subspace.span(QQ, 2, [[0, 1]]))]


def test_eigenvalues_outside_the_field():
    with pytest.raises(NotDiagonalizableOverField, match="larger field"):
        eigendecompose(mat(QQ, [[0, -1], [1, 0]]))
    # x^2 + 1 splits over GF(5) with roots 2 and 3
    assert [th for th, _ in eigendecompose(mat(GF(5), [[0, 4], [1, 0]]))] == [2, 3]


def test_primitive_idempotent_examples():
    E = primitive_idempotents(Matrix.diagonal(QQ, [0, 1]), [0, 1])
    assert E == [Matrix.diagonal(QQ, [1, 0]), Matrix.diagonal(QQ, [0, 1])]
    assert primitive_idempotents(Matrix.identity(QQ, 3).scale(4), [4]) == [Matrix.identity(QQ, 3)]
    # (A - I) / (0 - 1) for A = [[0,0],[1,1]]
    E0, E1 = primitive_idempotents(mat(QQ, [[0, 0], [1, 1]]), [0, 1])
    assert E0 == mat(QQ, [[1, 0], [-1, 0]])
    assert E0 + E1 == Matrix.identity(QQ, 2)


def test_orderings_of_running_example(running_pair):
    A, Astar = running_pair
    eigs = eigen_data(A)
    assert find_standard_orderings(A, Astar, eigs) == [(0, 1), (1, 0)]
    E = [e.idempotent for e in eigs]
    assert not (E[0] @ Astar @ E[1]).is_zero()


def test_no_ordering_when_every_block_is_nonzero():
    A = Matrix.diagonal(QQ, [0, 1, 2])
    J = mat(QQ, [[1] * 3] * 3)
    eigs = eigen_data(A)
    E = [e.idempotent.rows for e in eigs]
    assert brute_force_orderings(E, J.rows, lambda X: not any(map(any, X)), matmul) == []
    assert find_standard_orderings(A, J, eigs) == []
    with pytest.raises(NoTridiagonalOrdering) as info:
        verify_td_system(A, J)
    assert info.value.which == "A"


def test_single_eigenspace_has_one_ordering():
    A = Matrix.identity(QQ, 1).scale(5)
    assert find_standard_orderings(A, A, eigen_data(A)) == [(0,)]


def test_orderings_agree_with_permutation_scan(small_pool):
    for item in small_pool:
        S = item.system
        for M, X in ((S.A, S.Astar), (S.Astar, S.A)):
            eigs = eigen_data(M)
            E = [e.idempotent.rows for e in eigs]
            p = S.field.p
            oracle = brute_force_orderings(E, X.rows, lambda Y: not any(map(any, Y)),
                                           lambda U, V: matmul(U, V, p))
            found = find_standard_orderings(M, X, eigs)
            assert sorted(oracle) == found
            assert len(found) == 2 and found[0] == found[1][::-1]


def test_irreducibility_examples(running_pair):
    I = Matrix.identity(QQ, 3)
    v = is_irreducible(I, I)
    assert not v.irreducible and v.witness == Subspace.span(QQ, 3, [[1, 0, 0]])
    assert is_irreducible(Matrix.identity(QQ, 1), Matrix.identity(QQ, 1)).irreducible
    v = is_irreducible(*running_pair)
    assert v.irreducible and v.certified


def test_irreducible_without_rational_eigenvalues():
    # A generates GF(4) inside 2x2 matrices over GF(2); no eigenvalue in GF(2)
    C = mat(GF(2), [[0, 1], [1, 1]])
    v = is_irreducible(C, C @ C)
    assert v.irreducible and v.certified
    R = mat(QQ, [[0, -1], [1, 0]])
    v = is_irreducible(R, R)
    assert v.irreducible and v.certified
    B = mat(QQ, [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    v = is_irreducible(B, B)
    assert not v.irreducible and v.witness.dim == 2


def test_witness_is_invariant():
    A = mat(GF(3), [[1, 1, 0], [0, 1, 0], [0, 0, 2]])
    B = mat(GF(3), [[0, 2, 0], [0, 0, 0], [0, 0, 1]])
    v = is_irreducible(A, B)
    assert not v.irreducible
    W = v.witness
    assert 0 < W.dim < 3 and W.is_invariant(A) and W.is_invariant(B)


def test_spin_closure():
    A = mat(QQ, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    assert spin([[1, 0, 0]], [A], 3).is_full()
    assert spin([[0, 0, 1]], [A], 3).dim == 1


def test_verify_running_example(running_system):
    S = running_system
    assert (S.d, S.rho, S.is_sharp) == (1, (1, 1), True)
    assert S.thetas == (0, 1) and S.theta_stars == (0, 1)
    assert idempotent_identity_failures(S) == []
    assert shape_of(S).rho == (1, 1) and shape_of(S).is_sharp


def test_verify_trivial_and_failures():
    five = mat(QQ, [[5]])
    S = verify_td_system(five, five)
    assert (S.d, S.rho) == (0, (1,))
    with pytest.raises(NotDiagonalizable):
        verify_td_system(mat(QQ, [[0, 1], [0, 0]]), Matrix.identity(QQ, 2))
    with pytest.raises(Reducible) as info:
        verify_td_system(Matrix.diagonal(QQ, [0, 1]), Matrix.diagonal(QQ, [2, 3]))
    W = info.value.witness
    assert W.dim == 1 and W.is_invariant(Matrix.diagonal(QQ, [0, 1]))


def test_variants_and_reordering(running_system):
    S = running_system
    variants = S.variants()
    assert len(variants) == 4
    assert {(V.thetas, V.theta_stars) for V in variants} == {
        ((0, 1), (0, 1)), ((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 0), (1, 0))}
    with pytest.raises(NoTridiagonalOrdering):
        S.reordered(thetas=(0, 2))


def test_pool_identities_hold(small_pool):
    for item in small_pool:
        assert idempotent_identity_failures(item.system) == []
        assert idempotent_identity_failures(item.conjugated) == []
        assert set(item.system.rho) == {1}
