from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from liethermo import lie, linalg, thermo
from liethermo.errors import DomainError, StructureError

from conftest import finite

angles = st.floats(min_value=-10, max_value=10, allow_nan=False)


@pytest.mark.parametrize("name", ["so2", "so3", "sl2"])
def test_jacobi(name):
    assert lie.jacobi_check(lie.builtin_algebra(name)) < 1e-12


def test_so3_structure_constants_hand_derived():
    # [Z1,Z2]=Z3, [Z2,Z3]=Z1, [Z3,Z1]=Z2 by direct multiplication
    c = lie.builtin_algebra("so3", exact=True).structure_constants
    assert list(c[0, 1]) == [0, 0, 1]
    assert list(c[1, 2]) == [1, 0, 0]
    assert list(c[2, 0]) == [0, 1, 0]
    assert list(c[1, 0]) == [0, 0, -1]


def test_sl2_structure_constants_hand_derived():
    # u e1 = -e2, e1 u = e2, so [u,e1] = -2 e2; likewise [u,e2] = 2 e1, [e1,e2] = 2 u
    c = lie.builtin_algebra("sl2", exact=True).structure_constants
    assert list(c[0, 1]) == [0, 0, -2]
    assert list(c[0, 2]) == [0, 2, 0]
    assert list(c[1, 2]) == [2, 0, 0]


def test_bracket_from_constants_matches_commutator():
    alg = lie.builtin_algebra("sl2", exact=True)
    for i in range(3):
        for j in range(3):
            direct = linalg.commutator(alg.basis[i], alg.basis[j])
            assert (alg.bracket_from_constants(i, j) == direct).all()


def test_so3_bracket_beta_Z2_sign():
    # [Z3, Z2] = -Z1 from the matrices
    assert linalg.matrices_close(linalg.commutator(lie.Z3, lie.Z2), -lie.Z1, 0)


@given(st.lists(finite, min_size=3, max_size=3))
def test_coordinates_roundtrip(c):
    alg = lie.builtin_algebra("so3")
    assert np.allclose(alg.coordinates(alg.element(c)), c, atol=1e-12)


def test_gram_orthonormal_half_pairing():
    for name in ("so3", "sl2"):
        G = np.array(lie.gram_matrix(lie.builtin_algebra(name).basis), dtype=float)
        assert np.allclose(G, np.eye(len(G)))


def test_unknown_and_dependent():
    with pytest.raises(DomainError):
        lie.builtin_algebra("su2")
    with pytest.raises(DomainError):
        lie.algebra_from_basis("bad", ("a", "b"), (lie.U, 2 * lie.U))


def test_builtin_basis_read_only():
    alg = lie.builtin_algebra("so3")
    with pytest.raises(ValueError):
        alg.basis[0][0, 0] = 1.0


def test_group_element_validation():
    with pytest.raises(DomainError):
        lie.GroupElement(np.diag([1.0, 1.0, -1.0]), "SO3")
    with pytest.raises(DomainError):
        lie.GroupElement(2 * np.eye(2), "SO2")
    with pytest.raises(DomainError):
        lie.GroupElement(np.eye(2), "SO3")
    g = lie.GroupElement(lie.J, "O3")
    assert g.det == -1
    assert linalg.matrices_close((g @ g.inverse()).matrix, np.eye(3), 1e-15)


@given(angles, angles, angles, st.lists(finite, min_size=3, max_size=3), st.lists(finite, min_size=3, max_size=3))
def test_adjoint_coadjoint_duality(t1, t2, t3, x, y):
    # <Ad_g X, Y> = <X, Ad*_g Y>
    g = lie.GroupElement(linalg.matrix_exp(t1 * lie.Z1) @ linalg.matrix_exp(t2 * lie.Z2)
                         @ linalg.matrix_exp(t3 * lie.Z3), "SO3")
    alg = lie.builtin_algebra("so3")
    X, Y = alg.element(x), alg.element(y)
    lhs = linalg.pairing(lie.adjoint_group(g, X), Y)
    rhs = linalg.pairing(X, lie.coadjoint_group(g, Y))
    assert lhs == pytest.approx(rhs, abs=1e-9)


@given(angles, angles)
def test_adjoint_is_homomorphism(s, t):
    g = lie.GroupElement(linalg.matrix_exp(s * lie.Z1), "SO3")
    h = lie.GroupElement(linalg.matrix_exp(t * lie.Z2), "SO3")
    X = np.array(lie.Z3, dtype=float)
    assert linalg.matrices_close(lie.adjoint_group(g @ h, X),
                                 lie.adjoint_group(g, lie.adjoint_group(h, X)), 1e-12)


def test_sweep_sizes():
    assert len(lie.so2_sweep(100)) == 100
    assert len(lie.so3_sweep(10)) == 30
    assert len(lie.o3_stabilizer_sweep(10)) == 20
    with pytest.raises(DomainError):
        lie.group_sweep("SU2")


def test_o3_stabilizer_fixes_z3_line():
    for g in lie.o3_stabilizer_sweep(50):
        assert linalg.matrices_close(lie.coadjoint_group(g, lie.Z3), lie.Z3, 1e-12)


def test_coordinate_reflections_negate_z3():
    J, R2, R1 = lie.reflection_elements()
    assert linalg.matrices_close(lie.coadjoint_group(J, lie.Z3), lie.Z3, 0)
    for g in (R2, R1):
        assert linalg.matrices_close(lie.coadjoint_group(g, lie.Z3), -lie.Z3, 0)


def test_cartan_split_sl2():
    split = lie.cartan_split(lie.builtin_algebra("sl2"), thermo.NEG_INVERSE)
    assert len(split.k_basis) == 1 and linalg.matrices_close(split.k_basis[0], lie.U, 0)
    assert len(split.p_basis) == 2
    assert max(split.residuals.values()) < 1e-12


def test_cartan_split_so3_ad_j():
    split = lie.cartan_split(lie.builtin_algebra("so3"), thermo.AD_J)
    assert [linalg.matrices_close(B, lie.Z3, 0) for B in split.k_basis] == [True]
    assert len(split.p_basis) == 2


def test_cartan_split_non_diagonal_basis():
    alg = lie.algebra_from_basis("sl2'", ("u+e1", "e1", "e2"), (lie.U + lie.E1, lie.E1, lie.E2))
    split = lie.cartan_split(alg, lambda X: -np.asarray(X, dtype=float).T)
    assert len(split.k_basis) == 1 and len(split.p_basis) == 2
    k = split.k_basis[0] / split.k_basis[0][1, 0]
    assert linalg.matrices_close(k, lie.U, 1e-12)


def test_cartan_split_rejects_non_involution():
    with pytest.raises(DomainError):
        lie.cartan_split(lie.builtin_algebra("so3"), lambda X: 2 * np.asarray(X, dtype=float))


def test_cartan_split_structure_error():
    # an involution on so3 whose +1 space {Z1, Z2} is not a subalgebra
    flip = lambda X: lie.coadjoint_group(lie.GroupElement(lie.J, "O3"), X) * -1
    with pytest.raises(StructureError):
        lie.cartan_split(lie.builtin_algebra("so3"), flip)


def test_exact_algebra_constants_are_fractions():
    c = lie.builtin_algebra("sl2", exact=True).structure_constants
    assert all(isinstance(v, Fraction) for v in c.flat)


@pytest.mark.parametrize("name", ["so2", "so3", "sl2"])
def test_structure_constants_recompute(name):
    exact = lie.builtin_algebra(name, exact=True)
    floats = lie.builtin_algebra(name)
    again = lie.algebra_from_basis(name, exact.labels, exact.basis, exact=True).structure_constants
    assert (again == exact.structure_constants).all()
    assert np.max(np.abs(floats.structure_constants - exact.structure_constants.astype(float))) < 1e-14
    c = exact.structure_constants
    assert (c == -c.transpose(1, 0, 2)).all()


def test_adjoint_preserves_brackets():
    rng = np.random.default_rng(7)
    alg = lie.builtin_algebra("so3")
    for _ in range(50):
        g = lie.GroupElement(linalg.matrix_exp(alg.element(rng.standard_normal(3))), "SO3")
        X, Y = alg.element(rng.standard_normal(3)), alg.element(rng.standard_normal(3))
        lhs = lie.adjoint_group(g, linalg.commutator(X, Y))
        rhs = linalg.commutator(lie.adjoint_group(g, X), lie.adjoint_group(g, Y))
        assert linalg.max_abs(lhs - rhs) < 1e-10


@given(angles, finite)
def test_so2_adjoint_trivial(t, x):
    g = lie.GroupElement(linalg.matrix_exp(t * lie.U), "SO2")
    X = x * np.array(lie.U, dtype=float)
    assert linalg.max_abs(lie.adjoint_group(g, X) - X) <= 1e-12 * max(1.0, abs(x))
