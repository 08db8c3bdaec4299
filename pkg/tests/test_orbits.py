import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from liethermo import lie, linalg, orbits, thermo
from liethermo.errors import DomainError
from liethermo.linalg import HALF, ONE

from conftest import finite, positive_a

so3 = lie.builtin_algebra("so3")
vec3 = st.lists(finite, min_size=3, max_size=3)


@given(positive_a)
def test_seeds_fixed(x):
    assert orbits.orbit_sample(x * lie.U, "SO2").max_spread < 1e-12
    assert orbits.orbit_sample(x * lie.Z3, "O3").max_spread < 1e-12


def test_full_so3_orbit_is_not_a_point():
    s = orbits.orbit_sample(2.0 * lie.Z3, "SO3", 50)
    # antipodal points 2 Z3 and -2 Z3 are both reached: spread 2 * ||2 Z3||
    assert s.max_spread == pytest.approx(2 * linalg.frobenius(2.0 * lie.Z3), rel=1e-12)


def test_orbit_sample_errors():
    with pytest.raises(DomainError):
        orbits.orbit_sample(lie.U, "SO3")
    with pytest.raises(DomainError):
        orbits.orbit_sample(np.eye(2), "SO2")
    with pytest.raises(DomainError):
        orbits.orbit_sample(lie.U, "GL2")
    with pytest.raises(DomainError):
        orbits.orbit_sample(lie.U, "SO2", n=0)


@given(st.floats(min_value=-50, max_value=50, allow_nan=False))
def test_leaf_membership_ray(x):
    on, coord = orbits.leaf_membership(x * lie.U, "SO2")
    assert on == (x > 0)
    assert coord == pytest.approx(x)
    on3, _ = orbits.leaf_membership(x * lie.Z3, "O3")
    assert on3 == (x > 0)


@pytest.mark.parametrize("xi, group", [
    (lie.E1, "SO2"), (lie.U + lie.E2, "SO2"), (lie.Z1, "O3"), (lie.Z3 + 1e-6 * lie.Z2, "SO3"),
])
def test_leaf_membership_rejects_off_pattern(xi, group):
    assert orbits.leaf_membership(xi, group)[0] is False


def test_kks_form():
    assert orbits.kks_form(lie.Z3, lie.Z1, lie.Z2) == 1.0
    assert orbits.kks_form(lie.Z3, lie.Z2, lie.Z1) == -1.0
    assert orbits.kks_form(lie.Z3, lie.Z1, lie.Z2, ONE) == 2.0


@given(vec3, vec3, vec3)
def test_kks_antisymmetric(f, x, y):
    F, X, Y = so3.element(f), so3.element(x), so3.element(y)
    assert orbits.kks_form(F, X, Y) == pytest.approx(-orbits.kks_form(F, Y, X), abs=1e-9)


@given(vec3, vec3)
def test_bracket_of_coordinate_functions(x, a):
    # {<., Z1>, <., Z2>}(X) = <X, Z3>
    ev = orbits.PoissonEvaluator(so3)
    X = so3.element(x)
    F, G = orbits.LinearFunctional(lie.Z1), orbits.LinearFunctional(lie.Z2)
    assert ev(F, G, X) == pytest.approx(linalg.pairing(X, lie.Z3), abs=1e-12)


def test_fd_gradient_agrees_with_analytic():
    ev = orbits.PoissonEvaluator(so3)
    X = so3.element([0.3, -1.2, 0.8])
    C = orbits.casimir()
    fd = ev.gradient(lambda Y: C(Y), X)
    assert linalg.matrices_close(fd, C.gradient(X), 1e-9)


def test_nonlinear_bracket_antisymmetric():
    ev = orbits.PoissonEvaluator(so3)
    X = so3.element([0.5, 0.1, -0.7])
    F = lambda Y: linalg.pairing(Y, lie.Z1) ** 2
    G = lambda Y: np.sin(linalg.pairing(Y, lie.Z2 + lie.Z3))
    assert abs(ev(F, G, X) + ev(G, F, X)) < 1e-9


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_bracket_properties_so3(seed):
    res = orbits.bracket_property_residuals(so3, 100, seed=seed)
    assert res["antisymmetry"] < 1e-10
    assert res["jacobi"] < 1e-10
    assert res["casimir"] < 1e-10
    assert res["self"] < 1e-10
    assert res["leibniz"] < 1e-10


def test_jacobi_with_numerical_nested_brackets():
    assert orbits.jacobi_fd_residual(so3, 10) < 1e-10


def test_so2_bracket_vanishes():
    res = orbits.bracket_property_residuals(lie.builtin_algebra("so2"), 100, seed=3)
    assert max(res.values()) < 1e-14


def test_affine_bracket_with_builtin_cocycle_matches_plain():
    tc = thermo.TwoCocycle(thermo.AD_J)
    plain = orbits.PoissonEvaluator(so3)
    affine = orbits.PoissonEvaluator(so3, HALF, tc)
    X = so3.element([1.0, 2.0, -0.5])
    F, G = orbits.LinearFunctional(lie.Z1 + lie.Z3), orbits.LinearFunctional(lie.Z2)
    assert affine(F, G, X) == pytest.approx(plain(F, G, X), abs=1e-14)


def test_zero_seed_orbit_is_zero():
    s = orbits.orbit_sample(np.zeros((3, 3)), "SO3", 10)
    assert s.max_spread == 0.0 and all(linalg.max_abs(p) == 0 for p in s.points)
    assert orbits.leaf_membership(np.zeros((2, 2)), "SO2") == (False, 0.0)
    assert orbits.leaf_membership(3.0 * lie.U, "SO2") == (True, 3.0)


def test_kks_degenerate_cases():
    assert orbits.kks_form(lie.Z3, lie.Z1, lie.Z1) == 0.0
    assert orbits.kks_form(lie.U, 2.0 * lie.U, -1.5 * lie.U) == 0.0
    with pytest.raises(DomainError):
        orbits.kks_form(lie.U, lie.Z1, lie.Z2)


def test_bracket_at_z3_point():
    ev = orbits.PoissonEvaluator(so3)
    F, G = orbits.LinearFunctional(lie.Z1), orbits.LinearFunctional(lie.Z2)
    assert orbits.poisson_bracket(ev, F, G, lie.Z3) == 1.0
