"""Built-in matrix Lie algebras so(2), so(3), sl(2,R) and their groups.

The bases are fixed integer matrices.  Structure constants are never typed
in by hand: they are recovered from the matrices by solving against the
Gram matrix of the half-trace pairing.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import functools
import itertools
import math

import numpy as np
import scipy.linalg
import sympy

from . import linalg
from .errors import DomainError, StructureError
from .linalg import ALGEBRAIC_TOL, HALF

# so(2) generator and its opposite
U = np.array([[0, -1], [1, 0]])
V = np.array([[0, 1], [-1, 0]])
# complement of so(2) in sl(2, R)
E1 = np.array([[0, 1], [1, 0]])
E2 = np.array([[1, 0], [0, -1]])
# infinitesimal rotations about the x, y, z axes
Z1 = np.array([[0, 0, 0], [0, 0, -1], [0, 1, 0]])
Z2 = np.array([[0, 0, 1], [0, 0, 0], [-1, 0, 0]])
Z3 = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
# reflection through the xy-plane
J = np.diag([1, 1, -1])

_BASES = {
    "so2": (("u",), (U,)),
    "sl2": (("u", "e1", "e2"), (U, E1, E2)),
    "so3": (("Z1", "Z2", "Z3"), (Z1, Z2, Z3)),
}


@dataclass(frozen=True, eq=False)
class LieAlgebraSpec:
    """A named matrix Lie algebra with an ordered basis.

    ``structure_constants[i, j, k]`` is the coefficient of ``basis[k]`` in
    ``[basis[i], basis[j]]``.
    """

    name: str
    dim_matrix: int
    labels: tuple
    basis: tuple
    structure_constants: np.ndarray
    exact: bool = False

    @property
    def dim(self):
        return len(self.basis)

    def element(self, coords):
        """Linear combination ``sum(c_k * B_k)``."""
        out = linalg.zeros(self.dim_matrix, self.exact)
        for c, B in zip(coords, self.basis):
            out = out + c * B
        return out

    def coordinates(self, X):
        return coordinates(self.basis, X, exact_mode=self.exact)

    def bracket_from_constants(self, i, j):
        return self.element(self.structure_constants[i, j])


def gram_matrix(basis, conv=HALF):
    m = len(basis)
    return [[linalg.pairing(basis[i], basis[j], conv) for j in range(m)] for i in range(m)]


def coordinates(basis, X, exact_mode=False):
    """Coordinates of ``X`` against ``basis`` through the half-trace Gram matrix.

    Only meaningful when ``X`` lies in the span; the caller checks the
    residual if that is in doubt.
    """
    G = gram_matrix(basis)
    rhs = [linalg.pairing(B, X) for B in basis]
    if exact_mode:
        q = lambda v: sympy.Rational(int(Fraction(v).numerator), int(Fraction(v).denominator))
        sol = sympy.Matrix([[q(g) for g in row] for row in G]).LUsolve(sympy.Matrix([q(r) for r in rhs]))
        return np.array([Fraction(int(v.p), int(v.q)) for v in sol], dtype=object)
    return np.linalg.solve(np.array(G, dtype=float), np.array(rhs, dtype=float))


def _structure_constants(basis, exact_mode):
    m = len(basis)
    c = np.empty((m, m, m), dtype=object if exact_mode else float)
    for i, j in itertools.product(range(m), repeat=2):
        c[i, j] = coordinates(basis, linalg.commutator(basis[i], basis[j]), exact_mode)
    return c


def algebra_from_basis(name, labels, basis, exact=False):
    """Build a :class:`LieAlgebraSpec` from explicit basis matrices."""
    conv = linalg.exact if exact else linalg.to_float
    basis = tuple(conv(B) for B in basis)
    for B in basis:
        B.setflags(write=False)
    dims = {B.shape[0] for B in basis}
    if len(dims) != 1:
        raise DomainError("basis matrices must share one dimension")
    G = np.array(gram_matrix(basis), dtype=float)
    if abs(np.linalg.det(G)) <= ALGEBRAIC_TOL:
        raise DomainError("basis is linearly dependent")
    constants = _structure_constants(basis, exact)
    constants.setflags(write=False)
    return LieAlgebraSpec(
        name=name,
        dim_matrix=dims.pop(),
        labels=tuple(labels),
        basis=basis,
        structure_constants=constants,
        exact=exact,
    )


@functools.lru_cache(maxsize=None)
def builtin_algebra(name, exact=False):
    """Return one of ``"so2"``, ``"so3"``, ``"sl2"``.

    ``sl2`` uses the ordered basis ``(u, e1, e2)``: the so(2) generator
    followed by the two symmetric traceless matrices spanning its complement.
    """
    if name not in _BASES:
        raise DomainError(f"unknown algebra {name!r}; expected one of {sorted(_BASES)}")
    labels, basis = _BASES[name]
    return algebra_from_basis(name, labels, basis, exact=exact)


def jacobi_check(alg, samples=10, seed=0):
    """Largest Frobenius norm of the cyclic Jacobi sum.

    All basis triples are checked, plus ``samples`` triples of random linear
    combinations drawn with ``seed``.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")

    def cyclic(X, Y, Z):
        br = linalg.commutator
        return br(X, br(Y, Z)) + br(Y, br(Z, X)) + br(Z, br(X, Y))

    worst = 0.0
    for X, Y, Z in itertools.product(alg.basis, repeat=3):
        worst = max(worst, linalg.frobenius(cyclic(X, Y, Z)))
    rng = np.random.default_rng(seed)
    fbasis = [linalg.to_float(B) for B in alg.basis]
    for _ in range(samples):
        X, Y, Z = (sum(c * B for c, B in zip(rng.standard_normal(alg.dim), fbasis)) for _ in range(3))
        worst = max(worst, linalg.frobenius(cyclic(X, Y, Z)))
    return worst


# ---------------------------------------------------------------------------
# groups


_GROUPS = {"SO2": 2, "SO3": 3, "O3": 3}


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An orthogonal matrix tagged with the group it belongs to."""

    matrix: np.ndarray
    group: str

    def __post_init__(self):
        if self.group not in _GROUPS:
            raise DomainError(f"unknown group {self.group!r}")
        M = linalg.as_matrix(self.matrix)
        if M.shape[0] != _GROUPS[self.group]:
            raise DomainError(f"{self.group} element must be {_GROUPS[self.group]}x{_GROUPS[self.group]}")
        Mf = linalg.to_float(M)
        if not linalg.matrices_close(Mf.T @ Mf, np.eye(M.shape[0]), 1e-10):
            raise DomainError("group element is not orthogonal")
        det = float(np.linalg.det(Mf))
        if self.group.startswith("SO") and abs(det - 1.0) > 1e-10:
            raise DomainError(f"{self.group} element must have det +1, got {det}")
        object.__setattr__(self, "matrix", M)

    @property
    def det(self):
        return round(float(np.linalg.det(linalg.to_float(self.matrix))))

    def inverse(self):
        return GroupElement(self.matrix.T, self.group)

    def __matmul__(self, other):
        group = self.group if self.group == other.group else "O3"
        return GroupElement(self.matrix @ other.matrix, group)


def _as_group_element(g):
    if isinstance(g, GroupElement):
        return g
    M = linalg.to_float(linalg.as_matrix(g))
    group = "SO2" if M.shape[0] == 2 else ("SO3" if np.linalg.det(M) > 0 else "O3")
    return GroupElement(M, group)


def adjoint_group(g, X):
    """``Ad_g(X) = g X g^{-1}``, with ``g^{-1} = g^T`` for orthogonal ``g``."""
    g = _as_group_element(g)
    X = linalg.as_matrix(X)
    if X.shape != g.matrix.shape:
        raise DomainError("group element and algebra element differ in dimension")
    return g.matrix @ X @ g.matrix.T


def coadjoint_group(g, xi):
    """``Ad*_g(xi) = g^{-1} xi g``; dual elements are matrices via the pairing."""
    g = _as_group_element(g)
    xi = linalg.as_matrix(xi)
    if xi.shape != g.matrix.shape:
        raise DomainError("group element and dual element differ in dimension")
    return g.matrix.T @ xi @ g.matrix


def one_parameter_sweep(generator, n=100, group="SO3"):
    """``exp(t X)`` at ``n`` uniform ``t`` in ``[0, 2*pi)``."""
    ts = 2.0 * math.pi * np.arange(n) / n
    X = linalg.to_float(generator)
    return [GroupElement(linalg.matrix_exp(t * X), group) for t in ts]


def so2_sweep(n=100):
    return one_parameter_sweep(U, n, "SO2")


def so3_sweep(n=100):
    """Sweep each of the three axis rotations, ``3 * n`` elements in total."""
    return [g for Z in (Z1, Z2, Z3) for g in one_parameter_sweep(Z, n, "SO3")]


def o3_stabilizer_sweep(n=100):
    """Rotations about the z-axis and their products with ``J``.

    This is the subgroup of O(3) generated by ``J`` and ``exp(t Z3)``; it
    fixes the ``Z3`` line under conjugation.  ``2 * n`` elements.
    """
    Jg = GroupElement(J, "O3")
    rots = one_parameter_sweep(Z3, n, "SO3")
    return [GroupElement(r.matrix, "O3") for r in rots] + [Jg @ r for r in rots]


def reflection_elements():
    """The three coordinate reflections ``diag(+-1, +-1, +-1)`` with one minus sign."""
    return [GroupElement(np.diag(d), "O3") for d in ([1, 1, -1], [1, -1, 1], [-1, 1, 1])]


def group_sweep(group, n=100):
    if group == "SO2":
        return so2_sweep(n)
    if group == "SO3":
        return so3_sweep(n)
    if group == "O3":
        return o3_stabilizer_sweep(n)
    raise DomainError(f"unknown group {group!r}")


# ---------------------------------------------------------------------------
# Cartan decomposition


@dataclass(frozen=True, eq=False)
class CartanSplit:
    """``g = k + p`` with ``k`` the +1 and ``p`` the -1 eigenspace of an involution."""

    k_basis: list
    p_basis: list
    involution: object
    residuals: dict = field(default_factory=dict)


def _span_residual(X, span):
    x = linalg.to_float(X).ravel()
    if not span:
        return float(np.linalg.norm(x))
    A = np.stack([linalg.to_float(B).ravel() for B in span], axis=1)
    coef, *_ = np.linalg.lstsq(A, x, rcond=None)
    return float(np.linalg.norm(A @ coef - x))


def cartan_split(alg, involution):
    """Split ``alg`` into the +1/-1 eigenspaces of ``involution``.

    ``involution`` is any callable on matrices (an ``AlgebraCocycle`` in
    practice); it is applied to the basis and extended linearly.

    Raises
    ------
    DomainError
        If the induced linear map does not square to the identity.
    StructureError
        If ``[k,k] in k``, ``[k,p] in p`` or ``[p,p] in k`` fails beyond 1e-12.
    """
    images = [involution(B) for B in alg.basis]
    for B, img in zip(alg.basis, images):
        back = involution(img)
        if not linalg.matrices_close(linalg.to_float(back), linalg.to_float(B)):
            raise DomainError("map does not square to the identity on the basis")
    M = np.stack([linalg.to_float(alg.coordinates(img)) for img in images], axis=1)
    if not linalg.matrices_close(M @ M, np.eye(alg.dim)):
        raise DomainError("induced linear map is not an involution")

    if linalg.matrices_close(M, np.diag(np.diag(M))):
        k_basis = [B for B, d in zip(alg.basis, np.diag(M)) if d > 0]
        p_basis = [B for B, d in zip(alg.basis, np.diag(M)) if d < 0]
    else:
        fbasis = [linalg.to_float(B) for B in alg.basis]
        k_basis = [sum(c * B for c, B in zip(v, fbasis)) for v in scipy.linalg.null_space(M - np.eye(alg.dim)).T]
        p_basis = [sum(c * B for c, B in zip(v, fbasis)) for v in scipy.linalg.null_space(M + np.eye(alg.dim)).T]

    residuals = {"[k,k] in k": 0.0, "[k,p] in p": 0.0, "[p,p] in k": 0.0}
    for key, left, right, target in (
        ("[k,k] in k", k_basis, k_basis, k_basis),
        ("[k,p] in p", k_basis, p_basis, p_basis),
        ("[p,p] in k", p_basis, p_basis, k_basis),
    ):
        for X, Y in itertools.product(left, right):
            residuals[key] = max(residuals[key], _span_residual(linalg.commutator(X, Y), target))
    bad = {k: v for k, v in residuals.items() if v >= ALGEBRAIC_TOL}
    if bad:
        raise StructureError(f"Cartan inclusions violated: {bad}")
    return CartanSplit(k_basis=k_basis, p_basis=p_basis, involution=involution, residuals=residuals)
