"""Invariant bilinear form, the anti-automorphism it induces, and isomorphism tests."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (DimensionMismatch, FieldMismatch, NoIntertwiner, NotSharp,
                     TheoremViolation)
from .linalg import Matrix, kernel_basis
from .split import parameter_array
from .tdcore import shape_of


def intertwining_space(pairs):
    """Basis of ``{X : X M = M' X for every (M, M') in pairs}``.

    ``M`` is n x n and ``M'`` is m x m; X is m x n.  The n*m entries of X
    are the unknowns of one homogeneous linear system.
    """
    M0, Mp0 = pairs[0]
    field = M0.field
    n, m = M0.nrows, Mp0.nrows
    rows = []
    for M, Mp in pairs:
        if M.field != field or Mp.field != field:
            raise FieldMismatch("intertwining equations over mixed fields")
        for i in range(m):
            for j in range(n):
                row = [0] * (m * n)
                # (X M)_ij = sum_b X_ib M_bj
                for b in range(n):
                    row[i * n + b] += M.rows[b][j]
                # (M' X)_ij = sum_a M'_ia X_aj
                for a in range(m):
                    row[a * n + j] -= Mp.rows[i][a]
                rows.append([field.reduce(x) for x in row])
    K = kernel_basis(Matrix(field, rows))
    return [Matrix.unvec(field, list(b), m, n) for b in K.basis]


@dataclass(frozen=True)
class BilinearForm:
    """``<u, v> = u^T G v``."""

    gram: Matrix
    solution_dim: int = 1

    def __call__(self, u, v):
        Gv = self.gram.apply(v)
        return self.gram.field.reduce(sum(a * b for a, b in zip(u, Gv)))

    def to_json(self):
        return {"gram": self.gram.entry_strings(), "solution_dim": self.solution_dim}


def form_solution_space(A, Astar):
    """All G with ``G A = A^T G`` and ``G A* = A*^T G``."""
    return intertwining_space([(A, A.transpose()), (Astar, Astar.transpose())])


def bilinear_form(S):
    """The form with ``<Au, v> = <u, Av>`` and ``<A*u, v> = <u, A*v>`` on a sharp system.

    The solution space must be one-dimensional and its generator symmetric
    and invertible; the generator is scaled so its first nonzero entry is 1.
    """
    if not S.is_sharp:
        raise NotSharp("the invariant form is only guaranteed for sharp pairs")
    sols = form_solution_space(S.A, S.Astar)
    axiom = "invariant form: unique up to scalar, nondegenerate and symmetric"
    if len(sols) != 1:
        raise TheoremViolation(f"invariant forms span a {len(sols)}-dimensional space", axiom)
    G = sols[0].normalized()
    if not G.is_symmetric():
        raise TheoremViolation("the invariant form is not symmetric", axiom)
    if not G.is_invertible():
        raise TheoremViolation("the invariant form is degenerate", axiom)
    return BilinearForm(G, 1)


class AntiAutomorphism:
    """``X -> G^{-1} X^T G`` for the invariant Gram matrix G of a sharp system."""

    def __init__(self, S, form=None):
        form = bilinear_form(S) if form is None else form
        self.field = S.field
        self.n = S.n
        self.G = form.gram
        self.Ginv = form.gram.inverse()

    def __call__(self, X):
        if X.field != self.field:
            raise FieldMismatch(f"{X.field} matrix given to a map over {self.field}")
        if X.shape != (self.n, self.n):
            raise DimensionMismatch(f"expected a {self.n}x{self.n} matrix, got {X.shape}")
        return self.Ginv @ X.transpose() @ self.G


def anti_automorphism(S, X, form=None):
    return AntiAutomorphism(S, form)(X)


def sharpness_report(S):
    rho0 = shape_of(S).rho[0]
    report = {"rho0": rho0, "sharp": rho0 == 1}
    if S.field.kind == "rational" or S.field.is_finite:
        report["note"] = (
            f"{S.field} is not algebraically closed, so sharpness is not guaranteed "
            "here; a non-sharp verdict is legitimate")
    return report


def _check_comparable(S, S2):
    if S.field != S2.field:
        raise FieldMismatch(f"systems over {S.field} and {S2.field}")
    for X in (S, S2):
        if not X.is_sharp:
            raise NotSharp("isomorphism via parameter arrays needs sharp systems")


@dataclass(frozen=True)
class IsoVerdict:
    isomorphic: bool
    arrays: tuple
    common: tuple = ()

    def to_json(self):
        out = {"isomorphic": self.isomorphic,
               "arrays": [[a.to_json() for a in side] if isinstance(side, (list, tuple))
                          else side.to_json() for side in self.arrays]}
        if self.common:
            out["common"] = [a.to_json() for a in self.common]
        return out


def isomorphic_systems(S, S2):
    """Sharp systems are isomorphic iff their parameter arrays agree; orderings as given."""
    _check_comparable(S, S2)
    p, p2 = parameter_array(S), parameter_array(S2)
    return IsoVerdict(p == p2, (p, p2))


def parameter_arrays_of_pair(S):
    """Parameter arrays of every system on the pair underlying ``S``."""
    return [parameter_array(V) for V in S.variants()]


def isomorphic_pairs(S, S2):
    """Sharp pairs are isomorphic iff they have a parameter array in common."""
    _check_comparable(S, S2)
    arrs, arrs2 = parameter_arrays_of_pair(S), parameter_arrays_of_pair(S2)
    common = [a for a in arrs if a in arrs2]
    return IsoVerdict(bool(common), (arrs, arrs2), tuple(common))


@dataclass(frozen=True)
class Intertwiner:
    gamma: Matrix

    def to_json(self):
        return {"gamma": self.gamma.entry_strings()}


def intertwiner(S, S2):
    """The normalized invertible ``gamma`` with ``gamma A = A' gamma``, ``gamma A* = A*' gamma``."""
    if S.field != S2.field:
        raise FieldMismatch(f"systems over {S.field} and {S2.field}")
    if S.n != S2.n:
        raise NoIntertwiner(f"dimensions differ ({S.n} vs {S2.n})")
    sols = intertwining_space([(S.A, S2.A), (S.Astar, S2.Astar)])
    if not sols:
        raise NoIntertwiner("no nonzero map intertwines the two pairs")
    axiom = "intertwiners of a sharp irreducible pair are unique up to scalar"
    if len(sols) > 1:
        raise TheoremViolation(f"intertwiners span a {len(sols)}-dimensional space", axiom)
    gamma = sols[0].normalized()
    if not gamma.is_invertible():
        raise TheoremViolation("the intertwiner is singular", axiom)
    for E, E2 in zip(S.E + S.Estar, S2.E + S2.Estar):
        if gamma @ E != E2 @ gamma:
            raise NoIntertwiner(
                "the pairs are isomorphic but the given orderings are not matched by gamma")
    return Intertwiner(gamma)
