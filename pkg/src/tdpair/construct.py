"""Building systems from data: split canonical form, random instances, base change.

Randomness comes from ``random.Random`` (Mersenne Twister), seeded with an
int or a string, so every generated instance is reproducible from
``(seed, field, d)`` on any platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (DimensionMismatch, FieldMismatch,
                     NotRealizable, RoundTripMismatch, TDError)
from .linalg import Matrix, kernel_basis
from .split import ParameterArray, parameter_array
from .tdcore import verify_td_system

DEFAULT_ATTEMPTS = 200


@dataclass(frozen=True)
class SplitFormSpec:
    """Diagonals and superdiagonal of a pair in split canonical form."""

    field: object
    thetas: tuple
    theta_stars: tuple
    phis: tuple

    def __post_init__(self):
        for name in ("thetas", "theta_stars", "phis"):
            object.__setattr__(self, name, tuple(self.field(x) for x in getattr(self, name)))
        d1 = len(self.thetas)
        if d1 == 0 or len(self.theta_stars) != d1 or len(self.phis) != d1 - 1:
            raise ValueError("need d+1 thetas, d+1 theta_stars and d phis")
        if len(set(self.thetas)) != d1 or len(set(self.theta_stars)) != d1:
            raise ValueError("thetas and theta_stars must be mutually distinct")
        if any(x == 0 for x in self.phis):
            raise ValueError("every phi must be nonzero")

    @classmethod
    def from_array(cls, p):
        if any(z == 0 for z in p.zetas):
            raise ValueError("every zeta must be nonzero")
        f = p.field
        phis = [f.div(p.zetas[i], p.zetas[i - 1]) for i in range(1, p.d + 1)]
        return cls(f, p.thetas, p.theta_stars, phis)

    def matrices(self):
        """``A`` lower bidiagonal (subdiagonal 1), ``A*`` upper bidiagonal (superdiagonal phi)."""
        f, n = self.field, len(self.thetas)
        A = [[0] * n for _ in range(n)]
        B = [[0] * n for _ in range(n)]
        for i in range(n):
            A[i][i] = self.thetas[i]
            B[i][i] = self.theta_stars[i]
            if i + 1 < n:
                A[i + 1][i] = f.one
                B[i][i + 1] = self.phis[i]
        return Matrix(f, A), Matrix(f, B)


def split_form_matrices(p):
    return SplitFormSpec.from_array(p).matrices()


def leonard_from_parameter_array(p):
    """The Leonard system in split form for ``p``, accepted only if it verifies and round-trips."""
    A, Astar = split_form_matrices(p)
    try:
        S = verify_td_system(A, Astar)
        S = S.reordered(p.thetas, p.theta_stars)
    except TDError as exc:
        if isinstance(exc, AssertionError):
            # internal bug traps are not verdicts on the array
            raise
        raise NotRealizable(f"split form is not a tridiagonal system: {exc}", exc.axiom) from exc
    got = parameter_array(S)
    if got != p:
        raise RoundTripMismatch(
            f"reconstructed array {got.to_json()} differs from {p.to_json()}")
    return S


def _eigenvector_matrix(field, thetas):
    """Columns are eigenvectors of the split-form A, normalized with a leading 1."""
    n = len(thetas)
    Q = [[0] * n for _ in range(n)]
    for j in range(n):
        Q[j][j] = field.one
        for k in range(j + 1, n):
            Q[k][j] = field.div(Q[k - 1][j], thetas[j] - thetas[k])
    return Matrix(field, Q)


def _star_solutions(field, thetas):
    """Kernel, in the unknowns ``(phi_1..phi_d, th*_0..th*_d)``, of the tridiagonality equations.

    With A in split form and Q its eigenvector matrix, ``Q^{-1} A* Q`` is
    linear in phi and th*; the entries two or more below the diagonal must
    vanish.  Each solution gives an A* acting tridiagonally on A's eigenspaces.
    """
    n = len(thetas)
    Q = _eigenvector_matrix(field, thetas)
    Qi = Q.inverse()
    q, qi = Q.rows, Qi.rows
    rows = []
    for i in range(n):
        for j in range(i - 1):
            row = [qi[i][k - 1] * q[k][j] for k in range(1, n)]
            row += [qi[i][l] * q[l][j] for l in range(n)]
            rows.append([field.reduce(x) for x in row])
    if not rows:
        return [tuple(1 if t == s else 0 for t in range(2 * n - 1)) for s in range(2 * n - 1)]
    return list(kernel_basis(Matrix(field, rows)).basis)


def _propose_thetas(field, d, rng):
    """Distinct eigenvalues; from the fifth on, each maximizes the solution space above."""
    p = field.p
    thetas = rng.sample(range(p), min(d + 1, 4))
    for _ in range(4, d + 1):
        best, best_dim = None, -1
        for x in range(p):
            if x in thetas:
                continue
            dim = len(_star_solutions(field, thetas + [x]))
            if dim > best_dim:
                best, best_dim = x, dim
        thetas.append(best)
    return thetas


def _propose(field, d, rng):
    """One candidate array, or None if the draw degenerates."""
    thetas = _propose_thetas(field, d, rng)
    K = _star_solutions(field, thetas)
    coeffs = [rng.randrange(field.p) for _ in K]
    v = [field.reduce(sum(c * b[t] for c, b in zip(coeffs, K))) for t in range(2 * d + 1)]
    phis, stars = v[:d], v[d:]
    if any(x == 0 for x in phis) or len(set(stars)) != d + 1:
        return None
    zetas = [1]
    for x in phis:
        zetas.append(field.reduce(zetas[-1] * x))
    return ParameterArray(field, thetas, stars, zetas)


def random_parameter_array(field, d, seed, attempts=DEFAULT_ATTEMPTS):
    """A realizable parameter array over GF(p), reproducible from ``(seed, field, d)``.

    Candidates put A in split form with the drawn eigenvalues and take a
    random solution of the linear tridiagonality equations for A*; each is
    then accepted only through ``leonard_from_parameter_array``.  Returns
    None when ``attempts`` candidates all fail.
    """
    if not field.is_finite:
        raise ValueError("random generation needs a prime field")
    if d < 0:
        raise ValueError("d must be nonnegative")
    if field.p < d + 1:
        return None
    rng = random.Random(seed)
    if d == 0:
        return ParameterArray(field, [rng.randrange(field.p)], [rng.randrange(field.p)], [1])
    for _ in range(attempts):
        cand = _propose(field, d, rng)
        if cand is None:
            continue
        try:
            leonard_from_parameter_array(cand)
        except NotRealizable:
            continue
        return cand
    return None


def random_invertible(field, n, rng):
    while True:
        P = Matrix.random(field, n, n, rng)
        if P.is_invertible():
            return P


def conjugate(S, P):
    """The system on ``(P A P^-1, P A* P^-1)`` with the orderings carried over from S."""
    if P.field != S.field:
        raise FieldMismatch(f"{P.field} matrix cannot conjugate a system over {S.field}")
    if P.shape != (S.n, S.n):
        raise DimensionMismatch(f"expected a {S.n}x{S.n} matrix, got {P.shape}")
    Pinv = P.inverse()
    T = verify_td_system(P @ S.A @ Pinv, P @ S.Astar @ Pinv)
    return T.reordered(S.thetas, S.theta_stars)


@dataclass(frozen=True)
class PoolItem:
    index: int
    array: ParameterArray
    system: object
    conjugator: Matrix
    conjugated: object


def instance_pool(field, dmax, seed, count, dmin=0, attempts=DEFAULT_ATTEMPTS):
    """``count`` Leonard systems with d cycling through ``dmin..dmax``, plus conjugated copies.

    Instance k draws from its own stream seeded ``f"{seed}/{k}"``, so the pool
    is independent of evaluation order.  Exhausted budgets are skipped.
    """
    out = []
    span = dmax - dmin + 1
    if span <= 0:
        raise ValueError("dmax must be at least dmin")
    for k in range(count):
        d = dmin + k % span
        stream = f"{seed}/{k}"
        arr = random_parameter_array(field, d, stream, attempts)
        if arr is None:
            continue
        S = leonard_from_parameter_array(arr)
        P = random_invertible(field, S.n, random.Random(stream + "/P"))
        out.append(PoolItem(k, arr, S, P, conjugate(S, P)))
    return out
