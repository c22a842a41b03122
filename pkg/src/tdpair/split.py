"""Split decomposition, split sequence and parameter array of a system."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CrossCheckFailed, InternalInvariantViolation, NotSharp
from .linalg import Subspace, sum_of
from .tdcore import shape_of


@dataclass(frozen=True)
class SplitDecomposition:
    spaces: tuple

    @property
    def dims(self):
        return [U.dim for U in self.spaces]

    def to_json(self):
        return {"dims": self.dims, "spaces": [U.to_json() for U in self.spaces]}


@dataclass(frozen=True)
class ParameterArray:
    """``(thetas; theta_stars; zetas)`` over one field."""

    field: object
    thetas: tuple
    theta_stars: tuple
    zetas: tuple

    def __post_init__(self):
        for name in ("thetas", "theta_stars", "zetas"):
            object.__setattr__(self, name, tuple(self.field(x) for x in getattr(self, name)))
        d1 = len(self.thetas)
        if d1 == 0 or len(self.theta_stars) != d1 or len(self.zetas) != d1:
            raise ValueError("thetas, theta_stars and zetas need equal positive length")
        if len(set(self.thetas)) != d1 or len(set(self.theta_stars)) != d1:
            raise ValueError("eigenvalues in a parameter array must be mutually distinct")
        if self.zetas[0] != 1:
            raise ValueError("a split sequence starts with zeta_0 = 1")

    @property
    def d(self):
        return len(self.thetas) - 1

    def with_zeta(self, i, value):
        zetas = list(self.zetas)
        zetas[i] = self.field(value)
        return ParameterArray(self.field, self.thetas, self.theta_stars, zetas)

    def to_json(self):
        fmt = self.field.format
        return {"thetas": [fmt(x) for x in self.thetas],
                "theta_stars": [fmt(x) for x in self.theta_stars],
                "zetas": [fmt(x) for x in self.zetas]}

    @classmethod
    def from_json(cls, obj, field):
        return cls(field, obj["thetas"], obj["theta_stars"], obj["zetas"])


def split_decomposition(S):
    """``U_i = (E*_0V + ... + E*_iV) ∩ (E_iV + ... + E_dV)`` with its identities checked."""
    field, n, d = S.field, S.n, S.d
    V = [e.eigenspace for e in S.eigen]
    Vs = [e.eigenspace for e in S.eigenstar]
    prefix, acc = [], Subspace.zero(field, n)
    for W in Vs:
        acc = acc + W
        prefix.append(acc)
    suffix, acc = [None] * (d + 1), Subspace.zero(field, n)
    for i in range(d, -1, -1):
        acc = acc + V[i]
        suffix[i] = acc
    U = SplitDecomposition(tuple(prefix[i] & suffix[i] for i in range(d + 1)))
    failures = split_identity_failures(S, U)
    if failures:
        raise InternalInvariantViolation("split decomposition: " + "; ".join(failures))
    return U


def split_identity_failures(S, U):
    """Names of the split-decomposition identities failing for ``U`` (empty if all hold)."""
    field, n, d = S.field, S.n, S.d
    spaces = U.spaces
    V = [e.eigenspace for e in S.eigen]
    Vs = [e.eigenspace for e in S.eigenstar]
    out = []
    if sum(W.dim for W in spaces) != n or sum_of(field, n, spaces).dim != n:
        out.append("V is the direct sum of the U_i")
    for i in range(d + 1):
        if sum_of(field, n, spaces[:i + 1]) != sum_of(field, n, Vs[:i + 1]):
            out.append(f"U_0 + ... + U_{i} = E*_0V + ... + E*_{i}V")
        if sum_of(field, n, spaces[i:]) != sum_of(field, n, V[i:]):
            out.append(f"U_{i} + ... + U_d = E_{i}V + ... + E_dV")
        up = spaces[i + 1] if i < d else Subspace.zero(field, n)
        down = spaces[i - 1] if i > 0 else Subspace.zero(field, n)
        if not up.contains_subspace(spaces[i].image(S.A.shift(S.thetas[i]))):
            out.append(f"(A - th_{i} I) U_{i} in U_{i + 1}")
        if not down.contains_subspace(spaces[i].image(S.Astar.shift(S.theta_stars[i]))):
            out.append(f"(A* - th*_{i} I) U_{i} in U_{i - 1}")
    rho = shape_of(S).rho
    if tuple(W.dim for W in spaces) != rho:
        out.append("dim U_i = rho_i")
    return out


def _scalar_on_line(field, u, piv, w):
    """``c`` with ``w = c u`` for a normalized basis vector ``u`` of a line."""
    c = w[piv]
    if [field.reduce(c * x) for x in u] != list(w):
        raise InternalInvariantViolation("operator does not preserve the line U_0")
    return c


def _require_sharp(S):
    if not S.is_sharp:
        raise NotSharp(f"dim E*_0 V = {S.eigenstar[0].eigenspace.dim}, so the system is not sharp")


def split_sequence(S, U=None):
    """``zeta_i``: the scalar by which ``(A*-th*_1)...(A*-th*_i)(A-th_{i-1})...(A-th_0)`` acts on U_0.

    Each value is cross-checked against the projected form
    ``E*_0 (A-th_{i-1})...(A-th_0) E*_0 = zeta_i / prod_j (th*_0 - th*_j)`` on E*_0V.
    """
    _require_sharp(S)
    U = split_decomposition(S) if U is None else U
    field = S.field
    U0 = U.spaces[0]
    if U0.dim != 1:
        raise InternalInvariantViolation("U_0 must equal E*_0 V")
    u, piv = list(U0.basis[0]), U0.pivots[0]
    th, ths = S.thetas, S.theta_stars
    zetas = []
    raised = u
    for i in range(S.d + 1):
        if i > 0:
            raised = S.A.shift(th[i - 1]).apply(raised)
        w = raised
        for j in range(i, 0, -1):
            w = S.Astar.shift(ths[j]).apply(w)
        zetas.append(_scalar_on_line(field, u, piv, w))
    if zetas[0] != 1:
        raise InternalInvariantViolation("zeta_0 must be 1")
    projected = split_sequence_projected(S)
    if projected != zetas:
        raise CrossCheckFailed(
            f"split sequence {[field.format(z) for z in zetas]} disagrees with the "
            f"projected computation {[field.format(z) for z in projected]}")
    return zetas


def split_sequence_projected(S):
    """Split sequence read off ``E*_0 (A-th_{i-1})...(A-th_0) E*_0`` on ``E*_0 V``."""
    _require_sharp(S)
    field = S.field
    Es0 = S.eigenstar[0]
    line = Es0.eigenspace
    u, piv = list(line.basis[0]), line.pivots[0]
    th, ths = S.thetas, S.theta_stars
    out = []
    raised = u
    scale = 1
    for i in range(S.d + 1):
        if i > 0:
            raised = S.A.shift(th[i - 1]).apply(raised)
            scale = field.reduce(scale * (ths[0] - ths[i]))
        lam = _scalar_on_line(field, u, piv, Es0.idempotent.apply(raised))
        out.append(field.reduce(lam * scale))
    return out


def parameter_array(S):
    return ParameterArray(S.field, S.thetas, S.theta_stars, split_sequence(S))
