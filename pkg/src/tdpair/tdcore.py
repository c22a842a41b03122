"""Recognizing tridiagonal pairs and assembling tridiagonal systems.

``verify_td_system`` runs the four axioms in order (diagonalizability,
the two tridiagonality conditions, irreducibility) and returns a
``TDSystem`` carrying eigenvalues, eigenspaces and primitive idempotents of
both maps.  Every failure is raised as an exception naming the failed axiom.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import (DimensionMismatch, FieldMismatch, InternalInvariantViolation,
                     NoEigenvalueInField, NoTridiagonalOrdering, NotDiagonalizable,
                     NotDiagonalizableOverField, Reducible, TheoremViolation,
                     VerificationFailed)
from .linalg import (EchelonBasis, Matrix, Subspace, char_poly, kernel_basis,
                     irreducible_factors, roots_in_field)

# Largest number of projective points of a kernel that Norton's test will enumerate.
PROJECTIVE_POINT_LIMIT = 20000


@dataclass(frozen=True)
class EigenData:
    eigenvalue: object
    eigenspace: Subspace
    idempotent: Matrix

    def check(self, others=()):
        """Raise ``VerificationFailed`` unless the idempotent matches the eigenspace."""
        E = self.idempotent
        if E @ E != E:
            raise VerificationFailed(f"E for eigenvalue {self.eigenvalue} is not idempotent")
        if E.rank() != self.eigenspace.dim:
            raise VerificationFailed("rank of E differs from the eigenspace dimension")
        for b in self.eigenspace.basis:
            if E.apply(b) != list(b):
                raise VerificationFailed("E does not fix its eigenspace")
        for other in others:
            for b in other.basis:
                if any(E.apply(b)):
                    raise VerificationFailed("E does not annihilate another eigenspace")


def eigendecompose(M, require_diagonalizable=True):
    """Eigenvalues of ``M`` lying in its field, each with its eigenspace.

    Eigenvalues come sorted in the field's canonical order.  With
    ``require_diagonalizable`` (the default) a characteristic polynomial
    that does not split, or an eigenspace of deficient dimension, raises.
    """
    if not M.is_square:
        raise DimensionMismatch("eigendecomposition needs a square matrix")
    roots, splits = roots_in_field(char_poly(M))
    pairs = [(theta, kernel_basis(M.shift(theta))) for theta, _ in roots]
    if require_diagonalizable:
        if not splits:
            raise NotDiagonalizableOverField(
                f"the characteristic polynomial does not split over {M.field}; "
                "its eigenvalues are not all in the field (supply a larger field)")
        mults = dict((th, m) for th, m in roots)
        short = [(th, sp.dim, mults[th]) for th, sp in pairs if sp.dim < mults[th]]
        if short:
            th, g, a = short[0]
            raise NotDiagonalizable(
                f"eigenvalue {M.field.format(th)} has a {g}-dimensional eigenspace "
                f"but multiplicity {a}")
    return pairs


def is_diagonalizable(M):
    try:
        eigendecompose(M)
    except (NotDiagonalizable, NotDiagonalizableOverField):
        return False
    return True


def primitive_idempotents(M, eigs):
    """``E_i = prod_{j != i} (M - th_j I) / (th_i - th_j)`` with the identities checked.

    Checks ``sum E_i = I``, ``E_i E_j = delta_ij E_i`` and ``M = sum th_i E_i``
    before returning; a failure means ``eigs`` was not the complete list of
    eigenvalues of a diagonalizable matrix.
    """
    field, n = M.field, M.nrows
    eigs = list(eigs)
    if len(set(eigs)) != len(eigs):
        raise VerificationFailed("eigenvalues must be mutually distinct")
    shifted = [M.shift(th) for th in eigs]
    out = []
    for i, th in enumerate(eigs):
        E = Matrix.identity(field, n)
        for j, other in enumerate(eigs):
            if j != i:
                E = (E @ shifted[j]).scale(field.inv(field.reduce(th - other)))
        out.append(E)
    total = Matrix.zeros(field, n)
    recon = Matrix.zeros(field, n)
    for th, E in zip(eigs, out):
        total = total + E
        recon = recon + E.scale(th)
    if total != Matrix.identity(field, n):
        raise VerificationFailed("primitive idempotents do not sum to the identity")
    if recon != M:
        raise VerificationFailed("M differs from sum th_i E_i")
    for i, Ei in enumerate(out):
        for j, Ej in enumerate(out):
            prod = Ei @ Ej
            if (i == j and prod != Ei) or (i != j and not prod.is_zero()):
                raise VerificationFailed(f"E_{i} E_{j} != delta E_{i}")
    return out


def eigen_data(M):
    pairs = eigendecompose(M)
    idems = primitive_idempotents(M, [th for th, _ in pairs])
    data = [EigenData(th, sp, E) for (th, sp), E in zip(pairs, idems)]
    for k, ed in enumerate(data):
        ed.check([o.eigenspace for j, o in enumerate(data) if j != k])
    return data


def action_graph(idempotents, X):
    """Adjacency sets: ``i ~ j`` iff ``E_i X E_j != 0`` or ``E_j X E_i != 0``."""
    m = len(idempotents)
    XE = [X @ E for E in idempotents]
    adj = [set() for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i != j and not (idempotents[i] @ XE[j]).is_zero():
                adj[i].add(j)
                adj[j].add(i)
    return adj


def _components(adj):
    seen, comps = set(), []
    for s in range(len(adj)):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _as_path(adj, comp):
    """Vertex sequence of ``comp`` if it induces a path, else ``None``."""
    if len(comp) == 1:
        return comp
    edges = sum(len(adj[v]) for v in comp) // 2
    if edges != len(comp) - 1 or any(len(adj[v]) > 2 for v in comp):
        return None
    start = min(v for v in comp if len(adj[v]) == 1)
    path, prev = [start], None
    while len(path) < len(comp):
        nxt = [w for w in adj[path[-1]] if w != prev]
        prev = path[-1]
        path.append(nxt[0])
    return path


def iter_orderings(adj):
    """Yield every ordering of the vertices in which each edge joins neighbours."""
    paths = []
    for comp in _components(adj):
        path = _as_path(adj, comp)
        if path is None:
            return
        paths.append(path)
    for perm in itertools.permutations(paths):
        choices = [[p] if len(p) == 1 else [p, p[::-1]] for p in perm]
        for pick in itertools.product(*choices):
            yield tuple(v for p in pick for v in p)


def find_standard_orderings(A, Astar, eigs):
    """All standard orderings of the eigenspaces described by ``eigs``.

    ``eigs`` is a list of ``EigenData`` for ``A``; each ordering is a tuple
    of indices into ``eigs``.  An empty list means the tridiagonality
    condition fails for every ordering.
    """
    adj = action_graph([e.idempotent for e in eigs], Astar)
    return sorted(iter_orderings(adj))


def spin(vectors, matrices, n=None):
    """Smallest subspace containing ``vectors`` and closed under ``matrices``."""
    mats = list(matrices)
    field = mats[0].field
    n = mats[0].ncols if n is None else n
    eb = EchelonBasis(field, n)
    queue = []
    for v in vectors:
        r = eb.add(v)
        if r is not None:
            queue.append(r)
    while queue and len(eb) < n:
        v = queue.pop()
        for M in mats:
            r = eb.add(M.apply(v))
            if r is not None:
                queue.append(r)
    return eb.subspace()


def algebra_dimension(matrices):
    """Dimension of the unital algebra generated by ``matrices``."""
    mats = list(matrices)
    field, n = mats[0].field, mats[0].nrows
    eb = EchelonBasis(field, n * n)
    start = Matrix.identity(field, n)
    eb.add(start.vec())
    queue = [start]
    while queue and len(eb) < n * n:
        X = queue.pop()
        for M in mats:
            Y = M @ X
            if eb.add(Y.vec()) is not None:
                queue.append(Y)
    return len(eb)


@dataclass(frozen=True)
class IrreducibilityVerdict:
    irreducible: bool
    witness: Subspace | None = None
    method: str = ""
    certified: bool = True

    def to_json(self):
        return {"irreducible": self.irreducible,
                "witness": None if self.witness is None else self.witness.to_json(),
                "method": self.method, "certified": self.certified}


def _singular_elements(A, Astar):
    """A singular element ``z`` of the algebra, as ``(nullity, degree, label, z)``.

    ``z`` is ``X - th I`` for an eigenvalue th of a short word X, or ``g(X)``
    for an irreducible factor g of the characteristic polynomial of A or A*
    (degree = deg g).  When nullity equals degree a single kernel vector
    decides Norton's test, so such a ``z`` is returned as soon as it is seen;
    otherwise the smallest nullity wins.
    """
    n = A.nrows
    gens = [("A", A), ("A*", Astar)]
    extra = [("A+A*", A + Astar), ("A A*", A @ Astar), ("A* A", Astar @ A),
             ("A+2A*", A + Astar.scale(2)), ("A A* - A* A", A @ Astar - Astar @ A)]
    best = None
    for stage in (gens, extra):
        for label, X in stage:
            roots, _ = roots_in_field(char_poly(X))
            for th, _ in roots:
                z = X.shift(th)
                nullity = n - z.rank()
                if best is None or nullity < best[0]:
                    best = (nullity, 1, f"{label} - ({X.field.format(th)})I", z)
                if nullity == 1:
                    return best
        if best is not None:
            break
    for label, X in gens:
        for g in irreducible_factors(char_poly(X)):
            if g.degree == 1:
                continue
            z = g.eval_matrix(X)
            nullity = n - z.rank()
            cand = (nullity, g.degree, f"g({label}) with g = {g.to_json()}", z)
            if nullity == g.degree:
                return cand
            if best is None or nullity < best[0]:
                best = cand
    return best


def _trial_vectors(K, single=False):
    """Vectors of ``K`` to spin and whether trying them decides Norton's test.

    ``single``: every nonzero vector of K spins to the same subspace, so one suffices.
    """
    field, k = K.field, K.dim
    if k == 1 or single:
        return [list(K.basis[0])], True
    if field.is_finite and (field.p ** k - 1) // (field.p - 1) <= PROJECTIVE_POINT_LIMIT:
        return list(_projective_points(K)), True
    vecs = [list(b) for b in K.basis]
    red = field.reduce
    for a, b in itertools.combinations(K.basis, 2):
        vecs.append([red(x + y) for x, y in zip(a, b)])
    return vecs, False


def _projective_points(K):
    """One representative of every line in ``K`` (first nonzero coefficient 1)."""
    field, p = K.field, K.field.p
    basis = K.basis
    k = len(basis)
    for lead in range(k):
        for tail in itertools.product(range(p), repeat=k - lead - 1):
            coeffs = [0] * lead + [1] + list(tail)
            yield [sum(c * b[t] for c, b in zip(coeffs, basis)) % p
                   for t in range(K.ambient_dim)]


def is_irreducible(A, Astar):
    """Decide whether ``A`` and ``A*`` share a proper nonzero invariant subspace.

    Norton's criterion: for a singular element ``z`` of the algebra they
    generate, the module is irreducible iff every nonzero vector of
    ``ker z`` spins to the whole space and every nonzero vector of
    ``ker z^T`` spins to the whole dual space.  ``z`` is taken as
    ``X - th I`` for X among A, A* and a few other words, or as ``g(X)``
    for an irreducible factor g of the characteristic polynomial of A or
    A*, preferring the smallest nullity.  When the nullity equals deg g
    the kernel is one line over the extension K[t]/g and a single vector
    decides; over GF(p) the kernel's lines can also be enumerated.  In
    those cases the verdict is a proof.  Otherwise a reducible verdict is
    still proven by its witness, and an irreducible verdict is proven
    only when the generated algebra is all of End(V).
    """
    if A.shape != Astar.shape or not A.is_square:
        raise DimensionMismatch("A and A* must be square of the same size")
    if A.field != Astar.field:
        raise FieldMismatch("A and A* must share a field")
    field, n = A.field, A.nrows
    if n == 1:
        return IrreducibilityVerdict(True, None, "dimension one", True)
    cand = _singular_elements(A, Astar)
    if cand is None:
        raise NoEigenvalueInField(
            f"neither A nor A* (nor the trial words) has an eigenvalue in {field}")
    nullity, degree, label, z = cand
    single = nullity == degree
    gens = (A, Astar)
    vecs, certified = _trial_vectors(kernel_basis(z), single)
    for v in vecs:
        W = spin([v], gens, n)
        if W.dim < n:
            return _reducible(W, gens, f"spin of a vector in ker({label})")
    gens_t = (A.transpose(), Astar.transpose())
    vecs_t, certified_t = _trial_vectors(kernel_basis(z.transpose()), single)
    for w in vecs_t:
        S = spin([w], gens_t, n)
        if S.dim < n:
            return _reducible(S.annihilator(), gens,
                              f"annihilator of the spin of a vector in ker({label})^T")
    method = f"Norton test with z = {label}"
    if certified and certified_t:
        return IrreducibilityVerdict(True, None, method, True)
    if algebra_dimension(gens) == n * n:
        return IrreducibilityVerdict(True, None, method + " and Burnside", True)
    return IrreducibilityVerdict(True, None, method + " (basis vectors only)", False)


def _reducible(W, gens, method):
    if W.is_zero() or W.is_full() or not all(W.is_invariant(M) for M in gens):
        raise InternalInvariantViolation("spun witness is not a proper invariant subspace")
    return IrreducibilityVerdict(False, W, method, True)


@dataclass(frozen=True)
class Shape:
    rho: tuple
    is_sharp: bool

    @property
    def d(self):
        return len(self.rho) - 1


@dataclass(frozen=True)
class TDSystem:
    """A tridiagonal pair together with standard orderings of both idempotent families."""

    field: object
    A: Matrix
    Astar: Matrix
    eigen: tuple
    eigenstar: tuple
    orderings: tuple = ()
    star_orderings: tuple = ()
    irreducibility: IrreducibilityVerdict = dc_field(
        default_factory=lambda: IrreducibilityVerdict(True))

    @property
    def n(self):
        return self.A.nrows

    @property
    def d(self):
        return len(self.eigen) - 1

    @property
    def thetas(self):
        return tuple(e.eigenvalue for e in self.eigen)

    @property
    def theta_stars(self):
        return tuple(e.eigenvalue for e in self.eigenstar)

    @property
    def E(self):
        return [e.idempotent for e in self.eigen]

    @property
    def Estar(self):
        return [e.idempotent for e in self.eigenstar]

    @property
    def rho(self):
        return tuple(e.eigenspace.dim for e in self.eigen)

    @property
    def is_sharp(self):
        return self.eigenstar[0].eigenspace.dim == 1

    def reordered(self, thetas=None, theta_stars=None):
        """The same pair with other standard orderings, given as eigenvalue sequences."""
        eigen, eigenstar = self.eigen, self.eigenstar
        if thetas is not None:
            eigen = self._pick(self.eigen, self.orderings, thetas, "A")
        if theta_stars is not None:
            eigenstar = self._pick(self.eigenstar, self.star_orderings, theta_stars, "A*")
        return TDSystem(self.field, self.A, self.Astar, eigen, eigenstar,
                        self.orderings, self.star_orderings, self.irreducibility)

    def _pick(self, current, orderings, values, which):
        values = tuple(self.field(v) for v in values)
        if values not in orderings:
            raise NoTridiagonalOrdering(
                which, f"{[self.field.format(v) for v in values]} is not a standard "
                       f"ordering of the eigenvalues of {which}")
        lookup = {e.eigenvalue: e for e in current}
        return tuple(lookup[v] for v in values)

    def variants(self):
        """Every system on this pair: both A-orderings times both A*-orderings."""
        return [self.reordered(o, s) for o in self.orderings for s in self.star_orderings]

    def summary(self):
        fmt = self.field.format
        return {"d": self.d, "n": self.n, "shape": list(self.rho),
                "sharp": self.is_sharp,
                "thetas": [fmt(x) for x in self.thetas],
                "theta_stars": [fmt(x) for x in self.theta_stars],
                "orderings": {"A": [[fmt(x) for x in o] for o in self.orderings],
                              "Astar": [[fmt(x) for x in o] for o in self.star_orderings]}}


def _order_key(field, seq):
    return tuple(field.key(x) for x in seq)


def verify_td_system(A, Astar):
    """Check the tridiagonal pair axioms and return the canonical ``TDSystem``.

    Among the standard orderings of each map the one whose eigenvalue
    sequence is lexicographically least is chosen; all standard orderings
    are recorded in ``orderings`` / ``star_orderings``.
    """
    if A.field != Astar.field:
        raise FieldMismatch("A and A* must share a field")
    if not A.is_square or A.shape != Astar.shape:
        raise DimensionMismatch("A and A* must be square of the same size")
    field = A.field
    try:
        eig = eigen_data(A)
    except (NotDiagonalizable, NotDiagonalizableOverField) as exc:
        exc.args = (f"A: {exc}",)
        raise
    try:
        eigs = eigen_data(Astar)
    except (NotDiagonalizable, NotDiagonalizableOverField) as exc:
        exc.args = (f"A*: {exc}",)
        raise
    adj = action_graph([e.idempotent for e in eig], Astar)
    adj_s = action_graph([e.idempotent for e in eigs], A)
    if next(iter_orderings(adj), None) is None:
        raise NoTridiagonalOrdering("A")
    if next(iter_orderings(adj_s), None) is None:
        raise NoTridiagonalOrdering("A*")
    verdict = is_irreducible(A, Astar)
    if not verdict.irreducible:
        raise Reducible(verdict.witness)
    orders = sorted(iter_orderings(adj))
    orders_s = sorted(iter_orderings(adj_s))
    if len(eig) != len(eigs):
        raise TheoremViolation(
            f"A has {len(eig)} eigenspaces but A* has {len(eigs)}",
            "the diameters d and delta of a tridiagonal pair are equal")
    if len(eig) > 1 and (len(orders) != 2 or len(orders_s) != 2):
        raise TheoremViolation(
            "an irreducible pair must have exactly two standard orderings per map",
            "a standard ordering is unique up to reversal")
    seqs = sorted((tuple(eig[i].eigenvalue for i in o) for o in orders),
                  key=lambda s: _order_key(field, s))
    seqs_s = sorted((tuple(eigs[i].eigenvalue for i in o) for o in orders_s),
                    key=lambda s: _order_key(field, s))
    lookup = {e.eigenvalue: e for e in eig}
    lookup_s = {e.eigenvalue: e for e in eigs}
    system = TDSystem(field, A, Astar,
                      tuple(lookup[v] for v in seqs[0]),
                      tuple(lookup_s[v] for v in seqs_s[0]),
                      tuple(seqs), tuple(seqs_s), verdict)
    dims = [e.eigenspace.dim for e in system.eigen]
    dims_s = [e.eigenspace.dim for e in system.eigenstar]
    if dims != dims_s:
        raise TheoremViolation(
            f"dim E_i V = {dims} but dim E*_i V = {dims_s}",
            "the spaces E_i V and E*_i V have the same dimension")
    if system.d == 0 and system.n != 1:
        raise InternalInvariantViolation("an irreducible pair with d = 0 must have n = 1")
    return system


def shape_of(S):
    """The shape ``rho_i = dim E_i V``, with symmetry and unimodality asserted."""
    rho = S.rho
    d = len(rho) - 1
    if any(rho[i] != rho[d - i] for i in range(d + 1)):
        raise InternalInvariantViolation(f"shape {rho} is not symmetric")
    if any(rho[i - 1] > rho[i] for i in range(1, d // 2 + 1)):
        raise InternalInvariantViolation(f"shape {rho} is not unimodal")
    return Shape(rho, rho[0] == 1)


def idempotent_identity_failures(S):
    """Names of the primitive-idempotent identities that fail on ``S`` (empty if all hold)."""
    failures = []
    field, n = S.field, S.n
    I = Matrix.identity(field, n)
    for label, M, eigen in (("", S.A, S.eigen), ("*", S.Astar, S.eigenstar)):
        idems = [e.idempotent for e in eigen]
        total = Matrix.zeros(field, n)
        recon = Matrix.zeros(field, n)
        prod = I
        for e in eigen:
            total = total + e.idempotent
            recon = recon + e.idempotent.scale(e.eigenvalue)
            prod = prod @ M.shift(e.eigenvalue)
        if total != I:
            failures.append(f"sum E{label}_i = I")
        if recon != M:
            failures.append(f"A{label} = sum th{label}_i E{label}_i")
        if not prod.is_zero():
            failures.append(f"prod (A{label} - th{label}_i I) = 0")
        for i, Ei in enumerate(idems):
            for j, Ej in enumerate(idems):
                P = Ei @ Ej
                if (i == j and P != Ei) or (i != j and not P.is_zero()):
                    failures.append(f"E{label}_{i} E{label}_{j} = delta E{label}_{i}")
    return failures
