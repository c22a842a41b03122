"""Matrix-level checks of algebra identities satisfied by every tridiagonal system.

All identities are checked on the matrices A, A*, E_i, E*_i themselves:
spans of matrix products are compared as subspaces of K^(n*n).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .linalg import EchelonBasis, Matrix, Subspace


@dataclass
class CheckReport:
    name: str
    passed: bool
    checks: int = 0
    detail: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "checks": self.checks, **self.detail}


def matrix_span(field, n, matrices):
    """Span of n x n matrices as a canonical subspace of vectorized matrices."""
    return Subspace.span(field, n * n, [M.vec() for M in matrices])


def check_trid_vanishing(S):
    """``E*_i A^k E*_j = 0`` and ``E_i A*^k E_j = 0`` whenever ``k < |i - j|``."""
    d = S.d
    checks = 0
    first = None
    for label, idems, X in (("E*_i A^k E*_j", S.Estar, S.A), ("E_i A*^k E_j", S.E, S.Astar)):
        powers = X.powers(d)
        for i in range(d + 1):
            left = [idems[i] @ P for P in powers]
            for j in range(d + 1):
                for k in range(d + 1):
                    checks += 1
                    if k < abs(i - j) and not (left[k] @ idems[j]).is_zero():
                        if first is None:
                            first = {"family": label, "i": i, "j": j, "k": k}
    detail = {} if first is None else {"counterexample": first}
    return CheckReport("tridiagonal vanishing", first is None, checks, detail)


def _words(generators, max_len):
    """Products of at most ``max_len`` generators, pruned to those that enlarge the span.

    Breadth first: a word is kept only if it is independent of the words kept so far, and
    only kept words are extended. Once a whole layer adds nothing the span of all words is
    stable, so the enumeration stops. Every word up to ``max_len`` lies in the span of the
    yielded ones.
    """
    field, n = generators[0].field, generators[0].nrows
    seen = EchelonBasis(field, n * n)
    layer = [Matrix.identity(field, n)]
    seen.add(layer[0].vec())
    yield layer[0]
    for _ in range(max_len):
        nxt = []
        for W in layer:
            for g in generators:
                P = W @ g
                if seen.add(P.vec()) is not None:
                    nxt.append(P)
                    yield P
        if not nxt:
            return
        layer = nxt


def check_e0Te0(S, word_bound=None):
    """Commutativity and generation of the corner ``E*_0 T E*_0`` on words up to a bound.

    Corners are linear in the word, so only a spanning set of words is examined.

    (a) the matrices ``E*_0 A^i E*_0`` commute pairwise;
    (b) every ``E*_0 w E*_0`` for a word w in A, A* of length ≤ word_bound lies
        in the span of products of at most d of the ``E*_0 A^i E*_0``;
    (c) all the ``E*_0 w E*_0`` from (b) commute pairwise.
    A failure of (b) is only inconclusive at this bound.
    """
    field, n, d = S.field, S.n, S.d
    word_bound = max(2 * d, 1) if word_bound is None else word_bound
    if word_bound < 1:
        raise ValueError("word_bound must be at least 1")
    E0 = S.Estar[0]
    gens = [E0 @ P @ E0 for P in S.A.powers(d)]
    commute_checks = 0
    comm_ok = True
    for X, Y in itertools.combinations(gens, 2):
        commute_checks += 1
        if not X.commutes_with(Y):
            comm_ok = False
    # Span of products of at most d generators (at least one factor).
    eb = EchelonBasis(field, n * n)
    layer = []
    for g in gens:
        if eb.add(g.vec()) is not None:
            layer.append(g)
    basis_mats = list(layer)
    for _ in range(max(d, 1) - 1):
        nxt = []
        for W in layer:
            for g in gens:
                P = W @ g
                if eb.add(P.vec()) is not None:
                    nxt.append(P)
        if not nxt:
            break
        basis_mats.extend(nxt)
        layer = nxt
    gen_checks = 0
    missing = None
    corner = EchelonBasis(field, n * n)
    corner_mats = []
    for w in _words([S.A, S.Astar], word_bound):
        gen_checks += 1
        C = E0 @ w @ E0
        if missing is None and not eb.contains(C.vec()):
            missing = gen_checks
        if corner.add(C.vec()) is not None:
            corner_mats.append(C)
    all_comm = all(X.commutes_with(Y) for X, Y in itertools.combinations(corner_mats, 2))
    detail = {"generators_commute": comm_ok,
              "generation_within_bound": missing is None,
              "corner_commutative": all_comm,
              "word_bound": word_bound,
              "words_checked": gen_checks,
              "corner_dim": len(corner_mats)}
    if missing is not None:
        detail["generation_note"] = "inconclusive at this word bound"
    return CheckReport("corner algebra commutativity", comm_ok and all_comm and missing is None,
                       commute_checks + gen_checks, detail)


def span_identity_sides(S, r, s):
    """Both sides of ``E*_r D D* D E*_s = sum_t E*_r D E*_t D E*_s`` as matrix spans."""
    field, n, d = S.field, S.n, S.d
    if not (0 <= r <= d and 0 <= s <= d):
        raise IndexError(f"indices r={r}, s={s} out of range 0..{d}")
    Ap = S.A.powers(d)
    Asp = S.Astar.powers(d)
    Er, Es = S.Estar[r], S.Estar[s]
    left = [Er @ P for P in Ap]
    right = [P @ Es for P in Ap]
    lhs = EchelonBasis(field, n * n)
    for L in left:
        for Q in Asp:
            LQ = L @ Q
            for R in right:
                lhs.add((LQ @ R).vec())
    rhs = EchelonBasis(field, n * n)
    for t in range((r + s) // 2 + 1):
        Et = S.Estar[t]
        for L in left:
            LE = L @ Et
            for R in right:
                rhs.add((LE @ R).vec())
    return lhs.subspace(), rhs.subspace()


def check_span_identity(S, r, s):
    lhs, rhs = span_identity_sides(S, r, s)
    return CheckReport(f"span identity (r={r}, s={s})", lhs == rhs, 1,
                       {"lhs_dim": lhs.dim, "rhs_dim": rhs.dim})


def check_all_span_identities(S):
    reports = [check_span_identity(S, r, s) for r in range(S.d + 1) for s in range(S.d + 1)]
    bad = [rep.name for rep in reports if not rep.passed]
    return CheckReport("span identity (all r, s)", not bad, len(reports),
                       {"failed": bad} if bad else {})


def check_identities(S, word_bound=None):
    return [check_trid_vanishing(S), check_e0Te0(S, word_bound), check_all_span_identities(S)]
