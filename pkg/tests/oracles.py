"""Independent reference computations used to check the library.

Nothing here imports the library's linear algebra: matrices are plain
lists of ints reduced mod p, or of Fractions.
"""

import itertools
from fractions import Fraction


def egcd_inverse(a, p):
    """Inverse of a mod p by the extended Euclidean algorithm."""
    r0, r1, s0, s1 = a % p, p, 1, 0
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    assert r0 == 1
    return s0 % p


def rank_mod_p(rows, p):
    """Rank by plain Gaussian elimination over GF(p)."""
    m = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = egcd_inverse(m[rank][c], p)
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] * inv
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def rank_q(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def matmul(X, Y, p=None):
    out = [[sum(a * b for a, b in zip(r, c)) for c in zip(*Y)] for r in X]
    return out if p is None else [[x % p for x in r] for r in out]


def matvec(X, v, p):
    return [sum(a * b for a, b in zip(r, v)) % p for r in X]


def all_subspaces(n, p):
    """Every subspace of GF(p)^n as ``(vectors, generators)``: all its elements and a spanning list."""
    vectors = list(itertools.product(range(p), repeat=n))
    zero = frozenset([tuple([0] * n)])
    found = {zero: ()}
    frontier = [zero]
    # every subspace is reached by adding one generator at a time
    for _ in range(n):
        nxt = []
        for W in frontier:
            gens = found[W]
            for v in vectors:
                if v in W:
                    continue
                span = frozenset(tuple((a + c * b) % p for a, b in zip(w, v))
                                 for w in W for c in range(p))
                if span not in found:
                    found[span] = gens + (v,)
                    nxt.append(span)
        frontier = nxt
    return [(W, g) for W, g in found.items()]


def invariant_subspaces(A, B, p, subspaces):
    """Proper nonzero subspaces (from ``all_subspaces``) mapped into themselves by A and B."""
    n = len(A)
    out = []
    for W, gens in subspaces:
        if not gens or len(W) == p ** n:
            continue
        if all(tuple(matvec(M, list(g), p)) in W for M in (A, B) for g in gens):
            out.append(W)
    return out


def brute_force_orderings(idempotents, X, is_zero, mul):
    """Every permutation s with ``E_s(a) X E_s(b) = 0`` whenever ``|a - b| > 1``."""
    k = len(idempotents)
    blocks = {(i, j): is_zero(mul(mul(idempotents[i], X), idempotents[j]))
              for i in range(k) for j in range(k)}
    return [perm for perm in itertools.permutations(range(k))
            if all(blocks[perm[a], perm[b]] for a in range(k) for b in range(k)
                   if abs(a - b) > 1)]


def det_q(M):
    """Determinant over Q by cofactor expansion (small matrices only)."""
    n = len(M)
    if n == 1:
        return Fraction(M[0][0])
    return sum((-1) ** j * Fraction(M[0][j]) * det_q([r[:j] + r[j + 1:] for r in M[1:]])
               for j in range(n))
