"""Run every invariant of the library over a generated pool of Leonard systems."""

from __future__ import annotations

import random

from . import algebraid
from .construct import instance_pool, leonard_from_parameter_array, split_form_matrices
from .errors import NoIntertwiner, NotRealizable, TDError
from .invariants import (AntiAutomorphism, bilinear_form, form_solution_space, intertwiner,
                         isomorphic_pairs, isomorphic_systems, sharpness_report)
from .linalg import Matrix
from .split import parameter_array, split_decomposition, split_identity_failures, \
    split_sequence, split_sequence_projected
from .tdcore import idempotent_identity_failures, verify_td_system

RANDOM_PRODUCTS = 100
SPAN_IDENTITY_MAX_D = 3


class Failure(Exception):
    pass


def _expect(cond, message):
    if not cond:
        raise Failure(message)


def check_axioms(item, ctx):
    S = item.system
    bad = idempotent_identity_failures(S)
    _expect(not bad, "; ".join(bad))
    _expect(S.irreducibility.irreducible and S.irreducibility.certified,
            "irreducibility not certified")
    _expect(set(S.rho) == {1}, f"shape {list(S.rho)} is not all ones")


def check_vanishing(item, ctx):
    rep = algebraid.check_trid_vanishing(item.system)
    _expect(rep.passed, str(rep.detail))


def check_span_identities(item, ctx):
    if item.system.d > SPAN_IDENTITY_MAX_D:
        return "skipped"
    rep = algebraid.check_all_span_identities(item.system)
    _expect(rep.passed, str(rep.detail))


def check_corner(item, ctx):
    rep = algebraid.check_e0Te0(item.system, max(2 * item.system.d, 1))
    _expect(rep.passed, str(rep.detail))


def check_split(item, ctx):
    S = item.system
    U = split_decomposition(S)
    bad = split_identity_failures(S, U)
    _expect(not bad, "; ".join(bad))
    _expect(U.dims == list(S.rho), "dim U_i differs from rho_i")
    z = split_sequence(S, U)
    _expect(z[0] == 1, "zeta_0 is not 1")
    _expect(z == split_sequence_projected(S), "the two split sequence computations disagree")


def check_round_trip(item, ctx):
    S, arr = item.system, item.array
    _expect(parameter_array(S) == arr, "parameter array does not round-trip")
    A, Astar = split_form_matrices(arr)
    _expect(S.A == A and S.Astar == Astar, "constructed matrices are not in split form")
    f = S.field
    prod = 1
    for i, z in enumerate(split_sequence(S)):
        if i:
            prod = f.reduce(prod * Astar.rows[i - 1][i])
        _expect(z == prod, f"zeta_{i} is not phi_1...phi_{i}")


def check_conjugate(item, ctx):
    S, T = item.system, item.conjugated
    _expect(parameter_array(T) == item.array, "conjugation changed the parameter array")
    _expect(isomorphic_systems(S, T).isomorphic, "a conjugate compares non-isomorphic")
    _expect(isomorphic_pairs(S, T).isomorphic, "a conjugate pair compares non-isomorphic")
    gamma = intertwiner(S, T).gamma
    _expect(gamma == item.conjugator.normalized(), "intertwiner does not recover P")


def _perturbations(arr):
    """One array per slot i >= 1, with zeta_i moved to the next nonzero value."""
    f = arr.field
    for i in range(arr.d, 0, -1):
        z = f.reduce(arr.zetas[i] + 1)
        if z == 0:
            z = f.reduce(z + 1)
        yield arr.with_zeta(i, z)


def check_perturbed(item, ctx):
    S, arr = item.system, item.array
    if arr.d == 0:
        return "skipped"
    realized = 0
    for q in _perturbations(arr):
        _expect(q != arr, "perturbed array equals the original")
        try:
            S2 = leonard_from_parameter_array(q)
        except NotRealizable:
            continue
        realized += 1
        _expect(not isomorphic_systems(S, S2).isomorphic, "perturbed array compares isomorphic")
        try:
            intertwiner(S, S2)
        except NoIntertwiner:
            pass
        else:
            raise Failure("an intertwiner exists for a perturbed array")
    ctx["perturbed_realizable"] = ctx.get("perturbed_realizable", 0) + realized


def check_form(item, ctx):
    S = item.system
    sols = form_solution_space(S.A, S.Astar)
    _expect(len(sols) == 1, f"form solution space has dimension {len(sols)}")
    G = bilinear_form(S).gram
    _expect(G.is_symmetric() and G.is_invertible(), "Gram matrix not symmetric invertible")
    _expect(G @ S.A == S.A.T @ G and G @ S.Astar == S.Astar.T @ G, "form is not invariant")


def check_dagger(item, ctx):
    S = item.system
    dag = AntiAutomorphism(S)
    _expect(dag(S.A) == S.A and dag(S.Astar) == S.Astar, "dagger does not fix A and A*")
    rng = random.Random(f"{ctx['seed']}/{item.index}/dagger")
    for _ in range(RANDOM_PRODUCTS):
        X = Matrix.random(S.field, S.n, S.n, rng)
        Y = Matrix.random(S.field, S.n, S.n, rng)
        _expect(dag(dag(X)) == X, "dagger is not an involution")
        _expect(dag(X @ Y) == dag(Y) @ dag(X), "dagger does not reverse products")


def check_sharp(item, ctx):
    S = item.system
    rep = sharpness_report(S)
    _expect(S.is_sharp and rep["sharp"] and rep["rho0"] == 1, "instance is not sharp")
    _expect("not algebraically closed" in rep.get("note", ""), "scope note missing")


def check_reverify(item, ctx):
    S = item.system
    T = verify_td_system(S.A, S.Astar)
    _expect(set(T.orderings) == set(S.orderings), "re-verification found other orderings")


INVARIANTS = [
    ("axioms and idempotent identities", check_axioms),
    ("tridiagonal vanishing", check_vanishing),
    ("span identity for all r, s", check_span_identities),
    ("corner algebra commutativity", check_corner),
    ("split decomposition and sequence", check_split),
    ("parameter array round trip", check_round_trip),
    ("conjugation and intertwiner", check_conjugate),
    ("perturbed arrays are non-isomorphic", check_perturbed),
    ("invariant bilinear form", check_form),
    ("anti-automorphism", check_dagger),
    ("sharpness", check_sharp),
    ("re-verification", check_reverify),
]


def run_selftest(field, dmax, seed, count, dmin=0, invariants=None):
    """Generate a pool and run each invariant on each instance; returns a JSON-ready report."""
    pool = instance_pool(field, dmax, seed, count, dmin)
    names = [n for n, _ in INVARIANTS] if invariants is None else invariants
    table = dict(INVARIANTS)
    stats = {n: {"passed": 0, "failed": 0, "skipped": 0} for n in names}
    failures = []
    ctx = {"seed": seed}
    for item in pool:
        for name in names:
            try:
                out = table[name](item, ctx)
            except Exception as exc:
                # any exception, including a library bug, counts against the invariant
                stats[name]["failed"] += 1
                detail = str(exc) if isinstance(exc, (Failure, TDError)) else repr(exc)
                failures.append({"instance": item.index, "d": item.array.d,
                                 "invariant": name, "detail": detail})
                continue
            stats[name]["skipped" if out == "skipped" else "passed"] += 1
    return {"field": field.to_json(), "dmax": dmax, "seed": seed, "requested": count,
            "generated": len(pool), "exhausted": count - len(pool),
            "ds": [item.array.d for item in pool],
            "perturbed_realizable": ctx.get("perturbed_realizable", 0),
            "invariants": stats, "failures": failures,
            "passed": not failures and len(pool) == count}
