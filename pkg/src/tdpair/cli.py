"""Command-line front end: JSON in, JSON reports out.

Exit codes: 0 positive verdict, 1 negative verdict (not a system, not
isomorphic, not realizable, a failed check), 2 usage, input or parse error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from . import __version__, algebraid
from .construct import (conjugate, leonard_from_parameter_array, random_invertible,
                        random_parameter_array)
from .errors import NotRealizable, NotSharp, ParseError, TDError
from .invariants import (bilinear_form, intertwiner, isomorphic_pairs, isomorphic_systems,
                         sharpness_report)
from .scalars import Field
from .selftest import run_selftest
from .serialize import (InputError, array_document, array_input, dumps, load, system_document,
                        system_input)
from .split import parameter_array, split_decomposition, split_sequence
from .tdcore import shape_of, verify_td_system

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2

# error classes that describe the input rather than a mathematical verdict
USER_ERRORS = (ParseError, InputError, ValueError)


class UsageError(Exception):
    pass


def _system_from_file(path):
    field, A, Astar, thetas, theta_stars = system_input(load(path))
    S = verify_td_system(A, Astar)
    if thetas is not None or theta_stars is not None:
        S = S.reordered(thetas, theta_stars)
    return S


def _negative(exc):
    out = {"verdict": exc.code, **exc.to_json()}
    out.pop("error", None)
    return out


def cmd_verify(args):
    try:
        S = _system_from_file(args.input)
    except TDError as exc:
        if isinstance(exc, USER_ERRORS):
            raise
        return EXIT_NEGATIVE, _negative(exc)
    out = {"verdict": "td-system", **S.summary(),
           "irreducibility": S.irreducibility.to_json(),
           "sharpness": sharpness_report(S)}
    return EXIT_OK, out


def analysis(S):
    """Everything the library derives from a verified system, as a JSON payload."""
    out = {"verdict": "td-system", **S.summary(), "sharpness": sharpness_report(S)}
    shape_of(S)
    out["split_dims"] = split_decomposition(S).dims
    if S.is_sharp:
        fmt = S.field.format
        out["zetas"] = [fmt(z) for z in split_sequence(S)]
        out["parameter_array"] = parameter_array(S).to_json()
        out["gram"] = bilinear_form(S).gram.entry_strings()
    else:
        out["not_sharp"] = NotSharp(
            "the parameter array is defined only for sharp systems; dim E*_0 V = "
            f"{S.rho[0]}").to_json()
    return out


def cmd_analyze(args):
    try:
        S = _system_from_file(args.input)
    except TDError as exc:
        if isinstance(exc, USER_ERRORS):
            raise
        return EXIT_NEGATIVE, _negative(exc)
    return EXIT_OK, analysis(S)


def _verified(path):
    try:
        return _system_from_file(path)
    except TDError as exc:
        if isinstance(exc, USER_ERRORS):
            raise
        raise UsageError(f"{path} is not a tridiagonal system: {exc}")


def _two_systems(args):
    return [_verified(args.first), _verified(args.second)]


def cmd_iso(args):
    S, S2 = _two_systems(args)
    try:
        if args.mode == "systems":
            verdict = isomorphic_systems(S, S2)
        else:
            verdict = isomorphic_pairs(S, S2)
    except NotSharp as exc:
        raise UsageError(str(exc))
    out = {"verdict": "isomorphic" if verdict.isomorphic else "not-isomorphic",
           "mode": args.mode, **verdict.to_json()}
    if args.certificate and verdict.isomorphic:
        T = S2
        if args.mode == "pairs":
            a = verdict.common[0]
            T = S2.reordered(a.thetas, a.theta_stars)
            S = S.reordered(a.thetas, a.theta_stars)
        out["certificate"] = intertwiner(S, T).to_json()
    return (EXIT_OK if verdict.isomorphic else EXIT_NEGATIVE), out


def cmd_intertwiner(args):
    S, S2 = _two_systems(args)
    try:
        gamma = intertwiner(S, S2)
    except TDError as exc:
        if isinstance(exc, USER_ERRORS):
            raise
        return EXIT_NEGATIVE, _negative(exc)
    return EXIT_OK, {"verdict": "intertwiner", **gamma.to_json()}


def cmd_form(args):
    S = _verified(args.input)
    try:
        form = bilinear_form(S)
    except NotSharp as exc:
        return EXIT_NEGATIVE, _negative(exc)
    return EXIT_OK, {"verdict": "form", **form.to_json()}


def cmd_construct(args):
    arr = array_input(load(args.array))
    try:
        S = leonard_from_parameter_array(arr)
    except NotRealizable as exc:
        return EXIT_NEGATIVE, _negative(exc)
    return EXIT_OK, {"verdict": "realized", "system": system_document(S),
                     "parameter_array": arr.to_json()}


def _prime_field(text):
    f = Field.from_string(text)
    if not f.is_finite:
        raise UsageError("this command needs a prime field, e.g. gf:101")
    return f


def cmd_gen(args):
    field = _prime_field(args.field)
    items = []
    for k in range(args.count):
        seed = f"{args.seed}/{k}"
        arr = random_parameter_array(field, args.d, seed)
        if arr is None:
            items.append({"index": k, "seed": seed, "array": None})
            continue
        S = leonard_from_parameter_array(arr)
        item = {"index": k, "seed": seed, "array": array_document(arr),
                "system": system_document(S)}
        if args.conjugate:
            P = random_invertible(field, S.n, random.Random(f"{seed}/P"))
            item["conjugated"] = system_document(conjugate(S, P))
            item["P"] = P.entry_strings()
        items.append(item)
    missing = sum(1 for it in items if it["array"] is None)
    out = {"verdict": "generated" if not missing else "budget-exhausted",
           "generated": args.count - missing, "instances": items}
    return (EXIT_OK if not missing else EXIT_NEGATIVE), out


def cmd_check_identities(args):
    S = _verified(args.input)
    if args.word_bound is not None and args.word_bound < 1:
        raise UsageError("--word-bound must be at least 1")
    reports = algebraid.check_identities(S, args.word_bound)
    ok = all(r.passed for r in reports)
    return (EXIT_OK if ok else EXIT_NEGATIVE), {
        "verdict": "identities-hold" if ok else "identity-failed",
        "checks": [r.to_json() for r in reports]}


def cmd_selftest(args):
    field = _prime_field(args.field)
    if args.d < 0 or args.count < 0:
        raise UsageError("--d and --count must be nonnegative")
    rep = run_selftest(field, args.d, args.seed, args.count)
    rep["verdict"] = "pass" if rep["passed"] else "fail"
    return (EXIT_OK if rep["passed"] else EXIT_NEGATIVE), rep


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="tdpair", description="Verify, analyze and construct tridiagonal systems.")
    p.add_argument("--version", action="version", version=f"tdpair {__version__}")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--output", "-o", default=argparse.SUPPRESS,
                        help="write the report here instead of stdout")
        return sp

    sp = add("verify", cmd_verify, "check the tridiagonal pair axioms")
    sp.add_argument("input")
    sp = add("analyze", cmd_analyze, "split decomposition, parameter array and form")
    sp.add_argument("input")
    sp = add("iso", cmd_iso, "decide isomorphism of two systems or pairs")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--mode", choices=["systems", "pairs"], default="systems")
    sp.add_argument("--certificate", action="store_true", help="emit the intertwiner")
    sp = add("intertwiner", cmd_intertwiner, "the normalized intertwiner between two systems")
    sp.add_argument("first")
    sp.add_argument("second")
    sp = add("form", cmd_form, "the invariant bilinear form")
    sp.add_argument("input")
    sp = add("construct", cmd_construct, "build the Leonard system of a parameter array")
    sp.add_argument("--array", required=True)
    sp = add("gen", cmd_gen, "generate random Leonard parameter arrays")
    sp.add_argument("--field", default="gf:101")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--conjugate", action="store_true",
                    help="also emit a randomly conjugated copy of each system")
    sp = add("check-identities", cmd_check_identities, "check the algebra identities")
    sp.add_argument("input")
    sp.add_argument("--word-bound", type=int, default=None)
    sp = add("selftest", cmd_selftest, "run every invariant on a generated pool")
    sp.add_argument("--field", default="gf:101")
    sp.add_argument("--d", type=int, default=3, help="largest diameter in the pool")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=25)
    return p


def _echo(argv, ns):
    args = {k: v for k, v in vars(ns).items() if k not in ("func", "command", "output")}
    return {"name": ns.command, "argv": list(argv), "args": args}


def run(argv=None):
    """Parse, dispatch and return ``(exit_code, report)``; never raises on user errors."""
    argv = sys.argv[1:] if argv is None else list(argv)
    start = time.perf_counter()
    report = {"tool": "tdpair", "version": __version__}
    try:
        ns = build_parser().parse_args(argv)
    except UsageError as exc:
        report.update({"command": {"argv": argv}, "verdict": "usage-error",
                       "error": {"error": "usage-error", "message": str(exc)},
                       "timing": {"seconds": round(time.perf_counter() - start, 6)}})
        return EXIT_ERROR, report, None
    report["command"] = _echo(argv, ns)
    try:
        code, payload = ns.func(ns)
        report.update(payload)
    except UsageError as exc:
        code = EXIT_ERROR
        report.update({"verdict": "usage-error",
                       "error": {"error": "usage-error", "message": str(exc)}})
    except TDError as exc:
        code = EXIT_ERROR
        report.update({"verdict": exc.code, "error": exc.to_json()})
    except ValueError as exc:
        code = EXIT_ERROR
        report.update({"verdict": "usage-error",
                       "error": {"error": "usage-error", "message": str(exc)}})
    except Exception as exc:  # a bug: still answer with a report, not a traceback
        code = EXIT_ERROR
        report.update({"verdict": "internal-error",
                       "error": {"error": "internal-error", "message": repr(exc)}})
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return code, report, getattr(ns, "output", None)


def main(argv=None):
    code, report, output = run(argv)
    text = dumps(report)
    if output:
        try:
            with open(output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            sys.stderr.write(f"tdpair: cannot write {output}: {exc.strerror or exc}\n")
            return EXIT_ERROR
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
