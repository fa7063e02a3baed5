"""Command-line front end.

Subcommands: normalize, trace, reducts, eval, decompose, gen, check.
Declarations travel inside the term string ("vars x y:E; ...") so every
invocation is a self-contained, copy-pasteable reproduction.  Exit codes:
0 success or all checks passed, 1 a check failed (or a user scalar
system was refused), 2 usage, parse or sort errors.

Identical argv and seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from vecnorm import lab, models
from vecnorm.engine import normalize, reducts, trace_lines, vector_system
from vecnorm.lab import CONST_SIG, SUITES, gen_term, run_suite
from vecnorm.scalars import builtin_scalar, from_rules, scalar_requirements_check
from vecnorm.syntax import parse_program, parse_system, print_term
from vecnorm.terms import DEFAULT_SIG, Sort, VecnormError


class CheckFailure(Exception):
    """A suite or a user-system admission check did not pass."""


def _add_common(p, scalars=True, strategy=False):
    p.add_argument("--system", choices=("r", "rprime"), default="r")
    if scalars:
        p.add_argument(
            "--scalars",
            default="q",
            help="q, f2, s0, or file:PATH (user systems are admitted only "
            "after passing the scalar requirements check)",
        )
    if strategy:
        p.add_argument("--strategy", choices=("li", "random"), default="li")
        p.add_argument("--fuel", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="vecnorm",
        description="Normalize vector-space and bilinear expressions by "
        "rewriting modulo AC, and run the accompanying property checks.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="print the normal form of a term")
    _add_common(p, strategy=True)
    p.add_argument("term")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("trace", help="print the reduction steps to the normal form")
    _add_common(p, strategy=True)
    p.add_argument("term")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("reducts", help="print all one-step reducts")
    _add_common(p)
    p.add_argument("term")
    p.set_defaults(func=cmd_reducts)

    p = sub.add_parser("eval", help="evaluate under the canonical basis assignment")
    _add_common(p)
    p.add_argument("term")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("decompose", help="coordinates of the normal form")
    _add_common(p)
    p.add_argument("--order", default=None, help="comma-separated variable order")
    p.add_argument("term")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("gen", help="print a seeded random term")
    p.add_argument("--sort", choices=("K", "E", "F", "G"), default="E")
    p.add_argument("--size", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--open", action="store_true", help="allow scalar variables")
    p.add_argument("--constants", action="store_true", help="allow free vector constants")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="run a verification suite")
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    p.add_argument("--scalars", default=None, help="additionally admit a user system (file:PATH)")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("text", "summary"), default="text")
    p.set_defaults(func=cmd_check)

    return top


def _scalars_for(args):
    name = args.scalars
    if name.startswith("file:"):
        return _admit_user_system(name[5:], getattr(args, "seed", 0) or 0)
    return builtin_scalar(name)


def _admit_user_system(path: str, seed: int):
    S = from_rules(parse_system(Path(path).read_text(), name=Path(path).stem))
    report = scalar_requirements_check(S, samples=200, seed=seed)
    if not report.passed:
        print("\n".join(report.lines()))
        raise CheckFailure(f"scalar system {S.name} refused")
    return S


def _parse(args):
    sig = DEFAULT_SIG
    term, decls = parse_program(args.term, sig)
    return term, decls


def cmd_normalize(args) -> int:
    term, _ = _parse(args)
    S = _scalars_for(args)
    nf, _ = normalize(
        vector_system(args.system), S, term,
        strategy=args.strategy, fuel=args.fuel, seed=args.seed,
    )
    print(print_term(nf))
    return 0


def cmd_trace(args) -> int:
    term, _ = _parse(args)
    S = _scalars_for(args)
    nf, trace = normalize(
        vector_system(args.system), S, term,
        strategy=args.strategy, fuel=args.fuel, seed=args.seed,
    )
    for line in trace_lines(trace):
        print(line)
    print(f"normal form\t{print_term(nf)}")
    return 0


def cmd_reducts(args) -> int:
    term, _ = _parse(args)
    S = _scalars_for(args)
    for u, step in reducts(vector_system(args.system), S, term):
        print(f"{step.label}\t{print_term(u)}")
    return 0


def _declared_vars(decls):
    evars = tuple(v for v in decls.items() if v[1] == Sort.E)
    fvars = tuple(v for v in decls.items() if v[1] == Sort.F)
    from vecnorm.terms import var

    return (
        tuple(var(n, s) for n, s in evars),
        tuple(var(n, s) for n, s in fvars),
    )


def _model_for(term, evars, fvars):
    if term[0] == Sort.G or fvars:
        return models.tensor_model(len(evars), len(fvars))
    if term[0] == Sort.F:
        return models.Model(models.rationals(), {Sort.F: len(fvars)})
    return models.q_model(len(evars))


def cmd_eval(args) -> int:
    term, decls = _parse(args)
    evars, fvars = _declared_vars(decls)
    if term[0] == Sort.K:
        from vecnorm.scalars import s_normalize

        print(s_normalize(_scalars_for(args), term)[2])
        return 0
    M = _model_for(term, evars, fvars)
    phi = models.canonical_assignment(evars, fvars, M)
    value = models.eval_term(term, phi, M)
    print(", ".join(str(c) for c in value))
    return 0


def cmd_decompose(args) -> int:
    term, decls = _parse(args)
    evars, fvars = _declared_vars(decls)
    if args.order is not None:
        from vecnorm.terms import var

        wanted = [n.strip() for n in args.order.split(",")]
        missing = [n for n in wanted if n not in decls]
        if missing:
            raise VecnormError(f"undeclared variables in --order: {', '.join(missing)}")
        evars = tuple(var(n, decls[n]) for n in wanted if decls[n] == Sort.E)
        fvars = tuple(var(n, decls[n]) for n in wanted if decls[n] == Sort.F)
    S = _scalars_for(args)
    nf, _ = normalize(vector_system(args.system), S, term)
    coords = models.decompose(nf, evars, fvars)
    print(", ".join(str(c) for c in coords))
    return 0


def cmd_gen(args) -> int:
    sig = CONST_SIG if args.constants else DEFAULT_SIG
    t = gen_term(
        sig,
        Sort[args.sort],
        args.size,
        args.seed,
        semi_open=not args.open,
        allow_constants=args.constants,
    )
    print(print_term(t))
    return 0


def cmd_check(args) -> int:
    if args.scalars is not None:
        if not args.scalars.startswith("file:"):
            raise VecnormError("check --scalars expects file:PATH")
        _admit_user_system(args.scalars[5:], args.seed or 0)
    reports = run_suite(args.suite, samples=args.samples, seed=args.seed)
    ok = all(r.passed for r in reports)
    if args.format == "summary":
        for rep in reports:
            print(rep.summary_line())
            for section in rep.sections:
                print(section.summary_line())
    else:
        for rep in reports:
            print("\n".join(rep.lines()))
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CheckFailure as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except VecnormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
