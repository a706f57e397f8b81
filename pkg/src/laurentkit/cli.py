"""Command-line front end.

Exit codes: 0 success or pass, 1 a finding (failed or inconclusive
verification, NotLaurent under ``--expect-laurent``, zero division),
2 bad input.
"""
from __future__ import annotations

import argparse
import inspect
import random
import sys
from fractions import Fraction

from . import codec, report
from . import homogeneous as hom
from . import recurrences as rec
from .core import NotLaurent
from .cyclic import cyclic_caterpillar, verify_cyclic
from .deffile import DefinitionError, load_file
from .exchange import check_caterpillar_conditions
from .parsing import PolySyntaxError, UnknownVariable
from .stencil import StencilError, verify_stencil

OK, FINDING, BAD_INPUT = 0, 1, 2

# catalog entries whose integer arguments change the recurrence itself
_FACTORIES = {
    "monomial_plus_one": rec.monomial_plus_one,
    "somos4gen": rec.somos4_generalized,
    "number_wall": rec.number_wall_spec,
}


class UsageError(Exception):
    pass


def parse_params(text: str | None) -> dict[str, int]:
    """``"a=1,b=2"`` -> ``{"a": 1, "b": 2}``."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"bad parameter assignment {item!r}; expected name=integer")
        try:
            out[name.strip()] = int(value)
        except ValueError:
            raise UsageError(f"parameter {name.strip()!r} needs an integer value") from None
    return out


def parse_index(text: str):
    parts = [int(t) for t in text.split(",")]
    return parts[0] if len(parts) == 1 else tuple(parts)


def resolve_recurrence(name: str | None, path: str | None, params: dict) -> rec.RecurrenceSpec:
    if path:
        d = load_file(path, params)
        if d.kind not in ("cyclic", "stencil"):
            raise UsageError(f"{path} defines a {d.kind} pattern, not a recurrence")
        return d.value
    if not name:
        raise UsageError("give a catalog name or --file")
    if name in _FACTORIES:
        accepted = set(inspect.signature(_FACTORIES[name]).parameters)
        structural = {k: v for k, v in params.items() if k in accepted}
        spec = _FACTORIES[name](**structural)
        rest = {k: v for k, v in params.items() if k not in accepted}
    else:
        spec = rec.lookup(name)
        rest = params
    return spec.bind(**rest) if rest else spec


def resolve_family(args) -> hom.HomogeneousPattern:
    params = parse_params(args.params)
    if args.file:
        d = load_file(args.file, params)
        if d.kind != "homogeneous":
            raise UsageError(f"{args.file} defines a {d.kind} entry, not a homogeneous pattern")
        return d.value
    if not args.name:
        raise UsageError("give a family name or --file")
    kw = {}
    if args.name == "quadratic":
        kw["n"] = args.n or 3
        if params:
            kw["coefficients"] = {tuple(int(t) for t in k.split("_")[1:]): v for k, v in params.items()}
    elif args.name == "palindromic":
        kw["d"] = args.d or 2
        kw["e"] = args.e or 2
    return hom.builtin_family(args.name, **kw)


def _emit(args, obj, kind, text, extra=None):
    if args.format == "json":
        print(codec.encode(obj, kind, seed=getattr(args, "seed", None), extra=extra))
    else:
        print(text)


def _random_initial(seed: int):
    rng = random.Random(seed)

    def value(h):
        num = rng.choice([-1, 1]) * rng.randint(1, 9)
        return Fraction(num, rng.randint(1, 9))

    return value


def cmd_compute(args) -> int:
    spec = resolve_recurrence(args.name, args.file, parse_params(args.params))
    if args.index:
        targets = [parse_index(t) for t in args.index]
    elif spec.kind == rec.CYCLIC:
        targets = list(range(args.count))
    else:
        targets = rec.lattice_window(spec, args.radius, args.norm)
    if args.numeric:
        if args.initial:
            if spec.kind != rec.CYCLIC:
                raise UsageError("--initial lists values y0 .. y_(n-1) of a 1-D recurrence")
            initial = [Fraction(t) for t in args.initial.split(",")]
        elif args.random:
            initial = _random_initial(args.seed)
        else:
            initial = None
        table = rec.compute_numeric(spec, targets, initial)
        checks = {"integrality": table.integrality()}
        if spec.kind == rec.CYCLIC and not args.index:
            text = report.render_sequence(table)
        else:
            text = report.render_terms(table)
        text += "\n" + report.render_integrality(checks["integrality"])
        zero_division = any(not isinstance(f, NotLaurent) for f in table.findings.values())
    else:
        table = rec.compute_terms_symbolic(spec, targets)
        checks = {"nonnegativity": table.nonnegativity()}
        text = report.render_terms(table) + "\n" + report.render_nonnegativity(checks["nonnegativity"])
        zero_division = False
    _emit(args, table, "compute", text, extra={"recurrence": spec.name, **checks})
    if table.findings and (args.expect_laurent or zero_division):
        return FINDING
    return OK


def _cyclic_or_stencil(args, kind):
    spec = resolve_recurrence(args.name, args.file, parse_params(args.params))
    if spec.kind != kind:
        raise UsageError(f"{spec.name} is a {spec.kind} recurrence, not {kind}")
    return spec, rec.bound_recurrence(spec)


def cmd_verify(args) -> int:
    if args.target == "cyclic":
        spec, cs = _cyclic_or_stencil(args, rec.CYCLIC)
        cert = verify_cyclic(cs, args.seed, args.trials)
        _emit(args, cert, "verify-cyclic", report.render_cyclic(cert), {"recurrence": spec.name})
        return OK if cert.verdict == "pass" else FINDING
    if args.target == "stencil":
        spec, st = _cyclic_or_stencil(args, rec.STENCIL)
        cert = verify_stencil(st, args.seed, args.trials)
        _emit(args, cert, "verify-stencil", report.render_stencil(cert), {"recurrence": spec.name})
        return OK if cert.verdict == "pass" else FINDING
    if args.target == "homogeneous":
        pattern = resolve_family(args)
        rep = hom.check_homogeneous(pattern, args.seed, args.trials)
        _emit(args, rep, "verify-homogeneous", report.render_homogeneous(rep))
        return OK if rep.verdict == hom.PASS else FINDING
    # caterpillar
    params = parse_params(args.params)
    if args.file:
        d = load_file(args.file, params)
        if d.kind == "pattern":
            pattern, spine = d.value
            name = d.name
        elif d.kind == "cyclic":
            pattern, spine = _caterpillar_of(d.value, args)
            name = d.name
        else:
            raise UsageError(f"{args.file} defines a {d.kind} entry; caterpillars come from patterns or 1-D recurrences")
    else:
        spec = resolve_recurrence(args.name, None, params)
        if spec.kind != rec.CYCLIC:
            raise UsageError(f"{spec.name} is not a 1-D recurrence")
        pattern, spine = _caterpillar_of(spec, args)
        name = spec.name
    rep = check_caterpillar_conditions(pattern, spine, args.seed, args.trials)
    _emit(args, rep, "verify-caterpillar", report.render_caterpillar(rep), {"pattern": name})
    return OK if rep.verdict == "pass" else FINDING


def _caterpillar_of(spec, args):
    cs = rec.bound_recurrence(spec)
    N = args.length if args.length is not None else cs.n + 3
    return cyclic_caterpillar(cs, N, args.seed)


def cmd_apply(args) -> int:
    pattern = resolve_family(args)
    word = hom.parse_word(args.word)
    result = hom.apply_word(pattern, word, max_terms=args.max_terms)
    if isinstance(result, NotLaurent):
        _emit(args, result, "apply", str(result), {"word": list(word)})
        return FINDING
    _emit(args, result, "apply", report.render_point(result, word), {"word": list(word)})
    return OK


def cmd_catalog(args) -> int:
    rows = []
    for name, spec in rec.catalog().items():
        params = ", ".join(spec.parameters) or "-"
        rows.append(f"{name:24} {spec.kind:9} {params:20} {spec.description}")
    rows.append("")
    rows.append("homogeneous families: " + ", ".join(hom.FAMILIES))
    print("\n".join(rows))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="laurentkit", description="Exact Laurentness checks for rational recurrences.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, name_help):
        p.add_argument("name", nargs="?", help=name_help)
        p.add_argument("--file", help="definition file (.rec)")
        p.add_argument("--params", help="integer values, e.g. a=1,b=2")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("compute", help="terms of a recurrence")
    common(p, "catalog name")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--numeric", action="store_true")
    mode.add_argument("--symbolic", action="store_true")
    start = p.add_mutually_exclusive_group()
    start.add_argument("--ones", action="store_true", help="all initial values 1 (the default)")
    start.add_argument("--initial", help="comma-separated initial values y0 .. y_(n-1)")
    start.add_argument("--random", action="store_true", help="seeded random nonzero rational initial values")
    p.add_argument("--count", type=int, default=12, help="terms y0 .. y_(count-1) of a 1-D recurrence")
    p.add_argument("--index", action="append", help="one target, e.g. 5 or 1,1,1; repeatable")
    p.add_argument("--radius", type=int, default=2, help="lattice window radius")
    p.add_argument("--norm", choices=("l1", "max"), default="l1")
    p.add_argument("--expect-laurent", action="store_true", help="exit 1 on any NotLaurent finding")
    p.set_defaults(run=cmd_compute)

    p = sub.add_parser("verify", help="run a verifier and print its certificate")
    p.add_argument("target", choices=("cyclic", "stencil", "homogeneous", "caterpillar"))
    common(p, "catalog name or homogeneous family")
    p.add_argument("--trials", type=int, default=8, help="coprimality trials")
    p.add_argument("--n", type=int, help="size of the quadratic family")
    p.add_argument("--d", type=int, help="first palindromic degree")
    p.add_argument("--e", type=int, help="second palindromic degree")
    p.add_argument("--length", type=int, help="caterpillar target index N")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("apply", help="apply a word of homogeneous maps")
    common(p, "homogeneous family")
    p.add_argument("--word", required=True, help="comma-separated labels; the last acts first")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--e", type=int)
    p.add_argument("--max-terms", type=int, default=hom.DEFAULT_MAX_TERMS)
    p.set_defaults(run=cmd_apply)

    p = sub.add_parser("catalog", help="list named recurrences and families")
    p.set_defaults(run=cmd_catalog)
    return parser


_INPUT_ERRORS = (
    UsageError, DefinitionError, PolySyntaxError, UnknownVariable, StencilError,
    rec.RegionError, hom.MalformedPattern, hom.SizeLimitExceeded, ValueError, TypeError, KeyError,
)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except _INPUT_ERRORS as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
