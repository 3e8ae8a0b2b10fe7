"""``gsgrowth`` command line.

Exit codes: 0 computed, 1 negative outcome (inequality fails, no
certificate), 2 usage or parse error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from ..config import Limits, use_limits
from ..errors import DomainError, ParseError, ResourceCapError, UsageError
from ..fpgmod import (count_submodules, gerdau_constant, isotypic_section, power_module, regular_module, simple_modules,
                      socle)
from ..freealg import DegreeMap, magnus_degree
from ..gscert import (GsCertificate, fraction_str, ggs_search, ggs_value, gs_generator_bound, hilbert_of_generators,
                      hilbert_of_relators)
from ..growth import (chain_upper_bound, growth_table, index_transfer_check, prop14_arithmetic_check,
                      subspace_lower_bound, theorem1_check, theorem_sweep, virtual_transfer_check)
from ..pgroups import characteristic_subgroups, cmea_rank, d_min, frattini_p, library, normal_subgroups
from ..words import format_word, parse_word
from .formats import (dumps, group_from_json, loads, module_from_json, parse_builtin, parse_presentation,
                      select_subgroup, subgroup_to_json)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fraction(text: str) -> Fraction:
    try:
        if "." in text or "e" in text.lower():
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected an exact rational a/b, got {text!r}") from None


def _weights(text: str) -> dict[str, int]:
    out = {}
    for item in text.split(","):
        name, sep, w = item.partition(":")
        if not sep or not w.strip().lstrip("-").isdigit():
            raise argparse.ArgumentTypeError(f"expected name:weight pairs, got {item!r}")
        out[name.strip()] = int(w)
    return out


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _group(args):
    if args.builtin and args.group:
        raise UsageError("give either --builtin or --group, not both")
    if args.builtin:
        return parse_builtin(args.builtin)
    if args.group:
        return group_from_json(loads(_read(args.group), args.group))
    raise UsageError("a group is required (--builtin name:params or --group file.group.json)")


def _module(args):
    if args.module:
        return module_from_json(loads(_read(args.module), args.module))
    if args.p is None:
        raise UsageError("--p is required with --builtin/--group")
    M = regular_module(_group(args), args.p)
    return power_module(M, args.power) if args.power != 1 else M


def _report(rep) -> tuple[dict, int]:
    return rep.to_json(), EXIT_OK if rep.holds else EXIT_NEGATIVE


# command handlers return (result document, exit code) or (csv text, exit code)

def cmd_ggs(args):
    pres = parse_presentation(_read(args.file))
    if args.action == "check":
        if args.t0 is None:
            raise UsageError("ggs check needs --t0 a/b")
        deg = DegreeMap.from_mapping(pres.alphabet.names, args.weights) if args.weights else pres.default_weights
        value = ggs_value(pres, deg, args.t0)
        doc = {
            "weights": deg.as_dict(),
            "t0": fraction_str(args.t0),
            "H_X": hilbert_of_generators(deg).format(),
            "H_R": hilbert_of_relators(pres, deg).format(),
            "value": fraction_str(value),
            "certificate": value < 0,
        }
        if value < 0:
            cert = GsCertificate(deg, args.t0, value)
            doc["delta"] = fraction_str(cert.delta)
            if args.generator_bound:
                doc["generator_bound"] = str(gs_generator_bound(cert, args.generator_bound))
        return doc, EXIT_OK if value < 0 else EXIT_NEGATIVE
    res = ggs_search(pres, args.weights_max, args.grid)
    doc = res.to_json()
    if isinstance(res, GsCertificate):
        doc["certificate"] = True
        if args.generator_bound:
            doc["generator_bound"] = str(gs_generator_bound(res, args.generator_bound))
        return doc, EXIT_OK
    doc["certificate"] = False
    return doc, EXIT_NEGATIVE


def cmd_degree(args):
    if args.file:
        pres = parse_presentation(_read(args.file))
        deg = DegreeMap.from_mapping(pres.alphabet.names, args.weights) if args.weights else pres.default_weights
        rows = [{"relator": format_word(r), "degree": magnus_degree(r, deg, pres.p)} for r in pres.relators]
        return {"p": pres.p, "weights": deg.as_dict(), "relators": rows}, EXIT_OK
    if not args.word or args.p is None:
        raise UsageError("degree needs a .pres file or --word W --p P")
    w = parse_word(args.word)
    names = sorted(w.generators() | set(args.weights or {}))
    deg = DegreeMap.from_mapping(names, args.weights)
    return {"p": args.p, "weights": deg.as_dict(), "word": format_word(w.reduced()),
            "degree": magnus_degree(w, deg, args.p)}, EXIT_OK


def cmd_cmea_rank(args):
    G = _group(args)
    return {"group": G.label, "order": G.order, "d": d_min(G), "frattini_order": frattini_p(G).order,
            "cmea_rank": cmea_rank(G)}, EXIT_OK


def cmd_growth(args):
    G = _group(args)
    table = growth_table(G, with_characteristic=args.characteristic)
    if args.csv:
        return table.to_csv(), EXIT_OK
    doc = table.to_json()
    doc["total_normal"] = table.total_normal
    return doc, EXIT_OK


def cmd_lattice(args):
    G = _group(args)
    subs = normal_subgroups(G) if args.kind == "normal" else characteristic_subgroups(G)
    if args.csv:
        lines = ["index,order,elements"]
        lines += [f"{H.index},{H.order},{' '.join(map(str, H.elements))}" for H in subs]
        return "\n".join(lines) + "\n", EXIT_OK
    return {"group": G.label, "kind": args.kind, "count": len(subs),
            "subgroups": [subgroup_to_json(H) for H in subs]}, EXIT_OK


def cmd_module(args):
    M = _module(args)
    if args.action == "count":
        return {"dim": M.dim, "p": M.p, "submodules": count_submodules(M)}, EXIT_OK
    if args.action == "socle":
        S = socle(M)
        return {"dim": M.dim, "p": M.p, "socle_dim": S.dim, "basis": [list(v) for v in S.space.basis]}, EXIT_OK
    sec = isotypic_section(M)
    ell = sec.depth
    const = gerdau_constant(M.group, M.p, ell)
    bound = const * M.dim
    verified = sec.verify()
    ok = verified and sec.multiplicity >= bound
    return {
        "dim": M.dim,
        "p": M.p,
        "simple_dims": [S.dim for S in simple_modules(M.group, M.p)],
        "section": {"M1_dim": sec.M1.dim, "M2_dim": sec.M2.dim, "simple_dim": sec.simple.dim,
                    "multiplicity": sec.multiplicity, "depth": ell},
        "gerdau_constant": fraction_str(const),
        "bound": fraction_str(bound),
        "verified": verified,
        "holds": ok,
    }, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_check(args):
    if args.bound == "prop14":
        if None in (args.d, args.p, args.k):
            raise UsageError("check prop14 needs --d, --p and --k")
        return _report(prop14_arithmetic_check(args.d, args.p, args.k))
    if args.bound == "sweep":
        groups = library(args.max_order)
        if args.sample:
            rng = random.Random(args.seed)
            groups = sorted(rng.sample(groups, min(args.sample, len(groups))), key=lambda G: G.label)
        reports = theorem_sweep(groups)
        failures = [{"instance": label, **rep.to_json()} for label, rep in reports if not rep.holds]
        doc = {"groups": [G.label for G in groups], "instances": len(reports), "failures": failures}
        return doc, EXIT_OK if not failures else EXIT_NEGATIVE
    G = _group(args)
    if args.bound == "lemma21":
        chain = chain_upper_bound(G)
        doc = {"chain": chain.to_json()}
        holds = chain.holds
        if args.sub:
            if args.c is None:
                raise UsageError("check lemma21 with --sub needs --c")
            sub = subspace_lower_bound(G, select_subgroup(G, args.sub), args.c)
            doc["subspace"] = sub.to_json()
            holds = holds and sub.holds
        doc["holds"] = holds
        return doc, EXIT_OK if holds else EXIT_NEGATIVE
    if not args.sub:
        raise UsageError(f"check {args.bound} needs --sub")
    D = select_subgroup(G, args.sub)
    if args.bound == "transfer":
        return _report(index_transfer_check(G, D))
    if args.bound == "lemma22":
        N = select_subgroup(G, args.normal) if args.normal else D
        return _report(virtual_transfer_check(G, D, N))
    if args.p is None:
        raise UsageError("check thm13 needs --p")
    return _report(theorem1_check(G, D, args.p))


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--cap", type=int, help="global work cap; every module cap scales with it")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV output (tables only)")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled sweeps")
    p.add_argument("--timing", action="store_true", help="include wall time in the output")


def _add_group(p: argparse.ArgumentParser):
    p.add_argument("--builtin", help="builtin group, e.g. dihedral:8 or free_cmea:2,2")
    p.add_argument("--group", help="group JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gsgrowth", description="Exact computations for normal subgroup growth of p-groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ggs", help="generalized Golod-Shafarevich certificates")
    p.add_argument("action", choices=["check", "search"])
    p.add_argument("file", help=".pres presentation file")
    p.add_argument("--t0", type=_fraction)
    p.add_argument("--weights", type=_weights, help="override weights, e.g. x:2,y:1")
    p.add_argument("--weights-max", type=int, default=2)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--generator-bound", type=int, metavar="N", help="also report the normal generator bound at degree N")
    _add_common(p)
    p.set_defaults(handler=cmd_ggs)

    p = sub.add_parser("degree", help="Magnus degrees of relators or of a single word")
    p.add_argument("file", nargs="?")
    p.add_argument("--word")
    p.add_argument("--p", type=int)
    p.add_argument("--weights", type=_weights)
    _add_common(p)
    p.set_defaults(handler=cmd_degree)

    p = sub.add_parser("cmea-rank", help="CMEA rank and generator number of a p-group")
    _add_group(p)
    _add_common(p)
    p.set_defaults(handler=cmd_cmea_rank)

    p = sub.add_parser("growth", help="normal (and characteristic) subgroup counts by index")
    _add_group(p)
    p.add_argument("--characteristic", action="store_true")
    _add_common(p)
    p.set_defaults(handler=cmd_growth)

    p = sub.add_parser("lattice", help="list normal or characteristic subgroups")
    p.add_argument("kind", choices=["normal", "characteristic"])
    _add_group(p)
    _add_common(p)
    p.set_defaults(handler=cmd_lattice)

    p = sub.add_parser("module", help="socle, isotypic section or submodule count of an F_pG-module")
    p.add_argument("action", choices=["socle", "section", "count"])
    p.add_argument("--module", help="module JSON file")
    _add_group(p)
    p.add_argument("--p", type=int, help="prime for the regular module of --builtin/--group")
    p.add_argument("--power", type=int, default=1, help="direct power of the regular module")
    _add_common(p)
    p.set_defaults(handler=cmd_module)

    p = sub.add_parser("check", help="evaluate one of the growth inequalities")
    p.add_argument("bound", choices=["lemma21", "lemma22", "thm13", "transfer", "prop14", "sweep"])
    _add_group(p)
    p.add_argument("--sub", help="subgroup selector (whole, trivial, frattini, center, derived, base, cyclic<n>, gen:i,j)")
    p.add_argument("--normal", help="second subgroup selector (lemma22)")
    p.add_argument("--p", type=int)
    p.add_argument("--c", type=_fraction)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--max-order", type=int, default=64)
    p.add_argument("--sample", type=int, help="sweep a seeded random sample of this many groups")
    _add_common(p)
    p.set_defaults(handler=cmd_check)
    return parser


def run(argv: list[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.csv and args.handler not in (cmd_growth, cmd_lattice):
            raise UsageError("--csv is only available for growth and lattice")
        lim = Limits.from_global_cap(args.cap) if args.cap else Limits()
        start = time.perf_counter()
        with use_limits(lim):
            result, code = args.handler(args)
        if isinstance(result, str):
            stdout.write(result)
        else:
            doc = {"format": 1, "command": list(argv), "result": result}
            if args.timing:
                doc["seconds"] = f"{time.perf_counter() - start:.3f}"
            stdout.write(dumps(doc))
        return code
    except (ParseError, UsageError, DomainError, argparse.ArgumentTypeError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ResourceCapError as exc:
        msg = f"resource cap: {exc}"
        if exc.bracket is not None:
            msg += f" (bracket {exc.bracket[0]}..{exc.bracket[1]})"
        stderr.write(msg + "\n")
        return EXIT_CAP


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
