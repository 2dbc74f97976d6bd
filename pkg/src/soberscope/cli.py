"""Command-line entry point.

Exit status: 0 when every reported check holds, 1 when one fails (reports
are still written), 2 on unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import sys
import time

from .chain import ChainMap, ChainSpace
from .constructions import (embedding_check, is_qk_bounded_sober, kb_quotient, kb_space,
                            ns_universal_map, reflector, sobrify, thm_4_2_witness)
from .errors import ContractError, InputError, LibraryBugError
from .finite import FiniteSpace, product
from .fuzz import SWEEPS, run_sweep
from .io import parse_map, parse_space
from .maps import SpaceMap
from .report import CheckReport, Fact, from_facts
from .scenarios import SCENARIOS, scenario
from .sobriety import (PROPERTIES, check_prop_2_4, check_sobriety, derive_si, is_continuous,
                       preserves_irreducible_sups, revalidate_witness)


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"{path} is not UTF-8 text") from None


def _load_space(path: str, bound):
    try:
        return parse_space(_read(path), bound).space
    except InputError as e:
        raise InputError(str(e), path) from None


def _load_map(path: str, bound):
    try:
        return parse_map(_read(path), bound)
    except InputError as e:
        raise InputError(str(e), path) from None


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, (time.perf_counter() - t) * 1000


def _space_summary(space) -> dict:
    if isinstance(space, FiniteSpace):
        return {"carrier": list(space.carrier), "opens": space.sorted_sets(space.opens)}
    return {"closed": [space.describe(c) for c in space.closed_sets()]}


# -- commands ----------------------------------------------------------------------------------

def cmd_check(args) -> list:
    space = _load_space(args.space, args.bound)
    props = PROPERTIES if args.property == "all" else (args.property,)
    reports = []
    for prop in props:
        if prop == "qk-bounded-sober":
            v, ms = _timed(lambda: is_qk_bounded_sober(space))
            reports.append(CheckReport(prop, v.holds, v.witness, v.mode, ms))
            continue
        if prop not in PROPERTIES:
            raise InputError(f"unknown property {prop!r}")
        v, ms = _timed(lambda: check_sobriety(space, prop))
        facts = []
        if not v.holds:
            facts.append(Fact("witness re-validates", revalidate_witness(space, v), None, v.mode))
        if args.oracle and isinstance(space, FiniteSpace):
            direct = [f for f in space.irreducible_subsets() if space.is_closed(f)]
            facts.append(Fact("irreducible closed sets match the definition",
                              set(direct) == set(space.irreducible_closed())))
        holds = v.holds and all(f.holds for f in facts)
        witness = v.witness.members if v.witness else None
        reports.append(CheckReport(prop, holds, witness, v.mode, ms, facts))
    return reports


def cmd_derive_si(args) -> list:
    space = _load_space(args.space, args.bound)
    d, ms = _timed(lambda: derive_si(space))
    witness = {"si-opens": d.si_opens, "unchanged": d.unchanged}
    if isinstance(d.space, ChainSpace):
        witness["topology"] = d.space.effective_topology
    return [CheckReport("derive-si", True, witness, space.mode, ms)]


def cmd_construct(args) -> list:
    spaces = [_load_space(p, args.bound) for p in args.spaces]
    kind = args.construction
    if kind != "product" and len(spaces) != 1:
        raise InputError(f"construct {kind} takes exactly one space")
    if kind == "product":
        if len(spaces) < 2:
            raise InputError("construct product needs at least two spaces")
        if not all(isinstance(s, FiniteSpace) for s in spaces):
            raise InputError("products are built for finite spaces only")
        out, ms = _timed(lambda: product(spaces))
        checks = {"k-bounded-sober": check_sobriety(out, "k-bounded-sober").holds}
        mode = "exhaustive"
    elif kind == "kb":
        kb, ms = _timed(lambda: kb_space(spaces[0]))
        out, checks, mode = kb.space, kb.checks, kb.mode
    elif kind == "quotient":
        q, ms = _timed(lambda: kb_quotient(spaces[0]))
        out, checks, mode = q.space, q.checks, _mode_of(spaces[0])
        checks = dict(checks, **{"homeomorphic-to-si": thm_4_2_witness(spaces[0]).holds})
    else:
        so, ms = _timed(lambda: sobrify(spaces[0]))
        out, checks, mode = so.space, so.checks, so.mode
    facts = [Fact(k, v, None, mode) for k, v in checks.items()]
    return [CheckReport(f"construct-{kind}", all(checks.values()), _space_summary(out), mode, ms, facts)]


def _mode_of(space) -> str:
    return "exhaustive" if isinstance(space, FiniteSpace) else space.mode


def cmd_map_check(args) -> list:
    from .johnstone import JPiecewiseMap, check_map_properties

    f = _load_map(args.map, args.bound)
    t = time.perf_counter()
    if isinstance(f, JPiecewiseMap):
        r = check_map_properties(f, f.source.bound)
        facts = [Fact(k, v, r.witnesses.get(k), r.mode) for k, v in r.facts.items()]
        mode = r.mode
    else:
        mode = _mode_of(f.source)
        cont, w = is_continuous(f)
        sups, ws = preserves_irreducible_sups(f)
        facts = [Fact("continuous", cont, w, mode), Fact("preserves-irreducible-sups", sups, ws, mode)]
        if isinstance(f, SpaceMap) and cont:
            facts.append(Fact("SI-continuity matches sup preservation", check_prop_2_4(f), None, mode))
        if isinstance(f, ChainMap):
            emb, we = embedding_check(f)
            facts.append(Fact("embedding", emb, we, mode))
    ms = (time.perf_counter() - t) * 1000
    wanted = [x for x in facts if args.property in (None, "all", x.name)]
    if not wanted:
        raise InputError(f"unknown map property {args.property!r}")
    return [from_facts(f"map-check {f.name}", wanted, mode, ms)]


def cmd_reflector(args) -> list:
    f = _load_map(args.map, args.bound)
    if not isinstance(f, (SpaceMap, ChainMap)):
        raise InputError("reflector needs a table map or a map out of omega+1")
    r, ms = _timed(lambda: reflector(f.source, f))
    facts = [Fact(k, v, None, r.uniqueness_mode if k == "unique" else _mode_of(f.source))
             for k, v in r.checks.items()]
    if isinstance(f, ChainMap) and not isinstance(f.target, ChainSpace):
        u = ns_universal_map(f)
        facts += [Fact(f"N^S extension {k}", v, None, u.uniqueness_mode) for k, v in u.checks.items()]
    return [from_facts(f"reflector {f.name}", facts, r.uniqueness_mode, ms)]


def cmd_paper(args) -> list:
    names = SCENARIOS if args.scenario == "all" else (args.scenario,)
    bound = args.bound or 40
    reports = [scenario(n, bound) for n in names]
    if args.oracle:
        from .oracles import run_oracle

        b = min(bound, 20)
        facts = []
        t = time.perf_counter()
        for kind in ("P", "X", "Y"):
            rep = run_oracle(kind, b, args.samples or 2000, args.seed)
            facts.append(Fact(f"oracle agreement on {kind}", rep.disagreements == 0,
                              {"descriptors": rep.descriptors, "sups": rep.sups_compared,
                               "disagreements": rep.disagreements}, f"sampled N={rep.descriptors}"))
        reports.append(from_facts("oracle", facts, f"bounded B={b}", (time.perf_counter() - t) * 1000))
    return reports


def cmd_fuzz(args) -> list:
    names = list(SWEEPS) if args.property == "all" else [args.property]
    samples = args.samples or 100
    reports = []
    for name in names:
        results, ms = _timed(lambda: run_sweep(name, samples, args.seed, args.carrier_max))
        failed = [r for r in results if not r.holds]
        witness = None
        if failed:
            first = failed[0]
            witness = {"sample": first.index, "seed": args.seed, "detail": _brief(first.witness)}
        facts = [Fact(f"sample {r.index}", False, _brief(r.witness)) for r in failed]
        reports.append(CheckReport(name, not failed, witness, f"sampled N={samples}", ms, facts))
    return reports


def _brief(w):
    if isinstance(w, FiniteSpace):
        return _space_summary(w)
    if isinstance(w, tuple) and all(isinstance(x, FiniteSpace) for x in w):
        return [_space_summary(x) for x in w]
    return w


# -- parser ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None,
                        help="parameter bound for symbolic spaces (Johnstone default 40, omega+1 default 16)")
    common.add_argument("--samples", type=int, default=None, help="number of random samples")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--oracle", action="store_true", help="also run the slow brute-force cross-checks")
    common.add_argument("--no-timing", action="store_true",
                        help="leave timings out so output is byte-identical across runs")

    parser = argparse.ArgumentParser(prog="soberscope",
                                     description="Decide sobriety-type properties of T0 spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="sobriety verdict with witness")
    p.add_argument("space")
    p.add_argument("--property", default="k-bounded-sober",
                   choices=PROPERTIES + ("qk-bounded-sober", "all"))
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("derive-si", parents=[common], help="the SI-topology of a space")
    p.add_argument("space")
    p.set_defaults(run=cmd_derive_si)

    p = sub.add_parser("construct", parents=[common], help="KB(X), its quotient, sobrification, products")
    p.add_argument("construction", choices=("kb", "quotient", "sobrify", "product"))
    p.add_argument("spaces", nargs="+")
    p.set_defaults(run=cmd_construct)

    p = sub.add_parser("map-check", parents=[common], help="continuity and sup preservation of a map")
    p.add_argument("map")
    p.add_argument("--property", default="all")
    p.set_defaults(run=cmd_map_check)

    p = sub.add_parser("reflector", parents=[common], help="universal extension through KB(X)/~")
    p.add_argument("map")
    p.set_defaults(run=cmd_reflector)

    p = sub.add_parser("paper", parents=[common], help="named scenarios on Johnstone's dcpo and omega+1")
    p.add_argument("--scenario", default="all", choices=SCENARIOS + ("all",))
    p.set_defaults(run=cmd_paper)

    p = sub.add_parser("fuzz", parents=[common], help="seeded property sweeps over random finite spaces")
    p.add_argument("--property", default="all", choices=tuple(SWEEPS) + ("all",))
    p.add_argument("--carrier-max", type=int, default=5)
    p.set_defaults(run=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    timing = not args.no_timing
    try:
        if args.bound is not None and args.bound < 1:
            raise InputError("--bound must be positive")
        if args.samples is not None and args.samples < 1:
            raise InputError("--samples must be positive")
        reports = args.run(args)
    except (InputError, ContractError) as e:
        print(f"soberscope: error: {e}", file=sys.stderr)
        return 2
    except LibraryBugError as e:
        print(f"soberscope: internal inconsistency: {e}", file=sys.stderr)
        return 1
    for r in reports:
        print(r.to_json(timing) if args.format == "json" else r.to_text(timing))
    return 0 if all(r.holds for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
