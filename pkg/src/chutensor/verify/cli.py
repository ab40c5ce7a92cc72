"""Command-line interface.

Machine-readable JSON goes to stdout; a short human summary goes to stderr.
Exit codes: 0 success, 1 a verification check failed, 2 bad input, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Iterator, Sequence

from .. import __version__
from ..caps import ENV_VAR
from ..effects import check_chu_axioms, default_effects, natural_effects, reduced_effects
from ..errors import CapExceeded, ChuTensorError, ConsistencyError, SchemaError
from ..fraser import compare_orders, iter_fraser
from ..lattice import SemiLattice, validate_star
from ..tensor import (
    is_maximal_member,
    is_minimal_member,
    is_regular_member,
    iter_maximal,
    iter_minimal,
    minimal_leq_criterion,
    omega,
    product,
    sigma_witness,
    table_leq,
)
from .documents import (
    OUTPUT_SCHEMA_VERSION,
    format_pair,
    format_pairset,
    parse_pair,
    parse_pairset,
    read_semilattice,
    resolve_bottom_alias,
    to_text,
)
from .export import carrier_dot, effects_dot, lattice_dot
from .fixtures import canonical_fixture_name, fixture
from .suites import SUITES, classification, run_suite

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
KINDS = ("minimal", "maximal", "regular", "fraser")


class _UsageError(SchemaError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # keep argparse's exit code 2 but route through our handler
        raise _UsageError(message)


def load_input(arg: str) -> SemiLattice:
    """Resolve ``A=NAME``, ``NAME`` or a file path; fixture names win over paths."""
    _, sep, rest = arg.partition("=")
    target = rest if sep and len(arg.split("=", 1)[0]) <= 2 else arg
    name = canonical_fixture_name(target)
    if name is not None:
        return fixture(name)
    path = Path(target)
    if not path.exists():
        raise SchemaError(f"{target!r} is neither a fixture name nor a readable file")
    return read_semilattice(path)


def _emit(command: str, result: dict) -> None:
    sys.stdout.write(to_text({"schema": "chutensor/output", "schema_version": OUTPUT_SCHEMA_VERSION,
                              "command": command, **result}))


def _say(message: str) -> None:
    print(message, file=sys.stderr)


def _resolve_pairs(lat_a: SemiLattice, lat_b: SemiLattice, pairs):
    return [(resolve_bottom_alias(lat_a, x), resolve_bottom_alias(lat_b, y)) for x, y in pairs]


# -- subcommands --------------------------------------------------------------


def cmd_validate(args) -> int:
    lat = load_input(args.file)
    result = {"valid": True, "name": lat.name, "elements": len(lat), "covers": len(lat.covers)}
    if lat.star is not None:
        report = validate_star(lat)
        result["star_valid"] = report.valid
        if not report.valid:
            result["valid"] = False
            result["star_violations"] = [list(map(str, v)) for v in report.violations]
    _emit("validate", result)
    _say(f"{lat.name}: {'valid' if result['valid'] else 'invalid star'}")
    return EXIT_OK if result["valid"] else EXIT_INPUT


def cmd_analyze(args) -> int:
    lat = load_input(args.file)
    info = classification(lat)
    info["distributive_witness"] = list(info["distributive_witness"] or []) or None
    info["maximal_elements"] = list(lat.maximal_elements())
    info["meet_irreducibles"] = list(lat.meet_irreducibles())
    if lat.star is not None:
        report = validate_star(lat)
        info["star_valid"] = report.valid
        info["star_violations"] = [list(map(str, v)) for v in report.violations]
    _emit("analyze", {"name": lat.name, "report": info})
    _say(f"{lat.name}: pure={info['pure_description']} simplex={info['simplex']} "
         f"distributive={info['distributive']}")
    return EXIT_OK


def cmd_effects(args) -> int:
    lat = load_input(args.file)
    space = reduced_effects(lat) if args.reduced else natural_effects(lat)
    report = check_chu_axioms(space)
    _emit("effects", {
        "name": lat.name,
        "kind": space.kind,
        "count": len(space),
        "effects": [str(e) for e in space.effects],
        "axioms_pass": report.passed,
        "violations": [[rule, *map(str, where)] for rule, where in report.violations],
        "advisories": [[rule, *map(str, where)] for rule, where in report.advisories],
    })
    _say(f"{len(space)} {space.kind} effects on {lat.name}; axioms {'pass' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_FAILED


def _bounded(items: Iterator, limit: int | None, what: str) -> list:
    out = []
    for item in items:
        out.append(item)
        if limit is not None and len(out) > limit:
            raise CapExceeded(f"{what} has more than {limit} elements (--max-size)")
    return out


def cmd_tensor(args) -> int:
    lat_a, lat_b = load_input(args.a), load_input(args.b)
    what = f"{args.kind} tensor {lat_a.name}⊗{lat_b.name}"
    if args.kind == "fraser":
        items = _bounded(iter_fraser(lat_a, lat_b), args.max_size, what)
    else:
        chu_a, chu_b = default_effects(lat_a), default_effects(lat_b)
        if args.kind == "minimal":
            items = _bounded(iter_minimal(chu_a, chu_b), args.max_size, what)
        else:
            items = _bounded(iter_maximal(chu_a, chu_b, regular=args.kind == "regular"), args.max_size, what)
    result = {"kind": args.kind, "a": lat_a.name, "b": lat_b.name, "count": len(items)}
    if args.list:
        if args.kind in ("minimal", "fraser"):
            order = {p: k for k, p in enumerate((x, y) for x in lat_a.elements for y in lat_b.elements)}
            result["elements"] = [format_pairset(sorted(s, key=order.__getitem__)) for s in items]
        else:
            result["elements"] = [t.to_dict() for t in items]
    _emit("tensor", result)
    _say(f"{what}: {len(items)} elements")
    return EXIT_OK


def cmd_order(args) -> int:
    lat_a, lat_b = load_input(args.a), load_input(args.b)
    left = _resolve_pairs(lat_a, lat_b, parse_pairset(args.left))
    right_text = args.right.strip()
    right = _resolve_pairs(lat_a, lat_b, parse_pairset(right_text) if right_text.startswith("[") else [parse_pair(right_text)])
    if args.kind == "minimal":
        verdict = all(minimal_leq_criterion(lat_a, lat_b, left, p) for p in right)
    else:
        verdict = all(compare_orders(lat_a, lat_b, left, p)["fraser"] for p in right)
    shown = format_pairset(right) if right_text.startswith("[") else format_pair(right[0])
    _emit("order", {"kind": args.kind, "left": format_pairset(left), "right": shown, "result": verdict})
    _say("true" if verdict else "false")
    return EXIT_OK


def cmd_witness(args) -> int:
    lat_a, lat_b = load_input(args.a), load_input(args.b)
    states = [s.strip() for s in args.states.split(",")]
    if len(states) != 4:
        raise SchemaError("--states needs four comma-separated states σ1,σ2,τ1,τ2")
    s1, s2 = (resolve_bottom_alias(lat_a, x) for x in states[:2])
    t1, t2 = (resolve_bottom_alias(lat_b, x) for x in states[2:])
    chu_a, chu_b = reduced_effects(lat_a), reduced_effects(lat_b)
    sigma = sigma_witness(chu_a, chu_b, s1, s2, t1, t2)
    maximal = is_maximal_member(sigma).holds
    regular = is_regular_member(sigma).holds if maximal else False
    minimal = is_minimal_member(sigma).holds
    generators = [
        omega(chu_a, chu_b, [(s1, t1), (s2, t2)]),
        omega(chu_a, chu_b, [(lat_a.star[s1], lat_b.bottom), (lat_a.bottom, lat_b.star[t1])]),
    ]
    result = {
        "states": [s1, s2, t1, t2],
        "maximal": maximal,
        "regular": regular,
        "minimal": minimal,
        "above_generators": all(table_leq(g, sigma) for g in generators),
        "table": sigma.to_dict(),
    }
    _emit("witness", result)
    _say(f"Σ: maximal={maximal} regular={regular} minimal={minimal}")
    return EXIT_OK if maximal and regular and not minimal else EXIT_FAILED


def cmd_verify(args) -> int:
    inputs = [load_input(x) for x in args.inputs]
    report = run_suite(args.suite, inputs)
    _emit("verify", report.to_dict())
    s = report.summary
    _say(f"suite {args.suite}: {s['pass']} passed, {s['fail']} failed, {s['skip']} skipped")
    for check in report.failures():
        _say(f"  FAIL {check.id}: {check.witness}")
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_export(args) -> int:
    lat = load_input(args.file)
    if args.format == "structured":
        from .documents import save_semilattice

        sys.stdout.write(save_semilattice(lat))
        return EXIT_OK
    if args.tensor:
        if not args.with_:
            raise SchemaError("--tensor needs --with B")
        other = load_input(args.with_)
        chu_a, chu_b = default_effects(lat), default_effects(other)
        if args.tensor != "minimal":
            raise SchemaError("dot export of tensor carriers supports --tensor minimal")
        sets = list(iter_minimal(chu_a, chu_b))
        order = product(chu_a, chu_b).pair_index
        labels = [format_pairset(sorted(s, key=order)) for s in sets]
        # reverse inclusion of closed sets is the table order
        text = carrier_dot(f"{lat.name}⊗{other.name}", labels, lambda i, j: sets[j] <= sets[i])
    elif args.effects:
        space = reduced_effects(lat) if args.effects == "reduced" else natural_effects(lat)
        text = effects_dot(space)
    else:
        text = lattice_dot(lat)
    sys.stdout.write(text)
    return EXIT_OK


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="chutensor",
        description="Semilattice Chu spaces and their tensor products.",
        epilog=f"Size caps can be overridden with {ENV_VAR}=classifier=N,minimal=N,maximal=N.",
    )
    parser.add_argument("--version", action="version", version=f"chutensor {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a semilattice document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="pure/simplex/distributive/star report")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("effects", help="list the natural (or reduced) effects")
    p.add_argument("file")
    p.add_argument("--reduced", action="store_true")
    p.set_defaults(func=cmd_effects)

    p = sub.add_parser("tensor", help="enumerate a tensor product")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("a")
    p.add_argument("b")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="only the number of elements (default)")
    mode.add_argument("--list", action="store_true", help="list every element")
    p.add_argument("--max-size", type=int, default=None, help="fail with exit 3 beyond N elements")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("order", help="decide ⊓ LEFT ⊑ RIGHT")
    p.add_argument("--kind", choices=("minimal", "fraser"), required=True)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--left", required=True, help="pair set such as [(s1,s1),(s2,s2)]")
    p.add_argument("--right", required=True, help="pair such as (bot,bot), or a pair set")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("witness", help="build the separating regular table")
    p.add_argument("which", choices=("sigma",))
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--states", required=True, help="σ1,σ2,τ1,τ2")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.add_argument("inputs", nargs="*")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="dot or structured export")
    p.add_argument("--format", choices=("dot", "structured"), required=True)
    p.add_argument("file")
    p.add_argument("--effects", choices=("natural", "reduced"), help="export an effect space instead")
    p.add_argument("--tensor", choices=("minimal",), help="export a tensor carrier instead")
    p.add_argument("--with", dest="with_", help="second factor for --tensor")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CapExceeded as exc:
        _say(f"cap exceeded: {exc}")
        return EXIT_CAP
    except ConsistencyError as exc:
        _say(f"internal consistency failure: {exc}")
        return EXIT_FAILED
    except ChuTensorError as exc:
        _say(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
