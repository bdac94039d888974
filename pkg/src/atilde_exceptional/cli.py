"""Command-line interface for exceptional collections over type Ã quivers."""

import argparse
import itertools
import json
import logging
import sys
from pathlib import Path

from atilde_exceptional.annulus import (
    ClosedCurve,
    complete_fan,
    diagram_from_modules,
    diagram_violations,
    heart,
    phi,
)
from atilde_exceptional.config import get_config
from atilde_exceptional.errors import (
    AllSignsEqual,
    AtildeError,
    NegativeExt,
    NotComplete,
    OracleMismatch,
    ParseError,
    TooShort,
    WindowExhausted,
)
from atilde_exceptional.homext import (
    ModuleSet,
    build_algebraic,
    build_geometric,
    count_linear_extensions,
    exceptional_orderings,
    ext_poset,
    is_exceptional_collection,
    is_exceptional_set,
    linear_extensions,
)
from atilde_exceptional.json_export import (
    envelope,
    export_check,
    export_classification,
    export_ext,
    export_hom,
    export_homext,
    export_oracle,
    export_superquiver,
)
from atilde_exceptional.logging_config import log_duration, setup_logging
from atilde_exceptional.oracle import (
    euler_form,
    ext_dim,
    ext_dim_cokernel,
    field_for,
    field_from_config,
    hom_dim,
    realize,
)
from atilde_exceptional.quiver import Orientation, is_gentle, iso_with_relations
from atilde_exceptional.string_hom import dim_ext, dim_hom, ext_basis, graph_maps
from atilde_exceptional.strings import (
    enumerate_strings,
    is_exceptional,
    parse_string_module,
)
from atilde_exceptional.superquiver import super_of
from atilde_exceptional.svg import render_diagram
from atilde_exceptional.twist import (
    classify,
    enumerate_exceptional_sets,
    find_relation,
    relation_report,
    twist_set,
    up_to_full_twist,
)

# Module logger
logger = logging.getLogger("atilde_exceptional.cli")

# Largest collection whose orderings are listed in full
ORDERING_LIST_LIMIT = 8


# ============================================================================
# Collection files
# ============================================================================

def parse_collection(text: str, eps: Orientation) -> ModuleSet:
    """Parse a collection: one "(i,j;l)" per line with '#' comments, or JSON.

    JSON input is either a list of labels or an object with a "modules" list.
    """
    stripped = text.strip()
    if stripped.startswith(("[", "{")):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise ParseError(f"Invalid JSON collection: {e}") from e
        labels = data.get("modules", []) if isinstance(data, dict) else data
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            raise ParseError("JSON collection must list module labels as strings")
    else:
        labels = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                labels.append(line)
    if not labels:
        raise ParseError("Collection lists no modules")
    modules = [parse_string_module(label, eps) for label in labels]
    try:
        return ModuleSet.of(modules)
    except ValueError as e:
        raise ParseError(f"Invalid collection: {e}") from e


def read_collection(path: Path, eps: Orientation) -> ModuleSet:
    return parse_collection(path.read_text(), eps)


def format_collection(chi: ModuleSet) -> str:
    """Canonical collection file: sorted labels, one per line."""
    return "".join(f"{label}\n" for label in chi.labels)


# ============================================================================
# Output
# ============================================================================

def _emit(args, config, payload: dict, text: str) -> None:
    """Write JSON (with --json) or the text summary to --out or stdout."""
    body = json.dumps(payload, indent=config.json_indent) + "\n" if args.json else text
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(body)
        logger.info(f"Wrote {out}")
        print(str(out))
    else:
        sys.stdout.write(body)


def _field(args, config):
    if getattr(args, "field", None):
        return field_for(args.field, config.field_prime)
    return field_from_config(config)


# ============================================================================
# Subcommands
# ============================================================================

def cmd_hom(args, config) -> None:
    eps = Orientation.parse(args.quiver)
    m1, m2 = parse_string_module(args.m1, eps), parse_string_module(args.m2, eps)
    maps = graph_maps(m1, m2)
    lines = [f"dim Hom({m1.label}, {m2.label}) = {len(maps)}"]
    for g in maps:
        lines.append(
            f"  quotient {g.quotient.first}..{g.quotient.last} -> "
            f"submodule {g.submodule.first}..{g.submodule.last}"
            + (" (two-sided)" if g.two_sided else "")
        )
    _emit(args, config, export_hom(m1, m2, maps), "\n".join(lines) + "\n")


def cmd_ext(args, config) -> None:
    eps = Orientation.parse(args.quiver)
    m1, m2 = parse_string_module(args.m1, eps), parse_string_module(args.m2, eps)
    classes = ext_basis(m1, m2)
    lines = [f"dim Ext({m1.label}, {m2.label}) = {len(classes)}"]
    for c in classes:
        middle = " + ".join(m.label for m in c.middle)
        lines.append(f"  {c.kind}: middle term {middle}")
    _emit(args, config, export_ext(m1, m2, classes), "\n".join(lines) + "\n")


def _witness(chi: ModuleSet) -> list[str]:
    reasons = [f"{m.label} has self-extensions" for m in chi if not is_exceptional(m)]
    if not reasons:
        reasons = diagram_violations(diagram_from_modules(chi))
    return reasons or ["Hom and Ext between the modules form a cycle"]


def _fans(chi) -> dict[str, list[str]]:
    """Module labels of every complete fan, in clockwise order."""
    diagram = diagram_from_modules(chi)
    by_arc = {phi(m): m.label for m in chi}
    return {
        str(p): [by_arc[a] for a in complete_fan(diagram, p)]
        for p in range(1, chi.orientation.n + 1)
    }


def cmd_hequiver(args, config) -> None:
    eps = Orientation.parse(args.quiver)
    chi = read_collection(Path(args.collection), eps)
    if not is_exceptional_collection(chi):
        payload = export_homext(chi, None, False, witness=_witness(chi))
        text = "exceptional: false\n" + "".join(f"  {w}\n" for w in payload["witness"])
        _emit(args, config, payload, text)
        return

    if args.algebraic:
        q = build_algebraic(chi, _field(args, config)).quiver
    else:
        q = build_geometric(chi).quiver
    count = count_linear_extensions(q)
    poset = sorted([x, y] for x, y in ext_poset(q).edges)
    fans = _fans(chi)
    orderings = None
    if len(chi) <= ORDERING_LIST_LIMIT:
        by_label = {m.label: m for m in chi}
        orderings = [tuple(by_label[v] for v in order) for order in linear_extensions(q)]
    logger.info(f"{chi.labels}: {len(q.arrows)} arrows, {count} linear extensions")

    lines = ["exceptional: true"]
    for a in q.arrows:
        lines.append(f"  {a.name}: {a.source} -> {a.target} (degree {a.degree})")
    for x, y in sorted(q.relations):
        lines.append(f"  relation {q.arrows[x].name}.{q.arrows[y].name}")
    for p, fan in fans.items():
        lines.append(f"  fan at {p}: " + " ".join(fan))
    lines.append(f"linear extensions: {count}")
    payload = export_homext(chi, q, True, count, orderings, poset=poset, fans=fans)
    _emit(args, config, payload, "\n".join(lines) + "\n")


def cmd_orderings(args, config) -> None:
    eps = Orientation.parse(args.quiver)
    chi = read_collection(Path(args.collection), eps)
    found = exceptional_orderings(chi, config.ordering_cap)
    payload = envelope(
        "orderings",
        {"modules": chi.labels, "count": len(found), "orderings": [[m.label for m in s] for s in found]},
        orientation=str(eps),
    )
    lines = [f"{len(found)} exceptional orderings"]
    lines += ["  " + " ".join(m.label for m in s) for s in found]
    _emit(args, config, payload, "\n".join(lines) + "\n")


def _check_pairs(eps: Orientation, max_winding: int, field, other_field) -> int:
    strings = enumerate_strings(eps, max_winding)
    checked = 0
    for x, y in itertools.product(strings, repeat=2):
        hom = hom_dim(x, y, field)
        if hom != dim_hom(x, y):
            raise OracleMismatch(f"dim Hom({x.label}, {y.label}): graph maps {dim_hom(x, y)}, oracle {hom}")
        ext = ext_dim(x, y, field)
        if ext != dim_ext(x, y):
            raise OracleMismatch(f"dim Ext({x.label}, {y.label}): connections {dim_ext(x, y)}, oracle {ext}")
        cokernel = ext_dim_cokernel(x, y, field)
        if cokernel != ext:
            raise OracleMismatch(f"dim Ext({x.label}, {y.label}): Euler route {ext}, cokernel route {cokernel}")
        if other_field is not None and hom_dim(x, y, other_field) != hom:
            raise OracleMismatch(f"dim Hom({x.label}, {y.label}) depends on the field")
        checked += 1
    logger.debug(f"{eps}: {checked} pairs agree")
    return checked


def _check_sets(eps: Orientation, max_winding: int, config, results: dict) -> None:
    sets = enumerate_exceptional_sets(eps, max_winding)
    for chi in sets:
        geometric = build_geometric(chi).quiver
        if not is_exceptional_set(chi):
            raise OracleMismatch(f"{chi.labels} was enumerated but has a cyclic Hom-Ext relation")
        count = count_linear_extensions(geometric)
        brute = len(exceptional_orderings(chi, config.ordering_cap))
        if count != brute:
            raise OracleMismatch(f"{chi.labels}: {count} linear extensions, {brute} exceptional orderings")
        algebraic = build_algebraic(chi).quiver
        if iso_with_relations(geometric, algebraic) is None:
            raise OracleMismatch(f"{chi.labels}: geometric and algebraic Hom-Ext quivers differ")
        if not is_gentle(geometric):
            raise OracleMismatch(f"{chi.labels}: Hom-Ext quiver is not gentle")
    results["sets"] += len(sets)
    report = relation_report(classify(up_to_full_twist(sets), config.window))
    if report["unjustified"]:
        raise OracleMismatch(
            f"{eps}: isomorphic Hom-Ext quivers with no relation: {report['unjustified']}"
        )
    results["classes"][str(eps)] = report


def cmd_check(args, config) -> None:
    eps_list = [Orientation.parse(q) for q in args.quiver]
    max_winding = args.max_winding if args.max_winding is not None else config.max_winding
    field = _field(args, config)
    other = None
    if args.compare_fields:
        other = field_for("prime" if config.field_mode == "rational" else "rational", config.field_prime)
    results = {"max_winding": max_winding, "pairs": 0, "sets": 0, "classes": {}}
    for eps in eps_list:
        with log_duration(logger, f"check {eps}"):
            results["pairs"] += _check_pairs(eps, max_winding, field, other)
            if not args.skip_sets:
                _check_sets(eps, max_winding, config, results)
    logger.info(f"Checked {results['pairs']} pairs and {results['sets']} exceptional sets")
    text = f"ok: {results['pairs']} pairs, {results['sets']} exceptional sets\n"
    _emit(args, config, export_check(eps_list, results), text)


def cmd_classify(args, config) -> None:
    eps = Orientation.parse(args.quiver)
    max_winding = args.max_winding if args.max_winding is not None else config.max_winding
    window = args.window if args.window is not None else config.window
    sets = up_to_full_twist(enumerate_exceptional_sets(eps, max_winding))
    with log_duration(logger, f"classify {eps}"):
        classes = classify(sets, window)
    lines = [f"{len(sets)} exceptional sets up to full twist, {len(classes)} classes"]
    for k, cls in enumerate(classes, 1):
        lines.append(f"  class {k}: {' '.join(cls.representative.labels)} ({len(cls.members)} sets)")
    _emit(args, config, export_classification(eps, classes, max_winding, len(sets)), "\n".join(lines) + "\n")


def cmd_twist(args, config) -> None:
    eps = Orientation.parse(args.quiver)
    chi = read_collection(Path(args.collection), eps)
    if args.to:
        other = read_collection(Path(args.to), eps)
        window = args.window if args.window is not None else config.window
        relation = find_relation(chi, other, window)
        body = {"word": None, "swapped": None} if relation is None else relation.to_dict()
        payload = envelope(
            "twist", {"source": chi.labels, "target": other.labels, **body}, orientation=str(eps)
        )
        if relation is None:
            text = "not twist equivalent\n"
        elif relation.swapped:
            text = f"word: {relation.word} after swapping the boundaries\n"
        else:
            text = f"word: {relation.word}\n"
        _emit(args, config, payload, text)
        return

    twisted = twist_set(chi, tuple(args.word))
    body = format_collection(twisted)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(body)
        logger.info(f"Wrote {out}")
        print(str(out))
    else:
        sys.stdout.write(body)


def cmd_superquiver(args, config) -> None:
    eps = Orientation.parse(args.quiver)
    chi = read_collection(Path(args.collection), eps)
    s = super_of(chi, algebraic=args.algebraic)
    q = s.quiver
    lines = []
    for k, a in enumerate(q.arrows):
        mark = " frozen" if k in s.frozen else ""
        lines.append(f"{a.name}: {a.source} -> {a.target} (degree {a.degree}){mark}")
    _emit(args, config, export_superquiver(chi, s), "\n".join(lines) + "\n")


def cmd_oracle(args, config) -> None:
    eps = Orientation.parse(args.quiver)
    m1, m2 = parse_string_module(args.m1, eps), parse_string_module(args.m2, eps)
    field = _field(args, config)
    r1, r2 = realize(m1), realize(m2)
    values = {
        "dims": [list(r1.dims), list(r2.dims)],
        "hom": hom_dim(r1, r2, field),
        "euler_form": euler_form(r1.dims, r2.dims, r1.quiver),
        "ext": ext_dim(r1, r2, field),
        "ext_cokernel": ext_dim_cokernel(r1, r2, field),
        "field": str(field),
    }
    text = "".join(f"{k}: {v}\n" for k, v in values.items())
    _emit(args, config, export_oracle(m1, m2, values), text)


def cmd_render(args, config) -> None:
    eps = Orientation.parse(args.quiver)
    chi = read_collection(Path(args.collection), eps)
    diagram = diagram_from_modules(chi)
    highlight = frozenset()
    if args.heart:
        try:
            highlight = heart(diagram)
        except NotComplete as e:
            logger.warning(f"No heart highlighted: {e}")
    curves = tuple(ClosedCurve(eps, w) for w in args.band or ())
    svg = render_diagram(diagram, config.svg_size, highlight, curves)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(svg)
    logger.info(f"Rendered {len(diagram)} arcs to {out}")
    print(str(out))


COMMANDS = {
    "hom": cmd_hom,
    "ext": cmd_ext,
    "hequiver": cmd_hequiver,
    "orderings": cmd_orderings,
    "check": cmd_check,
    "classify": cmd_classify,
    "twist": cmd_twist,
    "superquiver": cmd_superquiver,
    "oracle": cmd_oracle,
    "render": cmd_render,
}


# ============================================================================
# Argument parsing
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exceptional collections, Hom-Ext quivers and twists over type Ã quivers."
    )
    parser.add_argument(
        "--config",
        default=None,
        help="Path to YAML configuration file (optional, defaults to .atilde-exceptional.yaml)"
    )
    parser.add_argument(
        "--log-level",
        default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Logging level (default: INFO)"
    )
    parser.add_argument(
        "--log-file",
        default=None,
        help="Optional log file path (logs to stderr if not specified)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(
        name: str, help_text: str, collection: bool = False, many: bool = False
    ) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if many:
            p.add_argument(
                "--quiver", action="append", required=True, help="Orientation vector; repeat for several"
            )
        else:
            p.add_argument("--quiver", required=True, help="Orientation vector, e.g. '++-'")
        p.add_argument("--json", action="store_true", help="Emit JSON instead of text")
        p.add_argument("--out", default=None, help="Write output to this file")
        if collection:
            p.add_argument("collection", help="Collection file: one (i,j;l) per line, or JSON")
        return p

    for name, help_text in (("hom", "Basis of Hom by graph maps"), ("ext", "Basis of Ext")):
        p = command(name, help_text)
        p.add_argument("m1", help="Source module, e.g. '(1,3;0)'")
        p.add_argument("m2", help="Target module")

    p = command("hequiver", "Hom-Ext quiver and exceptionality verdict", collection=True)
    p.add_argument("--algebraic", action="store_true", help="Compute the quiver with the matrix oracle")
    p.add_argument("--field", choices=["rational", "prime"], default=None)

    command("orderings", "Exceptional orderings by brute force", collection=True)

    p = command("check", "Cross-check combinatorics against the linear-algebra oracle", many=True)
    p.add_argument("--max-winding", type=int, default=None)
    p.add_argument("--field", choices=["rational", "prime"], default=None)
    p.add_argument("--compare-fields", action="store_true", help="Repeat Hom in the other field")
    p.add_argument("--skip-sets", action="store_true", help="Only run the pair sweep")

    p = command("classify", "Classify exceptional sets up to twists")
    p.add_argument("--max-winding", type=int, default=None)
    p.add_argument("--window", type=int, default=None, help="Twist search window in full twists")

    p = command("twist", "Apply T_L^a T_R^b to a collection", collection=True)
    p.add_argument("--word", type=int, nargs=2, default=(0, 0), metavar=("A", "B"))
    p.add_argument("--to", default=None, help="Search a twist word onto this collection instead")
    p.add_argument("--window", type=int, default=None)

    p = command("superquiver", "Superquiver with frozen arrows", collection=True)
    p.add_argument("--algebraic", action="store_true")

    p = command("oracle", "Dimensions from the matrix oracle")
    p.add_argument("m1")
    p.add_argument("m2")
    p.add_argument("--field", choices=["rational", "prime"], default=None)

    p = command("render", "Render the arc diagram as SVG", collection=True)
    p.add_argument("--heart", action="store_true", help="Highlight the heart")
    p.add_argument("--band", type=int, action="append", help="Also draw a closed curve with this winding")
    return parser


def main():
    """Run one subcommand; exit 2 on usage errors, 3 on oracle disagreement."""
    parser = build_parser()
    args = parser.parse_args()

    # Setup logging
    log_file = Path(args.log_file) if args.log_file else None
    setup_logging(level=args.log_level, log_file=log_file)

    # Load configuration (if specified via --config, or from default locations)
    config_file = Path(args.config) if args.config else None
    config = get_config(config_file)
    logger.debug(f"Using configuration (field: {config.field_mode}, window: {config.window})")

    if args.command == "render" and not args.out:
        parser.error("render requires --out")

    try:
        COMMANDS[args.command](args, config)
    except (ParseError, TooShort, AllSignsEqual) as e:
        logger.error(f"Invalid input: {e}")
        sys.exit(2)
    except (NegativeExt, OracleMismatch) as e:
        logger.error(f"Internal inconsistency: {e}")
        sys.exit(3)
    except WindowExhausted as e:
        logger.error(f"{e}; the Hom-Ext quivers are isomorphic, try a larger --window")
        sys.exit(1)
    except AtildeError as e:
        logger.error(str(e))
        sys.exit(1)
    except OSError as e:
        logger.error(f"I/O error: {e}")
        sys.exit(1)
