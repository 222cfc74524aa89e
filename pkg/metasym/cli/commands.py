"""Command-line dispatch.

Every command produces a ``VerificationReport`` printed as JSON on stdout.
Exit codes: 0 pass or diagnostic, 1 a gated check failed, 2 usage or input
error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Any, Callable, Sequence

from metasym import __version__
from metasym.chambers.complexes import coxeter_complex, flag_complex
from metasym.chambers.system import ChamberSystem
from metasym.core.errors import InputFormatError, InvalidMatrixError, MetasymError, UsageError
from metasym.core.logger import get_logger
from metasym.coxeter.group import CoxeterGroup, build_group
from metasym.geometry.axioms import check_generalized_ngon, check_metasymplectic
from metasym.geometry.embedding import EmbeddedQuadrangle, check_ov, classify_embedding
from metasym.geometry.fixtures import FIXTURES, find_fixture
from metasym.geometry.incidence import IncidenceGeometry
from metasym.geometry.persistence import load_geometry, save_geometry, save_node_link
from metasym.geometry.positions import (
    classify_point_hyperline,
    classify_point_pair,
    hyperline_intersection,
    metasymplectic_types,
)
from metasym.models.reports import CheckRecord, CommandRequest, VerificationReport, Verdict
from metasym.models.schema import CoxeterMatrix, format_word, parse_word
from metasym.parabolic.cosets import (
    double_coset,
    enumerate_double_cosets,
    load_claims,
    min_double_coset_rep,
    verify_lemma_reps,
)
from metasym.workflows.acceptance import CHECKS, check_building_block, run_checks
from metasym.workflows.structures import GEOMETRY_NAMES, c3_group, f4_group, load_group, named_geometry

logger = get_logger(__name__)

_PRESETS: dict[str, Callable[[], CoxeterMatrix]] = {
    "f4": CoxeterMatrix.f4,
    "c3": CoxeterMatrix.c3,
}

# Chamber models: geometry name -> Coxeter matrix of its flag complex.
_CHAMBER_MATRICES: dict[str, Callable[[], CoxeterMatrix]] = {
    "w2": lambda: CoxeterMatrix.dihedral(4),
    "pg2": lambda: CoxeterMatrix.dihedral(3),
    "pg3": lambda: CoxeterMatrix.dihedral(3),
    "pg4": lambda: CoxeterMatrix.dihedral(3),
    "sp6": CoxeterMatrix.c3,
    "octahedron": CoxeterMatrix.c3,
    "thinf4": CoxeterMatrix.f4,
}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def _ints(text: str) -> tuple[int, ...]:
    return parse_word(text)


def _names(text: str) -> list[str]:
    return [part for part in text.split(",") if part]


def _info(name: str, /, **summary: Any) -> list[CheckRecord]:
    return [CheckRecord(name=name, verdict=Verdict.DIAGNOSTIC, gated=False, summary=summary)]


def _gated(name: str, passed: bool, summary: dict, witnesses: list | None = None) -> list[CheckRecord]:
    return [
        CheckRecord(
            name=name,
            verdict=Verdict.PASS if passed else Verdict.FAIL,
            summary=summary,
            witnesses=witnesses or [],
        )
    ]


def _workspace(args: dict[str, Any]) -> Path | None:
    return Path(args["workspace"]) if args.get("workspace") else None


def _group(args: dict[str, Any]) -> CoxeterGroup:
    if args.get("matrix"):
        path = Path(args["matrix"])
        try:
            matrix = CoxeterMatrix.from_json(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise InputFormatError(f"cannot read file: {exc.strerror}", path) from exc
        except InvalidMatrixError as exc:
            raise InputFormatError(str(exc), path) from exc
        return build_group(matrix, cap=args.get("cap"))
    matrix = _PRESETS[args.get("preset") or "f4"]()
    if args.get("cap"):
        return build_group(matrix, cap=args["cap"])
    return load_group(matrix.to_json(), _workspace(args))


def _geometry(args: dict[str, Any]) -> IncidenceGeometry:
    if args.get("input"):
        return load_geometry(args["input"])
    return named_geometry(args.get("name") or "thinf4", _workspace(args))


def _chambers(args: dict[str, Any]) -> tuple[ChamberSystem, CoxeterGroup]:
    model = args.get("model") or "coxeter"
    workspace = _workspace(args)
    if model == "coxeter":
        group = _group(args)
        return coxeter_complex(group), group
    given = [flag for flag in ("matrix", "preset", "cap") if args.get(flag)]
    if given:
        raise UsageError(f"--{given[0]} applies only to --model coxeter, not --model {model}")
    group = load_group(_CHAMBER_MATRICES[model]().to_json(), workspace)
    return flag_complex(named_geometry(model, workspace)), group


# ---------------------------------------------------------------------------
# group
# ---------------------------------------------------------------------------

def _group_build(args: dict[str, Any]) -> list[CheckRecord]:
    group = _group(args)
    return _info(
        "group build",
        order=len(group),
        rank=group.rank,
        backend=group.backend,
        longest_length=group.longest_element().length,
        relation_failures=len(group.verify_relations()),
    )


def _group_normalform(args: dict[str, Any]) -> list[CheckRecord]:
    group = _group(args)
    word = args["word"]
    element = group.reduce(word)
    return _info(
        "group normalform",
        word=format_word(word),
        normal_form=element.word,
        length=element.length,
        reduced=element.length == len(word),
    )


def _group_longest(args: dict[str, Any]) -> list[CheckRecord]:
    longest = _group(args).longest_element()
    return _info("group longest", normal_form=longest.word, length=longest.length)


# ---------------------------------------------------------------------------
# cosets
# ---------------------------------------------------------------------------

def _cosets_double(args: dict[str, Any]) -> list[CheckRecord]:
    group = _group(args)
    left, right = args["left"], args["right"]
    if args.get("word") is not None:
        element = group.reduce(args["word"])
        rep = min_double_coset_rep(group, left, element, right)
        return _info(
            "cosets double",
            left=list(left),
            right=list(right),
            element=element.word,
            min_rep=rep.word,
            min_rep_length=rep.length,
            size=len(double_coset(group, left, element, right)),
        )
    records = enumerate_double_cosets(group, left, right)
    return _info(
        "cosets double",
        left=list(left),
        right=list(right),
        count=len(records),
        cosets=[{"min_rep": r.min_rep.word, "length": r.min_rep.length, "size": r.size} for r in records],
    )


def _cosets_verify_lemma(args: dict[str, Any]) -> list[CheckRecord]:
    claims = load_claims(args["claims"]) if args.get("claims") else None
    report = verify_lemma_reps(_group(args), claims)
    return _gated(
        "cosets verify-lemma",
        report.passed,
        {
            "claims": len(report.verdicts),
            "minimal": sum(v.is_min_rep for v in report.verdicts),
            "distinct_cosets": report.distinct_cosets,
        },
        [v.model_dump(mode="json") for v in report.verdicts],
    )


# ---------------------------------------------------------------------------
# chambers
# ---------------------------------------------------------------------------

def _chambers_distance(args: dict[str, Any]) -> list[CheckRecord]:
    chambers, group = _chambers(args)
    c, d = args["source"], args["target"]
    weyl = chambers.weyl_distance(group, c, d)
    return _info(
        "chambers distance",
        gallery_distance=chambers.gallery_distance(c, d),
        weyl_distance=weyl.word,
        weyl_length=weyl.length,
    )


def _chambers_project(args: dict[str, Any]) -> list[CheckRecord]:
    chambers, _ = _chambers(args)
    image = chambers.projection(chambers.residue(args["from_flag"]), chambers.residue(args["onto_flag"]))
    return _info("chambers project", projection=sorted(image), is_flag=chambers.is_flag(image))


def _chambers_convex(args: dict[str, Any]) -> list[CheckRecord]:
    chambers, _ = _chambers(args)
    witness = chambers.convexity_witness(args["elements"])
    return _info("chambers convex", convex=witness is None, witness=witness)


def _chambers_gallery(args: dict[str, Any]) -> list[CheckRecord]:
    chambers, group = _chambers(args)
    gallery = chambers.gallery(args["steps"])
    return _info(
        "chambers gallery",
        word=format_word(gallery.word),
        minimal=chambers.is_minimal_gallery(gallery),
        reduced=group.is_reduced(gallery.word),
    )


def _chambers_export(args: dict[str, Any]) -> list[CheckRecord]:
    chambers, _ = _chambers(args)
    text = chambers.to_panel_text()
    summary: dict[str, Any] = {"chambers": len(chambers), "panel_sizes": {
        str(t): sorted(sizes) for t, sizes in chambers.panel_sizes().items()
    }}
    if args.get("output"):
        path = Path(args["output"])
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        summary["output"] = str(path)
    else:
        summary["panels"] = text.splitlines()
    return _info("chambers export", **summary)


# ---------------------------------------------------------------------------
# geom
# ---------------------------------------------------------------------------

def _geom_build(args: dict[str, Any]) -> list[CheckRecord]:
    geom = named_geometry(args["geometry"], _workspace(args))
    summary: dict[str, Any] = {"geometry": geom.name, "counts": geom.counts(), "incidences": geom.edge_count}
    if args.get("output"):
        if args.get("format") == "json":
            save_node_link(geom, args["output"])
        else:
            save_geometry(geom, args["output"])
        summary["output"] = args["output"]
    return _info("geom build", **summary)


def _geom_check_ngon(args: dict[str, Any]) -> list[CheckRecord]:
    report = check_generalized_ngon(_geometry(args), args["n"], require_thick=args.get("thick", False))
    return _gated("geom check-ngon", report.passed, report.model_dump(exclude={"failures"}), report.failures)


def _geom_check_meta(args: dict[str, Any]) -> list[CheckRecord]:
    report = check_metasymplectic(_geometry(args), thin_mode=args.get("thin", False))
    return _gated(
        "geom check-meta",
        report.passed,
        {"thin_mode": report.thin_mode, "axioms": {a.name: a.passed for a in report.axioms}},
        [a.model_dump() for a in report.axioms if not a.passed],
    )


def _geom_classify(args: dict[str, Any]) -> list[CheckRecord]:
    geom = _geometry(args)
    point, _, _, hyperline = metasymplectic_types(geom)
    x, y = args["x"], args["y"]
    kinds = (geom.type_of(x), geom.type_of(y))
    if kinds == (point, point):
        verdict = classify_point_pair(geom, x, y)
    elif kinds == (point, hyperline):
        verdict = classify_point_hyperline(geom, x, y)
    elif kinds == (hyperline, point):
        verdict = classify_point_hyperline(geom, y, x)
    elif kinds == (hyperline, hyperline):
        verdict = hyperline_intersection(geom, x, y)
    else:
        raise UsageError(f"cannot classify a {kinds[0]} against a {kinds[1]}")
    return _info("geom classify", **verdict.model_dump(mode="json"))


def _embedded(args: dict[str, Any]) -> EmbeddedQuadrangle:
    if args.get("fixture"):
        return find_fixture(named_geometry("thinf4", _workspace(args)), args["fixture"])
    if not (args.get("points") or args.get("hyperlines")):
        raise UsageError("give --fixture, or --points and --hyperlines")
    return EmbeddedQuadrangle(
        ambient=_geometry(args),
        points=frozenset(args.get("points") or ()),
        hyperlines=frozenset(args.get("hyperlines") or ()),
    )


def _geom_ov(args: dict[str, Any]) -> list[CheckRecord]:
    report = check_ov(_embedded(args))
    return _gated(
        "geom ov",
        report.passed,
        {"checked_pairs": report.checked_pairs},
        [v.model_dump(mode="json") for v in report.violations],
    )


def _geom_embedding(args: dict[str, Any]) -> list[CheckRecord]:
    report = classify_embedding(_embedded(args))
    return _info("geom embedding", **report.model_dump(mode="json"))


def _geom_residue(args: dict[str, Any]) -> list[CheckRecord]:
    geom = _geometry(args)
    residue = geom.residue(args["flag"])
    summary: dict[str, Any] = {"types": list(residue.types), "counts": residue.counts()}
    if args.get("output"):
        save_geometry(residue, args["output"])
        summary["output"] = args["output"]
    return _info("geom residue", **summary)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verify(args: dict[str, Any]) -> list[CheckRecord]:
    check = args["check"]
    workspace = _workspace(args)
    if check == "all":
        return run_checks(CHECKS, workspace).details
    if check == "building-block" and args.get("model"):
        return [check_building_block(workspace, model=args["model"])]
    return [CHECKS[check](workspace)]


HANDLERS: dict[str, Callable[[dict[str, Any]], list[CheckRecord]]] = {
    "group build": _group_build,
    "group normalform": _group_normalform,
    "group longest": _group_longest,
    "cosets double": _cosets_double,
    "cosets verify-lemma": _cosets_verify_lemma,
    "chambers distance": _chambers_distance,
    "chambers project": _chambers_project,
    "chambers convex": _chambers_convex,
    "chambers gallery": _chambers_gallery,
    "chambers export": _chambers_export,
    "geom build": _geom_build,
    "geom check-ngon": _geom_check_ngon,
    "geom check-meta": _geom_check_meta,
    "geom classify": _geom_classify,
    "geom ov": _geom_ov,
    "geom embedding": _geom_embedding,
    "geom residue": _geom_residue,
    "verify": _verify,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_group_source(p: argparse.ArgumentParser) -> None:
    source = p.add_mutually_exclusive_group()
    source.add_argument("--matrix", metavar="FILE", help="Coxeter matrix as a JSON 2D array (0 = infinity).")
    source.add_argument("--preset", choices=sorted(_PRESETS), help="Named Coxeter matrix (default f4).")
    p.add_argument("--cap", type=int, help="Maximal group order to enumerate.")


def _add_geometry_source(p: argparse.ArgumentParser) -> None:
    source = p.add_mutually_exclusive_group()
    source.add_argument("--name", choices=GEOMETRY_NAMES, help="Shipped geometry (default thinf4).")
    source.add_argument("--input", metavar="FILE", help="Geometry text file.")


def _add_chamber_model(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--model",
        choices=("coxeter", *_CHAMBER_MATRICES),
        default="coxeter",
        help="Coxeter complex of --matrix/--preset, or the flag complex of a shipped geometry.",
    )
    _add_group_source(p)


def _global_options(nested: bool) -> argparse.ArgumentParser:
    # Nested copies must not reset values given before the subcommand.
    default = argparse.SUPPRESS if nested else None
    options = _Parser(add_help=False)
    options.add_argument(
        "--workspace", metavar="DIR", default=default, help="Cache directory (overrides METASYM_WORKSPACE_DIR)."
    )
    options.add_argument(
        "--summary",
        action="store_true",
        default=default if nested else False,
        help="Print a one-line-per-check summary after the JSON.",
    )
    return options


def build_parser() -> argparse.ArgumentParser:
    common = _global_options(nested=True)
    parser = _Parser(
        prog="metasym",
        description="Metasym — exhaustive verifier for Coxeter groups and F4 incidence geometry",
        parents=[_global_options(nested=False)],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    group = commands.add_parser("group", help="Enumerate a Coxeter group.").add_subparsers(dest="action", required=True)
    for action in ("build", "longest"):
        _add_group_source(group.add_parser(action, parents=[common]))
    p = group.add_parser("normalform", parents=[common])
    p.add_argument("--word", type=_ints, required=True, help="Comma-separated 1-based letters.")
    _add_group_source(p)

    cosets = commands.add_parser("cosets", help="Parabolic double cosets.").add_subparsers(dest="action", required=True)
    p = cosets.add_parser("double", parents=[common])
    p.add_argument("--left", type=_ints, default=(), help="Generator indices of W_I.")
    p.add_argument("--right", type=_ints, default=(), help="Generator indices of W_J.")
    p.add_argument("--word", type=_ints, help="Representative; omit to list the whole partition.")
    _add_group_source(p)
    p = cosets.add_parser("verify-lemma", parents=[common])
    p.add_argument(
        "--claims",
        metavar="FILE",
        help="JSON list of {left, word, right, expect_minimal}; default: shipped claims.",
    )
    _add_group_source(p)

    chambers = commands.add_parser("chambers", help="Chamber systems.").add_subparsers(dest="action", required=True)
    p = chambers.add_parser("distance", parents=[common])
    p.add_argument("--from", dest="source", type=int, required=True)
    p.add_argument("--to", dest="target", type=int, required=True)
    _add_chamber_model(p)
    p = chambers.add_parser("project", parents=[common])
    p.add_argument("--from-flag", type=_names, required=True)
    p.add_argument("--onto-flag", type=_names, required=True)
    _add_chamber_model(p)
    p = chambers.add_parser("convex", parents=[common])
    p.add_argument("--elements", type=_names, required=True)
    _add_chamber_model(p)
    p = chambers.add_parser("gallery", parents=[common])
    p.add_argument("--steps", type=_ints, required=True, help="Comma-separated chamber ids.")
    _add_chamber_model(p)
    p = chambers.add_parser("export", parents=[common])
    p.add_argument("--output", metavar="FILE")
    _add_chamber_model(p)

    geom = commands.add_parser("geom", help="Incidence geometries.").add_subparsers(dest="action", required=True)
    p = geom.add_parser("build", parents=[common])
    p.add_argument("geometry", choices=GEOMETRY_NAMES)
    p.add_argument("--output", metavar="FILE")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p = geom.add_parser("check-ngon", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--thick", action="store_true")
    _add_geometry_source(p)
    p = geom.add_parser("check-meta", parents=[common])
    p.add_argument("--thin", action="store_true", help="Ordinary polygons instead of thick ones.")
    _add_geometry_source(p)
    p = geom.add_parser("classify", parents=[common])
    p.add_argument("x")
    p.add_argument("y")
    _add_geometry_source(p)
    for action in ("ov", "embedding"):
        p = geom.add_parser(action, parents=[common])
        p.add_argument("--fixture", choices=sorted(FIXTURES))
        p.add_argument("--points", type=_names)
        p.add_argument("--hyperlines", type=_names)
        _add_geometry_source(p)
    p = geom.add_parser("residue", parents=[common])
    p.add_argument("--flag", type=_names, required=True)
    p.add_argument("--output", metavar="FILE")
    _add_geometry_source(p)

    p = commands.add_parser("verify", parents=[common], help="Run acceptance checks.")
    p.add_argument("check", choices=(*CHECKS, "all"))
    p.add_argument("--model", choices=("sp6", "octahedron"), help="Restrict building-block to one model.")
    return parser


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------

def execute(req: CommandRequest) -> VerificationReport:
    handler = HANDLERS.get(req.subcommand)
    if handler is None:
        raise UsageError(f"unknown subcommand {req.subcommand!r}")
    started = time.perf_counter()
    logger.info("Running %s", req.subcommand)
    records = handler(req.arguments)
    return VerificationReport.from_checks(req.subcommand, records, wall_time=time.perf_counter() - started)


def parse_request(argv: Sequence[str] | None = None) -> CommandRequest:
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    action = args.pop("action", None)
    subcommand = f"{command} {action}" if action else command
    inputs = [args[k] for k in ("matrix", "input", "claims") if args.get(k)]
    return CommandRequest(subcommand=subcommand, arguments=args, input_paths=inputs)


def _summary_lines(report: VerificationReport) -> list[str]:
    lines = [f"{report.command}: {report.verdict.value} ({report.wall_time:.2f}s)"]
    for record in report.details:
        gate = "" if record.gated else " [info]"
        lines.append(f"  {record.name}: {record.verdict.value}{gate}")
    return lines


def main(argv: Sequence[str] | None = None) -> int:
    try:
        req = parse_request(argv)
        report = execute(req)
    except MetasymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.model_dump_json(indent=2))
    if req.arguments.get("summary"):
        print("\n".join(_summary_lines(report)))
    return report.exit_code
