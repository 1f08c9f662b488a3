"""Command-line front end.

Exit status: 0 when every checked inequality holds (or is vacuous, or the
run is advisory), 1 when one is violated, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional

from . import config as cfg
from .estimates import GeometryParams, SurfaceSummary, bounds_for_genus, check_surface
from .mesh import MeshError, read_mesh, summarize
from .oracles import run_suite
from .structure import StructureError, validate_structure

log = logging.getLogger("cmcbounds")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("parameters (override the config file)")
    g.add_argument("--I", type=int, help="index bound (default 0; mesh-check: computed index)")
    g.add_argument("--r0", type=float, help="injectivity radius lower bound (default 1)")
    g.add_argument("--K0", type=float, help="sectional curvature bound (default 1)")
    g.add_argument("--H0", type=float, help="mean curvature bound (default 1)")
    g.add_argument("--Cs", type=float, help="stable curvature constant, >= 2 pi (default 2 pi)")
    g.add_argument("--A1", type=float, help="curvature threshold outside the regions, >= 1 (default 1)")
    g.add_argument("--c", type=float, help="lower bound for 3 H^2 + scalar/2 (enables the compact-case bounds)")
    p.add_argument("--config", type=Path, help=f"TOML config (default: ${cfg.ENV_VAR})")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cmcbounds", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="evaluate constants and bounds, optionally against an observed surface")
    _add_common(p)
    p.add_argument("--g", type=int, help="genus (required unless --summary is given)")
    p.add_argument("--summary", type=Path, help="JSON file with an observed surface summary")

    p = sub.add_parser("mesh-check", help="summarize a closed mesh and check the bounds on it")
    _add_common(p)
    p.add_argument("mesh", type=Path, help="OFF or OBJ file")
    p.add_argument("--refined", type=Path, help="finer mesh of the same surface for an index cross-check")

    p = sub.add_parser("structure-check", help="validate region data of the decomposition")
    _add_common(p)
    p.add_argument("structure", type=Path, help="TOML file with a [structure] table")

    p = sub.add_parser("verify", help="run the closed-form vs oracle suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--curves", type=int, default=50, help="number of random curves")
    p.add_argument("--format", choices=("table", "json"), default="json")
    p.add_argument("--out", type=Path)
    return parser


def _overrides(args) -> dict:
    return {k: getattr(args, k) for k in cfg.PARAM_KEYS}


def _config_doc(args, extra: Optional[Path] = None) -> dict:
    path = args.config or cfg.default_config_path()
    doc = cfg.load_config(path) if path else {}
    if extra is not None:
        other = cfg.load_config(extra)
        doc = {**doc, **other, "params": {**doc.get("params", {}), **other.get("params", {})}}
    return doc


def _emit(args, text: str) -> None:
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def _render(args, report) -> str:
    return report.to_json() + "\n" if args.format == "json" else report.to_table()


def cmd_bounds(args) -> int:
    params = cfg.params_from_dict(_config_doc(args).get("params", {}), _overrides(args))
    if args.summary is not None:
        try:
            data = json.loads(args.summary.read_text())
            summary = SurfaceSummary(**data)
        except (OSError, json.JSONDecodeError, TypeError) as exc:
            raise InputError(f"bad summary {args.summary}: {exc}") from None
        if args.g is not None and args.g != summary.genus:
            raise InputError(f"--g {args.g} disagrees with the summary genus {summary.genus}")
        report = check_surface(summary, params)
    else:
        if args.g is None:
            raise InputError("--g is required when no --summary is given")
        if args.g < 0:
            raise InputError("--g must be >= 0")
        report = bounds_for_genus(params, args.g)
    _emit(args, _render(args, report))
    return report.exit_code()


def cmd_mesh_check(args) -> int:
    doc = _config_doc(args)
    mesh = read_mesh(args.mesh)
    refined = read_mesh(args.refined) if args.refined else None
    result = summarize(mesh, refined)
    s = result.summary
    base = dict(doc.get("params", {}))
    overrides = _overrides(args)
    notes = []
    if overrides["I"] is None and "I" not in base:
        overrides["I"] = s.index
        notes.append(f"I set to the computed index {s.index}")
    if overrides["H0"] is None and "H0" not in base and s.H > GeometryParams().H0:
        overrides["H0"] = s.H
        notes.append(f"H0 raised to the observed mean curvature {s.H:.6g}")
    params = cfg.params_from_dict(base, overrides)
    report = check_surface(s, params, advisory=not result.cmc)
    report.diagnostics = dict(result.diagnostics)
    if notes:
        report.diagnostics["notes"] = notes
    text = _render(args, report)
    if args.format == "table":
        lines = [f"mesh {mesh.name}: {mesh.n_vertices} vertices, {mesh.n_faces} faces", *notes]
        if not result.cmc:
            lines.append("surface is not CMC: verdicts are advisory")
        text = "\n".join(lines) + "\n\n" + text
    _emit(args, text)
    return report.exit_code()


def cmd_structure_check(args) -> int:
    doc = _config_doc(args, extra=args.structure)
    if "structure" not in doc:
        raise InputError(f"{args.structure}: missing [structure] table")
    params = cfg.params_from_dict(doc.get("params", {}), _overrides(args))
    data = cfg.structure_from_dict(doc["structure"])
    report = validate_structure(data, params)
    _emit(args, json.dumps(report.to_dict(), indent=2) + "\n" if args.format == "json" else report.to_table())
    return report.exit_code()


def cmd_verify(args) -> int:
    reports = run_suite(seed=args.seed, n_curves=args.curves)
    failed = [r for r in reports if not r.passed]
    if args.format == "json":
        text = json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    else:
        rows = [f"{'PASS' if r.passed else 'FAIL'}  {r.case:<45} abs {r.abs_error:.2e}  rel {r.rel_error:.2e}  tol {r.tolerance:.0e}"
                for r in reports]
        text = "\n".join(rows) + f"\n{len(reports) - len(failed)}/{len(reports)} passed\n"
    _emit(args, text)
    return EXIT_VIOLATION if failed else EXIT_OK


COMMANDS = {
    "bounds": cmd_bounds,
    "mesh-check": cmd_mesh_check,
    "structure-check": cmd_structure_check,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (InputError, cfg.ConfigError, StructureError, MeshError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
