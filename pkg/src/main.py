"""
src/main.py

Command-line front end.

    spinhiggs <action> [--config FILE] [flags]

Actions: simulate, dims, check, spectrum.  Flags mirror the scenario
fields and override the same keys of a --config document; everything is
funnelled through parse_scenario, so flags and config files share one
validation path.

Exit status: 0 run complete / all checks pass, 1 validation error,
2 numerical failure (including failed checks).

Usage:
    python -m src.main dims --type A1 --genus 1 --marked 1
    python -m src.main spectrum --l 1 --J 1,1,1
    python -m src.main check --seed 7 --only elliptic,top
    python -m src.main simulate --model top --tau-im 1 --class TypeIII --t-end 2
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from src.config import LOG_LEVEL
from src.errors import SpinHiggsError, ValidationError
from src.execution.summary import print_summary
from src.pipeline import router
from src.pipeline.scenario import parse_scenario


# ── Flag parsing ──────────────────────────────────────────────────────────────

def _complex_json(text: str):
    """'2.5+0.5j' → [2.5, 0.5]; plain reals stay numbers."""
    try:
        value = complex(text.strip().replace(" ", ""))
    except ValueError as e:
        raise ValidationError(f"not a number: {text!r}", field="flags") from e
    return value.real if value.imag == 0 else [value.real, value.imag]


def _complex_list(text: str) -> list:
    return [_complex_json(part) for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinhiggs", description="Spin-extended integrable tops, "
                                     "Calogero–Moser and Gaudin models: simulate, count, check.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON scenario file")
    common.add_argument("--seed", type=int)
    common.add_argument("--out-dir", dest="out_dir")
    common.add_argument("--prefix")
    common.add_argument("--no-write", action="store_true", help="skip writing output files")

    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("--tau-re", type=float, dest="tau_re")
    curve.add_argument("--tau-im", type=float, dest="tau_im")
    curve.add_argument("--J", help='three comma-separated values, "curve" or "lax"')

    sub = parser.add_subparsers(dest="action", required=True)

    sim = sub.add_parser("simulate", parents=[common, curve], help="integrate one model")
    sim.add_argument("--model", choices=["top", "cm", "gaudin"])
    sim.add_argument("--class", dest="cls", choices=["ComplexV", "TypeIII", "TypeIV"])
    sim.add_argument("--variant", choices=["V", "III", "IV"])
    sim.add_argument("--marks", help="comma-separated marked points, e.g. 0,1,2.5+0.5j")
    sim.add_argument("--site", type=int)
    sim.add_argument("--hamiltonian", choices=["H1", "H2"])
    sim.add_argument("--initial", help='"random" or "random:<seed>"')
    sim.add_argument("--dt", type=float)
    sim.add_argument("--t-end", type=float, dest="t_end")
    sim.add_argument("--project-every", type=int, dest="project_every")
    sim.add_argument("--tol", type=float)

    dims = sub.add_parser("dims", parents=[common], help="dimension ledger and moduli counts")
    dims.add_argument("--type", dest="types", action="append", help="group type, e.g. A1; repeatable")
    dims.add_argument("--genus", type=int)
    dims.add_argument("--marked", type=int)

    check = sub.add_parser("check", parents=[common], help="run the invariant suites")
    check.add_argument("--only", help="comma-separated suite names")

    spec = sub.add_parser("spectrum", parents=[common, curve], help="quantum top spectrum")
    spec.add_argument("--l", type=float)
    return parser


def scenario_document(args: argparse.Namespace) -> dict:
    """The config document (if any) with every given flag laid over it."""
    doc: dict = {}
    if args.config is not None:
        try:
            raw = args.config.read_bytes()
        except OSError as e:
            raise ValidationError(f"cannot read {args.config}: {e}", field="config") from e
        try:
            doc = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            raise ValidationError(f"{args.config} is not a UTF-8 JSON document: {e}", field="$") from e
        if not isinstance(doc, dict):
            raise ValidationError("a scenario must be a JSON object", field="$")
    doc["action"] = args.action

    def put(path: str, value) -> None:
        if value is None:
            return
        *parents, leaf = path.split(".")
        node = doc
        for key in parents:
            node = node.setdefault(key, {})
        node[leaf] = value

    a = vars(args)
    put("seed", a.get("seed"))
    put("outputs.dir", a.get("out_dir"))
    put("outputs.prefix", a.get("prefix"))
    put("model", a.get("model"))
    put("class", a.get("cls"))
    if a.get("tau_im") is not None or a.get("tau_re") is not None:
        put("curve.tau_re", a.get("tau_re") or 0.0)
        put("curve.tau_im", a.get("tau_im"))
    if a.get("J") is not None:
        put("params.J", a["J"] if a["J"] in ("curve", "lax") else _complex_list(a["J"]))
    put("params.variant", a.get("variant"))
    if a.get("marks") is not None:
        put("params.marks", _complex_list(a["marks"]))
    put("params.site", a.get("site"))
    put("params.hamiltonian", a.get("hamiltonian"))
    put("params.types", a.get("types"))
    put("params.genus", a.get("genus"))
    put("params.marked", a.get("marked"))
    put("params.l", a.get("l"))
    put("initial", a.get("initial"))
    for key in ("dt", "t_end", "project_every", "tol"):
        put(f"integrator.{key}", a.get(key))
    if a.get("only"):
        put("only", [name.strip() for name in a["only"].split(",") if name.strip()])
    return doc


# ── Entry point ───────────────────────────────────────────────────────────────

def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=LOG_LEVEL.upper(), format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        scenario = parse_scenario(json.dumps(scenario_document(args)))
        report = router.dispatch(scenario, write=not args.no_write)
    except SpinHiggsError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"❌ could not write outputs: {e}", file=sys.stderr)
        return 2
    print_summary(report)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
