"""
Command-line entry point for the aesthetica curve toolkit.

Usage:
    python cli.py generate --family esa --sign plus --xi 1 --range 0.5:4 --n 1000 --out spiral.csv
    python cli.py check-esa spiral.csv --eps 0.05:0.5:10 --group affine --report r.json
    python cli.py lcg logspiral.csv --out lcg.csv --fit
    python cli.py plot --reference --deform --out figure.svg

Exit status: 0 on success, 1 on domain errors (error JSON on stderr),
2 on I/O and parse errors.
"""
import argparse
import logging
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from pydantic import ValidationError
from tabulate import tabulate

from agents.coordinator import CoordinatorAgent
from agents.curve_io import canonical_json
from communication.message_bus import MessageBus
from config import reload_config
from models.affine import AffineMap2
from models.curve import CurvatureRoute, Geometry, ParamKind
from models.errors import CurveFormatError, CurveGeometryError
from models.family import FAMILY_TYPES, FamilySpec, family_from_dict
from models.reports import AffineGroup
from models.run_config import Command, RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2

# CLI flag names per family (dest names match the dataclass fields)
FAMILY_FIELDS = {
    "logspiral": ("a", "b"),
    "lac": ("alpha", "xi", "eta"),
    "quadratic": ("kappa_sa", "aspect"),
    "esa": ("sign", "xi", "eta"),
    "power": ("alpha",),
    "log": (),
    "xlogx": (),
}

REPARAM_KINDS = {
    "arclength": ParamKind.ARC_LENGTH,
    "turning": ParamKind.TURNING_ANGLE,
    "equiaffine": ParamKind.EQUIAFFINE,
}

DEFAULT_EPS = "0.05:0.5:10"

# Values such as -1:1 or -0.5,0,... that argparse would otherwise read as flags
NEGATIVE_VALUE = re.compile(r"^-\.?\d")


# =============================================================================
# ARGUMENT TYPES
# =============================================================================

def attach_negative_values(argv: Sequence[str]) -> List[str]:
    """Rewrite '--opt -1:1' as '--opt=-1:1'."""
    argv = list(argv)
    out: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if (token.startswith("--") and "=" not in token and i + 1 < len(argv)
                and NEGATIVE_VALUE.match(argv[i + 1])):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            out.append(token)
            i += 1
    return out


def parse_range(text: str) -> tuple:
    """'lo:hi' → (lo, hi)."""
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"range must look like lo:hi, got '{text}'")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"range bounds must be numbers, got '{text}'")


def parse_grid(text: str) -> List[float]:
    """'start:stop:count' → count evenly spaced values."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must look like start:stop:count, got '{text}'")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid '{text}'")
    if count < 1:
        raise argparse.ArgumentTypeError("grid count must be positive")
    return np.linspace(start, stop, count).tolist()


def parse_affine(text: str) -> AffineMap2:
    """'a,b,c,d,e,f' → [[a, b, e], [c, d, f]]."""
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"affine map must be six numbers, got '{text}'")
    if len(values) != 6:
        raise argparse.ArgumentTypeError(f"affine map must be six numbers, got {len(values)}")
    return AffineMap2.from_flat(values)


# =============================================================================
# PARSER
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="Suppress agent console output")

    parser = argparse.ArgumentParser(
        prog="aesthetica",
        description="Planar curves in Euclidean, similarity and equiaffine geometry",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", parents=[common], help="Sample a curve family")
    gen.add_argument("--family", required=True, choices=sorted(FAMILY_TYPES))
    gen.add_argument("--range", dest="range", required=True, type=parse_range, help="lo:hi")
    gen.add_argument("--n", type=int, default=1000)
    gen.add_argument("--a", type=float)
    gen.add_argument("--b", type=float)
    gen.add_argument("--alpha", type=float)
    gen.add_argument("--xi", type=float)
    gen.add_argument("--eta", type=float)
    gen.add_argument("--sign", choices=["plus", "minus"])
    gen.add_argument("--kappa-sa", dest="kappa_sa", type=float)
    gen.add_argument("--aspect", type=float)
    gen.add_argument("--msa", action="store_true", help="Sample a LAC in its MSA parameter")
    gen.add_argument("--esa-k", dest="esa_k", type=float, help="Resample in t with u = exp(k t + l)")
    gen.add_argument("--esa-l", dest="esa_l", type=float, default=0.0)
    gen.add_argument("--out", dest="output", required=True, type=Path)

    analyze = sub.add_parser("analyze", parents=[common], help="Curvature profile or reparametrization")
    analyze.add_argument("input", type=Path)
    analyze.add_argument("--geometry", choices=[g.value.lower() for g in Geometry], default="equiaffine")
    analyze.add_argument("--route", choices=[r.value for r in CurvatureRoute], default="equiaffine")
    analyze.add_argument("--reparam", choices=sorted(REPARAM_KINDS))
    analyze.add_argument("--samples", type=int)
    analyze.add_argument("--base", type=float, default=0.0)
    analyze.add_argument("--out", dest="output", required=True, type=Path)

    esa = sub.add_parser("check-esa", parents=[common], help="Extendable self-affinity test")
    esa.add_argument("input", type=Path)
    esa.add_argument("--eps", type=parse_grid, default=parse_grid(DEFAULT_EPS), help="start:stop:count")
    esa.add_argument("--group", choices=[g.value for g in AffineGroup], default="affine")
    esa.add_argument("--esa-k", dest="esa_k", type=float)
    esa.add_argument("--esa-l", dest="esa_l", type=float, default=0.0)
    esa.add_argument("--report", "--out", dest="output", required=True, type=Path)

    msa = sub.add_parser("check-msa", parents=[common], help="Miura self-affinity test")
    msa.add_argument("input", type=Path)
    msa.add_argument("--alpha", type=float)
    msa.add_argument("--eps", type=parse_grid, default=parse_grid(DEFAULT_EPS), help="start:stop:count")
    msa.add_argument("--theta", action="store_true", help="Also test the turning-angle rate")
    msa.add_argument("--report", "--out", dest="output", required=True, type=Path)

    lcg = sub.add_parser("lcg", parents=[common], help="Logarithmic curvature graph")
    lcg.add_argument("input", type=Path)
    lcg.add_argument("--fit", action="store_true")
    lcg.add_argument("--out", dest="output", required=True, type=Path)

    classify = sub.add_parser("classify", parents=[common], help="Assign one of the five ESA classes")
    classify.add_argument("input", type=Path)
    classify.add_argument("--route", choices=[r.value for r in CurvatureRoute], default="equiaffine")
    classify.add_argument("--no-robust", dest="robust", action="store_false",
                          help="Fail instead of falling back to the point fit")
    classify.add_argument("--report", "--out", dest="output", required=True, type=Path)

    plot = sub.add_parser("plot", parents=[common], help="Render curves as SVG")
    plot.add_argument("inputs", nargs="*", type=Path)
    plot.add_argument("--reference", action="store_true", help="Draw the four reference families")
    plot.add_argument("--deform", action="store_true", help="Apply an affine map to each reference curve")
    plot.add_argument("--affine", type=parse_affine, help="a,b,c,d,e,f applied to every curve")
    plot.add_argument("--out", dest="output", required=True, type=Path)

    return parser


# =============================================================================
# RUN CONFIG
# =============================================================================

def _family_spec(args: argparse.Namespace) -> FamilySpec:
    data: Dict[str, Any] = {"family": args.family}
    for name in FAMILY_FIELDS[args.family]:
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    return FamilySpec(family_from_dict(data), args.range, args.n)


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Translate parsed arguments into a validated RunConfig."""
    command = Command.from_cli(args.command)
    options: Dict[str, Any] = {}
    family = None
    input_path: Optional[Path] = getattr(args, "input", None)

    if command == Command.GENERATE:
        family = _family_spec(args)
        options = {"msa": args.msa, "esa_k": args.esa_k, "esa_l": args.esa_l}
    elif command == Command.ANALYZE:
        options = {
            "geometry": Geometry[args.geometry.upper()],
            "route": CurvatureRoute(args.route),
            "reparam": REPARAM_KINDS.get(args.reparam) if args.reparam else None,
            "samples": args.samples,
            "base": args.base,
        }
    elif command == Command.CHECK_ESA:
        options = {"eps": args.eps, "group": AffineGroup(args.group), "esa_k": args.esa_k, "esa_l": args.esa_l}
    elif command == Command.CHECK_MSA:
        options = {"eps": args.eps, "alpha": args.alpha, "theta": args.theta}
    elif command == Command.LCG:
        options = {"fit": args.fit}
    elif command == Command.CLASSIFY:
        options = {"route": CurvatureRoute(args.route), "robust": args.robust}
    elif command == Command.PLOT:
        inputs = list(args.inputs)
        input_path = inputs[0] if inputs else None
        options = {
            "reference": args.reference,
            "deform": args.deform,
            "affine": args.affine,
            "extra_inputs": inputs[1:],
        }

    return RunConfig(
        command=command,
        input_path=input_path,
        output_path=args.output,
        family=family,
        options=options,
    )


# =============================================================================
# OUTPUT
# =============================================================================

def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (list, tuple)):
        return canonical_json(value)
    return str(value)


def print_summary(results: Dict[str, Any]) -> None:
    rows = [[key, _cell(value)] for key, value in results.get("summary", {}).items()]
    rows += [["output", path] for path in results.get("outputs", [])]
    rows.append(["elapsed", f"{results.get('elapsed_seconds', 0.0):.3f}s"])
    print(f"\n{results.get('command', '')}")
    print(tabulate(rows, headers=["Field", "Value"], tablefmt="simple"))


def _fail(payload: Dict[str, Any], status: int) -> int:
    print(canonical_json(payload), file=sys.stderr)
    return status


# =============================================================================
# MAIN
# =============================================================================

def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(attach_negative_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_IO

    app_config = reload_config()
    bus = MessageBus(verbose=not args.quiet)

    try:
        run_config = build_run_config(args)
        coordinator = CoordinatorAgent(bus, log_dir=app_config.log_dir)
        results = coordinator.execute(run_config)
    except CurveGeometryError as e:
        return _fail(e.to_dict(), EXIT_DOMAIN)
    except ValidationError as e:
        return _fail({"error": "InvalidRunConfig", "message": str(e), "details": {"errors": e.error_count()}},
                     EXIT_IO)
    except (CurveFormatError, OSError) as e:
        return _fail({"error": type(e).__name__, "message": str(e), "details": {}}, EXIT_IO)
    except Exception as e:
        logger.exception("Unexpected failure")
        return _fail({"error": "UnexpectedError", "message": str(e), "details": {"type": type(e).__name__}},
                     EXIT_DOMAIN)

    if not args.quiet:
        bus.print_summary()
        print_summary(results)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
