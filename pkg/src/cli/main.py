"""
Command line entry point.

Configuration is layered Config defaults → --config file → flags, the flags
winning. Exit codes: 0 success, 2 invalid input, 3 computation failure.
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional

from src.cli.commands import HANDLERS
from src.cli.config_loader import ExperimentConfig, config_load
from src.config import Config
from src.utils.errors import ComputationError, ValidationError, UsageError
from src.utils.output import FORMATS, write_table

# Configure logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILED = 3


def _common(parser: argparse.ArgumentParser, trials: bool = False) -> None:
    parser.add_argument("--config", help="key=value file; flags override its values")
    parser.add_argument("--format", choices=FORMATS, default=None, help="Output format (default: csv).")
    parser.add_argument("--out", default=None, help="Output path; '-' or unset writes to stdout.")
    parser.add_argument("--workers", type=int, default=None, help="Worker threads (default: WORKERS).")
    parser.add_argument("--seed", type=int, default=None, help="Master seed (fallback: ZSL_SEED).")
    if trials:
        parser.add_argument("--trials", type=int, default=None, help="Trials per grid point (default: 1).")


def _group_model(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=["density", "uniform", "binomial"], default=None)
    parser.add_argument("--m", type=int, nargs="+", default=None, help="Generator counts.")
    parser.add_argument("--param", "--rho", dest="param", nargs="+", default=None,
                        help="Density d, relator count N, or ρ (number or rule such as 'logm/(8*m^2)').")


def _graph_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--graph", default=None, help="Graph file in the 'n N / s t w' format.")
    parser.add_argument("--family", default=None, help="complete:n, bipartite:n, cycle:n, path:n or star:k")
    parser.add_argument("--p", type=float, nargs="+", default=None, help="Exponents (default: 2).")
    parser.add_argument("--restarts", type=int, default=None, help="Random restarts (default: POINCARE_RESTARTS).")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zsl",
        description="Spectral gaps, Poincaré constants and fixed point certificates for random groups.",
    )
    sub = parser.add_subparsers(dest="command")

    er = sub.add_parser("er-stats", help="Erdős–Rényi gap and degree statistics")
    _common(er, trials=True)
    er.add_argument("--m", type=int, nargs="+", default=None)
    er.add_argument("--rho", type=float, nargs="+", default=None)
    er.add_argument("--rho-rule", dest="rho_rule", nargs="+", default=None, help="e.g. '2*logm/m'")
    er.add_argument("--kind", choices=["er_gap", "er_degree"], default=None)
    er.add_argument("--eta", type=float, default=None)

    sample = sub.add_parser("group-sample", help="Sample one triangular presentation")
    _common(sample)
    _group_model(sample)
    sample.add_argument("--save", default=None, help="Also write the presentation file here.")

    link = sub.add_parser("link-spectrum", help="Link gaps of sampled presentations")
    _common(link, trials=True)
    _group_model(link)

    cert = sub.add_parser("certify", help="Certify fixed point properties from link gaps")
    _common(cert, trials=True)
    _group_model(cert)
    cert.add_argument("--families", default=None, help="e.g. 'lp,subquotient:alpha=2,isomorphic:d=1.5'")
    cert.add_argument("--K", type=float, default=None)
    cert.add_argument("--B", type=float, default=None)
    cert.add_argument("--eta", type=float, default=None)
    cert.add_argument("--presentation", default=None, help="Certify this presentation file instead.")

    poin = sub.add_parser("poincare", help="Estimate p-Poincaré constants")
    _common(poin)
    _graph_source(poin)
    poin.add_argument("--k", type=int, default=None, help="Target dimension (default: 1).")
    poin.add_argument("--bipartite", action="store_true", default=None)

    lap = sub.add_parser("plaplacian", help="Bounds on the first p-Laplacian eigenvalue")
    _common(lap)
    _graph_source(lap)

    fixed = sub.add_parser("fixedpoint-demo", help="Run the energy-contracting iteration")
    _common(fixed)
    fixed.add_argument("--complex", default=None, help="single_triangle, octahedron or cone:n")
    fixed.add_argument("--complex-file", dest="complex_file", default=None)
    fixed.add_argument("--action-file", dest="action_file", default=None)
    fixed.add_argument("--p", type=float, nargs="+", default=None)
    fixed.add_argument("--k", type=int, default=None)
    fixed.add_argument("--tol", type=float, default=None)
    fixed.add_argument("--max-iter", dest="max_iter", type=int, default=None)

    union = sub.add_parser("union-check", help="Check the perturbation and union gap bounds")
    _common(union, trials=True)
    union.add_argument("--graph1", default=None)
    union.add_argument("--graph2", default=None)
    union.add_argument("--n", type=int, default=None, help="Vertices of the random pairs (default: 8).")
    union.add_argument("--density", type=float, default=None)
    union.add_argument("--scale", type=float, default=None, help="Weight factor for the second graph.")

    parser.subparsers = sub.choices
    return parser


# applied after the config file, so only values that are still unset change
DEFAULTS = {
    "format": "csv",
    "trials": 1,
    "kind": "er_gap",
    "p": [2.0],
    "k": 1,
    "n": 8,
    "density": 1.0,
    "scale": 1.0,
}


def _convert(action: argparse.Action, raw: str):
    if action.nargs in ("+", "*"):
        convert = action.type or str
        return [convert(item.strip()) for item in raw.split(",") if item.strip()]
    if action.const is True:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    value = (action.type or str)(raw)
    if action.choices is not None and value not in action.choices:
        raise ValueError(f"{value!r} not in {list(action.choices)}")
    return value


def apply_file_options(ns: argparse.Namespace, parser: argparse.ArgumentParser,
                       options: Dict[str, str]) -> None:
    """Fill still-unset destinations from a config file"""
    actions = {action.dest: action for action in parser._actions}
    for key, raw in options.items():
        action = actions.get(key)
        if action is None or key in ("help", "config"):
            raise UsageError(f"config key {key!r} is not an option of {ns.command}", parser.format_help())
        if getattr(ns, key, None) is not None:
            continue
        try:
            setattr(ns, key, _convert(action, raw))
        except ValueError as e:
            raise UsageError(f"config key {key!r}: {e}", parser.format_help())


def resolve_namespace(ns: argparse.Namespace, parser: argparse.ArgumentParser) -> argparse.Namespace:
    if ns.config:
        loaded = config_load(ns.config)
        if loaded.command and loaded.command != ns.command:
            raise UsageError(f"config file is for {loaded.command!r}, not {ns.command!r}")
        apply_file_options(ns, parser, loaded.options)
    for key, value in DEFAULTS.items():
        if hasattr(ns, key) and getattr(ns, key) is None:
            setattr(ns, key, value)
    if ns.workers is None:
        ns.workers = Config.WORKERS
    if getattr(ns, "trials", 1) < 1:
        raise UsageError("--trials must be positive")
    return ns


def run(argv: Optional[List[str]] = None) -> int:
    """Parse, execute, write the table and print a one-line summary"""
    logging.basicConfig(
        level=Config.LOG_LEVEL,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INVALID
    if not ns.command:
        parser.print_help(sys.stderr)
        return EXIT_INVALID

    subparser = parser.subparsers[ns.command]
    try:
        ns = resolve_namespace(ns, subparser)
        result = HANDLERS[ns.command](ns)
        config = ExperimentConfig(
            command=ns.command,
            grid=result.grid,
            trials=getattr(ns, "trials", 1),
            seed=result.seed,
            out=ns.out,
            format=ns.format,
            workers=ns.workers,
            options=result.options,
        )
        write_table(result.frame, config.echo(), config.format, config.out)
    except ValidationError as e:
        logger.error(f"Invalid input: {e}")
        if isinstance(e, UsageError) and e.help_text:
            sys.stderr.write(e.help_text)
        return EXIT_INVALID
    except OSError as e:
        logger.error(f"Cannot access file: {e}")
        return EXIT_INVALID
    except ComputationError as e:
        logger.error(f"Computation failed: {e}")
        return EXIT_FAILED

    print(result.summary, file=sys.stderr)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
