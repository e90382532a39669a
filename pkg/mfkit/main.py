"""
Main entry point for mfkit.

Command-line front end over the library: catalog verification,
classification, equivalence tests, Groebner bases, Fitting ideals,
completion of factorizations and catalog lookups. Reports go to stdout (or
``--output``) as JSON or canonical text; logs go to stderr.
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from mfkit import catalog
from mfkit import __version__
from mfkit.catalog import (
    AlphaParams,
    EtaParams,
    RawCaseParams,
    ThetaParams,
    TwoGenParams,
    complete_factorization,
    make_entry,
)
from mfkit.config import (
    Config,
    ConfigurationError,
    RunConfig,
    load_config,
    validate_config,
    validate_run_config,
)
from mfkit.constants import (
    EXIT_INPUT_ERROR,
    EXIT_NEGATIVE,
    EXIT_OK,
    LOG_LEVELS,
    MONOMIAL_ORDERS,
)
from mfkit.equiv import ClassificationError, classify, decide_equiv, verify_witness
from mfkit.groebner import Ideal, buchberger
from mfkit.logger import get_logger, setup_logger
from mfkit.matpoly import MatrixFactorizationError, fitting_ideal
from mfkit.models import EquivProblem, param_text
from mfkit.utils import (
    matrix_to_dict,
    parse_params,
    parse_scalar,
    read_matrix,
    read_linear_form,
    read_polys,
    read_witness,
    to_json,
    write_output,
)

FAMILIES = ("phi", "psi", "alpha", "beta", "eta", "theta", "raw")
COMPLETION_FORMS = ("alpha", "beta", "gamma", "delta")


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--config", "-c", type=Path, default=default,
                        help="Path to a YAML file with logging/groebner/classify defaults")
    parser.add_argument("--log-level", "-l", type=str.upper, choices=LOG_LEVELS, default=default,
                        help="Override logging level")
    parser.add_argument("--log-file", type=Path, default=default,
                        help="Also log to this file (rotated)")
    parser.add_argument("--output", "-o", type=Path, default=default,
                        help="Write the report to this file instead of stdout")


def _add_order_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--order", choices=MONOMIAL_ORDERS, default=None,
                        help="Monomial order (default from config, grevlex)")


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser.

    Global flags are accepted both before and after the subcommand.
    """
    parser = argparse.ArgumentParser(
        prog="mfkit",
        description="mfkit - matrix factorizations of Y1^3+Y2^3+Y3^3+Y4^3 "
        "and their rank-one MCM modules",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  mfkit verify-catalog
  mfkit classify --generators 3
  mfkit catalog --family phi --params i=2,j=3,a=-1,b=-1 --matrix -o phi23.json
  mfkit fitting phi23.json --t 1
  mfkit equiv x.json y.json
  mfkit equiv at.json b.json --witness w.json --relations rel.txt
  mfkit gb ideal.txt --vars Y1,Y2
  mfkit complete a.txt b.txt c.txt d.txt
        """,
    )
    _add_global_flags(parser, suppress=False)
    parser.add_argument("--version", "-v", action="version", version=f"mfkit v{__version__}")

    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    sub.add_parser("verify-catalog", parents=[common],
                   help="Check every catalog factorization, rank and Fitting formula")

    p = sub.add_parser("classify", parents=[common], help="Count isomorphism classes")
    p.add_argument("--generators", choices=("2", "3", "all"), default="all")
    p.add_argument("--exhaustive", action="store_true",
                   help="Decide every pairing instead of auditing the parameter rules")
    p.add_argument("--no-fast-rules", dest="fast_rules", action="store_false",
                   help="Decide all pairs without the proven parameter rules")
    p.add_argument("--jobs", "-j", type=int, default=None, help="Worker processes")
    p.add_argument("--audit-sample", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("equiv", parents=[common], help="Decide Coker X ~ Coker Y")
    p.add_argument("x", type=Path, help="Matrix JSON for X")
    p.add_argument("y", type=Path, help="Matrix JSON for Y")
    p.add_argument("--witness", type=Path, default=None, help="Witness JSON with U and V")
    p.add_argument("--relations", type=Path, default=None,
                   help="Relation ideal for the witness scalars, one polynomial per line")
    _add_order_flag(p)

    p = sub.add_parser("gb", parents=[common], help="Reduced Groebner basis of an ideal file")
    p.add_argument("ideal", type=Path, help="One polynomial per line")
    p.add_argument("--vars", type=str, default=None,
                   help="Comma separated variable order (default: natural sort of names used)")
    _add_order_flag(p)

    p = sub.add_parser("fitting", parents=[common], help="Reduced basis of a Fitting ideal")
    p.add_argument("matrix", type=Path, help="Matrix JSON")
    p.add_argument("--t", type=int, default=1, help="Fitting index (default: 1)")
    _add_order_flag(p)

    p = sub.add_parser("complete", parents=[common],
                       help="Complete [[0,alpha,beta],[gamma,*,*],[delta,*,*]] to det = f4")
    for name in COMPLETION_FORMS:
        p.add_argument(name, type=Path, help=f"File holding the linear form {name} in Y1..Y4")
    p.add_argument("--variant", type=int, default=0,
                   help="0 for the particular solution, k >= 1 for another completion")

    p = sub.add_parser("catalog", parents=[common], help="Show or list catalog entries")
    p.add_argument("--family", "-f", choices=FAMILIES, required=True)
    p.add_argument("--params", type=str, default=None,
                   help="name=value pairs, e.g. i=2,j=3,a=-1,b=-e; omit to list the family")
    p.add_argument("--case", choices=catalog.RAW_CASES, default=None,
                   help="Case matrix for the raw family")
    p.add_argument("--matrix", action="store_true",
                   help="Print only the displayed matrix as matrix JSON")
    return parser


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def make_run_config(args: argparse.Namespace, config: Config) -> RunConfig:
    """Merge flags over file defaults."""
    inputs = [getattr(args, k) for k in ("x", "y", "witness", "relations", "ideal", "matrix")
              + COMPLETION_FORMS
              if isinstance(getattr(args, k, None), Path)]
    jobs = getattr(args, "jobs", None)
    return RunConfig(
        command=args.command,
        inputs=inputs,
        order=getattr(args, "order", None) or config.groebner.order,
        exhaustive=getattr(args, "exhaustive", False),
        jobs=config.classify.jobs if jobs is None else jobs,
        output=getattr(args, "output", None),
        generators=getattr(args, "generators", "all"),
        t=getattr(args, "t", 1),
    )


# Commands


def cmd_verify_catalog(args: argparse.Namespace, run: RunConfig, config: Config) -> int:
    logger = get_logger("cli")
    entries = catalog.enumerate_all()
    logger.info(f"Verifying {len(entries)} catalog entries")
    results = catalog.verify_entries(entries)
    failed = [r for r in results if not r.passed]
    report = {
        "checked": len(results),
        "failed": len(failed),
        "checks": [r.to_dict() for r in results],
    }
    write_output(to_json(report), run.output)
    return EXIT_NEGATIVE if failed else EXIT_OK


def cmd_classify(args: argparse.Namespace, run: RunConfig, config: Config) -> int:
    entries = []
    if run.generators in ("2", "all"):
        entries += catalog.enumerate_two_gen()
    if run.generators in ("3", "all"):
        entries += catalog.enumerate_M3() + catalog.enumerate_N3()
    audit_sample = config.classify.audit_sample if args.audit_sample is None else args.audit_sample
    seed = config.classify.seed if args.seed is None else args.seed
    report = classify(
        entries,
        fast_rules=args.fast_rules,
        exhaustive=run.exhaustive,
        jobs=run.jobs,
        audit_sample=audit_sample,
        seed=seed,
    )
    write_output(to_json(report.to_dict()), run.output)
    return EXIT_OK


def cmd_equiv(args: argparse.Namespace, run: RunConfig, config: Config) -> int:
    problem = EquivProblem(read_matrix(args.x), read_matrix(args.y))
    if args.witness is None:
        if args.relations is not None:
            raise ConfigurationError("--relations needs --witness")
        verdict = decide_equiv(
            problem.X, problem.Y, run.order, prereduce_linear=config.groebner.prereduce_linear
        )
        write_output(to_json(verdict.to_dict()), run.output)
        return EXIT_OK if verdict.equivalent else EXIT_NEGATIVE

    U, V = read_witness(args.witness)
    if args.relations is not None:
        table, polys = read_polys(args.relations)
        problem.relations = Ideal(polys, run.order, table)
    valid = verify_witness(problem.X, problem.Y, U, V, problem.relations)
    write_output(to_json({"witness": str(args.witness), "valid": valid}), run.output)
    return EXIT_OK if valid else EXIT_NEGATIVE


def cmd_gb(args: argparse.Namespace, run: RunConfig, config: Config) -> int:
    names = [n.strip() for n in args.vars.split(",") if n.strip()] if args.vars else None
    table, polys = read_polys(args.ideal, names)
    gb = buchberger(Ideal(polys, run.order, table), config.groebner.prereduce_linear)
    write_output("\n".join(gb.to_lines()) if len(gb) else "0", run.output)
    return EXIT_OK


def cmd_fitting(args: argparse.Namespace, run: RunConfig, config: Config) -> int:
    A = read_matrix(args.matrix)
    gb = buchberger(fitting_ideal(A, run.t, run.order), config.groebner.prereduce_linear)
    write_output("\n".join(gb.to_lines()) if len(gb) else "0", run.output)
    return EXIT_OK


def cmd_complete(args: argparse.Namespace, run: RunConfig, config: Config) -> int:
    forms = [read_linear_form(getattr(args, k)) for k in COMPLETION_FORMS]
    result = complete_factorization(*forms, variant=args.variant)
    write_output(to_json(matrix_to_dict(result, run.order)), run.output)
    return EXIT_OK


def _family_params(family: str, values: Dict[str, str], case: Optional[str]):
    scalars = {k: parse_scalar(v) for k, v in values.items() if k not in ("i", "j")}
    try:
        if family in ("phi", "psi"):
            return TwoGenParams(int(values.get("i", "")), int(values.get("j", "")), **scalars)
        if family in ("alpha", "beta"):
            return AlphaParams(**scalars)
        if family == "eta":
            return EtaParams(**scalars)
        if family == "theta":
            return ThetaParams(**scalars)
        if case is None:
            raise ConfigurationError("The raw family needs --case")
        return RawCaseParams(case, **scalars)
    except TypeError as e:
        raise ConfigurationError(f"Invalid parameters for {family}: {e}")


_BUILDERS: Dict[str, Callable] = {
    "phi": catalog.phi_ij,
    "psi": catalog.psi_ij,
    "alpha": catalog.alpha,
    "beta": catalog.beta,
    "eta": catalog.eta,
    "theta": catalog.theta,
    "raw": catalog.raw_case,
}


def cmd_catalog(args: argparse.Namespace, run: RunConfig, config: Config) -> int:
    if args.params is None:
        if args.family == "raw":
            raise ConfigurationError("The raw family needs --case and --params")
        entries = [e for e in catalog.enumerate_all() if e.family == args.family]
        listing = [{"name": e.name, "params": e.params_text()} for e in entries]
        write_output(to_json(listing), run.output)
        return EXIT_OK

    params = _family_params(args.family, parse_params(args.params), args.case)
    matrix = _BUILDERS[args.family](params)
    if args.matrix:
        write_output(to_json(matrix_to_dict(matrix, run.order)), run.output)
        return EXIT_OK

    label = args.case if args.family == "raw" else args.family
    name = f"{label}(" + ",".join(param_text(v) for k, v in params.as_tuple() if k != "case") + ")"
    entry = make_entry(name, args.family, params.as_tuple(), matrix)
    report = {
        "name": entry.name,
        "family": entry.family,
        "params": entry.params_text(),
        "det_scale": entry.det_scale.to_text(),
        "matrix": matrix_to_dict(matrix, run.order),
        "phi": matrix_to_dict(entry.phi, run.order),
        "psi": matrix_to_dict(entry.psi, run.order),
    }
    write_output(to_json(report), run.output)
    return EXIT_OK


COMMANDS = {
    "verify-catalog": cmd_verify_catalog,
    "classify": cmd_classify,
    "equiv": cmd_equiv,
    "gb": cmd_gb,
    "fitting": cmd_fitting,
    "complete": cmd_complete,
    "catalog": cmd_catalog,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main execution function.

    Exit codes:
        0: Success, or the pair is equivalent / the witness is valid
        1: Negative result (not equivalent, invalid witness, failed check)
        2: Input error (parse, parameter, configuration or missing file)
    """
    logger = None
    try:
        args = parse_arguments(argv)

        config = load_config(getattr(args, "config", None))
        if getattr(args, "log_level", None):
            config.logging.level = args.log_level
        if getattr(args, "log_file", None):
            config.logging.file = str(args.log_file)
        validate_config(config)

        setup_logger(
            log_level=config.logging.level.upper(),
            log_file=Path(config.logging.file) if config.logging.file else None,
            rotation=config.logging.rotation,
            retention=config.logging.retention,
        )
        logger = get_logger("cli")
        logger.debug(f"mfkit v{__version__} command: {args.command}")

        run = make_run_config(args, config)
        validate_run_config(run)
        return COMMANDS[args.command](args, run, config)

    except SystemExit as e:
        # argparse: --help/--version exit 0, usage errors exit 2
        return e.code if isinstance(e.code, int) else EXIT_INPUT_ERROR

    except ClassificationError as e:
        if logger:
            logger.error(f"Classification audit failed: {e}")
        else:
            print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_NEGATIVE

    except MatrixFactorizationError as e:
        if logger:
            logger.error(f"Not a matrix factorization: {e}")
        else:
            print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_NEGATIVE

    except (ConfigurationError, ValueError, OSError) as e:
        if logger:
            logger.error(f"Input error: {e}")
        else:
            print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    except KeyboardInterrupt:
        if logger:
            logger.info("Interrupted by user")
        else:
            print("\nInterrupted by user", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
