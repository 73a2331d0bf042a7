"""
conedual: command-line entry point

Commands:
    polar     one-sided polar of a polyhedron
    check     a property of a quadruple, its optimal constant and the dual constant
    ando      minimal-norm decomposition of a point in a direct sum
    sums      duality of the direct-sum constants (exact for p in {1, inf}, sampled otherwise)
    cstar     sampled checks in the matrix algebra M_n
    selftest  every exact identity suite

Reports go to stdout as JSON (sorted keys) or a text table; logs go to stderr.
Exit codes: 0 ok / holds, 1 property fails, 2 unreadable input, 3 semantic error.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from loguru import logger

from cone_duality import __version__
from cone_duality.banach_sums import (
    ando_decompose,
    check_lemma44,
    constant_report,
    sampled_lp_mode,
    verify_cor47,
    verify_cor49,
)
from cone_duality.constants import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_WORKERS,
    ENV_FORMAT,
    ENV_SAMPLES,
    ENV_SEED,
    ENV_TOL,
    ENV_WORKERS,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_PROPERTY_FAILS,
    EXIT_SEMANTIC_ERROR,
    INEQUALITY_TOL,
    LOG_LEVEL,
)
from cone_duality.cstar_checks import check_lemma51, check_thm52, check_thm53
from cone_duality.duality_props import (
    DualityKind,
    Property,
    optimal_constant,
    polar_quadruple,
    property_witness,
    verify_general_duality,
)
from cone_duality.errors import NotGeneratedError
from cone_duality.polar_calc import one_sided_polar
from cone_duality.read_input import load_documents, parse_document
from cone_duality.save.save_json import format_json, save_report_to_json
from cone_duality.save.save_text import format_text
from cone_duality.save.serialize import polyhedron_to_json
from cone_duality.selftest import SELFTEST_CASES, run_selftest


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: Optional[str]
    seed: int
    samples: Optional[int]
    tol: float
    output_format: str
    workers: int
    property: Property
    p: Optional[str]
    item: int
    n: int
    check: str
    output_dir: Optional[str]

    @property
    def sample_count(self) -> int:
        return self.samples if self.samples is not None else DEFAULT_SAMPLES


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", dest="input_path", help="JSON file, JSON list or directory")
    common.add_argument("--property", default="normal", choices=[p.value for p in Property])
    common.add_argument("--p", default=None, help="exponent: 1, inf or a rational > 1")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--format", dest="output_format", choices=["json", "text"], default=None)
    common.add_argument("--item", type=int, default=1)
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--check", default="thm53", choices=["thm53", "lemma51", "thm52"])
    common.add_argument("--output-dir", default=None, help="also save the report JSON here")

    parser = argparse.ArgumentParser(prog="conedual", description="Exact cone duality toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)
    for name, description in [
        ("polar", "one-sided polar of a polyhedron"),
        ("check", "property of a quadruple with its dual constant"),
        ("ando", "minimal-norm decomposition in a direct sum"),
        ("sums", "direct-sum duality of constants"),
        ("cstar", "sampled checks in M_n"),
        ("selftest", "run every exact identity suite"),
    ]:
        commands.add_parser(name, parents=[common], help=description)
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    """CLI flags override environment variables, which override the defaults."""
    return RunConfig(
        command=args.command,
        input_path=args.input_path,
        seed=args.seed if args.seed is not None else _env_int(ENV_SEED, DEFAULT_SEED),
        samples=args.samples if args.samples is not None else (
            int(os.environ[ENV_SAMPLES]) if ENV_SAMPLES in os.environ else None
        ),
        tol=args.tol if args.tol is not None else float(os.getenv(ENV_TOL, str(INEQUALITY_TOL))),
        output_format=args.output_format or os.getenv(ENV_FORMAT, "json"),
        workers=args.workers if args.workers is not None else _env_int(ENV_WORKERS, DEFAULT_WORKERS),
        property=Property(args.property),
        p=args.p,
        item=args.item,
        n=args.n,
        check=args.check,
        output_dir=args.output_dir,
    )


def _documents(config: RunConfig, kind: str, **kwargs) -> list[tuple[str, object]]:
    if not config.input_path:
        raise KeyError("--input")
    return [
        (label, parse_document(kind, document, **kwargs))
        for label, document in load_documents(config.input_path)
    ]


def _fan_out(config: RunConfig, function: Callable, items: Sequence) -> list:
    """Independent inputs on worker threads, results in input order."""
    if len(items) <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=max(1, config.workers)) as executor:
        return list(executor.map(function, items))


def cmd_polar(config: RunConfig) -> tuple[list, int]:
    documents = _documents(config, "polyhedron")
    reports = _fan_out(
        config,
        lambda item: {"input": item[0], "polar": polyhedron_to_json(one_sided_polar(item[1]))},
        documents,
    )
    return reports, EXIT_OK


def check_quadruple(q, prop: Property) -> dict:
    witness = property_witness(prop, q)
    primal = optimal_constant(prop, q)
    dual = optimal_constant(prop.dual, polar_quadruple(q))
    kind = (
        DualityKind.NORMALITY
        if prop in (Property.NORMAL, Property.CONORMAL)
        else DualityKind.ADDITIVITY
    )
    return {
        "property": prop,
        "holds": witness is None,
        "alpha_star": primal.alpha_star,
        "dual_alpha_star": dual.alpha_star,
        "witness": witness,
        "duality_holds": verify_general_duality(kind, q).holds,
    }


def cmd_check(config: RunConfig) -> tuple[list, int]:
    documents = _documents(config, "quadruple")
    reports = _fan_out(
        config,
        lambda item: {"input": item[0], **check_quadruple(item[1], config.property)},
        documents,
    )
    code = EXIT_OK if all(r["holds"] for r in reports) else EXIT_PROPERTY_FAILS
    return reports, code


def cmd_ando(config: RunConfig) -> tuple[list, int]:
    documents = _documents(config, "instance", p_override=config.p)

    def decompose(item):
        label, document = item
        if document.point is None:
            raise KeyError("point")
        try:
            result = ando_decompose(document.instance, document.point)
        except NotGeneratedError as e:
            logger.warning(f"{label}: {e}")
            return {"input": label, "point": document.point, "generated": False}
        return {
            "input": label,
            "point": document.point,
            "generated": True,
            "p": document.instance.p,
            "xi": result.xi,
            "norm": result.norm,
        }

    reports = _fan_out(config, decompose, documents)
    code = EXIT_OK if all(r["generated"] for r in reports) else EXIT_PROPERTY_FAILS
    return reports, code


def direct_sum_report(inst, config: RunConfig) -> dict:
    if not inst.exact:
        sampled = sampled_lp_mode(inst, trials=config.sample_count, seed=config.seed, tol=config.tol)
        return {"p": inst.p, "mode": "sampled", "holds": sampled.holds, "sampled": sampled}
    lemma44 = check_lemma44(inst)
    cor47, cor49 = verify_cor47(inst), verify_cor49(inst)
    constants = {prop: constant_report(prop, inst).alpha_star for prop in Property}
    return {
        "p": inst.p,
        "mode": "exact",
        "holds": lemma44.holds and cor47.holds and cor49.holds,
        "constants": constants,
        "polar_correspondence": lemma44,
        "normality_duality": cor47,
        "additivity_duality": cor49,
    }


def cmd_sums(config: RunConfig) -> tuple[list, int]:
    documents = _documents(config, "instance", p_override=config.p)
    reports = _fan_out(
        config,
        lambda item: {"input": item[0], **direct_sum_report(item[1].instance, config)},
        documents,
    )
    code = EXIT_OK if all(r["holds"] for r in reports) else EXIT_PROPERTY_FAILS
    return reports, code


def cmd_cstar(config: RunConfig) -> tuple[list, int]:
    if config.check == "thm52":
        report = check_thm52(samples=config.sample_count, n=config.n, seed=config.seed)
    else:
        checks = {"thm53": check_thm53, "lemma51": check_lemma51}
        report = checks[config.check](
            item=config.item,
            samples=config.sample_count,
            seed=config.seed,
            tol=config.tol,
            n=config.n,
            workers=config.workers,
        )
    return [report], EXIT_OK if report.holds else EXIT_PROPERTY_FAILS


def cmd_selftest(config: RunConfig) -> tuple[list, int]:
    cases = config.samples if config.samples is not None else SELFTEST_CASES
    report = run_selftest(seed=config.seed, cases=cases)
    return [report], EXIT_OK if report.holds else EXIT_PROPERTY_FAILS


COMMANDS: dict[str, Callable[[RunConfig], tuple[list, int]]] = {
    "polar": cmd_polar,
    "check": cmd_check,
    "ando": cmd_ando,
    "sums": cmd_sums,
    "cstar": cmd_cstar,
    "selftest": cmd_selftest,
}


def emit(reports: list, config: RunConfig) -> str:
    if config.output_format == "text":
        return format_text(reports)
    return format_json(reports[0] if len(reports) == 1 else reports)


def run(config: RunConfig) -> int:
    logger.info(f"conedual {config.command} (version {__version__})")
    reports, code = COMMANDS[config.command](config)
    print(emit(reports, config))
    if config.output_dir:
        report = reports[0] if len(reports) == 1 else reports
        save_report_to_json(report, config.output_dir, config.command)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    logger.remove()
    logger.add(sys.stderr, level=LOG_LEVEL)

    args = build_parser().parse_args(argv)
    try:
        config = make_config(args)
        return run(config)
    except (json.JSONDecodeError, OSError) as e:
        logger.error(f"Could not read input: {e}")
        return EXIT_PARSE_ERROR
    except (KeyError, ValueError, TypeError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_SEMANTIC_ERROR


if __name__ == "__main__":
    sys.exit(main())
