from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .config import CaseConfig, Settings, load_settings
from .engine import build_engine
from .errors import ConfigurationError, TiltverError
from .logging_config import get_logger, setup_logging
from .rootdata import parse_weight
from .verify.checks import (
    CHAR_KINDS,
    char_report,
    ext_check,
    levi_consistency,
    ph2_region_check,
    tmc_check,
)
from .verify.report import Verdict, emit_report

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_CONFIG = 2


def _add_case_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--type", dest="type_label", required=True, help="root system, e.g. A2, B2, G2")
    parser.add_argument("--p", type=int, required=True, help="the prime")
    parser.add_argument("--r", type=int, default=1, help="Frobenius level (only 1 is supported)")
    parser.add_argument("--decomp-table", action="append", default=[], type=Path, help="decomposition overrides")
    parser.add_argument("--tilting-table", action="append", default=[], type=Path, help="tilting character table")
    parser.add_argument("--weights", help="semicolon-separated restricted weights, e.g. '0,0;1,2'")
    parser.add_argument("--no-builtin-overrides", action="store_true", help="skip the packaged decomposition packs")
    parser.add_argument(
        "--no-weight-spaces", action="store_true", help="fail on decompositions the sum formula leaves open"
    )
    parser.add_argument("--format", dest="output_format", choices=["text", "json"], help="report format")
    parser.add_argument("--out", type=Path, help="write the report to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tiltver", description="Character-level checks of the tilting module conjecture"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    _add_case_arguments(sub.add_parser("tmc", help="compare a- and b-coefficients over X_1"))
    _add_case_arguments(sub.add_parser("ph2", help="a = b on the region <lambda, alpha_0^vee> <= p(h - 2)"))

    ext = sub.add_parser("ext", help="Ext^1 candidate weights and the bound")
    _add_case_arguments(ext)
    ext.add_argument("--facts", type=Path, help="YAML file of published Ext facts")

    levi = sub.add_parser("levi", help="Levi reduction consistency")
    _add_case_arguments(levi)
    levi.add_argument("--J", dest="levi", default="", help="comma-separated 1-based simple root indices")

    char = sub.add_parser("char", help="print one character")
    _add_case_arguments(char)
    char.add_argument("--weight", required=True, help="comma-separated fundamental-weight coordinates")
    char.add_argument("--kind", choices=CHAR_KINDS, default="weyl")
    return parser


def _parse_levi(text: str, rank: int) -> tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        indices = tuple(int(part) - 1 for part in text.split(","))
    except ValueError as exc:
        raise ConfigurationError(f"--J expects comma-separated integers, got {text!r}") from exc
    if any(i < 0 or i >= rank for i in indices):
        raise ConfigurationError(f"--J indices must lie between 1 and {rank}")
    return indices


def _case_config(args: argparse.Namespace, settings: Settings) -> CaseConfig:
    weights = None
    if args.weights:
        try:
            weights = [parse_weight(part) for part in args.weights.split(";") if part.strip()]
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from exc
    cfg = CaseConfig.from_settings(
        settings,
        args.type_label,
        args.p,
        r=args.r,
        weights=weights,
        output_format=args.output_format,
        decomp_tables=[*settings.decomp_tables, *args.decomp_table] or None,
        tilting_tables=[*settings.tilting_tables, *args.tilting_table] or None,
    )
    if args.no_builtin_overrides:
        cfg.builtin_overrides = False
    if args.no_weight_spaces:
        cfg.weight_spaces = False
    return cfg


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings()
    except ConfigurationError as exc:
        print(f"tiltver: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    output_format = args.output_format or settings.output_format
    log_stream = sys.stderr if output_format == "json" and args.out is None else None
    setup_logging(settings.log_level, stream=log_stream)
    logger = get_logger("tiltver")

    try:
        cfg = _case_config(args, settings)
        logger.info(f"Running {args.command} for {cfg.type_label} p={cfg.p}")
        exit_code = EXIT_OK
        if args.command == "tmc":
            report = tmc_check(cfg, build_engine(cfg))
            if any(e.verdict == Verdict.REFUTED_NECESSARY for e in report.entries):
                exit_code = EXIT_REFUTED
        elif args.command == "ph2":
            report = ph2_region_check(cfg, build_engine(cfg))
            if report.violations or any(r.verdict == Verdict.REFUTED_NECESSARY for r in report.rows):
                exit_code = EXIT_REFUTED
        elif args.command == "ext":
            report = ext_check(cfg, args.facts or settings.ext_facts_path)
        elif args.command == "levi":
            report = levi_consistency(cfg, _parse_levi(args.levi, cfg.rank), build_engine(cfg))
        else:
            report = char_report(cfg, parse_weight(args.weight, cfg.rank), args.kind, build_engine(cfg))
    except (TiltverError, OSError, ValueError) as exc:
        logger.error(f"Cannot complete {args.command}: {exc}")
        print(f"tiltver: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    _write(emit_report(report, cfg.output_format), args.out)
    return exit_code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
