"""Command-line front door: ``check``, ``pages``, ``family``, ``zigzag``,
``verify-paper`` and ``hodge``.

Exit codes: 0 success, 1 parse or validation error, 2 internal invariant
violation or a failed X_n check, 3 zig-zag does not exist.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from pydantic import BaseModel, model_validator

from src.config import get_settings
from src.exceptions import FrolicherError, InvariantViolationError, ZigZagExtensionError
from src.models.reports import ZigZag
from src.models.structure import StructureEquations
from src.services.differential import del_, validate
from src.services.double_complex import DoubleComplex, build_double_complex
from src.services.examples import builtin_example, family_xn
from src.services.spectral import pages_until_degeneration
from src.services.xn_witness import top_form, top_primitive, verify_xn, witness_chain
from src.services.zigzag import find_zigzag, verify_zigzag
from src.storage import ReportFormatterFactory, parse_form_expr, read_structure_file
from src.storage.lie_file import ParseError, serialize_structure_file
from src.utils import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INVARIANT = 2
EXIT_NO_ZIGZAG = 3

_BUILTIN_PARAMETER = {"torus": "m", "xn": "n"}


class CliConfig(BaseModel):
    """Parsed invocation: one command and at most one input source."""

    command: str
    input_path: Optional[str] = None
    builtin: Optional[str] = None
    dim: Optional[int] = None
    family_xn: Optional[int] = None
    max_page: Optional[int] = None
    output_format: str = "table"

    @model_validator(mode="after")
    def _single_source(self) -> "CliConfig":
        candidates = (self.input_path, self.builtin, self.family_xn)
        sources = [s for s in candidates if s is not None]
        if len(sources) > 1:
            raise ValueError("Give exactly one of FILE, --builtin or --family-xn")
        return self


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as f:
        return f.read()


def load_equations(config: CliConfig) -> StructureEquations:
    """Structure equations from a file, a builtin name or the X_n family."""
    if config.builtin is not None:
        kwargs = {}
        parameter = _BUILTIN_PARAMETER.get(config.builtin.lower())
        if parameter and config.dim is not None:
            kwargs[parameter] = config.dim
        return builtin_example(config.builtin, **kwargs)
    if config.family_xn is not None:
        return family_xn(config.family_xn)
    if config.input_path is None:
        raise ValueError("No input given: pass FILE, --builtin NAME or --family-xn N")
    return read_structure_file(_read_text(config.input_path)).equations


def _add_source_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", nargs="?", help=".lie structure-equation file")
    parser.add_argument(
        "--builtin", help="builtin example (torus, iwasawa, kodaira, xn)"
    )
    parser.add_argument(
        "--dim", type=int, help="parameter of the builtin (m for torus, n for xn)"
    )
    parser.add_argument(
        "--family-xn", type=int, dest="family_xn", metavar="N", help="use X_N"
    )


def _output_format(args: argparse.Namespace) -> str:
    if getattr(args, "json", False):
        return "json"
    return get_settings().output_format


def _config(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        command=args.command,
        input_path=getattr(args, "file", None),
        builtin=getattr(args, "builtin", None),
        dim=getattr(args, "dim", None),
        family_xn=getattr(args, "family_xn", None),
        max_page=getattr(args, "max_page", None),
        output_format=_output_format(args),
    )


def cmd_check(args: argparse.Namespace) -> int:
    parsed = read_structure_file(_read_text(args.file))
    report = validate(parsed.equations)
    for warning in parsed.warnings:
        print(f"warning: {warning.span}: {warning.message}")
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print(f"generators: {report.m}")
        print(f"jacobi: {'ok' if report.jacobi_ok else 'FAILED'}")
        print(f"integrable: {'ok' if report.integrable else 'FAILED'}")
        nilpotent = "yes" if report.nilpotent else "no"
        print(f"nilpotent: {nilpotent} ({report.nilpotency_steps} steps)")
        for item in report.offending_generators:
            print(f"  f{item.index}: {item.check}: {item.form}")
    return EXIT_OK if report.ok else EXIT_INVALID


def _witness(config: CliConfig, dc: DoubleComplex) -> Optional[ZigZag]:
    """The explicit X_n chain, attached to the report when it checks out."""
    n = config.family_xn
    if n is None:
        return None
    chain = witness_chain(n)
    zigzag = ZigZag(
        start=(0, n - 1), chain=tuple(chain), terminal=del_(dc.eq, chain[-1])
    )
    check = verify_zigzag(dc, zigzag)
    if not check.ok:
        logger.warning(
            f"X_{n} witness fails at index {check.violated_index}: {check.message}"
        )
        return None
    return zigzag


def cmd_pages(args: argparse.Namespace) -> int:
    config = _config(args)
    dc = build_double_complex(load_equations(config))
    report = pages_until_degeneration(
        dc, max_page=config.max_page, witness=_witness(config, dc)
    )
    formatter = ReportFormatterFactory.create_formatter(config.output_format)
    sys.stdout.write(formatter.format_pages(report))
    return EXIT_OK


def cmd_hodge(args: argparse.Namespace) -> int:
    config = _config(args)
    dc = build_double_complex(load_equations(config))
    report = pages_until_degeneration(dc, max_page=1)
    formatter = ReportFormatterFactory.create_formatter(config.output_format)
    sys.stdout.write(formatter.format_hodge(report))
    ok = all(report.frolicher_inequality()) and report.conjugation_symmetric()
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_family(args: argparse.Namespace) -> int:
    text = serialize_structure_file(family_xn(args.n))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"Wrote X_{args.n} to {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_zigzag(args: argparse.Namespace) -> int:
    config = _config(args)
    eq = load_equations(config)
    dc = build_double_complex(eq)
    start = parse_form_expr(args.start, eq.m)
    try:
        zigzag = find_zigzag(dc, start, args.length)
    except ZigZagExtensionError as e:
        print(f"lives only to E_{e.lives_to}")
        for i, beta in enumerate(e.partial):
            print(f"beta_{i} = {beta}")
        return EXIT_NO_ZIGZAG
    p, q = zigzag.start
    print(f"zig-zag of length {zigzag.length} from A^{{{p},{q}}}")
    for i, beta in enumerate(zigzag.chain):
        print(f"beta_{i} = {beta}")
    print(f"terminal = {zigzag.terminal}")
    tp, tq = zigzag.target
    r = zigzag.length
    print(f"d_{r}[beta_0] = [{zigzag.terminal}] in E_{r}^{{{tp},{tq}}}")
    return EXIT_OK


def cmd_verify_paper(args: argparse.Namespace) -> int:
    n = args.n
    eq = read_structure_file(_read_text(args.input)).equations if args.input else None
    result = verify_xn(n, eq)
    print(f"X_{n}: chain {'valid' if result.chain_valid else 'INVALID'}")
    if result.violated_index is not None:
        print(f"  first violated relation at index {result.violated_index}")
    for name, ok in result.relations.items():
        print(f"  {name}: {'ok' if ok else 'FAILED'}")
    survives = "yes" if result.start_class_nonzero else "no"
    print(f"[β1] ≠ 0 in E_{n}^{{0,{n - 1}}}: {survives}")
    if result.lives_to is not None:
        extension = "cannot be extended" if result.not_extendable else "extends further"
        print(f"β1 lives to E_{result.lives_to}: {extension}")
    print(
        f"dim E_{n}^{{0,{n - 1}}} = {result.source_dim}, "
        f"dim E_{n}^{{{n},0}} = {result.target_dim}"
    )
    if result.chain_valid and not result.image_class_nonzero:
        print(f"[{top_form(n)}] = 0 already in E_{result.top_dies_at}^{{{n},0}}")
        print(f"  del-bar closed primitive: {top_primitive(n)}")
    if not result.ok:
        print(f"d_{n}[β1] ≠ 0 not verified for X_{n}", file=sys.stderr)
        return EXIT_INVARIANT
    print(f"d_{n}[β1] = [{top_form(n)}] ≠ 0 in E_{n}^{{{n},0}}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frolicher",
        description=(
            "Exact Frölicher spectral sequences of Lie algebras with complex structure"
        ),
    )
    parser.add_argument("--log-level", help="override FROLICHER_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="validate a .lie file")
    check.add_argument("file")
    check.add_argument("--json", action="store_true")
    check.set_defaults(handler=cmd_check)

    pages = sub.add_parser("pages", help="page tables, Betti and Hodge numbers")
    _add_source_arguments(pages)
    pages.add_argument("--max-page", type=int, dest="max_page")
    pages.add_argument("--json", action="store_true")
    pages.set_defaults(handler=cmd_pages)

    family = sub.add_parser("family", help="write the structure equations of a family")
    family.add_argument("kind", choices=["xn"])
    family.add_argument("--n", type=int, required=True)
    family.add_argument("-o", "--output")
    family.set_defaults(handler=cmd_family)

    zigzag = sub.add_parser("zigzag", help="extend a del-bar closed form to a zig-zag")
    _add_source_arguments(zigzag)
    zigzag.add_argument("--start", required=True, help='form expression, e.g. "~f3"')
    zigzag.add_argument("--length", type=int, required=True)
    zigzag.set_defaults(handler=cmd_zigzag)

    verify = sub.add_parser("verify-paper", help="check d_n != 0 on X_n")
    verify.add_argument("--n", type=int, required=True)
    verify.add_argument(
        "--input", help="replace the generated X_n equations by this file"
    )
    verify.set_defaults(handler=cmd_verify_paper)

    hodge = sub.add_parser("hodge", help="Hodge numbers and the Frölicher inequality")
    _add_source_arguments(hodge)
    hodge.add_argument("--json", action="store_true")
    hodge.set_defaults(handler=cmd_hodge)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    setup_logging(level=args.log_level)

    try:
        return args.handler(args)
    except ZigZagExtensionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_ZIGZAG
    except InvariantViolationError as e:
        logger.error(f"Invariant violated: {e}")
        print(f"error: invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except ParseError as e:
        print(f"error: {e.kind}: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (FrolicherError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
