"""Batch checker for .catt files.

Usage examples:
    cattcheck config/prelude.catt
    cattcheck --prelude config/prelude.catt mine.catt
    cattcheck --ps-table comp --ps-table hcomp config/prelude.catt
    cattcheck --verbose --max-errors 10 --log-level DEBUG broken.catt

Exit status: 0 when every declaration checks, 1 when some declaration
fails, 2 on unreadable files or bad flags.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from catt_checker.engine.checker_config import CheckerConfig
from catt_checker.engine.environment import Coherence, Declaration, Environment
from catt_checker.models.errors import CattError
from catt_checker.models.pretty import pretty, pretty_decl
from catt_checker.parser.declarations import check_decls
from catt_checker.parser.surface_parser import parse

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class _Budget:
    """Counts reported failures against --max-errors."""

    __slots__ = ("limit", "failures")

    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.failures = 0

    @property
    def remaining(self) -> int:
        return self.limit - self.failures

    def spend(self) -> bool:
        """Record one failure; True when checking must stop."""
        self.failures += 1
        return self.failures >= self.limit


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cattcheck", description=__doc__.splitlines()[0])
    parser.add_argument("files", nargs="+", type=Path, help=".catt files, checked in order")
    parser.add_argument(
        "--prelude",
        action="append",
        default=[],
        type=Path,
        metavar="FILE",
        help="File checked before the inputs (repeatable); failures abort",
    )
    parser.add_argument(
        "--ps-table",
        action="append",
        default=[],
        metavar="NAME",
        help="Print the table of dimensions of NAME's context (repeatable)",
    )
    parser.add_argument(
        "--max-errors",
        type=int,
        default=1,
        metavar="N",
        help="Stop after N failed declarations (default: 1)",
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Print kinds, locally maximal variables and full applications",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging threshold for the checker (default: WARNING)",
    )
    return parser


def _report_ok(entry: Declaration, config: CheckerConfig) -> None:
    print(f"checked {entry.name} : {pretty(entry.ty)}")
    if not config.verbose:
        return
    if isinstance(entry, Coherence):
        print(f"  kind: {entry.kind.value}")
        print(f"  locally maximal: {' '.join(entry.ps.loc_max)}")
        print(f"  {pretty_decl('coh', entry.name, entry.ctx, entry.ty, explicit=True)}")
    else:
        print(f"  {pretty_decl('let', entry.name, entry.ctx, entry.body, explicit=True)}")


def _report_error(path: Path, exc: CattError, config: CheckerConfig) -> None:
    print(exc.render(str(path)), file=sys.stderr)
    if config.verbose and exc.trace:
        print(f"  in {' > '.join(exc.trace)}", file=sys.stderr)


def _read_source(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise OSError(f"{path}: not valid UTF-8 (byte {exc.start})") from exc


def _check_file(
    path: Path,
    env: Environment,
    config: CheckerConfig,
    budget: _Budget,
    *,
    quiet: bool = False,
) -> tuple[Environment, bool]:
    """Check one file; returns the new environment and whether to stop."""
    text = _read_source(path)
    try:
        decls = parse(text)
    except CattError as exc:
        _report_error(path, exc, config)
        return env, budget.spend()
    env, results = check_decls(env, decls, max_errors=budget.remaining)
    for result in results:
        if result.error is not None:
            _report_error(path, result.error, config)
            if budget.spend():
                return env, True
        elif not quiet:
            _report_ok(result.entry, config)
    return env, False


def _print_ps_tables(env: Environment, names: tuple[str, ...]) -> bool:
    for name in names:
        entry = env.lookup(name)
        if entry is None:
            print(f"error: --ps-table: unknown declaration {name!r}", file=sys.stderr)
            return False
        if entry.ps is None:
            print(f"error: --ps-table: context of {name!r} is not a ps-context", file=sys.stderr)
            return False
        if len(names) > 1:
            print(f"# {name}")
        print(entry.ps.dim_table)
    return True


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        config = CheckerConfig(
            max_errors=args.max_errors,
            verbose=args.verbose,
            ps_tables=tuple(args.ps_table),
            preludes=tuple(args.prelude),
            log_level=args.log_level,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    logging.basicConfig(format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger("catt_checker").setLevel(config.log_level)

    env = Environment.empty()
    budget = _Budget(config.max_errors)
    try:
        for prelude in config.preludes:
            seed = _Budget(1)
            env, _ = _check_file(prelude, env, config, seed, quiet=True)
            if seed.failures:
                return 1
        for path in args.files:
            env, halt = _check_file(path, env, config, budget)
            if halt:
                break
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if budget.failures:
        return 1
    if not _print_ps_tables(env, config.ps_tables):
        return 2
    return 0


def main() -> None:
    raise SystemExit(run())
