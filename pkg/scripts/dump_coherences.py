"""Dump every declaration of a .catt file with its shape.

Usage:
    python -m scripts.dump_coherences [FILE] [--coh-only]
"""

import argparse
import sys
from pathlib import Path

from catt_checker.calculus.depth import coherence_depth
from catt_checker.engine.environment import Coherence, Declaration
from catt_checker.models.errors import CattError
from catt_checker.models.pretty import pretty, pretty_telescope
from catt_checker.parser.declarations import check_source


DEFAULT_FILE = Path(__file__).resolve().parent.parent / "config" / "prelude.catt"


def format_declaration(decl: Declaration) -> list[str]:
    """Lines describing one declaration."""
    if isinstance(decl, Coherence):
        head = f"{decl.kind.value:>3} | {decl.name}"
    else:
        head = f"let | {decl.name}"
    lines = [head, f"    | context: {pretty_telescope(decl.ctx)}", f"    | type: {pretty(decl.ty)}"]
    if decl.ps is not None:
        lines.append(f"    | locally maximal: {' '.join(decl.ps.loc_max)}")
        lines.append(f"    | {decl.ps.dim_table}")
    lines.append(f"    | coherence depth: {coherence_depth(decl.ty, decl.ctx)}")
    return lines


def main():
    parser = argparse.ArgumentParser(description="Dump the declarations of a .catt file")
    parser.add_argument("file", nargs="?", type=Path, default=DEFAULT_FILE,
                        help="File to check (default: config/prelude.catt)")
    parser.add_argument("--coh-only", action="store_true",
                        help="Skip let definitions")
    args = parser.parse_args()

    try:
        env = check_source(args.file.read_text(encoding="utf-8"))
    except CattError as exc:
        print(exc.render(str(args.file)), file=sys.stderr)
        raise SystemExit(1)

    decls = env.coherences() if args.coh_only else env.declarations()
    for decl in decls:
        for line in format_declaration(decl):
            print(line)
        print()

    print(f"Total: {len(decls)} declarations")


if __name__ == "__main__":
    main()
