#!/usr/bin/env python3
"""
plslab: single-swap local-search reductions from Max 2-SAT/Flip to
MUFL/Swap and DKM/Swap, with an exhaustive oracle.

Usage:
    python plslab.py reduce --target mufl --c 3/2 tiny1.wcnf --out tiny1.mufl.json
    python plslab.py solve tiny1.mufl.json --start all-open --log run.tsv
    python plslab.py verify --target dkm tiny1.wcnf
    python plslab.py embed tiny1.dkm.json
    python plslab.py oracle --count 200 --seed 0
"""
import argparse
import sys

from models import config
from models.errors import LabError
from commands.common import LabArgumentParser, common_options
from commands.embed import register_embed_command
from commands.oracle import register_oracle_command
from commands.reduce import register_reduce_command
from commands.solve import register_solve_command
from commands.verify import register_verify_command


def build_parser() -> argparse.ArgumentParser:
    parser = LabArgumentParser(prog="plslab", description="PLS reduction laboratory",
                               parents=[common_options()])
    parser.add_argument("--version", action="version", version=f"plslab {config.TOOL_VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Register command modules
    common = common_options(suppress_defaults=True)
    register_reduce_command(subparsers, common)
    register_solve_command(subparsers, common)
    register_verify_command(subparsers, common)
    register_embed_command(subparsers, common)
    register_oracle_command(subparsers, common)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except LabError as e:
        message = " ".join(str(e.message).split())
        print(f"error\t{type(e).__name__}\t{message}", file=sys.stderr)
        return e.exit_code


if __name__ == '__main__':
    sys.exit(main())
