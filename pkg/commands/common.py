"""
Options shared by every subcommand and the run manifest written next to each output.
"""
import argparse
import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Dict, List, Optional

from models import config
from models.data import save_json, save_manifest
from models.errors import ValidationError
from models.metrics import get_metrics, reset_metrics
from models.verbosity import set_quiet


def _seed(text):
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


class LabArgumentParser(argparse.ArgumentParser):
    """Reports usage errors as one `error<TAB>UsageError<TAB>message` line, exit 2"""

    def error(self, message):
        self.exit(2, f"error\tUsageError\t{self.prog}: {' '.join(message.split())}\n")


def common_options(suppress_defaults: bool = False) -> argparse.ArgumentParser:
    """
    Parent parser carrying --seed, --tol, --out, --log and --quiet.

    The top-level parser holds the defaults; the copy attached to each subcommand
    suppresses them so flags given before the subcommand survive.
    """
    def default(value):
        return argparse.SUPPRESS if suppress_defaults else value

    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--seed", type=_seed, default=default(config.DEFAULT_SEED),
                        help=f"Random seed (default: {config.DEFAULT_SEED})")
    parser.add_argument("--tol", type=_positive_float, default=default(config.DEFAULT_TOL),
                        help=f"Numerical tolerance for embeddings (default: {config.DEFAULT_TOL:g})")
    parser.add_argument("--out", default=default(None), help="Output file (default: standard output)")
    parser.add_argument("--log", default=default(None), help="Trajectory log file")
    parser.add_argument("--quiet", action="store_true", default=default(False), help="Suppress log lines on standard error")
    return parser


def now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec='seconds')


@dataclass
class RunManifest:
    """What was run, on which inputs, with which parameters"""
    subcommand: str
    inputs: List[str]
    parameters: Dict
    tool_version: str = config.TOOL_VERSION
    started_at: str = field(default_factory=now)
    finished_at: Optional[str] = None
    metrics: Dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, subcommand: str, args, inputs=(), **parameters) -> 'RunManifest':
        parameters.setdefault('seed', args.seed)
        parameters.setdefault('tol', args.tol)
        return cls(subcommand=subcommand, inputs=[str(path) for path in inputs], parameters=parameters)

    def finish(self) -> 'RunManifest':
        self.finished_at = now()
        self.metrics = get_metrics()
        return self

    def to_dict(self):
        return {
            'subcommand': self.subcommand,
            'inputs': list(self.inputs),
            'parameters': dict(self.parameters),
            'tool_version': self.tool_version,
            'started_at': self.started_at,
            'finished_at': self.finished_at,
            'metrics': dict(self.metrics),
        }


def start_run(args, subcommand: str, inputs=(), **parameters) -> RunManifest:
    """Apply --quiet, zero the counters and open a manifest for this run"""
    if args.quiet:
        set_quiet(True)
    reset_metrics()
    return RunManifest.from_args(subcommand, args, inputs, **parameters)


def write_manifest(manifest: RunManifest, *outputs):
    """One manifest per written output file"""
    manifest.finish()
    for output in outputs:
        if output:
            save_manifest(output, manifest.to_dict())


def print_lines(lines):
    for line in lines:
        print(line, file=sys.stdout)


def emit_document(args, manifest: RunManifest, document: dict):
    """Write the document to --out (with manifest) or print it as JSON"""
    if args.out:
        save_json(args.out, document)
        write_manifest(manifest, args.out)
    else:
        print(json.dumps(document, indent=2), file=sys.stdout)


def require_log_target(args, subcommand: str):
    if args.log and args.out and args.log == args.out:
        raise ValidationError(f"{subcommand}: --log and --out must name different files")
