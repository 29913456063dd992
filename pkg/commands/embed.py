from models import config, fields
from models.data import load_instance, save_instance
from models.dkm import DkmInstance, coordinate_error
from models.embedding import (
    dimension_lower_bound,
    embed_squared_euclidean,
    largest_equidistant_subset,
    min_distance_gap,
)
from models.errors import ValidationError
from models.metrics import log_warning
from models.utils import format_rational
from commands.common import print_lines, start_run, write_manifest


def register_embed_command(subparsers, common):
    """Register `embed`: squared-Euclidean coordinates for a DKM instance"""
    parser = subparsers.add_parser("embed", parents=[common],
                                   help="Embed a DKM distance table into squared Euclidean space")
    parser.add_argument("input", help="DKM instance JSON; coordinates are written back unless --out is given")
    parser.set_defaults(handler=run_embed)


def run_embed(args) -> int:
    manifest = start_run(args, 'embed', [args.input])
    instance = load_instance(args.input)
    if not isinstance(instance, DkmInstance):
        raise ValidationError("embed needs a DKM instance (kind 'dkm')")

    gap = min_distance_gap(instance.distances)
    if 0 < gap < config.GAP_WARNING_FACTOR * args.tol:
        log_warning(f"Smallest distance gap {format_rational(gap)} is within "
                    f"{config.GAP_WARNING_FACTOR}x of tolerance {args.tol:g}")

    embedded = embed_squared_euclidean(instance.distances, args.tol)
    coords = embedded.coords.tolist()
    error = coordinate_error(instance, coords)

    lines = [
        f"points\t{embedded.num_points}",
        f"dimension\t{embedded.dimension}",
        f"reconstruction_error\t{error:.3e}",
    ]
    exit_code = 0

    meta = instance.meta
    if fields.META_N in meta and fields.META_M in meta:
        bound = dimension_lower_bound(int(meta[fields.META_N]), int(meta[fields.META_M]))
        holds = embedded.dimension >= bound
        lines.append(f"bound\tmax(N,M)-1 = {bound}\t{'OK' if holds else 'FAIL'}")
        if not holds:
            exit_code = 1

    value, subset = largest_equidistant_subset(instance.distances)
    within = len(subset) <= embedded.dimension + 1
    lines.append(f"equidistant\t{len(subset)} points at distance {format_rational(value)}\t"
                 f"{'OK' if within else 'FAIL'}")
    if not within:
        exit_code = 1
    print_lines(lines)

    output = args.out or args.input
    save_instance(output, instance.with_coords(coords))
    write_manifest(manifest, output)
    return exit_code
