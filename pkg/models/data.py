"""
File data layer: WCNF inputs, instance JSON documents, trajectory logs and run manifests.
Commands should use this module for all file operations.
"""
import json
import math
from pathlib import Path
from typing import List, Union

from models import fields
from models.dkm import DkmInstance
from models.errors import OutputError, ParseError
from models.mufl import MuflInstance
from models.sat import SatInstance, parse_wcnf, serialize_wcnf
from models.utils import format_rational, pack_lower_triangle, parse_rational, unpack_lower_triangle

Instance = Union[MuflInstance, DkmInstance]


# =============================================================================
# Read Operations
# =============================================================================

def load_wcnf(path) -> SatInstance:
    """Parse a weighted 2-CNF file."""
    return parse_wcnf(_read_text(path))


def load_instance(path) -> Instance:
    """Load a MUFL or DKM instance document."""
    return instance_from_document(_parse_json(_read_text(path), path))


def load_problem_input(path) -> Union[SatInstance, Instance]:
    """Load either input kind; JSON documents start with '{', anything else is WCNF."""
    text = _read_text(path)
    if text.lstrip().startswith('{'):
        return instance_from_document(_parse_json(text, path))
    return parse_wcnf(text)


# =============================================================================
# Write Operations
# =============================================================================

def save_wcnf(path, instance: SatInstance) -> Path:
    """Write a SAT instance in the WCNF dialect."""
    return _write_text(path, serialize_wcnf(instance))


def save_instance(path, instance: Instance) -> Path:
    """Write an instance document."""
    return save_json(path, instance_to_document(instance))


def save_trajectory_log(path, lines: List[str]) -> Path:
    """Write tab-separated trajectory lines."""
    return _write_text(path, ''.join(f"{line}\n" for line in lines))


def save_json(path, document) -> Path:
    return _write_text(path, json.dumps(document, indent=2) + '\n')


def save_manifest(output_path, manifest: dict) -> Path:
    """Write `<output>.manifest.json` next to an output file."""
    return save_json(manifest_path(output_path), manifest)


def manifest_path(output_path) -> Path:
    output_path = Path(output_path)
    return output_path.with_name(output_path.name + '.manifest.json')


# =============================================================================
# Documents
# =============================================================================

def instance_to_document(instance: Instance) -> dict:
    """Serialize an instance; every rational becomes a reduced 'p/q' or 'p' string."""
    if isinstance(instance, MuflInstance):
        document = {
            fields.KIND: fields.KIND_MUFL,
            fields.SITES: list(instance.sites),
            fields.FACILITIES: instance.facility_labels,
        }
        if instance.clients != tuple(range(len(instance.sites))):
            document[fields.CLIENTS] = instance.client_labels
        costs = [format_rational(cost) for cost in instance.opening_costs]
        document[fields.OPENING_COST] = costs[0] if len(set(costs)) == 1 else costs
    elif isinstance(instance, DkmInstance):
        document = {
            fields.KIND: fields.KIND_DKM,
            fields.SITES: list(instance.sites),
            fields.K: instance.K,
        }
    else:
        raise ParseError(f"Cannot serialize {type(instance).__name__}")

    document[fields.DISTANCES] = [format_rational(v) for v in pack_lower_triangle(instance.distances)]
    if isinstance(instance, DkmInstance) and instance.coords is not None:
        document[fields.COORDS] = [list(point) for point in instance.coords]
    if instance.meta:
        document[fields.META] = dict(instance.meta)
    return document


def instance_from_document(document) -> Instance:
    """Build an instance from a parsed JSON document, dispatching on `kind`."""
    if not isinstance(document, dict):
        raise ParseError("Instance document must be a JSON object")
    kind = document.get(fields.KIND)
    sites = _require(document, fields.SITES, list)
    if not all(isinstance(label, str) for label in sites):
        raise ParseError("Site labels must be strings")
    entries = [parse_rational(v) for v in _require(document, fields.DISTANCES, list)]
    distances = unpack_lower_triangle(entries, len(sites))
    meta = document.get(fields.META) or {}

    if kind == fields.KIND_MUFL:
        facilities = [_site_index(sites, label) for label in _require(document, fields.FACILITIES, list)]
        clients = document.get(fields.CLIENTS)
        if clients is not None:
            clients = [_site_index(sites, label) for label in clients]
        opening = _require(document, fields.OPENING_COST, (str, int, list))
        if isinstance(opening, list):
            opening_costs = [parse_rational(v) for v in opening]
        else:
            opening_costs = [parse_rational(opening)] * len(facilities)
        return MuflInstance(sites=sites, facilities=facilities, opening_costs=opening_costs,
                            distances=distances, clients=clients, meta=meta)

    if kind == fields.KIND_DKM:
        K = _require(document, fields.K, int)
        coords = document.get(fields.COORDS)
        if coords is not None:
            _require_coords(coords)
        return DkmInstance(sites=sites, K=K, distances=distances, coords=coords, meta=meta)

    raise ParseError(f"Unknown instance kind {kind!r}, expected '{fields.KIND_MUFL}' or '{fields.KIND_DKM}'")


# =============================================================================
# Internal Helpers
# =============================================================================

def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise ParseError(f"Cannot read {path}: {e.strerror or e}")
    except UnicodeDecodeError as e:
        raise ParseError(f"{path} is not UTF-8 text: byte {e.start} is invalid")


def _write_text(path, text: str) -> Path:
    path = Path(path)
    try:
        path.write_text(text, encoding='utf-8')
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e.strerror or e}")
    return path


def _parse_json(text: str, path):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}")


def _require(document: dict, key: str, kind):
    if key not in document:
        raise ParseError(f"Instance document is missing '{key}'")
    value = document[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError(f"Field '{key}' has the wrong type")
    return value


def _site_index(sites: list, label: str) -> int:
    try:
        return sites.index(label)
    except ValueError:
        raise ParseError(f"Unknown site label {label!r}")


def _require_coords(coords):
    if not isinstance(coords, list) or not all(isinstance(point, list) for point in coords):
        raise ParseError("Coordinates must be a list of per-point lists")
    for point in coords:
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x) for x in point):
            raise ParseError(f"Coordinates must be finite numbers, got {point!r}")
