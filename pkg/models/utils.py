import math
import re
from fractions import Fraction

import numpy as np

from models.errors import ParseError

_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$')

# Largest magnitude an int64 cost sum may reach before we fall back to Python ints
INT64_SAFE_BOUND = 2 ** 62


def parse_rational(text):
    """Parse 'p/q' or 'p' into a reduced Fraction"""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    match = _RATIONAL_RE.match(str(text))
    if not match:
        raise ParseError(f"Not a rational 'p/q' or integer: {text!r}")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ParseError(f"Zero denominator in rational: {text!r}")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value):
    """Format a rational as a reduced 'p/q', or 'p' when integral"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def pack_lower_triangle(table):
    """Flatten a square table row-major over j <= i (diagonal included)"""
    return [table[i][j] for i in range(len(table)) for j in range(i + 1)]


def unpack_lower_triangle(entries, size):
    """Rebuild a symmetric square table from its packed lower triangle"""
    expected = size * (size + 1) // 2
    if len(entries) != expected:
        raise ParseError(f"Expected {expected} lower-triangle entries for {size} sites, got {len(entries)}")
    table = [[None] * size for _ in range(size)]
    position = 0
    for i in range(size):
        for j in range(i + 1):
            table[i][j] = entries[position]
            table[j][i] = entries[position]
            position += 1
    return table


def common_scale(values):
    """Least common multiple of the denominators of the given rationals"""
    return math.lcm(1, *(Fraction(v).denominator for v in values))


def integer_table(table, extra=()):
    """
    Scale a rational table (and extra rationals) to integers by their common denominator.
    Returns (int array, scaled extras, scale). The array is int64 when every cost sum
    over the table stays below INT64_SAFE_BOUND, otherwise it holds Python ints.
    """
    flat = [Fraction(v) for row in table for v in row]
    extras = [Fraction(v) for v in extra]
    scale = common_scale(flat + extras)
    scaled = [[int(Fraction(v) * scale) for v in row] for row in table]
    scaled_extra = [int(v * scale) for v in extras]

    rows = len(scaled)
    cols = len(scaled[0]) if rows else 0
    largest = max([abs(v) for row in scaled for v in row] + [abs(v) for v in scaled_extra] + [1])
    terms = rows + cols + len(scaled_extra) + 1
    dtype = np.int64 if largest * terms < INT64_SAFE_BOUND else object
    return np.array(scaled, dtype=dtype).reshape(rows, cols), scaled_extra, scale
