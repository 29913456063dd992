"""
Realize a squared-distance table as points in Euclidean space.

Floating point lives here only; every cost elsewhere stays rational.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from models.config import DEFAULT_TOL
from models.errors import EmbeddingError, ValidationError
from models.metrics import log_embedding


@dataclass
class EmbeddedPoints:
    coords: np.ndarray
    tolerance: float
    eigenvalues: np.ndarray
    reconstruction_error: float

    @property
    def dimension(self) -> int:
        return self.coords.shape[1]

    @property
    def num_points(self) -> int:
        return self.coords.shape[0]

    def squared_distances(self) -> np.ndarray:
        return squared_distances(self.coords)


def as_float_table(table) -> np.ndarray:
    d = np.array(table, dtype=float)
    if d.size == 0:
        return d.reshape(0, 0)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValidationError(f"Distance table must be square, got shape {d.shape}")
    return d


def squared_distances(coords) -> np.ndarray:
    """Pairwise squared Euclidean distances of the rows of coords"""
    points = np.asarray(coords, dtype=float)
    gram = points @ points.T
    norms = np.diag(gram)
    return np.maximum(norms[:, None] + norms[None, :] - 2 * gram, 0.0)


def centered_gram(d: np.ndarray) -> np.ndarray:
    """G = -1/2 J d J with J the centering matrix"""
    n = len(d)
    J = np.eye(n) - np.ones((n, n)) / n
    return -0.5 * J @ d @ J


def embed_squared_euclidean(table, tol: float = DEFAULT_TOL) -> EmbeddedPoints:
    """Coordinates from the spectral square root of the centered Gram matrix"""
    d = as_float_table(table)
    n = len(d)
    if n == 0:
        return EmbeddedPoints(np.zeros((0, 0)), tol, np.zeros(0), 0.0)
    if np.abs(np.diag(d)).max() > tol:
        raise ValidationError("Distance table must have a zero diagonal")
    if np.abs(d - d.T).max() > tol:
        raise ValidationError("Distance table must be symmetric")

    evals, evecs = np.linalg.eigh(centered_gram(d))

    # Sort by eigenvalue in descending order
    idx = np.argsort(evals)[::-1]
    evals = evals[idx]
    evecs = evecs[:, idx]

    if evals[-1] < -tol:
        raise EmbeddingError(f"Gram matrix has eigenvalue {evals[-1]:.3e} below -{tol:g}; "
                             f"table is not squared-Euclidean embeddable")

    keep = evals > tol
    coords = evecs[:, keep] * np.sqrt(evals[keep])
    error = float(np.abs(squared_distances(coords) - d).max())
    if error > tol:
        raise EmbeddingError(f"Reconstruction error {error:.3e} exceeds tolerance {tol:g}")

    log_embedding(n, coords.shape[1], error)
    return EmbeddedPoints(coords, tol, evals, error)


def min_embedding_dimension(table, tol: float = DEFAULT_TOL) -> int:
    """Numerical rank of the centered Gram matrix"""
    return embed_squared_euclidean(table, tol).dimension


def dimension_lower_bound(num_variables: int, num_clauses: int) -> int:
    """Literal points x_1..x_N and clause points are each pairwise equidistant"""
    return max(num_variables, num_clauses) - 1


def regular_simplex(D: int, target: float) -> np.ndarray:
    """D+1 points in R^D with every pairwise squared distance equal to target"""
    if D < 1:
        raise ValidationError(f"Simplex dimension must be >= 1, got {D}")
    if target <= 0:
        raise ValidationError(f"Squared distance must be positive, got {target}")
    # Unit vectors are pairwise at squared distance 2; the extra point sits on the diagonal
    apex = np.full((1, D), (np.sqrt(D + 1) + 1) / D)
    points = np.vstack([np.eye(D), apex])
    return points * np.sqrt(target / 2)


def centroid_distance(D: int, c: float) -> float:
    """Squared distance from each of D+1 equidistant points (pairwise c) to their mean"""
    return c * D / (D + 1) ** 2 * (1 + (D - 1) / 2)


def largest_equidistant_subset(table) -> Tuple[Fraction, List[int]]:
    """
    Largest set of points with all pairwise distances exactly equal.
    Returns (common distance, positions); a single point has distance 0.
    """
    n = len(table)
    if n == 0:
        return Fraction(0), []
    best_value, best = Fraction(0), [0]
    values = sorted({table[i][j] for i in range(n) for j in range(i)})
    for value in values:
        neighbors = [{j for j in range(n) if j != i and table[i][j] == value} for i in range(n)]
        clique = _max_clique(neighbors, set(), set(range(n)), set())
        if len(clique) > len(best):
            best_value, best = value, sorted(clique)
    return best_value, best


def _max_clique(neighbors, current, candidates, excluded):
    """Bron-Kerbosch with pivoting, returning one maximum clique"""
    if not candidates and not excluded:
        return set(current)
    best = set(current)
    pivot = max(candidates | excluded, key=lambda v: len(neighbors[v] & candidates))
    for v in list(candidates - neighbors[pivot]):
        found = _max_clique(neighbors, current | {v}, candidates & neighbors[v], excluded & neighbors[v])
        if len(found) > len(best):
            best = found
        candidates = candidates - {v}
        excluded = excluded | {v}
    return best


def min_distance_gap(table) -> Fraction:
    """Smallest difference between distinct off-diagonal values (0 if fewer than two)"""
    n = len(table)
    values = sorted({Fraction(table[i][j]) for i in range(n) for j in range(i)})
    gaps = [b - a for a, b in zip(values, values[1:])]
    return min(gaps) if gaps else Fraction(0)
