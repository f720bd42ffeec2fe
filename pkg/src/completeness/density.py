"""
Finite density estimates for generated subgroups of O(n).

Words in the generators (and their inverses) are enumerated breadth-first by
left multiplication, deduplicated within an operator-norm tolerance and compared against
Haar-random special-orthogonal targets. The estimate is empirical evidence for
density, never a proof.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel
from scipy.spatial import cKDTree
from scipy.stats import special_ortho_group

from src.qsim.operators import RealOperator
from src.utils.config import get_settings
from src.utils.exceptions import DimensionMismatchError, NonOrthogonalError, PreconditionError

logger = logging.getLogger(__name__)

MAX_DENSITY_DIM = 8
MAX_WORD_LEN = 12


@dataclass
class DensityProbeConfig:
    """Knobs for density_probe."""
    dedup_tol: float = 1e-6  # words closer than this (operator norm) are merged
    max_words: Optional[int] = None  # defaults to settings.density_max_words
    workers: int = 4
    target_chunk: int = 8


class LengthCoverage(BaseModel):
    """Coverage statistics after enumerating words up to a given length."""

    length: int
    n_words: int
    min_distance: float
    median_distance: float
    max_distance: float


class DensityReport(BaseModel):
    """Outcome of a density estimate."""

    dim: int
    n_generators: int
    max_word_len: int
    n_targets: int
    seed: int
    n_words: int
    truncated: bool
    min_distance: float
    median_distance: float
    max_distance: float
    by_length: List[LengthCoverage]

    @property
    def monotone(self) -> bool:
        """Whether every statistic is non-increasing in word length."""
        rows = self.by_length
        return all(
            b.min_distance <= a.min_distance
            and b.median_distance <= a.median_distance
            and b.max_distance <= a.max_distance
            for a, b in zip(rows, rows[1:])
        )


class _WordSet:
    """
    Kept words with a KD-tree for near-duplicate lookup.

    Every entry of a difference is bounded by its operator norm, so candidates
    come from a max-norm ball of radius tol and are confirmed in operator norm.
    Words added since the last rebuild are scanned directly.
    """

    def __init__(self, dim: int, tol: float, rebuild_every: int = 256):
        self.dim = dim
        self.tol = tol
        self.rebuild_every = rebuild_every
        self.words: List[np.ndarray] = []
        self._tree: Optional[cKDTree] = None
        self._indexed = 0

    def _near(self, a: np.ndarray, m: np.ndarray) -> bool:
        return bool(np.linalg.norm(a - m, ord=2) <= self.tol)

    def contains(self, m: np.ndarray) -> bool:
        """Whether a kept word lies within tol of m."""
        if self._tree is not None:
            for index in self._tree.query_ball_point(m.ravel(), r=self.tol, p=np.inf):
                if self._near(self.words[index], m):
                    return True
        return any(self._near(w, m) for w in self.words[self._indexed:])

    def add(self, m: np.ndarray) -> bool:
        """Keep m unless a kept word is within tol of it."""
        if self.contains(m):
            return False
        self.words.append(m)
        if len(self.words) - self._indexed >= self.rebuild_every:
            self._tree = cKDTree(np.array([w.ravel() for w in self.words]))
            self._indexed = len(self.words)
        return True

    def __len__(self) -> int:
        return len(self.words)


def _validate_generators(generators: Sequence[RealOperator]) -> int:
    if not generators:
        raise PreconditionError("density_probe needs at least one generator")
    dims = {g.dim for g in generators}
    if len(dims) != 1:
        raise DimensionMismatchError(
            f"Generators have different dimensions: {sorted(dims)}",
            context={"dims": sorted(dims)},
        )
    dim = dims.pop()
    if dim > MAX_DENSITY_DIM:
        raise DimensionMismatchError(f"Generator dimension {dim} exceeds {MAX_DENSITY_DIM}")
    for g in generators:
        if not g.is_orthogonal(1e-8):
            raise NonOrthogonalError("density_probe generators must be orthogonal")
    return dim


def _min_distances(targets: np.ndarray, words: np.ndarray) -> np.ndarray:
    """For each target, the operator-norm distance to the closest word."""
    out = np.empty(len(targets))
    for i, target in enumerate(targets):
        out[i] = np.min(np.linalg.norm(words - target, ord=2, axis=(1, 2)))
    return out


def density_probe(
    generators: Sequence[RealOperator],
    max_word_len: int,
    n_targets: int,
    seed: int,
    config: Optional[DensityProbeConfig] = None,
) -> DensityReport:
    """
    Enumerate short words and measure how well they cover SO(dim).

    Args:
        generators: Orthogonal operators of a common dimension <= 8
        max_word_len: Longest word length, <= 12
        n_targets: Number of Haar-random special-orthogonal targets
        seed: Seed for the targets
        config: Density estimate configuration

    Returns:
        DensityReport with min/median/max target distances overall and per length
    """
    config = config or DensityProbeConfig()
    dim = _validate_generators(generators)
    if not 0 <= max_word_len <= MAX_WORD_LEN:
        raise PreconditionError(f"max_word_len must be in [0, {MAX_WORD_LEN}], got {max_word_len}")
    if n_targets < 1:
        raise PreconditionError(f"n_targets must be >= 1, got {n_targets}")
    max_words = config.max_words or get_settings().density_max_words

    letters = []
    for g in generators:
        for m in (g.entries, g.entries.T):
            if not any(np.allclose(m, other, atol=config.dedup_tol) for other in letters):
                letters.append(np.array(m))

    if dim >= 2:
        targets = special_ortho_group.rvs(dim, size=n_targets, random_state=seed).reshape(n_targets, dim, dim)
    else:
        targets = np.ones((n_targets, 1, 1))

    words = _WordSet(dim, config.dedup_tol)
    words.add(np.eye(dim))
    frontier = [np.eye(dim)]
    best = np.full(n_targets, np.inf)
    by_length: List[LengthCoverage] = []
    truncated = False
    new_start = 0

    chunks = [
        targets[i:i + config.target_chunk] for i in range(0, n_targets, config.target_chunk)
    ]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        for length in range(max_word_len + 1):
            if length > 0:
                next_frontier = []
                for w in frontier:
                    for letter in letters:
                        if len(words) >= max_words:
                            truncated = True
                            break
                        candidate = letter @ w
                        if words.add(candidate):
                            next_frontier.append(candidate)
                frontier = next_frontier

            fresh = np.array(words.words[new_start:])
            new_start = len(words)
            if len(fresh):
                parts = list(pool.map(lambda chunk: _min_distances(chunk, fresh), chunks))
                best = np.minimum(best, np.concatenate(parts))
            by_length.append(
                LengthCoverage(
                    length=length,
                    n_words=len(words),
                    min_distance=float(np.min(best)),
                    median_distance=float(np.median(best)),
                    max_distance=float(np.max(best)),
                )
            )
            logger.debug(f"density_probe length {length}: {len(words)} words, median {np.median(best):.4f}")

    report = DensityReport(
        dim=dim,
        n_generators=len(generators),
        max_word_len=max_word_len,
        n_targets=n_targets,
        seed=seed,
        n_words=len(words),
        truncated=truncated,
        min_distance=float(np.min(best)),
        median_distance=float(np.median(best)),
        max_distance=float(np.max(best)),
        by_length=by_length,
    )
    logger.info(
        f"density_probe dim={dim}: {report.n_words} words up to length {max_word_len}, "
        f"median distance {report.median_distance:.4f}{' (truncated)' if truncated else ''}"
    )
    return report
