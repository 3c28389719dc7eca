"""Scalar fitness: maximin objective score combined with preference score.

All competitions (tournaments, replacement, archive decisions) order
solutions by the combined value, lower being better.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FitnessConfig:
    w_obj: float = 0.5
    w_sub: float = 0.5


@dataclass
class FitnessRecord:
    f_obj: float
    f_sub: float | None
    combined: float
    feasible: bool
    violation_count: int = 0
    removal_penalized: bool = False

    def sort_key(self, index: int = 0) -> tuple:
        """Lower key wins: combined, feasibility, violations, f_obj, stability."""
        return (self.combined, 0 if self.feasible else 1,
                self.violation_count, self.f_obj, index)


def maximin(vector: tuple[float, ...], reference: list[tuple[float, ...]],
            self_index: int | None = None) -> float:
    """Scaled maximin score in [0,1]; raw sign separates dominance classes.

    `self_index` excludes the solution's own slot in `reference` (exclusion
    is positional, so equal vectors from other individuals still count).
    """
    best = None
    for j, z in enumerate(reference):
        if self_index is not None and j == self_index:
            continue
        worst_k = min(fs - fz for fs, fz in zip(vector, z))
        if best is None or worst_k > best:
            best = worst_k
    if best is None:  # sole individual: trivially non-dominated
        return 0.0
    return (1.0 + best) / 2.0


def maximin_matrix(vectors: np.ndarray) -> np.ndarray:
    """Vectorized maximin of every row against all other rows."""
    n = vectors.shape[0]
    if n == 1:
        return np.zeros(1)
    mins = None
    for k in range(vectors.shape[1]):
        col = vectors[:, k]
        d = col[:, None] - col[None, :]
        mins = d if mins is None else np.minimum(mins, d)
    np.fill_diagonal(mins, -np.inf)
    return (1.0 + mins.max(axis=1)) / 2.0


def maximin_against(vectors: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Maximin of external vectors (e.g. archive members) against a reference set."""
    diff = vectors[:, None, :] - reference[None, :, :]
    return (1.0 + diff.min(axis=2).max(axis=1)) / 2.0


def combine(f_obj: float, f_sub: float | None, cfg: FitnessConfig,
            feasible: bool, violation_count: int,
            removal_penalized: bool = False) -> FitnessRecord:
    """Build a record; infeasible and removal-penalized solutions get the
    worst possible combined value so they progressively disappear."""
    if not feasible or removal_penalized:
        combined = 1.0
    elif f_sub is None:
        combined = f_obj
    else:
        combined = cfg.w_obj * f_obj + cfg.w_sub * f_sub
    return FitnessRecord(f_obj, f_sub, combined, feasible,
                         violation_count, removal_penalized)


def dominates(a: tuple[float, ...], b: tuple[float, ...]) -> bool:
    """Pareto dominance for minimization."""
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))
