# -*- coding: utf-8 -*-
#
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from .consts import (
    DEFAULT_EPSILON_GRID,
    DEFAULT_N_PAIRS,
    DEFAULT_SEED,
    DEFAULT_SHRINK_LEVELS,
    DEFAULT_SLACK,
    DEFAULT_WIDTH_FACTOR,
    DEFAULT_WORKERS,
)
from .errors import UsageError

Point = Tuple[float, ...]
PointPair = Tuple[Point, Point]
Interval = Tuple[Optional[float], Optional[float]]


@dataclass(frozen=True)
class VerificationConfig:
    seed: int = DEFAULT_SEED
    n_pairs: int = DEFAULT_N_PAIRS
    slack: float = DEFAULT_SLACK
    epsilon_grid: Tuple[float, ...] = field(default=DEFAULT_EPSILON_GRID)
    shrink_levels: int = DEFAULT_SHRINK_LEVELS
    initial_width: Optional[float] = None
    width_factor: float = DEFAULT_WIDTH_FACTOR
    level_budget: Optional[int] = None
    workers: int = DEFAULT_WORKERS
    debug: bool = False

    def __post_init__(self):
        if not (0 <= int(self.seed) < 2**64):
            raise UsageError("Sampler seed must be an unsigned 64-bit integer, got {!r}.".format(self.seed))
        if int(self.n_pairs) < 1:
            raise UsageError("n_pairs must be at least 1.")
        if not (math.isfinite(self.slack) and self.slack >= 0):
            raise UsageError("Slack must be a finite non-negative real.")
        grid = tuple(float(e) for e in self.epsilon_grid)
        if len(grid) < 1:
            raise UsageError("epsilon_grid must not be empty.")
        for a, b in zip(grid, grid[1:]):
            if not a < b:
                raise UsageError("epsilon_grid must be strictly ascending.")
        if grid[0] <= 0 or not math.isfinite(grid[-1]):
            raise UsageError("epsilon_grid entries must be finite and > 0.")
        object.__setattr__(self, 'epsilon_grid', grid)
        if int(self.shrink_levels) < 1:
            raise UsageError("shrink_levels must be at least 1.")
        if self.initial_width is not None and not (self.initial_width > 0 and math.isfinite(self.initial_width)):
            raise UsageError("initial_width must be a finite positive real.")
        if not self.width_factor > 0:
            raise UsageError("width_factor must be positive.")
        if self.level_budget is not None and int(self.level_budget) < 1:
            raise UsageError("level_budget must be at least 1.")
        if int(self.workers) < 1:
            raise UsageError("workers must be at least 1.")

    def ladder_width(self, epsilon: float) -> float:
        if self.initial_width is not None:
            return float(self.initial_width)
        return self.width_factor * epsilon

    def ladder_budget(self) -> int:
        if self.level_budget is not None:
            return int(self.level_budget)
        return max(1, int(self.n_pairs) // int(self.shrink_levels))

    def to_dict(self) -> dict:
        return {
            'seed': int(self.seed),
            'n_pairs': int(self.n_pairs),
            'slack': float(self.slack),
            'epsilon_grid': list(self.epsilon_grid),
            'shrink_levels': int(self.shrink_levels),
            'initial_width': self.initial_width,
            'width_factor': float(self.width_factor),
            'level_budget': self.level_budget,
        }


def as_point(coords: Sequence[float]) -> Point:
    return tuple(float(c) for c in coords)
