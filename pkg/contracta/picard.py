# -*- coding: utf-8 -*-
#
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .consts import (
    DEFAULT_DIVERGENCE_FACTOR,
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    PICARD_CONVERGED,
    PICARD_DIVERGED,
    PICARD_MAX_ITER,
    PICARD_SELF_MAP_VIOLATION,
    TRACE_ITERATE_CAP,
)
from .errors import DomainError, SelfMapViolation, UsageError
from .pytypes import Point
from .space import SelfMap

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class StoppingRule:
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    divergence_radius: Optional[float] = None

    def __post_init__(self):
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise UsageError("Stopping tol must be a finite positive real, got {!r}.".format(self.tol))
        if int(self.max_iter) < 1:
            raise UsageError("Stopping max_iter must be at least 1, got {!r}.".format(self.max_iter))
        if self.divergence_radius is not None and not self.divergence_radius > 0:
            raise UsageError("divergence_radius must be positive, got {!r}.".format(self.divergence_radius))

    def radius_for(self, map: SelfMap) -> float:
        if self.divergence_radius is not None:
            return float(self.divergence_radius)
        return DEFAULT_DIVERGENCE_FACTOR * map.space.box_diameter

    def to_dict(self) -> dict:
        return {'tol': self.tol, 'max_iter': int(self.max_iter), 'divergence_radius': self.divergence_radius}


@dataclass
class PicardTrace:
    """
    x0, x1 = T(x0), ... and d(x_n, x_{n+1}) per step.

    On convergence the fixed point estimate u is the iterate x_k whose step
    d(x_k, x_{k+1}) fell below tol, so residual d(u, T(u)) is that final step.
    """

    iterates: List[Point] = field(default_factory=list)
    step_distances: List[float] = field(default_factory=list)
    verdict: str = PICARD_MAX_ITER
    fixed_point: Optional[Point] = None
    residual: Optional[float] = None
    violation: Optional[dict] = None

    @property
    def converged(self) -> bool:
        return self.verdict == PICARD_CONVERGED

    @property
    def steps(self) -> int:
        return len(self.step_distances)

    headers = ['step', 'step_distance']

    def rows(self) -> List[list]:
        return [[i, d] for i, d in enumerate(self.step_distances)]

    def to_dict(self, iterate_cap: int = TRACE_ITERATE_CAP) -> dict:
        n = len(self.iterates)
        if n > iterate_cap:
            head = iterate_cap // 2
            tail = iterate_cap - head
            iterates = self.iterates[:head] + self.iterates[n - tail :]
            elided = n - iterate_cap
        else:
            iterates = self.iterates
            elided = 0
        return {
            'verdict': self.verdict,
            'fixed_point': None if self.fixed_point is None else list(self.fixed_point),
            'residual': self.residual,
            'steps': self.steps,
            'step_distances': list(self.step_distances),
            'iterates': [list(p) for p in iterates],
            'iterates_elided': elided,
            'violation': self.violation,
        }

    def describe(self) -> str:
        if self.converged:
            return "Picard iteration converged after {} steps to {} (residual {!r})".format(
                self.steps, list(self.fixed_point or ()), self.residual
            )
        return "Picard iteration ended with verdict {} after {} steps".format(self.verdict, self.steps)


def picard_iterate(
    map: SelfMap, x0: Sequence[float], stop: Optional[StoppingRule] = None, logger: Optional[logging.Logger] = None
) -> PicardTrace:
    """
    Iterate x_{n+1} = T(x_n) from x0 until a step falls below tol, max_iter steps are
    taken, an iterate leaves the ball of divergence_radius around x0, or T leaves
    its domain. Every outcome is encoded in the returned trace.

    :raises DomainError: if x0 is not in the map's domain
    """
    if logger is None:
        logger = log
    if stop is None:
        stop = StoppingRule()
    space = map.space
    start = space.check_point(x0, "Starting point")
    if not space.contains(start):
        raise DomainError("Starting point {} is outside the domain of {}.".format(list(start), space.name), start)
    radius = stop.radius_for(map)
    trace = PicardTrace(iterates=[start])
    x = start
    for _ in range(int(stop.max_iter)):
        try:
            nxt = map.apply(x)
        except SelfMapViolation as e:
            trace.verdict = PICARD_SELF_MAP_VIOLATION
            trace.violation = {
                'message': str(e.message),
                'point': list(e.point),
                'image': None if e.image is None else list(e.image),
            }
            logger.debug("Picard iteration left the domain at step {}.".format(trace.steps))
            return trace
        step = space.distance(x, nxt)
        trace.iterates.append(nxt)
        trace.step_distances.append(step)
        if step < stop.tol:
            trace.verdict = PICARD_CONVERGED
            trace.fixed_point = x
            trace.residual = step
            logger.debug("Picard iteration converged after {} steps.".format(trace.steps))
            return trace
        if space.distance(start, nxt) > radius:
            trace.verdict = PICARD_DIVERGED
            logger.debug("Picard iteration passed divergence radius {!r} at step {}.".format(radius, trace.steps))
            return trace
        x = nxt
    trace.verdict = PICARD_MAX_ITER
    return trace


def banach_a_priori_bound(lam: float, d01: float, n: int) -> float:
    """
    lambda^n * d(x0, x1) / (1 - lambda), the distance bound from x_n to the fixed point
    of a lambda-Banach map.
    """
    lam = float(lam)
    if not (0.0 <= lam < 1.0):
        raise UsageError("Banach lambda must lie in [0, 1), got {!r}.".format(lam))
    if not (d01 >= 0 and math.isfinite(d01)):
        raise UsageError("d01 must be a finite non-negative real, got {!r}.".format(d01))
    if int(n) < 0:
        raise UsageError("n must be a non-negative integer, got {!r}.".format(n))
    return lam ** int(n) * d01 / (1.0 - lam)
