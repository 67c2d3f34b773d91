# -*- coding: utf-8 -*-
#
"""
Counter-based sampling of points, pairs and triples from a MetricSpace.

Every draw is addressed by (seed, stream, index). The uniform variate at index k of
a stream lives in block k // block_size, and each block is produced by a fresh
Philox generator whose key is (stream, seed) and whose counter is the block index.
No generator state is shared, so any evaluator can draw any sample in any order.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .consts import (
    ANNULUS_RETRY_FACTOR,
    METRIC_CHEBYSHEV,
    METRIC_DISCRETE,
    METRIC_EUCLIDEAN,
    METRIC_MANHATTAN,
    SAMPLER_BLOCK_SIZE,
    SAMPLER_SCHEMES,
    SCHEME_ANNULUS,
    SCHEME_GAUSSIAN,
    SCHEME_UNIFORM_BOX,
    STREAM_ANNULUS,
    STREAM_PAIRS,
    STREAM_POINTS,
    STREAM_TRIPLES,
    TRIANGLE_ULP_SLACK,
)
from .errors import InfeasibleBandError, UsageError
from .pytypes import Point, PointPair
from .space import MetricSpace

log = logging.getLogger(__name__)

UNIFORM = 'uniform'
NORMAL = 'normal'

# Purposes of the directional fallback. Derived streams sit above 2**32, clear of every caller stream.
FALLBACK_ORIGINS = 1
FALLBACK_PARTNERS = 2
FALLBACK_DIRECTIONS = 3
FALLBACK_RADII = 4


def fallback_stream(stream: int, purpose: int) -> int:
    return (1 << 32) + ((int(stream) << 4) | purpose)


@dataclass(frozen=True)
class Sampler:
    seed: int = 0
    scheme: str = SCHEME_UNIFORM_BOX
    center: Optional[Tuple[float, ...]] = None
    sigma: Optional[float] = None
    epsilon: Optional[float] = None
    width: Optional[float] = None
    block_size: int = SAMPLER_BLOCK_SIZE

    def __post_init__(self):
        if not (0 <= int(self.seed) < 2**64):
            raise UsageError("Sampler seed must be an unsigned 64-bit integer, got {!r}.".format(self.seed))
        if self.scheme not in SAMPLER_SCHEMES:
            raise UsageError(
                "Unknown sampler scheme {!r}. Expected one of: {}.".format(self.scheme, ", ".join(SAMPLER_SCHEMES))
            )
        if self.block_size < 4 or self.block_size % 4 != 0:
            raise UsageError("Sampler block_size must be a positive multiple of 4.")
        if self.sigma is not None and not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise UsageError("Gaussian sigma must be a finite positive real.")
        if self.center is not None:
            object.__setattr__(self, 'center', tuple(float(c) for c in self.center))
        if self.scheme == SCHEME_ANNULUS:
            for name in ('epsilon', 'width'):
                v = getattr(self, name)
                if v is None or not (v > 0 and math.isfinite(v)):
                    raise UsageError("The annulus scheme needs a finite positive {}.".format(name))

    @lru_cache(maxsize=256)
    def _block(self, stream: int, block: int, kind: str) -> np.ndarray:
        key = (int(stream) << 64) | int(self.seed)
        # Each block starts on its own 64-bit counter word so blocks never overlap.
        bit_generator = np.random.Philox(key=key, counter=int(block) << 64)
        gen = np.random.Generator(bit_generator)
        if kind == NORMAL:
            out = gen.standard_normal(self.block_size)
        else:
            out = gen.random(self.block_size)
        out.setflags(write=False)
        return out

    def variates(self, stream: int, start: int, count: int, kind: str = UNIFORM) -> np.ndarray:
        """
        :param stream: sub-stream number
        :param start: index of the first variate
        :param count: how many variates
        :param kind: 'uniform' for [0, 1) or 'normal' for standard normal
        :return: 1-d array of length count, a pure function of (seed, stream, start, count, kind)
        """
        if count <= 0:
            return np.empty(0, dtype=np.float64)
        first = start // self.block_size
        last = (start + count - 1) // self.block_size
        chunks = [self._block(stream, b, kind) for b in range(first, last + 1)]
        joined = chunks[0] if len(chunks) == 1 else np.concatenate(chunks)
        offset = start - first * self.block_size
        return joined[offset : offset + count]

    def points(self, space: MetricSpace, start: int, count: int, stream: int = STREAM_POINTS) -> np.ndarray:
        """Points start..start+count of a stream as a (count, dimension) array inside the sampling box."""
        d = space.dimension
        low = np.array([lo for (lo, _) in space.sampling_box])
        high = np.array([hi for (_, hi) in space.sampling_box])
        if self.scheme == SCHEME_GAUSSIAN:
            z = self.variates(stream, start * d, count * d, NORMAL).reshape(count, d)
            center = np.array(self.center) if self.center is not None else (low + high) / 2.0
            if len(center) != d:
                raise UsageError("Gaussian sampler center has dimension {}, space has {}.".format(len(center), d))
            sigma = self.sigma if self.sigma is not None else float(np.min(high - low)) / 4.0
            pts = np.clip(center + sigma * z, low, high)
        else:
            u = self.variates(stream, start * d, count * d).reshape(count, d)
            pts = np.minimum(low + u * (high - low), high)
        return pts

    def point_list(self, space: MetricSpace, start: int, count: int, stream: int = STREAM_POINTS) -> List[Point]:
        return [tuple(row) for row in self.points(space, start, count, stream).tolist()]

    def pairs(self, space: MetricSpace, start: int, count: int, stream: int = STREAM_PAIRS) -> List[PointPair]:
        pts = self.point_list(space, 2 * start, 2 * count, stream)
        return [(pts[2 * i], pts[2 * i + 1]) for i in range(count)]

    def triples(self, space: MetricSpace, start: int, count: int, stream: int = STREAM_TRIPLES):
        pts = self.point_list(space, 3 * start, 3 * count, stream)
        return [(pts[3 * i], pts[3 * i + 1], pts[3 * i + 2]) for i in range(count)]

    def to_dict(self) -> dict:
        d: dict = {'seed': int(self.seed), 'scheme': self.scheme}
        if self.scheme == SCHEME_GAUSSIAN:
            d['center'] = None if self.center is None else list(self.center)
            d['sigma'] = self.sigma
        elif self.scheme == SCHEME_ANNULUS:
            d['center'] = None if self.center is None else list(self.center)
            d['epsilon'] = self.epsilon
            d['width'] = self.width
        return d


@dataclass
class AnnulusSample:
    """Pairs with epsilon <= d(p, q) < epsilon + width, in draw order."""

    epsilon: float
    width: float
    requested: int
    pairs: List[PointPair] = field(default_factory=list)
    attempts: int = 0
    fallback_used: bool = False

    @property
    def shortfall(self) -> int:
        return max(0, self.requested - len(self.pairs))

    def __iter__(self) -> Iterator[PointPair]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __getitem__(self, item):
        return self.pairs[item]


def band_is_feasible(space: MetricSpace, epsilon: float, width: float) -> bool:
    if space.metric_kind == METRIC_DISCRETE:
        return epsilon <= 1.0 < epsilon + width
    return epsilon < space.diameter


def _vector_distances(space: MetricSpace, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    diff = np.abs(a - b)
    if space.metric_kind == METRIC_EUCLIDEAN:
        return np.sqrt(np.sum(diff * diff, axis=1))
    elif space.metric_kind == METRIC_CHEBYSHEV:
        return np.max(diff, axis=1)
    elif space.metric_kind == METRIC_MANHATTAN:
        return np.sum(diff, axis=1)
    return np.where(np.any(diff != 0, axis=1), 1.0, 0.0)


def _unit_directions(space: MetricSpace, z: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Rows of unit length under the space's norm, built from normal draws z and uniform draws u."""
    if space.metric_kind == METRIC_CHEBYSHEV:
        v = 2.0 * u - 1.0
        # Push one coordinate to the face of the unit cube.
        axis = np.argmax(np.abs(z), axis=1)
        rows = np.arange(len(v))
        v[rows, axis] = np.where(z[rows, axis] < 0, -1.0, 1.0)
        return v
    norms = np.sum(np.abs(z), axis=1) if space.metric_kind == METRIC_MANHATTAN else np.sqrt(np.sum(z * z, axis=1))
    norms = np.where(norms == 0, 1.0, norms)
    return z / norms[:, None]


def sample_pair_in_annulus(
    space: MetricSpace,
    sampler: Sampler,
    center: Optional[Sequence[float]] = None,
    epsilon: float = 1.0,
    width: float = 1.0,
    budget: int = 1,
    stream: int = STREAM_ANNULUS,
    logger: Optional[logging.Logger] = None,
) -> AnnulusSample:
    """
    Sample up to budget pairs (p, q) with epsilon <= d(p, q) < epsilon + width.

    Candidates are drawn uniformly from the sampling box and rejected until the
    retry cap of ANNULUS_RETRY_FACTOR * budget; remaining pairs come from a
    directional construction (q = p + r * direction, r uniform in the band).
    When center is given, every pair has p = center.

    :raises InfeasibleBandError: if no pair of the sampling box can lie in the band
    """
    if logger is None:
        logger = log
    if not (epsilon > 0 and math.isfinite(epsilon)):
        raise UsageError("Annulus epsilon must be a finite positive real, got {!r}.".format(epsilon))
    if not (width > 0 and math.isfinite(width)):
        raise UsageError("Annulus width must be a finite positive real, got {!r}.".format(width))
    if int(budget) < 1:
        raise UsageError("Annulus budget must be at least 1.")
    budget = int(budget)
    if not band_is_feasible(space, epsilon, width):
        raise InfeasibleBandError(
            "Band [{!r}, {!r}) is infeasible for space {} (sampled diameter {!r}).".format(
                epsilon, epsilon + width, space.name, space.diameter
            ),
            epsilon,
            width,
        )
    fixed: Optional[Point] = None
    if center is not None:
        fixed = space.check_point(center, "Annulus center")
    upper = epsilon + width
    result = AnnulusSample(epsilon=epsilon, width=width, requested=budget)
    d = space.dimension
    dist = space.distance

    # Rejection phase over uniform candidates, pre-filtered in bulk.
    cap = ANNULUS_RETRY_FACTOR * budget
    chunk = max(budget, sampler.block_size)
    uniform = Sampler(seed=sampler.seed, scheme=SCHEME_UNIFORM_BOX, block_size=sampler.block_size)
    tol = 1e-9 * upper
    drawn = 0
    while drawn < cap and len(result.pairs) < budget:
        n = min(chunk, cap - drawn)
        if fixed is None:
            pts = uniform.points(space, 2 * drawn, 2 * n, stream)
            a, b = pts[0::2], pts[1::2]
        else:
            b = uniform.points(space, drawn, n, stream)
            a = np.broadcast_to(np.array(fixed), b.shape)
        rough = _vector_distances(space, a, b)
        candidates = np.nonzero((rough >= epsilon - tol) & (rough < upper + tol))[0]
        for i in candidates.tolist():
            p = fixed if fixed is not None else tuple(a[i].tolist())
            q = tuple(b[i].tolist())
            dpq = dist(p, q)
            if epsilon <= dpq < upper:
                result.pairs.append((p, q))
                if len(result.pairs) >= budget:
                    result.attempts = drawn + i + 1
                    break
        else:
            result.attempts = drawn + n
        drawn += n
    if len(result.pairs) >= budget:
        return result

    logger.debug(
        "Rejection sampling found {} of {} pairs in band [{!r}, {!r}); using directional fallback.".format(
            len(result.pairs), budget, epsilon, upper
        )
    )
    result.fallback_used = True
    drawn = 0
    while drawn < cap and len(result.pairs) < budget:
        n = min(chunk, cap - drawn)
        if fixed is None:
            a = uniform.points(space, drawn, n, fallback_stream(stream, FALLBACK_ORIGINS))
        else:
            a = np.broadcast_to(np.array(fixed), (n, d))
        if space.metric_kind == METRIC_DISCRETE:
            b = uniform.points(space, drawn, n, fallback_stream(stream, FALLBACK_PARTNERS))
        else:
            z = uniform.variates(fallback_stream(stream, FALLBACK_DIRECTIONS), drawn * d, n * d, NORMAL)
            z = z.reshape(n, d)
            u = uniform.variates(fallback_stream(stream, FALLBACK_RADII), drawn * (d + 1), n * (d + 1))
            u = u.reshape(n, d + 1)
            directions = _unit_directions(space, z, u[:, :d])
            radii = epsilon + u[:, d] * width
            b = a + radii[:, None] * directions
        for i in range(n):
            p = fixed if fixed is not None else tuple(a[i].tolist())
            q = tuple(b[i].tolist())
            if not space.contains(q):
                continue
            dpq = dist(p, q)
            if epsilon <= dpq < upper:
                result.pairs.append((p, q))
                if len(result.pairs) >= budget:
                    break
        result.attempts += n
        drawn += n
    if result.shortfall > 0:
        logger.warning(
            "Annulus sampling returned {} of {} requested pairs in band [{!r}, {!r}) on {}.".format(
                len(result.pairs), budget, epsilon, upper, space.name
            )
        )
    return result


AXIOMS = ('non_negativity', 'identity', 'symmetry', 'triangle')

DistanceFn = Callable[[Sequence[float], Sequence[float]], float]


@dataclass
class AxiomReport:
    space: str
    n_triples: int
    violations: Dict[str, int] = field(default_factory=lambda: {a: 0 for a in AXIOMS})
    witnesses: Dict[str, Optional[dict]] = field(default_factory=lambda: {a: None for a in AXIOMS})

    @property
    def passed(self) -> bool:
        return all(v == 0 for v in self.violations.values())

    def _record(self, axiom: str, witness: dict):
        self.violations[axiom] += 1
        if self.witnesses[axiom] is None:
            self.witnesses[axiom] = witness

    def to_dict(self) -> dict:
        return {
            'space': self.space,
            'n_triples': self.n_triples,
            'passed': self.passed,
            'violations': dict(self.violations),
            'witnesses': dict(self.witnesses),
        }

    def rows(self) -> List[list]:
        return [[a, self.violations[a], self.witnesses[a]] for a in AXIOMS]


def _check_triple(report: AxiomReport, dist: DistanceFn, triple: Sequence[Point], slack_ulps: int):
    pts = list(triple)
    for i, p in enumerate(pts):
        dpp = dist(p, p)
        if dpp != 0:
            report._record('identity', {'p': list(p), 'q': list(p), 'distance': dpp})
        for j in range(i + 1, len(pts)):
            q = pts[j]
            dpq = dist(p, q)
            dqp = dist(q, p)
            if dpq < 0 or dqp < 0:
                report._record('non_negativity', {'p': list(p), 'q': list(q), 'distance': min(dpq, dqp)})
            if tuple(p) != tuple(q) and dpq == 0:
                report._record('identity', {'p': list(p), 'q': list(q), 'distance': dpq})
            if dpq != dqp:
                report._record('symmetry', {'p': list(p), 'q': list(q), 'd_pq': dpq, 'd_qp': dqp})
    n = len(pts)
    for k in range(n):
        a, b, c = pts[k], pts[(k + 1) % n], pts[(k + 2) % n]
        lhs = dist(a, c)
        rhs = dist(a, b) + dist(b, c)
        if lhs > rhs + slack_ulps * math.ulp(rhs):
            report._record(
                'triangle', {'p': list(a), 'q': list(b), 'r': list(c), 'd_pr': lhs, 'd_pq_plus_d_qr': rhs}
            )


def check_metric_axioms(
    space: MetricSpace,
    sampler: Sampler,
    n_triples: int,
    distance_fn: Optional[DistanceFn] = None,
    extra_triples: Sequence[Sequence[Sequence[float]]] = (),
) -> AxiomReport:
    """
    Evaluate non-negativity, identity of indiscernibles, symmetry and the triangle
    inequality on n_triples sampled triples (plus any extra_triples). Violations
    are counted, never raised. distance_fn replaces the space's own metric.
    """
    if int(n_triples) < 1:
        raise UsageError("n_triples must be at least 1.")
    dist = distance_fn if distance_fn is not None else space.distance
    extras = [tuple(tuple(float(c) for c in p) for p in t) for t in extra_triples]
    report = AxiomReport(space=space.name, n_triples=int(n_triples) + len(extras))
    for t in extras:
        _check_triple(report, dist, t, TRIANGLE_ULP_SLACK)
    done = 0
    while done < n_triples:
        n = min(sampler.block_size, n_triples - done)
        for t in sampler.triples(space, done, n):
            _check_triple(report, dist, t, TRIANGLE_ULP_SLACK)
        done += n
    return report
