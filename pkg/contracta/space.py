# -*- coding: utf-8 -*-
#
"""
Metric spaces over boxes in R^n and self-maps on them.
"""
import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .consts import METRIC_CHEBYSHEV, METRIC_DISCRETE, METRIC_EUCLIDEAN, METRIC_KINDS, METRIC_MANHATTAN
from .errors import DomainError, ExpressionEvaluationError, SelfMapViolation, UsageError
from .expr import Expression, parse
from .pytypes import Interval, Point, as_point


def _check_finite(coords: Sequence[float], what: str = "Point"):
    for c in coords:
        if not math.isfinite(c):
            raise DomainError("{} has a non-finite coordinate: {!r}".format(what, tuple(coords)), point=tuple(coords))


class MetricSpace(object):
    """
    A box domain in R^n (some sides possibly unbounded) with one of four metrics.

    Verification never looks outside the sampling box. A bounded domain is its own
    sampling box; a domain with an unbounded side must declare one.
    """

    __slots__ = ('name', 'dimension', 'bounds', 'metric_kind', 'sampling_box', '_distance_fn')

    def __init__(
        self,
        name: str,
        dimension: int,
        bounds: Sequence[Interval],
        metric_kind: str = METRIC_EUCLIDEAN,
        sampling_box: Optional[Sequence[Tuple[float, float]]] = None,
    ):
        if int(dimension) < 1:
            raise UsageError("Space dimension must be a positive integer, got {!r}.".format(dimension))
        if metric_kind not in METRIC_KINDS:
            raise UsageError(
                "Unknown metric_kind {!r}. Expected one of: {}.".format(metric_kind, ", ".join(METRIC_KINDS))
            )
        bounds = [(None if lo is None else float(lo), None if hi is None else float(hi)) for (lo, hi) in bounds]
        if len(bounds) != int(dimension):
            raise UsageError("Space {} declares dimension {} but {} bounds.".format(name, dimension, len(bounds)))
        for i, (lo, hi) in enumerate(bounds):
            if lo is not None and hi is not None and not lo < hi:
                raise UsageError("Lower bound must be below upper bound on coordinate {} of {}.".format(i + 1, name))
            if (lo is not None and math.isnan(lo)) or (hi is not None and math.isnan(hi)):
                raise UsageError("Bounds of {} must not be NaN.".format(name))
        self.name = str(name)
        self.dimension = int(dimension)
        self.bounds: Tuple[Interval, ...] = tuple(bounds)
        self.metric_kind = metric_kind
        if sampling_box is None:
            box = []
            for i, (lo, hi) in enumerate(self.bounds):
                if lo is None or hi is None or math.isinf(lo) or math.isinf(hi):
                    raise UsageError(
                        "Coordinate {} of {} is unbounded, so the space must declare a sampling_box.".format(
                            i + 1, name
                        )
                    )
                box.append((lo, hi))
        else:
            box = [(float(lo), float(hi)) for (lo, hi) in sampling_box]
            if len(box) != self.dimension:
                raise UsageError("sampling_box of {} must have {} intervals.".format(name, self.dimension))
            for i, ((lo, hi), (dlo, dhi)) in enumerate(zip(box, self.bounds)):
                if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                    raise UsageError("sampling_box coordinate {} of {} must be a finite interval.".format(i + 1, name))
                if (dlo is not None and lo < dlo) or (dhi is not None and hi > dhi):
                    raise UsageError("sampling_box coordinate {} of {} leaves the domain.".format(i + 1, name))
        self.sampling_box: Tuple[Tuple[float, float], ...] = tuple(box)
        self._distance_fn = _DISTANCES[metric_kind]

    @property
    def diameter(self) -> float:
        """Diameter of the sampling box under this space's metric."""
        widths = [hi - lo for (lo, hi) in self.sampling_box]
        if self.metric_kind == METRIC_EUCLIDEAN:
            return math.hypot(*widths)
        elif self.metric_kind == METRIC_CHEBYSHEV:
            return max(widths)
        elif self.metric_kind == METRIC_MANHATTAN:
            return math.fsum(widths)
        return 1.0

    @property
    def box_diameter(self) -> float:
        """Euclidean diameter of the sampling box, whatever the metric."""
        return math.hypot(*[hi - lo for (lo, hi) in self.sampling_box])

    def contains(self, p: Sequence[float]) -> bool:
        if len(p) != self.dimension:
            return False
        for c, (lo, hi) in zip(p, self.bounds):
            if not math.isfinite(c):
                return False
            if lo is not None and c < lo:
                return False
            if hi is not None and c > hi:
                return False
        return True

    def check_point(self, p: Sequence[float], what: str = "Point") -> Point:
        if len(p) != self.dimension:
            raise UsageError(
                "{} has dimension {} but space {} has dimension {}.".format(what, len(p), self.name, self.dimension)
            )
        _check_finite(p, what)
        return as_point(p)

    def distance(self, p: Sequence[float], q: Sequence[float]) -> float:
        if len(p) != self.dimension or len(q) != self.dimension:
            raise UsageError(
                "Cannot measure distance between points of dimension {} and {} in {}-dimensional space {}.".format(
                    len(p), len(q), self.dimension, self.name
                )
            )
        _check_finite(p)
        _check_finite(q)
        return self._distance_fn(p, q)

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'dimension': self.dimension,
            'bounds': [list(b) for b in self.bounds],
            'metric_kind': self.metric_kind,
            'sampling_box': [list(b) for b in self.sampling_box],
        }

    def __repr__(self):
        return "<MetricSpace {} dim={} metric={}>".format(self.name, self.dimension, self.metric_kind)


def _euclidean(p: Sequence[float], q: Sequence[float]) -> float:
    if len(p) == 1:
        return abs(p[0] - q[0])
    return math.hypot(*[a - b for a, b in zip(p, q)])


def _chebyshev(p: Sequence[float], q: Sequence[float]) -> float:
    return max(abs(a - b) for a, b in zip(p, q))


def _manhattan(p: Sequence[float], q: Sequence[float]) -> float:
    return math.fsum(abs(a - b) for a, b in zip(p, q))


def _discrete(p: Sequence[float], q: Sequence[float]) -> float:
    return 0.0 if tuple(p) == tuple(q) else 1.0


_DISTANCES: Dict[str, Callable[[Sequence[float], Sequence[float]], float]] = {
    METRIC_EUCLIDEAN: _euclidean,
    METRIC_CHEBYSHEV: _chebyshev,
    METRIC_MANHATTAN: _manhattan,
    METRIC_DISCRETE: _discrete,
}


def distance(space: MetricSpace, p: Sequence[float], q: Sequence[float]) -> float:
    return space.distance(p, q)


Coordinatewise = Callable[[float], float]


def _scale(factor: float) -> Coordinatewise:
    return lambda x: factor * x


def _divide(divisor: float) -> Coordinatewise:
    return lambda x: x / divisor


def _builtin_identity(params: dict) -> Coordinatewise:
    return lambda x: x


def _builtin_linear(params: dict) -> Coordinatewise:
    try:
        factor = float(params['lambda'])
    except KeyError:
        raise UsageError("Builtin map 'linear' needs a 'lambda' parameter.")
    return _scale(factor)


def _builtin_half(params: dict) -> Coordinatewise:
    return _divide(2.0)


def _builtin_third(params: dict) -> Coordinatewise:
    return _divide(3.0)


def _builtin_cos(params: dict) -> Coordinatewise:
    return math.cos


def _builtin_constant(params: dict) -> Coordinatewise:
    value = float(params.get('value', 0.0))
    return lambda x: value


def _builtin_shift_one(params: dict) -> Coordinatewise:
    return lambda x: x + 1.0


def _builtin_square(params: dict) -> Coordinatewise:
    return lambda x: x * x


BUILTIN_MAPS: Dict[str, Callable[[dict], Coordinatewise]] = {
    'identity': _builtin_identity,
    'linear': _builtin_linear,
    'half': _builtin_half,
    'third': _builtin_third,
    'cos': _builtin_cos,
    'constant': _builtin_constant,
    'shift_one': _builtin_shift_one,
    'square': _builtin_square,
}


def map_signature(dimension: int) -> Tuple[str, ...]:
    names = tuple("x{}".format(i + 1) for i in range(dimension))
    if dimension == 1:
        # A one dimensional map may also be written in plain x.
        names = names + ('x',)
    return names


class SelfMap(object):
    """
    A map T from a MetricSpace into itself.

    The body is either a named builtin (applied to every coordinate) or one
    expression per output coordinate over the variables x1..xd.
    """

    __slots__ = ('space', 'name', 'builtin', 'params', 'expressions', '_coordinatewise')

    def __init__(
        self,
        space: MetricSpace,
        builtin: Optional[str] = None,
        expressions: Optional[Sequence[Union[str, Expression]]] = None,
        params: Optional[dict] = None,
        name: Optional[str] = None,
    ):
        if (builtin is None) == (expressions is None):
            raise UsageError("A SelfMap needs exactly one of a builtin name or a list of expressions.")
        self.space = space
        self.params = dict(params or {})
        self._coordinatewise: Optional[Coordinatewise] = None
        self.expressions: Optional[Tuple[Expression, ...]] = None
        self.builtin = builtin
        if builtin is not None:
            try:
                factory = BUILTIN_MAPS[builtin]
            except KeyError:
                raise UsageError(
                    "Unknown builtin map {!r}. Known builtins: {}.".format(builtin, ", ".join(sorted(BUILTIN_MAPS)))
                )
            self._coordinatewise = factory(self.params)
            self.name = name or builtin
        else:
            assert expressions is not None
            if len(expressions) != space.dimension:
                raise UsageError(
                    "Map needs one expression per coordinate: got {} for a {}-dimensional space.".format(
                        len(expressions), space.dimension
                    )
                )
            signature = map_signature(space.dimension)
            parsed: List[Expression] = []
            for e in expressions:
                if isinstance(e, Expression):
                    if e.signature != signature:
                        e = parse(e.to_source(), signature)
                    parsed.append(e)
                else:
                    parsed.append(parse(e, signature))
            self.expressions = tuple(parsed)
            self.name = name or "({})".format(", ".join(e.source for e in self.expressions))

    def _image(self, p: Point) -> Point:
        if self._coordinatewise is not None:
            fn = self._coordinatewise
            return tuple(fn(c) for c in p)
        assert self.expressions is not None
        values = p + (p[0],) if self.space.dimension == 1 else p
        return tuple(e.evaluate(values) for e in self.expressions)

    def apply(self, p: Sequence[float]) -> Point:
        """
        :param p: a point of the space's domain
        :return: T(p), never clamped
        :raises SelfMapViolation: if T(p) is non-finite or outside the domain
        """
        point = self.space.check_point(p)
        try:
            image = self._image(point)
        except (ExpressionEvaluationError, OverflowError, ValueError) as e:
            raise SelfMapViolation("Map {} could not be evaluated: {}".format(self.name, str(e)), point)
        if not self.space.contains(image):
            raise SelfMapViolation(
                "Map {} sends a point outside the domain of {}.".format(self.name, self.space.name), point, image
            )
        return image

    def __call__(self, p: Sequence[float]) -> Point:
        return self.apply(p)

    def to_dict(self) -> dict:
        if self.builtin is not None:
            d: dict = {'builtin': self.builtin}
            if self.params:
                d['params'] = dict(self.params)
            return d
        assert self.expressions is not None
        return {'expressions': [e.source for e in self.expressions]}

    def __repr__(self):
        return "<SelfMap {} on {}>".format(self.name, self.space.name)


def apply(map: SelfMap, p: Sequence[float]) -> Point:
    return map.apply(p)
