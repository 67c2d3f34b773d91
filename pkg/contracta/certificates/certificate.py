# -*- coding: utf-8 -*-
#
import abc
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from contracta.consts import HOLDS, VACUOUS, VIOLATED
from contracta.errors import CertificateEvaluationError, UsageError
from contracta.space import SelfMap


@dataclass(frozen=True)
class PairVerdict:
    """
    Outcome of one certificate inequality on one pair.

    margin is signed so that larger is worse; it is None when the inequality is
    vacuous for the pair. Non-strict inequalities (Banach, simulation, weakly-type)
    hold when margin <= slack. Strict ones (Meir-Keeler, where margin is
    d(Tp, Tq) - eps, and the contractive property) hold only when margin < slack.
    """

    status: str
    margin: Optional[float]
    distance: float
    mapped_distance: float
    value: Optional[float] = None
    epsilon: Optional[float] = None

    @property
    def holds(self) -> bool:
        return self.status != VIOLATED

    @property
    def violated(self) -> bool:
        return self.status == VIOLATED

    def to_dict(self) -> dict:
        d = {
            'status': self.status,
            'margin': self.margin,
            'distance': self.distance,
            'mapped_distance': self.mapped_distance,
        }
        if self.value is not None:
            d['value'] = self.value
        if self.epsilon is not None:
            d['epsilon'] = self.epsilon
        return d


def pair_distances(map: SelfMap, p: Sequence[float], q: Sequence[float]) -> Tuple[float, float]:
    """d(p, q) and d(Tp, Tq). SelfMapViolation propagates from apply."""
    space = map.space
    tp = map.apply(p)
    tq = map.apply(q)
    return space.distance(p, q), space.distance(tp, tq)


def check_slack(slack: float) -> float:
    slack = float(slack)
    if not (math.isfinite(slack) and slack >= 0):
        raise UsageError("Slack must be a finite non-negative real, got {!r}.".format(slack))
    return slack


def finite_or_raise(value: float, what: str, node: Optional[str] = None) -> float:
    if not math.isfinite(value):
        raise CertificateEvaluationError("{} evaluated to a non-finite value {!r}.".format(what, value), node=node)
    return value


class Certificate(object, metaclass=abc.ABCMeta):
    """
    Abstract contraction certificate.
    All certificate kinds must inherit from this class.
    """

    __slots__ = ('name',)

    # True if the inequality only speaks about pairs inside an epsilon band
    needs_epsilon = False

    def __init__(self, name: Optional[str] = None):
        self.name = name or self.certificate_kind()

    @classmethod
    @abc.abstractmethod
    def certificate_kind(cls) -> str:
        raise NotImplementedError()  # pragma: no cover

    @classmethod
    @abc.abstractmethod
    def certificate_parameters(cls) -> Sequence[str]:
        raise NotImplementedError()  # pragma: no cover

    @classmethod
    @abc.abstractmethod
    def from_dict(cls, entry: dict) -> 'Certificate':
        raise NotImplementedError()  # pragma: no cover

    @abc.abstractmethod
    def judge(
        self, distance: float, mapped_distance: float, slack: float = 0.0, epsilon: Optional[float] = None
    ) -> PairVerdict:
        """Decide the inequality from d(p, q) and d(Tp, Tq) alone."""
        raise NotImplementedError()  # pragma: no cover

    @abc.abstractmethod
    def to_dict(self) -> dict:
        raise NotImplementedError()  # pragma: no cover

    def evaluate(
        self,
        map: SelfMap,
        p: Sequence[float],
        q: Sequence[float],
        slack: float = 0.0,
        epsilon: Optional[float] = None,
    ) -> PairVerdict:
        d, dt = pair_distances(map, p, q)
        return self.judge(d, dt, check_slack(slack), epsilon)

    def __str__(self):
        return "<{} {}>".format(self.__class__.__name__, self.name)

    def __repr__(self):
        return self.__str__()


def contractive_holds(map: SelfMap, p: Sequence[float], q: Sequence[float], slack: float = 0.0) -> PairVerdict:
    """
    d(Tp, Tq) < d(p, q) for p != q, the property shared by every Z-contraction and
    every Meir-Keeler map. Coincident points hold trivially.
    """
    d, dt = pair_distances(map, p, q)
    return judge_contractive(d, dt, check_slack(slack))


def judge_contractive(distance: float, mapped_distance: float, slack: float = 0.0) -> PairVerdict:
    if distance == 0:
        return PairVerdict(VACUOUS, None, distance, mapped_distance)
    margin = mapped_distance - distance
    status = HOLDS if mapped_distance < distance + slack else VIOLATED
    return PairVerdict(status, margin, distance, mapped_distance)
