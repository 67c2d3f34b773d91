# -*- coding: utf-8 -*-
#
"""
Simulation functions zeta(t, s) and the sequences used to probe their limsup condition.
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

from contracta.consts import DEFAULT_PROBE_LIMITS, HOLDS, VIOLATED
from contracta.errors import UsageError
from contracta.expr import Expression, parse

from .certificate import Certificate, PairVerdict

ZETA_SIGNATURE = ('t', 's')


class SimulationFunction(Certificate):
    """
    A map is a Z-contraction under zeta when zeta(d(Tp, Tq), d(p, q)) >= 0 for every pair.
    The first argument t is the mapped distance, the second s the original one.
    """

    __slots__ = ('zeta',)

    def __init__(self, zeta: Union[str, Expression], name: Optional[str] = None):
        if isinstance(zeta, Expression):
            if zeta.signature != ZETA_SIGNATURE:
                zeta = parse(zeta.to_source(), ZETA_SIGNATURE)
        else:
            zeta = parse(zeta, ZETA_SIGNATURE)
        self.zeta: Expression = zeta
        super(SimulationFunction, self).__init__(name or zeta.source)

    @classmethod
    def certificate_kind(cls):
        return "simulation"

    @classmethod
    def certificate_parameters(cls):
        return ['zeta']

    @classmethod
    def from_dict(cls, entry: dict) -> 'SimulationFunction':
        try:
            zeta = entry['zeta']
        except KeyError:
            raise UsageError("A simulation certificate needs a 'zeta' expression in (t, s).")
        return cls(zeta, name=entry.get('name'))

    def value(self, t: float, s: float) -> float:
        return self.zeta.evaluate((t, s))

    def judge(self, distance, mapped_distance, slack=0.0, epsilon=None) -> PairVerdict:
        value = self.value(mapped_distance, distance)
        status = HOLDS if value >= -slack else VIOLATED
        return PairVerdict(status, -value, distance, mapped_distance, value=value)

    def to_dict(self) -> dict:
        return {'kind': self.certificate_kind(), 'name': self.name, 'zeta': self.zeta.source}


def z_contraction_holds(zf: SimulationFunction, map, p, q, slack: float = 0.0) -> PairVerdict:
    return zf.evaluate(map, p, q, slack)


RULE_CONSTANT = 'constant'
RULE_PLUS_INV = 'plus_inv'
RULE_MINUS_INV = 'minus_inv'
RULE_PLUS_INV_SQ = 'plus_inv_sq'
RULE_MINUS_INV_SQ = 'minus_inv_sq'
RULE_ALTERNATING = 'alternating'
SEQUENCE_RULES = (RULE_CONSTANT, RULE_PLUS_INV, RULE_MINUS_INV, RULE_PLUS_INV_SQ, RULE_MINUS_INV_SQ, RULE_ALTERNATING)
_BELOW_LIMIT_RULES = (RULE_MINUS_INV, RULE_MINUS_INV_SQ, RULE_ALTERNATING)


def sequence_term(rule: str, limit: float, c: float, n: int) -> float:
    if rule == RULE_CONSTANT:
        return limit
    elif rule == RULE_PLUS_INV:
        return limit + c / n
    elif rule == RULE_MINUS_INV:
        return limit - c / n
    elif rule == RULE_PLUS_INV_SQ:
        return limit + c / (n * n)
    elif rule == RULE_MINUS_INV_SQ:
        return limit - c / (n * n)
    elif rule == RULE_ALTERNATING:
        return limit + (c / n if n % 2 == 0 else -c / n)
    raise UsageError("Unknown sequence rule {!r}.".format(rule))


@dataclass(frozen=True)
class SequenceProbe:
    """Two positive sequences t_n and s_n sharing the limit L > 0, indexed from n = 1."""

    limit: float
    t_rule: str = RULE_CONSTANT
    s_rule: str = RULE_CONSTANT
    c: float = 0.5

    def __post_init__(self):
        if not (self.limit > 0 and math.isfinite(self.limit)):
            raise UsageError("Probe limit must be a finite positive real, got {!r}.".format(self.limit))
        if not (self.c > 0 and math.isfinite(self.c)):
            raise UsageError("Probe offset c must be a finite positive real.")
        for rule in (self.t_rule, self.s_rule):
            if rule not in SEQUENCE_RULES:
                raise UsageError(
                    "Unknown sequence rule {!r}. Expected one of: {}.".format(rule, ", ".join(SEQUENCE_RULES))
                )
            if rule in _BELOW_LIMIT_RULES and not self.c < self.limit:
                raise UsageError(
                    "Rule {} needs c < L to stay positive (c={!r}, L={!r}).".format(rule, self.c, self.limit)
                )

    def t(self, n: int) -> float:
        return sequence_term(self.t_rule, self.limit, self.c, n)

    def s(self, n: int) -> float:
        return sequence_term(self.s_rule, self.limit, self.c, n)

    @property
    def label(self) -> str:
        return "L={!r}, t={}, s={}".format(self.limit, self.t_rule, self.s_rule)

    def to_dict(self) -> dict:
        return {'limit': self.limit, 't_rule': self.t_rule, 's_rule': self.s_rule, 'c': self.c}


def default_probes(limits: Sequence[float] = DEFAULT_PROBE_LIMITS) -> List[SequenceProbe]:
    probes = []
    for L in limits:
        c = L / 2.0
        probes.extend(
            [
                SequenceProbe(L, RULE_CONSTANT, RULE_CONSTANT, c),
                SequenceProbe(L, RULE_PLUS_INV, RULE_PLUS_INV, c),
                SequenceProbe(L, RULE_MINUS_INV, RULE_PLUS_INV, c),
                SequenceProbe(L, RULE_PLUS_INV_SQ, RULE_MINUS_INV_SQ, c),
                SequenceProbe(L, RULE_ALTERNATING, RULE_CONSTANT, c),
            ]
        )
    return probes
