# -*- coding: utf-8 -*-
#
import bisect
import math
from typing import List, Optional, Sequence, Tuple, Union

from contracta.consts import HOLDS, VACUOUS, VIOLATED
from contracta.errors import CertificateEvaluationError, InvalidModulusError, UsageError
from contracta.expr import Expression, parse

from .certificate import Certificate, PairVerdict

MODULUS_SIGNATURE = ('eps',)


class MeirKeelerModulus(Certificate):
    """
    A Meir-Keeler modulus eps -> delta(eps): whenever eps <= d(p, q) < eps + delta,
    the map must send the pair below eps.

    delta is an expression in eps, or a table of (eps, delta) rows read as a step
    function from the largest tabulated eps not above the query.
    """

    __slots__ = ('expression', 'table', 'cap')

    needs_epsilon = True

    def __init__(
        self,
        delta: Union[str, Expression, Sequence[Tuple[float, float]]],
        cap: Optional[float] = None,
        name: Optional[str] = None,
    ):
        self.expression: Optional[Expression] = None
        self.table: Optional[Tuple[Tuple[float, float], ...]] = None
        if isinstance(delta, Expression):
            if delta.signature != MODULUS_SIGNATURE:
                delta = parse(delta.to_source(), MODULUS_SIGNATURE)
            self.expression = delta
        elif isinstance(delta, str):
            self.expression = parse(delta, MODULUS_SIGNATURE)
        else:
            rows: List[Tuple[float, float]] = []
            for row in delta:
                try:
                    e, d = row
                    rows.append((float(e), float(d)))
                except (TypeError, ValueError):
                    raise UsageError("Modulus table rows must be (eps, delta) pairs, got {!r}.".format(row))
            if len(rows) < 1:
                raise UsageError("Modulus table must not be empty.")
            for (a, _), (b, _) in zip(rows, rows[1:]):
                if not a < b:
                    raise UsageError("Modulus table eps values must be strictly ascending.")
            self.table = tuple(rows)
        if cap is not None and not (cap > 0 and math.isfinite(cap)):
            raise UsageError("Modulus cap must be a finite positive real.")
        self.cap = None if cap is None else float(cap)
        if name is None:
            name = self.expression.source if self.expression is not None else "table"
        super(MeirKeelerModulus, self).__init__(name)

    @classmethod
    def certificate_kind(cls):
        return "meir_keeler"

    @classmethod
    def certificate_parameters(cls):
        return ['delta', 'table', 'cap']

    @classmethod
    def from_dict(cls, entry: dict) -> 'MeirKeelerModulus':
        if ('delta' in entry) == ('table' in entry):
            raise UsageError("A meir_keeler certificate needs exactly one of 'delta' or 'table'.")
        delta = entry['delta'] if 'delta' in entry else entry['table']
        return cls(delta, cap=entry.get('cap'), name=entry.get('name'))

    def delta(self, epsilon: float) -> float:
        """
        :raises InvalidModulusError: if delta(eps) is not a finite positive real
        """
        if not (epsilon > 0 and math.isfinite(epsilon)):
            raise UsageError("Meir-Keeler epsilon must be a finite positive real, got {!r}.".format(epsilon))
        if self.expression is not None:
            try:
                value = self.expression.evaluate((epsilon,))
            except CertificateEvaluationError as e:
                raise InvalidModulusError(
                    "Modulus could not be evaluated at eps={!r}: {}".format(epsilon, e.message), node=e.node
                )
        else:
            assert self.table is not None
            keys = [e for (e, _) in self.table]
            i = bisect.bisect_right(keys, epsilon) - 1
            if i < 0:
                raise InvalidModulusError(
                    "Modulus table starts at eps={!r}, below which delta is undefined (asked for {!r}).".format(
                        keys[0], epsilon
                    )
                )
            value = self.table[i][1]
        if not (value > 0 and math.isfinite(value)):
            raise InvalidModulusError(
                "Modulus gives delta({!r}) = {!r}, which is not positive.".format(epsilon, value)
            )
        if self.cap is not None:
            value = min(value, self.cap)
        return value

    def in_band(self, distance: float, epsilon: float) -> bool:
        return epsilon <= distance < epsilon + self.delta(epsilon)

    def judge(self, distance, mapped_distance, slack=0.0, epsilon=None) -> PairVerdict:
        if epsilon is None:
            raise UsageError("Meir-Keeler conditions are checked at a given epsilon.")
        delta = self.delta(epsilon)
        if not (epsilon <= distance < epsilon + delta):
            return PairVerdict(VACUOUS, None, distance, mapped_distance, value=delta, epsilon=epsilon)
        status = HOLDS if mapped_distance < epsilon + slack else VIOLATED
        return PairVerdict(status, mapped_distance - epsilon, distance, mapped_distance, value=delta, epsilon=epsilon)

    def to_dict(self) -> dict:
        d: dict = {'kind': self.certificate_kind(), 'name': self.name}
        if self.expression is not None:
            d['delta'] = self.expression.source
        else:
            assert self.table is not None
            d['table'] = [list(row) for row in self.table]
        if self.cap is not None:
            d['cap'] = self.cap
        return d


def mk_condition_holds(modulus: MeirKeelerModulus, map, epsilon: float, p, q, slack: float = 0.0) -> PairVerdict:
    return modulus.evaluate(map, p, q, slack, epsilon=epsilon)
