# -*- coding: utf-8 -*-
#
from typing import Optional, Sequence, Union

from contracta.consts import HOLDS, STRICTNESS_DEFINITION4, STRICTNESS_LEVELS, STRICTNESS_THEOREM6, VIOLATED
from contracta.errors import UsageError
from contracta.expr import Expression, parse

from .certificate import Certificate, PairVerdict

SCALAR_SIGNATURE = ('t',)


def _scalar(e: Union[str, Expression]) -> Expression:
    if isinstance(e, Expression):
        return e if e.signature == SCALAR_SIGNATURE else parse(e.to_source(), SCALAR_SIGNATURE)
    return parse(e, SCALAR_SIGNATURE)


class WeaklyTypeTriple(Certificate):
    """
    psi(d(Tp, Tq)) <= alpha(d(p, q)) - beta(d(p, q)).

    strictness 'theorem6' additionally asks psi(0) = alpha(0) = beta(0) = 0, psi > 0
    away from 0 and psi continuous; 'definition4' drops those.
    """

    __slots__ = ('psi', 'alpha', 'beta', 'strictness')

    def __init__(
        self,
        psi: Union[str, Expression],
        alpha: Union[str, Expression],
        beta: Union[str, Expression],
        strictness: str = STRICTNESS_DEFINITION4,
        name: Optional[str] = None,
    ):
        if strictness not in STRICTNESS_LEVELS:
            raise UsageError(
                "Unknown strictness {!r}. Expected one of: {}.".format(strictness, ", ".join(STRICTNESS_LEVELS))
            )
        self.psi = _scalar(psi)
        self.alpha = _scalar(alpha)
        self.beta = _scalar(beta)
        self.strictness = strictness
        super(WeaklyTypeTriple, self).__init__(
            name or "({}, {}, {})".format(self.psi.source, self.alpha.source, self.beta.source)
        )

    @classmethod
    def certificate_kind(cls):
        return "weakly_type"

    @classmethod
    def certificate_parameters(cls):
        return ['psi', 'alpha', 'beta', 'strictness']

    @classmethod
    def from_dict(cls, entry: dict) -> 'WeaklyTypeTriple':
        missing = [k for k in ('psi', 'alpha', 'beta') if k not in entry]
        if missing:
            raise UsageError("A weakly_type certificate is missing {}.".format(", ".join(missing)))
        return cls(
            entry['psi'],
            entry['alpha'],
            entry['beta'],
            strictness=entry.get('strictness', STRICTNESS_DEFINITION4),
            name=entry.get('name'),
        )

    def with_strictness(self, strictness: str) -> 'WeaklyTypeTriple':
        return WeaklyTypeTriple(self.psi, self.alpha, self.beta, strictness=strictness, name=self.name)

    def judge(self, distance, mapped_distance, slack=0.0, epsilon=None) -> PairVerdict:
        lhs = self.psi.evaluate((mapped_distance,))
        rhs = self.alpha.evaluate((distance,)) - self.beta.evaluate((distance,))
        margin = lhs - rhs
        status = HOLDS if margin <= slack else VIOLATED
        return PairVerdict(status, margin, distance, mapped_distance, value=lhs)

    def certified_strictness(self, grid: Sequence[float]) -> Optional[str]:
        """The strongest strictness whose admissibility checks pass on grid, or None."""
        from .admissibility import wt_admissibility_check

        for level in (STRICTNESS_THEOREM6, STRICTNESS_DEFINITION4):
            if wt_admissibility_check(self.with_strictness(level), grid).passed:
                return level
        return None

    def to_dict(self) -> dict:
        return {
            'kind': self.certificate_kind(),
            'name': self.name,
            'psi': self.psi.source,
            'alpha': self.alpha.source,
            'beta': self.beta.source,
            'strictness': self.strictness,
        }


def weakly_type_holds(triple: WeaklyTypeTriple, map, p, q, slack: float = 0.0) -> PairVerdict:
    return triple.evaluate(map, p, q, slack)
