# -*- coding: utf-8 -*-
#
"""
Value types for everything the verifier reports.

Each report has to_dict() for the JSON payload, headers/rows() for CSV and table
output, and describe() for the plain-text report.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .consts import ESTIMATE_INFEASIBLE, ESTIMATE_POSITIVE, ESTIMATE_SKIPPED
from .pytypes import Point

NO_VIOLATION = 'no-violation-found'
WITNESS_FOUND = 'witness'


def _pt(p: Optional[Sequence[float]]) -> Optional[List[float]]:
    return None if p is None else [float(c) for c in p]


@dataclass(frozen=True)
class WitnessPair:
    p: Point
    q: Point
    distance: float
    mapped_distance: float
    margin: Optional[float]
    epsilon: Optional[float] = None
    index: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            'p': _pt(self.p),
            'q': _pt(self.q),
            'distance': self.distance,
            'mapped_distance': self.mapped_distance,
            'margin': self.margin,
            'epsilon': self.epsilon,
            'index': self.index,
        }


@dataclass
class CounterexampleWitness:
    """
    Concrete pairs on which a certificate inequality fails. Re-evaluating any pair
    with the same certificate, map and slack reproduces the failure.
    """

    kind: str
    certificate: str
    pairs: List[WitnessPair] = field(default_factory=list)
    epsilon_0: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            'kind': self.kind,
            'certificate': self.certificate,
            'epsilon_0': self.epsilon_0,
            'pairs': [p.to_dict() for p in self.pairs],
        }

    def describe(self) -> str:
        lines = ["Counterexample for {} certificate {}:".format(self.kind, self.certificate)]
        if self.epsilon_0 is not None:
            lines.append("\tepsilon_0: {!r}".format(self.epsilon_0))
        for w in self.pairs:
            lines.append(
                "\tp={} q={} d={!r} d(T)={!r} margin={!r}".format(
                    _pt(w.p), _pt(w.q), w.distance, w.mapped_distance, w.margin
                )
            )
        return "\n".join(lines)


@dataclass
class VerificationResult:
    certificate: Dict[str, Any]
    pairs_examined: int
    vacuous: int = 0
    witness: Optional[CounterexampleWitness] = None
    worst_margin: Optional[float] = None
    worst_pair: Optional[WitnessPair] = None
    slack: float = 0.0
    infeasible_epsilons: List[float] = field(default_factory=list)
    shortfalls: Dict[str, int] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.witness is None

    @property
    def verdict(self) -> str:
        return NO_VIOLATION if self.verified else WITNESS_FOUND

    headers = ['certificate', 'kind', 'verdict', 'pairs_examined', 'vacuous', 'worst_margin']

    def row(self) -> list:
        return [
            self.certificate.get('name'),
            self.certificate.get('kind'),
            self.verdict,
            self.pairs_examined,
            self.vacuous,
            self.worst_margin,
        ]

    def to_dict(self) -> dict:
        return {
            'certificate': dict(self.certificate),
            'verdict': self.verdict,
            'pairs_examined': self.pairs_examined,
            'vacuous': self.vacuous,
            'slack': self.slack,
            'worst_margin': self.worst_margin,
            'worst_pair': None if self.worst_pair is None else self.worst_pair.to_dict(),
            'witness': None if self.witness is None else self.witness.to_dict(),
            'infeasible_epsilons': list(self.infeasible_epsilons),
            'shortfalls': dict(self.shortfalls),
        }

    def describe(self) -> str:
        lines = [
            "Certificate {} ({}): {}".format(self.certificate.get('name'), self.certificate.get('kind'), self.verdict),
            "\tPairs examined: {} (vacuous: {})".format(self.pairs_examined, self.vacuous),
            "\tWorst margin: {!r}".format(self.worst_margin),
        ]
        if self.infeasible_epsilons:
            lines.append("\tInfeasible epsilons: {}".format(self.infeasible_epsilons))
        if self.witness is not None:
            lines.append(self.witness.describe())
        return "\n".join(lines)


@dataclass
class ModulusEstimate:
    epsilon: float
    delta_hat: float
    pairs_examined: int
    verdict: str
    initial_width: Optional[float] = None
    witness: Optional[CounterexampleWitness] = None
    levels: List[Dict[str, Any]] = field(default_factory=list)
    note: Optional[str] = None

    @property
    def positive(self) -> bool:
        return self.verdict == ESTIMATE_POSITIVE

    headers = ['epsilon', 'verdict', 'delta_hat', 'pairs_examined', 'levels']

    def row(self) -> list:
        return [self.epsilon, self.verdict, self.delta_hat, self.pairs_examined, len(self.levels)]

    def to_dict(self) -> dict:
        return {
            'epsilon': self.epsilon,
            'verdict': self.verdict,
            'delta_hat': self.delta_hat,
            'pairs_examined': self.pairs_examined,
            'initial_width': self.initial_width,
            'levels': [dict(lv) for lv in self.levels],
            'witness': None if self.witness is None else self.witness.to_dict(),
            'note': self.note,
        }

    def describe(self) -> str:
        text = "epsilon={!r}: {} (delta_hat={!r}, {} pairs)".format(
            self.epsilon, self.verdict, self.delta_hat, self.pairs_examined
        )
        if self.note:
            text += " [{}]".format(self.note)
        if self.witness is not None:
            text += "\n" + self.witness.describe()
        return text


@dataclass
class ClassificationReport:
    space: Dict[str, Any]
    map: Dict[str, Any]
    lambda_hat: float
    lambda_pairs: int
    banach: Optional[VerificationResult]
    zetas: Dict[str, VerificationResult]
    triples: Dict[str, VerificationResult]
    moduli: List[ModulusEstimate]
    contractive: VerificationResult
    config: Dict[str, Any] = field(default_factory=dict)
    banach_note: Optional[str] = None

    @property
    def verdicts(self) -> Dict[str, bool]:
        v = {'banach': self.banach is not None and self.banach.verified}
        for name, r in self.zetas.items():
            v['zeta:' + name] = r.verified
        for name, r in self.triples.items():
            v['weakly_type:' + name] = r.verified
        feasible = [m for m in self.moduli if m.verdict != ESTIMATE_INFEASIBLE]
        v['meir_keeler'] = len(feasible) > 0 and all(m.positive for m in feasible)
        v['contractive'] = self.contractive.verified
        return v

    headers = ['class', 'verified']

    def rows(self) -> List[list]:
        return [[k, v] for k, v in self.verdicts.items()]

    def to_dict(self) -> dict:
        return {
            'space': dict(self.space),
            'map': dict(self.map),
            'lambda_hat': self.lambda_hat,
            'lambda_pairs': self.lambda_pairs,
            'banach': None if self.banach is None else self.banach.to_dict(),
            'banach_note': self.banach_note,
            'zetas': {k: r.to_dict() for k, r in self.zetas.items()},
            'triples': {k: r.to_dict() for k, r in self.triples.items()},
            'moduli': [m.to_dict() for m in self.moduli],
            'contractive': self.contractive.to_dict(),
            'verdicts': self.verdicts,
            'config': dict(self.config),
        }

    def describe(self) -> str:
        lines = [
            "Classification of map {} on {}".format(self.map, self.space.get('name')),
            "lambda_hat: {!r} over {} pairs".format(self.lambda_hat, self.lambda_pairs),
        ]
        for k, v in self.verdicts.items():
            lines.append("\t{}: {}".format(k, "verified" if v else "not verified"))
        if self.banach_note:
            lines.append("\tNote: {}".format(self.banach_note))
        for m in self.moduli:
            lines.append("\t" + m.describe())
        return "\n".join(lines)


@dataclass
class ContainmentRow:
    instance: str
    certificate: str
    epsilon: Optional[float]
    verdict: str
    delta_hat: Optional[float] = None
    pairs_examined: int = 0
    note: Optional[str] = None

    @property
    def counted(self) -> bool:
        """Rows entering the all-positive conjunction."""
        return self.verdict not in (ESTIMATE_SKIPPED, ESTIMATE_INFEASIBLE)

    def to_dict(self) -> dict:
        return {
            'instance': self.instance,
            'certificate': self.certificate,
            'epsilon': self.epsilon,
            'verdict': self.verdict,
            'delta_hat': self.delta_hat,
            'pairs_examined': self.pairs_examined,
            'note': self.note,
        }


@dataclass
class ContainmentTable:
    rows: List[ContainmentRow] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def all_positive(self) -> bool:
        return all(r.verdict == ESTIMATE_POSITIVE for r in self.rows if r.counted)

    headers = ['instance', 'certificate', 'epsilon', 'verdict', 'delta_hat', 'pairs_examined', 'note']

    def table_rows(self) -> List[list]:
        return [
            [r.instance, r.certificate, r.epsilon, r.verdict, r.delta_hat, r.pairs_examined, r.note or ""]
            for r in self.rows
        ]

    def to_dict(self) -> dict:
        return {
            'all_positive': self.all_positive,
            'rows': [r.to_dict() for r in self.rows],
            'config': dict(self.config),
        }

    def describe(self) -> str:
        lines = ["Containment demo: {}".format("all verified rows positive" if self.all_positive else "FAILED")]
        for r in self.rows:
            note = " ({})".format(r.note) if r.note else ""
            lines.append(
                "\t{} / {} eps={!r}: {} delta_hat={!r}{}".format(
                    r.instance, r.certificate, r.epsilon, r.verdict, r.delta_hat, note
                )
            )
        return "\n".join(lines)


@dataclass
class UniquenessResult:
    agree: bool
    fixed_point: Optional[Point]
    max_spread: Optional[float]
    agreement_tolerance: float
    starts: List[Point] = field(default_factory=list)
    limits: List[Optional[Point]] = field(default_factory=list)
    verdicts: List[str] = field(default_factory=list)
    witness_starts: List[Point] = field(default_factory=list)

    headers = ['start', 'verdict', 'limit']

    def rows(self) -> List[list]:
        return [[_pt(s), v, _pt(lim)] for s, v, lim in zip(self.starts, self.verdicts, self.limits)]

    def to_dict(self) -> dict:
        return {
            'agree': self.agree,
            'fixed_point': _pt(self.fixed_point),
            'max_spread': self.max_spread,
            'agreement_tolerance': self.agreement_tolerance,
            'starts': [_pt(s) for s in self.starts],
            'limits': [_pt(lim) for lim in self.limits],
            'verdicts': list(self.verdicts),
            'witness_starts': [_pt(s) for s in self.witness_starts],
        }

    def describe(self) -> str:
        if self.agree:
            return "All {} starts agree at {} (spread {!r})".format(
                len(self.starts), _pt(self.fixed_point), self.max_spread
            )
        return "Starts disagree; witnesses: {}".format([_pt(s) for s in self.witness_starts])
