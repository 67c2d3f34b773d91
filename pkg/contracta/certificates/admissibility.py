# -*- coding: utf-8 -*-
#
"""
Admissibility checks for simulation functions and weakly-type triples.

Every check runs on finitely many points, so a passing report reads
"consistent with admissibility" and never "proved admissible".
"""
import math
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence

from contracta.consts import (
    DEFAULT_OSCILLATION_STEPS,
    DEFAULT_PROBE_HORIZON,
    OSCILLATION_TOLERANCE,
    STRICTNESS_THEOREM6,
)
from contracta.errors import CertificateEvaluationError, UsageError
from contracta.expr import Expression

from .simulation import SequenceProbe, SimulationFunction, default_probes
from .weakly_type import WeaklyTypeTriple

CONSISTENT = 'consistent'
REFUTED = 'refuted'

NOT_MACHINE_VERIFIABLE = (
    "Declared property. Spot-checked by a finite oscillation probe only; limits are not machine-verifiable."
)


@dataclass
class ConditionCheck:
    name: str
    passed: bool
    detail: str = ""
    worst: Optional[float] = None
    witness: Optional[Any] = None
    informational: bool = False

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'passed': self.passed,
            'detail': self.detail,
            'worst': self.worst,
            'witness': self.witness,
            'informational': self.informational,
        }


@dataclass
class AdmissibilityReport:
    subject: str
    checks: List[ConditionCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    @property
    def verdict(self) -> str:
        return CONSISTENT if self.passed else REFUTED

    def check(self, name: str) -> ConditionCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> List[ConditionCheck]:
        return [c for c in self.checks if not c.passed and not c.informational]

    def to_dict(self) -> dict:
        return {
            'subject': self.subject,
            'verdict': self.verdict,
            'passed': self.passed,
            'checks': [c.to_dict() for c in self.checks],
        }


def default_grid(low: float = 1e-3, high: float = 1e2, count: int = 26) -> List[float]:
    """count points spaced geometrically from low to high, both included."""
    ratio = (high / low) ** (1.0 / (count - 1))
    grid = [low * ratio**i for i in range(count - 1)]
    grid.append(high)
    return grid


def _check_grid(grid: Sequence[float], ordered: bool = False) -> List[float]:
    g = [float(t) for t in grid]
    if len(g) < 1:
        raise UsageError("Probe grid must not be empty.")
    for t in g:
        if not (t > 0 and math.isfinite(t)):
            raise UsageError("Probe grid points must be finite positive reals, got {!r}.".format(t))
    if ordered:
        for a, b in zip(g, g[1:]):
            if b < a:
                raise UsageError("Probe grid must be sorted ascending.")
    return g


def zeta_admissibility_probe(
    zf: SimulationFunction,
    grid: Optional[Sequence[float]] = None,
    probes: Optional[Sequence[SequenceProbe]] = None,
    horizon: int = DEFAULT_PROBE_HORIZON,
) -> AdmissibilityReport:
    """
    Checks zeta(0, 0) = 0 exactly, zeta(t, s) < s - t on grid x grid, and for each
    probe that the maximum of zeta(t_n, s_n) over n in [horizon/2, horizon] is negative.

    :raises CertificateEvaluationError: if zeta is non-finite anywhere it is probed
    """
    g = _check_grid(default_grid() if grid is None else grid)
    if int(horizon) < 8:
        raise UsageError("Probe horizon must be at least 8, got {!r}.".format(horizon))
    horizon = int(horizon)
    if probes is None:
        probes = default_probes()
    report = AdmissibilityReport(subject=zf.name)

    z00 = zf.value(0.0, 0.0)
    report.checks.append(
        ConditionCheck('zero_at_origin', z00 == 0.0, "zeta(0, 0) = {!r}".format(z00), worst=z00, witness=[0.0, 0.0])
    )

    worst = None
    witness = None
    for s in g:
        for t in g:
            gap = zf.value(t, s) - (s - t)
            if worst is None or gap > worst:
                worst = gap
                witness = [t, s]
    below = worst is not None and worst < 0
    report.checks.append(
        ConditionCheck(
            'below_diagonal',
            below,
            "max of zeta(t, s) - (s - t) over {} grid pairs".format(len(g) * len(g)),
            worst=worst,
            witness=witness,
        )
    )

    first = horizon // 2
    for probe in probes:
        tail_max = None
        at = None
        for n in range(first, horizon + 1):
            v = zf.value(probe.t(n), probe.s(n))
            if tail_max is None or v > tail_max:
                tail_max = v
                at = n
        assert tail_max is not None
        report.checks.append(
            ConditionCheck(
                'limsup[{}]'.format(probe.label),
                tail_max < 0,
                "max of zeta(t_n, s_n) for n in [{}, {}]".format(first, horizon),
                worst=tail_max,
                witness={'n': at, 'probe': probe.to_dict()},
            )
        )
    return report


def _safe(e: Expression, t: float) -> Optional[float]:
    try:
        return e.evaluate((t,))
    except CertificateEvaluationError:
        return None


def _oscillation(e: Expression, grid: Sequence[float], steps: Sequence[float], lower_only: bool = False):
    """
    Worst |f(t +- h) - f(t)| over the grid at the smallest step, or for lower_only the
    worst drop f(t) - f(t +- h). Returns (worst, witness, per_step).
    """
    per_step = []
    worst = 0.0
    witness = None
    for h in steps:
        step_worst = 0.0
        for t in grid:
            ft = _safe(e, t)
            if ft is None:
                continue
            for u in (t - h, t + h):
                if u < 0:
                    continue
                fu = _safe(e, u)
                if fu is None:
                    continue
                change = (ft - fu) if lower_only else abs(fu - ft)
                scaled = change / (1.0 + abs(ft))
                if scaled > step_worst:
                    step_worst = scaled
                    if h == steps[-1]:
                        witness = {'t': t, 'h': h}
        per_step.append([h, step_worst])
        worst = step_worst
    return worst, witness, per_step


def _declared_check(name: str, e: Expression, grid, steps, lower_only=False) -> ConditionCheck:
    worst, witness, per_step = _oscillation(e, grid, steps, lower_only)
    return ConditionCheck(
        name,
        worst <= OSCILLATION_TOLERANCE,
        "{} Relative oscillation per step: {}".format(NOT_MACHINE_VERIFIABLE, per_step),
        worst=worst,
        witness=witness,
        informational=True,
    )


def _pointwise(name: str, detail: str, grid: Sequence[float], fn) -> ConditionCheck:
    """fn(t) returns (ok, value); the check fails at the first not-ok point or evaluation error."""
    worst = None
    for t in grid:
        try:
            ok, value = fn(t)
        except CertificateEvaluationError as e:
            return ConditionCheck(name, False, "{}: {}".format(detail, e.message), witness={'t': t})
        if worst is None or value < worst:
            worst = value
        if not ok:
            return ConditionCheck(name, False, detail, worst=value, witness={'t': t})
    return ConditionCheck(name, True, detail, worst=worst)


def wt_admissibility_check(
    triple: WeaklyTypeTriple,
    grid: Optional[Sequence[float]] = None,
    steps: Sequence[float] = DEFAULT_OSCILLATION_STEPS,
) -> AdmissibilityReport:
    """
    Grid checks of a weakly-type triple. Failures are report entries, never raised.

    :raises UsageError: if the grid is empty, non-positive or unsorted
    """
    g = _check_grid(default_grid() if grid is None else grid, ordered=True)
    psi, alpha, beta = triple.psi, triple.alpha, triple.beta
    report = AdmissibilityReport(subject="{} [{}]".format(triple.name, triple.strictness))

    def gap(t):
        v = psi.evaluate((t,)) - alpha.evaluate((t,)) + beta.evaluate((t,))
        return v > 0, v

    report.checks.append(_pointwise('gap_positive', "psi(t) - alpha(t) + beta(t) > 0", g, gap))

    monotone = ConditionCheck('psi_non_decreasing', True, "psi(t_i) <= psi(t_j) for i < j")
    try:
        values = [psi.evaluate((t,)) for t in g]
        for i in range(len(values) - 1):
            step = values[i + 1] - values[i]
            if monotone.worst is None or step < monotone.worst:
                monotone.worst = step
            if values[i + 1] < values[i]:
                monotone.passed = False
                monotone.witness = {'t_i': g[i], 't_j': g[i + 1]}
                break
    except CertificateEvaluationError as e:
        monotone.passed = False
        monotone.detail = "{}: {}".format(monotone.detail, e.message)
    report.checks.append(monotone)

    def non_negative(t):
        v = min(psi.evaluate((t,)), alpha.evaluate((t,)), beta.evaluate((t,)))
        return v >= 0, v

    report.checks.append(
        _pointwise('non_negative', "psi, alpha and beta map [0, inf) into [0, inf)", [0.0] + g, non_negative)
    )

    if triple.strictness == STRICTNESS_THEOREM6:

        def zero(t):
            values = (psi.evaluate((0.0,)), alpha.evaluate((0.0,)), beta.evaluate((0.0,)))
            return all(v == 0.0 for v in values), max(abs(v) for v in values)

        report.checks.append(_pointwise('zero_at_origin', "psi(0) = alpha(0) = beta(0) = 0", [0.0], zero))

        def positive(t):
            v = psi.evaluate((t,))
            return v > 0, v

        report.checks.append(_pointwise('psi_positive', "psi(t) > 0 for t > 0", g, positive))
        report.checks.append(_declared_check('psi_continuous', psi, g, steps))

    report.checks.append(_declared_check('alpha_continuous', alpha, g, steps))
    report.checks.append(_declared_check('beta_lower_semicontinuous', beta, g, steps, lower_only=True))
    return report
