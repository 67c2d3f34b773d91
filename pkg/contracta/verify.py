# -*- coding: utf-8 -*-
#
"""
Sampling-based verification and falsification of contraction certificates,
Meir-Keeler modulus estimation, classification and multi-start Picard agreement.

Nothing here proves anything. "Verified" means no violation on the sampled pairs,
and every report carries the sample counts and the sampled region it speaks for.
"""
import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from sys import stderr
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, TypeVar, Union

from .certificates import (
    BanachCertificate,
    Certificate,
    ContainmentInstance,
    SimulationFunction,
    WeaklyTypeTriple,
    judge_contractive,
    pair_distances,
    triple_library,
    zeta_library,
)
from .certificates.certificate import PairVerdict, check_slack
from .consts import (
    AGREEMENT_FACTOR,
    DEFAULT_EPSILON_GRID,
    DEFAULT_LAMBDA_MARGIN,
    DEFAULT_MAX_ITER,
    DEFAULT_N_PAIRS,
    DEFAULT_N_STARTS,
    DEFAULT_N_TRIPLES,
    DEFAULT_SEED,
    DEFAULT_SHRINK_LEVELS,
    DEFAULT_SLACK,
    DEFAULT_TOL,
    DEFAULT_WIDTH_FACTOR,
    DEFAULT_WORKERS,
    ESTIMATE_FAILED,
    ESTIMATE_INCONCLUSIVE,
    ESTIMATE_INFEASIBLE,
    ESTIMATE_POSITIVE,
    ESTIMATE_SKIPPED,
    SAMPLER_BLOCK_SIZE,
    SCHEME_ANNULUS,
    SCHEME_UNIFORM_BOX,
    STREAM_ANNULUS,
    STREAM_LADDER_BASE,
    STREAM_MK_BASE,
    STREAM_PAIRS,
    STREAM_STARTS,
    VIOLATED,
)
from .errors import InfeasibleBandError, SelfMapViolation, SlackWarning, UsageError
from .picard import PicardTrace, StoppingRule, picard_iterate
from .pytypes import Point, PointPair, VerificationConfig
from .reports import (
    ClassificationReport,
    ContainmentRow,
    ContainmentTable,
    CounterexampleWitness,
    ModulusEstimate,
    UniquenessResult,
    VerificationResult,
    WitnessPair,
)
from .sampler import Sampler, band_is_feasible, sample_pair_in_annulus
from .space import MetricSpace, SelfMap

log_handler = logging.StreamHandler(stderr)
log = logging.getLogger(__name__)
for h in log.handlers:
    log.removeHandler(h)  # pragma:no cover
log.addHandler(log_handler)
log.setLevel(logging.INFO)
log_handler.setLevel(logging.INFO)

LADDER_WITNESS_KIND = 'meir_keeler_ladder'
CONTRACTIVE_KIND = 'contractive'

T = TypeVar('T')
R = TypeVar('R')

Judge = Callable[[float, float], PairVerdict]


def _run_ordered(fn: Callable[[T], R], items: Sequence[T], workers: int) -> List[R]:
    """fn over items, results in item order whatever the worker count."""
    if workers <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _warn_slack(slack: float, logger: logging.Logger):
    if slack > 0:
        w = SlackWarning(slack)
        logger.warning(str(w))
        warnings.warn(w)


@dataclass
class _ChunkSummary:
    examined: int = 0
    vacuous: int = 0
    first_violation: Optional[WitnessPair] = None
    worst: Optional[WitnessPair] = None


def _witness_pair(p, q, v: PairVerdict, index: int) -> WitnessPair:
    return WitnessPair(
        p=tuple(p),
        q=tuple(q),
        distance=v.distance,
        mapped_distance=v.mapped_distance,
        margin=v.margin,
        epsilon=v.epsilon,
        index=index,
    )


def _judge_chunk(map: SelfMap, pairs: Sequence[PointPair], start: int, judge: Judge) -> _ChunkSummary:
    summary = _ChunkSummary()
    for offset, (p, q) in enumerate(pairs):
        d, dt = pair_distances(map, p, q)
        v = judge(d, dt)
        summary.examined += 1
        if v.margin is None:
            summary.vacuous += 1
            continue
        if summary.worst is None or v.margin > summary.worst.margin:  # type: ignore[operator]
            summary.worst = _witness_pair(p, q, v, start + offset)
        if v.status == VIOLATED and summary.first_violation is None:
            summary.first_violation = _witness_pair(p, q, v, start + offset)
    return summary


def _reduce(summaries: Iterable[_ChunkSummary]) -> _ChunkSummary:
    total = _ChunkSummary()
    for s in summaries:
        total.examined += s.examined
        total.vacuous += s.vacuous
        if total.first_violation is None and s.first_violation is not None:
            total.first_violation = s.first_violation
        if s.worst is not None and (total.worst is None or s.worst.margin > total.worst.margin):  # type: ignore
            total.worst = s.worst
    return total


def _chunks(count: int, size: int) -> List[Tuple[int, int]]:
    return [(start, min(size, count - start)) for start in range(0, count, size)]


def _over_sampled_pairs(
    fn: Callable[[Sequence[PointPair], int], R], space: MetricSpace, cfg: VerificationConfig, sampler: Sampler
) -> List[R]:
    """
    fn(pairs, start) over the chunks of the pairwise sample every pairwise check shares.
    Annulus schemes draw one band up front; other schemes read the pair stream by block.
    """
    if sampler.scheme == SCHEME_ANNULUS:
        band = sample_pair_in_annulus(
            space, sampler, sampler.center, sampler.epsilon, sampler.width, cfg.n_pairs, stream=STREAM_ANNULUS
        )
        pairs = band.pairs

        def run_listed(chunk: Tuple[int, int]) -> R:
            start, n = chunk
            return fn(pairs[start : start + n], start)

        return _run_ordered(run_listed, _chunks(len(pairs), sampler.block_size), cfg.workers)

    def run(chunk: Tuple[int, int]) -> R:
        start, n = chunk
        return fn(sampler.pairs(space, start, n, STREAM_PAIRS), start)

    return _run_ordered(run, _chunks(cfg.n_pairs, sampler.block_size), cfg.workers)


def _sampled_pairs_summary(
    map: SelfMap, space: MetricSpace, cfg: VerificationConfig, sampler: Sampler, judge: Judge
) -> _ChunkSummary:
    def summarise(pairs: Sequence[PointPair], start: int) -> _ChunkSummary:
        return _judge_chunk(map, pairs, start, judge)

    return _reduce(_over_sampled_pairs(summarise, space, cfg, sampler))


def _check_space(map: SelfMap, space: Optional[MetricSpace]) -> MetricSpace:
    if space is None:
        return map.space
    if space is not map.space and space.to_dict() != map.space.to_dict():
        raise UsageError("Map {} is defined on {}, not on {}.".format(map.name, map.space.name, space.name))
    return space


def _default_sampler(cfg: VerificationConfig, sampler: Optional[Sampler]) -> Sampler:
    if sampler is None:
        return Sampler(seed=cfg.seed)
    if sampler.seed != cfg.seed:
        raise UsageError("Sampler seed {} differs from config seed {}.".format(sampler.seed, cfg.seed))
    return sampler


def verify_certificate(
    cert: Certificate,
    map: SelfMap,
    space: Optional[MetricSpace] = None,
    cfg: Optional[VerificationConfig] = None,
    sampler: Optional[Sampler] = None,
    logger: Optional[logging.Logger] = None,
) -> VerificationResult:
    """
    Evaluate the certificate's pointwise inequality on cfg.n_pairs sampled pairs.
    A Meir-Keeler modulus is instead checked on band samples, n_pairs split evenly
    over cfg.epsilon_grid; an epsilon whose band is infeasible is listed and skipped.

    :return: the first replayable witness, or no violation with the worst margin seen
    :raises SelfMapViolation: if the map leaves its domain on a sampled point
    """
    if logger is None:
        logger = log
    cfg = cfg or VerificationConfig()
    space = _check_space(map, space)
    sampler = _default_sampler(cfg, sampler)
    slack = check_slack(cfg.slack)
    _warn_slack(slack, logger)
    logger.debug("Verifying {} on map {} with {} pairs.".format(cert, map.name, cfg.n_pairs))
    result = VerificationResult(certificate=cert.to_dict(), pairs_examined=0, slack=slack)
    witness: Optional[CounterexampleWitness] = None
    if cert.needs_epsilon:
        per_epsilon = max(1, int(math.ceil(cfg.n_pairs / len(cfg.epsilon_grid))))
        summaries = []
        for i, eps in enumerate(cfg.epsilon_grid):
            delta = cert.delta(eps)  # type: ignore[attr-defined]
            try:
                band = sample_pair_in_annulus(
                    space, sampler, None, eps, delta, per_epsilon, stream=STREAM_MK_BASE + i, logger=logger
                )
            except InfeasibleBandError:
                result.infeasible_epsilons.append(eps)
                continue
            if band.shortfall:
                result.shortfalls[repr(eps)] = band.shortfall

            def judge_at(d, dt, _eps=eps):
                return cert.judge(d, dt, slack, _eps)

            def run(chunk: Tuple[int, int], _pairs=band.pairs, _judge=judge_at) -> _ChunkSummary:
                start, n = chunk
                return _judge_chunk(map, _pairs[start : start + n], start, _judge)

            summary = _reduce(_run_ordered(run, _chunks(len(band.pairs), sampler.block_size), cfg.workers))
            summaries.append(summary)
            if summary.first_violation is not None and witness is None:
                witness = CounterexampleWitness(
                    kind=cert.certificate_kind(),
                    certificate=cert.name,
                    pairs=[summary.first_violation],
                    epsilon_0=eps,
                )
        total = _reduce(summaries)
    else:

        def judge(d, dt):
            return cert.judge(d, dt, slack)

        total = _sampled_pairs_summary(map, space, cfg, sampler, judge)
        if total.first_violation is not None:
            witness = CounterexampleWitness(
                kind=cert.certificate_kind(), certificate=cert.name, pairs=[total.first_violation]
            )
    result.pairs_examined = total.examined
    result.vacuous = total.vacuous
    result.witness = witness
    if total.worst is not None:
        result.worst_margin = total.worst.margin
        result.worst_pair = total.worst
    logger.debug("Finished {}: {} ({} pairs).".format(cert, result.verdict, result.pairs_examined))
    return result


def verify_contractive(
    map: SelfMap,
    space: Optional[MetricSpace] = None,
    cfg: Optional[VerificationConfig] = None,
    sampler: Optional[Sampler] = None,
    logger: Optional[logging.Logger] = None,
) -> VerificationResult:
    """Sample d(Tp, Tq) < d(p, q) for p != q, the property every Z-contraction and Meir-Keeler map has."""
    if logger is None:
        logger = log
    cfg = cfg or VerificationConfig()
    space = _check_space(map, space)
    sampler = _default_sampler(cfg, sampler)
    slack = check_slack(cfg.slack)

    def judge(d, dt):
        return judge_contractive(d, dt, slack)

    total = _sampled_pairs_summary(map, space, cfg, sampler, judge)
    witness = None
    if total.first_violation is not None:
        witness = CounterexampleWitness(
            kind=CONTRACTIVE_KIND, certificate=CONTRACTIVE_KIND, pairs=[total.first_violation]
        )
    return VerificationResult(
        certificate={'kind': CONTRACTIVE_KIND, 'name': CONTRACTIVE_KIND},
        pairs_examined=total.examined,
        vacuous=total.vacuous,
        witness=witness,
        worst_margin=None if total.worst is None else total.worst.margin,
        worst_pair=total.worst,
        slack=slack,
    )


def estimate_mk_modulus(
    map: SelfMap,
    space: Optional[MetricSpace] = None,
    epsilon: float = 1.0,
    cfg: Optional[VerificationConfig] = None,
    sampler: Optional[Sampler] = None,
    logger: Optional[logging.Logger] = None,
) -> ModulusEstimate:
    """
    Descend the ladder delta = w, w/2, ..., w/2^(shrink_levels - 1) of band widths
    above epsilon. The first level whose whole band sample maps below epsilon gives
    delta_hat. Each level holding a pair with d(Tp, Tq) >= epsilon contributes that
    pair to the witness; a ladder that ends on such a level fails.

    :raises InfeasibleBandError: if the starting band is infeasible for the space
    """
    if logger is None:
        logger = log
    cfg = cfg or VerificationConfig()
    space = _check_space(map, space)
    sampler = _default_sampler(cfg, sampler)
    slack = check_slack(cfg.slack)
    if not (epsilon > 0 and math.isfinite(epsilon)):
        raise UsageError("Meir-Keeler epsilon must be a finite positive real, got {!r}.".format(epsilon))
    width = cfg.ladder_width(epsilon)
    budget = cfg.ladder_budget()
    if not band_is_feasible(space, epsilon, width):
        raise InfeasibleBandError(
            "Band [{!r}, {!r}) is infeasible for space {} (sampled diameter {!r}).".format(
                epsilon, epsilon + width, space.name, space.diameter
            ),
            epsilon,
            width,
        )
    estimate = ModulusEstimate(
        epsilon=epsilon, delta_hat=0.0, pairs_examined=0, verdict=ESTIMATE_INCONCLUSIVE, initial_width=width
    )
    witness = CounterexampleWitness(
        kind=LADDER_WITNESS_KIND, certificate="estimate_mk_modulus", epsilon_0=epsilon
    )
    last_populated_bad = False
    for level in range(int(cfg.shrink_levels)):
        delta = width / (2.0**level)
        try:
            band = sample_pair_in_annulus(
                space, sampler, None, epsilon, delta, budget, stream=STREAM_LADDER_BASE + level, logger=logger
            )
        except InfeasibleBandError:
            estimate.levels.append({'level': level, 'delta': delta, 'pairs': 0, 'bad': False, 'skipped': True})
            continue
        bad: Optional[WitnessPair] = None
        examined = 0
        for i, (p, q) in enumerate(band.pairs):
            d, dt = pair_distances(map, p, q)
            examined += 1
            if not dt < epsilon + slack:
                bad = WitnessPair(tuple(p), tuple(q), d, dt, dt - epsilon, epsilon, i)
                break
        estimate.pairs_examined += examined
        estimate.levels.append(
            {
                'level': level,
                'delta': delta,
                'pairs': examined,
                'bad': bad is not None,
                'skipped': examined == 0,
                'fallback': band.fallback_used,
            }
        )
        logger.debug(
            "Ladder eps={!r} level {} delta={!r}: {} pairs, {}".format(
                epsilon, level, delta, examined, "bad pair found" if bad is not None else "clean"
            )
        )
        if examined == 0:
            continue
        if bad is None:
            estimate.verdict = ESTIMATE_POSITIVE
            estimate.delta_hat = delta
            return estimate
        witness.pairs.append(bad)
        last_populated_bad = True
    if last_populated_bad:
        estimate.verdict = ESTIMATE_FAILED
        estimate.witness = witness
        estimate.note = "bad pair at every populated level down to delta={!r}".format(
            width / (2.0 ** (int(cfg.shrink_levels) - 1))
        )
    else:
        estimate.note = "no band pairs could be sampled at any level"
    return estimate


def _estimate_or_infeasible(map, space, eps, cfg, sampler, logger) -> ModulusEstimate:
    try:
        return estimate_mk_modulus(map, space, eps, cfg, sampler, logger)
    except InfeasibleBandError as e:
        return ModulusEstimate(
            epsilon=eps,
            delta_hat=0.0,
            pairs_examined=0,
            verdict=ESTIMATE_INFEASIBLE,
            initial_width=e.width,
            note=str(e.message),
        )


def estimate_mk_moduli(
    map: SelfMap,
    space: Optional[MetricSpace] = None,
    cfg: Optional[VerificationConfig] = None,
    sampler: Optional[Sampler] = None,
    logger: Optional[logging.Logger] = None,
) -> List[ModulusEstimate]:
    """estimate_mk_modulus at every grid epsilon; an infeasible band gives an 'infeasible' estimate."""
    cfg = cfg or VerificationConfig()
    sampler = _default_sampler(cfg, sampler)
    return [_estimate_or_infeasible(map, space, eps, cfg, sampler, logger) for eps in cfg.epsilon_grid]


InstanceLike = Union[ContainmentInstance, Tuple[SelfMap, Certificate]]


def _as_instance(item: InstanceLike, index: int) -> ContainmentInstance:
    if isinstance(item, ContainmentInstance):
        return item
    m, c = item
    return ContainmentInstance(name="instance-{}".format(index), map=m, certificate=c)


def containment_demo(
    instances: Sequence[InstanceLike],
    space: Optional[MetricSpace] = None,
    cfg: Optional[VerificationConfig] = None,
    sampler: Optional[Sampler] = None,
    logger: Optional[logging.Logger] = None,
) -> ContainmentTable:
    """
    For each instance whose certificate survives verify_certificate, estimate the
    Meir-Keeler modulus at every grid epsilon. Unverified instances are skipped, not
    failed; infeasible bands are marked and left out of all_positive.
    """
    if logger is None:
        logger = log
    cfg = cfg or VerificationConfig()
    sampler = _default_sampler(cfg, sampler)
    table = ContainmentTable(config=cfg.to_dict())
    for index, item in enumerate(instances):
        inst = _as_instance(item, index)
        inst_space = _check_space(inst.map, space) if space is not None else inst.space
        note = None
        try:
            verified = verify_certificate(inst.certificate, inst.map, inst_space, cfg, sampler, logger)
            if not verified.verified:
                note = "certificate not verified: counterexample found"
        except SelfMapViolation as e:
            note = "not a self-map on the sampled region: {}".format(e.message)
        if note is not None:
            logger.warning("Skipping containment instance {}: {}".format(inst.name, note))
            table.rows.append(ContainmentRow(inst.name, inst.certificate.name, None, ESTIMATE_SKIPPED, note=note))
            continue
        for eps in cfg.epsilon_grid:
            est = _estimate_or_infeasible(inst.map, inst_space, eps, cfg, sampler, logger)
            table.rows.append(
                ContainmentRow(
                    inst.name,
                    inst.certificate.name,
                    eps,
                    est.verdict,
                    delta_hat=est.delta_hat,
                    pairs_examined=est.pairs_examined,
                    note=est.note if est.verdict != ESTIMATE_POSITIVE else None,
                )
            )
    logger.info(
        "Containment demo over {} rows: {}".format(
            len(table.rows), "all positive" if table.all_positive else "some rows not positive"
        )
    )
    return table


def lambda_hat(
    map: SelfMap, space: MetricSpace, cfg: VerificationConfig, sampler: Sampler
) -> Tuple[float, int]:
    """
    Exact max of d(Tp, Tq) / d(p, q) over sampled pairs with d > 0, and how many such pairs.
    The pairs are the ones verify_certificate judges, so a Banach certificate above the
    returned ratio holds on every one of them.
    """

    def run(pairs: Sequence[PointPair], start: int) -> Tuple[float, int]:
        best = 0.0
        used = 0
        for p, q in pairs:
            d, dt = pair_distances(map, p, q)
            if d > 0:
                used += 1
                r = dt / d
                if r > best:
                    best = r
        return best, used

    parts = _over_sampled_pairs(run, space, cfg, sampler)
    return max((b for b, _ in parts), default=0.0), sum(u for _, u in parts)


def classify(
    map: SelfMap,
    space: Optional[MetricSpace] = None,
    zetas: Optional[Dict[str, SimulationFunction]] = None,
    triples: Optional[Dict[str, WeaklyTypeTriple]] = None,
    cfg: Optional[VerificationConfig] = None,
    sampler: Optional[Sampler] = None,
    logger: Optional[logging.Logger] = None,
) -> ClassificationReport:
    """
    Run every contraction check on one map: the sampled Lipschitz ratio lambda_hat,
    a Banach certificate just above it, each library simulation function and
    weakly-type triple, the Meir-Keeler ladder at every grid epsilon and the
    contractive property.
    """
    if logger is None:
        logger = log
    cfg = cfg or VerificationConfig()
    space = _check_space(map, space)
    sampler = _default_sampler(cfg, sampler)
    slack = check_slack(cfg.slack)
    zetas = zeta_library() if zetas is None else zetas
    triples = triple_library() if triples is None else triples

    lam_hat, lam_pairs = lambda_hat(map, space, cfg, sampler)
    banach_result = None
    banach_note = None
    if lam_hat < 1.0:
        lam = min(lam_hat + DEFAULT_LAMBDA_MARGIN, 1.0 - slack)
        if lam < 1.0:
            banach_result = verify_certificate(BanachCertificate(lam), map, space, cfg, sampler, logger)
        else:
            banach_note = "lambda_hat + margin reaches 1; no Banach certificate tried"
    else:
        banach_note = "lambda_hat = {!r} >= 1; no Banach certificate exists on the sampled region".format(lam_hat)

    zeta_results = {name: verify_certificate(z, map, space, cfg, sampler, logger) for name, z in zetas.items()}
    triple_results = {name: verify_certificate(t, map, space, cfg, sampler, logger) for name, t in triples.items()}
    moduli = estimate_mk_moduli(map, space, cfg, sampler, logger)
    contractive = verify_contractive(map, space, cfg, sampler, logger)

    config = cfg.to_dict()
    config['sampler'] = sampler.to_dict()
    report = ClassificationReport(
        space=space.to_dict(),
        map=map.to_dict(),
        lambda_hat=lam_hat,
        lambda_pairs=lam_pairs,
        banach=banach_result,
        zetas=zeta_results,
        triples=triple_results,
        moduli=moduli,
        contractive=contractive,
        config=config,
        banach_note=banach_note,
    )
    logger.info("Classified {}: lambda_hat={!r}".format(map.name, lam_hat))
    return report


def picard_uniqueness_probe(
    map: SelfMap,
    space: Optional[MetricSpace] = None,
    n_starts: int = DEFAULT_N_STARTS,
    stop: Optional[StoppingRule] = None,
    sampler: Optional[Sampler] = None,
    starts: Optional[Sequence[Sequence[float]]] = None,
    workers: int = DEFAULT_WORKERS,
    logger: Optional[logging.Logger] = None,
) -> UniquenessResult:
    """
    Run Picard from several starts. They agree iff every run converged and all
    limits lie within AGREEMENT_FACTOR * tol of each other.
    """
    if logger is None:
        logger = log
    space = _check_space(map, space)
    stop = stop or StoppingRule()
    if starts is None:
        if int(n_starts) < 2:
            raise UsageError("A uniqueness probe needs at least 2 starts, got {!r}.".format(n_starts))
        sampler = sampler or Sampler()
        start_points: List[Point] = sampler.point_list(space, 0, int(n_starts), STREAM_STARTS)
    else:
        start_points = [space.check_point(s, "Starting point") for s in starts]
        if len(start_points) < 2:
            raise UsageError("A uniqueness probe needs at least 2 starts.")

    def run(x0: Point) -> PicardTrace:
        return picard_iterate(map, x0, stop, logger)

    traces = _run_ordered(run, start_points, workers)
    tolerance = AGREEMENT_FACTOR * stop.tol
    result = UniquenessResult(
        agree=False,
        fixed_point=None,
        max_spread=None,
        agreement_tolerance=tolerance,
        starts=list(start_points),
        limits=[t.fixed_point for t in traces],
        verdicts=[t.verdict for t in traces],
    )
    failed = [s for s, t in zip(start_points, traces) if not t.converged]
    if failed:
        result.witness_starts = failed
        return result
    limits: List[Point] = [t.fixed_point for t in traces]  # type: ignore[misc]
    spread = 0.0
    worst_pair = (0, 0)
    for i in range(len(limits)):
        for j in range(i + 1, len(limits)):
            dij = space.distance(limits[i], limits[j])
            if dij > spread:
                spread = dij
                worst_pair = (i, j)
    result.max_spread = spread
    result.fixed_point = limits[0]
    if spread <= tolerance:
        result.agree = True
    else:
        result.witness_starts = [start_points[worst_pair[0]], start_points[worst_pair[1]]]
    return result


def replay_witness(
    witness: CounterexampleWitness,
    map: SelfMap,
    certificate: Optional[Certificate] = None,
    slack: float = 0.0,
) -> List[bool]:
    """
    Re-evaluate every pair of a witness. Each entry is True when that pair still
    violates: the certificate's inequality, or d(Tp, Tq) < epsilon_0 for a ladder witness.
    """
    slack = check_slack(slack)
    out = []
    for w in witness.pairs:
        d, dt = pair_distances(map, w.p, w.q)
        if witness.kind == LADDER_WITNESS_KIND:
            assert witness.epsilon_0 is not None
            out.append(not dt < witness.epsilon_0 + slack)
        elif witness.kind == CONTRACTIVE_KIND:
            out.append(judge_contractive(d, dt, slack).status == VIOLATED)
        else:
            if certificate is None:
                raise UsageError("Replaying a {} witness needs its certificate.".format(witness.kind))
            eps = w.epsilon if w.epsilon is not None else witness.epsilon_0
            out.append(certificate.judge(d, dt, slack, eps).status == VIOLATED)
    return out


def proof_trace(witness: CounterexampleWitness, zeta: SimulationFunction) -> List[dict]:
    """
    Along a ladder witness, the quantities the Z-contraction containment argument
    squeezes: zeta(d(Tx_n, Ty_n), d(x_n, y_n)), d(x_n, y_n) - eps_0 and
    d(Tx_n, Ty_n) - eps_0. A Z-contraction admits no ladder witness, so on one of its
    own witnesses some zeta value here is negative.
    """
    if witness.epsilon_0 is None:
        raise UsageError("A proof trace needs a witness with a band center epsilon_0.")
    eps0 = witness.epsilon_0
    rows = []
    for n, w in enumerate(witness.pairs):
        rows.append(
            {
                'n': n,
                'distance': w.distance,
                'mapped_distance': w.mapped_distance,
                'zeta': zeta.value(w.mapped_distance, w.distance),
                'distance_above_eps0': w.distance - eps0,
                'mapped_above_eps0': w.mapped_distance - eps0,
            }
        )
    return rows


def config_from_options(o: dict) -> VerificationConfig:
    return VerificationConfig(
        seed=int(o['seed']),
        n_pairs=int(o['n_pairs']),
        slack=float(o['slack']),
        epsilon_grid=tuple(o['epsilon_grid']),
        shrink_levels=int(o['shrink_levels']),
        initial_width=o['initial_width'],
        width_factor=float(o['width_factor']),
        level_budget=o['level_budget'],
        workers=int(o['workers']),
        debug=bool(o['debug']),
    )


def sampler_from_options(o: dict, seed: int) -> Sampler:
    params = dict(o['sampler_params'])
    return Sampler(
        seed=seed,
        scheme=o['sampler_scheme'],
        center=params.get('center'),
        sigma=params.get('sigma'),
        epsilon=params.get('epsilon'),
        width=params.get('width'),
        block_size=int(o['block_size']),
    )


class Verifier(object):
    """
    Holds one map, its options and sampler, and runs the verifier operations on it.
    """

    @classmethod
    def _load_default_options(cls, options_dict: dict):
        options_dict.setdefault('debug', False)
        options_dict.setdefault('seed', DEFAULT_SEED)
        options_dict.setdefault('n_pairs', DEFAULT_N_PAIRS)
        options_dict.setdefault('slack', DEFAULT_SLACK)
        options_dict.setdefault('epsilon_grid', DEFAULT_EPSILON_GRID)
        options_dict.setdefault('shrink_levels', DEFAULT_SHRINK_LEVELS)
        options_dict.setdefault('initial_width', None)
        options_dict.setdefault('width_factor', DEFAULT_WIDTH_FACTOR)
        options_dict.setdefault('level_budget', None)
        options_dict.setdefault('workers', DEFAULT_WORKERS)
        options_dict.setdefault('n_triples', DEFAULT_N_TRIPLES)
        options_dict.setdefault('n_starts', DEFAULT_N_STARTS)
        options_dict.setdefault('tol', DEFAULT_TOL)
        options_dict.setdefault('max_iter', DEFAULT_MAX_ITER)
        options_dict.setdefault('divergence_radius', None)
        options_dict.setdefault('sampler_scheme', SCHEME_UNIFORM_BOX)
        options_dict.setdefault('sampler_params', {})
        options_dict.setdefault('block_size', SAMPLER_BLOCK_SIZE)
        if 'logger' not in options_dict:
            options_dict['logger'] = logging.getLogger(__name__)
            if options_dict['debug']:
                options_dict['logger'].setLevel(logging.DEBUG)

    def __init__(self, map: SelfMap, options: Optional[dict] = None):
        options = options or {}
        self._load_default_options(options)
        self.options = options  # type: dict
        self.logger = options['logger']  # type: logging.Logger
        self.debug = options['debug']
        if self.debug:
            log_handler.setLevel(logging.DEBUG)
        self.map = map
        self.space = map.space
        self.config = self.make_config()
        self.sampler = sampler_from_options(options, self.config.seed)
        self.stop = StoppingRule(
            tol=float(options['tol']),
            max_iter=int(options['max_iter']),
            divergence_radius=options['divergence_radius'],
        )

    def make_config(self) -> VerificationConfig:
        return config_from_options(self.options)

    def estimate_mk_moduli(self) -> List[ModulusEstimate]:
        return estimate_mk_moduli(self.map, self.space, self.config, self.sampler, self.logger)

    def verify_certificate(self, cert: Certificate) -> VerificationResult:
        return verify_certificate(cert, self.map, self.space, self.config, self.sampler, self.logger)

    def verify_contractive(self) -> VerificationResult:
        return verify_contractive(self.map, self.space, self.config, self.sampler, self.logger)

    def estimate_mk_modulus(self, epsilon: float) -> ModulusEstimate:
        return estimate_mk_modulus(self.map, self.space, epsilon, self.config, self.sampler, self.logger)

    def classify(
        self,
        zetas: Optional[Dict[str, SimulationFunction]] = None,
        triples: Optional[Dict[str, WeaklyTypeTriple]] = None,
    ) -> ClassificationReport:
        return classify(self.map, self.space, zetas, triples, self.config, self.sampler, self.logger)

    def picard_uniqueness_probe(self, starts: Optional[Sequence[Sequence[float]]] = None) -> UniquenessResult:
        return picard_uniqueness_probe(
            self.map,
            self.space,
            int(self.options['n_starts']),
            self.stop,
            self.sampler,
            starts=starts,
            workers=self.config.workers,
            logger=self.logger,
        )
