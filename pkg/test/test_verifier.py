# -*- coding: utf-8 -*-
#
import json
import math

import pytest

from contracta import Verifier, VerificationConfig, classify, estimate_mk_modulus, verify_certificate
from contracta.certificates import (
    BanachCertificate,
    ContainmentInstance,
    MeirKeelerModulus,
    SimulationFunction,
    WeaklyTypeTriple,
    builtin_instance,
    instance_library,
)
from contracta.errors import InfeasibleBandError, SelfMapViolation, SlackWarning, UsageError
from contracta.sampler import Sampler
from contracta.space import MetricSpace, SelfMap
from contracta.verify import (
    LADDER_WITNESS_KIND,
    containment_demo,
    estimate_mk_moduli,
    lambda_hat,
    picard_uniqueness_probe,
    proof_trace,
    replay_witness,
    verify_contractive,
)


def interval(low, high):
    return MetricSpace("[{},{}]".format(low, high), 1, [(low, high)])


def small_config(**kwargs):
    kwargs.setdefault('seed', 42)
    kwargs.setdefault('n_pairs', 2000)
    return VerificationConfig(**kwargs)


def test_verify_exact_banach_map():
    half = SelfMap(interval(0.0, 10.0), builtin='half')
    result = verify_certificate(BanachCertificate(0.5), half, cfg=small_config(n_pairs=20000))
    assert result.verified
    assert result.verdict == 'no-violation-found'
    assert result.pairs_examined == 20000
    assert result.worst_margin == 0.0
    assert result.witness is None


def test_verify_finds_replayable_witness():
    space = interval(0.0, 10.0)
    slow = SelfMap(space, builtin='linear', params={'lambda': 0.9})
    zeta = SimulationFunction("s/2 - t")
    result = verify_certificate(zeta, slow, space, small_config())
    assert not result.verified
    witness = result.witness
    assert witness.kind == 'simulation'
    assert len(witness.pairs) == 1
    pair = witness.pairs[0]
    assert pair.distance > 0
    assert pair.margin > 0
    assert replay_witness(witness, slow, zeta) == [True]
    with pytest.raises(UsageError):
        replay_witness(witness, slow)


def test_verify_identity_against_banach():
    identity = SelfMap(interval(0.0, 1.0), builtin='identity')
    result = verify_certificate(BanachCertificate(0.9), identity, cfg=small_config())
    assert not result.verified
    assert result.witness.pairs[0].index == 0
    assert result.worst_margin > 0


def test_verify_meir_keeler_modulus():
    identity = SelfMap(interval(0.0, 2.0), builtin='identity')
    modulus = MeirKeelerModulus("eps")
    result = verify_certificate(modulus, identity, cfg=small_config(epsilon_grid=(1.0,)))
    assert not result.verified
    assert result.witness.epsilon_0 == 1.0
    pair = result.witness.pairs[0]
    assert pair.mapped_distance == pair.distance
    assert pair.mapped_distance >= 1.0
    assert replay_witness(result.witness, identity, modulus) == [True]


def test_verify_meir_keeler_skips_infeasible_epsilon():
    half = SelfMap(interval(0.0, 1.0), builtin='half')
    result = verify_certificate(MeirKeelerModulus("eps"), half, cfg=small_config(epsilon_grid=(0.25, 2.0)))
    assert result.verified
    assert result.infeasible_epsilons == [2.0]
    assert result.vacuous == 0


def test_verify_weakly_type_triple():
    third = SelfMap(interval(0.0, 9.0), builtin='third')
    result = verify_certificate(WeaklyTypeTriple("t", "t/2", "0"), third, cfg=small_config())
    assert result.verified
    assert result.worst_margin < 0


def test_verify_propagates_self_map_violation():
    shift = SelfMap(interval(0.0, 1.0), builtin='shift_one')
    with pytest.raises(SelfMapViolation):
        verify_certificate(BanachCertificate(0.5), shift, cfg=small_config())


def test_slack_is_announced():
    half = SelfMap(interval(0.0, 1.0), builtin='half')
    with pytest.warns(SlackWarning):
        result = verify_certificate(BanachCertificate(0.5), half, cfg=small_config(slack=1e-9))
    assert result.slack == 1e-9


def test_sampler_seed_must_match():
    half = SelfMap(interval(0.0, 1.0), builtin='half')
    with pytest.raises(UsageError):
        verify_certificate(BanachCertificate(0.5), half, cfg=small_config(seed=0), sampler=Sampler(seed=1))
    with pytest.raises(UsageError):
        verify_certificate(BanachCertificate(0.5), half, space=interval(0.0, 2.0), cfg=small_config())


def test_config_validation():
    with pytest.raises(UsageError):
        VerificationConfig(n_pairs=0)
    with pytest.raises(UsageError):
        VerificationConfig(epsilon_grid=(1.0, 0.5))
    with pytest.raises(UsageError):
        VerificationConfig(epsilon_grid=(0.0, 0.5))
    with pytest.raises(UsageError):
        VerificationConfig(shrink_levels=0)
    with pytest.raises(UsageError):
        VerificationConfig(slack=-1.0)
    with pytest.raises(UsageError):
        VerificationConfig(seed=-5)
    cfg = VerificationConfig(n_pairs=800, shrink_levels=8)
    assert cfg.ladder_budget() == 100
    assert cfg.ladder_width(0.5) == 1.0


def test_results_do_not_depend_on_workers():
    identity = SelfMap(interval(0.0, 1.0), builtin='identity')
    cos = SelfMap(interval(0.0, 1.0), builtin='cos')
    for m, cert in ((identity, BanachCertificate(0.9)), (cos, SimulationFunction("0.9*s - t"))):
        one = verify_certificate(cert, m, cfg=small_config(n_pairs=5000, workers=1))
        four = verify_certificate(cert, m, cfg=small_config(n_pairs=5000, workers=4))
        assert json.dumps(one.to_dict(), sort_keys=True) == json.dumps(four.to_dict(), sort_keys=True)


def test_ladder_positive_for_half():
    half = SelfMap(interval(0.0, 10.0), builtin='half')
    est = estimate_mk_modulus(half, epsilon=1.0, cfg=small_config(initial_width=1.0))
    assert est.positive
    assert est.delta_hat == 1.0
    assert est.witness is None
    est = estimate_mk_modulus(half, epsilon=1.0, cfg=small_config())
    assert est.positive
    assert 0 < est.delta_hat <= 1.0
    assert est.initial_width == 2.0


def test_ladder_positive_at_first_level_for_constant():
    constant = SelfMap(interval(0.0, 2.0), builtin='constant', params={'value': 0.0})
    est = estimate_mk_modulus(constant, epsilon=1.0, cfg=small_config(initial_width=0.5))
    assert est.positive
    assert est.delta_hat == 0.5
    assert len(est.levels) == 1


def test_ladder_fails_for_identity():
    identity = SelfMap(interval(0.0, 2.0), builtin='identity')
    cfg = small_config(shrink_levels=6)
    est = estimate_mk_modulus(identity, epsilon=1.0, cfg=cfg)
    assert est.verdict == 'failed'
    witness = est.witness
    assert witness.kind == LADDER_WITNESS_KIND
    assert witness.epsilon_0 == 1.0
    assert len(witness.pairs) == 6
    width = cfg.ladder_width(1.0)
    for level, pair in enumerate(witness.pairs):
        assert 1.0 <= pair.distance < 1.0 + width / 2**level
        assert pair.mapped_distance >= 1.0
    assert all(replay_witness(witness, identity))
    assert est.pairs_examined <= cfg.n_pairs


def test_proof_trace_along_ladder_witness():
    identity = SelfMap(interval(0.0, 2.0), builtin='identity')
    est = estimate_mk_modulus(identity, epsilon=0.5, cfg=small_config(shrink_levels=4))
    rows = proof_trace(est.witness, SimulationFunction("s/2 - t"))
    assert len(rows) == 4
    assert [r['n'] for r in rows] == [0, 1, 2, 3]
    for r in rows:
        assert r['distance_above_eps0'] >= 0
        assert r['mapped_above_eps0'] >= 0
        assert r['zeta'] < 0


def test_ladder_errors():
    unit = interval(0.0, 1.0)
    half = SelfMap(unit, builtin='half')
    with pytest.raises(InfeasibleBandError):
        estimate_mk_modulus(half, epsilon=2.0, cfg=small_config())
    with pytest.raises(UsageError):
        estimate_mk_modulus(half, epsilon=0.0, cfg=small_config())
    estimates = estimate_mk_moduli(half, cfg=small_config(epsilon_grid=(0.25, 2.0)))
    assert [e.verdict for e in estimates] == ['positive', 'infeasible']


def test_verify_contractive():
    identity = SelfMap(interval(0.0, 1.0), builtin='identity')
    result = verify_contractive(identity, cfg=small_config())
    assert not result.verified
    assert replay_witness(result.witness, identity) == [True]
    cos = SelfMap(interval(0.0, 1.0), builtin='cos')
    assert verify_contractive(cos, cfg=small_config()).verified


def test_lambda_hat():
    space = interval(0.0, 10.0)
    half = SelfMap(space, builtin='half')
    cfg = small_config()
    lam, used = lambda_hat(half, space, cfg, Sampler(seed=cfg.seed))
    assert lam == 0.5
    assert used == cfg.n_pairs


def test_classify_half():
    half = SelfMap(interval(0.0, 10.0), builtin='half')
    report = classify(half, cfg=small_config())
    assert report.lambda_hat == 0.5
    verdicts = report.verdicts
    assert verdicts['banach']
    assert verdicts['zeta:banach-0.5']
    assert verdicts['zeta:banach-0.9']
    assert verdicts['meir_keeler']
    assert verdicts['contractive']
    assert report.config['seed'] == 42
    assert report.config['sampler']['scheme'] == 'uniform-box'


def test_classify_cos():
    cos = SelfMap(interval(0.0, 1.0), builtin='cos')
    report = classify(cos, cfg=small_config(epsilon_grid=(0.1, 0.25)))
    assert 0.5 < report.lambda_hat <= math.sin(1.0)
    verdicts = report.verdicts
    assert verdicts['zeta:banach-0.9']
    assert not verdicts['zeta:banach-0.5']
    assert verdicts['weakly_type:tenth-beta']
    assert verdicts['meir_keeler']
    assert verdicts['contractive']
    assert verdicts['banach']


@pytest.mark.parametrize('seed', [0, 1, 42, 1234])
def test_classify_banach_verdict_stable_across_seeds(seed):
    cos = SelfMap(interval(0.0, 1.0), builtin='cos')
    cfg = VerificationConfig(seed=seed, n_pairs=5000, epsilon_grid=(0.25,))
    report = classify(cos, cfg=cfg, zetas={}, triples={})
    assert report.banach is not None
    assert report.verdicts['banach'], report.banach.witness
    assert report.banach.pairs_examined == cfg.n_pairs
    assert report.banach.worst_margin < 0
    lam = report.banach.certificate['lambda']
    assert lam == pytest.approx(report.lambda_hat + 1e-6)
    # the certificate is checked on the pairs the ratio came from
    lam_again, used = lambda_hat(cos, cos.space, cfg, Sampler(seed=seed))
    assert lam_again == report.lambda_hat
    assert used == report.lambda_pairs


def test_lambda_hat_follows_annulus_sampler():
    space = interval(0.0, 10.0)
    half = SelfMap(space, builtin='half')
    cfg = small_config(n_pairs=500)
    sampler = Sampler(seed=cfg.seed, scheme='annulus', epsilon=1.0, width=0.5)
    lam, used = lambda_hat(half, space, cfg, sampler)
    assert lam == 0.5
    assert used == 500
    result = verify_certificate(BanachCertificate(lam + 1e-6), half, cfg=cfg, sampler=sampler)
    assert result.verified
    assert result.pairs_examined == used


def test_classify_identity_fails_everything():
    identity = SelfMap(interval(0.0, 1.0), builtin='identity')
    report = classify(identity, cfg=small_config(epsilon_grid=(0.25, 0.5)))
    assert report.lambda_hat == 1.0
    assert report.banach is None
    assert report.banach_note is not None
    for name, verified in report.verdicts.items():
        assert not verified, name


def test_classify_is_deterministic():
    cos = SelfMap(interval(0.0, 1.0), builtin='cos')
    cfg1 = small_config(epsilon_grid=(0.25,), workers=1)
    cfg3 = small_config(epsilon_grid=(0.25,), workers=3)
    first = json.dumps(classify(cos, cfg=cfg1).to_dict(), sort_keys=True)
    second = json.dumps(classify(cos, cfg=cfg1).to_dict(), sort_keys=True)
    assert first == second
    parallel = classify(cos, cfg=cfg3).to_dict()
    serial = classify(cos, cfg=cfg1).to_dict()
    assert parallel.pop('config')['n_pairs'] == serial.pop('config')['n_pairs']
    assert json.dumps(parallel, sort_keys=True) == json.dumps(serial, sort_keys=True)


def test_containment_demo_skips_unverified():
    third = builtin_instance('third-zeta')
    identity = SelfMap(interval(0.0, 9.0), builtin='identity')
    table = containment_demo(
        [third, ContainmentInstance('identity', identity, SimulationFunction("s/2 - t"))],
        cfg=small_config(epsilon_grid=(0.5, 1.0, 2.0)),
    )
    rows = [r for r in table.rows if r.instance == 'third-zeta']
    assert [r.verdict for r in rows] == ['positive', 'positive', 'positive']
    skipped = [r for r in table.rows if r.instance == 'identity']
    assert len(skipped) == 1
    assert skipped[0].verdict == 'skipped'
    assert 'not verified' in skipped[0].note
    assert table.all_positive


def test_containment_demo_marks_infeasible():
    table = containment_demo([builtin_instance('cos-zeta')], cfg=small_config(epsilon_grid=(0.25, 5.0)))
    assert [r.verdict for r in table.rows] == ['positive', 'infeasible']
    assert table.all_positive


def test_containment_demo_plain_pairs():
    space = interval(0.0, 4.0)
    table = containment_demo(
        [(SelfMap(space, builtin='half'), WeaklyTypeTriple("t", "t/2", "0"))],
        cfg=small_config(n_pairs=1000, epsilon_grid=(0.5,)),
    )
    assert table.rows[0].instance == 'instance-0'
    assert table.rows[0].verdict == 'positive'


def test_containment_demo_on_library():
    table = containment_demo(instance_library(), cfg=small_config(n_pairs=800, epsilon_grid=(0.25, 0.5)))
    assert table.all_positive, table.describe()
    assert all(r.verdict == 'positive' for r in table.rows)


def test_third_zeta_modulus_close_to_analytic():
    inst = builtin_instance('third-zeta')
    for eps in (0.5, 1.0, 2.0):
        est = estimate_mk_modulus(inst.map, epsilon=eps, cfg=small_config(initial_width=2.0 * eps))
        assert est.positive
        assert est.delta_hat >= 0.9 * (2.0 * eps)


def test_uniqueness_probe_agrees_for_cos():
    cos = SelfMap(interval(0.0, 1.0), builtin='cos')
    result = picard_uniqueness_probe(cos, n_starts=8, sampler=Sampler(seed=0))
    assert result.agree
    assert len(result.starts) == 8
    assert result.fixed_point[0] == pytest.approx(0.7390851332151607, abs=1e-8)
    assert result.max_spread <= result.agreement_tolerance


def test_uniqueness_probe_disagrees_for_square():
    square = SelfMap(interval(0.0, 1.0), builtin='square')
    result = picard_uniqueness_probe(square, starts=[(0.2,), (1.0,)])
    assert not result.agree
    assert result.limits[0][0] == pytest.approx(0.0, abs=1e-8)
    assert result.limits[1] == (1.0,)
    assert result.witness_starts == [(0.2,), (1.0,)]


def test_uniqueness_probe_needs_two_starts():
    cos = SelfMap(interval(0.0, 1.0), builtin='cos')
    with pytest.raises(UsageError):
        picard_uniqueness_probe(cos, n_starts=1)
    with pytest.raises(UsageError):
        picard_uniqueness_probe(cos, starts=[(0.5,)])


def test_verifier_object():
    half = SelfMap(interval(-5.0, 5.0), builtin='half')
    verifier = Verifier(half, {'seed': 7, 'n_pairs': 1000, 'epsilon_grid': (0.5, 1.0), 'n_starts': 4})
    assert verifier.config.seed == 7
    assert verifier.sampler.seed == 7
    assert verifier.verify_certificate(BanachCertificate(0.5)).verified
    assert verifier.verify_contractive().verified
    assert all(e.positive for e in verifier.estimate_mk_moduli())
    assert verifier.estimate_mk_modulus(1.0).positive
    uniq = verifier.picard_uniqueness_probe()
    assert uniq.agree
    assert uniq.fixed_point[0] == pytest.approx(0.0, abs=1e-8)
    report = verifier.classify(zetas={}, triples={})
    assert report.lambda_hat == 0.5
    assert report.zetas == {}


if __name__ == "__main__":
    test_verify_exact_banach_map()
    test_verify_finds_replayable_witness()
    test_ladder_fails_for_identity()
    test_classify_half()
    test_containment_demo_skips_unverified()
