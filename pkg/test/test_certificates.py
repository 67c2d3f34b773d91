# -*- coding: utf-8 -*-
#
import math
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contracta.certificates import (
    ALL_CERTIFICATE_KINDS,
    BanachCertificate,
    MeirKeelerModulus,
    SequenceProbe,
    SimulationFunction,
    WeaklyTypeTriple,
    banach_as_z,
    banach_holds,
    banach_mk_modulus,
    certificate_from_dict,
    contractive_holds,
    default_grid,
    default_probes,
    instance_library,
    judge_contractive,
    mk_condition_holds,
    triple_library,
    weakly_type_holds,
    wt_admissibility_check,
    z_contraction_holds,
    zeta_admissibility_probe,
    zeta_library,
)
from contracta.errors import CertificateEvaluationError, InvalidModulusError, SelfMapViolation, UsageError
from contracta.sampler import Sampler, sample_pair_in_annulus
from contracta.space import MetricSpace, SelfMap

real_line = MetricSpace("R", 1, [(None, None)], sampling_box=[(-10.0, 10.0)])
unit = MetricSpace("[0,1]", 1, [(0.0, 1.0)])
nine = MetricSpace("[0,9]", 1, [(0.0, 9.0)])

distances = st.floats(min_value=0.0, max_value=1e3, allow_nan=False, allow_infinity=False)
lambdas = st.floats(min_value=0.0, max_value=0.999, allow_nan=False, allow_infinity=False)


def test_banach_holds():
    half = SelfMap(real_line, builtin='half')
    v = banach_holds(BanachCertificate(0.5), half, (0.0,), (4.0,))
    assert v.holds
    assert v.margin == 0.0
    identity = SelfMap(unit, builtin='identity')
    v = banach_holds(BanachCertificate(0.9), identity, (0.0,), (1.0,))
    assert v.violated
    assert v.margin == pytest.approx(0.1)
    cos = SelfMap(unit, builtin='cos')
    v = banach_holds(BanachCertificate(0.85), cos, (0.0,), (1.0,))
    assert v.holds
    assert v.mapped_distance == pytest.approx(1.0 - math.cos(1.0))


def test_banach_lambda_range():
    for bad in (-0.1, 1.0, 1.5, float('nan'), "half"):
        with pytest.raises(UsageError):
            BanachCertificate(bad)
    assert BanachCertificate(0.0).lam == 0.0


def test_slack_relaxes_banach():
    identity = SelfMap(unit, builtin='identity')
    cert = BanachCertificate(0.9)
    assert banach_holds(cert, identity, (0.0,), (1.0,), slack=0.2).holds
    with pytest.raises(UsageError):
        banach_holds(cert, identity, (0.0,), (1.0,), slack=-1.0)


def test_self_map_violation_propagates():
    shift = SelfMap(unit, builtin='shift_one')
    with pytest.raises(SelfMapViolation):
        banach_holds(BanachCertificate(0.5), shift, (0.0,), (0.5,))


def test_z_contraction_holds():
    zeta = SimulationFunction("s/2 - t")
    third = SelfMap(nine, builtin='third')
    v = z_contraction_holds(zeta, third, (0.0,), (3.0,))
    assert v.holds
    assert v.value == 0.5
    identity = SelfMap(unit, builtin='identity')
    v = z_contraction_holds(zeta, identity, (0.0,), (1.0,))
    assert v.violated
    assert v.value == -0.5
    for z in zeta_library().values():
        assert z_contraction_holds(z, identity, (0.25,), (0.25,)).holds


def test_z_contraction_evaluation_error():
    zeta = SimulationFunction("ln(t) - s")
    identity = SelfMap(unit, builtin='identity')
    with pytest.raises(CertificateEvaluationError):
        z_contraction_holds(zeta, identity, (0.5,), (0.5,))


def test_zeta_probe_accepts_admissible():
    zeta = SimulationFunction("0.5*s - t")
    probe = SequenceProbe(1.0, 'plus_inv', 'plus_inv', 1.0)
    report = zeta_admissibility_probe(zeta, probes=[probe], horizon=128)
    assert report.passed
    assert report.verdict == 'consistent'
    assert report.check('zero_at_origin').passed
    tail = report.check('limsup[{}]'.format(probe.label))
    assert tail.worst == pytest.approx(-0.5 * (1.0 + 1.0 / 128))


def test_zeta_probe_refutes_diagonal():
    zeta = SimulationFunction("s - t")
    probe = SequenceProbe(1.0, 'plus_inv', 'plus_inv', 1.0)
    report = zeta_admissibility_probe(zeta, probes=[probe], horizon=128)
    assert not report.passed
    assert report.verdict == 'refuted'
    assert report.check('zero_at_origin').passed
    assert not report.check('below_diagonal').passed
    assert not report.check('limsup[{}]'.format(probe.label)).passed
    assert report.check('limsup[{}]'.format(probe.label)).worst == 0.0


def test_zeta_probe_checks_origin():
    report = zeta_admissibility_probe(SimulationFunction("s/2 - t - 1"))
    assert not report.check('zero_at_origin').passed
    assert report.check('zero_at_origin').worst == -1.0


def test_zeta_probe_arguments():
    zeta = SimulationFunction("s/2 - t")
    with pytest.raises(UsageError):
        zeta_admissibility_probe(zeta, horizon=4)
    with pytest.raises(UsageError):
        zeta_admissibility_probe(zeta, grid=[])
    with pytest.raises(UsageError):
        zeta_admissibility_probe(zeta, grid=[0.0, 1.0])
    with pytest.raises(CertificateEvaluationError):
        zeta_admissibility_probe(SimulationFunction("1/(t - 1) - s"), grid=[1.0])


def test_sequence_probes():
    probe = SequenceProbe(2.0, 'minus_inv', 'alternating', 1.0)
    assert probe.t(4) == 1.75
    assert probe.s(4) == 2.25
    assert probe.s(5) == pytest.approx(1.8)
    with pytest.raises(UsageError):
        SequenceProbe(1.0, 'minus_inv', 'constant', 1.0)
    with pytest.raises(UsageError):
        SequenceProbe(0.0)
    with pytest.raises(UsageError):
        SequenceProbe(1.0, 'spiral')
    probes = default_probes()
    assert len(probes) == 15
    for p in probes:
        for n in range(1, 200):
            assert p.t(n) > 0 and p.s(n) > 0


def test_library_zetas_are_admissible():
    grid = default_grid()
    for name, zeta in zeta_library().items():
        report = zeta_admissibility_probe(zeta)
        assert report.passed, (name, [c.to_dict() for c in report.failed()])
        for s in grid:
            for t in grid:
                assert zeta.value(t, s) < s - t


def test_banach_as_z():
    zeta = banach_as_z(BanachCertificate(0.5))
    assert zeta.value(0.0, 0.0) == 0.0
    assert zeta.value(1.0, 3.0) == 0.5
    probe = SequenceProbe(2.0, 'constant', 'constant', 1.0)
    report = zeta_admissibility_probe(zeta, probes=[probe])
    assert report.passed
    assert report.check('limsup[{}]'.format(probe.label)).worst == -1.0
    flat = banach_as_z(BanachCertificate(0.0))
    constant = SelfMap(unit, builtin='constant', params={'value': 0.5})
    v = z_contraction_holds(flat, constant, (0.0,), (1.0,))
    assert v.holds
    assert v.value == 0.0


@settings(max_examples=500, deadline=None)
@given(lambdas, distances, distances, st.sampled_from([0.0, 1e-9, 0.5]))
def test_banach_and_z_decisions_agree(lam, d, dt, slack):
    cert = BanachCertificate(lam)
    zeta = banach_as_z(cert)
    assert cert.judge(d, dt, slack).status == zeta.judge(d, dt, slack).status


@settings(max_examples=500, deadline=None)
@given(lambdas, distances, distances)
def test_linear_weakly_type_matches_banach(lam, d, dt):
    cert = BanachCertificate(lam)
    triple = WeaklyTypeTriple("t", "{!r}*t".format(lam), "0")
    assert cert.judge(d, dt).status == triple.judge(d, dt).status


def test_banach_and_z_agree_on_sampled_pairs():
    space = MetricSpace("[-5,5]", 1, [(-5.0, 5.0)])
    sampler = Sampler(seed=9)
    pairs = sampler.pairs(space, 0, 10000)
    maps = [SelfMap(space, builtin='cos'), SelfMap(space, builtin='third'), SelfMap(space, builtin='identity')]
    for lam in (0.0, 0.25, 0.5, 0.9):
        cert = BanachCertificate(lam)
        zeta = banach_as_z(cert)
        for m in maps:
            for p, q in pairs:
                assert banach_holds(cert, m, p, q).status == z_contraction_holds(zeta, m, p, q).status


def test_banach_mk_modulus():
    assert banach_mk_modulus(BanachCertificate(0.5)).delta(2.0) == 2.0
    assert banach_mk_modulus(BanachCertificate(0.9)).delta(1.0) == pytest.approx(1.0 / 9.0)
    assert banach_mk_modulus(BanachCertificate(0.5), diameter=3.0).delta(10.0) == 3.0
    assert banach_mk_modulus(BanachCertificate(0.5), diameter=math.inf).delta(10.0) == 10.0
    assert banach_mk_modulus(BanachCertificate(0.0), diameter=10.0).delta(0.25) == 10.0
    with pytest.raises(UsageError):
        banach_mk_modulus(BanachCertificate(0.5), diameter=0.0)


def test_zero_lambda_modulus_without_diameter():
    modulus = banach_mk_modulus(BanachCertificate(0.0))
    assert modulus.delta(0.25) == sys.float_info.max
    assert modulus.delta(1e6) == sys.float_info.max
    assert banach_mk_modulus(BanachCertificate(0.0), diameter=math.inf).delta(1.0) == sys.float_info.max
    constant = SelfMap(real_line, builtin='constant', params={'value': 3.0})
    for eps, q in ((0.25, (0.5,)), (1.0, (1e6,)), (100.0, (-1e9,))):
        v = mk_condition_holds(modulus, constant, eps, (0.0,), q)
        assert v.status == 'holds'
        assert v.mapped_distance == 0.0


def test_banach_mk_embedding_never_violated():
    space = MetricSpace("[-5,5]", 1, [(-5.0, 5.0)])
    sampler = Sampler(seed=3)
    for i, lam in enumerate((0.1, 0.3, 0.5, 0.7, 0.9)):
        linear = SelfMap(space, builtin='linear', params={'lambda': lam})
        modulus = banach_mk_modulus(BanachCertificate(lam), diameter=space.diameter)
        for eps in (0.25, 0.5, 1.0, 2.0):
            band = sample_pair_in_annulus(space, sampler, None, eps, modulus.delta(eps), 5000, stream=100 + i)
            for p, q in band:
                v = mk_condition_holds(modulus, linear, eps, p, q)
                assert not v.violated


def test_mk_condition():
    half = SelfMap(real_line, builtin='half')
    v = mk_condition_holds(MeirKeelerModulus("eps"), half, 1.0, (0.0,), (1.5,))
    assert v.status == 'holds'
    assert v.mapped_distance == 0.75
    identity = SelfMap(unit, builtin='identity')
    v = mk_condition_holds(MeirKeelerModulus("0.5"), identity, 1.0, (0.0,), (1.0,))
    assert v.violated
    v = mk_condition_holds(MeirKeelerModulus("0.2"), identity, 1.0, (0.0,), (0.5,))
    assert v.status == 'vacuous'
    assert v.margin is None
    assert v.holds


def test_margin_zero_holds_only_for_non_strict_inequalities():
    assert BanachCertificate(0.5).judge(1.0, 0.5).margin == 0.0
    assert BanachCertificate(0.5).judge(1.0, 0.5).holds
    assert SimulationFunction("s/2 - t").judge(1.0, 0.5).holds
    assert WeaklyTypeTriple("t", "t/2", "0").judge(1.0, 0.5).holds
    mk = MeirKeelerModulus("eps").judge(1.5, 1.0, epsilon=1.0)
    assert mk.margin == 0.0
    assert mk.violated
    assert MeirKeelerModulus("eps").judge(1.5, 1.0, slack=0.25, epsilon=1.0).holds
    contractive = judge_contractive(1.0, 1.0)
    assert contractive.margin == 0.0
    assert contractive.violated


def test_mk_invalid_modulus():
    identity = SelfMap(unit, builtin='identity')
    with pytest.raises(InvalidModulusError):
        mk_condition_holds(MeirKeelerModulus("eps - 2"), identity, 1.0, (0.0,), (0.5,))
    with pytest.raises(InvalidModulusError):
        MeirKeelerModulus("ln(eps)").delta(1.0)
    with pytest.raises(UsageError):
        MeirKeelerModulus("eps").delta(0.0)
    with pytest.raises(UsageError):
        MeirKeelerModulus("eps").judge(1.0, 0.5)


def test_mk_table_modulus():
    modulus = MeirKeelerModulus([(0.5, 0.1), (1.0, 0.2)])
    assert modulus.delta(0.5) == 0.1
    assert modulus.delta(0.7) == 0.1
    assert modulus.delta(1.0) == 0.2
    assert modulus.delta(50.0) == 0.2
    with pytest.raises(InvalidModulusError):
        modulus.delta(0.1)
    with pytest.raises(UsageError):
        MeirKeelerModulus([(1.0, 0.1), (0.5, 0.2)])
    with pytest.raises(UsageError):
        MeirKeelerModulus([])
    with pytest.raises(InvalidModulusError):
        MeirKeelerModulus([(0.5, 0.0)]).delta(1.0)


def test_weakly_type_holds():
    triple = WeaklyTypeTriple("t", "t/2", "0")
    third = SelfMap(nine, builtin='third')
    v = weakly_type_holds(triple, third, (0.0,), (3.0,))
    assert v.holds
    assert v.margin == -0.5
    identity = SelfMap(unit, builtin='identity')
    v = weakly_type_holds(triple, identity, (0.0,), (1.0,))
    assert v.violated
    assert v.margin == 0.5
    for t in triple_library().values():
        if t.strictness == 'theorem6':
            assert weakly_type_holds(t, identity, (0.5,), (0.5,)).holds


def test_weakly_type_strictness_flag():
    with pytest.raises(UsageError):
        WeaklyTypeTriple("t", "t", "0", strictness='strongest')
    triple = WeaklyTypeTriple("t", "t/2", "0")
    assert triple.strictness == 'definition4'
    assert triple.with_strictness('theorem6').strictness == 'theorem6'


def test_wt_admissibility():
    report = wt_admissibility_check(WeaklyTypeTriple("t", "t/2", "0"))
    assert report.passed
    assert report.check('gap_positive').worst > 0
    report = wt_admissibility_check(WeaklyTypeTriple("t", "t", "0"))
    assert not report.passed
    assert not report.check('gap_positive').passed
    assert report.check('gap_positive').worst == 0.0
    report = wt_admissibility_check(WeaklyTypeTriple("t + 1", "t/2", "0", strictness='theorem6'))
    assert not report.passed
    assert not report.check('zero_at_origin').passed
    report = wt_admissibility_check(WeaklyTypeTriple("t + 1", "t/2", "0", strictness='definition4'))
    assert report.passed
    with pytest.raises(KeyError):
        report.check('zero_at_origin')


def test_wt_admissibility_monotone_and_declared():
    report = wt_admissibility_check(WeaklyTypeTriple("1/(1 + t) + t/10", "t/2", "0"), grid=[0.01, 0.1, 0.2, 1.0])
    assert not report.check('psi_non_decreasing').passed
    assert report.check('psi_non_decreasing').witness == {'t_i': 0.01, 't_j': 0.1}
    jumpy = wt_admissibility_check(WeaklyTypeTriple("t", "t/2", "0", strictness='theorem6'))
    declared = jumpy.check('alpha_continuous')
    assert declared.informational
    assert "not machine-verifiable" in declared.detail
    assert jumpy.check('psi_continuous').passed


def test_wt_admissibility_grid_checks():
    triple = WeaklyTypeTriple("t", "t/2", "0")
    with pytest.raises(UsageError):
        wt_admissibility_check(triple, grid=[1.0, 0.5])
    with pytest.raises(UsageError):
        wt_admissibility_check(triple, grid=[])


def test_library_triples_are_admissible_at_their_strictness():
    for name, triple in triple_library().items():
        report = wt_admissibility_check(triple)
        assert report.passed, (name, [c.to_dict() for c in report.failed()])
    assert triple_library()['shifted-half'].certified_strictness(default_grid()) == 'definition4'
    assert triple_library()['linear-half'].certified_strictness(default_grid()) == 'theorem6'
    assert WeaklyTypeTriple("t", "t", "0").certified_strictness(default_grid()) is None


def test_contractive_holds():
    half = SelfMap(unit, builtin='half')
    assert contractive_holds(half, (0.0,), (1.0,)).holds
    assert contractive_holds(half, (0.5,), (0.5,)).status == 'vacuous'
    identity = SelfMap(unit, builtin='identity')
    assert contractive_holds(identity, (0.0,), (1.0,)).violated


def test_certificate_dicts():
    for cert in (
        BanachCertificate(0.25),
        SimulationFunction("s/(1 + s) - t", name='rational'),
        MeirKeelerModulus("eps/2", cap=3.0),
        MeirKeelerModulus([(0.5, 0.1), (1.0, 0.2)]),
        WeaklyTypeTriple("t", "t", "t/10", strictness='theorem6'),
    ):
        d = cert.to_dict()
        again = certificate_from_dict(d)
        assert type(again) is type(cert)
        assert again.to_dict() == d
    assert {c.certificate_kind() for c in ALL_CERTIFICATE_KINDS} == {
        'banach',
        'simulation',
        'meir_keeler',
        'weakly_type',
    }


def test_certificate_from_dict_errors():
    with pytest.raises(UsageError):
        certificate_from_dict({'kind': 'lipschitz', 'lambda': 0.5})
    with pytest.raises(UsageError):
        certificate_from_dict({'kind': 'banach', 'lambda': 0.5, 'zeta': 's - t'})
    with pytest.raises(UsageError):
        certificate_from_dict({'kind': 'banach'})
    with pytest.raises(UsageError):
        certificate_from_dict({'kind': 'meir_keeler', 'delta': 'eps', 'table': [[1.0, 1.0]]})
    with pytest.raises(UsageError):
        certificate_from_dict({'kind': 'weakly_type', 'psi': 't'})


def test_instance_library():
    instances = instance_library()
    names = [i.name for i in instances]
    assert len(set(names)) == len(names)
    assert 'third-zeta' in names and 'third-triple' in names
    for inst in instances:
        assert inst.to_dict()['name'] == inst.name


if __name__ == "__main__":
    test_banach_holds()
    test_z_contraction_holds()
    test_zeta_probe_accepts_admissible()
    test_zeta_probe_refutes_diagonal()
    test_wt_admissibility()
    test_certificate_dicts()
