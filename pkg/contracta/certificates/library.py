# -*- coding: utf-8 -*-
#
"""
Builtin simulation functions, weakly-type triples and (map, certificate) instances.
"""
from dataclasses import dataclass
from typing import Callable, Dict, List

from contracta.consts import METRIC_EUCLIDEAN, STRICTNESS_DEFINITION4, STRICTNESS_THEOREM6
from contracta.errors import UsageError
from contracta.space import MetricSpace, SelfMap

from .banach import BanachCertificate, banach_as_z
from .certificate import Certificate
from .simulation import SimulationFunction
from .weakly_type import WeaklyTypeTriple


def zeta_library() -> Dict[str, SimulationFunction]:
    return {
        'banach-0.5': banach_as_z(BanachCertificate(0.5)),
        'banach-0.9': banach_as_z(BanachCertificate(0.9)),
        'rational': SimulationFunction("s/(1 + s) - t", name='rational'),
        'half-psi': SimulationFunction("s/2 - t", name='half-psi'),
    }


def triple_library() -> Dict[str, WeaklyTypeTriple]:
    return {
        'linear-half': WeaklyTypeTriple("t", "t/2", "0", STRICTNESS_THEOREM6, name='linear-half'),
        'weak-phi': WeaklyTypeTriple("t", "t", "t^2/(1 + t)", STRICTNESS_THEOREM6, name='weak-phi'),
        'double-psi': WeaklyTypeTriple("2*t", "2*t", "t", STRICTNESS_THEOREM6, name='double-psi'),
        'tenth-beta': WeaklyTypeTriple("t", "t", "t/10", STRICTNESS_THEOREM6, name='tenth-beta'),
        # psi(0) = 1, so this triple is admissible only at definition4 strictness
        'shifted-half': WeaklyTypeTriple("t + 1", "t/2 + 1", "0", STRICTNESS_DEFINITION4, name='shifted-half'),
    }


@dataclass
class ContainmentInstance:
    name: str
    map: SelfMap
    certificate: Certificate

    @property
    def space(self) -> MetricSpace:
        return self.map.space

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'space': self.space.to_dict(),
            'map': self.map.to_dict(),
            'certificate': self.certificate.to_dict(),
        }


def interval(name: str, low: float, high: float) -> MetricSpace:
    return MetricSpace(name, 1, [(low, high)], METRIC_EUCLIDEAN)


def _third_on_0_9_zeta() -> ContainmentInstance:
    space = interval("[0,9]", 0.0, 9.0)
    return ContainmentInstance('third-zeta', SelfMap(space, builtin='third'), zeta_library()['half-psi'])


def _third_on_0_9_triple() -> ContainmentInstance:
    space = interval("[0,9]", 0.0, 9.0)
    return ContainmentInstance('third-triple', SelfMap(space, builtin='third'), triple_library()['linear-half'])


def _cos_zeta() -> ContainmentInstance:
    space = interval("[0,1]", 0.0, 1.0)
    return ContainmentInstance('cos-zeta', SelfMap(space, builtin='cos'), zeta_library()['banach-0.9'])


def _cos_triple() -> ContainmentInstance:
    space = interval("[0,1]", 0.0, 1.0)
    return ContainmentInstance('cos-triple', SelfMap(space, builtin='cos'), triple_library()['tenth-beta'])


def _third_weak_phi() -> ContainmentInstance:
    space = interval("[0,1]", 0.0, 1.0)
    return ContainmentInstance('third-weak-phi', SelfMap(space, builtin='third'), triple_library()['weak-phi'])


def _half_shifted() -> ContainmentInstance:
    space = interval("[0,4]", 0.0, 4.0)
    return ContainmentInstance('half-shifted', SelfMap(space, builtin='half'), triple_library()['shifted-half'])


def _planar_rotation() -> ContainmentInstance:
    space = MetricSpace("[-1,1]^2", 2, [(-1.0, 1.0), (-1.0, 1.0)], METRIC_EUCLIDEAN)
    m = SelfMap(space, expressions=["0.5*x1 - 0.3*x2", "0.3*x1 + 0.5*x2"], name='planar-rotation')
    return ContainmentInstance('planar-zeta', m, SimulationFunction("0.75*s - t", name='banach-0.75'))


INSTANCE_FACTORIES: Dict[str, Callable[[], ContainmentInstance]] = {
    'third-zeta': _third_on_0_9_zeta,
    'third-triple': _third_on_0_9_triple,
    'cos-zeta': _cos_zeta,
    'cos-triple': _cos_triple,
    'third-weak-phi': _third_weak_phi,
    'half-shifted': _half_shifted,
    'planar-zeta': _planar_rotation,
}


def instance_library() -> List[ContainmentInstance]:
    return [factory() for factory in INSTANCE_FACTORIES.values()]


def builtin_instance(name: str) -> ContainmentInstance:
    try:
        return INSTANCE_FACTORIES[name]()
    except KeyError:
        raise UsageError(
            "Unknown builtin instance {!r}. Known instances: {}.".format(name, ", ".join(INSTANCE_FACTORIES))
        )
