# -*- coding: utf-8 -*-
from typing import Dict, List, Type

from contracta.errors import UsageError

from .admissibility import (
    AdmissibilityReport,
    ConditionCheck,
    default_grid,
    wt_admissibility_check,
    zeta_admissibility_probe,
)
from .banach import BanachCertificate, banach_as_z, banach_holds, banach_mk_modulus
from .certificate import Certificate, PairVerdict, contractive_holds, judge_contractive, pair_distances
from .library import (
    ContainmentInstance,
    builtin_instance,
    instance_library,
    triple_library,
    zeta_library,
)
from .meir_keeler import MeirKeelerModulus, mk_condition_holds
from .simulation import SequenceProbe, SimulationFunction, default_probes, z_contraction_holds
from .weakly_type import WeaklyTypeTriple, weakly_type_holds

ALL_CERTIFICATE_KINDS: List[Type[Certificate]] = [
    BanachCertificate,
    SimulationFunction,
    MeirKeelerModulus,
    WeaklyTypeTriple,
]

CERTIFICATE_KINDS_MAP: Dict[str, Type[Certificate]] = {c.certificate_kind(): c for c in ALL_CERTIFICATE_KINDS}


def certificate_from_dict(entry: dict) -> Certificate:
    """Build a certificate from its JSON form, dispatching on the 'kind' tag."""
    kind = entry.get('kind')
    try:
        cls = CERTIFICATE_KINDS_MAP[kind]
    except KeyError:
        raise UsageError(
            "Unknown certificate kind {!r}. Expected one of: {}.".format(kind, ", ".join(CERTIFICATE_KINDS_MAP))
        )
    unknown = set(entry) - set(cls.certificate_parameters()) - {'kind', 'name'}
    if unknown:
        raise UsageError("Unexpected key(s) for a {} certificate: {}.".format(kind, ", ".join(sorted(unknown))))
    return cls.from_dict(entry)


__all__ = [
    'AdmissibilityReport',
    'BanachCertificate',
    'Certificate',
    'ConditionCheck',
    'ContainmentInstance',
    'MeirKeelerModulus',
    'PairVerdict',
    'SequenceProbe',
    'SimulationFunction',
    'WeaklyTypeTriple',
    'ALL_CERTIFICATE_KINDS',
    'CERTIFICATE_KINDS_MAP',
    'banach_as_z',
    'banach_holds',
    'banach_mk_modulus',
    'builtin_instance',
    'certificate_from_dict',
    'contractive_holds',
    'default_grid',
    'default_probes',
    'instance_library',
    'judge_contractive',
    'mk_condition_holds',
    'pair_distances',
    'triple_library',
    'weakly_type_holds',
    'wt_admissibility_check',
    'z_contraction_holds',
    'zeta_admissibility_probe',
    'zeta_library',
]
