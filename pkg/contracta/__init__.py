# -*- coding: utf-8 -*-
#
from .certificates import (
    BanachCertificate,
    MeirKeelerModulus,
    SimulationFunction,
    WeaklyTypeTriple,
    certificate_from_dict,
)
from .picard import StoppingRule, picard_iterate
from .pytypes import VerificationConfig
from .sampler import Sampler
from .space import MetricSpace, SelfMap
from .verify import (
    Verifier,
    classify,
    containment_demo,
    estimate_mk_modulus,
    picard_uniqueness_probe,
    verify_certificate,
)

# version compliant with https://www.python.org/dev/peps/pep-0440/
__version__ = '0.1.0'
# Don't forget to change the version number in pyproject.toml along with this one

__all__ = [
    'BanachCertificate',
    'MeirKeelerModulus',
    'MetricSpace',
    'Sampler',
    'SelfMap',
    'SimulationFunction',
    'StoppingRule',
    'VerificationConfig',
    'Verifier',
    'WeaklyTypeTriple',
    '__version__',
    'certificate_from_dict',
    'classify',
    'containment_demo',
    'estimate_mk_modulus',
    'picard_iterate',
    'picard_uniqueness_probe',
    'verify_certificate',
]
