# -*- coding: utf-8 -*-
#
"""
Loading and validation of JSON experiment configs.

The schema is documented in README.md. Every rejection is a ConfigLoadError whose
path names the offending key, written like $.map.builtin or $.certificates[1].lambda.
"""
import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from packaging.version import InvalidVersion, Version

from .certificates import (
    Certificate,
    ContainmentInstance,
    SimulationFunction,
    WeaklyTypeTriple,
    builtin_instance,
    certificate_from_dict,
)
from .consts import (
    DEFAULT_EPSILON_GRID,
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
    METRIC_EUCLIDEAN,
    SAMPLER_BLOCK_SIZE,
    SCHEMA_VERSION,
    SCHEME_UNIFORM_BOX,
)
from .errors import ConfigLoadError, UsageError
from .space import MetricSpace, SelfMap

OUTPUT_FORMATS = ('json', 'csv', 'table', 'human')

TOP_LEVEL_KEYS = (
    'schema_version',
    'space',
    'map',
    'certificates',
    'instances',
    'zeta_library',
    'triple_library',
    'verification',
    'picard',
    'output',
)
SPACE_KEYS = ('name', 'dimension', 'bounds', 'metric_kind', 'sampling_box')
MAP_KEYS = ('name', 'builtin', 'params', 'expressions')
INSTANCE_KEYS = ('name', 'space', 'map', 'certificate')
PICARD_KEYS = ('x0', 'tol', 'max_iter', 'divergence_radius')
OUTPUT_KEYS = ('format', 'path')
SAMPLER_KEYS = ('scheme', 'center', 'sigma', 'epsilon', 'width', 'block_size')

VERIFICATION_DEFAULTS: Dict[str, Any] = {
    'seed': DEFAULT_SEED,
    'n_pairs': DEFAULT_N_PAIRS,
    'slack': DEFAULT_SLACK,
    'epsilon_grid': list(DEFAULT_EPSILON_GRID),
    'shrink_levels': DEFAULT_SHRINK_LEVELS,
    'initial_width': None,
    'width_factor': DEFAULT_WIDTH_FACTOR,
    'level_budget': None,
    'workers': DEFAULT_WORKERS,
    'n_triples': DEFAULT_N_TRIPLES,
    'n_starts': DEFAULT_N_STARTS,
}
INTEGER_OPTIONS = ('seed', 'n_pairs', 'shrink_levels', 'level_budget', 'workers', 'n_triples', 'n_starts')
REAL_OPTIONS = ('slack', 'initial_width', 'width_factor')

ENV_SEED = 'CONTRACTA_SEED'
ENV_OUT = 'CONTRACTA_OUT'
ENV_DEBUG = 'CONTRACTA_DEBUG'


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _is_real(v) -> bool:
    return (isinstance(v, (int, float)) and not isinstance(v, bool)) and math.isfinite(v)


def _object(v, path: str) -> dict:
    if not isinstance(v, dict):
        raise ConfigLoadError("Expected a JSON object.", path)
    return v


def _array(v, path: str) -> list:
    if not isinstance(v, list):
        raise ConfigLoadError("Expected a JSON array.", path)
    return v


def _string(v, path: str) -> str:
    if not isinstance(v, str):
        raise ConfigLoadError("Expected a string.", path)
    return v


def _real(v, path: str, allow_none: bool = False) -> Optional[float]:
    if v is None and allow_none:
        return None
    if not _is_real(v):
        raise ConfigLoadError("Expected a finite number, got {!r}.".format(v), path)
    return float(v)


def _integer(v, path: str, allow_none: bool = False) -> Optional[int]:
    if v is None and allow_none:
        return None
    if not _is_int(v):
        raise ConfigLoadError("Expected an integer, got {!r}.".format(v), path)
    return int(v)


def _no_unknown_keys(obj: dict, allowed: Sequence[str], path: str):
    for k in obj:
        if k not in allowed:
            raise ConfigLoadError(
                "Unknown key {!r}. Allowed keys: {}.".format(k, ", ".join(allowed)), "{}.{}".format(path, k)
            )


def _required(obj: dict, key: str, path: str):
    if key not in obj:
        raise ConfigLoadError("Missing required key {!r}.".format(key), "{}.{}".format(path, key))
    return obj[key]


def _point(v, path: str) -> List[float]:
    arr = _array(v, path)
    return [_real(c, "{}[{}]".format(path, i)) for i, c in enumerate(arr)]  # type: ignore[misc]


def check_schema_version(v, path: str = "$.schema_version") -> str:
    """Same major version as SCHEMA_VERSION; any minor at or below ours."""
    text = _string(v, path)
    try:
        given = Version(text)
    except InvalidVersion:
        raise ConfigLoadError("Invalid schema_version {!r}.".format(text), path)
    ours = Version(SCHEMA_VERSION)
    if given.major != ours.major or given > ours:
        raise ConfigLoadError(
            "Config schema_version {} is not readable by schema {}.".format(text, SCHEMA_VERSION), path
        )
    return text


def load_space(obj, path: str = "$.space") -> MetricSpace:
    obj = _object(obj, path)
    _no_unknown_keys(obj, SPACE_KEYS, path)
    name = _string(obj.get('name', 'X'), path + ".name")
    dimension = _integer(_required(obj, 'dimension', path), path + ".dimension")
    raw_bounds = _array(_required(obj, 'bounds', path), path + ".bounds")
    bounds: List[Tuple[Optional[float], Optional[float]]] = []
    for i, b in enumerate(raw_bounds):
        bp = "{}.bounds[{}]".format(path, i)
        pair = _array(b, bp)
        if len(pair) != 2:
            raise ConfigLoadError("Each bound must be a [lower, upper] pair; use null for unbounded.", bp)
        bounds.append((_real(pair[0], bp + "[0]", True), _real(pair[1], bp + "[1]", True)))
    box = None
    if obj.get('sampling_box') is not None:
        box = []
        for i, b in enumerate(_array(obj['sampling_box'], path + ".sampling_box")):
            bp = "{}.sampling_box[{}]".format(path, i)
            pair = _array(b, bp)
            if len(pair) != 2:
                raise ConfigLoadError("Each sampling_box entry must be a [lower, upper] pair.", bp)
            box.append((_real(pair[0], bp + "[0]"), _real(pair[1], bp + "[1]")))
    metric_kind = _string(obj.get('metric_kind', METRIC_EUCLIDEAN), path + ".metric_kind")
    try:
        return MetricSpace(name, dimension, bounds, metric_kind, box)  # type: ignore[arg-type]
    except UsageError as e:
        raise ConfigLoadError(str(e), path)


def load_map(obj, space: MetricSpace, path: str = "$.map") -> SelfMap:
    obj = _object(obj, path)
    _no_unknown_keys(obj, MAP_KEYS, path)
    name = obj.get('name')
    if name is not None:
        _string(name, path + ".name")
    if ('builtin' in obj) == ('expressions' in obj):
        raise ConfigLoadError("A map needs exactly one of 'builtin' or 'expressions'.", path)
    try:
        if 'builtin' in obj:
            builtin = _string(obj['builtin'], path + ".builtin")
            params = _object(obj.get('params', {}), path + ".params")
            for k, v in params.items():
                _real(v, "{}.params.{}".format(path, k))
            try:
                return SelfMap(space, builtin=builtin, params=params, name=name)
            except UsageError as e:
                raise ConfigLoadError(str(e), path + ".builtin")
        exprs = _array(obj['expressions'], path + ".expressions")
        for i, e in enumerate(exprs):
            _string(e, "{}.expressions[{}]".format(path, i))
        return SelfMap(space, expressions=exprs, name=name)
    except ConfigLoadError:
        raise
    except UsageError as e:
        raise ConfigLoadError(str(e), path + ".expressions")


def load_certificate(obj, path: str) -> Certificate:
    obj = _object(obj, path)
    _required(obj, 'kind', path)
    try:
        return certificate_from_dict(obj)
    except UsageError as e:
        raise ConfigLoadError(str(e), path)
    except (TypeError, ValueError) as e:
        raise ConfigLoadError("Malformed certificate: {}".format(e), path)


def load_instance(obj, path: str) -> ContainmentInstance:
    if isinstance(obj, str):
        try:
            return builtin_instance(obj)
        except UsageError as e:
            raise ConfigLoadError(str(e), path)
    obj = _object(obj, path)
    _no_unknown_keys(obj, INSTANCE_KEYS, path)
    name = _string(_required(obj, 'name', path), path + ".name")
    space = load_space(_required(obj, 'space', path), path + ".space")
    m = load_map(_required(obj, 'map', path), space, path + ".map")
    cert = load_certificate(_required(obj, 'certificate', path), path + ".certificate")
    return ContainmentInstance(name=name, map=m, certificate=cert)


def load_verification(obj, path: str = "$.verification") -> Dict[str, Any]:
    obj = _object(obj, path)
    _no_unknown_keys(obj, tuple(VERIFICATION_DEFAULTS) + ('sampler',), path)
    options: Dict[str, Any] = dict(VERIFICATION_DEFAULTS)
    for k, v in obj.items():
        kp = "{}.{}".format(path, k)
        if k in INTEGER_OPTIONS:
            options[k] = _integer(v, kp, allow_none=(VERIFICATION_DEFAULTS[k] is None))
        elif k in REAL_OPTIONS:
            options[k] = _real(v, kp, allow_none=(VERIFICATION_DEFAULTS[k] is None))
        elif k == 'epsilon_grid':
            options[k] = [_real(e, "{}[{}]".format(kp, i)) for i, e in enumerate(_array(v, kp))]
    sampler = _object(obj.get('sampler', {}), path + ".sampler")
    _no_unknown_keys(sampler, SAMPLER_KEYS, path + ".sampler")
    options['sampler_scheme'] = _string(sampler.get('scheme', SCHEME_UNIFORM_BOX), path + ".sampler.scheme")
    params: Dict[str, Any] = {}
    if sampler.get('center') is not None:
        params['center'] = tuple(_point(sampler['center'], path + ".sampler.center"))
    for k in ('sigma', 'epsilon', 'width'):
        if sampler.get(k) is not None:
            params[k] = _real(sampler[k], "{}.sampler.{}".format(path, k))
    options['sampler_params'] = params
    options['block_size'] = _integer(sampler.get('block_size', SAMPLER_BLOCK_SIZE), path + ".sampler.block_size")
    return options


def load_picard(obj, path: str = "$.picard") -> Dict[str, Any]:
    obj = _object(obj, path)
    _no_unknown_keys(obj, PICARD_KEYS, path)
    return {
        'x0': None if obj.get('x0') is None else _point(obj['x0'], path + ".x0"),
        'tol': _real(obj.get('tol', DEFAULT_TOL), path + ".tol"),
        'max_iter': _integer(obj.get('max_iter', DEFAULT_MAX_ITER), path + ".max_iter"),
        'divergence_radius': _real(obj.get('divergence_radius'), path + ".divergence_radius", True),
    }


def load_output(obj, path: str = "$.output") -> Dict[str, Any]:
    obj = _object(obj, path)
    _no_unknown_keys(obj, OUTPUT_KEYS, path)
    fmt = _string(obj.get('format', 'json'), path + ".format")
    if fmt not in OUTPUT_FORMATS:
        raise ConfigLoadError(
            "Unknown output format {!r}. Expected one of: {}.".format(fmt, ", ".join(OUTPUT_FORMATS)), path + ".format"
        )
    out = obj.get('path')
    if out is not None:
        _string(out, path + ".path")
    return {'format': fmt, 'path': out}


def _library(obj, path: str, cls: type) -> Optional[Dict[str, Any]]:
    if obj is None:
        return None
    entries = _array(obj, path)
    lib: Dict[str, Any] = {}
    for i, entry in enumerate(entries):
        ep = "{}[{}]".format(path, i)
        cert = load_certificate(entry, ep)
        if not isinstance(cert, cls):
            raise ConfigLoadError(
                "Expected a {} certificate, got {}.".format(cls.certificate_kind(), cert.certificate_kind()), ep
            )
        lib[cert.name] = cert
    return lib


@dataclass
class ExperimentConfig:
    """
    A validated experiment: the space and map under test, the certificates and
    containment instances to run, verifier options, Picard settings and output.
    """

    schema_version: str
    space: Optional[MetricSpace] = None
    map: Optional[SelfMap] = None
    certificates: List[Certificate] = field(default_factory=list)
    instances: Optional[List[ContainmentInstance]] = None
    zetas: Optional[Dict[str, SimulationFunction]] = None
    triples: Optional[Dict[str, WeaklyTypeTriple]] = None
    options: Dict[str, Any] = field(default_factory=lambda: load_verification({}))
    picard: Dict[str, Any] = field(default_factory=lambda: load_picard({}))
    output: Dict[str, Any] = field(default_factory=lambda: load_output({}))
    source: Optional[str] = None

    @classmethod
    def from_dict(cls, doc) -> 'ExperimentConfig':
        doc = _object(doc, "$")
        _no_unknown_keys(doc, TOP_LEVEL_KEYS, "$")
        version = check_schema_version(_required(doc, 'schema_version', "$"))
        space = None
        m = None
        if 'map' in doc:
            space = load_space(_required(doc, 'space', "$"))
            m = load_map(doc['map'], space)
        elif 'space' in doc:
            space = load_space(doc['space'])
        certs = [
            load_certificate(c, "$.certificates[{}]".format(i))
            for i, c in enumerate(_array(doc.get('certificates', []), "$.certificates"))
        ]
        instances = None
        if 'instances' in doc:
            instances = [
                load_instance(c, "$.instances[{}]".format(i))
                for i, c in enumerate(_array(doc['instances'], "$.instances"))
            ]
        return cls(
            schema_version=version,
            space=space,
            map=m,
            certificates=certs,
            instances=instances,
            zetas=_library(doc.get('zeta_library'), "$.zeta_library", SimulationFunction),
            triples=_library(doc.get('triple_library'), "$.triple_library", WeaklyTypeTriple),
            options=load_verification(doc.get('verification', {})),
            picard=load_picard(doc.get('picard', {})),
            output=load_output(doc.get('output', {})),
        )

    @classmethod
    def load(cls, path: str) -> 'ExperimentConfig':
        try:
            with open(path, 'r', encoding='utf-8') as f:
                doc = json.load(f)
        except FileNotFoundError:
            raise ConfigLoadError("Config file {} not found.".format(path), "$")
        except PermissionError:
            raise ConfigLoadError("Config file {} is not readable.".format(path), "$")
        except json.JSONDecodeError as e:
            raise ConfigLoadError(
                "Config is not valid JSON: {} (line {}, column {}).".format(e.msg, e.lineno, e.colno), "$"
            )
        cfg = cls.from_dict(doc)
        cfg.source = str(path)
        return cfg

    def require_map(self) -> SelfMap:
        if self.map is None:
            raise ConfigLoadError("Missing required key 'map'.", "$.map")
        return self.map

    def require_space(self) -> MetricSpace:
        if self.space is None:
            raise ConfigLoadError("Missing required key 'space'.", "$.space")
        return self.space

    def apply_overrides(
        self, seed: Optional[int] = None, out: Optional[str] = None, fmt: Optional[str] = None, environ=None
    ):
        """Command line flags beat CONTRACTA_SEED and CONTRACTA_OUT, which beat the config file."""
        environ = os.environ if environ is None else environ
        if seed is None and environ.get(ENV_SEED, ""):
            try:
                seed = int(environ[ENV_SEED])
            except ValueError:
                raise UsageError(
                    "{} must be an unsigned 64-bit integer, got {!r}.".format(ENV_SEED, environ[ENV_SEED])
                )
        if seed is not None:
            self.options['seed'] = int(seed)
        if out is None and environ.get(ENV_OUT, ""):
            out = environ[ENV_OUT]
        if out is not None:
            self.output['path'] = out
        if fmt is not None:
            self.output['format'] = fmt

    def resolved(self) -> dict:
        """The full config with defaults applied, embedded in every report."""
        # workers is recorded in the .meta.json sidecar, not here
        verification = {k: self.options[k] for k in VERIFICATION_DEFAULTS if k != 'workers'}
        verification['epsilon_grid'] = list(verification['epsilon_grid'])
        sampler = {'scheme': self.options['sampler_scheme'], 'block_size': self.options['block_size']}
        for k, v in sorted(self.options['sampler_params'].items()):
            sampler[k] = list(v) if isinstance(v, tuple) else v
        verification['sampler'] = sampler
        d: Dict[str, Any] = {
            'schema_version': self.schema_version,
            'verification': verification,
            'picard': dict(self.picard),
            'output': {'format': self.output['format']},
        }
        if self.space is not None:
            d['space'] = self.space.to_dict()
        if self.map is not None:
            d['map'] = self.map.to_dict()
        if self.certificates:
            d['certificates'] = [c.to_dict() for c in self.certificates]
        if self.instances is not None:
            d['instances'] = [i.to_dict() for i in self.instances]
        if self.zetas is not None:
            d['zeta_library'] = [z.to_dict() for z in self.zetas.values()]
        if self.triples is not None:
            d['triple_library'] = [t.to_dict() for t in self.triples.values()]
        return d


def load_config(path: Union[str, os.PathLike]) -> ExperimentConfig:
    return ExperimentConfig.load(str(path))
