#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

from prettytable import PrettyTable

from contracta import __version__
from contracta.certificates import BanachCertificate, instance_library
from contracta.config import ENV_DEBUG, ExperimentConfig
from contracta.consts import ESTIMATE_INFEASIBLE, PICARD_CONVERGED, env_truths
from contracta.errors import (
    CertificateEvaluationError,
    ConfigLoadError,
    ReportableRuntimeError,
    SelfMapViolation,
    UsageError,
)
from contracta.picard import banach_a_priori_bound, picard_iterate
from contracta.sampler import Sampler, check_metric_axioms
from contracta.verify import Verifier, config_from_options, containment_demo, sampler_from_options

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

COMMANDS = ('verify', 'classify', 'iterate', 'estimate-modulus', 'demo-containment', 'check-metric')


class ShowVersion(argparse.Action):
    def __init__(self, option_strings, dest=argparse.SUPPRESS, default=argparse.SUPPRESS, help=None):
        super(ShowVersion, self).__init__(
            option_strings=option_strings, dest=dest, default=default, nargs=0, help=help
        )

    def __call__(self, parser, namespace, values, option_string=None):
        parser.exit(status=0, message="Contracta Version: " + str(__version__) + "\n")


def u64(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be an integer, got {!r}".format(text))
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer, got {}".format(v))
    return v


parser = argparse.ArgumentParser(
    description='Contracta {} contraction certificate toolkit.'.format(str(__version__))
)
parser.add_argument('command', metavar='COMMAND', choices=COMMANDS, help='One of: ' + ', '.join(COMMANDS) + '.')
parser.add_argument(
    '-c', '--config', dest='config', action='store', required=True, help='The JSON experiment config file.'
)
parser.add_argument(
    '--seed', dest='seed', action='store', type=u64, default=None, help='Sampler seed. Overrides CONTRACTA_SEED.'
)
parser.add_argument(
    '-o',
    '--out',
    dest='out',
    action='store',
    default=None,
    help='Write the report to this path (defaults to stdout). Overrides CONTRACTA_OUT.',
)
parser.add_argument(
    '-f',
    '--format',
    dest='format',
    action='store',
    default=None,
    choices=('json', 'csv', 'table', 'human'),
    help='Choose an output format. Default is the config\'s output.format, or \"json\".',
)
parser.add_argument(
    '--multi-start',
    dest='multi_start',
    action='store_true',
    default=False,
    help='With iterate, also run Picard from n_starts sampled starts and check they agree.',
)
parser.add_argument(
    '-d', '--debug', dest='debug', action='store_true', default=False, help='Output additional runtime messages.'
)
parser.add_argument('-V', '--version', action=ShowVersion, help='Show Contracta version and exit.')


class CommandOutput(object):
    """What one command produced: the JSON payload, a tabular view, a text report and the exit code."""

    __slots__ = ('payload', 'headers', 'rows', 'text', 'exit_code')

    def __init__(self, payload: dict, headers: List[str], rows: List[list], text: str, exit_code: int):
        self.payload = payload
        self.headers = headers
        self.rows = rows
        self.text = text
        self.exit_code = exit_code


def _make_verifier(cfg: ExperimentConfig, debug: bool) -> Verifier:
    options = dict(cfg.options)
    options['debug'] = debug
    options['tol'] = cfg.picard['tol']
    options['max_iter'] = cfg.picard['max_iter']
    options['divergence_radius'] = cfg.picard['divergence_radius']
    return Verifier(cfg.require_map(), options)


def _violation_output(e: SelfMapViolation) -> CommandOutput:
    payload = {
        'self_map_violation': {
            'message': str(e.message),
            'point': None if e.point is None else list(e.point),
            'image': None if e.image is None else list(e.image),
        }
    }
    rows = [[e.message, e.point, e.image]]
    return CommandOutput(payload, ['message', 'point', 'image'], rows, str(e), EXIT_NEGATIVE)


def cmd_verify(cfg: ExperimentConfig, args) -> CommandOutput:
    if not cfg.certificates:
        raise ConfigLoadError("The verify command needs at least one certificate.", "$.certificates")
    verifier = _make_verifier(cfg, args.debug)
    try:
        results = [verifier.verify_certificate(c) for c in cfg.certificates]
    except SelfMapViolation as e:
        return _violation_output(e)
    negative = any(not r.verified for r in results)
    payload = {
        'verified': not negative,
        'results': [r.to_dict() for r in results],
    }
    text = "\n".join(r.describe() for r in results)
    headers = list(results[0].headers)
    return CommandOutput(payload, headers, [r.row() for r in results], text, EXIT_NEGATIVE if negative else EXIT_OK)


def cmd_classify(cfg: ExperimentConfig, args) -> CommandOutput:
    verifier = _make_verifier(cfg, args.debug)
    try:
        report = verifier.classify(cfg.zetas, cfg.triples)
    except SelfMapViolation as e:
        return _violation_output(e)
    return CommandOutput(report.to_dict(), list(report.headers), report.rows(), report.describe(), EXIT_OK)


def cmd_iterate(cfg: ExperimentConfig, args) -> CommandOutput:
    x0 = cfg.picard['x0']
    if x0 is None:
        raise ConfigLoadError("The iterate command needs a starting point.", "$.picard.x0")
    verifier = _make_verifier(cfg, args.debug)
    trace = picard_iterate(verifier.map, x0, verifier.stop, verifier.logger)
    payload: Dict[str, Any] = {'trace': trace.to_dict()}
    text = trace.describe()
    exit_code = EXIT_OK if trace.verdict == PICARD_CONVERGED else EXIT_NEGATIVE
    lam = None
    for c in cfg.certificates:
        if isinstance(c, BanachCertificate):
            lam = c.lam
            break
    if lam is not None and trace.step_distances:
        payload['a_priori_bound'] = {
            'lambda': lam,
            'steps': trace.steps - 1,
            'bound': banach_a_priori_bound(lam, trace.step_distances[0], trace.steps - 1),
        }
    if args.multi_start:
        uniq = verifier.picard_uniqueness_probe()
        payload['uniqueness'] = uniq.to_dict()
        text += "\n" + uniq.describe()
        if not uniq.agree:
            exit_code = EXIT_NEGATIVE
    return CommandOutput(payload, list(trace.headers), trace.rows(), text, exit_code)


def cmd_estimate_modulus(cfg: ExperimentConfig, args) -> CommandOutput:
    verifier = _make_verifier(cfg, args.debug)
    try:
        estimates = verifier.estimate_mk_moduli()
    except SelfMapViolation as e:
        return _violation_output(e)
    feasible = [m for m in estimates if m.verdict != ESTIMATE_INFEASIBLE]
    positive = len(feasible) > 0 and all(m.positive for m in feasible)
    payload = {'all_positive': positive, 'estimates': [m.to_dict() for m in estimates]}
    text = "\n".join(m.describe() for m in estimates)
    rows = [m.row() for m in estimates]
    return CommandOutput(payload, list(estimates[0].headers), rows, text, EXIT_OK if positive else EXIT_NEGATIVE)


def cmd_demo_containment(cfg: ExperimentConfig, args) -> CommandOutput:
    instances = cfg.instances if cfg.instances is not None else instance_library()
    options = dict(cfg.options)
    options['debug'] = args.debug
    Verifier._load_default_options(options)
    vcfg = config_from_options(options)
    table = containment_demo(instances, None, vcfg, sampler_from_options(options, vcfg.seed), options['logger'])
    return CommandOutput(
        table.to_dict(),
        list(table.headers),
        table.table_rows(),
        table.describe(),
        EXIT_OK if table.all_positive else EXIT_NEGATIVE,
    )


def cmd_check_metric(cfg: ExperimentConfig, args) -> CommandOutput:
    space = cfg.require_space()
    options = dict(cfg.options)
    Verifier._load_default_options(options)
    sampler = Sampler(seed=int(options['seed']), block_size=int(options['block_size']))
    report = check_metric_axioms(space, sampler, int(options['n_triples']))
    text = "Metric axioms on {} over {} triples: {}".format(
        space.name, report.n_triples, "no violations" if report.passed else "VIOLATED"
    )
    for axiom, count in report.violations.items():
        text += "\n\t{}: {} violation(s)".format(axiom, count)
    return CommandOutput(
        report.to_dict(),
        ['axiom', 'violations', 'witness'],
        report.rows(),
        text,
        EXIT_OK if report.passed else EXIT_NEGATIVE,
    )


COMMAND_MAP: Dict[str, Callable[[ExperimentConfig, Any], CommandOutput]] = {
    'verify': cmd_verify,
    'classify': cmd_classify,
    'iterate': cmd_iterate,
    'estimate-modulus': cmd_estimate_modulus,
    'demo-containment': cmd_demo_containment,
    'check-metric': cmd_check_metric,
}


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def render(output: CommandOutput, fmt: str, command: str, resolved_config: dict) -> str:
    if fmt == 'json':
        doc = {
            'command': command,
            'config': resolved_config,
            'exit_code': output.exit_code,
            'result': output.payload,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt == 'csv':
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(output.headers)
        for row in output.rows:
            writer.writerow([_cell(c) for c in row])
        return buf.getvalue()
    if fmt == 'table':
        t = PrettyTable()
        t.field_names = output.headers
        t.align = "l"
        for row in output.rows:
            t.add_row([_cell(c) for c in row])
        return str(t) + "\n"
    return output.text + "\n"


def _resolve_out(out: Optional[str], command: str, fmt: str) -> Optional[str]:
    if out is None:
        return None
    if os.path.isdir(out):
        ext = {'json': 'json', 'csv': 'csv'}.get(fmt, 'txt')
        return os.path.join(out, "{}.{}".format(command, ext))
    return out


def write_report(text: str, out: Optional[str], command: str, fmt: str, workers: int = 1):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    meta = {
        'command': command,
        'format': fmt,
        'generated': datetime.now(timezone.utc).isoformat(),
        'version': str(__version__),
        'workers': int(workers),
    }
    with open(out + ".meta.json", 'w', encoding='utf-8') as f:
        f.write(json.dumps(meta, sort_keys=True, indent=2) + "\n")


def main(prog: Union[str, None] = None, argv: Optional[Sequence[str]] = None) -> None:
    if prog is not None and len(prog) > 0:
        parser.prog = prog
    args = parser.parse_args(argv)
    if not args.debug and str(os.getenv(ENV_DEBUG, "")) in env_truths:
        args.debug = True
    exit_code: int = EXIT_OK
    try:
        cfg = ExperimentConfig.load(args.config)
        cfg.apply_overrides(seed=args.seed, out=args.out, fmt=args.format)
        fmt = cfg.output['format']
        output = COMMAND_MAP[args.command](cfg, args)
        text = render(output, fmt, args.command, cfg.resolved())
        out = _resolve_out(cfg.output['path'], args.command, fmt)
        write_report(text, out, args.command, fmt, workers=cfg.options['workers'])
        exit_code = output.exit_code
    except ConfigLoadError as cle:
        sys.stderr.write("Contracta encountered a Config Load Error:\n")
        sys.stderr.write(str(cle))
        sys.stderr.write("\n")
        exit_code = EXIT_USAGE
    except UsageError as ue:
        sys.stderr.write("Contracta encountered a Usage Error:\n")
        sys.stderr.write(str(ue))
        sys.stderr.write("\n")
        exit_code = EXIT_USAGE
    except CertificateEvaluationError as cee:
        sys.stderr.write("Contracta could not evaluate a certificate:\n")
        sys.stderr.write(str(cee))
        sys.stderr.write("\n")
        exit_code = EXIT_USAGE
    except ReportableRuntimeError as rre:
        sys.stderr.write("Contracta encountered a Runtime Error:\n")
        sys.stderr.write(str(rre.message))
        sys.stderr.write("\n")
        exit_code = EXIT_USAGE
    except OSError as e:
        sys.stderr.write("Contracta could not write its report:\n")
        sys.stderr.write(str(e))
        sys.stderr.write("\n")
        exit_code = EXIT_USAGE
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
