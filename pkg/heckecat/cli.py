'''Command-line front end: `heckecat {weyl,pcan,tilt,verify}`.

Exit codes: 0 success, 1 failed check or mismatch, 2 usage or
configuration error, 3 computation budget exceeded.
'''
import argparse
import csv
import io
import sys

from marshmallow import ValidationError

from .config import OUTPUT_FORMATS, PRESETS
from .contrib import RunConfigSchema, datum_from_config, load_key_value_file
from .exceptions import (
    BudgetExceeded,
    HeckecatError,
    PreconditionError,
    RootDatumError,
    UnknownSuite,
    VerificationFailed,
)
from .hecke import p_canonical, p_canonical_table, sl2_engine_tilting, sl2_tilting_oracle
from .logging import setup_logging
from .sbim import SoergelCategory
from .suites import SUITES, run_suite
from .utils import dumps, word_to_string
from .validators import parse_weight, parse_word

info_logger, error_logger = setup_logging()

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
WEYL_QUERIES = ('orbit', 'stab', 'alcove', 'length', 'word', 'conjugate')
CONFIG_KEYS = ('type', 'root_file', 'p', 'word', 'weight', 'bound', 'lower', 'max_len', 'samples',
               'field_ext', 'seed', 'format', 'out')


def _common_flags():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--type', choices=PRESETS, help='root datum preset')
    parser.add_argument('--root-file', dest='root_file', help='key=value root datum (cartan, lattice)')
    parser.add_argument('--p', type=int, help='odd prime')
    parser.add_argument('--word', help='word in the generators, e.g. s1s0s1')
    parser.add_argument('--weight', help='weight coordinates, e.g. 0 or 1,-2')
    parser.add_argument('--bound', type=int, help='box bound or maximal weight')
    parser.add_argument('--lower', type=int, help='lower box bound')
    parser.add_argument('--max-len', dest='max_len', type=int, help='length budget')
    parser.add_argument('--samples', type=int, help='number of sample point seeds')
    parser.add_argument('--field-ext', dest='field_ext', type=int, help='extension degree of F_p')
    parser.add_argument('--seed', type=int)
    parser.add_argument('--format', choices=OUTPUT_FORMATS)
    parser.add_argument('--out', help='output path (default stdout)')
    parser.add_argument('--config', help='key=value run configuration; flags override it')
    return parser


def build_parser():
    common = _common_flags()
    parser = argparse.ArgumentParser(prog='heckecat', description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest='command', required=True)
    weyl = sub.add_parser('weyl', parents=[common], help='affine Weyl group queries')
    weyl.add_argument('query', choices=WEYL_QUERIES)
    sub.add_parser('pcan', parents=[common], help='p-canonical basis table')
    sub.add_parser('tilt', parents=[common], help='SL2 tilting characters against the Donkin formula')
    verify = sub.add_parser('verify', parents=[common], help='run verification suites')
    verify.add_argument('suite', help=f'one of {", ".join(sorted(SUITES) + ["all"])}')
    return parser


def load_config(args):
    values = {}
    if args.config:
        values.update(load_key_value_file(args.config))
    values.update({k: v for k, v in vars(args).items() if k in CONFIG_KEYS and v is not None})
    return RunConfigSchema().load(values)


# commands

def cmd_weyl(config, query):
    datum = datum_from_config(config)
    out = {'query': query, 'datum': repr(datum), 'p': datum.prime}
    if query in ('orbit', 'stab', 'alcove'):
        if config.weight is None:
            raise ValidationError('`weight` is required', 'weight')
        lam = parse_weight(config.weight, datum.rank)
        out['weight'] = list(lam)
        if query == 'orbit':
            bound = config.bound if config.bound is not None else 4 * datum.prime
            out['bound'], out['lower'] = bound, config.lower
            out['orbit'] = sorted(list(mu) for mu in datum.linkage_class(lam, bound, lower=config.lower))
            out['representative'] = list(datum.orbit_representative(lam))
        elif query == 'stab':
            out['stabilizer'] = datum.dot_stabilizer(lam).to_json()
        else:
            out['alcove'] = datum.alcove_record(lam).to_json()
        return out, EXIT_OK
    word = parse_word(config.word)
    if query == 'conjugate':
        s = word[0] if word else 0
        x, t = datum.conjugate_to_finite(s)
        out.update({'s': f's{s}', 'x': x.to_json(), 'x_length': datum.length(x), 't': f's{t}'})
        return out, EXIT_OK
    x = datum.from_word(word)
    out['element'] = x.to_json()
    out['length'] = datum.length(x)
    if query == 'word':
        reduced, omega = datum.factor(x)
        out['reduced_word'] = word_to_string(reduced) or 'e'
        out['omega'] = omega.to_json()
    return out, EXIT_OK


def cmd_pcan(config):
    category = SoergelCategory.from_config(config)
    datum = category.datum
    if config.word:
        w = datum.from_word(parse_word(config.word))
        pcan = p_canonical(category, w)
        kl = category.hecke.kl_basis(w)
        rows = [{'w': datum.name(w), 'y': datum.name(y), 'p_h': str(pcan[y]), 'h': str(kl[y])}
                for y in sorted(set(pcan.support) | set(kl.support), key=category.hecke.sort_key)]
    else:
        rows = p_canonical_table(category, config.max_len)
    for row in rows:
        row['equal'] = row['p_h'] == row['h']
    return {
        'datum': repr(datum),
        'seed': config.seed,
        'points': category.points.to_json(),
        'rows': rows,
    }, EXIT_OK


def cmd_tilt(config):
    category = SoergelCategory.from_config(config)
    p = category.datum.prime
    if category.datum.rank != 1:
        raise PreconditionError('tilt needs an SL2 root datum')
    bound = config.bound if config.bound is not None else 3 * p - 3
    engine = sl2_engine_tilting(category, bound)
    rows = []
    for n, got in engine.items():
        expected = sl2_tilting_oracle(n, p)
        rows.append({'n': n, 'engine': got, 'oracle': expected, 'match': got == expected})
    ok = all(r['match'] for r in rows)
    info_logger.info('tilting table', p=p, bound=bound, match=ok)
    return {'p': p, 'seed': config.seed, 'rows': rows, 'match': ok}, EXIT_OK if ok else EXIT_FAILED


def cmd_verify(config, suite):
    report = run_suite(suite, config)
    if not report['passed']:
        raise VerificationFailed(report)
    return report, EXIT_OK


# output

def _character_str(chars):
    return ' + '.join(f'{c}*chi({m})' if c != 1 else f'chi({m})' for m, c in sorted(chars.items(), reverse=True))


def _table(payload):
    rows = payload.get('rows') or payload.get('checks') or []
    flat = []
    for row in rows:
        flat.append({k: (_character_str(v) if isinstance(v, dict) and k in ('engine', 'oracle')
                         else dumps(v) if isinstance(v, (dict, list)) else v)
                     for k, v in row.items()})
    return flat


def render(payload, fmt):
    if fmt == 'json':
        return dumps(payload) + '\n'
    rows = _table(payload)
    if not rows:
        return dumps(payload) + '\n'
    header = list(rows[0])
    if fmt == 'csv':
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    lines = ['\\begin{tabular}{' + 'l' * len(header) + '}', ' & '.join(header) + ' \\\\', '\\hline']
    for row in rows:
        lines.append(' & '.join(f'${row[h]}$' if h in ('p_h', 'h', 'engine', 'oracle') else str(row[h])
                                for h in header) + ' \\\\')
    lines.append('\\end{tabular}')
    return '\n'.join(lines) + '\n'


def emit(payload, fmt, out):
    text = render(payload, fmt)
    if out:
        with open(out, 'w') as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def dispatch(args, config):
    if args.command == 'weyl':
        return cmd_weyl(config, args.query)
    if args.command == 'pcan':
        return cmd_pcan(config)
    if args.command == 'tilt':
        return cmd_tilt(config)
    return cmd_verify(config, args.suite)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt, out = 'json', None
    try:
        config = load_config(args)
        fmt, out = config.format, config.out
        payload, code = dispatch(args, config)
    except ValidationError as exc:
        sys.stderr.write(f'heckecat: error: {exc.messages}\n')
        return EXIT_USAGE
    except (UnknownSuite, PreconditionError, RootDatumError) as exc:
        sys.stderr.write(f'heckecat: error: {exc}\n')
        return EXIT_USAGE
    except BudgetExceeded as exc:
        error_logger.error('budget exceeded', reason=str(exc))
        emit({'partial': True, 'reason': str(exc), 'results': exc.partial or {}}, 'json', out)
        return EXIT_BUDGET
    except VerificationFailed as exc:
        emit(exc.payload, fmt, out)
        return EXIT_FAILED
    except HeckecatError as exc:
        error_logger.exception('computation failed')
        sys.stderr.write(f'heckecat: error: {exc}\n')
        return EXIT_FAILED
    emit(payload, fmt, out)
    return code


if __name__ == '__main__':
    sys.exit(main())
