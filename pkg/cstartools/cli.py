'''cli

Command line front end: read JSON inputs, run one library operation and
print a text or JSON report.

Exit status is 0 on success, 1 on a domain error and 2 on an argument or
input parse error.

'''

import argparse
import json
import logging
import os
import sys
from enum import Enum
from fractions import Fraction

import numpy as np

from . import matcore as mc
from . import calculus as calc
from . import algebra as alg
from . import gns
from . import groups as grp
from . import crossed as cr
from . import ktheory as kt
from . import morita

logger = logging.getLogger(__name__)

SEED_VARIABLE = 'CSTARTOOLS_SEED'


class InputError(Exception):
    '''An input file or argument could not be parsed.'''


def default_run_param():
    ''' Default run parameters.

    run_param : dict
        Parameters shared by all subcommands
        run_param = {
            'tol': mc.Tolerance(),  # numerical tolerance policy
            'seed': 0,  # seed of every random draw, or $CSTARTOOLS_SEED
            'horizon': 8,  # levels examined by Bratteli queries
            'retries': 8,  # fresh draws before a decomposition gives up
            'format': 'text',  # 'text' or 'json'
            }
    '''
    return {'tol': mc.Tolerance(),
            'seed': int(os.environ.get(SEED_VARIABLE, 0)),
            'horizon': kt.DEFAULT_HORIZON,
            'retries': 8,
            'format': 'text'}


def _load_json(path):
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as err:
        raise InputError('cannot read `' + str(path) + '`: '
                         + str(err)) from err
    except json.JSONDecodeError as err:
        raise InputError('`' + str(path) + '` is not valid JSON: '
                         + str(err)) from err


def _load_group(arg):
    '''A group from a table file or a built-in name.'''
    if os.path.exists(arg):
        obj = _load_json(arg)
        if isinstance(obj, dict) and 'group' in obj:
            obj = obj['group']
        return cr.parse_group(obj)
    return grp.from_name(arg)


def _load_diagram(arg, horizon):
    if os.path.exists(arg):
        return kt.bratteli_from_json(_load_json(arg))
    return kt.bratteli_from_json({'kind': arg, 'levels': horizon})


def _parse_class(text):
    ''' `level:v1,v2,...` -> K0Class. '''
    try:
        level, vec = str(text).split(':')
        return kt.K0Class([int(v) for v in vec.split(',') if v],
                          int(level))
    except ValueError as err:
        raise InputError('class `' + str(text) + '` is not of the form'
                         + ' level:v1,v2,...') from err


def _parse_indices(text):
    try:
        return [int(v) for v in str(text).split(',') if v]
    except ValueError as err:
        raise InputError('`' + str(text) + '` is not a list of'
                         + ' indices') from err


def _complex_list(values):
    return [[float(np.real(z)), float(np.imag(z))] for z in values]


def run_spectrum(args, run_param):
    a = mc.matrix_from_json(_load_json(args.matrix))
    res = mc.spectrum(a, run_param['tol'])
    return {'eigenvalues': _complex_list(res.eigenvalues),
            'residuals': [float(r) for r in res.residuals],
            'accepted': res.accepted, 'tolerance': res.tolerance}


def run_funcalc(args, run_param):
    a = mc.matrix_from_json(_load_json(args.matrix))
    interval = None if args.interval is None else tuple(args.interval)
    f = calc.get_function(args.fn, t=args.t, interval=interval)
    return {'function': args.fn,
            'result': mc.matrix_to_json(calc.func_calc(a, f,
                                                       run_param['tol']))}


def run_decompose(args, run_param):
    tol = run_param['tol']
    obj = _load_json(args.input) if os.path.exists(args.input) else None
    if obj is None or 'table' in obj or 'group' in obj:
        A = grp.regular_representation(_load_group(args.input), tol)
    else:
        A = alg.algebra_from_json(obj, tol)
    blocks = alg.block_decompose(A, seed=run_param['seed'],
                                 retries=run_param['retries'], tol=tol)
    return {'dim': A.dim, 'ambient_dim': A.ambient_dim,
            'blocks': alg.blocks_summary(blocks),
            'tolerance': tol.base_eps}


def run_gns(args, run_param):
    tol = run_param['tol']
    A = alg.algebra_from_json(_load_json(args.algebra), tol)
    phi = gns.state_from_json(A, _load_json(args.state), tol)
    res = gns.gns_construct(phi, tol)
    out = gns.gns_to_json(res)
    out['cyclicity_rank'] = gns.cyclicity_rank(res, tol)
    return out


def run_groupalg(args, run_param):
    tol = run_param['tol']
    G = _load_group(args.group)
    blocks = grp.decompose_group_algebra(G, seed=run_param['seed'], tol=tol)
    classes = len(grp.conjugacy_classes(G))
    return {'order': G.order, 'blocks': alg.blocks_summary(blocks),
            'conjugacy_classes': classes,
            'matched': len(blocks) == classes, 'tolerance': tol.base_eps}


def run_dual(args, run_param):
    tol = run_param['tol']
    G = _load_group(args.group)
    chars = grp.dual_group(G, seed=run_param['seed'],
                           retries=run_param['retries'], tol=tol)
    check = grp.fourier_iso_check(G, seed=run_param['seed'], tol=tol)
    return {'order': G.order,
            'characters': [_complex_list(c.values) for c in chars],
            'fourier_residual': check['max_residual'],
            'tolerance': tol.base_eps}


def run_crossed(args, run_param):
    tol = run_param['tol']
    sys_ = cr.system_from_json(_load_json(args.system), tol)
    cp = cr.build_crossed(sys_, tol)
    out = cr.crossed_summary(cp)
    out['relations'] = cr.verify_relations(cp)
    out['tolerance'] = tol.base_eps
    return out


def run_svn(args, run_param):
    return cr.stone_von_neumann_check(_load_group(args.group),
                                      seed=run_param['seed'],
                                      tol=run_param['tol'])


def run_k0(args, run_param):
    tol = run_param['tol']
    if args.query == 'class':
        if len(args.inputs) != 2:
            raise InputError('`k0 class` needs an algebra and a projection')
        A = alg.algebra_from_json(_load_json(args.inputs[0]), tol)
        p = mc.matrix_from_json(_load_json(args.inputs[1]))
        return {'dimension_vector': list(kt.dimension_vector(p, A, tol)),
                'tolerance': tol.base_eps}
    if args.query == 'hom':
        if len(args.inputs) != 1:
            raise InputError('`k0 hom` needs one homomorphism file')
        obj = _load_json(args.inputs[0])
        try:
            phi = kt.block_homomorphism(obj['source_sizes'],
                                        obj['target_sizes'],
                                        obj['multiplicities'],
                                        seed=run_param['seed'])
        except KeyError as err:
            raise InputError('missing field ' + str(err)) from err
        m = kt.k0_of_hom(phi, seed=run_param['seed'], tol=tol)
        return {'multiplicity_matrix': m.tolist(), 'tolerance': tol.base_eps}
    d = _load_diagram(args.inputs[0], run_param['horizon']) \
        if args.inputs else None
    if args.query == 'equal':
        if len(args.inputs) != 3:
            raise InputError('`k0 equal` needs a diagram and two classes')
        x, y = _parse_class(args.inputs[1]), _parse_class(args.inputs[2])
        verdict = kt.bratteli_k0_equal(d, x, y, run_param['horizon'])
        return {'verdict': verdict, 'horizon': run_param['horizon']}
    if len(args.inputs) != 2:
        raise InputError('`k0 positive` needs a diagram and a class')
    verdict = kt.bratteli_k0_positive(d, _parse_class(args.inputs[1]),
                                      run_param['horizon'])
    return {'verdict': verdict, 'horizon': run_param['horizon']}


def run_bratteli(args, run_param):
    horizon = run_param['horizon']
    d = _load_diagram(args.diagram, horizon)
    depth = horizon if d.depth is None else min(horizon, d.depth)
    out = {'name': d.name, 'stationary': d.stationary, 'unital': d.unital,
           'levels': [d.block_count(n) for n in range(1, depth + 1)],
           'horizon': horizon}
    classes = [_parse_class(c) for c in args.classes]
    rows = []
    for x in classes:
        row = {'class': x.to_json(),
               'image': kt.propagate(d, x, max(depth, x.level)).to_json(),
               'positive': kt.bratteli_k0_positive(d, x, horizon)}
        if d.name == 'CAR':
            row['value'] = kt.car_value(x)
        rows.append(row)
    out['classes'] = rows
    out['equal'] = [[kt.bratteli_k0_equal(d, x, y, horizon)
                     for y in classes] for x in classes]
    return out


def run_morita(args, run_param):
    tol = run_param['tol']
    G = _load_group(args.group)
    bm = morita.build_bimodule(G, _parse_indices(args.subgroup), tol)
    out = morita.bimodule_summary(bm)
    out['axioms'] = morita.verify_axioms(bm, seed=run_param['seed'],
                                         tol=tol)
    out['blocks'] = morita.block_correspondence(bm, seed=run_param['seed'],
                                                tol=tol)
    return out


COMMANDS = {'spectrum': run_spectrum, 'funcalc': run_funcalc,
            'decompose': run_decompose, 'gns': run_gns,
            'groupalg': run_groupalg, 'dual': run_dual,
            'crossed': run_crossed, 'svn': run_svn, 'k0': run_k0,
            'bratteli': run_bratteli, 'morita': run_morita}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['text', 'json'],
                        default=argparse.SUPPRESS, help='Report format.')
    common.add_argument('--tol', type=float, default=argparse.SUPPRESS,
                        help='Base tolerance (default 1e-10).')
    common.add_argument('--seed', type=int, default=argparse.SUPPRESS,
                        help='Seed of all random draws (default 0 or $'
                        + SEED_VARIABLE + ').')
    common.add_argument('--horizon', type=int, default=argparse.SUPPRESS,
                        help='Levels examined by Bratteli queries.')
    common.add_argument('-v', '--verbose', action='count',
                        default=argparse.SUPPRESS,
                        help='More log output, repeat for debug.')

    parser = argparse.ArgumentParser(
        prog='cstartools', parents=[common],
        description='Finite-dimensional C*-algebra computations.')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('spectrum', parents=[common],
                       help='Eigenvalues with residuals.')
    p.add_argument('matrix')
    p = sub.add_parser('funcalc', parents=[common],
                       help='Continuous functional calculus.')
    p.add_argument('matrix')
    p.add_argument('--fn', required=True)
    p.add_argument('--t', type=float, default=1.)
    p.add_argument('--interval', type=float, nargs=2, default=None)
    p = sub.add_parser('decompose', parents=[common],
                       help='Block decomposition of an algebra or of a'
                       + ' group algebra.')
    p.add_argument('input')
    p = sub.add_parser('gns', parents=[common], help='GNS construction.')
    p.add_argument('algebra')
    p.add_argument('state')
    for name, text in [('groupalg', 'Group algebra decomposition.'),
                       ('dual', 'Dual group of an abelian group.'),
                       ('svn', 'Discrete Stone-von Neumann check.')]:
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument('group')
    p = sub.add_parser('crossed', parents=[common], help='Crossed product.')
    p.add_argument('system')
    p = sub.add_parser('k0', parents=[common], help='K_0 computations.')
    p.add_argument('query', choices=['class', 'hom', 'equal', 'positive'])
    p.add_argument('inputs', nargs='*')
    p = sub.add_parser('bratteli', parents=[common],
                       help='Queries on an AF inductive limit.')
    p.add_argument('diagram')
    p.add_argument('classes', nargs='*')
    p = sub.add_parser('morita', parents=[common],
                       help='Discrete imprimitivity bimodule.')
    p.add_argument('group')
    p.add_argument('--subgroup', required=True)
    return parser


def _plain(obj):
    ''' JSON-ready copy of a report, floats rounded to 12 significant
    digits.
    '''
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float('%.12g' % float(obj))
        return 0. if v == 0. else v
    if isinstance(obj, (complex, np.complexfloating)):
        return [_plain(obj.real), _plain(obj.imag)]
    return obj


def to_json(report):
    return json.dumps(_plain(report), sort_keys=True, indent=2)


def to_text(report, indent=0):
    lines = []
    pad = '  ' * indent
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            lines.append(pad + str(key) + ':')
            lines.append(to_text(value, indent + 1))
        else:
            lines.append(pad + str(key) + ': '
                         + json.dumps(_plain(value), sort_keys=True))
    return '\n'.join(lines)


def run(args, run_param):
    ''' Dispatch a parsed command.

    Returns
    -------
    report : dict
    '''
    logger.info('running `%s`', args.command)
    return COMMANDS[args.command](args, run_param)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    run_param = default_run_param()
    for key in ['format', 'seed', 'horizon']:
        if hasattr(args, key):
            run_param[key] = getattr(args, key)
    verbose = getattr(args, 'verbose', 0)
    level = logging.WARNING if not verbose else \
        logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr)
    try:
        if hasattr(args, 'tol'):
            run_param['tol'] = mc.Tolerance(args.tol)
        report = run(args, run_param)
    except InputError as err:
        print('error: ' + str(err), file=sys.stderr)
        return 2
    except mc.OperationError as err:
        print(type(err).__name__ + ': ' + str(err), file=sys.stderr)
        return 1
    if run_param['format'] == 'json':
        print(to_json(report))
    else:
        print(to_text(report))
    return 0


if __name__ == '__main__':
    sys.exit(main())
