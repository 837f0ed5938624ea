#! /usr/bin/env python
"""Command-line entry point dispatching to the advlin components"""

import argparse
import csv
import io
import logging
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy

from advlin import exceptions
from advlin.ensembles import EnsembleSpec, LimitLaw, SeedSpec
from advlin.graphs import Graph
from advlin.partitions import Category, ColoredWord
from advlin.polyroots import Poly
from advlin.spectra import KINDS
from advlin.structured import HADAMARD_KINDS, CirculantSymbol, SignMatrix
from advlin.utils import jsonio
from advlin.workbench import Workbench


SEED_VARIABLE = 'ADVLIN_SEED'
TABLE_HEADER = ('k', 'empirical', 'limit', 'abs_err', 'stderr')
EXACT_NOTE = 'ignored (exact)'
LAW_ALIASES = {'mp': 'marchenko_pastur', 'normal': 'gauss', 'wigner': 'semicircle'}
GROUP_ALIASES = {'SN': 'S', 'HN': 'H', 'KN': 'K'}

logger = logging.getLogger('advlin')


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs, resolved from argv and the environment"""
    command: str
    action: str
    options: dict
    fmt: str = 'json'
    seed: int = 0
    tol: float = 1e-10
    workers: int = 1
    budgets: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.tol > 0:
            raise exceptions.InvalidParameterException(f"tol must be positive, got {self.tol}.")
        if any(v <= 0 for v in self.budgets.values()):
            raise exceptions.InvalidParameterException(f"Budgets must be positive, got {self.budgets}.")

    def option(self, name, default=None):
        value = self.options.get(name)
        return default if value is None else value


@dataclass(frozen=True)
class Outcome:
    payload: object
    rows: list = None
    exact: bool = False
    stochastic: bool = False


def _number(text):
    """'3' and '-2/5' stay exact, anything else is a float or complex"""
    try:
        value = Fraction(text)
    except ZeroDivisionError as ex:
        raise exceptions.MalformedInputException(f"Bad number {text!r}: {ex}") from ex
    except ValueError:
        try:
            return complex(text.replace('i', 'j'))
        except ValueError as ex:
            raise exceptions.MalformedInputException(f"Bad number {text!r}.") from ex
    return value.numerator if value.denominator == 1 else value


def _number_list(text, count=None):
    values = [_number(v) for v in text.split(',') if v.strip()]
    if count is not None and len(values) != count:
        raise exceptions.MalformedInputException(f"Expected {count} comma separated numbers, got {text!r}.")
    return values


def _int_range(text):
    """'1..6' or '1,3,5'"""
    try:
        if '..' in text:
            low, high = text.split('..')
            return list(range(int(low), int(high) + 1))
        return [int(v) for v in text.split(',')]
    except ValueError as ex:
        raise exceptions.MalformedInputException(f"Range must look like 1..6 or 1,3,5, got {text!r}.") from ex


def _grid(text):
    """'a:b:n', n evenly spaced points from a to b"""
    try:
        low, high, count = text.split(':')
        return [float(v) for v in numpy.linspace(float(low), float(high), int(count))]
    except ValueError as ex:
        raise exceptions.MalformedInputException(f"Grid must look like a:b:n, got {text!r}.") from ex


def _load_matrix(config):
    return jsonio.mat_from_json(jsonio.load(config.option('input')))


def _load_poly(config, name='input'):
    coeffs = config.option('coeffs')
    if coeffs and name == 'input':
        return Poly(tuple(_number_list(coeffs)))
    return jsonio.poly_from_json(jsonio.load(config.option(name)))


def _load_graph(config):
    complete = config.option('complete')
    if complete:
        return Graph.complete(int(complete))
    return jsonio.graph_from_json(jsonio.load(config.option('input')))


def _poly(workbench, config):
    poly = workbench.poly
    action = config.action
    if action == 'solve3':
        p, q = _number_list(config.option('params'), 2)
        return Outcome(poly.solve_cubic(p, q))
    if action == 'solve4':
        p, q, r = _number_list(config.option('params'), 3)
        return Outcome(poly.solve_quartic(p, q, r))
    p = _load_poly(config)
    if action == 'roots':
        return Outcome(poly.solve_general(p) if p.degree <= 4 else poly.roots(p))
    if action == 'resultant':
        return Outcome(poly.resultant(p, _load_poly(config, 'other')), exact=p.exact)
    if action == 'discriminant':
        return Outcome(poly.discriminant(p), exact=p.exact)
    rc = poly.classify_real_roots(p, config.tol)
    return Outcome({'degree': rc.degree, 'discriminant': rc.discriminant, 'n_real': rc.n_real,
                    'n_complex': rc.n_complex, 'label': rc.label})


def _matrix(workbench, config):
    m = _load_matrix(config)
    spectra = workbench.spectra
    action = config.action
    tol = config.tol
    if action == 'det':
        return Outcome(workbench.matrix.det(m), exact=m.exact)
    if action == 'eigen':
        decomp = spectra.eigen(m, config.option('kind', 'auto'), tol)
        return Outcome({'kind': decomp.kind, 'values': decomp.values, 'passage': decomp.passage})
    if action == 'law':
        law = spectra.matrix_law(m, tol)
        return Outcome({'atoms': [[loc, w] for loc, w in law.atoms]})
    if action == 'expm':
        return Outcome(spectra.expm(m))
    if action == 'polar':
        decomp = spectra.polar(m, tol)
        return Outcome({'isometry': decomp.isometry, 'modulus': decomp.modulus})
    if action == 'svd':
        decomp = spectra.svd(m)
        return Outcome({'left': decomp.left, 'singulars': decomp.singulars, 'right': decomp.right})
    if action == 'inertia':
        inertia = spectra.inertia(m, tol)
        return Outcome({'n_plus': inertia.n_plus, 'n_minus': inertia.n_minus, 'n_zero': inertia.n_zero})
    if action == 'positivity':
        return Outcome(spectra.positivity_class(m, tol))
    if action == 'jordan':
        jf = workbench.jordan.jordan_form(m, config.option('cluster_tol'))
        return Outcome({'blocks': [[v, s] for v, s in jf.blocks], 'passage': jf.passage}, exact=m.exact)
    return _factor(workbench, m, config.option('kind', 'plu'))


def _factor(workbench, m, kind):
    factor = workbench.factor
    if kind == 'plu':
        d = factor.plu(m)
        return Outcome({'perm': d.perm, 'lower': d.lower, 'upper': d.upper}, exact=m.exact)
    if kind == 'ldu':
        lower, diagonal, upper = factor.ldu(m)
        return Outcome({'lower': lower, 'diagonal': diagonal, 'upper': upper}, exact=m.exact)
    if kind == 'qr':
        d = factor.qr(m)
        return Outcome({'q': d.q, 'r': d.r})
    d = factor.schur(m)
    return Outcome({'q': d.q, 't': d.t})


def _special(workbench, config):
    structured = workbench.structured
    action = config.action
    if action == 'fourier':
        return Outcome(structured.fourier_matrix(int(config.option('n'))))
    if action == 'circulant':
        xi = _field(jsonio.load(config.option('symbol')), 'xi')
        sym = CirculantSymbol(tuple(jsonio.decode_scalar(v) for v in xi))
        q, residual = structured.circulant_diagonalize(sym)
        return Outcome({'matrix': structured.circulant(sym), 'eigenvalues': q, 'residual': residual})
    if action == 'hadamard':
        kind = config.option('kind')
        if kind == 'williamson':
            symbols = jsonio.load(config.option('symbols') or '')
            args = [CirculantSymbol(tuple(_field(symbols, name))) for name in 'ABCD']
        elif config.option('param') is None:
            raise exceptions.InvalidParameterException(f"--param is required for {kind}.")
        else:
            args = [int(config.option('param'))]
        h = structured.hadamard_construct(kind, *args)
        return Outcome({'size': h.n, 'rows': h.to_text().splitlines(),
                        'is_hadamard': structured.is_hadamard(h.to_mat())}, exact=True)
    if action == 'chc-search':
        found = structured.circulant_hadamard_search(int(config.option('n')),
                                                     exhaustive=config.option('exhaustive', False))
        return Outcome([list(v) for v in found], exact=True)
    if action == 'equivalent':
        a = SignMatrix.from_text(_read_text(config.option('input')))
        b = SignMatrix.from_text(_read_text(config.option('other')))
        return Outcome(structured.hadamard_equivalent(a, b), exact=True)
    report = structured.bistochastic_check(_load_matrix(config), config.tol)
    return Outcome({'row_sums': report.row_sums, 'col_sums': report.col_sums,
                    'is_bistochastic': report.is_bistochastic, 'common_sum': report.common_sum,
                    'unitary_consistent': report.unitary_consistent})


def _field(obj, key):
    try:
        return obj[key]
    except (KeyError, TypeError) as ex:
        raise exceptions.MalformedInputException(f"Input is missing the {key!r} field.") from ex


def _read_text(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return handle.read()
    except OSError as ex:
        raise exceptions.MalformedInputException(f"Can't read {path}: {ex}") from ex


def _graph(workbench, config):
    graphs = workbench.graphs
    g = _load_graph(config)
    action = config.action
    if action == 'trees':
        return Outcome(graphs.spanning_tree_count(g), exact=True)
    if action == 'laplacian':
        return Outcome(graphs.laplacian(g), exact=True)
    if action == 'loops':
        base, k = int(config.option('base', 1)), int(config.option('k', 2))
        law = graphs.loop_measure(g, base)
        return Outcome({'count': graphs.loop_count(g, base, k),
                        'measure': [[loc, w] for loc, w in law.atoms]})
    return Outcome({'adjacency': graphs.spectrum(g), 'laplacian': graphs.laplacian_spectrum(g)})


def _category(config):
    return Category.parse(config.option('cat', 'P'))


def _wg(workbench, config):
    partitions = workbench.partitions
    action = config.action
    if action == 'catalan':
        return Outcome(partitions.catalan(int(config.option('k'))), exact=True)
    cat = _category(config)
    k = config.option('word') or int(config.option('k'))
    if action == 'asymptotic':
        t = config.option('t')
        t = None if t is None else _number(t)
        moment = partitions.asymptotic_moment(cat, k, t)
        return Outcome(moment, exact=not isinstance(t, complex))
    n = int(config.option('N'))
    if action == 'gram':
        return Outcome({'partitions': partitions.enumerate(k, cat), 'gram': partitions.gram(k, n, cat)},
                       exact=True)
    if action == 'weingarten':
        return Outcome({'partitions': partitions.enumerate(k, cat),
                        'weingarten': partitions.weingarten(k, n, cat)}, exact=True)
    s = int(config.option('trunc', n))
    return Outcome(partitions.truncated_char_moment(cat, k, n, s), exact=True)


def _law(config):
    tag = config.option('law', 'semicircle')
    tag = LAW_ALIASES.get(tag, tag)
    s = config.option('s')
    try:
        level = None if s in (None, 'inf') else int(s)
    except ValueError as ex:
        raise exceptions.MalformedInputException(f"--s must be an integer or inf, got {s!r}.") from ex
    return LimitLaw(tag, float(config.option('t', 1.0)), level)


def _spec(config):
    m = config.option('M')
    return EnsembleSpec(config.option('kind', 'wigner'), int(config.option('N', 200)),
                        float(config.option('t', 1.0)), None if m is None else int(m))


def _rmt(workbench, config):
    ensembles = workbench.ensembles
    seed = SeedSpec(config.seed)
    count = int(config.option('count', 20))
    action = config.action
    if action == 'chars':
        group = config.option('group', 'S')
        group = GROUP_ALIASES.get(group, group)
        s = config.option('s')
        law = ensembles.sample_reflection_char(group, int(config.option('N', 200)),
                                               float(config.option('t', 1.0)), seed, count,
                                               None if s is None else int(s))
        ks = _int_range(config.option('k', '1..4'))
        rows = [{'k': k, 'empirical': law.moment(k), 'stderr': law.stderr(k)} for k in ks]
        return Outcome({'count': law.count, 'moments': rows}, stochastic=True)
    spec = _spec(config)
    samples = list(ensembles.sample_ensemble(spec, seed, count))
    if action == 'sample':
        summary = {'kind': spec.kind, 'N': spec.n, 'count': len(samples),
                   'samples': samples if config.option('full') else samples[:1]}
        if spec.kind == 'wishart':
            summary['mass_near_zero'] = ensembles.spectral_mass_near_zero(samples)
        return Outcome(summary, stochastic=True)
    labels, words = _words(config)
    table = ensembles.empirical_colored_moments(samples, words, spec)
    if action == 'moments':
        rows = [{'k': label, 'empirical': table[str(word)].mean, 'stderr': table[str(word)].stderr()}
                for label, word in zip(labels, words)]
        return Outcome({'kind': spec.kind, 'N': spec.n, 'count': len(samples), 'moments': rows},
                       rows=rows, stochastic=True)
    tag, t, limit = _limit(workbench, config, spec)
    rows = []
    for label, word in zip(labels, words):
        estimate = table[str(word)]
        value = estimate.mean
        expected = limit(word)
        rows.append({'k': label, 'empirical': value, 'limit': expected,
                     'abs_err': abs(value - complex(expected)), 'stderr': estimate.stderr()})
    return Outcome({'law': tag, 't': t, 'moments': rows}, rows=rows, stochastic=True)


def _words(config):
    """Colored words from repeated --word, else white words of the --k lengths"""
    given = config.option('word')
    if given:
        words = [ColoredWord(w) for w in given]
        return [str(w) for w in words], words
    ks = _int_range(config.option('k', '1..6'))
    return ks, [ColoredWord.white(k) for k in ks]


def _limit(workbench, config, spec):
    """Name, parameter and word -> limit moment of the law a model is compared to.

       Without --law: semicircle for wigner, Marchenko-Pastur with parameter
       M/N for wishart, and the circular law (noncrossing matching pairings)
       for gaussian.
    """
    if config.option('law'):
        law = _law(config)
        return law.tag, law.t, lambda word: workbench.ensembles.limit_moment(law, word)
    if spec.kind == 'gaussian':
        circular = Category('MatchingNC2')
        return 'circular', spec.t, lambda word: workbench.partitions.asymptotic_moment(circular, word, spec.t)
    law = LimitLaw('marchenko_pastur', spec.m / spec.n) if spec.kind == 'wishart' else LimitLaw('semicircle', spec.t)
    return law.tag, law.t, lambda word: workbench.ensembles.limit_moment(law, word)


def _laws(workbench, config):
    ensembles = workbench.ensembles
    law = _law(config)
    if config.action == 'moment':
        k = config.option('word') or int(config.option('k', 2))
        return Outcome({'law': law.tag, 't': law.t, 'k': str(k), 'moment': ensembles.limit_moment(law, k)})
    points = _grid(config.option('grid', '-2:2:9'))
    values = [{'x': x, 'value': ensembles.law_eval(law, x)} for x in points]
    return Outcome({'law': law.tag, 't': law.t, 'values': values},
                   rows=[{'x': v['x'], 'value': v['value']} for v in values])


HANDLERS = {
    'poly': _poly,
    'matrix': _matrix,
    'special': _special,
    'graph': _graph,
    'wg': _wg,
    'rmt': _rmt,
    'laws': _laws,
}


def build_parser():
    parser = argparse.ArgumentParser(prog='advlin', description="Advanced linear algebra toolkit")
    parser.add_argument('--verbose', action='store_true', help="Log debug messages to stderr")
    parser.add_argument('--format', dest='fmt', choices=('json', 'csv'), default='json')
    parser.add_argument('--seed', type=int, default=None,
                        help=f"Master seed, falls back to ${SEED_VARIABLE} then 0")
    parser.add_argument('--tol', type=float, default=1e-10)
    parser.add_argument('--workers', type=int, default=1)
    commands = parser.add_subparsers(dest='command', required=True)

    poly = commands.add_parser('poly').add_subparsers(dest='action', required=True)
    for name in ('roots', 'discriminant', 'classify', 'resultant'):
        sub = poly.add_parser(name)
        sub.add_argument('input', nargs='?', help="Polynomial JSON file")
        sub.add_argument('--coeffs', help="Ascending coefficients, comma separated")
        if name == 'resultant':
            sub.add_argument('other', help="Second polynomial JSON file")
    for name, meaning in (('solve3', "p,q of x^3+3px+2q"), ('solve4', "p,q,r of x^4+6px^2+4qx+3r")):
        poly.add_parser(name).add_argument('params', help=meaning)

    matrix = commands.add_parser('matrix').add_subparsers(dest='action', required=True)
    for name in ('det', 'eigen', 'law', 'expm', 'polar', 'svd', 'inertia', 'positivity',
                 'jordan', 'factor'):
        sub = matrix.add_parser(name)
        sub.add_argument('input', help="Matrix JSON file")
        if name == 'eigen':
            sub.add_argument('--kind', choices=KINDS, default='auto')
        if name == 'factor':
            sub.add_argument('--kind', choices=('plu', 'ldu', 'qr', 'schur'), default='plu')
        if name == 'jordan':
            sub.add_argument('--cluster-tol', dest='cluster_tol', type=float)

    special = commands.add_parser('special').add_subparsers(dest='action', required=True)
    special.add_parser('fourier').add_argument('n', type=int)
    special.add_parser('circulant').add_argument('--symbol', required=True, help='JSON {"xi": [...]}')
    hadamard = special.add_parser('hadamard')
    hadamard.add_argument('--kind', choices=HADAMARD_KINDS, required=True)
    hadamard.add_argument('--param', type=int, help="k for walsh, q for paley")
    hadamard.add_argument('--symbols', help='JSON {"A": [...], "B": ..., "C": ..., "D": ...}')
    search = special.add_parser('chc-search')
    search.add_argument('n', type=int)
    search.add_argument('--exhaustive', action='store_true')
    special.add_parser('bistochastic').add_argument('input')
    equivalent = special.add_parser('equivalent')
    equivalent.add_argument('input', help="Sign matrix as rows of +/-")
    equivalent.add_argument('other')

    graph = commands.add_parser('graph').add_subparsers(dest='action', required=True)
    for name in ('trees', 'laplacian', 'loops', 'spectrum'):
        sub = graph.add_parser(name)
        sub.add_argument('input', nargs='?', help="Edge-list JSON file")
        sub.add_argument('--complete', type=int, help="Use the complete graph K_N instead")
        if name == 'loops':
            sub.add_argument('--base', type=int, default=1)
            sub.add_argument('--k', type=int, default=2)

    wg = commands.add_parser('wg').add_subparsers(dest='action', required=True)
    wg.add_parser('catalan').add_argument('k', type=int)
    for name in ('gram', 'weingarten', 'moment', 'asymptotic'):
        sub = wg.add_parser(name)
        sub.add_argument('--cat', default='P', help="Category (P, NC2, P_s:3, ...) or group (S, O, H, U+)")
        sub.add_argument('--k', type=int, default=2)
        sub.add_argument('--word', help="Colored word of o and *, overrides --k")
        if name == 'asymptotic':
            sub.add_argument('--t')
        else:
            sub.add_argument('--N', type=int, required=True)
        if name == 'moment':
            sub.add_argument('--trunc', type=int)

    rmt = commands.add_parser('rmt').add_subparsers(dest='action', required=True)
    for name in ('sample', 'moments', 'compare', 'chars'):
        sub = rmt.add_parser(name)
        sub.add_argument('--N', type=int, default=200)
        sub.add_argument('--t', type=float, default=1.0)
        sub.add_argument('--count', type=int, default=20)
        if name == 'chars':
            sub.add_argument('--group', default='S', help="S, H, Hs or K")
            sub.add_argument('--s', type=int)
            sub.add_argument('--k', default='1..4')
            continue
        sub.add_argument('--kind', choices=('gaussian', 'wigner', 'wishart'), default='wigner')
        sub.add_argument('--M', type=int)
        if name == 'sample':
            sub.add_argument('--full', action='store_true', help="Emit every sample")
        else:
            sub.add_argument('--k', default='1..6')
            sub.add_argument('--word', action='append',
                             help="Colored word of o and *, repeatable, overrides --k")
            sub.add_argument('--law')
            sub.add_argument('--s')

    laws = commands.add_parser('laws').add_subparsers(dest='action', required=True)
    for name in ('eval', 'moment'):
        sub = laws.add_parser(name)
        sub.add_argument('--law', required=True)
        sub.add_argument('--t', type=float, default=1.0)
        sub.add_argument('--s')
        if name == 'eval':
            sub.add_argument('--grid', default='-2:2:9')
        else:
            sub.add_argument('--k', type=int, default=2)
            sub.add_argument('--word')
    return parser


def config_from_args(args, environ=None):
    """Build the RunConfig, taking the seed from --seed, then $ADVLIN_SEED, then 0"""
    environ = os.environ if environ is None else environ
    seed = args.seed
    if seed is None:
        try:
            seed = int(environ.get(SEED_VARIABLE, 0))
        except ValueError as ex:
            raise exceptions.MalformedInputException(f"${SEED_VARIABLE} isn't an integer.") from ex
    skip = {'verbose', 'fmt', 'seed', 'tol', 'workers', 'command', 'action'}
    options = {k: v for k, v in vars(args).items() if k not in skip}
    return RunConfig(command=args.command, action=args.action, options=options, fmt=args.fmt,
                     seed=seed, tol=args.tol, workers=args.workers)


def render(outcome, config):
    if config.fmt == 'csv':
        if outcome.rows is None:
            raise exceptions.InvalidParameterException(
                f"{config.command} {config.action} has no tabular output; use --format json.")
        buffer = io.StringIO()
        header = list(outcome.rows[0]) if outcome.rows else list(TABLE_HEADER)
        writer = csv.DictWriter(buffer, fieldnames=header, lineterminator='\n')
        writer.writeheader()
        for row in outcome.rows:
            writer.writerow({k: jsonio.to_jsonable(v) for k, v in row.items()})
        return buffer.getvalue().rstrip('\n')
    meta = {'seed': config.seed if outcome.stochastic else None,
            'tol': EXACT_NOTE if outcome.exact else config.tol}
    return jsonio.dumps({'result': outcome.payload, 'meta': meta})


def run(config, workbench=None):
    """Execute one command

       :param RunConfig config: The resolved invocation
       :param workbench.Workbench workbench: Reuse a workbench Default(None)
       :return tuple: (exit status, text to print)
    """
    try:
        if workbench is None:
            workbench = Workbench(tol=config.tol, seed=config.seed, workers=config.workers,
                                  budgets=config.budgets or None, logger=logger)
        outcome = HANDLERS[config.command](workbench, config)
        return 0, render(outcome, config)
    except exceptions.AdvlinException as ex:
        logger.debug(f"{config.command} {config.action} failed", exc_info=True)
        error = {'error': type(ex).__name__, 'message': str(ex),
                 'context': {'command': config.command, 'action': config.action}}
        return 1, jsonio.dumps(error)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')
    try:
        config = config_from_args(args)
    except exceptions.AdvlinException as ex:
        print(jsonio.dumps({'error': type(ex).__name__, 'message': str(ex), 'context': {}}))
        return 1
    status, text = run(config)
    print(text)
    return status


if __name__ == '__main__':
    sys.exit(main())
