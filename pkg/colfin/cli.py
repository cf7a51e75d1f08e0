"""
Exact algebra on column-finite infinite matrices.

Usage:
  colfin [options] classify <expr>
  colfin [options] window <expr> <m> [<n>]
  colfin [options] bracket <expr> <other>
  colfin [options] solve-shift <expr> [--literal]
  colfin [options] witness <kind> <expr> [<arg>...]
  colfin [options] derive-decompose <oracle> <n>
  colfin [options] reindex <direction> <expr>
  colfin [options] lattice [<ideal> <other>]
  colfin [options] normalize <expr>
  colfin -h | --help
  colfin --version

Witness kinds:
  eij-diag <expr> <i> <j>       E_ij from a diagonal matrix with two distinct entries
  eij-offdiag <expr> <i> <j>    E_ij from a matrix with a nonzero off-diagonal entry
  slfr <expr> <target>          express a finite-row trace-zero target
  extract-diag <expr>           a non-scalar diagonal in the generated ideal
  superdiag <expr>              a superdiagonal band from a diagonal matrix
  enlarge <set>                 a band over a set that is far from its complement
  complete <set>                the full shift from such a band
  perfect <expr>                X with [X, shift(1)] = expr
  center <expr>                 a unit that does not commute with expr
  pipeline <expr>               the whole chain from expr to shift(1)

Options:
  -h --help               Show this screen.
  --version               Show the version.
  -f --field=<field>      The coefficient field: q, fp:<p> or z [default: q].
  --format=<format>       Output format, text or json [default: text].
  -w --window-check=<size>  Side length of verification windows [default: 60].
  --literal               Keep the uncorrected sign on the first column.
  -L --logging            Print all the logs to stderr.
"""
import json
import logging
import sys
from typing import List, Tuple

from docopt import DocoptExit, docopt

import colfin
from colfin import ideals, serialize, witnesses
from colfin.derivations import DerivationOracle, builtin_oracle, decompose
from colfin.field import load_field
from colfin.grammar import load_grammar
from colfin.matrix import first_difference
from colfin.normalizer import NotNormalizable, normalize
from colfin.reindex import reindex_to_N, reindex_to_Z
from colfin.schema import OUTPUT_SCHEMAS
from colfin.tree import Bracket, NodeOrLeaf, Shift, Zero
from colfin.utils import ColfinError

LOG = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE = 2

WITNESS_KINDS = {
    'eij-diag': 2, 'eij-offdiag': 2, 'slfr': 1, 'extract-diag': 0, 'superdiag': 0,
    'enlarge': 0, 'complete': 0, 'perfect': 0, 'center': 0, 'pipeline': 0,
}
"""
Witness kinds and the number of arguments they take after the expression.
"""


class UsageError(Exception):
    pass


def _positive(text, name) -> int:
    try:
        value = int(text)
    except (TypeError, ValueError):
        raise UsageError('%s must be an integer, not %r' % (name, text)) from None
    if value < 1:
        raise UsageError('%s must be positive' % name)
    return value


class _Command:
    """
    The state of one invocation: parsed arguments, field and output format.
    """
    def __init__(self, arguments):
        self.arguments = arguments
        try:
            self.field = load_field(arguments['--field'])
        except (ValueError, ColfinError) as error:
            raise UsageError(str(error)) from None
        self.json = arguments['--format'] == 'json'
        if arguments['--format'] not in ('text', 'json'):
            raise UsageError('--format must be text or json')
        self.window = _positive(arguments['--window-check'], '--window-check')

    def parse(self, text: str, side: str = 'n') -> NodeOrLeaf:
        return load_grammar(self.field, side).parse(text).expr

    def render(self, name: str, data: dict, text: str) -> str:
        if not self.json:
            return text
        data = dict(data, field=self.field.field_id)
        serialize.validate(data, OUTPUT_SCHEMAS[name])
        return json.dumps(data, indent=2)

    def verified(self, verdict: witnesses.ChainVerdict) -> str:
        return 'verified at %sx%s: %s' % (self.window, self.window, verdict)

    def run(self) -> str:
        arguments = self.arguments
        if self.field.field_id == 'z' and not arguments['derive-decompose']:
            raise UsageError('--field z is only supported by derive-decompose')
        for name in ('classify', 'window', 'bracket', 'solve-shift', 'witness',
                     'derive-decompose', 'reindex', 'lattice', 'normalize'):
            if arguments[name]:
                return getattr(self, 'do_' + name.replace('-', '_'))()
        raise UsageError('no command given')

    def do_classify(self):
        a = self.parse(self.arguments['<expr>'])
        ideal = ideals.classify(a)
        return self.render('classify', {'expr': a.get_code(), 'ideal': str(ideal)}, str(ideal))

    def do_window(self):
        a = self.parse(self.arguments['<expr>'])
        m = _positive(self.arguments['<m>'], '<m>')
        n = m if self.arguments['<n>'] is None else _positive(self.arguments['<n>'], '<n>')
        rows = a.window(m, n)
        text = '\n'.join(' '.join(str(v) for v in row) for row in rows)
        data = {'rows': m, 'cols': n, 'entries': [[str(v) for v in row] for row in rows]}
        return self.render('window', data, text)

    def do_bracket(self):
        result = Bracket(self.parse(self.arguments['<expr>']),
                         self.parse(self.arguments['<other>']))
        try:
            result = normalize(result).to_expr()
        except NotNormalizable:
            LOG.debug('keeping the unnormalized bracket')
        code = result.get_code()
        return self.render('bracket', {'result': serialize.node_to_json(result),
                                       'code': code}, code)

    def _window_verdict(self, claimed, computed) -> witnesses.ChainVerdict:
        position = first_difference(claimed, computed, self.window)
        if position is None:
            return witnesses.ChainVerdict(True)
        return witnesses.ChainVerdict(False, None, position, 'bracket mismatch',
                                      claimed.entry(*position), computed.entry(*position))

    def do_solve_shift(self):
        a = self.parse(self.arguments['<expr>'])
        x = witnesses.solve_shift_bracket(a, corrected=not self.arguments['--literal'])
        verdict = self._window_verdict(a, Bracket(x, Shift(1, field=self.field)))
        code = x.get_code()
        data = {'solution': serialize.node_to_json(x), 'code': code,
                'verdict': serialize.verdict_to_json(verdict)}
        return self.render('solve-shift', data, 'X = %s\n%s' % (code, self.verified(verdict)))

    def do_witness(self):
        kind = self.arguments['<kind>']
        extra = self.arguments['<arg>']
        if kind not in WITNESS_KINDS:
            raise UsageError('unknown witness kind %r, expected one of %s'
                             % (kind, ', '.join(WITNESS_KINDS)))
        if len(extra) != WITNESS_KINDS[kind]:
            raise UsageError('witness %s takes %s argument(s) after the expression'
                             % (kind, WITNESS_KINDS[kind]))
        data = {'kind': kind}
        lines = []
        source = self.arguments['<expr>']
        chain = None
        if kind in ('enlarge', 'complete'):
            h = load_grammar(self.field).parse_set(source)
            if kind == 'enlarge':
                g, chain = witnesses.enlarge_set(h, self.field)
                data['set'] = serialize.set_to_json(g)
                lines.append('G = %s' % g.get_code())
            else:
                chain = witnesses.complete_superdiag(h, self.field)
            verdict = witnesses.verify_chain(chain, self.window)
        else:
            a = self.parse(source)
            if kind == 'eij-diag':
                i, j = (_positive(v, '<i>') for v in extra)
                chain = witnesses.eij_from_diag(a, i, j)
            elif kind == 'eij-offdiag':
                i, j = (_positive(v, '<i>') for v in extra)
                chain = witnesses.eij_from_offdiag(a, i, j)
            elif kind == 'slfr':
                chain = witnesses.generate_slfr(a, self.parse(extra[0]))
            elif kind == 'extract-diag':
                d, chain = witnesses.extract_diag(a)
                data['result'] = serialize.node_to_json(d)
                lines.append('D = %s' % d.get_code())
            elif kind == 'superdiag':
                h, chain = witnesses.superdiag_from_diag(a)
                data['set'] = serialize.set_to_json(h)
                lines.append('H = %s' % h.get_code())
            elif kind == 'pipeline':
                certificate = witnesses.generate_gl_cf(a)
                chain = certificate.chain
                data['result'] = serialize.node_to_json(certificate.diagonal)
                data['set'] = serialize.set_to_json(certificate.enlarged)
                lines.append('D = %s' % certificate.diagonal.get_code())
                lines.append('H = %s' % certificate.disagreement.get_code())
                lines.append('G = %s' % certificate.enlarged.get_code())
            if chain is not None:
                verdict = witnesses.verify_chain(chain, self.window)
            elif kind == 'perfect':
                x, s = witnesses.perfect_witness(a)
                verdict = self._window_verdict(a, Bracket(x, s))
                data['result'] = serialize.node_to_json(x)
                lines.append('X = %s' % x.get_code())
                lines.append('S = %s' % s.get_code())
            else:
                verdict, line = self._center(a, data)
                lines.append(line)
        if chain is not None:
            data['chain'] = serialize.chain_to_json(chain)
            data['chain'].pop('field')
            lines.insert(0, chain.get_code())
        data['verdict'] = serialize.verdict_to_json(verdict)
        lines.append(self.verified(verdict))
        return self.render('witness', data, '\n'.join(lines))

    def _center(self, a, data) -> Tuple[witnesses.ChainVerdict, str]:
        found = witnesses.center_witness(a)
        if found is witnesses.CENTRAL:
            data['central'] = True
            return witnesses.ChainVerdict(True), str(found)
        data['central'] = False
        data['witness'] = serialize.node_to_json(found)
        commutator = Bracket(a, found)
        position = first_difference(commutator, Zero(self.field), self.window)
        if position is None:
            verdict = witnesses.ChainVerdict(False, reason='the witness commutes on the window')
        else:
            verdict = witnesses.ChainVerdict(True)
        return verdict, 'witness: %s' % found.get_code()

    def _oracle(self, source: str, n: int) -> DerivationOracle:
        try:
            return builtin_oracle(source, self.field)
        except ValueError:
            pass
        try:
            with open(source) as f:
                data = json.load(f)
        except OSError as error:
            raise UsageError('%s is neither a built-in oracle nor a readable file: %s'
                             % (source, error)) from None
        except json.JSONDecodeError as error:
            raise UsageError('%s is not JSON: %s' % (source, error)) from None
        d = serialize.derivation_from_json(data)
        return DerivationOracle.from_derivation(d, locality_bound=n)

    def do_derive_decompose(self):
        n = _positive(self.arguments['<n>'], '<n>')
        oracle = self._oracle(self.arguments['<oracle>'], n)
        result = decompose(oracle, n, self.window)
        report = result.report
        lines = ['B = %s' % result.inner.get_code()]
        lines.append('sigma: %s' % (', '.join('%s: %s' % item
                                              for item in sorted(result.sigma.items()))
                                    or 'zero'))
        lines.append('diagonal: %s' % report.diagonal_extension)
        passed = sum(r.passed for r in report.residuals)
        lines.append('residuals: %s/%s vanish' % (passed, len(report.residuals)))
        for residual in report.residuals:
            if not residual.passed:
                lines.append('  %s: %s at (%s, %s)' % (residual.probe, residual.value,
                                                       *residual.entry))
        return self.render('derive-decompose', serialize.report_to_json(result),
                           '\n'.join(lines))

    def do_reindex(self):
        direction = self.arguments['<direction>']
        if direction == 'to-n':
            result = reindex_to_N(self.parse(self.arguments['<expr>'], side='z'))
        elif direction == 'to-z':
            result = reindex_to_Z(self.parse(self.arguments['<expr>']))
        else:
            raise UsageError('direction must be to-n or to-z, not %r' % direction)
        code = result.get_code()
        data = {'direction': direction, 'result': serialize.node_to_json(result), 'code': code}
        return self.render('reindex', data, code)

    def do_lattice(self):
        names = ideals.ideals()
        edges = ideals.hasse_edges()
        data = {'ideals': [str(i) for i in names],
                'edges': [[str(a), str(b)] for a, b in edges]}
        lines = ['ideals: %s' % ', '.join(data['ideals'])]
        lines += ['%s < %s' % (a, b) for a, b in edges]
        if self.arguments['<ideal>'] is not None:
            try:
                a = ideals.IdealName.parse(self.arguments['<ideal>'])
                b = ideals.IdealName.parse(self.arguments['<other>'])
            except ValueError as error:
                raise UsageError(str(error)) from None
            data.update(join=str(ideals.join(a, b)), meet=str(ideals.meet(a, b)),
                        leq=ideals.leq(a, b))
            lines += ['join: %s' % data['join'], 'meet: %s' % data['meet'],
                      'leq: %s' % str(data['leq']).lower()]
        return self.render('lattice', data, '\n'.join(lines))

    def do_normalize(self):
        form = normalize(self.parse(self.arguments['<expr>']))
        code = form.to_expr().get_code()
        data = {
            'alpha': str(form.alpha),
            'rows': [[r, serialize.seq_to_json(seq)] for r, seq in form.fr.items()],
            'tail': [serialize.node_to_json(node) for node in form.tail],
            'trace': str(form.fr_trace),
            'code': code,
        }
        return self.render('normalize', data, '%s\ntrace: %s' % (code, form.fr_trace))


_HANDLER_NAME = 'colfin-cli'


def _setup_logging():
    logger = logging.getLogger('colfin')
    logger.setLevel(logging.DEBUG)
    if any(h.get_name() == _HANDLER_NAME for h in logger.handlers):
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(logging.Formatter('%(name)s %(levelname)s: %(message)s'))
    logger.addHandler(handler)


def run_command(argv: List[str]) -> Tuple[int, str]:
    """
    Runs the command line ``argv`` (without the program name) and returns
    the exit code and the output: 0 on success, 1 for domain errors, 2 for
    usage errors.
    """
    try:
        arguments = docopt(__doc__, argv=argv, help=False)
    except DocoptExit as error:
        return EXIT_USAGE, str(error).strip()
    if arguments['--help']:
        return EXIT_OK, __doc__.strip()
    if arguments['--version']:
        return EXIT_OK, colfin.__version__
    if arguments['--logging']:
        _setup_logging()
    try:
        return EXIT_OK, _Command(arguments).run()
    except UsageError as error:
        return EXIT_USAGE, 'usage error: %s' % error
    except ColfinError as error:
        LOG.debug('command failed', exc_info=True)
        return EXIT_DOMAIN_ERROR, '%s error %s: %s' % (error.module, error.name, error)


def main(argv=None):
    code, output = run_command(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code == EXIT_OK else sys.stderr
    print(output, file=stream)
    return code
