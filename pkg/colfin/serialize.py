"""
Converts expressions, bracket chains, derivations and decomposition reports
to JSON compatible data and back. Everything read is validated against
:mod:`colfin.schema` first; violations raise :class:`SchemaError` carrying a
JSON pointer to the offending value.

>>> from colfin.tree import Basis
>>> to_json(Basis(1, 2))['expr']
{'kind': 'basis', 'i': 1, 'j': 2}
"""
from typing import Dict, Tuple

import jsonschema

from colfin import schema
from colfin.derivations import Decomposition, DerivationVal
from colfin.field import Field, load_field
from colfin.reindex import TwoSidedSeq, TwoSidedSet, ZBasis, ZDiag, ZFiniteLit, ZShift
from colfin.sequences import IndexSet, SeqDesc
from colfin.tree import (
    Basis, Bracket, Diag, FiniteLit, NodeOrLeaf, Pairing, Prod, RowMat, Scale,
    ScalarE, Shift, ShiftSolution, Sum, Zero,
)
from colfin.utils import ColfinError
from colfin.witnesses import BracketChain, ChainStep, ChainVerdict


class SchemaError(ColfinError):
    """
    JSON input that does not match its schema. ``path`` is a JSON pointer.
    """
    module = 'cli'

    def __init__(self, message: str, path: str = ''):
        super().__init__(message)
        self.path = path

    def __str__(self):
        return '%s: %s' % (self.path or '/', self.message)


def _pointer(parts) -> str:
    return ''.join('/' + str(part).replace('~', '~0').replace('/', '~1') for part in parts)


def validate(data, document_schema) -> None:
    try:
        jsonschema.validate(instance=data, schema=document_schema)
    except jsonschema.ValidationError as error:
        raise SchemaError(error.message, _pointer(error.absolute_path)) from None


# Descriptors

def seq_to_json(seq: SeqDesc) -> dict:
    return {'prefix': [str(v) for v in seq.prefix], 'period': [str(v) for v in seq.period]}


def set_to_json(index_set: IndexSet) -> dict:
    return {'prefix': [int(b) for b in index_set.prefix],
            'period': [int(b) for b in index_set.period]}


def _seq(field: Field, data: dict) -> SeqDesc:
    return SeqDesc(field, [field.parse(v) for v in data['prefix']],
                   [field.parse(v) for v in data['period']])


def _set(data: dict) -> IndexSet:
    return IndexSet(data['prefix'], data['period'])


# Expressions

def node_to_json(node: NodeOrLeaf) -> dict:
    """
    The ``expr`` part of an expression document.
    """
    kind = node.type
    if isinstance(node, Zero):
        return {'kind': kind}
    if isinstance(node, ScalarE):
        return {'kind': kind, 'value': str(node.value)}
    if isinstance(node, (Basis, ZBasis)):
        return {'kind': kind, 'i': node.i, 'j': node.j}
    if isinstance(node, (FiniteLit, ZFiniteLit)):
        return {'kind': kind,
                'entries': [[i, j, str(v)] for (i, j), v in node.entries.items()]}
    if isinstance(node, Diag):
        return {'kind': kind, 'seq': seq_to_json(node.seq)}
    if isinstance(node, ZDiag):
        return {'kind': kind, 'seq': _zseq_to_json(node.seq)}
    if isinstance(node, Shift):
        return {'kind': kind, 'offset': node.offset, 'set': set_to_json(node.index_set),
                'weights': seq_to_json(node.weights)}
    if isinstance(node, ZShift):
        return {'kind': kind, 'offset': node.offset, 'set': _zset_to_json(node.index_set),
                'weights': _zseq_to_json(node.weights)}
    if isinstance(node, RowMat):
        return {'kind': kind, 'row': node.row, 'seq': seq_to_json(node.seq)}
    if isinstance(node, Pairing):
        return {
            'kind': kind,
            'rows': set_to_json(node.rows), 'row_stride': node.row_stride,
            'row_skip': node.row_skip, 'row_shift': node.row_shift,
            'cols': set_to_json(node.cols), 'col_stride': node.col_stride,
            'col_skip': node.col_skip, 'col_shift': node.col_shift,
        }
    if isinstance(node, ShiftSolution):
        return {'kind': kind, 'child': node_to_json(node.children[0]),
                'corrected': node.corrected}
    if isinstance(node, Sum):
        return {'kind': kind, 'children': [node_to_json(c) for c in node.children]}
    if isinstance(node, Scale):
        return {'kind': kind, 'coefficient': str(node.coefficient),
                'child': node_to_json(node.children[0])}
    if isinstance(node, (Prod, Bracket)):
        left, right = node.children
        return {'kind': kind, 'left': node_to_json(left), 'right': node_to_json(right)}
    raise TypeError('cannot serialize %r' % (node,))


def _zseq_to_json(seq: TwoSidedSeq) -> dict:
    return {'neg': seq_to_json(seq.neg), 'pos': seq_to_json(seq.pos)}


def _zset_to_json(index_set: TwoSidedSet) -> dict:
    return {'neg': set_to_json(index_set.neg), 'pos': set_to_json(index_set.pos)}


def node_from_json(data: dict, field: Field) -> NodeOrLeaf:
    """
    Builds a node from already validated data.
    """
    kind = data['kind']
    if kind == 'zero':
        return Zero(field)
    if kind == 'scalar':
        return ScalarE(field.parse(data['value']))
    if kind == 'basis':
        return Basis(data['i'], data['j'], field)
    if kind == 'zbasis':
        return ZBasis(data['i'], data['j'], field)
    if kind in ('finite', 'zfinite'):
        entries: Dict[Tuple[int, int], object] = {}
        for i, j, value in data['entries']:
            entries[i, j] = field.parse(value)
        return (FiniteLit if kind == 'finite' else ZFiniteLit)(entries, field)
    if kind == 'diag':
        return Diag(_seq(field, data['seq']))
    if kind == 'zdiag':
        return ZDiag(_zseq(field, data['seq']))
    if kind == 'shift':
        return Shift(data['offset'], _set(data['set']), _seq(field, data['weights']))
    if kind == 'zshift':
        return ZShift(data['offset'], _zset(data['set']), _zseq(field, data['weights']))
    if kind == 'row':
        return RowMat(data['row'], _seq(field, data['seq']))
    if kind == 'pairing':
        return Pairing(_set(data['rows']), _set(data['cols']),
                       data['row_stride'], data['row_skip'], data['row_shift'],
                       data['col_stride'], data['col_skip'], data['col_shift'], field)
    if kind == 'shift_solve':
        return ShiftSolution(node_from_json(data['child'], field), data['corrected'])
    if kind == 'sum':
        return Sum([node_from_json(c, field) for c in data['children']])
    if kind == 'scale':
        return Scale(field.parse(data['coefficient']), node_from_json(data['child'], field))
    left = node_from_json(data['left'], field)
    right = node_from_json(data['right'], field)
    return Prod(left, right) if kind == 'prod' else Bracket(left, right)


def _zseq(field: Field, data: dict) -> TwoSidedSeq:
    return TwoSidedSeq(_seq(field, data['neg']), _seq(field, data['pos']))


def _zset(data: dict) -> TwoSidedSet:
    return TwoSidedSet(_set(data['neg']), _set(data['pos']))


def to_json(expr: NodeOrLeaf) -> dict:
    return {'field': expr.field.field_id, 'side': expr.side or 'n',
            'expr': node_to_json(expr)}


def _field_of(data) -> Field:
    return load_field(data['field'])


def from_json(data: dict) -> NodeOrLeaf:
    """
    Reads a document matching :data:`colfin.schema.MATEXPR_SCHEMA`.
    """
    validate(data, schema.MATEXPR_SCHEMA)
    return node_from_json(data['expr'], _field_of(data))


# Chains

def _ref_or_none(node):
    return None if node is None else node_to_json(node)


def chain_to_json(chain: BracketChain) -> dict:
    steps = []
    for step in chain.steps:
        if step.kind == 'bracket':
            steps.append({
                'kind': 'bracket',
                'lhs': node_to_json(step.lhs), 'rhs': node_to_json(step.rhs),
                'result': node_to_json(step.result), 'note': step.note,
                'ideal_side': step.ideal_side, 'ideal_ref': step.ideal_ref,
            })
        else:
            steps.append({
                'kind': 'combine',
                'terms': [[str(c), ref] for c, ref in step.terms],
                'result': node_to_json(step.result), 'note': step.note,
            })
    return {'field': chain.target.field.field_id, 'seed': _ref_or_none(chain.seed),
            'target': node_to_json(chain.target), 'steps': steps}


def chain_from_json(data: dict) -> BracketChain:
    validate(data, schema.CHAIN_SCHEMA)
    field = _field_of(data)
    steps = []
    for step in data['steps']:
        result = node_from_json(step['result'], field)
        if step['kind'] == 'bracket':
            steps.append(ChainStep(
                'bracket', result, step['note'],
                node_from_json(step['lhs'], field), node_from_json(step['rhs'], field),
                step['ideal_side'], step['ideal_ref'],
            ))
        else:
            terms = tuple((field.parse(c), ref) for c, ref in step['terms'])
            steps.append(ChainStep('combine', result, step['note'], terms=terms))
    seed = None if data['seed'] is None else node_from_json(data['seed'], field)
    return BracketChain(node_from_json(data['target'], field), steps, seed)


def verdict_to_json(verdict: ChainVerdict) -> dict:
    return {
        'passed': verdict.passed,
        'step': verdict.step,
        'entry': None if verdict.entry is None else list(verdict.entry),
        'reason': verdict.reason,
        'expected': None if verdict.expected is None else str(verdict.expected),
        'actual': None if verdict.actual is None else str(verdict.actual),
    }


# Derivations

def derivation_to_json(d: DerivationVal) -> dict:
    return {
        'field': d.field.field_id,
        'inner': node_to_json(d.inner_part),
        'central': [[k, str(v)] for k, v in d.central_table.items()],
        'zero_extension': d.zero_extension,
    }


def derivation_from_json(data: dict) -> DerivationVal:
    validate(data, schema.DERIVATION_SCHEMA)
    field = _field_of(data)
    table = {k: field.parse(v) for k, v in data['central']}
    return DerivationVal(node_from_json(data['inner'], field), table, data['zero_extension'])


def report_to_json(decomposition: Decomposition) -> dict:
    report = decomposition.report
    return {
        'field': decomposition.inner.field.field_id,
        'inner': node_to_json(decomposition.inner),
        'sigma': [[k, str(v)] for k, v in sorted(decomposition.sigma.items())],
        'report': {
            'probe_bound': report.probe_bound,
            'window': report.window,
            'diagonal_extension': report.diagonal_extension,
            'antisymmetry_checks': report.antisymmetry_checks,
            'passed': report.passed,
            'residuals': [{
                'probe': r.probe,
                'passed': r.passed,
                'entry': None if r.entry is None else list(r.entry),
                'value': None if r.value is None else str(r.value),
            } for r in report.residuals],
        },
    }
