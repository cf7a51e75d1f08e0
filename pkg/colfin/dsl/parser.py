"""
The recursive descent parser of the expression language::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := scalar | 'E' '(' int ',' int ')' | 'I' | 'diag' '(' seq ')'
            | 'shift' '(' int [',' set] [',' seq] ')' | 'row' '(' int ',' seq ')'
            | 'finite' '{' (int ',' int ':' scalar [';'])* '}'
            | '[' expr ',' expr ']' | '(' expr ')'
            | 'solve' '(' expr [',' 'literal'] ')'
            | 'pairing' '(' set ',' int ',' int ',' int ';' set ',' int ',' int ',' int ')'
    seq    := 'const' '(' scalar ')' | 'periodic' '(' [scalars ';'] scalars ')'
            | 'fin' '(' (int ':' scalar [';'])* ')'
    set    := 'all' | 'fin' '{' [int (',' int)*] '}'
            | 'periodic' '(' [bits ';'] bits ')'

On the two-sided index set ``seq`` and ``set`` also accept
``'sides' '(' neg ',' pos ')'``, where both halves are one-sided
descriptors; a plain one-sided descriptor stands for both halves.

A minus sign in front of a number belongs to the number, so ``-2 * A`` is
the scaled matrix ``Scale(-2, A)`` and ``A - 2 * B`` subtracts ``2 * B``.
"""
from typing import Callable, Dict, List, Tuple

from colfin.dsl.token import DslTokenTypes
from colfin.field import Field, FieldElem
from colfin.parser import BaseParser, describe_token
from colfin.reindex import TwoSidedSeq, TwoSidedSet, ZBasis, ZDiag, ZFiniteLit, ZShift
from colfin.sequences import IndexSet, SeqDesc
from colfin.tree import (
    Basis, Bracket, Diag, FiniteLit, NodeOrLeaf, Pairing, Prod, RowMat, Scale,
    ScalarE, Shift, ShiftSolution, Sum, Zero,
)
from colfin.utils import ColfinError

NUMBER = DslTokenTypes.NUMBER
NAME = DslTokenTypes.NAME

_N_ONLY = frozenset({'row', 'solve', 'pairing'})


class Parser(BaseParser):
    """
    Parses expression source on the index set ``1, 2, ...`` (``side='n'``)
    or on the integers (``side='z'``). ``root`` selects what the whole input
    has to be: an ``expr``, a ``seq`` or a ``set``.
    """
    def __init__(self, field: Field, side: str = 'n', root: str = 'expr',
                 error_recovery: bool = False):
        super().__init__(error_recovery=error_recovery)
        self.field = field
        self.side = side
        self._root = root

    def _parse_root(self):
        if self._root == 'seq':
            return self._recovering(self._seq, self._zero_seq)
        if self._root == 'set':
            return self._recovering(self._set, self._empty_set)
        return self._expr()

    def _build(self, start, function: Callable, placeholder: Callable):
        try:
            return function()
        except ColfinError as error:
            self._domain_error(error, start)
            return placeholder()

    def _zero(self) -> NodeOrLeaf:
        return Zero(self.field)

    def _zero_seq(self):
        zero = SeqDesc.zero(self.field)
        return TwoSidedSeq.both(zero) if self.side == 'z' else zero

    def _empty_set(self):
        empty = IndexSet.empty()
        return TwoSidedSet(empty, empty) if self.side == 'z' else empty

    # Expressions

    def _expr(self) -> NodeOrLeaf:
        terms = [self._recovering(self._term, self._zero)]
        while True:
            if self._accept('+'):
                terms.append(self._recovering(self._term, self._zero))
            elif self._at('-'):
                # The term takes the sign.
                terms.append(self._recovering(self._term, self._zero))
            else:
                break
        if len(terms) == 1:
            return terms[0]
        return Sum(terms)

    def _term(self) -> NodeOrLeaf:
        start = self._peek()
        negated = self._accept('-') is not None
        if self._peek().type == NUMBER:
            value = self._scalar(negated)
            if self._accept('*'):
                factor = self._factor()
                result = self._build(start, lambda: Scale(value, factor), self._zero)
            else:
                result = self._literal(value)
        else:
            result = self._factor()
            while self._accept('*'):
                result = Prod(result, self._factor())
            if negated:
                return Scale(self.field(-1), result)
        while self._accept('*'):
            result = Prod(result, self._factor())
        return result

    def _literal(self, value: FieldElem) -> NodeOrLeaf:
        if not value:
            return Zero(self.field)
        return ScalarE(value)

    def _factor(self) -> NodeOrLeaf:
        return self._recovering(self._factor_inner, self._zero)

    def _factor_inner(self) -> NodeOrLeaf:
        token = self._peek()
        if token.type == NUMBER or self._at('-') and self._peek(1).type == NUMBER:
            negated = self._accept('-') is not None
            return self._literal(self._scalar(negated))
        if self._accept('('):
            result = self._expr()
            self._expect(')')
            return result
        if self._accept('['):
            left = self._expr()
            self._expect(',')
            right = self._expr()
            self._expect(']')
            return self._build(token, lambda: Bracket(left, right), self._zero)
        if token.type != NAME:
            self._fail('expected an expression, found %s' % describe_token(token), token)
        name = token.string
        if self.side == 'z' and name in _N_ONLY:
            self._fail('%r is not available on the integers' % name, token)
        method = getattr(self, '_factor_' + name, None)
        if method is None:
            self._fail('unknown name %r' % name, token)
        self._next()
        return method(token)

    def _factor_I(self, token) -> NodeOrLeaf:
        return ScalarE(self.field.one)

    def _factor_E(self, token) -> NodeOrLeaf:
        self._expect('(')
        i = self._int()
        self._expect(',')
        j = self._int()
        self._expect(')')
        cls = ZBasis if self.side == 'z' else Basis
        return self._build(token, lambda: cls(i, j, self.field), self._zero)

    def _factor_diag(self, token) -> NodeOrLeaf:
        self._expect('(')
        seq = self._seq()
        self._expect(')')
        cls = ZDiag if self.side == 'z' else Diag
        return self._build(token, lambda: cls(seq), self._zero)

    def _factor_shift(self, token) -> NodeOrLeaf:
        self._expect('(')
        offset = self._int()
        index_set = weights = None
        if self._accept(','):
            if self._starts_seq():
                weights = self._seq()
            else:
                index_set = self._set()
                if self._accept(','):
                    weights = self._seq()
        self._expect(')')
        cls = ZShift if self.side == 'z' else Shift
        return self._build(
            token, lambda: cls(offset, index_set, weights, field=self.field), self._zero)

    def _factor_row(self, token) -> NodeOrLeaf:
        self._expect('(')
        row = self._int()
        self._expect(',')
        seq = self._seq()
        self._expect(')')
        return self._build(token, lambda: RowMat(row, seq), self._zero)

    def _factor_finite(self, token) -> NodeOrLeaf:
        self._expect('{')
        entries: Dict[Tuple[int, int], FieldElem] = {}
        while not self._accept('}'):
            key_token = self._peek()
            i = self._int()
            self._expect(',')
            j = self._int()
            self._expect(':')
            value = self._scalar()
            if (i, j) in entries:
                self._error('entry (%s, %s) given twice' % (i, j), key_token)
            entries[i, j] = value
            self._accept(';')
        cls = ZFiniteLit if self.side == 'z' else FiniteLit
        return self._build(token, lambda: cls(entries, self.field), self._zero)

    def _factor_solve(self, token) -> NodeOrLeaf:
        self._expect('(')
        child = self._expr()
        corrected = True
        if self._accept(','):
            self._expect('literal')
            corrected = False
        self._expect(')')
        return ShiftSolution(child, corrected)

    def _factor_pairing(self, token) -> NodeOrLeaf:
        self._expect('(')
        rows, row_stride, row_skip, row_shift = self._pairing_side()
        self._expect(';')
        cols, col_stride, col_skip, col_shift = self._pairing_side()
        self._expect(')')
        return self._build(token, lambda: Pairing(
            rows, cols, row_stride, row_skip, row_shift,
            col_stride, col_skip, col_shift, field=self.field,
        ), self._zero)

    def _pairing_side(self):
        index_set = self._set()
        numbers = []
        for _ in range(3):
            self._expect(',')
            numbers.append(self._int())
        return (index_set, *numbers)

    # Numbers

    def _int(self) -> int:
        negated = self._accept('-') is not None
        token = self._expect_type(NUMBER, 'an integer')
        value = int(token.string)
        return -value if negated else value

    def _scalar(self, negated: bool = False) -> FieldElem:
        """
        Reads ``n``, ``n/d`` and ``k mod p`` and hands the text to the field.
        """
        start = self._peek()
        if not negated:
            negated = self._accept('-') is not None
        text = ('-' if negated else '') + self._expect_type(NUMBER, 'a number').string
        if self._accept('/'):
            text += '/' + str(self._int())
        if self._accept('mod'):
            text += ' mod ' + self._expect_type(NUMBER, 'a modulus').string
        return self._build(start, lambda: self.field.parse(text), lambda: self.field.zero)

    def _scalars(self, closing: str) -> List[FieldElem]:
        values: List[FieldElem] = []
        if self._at(';', closing):
            return values
        values.append(self._scalar())
        while self._accept(','):
            values.append(self._scalar())
        return values

    def _bits(self) -> List[bool]:
        bits: List[bool] = []
        if self._at(';', ')'):
            return bits
        while True:
            token = self._expect_type(NUMBER, 'a bit')
            if token.string not in ('0', '1'):
                self._fail('expected 0 or 1, found %r' % token.string, token)
            bits.append(token.string == '1')
            if not self._accept(','):
                return bits

    # Descriptors

    def _starts_seq(self) -> bool:
        if self._at('const'):
            return True
        return self._at('fin') and self._peek(1).string == '('

    def _seq(self):
        if self.side != 'z':
            return self._n_seq()
        start = self._peek()
        if self._accept('sides'):
            self._expect('(')
            neg = self._n_seq()
            self._expect(',')
            pos = self._n_seq()
            self._expect(')')
            return self._build(start, lambda: TwoSidedSeq(neg, pos), self._zero_seq)
        if self._at('fin'):
            entries = self._fin_entries()
            return self._build(
                start, lambda: TwoSidedSeq.finite(self.field, entries), self._zero_seq)
        return TwoSidedSeq.both(self._n_seq())

    def _n_seq(self) -> SeqDesc:
        start = self._peek()
        if self._accept('const'):
            self._expect('(')
            value = self._scalar()
            self._expect(')')
            return SeqDesc.constant(self.field, value)
        if self._accept('periodic'):
            self._expect('(')
            prefix: List[FieldElem] = []
            period = self._scalars(')')
            if self._accept(';'):
                prefix, period = period, self._scalars(')')
            self._expect(')')
            return self._build(start, lambda: SeqDesc.periodic(self.field, period, prefix),
                               lambda: SeqDesc.zero(self.field))
        if self._at('fin'):
            entries = self._fin_entries()
            return self._build(start, lambda: SeqDesc.finite(self.field, entries),
                               lambda: SeqDesc.zero(self.field))
        self._fail('expected a sequence, found %s' % describe_token(start), start)

    def _fin_entries(self) -> Dict[int, FieldElem]:
        self._expect('fin')
        self._expect('(')
        entries: Dict[int, FieldElem] = {}
        while not self._accept(')'):
            key_token = self._peek()
            index = self._int()
            self._expect(':')
            value = self._scalar()
            if index in entries:
                self._error('index %s given twice' % index, key_token)
            entries[index] = value
            self._accept(';')
        return entries

    def _set(self):
        if self.side != 'z':
            return self._n_set()
        start = self._peek()
        if self._accept('sides'):
            self._expect('(')
            neg = self._n_set()
            self._expect(',')
            pos = self._n_set()
            self._expect(')')
            return TwoSidedSet(neg, pos)
        if self._at('fin'):
            members = self._fin_members()
            return self._build(start, lambda: TwoSidedSet.finite(members), self._empty_set)
        index_set = self._n_set()
        return TwoSidedSet(index_set, index_set)

    def _n_set(self) -> IndexSet:
        start = self._peek()
        if self._accept('all'):
            return IndexSet.all()
        if self._at('fin'):
            members = self._fin_members()
            return self._build(start, lambda: IndexSet.finite(members), IndexSet.empty)
        if self._accept('periodic'):
            self._expect('(')
            prefix: List[bool] = []
            period = self._bits()
            if self._accept(';'):
                prefix, period = period, self._bits()
            self._expect(')')
            return self._build(start, lambda: IndexSet.periodic(period, prefix),
                               IndexSet.empty)
        self._fail('expected an index set, found %s' % describe_token(start), start)

    def _fin_members(self) -> List[int]:
        self._expect('fin')
        self._expect('{')
        members: List[int] = []
        if not self._accept('}'):
            members.append(self._int())
            while self._accept(','):
                members.append(self._int())
            self._expect('}')
        return members

