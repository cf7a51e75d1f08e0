"""
Tests of the expression language: what it parses to, where it reports errors
and that rendering and parsing agree.
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import colfin
from colfin.field import QQ, InvalidScalar, ZeroInverse
from colfin.grammar import load_grammar
from colfin.parser import ParserSyntaxError
from colfin.reindex import TwoSidedSeq, TwoSidedSet, ZBasis, ZDiag, ZFiniteLit, ZShift
from colfin.sequences import IndexSet, InvalidIndex, SeqDesc, ZeroPeriod
from colfin.tree import (Basis, Bracket, Diag, FiniteLit, Pairing, Prod, RowMat, Scale,
                         ScalarE, Shift, ShiftSolution, Sum, Zero)

from .strategies import F2, F5, expressions


def parse(code, **kwargs):
    return colfin.parse(code, **kwargs)


@pytest.mark.parametrize(('code', 'expected'), [
    ('E(1,2)', Basis(1, 2)),
    ('I', ScalarE(1)),
    ('0', Zero(QQ)),
    ('-3', ScalarE(-3)),
    ('1/2', ScalarE(QQ('1/2'))),
    ('2 * E(1, 1)', Scale(2, Basis(1, 1))),
    ('-2 * E(1, 1)', Scale(-2, Basis(1, 1))),
    ('-E(1, 1)', Scale(-1, Basis(1, 1))),
    ('E(1,1) - E(2,2)', Sum([Basis(1, 1), Scale(-1, Basis(2, 2))])),
    ('E(1,1) - 2 * E(2,2)', Sum([Basis(1, 1), Scale(-2, Basis(2, 2))])),
    ('E(1,2) * E(2,1) * I', Prod(Prod(Basis(1, 2), Basis(2, 1)), ScalarE(1))),
    ('[E(1,2), E(2,1)]', Bracket(Basis(1, 2), Basis(2, 1))),
    ('(E(1,2) + I)', Sum([Basis(1, 2), ScalarE(1)])),
    ('diag(periodic(1, 2))', Diag(SeqDesc.periodic(QQ, [1, 2]))),
    ('diag(periodic(5; 3))', Diag(SeqDesc.constant(QQ, 3, prefix=[5]))),
    ('diag(const(-1/2))', Diag(SeqDesc.constant(QQ, '-1/2'))),
    ('diag(fin(2: 1; 4: 3))', Diag(SeqDesc.finite(QQ, {2: 1, 4: 3}))),
    ('shift(1)', Shift(1)),
    ('shift(-2, periodic(0, 1))', Shift(-2, IndexSet.periodic([0, 1]))),
    ('shift(1, const(2))', Shift(1, None, SeqDesc.constant(QQ, 2))),
    ('shift(1, fin{1, 3}, fin(1: 5))',
     Shift(1, IndexSet.finite([1, 3]), SeqDesc.finite(QQ, {1: 5}))),
    ('row(2, const(1))', RowMat(2, SeqDesc.constant(QQ, 1))),
    ('finite{1,1: 2; 3,2: -1}', FiniteLit({(1, 1): 2, (3, 2): -1})),
    ('finite{}', FiniteLit({})),
    ('solve(E(1,1))', ShiftSolution(Basis(1, 1))),
    ('solve(E(1,1), literal)', ShiftSolution(Basis(1, 1), corrected=False)),
    ('pairing(all, 2, 0, 0; periodic(0, 1), 1, 1, -1)',
     Pairing(IndexSet.all(), IndexSet.periodic([0, 1]), 2, 0, 0, 1, 1, -1)),
])
def test_parse(code, expected):
    assert parse(code) == expected


def test_prime_field_scalars():
    expr = parse('3 mod 5 * E(1, 1) + 1/2', field='fp:5')
    assert expr == Sum([Scale(F5(3), Basis(1, 1, F5)), ScalarE(F5(3))])
    assert expr.entry(1, 1) == 1


def test_integer_grammar():
    with pytest.raises(InvalidScalar):
        parse('1/2 * I', field='z')


def test_source_spanning_lines():
    assert parse('E(1,2)\n  +\n  E(2,1)') == Sum([Basis(1, 2), Basis(2, 1)])


@pytest.mark.parametrize(('code', 'message', 'start', 'end'), [
    ('E(1,2', "expected ')', found end of input", (1, 5), (1, 5)),
    ('E(1,', 'expected an integer, found end of input', (1, 4), (1, 4)),
    ('E(1,2) +', 'expected an expression, found end of input', (1, 8), (1, 8)),
    ('foo', "unknown name 'foo'", (1, 0), (1, 3)),
    ('E(1,2) E(2,1)', "unexpected 'E'", (1, 7), (1, 8)),
    ('E(1,2) ? I', "unexpected '?'", (1, 7), (1, 8)),
    ('E(1,2) +\n  foo', "unknown name 'foo'", (2, 2), (2, 5)),
    ('diag(1)', "expected a sequence, found '1'", (1, 5), (1, 6)),
    ('shift(1, periodic(0, 2))', "expected 0 or 1, found '2'", (1, 21), (1, 22)),
    ('finite{1,1: 1 1,1: 2}', 'entry (1, 1) given twice', (1, 14), (1, 15)),
    ('diag(fin(1: 1 1: 2))', 'index 1 given twice', (1, 14), (1, 15)),
    ('solve(I, corrected)', "expected 'literal', found 'corrected'", (1, 9), (1, 18)),
])
def test_syntax_errors(code, message, start, end):
    with pytest.raises(ParserSyntaxError) as excinfo:
        parse(code)
    error = excinfo.value
    assert error.message == message
    assert error.start_pos == start
    assert error.end_pos == end
    assert str(error) == '%s:%s: %s' % (start[0], start[1], message)


@pytest.mark.parametrize(('code', 'exception'), [
    ('E(0, 1)', InvalidIndex),
    ('row(0, const(1))', InvalidIndex),
    ('shift(0)', InvalidIndex),
    ('diag(periodic())', ZeroPeriod),
    ('diag(fin(0: 1))', InvalidIndex),
    ('1/0', ZeroInverse),
])
def test_domain_errors(code, exception):
    with pytest.raises(exception):
        parse(code)


def test_recover_from_syntax_error():
    program = load_grammar().parse('E(1,2) + E(1 2) + I', error_recovery=True)
    assert program.expr == Sum([Basis(1, 2), Zero(QQ), ScalarE(1)])
    assert not program.ok
    [diagnostic] = program.diagnostics
    assert diagnostic.message == "expected ',', found '2'"
    assert diagnostic.start_pos == (1, 13)


def test_recover_from_unknown_name():
    program = load_grammar().parse('E(1,2) + foo + E(2,1)', error_recovery=True)
    assert program.expr == Sum([Basis(1, 2), Zero(QQ), Basis(2, 1)])
    assert [d.message for d in program.diagnostics] == ["unknown name 'foo'"]


def test_recover_from_domain_error():
    program = load_grammar().parse('E(0, 1) + I', error_recovery=True)
    assert program.expr == Sum([Zero(QQ), ScalarE(1)])
    [diagnostic] = program.diagnostics
    assert diagnostic.message == 'InvalidIndex: indices start at 1, got 0'
    assert diagnostic.start_pos == (1, 0)
    assert diagnostic.end_pos == (1, 7)


def test_recover_from_trailing_tokens():
    program = load_grammar().parse('E(1,2) ? I', error_recovery=True)
    assert program.expr == Basis(1, 2)
    assert [d.message for d in program.diagnostics] == ["unexpected '?'"]


def test_recover_collects_every_error():
    program = load_grammar().parse('[foo, E(0,1)] + bar', error_recovery=True)
    assert len(program.diagnostics) == 3
    assert program.expr == Sum([Bracket(Zero(QQ), Zero(QQ)), Zero(QQ)])


def test_recovery_without_errors():
    program = load_grammar().parse('E(1,2)', error_recovery=True)
    assert program.ok
    assert repr(program) == "<DslProgram: 'E(1,2)', 0 diagnostics>"


def test_parse_descriptors():
    grammar = load_grammar()
    assert grammar.parse_seq('periodic(1; 2)') == SeqDesc.constant(QQ, 2, prefix=[1])
    assert grammar.parse_set('periodic(1, 1, 0, 1)') == IndexSet.arithmetic(3, 4).complement()
    assert grammar.parse_set('all') == IndexSet.all()
    with pytest.raises(ParserSyntaxError):
        grammar.parse_set('const(1)')


class TestIntegers:
    grammar = load_grammar(side='z')

    def parse(self, code):
        return self.grammar.parse(code).expr

    def test_units(self):
        assert self.parse('E(-1, 2)') == ZBasis(-1, 2)
        assert self.parse('finite{-1,0: 2}') == ZFiniteLit({(-1, 0): 2})

    def test_descriptors(self):
        const = SeqDesc.constant(QQ, 1)
        assert self.parse('diag(const(1))') == ZDiag(TwoSidedSeq.both(const))
        two_sided = TwoSidedSeq(SeqDesc.zero(QQ), const)
        assert self.parse('diag(sides(fin(), const(1)))') == ZDiag(two_sided)
        assert self.parse('diag(fin(-2: 1; 0: 3))') == \
            ZDiag(TwoSidedSeq.finite(QQ, {-2: 1, 0: 3}))
        upper = TwoSidedSet(IndexSet.empty(), IndexSet.all())
        assert self.parse('shift(1, sides(fin{}, all))') == ZShift(1, upper)
        assert self.parse('shift(2, fin{-1, 0})') == ZShift(2, TwoSidedSet.finite([-1, 0]))

    @pytest.mark.parametrize('name', ['row', 'solve', 'pairing'])
    def test_one_sided_only(self, name):
        with pytest.raises(ParserSyntaxError) as excinfo:
            self.parse('%s(1, const(1))' % name)
        assert excinfo.value.message == '%r is not available on the integers' % name

    def test_codes_round_trip(self):
        for code in ['E(-1, 2)', 'diag(sides(periodic(1, 2), const(3)))',
                     'shift(-1)', 'diag(fin(-2: 1 0: 3))', 'shift(1, fin{-3, 4})']:
            expr = self.parse(code)
            assert self.parse(expr.get_code()) == expr


@pytest.mark.parametrize(('expr', 'code'), [
    (Sum([Basis(1, 1), Scale(-1, Basis(2, 2))]), 'E(1, 1) - E(2, 2)'),
    (Basis(1, 1) - Basis(2, 2), 'E(1, 1) - E(2, 2)'),
    (Sum([Basis(1, 1), Scale(-2, Basis(2, 2))]), 'E(1, 1) - 2 * E(2, 2)'),
    (Sum([Basis(1, 1), Scale(-1, Scale(2, Basis(2, 2)))]), 'E(1, 1) - (2 * E(2, 2))'),
    (Sum([Sum([Basis(1, 1), ScalarE(1)]), Sum([Basis(1, 2), ScalarE(2)])]),
     '(E(1, 1) + I) + (E(1, 2) + 2)'),
    (Prod(ScalarE(-3), Basis(1, 2)), '(-3) * E(1, 2)'),
    (Prod(Basis(1, 2), Sum([Basis(2, 1), ScalarE(1)])), 'E(1, 2) * (E(2, 1) + I)'),
    (Scale(QQ('1/2'), Bracket(Basis(1, 2), Basis(2, 1))), '1/2 * [E(1, 2), E(2, 1)]'),
    (Shift(1, IndexSet.periodic([0, 1])), 'shift(1, periodic(0, 1))'),
    (Shift(1, None, SeqDesc.constant(QQ, 2)), 'shift(1, all, const(2))'),
    (Diag(SeqDesc.constant(QQ, 3, prefix=[5])), 'diag(periodic(5; 3))'),
    (ShiftSolution(Basis(1, 1), corrected=False), 'solve(E(1, 1), literal)'),
])
def test_get_code(expr, code):
    assert expr.get_code() == code
    assert parse(code) == expr


@settings(max_examples=500, deadline=None)
@given(st.data())
def test_round_trip(data):
    field = data.draw(st.sampled_from([QQ, F5, F2]))
    expr = data.draw(expressions(field, extended=True))
    assert parse(expr.get_code(), field=field) == expr
