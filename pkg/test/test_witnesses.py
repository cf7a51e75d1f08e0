import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import colfin
from colfin.field import QQ, ZZ, NoInverses
from colfin.matrix import first_difference, windows_equal
from colfin.sequences import IndexSet, SeqDesc
from colfin.tree import Basis, Bracket, Diag, FiniteLit, RowMat, Scale, ScalarE, Shift, Zero
from colfin.witnesses import (
    CENTRAL, SEED, BracketChain, ChainStep, EqualDiagonalEntries, FiniteDisagreement,
    GapPropertyViolated, NotDiagonal, NotInfinite, NotInSlFr, UnsupportedTail, ZeroPivot,
    center_witness, complete_superdiag, eij_from_diag, eij_from_offdiag, enlarge_set,
    express_in_slfr, extract_diag, generate_gl_cf, generate_slfr, perfect_witness,
    solve_shift_bracket, superdiag_from_diag, verify_chain,
)

from .strategies import F2, F5, fragment_matrices, slfr_matrices


def step_diagonal():
    return Diag(SeqDesc.constant(QQ, 2, prefix=[1]))


def test_unit_from_diagonal():
    chain = eij_from_diag(step_diagonal(), 1, 2)
    [step] = chain.steps
    assert step.kind == 'bracket'
    assert step.rhs == Scale(-1, Basis(1, 2))
    assert step.ideal_ref == SEED
    assert chain.target == Basis(1, 2)
    assert verify_chain(chain).passed


def test_unit_from_diagonal_errors():
    with pytest.raises(NotDiagonal):
        eij_from_diag(Basis(1, 2), 1, 2)
    with pytest.raises(EqualDiagonalEntries):
        eij_from_diag(ScalarE(1), 1, 2)
    with pytest.raises(EqualDiagonalEntries):
        eij_from_diag(step_diagonal(), 1, 1)
    with pytest.raises(NoInverses):
        eij_from_diag(Basis(1, 1, ZZ), 1, 2)


def test_unit_from_symmetric_pair():
    chain = eij_from_offdiag(Basis(1, 2) + Basis(2, 1), 1, 2)
    assert len(chain) == 5
    assert chain.target == Basis(1, 3)
    assert verify_chain(chain).passed


def test_unit_from_single_entry():
    chain = eij_from_offdiag(Basis(1, 2) + Basis(1, 1), 1, 2)
    assert [step.kind for step in chain] == ['bracket', 'bracket', 'combine']
    assert chain.target == Basis(1, 2)
    assert verify_chain(chain).passed


def test_zero_pivot():
    with pytest.raises(ZeroPivot):
        eij_from_offdiag(Basis(1, 2), 2, 1)
    with pytest.raises(ZeroPivot):
        eij_from_offdiag(Basis(1, 2), 1, 1)


def test_express_unit():
    chain = express_in_slfr(Basis(3, 4), (1, 2))
    assert [step.result for step in chain] == [Basis(3, 2), Basis(3, 4)]
    assert chain.seed == Basis(1, 2)
    assert verify_chain(chain).passed


def test_express_diagonal_difference():
    b = Basis(1, 1) - Basis(2, 2)
    chain = express_in_slfr(b, (1, 2))
    assert [step.kind for step in chain] == ['bracket', 'combine']
    assert chain.steps[0].result == FiniteLit({(1, 1): 1, (2, 2): -1})
    assert verify_chain(chain).passed


def test_express_infinite_row():
    b = RowMat(1, SeqDesc.periodic(QQ, [0, 1]))
    chain = express_in_slfr(b, (1, 2))
    [step] = chain.steps
    assert step.rhs == RowMat(2, SeqDesc.periodic(QQ, [0, 1]))
    assert verify_chain(chain).passed


def test_express_refuses():
    with pytest.raises(NotInSlFr):
        express_in_slfr(Basis(1, 1), (1, 2))
    with pytest.raises(NotInSlFr):
        express_in_slfr(Basis(1, 2), (1, 1))


@pytest.mark.parametrize('seed', ['E(1,2)', 'diag(periodic(1, 2))', 'E(1,2) + E(2,1)',
                                  'diag(periodic(1; 2))', 'shift(1)'])
@settings(max_examples=15, deadline=None)
@given(st.data())
def test_generate_slfr(seed, data):
    field = data.draw(st.sampled_from([QQ, F5, F2]))
    a = colfin.parse(seed, field=field)
    b = data.draw(slfr_matrices(field))
    chain = generate_slfr(a, b)
    assert chain.seed == a
    assert chain.target == b
    assert verify_chain(chain).passed


def test_generate_slfr_from_scalar():
    with pytest.raises(EqualDiagonalEntries):
        generate_slfr(ScalarE(2), Basis(1, 2))


def test_superdiagonal_from_diagonal():
    h, chain = superdiag_from_diag(Diag(SeqDesc.periodic(QQ, [0, 1])))
    assert h == IndexSet.all()
    assert chain.target == Shift(1)
    assert verify_chain(chain).passed

    h, chain = superdiag_from_diag(Diag(SeqDesc.periodic(QQ, [0, 0, 1])))
    assert h == IndexSet.periodic([0, 1, 1])
    assert verify_chain(chain).passed


def test_superdiagonal_errors():
    with pytest.raises(FiniteDisagreement):
        superdiag_from_diag(step_diagonal())
    with pytest.raises(NotDiagonal):
        superdiag_from_diag(Shift(1))


@pytest.mark.parametrize('h', [
    IndexSet.arithmetic(1, 4),
    IndexSet.arithmetic(2, 3),
    IndexSet.periodic([1, 0, 0, 0, 0, 1]),
    IndexSet.periodic([0, 1], prefix=[0, 0, 0, 0]),
])
def test_enlarge_set(h):
    g, chain = enlarge_set(h)
    assert not g.complement().has_consecutive_pair()
    assert g & h == h
    assert chain.target == Shift(1, g)
    assert verify_chain(chain).passed


def test_enlarge_set_keeps_large_sets():
    h = IndexSet.periodic([1, 0])
    g, chain = enlarge_set(h)
    assert g == h
    assert len(chain) == 0
    assert verify_chain(chain).passed


def test_enlarge_finite_set():
    with pytest.raises(NotInfinite):
        enlarge_set(IndexSet.finite([1, 2, 3]))


@pytest.mark.parametrize('g', [
    IndexSet.all(),
    IndexSet.arithmetic(3, 4).complement(),
    IndexSet.periodic([0, 1]),
    IndexSet.periodic([1, 0, 1]),
])
def test_complete_superdiagonal(g):
    chain = complete_superdiag(g)
    assert chain.target == Shift(1)
    assert chain.seed == Shift(1, g)
    assert verify_chain(chain).passed


def test_gap_property():
    with pytest.raises(GapPropertyViolated) as excinfo:
        complete_superdiag(IndexSet.periodic([1, 0, 0]))
    assert excinfo.value.message == '2 and 3 are both missing'


def test_solve_shift_bracket():
    x = solve_shift_bracket(Basis(1, 1))
    assert windows_equal(Bracket(x, Shift(1)), Basis(1, 1), 30)
    literal = solve_shift_bracket(Basis(1, 1), corrected=False)
    assert first_difference(Bracket(literal, Shift(1)), Basis(1, 1), 30) == (1, 1)
    assert solve_shift_bracket(Zero()) == Zero(QQ)


def test_solve_over_integers():
    a = FiniteLit({(1, 1): 3, (2, 1): -2, (1, 4): 1}, ZZ)
    x, s = perfect_witness(a)
    assert s == Shift(1, field=ZZ)
    assert windows_equal(Bracket(x, s), a, 20)


@pytest.mark.parametrize('code', ['E(1,1)', 'shift(1)', 'diag(periodic(1, 2))'])
def test_structured_matrices_are_brackets_with_the_shift(code):
    a = colfin.parse(code)
    x = solve_shift_bracket(a)
    assert windows_equal(Bracket(x, Shift(1)), a, 60)
    x, s = perfect_witness(a)
    assert s == Shift(1)
    assert windows_equal(Bracket(x, s), a, 60)


@pytest.mark.parametrize('field', [QQ, F5])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_every_matrix_is_a_bracket_with_the_shift(field, data):
    a = data.draw(fragment_matrices(field))
    x, s = perfect_witness(a)
    assert windows_equal(Bracket(x, s), a, 60)


@pytest.mark.parametrize(('code', 'witness'), [
    ('E(1,2)', Basis(2, 2)),
    ('diag(periodic(0, 1))', Basis(1, 2)),
    ('E(3,3)', Basis(2, 3)),
])
def test_center_witness(code, witness):
    a = colfin.parse(code)
    assert center_witness(a) == witness
    assert first_difference(Bracket(a, witness), Zero(), 10) is not None


@pytest.mark.parametrize('code', ['I', '0', '-2/3 * I', 'diag(const(4))'])
def test_center_witness_of_scalars(code):
    assert center_witness(colfin.parse(code)) is CENTRAL
    assert str(CENTRAL) == 'central'


BAND_TAILS = [
    'shift(-1)',
    'shift(-2)',
    'shift(2)',
    'shift(3)',
    'shift(1) + shift(-1)',
    'shift(2) + shift(-3)',
    'shift(-1) + shift(-4)',
    'shift(2, periodic(1, 0, 0))',
    'shift(1, periodic(0, 1))',
    'shift(-2, periodic(1, 1, 0))',
    'shift(1, all, periodic(1, 2))',
    'shift(-1, all, periodic(3, 0))',
    'shift(2, periodic(0, 1), periodic(1, -1))',
    'E(1,5) + shift(4, periodic(0, 1))',
    'I + shift(-1)',
    'diag(periodic(1, 2)) + shift(1)',
    'row(2, const(1)) + shift(-2)',
    'shift(1) - shift(2) + E(3, 1)',
    '[shift(1), diag(periodic(0, 1))]',
    '2 * shift(3) + finite{1,1: 1; 2,4: -1}',
]


@pytest.mark.parametrize('code', BAND_TAILS + [
    'shift(1)',
    'I + shift(1)',
    'diag(periodic(1, 2))',
    'diag(periodic(0, 0, 1))',
    'diag(periodic(0, 1)) + E(1,2)',
])
def test_generate_gl_cf(code):
    a = colfin.parse(code)
    certificate = generate_gl_cf(a)
    assert certificate.chain.seed == a
    assert certificate.chain.target == Shift(1)
    assert certificate.disagreement.is_infinite()
    assert verify_chain(certificate.chain).passed


def test_extract_diagonal_refuses_finite_rank():
    with pytest.raises(UnsupportedTail):
        extract_diag(colfin.parse('I + E(1,1)'))


@pytest.mark.parametrize('code', ['shift(1)', 'shift(2)', 'shift(1, periodic(0, 1))', 'shift(-2)'])
def test_extracted_diagonal(code):
    d, chain = extract_diag(colfin.parse(code))
    assert verify_chain(chain).passed
    assert chain.target == d
    assert all(isinstance(node, Diag) for node in colfin.normalize(d).tail)


def test_tampered_chain():
    chain = eij_from_diag(step_diagonal(), 1, 2)
    step = chain.steps[0]._replace(result=Basis(1, 3))
    verdict = verify_chain(BracketChain(Basis(1, 3), [step], chain.seed))
    assert not verdict.passed
    assert verdict.step == 1
    assert verdict.reason == 'bracket mismatch'
    assert str(verdict).startswith('FAIL at step 1, entry')


def test_wrong_target():
    chain = eij_from_diag(step_diagonal(), 1, 2)
    verdict = verify_chain(BracketChain(Basis(1, 3), chain.steps, chain.seed))
    assert verdict.step is None
    assert verdict.reason == 'target mismatch'
    assert str(verdict) == 'FAIL at target, entry (1, 2): target mismatch'


def test_forward_reference():
    step = ChainStep('combine', Basis(1, 2), terms=((QQ.one, 3),))
    verdict = verify_chain(BracketChain(Basis(1, 2), [step], Basis(1, 2)))
    assert verdict.reason == 'reference 3 is not an earlier result'


def test_chain_rendering():
    chain = eij_from_diag(step_diagonal(), 1, 2)
    assert repr(chain) == '<BracketChain: 1 steps to E(1, 2)>'
    lines = chain.get_code().splitlines()
    assert lines[0] == 'seed: diag(periodic(1; 2))'
    assert lines[1].startswith('1. [diag(periodic(1; 2)), ')
    assert lines[1].endswith('= E(1, 2)    (scaled by 1/(a_ii - a_jj))')
    assert lines[-1] == 'target: E(1, 2)'


def test_then_renumbers_references():
    first = eij_from_diag(step_diagonal(), 1, 2)
    chain = first.then(express_in_slfr(Basis(3, 4), (1, 2)))
    assert len(chain) == 3
    assert chain.steps[1].ideal_ref == 0
    assert chain.steps[2].ideal_ref == 1
    assert verify_chain(chain).passed
