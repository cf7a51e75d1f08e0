import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colfin.derivations import (
    DerivationOracle, DerivationVal, NotADerivation, ProbeExceeded, ProbeInsufficient,
    SparsityViolated, apply, builtin_oracle, check_leibniz, decompose,
)
from colfin.field import QQ, ZZ
from colfin.normalizer import normalize
from colfin.sequences import IndexSet, SeqDesc
from colfin.tree import Basis, Diag, RowMat, ScalarE, Shift, Sum, Zero

from .strategies import F5, fragment_matrices


def oracle_of(b, n=0):
    return DerivationOracle.from_derivation(DerivationVal.inner(b), locality_bound=n)


def assert_scalar_difference(found, expected):
    form = normalize(Sum([found, -expected]))
    assert form.fr == {}
    assert form.tail == ()


def test_inner_offdiagonal():
    b = Basis(1, 2) + Basis(3, 4)
    result = decompose(oracle_of(b), 6)
    assert_scalar_difference(result.inner, b)
    assert result.sigma == {}
    assert result.report.passed
    assert result.report.antisymmetry_checks == 35
    assert result.report.diagonal_extension == 'partial-sums'


def test_inner_periodic_diagonal():
    b = Diag(SeqDesc.periodic(QQ, [1, 2]))
    result = decompose(oracle_of(b), 8)
    assert_scalar_difference(result.inner, b)
    assert not normalize(result.inner).alpha
    assert result.report.passed


def test_zero_oracle():
    result = decompose(builtin_oracle('zero'), 3)
    assert result.inner == Zero(QQ)
    assert result.sigma == {}
    assert len(result.report.residuals) == 16
    assert all(r.passed for r in result.report.residuals)
    assert result.report.window == 5


@pytest.mark.parametrize('name', ['identity', 'scramble'])
def test_not_a_derivation(name):
    with pytest.raises((NotADerivation, SparsityViolated)):
        decompose(builtin_oracle(name), 4)


def test_unknown_oracle():
    with pytest.raises(ValueError):
        builtin_oracle('transpose')


def test_too_few_probes():
    with pytest.raises(ProbeInsufficient):
        decompose(builtin_oracle('zero'), 1)


def test_central_values():
    d = DerivationVal.central({1: 2, 3: 0})
    assert d.central_table == {1: 2}
    assert apply(d, Basis(1, 1)).entry(5, 5) == 2
    assert apply(d, Basis(2, 2)) == d(Basis(2, 2))
    assert d.sigma(Basis(2, 2)) == 0
    assert d.sigma(Basis(1, 2)) == 0


def test_central_table_without_zero_extension():
    d = DerivationVal(Zero(QQ), {1: 1}, zero_extension=False)
    assert d.sigma(Basis(1, 1)) == 1
    assert d.sigma(Shift(1)) == 0
    with pytest.raises(ProbeExceeded):
        d.sigma(Basis(2, 2))
    with pytest.raises(ProbeExceeded):
        d.sigma(ScalarE(1))


def test_central_derivation_breaks_leibniz():
    verdict = check_leibniz(DerivationVal.central({1: 1}), [(Basis(1, 2), Basis(2, 1))], 10)
    assert not verdict.passed
    assert verdict.pair == 1
    assert verdict.entry == (1, 1)
    assert str(verdict) == 'FAIL at pair 1, entry (1, 1): 1 != 0'


def test_inner_derivation_satisfies_leibniz():
    d = DerivationVal.inner(Diag(SeqDesc.periodic(QQ, [1, 2])) + Basis(2, 5))
    pairs = [(Basis(1, 2), Shift(1)), (Shift(-1), Basis(3, 3)), (Shift(1), Shift(-1))]
    assert check_leibniz(d, pairs, 12).passed
    assert str(check_leibniz(d, pairs, 12)) == 'PASS'


def test_equality_and_repr():
    assert DerivationVal.inner(Basis(1, 2)) == DerivationVal(Basis(1, 2), {})
    assert DerivationVal.inner(Basis(1, 2)) != DerivationVal(Basis(1, 2), {}, False)
    assert repr(DerivationVal.central({2: 3})) == '<DerivationVal: ad(0) + {2: <FieldElem: 3>}>'
    assert repr(builtin_oracle('zero')) == '<DerivationOracle: zero>'




def test_band_is_recovered_past_the_corner():
    result = decompose(oracle_of(Shift(1), 6), 6)
    assert normalize(result.inner) == normalize(Shift(1))
    assert result.report.passed
    assert len(result.report.residuals) == 31


def test_restricted_bands_and_infinite_rows():
    b = Sum([Shift(-2, IndexSet.periodic([True, False]), SeqDesc.periodic(QQ, [1, 2])),
             RowMat(2, SeqDesc.constant(QQ, 1)), Shift(3, weights=SeqDesc.periodic(QQ, [0, 5]))])
    result = decompose(oracle_of(b, 5), 5)
    assert_scalar_difference(result.inner, b)
    assert result.report.passed


def test_band_past_the_corner_fails_the_report():
    result = decompose(oracle_of(Shift(3)), 3)
    assert not result.report.passed
    failing = [r for r in result.report.residuals if not r.passed]
    assert failing[0].entry == (5, 8)
    assert failing[0].value == -1
    assert 'shift(1)' in [r.probe for r in failing]


def test_locality_bound():
    with pytest.raises(ProbeInsufficient):
        decompose(oracle_of(Shift(1), 6), 5)


def corner_size(b):
    form = normalize(b)
    offsets = [abs(node.offset) for node in form.tail if isinstance(node, Shift)]
    return max([2] + list(form.fr) + offsets) + 2


@pytest.mark.parametrize('field', [QQ, F5, ZZ])
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_random_inner_derivations(field, data):
    b = data.draw(fragment_matrices(field))
    n = corner_size(b)
    result = decompose(oracle_of(b, n), n)
    assert_scalar_difference(result.inner, b)
    assert result.sigma == {}
    assert result.report.passed
