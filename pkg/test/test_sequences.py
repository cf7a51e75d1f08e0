from fractions import Fraction

import pytest
from hypothesis import given, settings

from colfin.field import QQ
from colfin.sequences import IndexSet, InvalidIndex, SeqDesc, ZeroPeriod

from .strategies import F5, index_sets, seqs


def raw_value(prefix, period, i):
    if i <= len(prefix):
        return prefix[i - 1]
    return period[(i - len(prefix) - 1) % len(period)]


def test_canonical_form():
    assert SeqDesc.periodic(QQ, [1, 2, 1, 2]) == SeqDesc.periodic(QQ, [1, 2])
    assert SeqDesc(QQ, [1, 2], [1, 2]) == SeqDesc.periodic(QQ, [1, 2])
    assert SeqDesc(QQ, [3, 3], [3]) == SeqDesc.constant(QQ, 3)
    assert IndexSet([True], [True, True]).is_all()
    assert SeqDesc(QQ, [0, 0], [0]).is_zero()


@settings(max_examples=80)
@given(seqs(F5))
def test_descriptor_denotes_raw_values(seq):
    raw = SeqDesc(F5, list(seq.prefix) + list(seq.period), seq.period)
    assert raw == seq
    for i in range(1, 25):
        assert raw[i] == raw_value(seq.prefix, seq.period, i)


def test_kinds():
    assert SeqDesc.constant(QQ, 3).kind == 'constant'
    assert SeqDesc.finite(QQ, {2: 1}).kind == 'finite'
    assert SeqDesc.periodic(QQ, [1, 2]).kind == 'periodic'
    assert SeqDesc.zero(QQ).is_finite()
    assert SeqDesc.constant(QQ, 4, prefix=[1]).eventual_value() == 4
    assert SeqDesc.periodic(QQ, [1, 2]).eventual_value() is None


@pytest.mark.parametrize(('seq', 'code'), [
    (SeqDesc.finite(QQ, {2: 1}), 'fin(2: 1)'),
    (SeqDesc.finite(QQ, {1: 2, 3: 4}), 'fin(1: 2 3: 4)'),
    (SeqDesc.zero(QQ), 'fin()'),
    (SeqDesc.constant(QQ, '-1/2'), 'const(-1/2)'),
    (SeqDesc.constant(QQ, 3, prefix=[5]), 'periodic(5; 3)'),
    (SeqDesc.periodic(QQ, [1, 2]), 'periodic(1, 2)'),
    (SeqDesc.periodic(F5, [1, 7]), 'periodic(1 mod 5, 2 mod 5)'),
])
def test_seq_code(seq, code):
    assert seq.get_code() == code


def test_getitem_before_start_is_zero():
    seq = SeqDesc.constant(QQ, 1)
    assert seq[0] == 0
    assert seq[-3] == 0


def test_pointwise_arithmetic():
    a = SeqDesc.periodic(QQ, [1, 0])
    b = SeqDesc.periodic(QQ, [0, 0, 1])
    total = a + b
    assert len(total.period) == 6
    for i in range(1, 13):
        assert total[i] == a[i] + b[i]
    assert (a - a).is_zero()
    assert (a * b).values(6) == [0, 0, 1, 0, 0, 0]
    assert (3 * a).values(3) == [3, 0, 3]
    assert (-a).values(2) == [-1, 0]


def test_shift():
    seq = SeqDesc.periodic(QQ, [1, 2], prefix=[5])
    assert seq.shift(1) == SeqDesc.periodic(QQ, [1, 2])
    assert seq.shift(-1).values(5) == [0, 5, 1, 2, 1]


def test_zero_below():
    assert SeqDesc.constant(QQ, 1).zero_below(3).values(5) == [0, 0, 1, 1, 1]
    seq = SeqDesc.periodic(QQ, [1, 2])
    assert seq.zero_below(1) is seq


def test_periodic_part():
    seq = SeqDesc.periodic(QQ, [1, 2], prefix=[7])
    assert seq.periodic_part() == SeqDesc.periodic(QQ, [2, 1])
    assert SeqDesc.constant(QQ, 3, prefix=[5]).periodic_part() == SeqDesc.constant(QQ, 3)


def test_partial_sums():
    sums = SeqDesc.periodic(QQ, [1, -1]).partial_sums()
    assert sums == SeqDesc.periodic(QQ, [0, 1])
    assert SeqDesc.constant(QQ, 1).partial_sums() is None
    assert SeqDesc.finite(QQ, {2: 3}).partial_sums().values(4) == [0, 0, 3, 3]


def test_support():
    assert SeqDesc.periodic(QQ, [0, 3]).support() == IndexSet.periodic([0, 1])
    assert SeqDesc.zero(QQ).support().is_empty()


def test_interleave_and_parts():
    one, two = SeqDesc.constant(QQ, 1), SeqDesc.constant(QQ, 2)
    both = SeqDesc.interleave(one, two)
    assert both == SeqDesc.periodic(QQ, [1, 2])
    assert both.odd_part() == one
    assert both.even_part() == two
    assert IndexSet.interleave(IndexSet.all(), IndexSet.empty()) == IndexSet.periodic([1, 0])


@settings(max_examples=50)
@given(seqs(QQ), seqs(QQ))
def test_interleave_inverts_parts(odd, even):
    both = SeqDesc.interleave(odd, even)
    assert both.odd_part() == odd
    assert both.even_part() == even


def test_invalid_descriptors():
    with pytest.raises(ZeroPeriod):
        SeqDesc(QQ, [1], [])
    with pytest.raises(ZeroPeriod):
        IndexSet([True], [])
    with pytest.raises(InvalidIndex):
        SeqDesc.finite(QQ, {0: 1})
    with pytest.raises(InvalidIndex):
        IndexSet.finite([0, 2])
    with pytest.raises(InvalidIndex):
        IndexSet.arithmetic(0, 1)
    with pytest.raises(InvalidIndex):
        IndexSet.all().nth(0)


def test_index_set_queries():
    odd_members = IndexSet.finite([1, 3])
    assert odd_members.get_code() == 'fin{1, 3}'
    assert odd_members.nth(2) == 3
    assert odd_members.nth(3) is None
    assert odd_members.rank(2) == 1
    assert odd_members.max() == 3
    assert list(odd_members.members()) == [1, 3]

    evens = IndexSet.periodic([0, 1])
    assert evens.nth(5) == 10
    assert evens.rank(10) == 5
    assert evens.density() == Fraction(1, 2)
    assert evens.min() == 2
    assert evens.complement() == IndexSet.periodic([1, 0])
    assert 4 in evens and 5 not in evens and 0 not in evens


def test_arithmetic_progression():
    progression = IndexSet.arithmetic(3, 4)
    assert progression.members_upto(12) == [3, 7, 11]
    assert progression.get_code() == 'periodic(0, 0, 1, 0)'
    assert progression.complement().get_code() == 'periodic(1, 1, 0, 1)'


@pytest.mark.parametrize(('index_set', 'code'), [
    (IndexSet.all(), 'all'),
    (IndexSet.empty(), 'fin{}'),
    (IndexSet.periodic([1, 0], prefix=[1]), 'periodic(1; 1, 0)'),
])
def test_set_code(index_set, code):
    assert index_set.get_code() == code


def test_set_algebra():
    evens = IndexSet.periodic([0, 1])
    thirds = IndexSet.arithmetic(3, 3)
    assert (evens | thirds).members_upto(10) == [2, 3, 4, 6, 8, 9, 10]
    assert (evens & thirds).members_upto(20) == [6, 12, 18]
    assert (evens - thirds).members_upto(10) == [2, 4, 8, 10]


def test_shifted():
    evens = IndexSet.periodic([0, 1])
    assert evens.shifted(1).members_upto(8) == [3, 5, 7]
    assert evens.shifted(-2).members_upto(6) == [2, 4, 6]
    assert IndexSet.finite([1, 2]).shifted(-1) == IndexSet.finite([1])


def test_alternate():
    assert IndexSet.all().alternate(True) == IndexSet.periodic([1, 0])
    assert IndexSet.all().alternate(False) == IndexSet.periodic([0, 1])
    thirds = IndexSet.arithmetic(1, 3)
    assert thirds.alternate().members_upto(20) == [1, 7, 13, 19]


def test_consecutive_pairs():
    assert IndexSet.finite([2, 3]).first_consecutive_pair() == 2
    assert IndexSet.periodic([0, 1]).first_consecutive_pair() is None
    assert IndexSet.periodic([1, 1, 0], prefix=[0]).has_consecutive_pair()
    assert not IndexSet.empty().has_consecutive_pair()


@settings(max_examples=80)
@given(index_sets())
def test_rank_and_nth_agree(index_set):
    for t in range(1, 10):
        member = index_set.nth(t)
        if member is None:
            assert index_set.rank(60) < t
            break
        assert member in index_set
        assert index_set.rank(member) == t


@settings(max_examples=50)
@given(index_sets(), index_sets())
def test_set_operations_pointwise(a, b):
    for i in range(1, 30):
        assert (i in (a | b)) == (i in a or i in b)
        assert (i in (a & b)) == (i in a and i in b)
        assert (i in (a - b)) == (i in a and i not in b)
        assert (i in a.complement()) == (i not in a)
