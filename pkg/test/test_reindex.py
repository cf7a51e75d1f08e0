import pytest

import colfin
from colfin.field import QQ
from colfin.reindex import (NotTransportable, TwoSidedSeq, TwoSidedSet, ZBasis, ZDiag,
                            ZFiniteLit, ZShift, reindex_to_N, reindex_to_Z, sigma, sigma_inv)
from colfin.sequences import IndexSet, InvalidIndex, SeqDesc
from colfin.tree import Basis, Bracket, FiniteLit, Prod, RowMat, ScalarE, Shift, Sum

from .strategies import F5

Z_MATRICES = [
    ZBasis(0, 1),
    ZBasis(-3, 2),
    ZFiniteLit({(-1, 0): 2, (3, -2): -1}),
    ZDiag(TwoSidedSeq(SeqDesc.periodic(QQ, [1, 2]), SeqDesc.constant(QQ, 3, prefix=[0]))),
    ZShift(1),
    ZShift(-2),
    ZShift(3, TwoSidedSet(IndexSet.periodic([0, 1]), IndexSet.all())),
    ZShift(1, weights=TwoSidedSeq(SeqDesc.periodic(QQ, [1, 2]), SeqDesc.constant(QQ, 5))),
    Sum([ZShift(1), ZShift(-1), ScalarE(2)]),
    Prod(ZShift(2), ZDiag(TwoSidedSeq.finite(QQ, {-2: 1, 0: 3}))),
    Bracket(ZShift(1), ZShift(-1)),
]


def test_sigma_is_a_bijection():
    assert {sigma(z) for z in range(-1000, 1001)} == set(range(1, 2002))
    for z in range(-1000, 1001):
        assert sigma_inv(sigma(z)) == z
    with pytest.raises(InvalidIndex):
        sigma_inv(0)


@pytest.mark.parametrize('a', Z_MATRICES)
def test_entries_are_transported(a):
    n = reindex_to_N(a)
    for p in range(1, 41):
        for q in range(1, 41):
            assert n.entry(p, q) == a.entry(sigma_inv(p), sigma_inv(q)), (p, q)


@pytest.mark.parametrize('a', Z_MATRICES)
def test_round_trip(a):
    back = reindex_to_Z(reindex_to_N(a))
    for i in range(-8, 9):
        for j in range(-8, 9):
            assert back.entry(i, j) == a.entry(i, j), (i, j)


def test_units():
    assert reindex_to_N(ZBasis(0, 1)) == Basis(1, 3)
    assert reindex_to_N(ZBasis(-1, 0)) == Basis(2, 1)
    assert reindex_to_Z(Basis(4, 1)) == ZBasis(-2, 0)
    assert reindex_to_N(ZBasis(0, 1, F5)).field == F5


def test_shift_splits_into_two_bands():
    image = reindex_to_N(ZShift(1))
    assert isinstance(image, Sum)
    offsets = [c.offset for c in image.children if isinstance(c, Shift)]
    assert offsets == [2, -2]
    assert image.children[-1] == FiniteLit({(2, 1): 1})


def test_z_side_in_the_language():
    assert reindex_to_N(colfin.parse('E(0, 1)', side='z')) == Basis(1, 3)


@pytest.mark.parametrize('a', [Shift(1), RowMat(1, SeqDesc.constant(QQ, 1)), ZBasis(0, 0)])
def test_not_transportable_to_z(a):
    with pytest.raises(NotTransportable):
        reindex_to_Z(a)


def test_not_transportable_to_n():
    with pytest.raises(NotTransportable):
        reindex_to_N(Basis(1, 1))


def test_two_sided_descriptors():
    seq = TwoSidedSeq.finite(QQ, {-2: 1, 0: 3})
    assert seq[-2] == 1
    assert seq[0] == 3
    assert seq[5] == 0
    assert seq.entries() == {-2: 1, 0: 3}
    with pytest.raises(ValueError):
        TwoSidedSeq(SeqDesc.zero(QQ), SeqDesc.zero(F5))

    members = TwoSidedSet.finite([3, -1, 0])
    assert members.members() == [-1, 0, 3]
    assert -1 in members and 2 not in members
    assert members.get_code() == 'fin{-1, 0, 3}'
    assert TwoSidedSet(IndexSet.empty(), IndexSet.all()).get_code() == 'sides(fin{}, all)'
    assert TwoSidedSet.all().get_code() == 'all'


def test_negative_indices():
    assert ZBasis(-5, -5).entry(-5, -5) == 1
    assert ZShift(-1).column(-3) == {-2: 1}
