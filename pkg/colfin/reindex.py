"""
Matrices indexed by the integers and their transport to the natural numbers.

The bijection ``sigma(z) = 2z + 1`` for ``z >= 0`` and ``sigma(z) = -2z`` for
``z < 0`` renames the rows and columns of a ``Z x Z`` matrix, which is an
isomorphism of the two column-finite algebras:

>>> sigma(0), sigma(-1), sigma_inv(4)
(1, 2, -2)
>>> print(reindex_to_N(ZBasis(0, 1)).get_code())
E(1, 3)

Nonnegative indices go to odd positions and negative ones to even positions,
so a band ``E_{i, i+k}`` splits into two bands of offset ``2k`` and ``-2k``,
one on odd and one on even rows, plus finitely many entries crossing between
the two halves.
"""
from typing import Dict, Tuple

from colfin.field import Field, FieldElem, QQ
from colfin.sequences import IndexSet, InvalidIndex, SeqDesc
from colfin.tree import (Basis, BaseNode, Bracket, Diag, FiniteLit, Leaf,
                         NodeOrLeaf, Prod, Scale, ScalarE, Shift, Sum, Zero)
from colfin.utils import ColfinError


class NotTransportable(ColfinError):
    module = 'reindex'


def sigma(z: int) -> int:
    return 2 * z + 1 if z >= 0 else -2 * z


def sigma_inv(n: int) -> int:
    if n < 1:
        raise InvalidIndex('positions start at 1, got %s' % n)
    return (n - 1) // 2 if n % 2 else -(n // 2)


def _pos(z: int) -> Tuple[bool, int]:
    # Position of z in its half: 0, 1, ... -> 1, 2, ... and -1, -2, ... -> 1, 2, ...
    return (True, z + 1) if z >= 0 else (False, -z)


class TwoSidedSeq:
    """
    A sequence ``Z -> K`` given by one eventually periodic descriptor per
    side: ``pos[m]`` is the value at ``m - 1`` and ``neg[m]`` the value at
    ``-m``.
    """
    def __init__(self, neg: SeqDesc, pos: SeqDesc):
        if neg.field != pos.field:
            raise ValueError('both sides need the same field')
        self.field = pos.field
        self.neg = neg
        self.pos = pos

    @classmethod
    def both(cls, seq: SeqDesc) -> 'TwoSidedSeq':
        return cls(seq, seq)

    @classmethod
    def finite(cls, field: Field, entries: Dict[int, object]) -> 'TwoSidedSeq':
        return cls(SeqDesc.finite(field, {-z: v for z, v in entries.items() if z < 0}),
                   SeqDesc.finite(field, {z + 1: v for z, v in entries.items() if z >= 0}))

    def __getitem__(self, z: int) -> FieldElem:
        positive, m = _pos(z)
        return (self.pos if positive else self.neg)[m]

    def is_finite(self) -> bool:
        return self.neg.is_finite() and self.pos.is_finite()

    def entries(self) -> Dict[int, FieldElem]:
        result = {-m: v for m, v in self.neg.entries().items()}
        result.update({m - 1: v for m, v in self.pos.entries().items()})
        return dict(sorted(result.items()))

    def __eq__(self, other):
        return isinstance(other, TwoSidedSeq) and (self.neg, self.pos) == (other.neg, other.pos)

    def __hash__(self):
        return hash((self.neg, self.pos))

    def get_code(self) -> str:
        if self.is_finite():
            return 'fin(%s)' % ' '.join('%s: %s' % item for item in self.entries().items())
        if self.neg == self.pos:
            return self.pos.get_code()
        return 'sides(%s, %s)' % (self.neg.get_code(), self.pos.get_code())

    def __repr__(self):
        return '<%s: %s>' % (type(self).__name__, self.get_code())


class TwoSidedSet:
    """
    A subset of ``Z``, split like :class:`TwoSidedSeq`.
    """
    def __init__(self, neg: IndexSet, pos: IndexSet):
        self.neg = neg
        self.pos = pos

    @classmethod
    def all(cls) -> 'TwoSidedSet':
        return cls(IndexSet.all(), IndexSet.all())

    @classmethod
    def finite(cls, members) -> 'TwoSidedSet':
        members = set(members)
        return cls(IndexSet.finite(-z for z in members if z < 0),
                   IndexSet.finite(z + 1 for z in members if z >= 0))

    def __contains__(self, z: int) -> bool:
        positive, m = _pos(z)
        return m in (self.pos if positive else self.neg)

    def is_finite(self) -> bool:
        return not self.neg.is_infinite() and not self.pos.is_infinite()

    def members(self):
        """
        All members of a finite set, in increasing order.
        """
        assert self.is_finite()
        negative = [-m for m in self.neg.members()]
        return sorted(negative) + [m - 1 for m in self.pos.members()]

    def __eq__(self, other):
        return isinstance(other, TwoSidedSet) and (self.neg, self.pos) == (other.neg, other.pos)

    def __hash__(self):
        return hash((self.neg, self.pos))

    def get_code(self) -> str:
        if self.is_finite():
            return 'fin{%s}' % ', '.join(str(z) for z in self.members())
        if self.neg == self.pos:
            return self.pos.get_code()
        return 'sides(%s, %s)' % (self.neg.get_code(), self.pos.get_code())

    def __repr__(self):
        return '<%s: %s>' % (type(self).__name__, self.get_code())


class _ZLeaf(Leaf):
    """
    Primitive matrices with rows and columns indexed by all integers.
    """
    __slots__ = ()
    side = 'z'


class ZBasis(_ZLeaf):
    __slots__ = ('i', 'j')
    type = 'zbasis'

    def __init__(self, i: int, j: int, field: Field = QQ) -> None:
        super().__init__(field)
        self.i = i
        self.j = j

    def _column(self, j):
        return {self.i: self.field.one} if j == self.j else {}

    def _key(self):
        return self.field, self.i, self.j

    def get_code(self):
        return 'E(%s, %s)' % (self.i, self.j)


class ZFiniteLit(_ZLeaf):
    __slots__ = ('entries', '_columns')
    type = 'zfinite'

    def __init__(self, entries: Dict[Tuple[int, int], object], field: Field = QQ) -> None:
        super().__init__(field)
        self.entries = {}
        self._columns: Dict[int, Dict[int, FieldElem]] = {}
        for (i, j), value in sorted(entries.items(), key=lambda item: item[0]):
            value = field(value)
            if value:
                self.entries[i, j] = value
                self._columns.setdefault(j, {})[i] = value

    def _column(self, j):
        return self._columns.get(j, {})

    def _key(self):
        return (self.field,) + tuple(self.entries.items())

    def get_code(self):
        return 'finite{%s}' % ' '.join(
            '%s,%s: %s' % (i, j, v) for (i, j), v in self.entries.items()
        )


class ZDiag(_ZLeaf):
    __slots__ = ('seq',)
    type = 'zdiag'

    def __init__(self, seq: TwoSidedSeq) -> None:
        super().__init__(seq.field)
        self.seq = seq

    def _column(self, j):
        value = self.seq[j]
        return {j: value} if value else {}

    def _key(self):
        return (self.seq,)

    def get_code(self):
        return 'diag(%s)' % self.seq.get_code()


class ZShift(_ZLeaf):
    """
    ``sum of w(i) E_{i, i+k}`` over ``i`` in ``H``; nothing falls off.
    """
    __slots__ = ('offset', 'index_set', 'weights')
    type = 'zshift'

    def __init__(self, offset: int, index_set: TwoSidedSet = None,
                 weights: TwoSidedSeq = None, field: Field = None) -> None:
        if offset == 0:
            raise InvalidIndex('a shift needs a nonzero offset')
        if weights is None:
            weights = TwoSidedSeq.both(SeqDesc.constant(field or QQ, 1))
        super().__init__(weights.field)
        self.offset = offset
        self.index_set = TwoSidedSet.all() if index_set is None else index_set
        self.weights = weights

    def _column(self, j):
        i = j - self.offset
        if i in self.index_set:
            value = self.weights[i]
            if value:
                return {i: value}
        return {}

    def _key(self):
        return self.offset, self.index_set, self.weights

    def get_code(self):
        args = [str(self.offset)]
        default_weights = self.weights == TwoSidedSeq.both(SeqDesc.constant(self.field, 1))
        if not default_weights or self.index_set != TwoSidedSet.all():
            args.append(self.index_set.get_code())
        if not default_weights:
            args.append(self.weights.get_code())
        return 'shift(%s)' % ', '.join(args)


def _rebuilt(node: BaseNode, children) -> NodeOrLeaf:
    if isinstance(node, Scale):
        return Scale(node.coefficient, children[0])
    if isinstance(node, Sum):
        return Sum(children)
    return type(node)(*children)


def _shift_to_N(node: ZShift) -> NodeOrLeaf:
    field = node.field
    k = node.offset
    zero = SeqDesc.zero(field)
    none = IndexSet.empty()
    terms = []

    # Rows i >= 0 with i + k >= 0 sit at odd positions 2i + 1.
    upper = node.index_set.pos
    if k < 0:
        upper = upper - IndexSet.finite(range(1, -k + 1))
    # Rows i < 0 with i + k < 0 sit at even positions -2i.
    lower = node.index_set.neg
    if k > 0:
        lower = lower - IndexSet.finite(range(1, k + 1))

    if not upper.is_empty():
        terms.append(Shift(2 * k, IndexSet.interleave(upper, none),
                           SeqDesc.interleave(node.weights.pos, zero)))
    if not lower.is_empty():
        terms.append(Shift(-2 * k, IndexSet.interleave(none, lower),
                           SeqDesc.interleave(zero, node.weights.neg)))
    crossing = {}
    for i in range(min(0, -k), max(0, -k)):
        if i in node.index_set and node.weights[i]:
            crossing[sigma(i), sigma(i + k)] = node.weights[i]
    if crossing:
        terms.append(FiniteLit(crossing, field))
    if not terms:
        return Zero(field)
    return terms[0] if len(terms) == 1 else Sum(terms)


def reindex_to_N(a: NodeOrLeaf) -> NodeOrLeaf:
    """
    The matrix with entry ``a[i, j]`` at ``(sigma(i), sigma(j))``.
    """
    if isinstance(a, (Zero, ScalarE)):
        return a
    if isinstance(a, ZBasis):
        return Basis(sigma(a.i), sigma(a.j), a.field)
    if isinstance(a, ZFiniteLit):
        return FiniteLit({(sigma(i), sigma(j)): v for (i, j), v in a.entries.items()}, a.field)
    if isinstance(a, ZDiag):
        return Diag(SeqDesc.interleave(a.seq.pos, a.seq.neg))
    if isinstance(a, ZShift):
        return _shift_to_N(a)
    if isinstance(a, (Sum, Scale, Prod, Bracket)):
        return _rebuilt(a, [reindex_to_N(c) for c in a.children])
    raise NotTransportable('%s has no image indexed by N' % type(a).__name__)


def _shift_to_Z(node: Shift) -> NodeOrLeaf:
    field = node.field
    o = node.offset
    if o % 2:
        raise NotTransportable('a band of odd offset %s mixes the two halves' % o)
    k = o // 2
    empty = IndexSet.empty()
    zero = SeqDesc.zero(field)
    rows = node.index_set
    terms = []
    upper = rows.odd_part()
    if k < 0:
        upper = upper - IndexSet.finite(range(1, -k + 1))
    if not upper.is_empty():
        terms.append(ZShift(k, TwoSidedSet(empty, upper),
                            TwoSidedSeq(zero, node.weights.odd_part())))
    lower = rows.even_part()
    if o < 0:
        lower = lower - IndexSet.finite(range(1, -o // 2 + 1))
    if not lower.is_empty():
        terms.append(ZShift(-k, TwoSidedSet(lower, empty),
                            TwoSidedSeq(node.weights.even_part(), zero)))
    if not terms:
        return Zero(field)
    return terms[0] if len(terms) == 1 else Sum(terms)


def reindex_to_Z(a: NodeOrLeaf) -> NodeOrLeaf:
    """
    The inverse of :func:`reindex_to_N` on what it produces: matrix units,
    finite literals, scalars, diagonals and bands of even offset.
    """
    if isinstance(a, (Zero, ScalarE)):
        return a
    if isinstance(a, Basis):
        return ZBasis(sigma_inv(a.i), sigma_inv(a.j), a.field)
    if isinstance(a, FiniteLit):
        return ZFiniteLit({(sigma_inv(i), sigma_inv(j)): v for (i, j), v in a.entries.items()},
                          a.field)
    if isinstance(a, Diag):
        return ZDiag(TwoSidedSeq(a.seq.even_part(), a.seq.odd_part()))
    if isinstance(a, Shift):
        return _shift_to_Z(a)
    if isinstance(a, (Sum, Scale, Prod, Bracket)):
        return _rebuilt(a, [reindex_to_Z(c) for c in a.children])
    raise NotTransportable('%s has no image indexed by Z' % type(a).__name__)
