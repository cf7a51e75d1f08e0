"""
Symbolic column-finite matrices.

An expression is a tree: leaves are primitive matrices with a finite
description (a basis matrix, a diagonal given by a sequence descriptor, a
band along an index set, ...) and nodes combine them with sums, scalar
multiples, products and brackets. Every leaf has finitely many entries in each
column and products keep that property, so every column of every expression
can be evaluated exactly:

>>> from colfin.tree import Basis, Bracket
>>> Bracket(Basis(1, 2), Basis(2, 1)).column(1)
{1: <FieldElem: 1>}
>>> print(Bracket(Basis(1, 2), Basis(2, 1)).get_code())
[E(1, 2), E(2, 1)]

Indices start at 1. ``get_code`` renders the expression in the expression
language understood by :func:`colfin.parse`.
"""
from abc import abstractmethod
from typing import Dict, Iterator, List, Optional, Tuple

from colfin import cache
from colfin.field import Field, FieldElem, FieldMismatch, QQ
from colfin.sequences import IndexSet, InvalidIndex, SeqDesc

Column = Dict[int, FieldElem]


def _accumulate(target: Column, i: int, value: FieldElem) -> None:
    total = target.get(i)
    total = value if total is None else total + value
    if total:
        target[i] = total
    else:
        target.pop(i, None)


def _common_field(children) -> Field:
    field = children[0].field
    for child in children[1:]:
        if child.field != field:
            raise FieldMismatch('cannot combine matrices over %s and %s'
                                % (field.name, child.field.name))
    return field


def _common_side(children) -> Optional[str]:
    sides = {c.side for c in children if c.side is not None}
    if len(sides) > 1:
        raise InvalidIndex('cannot combine matrices indexed by N and by Z')
    return sides.pop() if sides else None


def _scalar(value, field: Optional[Field]) -> FieldElem:
    if field is None:
        field = value.field if isinstance(value, FieldElem) else QQ
    return field(value)


class NodeOrLeaf:
    """
    The base class for matrix expressions.
    """
    __slots__ = ('field', '_hash')
    type: str
    '''
    The kind of the expression, also its ``"kind"`` in JSON documents.
    '''
    side: Optional[str] = 'n'
    _precedence = 3

    def _check_index(self, j: int) -> None:
        if self.side != 'z' and j < 1:
            raise InvalidIndex('indices start at 1, got %s' % j)

    def column(self, j: int) -> Column:
        """
        The nonzero entries of column ``j`` as ``{row: value}``; complete, so
        every row not listed holds zero.
        """
        self._check_index(j)
        return dict(self._column(j))

    def entry(self, i: int, j: int) -> FieldElem:
        self._check_index(i)
        self._check_index(j)
        return self._column(j).get(i, self.field.zero)

    def window(self, m: int, n: int, row_start: int = 1,
               col_start: int = 1) -> List[List[FieldElem]]:
        """
        The dense ``m x n`` block whose top-left corner sits at
        ``(row_start, col_start)``.
        """
        if m < 1 or n < 1:
            raise InvalidIndex('a window needs at least one row and one column')
        zero = self.field.zero
        columns = [self._column(j) for j in range(col_start, col_start + n)]
        return [[c.get(i, zero) for c in columns]
                for i in range(row_start, row_start + m)]

    @abstractmethod
    def _column(self, j: int) -> Column:
        """
        Column ``j`` without copying. Callers must not mutate the result.
        """

    @abstractmethod
    def row_bound(self, j: int) -> int:
        """
        A row index that no nonzero entry of column ``j`` exceeds.
        """

    @abstractmethod
    def get_code(self) -> str:
        """
        Renders the expression in the expression language.
        """

    @abstractmethod
    def _key(self) -> tuple:
        pass

    def iter_nodes(self) -> Iterator['NodeOrLeaf']:
        yield self

    def __eq__(self, other):
        if self is other:
            return True
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.type,) + self._key())
        return self._hash

    def __repr__(self):
        return '<%s: %s>' % (type(self).__name__, self.get_code())

    def __add__(self, other):
        if not isinstance(other, NodeOrLeaf):
            return NotImplemented
        return Sum([self, other])

    def __sub__(self, other):
        if not isinstance(other, NodeOrLeaf):
            return NotImplemented
        return Sum([self, Scale(-self.field.one, other)])

    def __neg__(self):
        return Scale(-self.field.one, self)

    def __mul__(self, other):
        if isinstance(other, NodeOrLeaf):
            return Prod(self, other)
        return Scale(other, self)

    def __rmul__(self, other):
        return Scale(other, self)


class Leaf(NodeOrLeaf):
    """
    Primitive matrices. Leaves evaluate their columns directly from their
    descriptors.
    """
    __slots__ = ()

    def __init__(self, field: Field) -> None:
        self.field = field
        self._hash = None

    def row_bound(self, j):
        return max(self._column(j), default=0)


class Zero(Leaf):
    __slots__ = ()
    type = 'zero'
    side = None

    def __init__(self, field: Field = QQ) -> None:
        super().__init__(field)

    def _column(self, j):
        return {}

    def _key(self):
        return (self.field,)

    def get_code(self):
        return '0'


class ScalarE(Leaf):
    """
    The scalar matrix ``value * E``.
    """
    __slots__ = ('value',)
    type = 'scalar'
    side = None

    def __init__(self, value=1, field: Field = None) -> None:
        value = _scalar(value, field)
        super().__init__(value.field)
        self.value = value

    def _column(self, j):
        return {j: self.value} if self.value else {}

    def _key(self):
        return (self.value,)

    def get_code(self):
        if self.value == 1:
            return 'I'
        return str(self.value)


class Basis(Leaf):
    """
    The matrix unit ``E_ij``.
    """
    __slots__ = ('i', 'j')
    type = 'basis'

    def __init__(self, i: int, j: int, field: Field = QQ) -> None:
        super().__init__(field)
        self._check_index(i)
        self._check_index(j)
        self.i = i
        self.j = j

    def _column(self, j):
        return {self.i: self.field.one} if j == self.j else {}

    def _key(self):
        return self.field, self.i, self.j

    def get_code(self):
        return 'E(%s, %s)' % (self.i, self.j)


class FiniteLit(Leaf):
    """
    A matrix with finitely many nonzero entries, given as ``{(i, j): value}``.
    """
    __slots__ = ('entries', '_columns')
    type = 'finite'

    def __init__(self, entries: Dict[Tuple[int, int], object], field: Field = QQ) -> None:
        super().__init__(field)
        self.entries = {}
        self._columns: Dict[int, Column] = {}
        for (i, j), value in sorted(entries.items(), key=lambda item: item[0]):
            self._check_index(i)
            self._check_index(j)
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


class Diag(Leaf):
    __slots__ = ('seq',)
    type = 'diag'

    def __init__(self, seq: SeqDesc) -> None:
        super().__init__(seq.field)
        self.seq = seq

    def _column(self, j):
        value = self.seq[j]
        return {j: value} if value else {}

    def _key(self):
        return (self.seq,)

    def get_code(self):
        return 'diag(%s)' % self.seq.get_code()


class Shift(Leaf):
    """
    The band ``sum of w(i) E_{i, i+k}`` over ``i`` in ``H``. Terms with
    ``i + k < 1`` fall off the matrix and are dropped.
    """
    __slots__ = ('offset', 'index_set', 'weights')
    type = 'shift'

    def __init__(self, offset: int, index_set: IndexSet = None,
                 weights: SeqDesc = None, field: Field = None) -> None:
        if offset == 0:
            raise InvalidIndex('a shift needs a nonzero offset')
        if weights is None:
            weights = SeqDesc.constant(field or QQ, 1)
        super().__init__(weights.field)
        self.offset = offset
        self.index_set = IndexSet.all() if index_set is None else index_set
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
        default_weights = self.weights == SeqDesc.constant(self.field, 1)
        if not default_weights or not self.index_set.is_all():
            args.append(self.index_set.get_code())
        if not default_weights:
            args.append(self.weights.get_code())
        return 'shift(%s)' % ', '.join(args)


class RowMat(Leaf):
    """
    A single, possibly infinite, row: ``sum of s(j) E_{r, j}``.
    """
    __slots__ = ('row', 'seq')
    type = 'row'

    def __init__(self, row: int, seq: SeqDesc) -> None:
        super().__init__(seq.field)
        self._check_index(row)
        self.row = row
        self.seq = seq

    def _column(self, j):
        value = self.seq[j]
        return {self.row: value} if value else {}

    def _key(self):
        return self.row, self.seq

    def get_code(self):
        return 'row(%s, %s)' % (self.row, self.seq.get_code())


class Pairing(Leaf):
    """
    A 0/1 matrix matching members of two index sets along rank progressions:
    for ``t = 0, 1, ...`` it has a one at row ``rows.nth(row_stride*t +
    row_skip + 1) + row_shift`` and column ``cols.nth(col_stride*t +
    col_skip + 1) + col_shift``. Every row and every column holds at most one
    entry.
    """
    __slots__ = ('rows', 'row_stride', 'row_skip', 'row_shift',
                 'cols', 'col_stride', 'col_skip', 'col_shift')
    type = 'pairing'

    def __init__(self, rows: IndexSet, cols: IndexSet, row_stride: int = 1,
                 row_skip: int = 0, row_shift: int = 0, col_stride: int = 1,
                 col_skip: int = 0, col_shift: int = 0, field: Field = QQ) -> None:
        if row_stride < 1 or col_stride < 1 or row_skip < 0 or col_skip < 0:
            raise InvalidIndex('pairing strides must be positive and skips nonnegative')
        super().__init__(field)
        self.rows = rows
        self.row_stride = row_stride
        self.row_skip = row_skip
        self.row_shift = row_shift
        self.cols = cols
        self.col_stride = col_stride
        self.col_skip = col_skip
        self.col_shift = col_shift

    def _row_of(self, t: int) -> Optional[int]:
        member = self.rows.nth(self.row_stride * t + self.row_skip + 1)
        if member is None or member + self.row_shift < 1:
            return None
        return member + self.row_shift

    def _col_of(self, t: int) -> Optional[int]:
        member = self.cols.nth(self.col_stride * t + self.col_skip + 1)
        if member is None or member + self.col_shift < 1:
            return None
        return member + self.col_shift

    def _column(self, j):
        source = j - self.col_shift
        if source not in self.cols:
            return {}
        t, rest = divmod(self.cols.rank(source) - 1 - self.col_skip, self.col_stride)
        if t < 0 or rest:
            return {}
        row = self._row_of(t)
        return {} if row is None else {row: self.field.one}

    def is_finite(self) -> bool:
        return not (self.rows.is_infinite() and self.cols.is_infinite())

    def pairs(self) -> Iterator[Tuple[int, int]]:
        """
        The ``(row, column)`` positions of the ones, by increasing ``t``.
        Infinite unless :meth:`is_finite`.
        """
        t = 0
        while True:
            if self.rows.nth(self.row_stride * t + self.row_skip + 1) is None:
                return
            if self.cols.nth(self.col_stride * t + self.col_skip + 1) is None:
                return
            row, col = self._row_of(t), self._col_of(t)
            if row is not None and col is not None:
                yield row, col
            t += 1

    def _key(self):
        return (self.field, self.rows, self.row_stride, self.row_skip, self.row_shift,
                self.cols, self.col_stride, self.col_skip, self.col_shift)

    def get_code(self):
        return 'pairing(%s, %s, %s, %s; %s, %s, %s, %s)' % (
            self.rows.get_code(), self.row_stride, self.row_skip, self.row_shift,
            self.cols.get_code(), self.col_stride, self.col_skip, self.col_shift,
        )


class BaseNode(NodeOrLeaf):
    """
    The super class for all composite expressions. Columns of composite
    expressions are remembered in :mod:`colfin.cache`.
    """
    __slots__ = ('children', 'side')

    def __init__(self, children: List[NodeOrLeaf]) -> None:
        self.children = tuple(children)
        """
        The operands, left to right.
        """
        self.field = _common_field(self.children)
        self.side = _common_side(self.children)
        self._hash = None

    def _column(self, j):
        return cache.cached_column(self, j, self._compute_column)

    @abstractmethod
    def _compute_column(self, j: int) -> Column:
        pass

    def iter_nodes(self):
        yield self
        for child in self.children:
            yield from child.iter_nodes()

    def _key(self):
        return self.children


def _code_wrapped(node: NodeOrLeaf, wrap: bool) -> str:
    if wrap:
        return '(%s)' % node.get_code()
    return node.get_code()


def _is_bare_scalar(node: NodeOrLeaf) -> bool:
    return isinstance(node, Zero) or isinstance(node, ScalarE) and node.value != 1


def _leading_scalar(node: NodeOrLeaf) -> bool:
    # Whether the rendering starts with a scalar literal.
    if isinstance(node, Scale) or _is_bare_scalar(node):
        return True
    if isinstance(node, Prod):
        left = node.children[0]
        return isinstance(left, (Scale, Prod)) and _leading_scalar(left)
    return False


class Sum(BaseNode):
    __slots__ = ()
    type = 'sum'
    _precedence = 1

    def __init__(self, children: List[NodeOrLeaf]) -> None:
        if not children:
            raise ValueError('a sum needs at least one term')
        super().__init__(children)

    def _compute_column(self, j):
        result: Column = {}
        for child in self.children:
            for i, value in child._column(j).items():
                _accumulate(result, i, value)
        return result

    def row_bound(self, j):
        return max(child.row_bound(j) for child in self.children)

    def get_code(self):
        first = self.children[0]
        parts = [_code_wrapped(first, isinstance(first, Sum))]
        for child in self.children[1:]:
            if isinstance(child, Scale) and child.coefficient.is_negative():
                positive = -child.coefficient
                inner = child.children[0]
                if positive == 1:
                    wrap = isinstance(inner, Sum) or _leading_scalar(inner)
                    parts.append(' - ' + _code_wrapped(inner, wrap))
                else:
                    parts.append(' - ' + Scale(positive, inner).get_code())
            else:
                parts.append(' + ' + _code_wrapped(child, isinstance(child, Sum)))
        return ''.join(parts)


class Scale(BaseNode):
    __slots__ = ('coefficient',)
    type = 'scale'
    _precedence = 2

    def __init__(self, coefficient, child: NodeOrLeaf) -> None:
        self.coefficient = child.field(coefficient)
        super().__init__([child])

    def _compute_column(self, j):
        c = self.coefficient
        if not c:
            return {}
        return {i: c * value for i, value in self.children[0]._column(j).items()}

    def row_bound(self, j):
        return self.children[0].row_bound(j)

    def _key(self):
        return (self.coefficient,) + self.children

    def get_code(self):
        child = self.children[0]
        return '%s * %s' % (self.coefficient,
                            _code_wrapped(child, child._precedence < 3))


def _product_column(left: NodeOrLeaf, right: NodeOrLeaf, j: int) -> Column:
    result: Column = {}
    for k, b in right._column(j).items():
        for i, a in left._column(k).items():
            _accumulate(result, i, a * b)
    return result


class Prod(BaseNode):
    """
    The matrix product. Column ``j`` is the finite sum over the nonzero
    entries of column ``j`` of the right factor.
    """
    __slots__ = ()
    type = 'prod'
    _precedence = 2

    def __init__(self, left: NodeOrLeaf, right: NodeOrLeaf) -> None:
        super().__init__([left, right])

    def _compute_column(self, j):
        return _product_column(self.children[0], self.children[1], j)

    def row_bound(self, j):
        left, right = self.children
        return max((left.row_bound(k) for k in right._column(j)), default=0)

    def get_code(self):
        left, right = self.children
        return '%s * %s' % (
            _code_wrapped(left, isinstance(left, Sum) or _is_bare_scalar(left)),
            _code_wrapped(right, right._precedence < 3),
        )


class Bracket(BaseNode):
    """
    The Lie product ``[A, B] = AB - BA``.
    """
    __slots__ = ()
    type = 'bracket'

    def __init__(self, left: NodeOrLeaf, right: NodeOrLeaf) -> None:
        super().__init__([left, right])

    def _compute_column(self, j):
        left, right = self.children
        result = _product_column(left, right, j)
        for i, value in _product_column(right, left, j).items():
            _accumulate(result, i, -value)
        return result

    def row_bound(self, j):
        left, right = self.children
        return max(max((left.row_bound(k) for k in right._column(j)), default=0),
                   max((right.row_bound(k) for k in left._column(j)), default=0))

    def get_code(self):
        return '[%s, %s]' % (self.children[0].get_code(), self.children[1].get_code())


class ShiftSolution(BaseNode):
    """
    The solution ``X`` of ``[X, S] = A`` for the superdiagonal shift ``S``,
    with first row zero. Entry ``(r, n)`` of ``X`` is minus the sum of
    ``A`` along the diagonal ending in ``(r - 1, n)``::

        x[r, n] = -(a[r-1, n] + a[r-2, n-1] + ... + a[r-n, 1])

    With ``corrected=False`` the term from the first column enters with the
    opposite sign, which does not solve the equation.
    """
    __slots__ = ('corrected',)
    type = 'shift_solve'

    def __init__(self, child: NodeOrLeaf, corrected: bool = True) -> None:
        super().__init__([child])
        self.corrected = corrected

    def _compute_column(self, q):
        source = self.children[0]
        result: Column = {}
        for c in range(1, q + 1):
            sign = -1 if c > 1 or self.corrected else 1
            for i, value in source._column(c).items():
                _accumulate(result, i + 1 + q - c, sign * value)
        return result

    def row_bound(self, q):
        source = self.children[0]
        return max((source.row_bound(c) + 1 + q - c
                    for c in range(1, q + 1) if source._column(c)), default=0)

    def _key(self):
        return (self.corrected,) + self.children

    def get_code(self):
        if self.corrected:
            return 'solve(%s)' % self.children[0].get_code()
        return 'solve(%s, literal)' % self.children[0].get_code()
