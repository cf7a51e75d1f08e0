"""
Matrix operations on expressions. Construction is symbolic (``add`` builds a
:class:`~colfin.tree.Sum`, ``bracket`` a :class:`~colfin.tree.Bracket`, ...);
evaluation is exact and happens column by column.
"""
from typing import List, Optional, Tuple

from colfin.field import FieldElem
from colfin.normalizer import CanonicalForm, NotNormalizable, normalize
from colfin.tree import Bracket, Column, NodeOrLeaf, Prod, Scale, Sum
from colfin.utils import ColfinError


class NotInGlFr(ColfinError):
    module = 'matrix-core'


def entry(a: NodeOrLeaf, i: int, j: int) -> FieldElem:
    return a.entry(i, j)


def column(a: NodeOrLeaf, j: int) -> Column:
    return a.column(j)


def window(a: NodeOrLeaf, m: int, n: int) -> List[List[FieldElem]]:
    return a.window(m, n)


def row_bound(a: NodeOrLeaf, j: int) -> int:
    return a.row_bound(j)


def add(a: NodeOrLeaf, b: NodeOrLeaf) -> NodeOrLeaf:
    return Sum([a, b])


def sub(a: NodeOrLeaf, b: NodeOrLeaf) -> NodeOrLeaf:
    return a - b


def scale(c, a: NodeOrLeaf) -> NodeOrLeaf:
    return Scale(c, a)


def mul(a: NodeOrLeaf, b: NodeOrLeaf) -> NodeOrLeaf:
    return Prod(a, b)


def bracket(a: NodeOrLeaf, b: NodeOrLeaf) -> NodeOrLeaf:
    return Bracket(a, b)


def trace_fr(a: NodeOrLeaf) -> FieldElem:
    """
    The trace of a finite-row matrix: the finite sum of its diagonal entries.

    >>> from colfin.tree import Basis
    >>> print(trace_fr(Basis(1, 1)))
    1
    """
    form = normalize(a)
    if form.alpha or form.tail:
        raise NotInGlFr('%s is not a finite-row matrix' % a.get_code())
    return form.fr_trace


def is_row_finite(a: NodeOrLeaf) -> bool:
    """
    Whether every row of ``a`` is finite as well.
    """
    return normalize(a).is_row_finite()


def first_difference(a: NodeOrLeaf, b: NodeOrLeaf, m: int,
                     n: Optional[int] = None) -> Optional[Tuple[int, int]]:
    """
    The first position ``(i, j)``, row by row, at which the ``m x n`` windows
    of ``a`` and ``b`` differ, or ``None``.
    """
    if n is None:
        n = m
    columns = [(a._column(j), b._column(j)) for j in range(1, n + 1)]
    zero = a.field.zero
    for i in range(1, m + 1):
        for j, (left, right) in enumerate(columns, 1):
            if left.get(i, zero) != right.get(i, zero):
                return i, j
    return None


def windows_equal(a: NodeOrLeaf, b: NodeOrLeaf, m: int, n: Optional[int] = None) -> bool:
    return first_difference(a, b, m, n) is None


def is_zero_window(a: NodeOrLeaf, m: int, n: Optional[int] = None) -> bool:
    if n is None:
        n = m
    return all(not any(i <= m for i in a._column(j)) for j in range(1, n + 1))


__all__ = [
    'entry', 'column', 'window', 'row_bound', 'add', 'sub', 'scale', 'mul',
    'bracket', 'normalize', 'trace_fr', 'is_row_finite', 'first_difference',
    'windows_equal', 'is_zero_window', 'CanonicalForm', 'NotNormalizable',
    'NotInGlFr',
]
