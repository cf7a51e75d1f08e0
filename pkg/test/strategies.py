"""
Hypothesis strategies for fields, descriptors and matrix expressions.

Indices are kept small so that every generated matrix is supported well
inside the windows the tests compare on.
"""
from fractions import Fraction

from hypothesis import strategies as st

from colfin.field import QQ, PrimeField
from colfin.reindex import ZFiniteLit
from colfin.sequences import IndexSet, SeqDesc
from colfin.tree import (Basis, Bracket, Diag, FiniteLit, Pairing, Prod, RowMat,
                         Scale, ScalarE, Shift, ShiftSolution, Sum, Zero)

F5 = PrimeField(5)
F2 = PrimeField(2)


def scalars(field):
    if field == QQ:
        return st.builds(lambda n, d: QQ(Fraction(n, d)),
                         st.integers(-9, 9), st.integers(1, 4))
    return st.integers(-20, 20).map(field)


def nonzero_scalars(field):
    return scalars(field).filter(bool)


def seqs(field, max_prefix=3, max_period=3):
    return st.builds(
        lambda prefix, period: SeqDesc(field, prefix, period),
        st.lists(scalars(field), max_size=max_prefix),
        st.lists(scalars(field), min_size=1, max_size=max_period),
    )


def index_sets(max_prefix=3, max_period=4):
    return st.builds(
        IndexSet,
        st.lists(st.booleans(), max_size=max_prefix),
        st.lists(st.booleans(), min_size=1, max_size=max_period),
    )


def infinite_index_sets():
    return index_sets().filter(lambda s: s.is_infinite())


def _entries(field, low, high, max_size):
    return st.dictionaries(
        st.tuples(st.integers(low, high), st.integers(low, high)),
        nonzero_scalars(field), max_size=max_size,
    )


def finite_matrices(field, size=6, max_entries=6):
    """
    Finitely supported matrices with entries in the upper left ``size x size``
    block.
    """
    return _entries(field, 1, size, max_entries).map(lambda e: FiniteLit(e, field))


def nonzero_finite_matrices(field, size=6):
    return _entries(field, 1, size, 6).filter(bool).map(lambda e: FiniteLit(e, field))


def z_finite_matrices(field, radius=5, max_entries=6):
    return _entries(field, -radius, radius, max_entries).map(lambda e: ZFiniteLit(e, field))


@st.composite
def slfr_matrices(draw, field, size=5):
    """
    Nonzero trace-zero matrices with finitely many nonzero entries.
    """
    entries = draw(_entries(field, 1, size, 5))
    offdiagonal = {(i, j): v for (i, j), v in entries.items() if i != j}
    differences = draw(st.dictionaries(st.integers(1, size - 1), nonzero_scalars(field),
                                       max_size=3))
    for i, c in differences.items():
        offdiagonal[i, i] = offdiagonal.get((i, i), field.zero) + c
        offdiagonal[i + 1, i + 1] = offdiagonal.get((i + 1, i + 1), field.zero) - c
    matrix = FiniteLit(offdiagonal, field)
    if not matrix.entries:
        return Basis(1, 2, field)
    return matrix


def _leaves(field, extended):
    leaves = [
        st.builds(lambda i, j: Basis(i, j, field), st.integers(1, 6), st.integers(1, 6)),
        nonzero_scalars(field).map(ScalarE),
        seqs(field).map(Diag),
        st.builds(lambda k, s, w: Shift(k, s, w),
                  st.integers(-3, 3).filter(bool), index_sets(), seqs(field)),
        st.builds(lambda r, s: RowMat(r, s), st.integers(1, 5), seqs(field)),
        finite_matrices(field, max_entries=3),
    ]
    if extended:
        leaves += [
            st.just(Zero(field)),
            st.builds(lambda r, c, rs, cs: Pairing(r, c, rs, 0, 0, cs, 1, 0, field=field),
                      index_sets(), index_sets(), st.integers(1, 2), st.integers(0, 2)),
        ]
    return st.one_of(*leaves)


def expressions(field=QQ, extended=False, max_leaves=5):
    """
    Expressions over ``field`` built from the primitives with sums, scalar
    multiples, products and brackets. ``extended`` adds zero, pairings and
    lazily solved matrices, which have no canonical form.
    """
    def extend(children):
        composites = [
            st.lists(children, min_size=2, max_size=3).map(Sum),
            st.builds(Scale, scalars(field), children),
            st.builds(Prod, children, children),
            st.builds(Bracket, children, children),
        ]
        if extended:
            composites.append(st.builds(ShiftSolution, children, st.booleans()))
        return st.one_of(*composites)

    return st.recursive(_leaves(field, extended), extend, max_leaves=max_leaves)


def fragment_matrices(field=QQ):
    return expressions(field, max_leaves=3)
