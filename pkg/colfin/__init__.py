r"""
colfin computes exactly with column-finite infinite matrices: every matrix
is a finite expression over primitive matrices (units, diagonals given by
eventually periodic sequences, bands over index sets), so brackets, windows
and the position in the ideal lattice are all decidable.

A simple example:

>>> import colfin
>>> expr = colfin.parse('[E(1,2), E(2,1)]')
>>> expr
<Bracket: [E(1, 2), E(2, 1)]>
>>> expr.window(2, 2)
[[<FieldElem: 1>, <FieldElem: 0>], [<FieldElem: 0>, <FieldElem: -1>]]
>>> print(colfin.classify(expr))
sl_fr

Other fields are chosen by name:

>>> colfin.parse('3 * E(1,1)', field='fp:5').entry(1, 1)
<FieldElem: 3 mod 5>
"""

from colfin.field import QQ, ZZ, Field, FieldElem, PrimeField, load_field
from colfin.grammar import Grammar, load_grammar
from colfin.ideals import IdealName, classify
from colfin.normalizer import normalize
from colfin.parser import ParserSyntaxError
from colfin.utils import ColfinError, split_lines


__version__ = '0.1.0'


def parse(code=None, **kwargs):
    """
    A utility function to avoid loading grammars. Returns the parsed
    expression; params are documented in :py:meth:`colfin.Grammar.parse`.

    :param field: The field used by :py:func:`colfin.load_grammar`.
    :param str side: ``'n'`` (the default) or ``'z'``.
    """
    field = kwargs.pop('field', None)
    side = kwargs.pop('side', 'n')
    grammar = load_grammar(field, side)
    return grammar.parse(code, **kwargs).expr
