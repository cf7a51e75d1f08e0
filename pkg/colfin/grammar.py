from typing import Dict, List, Tuple

from colfin.dsl.parser import Parser
from colfin.dsl.tokenize import tokenize
from colfin.field import Field, load_field
from colfin.parser import ParserSyntaxError
from colfin.tree import NodeOrLeaf

_loaded_grammars: Dict[Tuple[Field, str], 'Grammar'] = {}

SIDES = ('n', 'z')
"""
``n`` indexes rows and columns by ``1, 2, ...``, ``z`` by all integers.
"""


class DslProgram:
    """
    The result of :meth:`Grammar.parse`: the source, the parsed expression
    and the diagnostics collected while recovering from errors.
    """
    def __init__(self, source: str, expr: NodeOrLeaf,
                 diagnostics: List[ParserSyntaxError]) -> None:
        self.source = source
        self.expr = expr
        self.diagnostics = diagnostics

    @property
    def ok(self) -> bool:
        return not self.diagnostics

    def __repr__(self):
        return '<%s: %r, %s diagnostics>' % (
            type(self).__name__, self.source, len(self.diagnostics))


class Grammar:
    """
    :py:func:`colfin.load_grammar` returns instances of this class.

    A grammar knows the field scalars are read in and whether indices range
    over ``1, 2, ...`` or over the integers.
    """
    def __init__(self, field: Field, side: str = 'n') -> None:
        if side not in SIDES:
            raise ValueError('side must be one of %s, not %r' % (SIDES, side))
        self.field = field
        self.side = side

    def parse(self, code: str, *, error_recovery: bool = False) -> DslProgram:
        """
        Parses an expression.

        :param error_recovery: Collect syntax and domain errors as
            diagnostics of the returned program instead of raising them. The
            broken parts of the expression are replaced by zero.
        :return: A :class:`DslProgram`.
        """
        parser = self._parser('expr', error_recovery)
        expr = parser.parse(tokenize(code))
        return DslProgram(code, expr, parser.diagnostics)

    def parse_seq(self, code: str):
        """
        Parses a sequence descriptor like ``periodic(1, 2)``.
        """
        return self._parser('seq', False).parse(tokenize(code))

    def parse_set(self, code: str):
        """
        Parses an index set descriptor like ``fin{1, 3}``.
        """
        return self._parser('set', False).parse(tokenize(code))

    def _parser(self, root: str, error_recovery: bool) -> Parser:
        return Parser(self.field, self.side, root=root, error_recovery=error_recovery)

    def __repr__(self):
        return '<%s:%s:%s>' % (self.__class__.__name__, self.field.name, self.side)


def load_grammar(field=None, side: str = 'n') -> Grammar:
    """
    Loads a :py:class:`colfin.grammar.Grammar`. The default field is Q.

    :param field: A :class:`colfin.field.Field` or its text form, e.g.
        ``'fp:5'``.
    :param str side: ``'n'`` or ``'z'``.
    """
    field = load_field(field)
    key = (field, side)
    try:
        return _loaded_grammars[key]
    except KeyError:
        return _loaded_grammars.setdefault(key, Grammar(field, side))
