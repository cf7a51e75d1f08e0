"""
The ``BaseParser`` walks a token stream produced by
:mod:`colfin.dsl.tokenize` and hands out tokens to the recursive descent
methods of a grammar specific subclass (see :mod:`colfin.dsl.parser`).

Errors are either raised as :class:`ParserSyntaxError` or, with
``error_recovery=True``, collected as diagnostics while the parser skips to
the next synchronizing token and substitutes a placeholder for the broken
part.
"""
import logging
from typing import Iterable, List, Optional, Tuple

from colfin.dsl.token import DslTokenTypes
from colfin.dsl.tokenize import Token
from colfin.utils import ColfinError

LOG = logging.getLogger(__name__)

SYNC_STRINGS = frozenset({',', ')', ']', '}', '+', '-', ';'})
"""
Operators the parser resynchronizes on after an error when recovering.
"""

OPENERS = frozenset({'(', '[', '{'})
CLOSERS = frozenset({')', ']', '}'})


class ParserSyntaxError(ColfinError):
    """
    Contains error information about the expression source.

    May be raised as an exception.
    """
    module = 'cli'

    def __init__(self, message: str, start_pos: Tuple[int, int],
                 end_pos: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.start_pos = start_pos
        self.end_pos = start_pos if end_pos is None else end_pos

    def __str__(self):
        return '%s:%s: %s' % (self.start_pos[0], self.start_pos[1], self.message)


class _Resync(Exception):
    """
    Unwinds the recursive descent to the nearest recovery point.
    """


class BaseParser:
    """
    Recursive descent plumbing shared by the expression parsers.

    Subclasses implement :meth:`_parse_root`; :meth:`parse` makes sure the
    whole input was consumed.
    """
    def __init__(self, error_recovery: bool = False):
        self._error_recovery = error_recovery
        self.diagnostics: List[ParserSyntaxError] = []
        self._tokens: List[Token] = []
        self._index = 0

    def parse(self, tokens: Iterable[Token]):
        self._tokens = list(tokens)
        self._index = 0
        self.diagnostics = []
        result = self._parse_root()
        token = self._peek()
        if token.type != DslTokenTypes.ENDMARKER:
            self._error('unexpected %r' % token.string, token)
            result = self._recover_root(result)
        return result

    def _parse_root(self):
        raise NotImplementedError

    def _recover_root(self, result):
        # Drop whatever trails a complete expression.
        self._index = len(self._tokens) - 1
        return result

    def _peek(self, offset: int = 0) -> Token:
        index = min(self._index + offset, len(self._tokens) - 1)
        return self._tokens[index]

    def _next(self) -> Token:
        token = self._peek()
        if token.type != DslTokenTypes.ENDMARKER:
            self._index += 1
        return token

    def _at(self, *strings: str) -> bool:
        token = self._peek()
        return token.type in (DslTokenTypes.OP, DslTokenTypes.NAME) and token.string in strings

    def _accept(self, string: str) -> Optional[Token]:
        if self._at(string):
            return self._next()
        return None

    def _expect(self, string: str) -> Token:
        token = self._peek()
        if not self._at(string):
            self._fail('expected %r, found %s' % (string, describe_token(token)), token)
        return self._next()

    def _expect_type(self, type_: DslTokenTypes, what: str) -> Token:
        token = self._peek()
        if token.type != type_:
            self._fail('expected %s, found %s' % (what, describe_token(token)), token)
        return self._next()

    def _error(self, message: str, token: Token, end_pos=None) -> ParserSyntaxError:
        error = ParserSyntaxError(message, token.start_pos, end_pos or token.end_pos)
        if not self._error_recovery:
            raise error
        LOG.debug('recovering from %s', error)
        self.diagnostics.append(error)
        return error

    def _fail(self, message: str, token: Token, end_pos=None):
        """
        Reports an error and abandons the construct being parsed.
        """
        self._error(message, token, end_pos)
        raise _Resync()

    def _domain_error(self, error: ColfinError, start: Token):
        """
        Reports an error raised while building a node from well formed text.
        """
        end = self._tokens[max(self._index - 1, 0)].end_pos
        if not self._error_recovery:
            raise error
        LOG.debug('recovering from %s: %s', error.name, error)
        self.diagnostics.append(ParserSyntaxError(
            '%s: %s' % (error.name, error.message), start.start_pos, end))

    def _recovering(self, method, placeholder):
        """
        Runs ``method``; on a reported error skips to a synchronizing token
        and returns ``placeholder()``.
        """
        start = self._index
        try:
            return method()
        except _Resync:
            self._skip_to_sync(start)
            return placeholder()

    def _skip_to_sync(self, start: int) -> None:
        # Brackets opened by the abandoned construct are closed as well.
        depth = 0
        for token in self._tokens[start:self._index]:
            if token.type == DslTokenTypes.OP:
                if token.string in OPENERS:
                    depth += 1
                elif token.string in CLOSERS and depth:
                    depth -= 1
        if self._index == start and self._next().string in OPENERS:
            depth += 1
        while True:
            token = self._peek()
            if token.type == DslTokenTypes.ENDMARKER:
                return
            if token.type == DslTokenTypes.OP:
                if not depth and token.string in SYNC_STRINGS:
                    return
                if token.string in OPENERS:
                    depth += 1
                elif token.string in CLOSERS:
                    depth -= 1
                    if not depth:
                        self._next()
                        return
            self._next()


def describe_token(token: Token) -> str:
    return token.type.value.describe(token.string)
