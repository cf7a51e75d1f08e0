"""
Splits expression source into tokens. Whitespace, including newlines, is kept
as the prefix of the following token, so that positions always point at the
token itself. Characters that start no token become ``ERRORTOKEN`` tokens and
are left to the parser to report.

>>> [t.string for t in tokenize('E(1,2) + 1/3')]
['E', '(', '1', ',', '2', ')', '+', '1', '/', '3', '']
"""
import re
from typing import Iterable, Iterator, NamedTuple, Tuple

from colfin.dsl.token import DslTokenTypes
from colfin.utils import split_lines

NUMBER = DslTokenTypes.NUMBER
NAME = DslTokenTypes.NAME
OP = DslTokenTypes.OP
ERRORTOKEN = DslTokenTypes.ERRORTOKEN
ENDMARKER = DslTokenTypes.ENDMARKER


def group(*choices, capture=False):
    start = '('
    if not capture:
        start += '?:'
    return start + '|'.join(choices) + ')'


Whitespace = r'[ \f\t]*'
Number = r'[0-9]+'
Name = r'[A-Za-z_][A-Za-z_0-9]*'
Operator = r'[-+*/,;:()\[\]{}]'

pseudo_token = re.compile(
    group(Whitespace, capture=True) + group(Number, Name, Operator, capture=True)
)


class Token(NamedTuple):
    type: DslTokenTypes
    string: str
    start_pos: Tuple[int, int]
    prefix: str

    @property
    def end_pos(self) -> Tuple[int, int]:
        return self.start_pos[0], self.start_pos[1] + len(self.string)

    def __repr__(self):
        return ('TokenInfo(type=%s, string=%r, start_pos=%r, prefix=%r)' %
                self._replace(type=self.type.name))


def tokenize(code: str) -> Iterator[Token]:
    """Generate tokens from the source code (string)."""
    lines = split_lines(code, keepends=True)
    return tokenize_lines(lines)


def tokenize_lines(lines: Iterable[str]) -> Iterator[Token]:
    """
    A generator of tokens; positions are ``(line, column)`` with lines
    counted from 1 and columns from 0.
    """
    prefix = ''
    lnum = 0
    line = ''
    for line in lines:
        lnum += 1
        pos = 0
        max_ = len(line)
        while pos < max_:
            match = pseudo_token.match(line, pos)
            if match is None or match.group(2) is None:
                whitespace = re.match(r'[ \f\t\r\n]*', line[pos:]).group(0)
                prefix += whitespace
                pos += len(whitespace)
                if pos < max_:
                    yield Token(ERRORTOKEN, line[pos], (lnum, pos), prefix)
                    prefix = ''
                    pos += 1
                continue
            prefix += match.group(1)
            string = match.group(2)
            start = match.start(2)
            pos = match.end(2)
            if string[0].isdigit():
                typ = NUMBER
            elif string[0].isalpha() or string[0] == '_':
                typ = NAME
            else:
                typ = OP
            yield Token(typ, string, (lnum, start), prefix)
            prefix = ''
    end_pos = (max(lnum, 1), len(line.rstrip('\r\n')))
    yield Token(ENDMARKER, '', end_pos, prefix)
