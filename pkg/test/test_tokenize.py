import pytest

from colfin.dsl.token import DslTokenTypes
from colfin.dsl.tokenize import tokenize

# To make it easier to access some of the token types, just put them here.
NAME = DslTokenTypes.NAME
NUMBER = DslTokenTypes.NUMBER
OP = DslTokenTypes.OP
ERRORTOKEN = DslTokenTypes.ERRORTOKEN
ENDMARKER = DslTokenTypes.ENDMARKER


def _get_token_list(string):
    return list(tokenize(string))


def test_simple():
    tokens = _get_token_list('E(1, 2)')
    assert [t.type for t in tokens] == [NAME, OP, NUMBER, OP, NUMBER, OP, ENDMARKER]
    assert [t.string for t in tokens] == ['E', '(', '1', ',', '2', ')', '']
    assert tokens[4].prefix == ' '
    assert tokens[4].start_pos == (1, 5)
    assert tokens[4].end_pos == (1, 6)


def test_scalar_forms():
    strings = [t.string for t in _get_token_list('-1/3 * 4 mod 7')]
    assert strings == ['-', '1', '/', '3', '*', '4', 'mod', '7', '']


def test_names_and_numbers():
    tokens = _get_token_list('shift12 12shift')
    assert [(t.type, t.string) for t in tokens[:-1]] == [
        (NAME, 'shift12'), (NUMBER, '12'), (NAME, 'shift')
    ]


def test_multiple_lines():
    tokens = _get_token_list('E(1,2) +\n  [I, E(2,1)]')
    plus, bracket = tokens[6], tokens[7]
    assert plus.string == '+'
    assert bracket.string == '['
    assert bracket.start_pos == (2, 2)
    assert bracket.prefix == '\n  '


@pytest.mark.parametrize(('code', 'position', 'prefix'), [
    ('', (1, 0), ''),
    ('I', (1, 1), ''),
    ('I  ', (1, 3), '  '),
    ('E(1,1)\n', (2, 0), '\n'),
    ('I\r\n', (2, 0), '\r\n'),
    ('I\n  ', (2, 2), '\n  '),
])
def test_endmarker(code, position, prefix):
    endmarker = _get_token_list(code)[-1]
    assert endmarker.type == ENDMARKER
    assert endmarker.start_pos == position
    assert endmarker.prefix == prefix


def test_error_token():
    tokens = _get_token_list('E(1,2) ? I')
    error = tokens[6]
    assert error.type == ERRORTOKEN
    assert error.string == '?'
    assert error.start_pos == (1, 7)
    assert error.prefix == ' '
    assert tokens[7].string == 'I'
    assert tokens[7].prefix == ' '


def test_unicode_is_an_error():
    tokens = _get_token_list('α')
    assert tokens[0].type == ERRORTOKEN
    assert tokens[1].type == ENDMARKER


def test_token_repr():
    token = _get_token_list('I')[0]
    assert repr(token) == "TokenInfo(type=NAME, string='I', start_pos=(1, 0), prefix='')"
