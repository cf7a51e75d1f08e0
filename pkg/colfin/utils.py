import re
from math import gcd
from typing import NamedTuple, Optional, Sequence

DEFAULT_WINDOW = 60
"""
Side length of the square window every verification runs on unless told
otherwise. Large enough to exceed the support bounds of all bundled fixtures.
"""


class ColfinError(Exception):
    """
    Base class of every domain error raised by colfin.

    ``module`` names the part of the library the error belongs to and is what
    the command line prints next to the error name.
    """
    module = 'colfin'

    def __init__(self, message):
        super().__init__(message)
        self.message = message

    @property
    def name(self):
        return self.__class__.__name__

    def __str__(self):
        return self.message


class Version(NamedTuple):
    major: int
    minor: int
    micro: int


class FieldSpec(NamedTuple):
    kind: str
    characteristic: Optional[int] = None


def split_lines(string: str, keepends: bool = False) -> Sequence[str]:
    r"""
    Splits ``\n``, ``\r\n`` and ``\r`` only. Returns ``[""]`` for an empty
    string, so that positions reported by the tokenizer always point into an
    existing line.

    >>> split_lines('E(1,1) +\nI')
    ['E(1,1) +', 'I']
    """
    if keepends:
        lst = string.splitlines(True)
        if string.endswith('\n') or string.endswith('\r') or string == '':
            lst.append('')
        return lst
    return re.split(r'\n|\r\n|\r', string)


def version_info() -> Version:
    """
    Returns a namedtuple of colfin's version, similar to Python's
    ``sys.version_info``.
    """
    from colfin import __version__
    tupl = re.findall(r'[a-z]+|\d+', __version__)
    return Version(*[x if i == 3 else int(x) for i, x in enumerate(tupl)])


def _parse_field(text) -> FieldSpec:
    match = re.match(r'\s*(q|z|fp:(\d+))\s*$', text, re.IGNORECASE)
    if match is None:
        raise ValueError('The given field is not in the right format. '
                         'Use "q", "z" or something like "fp:5".')
    if match.group(2) is not None:
        return FieldSpec('fp', int(match.group(2)))
    return FieldSpec(match.group(1).lower())


def parse_field_string(field: str = None) -> FieldSpec:
    """
    Checks for a valid field description (``q``, ``z`` or ``fp:<p>``) and
    returns the corresponding spec. ``None`` means the rationals.

    >>> parse_field_string('fp:7')
    FieldSpec(kind='fp', characteristic=7)
    """
    if field is None:
        return FieldSpec('q')
    if not isinstance(field, str):
        raise TypeError('field must be a string like "q" or "fp:5"')

    return _parse_field(field)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
