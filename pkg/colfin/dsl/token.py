from enum import Enum
from typing import Optional


class TokenType:
    name: str
    fixed_description: Optional[str]

    def __init__(self, name: str, fixed_description: Optional[str] = None):
        self.name = name
        self.fixed_description = fixed_description

    def describe(self, string: str) -> str:
        """How a token of this type is named in error messages."""
        if self.fixed_description is not None:
            return self.fixed_description
        return repr(string)

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, self.name)


class DslTokenTypes(Enum):
    NUMBER = TokenType('NUMBER')
    NAME = TokenType('NAME')
    OP = TokenType('OP')
    ERRORTOKEN = TokenType('ERRORTOKEN')
    ENDMARKER = TokenType('ENDMARKER', fixed_description='end of input')
