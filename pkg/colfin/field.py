"""
Exact scalars. Three coefficient domains are available:

* :class:`RationalField`, arbitrary precision rationals in lowest terms,
* :class:`PrimeField`, residues modulo a prime ``p < 2**31``,
* :class:`IntegerRing`, the integers. It is not a field (``has_inverses`` is
  false) and only the derivation machinery runs over it.

Elements never mix domains: combining elements of two different domains
raises :class:`FieldMismatch`. Plain Python ints are coerced into the domain
of the other operand.

>>> from colfin.field import QQ, load_field
>>> print(QQ('1/2') + QQ('1/3'))
5/6
>>> F7 = load_field('fp:7')
>>> print(F7(3).inverse())
5 mod 7
"""
import re
from fractions import Fraction
from typing import Dict, Union

from colfin.utils import ColfinError, FieldSpec, parse_field_string

MAX_PRIME = 2 ** 31
"""
Prime fields are supported for characteristics below this bound.
"""

_SCALAR_PATTERN = re.compile(
    r'\s*(-?\d+)(?:\s*/\s*(-?\d+))?(?:\s+mod\s+(\d+))?\s*$'
)


class FieldMismatch(ColfinError):
    module = 'field'


class ZeroInverse(ColfinError):
    module = 'field'

    def __init__(self, field):
        super().__init__('zero has no inverse in %s' % field.name)


class NoInverses(ColfinError):
    module = 'field'


class InvalidScalar(ColfinError):
    module = 'field'


def _is_prime(n: int) -> bool:
    if n <= 1:
        return False
    if n <= 3:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _egcd(a: int, b: int):
    if a == 0:
        return b, 0, 1
    g, x, y = _egcd(b % a, a)
    return g, y - (b // a) * x, x


class Field:
    """
    A coefficient domain. Instances are compared by kind and characteristic,
    so two separately created ``PrimeField(5)`` objects are the same field.
    """
    name = ''
    field_id = ''
    characteristic = 0
    has_inverses = True

    def __call__(self, value) -> 'FieldElem':
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldMismatch('cannot use %s in %s' % (value, self.name))
            return value
        if isinstance(value, str):
            return self.parse(value)
        return FieldElem(self._normalize(self._coerce(value)), self)

    @property
    def zero(self) -> 'FieldElem':
        return FieldElem(self._normalize(0), self)

    @property
    def one(self) -> 'FieldElem':
        return FieldElem(self._normalize(1), self)

    def parse(self, text: str) -> 'FieldElem':
        """
        Reads the text forms ``n``, ``n/d`` and ``k mod p``.
        """
        match = _SCALAR_PATTERN.match(text)
        if match is None:
            raise InvalidScalar('%r is not a scalar' % text)
        numerator, denominator, modulus = match.groups()
        if modulus is not None and int(modulus) != self.characteristic:
            raise FieldMismatch('%r is not an element of %s' % (text, self.name))
        value = self(int(numerator))
        if denominator is not None:
            value = value * self(int(denominator)).inverse()
        return value

    def _coerce(self, value):
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError('cannot coerce %r into %s' % (value, self.name))
        return value

    def _normalize(self, raw):
        raise NotImplementedError

    def _inverse(self, raw):
        raise NotImplementedError

    def render(self, raw) -> str:
        return str(raw)

    def __eq__(self, other):
        return (type(self) is type(other)
                and self.characteristic == other.characteristic)

    def __hash__(self):
        return hash((type(self).__name__, self.characteristic))

    def __repr__(self):
        return '<%s>' % self.name


class RationalField(Field):
    name = 'Q'
    field_id = 'q'

    def _normalize(self, raw):
        return Fraction(raw)

    def _inverse(self, raw):
        return 1 / raw

    def render(self, raw):
        if raw.denominator == 1:
            return str(raw.numerator)
        return '%s/%s' % (raw.numerator, raw.denominator)


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p) or p >= MAX_PRIME:
            raise InvalidScalar('%r is not a prime below 2**31' % (p,))
        self.characteristic = p
        self.name = 'F_%s' % p
        self.field_id = 'fp:%s' % p

    def _normalize(self, raw):
        if isinstance(raw, Fraction):
            if raw.denominator % self.characteristic == 0:
                raise ZeroInverse(self)
            inv = _egcd(raw.denominator % self.characteristic, self.characteristic)[1]
            return raw.numerator * inv % self.characteristic
        return raw % self.characteristic

    def _inverse(self, raw):
        g, x, _ = _egcd(raw, self.characteristic)
        assert g == 1
        return x % self.characteristic

    def render(self, raw):
        return '%s mod %s' % (raw, self.characteristic)


class IntegerRing(Field):
    name = 'Z'
    field_id = 'z'
    has_inverses = False

    def _normalize(self, raw):
        if isinstance(raw, Fraction):
            if raw.denominator != 1:
                raise InvalidScalar('%s is not an integer' % raw)
            return raw.numerator
        return raw

    def _inverse(self, raw):
        if raw not in (1, -1):
            raise NoInverses('%s is not invertible in Z' % raw)
        return raw

    def parse(self, text):
        match = _SCALAR_PATTERN.match(text)
        if match is not None and match.group(2) is not None:
            raise InvalidScalar('%r is not an integer' % text)
        return super().parse(text)


class FieldElem:
    """
    An immutable element of a :class:`Field`. ``value`` holds the canonical
    payload: a ``Fraction`` in lowest terms, a residue in ``[0, p-1]`` or an
    int.
    """
    __slots__ = ('value', 'field')

    def __init__(self, value, field: Field):
        self.value = value
        self.field = field

    def _other(self, other) -> 'FieldElem':
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch('cannot combine elements of %s and %s'
                                    % (self.field.name, other.field.name))
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field(other)
        return NotImplemented

    def _wrap(self, raw):
        return FieldElem(self.field._normalize(raw), self.field)

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.value - other.value)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** -exponent
        result = self.field.one
        for _ in range(exponent):
            result = result * self
        return result

    def inverse(self) -> 'FieldElem':
        if not self:
            raise ZeroInverse(self.field)
        return self._wrap(self.field._inverse(self.value))

    def is_negative(self) -> bool:
        """
        Whether the canonical text form starts with a minus sign.
        """
        return not isinstance(self.field, PrimeField) and self.value < 0

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.value == self.field(other).value
            except ColfinError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return self.field.render(self.value)

    def __repr__(self):
        return '<%s: %s>' % (self.__class__.__name__, self)


def f_add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def f_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def f_inv(a: FieldElem) -> FieldElem:
    return a.inverse()


QQ = RationalField()
ZZ = IntegerRing()

_loaded_fields: Dict[FieldSpec, Field] = {}


def load_field(field: Union[str, FieldSpec, Field, None] = None) -> Field:
    """
    Returns the field described by ``field``: a :class:`Field` instance, a
    spec from :func:`colfin.utils.parse_field_string`, or its text form.
    """
    if isinstance(field, Field):
        return field
    if not isinstance(field, FieldSpec):
        field = parse_field_string(field)
    try:
        return _loaded_fields[field]
    except KeyError:
        if field.kind == 'q':
            loaded = QQ
        elif field.kind == 'z':
            loaded = ZZ
        else:
            loaded = PrimeField(field.characteristic)
        return _loaded_fields.setdefault(field, loaded)
