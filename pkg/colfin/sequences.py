"""
Descriptors of infinite sequences indexed by ``1, 2, 3, ...``.

Both :class:`SeqDesc` (values in a field) and :class:`IndexSet` (membership
bits) are stored as a finite prefix followed by a nonempty period that repeats
forever. The stored form is canonical: the period is as short as possible and
the prefix is as short as possible for that period, so structural equality is
equality of the denoted sequences.

>>> from colfin.field import QQ
>>> s = SeqDesc.periodic(QQ, [1, 2], prefix=[5])
>>> [str(s[i]) for i in range(1, 6)]
['5', '1', '2', '1', '2']
>>> IndexSet.arithmetic(3, 4).get_code()
'periodic(0, 0, 1, 0)'
"""
from fractions import Fraction
from functools import reduce
from typing import Callable, Dict, Iterable, Iterator, Optional, Tuple

from colfin.field import Field, FieldElem
from colfin.utils import ColfinError, lcm


class ZeroPeriod(ColfinError):
    module = 'matrix-core'

    def __init__(self):
        super().__init__('a periodic descriptor needs a nonempty period')


class InvalidIndex(ColfinError):
    module = 'matrix-core'


def _canonical(prefix: tuple, period: tuple) -> Tuple[tuple, tuple]:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[:d] * (n // d):
            period = period[:d]
            break
    while prefix and prefix[-1] == period[-1]:
        period = period[-1:] + period[:-1]
        prefix = prefix[:-1]
    return prefix, period


class _EventuallyPeriodic:
    _default = None

    def __init__(self, prefix, period):
        prefix = tuple(prefix)
        period = tuple(period)
        if not period:
            raise ZeroPeriod()
        self.prefix, self.period = _canonical(prefix, period)
        self._hash = None

    def value(self, i: int):
        if i < 1:
            return self._default
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.period[(i - len(self.prefix) - 1) % len(self.period)]

    @property
    def threshold(self) -> int:
        """
        Beyond this index the descriptor is purely periodic.
        """
        return len(self.prefix)

    def _aligned(self, *others) -> Tuple[int, int]:
        everything = (self,) + others
        length = max(len(x.prefix) for x in everything)
        period = reduce(lcm, (len(x.period) for x in everything))
        return length, period

    def _rebuild(self, length: int, period: int, fn: Callable[[int], object]):
        raise NotImplementedError

    @classmethod
    def interleave(cls, odd, even):
        """
        The descriptor taking ``odd[m]`` at ``2m - 1`` and ``even[m]`` at
        ``2m``.
        """
        length, period = odd._aligned(even)

        def fn(n):
            return odd.value((n + 1) // 2) if n % 2 else even.value(n // 2)
        return odd._rebuild(2 * length, 2 * period, fn)

    def odd_part(self):
        """
        ``m -> self[2m - 1]``.
        """
        return self._rebuild(len(self.prefix) // 2 + 1, len(self.period),
                             lambda m: self.value(2 * m - 1))

    def even_part(self):
        return self._rebuild(len(self.prefix) // 2 + 1, len(self.period),
                             lambda m: self.value(2 * m))

    def _key(self):
        return self.prefix, self.period

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__,) + self._key())
        return self._hash

    def __repr__(self):
        return '<%s: %s>' % (self.__class__.__name__, self.get_code())

    def get_code(self) -> str:
        raise NotImplementedError


class SeqDesc(_EventuallyPeriodic):
    """
    An eventually periodic sequence ``1, 2, ... -> K``. ``kind`` tells which
    of the three classes it falls into: ``finite`` (finitely many nonzero
    values), ``constant`` (eventually constant with a nonzero tail) or
    ``periodic``.
    """
    def __init__(self, field: Field, prefix=(), period=(0,)):
        self.field = field
        self._default = field.zero
        super().__init__((field(v) for v in prefix), (field(v) for v in period))

    @classmethod
    def zero(cls, field: Field) -> 'SeqDesc':
        return cls(field)

    @classmethod
    def constant(cls, field: Field, value, prefix=()) -> 'SeqDesc':
        return cls(field, prefix, (value,))

    @classmethod
    def periodic(cls, field: Field, period, prefix=()) -> 'SeqDesc':
        return cls(field, prefix, period)

    @classmethod
    def finite(cls, field: Field, entries: Dict[int, object]) -> 'SeqDesc':
        if any(i < 1 for i in entries):
            raise InvalidIndex('sequence indices start at 1')
        length = max(entries, default=0)
        return cls(field, [entries.get(i, 0) for i in range(1, length + 1)])

    @classmethod
    def indicator(cls, field: Field, index_set: 'IndexSet') -> 'SeqDesc':
        one, zero = field.one, field.zero
        return cls(field, [one if b else zero for b in index_set.prefix],
                   [one if b else zero for b in index_set.period])

    def _rebuild(self, length, period, fn):
        return SeqDesc(self.field, [fn(i) for i in range(1, length + 1)],
                       [fn(i) for i in range(length + 1, length + period + 1)])

    def __getitem__(self, i: int) -> FieldElem:
        return self.value(i)

    @property
    def kind(self) -> str:
        if len(self.period) > 1:
            return 'periodic'
        if self.period[0]:
            return 'constant'
        return 'finite'

    def is_zero(self) -> bool:
        return not self.prefix and not self.period[0] and len(self.period) == 1

    def is_finite(self) -> bool:
        return self.kind == 'finite'

    def eventual_value(self) -> Optional[FieldElem]:
        """
        The tail value when the sequence is eventually constant (zero for
        finitely supported sequences), else ``None``.
        """
        if len(self.period) == 1:
            return self.period[0]
        return None

    def entries(self) -> Dict[int, FieldElem]:
        """
        Nonzero values of a finitely supported sequence.
        """
        assert self.is_finite()
        return {i: v for i, v in enumerate(self.prefix, 1) if v}

    def values(self, n: int):
        return [self[i] for i in range(1, n + 1)]

    def _pointwise(self, other, op):
        length, period = self._aligned(other)
        return self._rebuild(length, period, lambda i: op(self[i], other[i]))

    def __add__(self, other):
        if not isinstance(other, SeqDesc):
            return NotImplemented
        return self._pointwise(other, lambda a, b: a + b)

    def __sub__(self, other):
        if not isinstance(other, SeqDesc):
            return NotImplemented
        return self._pointwise(other, lambda a, b: a - b)

    def __neg__(self):
        return SeqDesc(self.field, [-v for v in self.prefix], [-v for v in self.period])

    def __mul__(self, other):
        if isinstance(other, SeqDesc):
            return self._pointwise(other, lambda a, b: a * b)
        c = self.field(other)
        return SeqDesc(self.field, [c * v for v in self.prefix], [c * v for v in self.period])

    __rmul__ = __mul__

    def shift(self, k: int) -> 'SeqDesc':
        """
        ``t[i] = s[i + k]``, reading zero before the start of ``s``.
        """
        length = max(0, len(self.prefix) - k)
        return self._rebuild(length, len(self.period), lambda i: self[i + k])

    def zero_below(self, n: int) -> 'SeqDesc':
        """
        The same sequence with every index below ``n`` set to zero.
        """
        if n <= 1:
            return self
        zero = self.field.zero
        length = max(len(self.prefix), n - 1)
        return self._rebuild(length, len(self.period),
                             lambda i: zero if i < n else self[i])

    def periodic_part(self) -> 'SeqDesc':
        """
        The purely periodic sequence that eventually agrees with this one.
        """
        shift = len(self.prefix) % len(self.period)
        period = self.period[-shift:] + self.period[:-shift] if shift else self.period
        return SeqDesc(self.field, (), period)

    def partial_sums(self) -> Optional['SeqDesc']:
        """
        ``p[i] = s[1] + ... + s[i - 1]``, or ``None`` when that sequence is
        not eventually periodic (the period does not sum to zero).
        """
        if sum(self.period, self.field.zero):
            return None
        length = len(self.prefix) + 1
        sums = [self.field.zero]
        for i in range(1, length + len(self.period)):
            sums.append(sums[-1] + self[i])
        return SeqDesc(self.field, sums[:length], sums[length:])

    def support(self) -> 'IndexSet':
        return IndexSet([bool(v) for v in self.prefix], [bool(v) for v in self.period])

    def _key(self):
        return (self.field,) + super()._key()

    def get_code(self) -> str:
        kind = self.kind
        if kind == 'finite':
            return 'fin(%s)' % ' '.join('%s: %s' % (i, v) for i, v in self.entries().items())
        if kind == 'constant' and not self.prefix:
            return 'const(%s)' % self.period[0]
        period = ', '.join(str(v) for v in self.period)
        if self.prefix:
            return 'periodic(%s; %s)' % (', '.join(str(v) for v in self.prefix), period)
        return 'periodic(%s)' % period


class IndexSet(_EventuallyPeriodic):
    """
    An eventually periodic subset of ``1, 2, 3, ...``. Membership,
    infinitude, complements, unions and intersections are all decidable.
    """
    _default = False

    def __init__(self, prefix=(), period=(False,)):
        super().__init__((bool(b) for b in prefix), (bool(b) for b in period))

    @classmethod
    def all(cls) -> 'IndexSet':
        return cls((), (True,))

    @classmethod
    def empty(cls) -> 'IndexSet':
        return cls()

    @classmethod
    def finite(cls, members: Iterable[int]) -> 'IndexSet':
        members = set(members)
        if any(i < 1 for i in members):
            raise InvalidIndex('set members start at 1')
        return cls([i in members for i in range(1, max(members, default=0) + 1)])

    @classmethod
    def periodic(cls, period, prefix=()) -> 'IndexSet':
        return cls(prefix, period)

    @classmethod
    def arithmetic(cls, start: int, step: int) -> 'IndexSet':
        """
        ``{start, start + step, start + 2 step, ...}``.
        """
        if start < 1 or step < 1:
            raise InvalidIndex('arithmetic progressions need start, step >= 1')
        return cls([False] * (start - 1), [True] + [False] * (step - 1))

    def _rebuild(self, length, period, fn):
        return IndexSet([fn(i) for i in range(1, length + 1)],
                        [fn(i) for i in range(length + 1, length + period + 1)])

    def __contains__(self, i: int) -> bool:
        return self.value(i)

    def is_all(self) -> bool:
        return not self.prefix and self.period == (True,)

    def is_empty(self) -> bool:
        return not self.prefix and self.period == (False,)

    def is_infinite(self) -> bool:
        return any(self.period)

    def complement(self) -> 'IndexSet':
        return IndexSet([not b for b in self.prefix], [not b for b in self.period])

    def _combine(self, other, op):
        length, period = self._aligned(other)
        return self._rebuild(length, period, lambda i: op(i in self, i in other))

    def __or__(self, other):
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other):
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a and not b)

    def shifted(self, k: int) -> 'IndexSet':
        """
        ``{i + k : i in self, i + k >= 1}``.
        """
        length = max(0, len(self.prefix) + k)
        return self._rebuild(length, len(self.period), lambda i: (i - k) in self)

    def rank(self, x: int) -> int:
        """
        Number of members ``<= x``.
        """
        if x < 1:
            return 0
        length, period = len(self.prefix), len(self.period)
        if x <= length:
            return sum(self.prefix[:x])
        full, rest = divmod(x - length, period)
        return sum(self.prefix) + full * sum(self.period) + sum(self.period[:rest])

    def nth(self, t: int) -> Optional[int]:
        """
        The ``t``-th smallest member (counting from 1), ``None`` if the set
        has fewer members.
        """
        if t < 1:
            raise InvalidIndex('members are counted from 1')
        for i, b in enumerate(self.prefix, 1):
            if b:
                t -= 1
                if t == 0:
                    return i
        per = sum(self.period)
        if per == 0:
            return None
        full, within = divmod(t - 1, per)
        positions = [r for r, b in enumerate(self.period, 1) if b]
        return len(self.prefix) + full * len(self.period) + positions[within]

    def members(self) -> Iterator[int]:
        t = 1
        while True:
            i = self.nth(t)
            if i is None:
                return
            yield i
            t += 1

    def members_upto(self, n: int):
        return [i for i in range(1, n + 1) if i in self]

    def min(self) -> Optional[int]:
        return self.nth(1)

    def max(self) -> int:
        assert not self.is_infinite()
        members = self.members_upto(len(self.prefix))
        return members[-1] if members else 0

    def density(self) -> Fraction:
        return Fraction(sum(self.period), len(self.period))

    def alternate(self, odd: bool = True) -> 'IndexSet':
        """
        The members of odd rank (first, third, ...) or of even rank.
        """
        parity = 1 if odd else 0
        return self._rebuild(len(self.prefix), 2 * len(self.period),
                             lambda i: i in self and self.rank(i) % 2 == parity)

    def first_consecutive_pair(self) -> Optional[int]:
        for i in range(1, len(self.prefix) + len(self.period) + 1):
            if i in self and i + 1 in self:
                return i
        return None

    def has_consecutive_pair(self) -> bool:
        return self.first_consecutive_pair() is not None

    def get_code(self) -> str:
        if self.is_all():
            return 'all'
        if not self.is_infinite():
            return 'fin{%s}' % ', '.join(str(i) for i in self.members_upto(len(self.prefix)))
        period = ', '.join('1' if b else '0' for b in self.period)
        if self.prefix:
            return 'periodic(%s; %s)' % (', '.join('1' if b else '0' for b in self.prefix),
                                         period)
        return 'periodic(%s)' % period


