"""
Canonical forms.

Every normalizable expression is rewritten into a linear form

    alpha*E + sum over k of (band k) + sum over r of (row r)

where band ``k`` is ``sum v_k(i) E_{i,i+k}`` for an eventually periodic
sequence ``v_k`` and row ``r`` is an eventually periodic infinite row. The
rewrite rules are registered per expression type on :class:`Normalizer`;
products of bands and rows are again bands and rows, so sums, products and
brackets of primitives never leave the fragment. Lazily evaluated matrices
have no rule and make the expression non-normalizable.

The linear form is then split into the unique decomposition

    alpha*E + (finitely many rows) + (tail)

where the tail holds the purely periodic parts of the bands: a diagonal that
is not eventually constant and shifts along infinite index sets. The tail is
empty exactly when the matrix lies in ``d_sc + gl_fr``.

>>> from colfin.tree import ScalarE, Basis
>>> form = normalize(ScalarE(2) + Basis(1, 1))
>>> print(form.alpha, form.fr_trace, form.tail)
2 1 ()
"""
import logging
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from colfin.field import Field, FieldElem
from colfin.sequences import SeqDesc
from colfin.tree import (Diag, FiniteLit, NodeOrLeaf, RowMat, ScalarE, Shift,
                         Sum, Zero)
from colfin.utils import ColfinError

LOG = logging.getLogger(__name__)


class NotNormalizable(ColfinError):
    """
    Raised with the offending subterm when an expression uses a construction
    outside the closed rewrite fragment.
    """
    module = 'matrix-core'

    def __init__(self, message, node):
        super().__init__(message)
        self.node = node


class LinearForm:
    """
    ``alpha*E`` plus bands ``{k: v_k}`` plus rows ``{r: s_r}``, all with
    eventually periodic sequences. Closed under sums and products.
    """
    def __init__(self, field: Field, alpha: FieldElem = None,
                 bands: Dict[int, SeqDesc] = None, rows: Dict[int, SeqDesc] = None):
        self.field = field
        self.alpha = field.zero if alpha is None else alpha
        self.bands: Dict[int, SeqDesc] = {}
        self.rows: Dict[int, SeqDesc] = {}
        for k, seq in (bands or {}).items():
            self._add_band(k, seq)
        for r, seq in (rows or {}).items():
            self._add_row(r, seq)

    @classmethod
    def from_entries(cls, field, entries) -> 'LinearForm':
        by_row: Dict[int, Dict[int, FieldElem]] = {}
        for (i, j), value in entries:
            row = by_row.setdefault(i, {})
            row[j] = row.get(j, field.zero) + value
        return cls(field, rows={i: SeqDesc.finite(field, row) for i, row in by_row.items()})

    def _add_band(self, k: int, seq: SeqDesc) -> None:
        total = seq if k not in self.bands else self.bands[k] + seq
        total = total.zero_below(1 - k)
        if total.is_zero():
            self.bands.pop(k, None)
        else:
            self.bands[k] = total

    def _add_row(self, r: int, seq: SeqDesc) -> None:
        total = seq if r not in self.rows else self.rows[r] + seq
        if total.is_zero():
            self.rows.pop(r, None)
        else:
            self.rows[r] = total

    def copy(self) -> 'LinearForm':
        return LinearForm(self.field, self.alpha, self.bands, self.rows)

    def __add__(self, other: 'LinearForm') -> 'LinearForm':
        result = self.copy()
        result.alpha = result.alpha + other.alpha
        for k, seq in other.bands.items():
            result._add_band(k, seq)
        for r, seq in other.rows.items():
            result._add_row(r, seq)
        return result

    def scaled(self, c: FieldElem) -> 'LinearForm':
        return LinearForm(self.field, self.alpha * c,
                          {k: seq * c for k, seq in self.bands.items()},
                          {r: seq * c for r, seq in self.rows.items()})

    def __sub__(self, other: 'LinearForm') -> 'LinearForm':
        return self + other.scaled(-self.field.one)

    def _without_alpha(self) -> 'LinearForm':
        return LinearForm(self.field, None, self.bands, self.rows)

    def __mul__(self, other: 'LinearForm') -> 'LinearForm':
        result = LinearForm(self.field, self.alpha * other.alpha)
        if self.alpha:
            result = result + other._without_alpha().scaled(self.alpha)
        if other.alpha:
            result = result + self._without_alpha().scaled(other.alpha)

        for k, v in self.bands.items():
            for l, u in other.bands.items():
                result._add_band(k + l, v * u.shift(k))
            for r, s in other.rows.items():
                i = r - k
                if i >= 1 and v[i]:
                    result._add_row(i, s * v[i])
        for r, s in self.rows.items():
            for l, u in other.bands.items():
                result._add_row(r, (s * u).shift(-l))
            for r2, s2 in other.rows.items():
                if s[r2]:
                    result._add_row(r, s2 * s[r2])
        return result

    def canonical(self) -> 'CanonicalForm':
        field = self.field
        rows = dict(self.rows)
        tail: List[NodeOrLeaf] = []

        def add_entries(seq, offset):
            for i, value in seq.entries().items():
                entry = SeqDesc.finite(field, {i + offset: value})
                total = entry if i not in rows else rows[i] + entry
                if total.is_zero():
                    rows.pop(i, None)
                else:
                    rows[i] = total

        diagonal = self.bands.get(0, SeqDesc.zero(field)) + SeqDesc.constant(field, self.alpha)
        periodic = diagonal.periodic_part()
        alpha = periodic.eventual_value()
        if alpha is None:
            alpha = field.zero
            tail.append(Diag(periodic))
        else:
            periodic = SeqDesc.constant(field, alpha)
        add_entries(diagonal - periodic, 0)

        for k in sorted(self.bands):
            if k == 0:
                continue
            v = self.bands[k]
            periodic = v.periodic_part()
            add_entries(v - periodic.zero_below(1 - k), k)
            if not periodic.is_zero():
                tail.append(_tail_shift(k, periodic))
        return CanonicalForm(field, alpha, rows, tuple(tail))


def _tail_shift(k: int, periodic: SeqDesc) -> Shift:
    support = periodic.support()
    values = {v for v in periodic.period if v}
    if len(values) == 1:
        return Shift(k, support, SeqDesc.constant(periodic.field, values.pop()))
    return Shift(k, support, periodic)


class CanonicalForm:
    """
    The unique decomposition ``alpha*E + fr + sum(tail)``: ``fr`` maps finitely
    many row indices to their rows, ``tail`` holds primitives that lie outside
    ``d_sc + gl_fr``.
    """
    def __init__(self, field: Field, alpha: FieldElem, fr: Dict[int, SeqDesc],
                 tail: Tuple[NodeOrLeaf, ...]):
        self.field = field
        self.alpha = alpha
        self.fr = dict(sorted(fr.items()))
        self.tail = tail

    @property
    def fr_trace(self) -> FieldElem:
        """
        The sum of the diagonal entries of the finite-row part.
        """
        return sum((seq[r] for r, seq in self.fr.items()), self.field.zero)

    def is_zero(self) -> bool:
        return not self.alpha and not self.fr and not self.tail

    def is_row_finite(self) -> bool:
        return all(seq.is_finite() for seq in self.fr.values())

    def diagonal(self) -> SeqDesc:
        """
        The full main diagonal as a sequence.
        """
        diagonal = SeqDesc.constant(self.field, self.alpha)
        for node in self.tail:
            if isinstance(node, Diag):
                diagonal = diagonal + node.seq
        entries = {r: seq[r] for r, seq in self.fr.items()}
        return diagonal + SeqDesc.finite(self.field, entries)

    def row(self, i: int) -> SeqDesc:
        """
        Row ``i`` of the denoted matrix.
        """
        field = self.field
        row = self.fr.get(i, SeqDesc.zero(field)) + SeqDesc.finite(field, {i: self.alpha})
        for node in self.tail:
            if isinstance(node, Diag):
                row = row + SeqDesc.finite(field, {i: node.seq[i]})
            elif i in node.index_set and i + node.offset >= 1:
                row = row + SeqDesc.finite(field, {i + node.offset: node.weights[i]})
        return row

    def offdiagonal_fr(self) -> Dict[int, SeqDesc]:
        """
        The finite-row part with its diagonal entries removed.
        """
        result = {}
        for r, seq in self.fr.items():
            seq = seq - SeqDesc.finite(self.field, {r: seq[r]})
            if not seq.is_zero():
                result[r] = seq
        return result

    def to_expr(self) -> NodeOrLeaf:
        """
        The canonical representative: ``alpha*E``, one literal for all finite
        rows, one row matrix per infinite row, then the tail.
        """
        terms: List[NodeOrLeaf] = []
        if self.alpha:
            terms.append(ScalarE(self.alpha))
        entries = {}
        infinite = []
        for r, seq in self.fr.items():
            if seq.is_finite():
                entries.update({(r, j): v for j, v in seq.entries().items()})
            else:
                infinite.append(RowMat(r, seq))
        if entries:
            terms.append(FiniteLit(entries, self.field))
        terms.extend(infinite)
        terms.extend(self.tail)
        if not terms:
            return Zero(self.field)
        if len(terms) == 1:
            return terms[0]
        return Sum(terms)

    def __eq__(self, other):
        return (isinstance(other, CanonicalForm) and self.field == other.field
                and self.alpha == other.alpha and self.fr == other.fr
                and self.tail == other.tail)

    def __hash__(self):
        return hash((self.alpha, tuple(self.fr.items()), self.tail))

    def __repr__(self):
        return '<%s: %s>' % (self.__class__.__name__, self.to_expr().get_code())


class _NormalizerMeta(type):
    def __new__(cls, name, bases, dct):
        new_cls = type.__new__(cls, name, bases, dct)
        new_cls.rule_type_classes = {}
        return new_cls


class Normalizer(metaclass=_NormalizerMeta):
    """
    Walks an expression bottom-up, converting every node with the rule
    registered for its type.
    """
    def __init__(self, field: Field):
        self.field = field
        self._rules = self._instantiate_rules()
        self._memo: Dict[NodeOrLeaf, LinearForm] = {}

    def _instantiate_rules(self):
        dct = {}
        for base in type(self).mro():
            rules_map = getattr(base, 'rule_type_classes', {})
            for type_, rule_cls in rules_map.items():
                dct.setdefault(type_, rule_cls(self))
        return dct

    def walk(self, node: NodeOrLeaf) -> CanonicalForm:
        return self.visit(node).canonical()

    def visit(self, node: NodeOrLeaf) -> LinearForm:
        try:
            return self._memo[node]
        except KeyError:
            pass
        try:
            rule = self._rules[node.type]
        except KeyError:
            self.add_issue(node, 'no rewrite rule for %r' % node.type)
        form = rule.convert(node)
        self._memo[node] = form
        return form

    def add_issue(self, node, message):
        LOG.debug('not normalizable: %s', message)
        raise NotNormalizable('%s in %s' % (message, node.get_code()), node)

    @classmethod
    def register_rule(cls, *, type=None, types=()):
        """
        Use it as a class decorator::

            @Normalizer.register_rule(type='diag')
            class DiagRule(Rule):
                def convert(self, node):
                    ...
        """
        types = list(types)
        if type is not None:
            types.append(type)
        if not types:
            raise ValueError("You must register at least something.")

        def decorator(rule_cls):
            for t in types:
                cls.rule_type_classes[t] = rule_cls
            return rule_cls
        return decorator


class Rule:
    message: Optional[str] = None

    def __init__(self, normalizer: Normalizer):
        self._normalizer = normalizer

    @property
    def field(self):
        return self._normalizer.field

    def convert(self, node) -> LinearForm:
        raise NotImplementedError()

    def visit(self, node) -> LinearForm:
        return self._normalizer.visit(node)

    def add_issue(self, node, message=None):
        if message is None:
            message = self.message
            if message is None:
                raise ValueError("The message on the class is not set.")
        self._normalizer.add_issue(node, message)


@Normalizer.register_rule(type='zero')
class _ZeroRule(Rule):
    def convert(self, node):
        return LinearForm(self.field)


@Normalizer.register_rule(type='scalar')
class _ScalarRule(Rule):
    def convert(self, node):
        return LinearForm(self.field, node.value)


@Normalizer.register_rule(type='basis')
class _BasisRule(Rule):
    def convert(self, node):
        return LinearForm.from_entries(self.field, [((node.i, node.j), self.field.one)])


@Normalizer.register_rule(type='finite')
class _FiniteRule(Rule):
    def convert(self, node):
        return LinearForm.from_entries(self.field, node.entries.items())


@Normalizer.register_rule(type='diag')
class _DiagRule(Rule):
    def convert(self, node):
        return LinearForm(self.field, bands={0: node.seq})


@Normalizer.register_rule(type='shift')
class _ShiftRule(Rule):
    def convert(self, node):
        seq = node.weights * SeqDesc.indicator(self.field, node.index_set)
        return LinearForm(self.field, bands={node.offset: seq})


@Normalizer.register_rule(type='row')
class _RowRule(Rule):
    def convert(self, node):
        return LinearForm(self.field, rows={node.row: node.seq})


@Normalizer.register_rule(type='pairing')
class _PairingRule(Rule):
    message = 'a pairing of two infinite sets has infinitely many rows'

    def convert(self, node):
        if not node.is_finite():
            self.add_issue(node)
        return LinearForm.from_entries(
            self.field, [(pair, self.field.one) for pair in node.pairs()]
        )


@Normalizer.register_rule(type='sum')
class _SumRule(Rule):
    def convert(self, node):
        form = LinearForm(self.field)
        for child in node.children:
            form = form + self.visit(child)
        return form


@Normalizer.register_rule(type='scale')
class _ScaleRule(Rule):
    def convert(self, node):
        return self.visit(node.children[0]).scaled(node.coefficient)


@Normalizer.register_rule(type='prod')
class _ProdRule(Rule):
    def convert(self, node):
        left, right = node.children
        return self.visit(left) * self.visit(right)


@Normalizer.register_rule(type='bracket')
class _BracketRule(Rule):
    def convert(self, node):
        left, right = (self.visit(c) for c in node.children)
        return left * right - right * left


@lru_cache(maxsize=1024)
def normalize(expr: NodeOrLeaf) -> CanonicalForm:
    """
    The canonical form of ``expr``. Raises :class:`NotNormalizable` for
    expressions outside the rewrite fragment.
    """
    if expr.side == 'z':
        raise NotNormalizable('Z-indexed matrices have no canonical form', expr)
    return Normalizer(expr.field).walk(expr)
