"""
Certificates of ideal membership.

A :class:`BracketChain` starts from a seed matrix assumed to lie in an ideal
and derives new members with two kinds of steps:

* ``bracket``: ``[lhs, rhs] = result`` where one operand (the *ideal side*) is
  the seed or an earlier result and the other is any matrix,
* ``combine``: ``result = sum of c * (earlier result or seed)``.

Every step is checked by :func:`verify_chain` with exact window evaluation,
so a chain is a machine-checkable proof that its target lies in the ideal
generated by the seed.

The constructions follow the proof that the ideals of the column-finite
algebra are exactly the seven of :mod:`colfin.ideals`:

* :func:`eij_from_diag` and :func:`eij_from_offdiag` extract a matrix unit
  from any non-scalar element, :func:`express_in_slfr` then reaches every
  trace-zero finite-row matrix. Brackets of matrix units are used directly
  (``E_mn = [E_mj, E_jn]``) instead of spanning with crosses of units, which
  gives short chains for the same conclusion.
* For elements outside ``d_sc + gl_fr``, :func:`extract_diag` isolates a
  diagonal with infinitely many changes, :func:`superdiag_from_diag` turns it
  into a superdiagonal band, :func:`enlarge_set` and
  :func:`complete_superdiag` grow the band to the full shift
  ``S = sum E_{i,i+1}``, and :func:`solve_shift_bracket` writes every matrix
  as ``[X, S]``.

``extract_diag`` picks the rows of its band along an arithmetic progression
spaced so widely that no other band, no finite row and no other selected row
interferes. The elimination of stray entries that a greedy selection would
need never has anything to eliminate. A band below the diagonal is handled
with mirrored brackets instead of a transpose.

In ``enlarge_set`` the second bracket uses ``sum E_{f(i)+1, i+1}``; with
``sum E_{f(i)+1, i}`` the bracket would land one column to the left of the
superdiagonal.
"""
import logging
from math import ceil
from typing import Dict, List, NamedTuple, Optional, Tuple

from colfin.field import QQ, Field, FieldElem, NoInverses
from colfin.ideals import IdealName, classify, leq
from colfin.matrix import first_difference
from colfin.normalizer import CanonicalForm, normalize
from colfin.sequences import IndexSet, SeqDesc
from colfin.tree import (Basis, Bracket, Diag, FiniteLit, NodeOrLeaf, Pairing,
                         RowMat, Scale, Shift, ShiftSolution, Sum, Zero)
from colfin.utils import DEFAULT_WINDOW, ColfinError

LOG = logging.getLogger(__name__)

SEED = -1
"""
Step reference denoting the seed of a chain.
"""


class WitnessError(ColfinError):
    module = 'witnesses'


class NotDiagonal(WitnessError):
    pass


class EqualDiagonalEntries(WitnessError):
    pass


class ZeroPivot(WitnessError):
    pass


class NotInSlFr(WitnessError):
    pass


class UnsupportedTail(WitnessError):
    pass


class FiniteDisagreement(WitnessError):
    pass


class NotInfinite(WitnessError):
    pass


class GapPropertyViolated(WitnessError):
    pass


class ChainStep(NamedTuple):
    kind: str
    result: NodeOrLeaf
    note: str = ''
    lhs: Optional[NodeOrLeaf] = None
    rhs: Optional[NodeOrLeaf] = None
    ideal_side: Optional[str] = None
    ideal_ref: Optional[int] = None
    terms: Tuple[Tuple[FieldElem, int], ...] = ()


def _ref_code(ref: int) -> str:
    return 'seed' if ref == SEED else '#%s' % (ref + 1)


class BracketChain:
    """
    A seed, a target and the steps leading from one to the other. The last
    step's result (the seed for an empty chain) must equal the target.
    """
    def __init__(self, target: NodeOrLeaf, steps=(), seed: NodeOrLeaf = None):
        self.target = target
        self.steps: Tuple[ChainStep, ...] = tuple(steps)
        self.seed = seed

    def result_of(self, ref: int) -> NodeOrLeaf:
        if ref == SEED:
            return self.seed
        return self.steps[ref].result

    @property
    def final(self) -> Optional[NodeOrLeaf]:
        if self.steps:
            return self.steps[-1].result
        return self.seed

    def then(self, other: 'BracketChain') -> 'BracketChain':
        """
        Appends ``other``, whose seed is taken to be this chain's final
        result.
        """
        offset = len(self.steps)
        mapped_seed = offset - 1 if self.steps else SEED

        def remap(ref):
            return mapped_seed if ref == SEED else ref + offset

        steps = list(self.steps)
        for step in other.steps:
            steps.append(step._replace(
                ideal_ref=None if step.ideal_ref is None else remap(step.ideal_ref),
                terms=tuple((c, remap(ref)) for c, ref in step.terms),
            ))
        seed = self.seed if self.seed is not None else other.seed
        return BracketChain(other.target, steps, seed)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __eq__(self, other):
        return (isinstance(other, BracketChain) and self.target == other.target
                and self.steps == other.steps and self.seed == other.seed)

    def get_code(self) -> str:
        """
        A text rendering, one line per step.
        """
        lines = []
        if self.seed is not None:
            lines.append('seed: %s' % self.seed.get_code())
        for number, step in enumerate(self.steps, 1):
            if step.kind == 'bracket':
                line = '%s. [%s, %s] = %s' % (number, step.lhs.get_code(),
                                              step.rhs.get_code(), step.result.get_code())
            else:
                combination = ' + '.join('%s * %s' % (c, _ref_code(ref)) for c, ref in step.terms)
                line = '%s. %s = %s' % (number, combination, step.result.get_code())
            if step.note:
                line += '    (%s)' % step.note
            lines.append(line)
        lines.append('target: %s' % self.target.get_code())
        return '\n'.join(lines)

    def __repr__(self):
        return '<%s: %s steps to %s>' % (type(self).__name__, len(self.steps),
                                         self.target.get_code())


class _ChainBuilder:
    def __init__(self, seed: NodeOrLeaf):
        self.seed = seed
        self.steps: List[ChainStep] = []

    @property
    def last(self) -> int:
        return len(self.steps) - 1 if self.steps else SEED

    def result(self, ref: int) -> NodeOrLeaf:
        return self.seed if ref == SEED else self.steps[ref].result

    def bracket(self, lhs, rhs, result, note='', ideal_side='lhs', ideal_ref=None) -> int:
        if ideal_ref is None:
            ideal_ref = self.last
        self.steps.append(ChainStep('bracket', result, note, lhs, rhs, ideal_side, ideal_ref))
        return len(self.steps) - 1

    def combine(self, terms, result, note='') -> int:
        self.steps.append(ChainStep('combine', result, note, terms=tuple(terms)))
        return len(self.steps) - 1

    def build(self, target: NodeOrLeaf = None) -> BracketChain:
        if target is None:
            target = self.result(self.last)
        return BracketChain(target, self.steps, self.seed)


class ChainVerdict(NamedTuple):
    passed: bool
    step: Optional[int] = None
    entry: Optional[Tuple[int, int]] = None
    reason: str = ''
    expected: Optional[FieldElem] = None
    actual: Optional[FieldElem] = None

    def __str__(self):
        if self.passed:
            return 'PASS'
        where = 'target' if self.step is None else 'step %s' % self.step
        text = 'FAIL at %s' % where
        if self.entry is not None:
            text += ', entry (%s, %s)' % self.entry
        return '%s: %s' % (text, self.reason)


def _compare(claimed, computed, depth, step, reason):
    position = first_difference(claimed, computed, depth)
    if position is None:
        return None
    i, j = position
    return ChainVerdict(False, step, position, reason,
                        claimed.entry(i, j), computed.entry(i, j))


def verify_chain(chain: BracketChain, depth: int = DEFAULT_WINDOW) -> ChainVerdict:
    """
    Re-evaluates every step on the ``depth x depth`` window. Columns are
    evaluated exactly, so the window needs no padding: column ``j`` of a
    product sums over the complete support of column ``j`` of the right
    factor.
    """
    for index, step in enumerate(chain.steps):
        number = index + 1
        refs = [step.ideal_ref] if step.kind == 'bracket' else [r for _, r in step.terms]
        for ref in refs:
            if ref is None or not (ref == SEED and chain.seed is not None or 0 <= ref < index):
                return ChainVerdict(False, number, reason='reference %r is not an earlier result'
                                    % (ref,))
        if step.kind == 'bracket':
            operand = step.lhs if step.ideal_side == 'lhs' else step.rhs
            member = chain.result_of(step.ideal_ref)
            if operand != member and first_difference(operand, member, depth) is not None:
                return ChainVerdict(False, number, reason='the %s operand is not %s'
                                    % (step.ideal_side, _ref_code(step.ideal_ref)))
            computed = Bracket(step.lhs, step.rhs)
            failure = _compare(step.result, computed, depth, number, 'bracket mismatch')
        else:
            computed = Sum([Scale(c, chain.result_of(ref)) for c, ref in step.terms]) \
                if step.terms else Zero(step.result.field)
            failure = _compare(step.result, computed, depth, number, 'combination mismatch')
        if failure is not None:
            return failure

    final = chain.final
    if final is None:
        final = Zero(chain.target.field)
    failure = _compare(chain.target, final, depth, None, 'target mismatch')
    if failure is not None:
        return failure
    return ChainVerdict(True)


def _require_inverses(field: Field) -> None:
    if not field.has_inverses:
        raise NoInverses('this construction divides; %s has no inverses' % field.name)


def _canonical(expr: NodeOrLeaf) -> NodeOrLeaf:
    return normalize(expr).to_expr()


def _is_diagonal(form: CanonicalForm) -> bool:
    return not form.offdiagonal_fr() and all(isinstance(t, Diag) for t in form.tail)


def _scan_length(form: CanonicalForm) -> int:
    length = 2
    for r, seq in form.fr.items():
        length = max(length, r + len(seq.prefix) + len(seq.period))
    for node in form.tail:
        if isinstance(node, Shift):
            length = max(length, len(node.index_set.prefix) + len(node.index_set.period)
                         + len(node.weights.prefix) + len(node.weights.period)
                         + abs(node.offset))
        else:
            length = max(length, len(node.seq.prefix) + len(node.seq.period))
    return length + max(form.fr, default=0) + 2


def _offdiagonal_pivot(a: NodeOrLeaf, form: CanonicalForm) -> Optional[Tuple[int, int]]:
    n = _scan_length(form)
    found = [(i, j) for j in range(1, n + 1) for i in a._column(j) if i != j]
    return min(found) if found else None


def _diagonal_change(form: CanonicalForm) -> Optional[int]:
    d = form.diagonal()
    for i in range(1, d.threshold + len(d.period) + 2):
        if d[i] != d[i + 1]:
            return i
    return None


def eij_from_diag(a: NodeOrLeaf, i: int, j: int) -> BracketChain:
    """
    ``[A, c E_ij] = E_ij`` for a diagonal ``A`` with ``c = 1 / (a_ii - a_jj)``.
    """
    _require_inverses(a.field)
    form = normalize(a)
    if not _is_diagonal(form):
        raise NotDiagonal('%s is not diagonal' % a.get_code())
    d = form.diagonal()
    difference = d[i] - d[j]
    if i == j or not difference:
        raise EqualDiagonalEntries('entries (%s, %s) and (%s, %s) coincide' % (i, i, j, j))
    builder = _ChainBuilder(a)
    builder.bracket(a, Scale(difference.inverse(), Basis(i, j, a.field)), Basis(i, j, a.field),
                    'scaled by 1/(a_ii - a_jj)', ideal_side='lhs', ideal_ref=SEED)
    return builder.build()


def eij_from_offdiag(a: NodeOrLeaf, i: int, j: int) -> BracketChain:
    """
    A matrix unit from a nonzero off-diagonal entry ``a_ij``: bracket with
    ``E_ii`` and ``E_jj`` to isolate ``a_ij E_ij + a_ji E_ji``. If ``a_ji``
    vanishes this is a multiple of ``E_ij``; otherwise one more bracket gives
    ``E_ii - E_jj`` and the diagonal case yields ``E_ik`` for the smallest
    ``k`` outside ``{i, j}``.
    """
    field = a.field
    _require_inverses(field)
    if i == j:
        raise ZeroPivot('the pivot must be off the diagonal')
    a_ij, a_ji = a.entry(i, j), a.entry(j, i)
    if not a_ij:
        raise ZeroPivot('entry (%s, %s) is zero' % (i, j))

    builder = _ChainBuilder(a)
    e_ii, e_jj, e_ij = Basis(i, i, field), Basis(j, j, field), Basis(i, j, field)
    r1 = _canonical(Bracket(e_ii, a))
    builder.bracket(e_ii, a, r1, 'row %s minus column %s' % (i, i),
                    ideal_side='rhs', ideal_ref=SEED)
    r2 = FiniteLit({(i, j): a_ij, (j, i): a_ji}, field)
    builder.bracket(r1, e_jj, r2, 'a_ij E_ij + a_ji E_ji')
    if not a_ji:
        builder.combine([(a_ij.inverse(), builder.last)], e_ij, 'divide by a_ij')
        return builder.build()

    r3 = FiniteLit({(i, i): -a_ji, (j, j): a_ji}, field)
    builder.bracket(r2, e_ij, r3, 'a_ji (E_jj - E_ii)')
    difference = FiniteLit({(i, i): 1, (j, j): -1}, field)
    builder.combine([(-a_ji.inverse(), builder.last)], difference, 'E_ii - E_jj')
    k = next(k for k in range(1, 4) if k not in (i, j))
    e_ik = Basis(i, k, field)
    builder.bracket(difference, Scale(field.one, e_ik), e_ik, 'diagonal case')
    return builder.build()


def express_in_slfr(b: NodeOrLeaf, seed: Tuple[int, int]) -> BracketChain:
    """
    Derives a trace-zero finite-row ``B`` from a matrix unit ``E_ij``:
    ``E_mj = [E_mi, E_ij]``, ``E_mn = [E_mj, E_jn]``, ``E_jn = [E_ji, E_in]``,
    diagonal differences ``E_rr - E_jj = [E_rj, E_jr]`` and infinite rows
    ``[E_rq, row(q, s)] = row(r, s)``, followed by one linear combination.
    """
    i, j = seed
    field = b.field
    if i == j:
        raise NotInSlFr('the seed must be an off-diagonal matrix unit')
    if not leq(classify(b), IdealName.SLFR):
        raise NotInSlFr('%s is not a trace-zero finite-row matrix' % b.get_code())

    builder = _ChainBuilder(Basis(i, j, field))
    units: Dict[Tuple[int, int], int] = {(i, j): SEED}

    def unit(m, n):
        if (m, n) in units:
            return units[m, n]
        result = Basis(m, n, field)
        if n == j:
            ref = builder.bracket(Basis(m, i, field), builder.seed, result,
                                  ideal_side='rhs', ideal_ref=SEED)
        elif m == j:
            if n == i:
                k = next(k for k in range(1, 4) if k not in (i, j))
                inner = unit(k, i)
                ref = builder.bracket(Basis(j, k, field), builder.result(inner), result,
                                      ideal_side='rhs', ideal_ref=inner)
            else:
                inner = unit(i, n)
                ref = builder.bracket(Basis(j, i, field), builder.result(inner), result,
                                      ideal_side='rhs', ideal_ref=inner)
        else:
            inner = unit(m, j)
            ref = builder.bracket(builder.result(inner), Basis(j, n, field), result,
                                  ideal_side='lhs', ideal_ref=inner)
        units[m, n] = ref
        return ref

    form = normalize(b)
    terms = []
    for r, seq in form.fr.items():
        d = seq[r]
        if d and r != j:
            inner = unit(r, j)
            ref = builder.bracket(builder.result(inner), Basis(j, r, field),
                                  FiniteLit({(r, r): 1, (j, j): -1}, field),
                                  'E_%s%s - E_%s%s' % (r, r, j, j),
                                  ideal_side='lhs', ideal_ref=inner)
            terms.append((d, ref))
        off = seq - SeqDesc.finite(field, {r: d})
        if off.is_zero():
            continue
        if off.is_finite():
            for c, value in off.entries().items():
                terms.append((value, unit(r, c)))
        else:
            q = 1 if r != 1 else 2
            inner = unit(r, q)
            ref = builder.bracket(builder.result(inner), RowMat(q, off), RowMat(r, off),
                                  'row %s' % r, ideal_side='lhs', ideal_ref=inner)
            terms.append((field.one, ref))

    if not terms:
        return builder.build(b)
    if len(terms) == 1 and terms[0][0] == 1 and builder.result(terms[0][1]) == b:
        return builder.build(b)
    builder.combine(terms, b, 'linear combination')
    return builder.build(b)


def generate_slfr(a: NodeOrLeaf, b: NodeOrLeaf) -> BracketChain:
    """
    Certifies that a trace-zero finite-row ``B`` lies in the ideal generated
    by a non-scalar ``A``: a matrix unit is extracted from ``A`` and ``B`` is
    built from it.
    """
    form = normalize(a)
    pivot = _offdiagonal_pivot(a, form)
    if pivot is not None:
        first = eij_from_offdiag(a, *pivot)
    else:
        i = _diagonal_change(form)
        if i is None:
            raise EqualDiagonalEntries('%s is scalar' % a.get_code())
        first = eij_from_diag(a, i, i + 1)
    unit = first.target
    return first.then(express_in_slfr(b, (unit.i, unit.j)))


def _diagonal_extraction(a, form, band):
    field = a.field
    k = band.offset
    offsets = [0] + [t.offset for t in form.tail if isinstance(t, Shift)]
    spread = max(offsets) - min(offsets)
    base = len(band.index_set.period) * len(band.weights.period)
    bound = spread + abs(k) + 4
    step = base * ceil(bound / base)
    lower = max(form.fr, default=0) + abs(k) + 2
    start = next(i for i in range(lower, lower + base + 1)
                 if i in band.index_set and band.weights[i])
    selected = IndexSet.arithmetic(start, step)
    LOG.debug('extracting a diagonal along rows %s + %s t of band %s', start, step, k)

    builder = _ChainBuilder(a)
    p = Diag(SeqDesc.indicator(field, selected))
    q = Diag(SeqDesc.indicator(field, selected.shifted(k)))
    r1 = _canonical(Bracket(p, a))
    builder.bracket(p, a, r1, 'rows %s + %s t' % (start, step), ideal_side='rhs')
    r2 = _canonical(Bracket(r1, q))
    builder.bracket(r1, q, r2, 'keep band %s' % k)
    if k > 0:
        s = Shift(1, field=field)
        r3 = _canonical(Bracket(s, r2))
        builder.bracket(s, r2, r3, ideal_side='rhs')
        projection = Diag(SeqDesc.indicator(field, selected.shifted(-1)))
        r4 = _canonical(Bracket(projection, r3))
        builder.bracket(projection, r3, r4, ideal_side='rhs')
        closing = Shift(-(k + 1), selected.shifted(k), field=field)
    else:
        s = Shift(-1, field=field)
        r3 = _canonical(Bracket(r2, s))
        builder.bracket(r2, s, r3)
        columns = selected.shifted(k - 1)
        projection = Diag(SeqDesc.indicator(field, columns))
        r4 = _canonical(Bracket(r3, projection))
        builder.bracket(r3, projection, r4)
        closing = Shift(1 - k, columns, field=field)
    d = _canonical(Bracket(r4, closing))
    builder.bracket(r4, closing, d, 'diagonal')
    return d, builder.build()


def extract_diag(a: NodeOrLeaf) -> Tuple[NodeOrLeaf, BracketChain]:
    """
    A diagonal matrix with infinitely many changes along the diagonal in the
    ideal generated by ``A``, which must lie outside ``d_sc + gl_fr``.

    With a band in the tail, rows of that band are selected along a widely
    spaced progression and isolated by brackets with diagonal projections.
    With only a diagonal tail, the finitely many off-diagonal entries are
    derived separately and subtracted.
    """
    _require_inverses(a.field)
    form = normalize(a)
    bands = [t for t in form.tail if isinstance(t, Shift)]
    if bands:
        upper = [t for t in bands if t.offset > 0]
        band = min(upper, key=lambda t: t.offset) if upper \
            else max(bands, key=lambda t: t.offset)
        return _diagonal_extraction(a, form, band)
    if not form.tail:
        raise UnsupportedTail('%s lies in d_sc + gl_fr' % a.get_code())

    offdiagonal = form.offdiagonal_fr()
    if not offdiagonal:
        return a, BracketChain(a, seed=a)
    f = CanonicalForm(a.field, a.field.zero, offdiagonal, ()).to_expr()
    pivot = _offdiagonal_pivot(a, form)
    first = eij_from_offdiag(a, *pivot)
    unit = first.target
    chain = first.then(express_in_slfr(f, (unit.i, unit.j)))
    d = _canonical(Sum([a, Scale(-a.field.one, f)]))
    step = ChainStep('combine', d, 'remove the off-diagonal part',
                     terms=((a.field.one, SEED), (-a.field.one, len(chain.steps) - 1)))
    return d, BracketChain(d, chain.steps + (step,), a)


def superdiag_from_diag(d: NodeOrLeaf) -> Tuple[IndexSet, BracketChain]:
    """
    For a diagonal ``D`` changing at infinitely many places ``H``:
    ``[D, sum over H of E_{i,i+1} / (d_i - d_{i+1})] = sum over H of E_{i,i+1}``.
    """
    field = d.field
    _require_inverses(field)
    form = normalize(d)
    if not _is_diagonal(form):
        raise NotDiagonal('%s is not diagonal' % d.get_code())
    diagonal = form.diagonal()
    difference = diagonal - diagonal.shift(1)
    disagreement = difference.support()
    if not disagreement.is_infinite():
        raise FiniteDisagreement('%s changes only finitely often' % d.get_code())

    def inverted(values):
        return [v.inverse() if v else v for v in values]
    weights = SeqDesc(field, inverted(difference.prefix), inverted(difference.period))

    builder = _ChainBuilder(d)
    builder.bracket(d, Shift(1, disagreement, weights), Shift(1, disagreement, field=field),
                    'scaled by 1/(d_i - d_{i+1})', ideal_side='lhs', ideal_ref=SEED)
    return disagreement, builder.build()


def _fill_set(h: IndexSet) -> IndexSet:
    # n joins when n - 1 and n are both missing from h and n - 1 did not join.
    length = h.threshold + 1 + len(h.period)
    period = 2 * len(h.period)
    joined = [False]
    for n in range(1, length + period + 1):
        joined.append(n - 1 not in h and n not in h and not joined[-1])
    return IndexSet(joined[1:length + 1], joined[length + 1:])


def _pairing_skip(z: IndexSet, h: IndexSet, stride: int) -> int:
    if z.is_infinite():
        horizon = (z.rank(z.threshold) + h.rank(h.threshold)
                   + 2 * sum(z.period) * sum(h.period) + 2)
    else:
        horizon = z.rank(z.threshold)
    skip = 0
    while True:
        if all(h.nth(stride * t + skip + 1) > z.nth(t + 1) for t in range(horizon)):
            return skip
        skip += 1


def enlarge_set(h: IndexSet, field: Field = None) -> Tuple[IndexSet, BracketChain]:
    """
    Grows ``H`` to ``G = H + Z`` whose complement has no two consecutive
    numbers, deriving ``sum over G of E_{i,i+1}`` from ``sum over H``.

    ``Z`` collects every ``n`` with ``n - 1`` and ``n`` outside ``H`` unless
    ``n - 1`` was collected. ``f`` sends the ``t``-th member of ``Z`` to the
    ``(m t + s)``-th member of ``H``, with the stride ``m`` and the skip ``s``
    chosen so that ``f(n) > n``.
    """
    field = field or QQ
    if not h.is_infinite():
        raise NotInfinite('%s is finite' % h.get_code())
    seed = Shift(1, h, field=field)
    if not h.complement().has_consecutive_pair():
        return h, BracketChain(seed, seed=seed)

    z = _fill_set(h)
    if z.is_infinite():
        stride = max(1, ceil(h.density() / z.density()))
    else:
        stride = 1
    skip = _pairing_skip(z, h, stride)
    LOG.debug('enlarging %s by %s with stride %s and skip %s',
              h.get_code(), z.get_code(), stride, skip)

    builder = _ChainBuilder(seed)
    f = Pairing(z, h, col_stride=stride, col_skip=skip, field=field)
    r1 = Pairing(z, h, col_stride=stride, col_skip=skip, col_shift=1, field=field)
    builder.bracket(f, seed, r1, 'sum E_{i, f(i)+1} over Z', ideal_side='rhs', ideal_ref=SEED)
    back = Pairing(h, z, row_stride=stride, row_skip=skip, row_shift=1, col_shift=1,
                   field=field)
    r2 = Shift(1, z, field=field)
    builder.bracket(r1, back, r2, 'sum E_{i, i+1} over Z')
    g = h | z
    builder.combine([(field.one, SEED), (field.one, builder.last)], Shift(1, g, field=field),
                    'H and Z together')
    return g, builder.build()


def complete_superdiag(g: IndexSet, field: Field = None) -> BracketChain:
    """
    From ``sum over G of E_{i,i+1}``, with no two consecutive numbers missing
    from ``G``, to the full shift. The missing numbers are split into those of
    odd and of even rank; each half is added by two brackets.
    """
    field = field or QQ
    missing = g.complement()
    pair = missing.first_consecutive_pair()
    if pair is not None:
        raise GapPropertyViolated('%s and %s are both missing' % (pair, pair + 1))
    seed = Shift(1, g, field=field)
    if missing.is_empty():
        return BracketChain(seed, seed=seed)

    builder = _ChainBuilder(seed)
    current = g
    if 1 not in g:
        first = g.min()
        corner = Basis(1, first + 1, field)
        builder.bracket(Basis(1, first, field), seed, corner, ideal_side='rhs', ideal_ref=SEED)
        builder.bracket(corner, Basis(first + 1, 2, field), Basis(1, 2, field))
        current = g | IndexSet.finite([1])
        builder.combine([(field.one, SEED), (field.one, builder.last)],
                        Shift(1, current, field=field), 'add E_12')
    current_ref = builder.last

    gaps = current.complement()
    for name, half in (('odd', gaps.alternate(True)), ('even', gaps.alternate(False))):
        if half.is_empty():
            continue
        x1 = Diag(SeqDesc.indicator(field, half) - SeqDesc.indicator(field, half.shifted(-1)))
        builder.bracket(Shift(-1, half, field=field), builder.result(current_ref), x1,
                        '%s gaps' % name, ideal_side='rhs', ideal_ref=current_ref)
        x2 = Shift(1, half, field=field)
        builder.bracket(x1, Shift(1, half, field=field), x2)
        current = current | half
        current_ref = builder.combine([(field.one, current_ref), (field.one, builder.last)],
                                      Shift(1, current, field=field))
    return builder.build(Shift(1, field=field))


def solve_shift_bracket(a: NodeOrLeaf, corrected: bool = True) -> NodeOrLeaf:
    """
    ``X`` with ``[X, S] = A``. Works over any ring; ``corrected=False`` keeps
    the opposite sign on the first column and fails the equation.
    """
    if isinstance(a, Zero):
        return Zero(a.field)
    return ShiftSolution(a, corrected)


def perfect_witness(a: NodeOrLeaf) -> Tuple[NodeOrLeaf, NodeOrLeaf]:
    """
    ``(X, S)`` with ``[X, S] = A``.
    """
    return solve_shift_bracket(a), Shift(1, field=a.field)


class CentralVerdict:
    def __repr__(self):
        return '<Central>'

    def __str__(self):
        return 'central'


CENTRAL = CentralVerdict()


def center_witness(a: NodeOrLeaf):
    """
    :data:`CENTRAL` for scalar matrices, otherwise a matrix unit that does not
    commute with ``a``.
    """
    if classify(a) in (IdealName.ZERO, IdealName.DSC):
        return CENTRAL
    form = normalize(a)
    pivot = _offdiagonal_pivot(a, form)
    if pivot is not None:
        return Basis(pivot[1], pivot[1], a.field)
    i = _diagonal_change(form)
    return Basis(i, i + 1, a.field)


class GlCfCertificate(NamedTuple):
    chain: BracketChain
    diagonal: NodeOrLeaf
    disagreement: IndexSet
    enlarged: IndexSet


def generate_gl_cf(a: NodeOrLeaf) -> GlCfCertificate:
    """
    Certifies that ``A`` outside ``d_sc + gl_fr`` generates everything: the
    chain ends at the full shift ``S``, and every matrix ``M`` is
    ``[solve_shift_bracket(M), S]``.
    """
    d, chain = extract_diag(a)
    h, to_band = superdiag_from_diag(d)
    g, enlarged = enlarge_set(h, a.field)
    completed = complete_superdiag(g, a.field)
    return GlCfCertificate(chain.then(to_band).then(enlarged).then(completed), d, h, g)
