"""
Derivations of the column-finite algebra over a ring.

Every derivation is the sum of an inner derivation ``ad B = [B, .]`` and a
central one, whose values are scalar matrices and depend only on the diagonal
of the argument. :func:`decompose` recovers ``B`` and the central part from a
derivation given as an oracle, working from finitely many probes:

1. ``h_k = phi(E_kk)`` may only have entries on the diagonal, in row ``k``
   and in column ``k``. Rows and columns ``k <= n`` of ``B`` are read off
   these values, ``b_ij = -h_i[i, j]``, and checked against ``h_j[i, j] = b_ij``.
   The rest of ``B`` off the diagonal comes from the diagonal projections
   ``D_r`` onto the residue classes mod ``n``: ``(E - D_r) phi(D_r) D_r`` is
   ``(E - D_r) B D_r``, which holds every ``b_ij`` with ``j`` in the class and
   ``i`` outside it. This covers all bands of offset below ``n``.
2. After subtracting its bracket, ``psi(E_{i,i+1}) = x_i E_{i,i+1}``. The
   diagonal of ``B`` is ``d_i = -(x_1 + ... + x_{i-1})``.
3. What is left, ``phi - ad B``, is central on the probes: its value on
   ``E_kk`` is a scalar matrix.

The report evaluates ``phi - ad B - central`` on every probe, on the residue
class diagonals mod ``n`` and ``n + 1`` and on both unit shifts; residuals that
normalize are compared exactly, the others on the window. A band of offset
``n`` or more is missed by the projections and shows up as a failing residual
unless its offset is a multiple of ``n (n + 1)``.

No step divides, so the decomposition runs over the integers as well.

A derivation with scalar values kills every bracket, and every matrix is a
bracket ``[X, S]``; a nonzero central table is therefore never a derivation of
the whole algebra. :func:`check_leibniz` rejects all such tables that are
tried, and :class:`DerivationVal` keeps them representable for that check.
"""
import logging
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from colfin.field import Field, FieldElem, QQ
from colfin.matrix import first_difference
from colfin.normalizer import CanonicalForm, NotNormalizable, normalize
from colfin.sequences import IndexSet, SeqDesc
from colfin.tree import (Basis, Bracket, Diag, NodeOrLeaf, Prod, ScalarE, Shift,
                         Sum, Zero)
from colfin.utils import ColfinError

LOG = logging.getLogger(__name__)


class DerivationError(ColfinError):
    module = 'derivations'


class ProbeExceeded(DerivationError):
    pass


class NotADerivation(DerivationError):
    pass


class SparsityViolated(DerivationError):
    pass


class ProbeInsufficient(DerivationError):
    pass


class DerivationVal:
    """
    ``ad(inner_part)`` plus the central derivation given by
    ``central_table``: ``{k: sigma(E_kk)}``. Diagonal positions missing from
    the table count as zero unless ``zero_extension`` is off.
    """
    def __init__(self, inner_part: NodeOrLeaf, central_table: Dict[int, FieldElem] = None,
                 zero_extension: bool = True):
        self.inner_part = inner_part
        self.field = inner_part.field
        self.central_table = {k: self.field(v) for k, v in sorted((central_table or {}).items())
                              if self.field(v)}
        self.zero_extension = zero_extension

    @classmethod
    def inner(cls, b: NodeOrLeaf) -> 'DerivationVal':
        return cls(b)

    @classmethod
    def central(cls, table: Dict[int, object], field: Field = QQ) -> 'DerivationVal':
        return cls(Zero(field), table)

    def sigma(self, a: NodeOrLeaf) -> FieldElem:
        """
        The central functional on the diagonal of ``a``.
        """
        zero = self.field.zero
        if not self.central_table:
            return zero
        diagonal = normalize(a).diagonal()
        if not self.zero_extension:
            bound = max(self.central_table)
            if not diagonal.is_finite() or any(k > bound for k in diagonal.entries()):
                raise ProbeExceeded('the diagonal of %s reaches beyond the table'
                                    % a.get_code())
        return sum((c * diagonal[k] for k, c in self.central_table.items()), zero)

    def __call__(self, a: NodeOrLeaf) -> NodeOrLeaf:
        return apply(self, a)

    def __eq__(self, other):
        return (isinstance(other, DerivationVal) and self.inner_part == other.inner_part
                and self.central_table == other.central_table
                and self.zero_extension == other.zero_extension)

    def __repr__(self):
        return '<%s: ad(%s) + %s>' % (type(self).__name__, self.inner_part.get_code(),
                                      self.central_table)


def apply(d: DerivationVal, a: NodeOrLeaf) -> NodeOrLeaf:
    """
    ``[B, A] + sigma(diagonal of A) E``.

    >>> print(apply(DerivationVal.inner(Basis(1, 2)), Basis(2, 2)).column(2))
    {1: <FieldElem: 1>}
    """
    inner = Bracket(d.inner_part, a)
    value = d.sigma(a)
    if value:
        return Sum([inner, ScalarE(value)])
    return inner


class DerivationOracle:
    """
    A derivation known only through its values. ``locality_bound`` is the
    probe bound that determines it on the windows that are checked.
    """
    def __init__(self, apply: Callable[[NodeOrLeaf], NodeOrLeaf], field: Field = QQ,
                 locality_bound: int = 0, name: str = None):
        self.apply = apply
        self.field = field
        self.locality_bound = locality_bound
        self.name = name or getattr(apply, '__name__', 'oracle')

    @classmethod
    def from_derivation(cls, d: DerivationVal, locality_bound: int = 0) -> 'DerivationOracle':
        return cls(d, d.field, locality_bound, repr(d))

    def __call__(self, a: NodeOrLeaf) -> NodeOrLeaf:
        return self.apply(a)

    def __repr__(self):
        return '<%s: %s>' % (type(self).__name__, self.name)


def builtin_oracle(name: str, field: Field = QQ) -> DerivationOracle:
    """
    Oracles for tests and the command line: ``zero``, ``identity`` (not a
    derivation) and ``scramble`` (maps ``E_11`` to ``E_32``, breaking the
    sparsity of derivations on diagonal units).
    """
    def zero(a):
        return Zero(field)

    def identity(a):
        return a

    def scramble(a):
        return Prod(Prod(Basis(3, 1, field), a), Basis(1, 2, field))

    oracles = {'zero': zero, 'identity': identity, 'scramble': scramble}
    try:
        fn = oracles[name]
    except KeyError:
        raise ValueError('unknown oracle %r, expected one of %s'
                         % (name, ', '.join(sorted(oracles)))) from None
    return DerivationOracle(fn, field, name=name)


class LeibnizVerdict(NamedTuple):
    passed: bool
    pair: Optional[int] = None
    entry: Optional[Tuple[int, int]] = None
    lhs: Optional[FieldElem] = None
    rhs: Optional[FieldElem] = None

    def __str__(self):
        if self.passed:
            return 'PASS'
        return 'FAIL at pair %s, entry (%s, %s): %s != %s' % (
            self.pair, self.entry[0], self.entry[1], self.lhs, self.rhs)


def check_leibniz(d, pairs: Sequence[Tuple[NodeOrLeaf, NodeOrLeaf]],
                  window: int = 40) -> LeibnizVerdict:
    """
    Compares ``d([X, Y])`` with ``[d(X), Y] + [X, d(Y)]`` on the window for
    every pair; ``d`` is a :class:`DerivationVal` or any callable oracle.
    Pairs are numbered from 1.
    """
    for number, (x, y) in enumerate(pairs, 1):
        lhs = d(Bracket(x, y))
        rhs = Sum([Bracket(d(x), y), Bracket(x, d(y))])
        position = first_difference(lhs, rhs, window)
        if position is not None:
            i, j = position
            return LeibnizVerdict(False, number, position, lhs.entry(i, j), rhs.entry(i, j))
    return LeibnizVerdict(True)


def _unit_pairs(n: int, field: Field) -> List[Tuple[NodeOrLeaf, NodeOrLeaf]]:
    pairs = []
    for k in range(1, n + 1):
        diagonal, up, down = Basis(k, k, field), Basis(k, k + 1, field), Basis(k + 1, k, field)
        pairs.append((diagonal, up))
        pairs.append((up, down))
        pairs.append((down, Basis(k + 1, k + 2, field)))
    return pairs


class Residual(NamedTuple):
    probe: str
    passed: bool
    entry: Optional[Tuple[int, int]] = None
    value: Optional[FieldElem] = None


class DecompositionReport(NamedTuple):
    probe_bound: int
    window: int
    diagonal_extension: str
    antisymmetry_checks: int
    residuals: Tuple[Residual, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.residuals)


class Decomposition(NamedTuple):
    inner: NodeOrLeaf
    sigma: Dict[int, FieldElem]
    report: DecompositionReport

    @property
    def derivation(self) -> DerivationVal:
        return DerivationVal(self.inner, self.sigma)


def _normalized(value: NodeOrLeaf, probe: NodeOrLeaf) -> CanonicalForm:
    try:
        return normalize(value)
    except NotNormalizable as e:
        raise ProbeInsufficient('the value on %s cannot be inspected: %s'
                                % (probe.get_code(), e.message)) from None


def _probe(oracle, a: NodeOrLeaf) -> NodeOrLeaf:
    try:
        return oracle(a)
    except ProbeExceeded as e:
        raise ProbeInsufficient('the oracle cannot be evaluated on %s: %s'
                                % (a.get_code(), e.message)) from None


def _residue_classes(m: int, field: Field) -> List[NodeOrLeaf]:
    return [Diag(SeqDesc.indicator(field, IndexSet.arithmetic(r, m))) for r in range(1, m + 1)]


def _far_block(oracle, n: int) -> NodeOrLeaf:
    """
    The entries ``b_ij`` with ``i, j > n`` and ``i - j`` not divisible by
    ``n``, from ``(E - D_r) phi(D_r) D_r = (E - D_r) B D_r``.
    """
    field = oracle.field
    terms = []
    for projection in _residue_classes(n, field):
        value = _probe(oracle, projection)
        complement = Sum([ScalarE(field.one), -projection])
        terms.append(Prod(Prod(complement, value), projection))
    far = Diag(SeqDesc.indicator(field, IndexSet([False] * n, [True])))
    block = Prod(Prod(far, Sum(terms)), far)
    try:
        form = normalize(block)
    except NotNormalizable as e:
        raise ProbeInsufficient('the values on the residue classes mod %s cannot be '
                                'inspected: %s' % (n, e.message)) from None
    return form.to_expr()


def _reach(form: CanonicalForm, window: int) -> int:
    # A window size that contains a nonzero entry of a nonzero form.
    size = max([window] + [r + s.threshold + len(s.period) for r, s in form.fr.items()])
    for node in form.tail:
        if isinstance(node, Diag):
            size += node.seq.threshold + len(node.seq.period)
        else:
            size += (node.index_set.threshold + node.weights.threshold
                     + len(node.index_set.period) * len(node.weights.period)
                     + 2 * abs(node.offset))
    return size + 1


def _residual(probe: NodeOrLeaf, value: NodeOrLeaf, window: int) -> Residual:
    code = probe.get_code()
    try:
        form = normalize(value)
    except NotNormalizable:
        position = first_difference(value, Zero(value.field), window)
    else:
        if form.is_zero():
            return Residual(code, True)
        value = form.to_expr()
        position = first_difference(value, Zero(value.field), _reach(form, window))
    if position is None:
        return Residual(code, True)
    return Residual(code, False, position, value.entry(*position))


def _check_sparsity(form: CanonicalForm, k: int) -> None:
    if any(isinstance(node, Shift) for node in form.tail):
        raise SparsityViolated('the value on E(%s, %s) has a band' % (k, k))
    for r, seq in form.offdiagonal_fr().items():
        if r == k:
            continue
        stray = seq - SeqDesc.finite(form.field, {k: seq[k]})
        if not stray.is_zero():
            raise SparsityViolated('the value on E(%s, %s) has entries in row %s outside '
                                   'column %s' % (k, k, r, k))


def _band_one(form: CanonicalForm) -> SeqDesc:
    field = form.field
    band = SeqDesc.zero(field)
    for node in form.tail:
        if isinstance(node, Shift) and node.offset == 1:
            band = band + SeqDesc.indicator(field, node.index_set) * node.weights
    entries = {r: seq[r + 1] for r, seq in form.fr.items()}
    return band + SeqDesc.finite(field, entries)


def _extend_diagonal(field: Field, psi, steps: List[FieldElem]) -> Tuple[SeqDesc, str]:
    # d_i = -(x_1 + ... + x_{i-1}), read globally from psi(S) when possible.
    try:
        band = _band_one(normalize(psi(Shift(1, field=field))))
    except NotNormalizable:
        band = None
    if band is not None and all(band[i] == x for i, x in enumerate(steps, 1)):
        sums = band.partial_sums()
        if sums is not None:
            return -sums, 'partial-sums'
    values = [field.zero]
    for x in steps:
        values.append(values[-1] - x)
    return SeqDesc(field, values, [values[-1]]), 'eventually-constant'


def decompose(oracle, n: int, window: int = None) -> Decomposition:
    """
    Splits ``oracle`` into ``ad B`` plus a central part, probing ``E_kk`` for
    ``k <= n`` and ``E_{i,i+1}``, ``E_{i+1,i}`` for ``i < n``. ``B`` is
    returned in canonical form with a zero scalar part. Off the diagonal it is
    exact for bands of offset below ``n``; see the module documentation.

    The diagonal of ``B`` is known on the probes only. When the value on
    ``S`` can be inspected it fixes the whole diagonal; otherwise the diagonal
    is continued with its last probed value, and the report says which.
    """
    if n < 2:
        raise ProbeInsufficient('at least two diagonal probes are needed')
    if n < oracle.locality_bound:
        raise ProbeInsufficient('%r is determined by probes up to %s, got %s'
                                % (oracle, oracle.locality_bound, n))
    field = oracle.field
    zero = field.zero
    if window is None:
        window = n + 2

    verdict = check_leibniz(oracle, _unit_pairs(n, field), window)
    if not verdict.passed:
        raise NotADerivation('the Leibniz rule fails: %s' % (verdict,))
    LOG.debug('decomposing %r with %s probes', oracle, n)

    values: Dict[int, NodeOrLeaf] = {}
    forms: Dict[int, CanonicalForm] = {}
    for k in range(1, n + 1):
        values[k] = oracle(Basis(k, k, field))
        forms[k] = _normalized(values[k], Basis(k, k, field))
        _check_sparsity(forms[k], k)

    rows: Dict[int, SeqDesc] = {}
    checks = 0
    for i, form in forms.items():
        row = form.row(i)
        row = row - SeqDesc.finite(field, {i: row[i]})
        for j in range(1, n + 1):
            if j == i:
                continue
            if row[j] + forms[j].row(i)[j]:
                raise NotADerivation('phi(E_%s%s) and phi(E_%s%s) disagree at (%s, %s)'
                                     % (i, i, j, j, i, j))
            checks += 1
        if not row.is_zero():
            rows[i] = -row
    for j, value in values.items():
        for r, entry in value.column(j).items():
            if r > n:
                rows[r] = rows.get(r, SeqDesc.zero(field)) + SeqDesc.finite(field, {j: entry})
    near = CanonicalForm(field, zero, rows, ()).to_expr()
    offdiagonal = normalize(Sum([near, _far_block(oracle, n)])).to_expr()

    def psi(a):
        return Sum([oracle(a), Bracket(a, offdiagonal)])

    steps = []
    for i in range(1, n):
        x = psi(Basis(i, i + 1, field)).entry(i, i + 1)
        y = psi(Basis(i + 1, i, field)).entry(i + 1, i)
        if x + y:
            raise NotADerivation('psi(E_%s%s) and psi(E_%s%s) are not opposite'
                                 % (i, i + 1, i + 1, i))
        checks += 1
        steps.append(x)

    diagonal, extension = _extend_diagonal(field, psi, steps)
    form = normalize(Sum([offdiagonal, Diag(diagonal)]))
    inner = CanonicalForm(field, zero, form.fr, form.tail).to_expr()
    LOG.debug('inner part %s, %s diagonal', inner.get_code(), extension)

    sigma = {}
    for k, value in values.items():
        rest = Sum([value, Bracket(Basis(k, k, field), inner)])
        r = rest.entry(n + 1, n + 1)
        if r:
            sigma[k] = r
    found = DerivationVal(inner, sigma)

    probes = [Basis(k, k, field) for k in range(1, n + 1)]
    for i in range(1, n):
        probes += [Basis(i, i + 1, field), Basis(i + 1, i, field)]
    probes += _residue_classes(n, field) + _residue_classes(n + 1, field)
    probes += [Shift(1, field=field), Shift(-1, field=field)]
    residuals = [_residual(probe, _probe(oracle, probe) - found(probe), window)
                 for probe in probes]
    if not all(r.passed for r in residuals):
        LOG.debug('%s of %s residuals do not vanish',
                  sum(not r.passed for r in residuals), len(residuals))
    report = DecompositionReport(n, window, extension, checks, tuple(residuals))
    return Decomposition(inner, sigma, report)
