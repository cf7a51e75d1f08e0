"""
The seven ideals of the Lie algebra of column-finite matrices and the
classifier that finds the smallest of them containing a given matrix.

The ideals, ordered by inclusion::

                 gl_cf
                   |
               d_sc+gl_fr
              /          \\
        d_sc+sl_fr      gl_fr
         /      \\       /
      d_sc       sl_fr
         \\       /
             0

Why the classifier returns the *smallest* ideal: write a normalizable ``A``
as ``alpha*E + F + T`` (scalar, finite-row part, tail).

* ``T != 0``: ``A`` is outside ``d_sc + gl_fr`` and the ideal it generates is
  everything (the diagonal extraction, superdiagonal and shift-bracket
  witnesses construct the chain).
* ``T == 0, F != 0``: the ideal contains ``F`` plus brackets with ``F``, and
  since ``F`` is not scalar it contains all of ``sl_fr``. It contains ``gl_fr``
  only if something in it has nonzero trace; traces of brackets vanish, so that
  happens exactly when ``trace(F) != 0``. It contains ``d_sc`` exactly when
  ``alpha != 0``, because ``A`` is then not in ``gl_fr`` and no ideal lies
  strictly between ``sl_fr`` (resp. ``gl_fr``) and the sum with ``d_sc``.
* ``T == 0, F == 0``: ``A`` is scalar, central, and spans ``d_sc`` unless zero.

>>> from colfin.tree import Basis, ScalarE
>>> print(classify(Basis(1, 2)), classify(ScalarE(1) + Basis(1, 1)))
sl_fr d_sc+gl_fr
"""
from enum import Enum
from itertools import product
from typing import Dict, List, Tuple

from colfin.normalizer import normalize
from colfin.tree import NodeOrLeaf
from colfin.utils import ColfinError


class FieldRequired(ColfinError):
    module = 'ideals'


class IdealName(Enum):
    ZERO = '0'
    DSC = 'd_sc'
    SLFR = 'sl_fr'
    GLFR = 'gl_fr'
    DSC_SLFR = 'd_sc+sl_fr'
    DSC_GLFR = 'd_sc+gl_fr'
    GLCF = 'gl_cf'

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> 'IdealName':
        try:
            return cls(text.strip())
        except ValueError:
            raise ValueError('%r is not one of %s'
                             % (text, ', '.join(i.value for i in cls))) from None


_COVERS = [
    (IdealName.ZERO, IdealName.DSC),
    (IdealName.ZERO, IdealName.SLFR),
    (IdealName.SLFR, IdealName.GLFR),
    (IdealName.SLFR, IdealName.DSC_SLFR),
    (IdealName.DSC, IdealName.DSC_SLFR),
    (IdealName.GLFR, IdealName.DSC_GLFR),
    (IdealName.DSC_SLFR, IdealName.DSC_GLFR),
    (IdealName.DSC_GLFR, IdealName.GLCF),
]


def _closure(edges) -> Dict[Tuple[IdealName, IdealName], bool]:
    order = {(a, b): a is b or (a, b) in edges for a, b in product(IdealName, repeat=2)}
    for k, i, j in product(IdealName, repeat=3):
        if order[i, k] and order[k, j]:
            order[i, j] = True
    return order


_ORDER = _closure(set(_COVERS))


def ideals() -> List[IdealName]:
    """
    All seven ideals, every ideal listed after the ideals it contains.
    """
    return list(IdealName)


def leq(a: IdealName, b: IdealName) -> bool:
    return _ORDER[a, b]


def join(a: IdealName, b: IdealName) -> IdealName:
    bounds = [c for c in IdealName if leq(a, c) and leq(b, c)]
    return next(c for c in bounds if all(leq(c, d) for d in bounds))


def meet(a: IdealName, b: IdealName) -> IdealName:
    bounds = [c for c in IdealName if leq(c, a) and leq(c, b)]
    return next(c for c in bounds if all(leq(d, c) for d in bounds))


def hasse_edges() -> List[Tuple[IdealName, IdealName]]:
    """
    The covering pairs of the order, recomputed from the order itself.
    """
    return [
        (a, b) for a, b in product(IdealName, repeat=2)
        if a is not b and leq(a, b)
        and not any(c not in (a, b) and leq(a, c) and leq(c, b) for c in IdealName)
    ]


def classify(a: NodeOrLeaf) -> IdealName:
    """
    The smallest of the seven ideals containing ``a``.
    """
    if not a.field.has_inverses:
        raise FieldRequired('classification needs a field, not %s' % a.field.name)
    form = normalize(a)
    if form.tail:
        return IdealName.GLCF
    if form.alpha:
        if not form.fr:
            return IdealName.DSC
        return IdealName.DSC_GLFR if form.fr_trace else IdealName.DSC_SLFR
    if form.fr:
        return IdealName.GLFR if form.fr_trace else IdealName.SLFR
    return IdealName.ZERO


def in_ideal(a: NodeOrLeaf, ideal: IdealName) -> bool:
    return leq(classify(a), ideal)


def window_classify(a: NodeOrLeaf, n: int) -> IdealName:
    """
    Classifies from the defining properties alone, looking at the ``n x n``
    window: the scalar part is read off the last diagonal entry, a matrix is
    taken to have finitely many nonzero rows when all of them sit in the upper
    half of the window, and the trace is summed over the window. Agrees with
    :func:`classify` when the finite part of ``a`` lives in the upper half of
    the window.
    """
    rows = a.window(n, n)
    alpha = rows[n - 1][n - 1]
    zero = a.field.zero

    def entry(i, j):
        return rows[i][j] - (alpha if i == j else zero)

    nonzero_rows = [i for i in range(n) if any(entry(i, j) for j in range(n))]
    if any(i >= n // 2 for i in nonzero_rows):
        return IdealName.GLCF
    trace = sum((entry(i, i) for i in range(n)), zero)
    if alpha:
        if not nonzero_rows:
            return IdealName.DSC
        return IdealName.DSC_GLFR if trace else IdealName.DSC_SLFR
    if nonzero_rows:
        return IdealName.GLFR if trace else IdealName.SLFR
    return IdealName.ZERO
