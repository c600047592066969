"""Coface (point doubling) and codegeneracy (point forgetting) maps,
and the first Bousfield-Kan differential d1 = sum of signed cofaces.

The coface substitution tables are locked in by fixture tests against
every displayed instance; the general rule for doubling point i maps
t_i to t_i*t_{i+1} and shifts every higher variable up, so a generator
touching the doubled point splits into two.
"""

from __future__ import annotations

from fractions import Fraction

from .brackets import Br, Element, Leaf, normalize
from .exact import DimensionError


class FaceIndex:
    """Coface index over C_k: 0 <= i <= k+1, the ends doubling the
    boundary points."""

    __slots__ = ("k", "i")

    def __init__(self, k: int, i: int):
        if not 0 <= i <= k + 1:
            raise DimensionError(f"coface index {i} out of range for k={k}")
        self.k = k
        self.i = i


def _coface_leaf(i: int, k: int, lf: Leaf) -> list[Leaf]:
    """Images of a decorated generator under the i-th coface of C_k."""
    if i == 0:
        return [Leaf(lf.i + 1, lf.j + 1, lf.e)]
    if i == k + 1:
        return [lf]

    def shift(a: int) -> int:
        return a if a < i else a + 1

    a, b, e = lf.i, lf.j, lf.e
    if a != i and b != i:
        return [Leaf(shift(a), shift(b), e)]
    if a == i:
        return [Leaf(i, shift(b), e), Leaf(i + 1, shift(b), e)]
    # b == i: the doubled point is the sphere being traversed
    return [Leaf(a, i, e), Leaf(a, i + 1, e)]


def _expand(m, images) -> list:
    """All monomials obtained by choosing one image per leaf."""
    if isinstance(m, Leaf):
        return images(m)
    out = []
    for l in _expand(m.left, images):
        for r in _expand(m.right, images):
            out.append(Br(l, r))
    return out


def coface(f: FaceIndex, x: Element) -> Element:
    """The i-th coface map pi_* C_k -> C_{k+1}, extended multilinearly."""
    if x.k != f.k:
        raise DimensionError(f"element over C_{x.k}, face over C_{f.k}")
    terms: dict = {}
    for m, c in x.terms.items():
        for mm in _expand(m, lambda lf: _coface_leaf(f.i, f.k, lf)):
            terms[mm] = terms.get(mm, Fraction(0)) + c
    return Element(x.k + 1, x.degree, terms)


def codegeneracy(i: int, x: Element) -> Element:
    """Forget the i-th point (1 <= i <= k); monomials touching it die."""
    if not 1 <= i <= x.k:
        raise DimensionError(f"codegeneracy index {i} out of range for k={x.k}")
    terms: dict = {}
    for m, c in x.terms.items():
        if i in m.indices():
            continue
        mm = _relabel_down(m, i)
        terms[mm] = terms.get(mm, Fraction(0)) + c
    return Element(x.k - 1, x.degree, terms)


def _relabel_down(m, i: int):
    if isinstance(m, Leaf):
        a = m.i if m.i < i else m.i - 1
        b = m.j if m.j < i else m.j - 1
        return Leaf(a, b, m.e)
    return Br(_relabel_down(m.left, i), _relabel_down(m.right, i))


def d1(x: Element, box: int | None = None) -> Element:
    """Alternating coface sum C_k -> C_{k+1}, normalized."""
    acc = Element.zero(x.k + 1, x.degree)
    sign = 1
    for i in range(x.k + 2):
        acc = acc + coface(FaceIndex(x.k, i), x) * sign
        sign = -sign
    return normalize(acc, box=box)


def in_all_kernels(x: Element) -> bool:
    """Membership in the E1 column: every codegeneracy kills x."""
    return all(not normalize(codegeneracy(i, x)).terms for i in range(1, x.k + 1))
