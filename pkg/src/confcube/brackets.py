"""Whitehead-bracket calculus for configuration spaces of S1 x B3.

Elements are Q-linear combinations of bracket monomials in decorated
generators e_i w_ij (point i loops the circle e times, then sweeps the
normal sphere of point j).  Generators sit in degree 3, monomials of
weight w in degree 2w+1; only weights 1..3 (degrees 3, 5, 7) occur.

Normalization happens in two stages.  Stage one is structural
rewriting: w_ii = 0, index orientation i < j, brackets of index-disjoint
generator pairs vanish, graded antisymmetry orients every bracket
ascending in the global leaf order, weight-3 monomials are right-nested
and straightened into free-Lie (Hall) coordinates.  Stage two imposes
the cyclic identity [w_ij, w_jk] = [w_jk, w_ki] (three distinct indices)
by exact linear algebra: all instances reachable from the support inside
a decoration box are row-reduced and the element is expressed in the
surviving coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import DimensionError, LaurentPoly, SparseEliminator


class DegreeError(ValueError):
    """Bracket would leave the supported weight range (1..3)."""


@dataclass(frozen=True)
class Leaf:
    """Decorated generator t_i^e * w_ij with 1 <= i < j <= k."""

    i: int
    j: int
    e: int

    def key(self):
        return (self.i, self.j, self.e)

    def maxdec(self) -> int:
        return abs(self.e)

    def indices(self) -> frozenset:
        return frozenset((self.i, self.j))

    def __str__(self) -> str:
        return f"t{self.i}^{self.e}*w{self.i}{self.j}" if self.e else f"w{self.i}{self.j}"


@dataclass(frozen=True)
class Br:
    """Formal Whitehead bracket of two monomials."""

    left: object
    right: object

    def key(self):
        return self.left.key() + self.right.key()

    def maxdec(self) -> int:
        return max(self.left.maxdec(), self.right.maxdec())

    def indices(self) -> frozenset:
        return self.left.indices() | self.right.indices()

    def __str__(self) -> str:
        return f"[{self.left},{self.right}]"


def leaf(i: int, j: int, e: int = 0):
    """Build a canonical leaf; w_ji is oriented to w_ij (the sphere is
    3-dimensional so no sign), decorations move to the first index.
    Returns None for the vanishing w_ii."""
    if i == j:
        return None
    if i > j:
        # t_j^e w_ji = t_i^{-e} w_ij after reorienting
        i, j, e = j, i, -e
    return Leaf(i, j, e)


def weight(m) -> int:
    if isinstance(m, Leaf):
        return 1
    return weight(m.left) + weight(m.right)


def degree(m) -> int:
    return 2 * weight(m) + 1


def max_index(m) -> int:
    return max(m.indices())


def _disjoint(a: Leaf, b: Leaf) -> bool:
    return not (a.indices() & b.indices())


def canon_monomial(m) -> dict:
    """Structural canonical form of a monomial as {monomial: coeff}.

    Output monomials are leaves, oriented weight-2 brackets, or Hall
    weight-3 brackets [a, [b, c]] with b < c and a >= b.
    """
    if isinstance(m, Leaf):
        return {m: Fraction(1)}
    w = weight(m)
    if w == 2:
        x, y = m.left, m.right
        if not (isinstance(x, Leaf) and isinstance(y, Leaf)):
            raise DegreeError("weight-2 monomial must bracket two generators")
        if x == y or _disjoint(x, y):
            return {}
        if x.key() > y.key():
            return {Br(y, x): Fraction(-1)}
        return {Br(x, y): Fraction(1)}
    if w == 3:
        if isinstance(m.left, Br):
            # [[a,b],c] = -[c,[a,b]] (all degrees odd here)
            return _scaled(canon_monomial(Br(m.right, m.left)), Fraction(-1))
        a = m.left
        inner = canon_monomial(m.right)
        out: dict = {}
        for im, ic in inner.items():
            b, c = im.left, im.right
            if a.key() >= b.key():
                _accum(out, Br(a, im), ic)
            else:
                # Jacobi straightening: [a,[b,c]] = [b,[a,c]] - [c,[a,b]]
                for nm, nc in _hall_pair(b, a, c, ic).items():
                    _accum(out, nm, nc)
                for nm, nc in _hall_pair(c, a, b, -ic).items():
                    _accum(out, nm, nc)
        return out
    raise DegreeError(f"unsupported weight {w}")


def _hall_pair(outer: Leaf, x: Leaf, y: Leaf, coeff: Fraction) -> dict:
    """Canonical form of coeff * [outer, [x, y]] with outer >= min(x, y)."""
    if x == y or _disjoint(x, y):
        return {}
    if x.key() > y.key():
        x, y, coeff = y, x, -coeff
    return {Br(outer, Br(x, y)): coeff}


def _accum(d: dict, m, c: Fraction) -> None:
    s = d.get(m, Fraction(0)) + c
    if s:
        d[m] = s
    else:
        d.pop(m, None)


def _scaled(d: dict, c: Fraction) -> dict:
    return {m: v * c for m, v in d.items()}


class Element:
    """Homogeneous Q-combination of bracket monomials over C_k."""

    __slots__ = ("k", "degree", "terms")

    def __init__(self, k: int, degree: int, terms: dict | None = None, _canonical=False):
        if degree not in (3, 5, 7):
            raise DegreeError(f"unsupported degree {degree}")
        self.k = k
        self.degree = degree
        clean: dict = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if 2 * weight(m) + 1 != degree:
                raise DegreeError(f"monomial {m} has wrong degree for element")
            if max_index(m) > k:
                raise DimensionError(f"monomial {m} exceeds ambient k={k}")
            if _canonical:
                _accum(clean, m, c)
            else:
                for cm, cc in canon_monomial(m).items():
                    _accum(clean, cm, cc * c)
        self.terms = clean

    @classmethod
    def zero(cls, k: int, degree: int) -> "Element":
        return cls(k, degree)

    @classmethod
    def from_monomial(cls, k: int, m, coeff=1) -> "Element":
        return cls(k, 2 * weight(m) + 1, {m: Fraction(coeff)})

    def is_structurally_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "Element") -> None:
        if self.k != other.k or self.degree != other.degree:
            raise DimensionError(
                f"mismatched elements: C_{self.k} deg {self.degree} vs "
                f"C_{other.k} deg {other.degree}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            _accum(terms, m, c)
        return Element(self.k, self.degree, terms, _canonical=True)

    def __neg__(self) -> "Element":
        return Element(self.k, self.degree,
                       {m: -c for m, c in self.terms.items()}, _canonical=True)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, c) -> "Element":
        c = Fraction(c)
        return Element(self.k, self.degree,
                       {m: v * c for m, v in self.terms.items()}, _canonical=True)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (isinstance(other, Element) and self.k == other.k
                and self.degree == other.degree and self.terms == other.terms)

    def __hash__(self):
        return hash((self.k, self.degree, frozenset(self.terms.items())))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda mc: mc[0].key())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if c == 1:
                parts.append(str(m))
            elif c == -1:
                parts.append(f"-{m}")
            else:
                parts.append(f"{c}*{m}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"<Element C_{self.k} deg {self.degree}: {self}>"


def act(exps, m, k: int | None = None) -> Element:
    """Group-ring monomial action t^exps on a monomial or Element.

    Each leaf (i, j, e) becomes (i, j, e + a_i - a_j); the action
    distributes over brackets leafwise.
    """
    if isinstance(m, Element):
        if len(exps) != m.k:
            raise DimensionError(f"exponent vector length {len(exps)} != k={m.k}")
        out = Element.zero(m.k, m.degree)
        for mono, c in m.terms.items():
            out = out + act(exps, mono, m.k) * c
        return out
    kk = k if k is not None else max_index(m)
    if len(exps) < max_index(m):
        raise DimensionError("exponent vector shorter than monomial indices")
    return Element.from_monomial(kk if k is not None else len(exps), _act_mono(exps, m))


def _act_mono(exps, m):
    if isinstance(m, Leaf):
        return Leaf(m.i, m.j, m.e + exps[m.i - 1] - exps[m.j - 1])
    return Br(_act_mono(exps, m.left), _act_mono(exps, m.right))


def poly_act(p: LaurentPoly, m, k: int) -> Element:
    """Action of a Laurent polynomial: sum of monomial actions."""
    deg = 2 * weight(m) + 1
    out = Element.zero(k, deg)
    for ev, c in p.terms.items():
        out = out + act(ev, m, k) * c
    return out


def bracket(x: Element, y: Element) -> Element:
    """Bilinear formal Whitehead bracket; degree adds minus one."""
    if x.k != y.k:
        raise DimensionError("bracket of elements over different C_k")
    deg = x.degree + y.degree - 1
    if deg > 7:
        raise DegreeError(f"bracket degree {deg} exceeds supported 7 (weight > 3)")
    terms: dict = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            for m, c in canon_monomial(Br(mx, my)).items():
                _accum(terms, m, c * cx * cy)
    return Element(x.k, deg, terms, _canonical=True)


def _third_leaf(x: Leaf, y: Leaf):
    """Closing edge of the triangle spanned by two generators sharing
    exactly one index, with the potential-consistent decoration.

    For x = w_(a,s) and y = w_(s,b) the cyclic identity walks the path
    a -> s -> b, and the third ordered pair is (y, w_(b,a))."""
    shared = x.indices() & y.indices()
    if len(shared) != 1:
        return None
    s = next(iter(shared))
    a = next(iter(x.indices() - {s}))
    b = next(iter(y.indices() - {s}))
    # potentials: phi_a - phi_s from x, phi_s - phi_b from y
    u = x.e if x.i == a else -x.e
    v = y.e if y.i == s else -y.e
    # third edge w_(b,a): phi_b - phi_a = -(u + v)
    if b < a:
        return Leaf(b, a, -(u + v))
    return Leaf(a, b, u + v)


def _cyclic_orbit(x: Leaf, y: Leaf):
    """Ordered pairs of the cyclic-identity orbit of (x, y), or None."""
    z = _third_leaf(x, y)
    if z is None:
        return None
    return [(x, y), (y, z), (z, x)]


def _pair_rows(x: Leaf, y: Leaf, box: int):
    """Weight-2 relation rows touching the ordered generator pair (x, y)."""
    orbit = _cyclic_orbit(x, y)
    if orbit is None:
        return []
    vecs = []
    for (u, v) in orbit:
        if max(u.maxdec(), v.maxdec()) > box:
            return []  # an out-of-box corner disables the whole instance
        vecs.append(canon_monomial(Br(u, v)))
    rows = []
    for a, b in ((0, 1), (1, 2)):
        row: dict = {}
        for m, c in vecs[a].items():
            _accum(row, m, c)
        for m, c in vecs[b].items():
            _accum(row, m, -c)
        if row:
            rows.append(row)
    return rows


def _disjoint_row(g: Leaf, x: Leaf, y: Leaf) -> dict:
    """Relation row for [g, [x, y]] = 0 with (x, y) index-disjoint.

    The bracket itself dies structurally; its content lives in the
    Jacobi-straightened form, whose terms need not vanish.  Killing the
    inner pair before straightening would lose the relation, so the
    straightening here is done first."""
    if x == y:
        return {}
    sign = Fraction(1)
    if x.key() > y.key():
        x, y, sign = y, x, -sign
    if g.key() >= x.key():
        return {}  # single structurally-zero monomial: no content
    row: dict = {}
    for m, c in _hall_pair(x, g, y, sign).items():
        _accum(row, m, c)
    for m, c in _hall_pair(y, g, x, -sign).items():
        _accum(row, m, c)
    return row


def _weight3_rows(mono: Br, box: int):
    """Relation rows touching a canonical weight-3 monomial.

    Every degree-7 relation is a generator bracketed with a weight-2
    relation instance; in Hall coordinates those are exactly the rows
    produced here (cyclic-orbit differences and disjoint-pair brackets
    pushed through straightening)."""
    a, b, c = mono.left, mono.right.left, mono.right.right
    rows = []
    for g, x, y in ((a, b, c), (b, a, c), (c, a, b)):
        orbit = _cyclic_orbit(x, y)
        if orbit is not None:
            vecs = []
            ok = True
            for (u, v) in orbit:
                if max(u.maxdec(), v.maxdec()) > box:
                    ok = False
                    break
                vecs.append(canon_monomial(Br(g, Br(u, v))))
            if not ok:
                continue
            for s, t in ((0, 1), (1, 2)):
                row: dict = {}
                for m, cc in vecs[s].items():
                    _accum(row, m, cc)
                for m, cc in vecs[t].items():
                    _accum(row, m, -cc)
                if row:
                    rows.append(row)
        elif _disjoint(x, y):
            row = _disjoint_row(g, x, y)
            if row:
                rows.append(row)
    return rows


def _column_key(m):
    """Global column order: large decorations eliminate first, so
    canonical coordinates concentrate on small decorations."""
    return (-m.maxdec(), m.key())


class RelationSpace:
    """Incremental saturated space of relation instances.

    Monomials are explored on demand: exploring a monomial materializes
    every relation instance touching it whose participants stay inside
    the decoration box, and recursively explores those participants.
    External rows (face images, differentials) may be mixed in; a zero
    residual then certifies membership in the combined span.
    """

    __slots__ = ("degree", "box", "explored", "mono_of", "elim")

    def __init__(self, degree: int, box: int):
        if degree not in (5, 7):
            raise DegreeError("relation spaces exist in degrees 5 and 7")
        self.degree = degree
        self.box = box
        self.explored: set = set()
        self.mono_of: dict = {}
        self.elim = SparseEliminator()

    def _key(self, m):
        k = _column_key(m)
        self.mono_of[k] = m
        return k

    def ensure(self, monomials) -> None:
        queue = [m for m in monomials if m not in self.explored]
        while queue:
            m = queue.pop()
            if m in self.explored:
                continue
            self.explored.add(m)
            rows = (_weight3_rows(m, self.box) if self.degree == 7
                    else _pair_rows(m.left, m.right, self.box))
            for row in rows:
                for mm in row:
                    if mm not in self.explored:
                        queue.append(mm)
                self.elim.add({self._key(mm): c for mm, c in row.items()})

    def add_row(self, terms: dict) -> bool:
        """Mix in an external relation row; True if it was independent."""
        self.ensure(terms.keys())
        return bool(self.elim.add({self._key(m): c for m, c in terms.items()}))

    def reduce(self, terms: dict) -> dict:
        self.ensure(terms.keys())
        red = self.elim.reduce({self._key(m): c for m, c in terms.items()})
        return {self.mono_of[k]: c for k, c in red.items()}


def normalize(x: Element, box: int | None = None) -> Element:
    """Canonical coordinates of x modulo the generator relations.

    Degree 3 needs structural rewriting only.  Degrees 5 and 7 reduce
    against all cyclic/disjoint relation instances reachable from the
    support within a decoration box (twice the support's largest
    decoration by default, so one triangle-closing step never leaves
    the box)."""
    if x.degree == 3 or not x.terms:
        return x
    b = max(m.maxdec() for m in x.terms)
    if box is None:
        box = 2 * b
    elif box < b:
        raise ValueError("normalization box smaller than the support")
    space = RelationSpace(x.degree, box)
    space.ensure(x.terms.keys())
    return Element(x.k, x.degree, space.reduce(x.terms), _canonical=True)


def equal(x: Element, y: Element, box: int | None = None) -> bool:
    """Exact equality modulo relations: normalize(x - y) == 0."""
    x._check(y)
    return not normalize(x - y, box=box).terms
