"""Formal cubical cells built from declared generators.

A cell is a map-shaped expression I^n -> X assembled from generators by
constant extension (Id), reversal (Rev), coordinate interchange (Rot),
folds, concatenation (Star, n-ary and flattened), parallel combination
of disjointly-supported families (Par), and the composite macros Flip,
Revolve and Twist.  Unitors are primitive one-higher cells mediating
between a concatenation-with-degenerate-part and its stripped form.

Face extraction is structural and exact; the decidable semantics lives
in the tiling module.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class CellError(ValueError):
    pass


class DirectionError(CellError):
    pass


class DisjointnessError(CellError):
    pass


class CompositionError(CellError):
    pass


class _Unverifiable:
    """Marker for boundary data a generator declaration leaves open."""

    def __repr__(self):
        return "UNVERIFIABLE"

    def __bool__(self):
        return False


UNVERIFIABLE = _Unverifiable()


@dataclass(frozen=True)
class Gen:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Id:
    i: int
    e: object

    def __str__(self):
        return f"id_{self.i}({self.e})"


@dataclass(frozen=True)
class Rev:
    i: int
    e: object

    def __str__(self):
        return f"rev_{self.i}({self.e})"


@dataclass(frozen=True)
class Fold:
    e1: int
    e2: int
    i: int
    j: int
    e: object

    def __str__(self):
        return f"fold{self.e1}{self.e2}_{self.i}_{self.j}({self.e})"


@dataclass(frozen=True)
class Rot:
    i: int
    j: int
    e: object

    def __str__(self):
        return f"rot_{self.i}_{self.j}({self.e})"


@dataclass(frozen=True)
class Star:
    i: int
    parts: tuple

    def __str__(self):
        inner = ", ".join(str(p) for p in self.parts)
        return f"star{self.i}[{inner}]"


@dataclass(frozen=True)
class Par:
    a: object
    b: object

    def __str__(self):
        return f"par({self.a}, {self.b})"


@dataclass(frozen=True)
class Flip:
    """2x2 seed grid, display order: ((h, k), (f, g)) with f the lower
    left corner, composed in directions (i, j)."""

    grid: tuple
    i: int
    j: int

    def __str__(self):
        (h, k), (f, g) = self.grid
        return f"flip_{self.i}_{self.j}{{{h}, {k}; {f}, {g}}}"


@dataclass(frozen=True)
class Revolve:
    """f revolved around l; f's boundary square lives in directions
    (i, j) and l's radial direction (the one whose front face matches
    f's boundary) defaults to l's last coordinate."""

    f: object
    l: object
    i: int = 1
    j: int = 2
    radial: int | None = None

    def __str__(self):
        r = "" if self.radial is None else f"^{self.radial}"
        return f"revolve_{self.i}_{self.j}{r}({self.f}; {self.l})"


@dataclass(frozen=True)
class Twist:
    i: int
    e: object

    def __str__(self):
        return f"twist_{self.i}({self.e})"


@dataclass(frozen=True)
class Unitor:
    """Primitive homotopy from a unit-padded concatenation in direction
    d to its stripped cell, pointing in the last direction.  side 'l'
    strips a leading degenerate part, 'r' a trailing one."""

    side: str
    d: int
    e: object

    def __str__(self):
        return f"unitor{self.side}_{self.d}({self.e})"


@dataclass(frozen=True)
class GeneratorDecl:
    name: str
    dim: int
    boundary: tuple = ()  # ((i, eps, expr-or-None), ...)
    chords: frozenset = frozenset()
    interval: str | None = None

    def face(self, eps: int, i: int):
        for (bi, beps, expr) in self.boundary:
            if bi == i and beps == eps:
                return expr
        return None


class Decls:
    """Registry of generator declarations: the single transcription
    point for boundary tables and chord supports."""

    def __init__(self):
        self.gens: dict[str, GeneratorDecl] = {}

    def add(self, name: str, dim: int, boundary: dict | None = None,
            chords=(), interval: str | None = None) -> GeneratorDecl:
        entries = tuple(sorted(((i, e, expr)
                                for (i, e), expr in (boundary or {}).items()),
                               key=lambda t: (t[0], t[1])))
        decl = GeneratorDecl(name, dim, entries, frozenset(chords), interval)
        self.gens[name] = decl
        return decl

    def __getitem__(self, name: str) -> GeneratorDecl:
        if name not in self.gens:
            raise CellError(f"undeclared generator {name!r}")
        return self.gens[name]

    def __contains__(self, name: str) -> bool:
        return name in self.gens


def dim(decls: Decls, e) -> int:
    if isinstance(e, Gen):
        return decls[e.name].dim
    if isinstance(e, Id):
        n = dim(decls, e.e)
        if not 1 <= e.i <= n + 1:
            raise DirectionError(f"id direction {e.i} out of range for dim {n}")
        return n + 1
    if isinstance(e, Rev):
        n = dim(decls, e.e)
        if not 1 <= e.i <= n:
            raise DirectionError(f"rev direction {e.i} out of range for dim {n}")
        return n
    if isinstance(e, Fold):
        n = dim(decls, e.e)
        if not (1 <= e.i < e.j <= n + 1):
            raise DirectionError(f"fold directions ({e.i},{e.j}) invalid for dim {n}")
        return n + 1
    if isinstance(e, Rot):
        n = dim(decls, e.e)
        if not (1 <= e.i < e.j <= n):
            raise DirectionError(f"rot directions ({e.i},{e.j}) invalid for dim {n}")
        return n
    if isinstance(e, Star):
        if not e.parts:
            raise CellError("empty concatenation")
        dims = {dim(decls, p) for p in e.parts}
        if len(dims) != 1:
            raise CellError("concatenation of cells of different dimensions")
        n = dims.pop()
        if not 1 <= e.i <= n:
            raise DirectionError(f"star direction {e.i} out of range for dim {n}")
        return n
    if isinstance(e, Par):
        na, nb = dim(decls, e.a), dim(decls, e.b)
        if na != nb:
            raise CellError("parallel combination needs equal dimensions")
        return na
    if isinstance(e, Flip):
        (h, k), (f, g) = e.grid
        dims = {dim(decls, x) for x in (h, k, f, g)}
        if len(dims) != 1:
            raise CellError("flip grid entries must share a dimension")
        return dims.pop()
    if isinstance(e, Revolve):
        n = dim(decls, e.f)
        if dim(decls, e.l) != n - 1:
            raise CellError("revolve needs dim(l) = dim(f) - 1")
        return n
    if isinstance(e, Twist):
        n = dim(decls, e.e)
        if not 1 <= e.i <= n:
            raise DirectionError(f"twist direction {e.i} out of range for dim {n}")
        return n + 2
    if isinstance(e, Unitor):
        return dim(decls, e.e) + 1
    raise CellError(f"not a cell expression: {e!r}")


def chord_support(decls: Decls, e) -> frozenset:
    if isinstance(e, Gen):
        return decls[e.name].chords
    if isinstance(e, (Id, Rev, Fold, Rot, Twist, Unitor)):
        return chord_support(decls, e.e)
    if isinstance(e, Star):
        out = frozenset()
        for p in e.parts:
            out |= chord_support(decls, p)
        return out
    if isinstance(e, Par):
        return chord_support(decls, e.a) | chord_support(decls, e.b)
    if isinstance(e, Flip):
        (h, k), (f, g) = e.grid
        return (chord_support(decls, h) | chord_support(decls, k)
                | chord_support(decls, f) | chord_support(decls, g))
    if isinstance(e, Revolve):
        return chord_support(decls, e.f) | chord_support(decls, e.l)
    raise CellError(f"not a cell expression: {e!r}")


def par_combine(decls: Decls, a, b):
    """Parallel combination; requires disjoint chord supports."""
    sa, sb = chord_support(decls, a), chord_support(decls, b)
    if sa & sb:
        raise DisjointnessError(
            f"overlapping chord supports: {sorted(sa & sb)}")
    return Par(a, b)


def star(i: int, *parts):
    """n-ary concatenation, flattening nested stars in the same
    direction (equal-width convention makes this strictly associative)."""
    flat = []
    for p in parts:
        if isinstance(p, Star) and p.i == i:
            flat.extend(p.parts)
        else:
            flat.append(p)
    if len(flat) == 1:
        return flat[0]
    return Star(i, tuple(flat))


def _drive(e, slot: int, src: int):
    """Adjacent-interchange chain presenting the cell whose input
    coordinate `src` feeds coordinate `slot` of e, the coordinates in
    between shifting across by one (identity when slot == src)."""
    if src > slot:
        for c in range(slot, src):
            e = Rot(c, c + 1, e)
        return e
    for c in range(slot - 1, src - 1, -1):
        e = Rot(c, c + 1, e)
    return e


def expand_revolve(decls: Decls, rv: Revolve):
    n = dim(decls, rv.f)
    m = n - 1
    i, j = rv.i, rv.j
    radial = rv.radial if rv.radial is not None else m
    a = _drive(rv.l, radial, i)
    b = _drive(rv.l, radial, j - 1)
    tr = Fold(0, 0, i, j, a)
    tm = Id(i, b)
    mr = Id(j, a)
    rows = [
        (Rev(i, Rev(j, tr)), Rev(j, tm), Rev(j, tr)),
        (Rev(i, mr), rv.f, mr),
        (Rev(i, tr), tm, tr),
    ]
    return star(j, *[star(i, *row) for row in rows])


def expand_flip(fl: Flip):
    (h, k), (f, g) = fl.grid
    i, j = fl.i, fl.j
    rows = [
        (Rev(j, Rev(i, k)), Rev(j, h), Rev(j, k)),
        (Rev(i, g), f, g),
        (Rev(i, k), h, k),
    ]
    return star(j, *[star(i, *row) for row in rows])


def expand_twist(decls: Decls, tw: Twist):
    """Core concatenation of the two fold-of-fold cells, glued with
    unitors along the twisting direction.  The remaining boundary
    components agree with the declared twist faces up to unit padding
    (strictness on all six faces at once is unattainable for a
    composite, so the sides the concatenation diagrams consume are the
    strict ones)."""
    h = tw.e
    i = tw.i
    n = dim(decls, h)
    z = Fold(0, 0, i, i + 1, h)
    core = star(n + 2, Fold(1, 1, i + 1, n + 2, z), Fold(1, 0, i, n + 2, z))
    u0 = _side_unitor(decls, face(decls, 0, i, core))
    u1 = _side_unitor(decls, face(decls, 1, i, core))
    left = Rev(i, _drive(u0, n + 2, i))
    right = _drive(u1, n + 2, i)
    return star(i, left, core, right)


def _degenerate_along(decls: Decls, e, d: int) -> bool:
    from .tiling import cells_equal
    probe = face(decls, 0, d, e)
    if probe is UNVERIFIABLE:
        return False
    return cells_equal(decls, e, Id(d, probe))


def _side_unitor(decls: Decls, f):
    """Unitor stripping the degenerate part of a two-part concatenation."""
    if not (isinstance(f, Star) and len(f.parts) == 2):
        raise CompositionError(f"twist side face is not a two-part gluing: {f}")
    p, q = f.parts
    if _degenerate_along(decls, q, f.i):
        return Unitor("r", f.i, p)
    if _degenerate_along(decls, p, f.i):
        return Unitor("l", f.i, q)
    raise CompositionError(f"twist side face has no degenerate part: {f}")


def _expand(decls: Decls, e, twists: bool):
    if isinstance(e, Gen):
        return e
    if isinstance(e, Id):
        return Id(e.i, _expand(decls, e.e, twists))
    if isinstance(e, Rev):
        return Rev(e.i, _expand(decls, e.e, twists))
    if isinstance(e, Fold):
        return Fold(e.e1, e.e2, e.i, e.j, _expand(decls, e.e, twists))
    if isinstance(e, Rot):
        return Rot(e.i, e.j, _expand(decls, e.e, twists))
    if isinstance(e, Star):
        return star(e.i, *[_expand(decls, p, twists) for p in e.parts])
    if isinstance(e, Par):
        return Par(_expand(decls, e.a, twists), _expand(decls, e.b, twists))
    if isinstance(e, Unitor):
        return Unitor(e.side, e.d, _expand(decls, e.e, twists))
    if isinstance(e, Flip):
        (h, k), (f, g) = e.grid
        seed = Flip(((_expand(decls, h, twists), _expand(decls, k, twists)),
                     (_expand(decls, f, twists), _expand(decls, g, twists))),
                    e.i, e.j)
        return expand_flip(seed)
    if isinstance(e, Revolve):
        seed = Revolve(_expand(decls, e.f, twists),
                       _expand(decls, e.l, twists), e.i, e.j, e.radial)
        return expand_revolve(decls, seed)
    if isinstance(e, Twist):
        inner = Twist(e.i, _expand(decls, e.e, twists))
        return expand_twist(decls, inner) if twists else inner
    raise CellError(f"not a cell expression: {e!r}")


def expand_macros(decls: Decls, e):
    """Rewrite Flip/Revolve/Twist into core constructors, recursively."""
    return _expand(decls, e, twists=True)


def expand_composites(decls: Decls, e):
    """Expand the grid macros but keep twists as primitive cells (their
    declared boundary is what concatenation diagrams consume)."""
    return _expand(decls, e, twists=False)


def face(decls: Decls, eps: int, i: int, e):
    """Restriction to the front (eps=0) or back (eps=1) face in
    direction i, computed structurally.  Returns UNVERIFIABLE when a
    generator declaration leaves the requested face open."""
    n = dim(decls, e)
    if not 1 <= i <= n:
        raise DirectionError(f"face direction {i} out of range for dim {n}")
    if eps not in (0, 1):
        raise CellError(f"face side must be 0 or 1, got {eps}")
    if isinstance(e, Gen):
        out = decls[e.name].face(eps, i)
        return UNVERIFIABLE if out is None else out
    if isinstance(e, Id):
        if i == e.i:
            return e.e
        if i < e.i:
            inner = face(decls, eps, i, e.e)
            return inner if inner is UNVERIFIABLE else Id(e.i - 1, inner)
        inner = face(decls, eps, i - 1, e.e)
        return inner if inner is UNVERIFIABLE else Id(e.i, inner)
    if isinstance(e, Rev):
        if i == e.i:
            return face(decls, 1 - eps, i, e.e)
        d = e.i - (1 if i < e.i else 0)
        inner = face(decls, eps, i, e.e)
        return inner if inner is UNVERIFIABLE else Rev(d, inner)
    if isinstance(e, Rot):
        a, b = e.i, e.j
        if i == a:
            inner = face(decls, eps, b, e.e)
            if inner is UNVERIFIABLE:
                return inner
            return _drive(inner, a, b - 1)
        if i == b:
            inner = face(decls, eps, a, e.e)
            if inner is UNVERIFIABLE:
                return inner
            return _drive(inner, b - 1, a)
        inner = face(decls, eps, i, e.e)
        if inner is UNVERIFIABLE:
            return inner
        aa = a - (1 if i < a else 0)
        bb = b - (1 if i < b else 0)
        return Rot(aa, bb, inner) if aa != bb else inner
    if isinstance(e, Fold):
        a, b = e.i, e.j
        if i == b:
            if eps == e.e2:
                return e.e  # the identity slice
            inner = face(decls, 1 - e.e1, a, e.e)
            return inner if inner is UNVERIFIABLE else Id(a, inner)
        if i == a:
            if eps == e.e1:
                # the remaining coordinate b-1 drives the folded slot,
                # reversed for the mixed fold variants
                out = _drive(e.e, a, b - 1)
                if e.e1 != e.e2:
                    out = Rev(b - 1, out)
                return out
            inner = face(decls, 1 - e.e1, a, e.e)
            return inner if inner is UNVERIFIABLE else Id(b - 1, inner)
        if i < a:
            inner = face(decls, eps, i, e.e)
            return (inner if inner is UNVERIFIABLE
                    else Fold(e.e1, e.e2, a - 1, b - 1, inner))
        if i < b:
            inner = face(decls, eps, i, e.e)
            return (inner if inner is UNVERIFIABLE
                    else Fold(e.e1, e.e2, a, b - 1, inner))
        inner = face(decls, eps, i - 1, e.e)
        return (inner if inner is UNVERIFIABLE
                else Fold(e.e1, e.e2, a, b, inner))
    if isinstance(e, Star):
        if i == e.i:
            part = e.parts[0] if eps == 0 else e.parts[-1]
            return face(decls, eps, i, part)
        faces = []
        for p in e.parts:
            fp = face(decls, eps, i, p)
            if fp is UNVERIFIABLE:
                return UNVERIFIABLE
            faces.append(fp)
        return star(e.i - (1 if i < e.i else 0), *faces)
    if isinstance(e, Par):
        fa = face(decls, eps, i, e.a)
        fb = face(decls, eps, i, e.b)
        if fa is UNVERIFIABLE or fb is UNVERIFIABLE:
            return UNVERIFIABLE
        return Par(fa, fb)
    if isinstance(e, Unitor):
        n_inner = dim(decls, e.e)
        if i == n_inner + 1:
            if eps == 1:
                return e.e
            if e.side == "l":
                lead = face(decls, 0, e.d, e.e)
                if lead is UNVERIFIABLE:
                    return UNVERIFIABLE
                return star(e.d, Id(e.d, lead), e.e)
            trail = face(decls, 1, e.d, e.e)
            if trail is UNVERIFIABLE:
                return UNVERIFIABLE
            return star(e.d, e.e, Id(e.d, trail))
        if i == e.d:
            inner = face(decls, eps, e.d, e.e)
            return (inner if inner is UNVERIFIABLE
                    else Id(n_inner, inner))
        inner = face(decls, eps, i, e.e)
        if inner is UNVERIFIABLE:
            return UNVERIFIABLE
        return Unitor(e.side, e.d - (1 if i < e.d else 0), inner)
    if isinstance(e, Twist):
        # declared boundary per the twisting lemma; payload directions
        # recurse into the underlying homotopy
        h, d = e.e, e.i
        m = dim(decls, h)
        if i == m + 2:
            return Id(d + 1, h) if eps == 0 else Id(d, h)
        if i == d:
            return Fold(1, 1, d, m + 1, h) if eps == 0 else Fold(0, 1, d, m + 1, h)
        if i == d + 1:
            return Fold(1, 0, d, m + 1, h) if eps == 0 else Fold(0, 0, d, m + 1, h)
        if i < d:
            inner = face(decls, eps, i, h)
            return inner if inner is UNVERIFIABLE else Twist(d - 1, inner)
        inner = face(decls, eps, i - 1, h)
        return inner if inner is UNVERIFIABLE else Twist(d, inner)
    # macros: expand then restrict
    return face(decls, eps, i, expand_macros(decls, e))


