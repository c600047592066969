"""Decidable semantics for cell expressions: box tilings of the cube
with exact polynomial reparametrizations into generators.

A tiling is a set of boxes partitioning I^n (up to measure zero); each
box carries one or more parts, a part being a target tag (a generator
name, or an opaque unitor/twist key) with polynomials, in the global
cube coordinates, mapping the box into the target's cube.  Several
parts on one box represent a parallel combination of disjointly
supported families; the constant family is dropped, so the base
interval acts as a unit.  Equality of cells is equality of tilings
after common refinement: identical part sets, box by box, compared by
tags and coefficient-wise polynomials.  No sampling, no tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cells import (UNVERIFIABLE, CompositionError, Decls, Fold, Gen, Id,
                    Par, Rev, Rot, Star, Twist, Unitor, dim)
from .exact import LaurentPoly


def _var(n: int, i: int) -> LaurentPoly:
    return LaurentPoly.var(n, i)


def _const(n: int, c) -> LaurentPoly:
    return LaurentPoly(n, {(0,) * n: Fraction(c)}) if c else LaurentPoly.zero(n)


@dataclass(frozen=True)
class Box:
    lo: tuple  # Fractions
    hi: tuple
    parts: tuple  # ((tag, polys), ...) canonically sorted

    def dim(self) -> int:
        return len(self.lo)


@dataclass(frozen=True)
class Tiling:
    n: int
    boxes: tuple

    def key(self):
        return (self.n, tuple(sorted(
            (b.lo, b.hi, _parts_key(b.parts)) for b in self.boxes)))


def _tag_key(tag):
    if isinstance(tag, tuple):
        return tuple(_tag_key(t) for t in tag)
    if isinstance(tag, Tiling):
        return ("~tiling",) + tag.key()
    return (tag,)


def _parts_key(parts):
    return tuple((_tag_key(t), p) for (t, p) in parts)


def _sorted_parts(parts):
    return tuple(sorted(parts, key=lambda tp: (_tag_key(tp[0]), tp[1])))


def _shift_vars(p: LaurentPoly, at: int) -> LaurentPoly:
    """Renumber variables: indices >= at (0-based) move up by one."""
    out: dict = {}
    for ev, c in p.terms.items():
        new = list(ev[:at]) + [0] + list(ev[at:])
        out[tuple(new)] = c
    return LaurentPoly(p.nvars + 1, out)


def _subst_var(p: LaurentPoly, at: int, value: Fraction) -> LaurentPoly:
    """Substitute a constant for variable `at` (0-based), dropping it."""
    out = LaurentPoly.zero(p.nvars - 1)
    for ev, c in p.terms.items():
        coeff = c * (value ** ev[at])
        key = ev[:at] + ev[at + 1:]
        out = out + LaurentPoly.monomial(p.nvars - 1, key, coeff)
    return out


def _identity_polys(n: int) -> tuple:
    return tuple(_var(n, i + 1) for i in range(n))


_FOLD_EXPR = {
    (0, 0): lambda s, t, one: one - (one - s) * (one - t),
    (1, 1): lambda s, t, one: s * t,
    (1, 0): lambda s, t, one: s * (one - t),
    (0, 1): lambda s, t, one: one - (one - s) * t,
}


class TilingError(CompositionError):
    pass


def normalize_to_tiling(decls: Decls, e) -> Tiling:
    """Exact tiling semantics of a cell expression.  Grid macros are
    expanded; twists and unitors stay opaque boxes keyed by the tiling
    of their payload, except that degenerate payloads collapse to
    constant extensions."""
    from .cells import expand_composites
    return _tile(decls, expand_composites(decls, e))


def _map_boxes(t: Tiling, box_fn, poly_fn) -> Tiling:
    boxes = []
    for b in t.boxes:
        lo, hi = box_fn(b.lo, b.hi)
        parts = _sorted_parts(tuple(
            (tag, tuple(poly_fn(p) for p in polys)) for (tag, polys) in b.parts))
        boxes.append(Box(lo, hi, parts))
    return Tiling(t.n, tuple(boxes))


def _tile(decls: Decls, e) -> Tiling:
    if isinstance(e, Gen):
        n = decls[e.name].dim
        parts = ((e.name, _identity_polys(n)),) if e.name != "gamma" else (("gamma", ()),)
        return Tiling(n, (Box((Fraction(0),) * n, (Fraction(1),) * n, parts),))
    if isinstance(e, Unitor):
        inner = _tile(decls, e.e)
        n = inner.n + 1
        if _constant_along(inner, e.d - 1):
            return _tile(decls, Id(n, e.e))
        parts = ((("unitor", e.side, e.d, inner), _identity_polys(n)),)
        return Tiling(n, (Box((Fraction(0),) * n, (Fraction(1),) * n, parts),))
    if isinstance(e, Twist):
        inner = _tile(decls, e.e)
        n = inner.n + 2
        if _constant_along(inner, e.i - 1):
            return _tile(decls, Id(n, Id(e.i + 1, e.e)))
        parts = ((("twist", e.i, inner), _identity_polys(n)),)
        return Tiling(n, (Box((Fraction(0),) * n, (Fraction(1),) * n, parts),))
    if isinstance(e, Id):
        inner = _tile(decls, e.e)
        at = e.i - 1
        return Tiling(inner.n + 1, tuple(
            Box(b.lo[:at] + (Fraction(0),) + b.lo[at:],
                b.hi[:at] + (Fraction(1),) + b.hi[at:],
                _sorted_parts(tuple(
                    (tag, tuple(_shift_vars(p, at) for p in polys))
                    for (tag, polys) in b.parts)))
            for b in inner.boxes))
    if isinstance(e, Rev):
        inner = _tile(decls, e.e)
        at = e.i - 1
        n = inner.n
        args = [_var(n, c + 1) if c != at else _const(n, 1) - _var(n, at + 1)
                for c in range(n)]

        def box_fn(lo, hi):
            lo2, hi2 = list(lo), list(hi)
            lo2[at], hi2[at] = 1 - hi[at], 1 - lo[at]
            return tuple(lo2), tuple(hi2)

        return _map_boxes(inner, box_fn, lambda p: p.compose(args))
    if isinstance(e, Rot):
        inner = _tile(decls, e.e)
        a, b_ = e.i - 1, e.j - 1
        n = inner.n
        args = [_var(n, (b_ if c == a else a if c == b_ else c) + 1)
                for c in range(n)]

        def box_fn(lo, hi):
            lo2, hi2 = list(lo), list(hi)
            lo2[a], lo2[b_] = lo[b_], lo[a]
            hi2[a], hi2[b_] = hi[b_], hi[a]
            return tuple(lo2), tuple(hi2)

        return _map_boxes(inner, box_fn, lambda p: p.compose(args))
    if isinstance(e, Fold):
        inner = _tile(decls, e.e)
        n = inner.n
        a, bj = e.i - 1, e.j - 1
        for b in inner.boxes:
            if b.lo[a] != 0 or b.hi[a] != 1:
                raise TilingError(
                    f"fold across a subdivision in direction {e.i}: {e}")
        m = n + 1
        one = _const(m, 1)
        phi = _FOLD_EXPR[(e.e1, e.e2)](_var(m, a + 1), _var(m, bj + 1), one)
        args = []
        for c in range(n):
            if c == a:
                args.append(phi)
            else:
                args.append(_var(m, c + 1 if c < bj else c + 2))
        boxes = []
        for b in inner.boxes:
            lo = b.lo[:bj] + (Fraction(0),) + b.lo[bj:]
            hi = b.hi[:bj] + (Fraction(1),) + b.hi[bj:]
            parts = _sorted_parts(tuple(
                (tag, tuple(p.compose(args) for p in polys))
                for (tag, polys) in b.parts))
            boxes.append(Box(lo, hi, parts))
        return Tiling(m, tuple(boxes))
    if isinstance(e, Star):
        at = e.i - 1
        m = len(e.parts)
        tilings = [_tile(decls, p) for p in e.parts]
        n = tilings[0].n
        boxes = []
        for k, tl in enumerate(tilings):
            args = [_var(n, c + 1) if c != at
                    else _var(n, at + 1) * m - _const(n, k)
                    for c in range(n)]
            for b in tl.boxes:
                lo, hi = list(b.lo), list(b.hi)
                lo[at] = (k + b.lo[at]) / m
                hi[at] = (k + b.hi[at]) / m
                parts = _sorted_parts(tuple(
                    (tag, tuple(p.compose(args) for p in polys))
                    for (tag, polys) in b.parts))
                boxes.append(Box(tuple(lo), tuple(hi), parts))
        return Tiling(n, tuple(boxes))
    if isinstance(e, Par):
        ta = _tile(decls, e.a)
        tb = _tile(decls, e.b)
        boxes = []
        for box_a, box_b in _common_refinement(ta, tb):
            live = [(t, p) for (t, p) in box_a.parts + box_b.parts
                    if t != "gamma"]
            parts = _sorted_parts(tuple(live)) if live else (("gamma", ()),)
            boxes.append(Box(box_a.lo, box_a.hi, parts))
        return Tiling(ta.n, tuple(boxes))
    raise TilingError(f"cannot tile {e!r}")


def _constant_along(t: Tiling, axis: int) -> bool:
    """Whether the tiling ignores the axis entirely."""
    for b in t.boxes:
        if b.lo[axis] != 0 or b.hi[axis] != 1:
            return False
        for (_, polys) in b.parts:
            for p in polys:
                if any(ev[axis] for ev in p.terms):
                    return False
    return True


def _breakpoints(t: Tiling) -> list:
    cuts = [set() for _ in range(t.n)]
    for b in t.boxes:
        for c in range(t.n):
            cuts[c].add(b.lo[c])
            cuts[c].add(b.hi[c])
    return [sorted(s) for s in cuts]


def _refine(t: Tiling, cuts: list) -> dict:
    out = {}
    for b in t.boxes:
        ranges = []
        for c in range(t.n):
            pts = [x for x in cuts[c] if b.lo[c] <= x <= b.hi[c]]
            ranges.append(list(zip(pts, pts[1:])))
        for combo in _product(ranges):
            lo = tuple(r[0] for r in combo)
            hi = tuple(r[1] for r in combo)
            out[(lo, hi)] = Box(lo, hi, b.parts)
    return out


def _product(ranges):
    if not ranges:
        yield ()
        return
    for head in ranges[0]:
        for tail in _product(ranges[1:]):
            yield (head,) + tail


def _common_refinement(ta: Tiling, tb: Tiling):
    cuts = [sorted(set(x) | set(y))
            for x, y in zip(_breakpoints(ta), _breakpoints(tb))]
    ra = _refine(ta, cuts)
    rb = _refine(tb, cuts)
    if set(ra) != set(rb):
        raise TilingError("tilings do not cover the same cube")
    return [(ra[k], rb[k]) for k in sorted(ra)]


def face_tiling(decls: Decls, eps: int, i: int, t: Tiling) -> Tiling | None:
    """Restrict a tiling to a boundary hyperplane; generator parts whose
    restriction lands in a declared boundary face are resolved through
    the declaration.  Returns None when a needed face is undeclared."""
    at = i - 1
    value = Fraction(eps)
    boxes = []
    for b in t.boxes:
        if b.lo[at] != value and b.hi[at] != value:
            continue
        lo = b.lo[:at] + b.lo[at + 1:]
        hi = b.hi[:at] + b.hi[at + 1:]
        parts = tuple((tag, tuple(_subst_var(p, at, value) for p in polys))
                      for (tag, polys) in b.parts)
        resolved = _resolve_box(decls, Box(lo, hi, parts))
        if resolved is None:
            return None
        boxes.extend(resolved)
    return Tiling(t.n - 1, tuple(boxes))


def _resolve_box(decls: Decls, b: Box):
    """Push parts whose polynomials pin a target coordinate to 0 or 1
    through the generator's declared boundary."""
    for pi, (tag, polys) in enumerate(b.parts):
        if not isinstance(tag, str) or tag not in decls:
            continue
        for c, p in enumerate(polys):
            const = _constant_value(p)
            if const in (Fraction(0), Fraction(1)):
                expr = decls[tag].face(int(const), c + 1)
                if expr is None or expr is UNVERIFIABLE:
                    return None
                sub = normalize_to_tiling(decls, expr)
                rest = list(polys[:c] + polys[c + 1:])
                out = []
                for piece in _pullback(decls, b, pi, rest, sub):
                    if piece is None:
                        return None
                    out.extend(piece)
                return out
    return [b]


def _pullback(decls: Decls, b: Box, pi: int, rest: list, sub: Tiling):
    """Replace part `pi` of box `b` by the boundary tiling `sub`
    reparametrized through the remaining polynomials `rest`."""
    other_parts = b.parts[:pi] + b.parts[pi + 1:]
    for sb in sub.boxes:
        if all(x == 0 for x in sb.lo) and all(x == 1 for x in sb.hi):
            new_parts = tuple((t2, tuple(q.compose(rest) for q in p2))
                              for (t2, p2) in sb.parts)
            live = [(t2, p2) for (t2, p2) in other_parts + new_parts
                    if t2 != "gamma"]
            parts = _sorted_parts(tuple(live)) if live else (("gamma", ()),)
            yield _resolve_box(decls, Box(b.lo, b.hi, parts))
        else:
            yield _pullback_subdivided(decls, b, other_parts, rest, sb)


def _pullback_subdivided(decls: Decls, b: Box, other_parts, rest: list,
                         sb: Box):
    """Boundary cells subdivide; pulling the sub-box back requires the
    remaining reparametrization to be affine per coordinate (true for
    all constructor-generated tilings)."""
    lo, hi = list(b.lo), list(b.hi)
    for tc, q in enumerate(rest):
        axis = _affine_axis(q)
        if axis is None:
            raise TilingError("cannot pull a subdivided boundary back "
                              "through a nonaffine reparametrization")
        a0, a1, var = axis
        lo_t, hi_t = sb.lo[tc], sb.hi[tc]
        if var is None:
            if not (lo_t <= a0 <= hi_t):
                return []
            continue
        lo_v = (lo_t - a0) / a1
        hi_v = (hi_t - a0) / a1
        if a1 < 0:
            lo_v, hi_v = hi_v, lo_v
        lo[var] = max(lo[var], lo_v)
        hi[var] = min(hi[var], hi_v)
        if lo[var] >= hi[var]:
            return []
    new_parts = tuple((t2, tuple(q.compose(rest) for q in p2))
                      for (t2, p2) in sb.parts)
    live = [(t2, p2) for (t2, p2) in other_parts + new_parts if t2 != "gamma"]
    parts = _sorted_parts(tuple(live)) if live else (("gamma", ()),)
    out = _resolve_box(decls, Box(tuple(lo), tuple(hi), parts))
    return out if out is not None else []


def _constant_value(p: LaurentPoly):
    if not p.terms:
        return Fraction(0)
    if len(p.terms) == 1:
        (ev, c), = p.terms.items()
        if all(x == 0 for x in ev):
            return c
    return None


def _affine_axis(p: LaurentPoly):
    """Decompose an affine single-variable polynomial a0 + a1*x_var;
    returns (a0, a1, var) with var None for constants."""
    a0 = Fraction(0)
    a1 = None
    var = None
    for ev, c in p.terms.items():
        deg = sum(ev)
        if deg == 0:
            a0 = c
        elif deg == 1:
            v = next(i for i, x in enumerate(ev) if x)
            if var is not None and var != v:
                return None
            var, a1 = v, c
        else:
            return None
    if var is None:
        return (a0, None, None)
    return (a0, a1, var)


def tilings_equal(a: Tiling, b: Tiling) -> bool:
    if a.n != b.n:
        return False
    try:
        pairs = _common_refinement(a, b)
    except TilingError:
        return False
    for box_a, box_b in pairs:
        if _parts_key(box_a.parts) != _parts_key(box_b.parts):
            return False
    return True


def cells_equal(decls: Decls, a, b) -> bool:
    """Strict equality of normalized tilings after common refinement."""
    return tilings_equal(normalize_to_tiling(decls, a),
                         normalize_to_tiling(decls, b))


def compare_cells(decls: Decls, a, b) -> str:
    """Tri-state comparison: 'equal', 'unequal' or 'unverifiable'."""
    if a is UNVERIFIABLE or b is UNVERIFIABLE:
        return "unverifiable"
    return "equal" if cells_equal(decls, a, b) else "unequal"


def collapse_units(t: Tiling) -> Tiling:
    """Remove unit-padding slabs: maximal slabs along an axis on which
    every box is constant are dropped (when something non-constant
    remains) and the survivors are rescaled proportionally.  Intended
    for comparisons up to unitor padding; assumes the tiling came from
    a well-glued composite."""
    changed = True
    while changed:
        changed = False
        for axis in range(t.n):
            cuts = sorted({x for b in t.boxes
                           for x in (b.lo[axis], b.hi[axis])})
            slabs = list(zip(cuts, cuts[1:]))
            if len(slabs) <= 1:
                continue
            degenerate = []
            for (a, b) in slabs:
                boxes = [bx for bx in t.boxes
                         if bx.lo[axis] < b and bx.hi[axis] > a]
                const = all(all(ev[axis] == 0 for ev in p.terms)
                            for bx in boxes for (_, polys) in bx.parts
                            for p in polys)
                degenerate.append(const)
            if all(degenerate) or not any(degenerate):
                continue
            keep = [s for s, d in zip(slabs, degenerate) if not d]
            total = sum(b - a for (a, b) in keep)
            remap = []
            acc = Fraction(0)
            for (a, b) in keep:
                w = (b - a) / total
                remap.append(((a, b), (acc, acc + w)))
                acc += w
            new_boxes = []
            n = t.n
            for ((a, b), (na, nb)) in remap:
                scale = (b - a) / (nb - na)
                args = [_var(n, c + 1) if c != axis
                        else _var(n, axis + 1) * scale + _const(n, a - na * scale)
                        for c in range(n)]
                for bx in t.boxes:
                    if not (bx.lo[axis] < b and bx.hi[axis] > a):
                        continue
                    lo, hi = list(bx.lo), list(bx.hi)
                    lo[axis] = na + (max(bx.lo[axis], a) - a) / scale
                    hi[axis] = na + (min(bx.hi[axis], b) - a) / scale
                    parts = _sorted_parts(tuple(
                        (tag, tuple(p.compose(args) for p in polys))
                        for (tag, polys) in bx.parts))
                    new_boxes.append(Box(tuple(lo), tuple(hi), parts))
            t = Tiling(n, tuple(new_boxes))
            changed = True
    return t


def padded_equal(decls: Decls, a, b) -> bool:
    """Equality of cells up to unit padding along concatenation axes."""
    return tilings_equal(collapse_units(normalize_to_tiling(decls, a)),
                         collapse_units(normalize_to_tiling(decls, b)))


def validate_composition(decls: Decls, e) -> list:
    """Check every concatenation's shared faces; returns a list of
    (path, status) for failing or unverifiable gluings."""
    from .cells import expand_composites
    problems = []
    _validate(decls, expand_composites(decls, e), "", problems)
    return problems


def _validate(decls: Decls, e, path: str, problems: list) -> None:
    from .cells import face as _face
    if isinstance(e, Star):
        for k, p in enumerate(e.parts):
            _validate(decls, p, f"{path}/star{e.i}[{k}]", problems)
        for k in range(len(e.parts) - 1):
            left = _face(decls, 1, e.i, e.parts[k])
            right = _face(decls, 0, e.i, e.parts[k + 1])
            status = compare_cells(decls, left, right)
            if status != "equal":
                problems.append((f"{path}/star{e.i}[{k}|{k + 1}]", status))
    elif isinstance(e, (Id, Rev, Fold, Rot, Unitor, Twist)):
        _validate(decls, e.e, path + "/" + type(e).__name__.lower(), problems)
    elif isinstance(e, Par):
        _validate(decls, e.a, path + "/par.a", problems)
        _validate(decls, e.b, path + "/par.b", problems)
