"""Exact rational arithmetic: Laurent polynomials and linear algebra.

Everything here is exact; no floats anywhere.  Coefficients are
`fractions.Fraction`, exponent vectors are plain tuples of ints keyed by
the canonical variable order t1 < t2 < ... < tk.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Rational = Fraction

ExponentVector = tuple  # tuple[int, ...]


class DimensionError(ValueError):
    """Mismatched variable counts or matrix shapes."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"exact arithmetic only, got {type(c).__name__}")


class LaurentPoly:
    """Laurent polynomial in k variables with rational coefficients.

    Stored as a map from exponent vectors (length k, arbitrary signs) to
    nonzero Fractions.  Instances are immutable by convention; all
    operations return fresh objects.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[ExponentVector, Fraction] | None = None):
        self.nvars = nvars
        clean: dict[ExponentVector, Fraction] = {}
        if terms:
            for ev, c in terms.items():
                ev = tuple(ev)
                if len(ev) != nvars:
                    raise DimensionError(
                        f"exponent vector {ev} has length {len(ev)}, expected {nvars}")
                c = _as_fraction(c)
                if c:
                    clean[ev] = clean.get(ev, Fraction(0)) + c
                    if not clean[ev]:
                        del clean[ev]
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff=1) -> "LaurentPoly":
        return cls(nvars, {tuple(exps): _as_fraction(coeff)})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "LaurentPoly":
        """The monomial t_i^power, with 1-based i."""
        ev = [0] * nvars
        ev[i - 1] = power
        return cls.monomial(nvars, ev)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars:
            raise DimensionError(
                f"variable counts differ: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self.terms)
        for ev, c in other.terms.items():
            s = terms.get(ev, Fraction(0)) + c
            if s:
                terms[ev] = s
            else:
                terms.pop(ev, None)
        out = LaurentPoly(self.nvars)
        out.terms = terms
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly(self.nvars)
        out.terms = {ev: -c for ev, c in self.terms.items()}
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return LaurentPoly.zero(self.nvars)
            out = LaurentPoly(self.nvars)
            out.terms = {ev: c * v for ev, v in self.terms.items()}
            return out
        self._check(other)
        terms: dict[ExponentVector, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                ev = tuple(x + y for x, y in zip(ea, eb))
                s = terms.get(ev, Fraction(0)) + ca * cb
                if s:
                    terms[ev] = s
                else:
                    terms.pop(ev, None)
        out = LaurentPoly(self.nvars)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentPoly)
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def substitute(self, images: Sequence[ExponentVector], new_nvars: int) -> "LaurentPoly":
        """Ring homomorphism sending t_i to the Laurent monomial images[i-1].

        Every source variable must have an image; images are single
        monomials (exponent vectors over the new variables), so exponents
        compose additively.
        """
        if len(images) != self.nvars:
            raise DimensionError(
                f"substitution rule covers {len(images)} of {self.nvars} variables")
        for im in images:
            if len(im) != new_nvars:
                raise DimensionError(
                    f"image {im} has length {len(im)}, expected {new_nvars}")
        terms: dict[ExponentVector, Fraction] = {}
        for ev, c in self.terms.items():
            new = [0] * new_nvars
            for e, im in zip(ev, images):
                if e:
                    for j, m in enumerate(im):
                        new[j] += e * m
            key = tuple(new)
            s = terms.get(key, Fraction(0)) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        out = LaurentPoly(new_nvars)
        out.terms = terms
        return out

    def compose(self, args: Sequence["LaurentPoly"]) -> "LaurentPoly":
        """Substitute whole polynomials for the variables.

        Requires all exponents nonnegative (honest polynomials); used for
        cube reparametrizations, not for the group ring.
        """
        if len(args) != self.nvars:
            raise DimensionError("compose needs one argument per variable")
        if any(e < 0 for ev in self.terms for e in ev):
            raise ValueError("compose requires nonnegative exponents")
        nv = args[0].nvars if args else 0
        acc = LaurentPoly.zero(nv)
        for ev, c in self.terms.items():
            part = LaurentPoly.one(nv) * c
            for e, arg in zip(ev, args):
                for _ in range(e):
                    part = part * arg
            acc = acc + part
        return acc

    def sorted_terms(self) -> list[tuple[ExponentVector, Fraction]]:
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for ev, c in self.sorted_terms():
            mono = "*".join(f"t{i+1}^{e}" for i, e in enumerate(ev) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = " + ".join(parts).replace("+ -", "- ")
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {self.terms!r})"


class RationalMatrix:
    """Dense matrix of Fractions with exact row reduction."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = [[_as_fraction(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.ncols:
                raise DimensionError("ragged matrix")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            [[self.rows[r][c] for r in range(self.nrows)] for c in range(self.ncols)])

    def rref(self) -> tuple["RationalMatrix", int, tuple[int, ...]]:
        """Reduced row echelon form, rank and pivot columns."""
        m = [row[:] for row in self.rows]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            pr = next((i for i in range(r, self.nrows) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.nrows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        out = RationalMatrix.zeros(0, 0)
        out.rows, out.nrows, out.ncols = m, self.nrows, self.ncols
        return out, r, tuple(pivots)

    def rank(self) -> int:
        return self.rref()[1]

    def kernel_basis(self) -> list[list[Fraction]]:
        """Basis of the right null space."""
        red, rank, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivot_set]
        basis = []
        for fc in free:
            v = [Fraction(0)] * self.ncols
            v[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -red.rows[r][fc]
            basis.append(v)
        return basis

    def row_space_contains(self, vec: Sequence) -> bool:
        v = {c: _as_fraction(x) for c, x in enumerate(vec) if _as_fraction(x)}
        elim = SparseEliminator()
        for row in self.rows:
            elim.add({c: x for c, x in enumerate(row) if x})
        return not elim.reduce(v)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows!r})"


def row_reduce(m: RationalMatrix) -> tuple[RationalMatrix, int, list[list[Fraction]]]:
    """Reduced echelon form, rank and a kernel basis, all exact."""
    red, rank, _ = m.rref()
    return red, rank, m.kernel_basis()


class SparseEliminator:
    """Incremental exact Gaussian elimination over sparse Fraction rows.

    Rows are dicts keyed by integer column index; the pivot of a row is
    its smallest column.  Remainders against the accumulated row space
    are canonical: they carry no pivot columns, and the pivot column set
    of a subspace is independent of insertion order.
    """

    __slots__ = ("pivots",)

    def __init__(self) -> None:
        self.pivots: dict[int, dict[int, Fraction]] = {}

    def reduce(self, row: Mapping[int, Fraction]) -> dict[int, Fraction]:
        v = {c: x for c, x in row.items() if x}
        while v:
            hit = None
            for c in v:
                if c in self.pivots and (hit is None or c < hit):
                    hit = c
            if hit is None:
                break
            f = v[hit]
            for c, x in self.pivots[hit].items():
                s = v.get(c, Fraction(0)) - f * x
                if s:
                    v[c] = s
                else:
                    v.pop(c, None)
        return v

    def add(self, row: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Reduce `row`; if independent, install it. Returns the remainder."""
        v = self.reduce(row)
        if v:
            lead = min(v)
            inv = 1 / v[lead]
            self.pivots[lead] = {c: x * inv for c, x in v.items()}
        return v

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, row: Mapping[int, Fraction]) -> bool:
        return not self.reduce(row)
