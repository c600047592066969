"""Concatenation diagrams: oriented grids of cells checked for
neighbor face agreement, with merged spans and absent corners.

Rows are stored top-down as the displays read; the compass assigns the
column axis and the row axis to cube directions, columns increasing
along the first direction and rows increasing *against* the second
(the top row sits at the back face of the vertical direction).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cells import UNVERIFIABLE, Decls, face, star
from .tiling import compare_cells


@dataclass(frozen=True)
class GridCell:
    row: int
    col: int
    rowspan: int
    colspan: int
    expr: object


@dataclass
class DiagramGrid:
    """2-D concatenation diagram with span annotations."""

    name: str
    compass: tuple  # (horizontal direction, vertical direction)
    cells: list = field(default_factory=list)
    nrows: int = 0
    ncols: int = 0

    def __post_init__(self):
        for c in self.cells:
            self.nrows = max(self.nrows, c.row + c.rowspan)
            self.ncols = max(self.ncols, c.col + c.colspan)

    def occupant(self, r: int, c: int) -> GridCell | None:
        for cell in self.cells:
            if cell.row <= r < cell.row + cell.rowspan \
                    and cell.col <= c < cell.col + cell.colspan:
                return cell
        return None


def grid_from_rows(name: str, compass: tuple, rows: list) -> DiagramGrid:
    """Build a grid from top-down rows of entries.

    Entries are cell expressions, None (absent), the string '<' (extend
    the entry to the left) or '^' (extend the entry above)."""
    cells: list[GridCell] = []
    index: dict[tuple, GridCell] = {}
    for r, row in enumerate(rows):
        for c, entry in enumerate(row):
            if entry is None:
                continue
            if entry == "<":
                target = index[(r, c - 1)]
                grown = GridCell(target.row, target.col, target.rowspan,
                                 target.colspan + 1, target.expr)
                cells[cells.index(target)] = grown
                _reindex(index, target, grown)
                index[(r, c)] = grown
                continue
            if entry == "^":
                target = index[(r - 1, c)]
                grown = GridCell(target.row, target.col, target.rowspan + 1,
                                 target.colspan, target.expr)
                cells[cells.index(target)] = grown
                _reindex(index, target, grown)
                index[(r, c)] = grown
                continue
            cell = GridCell(r, c, 1, 1, entry)
            cells.append(cell)
            index[(r, c)] = cell
    return DiagramGrid(name, compass, cells)


def _reindex(index: dict, old: GridCell, new: GridCell) -> None:
    for k, v in list(index.items()):
        if v is old:
            index[k] = new


@dataclass
class FacePair:
    where: str
    status: str
    left: str = ""
    right: str = ""


@dataclass
class GridReport:
    grid: str
    pairs: list

    @property
    def failing(self):
        return [p for p in self.pairs if p.status == "unequal"]

    @property
    def unverifiable(self):
        return [p for p in self.pairs if p.status == "unverifiable"]

    @property
    def ok(self) -> bool:
        return not self.failing and not self.unverifiable

    def to_dict(self) -> dict:
        return {"grid": self.grid,
                "checked": len(self.pairs),
                "status": "pass" if self.ok else "fail",
                "failing": [vars(p) for p in self.failing],
                "unverifiable": [vars(p) for p in self.unverifiable]}


def _segment_faces(decls: Decls, grid: DiagramGrid, cell: GridCell,
                   eps: int, direction: int, along: int,
                   seg_lo: int, seg_hi: int, vertical: bool):
    """Face of `cell` on one side, restricted to a row/col segment.

    When the neighbouring side is subdivided, the matching face of a
    spanning cell is compared against the concatenation of the
    neighbour faces it spans, so a single face suffices here."""
    f = face(decls, eps, direction, cell.expr)
    return f


def check_grid(decls: Decls, grid: DiagramGrid) -> GridReport:
    """Verify neighbor face agreement along both axes."""
    hdir, vdir = grid.compass
    pairs: list[FacePair] = []
    seen = set()
    # horizontal adjacencies: right face of left cell vs left face of
    # right cell; spans are compared against vertical concatenations
    for cell in grid.cells:
        right_col = cell.col + cell.colspan
        if right_col >= grid.ncols:
            continue
        neighbors = []
        r = cell.row
        while r < cell.row + cell.rowspan:
            nb = grid.occupant(r, right_col)
            if nb is None:
                r += 1
                continue
            if nb not in neighbors:
                neighbors.append(nb)
            r = nb.row + nb.rowspan
        if not neighbors:
            continue
        key = ("h", cell.row, cell.col, right_col)
        if key in seen:
            continue
        seen.add(key)
        left_face = face(decls, 1, hdir, cell.expr)
        # rows grow downward/against the vertical direction: stack
        # neighbor faces bottom-up for the concatenation
        faces = []
        bad = False
        for nb in reversed(neighbors):
            f = face(decls, 0, hdir, nb.expr)
            if f is UNVERIFIABLE:
                bad = True
                break
            faces.append(f)
        if bad or left_face is UNVERIFIABLE:
            pairs.append(FacePair(f"({cell.row},{cell.col})-h", "unverifiable"))
            continue
        if (len(neighbors) > 1 or cell.rowspan != neighbors[0].rowspan) \
                and len(faces) > 1:
            right_face = star(vdir - (1 if hdir < vdir else 0), *faces)
        else:
            right_face = faces[0]
        status = compare_cells(decls, left_face, right_face)
        pairs.append(FacePair(f"({cell.row},{cell.col})-h", status,
                              str(left_face), str(right_face)))
    # vertical adjacencies: the cell below sits at the front face of
    # the vertical direction
    for cell in grid.cells:
        below_row = cell.row + cell.rowspan
        if below_row >= grid.nrows:
            continue
        neighbors = []
        c = cell.col
        while c < cell.col + cell.colspan:
            nb = grid.occupant(below_row, c)
            if nb is None:
                c += 1
                continue
            if nb not in neighbors:
                neighbors.append(nb)
            c = nb.col + nb.colspan
        if not neighbors:
            continue
        key = ("v", cell.row, cell.col, below_row)
        if key in seen:
            continue
        seen.add(key)
        upper_face = face(decls, 0, vdir, cell.expr)
        faces = []
        bad = False
        for nb in neighbors:
            f = face(decls, 1, vdir, nb.expr)
            if f is UNVERIFIABLE:
                bad = True
                break
            faces.append(f)
        if bad or upper_face is UNVERIFIABLE:
            pairs.append(FacePair(f"({cell.row},{cell.col})-v", "unverifiable"))
            continue
        if len(faces) > 1:
            lower_face = star(hdir - (1 if vdir < hdir else 0), *faces)
        else:
            lower_face = faces[0]
        status = compare_cells(decls, upper_face, lower_face)
        pairs.append(FacePair(f"({cell.row},{cell.col})-v", status,
                              str(upper_face), str(lower_face)))
    return GridReport(grid.name, pairs)


def compose_grid(decls: Decls, grid: DiagramGrid):
    """Compose a fully-occupied grid into a single cell expression,
    splitting recursively along full cut lines."""
    return _compose_block(decls, grid, 0, grid.nrows, 0, grid.ncols)


def _compose_block(decls: Decls, grid: DiagramGrid, r0, r1, c0, c1):
    hdir, vdir = grid.compass
    cells = [c for c in grid.cells
             if c.row < r1 and c.row + c.rowspan > r0
             and c.col < c1 and c.col + c.colspan > c0]
    if not cells:
        raise ValueError(f"empty block in grid {grid.name}")
    if len(cells) == 1:
        return cells[0].expr
    for cut in range(c0 + 1, c1):
        if all(c.col >= cut or c.col + c.colspan <= cut for c in cells):
            left = _compose_block(decls, grid, r0, r1, c0, cut)
            right = _compose_block(decls, grid, r0, r1, cut, c1)
            return star(hdir, left, right)
    for cut in range(r0 + 1, r1):
        if all(c.row >= cut or c.row + c.rowspan <= cut for c in cells):
            upper = _compose_block(decls, grid, r0, cut, c0, c1)
            lower = _compose_block(decls, grid, cut, r1, c0, c1)
            return star(vdir, lower, upper)
    raise ValueError(f"grid {grid.name} has no full cut line in block "
                     f"({r0}:{r1}, {c0}:{c1})")
