"""Generator declarations and the registered concatenation-diagram
fixtures.

All boundary tables are transcribed here, once; fixtures reference the
declarations by name so a transcription fix propagates everywhere.
Direction conventions: lassos run in direction 1, null homotopies of
lassos point in direction 2, transitions between those in direction 3,
and each further mediation level adds a direction.  Every fixture
stores its compass explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cells import (Decls, Flip, Fold, Gen, Id, Par, Rev, Revolve, Rot,
                    Twist, Unitor, dim, face, star)
from .diagrams import DiagramGrid, check_grid, grid_from_rows
from .tiling import cells_equal, compare_cells, padded_equal, validate_composition

GAMMA = Gen("gamma")


def gconst(n: int):
    """Constant-at-the-base-interval cell of dimension n."""
    e = GAMMA
    for _ in range(n):
        e = Id(1, e)
    return e


CHORD_INTERVALS = {
    "A1": "I1", "B1": "I1", "C1": "I1", "D1": "I1",
    "A2": "I2", "B2": "I2", "C2": "I2", "D2": "I2",
    "A3": "I3", "B3": "I3",
}

GROUPS = {"1": ("A1", "B1", "C1", "D1"), "2": ("A2", "B2", "C2", "D2")}


def lasso(*chords):
    e = Gen(f"L_{chords[0]}")
    for c in chords[1:]:
        e = Par(e, Gen(f"L_{c}"))
    return e


def backtrack(*chords):
    e = Gen(f"B_{chords[0]}")
    for c in chords[1:]:
        e = Par(e, Gen(f"B_{c}"))
    return e


def L4(k): return lasso(*GROUPS[k])
def U4(k): return Par(Gen(f"U_{GROUPS[k][0]}{GROUPS[k][1]}"),
                      Gen(f"U_{GROUPS[k][2]}{GROUPS[k][3]}"))
def B4(k): return backtrack(*GROUPS[k])
def TBU4(k): return Par(Gen(f"T_BU_{GROUPS[k][0]}{GROUPS[k][1]}"),
                        Gen(f"T_BU_{GROUPS[k][2]}{GROUPS[k][3]}"))
def TUB4(k): return Rev(3, TBU4(k))


def f0_expr():
    """The doubled-group square as the displayed reflected grid."""
    mid = Par(Id(2, L4("1")), Id(1, L4("2")))
    return Flip(((U4("1"), gconst(2)),
                 (mid, Rot(1, 2, U4("2")))), 1, 2)


def gpqr_expr():
    """The three-parameter family: a 3-term concatenation in the third
    direction of revolved caps around the doubled-square center."""
    middle_f = Par(Id(3, f0_expr()), Id(2, Id(1, lasso("A3", "B3"))))
    return star(
        3,
        Revolve(Rev(3, Gen("H_F")), gconst(2), 1, 2),
        Revolve(middle_f, Gen("U_A3B3"), 1, 2),
        Revolve(Gen("H_F"), gconst(2), 1, 2),
    )


UNDO_PAIRS = [("A1", "B1"), ("C1", "D1"), ("B1", "C1"), ("A1", "D1"),
              ("A2", "B2"), ("C2", "D2"), ("B2", "C2"), ("A2", "D2"),
              ("A3", "B3")]


def build_theory() -> Decls:
    """Declare every generator the fixtures reference: base interval,
    one lasso and one backtrack per chord, undo homotopies per
    opposite-sign pair, full null homotopies and the transition family
    per four-chord group, the capping homotopy, and the named null
    homotopies of the three-parameter family."""
    d = Decls()
    d.add("gamma", 0)
    for chord, interval in CHORD_INTERVALS.items():
        d.add(f"L_{chord}", 1, {(1, 0): GAMMA, (1, 1): GAMMA},
              chords=(chord,), interval=interval)
        d.add(f"B_{chord}", 2,
              {(1, 0): gconst(1), (1, 1): gconst(1),
               (2, 0): Gen(f"L_{chord}"), (2, 1): gconst(1)},
              chords=(chord,), interval=interval)
    for (a, b) in UNDO_PAIRS:
        d.add(f"U_{a}{b}", 2,
              {(1, 0): gconst(1), (1, 1): gconst(1),
               (2, 0): lasso(a, b), (2, 1): gconst(1)},
              chords=(a, b), interval=CHORD_INTERVALS[a])
        d.add(f"T_BU_{a}{b}", 3,
              {(1, 0): gconst(2), (1, 1): gconst(2),
               (2, 0): Id(2, lasso(a, b)), (2, 1): gconst(2),
               (3, 0): backtrack(a, b), (3, 1): Gen(f"U_{a}{b}")},
              chords=(a, b), interval=CHORD_INTERVALS[a])
    for k, grp in GROUPS.items():
        iv = CHORD_INTERVALS[grp[0]]
        d.add(f"F{k}", 2,
              {(1, 0): gconst(1), (1, 1): gconst(1),
               (2, 0): lasso(*grp), (2, 1): gconst(1)},
              chords=grp, interval=iv)
        d.add(f"T_UF{k}", 3,
              {(1, 0): gconst(2), (1, 1): gconst(2),
               (2, 0): Id(2, lasso(*grp)), (2, 1): gconst(2),
               (3, 0): U4(k), (3, 1): Gen(f"F{k}")},
              chords=grp, interval=iv)
        d.add(f"T_BF{k}", 3,
              {(1, 0): gconst(2), (1, 1): gconst(2),
               (2, 0): Id(2, lasso(*grp)), (2, 1): gconst(2),
               (3, 0): B4(k), (3, 1): Gen(f"F{k}")},
              chords=grp, interval=iv)
        d.add(f"T_BBUF{k}", 4,
              {(1, 0): gconst(3), (1, 1): gconst(3),
               (2, 0): Id(3, Id(2, lasso(*grp))), (2, 1): gconst(3),
               (3, 0): TBU4(k), (3, 1): Gen(f"T_BF{k}"),
               (4, 0): Id(3, B4(k)), (4, 1): Gen(f"T_UF{k}")},
              chords=grp, interval=iv)
        # mediator between the full-backtrack and full-undo transitions;
        # boundary transcribed from the grids that consume it
        d.add(f"T_FBFU{k}", 4,
              {(1, 0): gconst(3), (1, 1): gconst(3),
               (2, 0): Id(3, Id(2, lasso(*grp))), (2, 1): gconst(3),
               (3, 0): Id(3, Gen(f"F{k}")), (3, 1): TBU4(k),
               (4, 0): Rev(3, Gen(f"T_BF{k}")), (4, 1): Rev(3, Gen(f"T_UF{k}"))},
              chords=grp, interval=iv)
    d.add("H_F", 3,
          {(1, 0): gconst(2), (1, 1): gconst(2),
           (2, 0): gconst(2), (2, 1): gconst(2),
           (3, 0): f0_expr(), (3, 1): gconst(2)},
          chords=tuple(GROUPS["1"] + GROUPS["2"]), interval="I1")
    all_chords = tuple(CHORD_INTERVALS)
    for name in ("N_B", "N_U", "N_F"):
        d.add(name, 4,
              {(1, 0): gconst(3), (1, 1): gconst(3),
               (2, 0): gconst(3), (2, 1): gconst(3),
               (3, 0): gconst(3), (3, 1): gconst(3),
               (4, 0): gpqr_expr(), (4, 1): gconst(3)},
              chords=all_chords, interval="I1")
    for (name, src, tgt) in (("N_BU", "N_B", "N_U"),
                             ("N_UF", "N_U", "N_F"),
                             ("N_BF", "N_B", "N_F")):
        d.add(name, 5, {(5, 0): Gen(src), (5, 1): Gen(tgt)},
              chords=all_chords, interval="I1")
    d.add("N_BUBF", 6,
          {(5, 0): Id(5, Gen("N_B")), (5, 1): Gen("N_UF"),
           (6, 0): Gen("N_BU"), (6, 1): Gen("N_BF")},
          chords=all_chords, interval="I1")
    return d


_THEORY: Decls | None = None


def theory() -> Decls:
    global _THEORY
    if _THEORY is None:
        _THEORY = build_theory()
    return _THEORY


# ---------------------------------------------------------------------------
# grids


def flip_rows(h, k, f, g, i=1, j=2):
    """Top-down rows of the reflected 3x3 grid of a 2x2 seed."""
    return [
        [Rev(i, k), h, k],
        [Rev(i, g), f, g],
        [Rev(j, Rev(i, k)), Rev(j, h), Rev(j, k)],
    ]


def gpq_grid() -> DiagramGrid:
    mid = Par(Id(2, lasso("A1", "B1")), Id(1, lasso("A2", "B2")))
    u2 = Rot(1, 2, Gen("U_A2B2"))
    rows = [
        [gconst(2), Gen("U_A1B1"), gconst(2)],
        [Rev(1, u2), mid, u2],
        [gconst(2), Rev(2, Gen("U_A1B1")), gconst(2)],
    ]
    return grid_from_rows("Gpq", (1, 2), rows)


def f0_grid() -> DiagramGrid:
    mid = Par(Id(2, L4("1")), Id(1, L4("2")))
    return grid_from_rows("F0", (1, 2),
                          flip_rows(U4("1"), gconst(2), mid,
                                    Rot(1, 2, U4("2"))))


def gpqrcenter_grid() -> DiagramGrid:
    rotu = Rot(1, 2, Gen("U_A3B3"))
    fold = Fold(0, 0, 1, 2, rotu)
    rows = [
        [Rev(1, fold), Id(1, rotu), fold],
        [Rev(1, Id(2, rotu)), Id(2, Id(1, lasso("A3", "B3"))), Id(2, rotu)],
        [Rev(1, Rev(2, fold)), Rev(2, Id(1, rotu)), Rev(2, fold)],
    ]
    return grid_from_rows("GpqrCenter", (1, 2), rows)


def gpqrcenter_revolve():
    return Revolve(Id(2, Id(1, lasso("A3", "B3"))), Gen("U_A3B3"), 1, 2)


def spine(h, k, f, gparts, i, j):
    """Composite of the reflected corner-block displays: top row
    (h, k), a constant spine f through the middle, the right column
    running down through gparts and back up mirrored."""
    rows = [[Rev(i, k), h, k]]
    for g in gparts:
        rows.append([Rev(i, g), f, g])
    for g in reversed(gparts[:-1]):
        rows.append([Rev(i, Rev(j, g)), f, Rev(j, g)])
    rows.append([Rev(i, Rev(j, k)), Rev(j, h), Rev(j, k)])
    return star(j, *[star(i, *row) for row in reversed(rows)])


def blue_part():
    """Declared blue portion: capped full homotopy over the undo
    collar around the lasso spine."""
    f1, tuf = Gen("F1"), Gen("T_UF1")
    return spine(Id(2, f1), Fold(0, 0, 2, 3, f1), Id(3, Id(2, L4("1"))),
                 [tuf, Id(3, U4("1"))], 2, 3)


def cappingzoom_grid() -> DiagramGrid:
    f1, tuf = Gen("F1"), Gen("T_UF1")
    fold = Fold(0, 0, 2, 3, f1)
    rows = [
        [Rev(2, fold), Id(2, f1), fold],
        [Rev(2, tuf), Id(3, Id(2, L4("1"))), tuf],
    ]
    return grid_from_rows("cappingzoom", (2, 3), rows)


def hf_states():
    mid = Par(Id(2, L4("1")), Id(1, L4("2")))
    rot = lambda e: Rot(1, 2, e)
    uAD, uBC = Gen("U_A1D1"), Gen("U_B1C1")
    uAD2, uBC2 = Gen("U_A2D2"), Gen("U_B2C2")
    lAD, lAD2 = lasso("A1", "D1"), lasso("A2", "D2")
    g2 = gconst(2)
    s0 = f0_expr()
    s1 = Flip(((star(2, Par(uBC, Id(2, lAD)), uAD), g2),
               (mid, star(1, Par(rot(uBC2), Id(1, lAD2)), rot(uAD2)))), 1, 2)
    s2 = Flip(((star(2, Par(uBC, Id(2, lAD)), uAD), g2),
               (Par(Id(2, L4("1")), Id(1, lAD2)),
                star(1, Id(1, lAD2), rot(uAD2)))), 1, 2)
    s3 = Flip(((star(2, Id(2, lAD), uAD), g2),
               (Par(Id(2, lAD), Id(1, lAD2)), rot(uAD2))), 1, 2)
    s4 = Flip(((uAD, g2), (Id(2, lAD), g2)), 1, 2)
    s5 = Flip(((g2, g2), (g2, g2)), 1, 2)
    return [s0, s1, s2, s3, s4, s5]


def hf_stages():
    mid = Par(Id(2, L4("1")), Id(1, L4("2")))
    rot = lambda e: Rot(1, 2, e)
    uAD, uBC = Gen("U_A1D1"), Gen("U_B1C1")
    uAD2, uBC2 = Gen("U_A2D2"), Gen("U_B2C2")
    lAD, lAD2 = lasso("A1", "D1"), lasso("A2", "D2")
    g3 = gconst(3)
    m1 = Flip(((Gen("T_UF1"), g3),
               (Id(3, mid), rot(Gen("T_UF2")))), 1, 2)
    m2 = Flip(((star(2, Id(3, Par(uBC, Id(2, lAD))), Id(3, uAD)), g3),
               (Par(Id(1, uBC2), Id(3, Par(Id(2, L4("1")), Id(1, lAD2)))),
                star(1, Par(rot(Fold(0, 0, 2, 3, uBC2)), Id(3, Id(1, lAD2))),
                     Id(3, rot(uAD2))))), 1, 2)
    m3 = Flip(((star(2, Par(Fold(0, 0, 2, 3, uBC), Id(3, Id(2, lAD))),
                     Id(3, uAD)), g3),
               (Par(Id(2, uBC), Id(3, Par(Id(2, lAD), Id(1, lAD2)))),
                Unitor("l", 1, rot(uAD2)))), 1, 2)
    m4 = Flip(((Unitor("l", 2, uAD), g3),
               (Par(Id(1, uAD2), Id(3, Id(2, lAD))),
                rot(Fold(0, 0, 2, 3, uAD2)))), 1, 2)
    m5 = Flip(((Fold(0, 0, 2, 3, uAD), g3),
               (Id(2, uAD), g3)), 1, 2)
    return [m1, m2, m3, m4, m5]


# null homotopies of the three-parameter family, blue and green parts


def nu_blue_morphism():
    tfu = Rev(3, Gen("T_UF1"))
    return spine(Id(2, tfu), Fold(0, 0, 2, 3, tfu),
                 Id(4, Id(3, Id(2, L4("1")))),
                 [Fold(1, 0, 3, 4, Gen("T_UF1")), Id(4, Id(3, U4("1")))], 2, 3)


def nu_blue_target():
    u4 = U4("1")
    return spine(Id(2, u4), Fold(0, 0, 2, 3, u4), Id(3, Id(2, L4("1"))),
                 [Id(3, u4), Id(3, u4)], 2, 3)


def nf_blue_morphism():
    f1, tuf = Gen("F1"), Gen("T_UF1")
    return spine(Id(4, Id(2, f1)), Id(4, Fold(0, 0, 2, 3, f1)),
                 Id(4, Id(3, Id(2, L4("1")))),
                 [Fold(0, 0, 3, 4, tuf), Id(3, tuf)], 2, 3)


def nf_blue_target():
    f1 = Gen("F1")
    return spine(Id(2, f1), Fold(0, 0, 2, 3, f1), Id(3, Id(2, L4("1"))),
                 [Id(3, f1), Id(3, f1)], 2, 3)


def nb_blue_morphism():
    tfb = Rev(3, Gen("T_BF1"))
    return spine(Id(2, tfb), Fold(0, 0, 2, 3, tfb),
                 Id(4, Id(3, Id(2, L4("1")))),
                 [Rev(4, Gen("T_BBUF1")), Id(3, TUB4("1"))], 2, 3)


def nb_blue_target():
    b4 = B4("1")
    return spine(Id(2, b4), Fold(0, 0, 2, 3, b4), Id(3, Id(2, L4("1"))),
                 [Id(3, b4), Id(3, b4)], 2, 3)


def second_stage(cell):
    """Folding a null homotopy around the border: the revolved second
    stage, laid out with the same row structure as the reflected
    corner-block grids so the stages concatenate strictly."""
    l = Fold(0, 0, 2, 3, cell)
    a = Rot(2, 3, l)
    tm = Id(2, a)
    tr = Fold(0, 0, 2, 3, a)
    mr = Id(3, a)
    f = Id(3, Id(2, cell))
    return spine(tm, tr, f, [mr, mr], 2, 3)


def nu_morphism_total():
    return star(4, nu_blue_morphism(), second_stage(U4("1")))


def nf_morphism_total():
    return star(4, nf_blue_morphism(), second_stage(Gen("F1")))


def nb_morphism_total():
    return star(4, nb_blue_morphism(), second_stage(B4("1")))


def nuf_morphism():
    tuf = Gen("T_UF1")
    tfu = Rev(3, tuf)
    fold_tfu = Fold(1, 0, 3, 4, tfu)
    return star(4,
                spine(Id(2, fold_tfu), Fold(0, 0, 2, 3, fold_tfu),
                      Id(5, Id(4, Id(3, Id(2, L4("1"))))),
                      [Rot(4, 5, Twist(3, tuf)),
                       Id(3, Fold(1, 1, 3, 4, tuf))], 2, 3),
                second_stage(tuf))


def nbu_morphism():
    tfbfu = Gen("T_FBFU1")
    upper = star(4, Fold(1, 0, 4, 5, Rev(4, Gen("T_BBUF1"))),
                 Fold(1, 0, 3, 4, Gen("T_BBUF1")))
    return star(4,
                spine(Id(2, tfbfu), Fold(0, 0, 2, 3, tfbfu),
                      Id(5, Id(4, Id(3, Id(2, L4("1"))))),
                      [upper, Id(3, Fold(1, 0, 3, 4, TUB4("1")))], 2, 3),
                second_stage(TBU4("1")))


def t_ubuf():
    """The declared composite mediating undo-backtrack then the triple
    transition."""
    return star(3, Fold(1, 0, 3, 4, TUB4("1")), Gen("T_BBUF1"))


def nbf_morphism():
    tfb = Rev(3, Gen("T_BF1"))
    fold_tfb = Fold(1, 0, 3, 4, tfb)
    upper = star(4, Fold(1, 0, 4, 5, Rev(4, Gen("T_BBUF1"))),
                 Fold(0, 0, 3, 4, Gen("T_BBUF1")))
    return star(4,
                spine(Id(2, fold_tfb), Fold(0, 0, 2, 3, fold_tfb),
                      Id(5, Id(4, Id(3, Id(2, L4("1"))))),
                      [upper, Id(3, t_ubuf())], 2, 3),
                second_stage(Gen("T_BF1")))


def nbubf_morphism():
    tb = Gen("T_BBUF1")
    tbbfu = Rev(3, tb)
    tbubf = Rot(3, 4, tb)
    sb = star(3, Id(5, Fold(1, 0, 3, 4, Rev(3, Gen("T_BF1")))),
              Fold(0, 1, 3, 5, tbbfu))
    sb3 = star(3, Id(5, Fold(1, 0, 3, 4, TUB4("1"))),
               Fold(1, 0, 3, 5, tb))
    upper = star(4, Id(6, Fold(1, 0, 4, 5, Rev(4, tb))),
                 Rot(4, 6, Twist(3, tb)))
    return star(4,
                spine(Id(2, sb), Fold(0, 0, 2, 3, sb),
                      Id(6, Id(5, Id(4, Id(3, Id(2, L4("1")))))),
                      [upper, Id(3, sb3)], 2, 3),
                second_stage(tbubf))


def green_nu():
    return {
        "source": gpqrcenter_revolve(),
        "morphisms": [Revolve(Id(2, Id(1, Gen("U_A3B3"))),
                              Fold(0, 0, 2, 3, Gen("U_A3B3")), 1, 2)],
        "targets": [gconst(3)],
        "direction": 4,
    }


def green_nb():
    lA3B3 = lasso("A3", "B3")
    b3 = backtrack("A3", "B3")
    return {
        "source": gpqrcenter_revolve(),
        "morphisms": [
            Revolve(Id(4, Id(2, Id(1, lA3B3))), Rev(3, Gen("T_BU_A3B3")),
                    1, 2, radial=2),
            Revolve(Id(2, Id(1, b3)), Fold(0, 0, 2, 3, b3), 1, 2),
        ],
        "targets": [
            Revolve(Id(2, Id(1, lA3B3)), b3, 1, 2),
            gconst(3),
        ],
        "direction": 4,
    }


# the two-parameter null homotopy assembly (five-direction table)


def gpq_nb():
    g4 = gconst(3)
    mid = Par(Id(2, lasso("A1", "B1")), Id(1, lasso("A2", "B2")))
    tub1 = Rev(3, Gen("T_BU_A1B1"))
    tub2 = Rev(3, Gen("T_BU_A2B2"))
    bb1, bb2 = backtrack("A1", "B1"), backtrack("A2", "B2")
    first = Flip(((tub1, g4), (Id(3, mid), Rot(1, 2, tub2))), 1, 2)
    second = Flip(((Fold(0, 0, 2, 3, bb1), g4),
                   (Par(Id(2, bb1), Id(1, bb2)),
                    Rot(1, 2, Fold(0, 0, 2, 3, bb2)))), 1, 2)
    return star(3, first, second)


def gpq_nu():
    g4 = gconst(3)
    mid = Par(Id(2, lasso("A1", "B1")), Id(1, lasso("A2", "B2")))
    u1, u2 = Gen("U_A1B1"), Gen("U_A2B2")
    first = Flip(((Id(3, u1), g4), (Id(3, mid), Rot(1, 2, Id(3, u2)))), 1, 2)
    second = Flip(((Fold(0, 0, 2, 3, u1), g4),
                   (Par(Id(2, u1), Id(1, u2)),
                    Rot(1, 2, Fold(0, 0, 2, 3, u2)))), 1, 2)
    return star(3, first, second)


def gpq_nbu():
    g5 = gconst(4)
    mid = Par(Id(2, lasso("A1", "B1")), Id(1, lasso("A2", "B2")))
    tub1, tub2 = Rev(3, Gen("T_BU_A1B1")), Rev(3, Gen("T_BU_A2B2"))
    tbu1, tbu2 = Gen("T_BU_A1B1"), Gen("T_BU_A2B2")
    first = Flip(((Fold(1, 0, 3, 4, tub1), g5),
                  (Id(4, Id(3, mid)), Rot(1, 2, Fold(1, 0, 3, 4, tub2)))), 1, 2)
    second = Flip(((Fold(0, 0, 2, 3, tbu1), g5),
                   (Par(Id(2, tbu1), Id(1, tbu2)),
                    Rot(1, 2, Fold(0, 0, 2, 3, tbu2)))), 1, 2)
    return star(3, first, second)


def gpq_nullhomotopy_grid() -> DiagramGrid:
    nb = Id(5, Id(4, gpq_nb()))
    nu = Id(5, Id(4, gpq_nu()))
    nbu = Id(4, gpq_nbu())
    rows = [
        [nu, nu, nu, nu, nu],
        [nbu, nbu, nbu, nbu, None],
        [nb, nb, nb, None, None],
        [nb, nb, None, None, None],
        [nb, None, None, None, None],
    ]
    return grid_from_rows("Gpq_nullhomotopy", (4, 5), rows)


# the three-parameter assembly tables (directions 5, 6, 7)


def _tower(e, dirs):
    for d in dirs:
        e = Id(d, e)
    return e


def assembly_tables():
    nb = _tower(Gen("N_B"), (5, 6, 7))
    nu = _tower(Gen("N_U"), (5, 6, 7))
    nf = _tower(Gen("N_F"), (5, 6, 7))
    bu7 = _tower(Gen("N_BU"), (5, 6))       # transition along p3
    bf7 = _tower(Gen("N_BF"), (5, 6))
    bbfu = Id(6, Rev(5, Rot(5, 6, Gen("N_BUBF"))))
    e_cell = Id(5, Rot(5, 6, Gen("N_BUBF")))
    fu_r = _tower(Rev(5, Gen("N_UF")), (6, 7))   # transition along p1
    uf_u = _tower(Gen("N_UF"), (5, 7))           # transition along p2
    labels = ["I1", "I1p", "I2", "I2p", "I3", "I3p", "I4"]

    def triangle(width, entry):
        rows = []
        for r in range(width, 0, -1):
            rows.append([entry] * r + [None] * (width - r))
        return rows

    tables = []
    for idx, width in enumerate((1, 2, 3, 4, 5)):
        tables.append((f"N_slab_{labels[idx]}",
                       triangle(width, nb), labels[:width]))
    t6 = [
        [bu7, bu7, bu7, bu7, bu7, bu7],
        [bu7, bu7, bu7, bu7, bu7, None],
        [None, None, bu7, bu7, None, None],
        [bf7, bbfu, bu7, None, None, None],
        [e_cell, None, None, None, None, None],
        [bu7, None, None, None, None, None],
    ]
    tables.append(("N_slab_I3p", t6, labels[:6]))
    t7 = [
        [nu, nu, nu, nu, nu, nu, nu],
        [nu, nu, nu, nu, nu, nu, None],
        [nu, nu, nu, nu, nu, None, None],
        [None, None, nu, nu, None, None, None],
        [nf, fu_r, nu, None, None, None, None],
        [uf_u, None, None, None, None, None, None],
        [nu, None, None, None, None, None, None],
    ]
    tables.append(("N_slab_I4", t7, labels))
    return tables


# ---------------------------------------------------------------------------
# fixture registry


@dataclass
class Check:
    name: str
    status: str  # pass / fail / unverifiable
    detail: str = ""


@dataclass
class FixtureReport:
    fixture: str
    checks: list
    grids: list

    @property
    def ok(self) -> bool:
        return (all(c.status == "pass" for c in self.checks)
                and all(g.ok for g in self.grids))

    def to_dict(self) -> dict:
        return {"fixture": self.fixture,
                "status": "pass" if self.ok else "fail",
                "checks": [vars(c) for c in self.checks],
                "grids": [g.to_dict() for g in self.grids]}


def _eq_check(decls, name, a, b, allow_padding=False) -> Check:
    if cells_equal(decls, a, b):
        return Check(name, "pass")
    if allow_padding and padded_equal(decls, a, b):
        return Check(name, "pass", "equal up to unit padding")
    return Check(name, "fail", f"{a} != {b}")


def _composition_check(decls, name, expr) -> Check:
    problems = validate_composition(decls, expr)
    if not problems:
        return Check(name, "pass")
    return Check(name, "fail", "; ".join(f"{p} [{s}]" for p, s in problems))


def _stage_checks(decls, fid, spec, allow_padding=True):
    checks = []
    prev = spec["source"]
    d = spec["direction"]
    for n, (m, tgt) in enumerate(zip(spec["morphisms"], spec["targets"]), 1):
        checks.append(_composition_check(decls, f"{fid} stage {n} gluing", m))
        checks.append(_eq_check(decls, f"{fid} stage {n} source",
                                face(decls, 0, d, m), prev, allow_padding))
        checks.append(_eq_check(decls, f"{fid} stage {n} target",
                                face(decls, 1, d, m), tgt, allow_padding))
        prev = tgt
    return checks


def check_fixture(fixture_id: str) -> FixtureReport:
    decls = theory()
    if fixture_id not in FIXTURE_IDS:
        raise KeyError(f"unknown fixture {fixture_id!r}")
    checks: list[Check] = []
    grids: list = []

    if fixture_id == "Gpq":
        grids.append(check_grid(decls, gpq_grid()))
    elif fixture_id == "F0":
        grids.append(check_grid(decls, f0_grid()))
        checks.append(_composition_check(decls, "F0 composite", f0_expr()))
    elif fixture_id == "GpqrCenter":
        grid = gpqrcenter_grid()
        grids.append(check_grid(decls, grid))
        from .diagrams import compose_grid
        composed = compose_grid(decls, grid)
        checks.append(_eq_check(decls, "macro expansion matches the display",
                                gpqrcenter_revolve(), composed))
    elif fixture_id == "Gpqr":
        g = gpqr_expr()
        checks.append(_composition_check(decls, "three-term gluing", g))
        for i in range(1, 4):
            for eps in (0, 1):
                checks.append(_eq_check(
                    decls, f"outer face ({eps},{i}) constant",
                    face(decls, eps, i, g), gconst(2)))
    elif fixture_id.startswith("HF_stage"):
        n = int(fixture_id[-1])
        states = hf_states()
        stages = hf_stages()
        m = stages[n - 1]
        checks.append(_composition_check(decls, f"stage {n} gluing", m))
        checks.append(_eq_check(decls, f"stage {n} source",
                                face(decls, 0, 3, m), states[n - 1], True))
        checks.append(_eq_check(decls, f"stage {n} target",
                                face(decls, 1, 3, m), states[n], True))
        if n == 1:
            zoom = cappingzoom_grid()
            grids.append(check_grid(decls, zoom))
    elif fixture_id == "NU_green":
        checks.extend(_stage_checks(decls, fixture_id, green_nu()))
    elif fixture_id == "NB_green":
        checks.extend(_stage_checks(decls, fixture_id, green_nb()))
    elif fixture_id == "NU_blue":
        spec = {"source": blue_part(),
                "morphisms": [nu_blue_morphism(), second_stage(U4("1"))],
                "targets": [nu_blue_target(), gconst(3)],
                "direction": 4}
        checks.extend(_stage_checks(decls, fixture_id, spec))
        checks.append(_eq_check(
            decls, "folded undo state is the revolved border",
            nu_blue_target(),
            Revolve(Id(3, Id(2, L4("1"))), U4("1"), 2, 3), True))
    elif fixture_id == "NF_blue":
        spec = {"source": blue_part(),
                "morphisms": [nf_blue_morphism(), second_stage(Gen("F1"))],
                "targets": [nf_blue_target(), gconst(3)],
                "direction": 4}
        checks.extend(_stage_checks(decls, fixture_id, spec))
        checks.append(_eq_check(
            decls, "folded full state is the revolved border",
            nf_blue_target(),
            Revolve(Id(3, Id(2, L4("1"))), Gen("F1"), 2, 3), True))
    elif fixture_id == "NB_blue":
        spec = {"source": blue_part(),
                "morphisms": [nb_blue_morphism(), second_stage(B4("1"))],
                "targets": [nb_blue_target(), gconst(3)],
                "direction": 4}
        checks.extend(_stage_checks(decls, fixture_id, spec))
    elif fixture_id == "NUF":
        m = nuf_morphism()
        checks.append(_composition_check(decls, "gluing", m))
        checks.append(_eq_check(decls, "source is the undo morphism",
                                face(decls, 0, 5, m), nu_morphism_total(), True))
        checks.append(_eq_check(decls, "target is the full morphism",
                                face(decls, 1, 5, m), nf_morphism_total(), True))
    elif fixture_id == "NBU":
        m = nbu_morphism()
        checks.append(_composition_check(decls, "gluing", m))
        checks.append(_eq_check(decls, "source is the backtrack morphism",
                                face(decls, 0, 5, m), nb_morphism_total(), True))
        checks.append(_eq_check(decls, "target is the undo morphism",
                                face(decls, 1, 5, m), nu_morphism_total(), True))
    elif fixture_id == "NBF":
        m = nbf_morphism()
        checks.append(_composition_check(decls, "gluing", m))
        checks.append(_eq_check(decls, "source is the backtrack morphism",
                                face(decls, 0, 5, m), nb_morphism_total(), True))
        checks.append(_eq_check(decls, "target is the full morphism",
                                face(decls, 1, 5, m), nf_morphism_total(), True))
    elif fixture_id == "NBUBF":
        m = nbubf_morphism()
        checks.append(_composition_check(decls, "gluing", m))
        checks.append(_eq_check(decls, "source is the backtrack-undo morphism",
                                face(decls, 0, 6, m), nbu_morphism(), True))
        checks.append(_eq_check(decls, "target is the backtrack-full morphism",
                                face(decls, 1, 6, m), nbf_morphism(), True))
        checks.append(_eq_check(decls, "side restricts to the constant morphism",
                                face(decls, 0, 5, m),
                                Id(5, nb_morphism_total()), True))
        checks.append(_eq_check(decls, "side restricts to the undo-full morphism",
                                face(decls, 1, 5, m), nuf_morphism(), True))
    elif fixture_id == "TUBUF":
        comp = t_ubuf()
        grid = grid_from_rows("TUBUF", (3, 4),
                              [[Fold(1, 0, 3, 4, TUB4("1")), Gen("T_BBUF1")]])
        grids.append(check_grid(decls, grid))
        checks.append(_eq_check(decls, "source edge", face(decls, 0, 4, comp),
                                star(3, TUB4("1"), Id(3, B4("1")))))
        checks.append(_eq_check(decls, "target edge", face(decls, 1, 4, comp),
                                star(3, Id(3, U4("1")), Gen("T_UF1"))))
        checks.append(_eq_check(decls, "source strips to the undo-backtrack",
                                face(decls, 0, 4, comp), TUB4("1"),
                                allow_padding=True))
    elif fixture_id == "N_assembly":
        tables = assembly_tables()
        built = []
        for (name, rows, col_labels) in tables:
            g = grid_from_rows(name, (5, 6), rows)
            grids.append(check_grid(decls, g))
            built.append((g, col_labels))
        for (g1, labels1), (g2, labels2) in zip(built, built[1:]):
            checks.extend(_slab_checks(decls, g1, labels1, g2, labels2))
    elif fixture_id == "Gpq_nullhomotopy":
        grids.append(check_grid(decls, gpq_nullhomotopy_grid()))
    return FixtureReport(fixture_id, checks, grids)


def _slab_checks(decls, g1: DiagramGrid, labels1, g2: DiagramGrid, labels2):
    """Face agreement across the seventh direction between consecutive
    assembly tables, aligned by interval labels."""
    checks = []
    for cell in g1.cells:
        row_label = labels1[g1.nrows - 1 - cell.row]
        col_label = labels1[cell.col]
        if row_label not in labels2 or col_label not in labels2:
            continue
        r2 = g2.nrows - 1 - labels2.index(row_label)
        c2 = labels2.index(col_label)
        nb = g2.occupant(r2, c2)
        if nb is None:
            continue
        left = face(decls, 1, 7, cell.expr)
        right = face(decls, 0, 7, nb.expr)
        status = compare_cells(decls, left, right)
        checks.append(Check(
            f"{g1.name}->{g2.name} at ({row_label},{col_label})",
            "pass" if status == "equal" else status,
            "" if status == "equal" else f"{left} != {right}"))
    return checks


FIXTURE_IDS = ("Gpq", "F0", "GpqrCenter", "Gpqr",
               "HF_stage1", "HF_stage2", "HF_stage3", "HF_stage4", "HF_stage5",
               "NU_green", "NU_blue", "NF_blue", "NB_green", "NB_blue",
               "NUF", "NBU", "NBF", "NBUBF", "TUBUF",
               "N_assembly", "Gpq_nullhomotopy")
