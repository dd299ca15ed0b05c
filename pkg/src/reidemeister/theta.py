"""Theta configurations: a consistent digon crossed by a consistent strand.

The digon is drawn vertical (crossings at top and bottom, arcs at left and
right) and the transversal strand horizontal, entering at the west leg and
running west to east.  With that rotation the eight configurations whose
transversal passes over both arcs show an up-flagged code in the upper
triangle and a down-flagged code in the lower one; the other eight are
their mirror images and show equal flags on both triangles (mirroring
flips the flag of exactly one code of each pair, since exactly one letter
of every theta-related pair lies in {b,d,B,D}).

Legs of the induced 6-leg, 4-crossing tangle, counterclockwise:
1 = transversal in (west), 2 = right-arc strand lower end (southwest),
3 = left-arc strand lower end (southeast), 4 = transversal out (east),
5 = left-arc strand upper end (northeast), 6 = right-arc strand upper
end (northwest).
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    TangleDiagram,
    canonical_key,
    canonical_relabel,
    validate,
)
from .moves import (
    R2_NAMES,
    TriangleCode,
    _crossing_from_motions,
    _dart_ports,
    _strand_edges,
    build_triangle,
    classify_digon,
    classify_triangle,
    created_digon_face,
    r2_expand,
    r2_reduce,
    r3_image,
    r3_name,
    triangle_faces,
)
from .search import Certificate

ARC_SIDES = ("left", "right")
LEVELS = ("over", "under")
DIRS = ("up", "down")

_T, _B, _LX, _RX = 0, 1, 2, 3  # crossing ids: digon top/bottom, transversal


@dataclass(frozen=True)
class ThetaConfig:
    """One configuration with its role labels and face classifications.

    ``upper_code``/``lower_code`` are the configuration's labels in the
    factorization sense: the upper letter's move is the one factored
    (source form, flag up) and the lower letter's move is the helper
    (flag down).  For the transversal-over half these equal the raw face
    classifications ``upper_face_code``/``lower_face_code``; the mirror
    half classifies with equal flags on both faces, and the helper move
    there is applied in its inverse direction.
    """

    over_arc: str  # which digon arc passes over the other at both crossings
    level: str  # transversal over both arcs or under both
    left_dir: str  # left-arc strand runs bottom-to-top ('up') or 'down'
    right_dir: str
    tangle: TangleDiagram
    upper_code: TriangleCode
    lower_code: TriangleCode
    upper_face_code: TriangleCode
    lower_face_code: TriangleCode

    @property
    def params(self) -> tuple:
        return (self.over_arc, self.level, self.left_dir, self.right_dir)

    def __str__(self) -> str:
        p = f"arc={self.over_arc} level={self.level} dl={self.left_dir} dr={self.right_dir}"
        return (f"{p} -> {self.upper_code} , {self.lower_code}"
                f" [faces: {self.upper_face_code} , {self.lower_face_code}]")


def build_theta_tangle(over_arc: str, level: str, left_dir: str, right_dir: str) -> TangleDiagram:
    up_l, up_r = left_dir == "up", right_dir == "up"
    # Strand travel angles at each crossing, degrees ccw from east.
    th_trans = 0
    th_left = {_B: 135, _LX: 90, _T: 45}
    th_right = {_B: 45, _RX: 90, _T: 135}
    if not up_l:
        th_left = {c: (a + 180) % 360 for c, a in th_left.items()}
    if not up_r:
        th_right = {c: (a + 180) % 360 for c, a in th_right.items()}

    signs, slot_maps = {}, {}
    for cid, strand_a, strand_b in (
        (_T, "left", "right"),
        (_B, "left", "right"),
        (_LX, "trans", "left"),
        (_RX, "trans", "right"),
    ):
        motions = {
            "left": th_left.get(cid),
            "right": th_right.get(cid),
            "trans": th_trans,
        }
        if cid in (_T, _B):
            over = over_arc
        else:
            over = "trans" if level == "over" else strand_b
        under = strand_b if over == strand_a else strand_a
        signs[cid], slot_maps[cid] = _crossing_from_motions(motions[under], motions[over])

    legs_flags = {}
    edges = []
    trans_pts = [("b", 1), ("c", _LX, th_trans), ("c", _RX, th_trans), ("b", 4)]
    left_pts = [("b", 3), ("c", _B, th_left[_B]), ("c", _LX, th_left[_LX]),
                ("c", _T, th_left[_T]), ("b", 5)]
    right_pts = [("b", 2), ("c", _B, th_right[_B]), ("c", _RX, th_right[_RX]),
                 ("c", _T, th_right[_T]), ("b", 6)]
    if not up_l:
        left_pts.reverse()
    if not up_r:
        right_pts.reverse()
    for pts in (trans_pts, left_pts, right_pts):
        _strand_edges(pts, legs_flags, signs, slot_maps, edges)
    legs = tuple(legs_flags[i] for i in range(1, 7))
    return TangleDiagram.make(legs, signs.items(), edges)


def _triangle_with_corners(d: TangleDiagram, corners: set):
    for f in triangle_faces(d):
        if {_dart_ports(dart)[1][1] for dart in f} == corners:
            return f
    raise AssertionError(f"no triangular face with corners {corners}")


def enumerate_theta_configs() -> list:
    """All sixteen theta configurations, in parameter-sorted order.

    Raises if any grid candidate fails a consistency predicate; that would
    falsify the layout, not the input.
    """
    out = []
    for over_arc in ARC_SIDES:
        for level in LEVELS:
            for left_dir in DIRS:
                for right_dir in DIRS:
                    t = build_theta_tangle(over_arc, level, left_dir, right_dir)
                    assert validate(t) == [], f"theta candidate invalid: {validate(t)}"
                    if t.sign_of(_T) == t.sign_of(_B):
                        raise AssertionError("digon crossings must have distinct signs")
                    upper = classify_triangle(t, _triangle_with_corners(t, {_T, _LX, _RX}))
                    lower = classify_triangle(t, _triangle_with_corners(t, {_B, _LX, _RX}))
                    out.append(ThetaConfig(
                        over_arc, level, left_dir, right_dir, t,
                        TriangleCode(upper.letter, True),
                        TriangleCode(lower.letter, False),
                        upper, lower,
                    ))
    assert len({canonical_key(c.tangle) for c in out}) == 16
    return out


def theta_relation() -> frozenset:
    """Ordered letter pairs (upper, lower) read off the 16 configurations."""
    return frozenset((c.upper_code.letter, c.lower_code.letter)
                     for c in enumerate_theta_configs())


def _strand_of_edges(d: TangleDiagram) -> dict:
    from .diagram import strands

    out = {}
    for a, b, path in strands(d):
        for e in path:
            out[e] = (a, b)
    return out


def _face_of_other_side(d: TangleDiagram, edge, not_face):
    from .diagram import faces

    for f in faces(d):
        if f != not_face and any(dart[0] == edge for dart in f):
            return f
    raise AssertionError("edge has only one face")


def factor_via_theta(config: ThetaConfig) -> Certificate:
    """The 3-step factorization: complexifying type-2 move, one type-3 move
    at the helper triangle, simplifying type-2 move.

    The certificate runs from the standard 6-leg source of the upper
    letter's up-form to that move's target, using only type-2 moves plus
    the lower letter's move in both directions.
    """
    x = config.upper_code.letter
    y = config.lower_code.letter
    start = build_triangle(TriangleCode(x, True))
    tri = triangle_faces(start)[0]
    target = r3_image(start, tri)

    strand_of = _strand_of_edges(start)
    top_dart = None
    for dart in tri:
        tail, head = _dart_ports(dart)
        if tail[2] in (1, 3) and head[2] in (1, 3):
            top_dart = dart
        if tail[2] not in (1, 3) and head[2] not in (1, 3):
            bot_dart = dart
    # The transversal of the theta picture is the strand consistent with
    # level: the triangle's over-over strand or its under-under strand.
    trans_dart = top_dart if config.level == "over" else bot_dart
    trans_edge = trans_dart[0]
    trans_strand = strand_of[trans_edge]
    trans_crossings = {p[1] for e, s in strand_of.items() if s == trans_strand
                       for p in e if p[0] == "c"}

    push_face = _face_of_other_side(start, trans_edge, tri)
    push_darts = {}
    for dart in push_face:
        s = strand_of.get(dart[0])
        if s is not None and s != trans_strand:
            assert s not in push_darts, "push face sees a digon strand twice"
            push_darts[s] = dart
    assert len(push_darts) == 2

    # At the existing crossing of the two pushed strands one passes over
    # the other; the new digon must repeat that pattern, so push the over
    # one across the under one with the finger on top.
    (sa, da), (sb, db) = push_darts.items()
    shared = None
    for cid in {p[1] for e in (dart[0] for dart in tri) for p in e}:
        if cid not in trans_crossings:
            shared = cid
    assert shared is not None

    def level_at_shared(strand):
        for e, s in strand_of.items():
            if s != strand:
                continue
            for p in e:
                if p[0] == "c" and p[1] == shared:
                    return p[2] in (1, 3)
        raise AssertionError("strand misses the shared crossing")

    if level_at_shared(sa):
        dart_from, dart_across = da, db
    else:
        dart_from, dart_across = db, da

    d2 = r2_expand(start, dart_from, dart_across, True)
    new_ids = {cid for cid, _ in d2.crossings} - {cid for cid, _ in start.crossings}
    step1_face = created_digon_face(d2, *sorted(new_ids))
    step1_name = classify_digon(d2, step1_face)[0] + "-expand"

    helper_face = None
    for f in triangle_faces(d2):
        corners = {_dart_ports(dart)[1][1] for dart in f}
        if trans_crossings < corners and corners - trans_crossings <= new_ids:
            helper_face = f
    assert helper_face is not None, "no helper triangle after the expansion"
    helper_code = classify_triangle(d2, helper_face)
    assert helper_code.letter == y, (
        f"helper triangle shows {helper_code}, expected letter {y}"
    )
    step2_name = r3_name(y, helper_code.up)
    d3 = r3_image(d2, helper_face)

    helper_corners = {_dart_ports(x_)[1][1] for x_ in helper_face}
    digon_ids = {shared} | (new_ids & helper_corners)
    step3_face = created_digon_face(d3, *sorted(digon_ids))
    assert step3_face is not None, "digon not empty after the type-3 move"
    step3_name = classify_digon(d3, step3_face)[0] + "-reduce"
    d4 = r2_reduce(d3, step3_face)
    assert canonical_key(d4) == canonical_key(target), "factorization misses the target"

    basis = frozenset(R2_NAMES) | {r3_name(y, True), r3_name(y, False)}
    return Certificate(
        basis,
        canonical_relabel(start),
        (
            (step1_name, canonical_relabel(d2)),
            (step2_name, canonical_relabel(d3)),
            (step3_name, canonical_relabel(d4)),
        ),
    )
