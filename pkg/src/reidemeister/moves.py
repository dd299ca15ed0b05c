"""Oriented Reidemeister moves of types 2 and 3 on tangle diagrams.

Triangular configurations are encoded by three arrows (base, middle-level
strand, bottom-level strand) read after rotating the configuration so the
strand that passes over both others is horizontal with the triangle above
it (apex up).  The sixteen codes are named a,b,c,d,A,B,C,D each with an
up or down form; the down form is the arrow-reversal of the up form.

Move-name spellings used in certificates and on the command line:

* type 2: ``r2-{par|anti}-{over|under}-{expand|reduce}``.  ``par`` means
  the two digon arcs are co-directed.  The over/under flavor is the sign
  of the crossing at which the under-arc enters the digon: ``over`` = +1.
  Mirroring swaps the flavor of the ``par`` variants and fixes the
  ``anti`` variants (the antiparallel moves are their own mirror images).
* type 3: ``r3-<letter>-dn`` (up-form to down-form) and ``r3-<letter>-up``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    IN,
    OUT,
    DiagramError,
    TangleDiagram,
    canonical_key,
    faces,
    face_touches_boundary,
    validate,
)

R, L = "→", "←"  # → ←
NE, NW, SW, SE = "↗", "↖", "↙", "↘"  # ↗ ↖ ↙ ↘
UP, DN = "↑", "↓"  # ↑ ↓

LETTERS = "abcdABCD"

# The sixteen 3-arrow rows, up forms; down forms are arrow reversals.
_UP_ARROWS = {
    "a": (R, NE, NW),
    "b": (R, NW, NE),
    "c": (R, SW, NW),
    "d": (R, SE, NE),
    "A": (R, SE, SW),
    "B": (R, NE, SE),
    "C": (R, NW, SW),
    "D": (R, SW, SE),
}

_REV = {R: L, L: R, NE: SW, SW: NE, NW: SE, SE: NW}


class IncoherentTriangleError(DiagramError):
    """Triangle whose three strands admit no total over-order."""


@dataclass(frozen=True, order=True)
class TriangleCode:
    letter: str
    up: bool

    @property
    def arrows(self) -> tuple:
        fwd = _UP_ARROWS[self.letter]
        return fwd if self.up else tuple(_REV[a] for a in fwd)

    def flipped(self) -> "TriangleCode":
        return TriangleCode(self.letter, not self.up)

    def __str__(self) -> str:
        return self.letter + (UP if self.up else DN)

    @staticmethod
    def parse(text: str) -> "TriangleCode":
        t = text.strip()
        if len(t) == 2 and t[0] in LETTERS and t[1] in (UP, DN):
            return TriangleCode(t[0], t[1] == UP)
        for sep in ("-", "."):
            parts = t.split(sep)
            if len(parts) == 2 and parts[0] in LETTERS and parts[1] in ("up", "dn"):
                return TriangleCode(parts[0], parts[1] == "up")
        raise ValueError(f"not a triangle code: {text!r}")


ALL_CODES = tuple(
    TriangleCode(letter, up) for letter in LETTERS for up in (True, False)
)

_CODE_BY_ARROWS = {code.arrows: code for code in ALL_CODES}


def mirror_code(code: TriangleCode) -> TriangleCode:
    """Case swap; for letters b,d,B,D also swap the up/down flag."""
    letter = code.letter.swapcase()
    if code.letter in "acAC":
        return TriangleCode(letter, code.up)
    return TriangleCode(letter, not code.up)


# ---------------------------------------------------------------------------
# move names

R2_VARIANTS = ("r2-par-over", "r2-par-under", "r2-anti-over", "r2-anti-under")
R2_NAMES = tuple(f"{v}-{d}" for v in R2_VARIANTS for d in ("expand", "reduce"))
R3_NAMES = tuple(f"r3-{x}-{d}" for x in LETTERS for d in ("dn", "up"))
ALL_MOVE_NAMES = R2_NAMES + R3_NAMES


def r3_name(letter: str, from_up: bool) -> str:
    """Name of the letter's move leaving the given form: up forms move down."""
    return f"r3-{letter}-{'dn' if from_up else 'up'}"


def inverse_move(name: str) -> str:
    if name.endswith("-expand"):
        return name[:-7] + "-reduce"
    if name.endswith("-reduce"):
        return name[:-7] + "-expand"
    if name.endswith("-dn"):
        return name[:-3] + "-up"
    if name.endswith("-up"):
        return name[:-3] + "-dn"
    raise ValueError(f"unknown move name {name!r}")


def mirror_move(name: str) -> str:
    if name.startswith("r2-par-over"):
        return "r2-par-under" + name[len("r2-par-over"):]
    if name.startswith("r2-par-under"):
        return "r2-par-over" + name[len("r2-par-under"):]
    if name.startswith("r2-anti"):
        return name
    letter, dirn = name[3], name[5:]
    m = mirror_code(TriangleCode(letter, dirn == "dn"))
    # r3-x-dn names the move applied to the up form; the mirrored move
    # applies to the mirrored form.
    return r3_name(m.letter, m.up)


def expand_basis(tokens) -> frozenset:
    """Expand shorthand like 'r2' or 'r3-A' into concrete move names."""
    names = set()
    for tok in tokens:
        tok = tok.strip()
        if not tok:
            continue
        if tok == "r2":
            names.update(R2_NAMES)
        elif tok in ALL_MOVE_NAMES:
            names.add(tok)
        elif tok.startswith("r3-") and len(tok) == 4 and tok[3] in LETTERS:
            names.add(r3_name(tok[3], True))
            names.add(r3_name(tok[3], False))
        else:
            raise ValueError(f"unknown move or basis token {tok!r}")
    return frozenset(names)


# ---------------------------------------------------------------------------
# geometric construction helper

def _crossing_from_motions(under_motion: int, over_motion: int):
    """Slot assignment and sign for a crossing given strand travel angles.

    Angles are degrees counterclockwise from east; each strand enters at
    its motion angle + 180 and exits at the motion angle.
    """
    under_in = (under_motion + 180) % 360
    under_out = under_motion % 360
    over_in = (over_motion + 180) % 360
    over_out = over_motion % 360
    seq = sorted(
        (under_in, under_out, over_in, over_out),
        key=lambda a: (a - under_in) % 360,
    )
    assert seq[0] == under_in and seq[2] == under_out, "strands must alternate"
    sign = 1 if seq[3] == over_in else -1
    slot_of = {angle: slot for slot, angle in enumerate(seq)}
    return sign, slot_of


def _strand_edges(points, legs_flags, signs, slot_maps, edges):
    """Append the edges of one strand given its ordered waypoints.

    ``points`` is [('b', leg), ('c', cid, motion), ..., ('b', leg)].
    """
    first, last = points[0], points[-1]
    legs_flags[first[1]] = IN
    legs_flags[last[1]] = OUT

    def in_port(pt):
        if pt[0] == "b":
            return ("b", pt[1])
        _, cid, motion = pt
        return ("c", cid, slot_maps[cid][(motion + 180) % 360])

    def out_port(pt):
        if pt[0] == "b":
            return ("b", pt[1])
        _, cid, motion = pt
        return ("c", cid, slot_maps[cid][motion % 360])

    for a, b in zip(points, points[1:]):
        edges.append((out_port(a), in_port(b)))


def build_triangle(code: TriangleCode) -> TangleDiagram:
    """The canonical 6-leg, 3-crossing tangle showing the given code.

    The over-over strand is the horizontal base with the triangle above it.
    Legs run 1..6 counterclockwise from just west of the base: 1 = base
    west end, 2 = left-strand lower end, 3 = right-strand lower end,
    4 = base east end, 5 = left-strand upper end, 6 = right-strand upper.
    """
    first, mid, bot = code.arrows
    base_east = first == R
    mid_on_left = mid in (NE, SW)
    mid_up = mid in (NE, NW)
    bot_up = bot in (NE, NW)
    left_up = mid_up if mid_on_left else bot_up
    right_up = bot_up if mid_on_left else mid_up

    SWX, SEX, APX = 0, 1, 2  # crossing ids: base-left, base-right, apex
    th_base = 0 if base_east else 180
    th_left = 45 if left_up else 225
    th_right = 135 if right_up else 315

    signs, slot_maps = {}, {}
    # Base is over at both its crossings; at the apex the middle-level
    # strand passes over the bottom-level one.
    for cid, under_m, over_m in (
        (SWX, th_left, th_base),
        (SEX, th_right, th_base),
        (APX, th_right if mid_on_left else th_left,
         th_left if mid_on_left else th_right),
    ):
        signs[cid], slot_maps[cid] = _crossing_from_motions(under_m, over_m)

    legs_flags = {}
    edges = []
    base_pts = [("b", 1), ("c", SWX, th_base), ("c", SEX, th_base), ("b", 4)]
    left_pts = [("b", 2), ("c", SWX, th_left), ("c", APX, th_left), ("b", 5)]
    right_pts = [("b", 3), ("c", SEX, th_right), ("c", APX, th_right), ("b", 6)]
    if not base_east:
        base_pts.reverse()
    if not left_up:
        left_pts.reverse()
    if not right_up:
        right_pts.reverse()
    for pts in (base_pts, left_pts, right_pts):
        _strand_edges(pts, legs_flags, signs, slot_maps, edges)

    legs = tuple(legs_flags[i] for i in range(1, 7))
    return TangleDiagram.make(legs, signs.items(), edges)


# ---------------------------------------------------------------------------
# classification

def _dart_ports(dart):
    (src, dst), fwd = dart
    return (src, dst) if fwd else (dst, src)  # (tail port, head port)


def _is_over_slot(port) -> bool:
    return port[2] in (1, 3)


def classify_triangle_ex(d: TangleDiagram, face):
    """(code, top side index) of a triangular interior face.

    Normalization is by rotation only; the counterclockwise face walk
    fixes it: the walk runs west to east along the base of the rotated
    picture, so the walk successor of the over-over side is the right
    side of the triangle and its predecessor is the left side.
    """
    if len(face) != 3:
        raise DiagramError("non-triangular face")
    tails_heads = [_dart_ports(dart) for dart in face]
    if any(p[0] != "c" for th in tails_heads for p in th):
        raise DiagramError("triangle face touches the boundary")
    corners = {head[1] for _, head in tails_heads}
    if len(corners) != 3:
        raise DiagramError("triangle corners not distinct")

    levels = []
    for tail, head in tails_heads:
        levels.append((_is_over_slot(tail), _is_over_slot(head)))
    tops = [i for i, lv in enumerate(levels) if lv == (True, True)]
    bots = [i for i, lv in enumerate(levels) if lv == (False, False)]
    if len(tops) != 1 or len(bots) != 1:
        raise IncoherentTriangleError("no total over-order on the triangle strands")
    top = tops[0]
    right_i, left_i = (top + 1) % 3, (top + 2) % 3

    def fwd(i):
        return face[i][1]

    first = R if fwd(top) else L
    right_arrow = NW if fwd(right_i) else SE
    left_arrow = SW if fwd(left_i) else NE
    if bots[0] == right_i:
        mid_arrow, bot_arrow = left_arrow, right_arrow
    else:
        mid_arrow, bot_arrow = right_arrow, left_arrow
    return _CODE_BY_ARROWS[(first, mid_arrow, bot_arrow)], top


def classify_triangle(d: TangleDiagram, face) -> TriangleCode:
    return classify_triangle_ex(d, face)[0]


def triangle_faces(d: TangleDiagram):
    """Interior 3-sided faces with 3 distinct crossing corners."""
    out = []
    for f in faces(d):
        if len(f) != 3 or face_touches_boundary(f):
            continue
        ths = [_dart_ports(dart) for dart in f]
        if len({head[1] for _, head in ths}) == 3:
            out.append(f)
    return out


# ---------------------------------------------------------------------------
# type 3 move

def _diag_slots(sign: int, slot: int):
    """(entry, exit) slots of the diagonal through ``slot``."""
    if slot in (0, 2):
        return 0, 2
    return (3, 1) if sign > 0 else (1, 3)


def r3_image(d: TangleDiagram, face) -> TangleDiagram:
    """Flip a coherent triangle to the unique other planar realization.

    Every crossing keeps its strand pair, over-strand and sign; along each
    of the three strands the two triangle crossings swap places.
    """
    classify_triangle(d, face)  # validates coherence
    signs = d.sign_map()
    portmap = {}
    for dart in face:
        tail, head = _dart_ports(dart)
        _, cx, sx = tail
        _, cy, sy = head
        in_x, out_x = _diag_slots(signs[cx], sx)
        in_y, out_y = _diag_slots(signs[cy], sy)
        portmap[("c", cx, in_x)] = ("c", cy, in_y)
        portmap[("c", cy, in_y)] = ("c", cx, in_x)
        portmap[("c", cx, out_x)] = ("c", cy, out_y)
        portmap[("c", cy, out_y)] = ("c", cx, out_x)

    def conv(p):
        return portmap.get(p, p)

    return TangleDiagram.make(
        d.legs, d.crossings, [(conv(s), conv(t)) for s, t in d.edges]
    )


# ---------------------------------------------------------------------------
# type 2 moves

def classify_digon(d: TangleDiagram, face):
    """(variant, over_arc_edge) for a reducible 2-sided face, else None."""
    if len(face) != 2:
        return None
    (t1, h1), (t2, h2) = (_dart_ports(dart) for dart in face)
    ports = (t1, h1, t2, h2)
    if any(p[0] != "c" for p in ports):
        return None
    e1, e2 = face[0][0], face[1][0]
    if e1 == e2 or h1[1] == h2[1]:
        return None
    over1 = _is_over_slot(t1) and _is_over_slot(h1)
    over2 = _is_over_slot(t2) and _is_over_slot(h2)
    under1 = not (_is_over_slot(t1) or _is_over_slot(h1))
    under2 = not (_is_over_slot(t2) or _is_over_slot(h2))
    if over1 and under2:
        over_edge, under_edge = e1, e2
    elif over2 and under1:
        over_edge, under_edge = e2, e1
    else:
        return None  # clasp: mixed levels, no type-2 move applies
    parallel = over_edge[0][1] == under_edge[0][1]
    flavor = "over" if d.sign_of(under_edge[0][1]) > 0 else "under"
    return f"r2-{'par' if parallel else 'anti'}-{flavor}", over_edge


def digon_faces(d: TangleDiagram):
    return [f for f in faces(d) if len(f) == 2]


def r2_reduce(d: TangleDiagram, face) -> TangleDiagram:
    """Remove the two crossings of a reducible digon face."""
    info = classify_digon(d, face)
    if info is None:
        raise DiagramError("face is not a reducible digon")
    dying = {_dart_ports(dart)[1][1] for dart in face}
    signs = d.sign_map()
    arc_edges = {dart[0] for dart in face}
    by_src = {src: (src, dst) for src, dst in d.edges}

    def through(port):
        _, cid, slot = port
        if slot == 0:
            return ("c", cid, 2)
        return ("c", cid, 1 if signs[cid] > 0 else 3)

    new_edges = []
    for src, dst in d.edges:
        if (src, dst) in arc_edges or (src[0] == "c" and src[1] in dying):
            continue
        cur = dst
        hops = 0
        while cur[0] == "c" and cur[1] in dying:
            cur = by_src[through(cur)][1]
            hops += 1
            if hops > 2 * len(d.edges):
                raise DiagramError("closed component created by reduction")
        new_edges.append((src, cur))

    crossings = [(cid, s) for cid, s in d.crossings if cid not in dying]
    return TangleDiagram.make(d.legs, crossings, new_edges)


def r2_expand(
    d: TangleDiagram, dart_from, dart_across, finger_over: bool
) -> TangleDiagram:
    """Push a finger of one face side across another through their face.

    In the local frame the from-side runs west to east with the face above
    it and the across-side runs east to west above the face; the finger
    goes north.  The two new crossings are Xa (west) and Xb (east).
    """
    eA, fwdA = dart_from
    eB, fwdB = dart_across
    next_id = max((cid for cid, _ in d.crossings), default=-1) + 1
    ida, idb = next_id, next_id + 1

    same_edge = eA == eB
    if same_edge:
        finger_motion = {ida: 90, idb: 270}
    else:
        finger_motion = {ida: 90, idb: 270} if fwdA else {ida: 270, idb: 90}
    across_motion = 180 if fwdB else 0

    signs, slot_maps = {}, {}
    for cid in (ida, idb):
        fm, am = finger_motion[cid], across_motion
        under_m, over_m = (am, fm) if finger_over else (fm, am)
        signs[cid], slot_maps[cid] = _crossing_from_motions(under_m, over_m)

    def fin(cid):
        return ("c", cid, slot_maps[cid][(finger_motion[cid] + 180) % 360])

    def fout(cid):
        return ("c", cid, slot_maps[cid][finger_motion[cid]])

    def ain(cid):
        return ("c", cid, slot_maps[cid][(across_motion + 180) % 360])

    def aout(cid):
        return ("c", cid, slot_maps[cid][across_motion])

    new_edges = [e for e in d.edges if e != eA and e != eB]
    if same_edge:
        u, v = eA
        if fwdA:
            new_edges += [
                (u, fin(ida)), (fout(ida), fin(idb)), (fout(idb), ain(ida)),
                (aout(ida), ain(idb)), (aout(idb), v),
            ]
        else:
            new_edges += [
                (u, fin(ida)), (fout(ida), fin(idb)), (fout(idb), ain(idb)),
                (aout(idb), ain(ida)), (aout(ida), v),
            ]
    else:
        u, v = eA
        first, second = (ida, idb) if fwdA else (idb, ida)
        new_edges += [(u, fin(first)), (fout(first), fin(second)), (fout(second), v)]
        w, z = eB
        first, second = (idb, ida) if fwdB else (ida, idb)
        new_edges += [(w, ain(first)), (aout(first), ain(second)), (aout(second), z)]

    crossings = list(d.crossings) + [(ida, signs[ida]), (idb, signs[idb])]
    return TangleDiagram.make(d.legs, crossings, new_edges)


def created_digon_face(d: TangleDiagram, ida: int, idb: int):
    """The empty bigon between two crossings, if present."""
    for f in faces(d):
        if len(f) != 2:
            continue
        corners = {_dart_ports(dart)[1] for dart in f}
        if all(p[0] == "c" for p in corners) and {c[1] for c in corners} == {ida, idb}:
            return f
    return None


# ---------------------------------------------------------------------------
# enumeration

@dataclass(frozen=True)
class MoveApplication:
    name: str
    location: tuple
    result: TangleDiagram


def enumerate_applications(d: TangleDiagram, allowed) -> list:
    """All distinct applications of the allowed moves, sorted and deduped.

    Completeness: every reduce on every matching digon face, every expand
    over every unordered pair of distinct face-walk darts with both
    over-choices (pushing A over B equals pushing B under A), every type-3
    move on every coherent triangle whose code matches an allowed name.
    """
    allowed = frozenset(allowed)
    apps = []
    all_faces = faces(d)

    want_reduce = any(n.endswith("-reduce") for n in allowed)
    want_expand = any(n.endswith("-expand") for n in allowed)
    want_r3 = any(n.startswith("r3-") for n in allowed)

    for f in all_faces:
        if want_reduce and len(f) == 2:
            info = classify_digon(d, f)
            if info is not None:
                name = info[0] + "-reduce"
                if name in allowed:
                    corners = tuple(sorted(_dart_ports(x)[1][1] for x in f))
                    apps.append(MoveApplication(name, ("digon",) + corners, r2_reduce(d, f)))
        if want_r3 and len(f) == 3 and not face_touches_boundary(f):
            try:
                code = classify_triangle(d, f)
            except DiagramError:
                pass
            else:
                name = r3_name(code.letter, code.up)
                if name in allowed:
                    corners = tuple(sorted(_dart_ports(x)[1][1] for x in f))
                    apps.append(MoveApplication(name, ("tri",) + corners, r3_image(d, f)))
        if want_expand:
            for i in range(len(f)):
                for j in range(i + 1, len(f)):
                    for over in (True, False):
                        res = r2_expand(d, f[i], f[j], over)
                        ids = [cid for cid, _ in res.crossings[-2:]]
                        dig = created_digon_face(res, ids[0], ids[1])
                        assert dig is not None, "expansion lost its digon"
                        variant = classify_digon(res, dig)[0]
                        name = variant + "-expand"
                        if name in allowed:
                            apps.append(
                                MoveApplication(name, ("push", f[i], f[j], over), res)
                            )

    apps.sort(key=lambda a: (a.name, canonical_key(a.result)))
    seen = set()
    out = []
    for a in apps:
        k = (a.name, canonical_key(a.result))
        if k not in seen:
            seen.add(k)
            out.append(a)
    return out


def apply_move(app: MoveApplication) -> TangleDiagram:
    bad = validate(app.result)
    if bad:
        raise DiagramError(f"move produced an invalid diagram: {bad}")
    return app.result
