"""Oriented tangle diagrams in a disk, as planar combinatorial maps.

Conventions fixed here and relied on everywhere else:

* Boundary legs are numbered 1..2n counterclockwise around the disk.  A leg
  flagged ``in`` is a point where a strand enters the disk (so its interior
  side is the *source* of an edge); an ``out`` leg is a sink.
* Every crossing has 4 ports in counterclockwise slot order 0,1,2,3 placed
  at compass points W,S,E,N.  The under-strand enters slot 0 and exits
  slot 2.  The over-strand enters slot 3 and exits slot 1 at a positive
  crossing, or enters slot 1 and exits slot 3 at a negative one.
* Genus is checked by attaching a virtual boundary vertex.  Seen from that
  vertex the counterclockwise order of the legs is *descending* (inverting
  the disk reverses the apparent rotation), which makes v - e + f = 2 hold
  for genus-0 maps with the face rule below.
* Face walks keep the face on the left of each dart: after arriving at a
  port, the walk leaves through the clockwise-next (= ccw-previous) port.
  Interior faces therefore come out counterclockwise.

Ports are tuples: ``('b', i)`` for boundary leg i, ``('c', cid, slot)``
for slot ``slot`` of crossing ``cid``.  Edges are directed ``(src, dst)``
port pairs following the strand orientation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

Port = tuple
Edge = tuple  # (src Port, dst Port)
Dart = tuple  # (Edge, forward: bool)

IN = "in"
OUT = "out"


class DiagramError(ValueError):
    """Raised when an operation is applied to an unsuitable diagram."""


@dataclass(frozen=True)
class TangleDiagram:
    """Immutable oriented tangle: leg flags, signed crossings, directed edges."""

    legs: tuple  # ('in'|'out', ...), index 0 is leg 1
    crossings: tuple  # sorted ((cid, sign), ...)
    edges: tuple  # sorted ((src, dst), ...)

    @staticmethod
    def make(legs, crossings, edges) -> "TangleDiagram":
        return TangleDiagram(
            tuple(legs),
            tuple(sorted(crossings)),
            tuple(sorted(edges)),
        )

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def sign_of(self, cid: int) -> int:
        for c, s in self.crossings:
            if c == cid:
                return s
        raise DiagramError(f"unknown crossing id {cid}")

    def sign_map(self) -> dict:
        return dict(self.crossings)


def crossing_ports(cid: int):
    return [("c", cid, k) for k in range(4)]


def source_ports(d: TangleDiagram):
    """All ports where an edge must start."""
    out = []
    for i, flag in enumerate(d.legs, start=1):
        if flag == IN:
            out.append(("b", i))
    for cid, sign in d.crossings:
        out.append(("c", cid, 2))
        out.append(("c", cid, 1 if sign > 0 else 3))
    return out


def target_ports(d: TangleDiagram):
    out = []
    for i, flag in enumerate(d.legs, start=1):
        if flag == OUT:
            out.append(("b", i))
    for cid, sign in d.crossings:
        out.append(("c", cid, 0))
        out.append(("c", cid, 3 if sign > 0 else 1))
    return out


def validate(d: TangleDiagram):
    """Return a list of (tag, detail) violations; empty means valid."""
    violations = []
    if len(d.legs) % 2 != 0:
        violations.append(("orientation-mismatch", "odd number of legs"))
    if d.legs.count(IN) != d.legs.count(OUT):
        violations.append(("orientation-mismatch", "in/out leg counts differ"))

    srcs = set(source_ports(d))
    dsts = set(target_ports(d))
    seen_src, seen_dst = set(), set()
    for src, dst in d.edges:
        if src not in srcs:
            violations.append(("orientation-mismatch", f"edge source {src} is not an out-port"))
        elif src in seen_src:
            violations.append(("port-reuse", f"port {src} used as source twice"))
        seen_src.add(src)
        if dst not in dsts:
            violations.append(("orientation-mismatch", f"edge target {dst} is not an in-port"))
        elif dst in seen_dst:
            violations.append(("port-reuse", f"port {dst} used as target twice"))
        seen_dst.add(dst)
    for p in srcs - seen_src:
        violations.append(("port-reuse", f"out-port {p} unused"))
    for p in dsts - seen_dst:
        violations.append(("port-reuse", f"in-port {p} unused"))
    if violations:
        return violations

    # Closed components: every edge must be reached by tracing strands
    # from the in-legs.
    try:
        paths = strands(d)
    except DiagramError as exc:
        violations.append(("closed-component", str(exc)))
        return violations

    # Genus check via Euler's formula with the virtual boundary vertex.
    v = len(d.crossings) + 1
    e = len(d.edges)
    f = len(faces(d, _checked=True))
    if v - e + f != 2:
        violations.append(("genus", f"v-e+f = {v}-{e}+{f} != 2"))
    return violations


def _ccw_prev_port(d: TangleDiagram, p: Port) -> Port:
    if p[0] == "c":
        _, cid, slot = p
        return ("c", cid, (slot - 1) % 4)
    # Boundary vertex: ccw order is legs descending, so the ccw-previous
    # of leg i is leg i+1 (wrapping).
    i = p[1]
    return ("b", i % len(d.legs) + 1)


def _dart_head(dart: Dart) -> Port:
    (src, dst), fwd = dart
    return dst if fwd else src


def faces(d: TangleDiagram, _checked: bool = False):
    """All faces as tuples of darts, each dart (edge, forward flag).

    Interior faces are walked counterclockwise.  Faces through the virtual
    boundary vertex (those touching legs) are included.
    """
    if not _checked:
        bad = validate(d)
        if bad:
            raise DiagramError(f"invalid diagram: {bad}")
    at_port = {}
    for e in d.edges:
        src, dst = e
        at_port[src] = (e, True)
        at_port[dst] = (e, False)

    def next_dart(dart: Dart) -> Dart:
        q = _ccw_prev_port(d, _dart_head(dart))
        e, role = at_port[q]
        # Leaving through q: forward if the edge starts here.
        return (e, role)

    all_darts = [(e, True) for e in d.edges] + [(e, False) for e in d.edges]
    seen = set()
    out = []
    for start in all_darts:
        if start in seen:
            continue
        walk = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            walk.append(cur)
            cur = next_dart(cur)
        out.append(tuple(walk))
    return out


def face_touches_boundary(face) -> bool:
    return any(p[0] == "b" for (src, dst), _ in face for p in (src, dst))


def interior_faces(d: TangleDiagram):
    return [f for f in faces(d) if not face_touches_boundary(f)]


def crossing_sign(d: TangleDiagram, cid: int) -> int:
    return d.sign_of(cid)


def writhe(d: TangleDiagram) -> int:
    return sum(s for _, s in d.crossings)


def _through_slot(slot: int, sign: int) -> int:
    """Exit slot for a strand entering the given slot."""
    if slot == 0:
        return 2
    if sign > 0:  # over enters 3, exits 1
        if slot == 3:
            return 1
    else:
        if slot == 1:
            return 3
    raise DiagramError(f"slot {slot} is not an entry slot for sign {sign}")


def strands(d: TangleDiagram):
    """Trace maximal directed paths from in-legs to out-legs.

    Returns a list of (in_leg, out_leg, edge_path).  Raises DiagramError if
    any edge is left over (a closed component).
    """
    by_src = {src: (src, dst) for src, dst in d.edges}
    signs = d.sign_map()
    used = set()
    result = []
    for i, flag in enumerate(d.legs, start=1):
        if flag != IN:
            continue
        path = []
        port = ("b", i)
        while True:
            e = by_src[port]
            path.append(e)
            used.add(e)
            dst = e[1]
            if dst[0] == "b":
                result.append((i, dst[1], tuple(path)))
                break
            _, cid, slot = dst
            port = ("c", cid, _through_slot(slot, signs[cid]))
    if len(used) != len(d.edges):
        raise DiagramError("closed component: edges not reachable from any in-leg")
    return result


def strand_pairing(d: TangleDiagram):
    return tuple(sorted((a, b) for a, b, _ in strands(d)))


_MIRROR_SLOT = {
    1: {0: 1, 1: 2, 2: 3, 3: 0},  # positive crossing: old slot k -> k+1
    -1: {0: 3, 1: 0, 2: 1, 3: 2},  # negative: k -> k-1
}


def mirror(d: TangleDiagram) -> TangleDiagram:
    """Swap over/under at every crossing (negates every sign)."""
    signs = d.sign_map()

    def conv(p: Port) -> Port:
        if p[0] == "b":
            return p
        _, cid, slot = p
        return ("c", cid, _MIRROR_SLOT[signs[cid]][slot])

    return TangleDiagram.make(
        d.legs,
        [(cid, -s) for cid, s in d.crossings],
        [(conv(src), conv(dst)) for src, dst in d.edges],
    )


def rotate_boundary(d: TangleDiagram, k: int) -> TangleDiagram:
    """Relabel legs cyclically: leg i becomes leg ((i-1+k) mod 2n)+1."""
    n2 = len(d.legs)

    def conv(p: Port) -> Port:
        if p[0] == "b":
            return ("b", (p[1] - 1 + k) % n2 + 1)
        return p

    legs = [None] * n2
    for i, flag in enumerate(d.legs, start=1):
        legs[(i - 1 + k) % n2] = flag
    return TangleDiagram.make(legs, d.crossings, [(conv(s), conv(t)) for s, t in d.edges])


def canonical_relabel(d: TangleDiagram) -> TangleDiagram:
    """Renumber crossings 0,1,2,... by breadth-first discovery from leg 1.

    Visit order: legs ascending, then discovered crossings in order, slots
    0..3 at each.  Two diagrams are isomorphic as leg-labeled maps iff their
    relabelings are equal.
    """
    by_src = {src: (src, dst) for src, dst in d.edges}
    by_dst = {dst: (src, dst) for src, dst in d.edges}

    order = {}

    def discover(p: Port):
        if p[0] == "c" and p[1] not in order:
            order[p[1]] = len(order)

    queue = []
    for i in range(1, len(d.legs) + 1):
        p = ("b", i)
        e = by_src.get(p) or by_dst.get(p)
        far = e[1] if e[0] == p else e[0]
        discover(far)
    scanned = 0
    pending = sorted(order, key=order.get)
    while scanned < len(pending):
        cid = pending[scanned]
        scanned += 1
        for slot in range(4):
            p = ("c", cid, slot)
            e = by_src.get(p) or by_dst.get(p)
            far = e[1] if e[0] == p else e[0]
            before = len(order)
            discover(far)
            if len(order) != before:
                pending.append(far[1])

    if len(order) != len(d.crossings):
        raise DiagramError("diagram not connected to its boundary")

    def conv(p: Port) -> Port:
        if p[0] == "b":
            return p
        return ("c", order[p[1]], p[2])

    return TangleDiagram.make(
        d.legs,
        [(order[cid], s) for cid, s in d.crossings],
        [(conv(s), conv(t)) for s, t in d.edges],
    )


def canonical_key(d: TangleDiagram) -> tuple:
    """Hashable canonical form; equal iff leg-labeled-isomorphic."""
    c = canonical_relabel(d)
    return (c.legs, c.crossings, c.edges)


def canonical_code(d: TangleDiagram) -> str:
    """Deterministic serialization of the canonical relabeling.

    Equal codes iff leg-labeled-isomorphic; the string is a parseable
    tangle document, so codes round-trip through the codec.
    """
    from .codec import serialize_tangle

    return serialize_tangle(canonical_relabel(d))


def isomorphic_brute(d1: TangleDiagram, d2: TangleDiagram) -> bool:
    """Brute-force leg-labeled isomorphism test (small diagrams only)."""
    if d1.legs != d2.legs or len(d1.crossings) != len(d2.crossings):
        return False
    ids1 = [cid for cid, _ in d1.crossings]
    ids2 = [cid for cid, _ in d2.crossings]
    s1, s2 = d1.sign_map(), d2.sign_map()
    e2 = set(d2.edges)
    for perm in itertools.permutations(ids2):
        m = dict(zip(ids1, perm))
        if any(s1[a] != s2[m[a]] for a in ids1):
            continue

        def conv(p, m=m):
            return p if p[0] == "b" else ("c", m[p[1]], p[2])

        if all((conv(src), conv(dst)) in e2 for src, dst in d1.edges):
            return True
    return False
