"""Bounded reachability search over tangle diagrams and replayable
derivation certificates: production, verification, reversal, splicing."""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    DiagramError,
    TangleDiagram,
    canonical_key,
    canonical_relabel,
    validate,
)
from .moves import (
    MoveApplication,
    classify_triangle_ex,
    enumerate_applications,
    inverse_move,
    triangle_faces,
    _dart_ports,
)


@dataclass(frozen=True)
class Certificate:
    """A replayable derivation: basis, start, and (move, result) steps."""

    basis: frozenset
    start: TangleDiagram
    steps: tuple  # ((move name, TangleDiagram), ...)

    @property
    def end(self) -> TangleDiagram:
        return self.steps[-1][1] if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class SearchBounds:
    max_crossings: int
    max_depth: int = 24
    max_states: int = 5_000_000

    def __post_init__(self):
        if min(self.max_crossings, self.max_depth, self.max_states) <= 0:
            raise ValueError("search bounds must be positive")


class DerivationNotFound(Exception):
    """reason is 'exhausted' (state space fully explored) or 'bounds-hit'."""

    def __init__(self, reason: str, explored: int):
        super().__init__(f"no derivation found ({reason}; {explored} states)")
        self.reason = reason
        self.explored = explored


def derive(
    start: TangleDiagram,
    goal: TangleDiagram,
    basis,
    bounds: SearchBounds,
) -> Certificate:
    """Breadth-first search for a shortest derivation start -> goal.

    States are deduplicated by canonical form; expansion order is fixed,
    so the returned certificate is deterministic.
    """
    basis = frozenset(basis)
    if start.legs != goal.legs:
        raise DiagramError("start and goal have different leg signatures")
    no_expand = frozenset(n for n in basis if not n.endswith("-expand"))

    start_key = canonical_key(start)
    goal_key = canonical_key(goal)
    parent = {start_key: None}

    def build_cert(last_key) -> Certificate:
        chain = []
        k = last_key
        while parent[k] is not None:
            prev_k, name, diag = parent[k]
            chain.append((name, canonical_relabel(diag)))
            k = prev_k
        chain.reverse()
        return Certificate(basis, canonical_relabel(start), tuple(chain))

    if start_key == goal_key:
        return build_cert(start_key)

    frontier = [(start, start_key)]
    for _depth in range(bounds.max_depth):
        if not frontier:
            raise DerivationNotFound("exhausted", len(parent))
        next_frontier = []
        for d, k in frontier:
            allowed = basis if d.n_crossings + 2 <= bounds.max_crossings else no_expand
            for app in enumerate_applications(d, allowed):
                rk = canonical_key(app.result)
                if rk in parent:
                    continue
                parent[rk] = (k, app.name, app.result)
                if rk == goal_key:
                    return build_cert(rk)
                if len(parent) > bounds.max_states:
                    raise DerivationNotFound("bounds-hit", len(parent))
                next_frontier.append((app.result, rk))
        frontier = next_frontier
    if frontier:
        raise DerivationNotFound("bounds-hit", len(parent))
    raise DerivationNotFound("exhausted", len(parent))


def verify_certificate(cert: Certificate):
    """None if the certificate replays, else (1-based step index, reason).

    Each step is checked by re-enumerating every application of its named
    move on the previous diagram and matching canonical forms.
    """
    if validate(cert.start):
        return (0, "invalid start diagram")
    prev = cert.start
    for k, (name, diag) in enumerate(cert.steps, start=1):
        if name not in cert.basis:
            return (k, f"move {name} not in declared basis")
        if validate(diag):
            return (k, "invalid step diagram")
        apps = enumerate_applications(prev, frozenset({name}))
        want = canonical_key(diag)
        if not any(canonical_key(a.result) == want for a in apps):
            return (k, f"no application of {name} produces the recorded diagram")
        prev = diag
    return None


def reverse_certificate(cert: Certificate) -> Certificate:
    """Swap endpoints and invert every step; requires an inverse-closed basis."""
    basis = frozenset(cert.basis)
    assert all(inverse_move(n) in basis for n in basis), "basis not inverse-closed"
    diags = [cert.start] + [d for _, d in cert.steps]
    steps = []
    for i in range(len(cert.steps) - 1, -1, -1):
        name, _ = cert.steps[i]
        steps.append((inverse_move(name), diags[i]))
    return Certificate(basis, cert.end, tuple(steps))


# ---------------------------------------------------------------------------
# splicing a standard 6-leg certificate into a host derivation

def _triangle_stub_ports(d: TangleDiagram, face, top: int):
    """Outward ports of a triangle's local disk, counterclockwise, anchored
    so they correspond to legs 1..6 of the standard triangle tangle."""
    t_top, t_right, t_left = face[top], face[(top + 1) % 3], face[(top + 2) % 3]
    out = []
    for dart in (t_left, t_top, t_right):
        _, head = _dart_ports(dart)
        _, cid, a = head
        out.append(("c", cid, (a + 1) % 4))
        out.append(("c", cid, (a + 2) % 4))
    return out


def _match_application(host: TangleDiagram, name: str, result: TangleDiagram):
    """The triangle face at which applying ``name`` to host yields result."""
    want = canonical_key(result)
    for face in triangle_faces(host):
        try:
            code, top = classify_triangle_ex(host, face)
        except DiagramError:
            continue
        from .moves import r3_image, r3_name

        if r3_name(code.letter, code.up) != name:
            continue
        if canonical_key(r3_image(host, face)) == want:
            return face, code, top
    raise DiagramError(f"cannot locate the {name} application in the host")


def _embed_step(host: TangleDiagram, stub_ports, leg_of_stub, sub: TangleDiagram):
    """Host diagram with the stubbed local disk replaced by ``sub``."""
    dying = {p[1] for p in stub_ports}
    offset = max((cid for cid, _ in host.crossings), default=-1) + 1

    def sub_port(p):
        return ("c", p[1] + offset, p[2]) if p[0] == "c" else p

    stub_index = {p: i for i, p in enumerate(stub_ports)}
    # Virtual boundary-point connection links: vnode i sits where host stub
    # i met the removed disk.  Each vnode gets exactly one inbound and one
    # outbound link, one from the host side and one from the sub side.
    out_link = {}  # vnode or real source port -> (target vnode | port)
    in_from = {}

    def add_link(a, b):
        out_link[a] = b

    for src, dst in host.edges:
        s_in = src[0] == "c" and src[1] in dying
        d_in = dst[0] == "c" and dst[1] in dying
        if not s_in and not d_in:
            continue
        if s_in and d_in:
            if src in stub_index and dst in stub_index:
                add_link(("v", stub_index[src]), ("v", stub_index[dst]))
            continue  # interior (middle) edge: dropped entirely
        if s_in:
            add_link(("v", stub_index[src]), dst)
        else:
            add_link(src, ("v", stub_index[dst]))

    leg_to_v = {leg: i for i, leg in enumerate(leg_of_stub)}
    for src, dst in sub.edges:
        s_b, d_b = src[0] == "b", dst[0] == "b"
        if not s_b and not d_b:
            continue
        a = ("v", leg_to_v[src[1]]) if s_b else sub_port(src)
        b = ("v", leg_to_v[dst[1]]) if d_b else sub_port(dst)
        add_link(a, b)

    new_edges = [e for e in host.edges
                 if not any(p[0] == "c" and p[1] in dying for p in e)]
    new_edges += [
        (sub_port(s), sub_port(t))
        for s, t in sub.edges
        if s[0] != "b" and t[0] != "b"
    ]
    for a, b in out_link.items():
        if a[0] == "v":
            continue
        cur = b
        hops = 0
        while cur[0] == "v":
            cur = out_link[cur]
            hops += 1
            assert hops <= 12, "cyclic boundary chain while embedding"
        new_edges.append((a, cur))

    crossings = [(cid, s) for cid, s in host.crossings if cid not in dying]
    crossings += [(cid + offset, s) for cid, s in sub.crossings]
    return TangleDiagram.make(host.legs, crossings, new_edges)


def splice(outer: Certificate, dictionary) -> Certificate:
    """Replace each dictionary move in ``outer`` by its standard 6-leg
    certificate, embedded at the step's triangle.

    Dictionary values must be certificates whose start is a 6-leg
    3-crossing tangle showing the move's source triangle.
    """
    new_basis = set(outer.basis) - set(dictionary)
    for sub in dictionary.values():
        new_basis |= sub.basis
    steps = []
    prev = outer.start
    for name, diag in outer.steps:
        if name not in dictionary:
            steps.append((name, diag))
            prev = diag
            continue
        sub = dictionary[name]
        face, code, top = _match_application(prev, name, diag)
        sub_faces = triangle_faces(sub.start)
        assert len(sub_faces) == 1, "dictionary start must show one triangle"
        sub_code, sub_top = classify_triangle_ex(sub.start, sub_faces[0])
        assert sub_code == code, (
            f"dictionary certificate for {name} starts at {sub_code}, host shows {code}"
        )
        host_stubs = _triangle_stub_ports(prev, face, top)
        sub_stubs = _triangle_stub_ports(sub.start, sub_faces[0], sub_top)
        by_src = {s: (s, t) for s, t in sub.start.edges}
        by_dst = {t: (s, t) for s, t in sub.start.edges}
        leg_of_stub = []
        for p in sub_stubs:
            e = by_src.get(p) or by_dst.get(p)
            far = e[1] if e[0] == p else e[0]
            assert far[0] == "b", "sub stub edge must reach the boundary"
            leg_of_stub.append(far[1])
        for sub_name, sub_d in sub.steps:
            embedded = _embed_step(prev, host_stubs, leg_of_stub, sub_d)
            steps.append((sub_name, canonical_relabel(embedded)))
        assert canonical_key(steps[-1][1]) == canonical_key(diag), (
            "embedded certificate does not land on the recorded step diagram"
        )
        prev = diag
    return Certificate(frozenset(new_basis), outer.start, tuple(steps))
