"""Bit-exact text formats for tangle diagrams and derivation certificates.

Tangle format (UTF-8, LF):

    tangle v1 legs=<2n>
    leg <i> <in|out>          one line per leg, ascending
    x <id>                    one line per crossing, ascending by id
    e <src> <dst>             one line per directed edge

Ports are written ``b<i>`` or ``c<id>.<slot>``.  Crossing signs are not
written: they are recovered from which over-diagonal slot acts as the
edge source.  Lines starting with ``#`` are comments.

Certificate format:

    cert v1
    basis <move-name> ...
    start
    <tangle block>
    step <k> move <move-name>
    <tangle block>
    end
"""

from __future__ import annotations

from .diagram import IN, OUT, TangleDiagram, validate
from .moves import ALL_MOVE_NAMES
from .search import Certificate


class CodecError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _format_port(p) -> str:
    return f"b{p[1]}" if p[0] == "b" else f"c{p[1]}.{p[2]}"


def serialize_tangle(d: TangleDiagram) -> str:
    lines = [f"tangle v1 legs={len(d.legs)}"]
    for i, flag in enumerate(d.legs, start=1):
        lines.append(f"leg {i} {flag}")
    for cid, _ in d.crossings:
        lines.append(f"x {cid}")
    for src, dst in d.edges:
        lines.append(f"e {_format_port(src)} {_format_port(dst)}")
    return "\n".join(lines) + "\n"


def _parse_port(tok: str, line_no: int):
    if tok.startswith("b"):
        try:
            return ("b", int(tok[1:]))
        except ValueError:
            raise CodecError(line_no, f"bad boundary port {tok!r}") from None
    if tok.startswith("c") and "." in tok:
        cid_s, slot_s = tok[1:].split(".", 1)
        try:
            cid, slot = int(cid_s), int(slot_s)
        except ValueError:
            raise CodecError(line_no, f"bad crossing port {tok!r}") from None
        if not 0 <= slot <= 3:
            raise CodecError(line_no, f"slot out of range in {tok!r}")
        return ("c", cid, slot)
    raise CodecError(line_no, f"unknown port syntax {tok!r}")


class _Lines:
    def __init__(self, text: str):
        self.items = []  # (line number, content)
        for no, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if line and not line.startswith("#"):
                self.items.append((no, line))
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else (0, None)

    def take(self):
        no, line = self.peek()
        if line is None:
            raise CodecError(no, "unexpected end of input")
        self.pos += 1
        return no, line


def _parse_tangle_block(lines: _Lines) -> TangleDiagram:
    no, header = lines.take()
    parts = header.split()
    if len(parts) != 3 or parts[:2] != ["tangle", "v1"] or not parts[2].startswith("legs="):
        raise CodecError(no, f"bad tangle header {header!r}")
    try:
        n_legs = int(parts[2][5:])
    except ValueError:
        raise CodecError(no, "bad leg count") from None
    if n_legs <= 0 or n_legs % 2 != 0:
        raise CodecError(no, f"leg count must be positive and even, got {n_legs}")

    legs = {}
    crossing_ids = []
    raw_edges = []
    used = {}
    while True:
        no, line = lines.peek()
        if line is None or not line.split()[0] in ("leg", "x", "e"):
            break
        lines.take()
        toks = line.split()
        if toks[0] == "leg":
            if len(toks) != 3 or toks[2] not in (IN, OUT):
                raise CodecError(no, f"bad leg line {line!r}")
            i = int(toks[1])
            if not 1 <= i <= n_legs or i in legs:
                raise CodecError(no, f"bad or repeated leg index {i}")
            legs[i] = toks[2]
        elif toks[0] == "x":
            if len(toks) != 2:
                raise CodecError(no, f"bad crossing line {line!r}")
            cid = int(toks[1])
            if cid in crossing_ids:
                raise CodecError(no, f"repeated crossing id {cid}")
            crossing_ids.append(cid)
        else:
            if len(toks) != 3:
                raise CodecError(no, f"bad edge line {line!r}")
            a = _parse_port(toks[1], no)
            b = _parse_port(toks[2], no)
            for p in (a, b):
                used[p] = used.get(p, 0) + 1
                if used[p] > 2 or (p[0] == "b" and used[p] > 1):
                    raise CodecError(no, f"duplicate use of port {_format_port(p)}")
            raw_edges.append((no, a, b))

    if set(legs) != set(range(1, n_legs + 1)):
        raise CodecError(no, "missing leg lines")
    known = set(crossing_ids)
    for eno, a, b in raw_edges:
        for p in (a, b):
            if p[0] == "c" and p[1] not in known:
                raise CodecError(eno, f"unknown crossing in port {_format_port(p)}")
            if p[0] == "b" and not 1 <= p[1] <= n_legs:
                raise CodecError(eno, f"unknown leg in port {_format_port(p)}")

    # Recover signs: slot 2 is always an edge source; of the over slots,
    # the source is slot 1 at a positive crossing and slot 3 at a negative.
    sources = {a for _, a, _ in raw_edges}
    targets = {b for _, _, b in raw_edges}
    crossings = []
    for cid in crossing_ids:
        s1, s3 = ("c", cid, 1) in sources, ("c", cid, 3) in sources
        t1, t3 = ("c", cid, 1) in targets, ("c", cid, 3) in targets
        if s1 and t3 and not (s3 or t1):
            crossings.append((cid, 1))
        elif s3 and t1 and not (s1 or t3):
            crossings.append((cid, -1))
        else:
            raise CodecError(no, f"crossing {cid} has inconsistent over-diagonal edges")

    d = TangleDiagram.make(tuple(legs[i] for i in range(1, n_legs + 1)),
                           crossings, [(a, b) for _, a, b in raw_edges])
    bad = validate(d)
    if bad:
        raise CodecError(no, f"tangle does not validate: {bad}")
    return d


def parse_tangle(text: str) -> TangleDiagram:
    lines = _Lines(text)
    d = _parse_tangle_block(lines)
    no, rest = lines.peek()
    if rest is not None:
        raise CodecError(no, f"trailing content {rest!r}")
    return d


def serialize_certificate(cert: Certificate) -> str:
    parts = ["cert v1", "basis " + " ".join(sorted(cert.basis)), "start",
             serialize_tangle(cert.start).rstrip("\n")]
    for k, (name, diag) in enumerate(cert.steps, start=1):
        parts.append(f"step {k} move {name}")
        parts.append(serialize_tangle(diag).rstrip("\n"))
    parts.append("end")
    return "\n".join(parts) + "\n"


def parse_certificate(text: str) -> Certificate:
    lines = _Lines(text)
    no, header = lines.take()
    if header != "cert v1":
        raise CodecError(no, f"bad certificate header {header!r}")
    no, basis_line = lines.take()
    if not basis_line.startswith("basis "):
        raise CodecError(no, "expected basis line")
    basis = frozenset(basis_line.split()[1:])
    for name in basis:
        if name not in ALL_MOVE_NAMES:
            raise CodecError(no, f"unknown move name {name!r}")
    no, start_kw = lines.take()
    if start_kw != "start":
        raise CodecError(no, "expected start line")
    start = _parse_tangle_block(lines)

    steps = []
    expected = 1
    while True:
        no, line = lines.take()
        if line == "end":
            break
        toks = line.split()
        if len(toks) != 4 or toks[0] != "step" or toks[2] != "move":
            raise CodecError(no, f"expected step or end line, got {line!r}")
        try:
            k = int(toks[1])
        except ValueError:
            raise CodecError(no, "bad step index") from None
        if k != expected:
            raise CodecError(no, f"step-index gap: expected {expected}, got {k}")
        expected += 1
        name = toks[3]
        if name not in ALL_MOVE_NAMES:
            raise CodecError(no, f"unknown move name {name!r}")
        steps.append((name, _parse_tangle_block(lines)))
    no, rest = lines.peek()
    if rest is not None:
        raise CodecError(no, f"trailing content {rest!r}")
    return Certificate(basis, start, tuple(steps))
