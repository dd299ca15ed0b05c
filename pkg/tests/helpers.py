"""Independent test oracles.

The bracket state sum below is computed directly from the definition
(2^c smoothings, loop counting by union-find) and shares no code with the
move engine, so it independently certifies that every move application in
a certificate is a genuine regular-isotopy move: both oriented type-2 and
type-3 moves preserve the bracket of a tangle exactly, including framing,
since they never touch a kink.
"""

from __future__ import annotations

import itertools
from collections import Counter


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _union(parent, a, b):
    ra, rb = _find(parent, a), _find(parent, b)
    if ra != rb:
        parent[ra] = rb
        return False
    return True  # closed a loop


def kauffman_bracket(d):
    """Map (leg matching) -> Counter(A-exponent -> coefficient).

    Loops contribute a factor of -A^2 - A^-2.  The A/B smoothing labels
    follow a fixed convention; any fixed convention gives an invariant.
    """
    cids = [cid for cid, _ in d.crossings]
    legs = list(range(1, len(d.legs) + 1))
    out = {}
    for choice in itertools.product((1, -1), repeat=len(cids)):
        parent = {}

        def node(p):
            if p not in parent:
                parent[p] = p
            return p

        loops = 0
        for src, dst in d.edges:
            if _union(parent, node(src), node(dst)):
                loops += 1
        for cid, a_side in zip(cids, choice):
            if a_side > 0:
                joins = (((
                    "c", cid, 0), ("c", cid, 1)), (("c", cid, 2), ("c", cid, 3)))
            else:
                joins = (((
                    "c", cid, 0), ("c", cid, 3)), (("c", cid, 1), ("c", cid, 2)))
            for a, b in joins:
                if _union(parent, node(a), node(b)):
                    loops += 1

        match = []
        seen = set()
        for i in legs:
            if i in seen:
                continue
            ri = _find(parent, ("b", i))
            for j in legs:
                if j > i and _find(parent, ("b", j)) == ri:
                    match.append((i, j))
                    seen.add(j)
                    break
        match = tuple(match)

        base = sum(choice)  # A-exponent before loop factors
        poly = Counter({base: 1})
        for _ in range(loops):
            nxt = Counter()
            for e, c in poly.items():
                nxt[e + 2] -= c
                nxt[e - 2] -= c
            poly = nxt
        acc = out.setdefault(match, Counter())
        acc.update(poly)
    return {m: {e: c for e, c in p.items() if c} for m, p in out.items()}


def brackets_equal(d1, d2) -> bool:
    b1, b2 = kauffman_bracket(d1), kauffman_bracket(d2)
    keys = set(b1) | set(b2)
    return all(b1.get(k, {}) == b2.get(k, {}) for k in keys)


def certificate_bracket_invariant(cert) -> bool:
    prev = cert.start
    for _, diag in cert.steps:
        if not brackets_equal(prev, diag):
            return False
        prev = diag
    return True
