"""End-to-end pipeline: lemma suite, equivalence classes, the bridge
derivations between the two classes, the full implication theorem, and a
deterministic report over an output directory."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .codec import serialize_certificate
from .diagram import canonical_relabel, mirror
from .moves import (
    LETTERS,
    R2_NAMES,
    TriangleCode,
    build_triangle,
    expand_basis,
    mirror_move,
    r3_image,
    r3_name,
    triangle_faces,
)
from .search import (
    Certificate,
    SearchBounds,
    derive,
    reverse_certificate,
    splice,
    verify_certificate,
)
from .theta import enumerate_theta_configs, factor_via_theta

LEMMA_BOUNDS = SearchBounds(max_crossings=5)
BRIDGE_BOUNDS = SearchBounds(max_crossings=7)


def move_endpoints(letter: str):
    """Standard 6-leg source and target of the letter's up-to-down move."""
    start = build_triangle(TriangleCode(letter, True))
    return start, r3_image(start, triangle_faces(start)[0])


def letter_basis(letter: str) -> frozenset:
    return frozenset(R2_NAMES) | {r3_name(letter, True), r3_name(letter, False)}


@dataclass(frozen=True)
class LemmaEntry:
    pair: tuple  # (x, y): the x move derived using type-2 moves plus y
    certificate: Certificate
    search_length: int


def lemma_suite(confirm_by_search: bool = True) -> list:
    """A verified 3-step certificate for every theta-related pair, plus an
    independent breadth-first confirmation within five crossings."""
    entries = []
    for config in enumerate_theta_configs():
        pair = (config.upper_code.letter, config.lower_code.letter)
        cert = factor_via_theta(config)
        failure = verify_certificate(cert)
        if failure is not None:
            raise AssertionError(f"lemma certificate for {pair} failed: {failure}")
        search_length = -1
        if confirm_by_search:
            found = derive(cert.start, cert.end, cert.basis, LEMMA_BOUNDS)
            if len(found) > 3:
                raise AssertionError(f"search found no short path for {pair}")
            search_length = len(found)
        entries.append(LemmaEntry(pair, cert, search_length))
    entries.sort(key=lambda e: (LETTERS.index(e.pair[0]), LETTERS.index(e.pair[1])))
    return entries


def equivalence_classes(pairs) -> list:
    """Strongly connected components of the letter graph, sorted."""
    letters = sorted(set(LETTERS), key=LETTERS.index)
    succ = {a: set() for a in letters}
    pred = {a: set() for a in letters}
    for x, y in pairs:
        succ[y].add(x)  # y derives x
        pred[x].add(y)

    def reach(start, nbrs):
        seen = {start}
        stack = [start]
        while stack:
            for n in nbrs[stack.pop()]:
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        return seen

    classes = []
    done = set()
    for a in letters:
        if a in done:
            continue
        comp = reach(a, succ) & reach(a, pred)
        done |= comp
        classes.append(tuple(sorted(comp, key=LETTERS.index)))
    return sorted(classes)


def mirror_certificate(cert: Certificate) -> Certificate:
    """Mirror every diagram and map every move name accordingly."""
    return Certificate(
        frozenset(mirror_move(n) for n in cert.basis),
        canonical_relabel(mirror(cert.start)),
        tuple((mirror_move(n), canonical_relabel(mirror(d))) for n, d in cert.steps),
    )


def bridge_theorem():
    """Derive the c move from type-2 moves plus A, and its mirror: the C
    move from type-2 moves plus a."""
    start, goal = move_endpoints("c")
    cert_A_to_c = derive(start, goal, letter_basis("A"), BRIDGE_BOUNDS)
    cert_a_to_C = mirror_certificate(cert_A_to_c)
    for cert, basis_letter in ((cert_A_to_c, "A"), (cert_a_to_C, "a")):
        assert cert.basis == letter_basis(basis_letter)
        failure = verify_certificate(cert)
        if failure is not None:
            raise AssertionError(f"bridge certificate failed: {failure}")
    assert len(cert_A_to_c) == len(cert_a_to_C)
    return cert_A_to_c, cert_a_to_C


def implication_edges(lemma_entries, bridges):
    """(y, x) -> certificate deriving the x move over basis {type 2, y}."""
    edges = {}
    for entry in lemma_entries:
        x, y = entry.pair
        edges[(y, x)] = entry.certificate
    cert_A_to_c, cert_a_to_C = bridges
    edges[("A", "c")] = cert_A_to_c
    edges[("a", "C")] = cert_a_to_C
    return edges


def strongly_connected(edges) -> bool:
    return len(equivalence_classes([(x, y) for (y, x) in edges])) == 1


def full_theorem(basis_letter: str, edges) -> dict:
    """For each other letter, one verified certificate of its move over
    the basis {4 type-2 moves both directions, basis_letter both ways},
    composed by splicing edge certificates along graph paths."""
    assert basis_letter in LETTERS
    target_basis = letter_basis(basis_letter)
    derived = {}  # letter -> Certificate over target_basis

    start, goal = move_endpoints(basis_letter)
    one_step = Certificate(
        target_basis,
        canonical_relabel(start),
        ((r3_name(basis_letter, True), canonical_relabel(goal)),),
    )
    derived[basis_letter] = one_step

    frontier = [basis_letter]
    while frontier:
        next_frontier = []
        for k in frontier:
            for (y, x), cert in sorted(
                edges.items(), key=lambda e: (LETTERS.index(e[0][0]), LETTERS.index(e[0][1]))
            ):
                if y != k or x in derived:
                    continue
                if k == basis_letter:
                    composed = cert
                else:
                    dictionary = {
                        r3_name(k, True): derived[k],
                        r3_name(k, False): reverse_certificate(derived[k]),
                    }
                    composed = splice(cert, dictionary)
                assert composed.basis <= target_basis, (
                    f"composition for {x} via {k} leaked moves"
                )
                composed = Certificate(target_basis, composed.start, composed.steps)
                failure = verify_certificate(composed)
                if failure is not None:
                    raise AssertionError(f"composed certificate for {x} failed: {failure}")
                derived[x] = composed
                next_frontier.append(x)
        frontier = next_frontier
    missing = set(LETTERS) - set(derived)
    if missing:
        raise AssertionError(f"implication graph does not reach {sorted(missing)}")
    return {x: c for x, c in derived.items() if x != basis_letter}


# ---------------------------------------------------------------------------
# artifact emission

def _write(path: str, text: str):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def thetas_text() -> str:
    return "\n".join(str(c) for c in enumerate_theta_configs()) + "\n"


def run_pipeline(out_dir: str, confirm_by_search: bool = True) -> str:
    """Run every suite, write all artifacts under ``out_dir``, and return
    the report text (also written as report.txt)."""
    _write(os.path.join(out_dir, "thetas.txt"), thetas_text())

    entries = lemma_suite(confirm_by_search=confirm_by_search)
    for e in entries:
        x, y = e.pair
        _write(os.path.join(out_dir, "lemma", f"{x}_{y}.cert"),
               serialize_certificate(e.certificate))

    pairs = [e.pair for e in entries]
    classes = equivalence_classes(pairs)

    bridges = bridge_theorem()
    _write(os.path.join(out_dir, "bridge", "A_to_c.cert"),
           serialize_certificate(bridges[0]))
    _write(os.path.join(out_dir, "bridge", "a_to_C.cert"),
           serialize_certificate(bridges[1]))

    edges = implication_edges(entries, bridges)
    assert strongly_connected(edges), "implication graph not strongly connected"

    matrix = {}
    for basis in LETTERS:
        certs = full_theorem(basis, edges)
        for target, cert in certs.items():
            _write(os.path.join(out_dir, "theorem", basis, f"{target}.cert"),
                   serialize_certificate(cert))
            matrix[(basis, target)] = len(cert)

    lines = ["theta configurations", "--------------------"]
    lines.append(thetas_text().rstrip("\n"))
    lines += ["", "lemma certificates", "------------------"]
    for e in entries:
        x, y = e.pair
        confirm = f" search={e.search_length}" if e.search_length >= 0 else ""
        lines.append(
            f"{y} derives {x}: 3 steps{confirm}  lemma/{x}_{y}.cert"
        )
    lines += ["", "equivalence classes", "-------------------"]
    for cls in classes:
        lines.append("{" + ",".join(cls) + "}")
    lines += ["", "bridges", "-------"]
    lines.append(f"A derives c: {len(bridges[0])} steps  bridge/A_to_c.cert")
    lines.append(f"a derives C: {len(bridges[1])} steps  bridge/a_to_C.cert")
    lines += ["", "full theorem: steps per derived move", "------------------------------------"]
    header = "basis " + " ".join(f"{t:>4}" for t in LETTERS)
    lines.append(header)
    for basis in LETTERS:
        row = [f"{matrix[(basis, t)]:>4}" if t != basis else "   ." for t in LETTERS]
        lines.append(f"{basis:<5} " + " ".join(row))
    lines += ["", f"certificates verified: {len(entries) + 2 + len(matrix)}"]
    report = "\n".join(lines) + "\n"
    _write(os.path.join(out_dir, "report.txt"), report)
    return report
