from helpers import certificate_bracket_invariant

from reidemeister.diagram import canonical_key, mirror, validate, writhe
from reidemeister.moves import (
    R2_NAMES,
    TriangleCode,
    build_triangle,
    mirror_code,
    r3_image,
    r3_name,
    triangle_faces,
)
from reidemeister.search import SearchBounds, derive, verify_certificate
from reidemeister.theta import (
    build_theta_tangle,
    enumerate_theta_configs,
    factor_via_theta,
    theta_relation,
)

CONFIGS = enumerate_theta_configs()
RELATION = theta_relation()


def test_sixteen_configs_with_distinct_tangles():
    assert len(CONFIGS) == 16
    assert len({canonical_key(c.tangle) for c in CONFIGS}) == 16


def test_digons_consistent_and_strands_consistent():
    from reidemeister.diagram import strands

    for c in CONFIGS:
        assert validate(c.tangle) == []
        assert c.tangle.sign_of(0) == -c.tangle.sign_of(1)
        # Transversal consistency: its crossing passages all use the over
        # diagonal or all the under one.
        levels = set()
        for a, b, path in strands(c.tangle):
            if (a, b) == (1, 4):
                for e in path:
                    for p in e:
                        if p[0] == "c":
                            levels.add(p[2] in (1, 3))
        assert len(levels) == 1, "transversal must be over both arcs or under both"
        assert (levels == {True}) == (c.level == "over")


def test_transversal_crosses_two_each_arc_strand_three():
    from reidemeister.diagram import strands

    for c in CONFIGS:
        counts = sorted(len(path) - 1 for _, _, path in strands(c.tangle))
        assert counts == [2, 3, 3]


def test_two_triangular_faces_share_transversal_side():
    from reidemeister.diagram import interior_faces

    for c in CONFIGS:
        inner = interior_faces(c.tangle)
        assert sorted(len(f) for f in inner) == [3, 3]
        edges1 = {dart[0] for dart in inner[0]}
        edges2 = {dart[0] for dart in inner[1]}
        assert len(edges1 & edges2) == 1  # the transversal middle edge


def test_flag_pattern():
    # The transversal-over half classifies as literal (up, down) pairs; the
    # mirror half shows equal face flags because exactly one letter of each
    # pair flips its flag under mirroring.  The role labels carry (up, down)
    # for all sixteen.
    for c in CONFIGS:
        assert c.upper_code.up and not c.lower_code.up
        assert c.upper_code.letter == c.upper_face_code.letter
        assert c.lower_code.letter == c.lower_face_code.letter
        if c.level == "over":
            assert c.upper_face_code.up and not c.lower_face_code.up
            assert c.upper_code == c.upper_face_code
            assert c.lower_code == c.lower_face_code
        else:
            assert c.upper_face_code.up == c.lower_face_code.up


def test_relation_has_sixteen_ordered_pairs():
    assert len(RELATION) == 16
    assert len({(c.upper_code.letter, c.lower_code.letter) for c in CONFIGS}) == 16


def test_relation_symmetric():
    for x, y in RELATION:
        assert (y, x) in RELATION


def test_relation_same_case_and_chains():
    for x, y in RELATION:
        assert x.islower() == y.islower()
    low = {frozenset(p) for p in RELATION if p[0].islower()}
    upp = {frozenset(p) for p in RELATION if p[0].isupper()}
    assert low == {frozenset(e) for e in ("ab", "bc", "cd", "da")}
    assert upp == {frozenset(e) for e in ("AB", "BC", "CD", "DA")}


def test_mirror_transport():
    by_key = {canonical_key(c.tangle): c for c in CONFIGS}
    for c in CONFIGS:
        m = by_key.get(canonical_key(mirror(c.tangle)))
        assert m is not None, "mirror of a config must be a config"
        assert {m.upper_face_code, m.lower_face_code} == {
            mirror_code(c.upper_face_code),
            mirror_code(c.lower_face_code),
        }


def test_golden_table():
    # Face classifications frozen from the enumeration.
    got = [f"{c.params} {c.upper_face_code}{c.lower_face_code}" for c in CONFIGS]
    assert got == [
        "('left', 'over', 'up', 'up') a↑b↓",
        "('left', 'over', 'up', 'down') B↑C↓",
        "('left', 'over', 'down', 'up') c↑d↓",
        "('left', 'over', 'down', 'down') D↑A↓",
        "('left', 'under', 'up', 'up') B↓A↓",
        "('left', 'under', 'up', 'down') D↓C↓",
        "('left', 'under', 'down', 'up') c↑b↑",
        "('left', 'under', 'down', 'down') a↑d↑",
        "('right', 'over', 'up', 'up') b↑a↓",
        "('right', 'over', 'up', 'down') d↑c↓",
        "('right', 'over', 'down', 'up') C↑B↓",
        "('right', 'over', 'down', 'down') A↑D↓",
        "('right', 'under', 'up', 'up') A↑B↑",
        "('right', 'under', 'up', 'down') b↓c↓",
        "('right', 'under', 'down', 'up') C↑D↑",
        "('right', 'under', 'down', 'down') d↓a↓",
    ]


def test_factorization_certificates():
    for c in CONFIGS:
        cert = factor_via_theta(c)
        assert len(cert) == 3
        names = [n for n, _ in cert.steps]
        assert names[0].endswith("-expand")
        assert names[1].startswith(f"r3-{c.lower_code.letter}-")
        assert names[2].endswith("-reduce")
        assert verify_certificate(cert) is None
        assert certificate_bracket_invariant(cert)


def test_factorization_matches_move_endpoints():
    for c in CONFIGS[:4]:
        x = c.upper_code.letter
        start = build_triangle(TriangleCode(x, True))
        target = r3_image(start, triangle_faces(start)[0])
        cert = factor_via_theta(c)
        assert canonical_key(cert.start) == canonical_key(start)
        assert canonical_key(cert.end) == canonical_key(target)


def test_search_confirms_lemma_within_bounds():
    for c in CONFIGS[:4]:
        x, y = c.upper_code.letter, c.lower_code.letter
        start = build_triangle(TriangleCode(x, True))
        goal = r3_image(start, triangle_faces(start)[0])
        basis = frozenset(R2_NAMES) | {r3_name(y, True), r3_name(y, False)}
        found = derive(start, goal, basis, SearchBounds(max_crossings=5))
        assert len(found) <= 3
