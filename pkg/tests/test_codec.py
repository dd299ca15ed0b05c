import pytest

from reidemeister.codec import (
    CodecError,
    parse_certificate,
    parse_tangle,
    serialize_certificate,
    serialize_tangle,
)
from reidemeister.diagram import canonical_code, canonical_key
from reidemeister.moves import ALL_CODES, TriangleCode, build_triangle
from reidemeister.search import Certificate, verify_certificate
from reidemeister.theta import enumerate_theta_configs, factor_via_theta


@pytest.mark.parametrize("code", ALL_CODES, ids=str)
def test_tangle_roundtrip(code):
    d = build_triangle(code)
    text = serialize_tangle(d)
    back = parse_tangle(text)
    assert back == d
    assert serialize_tangle(back) == text


def test_serialization_deterministic():
    d = build_triangle(TriangleCode.parse("a-up"))
    assert serialize_tangle(d) == serialize_tangle(d)


def test_canonical_code_parses_via_codec():
    d = build_triangle(TriangleCode.parse("a-up"))
    back = parse_tangle(canonical_code(d))
    assert canonical_key(back) == canonical_key(d)


def test_comments_and_blank_lines_ignored():
    d = build_triangle(TriangleCode.parse("b-dn"))
    text = "# a comment\n\n" + serialize_tangle(d).replace("\nx 1\n", "\nx 1\n# mid comment\n\n")
    assert parse_tangle(text) == d


def test_odd_legs_rejected():
    with pytest.raises(CodecError, match="even"):
        parse_tangle("tangle v1 legs=5\n")


def test_duplicate_port_rejected():
    text = (
        "tangle v1 legs=2\n"
        "leg 1 in\nleg 2 out\n"
        "e b1 b2\ne b1 b2\n"
    )
    with pytest.raises(CodecError, match="duplicate use of port b1"):
        parse_tangle(text)


def test_unknown_port_rejected():
    text = "tangle v1 legs=2\nleg 1 in\nleg 2 out\ne b1 c9.0\n"
    with pytest.raises(CodecError, match="unknown crossing"):
        parse_tangle(text)


def test_zero_step_certificate_roundtrip():
    d = build_triangle(TriangleCode.parse("a-up"))
    cert = Certificate(frozenset({"r2-par-over-expand", "r2-par-over-reduce"}), d, ())
    text = serialize_certificate(cert)
    back = parse_certificate(text)
    assert back == cert
    assert serialize_certificate(back) == text
    assert verify_certificate(back) is None


def test_lemma_certificate_roundtrip():
    config = enumerate_theta_configs()[0]
    cert = factor_via_theta(config)
    text = serialize_certificate(cert)
    back = parse_certificate(text)
    assert back == cert
    assert serialize_certificate(back) == text
    assert verify_certificate(back) is None


def test_step_index_gap_rejected():
    config = enumerate_theta_configs()[0]
    text = serialize_certificate(factor_via_theta(config))
    broken = text.replace("step 2 ", "step 3 ").replace("step 3 move r2", "step 4 move r2")
    with pytest.raises(CodecError, match="step-index gap"):
        parse_certificate(broken)


def test_sign_inference_matches():
    for code in ("a-up", "C-dn", "d-up"):
        d = build_triangle(TriangleCode.parse(code))
        assert parse_tangle(serialize_tangle(d)).crossings == d.crossings
