"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 search exhausted, 3 bounds hit,
4 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from .codec import (
    CodecError,
    parse_certificate,
    parse_tangle,
    serialize_certificate,
    serialize_tangle,
)
from .diagram import DiagramError
from .moves import (
    LETTERS,
    TriangleCode,
    build_triangle,
    expand_basis,
    r3_image,
    triangle_faces,
)
from .search import DerivationNotFound, SearchBounds, derive, verify_certificate
from .theorem import (
    BRIDGE_BOUNDS,
    bridge_theorem,
    full_theorem,
    implication_edges,
    lemma_suite,
    letter_basis,
    mirror_certificate,
    move_endpoints,
    run_pipeline,
    thetas_text,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_EXHAUSTED = 2
EXIT_BOUNDS = 3
EXIT_VERIFY = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _bounds_args(sub):
    sub.add_argument("--max-crossings", type=int, default=None)
    sub.add_argument("--max-depth", type=int, default=24)
    sub.add_argument("--max-states", type=int, default=5_000_000)


def _load_endpoint(spec: str):
    """A diagram from a triangle code like ``a-up`` or from a tangle file.

    When both endpoints are codes of the same letter with opposite flags,
    the second names the type-3 image of the first.
    """
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return parse_tangle(fh.read())
    code = TriangleCode.parse(spec)
    return build_triangle(code)


def _cmd_triangles(args) -> int:
    from .moves import ALL_CODES

    for code in ALL_CODES:
        arrows = " ".join(code.arrows)
        print(f"{code} := {arrows}")
        print(serialize_tangle(build_triangle(code)))
    return EXIT_OK


def _cmd_thetas(args) -> int:
    text = thetas_text()
    path = os.path.join(args.out_dir, "thetas.txt")
    os.makedirs(args.out_dir, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    print(text, end="")
    return EXIT_OK


def _cmd_lemma(args) -> int:
    entries = lemma_suite()
    if args.pair:
        want = tuple(args.pair)
        entries = [e for e in entries if e.pair == want]
        if not entries:
            print(f"pair {want} is not theta-related", file=sys.stderr)
            return EXIT_USAGE
    os.makedirs(os.path.join(args.out_dir, "lemma"), exist_ok=True)
    for e in entries:
        x, y = e.pair
        path = os.path.join(args.out_dir, "lemma", f"{x}_{y}.cert")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(serialize_certificate(e.certificate))
        print(f"{y} derives {x}: 3 steps (search: {e.search_length})  {path}")
    return EXIT_OK


def _cmd_derive(args) -> int:
    try:
        start = _load_endpoint(getattr(args, "from"))
    except (ValueError, CodecError) as exc:
        print(f"bad --from: {exc}", file=sys.stderr)
        return EXIT_USAGE
    to_spec = args.to
    goal = None
    if not os.path.exists(to_spec):
        try:
            from_code = TriangleCode.parse(getattr(args, "from"))
            to_code = TriangleCode.parse(to_spec)
        except ValueError:
            from_code = to_code = None
        if (
            from_code is not None
            and to_code is not None
            and from_code.letter == to_code.letter
            and from_code.up != to_code.up
        ):
            goal = r3_image(start, triangle_faces(start)[0])
    if goal is None:
        try:
            goal = _load_endpoint(to_spec)
        except (ValueError, CodecError) as exc:
            print(f"bad --to: {exc}", file=sys.stderr)
            return EXIT_USAGE
    try:
        basis = expand_basis(args.basis.split(","))
    except ValueError as exc:
        print(f"bad --basis: {exc}", file=sys.stderr)
        return EXIT_USAGE
    max_crossings = args.max_crossings
    if max_crossings is None:
        max_crossings = start.n_crossings + 4
    bounds = SearchBounds(max_crossings, args.max_depth, args.max_states)
    try:
        cert = derive(start, goal, basis, bounds)
    except DiagramError as exc:
        print(f"derive: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DerivationNotFound as exc:
        print(f"derive: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED if exc.reason == "exhausted" else EXIT_BOUNDS
    text = serialize_certificate(cert)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"found {len(cert)}-step derivation -> {args.out}")
    else:
        print(text, end="")
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        with open(args.cert, encoding="utf-8") as fh:
            cert = parse_certificate(fh.read())
    except (OSError, CodecError) as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    failure = verify_certificate(cert)
    if failure is not None:
        step, reason = failure
        print(f"verification failed at step {step}: {reason}", file=sys.stderr)
        return EXIT_VERIFY
    print(f"ok: {len(cert)} steps verified")
    return EXIT_OK


def _cmd_mirror(args) -> int:
    try:
        with open(args.cert, encoding="utf-8") as fh:
            cert = parse_certificate(fh.read())
    except (OSError, CodecError) as exc:
        print(f"mirror: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    mirrored = mirror_certificate(cert)
    text = serialize_certificate(mirrored)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"mirrored certificate -> {args.out}")
    else:
        print(text, end="")
    return EXIT_OK


def _cmd_theorem(args) -> int:
    entries = lemma_suite()
    try:
        bridges = bridge_theorem()
    except DerivationNotFound as exc:
        print(f"bridge search failed with bounds {BRIDGE_BOUNDS}: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED if exc.reason == "exhausted" else EXIT_BOUNDS
    edges = implication_edges(entries, bridges)
    bases = [args.basis] if args.basis else list(LETTERS)
    for basis in bases:
        certs = full_theorem(basis, edges)
        for target, cert in sorted(certs.items(), key=lambda kv: LETTERS.index(kv[0])):
            path = os.path.join(args.out_dir, "theorem", basis, f"{target}.cert")
            os.makedirs(os.path.dirname(path), exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(serialize_certificate(cert))
            print(f"basis {basis}: {target} in {len(cert)} steps  {path}")
        if args.direct_search:
            for (y, x), cert in sorted(edges.items()):
                if y != basis:
                    continue
                start, goal = move_endpoints(x)
                found = derive(start, goal, letter_basis(y), BRIDGE_BOUNDS)
                print(f"direct search {y} -> {x}: {len(found)} steps "
                      f"(edge certificate: {len(cert)})")
    return EXIT_OK


def _cmd_report(args) -> int:
    report = run_pipeline(args.out_dir)
    print(report, end="")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _Parser(prog="reidemeister")
    parser.add_argument("--out-dir", default="out")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("triangles", help="print the 16 triangle codes and tangles")
    sub.add_parser("thetas", help="emit thetas.txt")

    p = sub.add_parser("lemma", help="emit lemma certificates")
    p.add_argument("--pair", nargs=2, metavar=("X", "Y"))

    p = sub.add_parser("derive", help="search for a derivation")
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--basis", required=True,
                   help="comma-separated move names; 'r2' and 'r3-<letter>' expand")
    p.add_argument("--out")
    _bounds_args(p)

    p = sub.add_parser("verify", help="replay a certificate file")
    p.add_argument("cert")

    p = sub.add_parser("mirror", help="mirror a certificate file")
    p.add_argument("cert")
    p.add_argument("--out")

    p = sub.add_parser("theorem", help="derive the other 7 moves from one")
    p.add_argument("--basis", choices=list(LETTERS))
    p.add_argument("--direct-search", action="store_true")

    sub.add_parser("report", help="run everything and write report.txt")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handler = {
        "triangles": _cmd_triangles,
        "thetas": _cmd_thetas,
        "lemma": _cmd_lemma,
        "derive": _cmd_derive,
        "verify": _cmd_verify,
        "mirror": _cmd_mirror,
        "theorem": _cmd_theorem,
        "report": _cmd_report,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
