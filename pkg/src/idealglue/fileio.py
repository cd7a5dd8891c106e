"""The triangulation text format.

    tri v1
    tetrahedra <n>
    glue <t1> <f1> <t2> <f2> <p0p1p2p3>

One `glue` line per identified face pair, written from the lexicographically
smaller (tet, face) side and sorted by it; p0p1p2p3 are the images of the
vertex permutation.  parse(format(t)) is the identity on canonical files.
"""
from __future__ import annotations

from .errors import ParseError
from .triangulation import Triangulation, make_triangulation, require_valid

HEADER = "tri v1"


def format_triangulation(t: Triangulation) -> str:
    lines = [HEADER, f"tetrahedra {t.tetra_count}"]
    for g in t.gluings:
        lines.append(str(g))
    return "\n".join(lines) + "\n"


def parse_triangulation_lenient(text: str) -> Triangulation:
    """Parse the syntax only; the result may fail validate()."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise ParseError(1, f"expected header '{HEADER}'")
    if len(lines) < 2:
        raise ParseError(2, "missing 'tetrahedra <n>' line")
    head = lines[1].split()
    if len(head) != 2 or head[0] != "tetrahedra":
        raise ParseError(2, "expected 'tetrahedra <n>'")
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError(2, f"bad tetrahedron count {head[1]!r}") from None

    raw = []
    for lineno, line in enumerate(lines[2:], start=3):
        stripped = line.strip()
        if not stripped:
            continue
        parts = stripped.split()
        if parts[0] != "glue" or len(parts) != 6:
            raise ParseError(lineno, f"unrecognized line {stripped!r}")
        try:
            t1, f1, t2, f2 = (int(x) for x in parts[1:5])
        except ValueError:
            raise ParseError(lineno, "indices must be integers") from None
        perm = parts[5]
        if len(perm) != 4 or not perm.isdigit():
            raise ParseError(lineno, f"bad permutation {perm!r}")
        images = tuple(int(c) for c in perm)
        if sorted(images) != [0, 1, 2, 3]:
            raise ParseError(lineno, f"permutation {perm!r} is not a bijection")
        for tet, face in ((t1, f1), (t2, f2)):
            if not (0 <= tet < max(n, 1)) or not (0 <= face < 4):
                raise ParseError(lineno, f"face ({tet},{face}) out of range")
        raw.append((t1, f1, t2, f2, images))
    return make_triangulation(n, raw)


def parse_triangulation(text: str) -> Triangulation:
    """Parse and validate.  Raises ParseError (with the offending line
    number) on malformed input and ValidationError on a well-formed file
    describing an invalid triangulation."""
    return require_valid(parse_triangulation_lenient(text))
