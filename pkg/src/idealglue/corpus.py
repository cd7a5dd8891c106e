"""Built-in example triangulations.

Each entry is stored as canonical-format text so the fixtures are
inspectable; export_corpus writes them to disk.

* hopf: the one-tetrahedron, three-edge triangulation of S^3 whose two
  degree-one edges form a Hopf link.  Pinned by enumeration (the unique
  one-tetrahedron class with edge degrees {1,1,4}) in the vertex labeling
  that puts both degree-one edges on z-slots and reproduces the closed-form
  holonomy matrices of its circle of cone structures.
* trefoil: the minimal layered one-tetrahedron triangulation of S^3 with a
  degree-one trefoil edge (degrees {1,5}); labeling chosen so the two face
  pairings act as [0,1,oo] -> [1, z/(z-1), 0] and as the rotation about the
  degree-one edge.
* fig8_complement: the standard two-tetrahedron ideal triangulation of the
  figure-eight knot complement (degrees {6,6}, torus vertex link).
* fig8_in_s3: a three-tetrahedron triangulation of S^3 with the figure-eight
  knot as its degree-one edge; found by bounded search, pinned by the exact
  shape of its four-equation cone gluing system (see the system matcher in
  the test suite).
* doubled_tetrahedron: two tetrahedra glued along their whole boundary, a
  triangulation of S^3 whose classical gluing equations have a curve of
  solutions (z, 1/z).
"""
from __future__ import annotations

from .errors import UnknownCorpusEntry
from .fileio import parse_triangulation
from .triangulation import Triangulation

CORPUS_TEXT = {
    "hopf": """\
tri v1
tetrahedra 1
glue 0 0 0 1 1023
glue 0 2 0 3 0132
""",
    "trefoil": """\
tri v1
tetrahedra 1
glue 0 0 0 1 1023
glue 0 2 0 3 2031
""",
    "fig8_complement": """\
tri v1
tetrahedra 2
glue 0 0 1 0 0132
glue 0 1 1 1 2103
glue 0 2 1 2 0321
glue 0 3 1 3 1023
""",
    "fig8_in_s3": """\
tri v1
tetrahedra 3
glue 0 0 1 0 0132
glue 0 1 2 0 1023
glue 0 2 0 3 0132
glue 1 1 2 2 1230
glue 1 2 2 1 3012
glue 1 3 2 3 1023
""",
    "doubled_tetrahedron": """\
tri v1
tetrahedra 2
glue 0 0 1 1 1023
glue 0 1 1 0 1023
glue 0 2 1 2 1023
glue 0 3 1 3 1023
""",
}

CORPUS_NAMES = tuple(sorted(CORPUS_TEXT))


def corpus(name: str) -> Triangulation:
    """Return a pinned corpus triangulation by name."""
    try:
        text = CORPUS_TEXT[name]
    except KeyError:
        known = ", ".join(CORPUS_NAMES)
        raise UnknownCorpusEntry(f"{name!r}; known entries: {known}") from None
    return parse_triangulation(text)


def export_corpus(directory) -> list:
    """Write every corpus entry as <name>.tri into `directory`; returns the
    paths written."""
    import pathlib

    out = []
    d = pathlib.Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for name in CORPUS_NAMES:
        path = d / f"{name}.tri"
        path.write_text(CORPUS_TEXT[name])
        out.append(str(path))
    return out
