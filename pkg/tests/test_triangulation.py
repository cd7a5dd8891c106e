"""Identification combinatorics: validation, edge classes, vertex links,
abstract neighbourhoods, self-identifications, enumeration."""
import random

import pytest

from idealglue import (VertexPermutation,
                       abstract_edge_neighbourhood, compute_edge_classes,
                       compute_vertex_classes, corpus,
                       enumerate_one_tetrahedron_triangulations,
                       make_triangulation, random_triangulation, relabel,
                       self_identification_report, validate)
from idealglue.triangulation import Triangulation


def degrees(t):
    return sorted(e.degree for e in compute_edge_classes(t))


# ------------------------------------------------------------ permutations

def test_vertex_permutation_basics():
    p = VertexPermutation((1, 0, 2, 3))
    assert p.parity == 1
    assert p.inverse() == p
    q = VertexPermutation((1, 2, 3, 0))
    assert q.parity == 1
    assert q.compose(q.inverse()) == VertexPermutation((0, 1, 2, 3))
    assert q.inverse()(1) == 0


def test_vertex_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        VertexPermutation((0, 0, 1, 2))


# ---------------------------------------------------------------- validate

def test_corpus_entries_are_valid():
    for name in ("hopf", "trefoil", "fig8_complement", "fig8_in_s3",
                 "doubled_tetrahedron"):
        assert validate(corpus(name)).ok, name


def test_hopf_is_the_degree_114_one_tet_triangulation():
    assert degrees(corpus("hopf")) == [1, 1, 4]


def test_double_glued_face_reported():
    t = make_triangulation(1, [(0, 0, 0, 1, (1, 0, 2, 3)),
                               (0, 0, 0, 2, (2, 1, 0, 3)),
                               (0, 2, 0, 3, (0, 1, 3, 2))])
    rep = validate(t)
    assert not rep.ok
    assert any(i.code == "FaceDoubleGlued" for i in rep.issues)


def test_unglued_face_reported():
    t = make_triangulation(2, [(0, 0, 1, 0, (0, 1, 3, 2))])
    rep = validate(t)
    assert any(i.code == "FaceUnglued" for i in rep.issues)
    # offending faces are named
    named = {(i.tet, i.face) for i in rep.issues if i.code == "FaceUnglued"}
    assert (0, 1) in named and (1, 3) in named


def test_even_permutation_is_orientation_violation():
    t = make_triangulation(1, [(0, 0, 0, 1, (1, 0, 3, 2)),
                               (0, 2, 0, 3, (0, 1, 3, 2))])
    rep = validate(t)
    assert any(i.code == "OrientationViolation" for i in rep.issues)


def test_empty_triangulation_rejected():
    rep = validate(Triangulation(0, []))
    assert [i.code for i in rep.issues] == ["EmptyTriangulation"]


# ------------------------------------------------------------ edge classes

def test_edge_degree_multisets():
    assert degrees(corpus("hopf")) == [1, 1, 4]
    assert degrees(corpus("trefoil")) == [1, 5]
    assert degrees(corpus("fig8_complement")) == [6, 6]
    assert degrees(corpus("fig8_in_s3")) == [1, 5, 5, 7]
    assert degrees(corpus("doubled_tetrahedron")) == [2] * 6


def test_edge_classes_partition_all_slots():
    for name in ("hopf", "trefoil", "fig8_complement", "fig8_in_s3"):
        t = corpus(name)
        classes = compute_edge_classes(t)
        assert sum(e.degree for e in classes) == 6 * t.tetra_count
        slots = [(tet, s) for e in classes for (tet, s, _) in e.cycle]
        assert len(slots) == len(set(slots))


def test_edge_cycle_closure_and_direction():
    # traversing deg(e) steps returns to the starting directed slot
    for name in ("hopf", "fig8_in_s3"):
        t = corpus(name)
        for e in compute_edge_classes(t):
            tet, (a, b) = e.directed[0]
            for g in e.steps:
                a, b = g.perm(a), g.perm(b)
            assert (e.directed[0][0], (a, b)) == e.directed[0]


def test_edge_classes_independent_of_gluing_order(rng):
    t = corpus("fig8_in_s3")
    raw = [(g.source_tet, g.source_face, g.target_tet, g.target_face,
            g.perm.images) for g in t.gluings]
    ref = [e.cycle for e in compute_edge_classes(t)]
    for _ in range(5):
        shuffled = list(raw)
        random.Random(int(rng.integers(1 << 30))).shuffle(shuffled)
        flipped = [(t2, f2, t1, f1, VertexPermutation(p).inverse().images)
                   if random.Random(int(rng.integers(1 << 30))).random() < 0.5
                   else (t1, f1, t2, f2, p)
                   for (t1, f1, t2, f2, p) in shuffled]
        t2 = make_triangulation(3, flipped)
        assert [e.cycle for e in compute_edge_classes(t2)] == ref
        assert compute_vertex_classes(t2) == compute_vertex_classes(t)


def test_random_triangulations_are_valid_and_partition():
    for seed in range(10):
        n = 1 + seed % 5
        t = random_triangulation(n, seed=seed)
        assert validate(t).ok
        assert len(t.gluings) == 2 * n
        assert sum(e.degree for e in compute_edge_classes(t)) == 6 * n


# ---------------------------------------------------------- vertex classes

def test_vertex_links():
    vc = compute_vertex_classes(corpus("fig8_complement"))
    assert len(vc) == 1 and vc[0].link_genus == 1   # torus link

    vc = compute_vertex_classes(corpus("hopf"))
    assert [v.link_genus for v in vc] == [0, 0]

    vc = compute_vertex_classes(corpus("trefoil"))
    assert len(vc) == 1 and vc[0].link_genus == 0

    vc = compute_vertex_classes(corpus("fig8_in_s3"))
    assert len(vc) == 1 and vc[0].link_genus == 0


def test_vertex_corner_count_and_chi_parity():
    for name in ("hopf", "trefoil", "fig8_complement", "fig8_in_s3",
                 "doubled_tetrahedron"):
        t = corpus(name)
        vcs = compute_vertex_classes(t)
        assert sum(len(v.corners) for v in vcs) == 4 * t.tetra_count
        for v in vcs:
            assert v.link_euler_characteristic % 2 == 0
            assert v.link_euler_characteristic <= 2
            assert v.link_genus == (2 - v.link_euler_characteristic) // 2


def test_vertex_links_of_random_triangulations_close_up():
    for seed in range(8):
        t = random_triangulation(1 + seed % 4, seed=100 + seed)
        for v in compute_vertex_classes(t):
            assert v.link_euler_characteristic % 2 == 0
            assert v.link_euler_characteristic <= 2


# ------------------------------------------------- abstract neighbourhoods

def test_abstract_neighbourhood_hopf_degree_four():
    t = corpus("hopf")
    classes = compute_edge_classes(t)
    j = next(e.index for e in classes if e.degree == 4)
    nb = abstract_edge_neighbourhood(t, j)
    assert nb.degree == 4
    assert all(tet == 0 for tet, _ in nb.copies)      # 4 copies of tet 0
    assert len(nb.gluings) == 4


def test_abstract_neighbourhood_degree_one():
    t = corpus("trefoil")
    j = next(e.index for e in compute_edge_classes(t) if e.degree == 1)
    nb = abstract_edge_neighbourhood(t, j)
    assert nb.degree == 1
    assert len(nb.copies) == 1


def test_abstract_neighbourhood_fig8_alternates():
    t = corpus("fig8_complement")
    for j in range(2):
        nb = abstract_edge_neighbourhood(t, j)
        assert nb.degree == 6
        tets = [tet for tet, _ in nb.copies]
        assert all(tets[k] != tets[(k + 1) % 6] for k in range(6))


# ------------------------------------------------------ self-identification

def test_hopf_not_almost_non_singular():
    rep = self_identification_report(corpus("hopf"))
    assert not rep.almost_non_singular
    assert not rep.non_singular


def test_doubled_tetrahedron_non_singular():
    rep = self_identification_report(corpus("doubled_tetrahedron"))
    assert rep.almost_non_singular
    assert rep.non_singular
    assert all(not ti.vertex_pairs and not ti.edge_pairs for ti in rep.per_tet)


def test_one_tetrahedron_never_non_singular():
    for t in enumerate_one_tetrahedron_triangulations():
        assert not self_identification_report(t).non_singular


def test_self_identification_invariant_under_relabeling():
    t = corpus("fig8_in_s3")
    rep = self_identification_report(t)
    perm = VertexPermutation((2, 3, 0, 1))
    t2 = relabel(t, [perm] * 3, [2, 0, 1])
    rep2 = self_identification_report(t2)
    assert rep.almost_non_singular == rep2.almost_non_singular
    assert rep.non_singular == rep2.non_singular


# --------------------------------------------------------------- enumeration

def test_one_tet_enumeration_pins_corpus():
    reps = enumerate_one_tetrahedron_triangulations()
    multisets = [tuple(degrees(t)) for t in reps]
    assert (1, 1, 4) in multisets
    assert (1, 5) in multisets
    for t in reps:
        assert validate(t).ok
    # the S^3 entries are unique up to relabeling
    assert multisets.count((1, 1, 4)) == 1
    assert multisets.count((1, 5)) == 1
