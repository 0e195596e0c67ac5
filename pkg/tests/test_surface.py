import pytest

from extras import BoundaryEdge, BoundaryVertex, InadmissibleSurface, SameFace
from gsn_algebra import cyclic_group, symmetric_group, trivial_group
from gsn_constants import VertexKind
from gsn_move import Flip, Gauge, apply_path
from gsn_surface import (build_surface, complex_cells, cylinder, disjoint_flips, disk, dual_fat_graph,
                         enumerate_reachable, explore_complex, fiber_labelings, find_isomorphism,
                         fixing_isomorphism, flip, gauge, move_cycles, pants, pentagon_paths,
                         reduce_cycles, sphere, torus, validate_triangulation)

Z2 = cyclic_group(2)
S3 = symmetric_group(3)
G = Z2.index("g")


@pytest.mark.parametrize("t, triangles, vertices", [
    (cylinder(Z2, G), 2, 2),
    (pants(Z2, G, G), 5, 3),
    (torus(Z2, G, G), 2, 1),
    (disk(Z2), 1, 2),
    (sphere(Z2), 2, 3),
    (build_surface(trivial_group(), 2, [0, 0, 0]), 13, 3),
])
def test_standard_surfaces(t, triangles, vertices):
    assert validate_triangulation(t) == []
    assert len(t.triangles) == triangles
    assert len(t.vertices) == vertices


def test_cylinder_holonomies():
    a, b = S3.index("102"), S3.index("021")
    t = cylinder(S3, a, b)
    first, second = (c.holonomy for c in t.boundaries)
    assert first == a
    assert second == S3.mul(S3.inverse(b), S3.inverse(a), b)


def test_pants_holonomies():
    t = pants(Z2, G, G)
    assert [c.holonomy for c in t.boundaries] == [G, G, Z2.identity]


def test_words_that_do_not_close():
    with pytest.raises(InadmissibleSurface):
        build_surface(Z2, 0, [G, Z2.identity])
    with pytest.raises(InadmissibleSurface):
        build_surface(Z2, 0, [Z2.identity])
    with pytest.raises(InadmissibleSurface):
        build_surface(Z2, 1, [], handles=[(G, G), (G, G)])


def test_broken_face_relation_is_reported():
    t = torus(Z2)
    labels = list(t.labels)
    labels[0] = G
    names = {v.name for v in validate_triangulation(t.with_labels(labels))}
    assert names == {"face_relation"}


def test_flips_keep_the_face_relations():
    t = torus(Z2, G, Z2.identity)
    for e in t.flippable_edges():
        flipped = flip(t, e)
        assert validate_triangulation(flipped) == []


def test_double_flip_is_isomorphic():
    t = pants(Z2, G, G)
    for e in t.flippable_edges():
        assert find_isomorphism(t, flip(flip(t, e), e)) is not None


def test_flip_errors():
    with pytest.raises(BoundaryEdge):
        flip(cylinder(Z2, G), 0)
    t = disk(Z2)
    loop = next(e for e in t.internal_edges())
    with pytest.raises(SameFace):
        flip(t, loop)
    assert loop not in t.flippable_edges()


def test_gauge_composes():
    t = sphere(S3)
    a, b = S3.index("102"), S3.index("021")
    assert gauge(gauge(t, 0, b), 0, a) == gauge(t, 0, S3.mul(a, b))
    assert validate_triangulation(gauge(t, 0, a)) == []


def test_gauges_at_different_vertices_commute():
    t = sphere(S3)
    a, b = S3.index("102"), S3.index("021")
    assert gauge(gauge(t, 0, a), 1, b) == gauge(gauge(t, 1, b), 0, a)


def test_gauge_commutes_with_flip():
    t = sphere(S3)
    a = S3.index("120")
    for e in t.flippable_edges():
        for v in t.marked_vertices():
            assert flip(gauge(t, v, a), e) == gauge(flip(t, e), v, a)


def test_boundary_vertices_are_pinned():
    t = cylinder(Z2, G)
    v = t.vertices.index(VertexKind.BOUNDARY)
    with pytest.raises(BoundaryVertex):
        gauge(t, v, G)


def test_apply_path():
    t = sphere(Z2)
    e = t.flippable_edges()[0]
    visited = apply_path(t, [Flip(e), Gauge(0, G), Flip(e)])
    assert len(visited) == 4
    assert all(validate_triangulation(x) == [] for x in visited)


@pytest.mark.parametrize("t", [torus(Z2), cylinder(Z2, G), pants(Z2, G, G), disk(Z2)])
def test_dual_fat_graph_has_the_same_genus(t):
    fat = dual_fat_graph(t)
    assert fat.genus == t.genus
    assert len(fat.legs) == len(t.boundaries)


def test_isomorphism():
    t = torus(Z2, G, G)
    assert find_isomorphism(t, t) is not None
    assert find_isomorphism(t, torus(Z2)) is None
    assert find_isomorphism(t, cylinder(Z2, G)) is None


def test_torus_fibre_over_z2():
    orbits = fiber_labelings(torus(Z2))
    assert len(orbits) == 4
    assert all(len(orbit) == 1 for orbit in orbits)


def test_flip_graph_of_the_torus_is_connected():
    graph = enumerate_reachable(torus(Z2), 4, gauges=False)
    assert graph.is_connected()
    assert all(validate_triangulation(node) == [] for node in graph.nodes)


def test_gauge_orbit_of_the_sphere():
    t = sphere(Z2)
    graph = enumerate_reachable(t, 6, flips=False)
    orbit = next(o for o in fiber_labelings(t) if t.labels in o)
    assert graph.complete
    assert graph.size == len(orbit)


def test_disjoint_flips_share_no_triangle():
    t = sphere(Z2, marked=4)
    pairs = disjoint_flips(t)
    assert pairs
    for e, f in pairs:
        assert not {tri for tri, _ in t.sides_of(e)} & {tri for tri, _ in t.sides_of(f)}


@pytest.mark.parametrize("t", [sphere(Z2, marked=4), disk(Z2, marked=2),
                               pants(Z2, Z2.identity, Z2.identity)])
def test_pentagon_paths_close_up(t):
    closed = 0
    for path in pentagon_paths(t):
        e, f = path[0].edge, path[1].edge
        kept = [x for x in range(len(t.edges)) if x not in (e, f)]
        try:
            end = apply_path(t, path)[-1]
        except SameFace:
            continue
        assert fixing_isomorphism(end, t, kept) is not None
        closed += 1
    assert closed


def test_fixing_isomorphism_keeps_edges():
    t = torus(Z2)
    e = t.flippable_edges()[0]
    twice = flip(flip(t, e), e)
    kept = [x for x in range(len(t.edges)) if x != e]
    iso = fixing_isomorphism(twice, t, kept)
    assert iso is not None
    assert iso.edge_map[e] == (e, -1)
    assert fixing_isomorphism(flip(t, e), t, range(len(t.edges))) is None


def test_move_complex_of_the_z2_torus():
    graph = explore_complex(torus(Z2), 3)
    assert graph.size > 1
    assert not graph.complete
    cycles = move_cycles(graph, 8)
    assert any(len(cycle) == 1 for cycle in cycles)
    assert any(len(cycle) == 2 for cycle in cycles)
    assert all(reduce_cycles(graph, cycles))


def test_move_complex_of_the_s3_torus():
    t = torus(S3, S3.index("102"), S3.identity)
    graph = explore_complex(t, 2)
    cycles = move_cycles(graph, 6)
    assert cycles
    assert all(reduce_cycles(graph, cycles))


def test_cycles_without_cells_do_not_reduce():
    graph = explore_complex(torus(Z2), 2)
    cycles = move_cycles(graph, 4)
    assert cycles
    assert not any(reduce_cycles(graph, cycles, cells=[]))


def test_flip_twice_follows_back_to_the_start():
    graph = explore_complex(torus(Z2), 3)
    e = graph.nodes[0].flippable_edges()[0]
    arcs, end = graph.follow(0, [Flip(e), Flip(e)])
    assert end == 0
    assert graph.arcs[arcs[0]][1] != 0
    assert {name for name, _ in complex_cells(graph)} >= {"GP1", "GP4", "GP6"}
