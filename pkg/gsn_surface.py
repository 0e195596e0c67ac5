"""
gsn_surface.py
G-labelled ideal triangulations of oriented surfaces

A triangulation is purely combinatorial: edges are oriented tail -> head and
carry a group label g(e); a triangle is a counterclockwise triple of sides
(edge, sign) where sign +1 reads the edge tail -> head. The label of a side is
g(e) or g(e)^-1, and every triangle satisfies g(s1) g(s2) g(s3) = e
"""

import itertools
from collections import deque
from dataclasses import dataclass, replace

import gsn_linalg as la
from extras import (BoundaryEdge, BoundaryVertex, InadmissibleSurface,
                    SameFace, Violation, module_logger)
from gsn_algebra import ZERO, FiniteGroup
from gsn_constants import VertexKind
from gsn_move import Flip, Gauge

logger = module_logger(__name__)


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    boundary: bool = False


@dataclass(frozen=True)
class BoundaryCircle:
    """
    Boundary sides in the order they are met, read as in their triangles
    """
    sides: tuple
    holonomy: int


@dataclass(frozen=True)
class GTriangulation:
    group: FiniteGroup
    vertices: tuple
    edges: tuple
    labels: tuple
    triangles: tuple
    boundaries: tuple = ()
    genus: int = 0

    # --- sides ---

    def side_label(self, side) -> int:
        edge, sign = side
        g = self.labels[edge]
        return g if sign > 0 else self.group.inverse(g)

    def side_start(self, side) -> int:
        edge, sign = side
        return self.edges[edge].tail if sign > 0 else self.edges[edge].head

    def side_end(self, side) -> int:
        edge, sign = side
        return self.edges[edge].head if sign > 0 else self.edges[edge].tail

    def corners(self, index: int) -> tuple:
        """
        The start vertex of each side of a triangle
        """
        return tuple(self.side_start(side) for side in self.triangles[index])

    def sides_of(self, edge: int) -> list:
        """
        :return: every (triangle, position) where the edge appears
        """
        return [(t, p) for t, triangle in enumerate(self.triangles)
                for p, side in enumerate(triangle) if side[0] == edge]

    def internal_edges(self) -> list:
        return [e for e, edge in enumerate(self.edges) if not edge.boundary]

    def marked_vertices(self) -> list:
        return [v for v, kind in enumerate(self.vertices) if kind == VertexKind.MARKED]

    def flippable_edges(self) -> list:
        out = []
        for e in self.internal_edges():
            places = self.sides_of(e)
            if len(places) == 2 and places[0][0] != places[1][0]:
                out.append(e)
        return out

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)

    def with_labels(self, labels) -> "GTriangulation":
        return replace(self, labels=tuple(int(g) for g in labels))

    def __repr__(self):
        return (f"GTriangulation(V={len(self.vertices)}, E={len(self.edges)}, "
                f"F={len(self.triangles)}, genus={self.genus}, b={len(self.boundaries)})")


# -------------------------------------------------------------------------
# Validation
# -------------------------------------------------------------------------


def validate_triangulation(t: GTriangulation) -> list:
    """
    Every violated invariant of a G-labelled ideal triangulation
    :param t: structurally indexed triangulation
    :return: list of Violation, empty iff valid
    """
    violations = []
    g = t.group
    for e, label in enumerate(t.labels):
        if not 0 <= label < g.order:
            violations.append(Violation("label_range", (e,)))
    if violations:
        return violations
    uses = [0] * len(t.edges)
    for index, triangle in enumerate(t.triangles):
        for position, side in enumerate(triangle):
            uses[side[0]] += 1
            following = triangle[(position + 1) % 3]
            if t.side_end(side) != t.side_start(following):
                violations.append(Violation("side_chain", (index, position)))
        if g.mul(*(t.side_label(side) for side in triangle)) != g.identity:
            violations.append(Violation("face_relation", (index,),
                                        f"labels {[t.side_label(s) for s in triangle]}"))
    for e, edge in enumerate(t.edges):
        expected = 1 if edge.boundary else 2
        if uses[e] != expected:
            violations.append(Violation("edge_incidence", (e,), f"{uses[e]} sides"))
    expected_chi = 2 - 2 * t.genus - len(t.boundaries)
    if t.euler_characteristic != expected_chi:
        violations.append(Violation("euler", (), f"{t.euler_characteristic} != {expected_chi}"))
    on_circles = set()
    for index, circle in enumerate(t.boundaries):
        sides = circle.sides
        for position, side in enumerate(sides):
            on_circles.add(side[0])
            if not t.edges[side[0]].boundary:
                violations.append(Violation("boundary_flag", (index, side[0])))
            if t.side_end(side) != t.side_start(sides[(position + 1) % len(sides)]):
                violations.append(Violation("boundary_cycle", (index, position)))
        if g.mul(*(t.side_label(s) for s in sides)) != circle.holonomy:
            violations.append(Violation("boundary_holonomy", (index,)))
    for e, edge in enumerate(t.edges):
        if edge.boundary and e not in on_circles:
            violations.append(Violation("boundary_flag", (-1, e)))
    return violations


# -------------------------------------------------------------------------
# Moves
# -------------------------------------------------------------------------


def _rotate_to(triangle: tuple, position: int) -> tuple:
    return triangle[position:] + triangle[:position]


def flip(t: GTriangulation, edge: int) -> GTriangulation:
    """
    Replace the diagonal of the quadrilateral around an internal edge
    With A = (e+, a, b) and B = (e-, c, d) the new edge f runs from the far
    corner of B to the far corner of A, A' = (f+, b, c) and B' = (f-, d, a),
    and g(f) = (g(b) g(c))^-1. The new edge keeps the index of the old one
    :raises BoundaryEdge: the edge lies on the boundary
    :raises SameFace: both sides of the edge belong to one triangle
    """
    if t.edges[edge].boundary:
        raise BoundaryEdge(f"edge {edge} is a boundary edge")
    places = t.sides_of(edge)
    ia, pa = next((tr, p) for tr, p in places if t.triangles[tr][p][1] > 0)
    ib, pb = next((tr, p) for tr, p in places if t.triangles[tr][p][1] < 0)
    if ia == ib:
        raise SameFace(f"edge {edge} bounds a single triangle")
    _, a, b = _rotate_to(t.triangles[ia], pa)
    _, c, d = _rotate_to(t.triangles[ib], pb)
    g = t.group
    tail = t.side_start(d)
    head = t.side_start(b)
    label = g.inverse(g.mul(t.side_label(b), t.side_label(c)))
    edges = list(t.edges)
    edges[edge] = Edge(tail, head)
    labels = list(t.labels)
    labels[edge] = label
    triangles = list(t.triangles)
    triangles[ia] = ((edge, 1), b, c)
    triangles[ib] = ((edge, -1), d, a)
    return replace(t, edges=tuple(edges), labels=tuple(labels), triangles=tuple(triangles))


def gauge(t: GTriangulation, vertex: int, element: int) -> GTriangulation:
    """
    lambda_g at an internal marked point: edges leaving the vertex become
    g g(e), edges arriving become g(e) g^-1
    :raises BoundaryVertex: the vertex is a boundary basepoint
    """
    if t.vertices[vertex] != VertexKind.MARKED:
        raise BoundaryVertex(f"vertex {vertex} is pinned by the boundary")
    g = t.group
    labels = list(t.labels)
    for e, edge in enumerate(t.edges):
        if edge.tail == vertex:
            labels[e] = g.mul(element, labels[e])
        if edge.head == vertex:
            labels[e] = g.mul(labels[e], g.inverse(element))
    return t.with_labels(labels)


def disjoint_flips(t: GTriangulation) -> list:
    """
    Pairs of flippable edges with no triangle in common
    """
    edges = t.flippable_edges()
    faces = {e: {tri for tri, _ in t.sides_of(e)} for e in edges}
    return [(e, f) for i, e in enumerate(edges) for f in edges[i + 1:] if not faces[e] & faces[f]]


def pentagon_paths(t: GTriangulation) -> list:
    """
    Pairs of diagonals (e, f) of a pentagon made of three distinct triangles
    :return: the alternating five-flip paths around each pentagon
    """
    paths = []
    flippable = set(t.flippable_edges())
    for middle in range(len(t.triangles)):
        sides = [s[0] for s in t.triangles[middle]]
        for p in range(3):
            e, f = sides[p], sides[(p + 1) % 3]
            if e == f or e not in flippable or f not in flippable:
                continue
            outer_e = {tri for tri, _ in t.sides_of(e)} - {middle}
            outer_f = {tri for tri, _ in t.sides_of(f)} - {middle}
            if len(outer_e) != 1 or len(outer_f) != 1 or outer_e == outer_f:
                continue
            paths.append([Flip(e), Flip(f), Flip(e), Flip(f), Flip(e)])
    return paths


# -------------------------------------------------------------------------
# Construction from a polygon word
# -------------------------------------------------------------------------


def _find(parent: list, x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def build_surface(group: FiniteGroup, genus: int, holonomies, marked: int = 0,
                  conjugators=None, handles=None) -> GTriangulation:
    """
    Glue the polygon
        d_1 . x_2 d_2 x_2^-1 ... x_n d_n x_n^-1 . [a_1, b_1] ... [a_g, b_g] . y_1 y_1^-1 ... y_m y_m^-1
    and triangulate it by a fan from its first corner
    :param group: the grading group
    :param genus: number of handles
    :param holonomies: label of each boundary circle
    :param marked: number of extra marked points
    :param conjugators: labels of x_2 .. x_n (default e)
    :param handles: pairs (a_j, b_j) (default e)
    :return: a valid GTriangulation
    :raises InadmissibleSurface: too few sides, or the word does not multiply to e
    """
    e = group.identity
    holonomies = [int(h) for h in holonomies]
    n = len(holonomies)
    conjugators = list(conjugators) if conjugators else [e] * max(n - 1, 0)
    handles = list(handles) if handles else [(e, e)] * genus
    if len(conjugators) != max(n - 1, 0) or len(handles) != genus:
        raise InadmissibleSurface("conjugator or handle labels do not match the surface")

    letters = []  # (label, boundary)
    word = []  # (letter, sign)

    def letter(label: int, boundary: bool = False) -> int:
        letters.append((int(label), boundary))
        return len(letters) - 1

    for i, h in enumerate(holonomies):
        d = letter(h, boundary=True)
        if i == 0:
            word.append((d, 1))
        else:
            x = letter(conjugators[i - 1])
            word.extend([(x, 1), (d, 1), (x, -1)])
    for a_label, b_label in handles:
        a, b = letter(a_label), letter(b_label)
        word.extend([(a, 1), (b, 1), (a, -1), (b, -1)])
    for _ in range(marked):
        y = letter(e)
        word.extend([(y, 1), (y, -1)])

    k = len(word)
    if k < 3:
        raise InadmissibleSurface(f"a polygon with {k} sides has no triangulation")
    side_labels = [letters[x][0] if s > 0 else group.inverse(letters[x][0]) for x, s in word]
    if group.mul(*side_labels) != e:
        raise InadmissibleSurface("the polygon word does not multiply to the identity")

    # side j runs from corner j to corner j+1
    parent = list(range(k))
    first_use = {}
    for j, (x, s) in enumerate(word):
        if x in first_use:
            i = first_use[x]
            for p, q in ((i, (j + 1) % k), ((i + 1) % k, j)):
                parent[_find(parent, p)] = _find(parent, q)
        else:
            first_use[x] = j
    classes = {}
    corner_vertex = []
    for c in range(k):
        root = _find(parent, c)
        classes.setdefault(root, len(classes))
        corner_vertex.append(classes[root])
    kinds = [VertexKind.MARKED] * len(classes)
    for j, (x, _) in enumerate(word):
        if letters[x][1]:
            kinds[corner_vertex[j]] = VertexKind.BOUNDARY

    edges, labels = [], []
    for x, (label, boundary) in enumerate(letters):
        j = first_use[x]
        edges.append(Edge(corner_vertex[j], corner_vertex[(j + 1) % k], boundary))
        labels.append(label)
    diagonal = {}
    prefix = side_labels[0]
    for m in range(2, k - 1):
        prefix = group.mul(prefix, side_labels[m - 1])
        diagonal[m] = len(edges)
        edges.append(Edge(corner_vertex[0], corner_vertex[m]))
        labels.append(prefix)

    triangles = []
    for m in range(1, k - 1):
        first = word[0] if m == 1 else (diagonal[m], 1)
        third = word[k - 1] if m == k - 2 else (diagonal[m + 1], -1)
        triangles.append((first, word[m], third))
    boundaries = tuple(BoundaryCircle(((x, 1),), letters[x][0])
                       for x in range(len(letters)) if letters[x][1])

    t = GTriangulation(group, tuple(kinds), tuple(edges), tuple(labels),
                       tuple(triangles), boundaries, genus)
    violations = validate_triangulation(t)
    if violations:
        raise InadmissibleSurface(f"construction broke {violations[0].name}")
    logger.debug("built %r", t)
    return t


def cylinder(group: FiniteGroup, g: int, h: int = None) -> GTriangulation:
    """
    Boundary holonomies g and h^-1 g^-1 h
    """
    h = group.identity if h is None else h
    second = group.mul(group.inverse(h), group.inverse(g), h)
    return build_surface(group, 0, [g, second], conjugators=[h])


def pants(group: FiniteGroup, g: int, h: int) -> GTriangulation:
    """
    Boundary holonomies g, h and (g h)^-1
    """
    return build_surface(group, 0, [g, h, group.inverse(group.mul(g, h))])


def torus(group: FiniteGroup, a: int = None, b: int = None) -> GTriangulation:
    e = group.identity
    a = e if a is None else a
    b = e if b is None else b
    return build_surface(group, 1, [], handles=[(a, b)])


def disk(group: FiniteGroup, marked: int = 1) -> GTriangulation:
    return build_surface(group, 0, [group.identity], marked=marked)


def sphere(group: FiniteGroup, marked: int = 3) -> GTriangulation:
    """
    :param marked: total number of marked points, at least 3
    """
    return build_surface(group, 0, [], marked=marked - 1)


# -------------------------------------------------------------------------
# Dual fat graph
# -------------------------------------------------------------------------


@dataclass(frozen=True)
class FatGraph:
    """
    One trivalent vertex per triangle with legs in counterclockwise order
    edges maps an internal triangulation edge to its two darts (triangle, position);
    legs maps a boundary edge to its single dart
    """
    vertices: tuple
    edges: dict
    legs: dict
    labels: tuple

    def boundary_cycles(self) -> int:
        partner = {}
        for first, second in self.edges.values():
            partner[first], partner[second] = second, first
        darts = [(v, p) for v in range(len(self.vertices)) for p in range(3)]
        seen = set()
        cycles = 0
        for dart in darts:
            if dart in seen:
                continue
            cycles += 1
            while dart not in seen:
                seen.add(dart)
                v, p = partner.get(dart, dart)
                dart = (v, (p + 1) % 3)
        return cycles

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges)

    @property
    def genus(self) -> int:
        return (2 - self.boundary_cycles() - self.euler_characteristic) // 2


def dual_fat_graph(t: GTriangulation) -> FatGraph:
    """
    :param t: valid triangulation
    :return: the trivalent ribbon graph whose edges cross those of t
    """
    edges, legs = {}, {}
    for e, edge in enumerate(t.edges):
        darts = tuple(t.sides_of(e))
        if edge.boundary:
            legs[e] = darts[0]
        else:
            edges[e] = darts
    return FatGraph(tuple(tuple(side[0] for side in tr) for tr in t.triangles),
                    edges, legs, t.labels)


# -------------------------------------------------------------------------
# Identification of triangulations
# -------------------------------------------------------------------------


@dataclass(frozen=True)
class Isomorphism:
    """
    edge_map[e] = (edge of the target, +1 or -1 when reversed)
    triangle_map[i] = (triangle of the target, rotation r) where side p of
    triangle i goes to side (p + r) % 3 of its image
    """
    edge_map: tuple
    triangle_map: tuple


def _neighbour(t: GTriangulation, triangle: int, position: int):
    edge = t.triangles[triangle][position][0]
    for place in t.sides_of(edge):
        if place != (triangle, position):
            return place
    return None


def extend_isomorphism(src, dst, start, image, rotation):
    """
    Grow the isomorphism sending triangle `start` of src onto triangle
    `image` of dst, side p onto side (p + rotation) % 3, across shared edges
    :return: an Isomorphism, or None when labels or adjacency disagree
    """
    g = src.group
    edge_map = [None] * len(src.edges)
    triangle_map = [None] * len(src.triangles)
    used = set()
    queue = deque([(start, image, rotation)])
    while queue:
        i, j, r = queue.popleft()
        if triangle_map[i] is not None:
            if triangle_map[i] != (j, r):
                return None
            continue
        if j in used:
            return None
        triangle_map[i] = (j, r)
        used.add(j)
        for p in range(3):
            q = (p + r) % 3
            e, s = src.triangles[i][p]
            f, s2 = dst.triangles[j][q]
            sign = s * s2
            if src.edges[e].boundary != dst.edges[f].boundary:
                return None
            label = src.labels[e] if sign > 0 else g.inverse(src.labels[e])
            if dst.labels[f] != label:
                return None
            if edge_map[e] is None:
                edge_map[e] = (f, sign)
            elif edge_map[e] != (f, sign):
                return None
            a = _neighbour(src, i, p)
            b = _neighbour(dst, j, q)
            if (a is None) != (b is None):
                return None
            if a is not None:
                queue.append((a[0], b[0], (b[1] - a[1]) % 3))
    if None in triangle_map or None in edge_map:
        return None
    return Isomorphism(tuple(edge_map), tuple(triangle_map))


def find_isomorphism(src: GTriangulation, dst: GTriangulation):
    """
    Identify two labelled triangulations up to renaming and reversing
    edges, reordering triangles and rotating each triangle
    :return: an Isomorphism, or None
    """
    if (len(src.edges), len(src.triangles), src.group) != (len(dst.edges), len(dst.triangles), dst.group):
        return None
    if not src.triangles:
        return Isomorphism((), ()) if not src.edges else None
    for j in range(len(dst.triangles)):
        for r in range(3):
            found = extend_isomorphism(src, dst, 0, j, r)
            if found is not None:
                return found
    return None


def fixing_isomorphism(src: GTriangulation, dst: GTriangulation, fixed):
    """
    The isomorphism keeping every edge in `fixed` in place with its
    orientation, if any; a move path that flips no edge of `fixed`
    closes up along this one
    """
    if (len(src.edges), len(src.triangles)) != (len(dst.edges), len(dst.triangles)):
        return None
    fixed = list(fixed)
    for j in range(len(dst.triangles)):
        for r in range(3):
            found = extend_isomorphism(src, dst, 0, j, r)
            if found is not None and all(found.edge_map[e] == (e, 1) for e in fixed):
                return found
    return None


# -------------------------------------------------------------------------
# Fibres and move graphs
# -------------------------------------------------------------------------


def fiber_labelings(t: GTriangulation) -> list:
    """
    Every labelling of the ideal triangulation of t that keeps its boundary
    labels and satisfies the face relations, grouped into gauge orbits
    :return: list of orbits, each a sorted list of label tuples
    """
    g = t.group
    free = t.internal_edges()
    valid = []
    for choice in itertools.product(g.elements, repeat=len(free)):
        labels = list(t.labels)
        for e, value in zip(free, choice):
            labels[e] = value
        candidate = t.with_labels(labels)
        if all(g.mul(*(candidate.side_label(s) for s in tr)) == g.identity
               for tr in candidate.triangles):
            valid.append(candidate.labels)
    remaining = set(valid)
    orbits = []
    for labels in valid:
        if labels not in remaining:
            continue
        orbit = {labels}
        queue = deque([labels])
        while queue:
            current = t.with_labels(queue.popleft())
            for v in t.marked_vertices():
                for h in g.elements:
                    moved = gauge(current, v, h).labels
                    if moved not in orbit:
                        orbit.add(moved)
                        queue.append(moved)
        remaining -= orbit
        orbits.append(sorted(orbit))
    logger.debug("fibre of %r: %d labellings in %d orbits", t, len(valid), len(orbits))
    return orbits


@dataclass
class MoveGraph:
    nodes: list
    arcs: list
    complete: bool

    @property
    def size(self) -> int:
        return len(self.nodes)

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        adjacent = {i: set() for i in range(len(self.nodes))}
        for a, b, _ in self.arcs:
            adjacent[a].add(b)
            adjacent[b].add(a)
        seen = {0}
        queue = deque([0])
        while queue:
            for nxt in adjacent[queue.popleft()] - seen:
                seen.add(nxt)
                queue.append(nxt)
        return len(seen) == len(self.nodes)


def enumerate_reachable(t: GTriangulation, max_moves: int, flips: bool = True,
                        gauges: bool = True) -> MoveGraph:
    """
    Breadth-first exploration of the G-Ptolemy complex around t
    With flips, nodes are identified up to isomorphism; gauges alone keep
    the ideal triangulation fixed and nodes are compared label by label
    :param max_moves: depth budget
    :return: MoveGraph; complete is False when the budget cut the search
    """
    nodes = [t]
    arcs = []
    frontier = [0]
    complete = True
    for depth in range(max_moves + 1):
        if not frontier:
            break
        if depth == max_moves:
            complete = False
            break
        following = []
        for index in frontier:
            current = nodes[index]
            moves = []
            if flips:
                moves.extend(Flip(e) for e in current.flippable_edges())
            if gauges:
                moves.extend(Gauge(v, h) for v in current.marked_vertices()
                             for h in current.group.elements if h != current.group.identity)
            for move in moves:
                result = move.apply(current)
                target = _locate(nodes, result, flips)
                if target is None:
                    nodes.append(result)
                    target = len(nodes) - 1
                    following.append(target)
                arcs.append((index, target, move))
        frontier = following
    logger.info("explored %d triangulations, %d moves (complete=%s)", len(nodes), len(arcs), complete)
    return MoveGraph(nodes, arcs, complete)


def _locate(nodes: list, t: GTriangulation, up_to_isomorphism: bool):
    for index, node in enumerate(nodes):
        if up_to_isomorphism:
            if find_isomorphism(t, node) is not None:
                return index
        elif node == t:
            return index
    return None


# -------------------------------------------------------------------------
# The move complex: triangulations told apart by the relative homology
# classes of their arcs, with the GP1-GP6 cells as 2-cells
# -------------------------------------------------------------------------


def _relation_functionals(t: GTriangulation) -> list:
    """
    Functionals on the edge chains of t that vanish on every triangle
    boundary; two chains agree in H_1(S, V) iff every functional agrees
    """
    relations = la.zeros(len(t.triangles), len(t.edges))
    for i, triangle in enumerate(t.triangles):
        for e, sign in triangle:
            relations[i, e] = relations[i, e] + sign
    return la.nullspace(relations)


def _homology(functionals, chain) -> tuple:
    out = []
    for phi in functionals:
        value = ZERO
        for coeff, c in zip(phi, chain):
            if c:
                value = value + coeff * c
        out.append(value.rational())
    return tuple(out)


def _arc_key(functionals, t: GTriangulation, e: int, chain) -> tuple:
    edge = t.edges[e]
    forward = (_homology(functionals, chain), edge.tail, edge.head, t.labels[e])
    backward = (_homology(functionals, [-c for c in chain]), edge.head, edge.tail,
                t.group.inverse(t.labels[e]))
    return min(forward, backward)


def _side_chain(chains, side) -> tuple:
    e, sign = side
    return chains[e] if sign > 0 else tuple(-c for c in chains[e])


def _flip_chains(t: GTriangulation, chains, edge: int) -> tuple:
    # the new diagonal runs along d then a, see flip()
    places = t.sides_of(edge)
    ia, pa = next((tr, p) for tr, p in places if t.triangles[tr][p][1] > 0)
    ib, pb = next((tr, p) for tr, p in places if t.triangles[tr][p][1] < 0)
    a = _rotate_to(t.triangles[ia], pa)[1]
    d = _rotate_to(t.triangles[ib], pb)[2]
    diagonal = tuple(x + y for x, y in zip(_side_chain(chains, d), _side_chain(chains, a)))
    return chains[:edge] + (diagonal,) + chains[edge + 1:]


def _moves(t: GTriangulation) -> list:
    group = t.group
    moves = [Flip(e) for e in t.flippable_edges()]
    moves.extend(Gauge(v, h) for v in t.marked_vertices() for h in group.elements
                 if h != group.identity)
    return moves


@dataclass
class MoveComplex:
    """
    nodes[i] is one edge numbering of the i-th triangulation met; arcs are
    (source, target, move) with the move in the numbering of its source, and
    renames[arc] sends the edges of the moved triangulation to the numbering
    of the target
    """
    nodes: list
    depth: list
    arcs: list
    renames: list
    step: dict
    complete: bool
    max_moves: int

    @property
    def size(self) -> int:
        return len(self.nodes)

    def explored(self) -> list:
        """
        Nodes whose every move was followed
        """
        return [i for i, d in enumerate(self.depth) if self.complete or d < self.max_moves]

    def follow(self, node: int, path):
        """
        :param path: moves in the numbering of nodes[node]
        :return: (arc indices, node reached), or None when an arc was never explored
        """
        arcs = []
        rename = tuple(range(len(self.nodes[node].edges)))
        for move in path:
            if isinstance(move, Flip):
                move = Flip(rename[move.edge])
            arc = self.step.get((node, move))
            if arc is None:
                return None
            arcs.append(arc)
            node = self.arcs[arc][1]
            rename = tuple(self.renames[arc][e] for e in rename)
        return arcs, node


def explore_complex(t: GTriangulation, max_moves: int) -> MoveComplex:
    """
    Breadth-first exploration of flips and gauges around t
    Each arc is carried along as a chain of edges of t, so that two
    triangulations are the same node only when their arcs have the same
    classes in H_1(S, V), endpoints and labels. On the once-punctured torus
    this tells triangulations apart up to isotopy; with more marked points
    distinct arcs can share a class
    :param max_moves: depth budget
    """
    functionals = _relation_functionals(t)
    start = tuple(tuple(int(e == f) for f in range(len(t.edges))) for e in range(len(t.edges)))

    def keyed(current, chains) -> dict:
        keys = {_arc_key(functionals, current, e, chains[e]): e for e in range(len(current.edges))}
        if len(keys) != len(current.edges):
            raise InadmissibleSurface("two arcs of one triangulation share a homology class")
        return keys

    first = keyed(t, start)
    nodes, chains, depth, numbering = [t], [start], [0], [first]
    index = {tuple(sorted(first)): 0}
    arcs, renames, step = [], [], {}
    frontier = [0]
    complete = True
    for level in range(max_moves + 1):
        if not frontier:
            break
        if level == max_moves:
            complete = False
            break
        following = []
        for node in frontier:
            current = nodes[node]
            for move in _moves(current):
                if isinstance(move, Flip):
                    result = flip(current, move.edge)
                    moved = _flip_chains(current, chains[node], move.edge)
                else:
                    result = gauge(current, move.vertex, move.element)
                    moved = chains[node]
                keys = keyed(result, moved)
                target = index.get(tuple(sorted(keys)))
                if target is None:
                    target = len(nodes)
                    index[tuple(sorted(keys))] = target
                    nodes.append(result)
                    chains.append(moved)
                    depth.append(level + 1)
                    numbering.append(keys)
                    following.append(target)
                by_key = {e: key for key, e in keys.items()}
                step[(node, move)] = len(arcs)
                arcs.append((node, target, move))
                renames.append(tuple(numbering[target][by_key[e]] for e in range(len(result.edges))))
        frontier = following
    logger.info("move complex: %d triangulations, %d moves (complete=%s)", len(nodes), len(arcs), complete)
    return MoveComplex(nodes, depth, arcs, renames, step, complete, max_moves)


def cell_paths(t: GTriangulation) -> list:
    """
    The GP1-GP6 relations available at t, each as (name, path, path) with
    both paths starting at t and meant to end at the same triangulation
    """
    group = t.group
    others = [g for g in group.elements if g != group.identity]
    marked = t.marked_vertices()
    out = [("GP1", [Flip(e), Flip(e)], []) for e in t.flippable_edges()]
    out.extend(("GP2", [Flip(e), Flip(f)], [Flip(f), Flip(e)]) for e, f in disjoint_flips(t))
    out.extend(("GP3", path, []) for path in pentagon_paths(t))
    out.extend(("GP4", [Gauge(v, g), Flip(e)], [Flip(e), Gauge(v, g)])
               for v in marked for g in others for e in t.flippable_edges())
    out.extend(("GP5", [Gauge(v, g), Gauge(w, h)], [Gauge(w, h), Gauge(v, g)])
               for i, v in enumerate(marked) for w in marked[i + 1:] for g in others for h in others)
    for v in marked:
        for g in others:
            for h in others:
                gh = group.mul(g, h)
                out.append(("GP6", [Gauge(v, h), Gauge(v, g)],
                            [Gauge(v, gh)] if gh != group.identity else []))
    return out


def complex_cells(graph: MoveComplex) -> list:
    """
    Boundaries of the cells rooted at explored nodes whose arcs all exist
    :return: list of (name, {arc: coefficient})
    """
    cells = []
    for node in graph.explored():
        for name, one, two in cell_paths(graph.nodes[node]):
            first, second = graph.follow(node, one), graph.follow(node, two)
            if first is None or second is None:
                continue
            if first[1] != second[1]:
                logger.warning("%s at node %d does not close", name, node)
                continue
            boundary = {}
            for arc in first[0]:
                boundary[arc] = boundary.get(arc, 0) + 1
            for arc in second[0]:
                boundary[arc] = boundary.get(arc, 0) - 1
            boundary = {a: c for a, c in boundary.items() if c}
            if boundary:
                cells.append((name, boundary))
    return cells


def move_cycles(graph: MoveComplex, max_length: int) -> list:
    """
    Every simple cycle of at most max_length arcs among the explored nodes
    :return: list of cycles, each a tuple of (arc, +1 or -1 when walked backwards)
    """
    allowed = set(graph.explored())
    adjacency = {node: [] for node in allowed}
    cycles = []
    for arc, (a, b, _) in enumerate(graph.arcs):
        if a not in allowed or b not in allowed:
            continue
        if a == b:
            cycles.append(((arc, 1),))
            continue
        adjacency[a].append((arc, b, 1))
        adjacency[b].append((arc, a, -1))
    seen = set()

    def extend(start, node, path, visited):
        for arc, nxt, sign in adjacency[node]:
            if path and arc == path[-1][0]:
                continue
            if nxt == start and path:
                cycle = tuple(path + [(arc, sign)])
                key = frozenset(a for a, _ in cycle)
                if key not in seen:
                    seen.add(key)
                    cycles.append(cycle)
            elif nxt > start and nxt not in visited and len(path) + 2 <= max_length:
                extend(start, nxt, path + [(arc, sign)], visited | {nxt})

    for start in sorted(allowed):
        extend(start, start, [], {start})
    logger.debug("%d cycles of length <= %d", len(cycles), max_length)
    return cycles


def reduce_cycles(graph: MoveComplex, cycles, cells=None) -> list:
    """
    Which cycles are sums of cell boundaries, over Q in the space of arc chains
    :return: list of bools in the order of cycles
    """
    cells = complex_cells(graph) if cells is None else cells
    matrix = la.zeros(len(cells), len(graph.arcs))
    for row, (_, boundary) in enumerate(cells):
        for arc, coeff in boundary.items():
            matrix[row, arc] = matrix[row, arc] + coeff
    reduced, pivots = la.rref(matrix) if cells else (matrix, [])
    out = []
    for cycle in cycles:
        vector = [ZERO] * len(graph.arcs)
        for arc, sign in cycle:
            vector[arc] = vector[arc] + sign
        for row, column in enumerate(pivots):
            coeff = vector[column]
            if coeff:
                vector = [x - coeff * y for x, y in zip(vector, reduced[row])]
        out.append(not any(vector))
    return out
