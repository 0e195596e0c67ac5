"""
gsn_diagram.py
Planar graphical calculus on trivalent trees

Vectors of Hom(t, X1 (x) ... (x) Xn) are kept in the left-comb basis:
a basis key is (leaves, labels) where labels[0] = leaves[0] and
labels[j] is the channel of labels[j-1] (x) leaves[j]; labels[-1] is the top.
The empty key ((), ()) stands for Hom(1, 1).

A leaf is either a simple index or a pair (simple, tag); tagged leaves are
summands of center objects and are the only strands a half-braiding moves.

Splitting vertices are orthonormal: fusing right after splitting gives
delta times the identity, and id_{a(x)b} = sum_c psi psi^dagger.
Every local move below is computed from F, its inverse and dimensions.
"""

import random
from collections import defaultdict
from dataclasses import dataclass, field

from extras import (InadmissibleColoring, NonPlanarDiagram, NotABubble,
                    NotInternalEdge, UnresolvableCrossing, Violation, module_logger)
from gsn_algebra import ONE, ZERO, Scalar
from gsn_constants import UNIT, Orientation
import gsn_debug

logger = module_logger(__name__)

EMPTY = ((), ())
SLIDE_TAG = "slide"  # tag name of plain legs crossing a cloaking circle


def color(leaf) -> int:
    return leaf if isinstance(leaf, int) else leaf[0]


def top_of(key) -> int:
    return key[1][-1] if key[0] else UNIT


# -------------------------------------------------------------------------
# Basis-key primitives: key -> list of (key, coefficient)
# -------------------------------------------------------------------------


def split_key(cat, key, k: int, a, b) -> list:
    """
    Replace leaf k (colour x) by the pair (a, b) through psi^{ab}_x
    """
    leaves, labels = key
    x = color(leaves[k])
    ca, cb = color(a), color(b)
    if not cat.n(ca, cb, x):
        return []
    new_leaves = leaves[:k] + (a, b) + leaves[k + 1:]
    if k == 0:
        return [((new_leaves, (ca,) + labels), ONE)]
    out = []
    left, total = labels[k - 1], labels[k]
    for g in cat.channels(left, ca):
        coeff = cat.Finv(left, ca, cb, total, x, g)
        if coeff:
            out.append(((new_leaves, labels[:k] + (g,) + labels[k:]), coeff))
    return out


def fuse_key(cat, key, k: int, target=None) -> list:
    """
    Apply psi^dagger to leaves k, k+1
    :param target: the fused leaf (simple or tagged); None for every channel
    """
    leaves, labels = key
    x, y = color(leaves[k]), color(leaves[k + 1])
    targets = cat.channels(x, y) if target is None else (target,)
    out = []
    for z in targets:
        cz = color(z)
        new_leaves = leaves[:k] + (z,) + leaves[k + 2:]
        if k == 0:
            if labels[1] == cz:
                out.append(((new_leaves, labels[1:]), ONE))
            continue
        coeff = cat.F(labels[k - 1], x, y, labels[k + 1], labels[k], cz)
        if coeff:
            out.append(((new_leaves, labels[:k] + labels[k + 1:]), coeff))
    return out


def insert_unit_key(key, k: int) -> tuple:
    leaves, labels = key
    if not leaves:
        return (UNIT,), (UNIT,)
    if k == 0:
        return (UNIT,) + leaves, (UNIT,) + labels
    return leaves[:k] + (UNIT,) + leaves[k:], labels[:k] + (labels[k - 1],) + labels[k:]


def drop_unit_key(key, k: int) -> tuple:
    leaves, labels = key
    if color(leaves[k]) != UNIT:
        raise InadmissibleColoring(f"leaf {k} is not the unit")
    if len(leaves) == 1:
        return EMPTY
    if k == 0:
        return leaves[1:], labels[1:]
    return leaves[:k] + leaves[k + 1:], labels[:k] + labels[k + 1:]


def tensor_keys(first, second) -> tuple:
    """
    Juxtapose two Hom(1, -) basis keys
    """
    return first[0] + second[0], first[1] + second[1]


# -------------------------------------------------------------------------
# Duality coefficients
# -------------------------------------------------------------------------


def fs_entry(cat, a: int) -> Scalar:
    """
    F^{a a* a}_a[1, 1]
    """
    return cat.F(a, cat.dual(a), a, a, UNIT, UNIT)


def coev_prime_scale(cat, a: int) -> Scalar:
    return cat.qdim(a) * fs_entry(cat, a)


def ev_scale(cat, a: int) -> Scalar:
    return fs_entry(cat, a).inverse()


def cap_scale(cat, c: int, orientation: int) -> Scalar:
    """
    Scale of the cap closing legs (c, c*) read in that order
    FORWARD: the strand carries c and the cap is ev'_c
    BACKWARD: the strand carries c* and the cap is ev_{c*}
    """
    if orientation == Orientation.FORWARD:
        return cat.qdim(c)
    return ev_scale(cat, cat.dual(c))


# -------------------------------------------------------------------------
# Vectors
# -------------------------------------------------------------------------


class TreeVector:
    """
    Sparse vector over left-comb basis keys
    Operations return new vectors; a TreeVector is never mutated after use
    """

    __slots__ = ("cat", "terms")

    def __init__(self, cat, terms=None):
        self.cat = cat
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def basis(cls, cat, leaves, labels, coeff=ONE) -> "TreeVector":
        return cls(cat, {(tuple(leaves), tuple(labels)): coeff})

    @classmethod
    def unit(cls, cat) -> "TreeVector":
        return cls(cat, {EMPTY: ONE})

    # --- generic lifting of key maps ---

    def apply(self, step, trace: str = "") -> "TreeVector":
        out = defaultdict(lambda: ZERO)
        for key, value in self.terms.items():
            for new_key, coeff in step(key):
                out[new_key] = out[new_key] + value * coeff
        result = TreeVector(self.cat, out)
        if trace:
            gsn_debug.trace_step(trace, self, result)
        return result

    def scale(self, factor) -> "TreeVector":
        return TreeVector(self.cat, {k: v * factor for k, v in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for key, value in other.terms.items():
            out[key] = out.get(key, ZERO) + value
        return TreeVector(self.cat, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        return isinstance(other, TreeVector) and not (self - other).terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, key) -> Scalar:
        return self.terms.get(key, ZERO)

    def scalar(self) -> Scalar:
        """
        Value of a vector of Hom(1, 1)
        """
        extra = [k for k in self.terms if k != EMPTY]
        if extra:
            raise InadmissibleColoring(f"vector still has open legs {extra[0][0]}")
        return self.coefficient(EMPTY)

    # --- local moves ---

    def split(self, k: int, a, b) -> "TreeVector":
        return self.apply(lambda key: split_key(self.cat, key, k, a, b), "split")

    def fuse(self, k: int, target=None) -> "TreeVector":
        return self.apply(lambda key: fuse_key(self.cat, key, k, target), "fuse")

    def insert_unit(self, k: int) -> "TreeVector":
        return self.apply(lambda key: [(insert_unit_key(key, k), ONE)])

    def drop_unit(self, k: int) -> "TreeVector":
        return self.apply(lambda key: [(drop_unit_key(key, k), ONE)])

    def cup(self, k: int, a: int, prime: bool = False) -> "TreeVector":
        """
        Insert coev_a = (a, a*) or, with prime, coev'_a = (a*, a) before leaf k
        """
        cat = self.cat
        pair = (cat.dual(a), a) if prime else (a, cat.dual(a))
        factor = coev_prime_scale(cat, a) if prime else ONE
        return self.insert_unit(k).split(k, *pair).scale(factor)

    def cap(self, k: int, orientation: int = Orientation.FORWARD) -> "TreeVector":
        """
        Close leaves k, k+1 = (c, c*) with the cap chosen by orientation
        """
        cat = self.cat

        def step(key):
            c = color(key[0][k])
            if color(key[0][k + 1]) != cat.dual(c):
                return []
            factor = cap_scale(cat, c, orientation)
            return [(drop_unit_key(new_key, k), coeff * factor)
                    for new_key, coeff in fuse_key(cat, key, k, UNIT)]

        return self.apply(step, "cap")

    def graft(self, k: int, other: "TreeVector") -> "TreeVector":
        """
        Replace leaf k by the tree of `other`, whose top must match its colour
        """
        cat = self.cat
        out = TreeVector(cat)
        for o_key, o_value in other.terms.items():
            o_leaves, o_labels = o_key

            def step(key, o_leaves=o_leaves, o_labels=o_labels):
                if color(key[0][k]) != top_of((o_leaves, o_labels)):
                    return []
                if not o_leaves:
                    return [(drop_unit_key(key, k), ONE)]
                states = [(key, ONE)]
                for j in range(len(o_leaves) - 1, 0, -1):
                    nxt = []
                    for state, coeff in states:
                        for new_state, c2 in split_key(cat, state, k, o_labels[j - 1], o_leaves[j]):
                            nxt.append((new_state, coeff * c2))
                    states = nxt
                # the remaining leaf k now carries the first leaf of other
                return [((s[0][:k] + (o_leaves[0],) + s[0][k + 1:], s[1]), c) for s, c in states]

            out = out + self.apply(step).scale(o_value)
        return out

    def tensor(self, other: "TreeVector") -> "TreeVector":
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                key = tensor_keys(k1, k2)
                out[key] = out.get(key, ZERO) + v1 * v2
        return TreeVector(self.cat, out)

    def rotate(self, times: int = 1) -> "TreeVector":
        """
        tau: move the first leaf to the end, f -> (ev_a (x) id)(id (x) f (x) id)coev'_a
        Only for vectors with top 1
        """
        vector = self
        for _ in range(times):
            vector = vector._rotate_once()
        return vector

    def length(self) -> int:
        return len(next(iter(self.terms))[0]) if self.terms else 0

    def _rotate_once(self) -> "TreeVector":
        cat = self.cat
        out = TreeVector(cat)
        groups = defaultdict(dict)
        for key, value in self.terms.items():
            if not key[0]:
                out = out + TreeVector(cat, {key: value})
                continue
            groups[key[0][0]][key] = value
        for first, terms in groups.items():
            a = color(first)
            a_star = cat.dual(a)
            cup = TreeVector.basis(cat, (a_star, first), (a_star, UNIT))
            moved = (cup.insert_unit(1)
                     .graft(1, TreeVector(cat, terms))
                     .fuse(0, UNIT)
                     .drop_unit(0))
            out = out + moved.scale(cat.qdim(a))
        if gsn_debug.tracing():
            gsn_debug.trace_step("rotate", self, out)
        return out

    def cross(self, k: int, gamma_lookup, inverse: bool = False) -> "TreeVector":
        """
        Move a tagged leaf past its neighbour with a half-braiding
        forward: leaves (z_tag, X) -> (X, z_tag') with gamma_{z,X}
        inverse: leaves (X, z_tag) -> (z_tag', X) with gamma_{z,X}^-1
        :param gamma_lookup: callable (X, v, inverse) -> {source tag: [(target leaf, coeff)]}
        """
        cat = self.cat

        def step(key):
            leaves = key[0]
            tagged, plain = (leaves[k + 1], leaves[k]) if inverse else (leaves[k], leaves[k + 1])
            if isinstance(plain, tuple) or isinstance(tagged, int):
                raise UnresolvableCrossing(f"leaves {k}, {k + 1} are not (center, simple)")
            out = []
            for fused_key, c1 in fuse_key(cat, key, k):
                v = color(fused_key[0][k])
                for target, c2 in gamma_lookup(plain, v, inverse).get(tagged, ()):
                    pair = (target, plain) if inverse else (plain, target)
                    for new_key, c3 in split_key(cat, fused_key, k, *pair):
                        out.append((new_key, c1 * c2 * c3))
            return out

        return self.apply(step, "cross")

    def __repr__(self):
        return gsn_debug.format_vector(self)


def pair_vector(cat, a: int) -> TreeVector:
    """
    The bare splitting vector psi^{a a*}_1 as an element of Hom(1, a (x) a*)
    """
    return TreeVector.basis(cat, (a, cat.dual(a)), (a, UNIT))


def comb_basis(cat, leaves, top: int = UNIT) -> list:
    """
    Every left-comb basis key for the given leaves and top
    """
    leaves = tuple(leaves)
    if not leaves:
        return [EMPTY] if top == UNIT else []
    partial = [(color(leaves[0]),)]
    for leaf in leaves[1:]:
        partial = [p + (c,) for p in partial for c in cat.channels(p[-1], color(leaf))]
    return [(leaves, p) for p in partial if p[-1] == top]


def three_point_key(cat, a: int, b: int, c: int):
    """
    The basis key of Hom(1, a (x) b (x) c) (multiplicity free), or None
    """
    keys = comb_basis(cat, (a, b, c))
    return keys[0] if keys else None


# -------------------------------------------------------------------------
# Pivotal data derived from F and d
# -------------------------------------------------------------------------


def rotation_coefficient(cat, a: int, b: int, c: int) -> Scalar:
    """
    t with tau(u_{abc}) = t u_{bca} on the three-point spaces
    """
    source = three_point_key(cat, a, b, c)
    target = three_point_key(cat, b, c, a)
    if source is None or target is None:
        return ZERO
    return TreeVector(cat, {source: ONE}).rotate().coefficient(target)


def two_point_rotation(cat, a: int) -> Scalar:
    a_star = cat.dual(a)
    rotated = pair_vector(cat, a).rotate()
    return rotated.coefficient(((a_star, a), (a_star, UNIT)))


def pivotal_violations(cat) -> list:
    """
    Consistency of the duality maps derived from F and d:
    d_a^2 F[1,1] F^-1[1,1] = 1, tau tau = id on two-point spaces,
    tau^3 = id on three-point spaces, agreement with listed rotations
    """
    violations = []
    for a in range(cat.rank):
        a_star = cat.dual(a)
        value = cat.qdim(a) * cat.qdim(a) * fs_entry(cat, a) * cat.Finv(a, a_star, a, a, UNIT, UNIT)
        if value != 1:
            violations.append(Violation("pivotal", (a,), f"got {value}"))
        if two_point_rotation(cat, a) * two_point_rotation(cat, a_star) != 1:
            violations.append(Violation("rotation_involution", (a,)))
    for a in range(cat.rank):
        for b in range(cat.rank):
            for c in range(cat.rank):
                if three_point_key(cat, a, b, c) is None:
                    continue
                t = rotation_coefficient(cat, a, b, c)
                cycle = t * rotation_coefficient(cat, b, c, a) * rotation_coefficient(cat, c, a, b)
                if cycle != 1:
                    violations.append(Violation("rotation_cyclic", (a, b, c), f"tau^3 = {cycle}"))
                given = cat.given_rotations.get((a, b, c))
                if given is not None and given != t:
                    violations.append(Violation("rotation_mismatch", (a, b, c),
                                                f"listed {given}, derived {t}"))
    logger.debug("pivotal check on %s: %d violations", cat.name, len(violations))
    return violations


# -------------------------------------------------------------------------
# Vectors over arbitrary trivalent tree shapes
# A tree key is a leaf ("l", leaf) or a node ("n", label, left, right)
# -------------------------------------------------------------------------


def _node_color(node) -> int:
    return color(node[1]) if node[0] == "l" else node[1]


def _get(node, path):
    for step in path:
        if node[0] != "n":
            raise NotInternalEdge(f"path {path} leaves the tree")
        node = node[2 + step]
    return node


def _replace(node, path, new):
    if not path:
        return new
    children = [node[2], node[3]]
    children[path[0]] = _replace(children[path[0]], path[1:], new)
    return "n", node[1], children[0], children[1]


def _leaves_of(node) -> tuple:
    if node[0] == "l":
        return (node[1],)
    return _leaves_of(node[2]) + _leaves_of(node[3])


def _comb_tree(key):
    leaves, labels = key
    tree = ("l", leaves[0])
    for j in range(1, len(leaves)):
        tree = ("n", labels[j], tree, ("l", leaves[j]))
    return tree


@dataclass
class TreeBasisVector:
    """
    Sparse vector over colourings of trivalent trees of any shape
    """
    cat: object
    terms: dict = field(default_factory=dict)

    @classmethod
    def from_comb(cls, vector: TreeVector) -> "TreeBasisVector":
        return cls(vector.cat, {_comb_tree(k): v for k, v in vector.terms.items() if k[0]})

    def to_comb(self) -> TreeVector:
        out = TreeVector(self.cat)
        for tree, value in self.terms.items():
            out = out + _tree_to_comb(self.cat, tree).scale(value)
        return out

    def __eq__(self, other):
        return isinstance(other, TreeBasisVector) and self.to_comb() == other.to_comb()

    def items(self):
        return self.terms.items()


def _tree_to_comb(cat, tree) -> TreeVector:
    if tree[0] == "l":
        return TreeVector.basis(cat, (tree[1],), (color(tree[1]),))
    left, right = tree[2], tree[3]
    e, f = _node_color(left), _node_color(right)
    pair = TreeVector.basis(cat, (e, f), (e, tree[1]))
    grafted = pair.graft(1, _tree_to_comb(cat, right))
    return grafted.graft(0, _tree_to_comb(cat, left))


def f_move(v: TreeBasisVector, edge) -> TreeBasisVector:
    """
    Reassociate around the internal edge at path `edge`
    A left child moves ((A B)_e C)_d -> (A (B C)_f)_d with F^{abc}_d[e, f];
    a right child moves back with the inverse matrix
    :raises NotInternalEdge: edge is the root or a leaf
    """
    edge = tuple(edge)
    if not edge:
        raise NotInternalEdge("the root is not an internal edge")
    cat = v.cat
    parent_path, side = edge[:-1], edge[-1]
    out = defaultdict(lambda: ZERO)
    for tree, value in v.terms.items():
        parent = _get(tree, parent_path)
        child = _get(tree, edge)
        if child[0] != "n":
            raise NotInternalEdge(f"edge {edge} ends in a leaf")
        d = parent[1]
        if side == 0:
            A, B, C = child[2], child[3], parent[3]
            a, b, c = _node_color(A), _node_color(B), _node_color(C)
            for f in cat.channels(b, c):
                coeff = cat.F(a, b, c, d, child[1], f)
                if coeff:
                    new = ("n", d, A, ("n", f, B, C))
                    key = _replace(tree, parent_path, new)
                    out[key] = out[key] + value * coeff
        else:
            A, B, C = parent[2], child[2], child[3]
            a, b, c = _node_color(A), _node_color(B), _node_color(C)
            for e in cat.channels(a, b):
                coeff = cat.Finv(a, b, c, d, child[1], e)
                if coeff:
                    new = ("n", d, ("n", e, A, B), C)
                    key = _replace(tree, parent_path, new)
                    out[key] = out[key] + value * coeff
    result = TreeBasisVector(cat, {k: x for k, x in out.items() if x})
    gsn_debug.trace_step("f_move", v, result)
    return result


def bubble_collapse(v: TreeBasisVector, site, target) -> TreeBasisVector:
    """
    Close the splitting vertex at `site` with the fusion vertex onto `target`
    The bubble evaluates to delta(label, target)
    :raises NotABubble: the node at site does not join two leaves
    """
    site = tuple(site)
    out = {}
    for tree, value in v.terms.items():
        node = _get(tree, site)
        if node[0] != "n" or node[2][0] != "l" or node[3][0] != "l":
            raise NotABubble(f"node {site} does not join two leaves")
        if node[1] != color(target):
            continue
        key = _replace(tree, site, ("l", target))
        out[key] = out.get(key, ZERO) + value
    return TreeBasisVector(v.cat, {k: x for k, x in out.items() if x})


def complete_edge(v: TreeBasisVector, k: int) -> TreeBasisVector:
    """
    Resolve the composite edge carried by leaves k, k+1 of a comb through
    id = sum_c psi psi^dagger, i.e. bring the two leaves under one node
    whose label runs over the channels c
    Only the regrouping is done here; the basis is normalised so that the
    bubble psi^dagger psi is delta_{c c'} with no d_c factor, so the weights of
    the completeness sum are the ones bubble_collapse applies, and nothing
    is scaled at this step
    """
    comb = TreeBasisVector.from_comb(v.to_comb())
    if k == 0:
        return comb
    n = len(_leaves_of(next(iter(comb.terms)))) if comb.terms else 0
    # in a comb the node of labels[k] sits at depth n-1-k
    depth = n - 1 - (k + 1)
    return f_move(comb, (0,) * depth + (0,))


def insert_cloaking_circle(v: TreeVector, region, g: int, half_braidings=None,
                           keep_tags: bool = False) -> TreeVector:
    """
    Insert sum_{s in I_g} d_s / D_e times an s-loop
    region None (or empty) is a circle around an empty region and scales by D_g / D_e.
    region "all" encircles every leg of a top-1 vector. A leg that half_braidings
    maps to a center object, or whose leaf is already tagged, crosses the loop
    through its half-braiding. A plain leg slides under the loop by completeness:
    s (x) X is fused into its channels and split again as X' (x) s, with X' running
    over the simples of grade h k h^-1 for a loop of grade h and a leg of grade k,
    so a graded leg changes colour under a loop it does not commute with
    keep_tags leaves the center summand tags on the result
    :raises UnresolvableCrossing: a center strand meets a loop of grade g != e
    """
    cat = v.cat
    neutral = cat.neutral_dimension
    colours = cat.simples_of_grade(g)
    if not region:
        weight = ZERO
        for s in colours:
            weight = weight + cat.qdim(s) * cat.qdim(s)
        return v.scale(weight / neutral)
    half_braidings = half_braidings or {}
    tagged = v.apply(lambda key: [(_tag_legs(key, half_braidings), ONE)])
    leaves = {leaf for key in tagged.terms for leaf in key[0]}
    if g != cat.group.identity and any(not _is_slide(leaf) for leaf in leaves):
        raise UnresolvableCrossing("only the neutral circle crosses center strands")
    lookup = _crossing_lookup(cat, half_braidings, [leaf for leaf in leaves if _is_slide(leaf)])
    result = TreeVector(cat)
    for s in colours:
        loop = tagged.cup(0, s, prime=True)
        n = loop.length()
        for position in range(1, n - 1):
            loop = loop.cross(position, lookup, inverse=True)
        loop = loop.rotate().cap(n - 2, Orientation.FORWARD)
        result = result + loop.scale(cat.qdim(s) / neutral)
    return result.apply(lambda key: [(_untag_legs(key, half_braidings, keep_tags), ONE)])


def _is_slide(leaf) -> bool:
    return isinstance(leaf, tuple) and leaf[1][0] == SLIDE_TAG


def _tag_legs(key, half_braidings):
    leaves = list(key[0])
    for position, leaf in enumerate(leaves):
        if isinstance(leaf, int):
            z = half_braidings.get(position)
            leaves[position] = (leaf, (SLIDE_TAG, position)) if z is None else z.tag_simple(leaf)
    return tuple(leaves), key[1]


def _untag_legs(key, half_braidings, keep_tags: bool):
    leaves = tuple(color(x) if _is_slide(x) or (i in half_braidings and not keep_tags) else x
                   for i, x in enumerate(key[0]))
    return leaves, key[1]


def _crossing_lookup(cat, half_braidings, slides):
    """
    Half-braiding tables of the center objects, plus the completeness slide
    of every plain leg
    """
    objects = {}
    for z in half_braidings.values():
        objects[z.tag_name] = z
    group = cat.group

    def lookup(x, v, inverse):
        merged = {}
        for z in objects.values():
            merged.update(z.crossing_table(x, v, inverse))
        h = cat.grade(x)
        for leaf in slides:
            colour, tag = leaf
            shifted = group.conjugate(group.inverse(h), cat.grade(colour))
            merged[leaf] = [((t, tag), ONE) for t in cat.simples_of_grade(shifted)]
        return merged

    return lookup


# -------------------------------------------------------------------------
# Closed planar diagrams
# -------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagramEdge:
    color: int


@dataclass
class DiagramVertex:
    """
    kind: "coupling" (three legs), "box" (a half-braiding gamma_{z,X}
    with legs X, z, X*, z*), "cup" or "cap" (two legs, an identity strand)
    legs: ccw list of (edge index, "tail" | "head")
    """
    kind: str
    legs: list
    center: object = None


@dataclass
class PlanarDiagram:
    vertices: list
    edges: list
    loops: list = field(default_factory=list)

    def leg_color(self, cat, leg) -> int:
        edge, end = leg
        c = self.edges[edge].color
        return c if end == "tail" else cat.dual(c)

    def partner(self, leg):
        edge, end = leg
        return edge, ("head" if end == "tail" else "tail")


def _vertex_vector(cat, d: PlanarDiagram, vertex: DiagramVertex) -> TreeVector:
    colours = tuple(d.leg_color(cat, leg) for leg in vertex.legs)
    if vertex.kind == "coupling":
        key = three_point_key(cat, *colours) if len(colours) == 3 else None
        if key is None:
            raise InadmissibleColoring(f"coupling {colours} is not admissible")
        return TreeVector(cat, {key: ONE})
    if vertex.kind in ("cup", "cap"):
        first, second = colours
        if first != cat.dual(second):
            raise InadmissibleColoring(f"strand {colours} changes colour")
        return TreeVector.basis(cat, (first, second), (first, UNIT)).scale(
            coev_prime_scale(cat, second))
    if vertex.kind == "box":
        z = vertex.center
        x, z_in = colours[0], cat.dual(colours[3])
        start = TreeVector.basis(cat, (z.tag_simple(z_in), colours[3]), (z_in, UNIT))
        start = start.insert_unit(1).split(1, x, cat.dual(x))
        crossed = start.cross(0, z.crossing_table)
        return crossed.apply(lambda key: _box_leg_filter(key, colours))
    raise InadmissibleColoring(f"unknown vertex kind {vertex.kind!r}")


def _box_leg_filter(key, colours):
    leaves = tuple(color(leaf) for leaf in key[0])
    return [((leaves, key[1]), ONE)] if leaves == colours else []


def _check_diagram(cat, d: PlanarDiagram) -> None:
    seen = defaultdict(int)
    for vertex in d.vertices:
        for leg in vertex.legs:
            seen[leg] += 1
    for index in range(len(d.edges)):
        if seen[(index, "tail")] != 1 or seen[(index, "head")] != 1:
            raise NonPlanarDiagram(f"edge {index} is not attached at both ends")
        if not 0 <= d.edges[index].color < cat.rank:
            raise InadmissibleColoring(f"edge {index} has colour {d.edges[index].color}")


def evaluate_closed(cat, d: PlanarDiagram, rng: random.Random = None) -> Scalar:
    """
    Evaluate a closed planar diagram by growing a disk one vertex at a time:
    each new vertex is attached along a contiguous arc of the current boundary
    and every attaching strand is closed with a cap
    :param rng: randomises the start and attachment order (confluence tests)
    :raises NonPlanarDiagram: no vertex can be attached along a contiguous arc
    """
    _check_diagram(cat, d)
    value = ONE
    for c in d.loops:
        value = value * cat.qdim(c)
    remaining = list(range(len(d.vertices)))
    owner = {}
    for index, vertex in enumerate(d.vertices):
        for leg in vertex.legs:
            owner[leg] = index
    while remaining:
        start = rng.choice(remaining) if rng else remaining[0]
        remaining.remove(start)
        vector = _vertex_vector(cat, d, d.vertices[start])
        legs = list(d.vertices[start].legs)
        if rng and legs:
            shift = rng.randrange(len(legs))
            vector = vector.rotate(shift)
            legs = legs[shift:] + legs[:shift]
        vector, legs = _close_adjacent(cat, d, vector, legs)
        while legs:
            candidates = sorted({owner[d.partner(leg)] for leg in legs} & set(remaining))
            if rng:
                rng.shuffle(candidates)
            for u in candidates:
                attached = _attach(cat, d, vector, legs, u)
                if attached is not None:
                    vector, legs = attached
                    remaining.remove(u)
                    break
            else:
                raise NonPlanarDiagram("no vertex attaches along a contiguous arc")
            vector, legs = _close_adjacent(cat, d, vector, legs)
        value = value * vector.scalar()
    return value


def _cap_orientation(leg) -> int:
    return Orientation.FORWARD if leg[1] == "tail" else Orientation.BACKWARD


def _close_adjacent(cat, d, vector, legs):
    changed = True
    while changed and legs:
        changed = False
        for i in range(len(legs)):
            j = (i + 1) % len(legs)
            if len(legs) >= 2 and d.partner(legs[i]) == legs[j]:
                if j == 0:
                    vector = vector.rotate(len(legs) - 1)
                    legs = legs[-1:] + legs[:-1]
                    i, j = 0, 1
                vector = vector.cap(i, _cap_orientation(legs[i]))
                legs = legs[:i] + legs[j + 1:]
                changed = True
                break
    return vector, legs


def _attach(cat, d, vector, legs, u):
    vertex = d.vertices[u]
    mine = [i for i, leg in enumerate(legs) if d.partner(leg) in vertex.legs]
    m = len(legs)
    # rotate the boundary so the attaching arc ends at the last position
    for shift in range(m):
        rotated = legs[shift:] + legs[:shift]
        positions = [i for i, leg in enumerate(rotated) if d.partner(leg) in vertex.legs]
        if positions == list(range(m - len(mine), m)):
            break
    else:
        return None
    arc = rotated[m - len(mine):]
    wanted = [d.partner(leg) for leg in reversed(arc)]
    k = len(vertex.legs)
    for vshift in range(k):
        vlegs = vertex.legs[vshift:] + vertex.legs[:vshift]
        if vlegs[:len(wanted)] == wanted:
            break
    else:
        return None
    vector = vector.rotate(shift)
    other = _vertex_vector(cat, d, vertex).rotate(vshift)
    vector = vector.tensor(other)
    for step in range(len(arc)):
        position = m - 1 - step
        vector = vector.cap(position, _cap_orientation(rotated[position]))
    legs = rotated[:m - len(arc)] + vlegs[len(wanted):]
    return vector, legs
