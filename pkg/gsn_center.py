"""
gsn_center.py
The G-center Z_G(C): objects with relative half-braidings, their validation,
hom spaces, the induction idempotent, the G-crossing phi_h, tensor products
and duals, the tube algebra of each grade sector and the cross-checks of
string-net dimensions against hom spaces in the center

A center object is a list of simple summands z_0, ..., z_{n-1} together with
one block per (X, v), X a neutral simple and v a channel: the matrix of
gamma_{z,X} from the basis {(z_k (x) X -> v)} (rows, summands with
N(z_k, X, v) > 0) to the basis {(X (x) z_k' -> v)} (columns, summands with
N(X, z_k', v) > 0). Summand k of z appears in tree vectors as the tagged
leaf (z_k, (tag_name, k)).
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

import gsn_linalg as la
from extras import (GradeMismatch, InadmissibleColoring, NotSplit, ParseError,
                    ShapeMismatch, Violation, module_logger)
from gsn_algebra import ONE, ZERO, Scalar
from gsn_constants import ROOT_DENOMINATOR_LIMIT, ROOT_TOLERANCE, UNIT, Orientation
from gsn_diagram import TreeVector, color, fuse_key, insert_cloaking_circle
import gsn_stringnet
import gsn_surface

logger = module_logger(__name__)


# -------------------------------------------------------------------------
# Center objects
# -------------------------------------------------------------------------


class CenterObject:
    """
    (c, gamma_c) with c a direct sum of simples of one grade
    """

    def __init__(self, cat, name: str, grade: int, summands, blocks=None, tag_name=None):
        self.cat = cat
        self.name = str(name)
        self.grade = int(grade)
        self.summands = tuple(int(s) for s in summands)
        self.tag_name = tag_name if tag_name is not None else self.name
        self.blocks = {}
        self._inverses = {}
        for (x, v), matrix in (blocks or {}).items():
            self.set_block(x, v, matrix)
        for s in self.summands:
            if cat.grade(s) != self.grade:
                raise GradeMismatch(f"{self.name}: summand {cat.simple_name(s)} "
                                    f"is not of grade {cat.group.names[self.grade]}")

    # --- summands ---

    @property
    def size(self) -> int:
        return len(self.summands)

    def tag(self, k: int) -> tuple:
        return self.summands[k], (self.tag_name, k)

    def leaves(self) -> tuple:
        return tuple(self.tag(k) for k in range(self.size))

    def tag_simple(self, simple: int) -> tuple:
        """
        The first summand of the given colour
        """
        for k, s in enumerate(self.summands):
            if s == color(simple):
                return self.tag(k)
        raise InadmissibleColoring(f"{self.name} has no summand {simple}")

    def index_of_tag(self, leaf) -> int:
        if isinstance(leaf, int) or leaf[1][0] != self.tag_name:
            raise InadmissibleColoring(f"{leaf} is not a summand of {self.name}")
        return leaf[1][1]

    def multiplicities(self) -> list:
        counts = [0] * self.cat.rank
        for s in self.summands:
            counts[s] += 1
        return counts

    # --- half-braiding blocks ---

    def rows(self, x: int, v: int) -> list:
        return [k for k, s in enumerate(self.summands) if self.cat.n(s, x, v)]

    def columns(self, x: int, v: int) -> list:
        return [k for k, s in enumerate(self.summands) if self.cat.n(x, s, v)]

    def set_block(self, x: int, v: int, matrix) -> None:
        matrix = la.as_matrix(matrix) if not isinstance(matrix, np.ndarray) else matrix
        shape = (len(self.rows(x, v)), len(self.columns(x, v)))
        if matrix.shape != shape:
            raise ShapeMismatch(f"{self.name}: block ({x}, {v}) has shape {matrix.shape}, "
                                f"expected {shape}")
        self.blocks[(x, v)] = matrix
        self._inverses.pop((x, v), None)

    def block(self, x: int, v: int):
        """
        :return: the block matrix, or None when it was never given
        """
        if x == UNIT:
            return la.identity(len(self.rows(x, v)))
        if not self.rows(x, v):
            return la.zeros(0, 0)
        return self.blocks.get((x, v))

    def inverse_block(self, x: int, v: int):
        if (x, v) not in self._inverses:
            block = self.block(x, v)
            self._inverses[(x, v)] = None if block is None else la.inverse(block)
        return self._inverses[(x, v)]

    def crossing_table(self, x: int, v: int, inverse: bool = False) -> dict:
        """
        :return: {source tagged leaf: [(target tagged leaf, coefficient)]}
                 forward (z, X) -> (X, z), inverse (X, z) -> (z, X)
        """
        rows, cols = self.rows(x, v), self.columns(x, v)
        if not inverse:
            block = self.block(x, v)
            if block is None:
                return {}
            return {self.tag(k): [(self.tag(cols[b]), block[a, b])
                                  for b in range(len(cols)) if block[a, b]]
                    for a, k in enumerate(rows)}
        block = self.inverse_block(x, v)
        if block is None:
            return {}
        return {self.tag(k): [(self.tag(rows[a]), block[b, a])
                              for a in range(len(rows)) if block[b, a]]
                for b, k in enumerate(cols)}

    def retagged(self, tag_name) -> "CenterObject":
        copy = CenterObject(self.cat, self.name, self.grade, self.summands, tag_name=tag_name)
        copy.blocks = dict(self.blocks)
        return copy

    def dual(self) -> "CenterObject":
        return dual_object(self)

    def __repr__(self):
        names = "+".join(self.cat.simple_name(s) for s in self.summands) or "0"
        return f"CenterObject({self.name}: {names}, grade {self.cat.group.names[self.grade]})"


def unit_object(cat) -> CenterObject:
    """
    The monoidal unit with the trivial half-braiding
    """
    blocks = {(x, x): la.identity(1) for x in cat.simples_of_grade(cat.group.identity)}
    return CenterObject(cat, "1", cat.group.identity, [UNIT], blocks)


def center_object_from_dict(cat, data: dict) -> CenterObject:
    """
    {"name", "grade", "summands": [simples] or "multiplicities": [counts],
     "half_braiding": [{"i", "v", "matrix"}]}
    Blocks with X = 1 are the identity and may be left out
    :raises ParseError: malformed entry
    :raises ShapeMismatch: a block whose shape does not fit the summands
    """
    try:
        name = data.get("name", "z")
        grade = cat.group.index(data.get("grade", cat.group.identity))
        if "summands" in data:
            summands = [cat.index_of(s) for s in data["summands"]]
        else:
            summands = [s for s, m in enumerate(data["multiplicities"]) for _ in range(int(m))]
        z = CenterObject(cat, name, grade, summands)
        for entry in data.get("half_braiding", []):
            x = cat.index_of(entry["i"])
            vs = [cat.index_of(entry["v"])] if "v" in entry else \
                [v for v in range(cat.rank) if z.rows(x, v)]
            matrix = [[Scalar.from_json(c, cat.conductor) for c in row] for row in entry["matrix"]]
            if len(vs) != 1:
                raise ParseError(f"{name}: block for {entry['i']} needs its channel v")
            z.set_block(x, vs[0], la.as_matrix(matrix) if matrix else la.zeros(0, 0))
    except (KeyError, TypeError, ValueError) as error:
        raise ParseError(f"bad center object: {error}") from error
    return z


def bundled_center(cat) -> list:
    """
    The center simples listed in the category file
    """
    objects = [center_object_from_dict(cat, entry) for entry in cat.center_data]
    logger.info("%s: %d bundled center objects", cat.name, len(objects))
    return objects


def center_by_name(objects, name: str) -> CenterObject:
    for z in objects:
        if z.name == name:
            return z
    raise ParseError(f"no center object named {name!r}")


# -------------------------------------------------------------------------
# Validation
# -------------------------------------------------------------------------


def _neutral(cat) -> tuple:
    return cat.simples_of_grade(cat.group.identity)


def validate_half_braiding(z: CenterObject) -> list:
    """
    Blocks present and invertible, identity on the unit, and the hexagon
    gamma_{z, X (x) Y} = (id_X (x) gamma_{z,Y})(gamma_{z,X} (x) id_Y) on every
    basis vector of Hom(v, z_k (x) X (x) Y)
    :return: list of Violation records, empty when z is a center object
    """
    cat = z.cat
    violations = []
    neutral = _neutral(cat)
    for x in neutral:
        for v in range(cat.rank):
            if x == UNIT or not z.rows(x, v):
                continue
            block = z.block(x, v)
            if block is None:
                violations.append(Violation("half_braiding_missing", (x, v),
                                            f"{z.name}: no block for X={cat.simple_name(x)}"))
            elif block.shape[0] != block.shape[1] or la.rank(block) != block.shape[0]:
                violations.append(Violation("half_braiding_invertible", (x, v),
                                            f"{z.name}: block is singular"))
    given = {(x, v): m for (x, v), m in z.blocks.items() if x == UNIT}
    for (x, v), matrix in given.items():
        if not la.is_identity(matrix):
            violations.append(Violation("half_braiding_unit", (x, v), f"{z.name}: gamma_1 != id"))
    if violations:
        return violations

    for k in range(z.size):
        for x in neutral:
            for y in neutral:
                for p in cat.channels(z.summands[k], x):
                    for v in cat.channels(p, y):
                        start = TreeVector.basis(cat, (z.tag(k), x, y), (z.summands[k], p, v))
                        stepwise = start.cross(0, z.crossing_table).cross(1, z.crossing_table)
                        joint = start.fuse(1).cross(0, z.crossing_table).split(0, x, y)
                        if stepwise != joint:
                            violations.append(Violation(
                                "hexagon", (k, x, y, v),
                                f"{z.name}: summand {k} past {cat.simple_name(x)}, "
                                f"{cat.simple_name(y)} in channel {cat.simple_name(v)}"))
    return violations


# -------------------------------------------------------------------------
# Hom spaces
# -------------------------------------------------------------------------


def _pairs(a: CenterObject, b: CenterObject) -> list:
    return [(k, l) for k, ak in enumerate(a.summands) for l, bl in enumerate(b.summands) if ak == bl]


def intertwiner_system(a: CenterObject, b: CenterObject):
    """
    Linear conditions on f in hom_C(a, b), one unknown per pair of equal
    summands, saying gamma_b (f (x) id) = (id (x) f) gamma_a in every block
    :return: (pairs, matrix) with the conditions as rows
    """
    cat = a.cat
    pairs = _pairs(a, b)
    position = {p: n for n, p in enumerate(pairs)}
    rows = []
    for x in _neutral(cat):
        if x == UNIT:
            continue
        for v in range(cat.rank):
            ga, gb = a.block(x, v), b.block(x, v)
            if ga is None or gb is None:
                raise InadmissibleColoring(f"missing half-braiding block ({x}, {v})")
            a_rows, a_cols = a.rows(x, v), a.columns(x, v)
            b_rows, b_cols = b.rows(x, v), b.columns(x, v)
            for i, k in enumerate(a_rows):
                for j, l2 in enumerate(b_cols):
                    row = [ZERO] * len(pairs)
                    for r, l in enumerate(b_rows):
                        if (k, l) in position and gb[r, j]:
                            row[position[(k, l)]] += gb[r, j]
                    for c, k2 in enumerate(a_cols):
                        if (k2, l2) in position and ga[i, c]:
                            row[position[(k2, l2)]] -= ga[i, c]
                    if any(row):
                        rows.append(row)
    matrix = la.as_matrix(rows) if rows else la.zeros(0, len(pairs))
    return pairs, matrix


def hom_center_dim(a: CenterObject, b: CenterObject) -> int:
    """
    dim hom_{Z_G(C)}(a, b), exact: zero across grades, otherwise the
    dimension of the solution space of the intertwiner conditions
    """
    if a.grade != b.grade:
        return 0
    pairs, matrix = intertwiner_system(a, b)
    if not pairs:
        return 0
    dim = len(pairs) - (la.rank(matrix) if matrix.shape[0] else 0)
    logger.debug("dim hom(%s, %s) = %d", a.name, b.name, dim)
    return dim


def hom_projector(a: CenterObject, b: CenterObject) -> np.ndarray:
    """
    The cloaking idempotent P on hom_C(a, b): each f is bent into
    Hom(1, b (x) a*) and encircled by a neutral cloaking circle that crosses
    b and a* through their half-braidings
    :return: matrix over the pairs of equal summands, P[target, source]
    """
    cat = a.cat
    pairs = _pairs(a, b)
    position = {p: n for n, p in enumerate(pairs)}
    a_star = dual_object(a)
    target_b = b.retagged(("hom", b.tag_name))
    matrix = la.zeros(len(pairs), len(pairs))
    for col, (k, l) in enumerate(pairs):
        c = a.summands[k]
        mate = TreeVector.basis(cat, (target_b.tag(l), a_star.tag(k)), (c, UNIT))
        result = insert_cloaking_circle(mate, "all", cat.group.identity,
                                        {0: target_b, 1: a_star}, keep_tags=True)
        for key, value in result.terms.items():
            l2, k2 = key[0][0][1][1], key[0][1][1][1]
            matrix[position[(k2, l2)], col] += value
    return matrix


# -------------------------------------------------------------------------
# Objects built from others
# -------------------------------------------------------------------------


def _from_rows(cat, name, grade, summands, row_vector, tag_name=None) -> CenterObject:
    """
    Assemble a center object from row_vector(x, v, k) -> {target summand: coeff},
    the image of the basis vector (z_k (x) x -> v)
    """
    z = CenterObject(cat, name, grade, summands, tag_name=tag_name)
    for x in _neutral(cat):
        if x == UNIT:
            continue
        for v in range(cat.rank):
            rows, cols = z.rows(x, v), z.columns(x, v)
            if not rows:
                continue
            where = {k: c for c, k in enumerate(cols)}
            block = la.zeros(len(rows), len(cols))
            for r, k in enumerate(rows):
                for target, value in row_vector(x, v, k).items():
                    block[r, where[target]] += value
            z.set_block(x, v, block)
    return z


def dual_object(z: CenterObject) -> CenterObject:
    """
    z* with gamma_{z*,X} = (ev_z (x) id)(id (x) gamma_{z,X}^-1 (x) id)(id (x) coev_z)
    Summand k of z* is the dual of summand k of z
    """
    cat = z.cat
    name = z.name[:-1] if z.name.endswith("*") else z.name + "*"
    summands = [cat.dual(s) for s in z.summands]
    star = CenterObject(cat, name, cat.group.inverse(z.grade), summands,
                        tag_name=("dual", z.tag_name))

    def row_vector(x, v, k):
        start = TreeVector.basis(cat, (star.tag(k), x), (summands[k], v))
        out = {}
        for j in range(z.size):
            opened = start.insert_unit(2).split(2, z.tag(j), star.tag(j))
            crossed = opened.cross(1, z.crossing_table, inverse=True)
            paired = crossed.apply(lambda key: [(key, ONE)] if key[0][1][1][1] == k else [])
            closed = paired.cap(0, Orientation.BACKWARD)
            for key, value in closed.terms.items():
                target = key[0][1][1][1]
                out[target] = out.get(target, ZERO) + value
        return out

    result = _from_rows(cat, name, star.grade, summands, row_vector, star.tag_name)
    return result


def direct_sum(objects, name: str = None) -> CenterObject:
    """
    Block-diagonal sum of center objects of one grade
    """
    objects = list(objects)
    if not objects:
        raise InadmissibleColoring("empty direct sum")
    cat = objects[0].cat
    grade = objects[0].grade
    if any(z.grade != grade for z in objects):
        raise GradeMismatch("direct sum of objects of different grades")
    name = name or "+".join(z.name for z in objects)
    summands = [s for z in objects for s in z.summands]
    offsets = np.cumsum([0] + [z.size for z in objects]).tolist()

    def row_vector(x, v, k):
        part = next(n for n in range(len(objects)) if offsets[n] <= k < offsets[n + 1])
        z = objects[part]
        local = k - offsets[part]
        rows, cols = z.rows(x, v), z.columns(x, v)
        block = z.block(x, v)
        r = rows.index(local)
        return {offsets[part] + cols[c]: block[r, c] for c in range(len(cols)) if block[r, c]}

    return _from_rows(cat, name, grade, summands, row_vector)


def tensor_objects(a: CenterObject, b: CenterObject) -> CenterObject:
    """
    a (x) b with gamma = (gamma_{a,X} (x) id)(id (x) gamma_{b,X})
    Summands are (k_a, k_b, w) with w a channel of a_ka (x) b_kb
    """
    cat = a.cat
    left, right = a.retagged(("left", a.tag_name)), b.retagged(("right", b.tag_name))
    labels = [(ka, kb, w) for ka, sa in enumerate(a.summands) for kb, sb in enumerate(b.summands)
              for w in cat.channels(sa, sb)]
    index = {label: n for n, label in enumerate(labels)}

    def row_vector(x, v, k):
        ka, kb, w = labels[k]
        start = TreeVector.basis(cat, (w, x), (w, v)).split(0, left.tag(ka), right.tag(kb))
        crossed = start.cross(1, right.crossing_table).cross(0, left.crossing_table)
        out = {}
        for key, value in crossed.terms.items():
            ka2, kb2 = key[0][1][1][1], key[0][2][1][1]
            for fused, coeff in fuse_key(cat, key, 1):
                target = index[(ka2, kb2, color(fused[0][1]))]
                out[target] = out.get(target, ZERO) + value * coeff
        return out

    grade = cat.group.mul(a.grade, b.grade)
    return _from_rows(cat, f"{a.name}.{b.name}", grade, [w for _, _, w in labels], row_vector)


# -------------------------------------------------------------------------
# Induction and the G-crossing
# -------------------------------------------------------------------------


@dataclass
class Induction:
    """
    I^h(c) = sum over i in I_h of i* (x) c (x) i, one summand per
    (i, k, u, w): c_k fused with i* into u, then with i into w
    projector is pi^h_c as a matrix over these summands, P[target, source]
    """
    source: CenterObject
    element: int
    labels: list
    projector: np.ndarray
    gamma: dict = field(default_factory=dict)

    @property
    def summands(self) -> list:
        return [w for _, _, _, w in self.labels]

    def multiplicities(self) -> list:
        counts = [0] * self.source.cat.rank
        for w in self.summands:
            counts[w] += 1
        return counts


def _induced_rows(c: CenterObject, h: int):
    """
    Row map of the diagram defining gamma_{P(c),X} before it is restricted
    to the image: sum over i, j in I_h of d_i / D times i* (x) c (x) i with
    the i strands capped, c crossing i (x) X (x) j* and j cupped on
    """
    cat = c.cat
    sector = cat.simples_of_grade(h)
    labels = [(i, k, u, w) for i in sector for k, s in enumerate(c.summands)
              for u in cat.channels(cat.dual(i), s) for w in cat.channels(u, i)]
    index = {label: n for n, label in enumerate(labels)}
    neutral = cat.neutral_dimension

    def row_vector(x, v, n):
        i, k, u, w = labels[n]
        start = (TreeVector.basis(cat, (w, x), (w, v))
                 .split(0, u, i)
                 .split(0, cat.dual(i), c.tag(k)))
        weight = cat.qdim(i) / neutral
        out = {}
        for j in sector:
            loop = start.cup(4, j, prime=True).fuse(2).fuse(2).cross(1, c.crossing_table)
            opened = TreeVector(cat)
            for p in cat.channels(i, x):
                opened = opened + loop.split(1, p, cat.dual(j)).split(1, i, x)
            closed = opened.cap(0, Orientation.BACKWARD)
            for key, value in closed.terms.items():
                k2 = key[0][2][1][1]
                for first, c1 in fuse_key(cat, key, 1):
                    u2 = color(first[0][1])
                    for second, c2 in fuse_key(cat, first, 1):
                        target = index[(j, k2, u2, color(second[0][1]))]
                        out[target] = out.get(target, ZERO) + weight * value * c1 * c2
        return out

    return labels, row_vector


def induction(c, h: int) -> Induction:
    """
    I^h(c) with the idempotent pi^h_c
    :param c: a CenterObject (a simple index is read as the unit object)
    :param h: group element
    :raises InadmissibleColoring: a plain simple other than the unit
    """
    if not isinstance(c, CenterObject):
        raise InadmissibleColoring("induction needs the half-braiding of its argument; "
                                   "pass a CenterObject")
    cat = c.cat
    labels, row_vector = _induced_rows(c, h)
    projector = la.zeros(len(labels), len(labels))
    for n, (_, _, _, w) in enumerate(labels):
        for target, value in row_vector(UNIT, w, n).items():
            projector[target, n] += value
    logger.debug("induction of %s by %s: %d summands, rank %d", c.name,
                 cat.group.names[h], len(labels), la.rank(projector) if labels else 0)
    return Induction(c, h, labels, projector)


def crossing_phi(z: CenterObject, h: int) -> CenterObject:
    """
    phi_h(z) = P(z), the image of pi^h_z, with the half-braiding obtained by
    restricting the induced diagram; grade h^-1 g h
    """
    cat = z.cat
    group = cat.group
    induced = induction(z, h)
    labels, row_vector = _induced_rows(z, h)
    projector = induced.projector
    # split the idempotent colour by colour
    embed, restrict, summands = {}, {}, []
    for w in range(cat.rank):
        members = [n for n, label in enumerate(labels) if label[3] == w]
        if not members:
            continue
        block = projector[np.ix_(members, members)]
        if la.is_zero(block):
            continue
        image = la.column_space(block)
        back = la.solve(image, block)
        for a in range(image.shape[1]):
            position = len(summands)
            summands.append(w)
            embed[position] = {members[r]: image[r, a] for r in range(len(members)) if image[r, a]}
            restrict[position] = {members[r]: back[a, r] for r in range(len(members)) if back[a, r]}
    by_label = {}
    for position, row in restrict.items():
        for n, value in row.items():
            by_label.setdefault(n, []).append((position, value))

    def image_rows(x, v, position):
        out = {}
        for n, e_value in embed[position].items():
            for target, g_value in row_vector(x, v, n).items():
                for image_pos, r_value in by_label.get(target, ()):
                    out[image_pos] = out.get(image_pos, ZERO) + e_value * g_value * r_value
        return out

    grade = group.conjugate(h, z.grade)
    name = z.name if h == group.identity else f"phi_{group.names[h]}({z.name})"
    return _from_rows(cat, name, grade, summands, image_rows)


def handle_object(cat, alpha: int, beta: int, simples) -> CenterObject:
    """
    The one-holed torus factor: sum over center simples Y of grade beta of
    phi_alpha(Y) (x) Y*
    """
    parts = [tensor_objects(crossing_phi(y, alpha), dual_object(y))
             for y in simples if y.grade == beta]
    if not parts:
        raise GradeMismatch(f"no center simples of grade {cat.group.names[beta]}")
    return direct_sum(parts, f"H({cat.group.names[alpha]},{cat.group.names[beta]})")


def genus2_object(x1: CenterObject, x2: CenterObject, x3: CenterObject, holonomies,
                  g: int, h: int, handles, simples) -> CenterObject:
    """
    c = phi_h(X3) (x) X1 (x) phi_g(X2) (x) H(alpha, beta) (x) H(gamma, delta)
    :param holonomies: boundary holonomies (b1, b2, b3)
    :param handles: ((alpha, beta), (gamma, delta))
    :param simples: center simples used to resolve the handles
    :raises GradeMismatch: a label whose grade is not its boundary holonomy
    """
    for n, (x, b) in enumerate(zip((x1, x2, x3), holonomies), start=1):
        if x.grade != b:
            raise GradeMismatch(f"X{n} = {x.name} does not have the grade of boundary {n}")
    cat = x1.cat
    c = tensor_objects(tensor_objects(crossing_phi(x3, h), x1), crossing_phi(x2, g))
    for alpha, beta in handles:
        c = tensor_objects(c, handle_object(cat, alpha, beta, simples))
    c.name = f"c({x1.name},{x2.name},{x3.name})"
    return c


# -------------------------------------------------------------------------
# Tube algebra
# -------------------------------------------------------------------------


@dataclass
class TubeAlgebra:
    """
    Cylinder string-nets of sector g with simple boundary colours
    Basis element (a, s, b, v) is the tube psi^{b s}_v psi^{s a dagger}_v:
    a enters at the bottom, b leaves at the top and a neutral s-strand winds
    once around; structure[i][j] = {k: coeff} for basis[i] stacked on basis[j]
    """
    cat: object
    sector: int
    basis: list
    structure: list
    unit: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.basis)

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        out = np.empty(self.dim, dtype=object)
        out.fill(ZERO)
        for i in np.flatnonzero([bool(c) for c in x]):
            for j in np.flatnonzero([bool(c) for c in y]):
                for k, value in self.structure[i][j].items():
                    out[k] += x[i] * y[j] * value
        return out

    def element(self, index: int) -> np.ndarray:
        out = np.empty(self.dim, dtype=object)
        out.fill(ZERO)
        out[index] = ONE
        return out

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """
        Matrix of y -> x y
        """
        matrix = la.zeros(self.dim, self.dim)
        for j in range(self.dim):
            matrix[:, j] = self.multiply(x, self.element(j))
        return matrix

    def is_associative(self) -> bool:
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.multiply(self.element(i), self.element(j))
                for k in range(self.dim):
                    lhs = self.multiply(ij, self.element(k))
                    rhs = self.multiply(self.element(i), self.multiply(self.element(j), self.element(k)))
                    if any(lhs - rhs):
                        return False
        return True

    def is_unital(self) -> bool:
        for i in range(self.dim):
            e = self.element(i)
            if any(self.multiply(self.unit, e) - e) or any(self.multiply(e, self.unit) - e):
                return False
        return True

    def center_basis(self) -> list:
        """
        Basis of {x : x y = y x for every y}
        """
        rows = []
        for i in range(self.dim):
            for k in range(self.dim):
                rows.append([self.structure[m][i].get(k, ZERO) - self.structure[i][m].get(k, ZERO)
                             for m in range(self.dim)])
        if not rows:
            return []
        return la.nullspace(la.as_matrix(rows))

    @property
    def block_count(self) -> int:
        return len(self.center_basis())


def _tube_product(cat, upper, lower) -> dict:
    """
    upper . lower as {(a, r, c, u): coeff}
    """
    b2, t, c, w = upper
    a, s, b, v = lower
    if b != b2:
        return {}
    out = {}
    for r in cat.channels(t, s):
        for u in cat.channels(r, a):
            if not cat.n(c, r, u):
                continue
            vector = (TreeVector.basis(cat, (r, a), (r, u))
                      .split(0, t, s)
                      .fuse(1, v).split(1, b, s)
                      .fuse(0, w).split(0, c, t)
                      .fuse(1, r))
            value = vector.coefficient(((c, r), (c, u)))
            if value:
                out[(a, r, c, u)] = value
    return out


def tube_algebra(cat, g: int) -> TubeAlgebra:
    """
    The tube algebra of sector g: strands from I_g, winding strands from I_e
    """
    sector = cat.simples_of_grade(g)
    neutral = _neutral(cat)
    basis = [(a, s, b, v) for a in sector for s in neutral for b in sector
             for v in cat.channels(s, a) if cat.n(b, s, v)]
    index = {element: n for n, element in enumerate(basis)}
    structure = []
    for upper in basis:
        row = []
        for lower in basis:
            row.append({index[key]: value for key, value in _tube_product(cat, upper, lower).items()})
        structure.append(row)
    unit = np.empty(len(basis), dtype=object)
    unit.fill(ZERO)
    for a in sector:
        unit[index[(a, UNIT, a, a)]] = ONE
    logger.info("tube algebra of %s, sector %s: dimension %d", cat.name, cat.group.names[g], len(basis))
    return TubeAlgebra(cat, g, basis, structure, unit)


# -------------------------------------------------------------------------
# Center simples from the tube algebra
# -------------------------------------------------------------------------


@dataclass
class CenterSimples:
    sector: int
    count: int
    idempotents: list
    block_dims: list


def _recognise(value: complex, conductor: int):
    """
    Exact element of Q(i) matching a numerically located root, or None
    """
    re = Fraction(value.real).limit_denominator(ROOT_DENOMINATOR_LIMIT)
    im = Fraction(value.imag).limit_denominator(ROOT_DENOMINATOR_LIMIT)
    if abs(float(re) - value.real) > ROOT_TOLERANCE or abs(float(im) - value.imag) > ROOT_TOLERANCE:
        return None
    if im == 0:
        return Scalar(re)
    if conductor % 4:
        return None
    return Scalar(re) + Scalar(im) * Scalar.zeta(4)


def _scaled(vector: np.ndarray, value) -> np.ndarray:
    return np.array([c * value for c in vector], dtype=object)


def _coordinates(columns: np.ndarray, vector: np.ndarray) -> np.ndarray:
    solution = la.solve(columns, vector.reshape(-1, 1))
    if solution is None:
        raise NotSplit("a product of central elements left the centre")
    return solution[:, 0]


def _distinct(values) -> bool:
    return all(abs(a - b) > ROOT_TOLERANCE for n, a in enumerate(values) for b in values[n + 1:])


def center_simples(cat, g: int, attempts: int = 4) -> CenterSimples:
    """
    Primitive central idempotents of the tube algebra of sector g
    A generic central element z is diagonalised numerically on the centre,
    its eigenvalues are recognised in Q(i) and the Lagrange idempotents are
    checked exactly. Sectors whose eigenvalues do not lie in Q(i) raise
    NotSplit
    :param attempts: number of generic elements tried before giving up on
        distinct eigenvalues
    :return: CenterSimples, one idempotent and one block dimension per block
    """
    algebra = tube_algebra(cat, g)
    center = algebra.center_basis()
    if len(center) <= 1:
        dims = [algebra.dim] if center else []
        return CenterSimples(g, len(center), [algebra.unit] if center else [], dims)

    columns = la.as_matrix([list(v) for v in center]).T
    for attempt in range(attempts):
        z = np.empty(algebra.dim, dtype=object)
        z.fill(ZERO)
        for k, v in enumerate(center):
            z = z + _scaled(v, Scalar((k + 1) ** (attempt + 1)))
        action = la.zeros(len(center), len(center))
        for j, v in enumerate(center):
            action[:, j] = _coordinates(columns, algebra.multiply(z, v))
        numeric = np.array([[c.embed() for c in row] for row in action], dtype=complex)
        roots = list(np.linalg.eigvals(numeric))
        if _distinct(roots):
            break
        logger.debug("central element %d has repeated eigenvalues", attempt)
    else:
        raise NotSplit(f"no central element with distinct eigenvalues in sector {cat.group.names[g]}")

    exact = [_recognise(complex(r), cat.conductor) for r in roots]
    if any(x is None for x in exact):
        raise NotSplit(f"eigenvalues of sector {cat.group.names[g]} are not in Q(i)")

    idempotents = []
    for n, lam in enumerate(exact):
        e = algebra.unit
        for m, mu in enumerate(exact):
            if m != n:
                factor = z - _scaled(algebra.unit, mu)
                e = _scaled(algebra.multiply(e, factor), (lam - mu).inverse())
        idempotents.append(e)

    total = sum(idempotents[1:], idempotents[0])
    if any(total - algebra.unit):
        raise NotSplit("the idempotents do not sum to the unit")
    for e in idempotents:
        if any(algebra.multiply(e, e) - e):
            raise NotSplit("a Lagrange idempotent is not idempotent")
    dims = [la.rank(algebra.left_matrix(e)) for e in idempotents]
    return CenterSimples(g, len(idempotents), idempotents, dims)


def sector_summary(cat) -> list:
    """
    One record per grade: tube dimension, block count and, when the centre
    splits over Q(i), the block dimensions
    """
    records = []
    for g in cat.group.elements:
        algebra = tube_algebra(cat, g)
        record = {"grade": cat.group.names[g], "tube_dim": algebra.dim,
                  "blocks": algebra.block_count, "block_dims": None}
        try:
            record["block_dims"] = center_simples(cat, g).block_dims
        except NotSplit as exc:
            logger.warning("sector %s of %s: %s", record["grade"], cat.name, exc)
        records.append(record)
    return records


def check_bundled_center(cat, objects=None) -> list:
    """
    The bundled centre simples of each grade against the tube block count
    """
    objects = bundled_center(cat) if objects is None else objects
    records = []
    for g in cat.group.elements:
        listed = sum(1 for z in objects if z.grade == g)
        blocks = tube_algebra(cat, g).block_count
        records.append(gsn_stringnet.check_record(
            f"center simples of grade {cat.group.names[g]}", listed, blocks, listed == blocks))
    return records


# -------------------------------------------------------------------------
# String-net dimensions against hom spaces in the center
# -------------------------------------------------------------------------


def cylinder_check(x1: CenterObject, x2: CenterObject, h: int) -> dict:
    """
    KSN(cylinder; X1, X2*) against Hom(phi_h(X1), X2)
    """
    cat = x1.cat
    group = cat.group
    if x2.grade != group.conjugate(h, x1.grade):
        raise GradeMismatch(f"{x2.name} does not have grade h^-1 g h")
    t = gsn_surface.cylinder(group, x1.grade, h)
    lhs = gsn_stringnet.dim_ksn(cat, t, [x1, dual_object(x2)])
    rhs = hom_center_dim(crossing_phi(x1, h), x2)
    name = f"cylinder({x1.name}, {x2.name}; h={group.names[h]})"
    return gsn_stringnet.check_record(name, lhs, rhs, lhs == rhs)


def pants_check(x1: CenterObject, x2: CenterObject, x3: CenterObject) -> dict:
    """
    KSN(pants; X1, X2, X3*) against Hom(X1 (x) X2, X3)
    """
    cat = x1.cat
    group = cat.group
    if x3.grade != group.mul(x1.grade, x2.grade):
        raise GradeMismatch(f"{x3.name} does not have the grade of {x1.name} {x2.name}")
    t = gsn_surface.pants(group, x1.grade, x2.grade)
    lhs = gsn_stringnet.dim_ksn(cat, t, [x1, x2, dual_object(x3)])
    rhs = hom_center_dim(tensor_objects(x1, x2), x3)
    return gsn_stringnet.check_record(f"pants({x1.name}, {x2.name}; {x3.name})", lhs, rhs, lhs == rhs)


def genus2_check(x1: CenterObject, x2: CenterObject, x3: CenterObject, g: int = None,
                 h: int = None, handles=None, simples=None) -> dict:
    """
    KSN of the genus-2 surface with three boundary circles against
    Hom(1, phi_h(X3) (x) X1 (x) phi_g(X2) (x) H (x) H)
    """
    cat = x1.cat
    group = cat.group
    e = group.identity
    g = e if g is None else g
    h = e if h is None else h
    handles = list(handles) if handles else [(e, e), (e, e)]
    simples = bundled_center(cat) if simples is None else simples
    holonomies = [x1.grade, x2.grade, x3.grade]
    t = gsn_surface.build_surface(group, 2, holonomies,
                                  conjugators=[group.inverse(g), group.inverse(h)], handles=handles)
    lhs = gsn_stringnet.dim_ksn(cat, t, [x1, x2, x3])
    c = genus2_object(x1, x2, x3, holonomies, g, h, handles, simples)
    rhs = hom_center_dim(unit_object(cat), c)
    return gsn_stringnet.check_record(f"genus2({x1.name}, {x2.name}, {x3.name})", lhs, rhs, lhs == rhs)


def check_propositions(cat, kinds=("cylinder", "pants"), simples=None) -> list:
    """
    Every grade-compatible cylinder and pants instance over the given centre
    simples, plus every genus-2 instance with trivial handles and conjugators
    when asked for
    """
    simples = bundled_center(cat) if simples is None else simples
    group = cat.group
    records = []
    if "cylinder" in kinds:
        for x1 in simples:
            for h in group.elements:
                target = group.conjugate(h, x1.grade)
                for x2 in simples:
                    if x2.grade == target:
                        records.append(cylinder_check(x1, x2, h))
    if "pants" in kinds:
        for x1 in simples:
            for x2 in simples:
                grade = group.mul(x1.grade, x2.grade)
                for x3 in simples:
                    if x3.grade == grade:
                        records.append(pants_check(x1, x2, x3))
    if "genus2" in kinds:
        for x1 in simples:
            for x2 in simples:
                for x3 in simples:
                    if group.mul(x1.grade, x2.grade, x3.grade) == group.identity:
                        records.append(genus2_check(x1, x2, x3, simples=simples))
    failed = sum(1 for r in records if not r["pass"])
    if failed:
        logger.warning("%d of %d center checks failed over %s", failed, len(records), cat.name)
    return records
