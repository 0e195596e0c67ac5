"""
gsn_category.py
Skeletal data of a G-graded spherical fusion category:
simples with grades, duals and dimensions, the fusion tensor N,
the F-symbol table, and the derived global and per-grade dimensions

F-symbol keys follow (a, b, c, d, e, f, alpha, beta, gamma, delta) where
    ((a b)_e c)_d = sum_f F[...] (a (b c)_f)_d
alpha labels a b -> e, beta e c -> d, gamma b c -> f, delta a f -> d
"""

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from math import lcm
from pathlib import Path

import numpy as np

import gsn_diagram
from extras import DivisionByZero, ParseError, Violation, module_logger, raise_first
from gsn_algebra import ONE, ZERO, FiniteGroup, Scalar, group_validate
from gsn_constants import UNIT
import gsn_linalg as la

logger = module_logger(__name__)


@dataclass(frozen=True)
class SimpleObject:
    index: int
    name: str
    grade: int
    dual: int
    qdim: Scalar


@dataclass(frozen=True)
class FBlock:
    """
    One F-matrix F^{abc}_d with its inverse
    rows are (e, alpha, beta) labels, cols are (f, gamma, delta) labels
    """
    rows: tuple
    cols: tuple
    forward: np.ndarray
    backward: np.ndarray


class CategoryData:
    """
    Immutable once built; every query is a pure lookup or a cached derivation
    """

    def __init__(self, group: FiniteGroup, conductor: int, simples: list,
                 fusion: np.ndarray, fsymbols: dict, name: str = "",
                 default_fsymbol: Scalar = None, rotations: dict = None,
                 center_data: list = None):
        self.group = group
        self.conductor = conductor
        self.simples = list(simples)
        self.N = np.asarray(fusion, dtype=np.int64)
        self.name = name
        self.given_rotations = dict(rotations or {})
        self.center_data = list(center_data or [])
        self.default_fsymbol = default_fsymbol
        self.unit_violations = []
        self.fsym = self._complete_fsymbols(dict(fsymbols), default_fsymbol)
        self._blocks = {}

    # --- simple objects ---

    @property
    def rank(self) -> int:
        return len(self.simples)

    @property
    def unit(self) -> int:
        return UNIT

    def dual(self, i: int) -> int:
        return self.simples[i].dual

    def grade(self, i: int) -> int:
        return self.simples[i].grade

    def qdim(self, i: int) -> Scalar:
        return self.simples[i].qdim

    def simple_name(self, i: int) -> str:
        return self.simples[i].name

    def index_of(self, name) -> int:
        if isinstance(name, (int, np.integer)):
            return int(name)
        for simple in self.simples:
            if simple.name == str(name):
                return simple.index
        raise ParseError(f"unknown simple {name!r}")

    def simples_of_grade(self, g: int) -> tuple:
        return tuple(s.index for s in self.simples if s.grade == g)

    def scalar(self, value) -> Scalar:
        return Scalar(value).lift(self.conductor) if not isinstance(value, Scalar) else value

    # --- fusion ---

    def n(self, i: int, j: int, k: int) -> int:
        return int(self.N[i, j, k])

    def channels(self, a: int, b: int) -> tuple:
        return tuple(int(c) for c in np.flatnonzero(self.N[a, b]))

    @cached_property
    def is_multiplicity_free(self) -> bool:
        return bool(self.N.max(initial=0) <= 1)

    # --- F-symbols ---

    def _tree_labels(self, a, b, c, d, left: bool) -> tuple:
        labels = []
        for x in range(self.rank):
            if left:
                first, second = self.N[a, b, x], self.N[x, c, d]
            else:
                first, second = self.N[b, c, x], self.N[a, x, d]
            for m1 in range(first):
                for m2 in range(second):
                    labels.append((x, m1, m2))
        return tuple(labels)

    def _complete_fsymbols(self, given: dict, default) -> dict:
        table = {}
        for a, b, c, d in itertools.product(range(self.rank), repeat=4):
            rows = self._tree_labels(a, b, c, d, True)
            cols = self._tree_labels(a, b, c, d, False)
            if not rows:
                continue
            unit_leg = UNIT in (a, b, c)
            for (e, al, be), (f, ga, de) in itertools.product(rows, cols):
                key = (a, b, c, d, e, f, al, be, ga, de)
                if unit_leg:
                    value = ONE if self._unit_pairing(a, b, c, d, e, f, al, be, ga, de) else ZERO
                    if key in given and given[key] != value:
                        self.unit_violations.append(
                            Violation("unit_normalization", key[:6],
                                      f"expected {value}, got {given[key]}"))
                    table[key] = value
                elif key in given:
                    table[key] = given[key]
                elif default is not None and not any((al, be, ga, de)):
                    table[key] = default
        for key, value in given.items():
            table.setdefault(key, value)
        return {k: v.lift(lcm(v.conductor, self.conductor)) for k, v in table.items() if v}

    @staticmethod
    def _unit_pairing(a, b, c, d, e, f, al, be, ga, de) -> bool:
        if a == UNIT:
            return e == b and f == d and be == ga
        if b == UNIT:
            return e == a and f == c and be == de
        return e == d and f == b and al == de

    def f_block(self, a: int, b: int, c: int, d: int) -> FBlock:
        """
        :return: the F-matrix F^{abc}_d and its exact inverse
        """
        key = (a, b, c, d)
        block = self._blocks.get(key)
        if block is None:
            rows = self._tree_labels(a, b, c, d, True)
            cols = self._tree_labels(a, b, c, d, False)
            forward = la.zeros(len(rows), len(cols))
            for r, (e, al, be) in enumerate(rows):
                for s, (f, ga, de) in enumerate(cols):
                    value = self.fsym.get((a, b, c, d, e, f, al, be, ga, de))
                    if value is not None:
                        forward[r, s] = value
            backward = la.inverse(forward) if len(rows) == len(cols) and rows else forward.T
            block = FBlock(rows, cols, forward, backward)
            self._blocks[key] = block
        return block

    def F(self, a: int, b: int, c: int, d: int, e: int, f: int) -> Scalar:
        """
        Multiplicity-free lookup of F^{abc}_d[e, f]
        """
        return self.fsym.get((a, b, c, d, e, f, 0, 0, 0, 0), ZERO)

    def Finv(self, a: int, b: int, c: int, d: int, f: int, e: int) -> Scalar:
        """
        Multiplicity-free lookup of the inverse, (a (b c)_f)_d -> ((a b)_e c)_d
        """
        block = self.f_block(a, b, c, d)
        try:
            r = block.cols.index((f, 0, 0))
            s = block.rows.index((e, 0, 0))
        except ValueError:
            return ZERO
        return block.backward[r, s]

    # --- dimensions ---

    @cached_property
    def global_dimension(self) -> Scalar:
        total = ZERO
        for s in self.simples:
            total = total + s.qdim * s.qdim
        return total

    def grades(self) -> tuple:
        return tuple(sorted({s.grade for s in self.simples}))

    @cached_property
    def neutral_dimension(self) -> Scalar:
        return homogeneous_dimension(self, self.group.identity)

    def coupling_dim(self, i: int, j: int, k: int) -> int:
        return coupling_dim(self, i, j, k)

    def __repr__(self):
        return f"CategoryData({self.name!r}, rank={self.rank}, |G|={self.group.order})"


# -------------------------------------------------------------------------
# Operations
# -------------------------------------------------------------------------


def homogeneous_dimension(c: CategoryData, g: int) -> Scalar:
    """
    Sum of d_i^2 over simples of grade g (0 for an empty grade)
    """
    total = ZERO
    for i in c.simples_of_grade(g):
        total = total + c.qdim(i) * c.qdim(i)
    return total


def coupling_dim(c: CategoryData, i: int, j: int, k: int) -> int:
    """
    dim Hom(1, i (x) j (x) k) = N_{ij}^{k*}
    """
    return c.n(i, j, c.dual(k))


def _structure_violations(c: CategoryData) -> list:
    violations = list(group_validate(c.group))
    g = c.group
    unit = c.simples[UNIT] if c.simples else None
    if unit is None or unit.grade != g.identity or unit.dual != UNIT or unit.qdim != 1:
        violations.append(Violation("unit_object", (UNIT,)))
    for s in c.simples:
        if not 0 <= s.dual < c.rank or c.dual(s.dual) != s.index:
            violations.append(Violation("dual_involution", (s.index,)))
            continue
        if not 0 <= s.grade < g.order:
            violations.append(Violation("grade_range", (s.index,)))
            continue
        if c.grade(s.dual) != g.inverse(s.grade):
            violations.append(Violation("dual_grade", (s.index,)))
        if c.qdim(s.dual) != s.qdim:
            violations.append(Violation("dual_dimension", (s.index,)))
    used = {s.grade for s in c.simples}
    for h in g.elements:
        if h not in used:
            violations.append(Violation("empty_grade", (h,)))
    return violations


def _fusion_violations(c: CategoryData) -> list:
    violations = []
    r = c.rank
    if c.N.shape != (r, r, r) or (c.N < 0).any():
        return [Violation("fusion_shape", c.N.shape)]
    g = c.group
    for i, j, k in np.argwhere(c.N > 0):
        if g.mul(c.grade(i), c.grade(j)) != c.grade(k):
            violations.append(Violation("fusion_grading", (int(i), int(j), int(k))))
    identity = np.eye(r, dtype=np.int64)
    for j in np.flatnonzero((c.N[UNIT] != identity).any(axis=1) | (c.N[:, UNIT] != identity).any(axis=1)):
        violations.append(Violation("fusion_unit", (int(j),)))
    for i in range(r):
        expected = np.zeros(r, dtype=np.int64)
        expected[c.dual(i)] = 1
        if not np.array_equal(c.N[i, :, UNIT], expected):
            violations.append(Violation("fusion_duality", (i,)))
    for i, j in itertools.product(range(r), repeat=2):
        total = ZERO
        for k in c.channels(i, j):
            total = total + c.n(i, j, k) * c.qdim(k)
        if total != c.qdim(i) * c.qdim(j):
            violations.append(Violation("dimension_consistency", (i, j)))
        for k in range(r):
            if c.n(i, j, k) != c.n(j, c.dual(k), c.dual(i)):
                violations.append(Violation("frobenius_reciprocity", (i, j, k)))
    return violations


def _dimension_violations(c: CategoryData) -> list:
    violations = []
    if c.global_dimension.is_zero():
        violations.append(Violation("global_dimension", ()))
    neutral = c.neutral_dimension
    for h in c.grades():
        if homogeneous_dimension(c, h) != neutral:
            violations.append(Violation("homogeneous_dimension", (h,)))
    return violations


def _invertibility_violations(c: CategoryData) -> list:
    violations = []
    for a, b, cc, d in itertools.product(range(c.rank), repeat=4):
        try:
            block = c.f_block(a, b, cc, d)
        except DivisionByZero:
            violations.append(Violation("f_invertible", (a, b, cc, d)))
            continue
        if len(block.rows) != len(block.cols):
            violations.append(Violation("f_square", (a, b, cc, d)))
        elif block.rows and not la.is_identity(la.matmul(block.forward, block.backward)):
            violations.append(Violation("f_invertible", (a, b, cc, d)))
    return violations


def validate_pentagon(c: CategoryData) -> list:
    """
    Full contraction of the pentagon identity over every admissible tuple
        F^{fcd}_e F^{abl}_e = sum_h F^{abc}_g F^{ahd}_e F^{bcd}_k
    :return: list of Violation, each carrying the tuple and both sides
    """
    violations = []
    n = c.N
    for a, b, cc, d in itertools.product(range(c.rank), repeat=4):
        for f, l in itertools.product(c.channels(a, b), c.channels(cc, d)):
            for g, k in itertools.product(c.channels(f, cc), c.channels(b, l)):
                for e in c.channels(g, d):
                    if n[a, k, e]:
                        violations.extend(_pentagon_at(c, (a, b, cc, d, e, f, g, l, k)))
    logger.debug("pentagon check on %s: %d violations", c.name, len(violations))
    return violations


def _pentagon_at(c: CategoryData, labels: tuple) -> list:
    a, b, cc, d, e, f, g, l, k = labels
    fs = c.fsym
    n = c.N
    violations = []
    for mu1, mu2, mu3, nu1, rho1, rho2 in itertools.product(
            range(n[a, b, f]), range(n[f, cc, g]), range(n[g, d, e]),
            range(n[cc, d, l]), range(n[b, l, k]), range(n[a, k, e])):
        lhs = ZERO
        for nu2 in range(n[f, l, e]):
            x = fs.get((f, cc, d, e, g, l, mu2, mu3, nu1, nu2))
            y = fs.get((a, b, l, e, f, k, mu1, nu2, rho1, rho2))
            if x is not None and y is not None:
                lhs = lhs + x * y
        rhs = ZERO
        for h in range(c.rank):
            for s1, s2, t1 in itertools.product(
                    range(n[b, cc, h]), range(n[a, h, g]), range(n[h, d, k])):
                x = fs.get((a, b, cc, g, f, h, mu1, mu2, s1, s2))
                y = fs.get((a, h, d, e, g, k, s2, mu3, t1, rho2))
                z = fs.get((b, cc, d, k, h, l, s1, t1, nu1, rho1))
                if x is not None and y is not None and z is not None:
                    rhs = rhs + x * y * z
        if lhs != rhs:
            violations.append(Violation("pentagon", labels, f"lhs={lhs} rhs={rhs}"))
    return violations


def validate_category(c: CategoryData) -> list:
    """
    Every invariant of the category data, structural checks first
    The pentagon and pivotal checks only run on structurally sound data
    """
    violations = _structure_violations(c)
    if violations:
        return violations
    violations = _fusion_violations(c)
    if violations:
        return violations
    violations = c.unit_violations + _dimension_violations(c) + _invertibility_violations(c)
    if violations:
        return violations
    violations = validate_pentagon(c)
    if violations:
        return violations
    if c.is_multiplicity_free:
        violations = gsn_diagram.pivotal_violations(c)
    return violations


# -------------------------------------------------------------------------
# Loading
# -------------------------------------------------------------------------


def group_from_dict(data: dict) -> FiniteGroup:
    try:
        mult = data["mult"]
        identity = int(data.get("identity", 0))
    except (KeyError, TypeError) as error:
        raise ParseError(f"bad group description: {error}") from error
    group = FiniteGroup(mult, identity, data.get("names"))
    if "order" in data and int(data["order"]) != group.order:
        raise ParseError(f"group order {data['order']} does not match its table")
    return group


def category_from_dict(data: dict, name: str = "") -> CategoryData:
    """
    Build (but do not validate) a CategoryData from its JSON form
    """
    try:
        group = group_from_dict(data["group"])
        conductor = int(data.get("conductor", 1))
        simples = []
        for index, entry in enumerate(data["simples"]):
            grade = group.index(entry.get("grade", group.identity))
            simples.append(SimpleObject(index, str(entry.get("name", index)), grade,
                                        int(entry.get("dual", index)),
                                        Scalar.from_json(entry.get("qdim", 1), conductor)))
        rank = len(simples)
        fusion = np.zeros((rank, rank, rank), dtype=np.int64)
        if "fusion_table" in data:
            for i, row in enumerate(data["fusion_table"]):
                for j, k in enumerate(row):
                    fusion[i, j, int(k)] = 1
        for i, j, k, mult in data.get("fusion", []):
            fusion[int(i), int(j), int(k)] = int(mult)
        fsymbols = {}
        for entry in data.get("fsymbols", []):
            if len(entry) == 7:
                key = tuple(int(x) for x in entry[:6]) + (0, 0, 0, 0)
            else:
                key = tuple(int(x) for x in entry[:10])
            fsymbols[key] = Scalar.from_json(entry[-1], conductor)
        default = data.get("default_fsymbol")
        default = Scalar.from_json(default, conductor) if default is not None else None
        rotations = {tuple(int(x) for x in entry[:3]): Scalar.from_json(entry[3], conductor)
                     for entry in data.get("rotations", [])}
    except (KeyError, TypeError, ValueError, IndexError) as error:
        raise ParseError(f"bad category description: {error}") from error
    return CategoryData(group, conductor, simples, fusion, fsymbols,
                        name=str(data.get("name", name)), default_fsymbol=default,
                        rotations=rotations, center_data=data.get("center", []))


def load_category(path) -> CategoryData:
    """
    Read, build and fully validate a category file
    :param path: path of the JSON file
    :return: validated CategoryData
    :raises ParseError: unreadable or malformed file
    :raises ValidationError: first failed invariant
    """
    path = Path(path)
    try:
        with open(path) as handle:
            data = json.load(handle)
    except json.JSONDecodeError as error:
        raise ParseError(f"{path}: {error}") from error
    category = category_from_dict(data, path.stem)
    raise_first(validate_category(category))
    logger.info("loaded category %s: %d simples, |G| = %d, D = %s",
                category.name, category.rank, category.group.order,
                category.global_dimension)
    return category
