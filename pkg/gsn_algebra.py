"""
gsn_algebra.py
Exact scalars in a cyclotomic field Q(zeta_n) and finite groups given by
their multiplication table

A Scalar keeps phi(n) rational coefficients in the power basis
1, zeta, ..., zeta^(phi(n)-1), i.e. the remainder modulo the n-th cyclotomic
polynomial. Scalars of different conductors are lifted to the lcm before
any arithmetic, so the canonical form is unique for a fixed conductor
"""

import itertools
from fractions import Fraction
from functools import cache, reduce
from math import gcd, lcm

import numpy as np
import sympy

from extras import DivisionByZero, ParseError, Violation, module_logger

logger = module_logger(__name__)

_X = sympy.Symbol("x")


@cache
def cyclotomic_coefficients(n: int) -> tuple:
    """
    :param n: conductor
    :return: integer coefficients of Phi_n, lowest degree first
    """
    poly = sympy.Poly(sympy.cyclotomic_poly(n, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@cache
def units(n: int) -> tuple:
    """
    The exponents k with gcd(k, n) = 1, i.e. the Galois group of Q(zeta_n)
    """
    return tuple(k for k in range(1, n + 1) if gcd(k, n) == 1) if n > 1 else (1,)


@cache
def _trace_weights(n: int) -> tuple:
    # Tr(zeta^i) / phi(n), from Ramanujan sums
    weights = []
    for i in range(int(sympy.totient(n))):
        m = n // gcd(i, n)
        weights.append(Fraction(int(sympy.mobius(m)), int(sympy.totient(m))))
    return tuple(weights)


def _reduce(n: int, powers) -> tuple:
    coeffs = cyclotomic_coefficients(n)
    degree = len(coeffs) - 1
    folded = [Fraction(0)] * n
    for k, c in enumerate(powers):
        if c:
            folded[k % n] += c
    for k in range(n - 1, degree - 1, -1):
        c = folded[k]
        if c:
            folded[k] = Fraction(0)
            for j in range(degree):
                if coeffs[j]:
                    folded[k - degree + j] -= c * coeffs[j]
    return tuple(folded[:degree])


def _coerce(value) -> "Scalar":
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction, np.integer)):
        return Scalar(value)
    raise TypeError(f"cannot use {type(value).__name__} as a Scalar")


class Scalar:
    """
    Element of Q(zeta_conductor) in canonical form
    Immutable; supports + - * / ** with ints, Fractions and other Scalars
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, value=0, conductor: int = 1):
        value = Fraction(value)
        degree = len(cyclotomic_coefficients(conductor)) - 1
        coeffs = [Fraction(0)] * degree
        coeffs[0] = value
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, key, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _make(cls, conductor: int, coeffs: tuple) -> "Scalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "conductor", conductor)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def from_powers(cls, conductor: int, powers) -> "Scalar":
        """
        :param conductor: n
        :param powers: rational c_k for sum c_k zeta_n^k, any length
        :return: canonical Scalar
        """
        return cls._make(conductor, _reduce(conductor, [Fraction(c) for c in powers]))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Scalar":
        powers = [0] * n
        powers[k % n] = 1
        return cls.from_powers(n, powers)

    # --- conductor handling ---

    def lift(self, conductor: int) -> "Scalar":
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"cannot lift conductor {self.conductor} to {conductor}")
        step = conductor // self.conductor
        powers = [Fraction(0)] * conductor
        for i, c in enumerate(self.coeffs):
            powers[i * step] = c
        return Scalar._make(conductor, _reduce(conductor, powers))

    def _align(self, other) -> tuple:
        other = _coerce(other)
        if other.conductor == self.conductor:
            return self, other
        n = lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n)

    # --- predicates ---

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, (Scalar, int, Fraction, np.integer)):
            return NotImplemented
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        trace = sum((c * w for c, w in zip(self.coeffs, _trace_weights(self.conductor))),
                    Fraction(0))
        return hash(trace)

    # --- arithmetic ---

    def __add__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return Scalar._make(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar._make(self.conductor, tuple(c * other for c in self.coeffs))
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        if a.is_rational():
            return b * a.coeffs[0]
        if b.is_rational():
            return a * b.coeffs[0]
        powers = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        powers[i + j] += x * y
        return Scalar._make(a.conductor, _reduce(a.conductor, powers))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """
        a^-1 = (product of the other Galois conjugates) / norm(a)
        :return: the multiplicative inverse
        """
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return Scalar(1 / self.coeffs[0], self.conductor)
        others = reduce(lambda x, y: x * y,
                        (self.galois(k) for k in units(self.conductor) if k != 1))
        norm = (self * others).rational()
        return others * (1 / norm)

    def __truediv__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        base = self if exponent >= 0 else self.inverse()
        result = Scalar(1, self.conductor)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    # --- Galois action and embeddings ---

    def galois(self, k: int) -> "Scalar":
        """
        Apply zeta -> zeta^k
        """
        n = self.conductor
        powers = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            powers[(i * k) % n] += c
        return Scalar._make(n, _reduce(n, powers))

    def conjugate(self) -> "Scalar":
        return self.galois(-1)

    def embed(self, k: int = 1) -> complex:
        """
        Numerical value under zeta -> exp(2 pi i k / n)
        """
        n = self.conductor
        angles = 2j * np.pi * k * np.arange(len(self.coeffs)) / n
        return complex(np.dot(np.array([float(c) for c in self.coeffs]), np.exp(angles)))

    # --- text and JSON forms ---

    def to_json(self):
        if self.is_rational() and self.coeffs[0].denominator == 1:
            return int(self.coeffs[0])
        return {"conductor": self.conductor,
                "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data, conductor: int = 1) -> "Scalar":
        """
        Accepts an int, a "p/q" string or {"conductor", "coeffs"}
        Coefficient lists may be longer than phi(n); they are reduced
        """
        if isinstance(data, bool):
            raise ParseError(f"bad scalar {data!r}")
        if isinstance(data, (int, str)):
            try:
                return Scalar(Fraction(data), conductor)
            except (ValueError, ZeroDivisionError) as error:
                raise ParseError(f"bad scalar {data!r}") from error
        if isinstance(data, dict) and "coeffs" in data:
            n = int(data.get("conductor", conductor))
            powers = []
            for entry in data["coeffs"]:
                if isinstance(entry, (list, tuple)):
                    powers.append(Fraction(int(entry[0]), int(entry[1])))
                else:
                    powers.append(Fraction(entry))
            scalar = cls.from_powers(n, powers)
            return scalar.lift(lcm(n, conductor))
        raise ParseError(f"bad scalar {data!r}")

    def __repr__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                power = f"z{self.conductor}" + (f"^{i}" if i > 1 else "")
                terms.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(terms)


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_inv(a: Scalar) -> Scalar:
    return a.inverse()


ZERO = Scalar(0)
ONE = Scalar(1)


# -------------------------------------------------------------------------
# Finite groups
# -------------------------------------------------------------------------


class FiniteGroup:
    """
    A finite group stored as its Cayley table
    Elements are the integers 0 .. order-1
    """

    def __init__(self, mult, identity: int = 0, names=None):
        self.mult = np.asarray(mult, dtype=np.int64)
        self.order = int(self.mult.shape[0]) if self.mult.ndim == 2 else 0
        self.identity = identity
        self.names = list(names) if names else [str(g) for g in range(self.order)]
        self.inv = self._inverses()

    def _inverses(self) -> np.ndarray:
        inv = np.full(self.order, -1, dtype=np.int64)
        if self.mult.ndim != 2 or self.mult.shape != (self.order, self.order):
            return inv
        for g in range(self.order):
            hits = np.flatnonzero(self.mult[g] == self.identity)
            if hits.size:
                inv[g] = hits[0]
        return inv

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, *elements: int) -> int:
        result = self.identity
        for g in elements:
            result = int(self.mult[result, g])
        return result

    def inverse(self, g: int) -> int:
        return int(self.inv[g])

    def conjugate(self, h: int, g: int) -> int:
        """
        :return: h^-1 g h
        """
        return self.mul(self.inverse(h), g, h)

    def commutator(self, a: int, b: int) -> int:
        return self.mul(a, b, self.inverse(a), self.inverse(b))

    def index(self, name) -> int:
        if isinstance(name, (int, np.integer)):
            return int(name)
        try:
            return self.names.index(str(name))
        except ValueError as error:
            raise ParseError(f"unknown group element {name!r}") from error

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    def __eq__(self, other):
        return (isinstance(other, FiniteGroup)
                and np.array_equal(self.mult, other.mult)
                and self.identity == other.identity)

    def __hash__(self):
        return hash((self.order, self.identity, self.mult.tobytes()))

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def group_validate(g: FiniteGroup) -> list:
    """
    Check the group axioms exhaustively
    :param g: the group
    :return: list of Violation, empty iff g is a group
    """
    n = g.order
    m = g.mult
    if m.ndim != 2 or m.shape != (n, n):
        raise ParseError(f"multiplication table has shape {m.shape}")
    if n and (m.min() < 0 or m.max() >= n):
        raise ParseError("multiplication table entry out of range")
    if not 0 <= g.identity < n:
        raise ParseError(f"identity {g.identity} out of range")

    violations = []
    elements = np.arange(n)
    for a in np.flatnonzero((m[g.identity] != elements) | (m[:, g.identity] != elements)):
        violations.append(Violation("identity", (int(a),)))
    left = m[m]
    right = m[elements[:, None, None], m[None, :, :]]
    for a, b, c in np.argwhere(left != right):
        violations.append(Violation("associativity", (int(a), int(b), int(c))))
    for a in elements:
        h = g.inv[a]
        if h < 0 or m[h, a] != g.identity:
            violations.append(Violation("inverse", (int(a),)))
    logger.debug("group of order %d: %d violations", n, len(violations))
    return violations


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], 0, ["e"])


def cyclic_group(n: int) -> FiniteGroup:
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    names = ["e"] + [f"g{k}" if n > 2 else "g" for k in range(1, n)]
    return FiniteGroup(table, 0, names)


def symmetric_group(k: int) -> FiniteGroup:
    """
    Built by composing permutations, (p q)(i) = p(q(i))
    """
    perms = list(itertools.permutations(range(k)))
    position = {p: i for i, p in enumerate(perms)}
    table = [[position[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    names = ["".join(str(i) for i in p) for p in perms]
    return FiniteGroup(table, 0, names)
