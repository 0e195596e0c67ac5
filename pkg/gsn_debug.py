"""
gsn_debug.py
Readable renderings of tree vectors, exact matrices and triangulations,
and the step tracer used by the diagram engine
Tracing goes to the "gsn.trace" logger at DEBUG level
"""

import logging

import numpy as np

from extras import module_logger

logger = module_logger("trace")


def tracing() -> bool:
    return logger.isEnabledFor(logging.DEBUG)


def trace_step(name: str, before, after) -> None:
    """
    Log one local move of the graphical calculus
    :param name: the move, e.g. "fuse"
    :param before: vector the move was applied to
    :param after: the result
    :return: None
    """
    if tracing():
        logger.debug("%-7s %s  ->  %s", name, format_vector(before), format_vector(after))


def format_leaf(leaf) -> str:
    if isinstance(leaf, tuple):
        return f"{leaf[0]}[{leaf[1]}]"
    return str(leaf)


def format_key(key) -> str:
    leaves, labels = key
    if not leaves:
        return "<1>"
    return "<" + " ".join(format_leaf(x) for x in leaves) + " | " + " ".join(map(str, labels)) + ">"


def format_tree(tree) -> str:
    if tree[0] == "l":
        return format_leaf(tree[1])
    return f"({format_tree(tree[2])} {format_tree(tree[3])})_{tree[1]}"


def format_vector(vector, limit: int = 6) -> str:
    """
    :param vector: a TreeVector or a TreeBasisVector
    :param limit: how many terms to show before eliding
    :return: e.g. "z8^3 <1 2 | 1 0> + 1/2 <2 1 | 2 0>"
    """
    terms = getattr(vector, "terms", {})
    if not terms:
        return "0"
    render = format_tree if isinstance(next(iter(terms))[0], str) else format_key
    parts = [f"{value!r} {render(key)}" for key, value in sorted(terms.items(), key=lambda t: repr(t[0]))]
    if len(parts) > limit:
        parts = parts[:limit] + [f"... ({len(terms) - limit} more)"]
    return " + ".join(parts)


def format_matrix(matrix: np.ndarray) -> str:
    """
    Column-aligned text of an exact matrix
    """
    if matrix.size == 0:
        return f"[{matrix.shape[0]}x{matrix.shape[1]} empty]"
    cells = [[repr(x) for x in row] for row in matrix]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def pprint_matrix(matrix: np.ndarray) -> None:
    print(format_matrix(matrix))


def pprint_triangulation(t) -> None:
    """
    Prints each triangle as its three signed edges with their group labels
    :param t: a GTriangulation
    :return: None
    """
    names = t.group.names
    for index, triangle in enumerate(t.triangles):
        sides = []
        for edge, sign in triangle:
            arrow = "+" if sign > 0 else "-"
            sides.append(f"{arrow}e{edge}:{names[t.labels[edge]]}")
        print(f"T{index}  " + "  ".join(sides))
    for index, vertex in enumerate(t.vertices):
        print(f"v{index}  {vertex}")
