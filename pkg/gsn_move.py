"""
gsn_move.py
The two elementary moves of the G-Ptolemy complex
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Flip:
    """
    Re-diagonalise the quadrilateral around an internal edge
    """
    edge: int

    def apply(self, t):
        import gsn_surface
        return gsn_surface.flip(t, self.edge)

    def __str__(self):
        return f"flip(e{self.edge})"


@dataclass(frozen=True)
class Gauge:
    """
    Relabel the edges at an internal marked point by a group element
    """
    vertex: int
    element: int

    def apply(self, t):
        import gsn_surface
        return gsn_surface.gauge(t, self.vertex, self.element)

    def __str__(self):
        return f"gauge(v{self.vertex}, {self.element})"


def apply_path(t, path):
    """
    :param t: starting GTriangulation
    :param path: sequence of Flip / Gauge
    :return: list of the triangulations visited, starting with t
    """
    visited = [t]
    for move in path:
        visited.append(move.apply(visited[-1]))
    return visited
