"""
gsn_fileio.py
Everything that reads or writes files: categories (bundled or by path),
triangulated surfaces, boundary labels and the JSON reports

Surface files look like
    {"group": {...} (optional, defaults to the category's group),
     "vertices": ["boundary", "marked", ...],
     "edges": [{"from": 0, "to": 1, "label": "e", "boundary": true}, ...],
     "triangles": [["0+", "1+", "2-"], ...],
     "boundaries": [{"edges": ["0+"], "holonomy": "g"}, ...],
     "genus": 0}
A side is either "<edge><sign>" or a pair [edge, sign]
"""

import json
import re
from pathlib import Path

from extras import ParseError, module_logger, raise_first
import gsn_center
from gsn_category import category_from_dict, group_from_dict, load_category
from gsn_constants import BUNDLED_CATEGORIES, DATA_DIR, VertexKind
from gsn_surface import BoundaryCircle, Edge, GTriangulation, validate_triangulation

logger = module_logger(__name__)

_SIDE = re.compile(r"^\s*(\d+)\s*([+-])\s*$")


def read_json(path):
    path = Path(path)
    try:
        with open(path) as handle:
            return json.load(handle)
    except json.JSONDecodeError as error:
        raise ParseError(f"{path}: {error}") from error


def category_path(name_or_path) -> Path:
    """
    A bundled category name ("vec", "ising", ...) or a file path
    """
    if str(name_or_path) in BUNDLED_CATEGORIES:
        return DATA_DIR / BUNDLED_CATEGORIES[str(name_or_path)]
    return Path(name_or_path)


def open_category(name_or_path):
    """
    :raises OSError: missing file
    :raises ParseError: malformed file
    :raises ValidationError: the category fails one of its invariants
    """
    return load_category(category_path(name_or_path))


def unchecked_category(name_or_path):
    """
    Build a category without validating it, so that its violations can be
    reported rather than raised
    """
    path = category_path(name_or_path)
    return category_from_dict(read_json(path), path.stem)


# -------------------------------------------------------------------------
# Surfaces
# -------------------------------------------------------------------------


def parse_side(item) -> tuple:
    if isinstance(item, str):
        match = _SIDE.match(item)
        if not match:
            raise ParseError(f"bad side {item!r}")
        return int(match.group(1)), 1 if match.group(2) == "+" else -1
    try:
        edge, sign = item
        return int(edge), 1 if int(sign) > 0 else -1
    except (TypeError, ValueError) as error:
        raise ParseError(f"bad side {item!r}") from error


def format_side(side) -> str:
    edge, sign = side
    return f"{edge}{'+' if sign > 0 else '-'}"


def surface_from_dict(data: dict, group) -> GTriangulation:
    """
    Build a triangulation and check it
    :param data: decoded surface file
    :param group: grading group used when the file carries none
    :raises ParseError: malformed entry
    :raises ValidationError: a face relation or a boundary holonomy fails
    """
    try:
        if "group" in data:
            group = group_from_dict(data["group"])
        vertices = data["vertices"]
        if isinstance(vertices, int):
            vertices = [VertexKind.MARKED] * vertices
        vertices = tuple(str(v) for v in vertices)
        edges, labels = [], []
        for entry in data["edges"]:
            edges.append(Edge(int(entry["from"]), int(entry["to"]), bool(entry.get("boundary", False))))
            labels.append(group.index(entry.get("label", group.identity)))
        triangles = tuple(tuple(parse_side(s) for s in triangle) for triangle in data["triangles"])
        boundaries = tuple(BoundaryCircle(tuple(parse_side(s) for s in b["edges"]),
                                          group.index(b.get("holonomy", group.identity)))
                           for b in data.get("boundaries", []))
        genus = int(data.get("genus", 0))
    except (KeyError, TypeError, ValueError) as error:
        raise ParseError(f"bad surface description: {error}") from error
    if any(v not in (VertexKind.MARKED, VertexKind.BOUNDARY) for v in vertices):
        raise ParseError(f"vertex kinds must be {VertexKind.MARKED!r} or {VertexKind.BOUNDARY!r}")
    t = GTriangulation(group, vertices, tuple(edges), tuple(labels), triangles, boundaries, genus)
    raise_first(validate_triangulation(t))
    return t


def surface_to_dict(t: GTriangulation) -> dict:
    names = t.group.names
    return {
        "vertices": list(t.vertices),
        "edges": [{"from": edge.tail, "to": edge.head, "label": names[g], "boundary": edge.boundary}
                  for edge, g in zip(t.edges, t.labels)],
        "triangles": [[format_side(s) for s in triangle] for triangle in t.triangles],
        "boundaries": [{"edges": [format_side(s) for s in b.sides], "holonomy": names[b.holonomy]}
                       for b in t.boundaries],
        "genus": t.genus,
    }


def load_surface(path, group) -> GTriangulation:
    t = surface_from_dict(read_json(path), group)
    logger.info("loaded surface %s: %r", path, t)
    return t


# -------------------------------------------------------------------------
# Boundary labels
# -------------------------------------------------------------------------


def labels_from_list(cat, entries) -> list:
    """
    Each entry is the name of a bundled center object ("1" is the unit),
    optionally followed by "*" for its dual, or a full center-object dict
    """
    bundled = None
    out = []
    for entry in entries:
        if isinstance(entry, dict):
            out.append(gsn_center.center_object_from_dict(cat, entry))
            continue
        name = str(entry)
        dual = name.endswith("*")
        name = name.rstrip("*")
        if name == "1":
            z = gsn_center.unit_object(cat)
        else:
            if bundled is None:
                bundled = gsn_center.bundled_center(cat)
            z = gsn_center.center_by_name(bundled, name)
        out.append(gsn_center.dual_object(z) if dual else z)
    return out


def load_labels(cat, path) -> list:
    data = read_json(path)
    if isinstance(data, dict):
        data = data.get("labels", [])
    if not isinstance(data, list):
        raise ParseError(f"{path}: expected a list of center labels")
    labels = labels_from_list(cat, data)
    logger.info("loaded %d boundary labels from %s", len(labels), path)
    return labels


def save_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as handle:
        handle.write(text)
    logger.info("wrote %s", path)
