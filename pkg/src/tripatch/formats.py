"""Text file formats: control nets, polynomial surfaces, OBJ and JSON meshes.

Net file::

    degree 3 dim 3
    0 0 0          # b[0,0,3]
    2 0 2          # b[0,1,2]
    ...            # rows of constant i, i = 0 .. m

Poly file (coordinates numbered from 1)::

    dim 3
    1 1 0 1        # coord h k value: coordinate 1 has the term 1 * U^1 V^0
    1 3 0 -1/3

Numbers may be written as fractions (``1/3``).  ``#`` starts a comment.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .blossom import PolySurface
from .core import ControlNet, num_points
from .tessellate import TriangleMesh

MESH_FORMAT_NAME = "tripatch-mesh"
MESH_FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


def parse_number(token: str) -> float:
    try:
        if "/" in token:
            return float(Fraction(token))
        return float(token)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not a number: {token!r}") from None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def loads_net(text: str) -> ControlNet:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty net file")
    lineno, head = lines[0]
    if len(head) != 4 or head[0] != "degree" or head[2] != "dim":
        raise FormatError(f"line {lineno}: expected header 'degree M dim N', got {' '.join(head)!r}")
    try:
        m, n = int(head[1]), int(head[3])
    except ValueError:
        raise FormatError(f"line {lineno}: degree and dim must be integers") from None
    if m < 0 or n < 1:
        raise FormatError(f"line {lineno}: need degree >= 0 and dim >= 1")
    body = lines[1:]
    expected = num_points(m)
    if len(body) != expected:
        raise FormatError(
            f"degree {m} needs (m+1)(m+2)/2 = {expected} points, found {len(body)}"
        )
    pts = np.empty((expected, n))
    row, col = 0, 0
    for q, (lineno, toks) in enumerate(body):
        if len(toks) != n:
            raise FormatError(
                f"line {lineno} (row {row}, point {col}): expected {n} coordinates, got {len(toks)}"
            )
        pts[q] = [parse_number(t) for t in toks]
        col += 1
        if col > m - row:
            row, col = row + 1, 0
    return ControlNet(m, pts)


def parse_net(path) -> ControlNet:
    return loads_net(Path(path).read_text())


def dumps_net(net: ControlNet) -> str:
    out = [f"degree {net.degree} dim {net.dim}"]
    for i, row in enumerate(net.rows()):
        out.append(f"# row {i}")
        out.extend(" ".join(repr(float(x)) for x in p) for p in row)
    return "\n".join(out) + "\n"


def write_net(net: ControlNet, path) -> None:
    Path(path).write_text(dumps_net(net))


def loads_poly(text: str) -> PolySurface:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty poly file")
    lineno, head = lines[0]
    if len(head) != 2 or head[0] != "dim":
        raise FormatError(f"line {lineno}: expected header 'dim N'")
    n = int(head[1])
    if n < 1:
        raise FormatError(f"line {lineno}: dim must be positive")
    coords: list[dict] = [{} for _ in range(n)]
    for lineno, toks in lines[1:]:
        if len(toks) != 4:
            raise FormatError(f"line {lineno}: expected 'coord h k value'")
        try:
            c, h, k = int(toks[0]), int(toks[1]), int(toks[2])
        except ValueError:
            raise FormatError(f"line {lineno}: coord, h, k must be integers") from None
        if not 1 <= c <= n:
            raise FormatError(f"line {lineno}: coordinate {c} outside 1..{n}")
        if h < 0 or k < 0:
            raise FormatError(f"line {lineno}: negative exponent")
        if (h, k) in coords[c - 1]:
            raise FormatError(f"line {lineno}: duplicate term U^{h} V^{k} for coordinate {c}")
        coords[c - 1][(h, k)] = parse_number(toks[3])
    return PolySurface(coords)


def parse_poly(path) -> PolySurface:
    return loads_poly(Path(path).read_text())


def dumps_poly(surface: PolySurface) -> str:
    out = [f"dim {surface.dim}"]
    for c, terms in enumerate(surface.coords, start=1):
        for (h, k), value in sorted(terms.items()):
            out.append(f"{c} {h} {k} {value!r}")
    return "\n".join(out) + "\n"


def _fmt(x: float, digits: int) -> str:
    s = f"{x:.{digits}g}"
    return "0" if s == "-0" else s


def dumps_obj(mesh: TriangleMesh, digits: int = 12) -> str:
    if len(mesh.vertices) and mesh.dim != 3:
        raise ValueError(f"OBJ needs 3-d vertices, mesh has dimension {mesh.dim}; use JSON")
    lines = [f"v {' '.join(_fmt(float(x), digits) for x in v)}" for v in mesh.vertices]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in mesh.triangles]
    return "".join(line + "\n" for line in lines)


def write_obj(mesh: TriangleMesh, path, digits: int = 12) -> None:
    Path(path).write_text(dumps_obj(mesh, digits))


def mesh_to_dict(mesh: TriangleMesh, leaves=(), stats: dict | None = None) -> dict:
    """JSON-ready mesh with per-leaf provenance (label, depth, domain corners)."""
    return {
        "format": MESH_FORMAT_NAME,
        "version": MESH_FORMAT_VERSION,
        "dim": mesh.dim,
        "vertices": [[float(x) for x in v] for v in mesh.vertices],
        "triangles": [[int(i) for i in t] for t in mesh.triangles],
        "triangle_leaf": [int(i) for i in mesh.leaf_index],
        "leaves": [
            {
                "label": leaf.label,
                "depth": leaf.depth,
                "degree": leaf.net.degree,
                "domain": [[float(x) for x in c] for c in leaf.domain],
            }
            for leaf in leaves
        ],
        "stats": dict(stats or {}),
    }


def write_mesh_json(mesh: TriangleMesh, path, leaves=(), stats: dict | None = None) -> None:
    Path(path).write_text(json.dumps(mesh_to_dict(mesh, leaves, stats), indent=1) + "\n")
