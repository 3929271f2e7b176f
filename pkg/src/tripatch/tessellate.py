"""Recursive subdivision, mesh assembly with vertex welding, and error metrics."""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .core import ControlNet, flat_index, net_indices
from .decasteljau import eval_point
from .strategies import SCHEMES, subdivide

DEFAULT_WELD_REL = 1e-9


@dataclass(frozen=True, eq=False)
class PatchLeaf:
    net: ControlNet
    domain: np.ndarray  # rows are corners in ORIGINAL-frame barycentrics
    depth: int
    label: str = ""

    @property
    def area(self) -> float:
        """Signed area as a fraction of the original triangle."""
        return float(np.linalg.det(self.domain))


@dataclass(frozen=True, eq=False)
class Refinement:
    leaves: list[PatchLeaf]
    decas_calls: int
    nonconvex_steps: int


def refine(
    net: ControlNet,
    scheme: str = "regular",
    depth: int = 1,
    omit_center: bool = False,
    threads: int = 1,
) -> Refinement:
    """Uniformly subdivide ``depth`` times and return leaves plus sweep totals."""
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if omit_center and scheme != "regular":
        raise ValueError("omit_center is only defined for the regular scheme")

    leaves = [PatchLeaf(net, np.eye(3), 0, "")]
    calls = nonconvex = 0
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for level in range(1, depth + 1):
            if pool is None:
                outcomes = [subdivide(leaf.net, scheme) for leaf in leaves]
            else:
                outcomes = list(pool.map(lambda lf: subdivide(lf.net, scheme), leaves))
            nxt = []
            for leaf, outcome in zip(leaves, outcomes):
                calls += outcome.decas_calls
                nonconvex += outcome.nonconvex_steps
                for child in outcome.children:
                    if omit_center and child.label == "bac":
                        continue
                    label = f"{leaf.label}/{child.label}" if leaf.label else child.label
                    nxt.append(PatchLeaf(child.net, child.domain @ leaf.domain, level, label))
            leaves = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    return Refinement(leaves, calls, nonconvex)


def subdivide_recursive(
    net: ControlNet, scheme: str = "regular", depth: int = 1, omit_center: bool = False
) -> list[PatchLeaf]:
    return refine(net, scheme, depth, omit_center).leaves


@lru_cache(maxsize=None)
def grid_triangles(degree: int) -> np.ndarray:
    """Flat-index triangles of the degree-``degree`` control grid (``degree**2`` rows)."""
    if degree < 1:
        raise ValueError("a degree-0 net has no triangles")
    m = degree
    tris = []
    for i in range(m):
        for j in range(m - i):
            tris.append((flat_index(m, i, j), flat_index(m, i, j + 1), flat_index(m, i + 1, j)))
            if i + j <= m - 2:
                tris.append(
                    (flat_index(m, i, j + 1), flat_index(m, i + 1, j + 1), flat_index(m, i + 1, j))
                )
    arr = np.array(tris, dtype=np.intp)
    arr.setflags(write=False)
    return arr


def net_to_triangles(net: ControlNet) -> np.ndarray:
    """Control-grid triangles as an array of shape ``(degree**2, 3, dim)``."""
    return net.points[grid_triangles(net.degree)]


@dataclass(eq=False)
class TriangleMesh:
    vertices: np.ndarray
    triangles: np.ndarray
    leaf_index: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.intp))

    @property
    def dim(self) -> int:
        return self.vertices.shape[1] if self.vertices.ndim == 2 else 0

    def edge_counts(self) -> dict[tuple[int, int], int]:
        counts: dict[tuple[int, int], int] = {}
        for tri in self.triangles:
            for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
                key = (int(min(a, b)), int(max(a, b)))
                counts[key] = counts.get(key, 0) + 1
        return counts

    def boundary_edges(self) -> list[tuple[int, int]]:
        return [e for e, n in self.edge_counts().items() if n == 1]


def _weld(points: np.ndarray, eps: float) -> tuple[np.ndarray, np.ndarray]:
    """Merge points closer than ``eps``; returns (unique points, remap)."""
    remap = np.empty(len(points), dtype=np.intp)
    uniq: list[np.ndarray] = []
    if eps <= 0:
        seen: dict[bytes, int] = {}
        for q, p in enumerate(points):
            key = (p + 0.0).tobytes()  # folds -0.0 into 0.0
            if key not in seen:
                seen[key] = len(uniq)
                uniq.append(p)
            remap[q] = seen[key]
    else:
        grid: dict[tuple[int, ...], list[int]] = {}
        offsets = list(itertools.product((-1, 0, 1), repeat=points.shape[1]))
        for q, p in enumerate(points):
            cell = tuple(np.floor(p / eps).astype(np.int64))
            hit = -1
            for off in offsets:
                for u in grid.get(tuple(c + o for c, o in zip(cell, off)), ()):
                    if np.linalg.norm(uniq[u] - p) <= eps:
                        hit = u
                        break
                if hit >= 0:
                    break
            if hit < 0:
                hit = len(uniq)
                uniq.append(p)
                grid.setdefault(cell, []).append(hit)
            remap[q] = hit
    dim = points.shape[1] if points.ndim == 2 else 0
    return (np.array(uniq) if uniq else np.zeros((0, dim))), remap


def _triangle_area(p0, p1, p2) -> float:
    e1, e2 = p1 - p0, p2 - p0
    gram = float(e1 @ e1) * float(e2 @ e2) - float(e1 @ e2) ** 2
    return 0.5 * np.sqrt(max(gram, 0.0))


def default_weld_eps(points: np.ndarray) -> float:
    if len(points) == 0:
        return 0.0
    diag = float(np.linalg.norm(points.max(axis=0) - points.min(axis=0)))
    return DEFAULT_WELD_REL * diag


def assemble_mesh(leaves, weld_eps: float | None = None) -> TriangleMesh:
    """Triangulate every leaf's control grid and weld coincident vertices.

    Leaves whose domain is reversed relative to the original frame have their
    triangles flipped so that the whole mesh shares one winding.  ``weld_eps``
    defaults to ``1e-9`` times the bounding-box diagonal; ``0`` welds only
    bitwise-equal points.
    """
    leaves = list(leaves)
    if not leaves:
        return TriangleMesh(np.zeros((0, 3)), np.zeros((0, 3), dtype=np.intp))
    pts, tris, owner = [], [], []
    base = 0
    for n, leaf in enumerate(leaves):
        net = leaf.net
        if net.degree >= 1:
            local = grid_triangles(net.degree)
            if leaf.area < 0:
                local = local[:, ::-1]
            tris.append(local + base)
            owner.append(np.full(len(local), n, dtype=np.intp))
        pts.append(net.points)
        base += len(net)
    points = np.vstack(pts)
    if weld_eps is None:
        weld_eps = default_weld_eps(points)
    if weld_eps < 0:
        raise ValueError("weld_eps must be non-negative")
    verts, remap = _weld(points, weld_eps)
    if not tris:
        return TriangleMesh(verts, np.zeros((0, 3), dtype=np.intp), np.zeros(0, dtype=np.intp))
    tri = remap[np.vstack(tris)]
    owner = np.concatenate(owner)
    keep = []
    for q, (i0, i1, i2) in enumerate(tri):
        if i0 == i1 or i1 == i2 or i0 == i2:
            continue
        p0, p1, p2 = verts[i0], verts[i1], verts[i2]
        longest = max(np.linalg.norm(p1 - p0), np.linalg.norm(p2 - p1), np.linalg.norm(p0 - p2))
        if 2.0 * _triangle_area(p0, p1, p2) <= weld_eps * longest:
            continue
        keep.append(q)
    keep = np.array(keep, dtype=np.intp)
    return TriangleMesh(verts, tri[keep].reshape(-1, 3), owner[keep])


def leaf_grid_params(leaf: PatchLeaf) -> np.ndarray:
    """Original-frame barycentrics of each of the leaf's control-grid nodes."""
    m = leaf.net.degree
    if m == 0:
        local = np.full((1, 3), 1 / 3)
    else:
        local = np.array(net_indices(m), dtype=float) / m
    return local @ leaf.domain


def approximation_error(leaves, reference: ControlNet) -> float:
    """Largest distance from a leaf control point to the surface point it sits over."""
    worst = 0.0
    for leaf in leaves:
        for p, b in zip(leaf_grid_params(leaf), leaf.net.points):
            worst = max(worst, float(np.linalg.norm(b - eval_point(reference, p))))
    return worst
