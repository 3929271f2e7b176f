"""Control nets, frame permutations and barycentric algebra.

A triangular net of degree ``m`` holds the points ``b[i, j, k]`` with
``i + j + k = m``.  They are stored flat, one row per value of ``i``
(the multiplicity of the first frame vertex ``r``)::

    b[0,0,m], b[0,1,m-1], ..., b[0,m,0],  b[1,0,m-1], ..., b[m,0,0]

so that ``net[i, j]`` addresses ``b[i, j, m - i - j]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

BARY_TOL = 1e-12
DET_TOL = 1e-12


class NetIndexError(IndexError):
    pass


class DegenerateFrameError(ValueError):
    """Three parameter points that do not form an affine frame."""


def num_points(degree: int) -> int:
    return (degree + 1) * (degree + 2) // 2


def flat_index(degree: int, i: int, j: int) -> int:
    if i < 0 or j < 0 or i + j > degree:
        raise NetIndexError(f"index (i={i}, j={j}) is outside the degree-{degree} triangle")
    return i * (degree + 1) - i * (i - 1) // 2 + j


@lru_cache(maxsize=None)
def net_indices(degree: int) -> tuple[tuple[int, int, int], ...]:
    """All ``(i, j, k)`` of the degree-``degree`` triangle, in storage order."""
    return tuple((i, j, degree - i - j) for i in range(degree + 1) for j in range(degree - i + 1))


@dataclass(frozen=True, eq=False)
class ControlNet:
    """Triangular Bezier net of a given degree with points in R^n."""

    degree: int
    points: np.ndarray

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"degree must be non-negative, got {self.degree}")
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise ValueError(f"points must be a 2-d array of shape (count, dim), got {pts.shape}")
        expected = num_points(self.degree)
        if pts.shape[0] != expected:
            raise ValueError(
                f"a degree-{self.degree} net needs {expected} points, got {pts.shape[0]}"
            )
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Sequence[float]]]) -> ControlNet:
        """Build from explicit rows; row ``i`` must hold ``m - i + 1`` points."""
        m = len(rows) - 1
        for i, row in enumerate(rows):
            if len(row) != m - i + 1:
                raise ValueError(f"row {i} should hold {m - i + 1} points, got {len(row)}")
        return cls(m, [p for row in rows for p in row])

    @classmethod
    def from_flat(cls, points: Sequence[Sequence[float]]) -> ControlNet:
        """Infer the degree from a flat row-concatenated point list."""
        count = len(points)
        m = 0
        while num_points(m) < count:
            m += 1
        if num_points(m) != count:
            raise ValueError(f"{count} points is not a triangular number (m+1)(m+2)/2")
        return cls(m, points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]

    def __getitem__(self, ij: tuple[int, int]) -> np.ndarray:
        i, j = ij
        return self.points[flat_index(self.degree, i, j)]

    def get(self, i: int, j: int) -> np.ndarray:
        return self[i, j]

    def rows(self) -> list[np.ndarray]:
        out = []
        start = 0
        for i in range(self.degree + 1):
            width = self.degree - i + 1
            out.append(self.points[start:start + width])
            start += width
        return out

    def corners(self) -> np.ndarray:
        """Corner points at ``r``, ``s``, ``t`` (in that order)."""
        m = self.degree
        return np.array([self[m, 0], self[0, m], self[0, 0]])

    def edge_row(self, first: int, second: int) -> np.ndarray:
        """Points on the frame edge from slot ``first`` to slot ``second``.

        Entry ``q`` has multiplicity ``m - q`` on ``first`` and ``q`` on ``second``.
        """
        if first == second or not {first, second} <= {0, 1, 2}:
            raise ValueError(f"bad edge slots ({first}, {second})")
        m = self.degree
        out = []
        for q in range(m + 1):
            e = [0, 0, 0]
            e[first] = m - q
            e[second] = q
            out.append(self[e[0], e[1]])
        return np.array(out)

    def allclose(self, other: ControlNet, rtol: float = 1e-10, atol: float = 1e-12) -> bool:
        return (
            self.degree == other.degree
            and self.dim == other.dim
            and np.allclose(self.points, other.points, rtol=rtol, atol=atol)
        )

    def __repr__(self) -> str:
        return f"ControlNet(degree={self.degree}, dim={self.dim})"


def net_get(net: ControlNet, i: int, j: int) -> np.ndarray:
    return net[i, j]


@dataclass(frozen=True)
class FramePermutation:
    """Reordering of the three frame slots.

    The permuted net is expressed over the frame ``(x[o0], x[o1], x[o2])``
    where ``x`` is the old frame and ``o = order``.
    """

    order: tuple[int, int, int] = (0, 1, 2)

    def __post_init__(self):
        if sorted(self.order) != [0, 1, 2]:
            raise ValueError(f"not a permutation of (0, 1, 2): {self.order}")
        object.__setattr__(self, "order", tuple(int(o) for o in self.order))

    def then(self, other: FramePermutation) -> FramePermutation:
        """Permutation equal to applying ``self`` first, then ``other``."""
        return FramePermutation(tuple(self.order[other.order[s]] for s in range(3)))

    def apply_to_frame(self, frame: Sequence) -> tuple:
        return tuple(frame[o] for o in self.order)

    def __pow__(self, n: int) -> FramePermutation:
        out = IDENTITY
        for _ in range(n):
            out = out.then(self)
        return out


IDENTITY = FramePermutation((0, 1, 2))
# (x, y, z) -> (y, x, z); plays the role of "transposej"
SWAP_FIRST_TWO = FramePermutation((1, 0, 2))
# (x, y, z) -> (y, z, x); plays the role of "transposek"
ROTATE_LEFT = FramePermutation((1, 2, 0))

ALL_PERMUTATIONS = tuple(
    FramePermutation(o) for o in ((0, 1, 2), (1, 0, 2), (1, 2, 0), (2, 1, 0), (2, 0, 1), (0, 2, 1))
)


@lru_cache(maxsize=None)
def _permutation_gather(degree: int, order: tuple[int, int, int]) -> np.ndarray:
    idx = []
    for e in net_indices(degree):
        old = [0, 0, 0]
        for slot in range(3):
            old[order[slot]] = e[slot]
        idx.append(flat_index(degree, old[0], old[1]))
    arr = np.array(idx, dtype=np.intp)
    arr.setflags(write=False)
    return arr


def permute_net(net: ControlNet, perm: FramePermutation) -> ControlNet:
    """Re-express ``net`` over the permuted frame (pure relabelling, no arithmetic)."""
    if perm.order == (0, 1, 2):
        return net
    return ControlNet(net.degree, net.points[_permutation_gather(net.degree, perm.order)])


# -- barycentric coordinates --------------------------------------------------

def as_bary(p: Iterable[float], tol: float = BARY_TOL) -> np.ndarray:
    """Validate a barycentric triple and return it as a float array."""
    arr = np.asarray(tuple(p), dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"barycentric point needs 3 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"non-finite barycentric point {arr}")
    if abs(arr.sum() - 1.0) > tol:
        raise ValueError(f"barycentric components must sum to 1, got {arr.sum()!r}")
    return arr


@dataclass(frozen=True)
class BarycentricPoint:
    """``lam * r + mu * s + nu * t``; components may be negative."""

    lam: float
    mu: float
    nu: float

    def __post_init__(self):
        as_bary((self.lam, self.mu, self.nu))

    def __iter__(self):
        return iter((self.lam, self.mu, self.nu))

    def as_array(self) -> np.ndarray:
        return np.array([self.lam, self.mu, self.nu])


def barycentric_wrt(p, f1, f2, f3) -> np.ndarray:
    """Coordinates of ``p`` w.r.t. the frame ``(f1, f2, f3)``.

    All four points are given by their coordinates in a common reference
    frame.  Exterior points get negative coordinates.
    """
    frame = np.column_stack([as_bary(f1), as_bary(f2), as_bary(f3)])
    det = np.linalg.det(frame)
    if abs(det) <= DET_TOL:
        raise DegenerateFrameError(f"frame is flat (det = {det:.3e})")
    return np.linalg.solve(frame, as_bary(p))


def triangle_matrix(tri) -> np.ndarray:
    """3x3 matrix whose rows are the barycentric corners of ``tri``."""
    return np.array([as_bary(c) for c in tri])


def signed_area(tri) -> float:
    """Area of ``tri`` as a signed fraction of the reference triangle."""
    return float(np.linalg.det(np.asarray(tri, dtype=float)))


def map_through(local, tri) -> np.ndarray:
    """Map coordinates local to ``tri`` into the reference frame of ``tri``'s corners."""
    return np.asarray(local, dtype=float) @ np.asarray(tri, dtype=float)


def plane_points_matrix(frame) -> np.ndarray:
    """Stack three plane points and check that they are affinely independent."""
    pts = np.array(frame, dtype=float)
    if pts.shape != (3, 2):
        raise ValueError(f"frame needs three (u, v) points, got shape {pts.shape}")
    e1 = pts[1] - pts[0]
    e2 = pts[2] - pts[0]
    scale = max(np.abs(pts).max(), 1.0)
    if abs(e1[0] * e2[1] - e1[1] * e2[0]) <= DET_TOL * scale * scale:
        raise DegenerateFrameError(f"plane frame {pts.tolist()} is flat")
    return pts
