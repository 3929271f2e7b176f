"""Polar forms (blossoms) of polynomial surfaces and their control nets."""
from __future__ import annotations

import itertools
import math
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .core import ControlNet, DegenerateFrameError, as_bary, net_indices, plane_points_matrix

MAX_POLAR_DEGREE = 12


class PlanePoint(NamedTuple):
    u: float
    v: float


class PolySurface:
    """Polynomial surface ``(u, v) -> R^n`` given by sparse monomial coefficients.

    ``coords[c]`` maps an exponent pair ``(h, k)`` to the coefficient of
    ``U**h * V**k`` in coordinate ``c``.  Zero coefficients are dropped and
    the total degree is the largest ``h + k`` that remains.
    """

    def __init__(self, coords: Sequence[Mapping[tuple[int, int], float]]):
        if len(coords) == 0:
            raise ValueError("a surface needs at least one coordinate")
        cleaned = []
        for c, terms in enumerate(coords):
            out = {}
            for (h, k), value in terms.items():
                h, k = int(h), int(k)
                if h < 0 or k < 0:
                    raise ValueError(f"coordinate {c}: negative exponent in ({h}, {k})")
                if value != 0:
                    out[(h, k)] = float(value)
            cleaned.append(out)
        self.coords: tuple[dict[tuple[int, int], float], ...] = tuple(cleaned)
        self.degree = max((h + k for terms in cleaned for (h, k) in terms), default=0)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __call__(self, u: float, v: float) -> np.ndarray:
        return np.array([
            sum(c * u**h * v**k for (h, k), c in terms.items()) for terms in self.coords
        ])

    def __repr__(self) -> str:
        return f"PolySurface(dim={self.dim}, degree={self.degree})"


def polar_monomial(h: int, k: int, m: int, args: Sequence[Sequence[float]]) -> float:
    """Polar form of ``U**h V**k`` viewed as a degree-``m`` polynomial."""
    if h < 0 or k < 0 or h + k > m:
        raise ValueError(f"monomial U^{h} V^{k} does not fit in degree {m}")
    if len(args) != m:
        raise ValueError(f"polar form of degree {m} takes {m} arguments, got {len(args)}")
    if m > MAX_POLAR_DEGREE:
        raise ValueError(
            f"degree {m} exceeds {MAX_POLAR_DEGREE}; subset enumeration would be too expensive"
        )
    us = [float(a[0]) for a in args]
    vs = [float(a[1]) for a in args]
    total = 0.0
    everything = range(m)
    for I in itertools.combinations(everything, h):
        rest = [q for q in everything if q not in I]
        pu = math.prod(us[q] for q in I)
        for J in itertools.combinations(rest, k):
            total += pu * math.prod(vs[q] for q in J)
    scale = math.factorial(h) * math.factorial(k) * math.factorial(m - h - k) / math.factorial(m)
    return scale * total


def polar_eval(surface: PolySurface, args: Sequence[Sequence[float]]) -> np.ndarray:
    """Evaluate the polar form of ``surface`` at ``surface.degree`` plane points."""
    m = surface.degree
    if len(args) != m:
        raise ValueError(f"surface of degree {m} needs {m} polar arguments, got {len(args)}")
    cache: dict[tuple[int, int], float] = {}
    out = np.zeros(surface.dim)
    for c, terms in enumerate(surface.coords):
        for hk, coeff in terms.items():
            if hk not in cache:
                cache[hk] = polar_monomial(hk[0], hk[1], m, args)
            out[c] += coeff * cache[hk]
    return out


def net_from_polynomial(surface: PolySurface, frame: Sequence[Sequence[float]]) -> ControlNet:
    """Control net of ``surface`` over the plane triangle ``frame = (r, s, t)``.

    Entry ``(i, j, k)`` is the polar value at ``i`` copies of ``r``, ``j`` of
    ``s`` and ``k`` of ``t``.
    """
    r, s, t = plane_points_matrix(frame)
    m = surface.degree
    pts = [polar_eval(surface, [r] * i + [s] * j + [t] * k) for i, j, k in net_indices(m)]
    return ControlNet(m, pts)


def blossom_from_net(net: ControlNet, args) -> np.ndarray:
    """Polar value of the net's surface at ``net.degree`` barycentric points.

    Direct sum over all ways of sending each argument to one of the frame
    vertices; terms are grouped by how many arguments went to ``r`` and ``s``.
    """
    m = net.degree
    if len(args) != m:
        raise ValueError(f"degree-{m} net needs {m} blossom arguments, got {len(args)}")
    weights = {(0, 0): 1.0}
    for a in args:
        lam, mu, nu = as_bary(a)
        nxt: dict[tuple[int, int], float] = {}
        for (i, j), w in weights.items():
            nxt[(i + 1, j)] = nxt.get((i + 1, j), 0.0) + w * lam
            nxt[(i, j + 1)] = nxt.get((i, j + 1), 0.0) + w * mu
            nxt[(i, j)] = nxt.get((i, j), 0.0) + w * nu
        weights = nxt
    out = np.zeros(net.dim)
    for (i, j), w in weights.items():
        out += w * net[i, j]
    return out


def net_wrt_frame_oracle(net: ControlNet, p1, p2, p3) -> ControlNet:
    """Control net of the same surface over the frame ``(p1, p2, p3)``.

    Builds the six-index simplex of polar values
    ``b[i,j,k; l1,l2,l3] = f(r^i, s^j, t^k, p1^l1, p2^l2, p3^l3)`` by
    recursion on the ``l`` indices and reads off ``b[0,0,0; l1,l2,l3]``.
    Deliberately independent of the de Casteljau code.
    """
    ps = [as_bary(p) for p in (p1, p2, p3)]
    if abs(np.linalg.det(np.array(ps))) <= 1e-12:
        raise DegenerateFrameError("target frame is flat")
    m = net.degree
    memo: dict[tuple, np.ndarray] = {}

    def value(i, j, k, l):
        key = (i, j, k, l)
        if key in memo:
            return memo[key]
        if l == (0, 0, 0):
            out = net.points[_flat(m, i, j)]
        else:
            h = next(q for q in range(3) if l[q] > 0)
            lower = tuple(l[q] - (q == h) for q in range(3))
            u, v, w = ps[h]
            out = (
                u * value(i + 1, j, k, lower)
                + v * value(i, j + 1, k, lower)
                + w * value(i, j, k + 1, lower)
            )
        memo[key] = out
        return out

    return ControlNet(m, [value(0, 0, 0, (l1, l2, l3)) for l1, l2, l3 in net_indices(m)])


def _flat(m, i, j):
    return i * (m + 1) - i * (i - 1) // 2 + j
