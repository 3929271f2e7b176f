"""Triangular de Casteljau algorithm: evaluation and subdivision versions.

Stage ``l`` of a sweep at ``a = (lam, mu, nu)`` computes

    b^l[i,j,k] = lam * b^(l-1)[i+1,j,k] + mu * b^(l-1)[i,j+1,k] + nu * b^(l-1)[i,j,k+1]

so that ``b^l[i,j,k]`` is the polar value ``f(a^l, r^i, s^j, t^k)``.

The subdivision version harvests the three faces of this tetrahedron that
touch the apex.  Face frames are canonical: the face opposite ``r`` is over
``(a, s, t)``, the one opposite ``s`` over ``(r, a, t)`` and the one
opposite ``t`` over ``(r, s, a)``.
"""
from __future__ import annotations

import contextlib
from contextvars import ContextVar
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .core import ControlNet, as_bary, flat_index, net_indices, num_points

FACES = ("ast", "rat", "rsa")
DEGENERATE_TOL = 1e-12


@dataclass
class SweepLog:
    """Counts of de Casteljau sweeps performed while the log was active."""

    sweeps: int = 0
    evaluations: int = 0
    nonconvex: int = 0
    points: list = field(default_factory=list)


_active_logs: ContextVar[tuple[SweepLog, ...]] = ContextVar("_active_logs", default=())


@contextlib.contextmanager
def count_sweeps() -> Iterator[SweepLog]:
    """Record every sweep made in this context (nested contexts all see them).

    ``sweeps`` counts subdivision sweeps (``sdecas3``/``subdecas3``);
    ``evaluations`` counts point evaluations; ``nonconvex`` counts
    subdivision sweeps whose point had a negative barycentric weight.
    """
    log = SweepLog()
    token = _active_logs.set(_active_logs.get() + (log,))
    try:
        yield log
    finally:
        _active_logs.reset(token)


def _record(a: np.ndarray, subdivision: bool) -> None:
    for log in _active_logs.get():
        if subdivision:
            log.sweeps += 1
            log.points.append(tuple(float(x) for x in a))
            if np.any(a < 0):
                log.nonconvex += 1
        else:
            log.evaluations += 1


@lru_cache(maxsize=None)
def _stage_gather(degree: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Indices into a degree-``degree`` layer feeding each entry of the next layer."""
    ir, js, kt = [], [], []
    for i, j, _ in net_indices(degree - 1):
        ir.append(flat_index(degree, i + 1, j))
        js.append(flat_index(degree, i, j + 1))
        kt.append(flat_index(degree, i, j))
    return tuple(np.array(x, dtype=np.intp) for x in (ir, js, kt))


def _stage(layer: np.ndarray, degree: int, a: np.ndarray) -> np.ndarray:
    ir, js, kt = _stage_gather(degree)
    return a[0] * layer[ir] + a[1] * layer[js] + a[2] * layer[kt]


@lru_cache(maxsize=None)
def _face_harvest(m: int, face: str) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Per layer ``l``: (source indices in layer ``l``, destination indices in the face net)."""
    out = []
    for l in range(m + 1):
        d = m - l
        if face == "ast":
            pairs = [(flat_index(d, 0, j), flat_index(m, l, j)) for j in range(d + 1)]
        elif face == "rat":
            pairs = [(flat_index(d, i, 0), flat_index(m, i, l)) for i in range(d + 1)]
        elif face == "rsa":
            pairs = [(flat_index(d, i, d - i), flat_index(m, i, d - i)) for i in range(d + 1)]
        else:
            raise ValueError(f"unknown face {face!r}; expected one of {FACES}")
        src, dst = zip(*pairs)
        out.append((np.array(src, dtype=np.intp), np.array(dst, dtype=np.intp)))
    return tuple(out)


def _sweep(net: ControlNet, a: np.ndarray) -> Iterator[np.ndarray]:
    layer = net.points
    yield layer
    for d in range(net.degree, 0, -1):
        layer = _stage(layer, d, a)
        yield layer


@dataclass(frozen=True, eq=False)
class Tetrahedron:
    """All layers of one sweep; ``layers[l]`` is a degree ``m - l`` triangle."""

    degree: int
    layers: tuple[np.ndarray, ...]

    def __getitem__(self, lij: tuple[int, int, int]) -> np.ndarray:
        l, i, j = lij
        return self.layers[l][flat_index(self.degree - l, i, j)]

    def layer(self, l: int) -> ControlNet:
        return ControlNet(self.degree - l, self.layers[l])

    @property
    def apex(self) -> np.ndarray:
        return self.layers[-1][0]


def eval_tetrahedron(net: ControlNet, a) -> Tetrahedron:
    a = as_bary(a)
    _record(a, subdivision=False)
    return Tetrahedron(net.degree, tuple(_sweep(net, a)))


def eval_point(net: ControlNet, a) -> np.ndarray:
    """Surface point ``F(a)`` (apex of the tetrahedron)."""
    a = as_bary(a)
    _record(a, subdivision=False)
    layer = net.points
    for d in range(net.degree, 0, -1):
        layer = _stage(layer, d, a)
    return layer[0].copy()


def face_is_degenerate(a, face: str) -> bool:
    """True when the face frame is flat, i.e. ``a`` lies on the edge opposite the replaced vertex."""
    return abs(as_bary(a)[FACES.index(face)]) <= DEGENERATE_TOL


@dataclass(frozen=True, eq=False)
class SubdivisionTriple:
    net_ast: ControlNet
    net_rat: ControlNet
    net_rsa: ControlNet
    degenerate: tuple[bool, bool, bool]

    def face(self, name: str) -> ControlNet:
        return {"ast": self.net_ast, "rat": self.net_rat, "rsa": self.net_rsa}[name]

    def is_degenerate(self, name: str) -> bool:
        return self.degenerate[FACES.index(name)]


def _harvest(net: ControlNet, a: np.ndarray, faces: tuple[str, ...]) -> dict[str, ControlNet]:
    _record(a, subdivision=True)
    m = net.degree
    plans = {f: _face_harvest(m, f) for f in faces}
    outs = {f: np.empty((num_points(m), net.dim)) for f in faces}
    for l, layer in enumerate(_sweep(net, a)):
        for f in faces:
            src, dst = plans[f][l]
            outs[f][dst] = layer[src]
    return {f: ControlNet(m, outs[f]) for f in faces}


def sdecas3(net: ControlNet, a) -> SubdivisionTriple:
    """Split the net at ``a`` into the nets over ``(a,s,t)``, ``(r,a,t)``, ``(r,s,a)``."""
    a = as_bary(a)
    nets = _harvest(net, a, FACES)
    flags = tuple(bool(abs(x) <= DEGENERATE_TOL) for x in a)
    return SubdivisionTriple(nets["ast"], nets["rat"], nets["rsa"], flags)


def subdecas3(net: ControlNet, a, face: str) -> ControlNet:
    """Only the ``face`` net of :func:`sdecas3` (one sweep, one harvested face)."""
    if face not in FACES:
        raise ValueError(f"unknown face {face!r}; expected one of {FACES}")
    return _harvest(net, as_bary(a), (face,))[face]


def sdecas3_faces(net: ControlNet, a, faces) -> dict[str, ControlNet]:
    """One sweep harvesting the requested subset of faces."""
    faces = tuple(faces)
    for f in faces:
        if f not in FACES:
            raise ValueError(f"unknown face {f!r}; expected one of {FACES}")
    return _harvest(net, as_bary(a), faces)
