"""Subdivision schemes built from a fixed sequence of de Casteljau sweeps.

Every intermediate net is tracked together with its frame: a three-letter
label and the barycentric coordinates (in the parent frame) of its three
corners.  Splitting a net over ``(x, y, z)`` at a point ``p`` yields faces
that are relabelled point-first:

    replace x -> (p, y, z)      replace y -> (p, x, z)      replace z -> (p, x, y)

This is the naming the schemes are described in (``art``, ``bat``,
``cba``, ...).  The sweep counter in :mod:`tripatch.decasteljau` is what
reports the number of calls; nothing here is hard-coded.

Regular subdivision needs at least four sweeps: each sweep creates only one
new corner, and the four target triangles ``abt``, ``bac``, ``crb``,
``sca`` cannot all be produced in three.  The last regular step splits at
``(-1, 1, 1)``, a nonconvex combination; :attr:`SubdivisionOutcome.nonconvex_steps`
reports such steps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import (
    IDENTITY,
    ROTATE_LEFT,
    SWAP_FIRST_TWO,
    ControlNet,
    DegenerateFrameError,
    FramePermutation,
    barycentric_wrt,
    flat_index,
    permute_net,
)
from .decasteljau import FACES, count_sweeps, sdecas3_faces, subdecas3

SCHEMES = ("regular", "diamond", "spiderweb")

MID_SECOND_THIRD = (0.0, 0.5, 0.5)
CENTROID = (1 / 3, 1 / 3, 1 / 3)

# canonical face frame -> point-first frame
_POINT_FIRST = {"ast": IDENTITY, "rat": SWAP_FIRST_TWO, "rsa": ROTATE_LEFT**2}

# final fix-ups of the regular scheme
_REGULAR_FIXUPS = {
    "bat": SWAP_FIRST_TWO,
    "cba": ROTATE_LEFT,
    "cbr": SWAP_FIRST_TWO.then(ROTATE_LEFT),
    "cas": ROTATE_LEFT**2,
}


class Child(NamedTuple):
    label: str
    net: ControlNet
    domain: np.ndarray  # rows are the corners, in parent barycentrics


@dataclass(frozen=True, eq=False)
class SubdivisionOutcome:
    children: tuple[Child, ...]
    decas_calls: int
    nonconvex_steps: int = 0

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.children)

    def __getitem__(self, label: str) -> Child:
        for c in self.children:
            if c.label == label:
                return c
        raise KeyError(label)


class _Patch(NamedTuple):
    label: str
    net: ControlNet
    corners: np.ndarray


def _root(net: ControlNet) -> _Patch:
    return _Patch("rst", net, np.eye(3))


def _permute(patch: _Patch, perm: FramePermutation) -> _Patch:
    return _Patch(
        "".join(perm.apply_to_frame(patch.label)),
        permute_net(patch.net, perm),
        patch.corners[list(perm.order)],
    )


def _split(patch: _Patch, name: str, local, keep: tuple[str, ...]) -> list[_Patch]:
    """One sweep of ``patch`` at ``local`` (coordinates w.r.t. the patch frame)."""
    local = np.asarray(local, dtype=float)
    if len(keep) == 1:
        nets = {keep[0]: subdecas3(patch.net, local, keep[0])}
    else:
        nets = sdecas3_faces(patch.net, local, keep)
    point = local @ patch.corners
    out = []
    for face in keep:
        slot = FACES.index(face)
        corners = patch.corners.copy()
        corners[slot] = point
        label = list(patch.label)
        label[slot] = name
        canonical = _Patch("".join(label), nets[face], corners)
        out.append(_permute(canonical, _POINT_FIRST[face]))
    return out


def _outcome(patches, log) -> SubdivisionOutcome:
    children = tuple(Child(p.label, p.net, p.corners) for p in patches)
    return SubdivisionOutcome(children, log.sweeps, log.nonconvex)


def subdivide_regular(net: ControlNet, conform_edges: bool = True) -> SubdivisionOutcome:
    """Four congruent children ``abt, bac, crb, sca`` in four sweeps.

    The ``c r`` edge of ``crb`` and the ``a c`` edge of ``bac`` come out of
    the nonconvex sweep, so they differ in the last bits from the rows a
    neighbouring patch computes for the same curves.  With ``conform_edges``
    the third sweep also harvests its ``(a, r, c)`` face and both rows are
    taken from that sweep instead, which keeps adjacent patches bitwise
    identical along shared edges.  The sweep count is unchanged.
    """
    with count_sweeps() as log:
        art, ars = _split(_root(net), "a", MID_SECOND_THIRD, ("rat", "rsa"))
        # b = (0, 1/2, 1/2) w.r.t. (a, r, t)
        bat, bar = _split(art, "b", MID_SECOND_THIRD, ("rat", "rsa"))
        # c = (0, 1/2, 1/2) w.r.t. (a, r, s)
        if conform_edges:
            cas, car = _split(ars, "c", MID_SECOND_THIRD, ("rat", "rsa"))
        else:
            (cas,) = _split(ars, "c", MID_SECOND_THIRD, ("rat",))
        # c = (-1, 1, 1) w.r.t. (b, a, r); nonconvex by necessity
        cbr, cba = _split(bar, "c", (-1.0, 1.0, 1.0), ("rat", "rsa"))
    bac = _permute(cba, _REGULAR_FIXUPS["cba"])
    crb = _permute(cbr, _REGULAR_FIXUPS["cbr"])
    if conform_edges:
        bac = bac._replace(net=_with_edge(bac.net, (2, 1), cas.net.edge_row(0, 1)))
        crb = crb._replace(net=_with_edge(crb.net, (0, 1), car.net.edge_row(0, 2)))
    children = [_permute(bat, _REGULAR_FIXUPS["bat"]), bac, crb, _permute(cas, _REGULAR_FIXUPS["cas"])]
    return _outcome(children, log)


def _with_edge(net: ControlNet, slots: tuple[int, int], row: np.ndarray) -> ControlNet:
    m = net.degree
    pts = net.points.copy()
    for q in range(m + 1):
        e = [0, 0, 0]
        e[slots[0]] = m - q
        e[slots[1]] = q
        pts[flat_index(m, e[0], e[1])] = row[q]
    return ControlNet(m, pts)


def subdivide_diamond(net: ControlNet) -> SubdivisionOutcome:
    """Four children ``bat, bar, cas, car`` in three sweeps."""
    with count_sweeps() as log:
        art, ars = _split(_root(net), "a", MID_SECOND_THIRD, ("rat", "rsa"))
        bat, bar = _split(art, "b", MID_SECOND_THIRD, ("rat", "rsa"))
        cas, car = _split(ars, "c", MID_SECOND_THIRD, ("rat", "rsa"))
    return _outcome([bat, bar, cas, car], log)


def subdivide_spiderweb(net: ControlNet) -> SubdivisionOutcome:
    """Six children around the centroid ``g`` in four sweeps."""
    with count_sweeps() as log:
        gst, grt, grs = _split(_root(net), "g", CENTROID, FACES)
        bgt, bgr = _split(grt, "b", MID_SECOND_THIRD, ("rat", "rsa"))
        agt, ags = _split(gst, "a", MID_SECOND_THIRD, ("rat", "rsa"))
        cgs, cgr = _split(grs, "c", MID_SECOND_THIRD, ("rat", "rsa"))
    return _outcome([bgt, bgr, agt, ags, cgs, cgr], log)


def reframe_by_decasteljau(net: ControlNet, p1, p2, p3) -> ControlNet:
    """Net over an arbitrary frame ``(p1, p2, p3)`` using three sweeps.

    Each sweep swaps one old frame vertex for the next new point; the slot
    replaced is the one where the new point has the largest weight.
    """
    targets = [np.asarray(p, dtype=float) for p in (p1, p2, p3)]
    if abs(np.linalg.det(np.array(targets))) <= 1e-12:
        raise DegenerateFrameError("target frame is flat")
    corners = np.eye(3)
    holder = [None, None, None]  # which target sits in each slot
    for q, p in enumerate(targets):
        local = barycentric_wrt(p, *corners)
        free = [slot for slot in range(3) if holder[slot] is None]
        slot = max(free, key=lambda s: abs(local[s]))
        net = subdecas3(net, local, FACES[slot])
        corners[slot] = p
        holder[slot] = q
    order = tuple(holder.index(q) for q in range(3))
    return permute_net(net, FramePermutation(order))


def subdivide_regular_naive(net: ControlNet) -> SubdivisionOutcome:
    """Same children as :func:`subdivide_regular`, each reframed independently (12 sweeps)."""
    a, b, c = (0.0, 0.5, 0.5), (0.5, 0.0, 0.5), (0.5, 0.5, 0.0)
    r, s, t = (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)
    frames = {"abt": (a, b, t), "bac": (b, a, c), "crb": (c, r, b), "sca": (s, c, a)}
    children = []
    with count_sweeps() as log:
        for label, frame in frames.items():
            child = reframe_by_decasteljau(net, *frame)
            children.append(_Patch(label, child, np.array(frame)))
    return _outcome(children, log)


SCHEME_FUNCTIONS = {
    "regular": subdivide_regular,
    "diamond": subdivide_diamond,
    "spiderweb": subdivide_spiderweb,
}


def subdivide(net: ControlNet, scheme: str) -> SubdivisionOutcome:
    try:
        fn = SCHEME_FUNCTIONS[scheme]
    except KeyError:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}") from None
    return fn(net)
