"""Triangular Bezier patches: polar forms, de Casteljau subdivision, tessellation."""
from .blossom import (
    PlanePoint,
    PolySurface,
    blossom_from_net,
    net_from_polynomial,
    net_wrt_frame_oracle,
    polar_eval,
    polar_monomial,
)
from .core import (
    ROTATE_LEFT,
    SWAP_FIRST_TWO,
    BarycentricPoint,
    ControlNet,
    DegenerateFrameError,
    FramePermutation,
    barycentric_wrt,
    net_get,
    permute_net,
)
from .decasteljau import (
    SubdivisionTriple,
    Tetrahedron,
    count_sweeps,
    eval_point,
    eval_tetrahedron,
    sdecas3,
    subdecas3,
)
from .strategies import (
    SubdivisionOutcome,
    subdivide,
    subdivide_diamond,
    subdivide_regular,
    subdivide_regular_naive,
    subdivide_spiderweb,
)
from .tessellate import (
    PatchLeaf,
    TriangleMesh,
    approximation_error,
    assemble_mesh,
    net_to_triangles,
    refine,
    subdivide_recursive,
)

__version__ = "0.1.0"
