"""Bundled example surfaces and nets."""
from fractions import Fraction as Fr

from .blossom import PolySurface
from .core import ControlNet

STANDARD_FRAME = ((1.0, 0.0), (0.0, 1.0), (0.0, 0.0))

# cubic patch used to illustrate regular subdivision
CUBIC_NET = ControlNet(3, [
    (0, 0, 0), (2, 0, 2), (4, 0, 2), (6, 0, 0),
    (1, 2, 2), (3, 2, 5), (5, 2, 2),
    (2, 4, 2), (4, 4, 2),
    (3, 6, 0),
])

# x = u, y = v, z = u^3 - 3 u v^2 over the standard frame
MONKEY_NET = ControlNet(3, [
    (0, 0, 0), (0, Fr(1, 3), 0), (0, Fr(2, 3), 0), (0, 1, 0),
    (Fr(1, 3), 0, 0), (Fr(1, 3), Fr(1, 3), 0), (Fr(1, 3), Fr(2, 3), -1),
    (Fr(2, 3), 0, 0), (Fr(2, 3), Fr(1, 3), 0),
    (1, 0, 1),
])

ENNEPER = PolySurface([
    {(1, 0): 1, (3, 0): Fr(-1, 3), (1, 2): 1},
    {(0, 1): 1, (0, 3): Fr(-1, 3), (2, 1): 1},
    {(2, 0): 1, (0, 2): -1},
])

MONKEY_SADDLE = PolySurface([
    {(1, 0): 1},
    {(0, 1): 1},
    {(3, 0): 1, (1, 2): -3},
])

# the square [-1, 1] x [-1, 1] as two triangles
SQUARE_FRAMES = (
    ((-1.0, -1.0), (1.0, -1.0), (1.0, 1.0)),
    ((-1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)),
)
