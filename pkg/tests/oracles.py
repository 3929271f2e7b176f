"""Reference computations that share no code with the library."""
from fractions import Fraction
from math import factorial

import numpy as np


def bernstein_eval(net, a):
    """Sum of m!/(i!j!k!) lam^i mu^j nu^k b_ijk over the net."""
    m = net.degree
    lam, mu, nu = a
    out = np.zeros(net.dim)
    q = 0
    for i in range(m + 1):
        for j in range(m - i + 1):
            k = m - i - j
            c = factorial(m) / (factorial(i) * factorial(j) * factorial(k))
            out += c * lam**i * mu**j * nu**k * net.points[q]
            q += 1
    return out


def polar_value_brute(net, args):
    """Blossom by full 3^m enumeration of vertex assignments."""
    import itertools

    m = net.degree
    out = np.zeros(net.dim)
    for choice in itertools.product(range(3), repeat=m):
        w = 1.0
        counts = [0, 0, 0]
        for arg, c in zip(args, choice):
            w *= arg[c]
            counts[c] += 1
        i, j = counts[0], counts[1]
        flat = i * (m + 1) - i * (i - 1) // 2 + j
        out += w * net.points[flat]
    return out


def enneper_exact(u, v):
    u, v = Fraction(u), Fraction(v)
    return (u - u**3 / 3 + u * v**2, v - v**3 / 3 + u**2 * v, u**2 - v**2)


def tri_area(p, q, r):
    return 0.5 * abs((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))
