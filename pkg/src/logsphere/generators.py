"""Closed-form constructions of the named configuration families.

Simplexes are built by a fixed recursive rule in the leading coordinates of
their block, so every generator is deterministic down to the last bit:
the first vertex is ``e_1`` and the remaining ``n - 1`` vertices sit at
height ``-1/(n-1)`` above a scaled ``(n-1)``-vertex simplex.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .exceptions import DimensionMismatch, DoesNotFit, InfeasibleSizes, UnknownName
from .geometry import Configuration, as_points


@dataclass(frozen=True)
class GeneratorSpec:
    """Symbolic description of a configuration family member.

    ``kind`` is one of ``regular_simplex``, ``ortho_simplexes``,
    ``apex_over_base`` or ``three_simplex``. For ``apex_over_base`` the base is
    given by catalog name in ``base``.
    """

    kind: str
    sizes: tuple = ()
    d: int = None
    base: str = None
    params: dict = field(default_factory=dict)

    def build(self):
        if self.kind == "regular_simplex":
            (n,) = self.sizes
            return regular_simplex(n, self.d)
        if self.kind == "ortho_simplexes":
            return ortho_simplexes(self.sizes, self.d)
        if self.kind == "apex_over_base":
            return apex_over_base(named(self.base), self.d)
        if self.kind == "three_simplex":
            return three_simplex(*self.sizes)
        raise UnknownName(f"unknown generator kind {self.kind!r}")


def _simplex_block(n):
    """``n`` unit vectors in ``R^(n-1)`` with pairwise inner products ``-1/(n-1)``."""
    if n == 1:
        return np.ones((1, 1))
    if n == 2:
        return np.array([[1.0], [-1.0]])
    pts = np.zeros((n, n - 1))
    pts[0, 0] = 1.0
    pts[1:, 0] = -1.0 / (n - 1)
    pts[1:, 1:] = math.sqrt(1.0 - 1.0 / (n - 1) ** 2) * _simplex_block(n - 1)
    return pts


def regular_simplex(n, d):
    """Regular ``(n-1)``-simplex inscribed in ``S^(d-1)``, in the first ``n-1`` coordinates."""
    if n < 2:
        raise DoesNotFit(f"a simplex needs at least 2 vertices, got {n}")
    if n > d + 1:
        raise DoesNotFit(f"{n} vertices of a regular simplex do not fit in R^{d}")
    pts = np.zeros((n, d))
    pts[:, : n - 1] = _simplex_block(n)
    return Configuration(pts)


def _block_width(size):
    # A lone point still needs an axis of its own to sit at distance^2 2 from the rest.
    return max(size - 1, 1)


def ortho_simplexes(sizes, d):
    """Mutually orthogonal origin-centred regular simplexes in consecutive coordinate blocks.

    Every cross-block squared distance is exactly 2. A size-1 block is a single
    point on its own axis.
    """
    sizes = [int(s) for s in sizes]
    if not sizes or any(s < 1 for s in sizes):
        raise DoesNotFit(f"simplex sizes must be positive, got {sizes}")
    need = sum(_block_width(s) for s in sizes)
    if need > d:
        raise DoesNotFit(f"blocks {sizes} need {need} dimensions, only {d} available")
    pts = np.zeros((sum(sizes), d))
    row = col = 0
    for s in sizes:
        w = _block_width(s)
        pts[row:row + s, col:col + w] = _simplex_block(s)
        row += s
        col += w
    return Configuration(pts)


def apex_over_base(base, d):
    """Put the north pole above ``base`` shrunk onto the slice ``x_d = -1/(N-1)``.

    ``base`` holds ``N-1`` points of ``S^(d-2)``. They are scaled by ``r`` with
    ``r**2 = N(N-2)/(N-1)**2``, so every edge from the apex has squared
    length ``2N/(N-1)``. The apex is the last vertex.
    """
    b = as_points(base)
    if b.shape[1] != d - 1:
        raise DimensionMismatch(f"base lives in R^{b.shape[1]}, expected R^{d - 1}")
    n = b.shape[0] + 1
    r = math.sqrt(n * (n - 2)) / (n - 1)
    pts = np.zeros((n, d))
    pts[:-1, :-1] = r * b
    pts[:-1, -1] = -1.0 / (n - 1)
    pts[-1, -1] = 1.0
    return Configuration(pts)


def three_simplex_heights(k, l, m):
    """Axis coordinates ``(u, v, w)`` of the three simplex centres, ``u = v > 0``."""
    n = k + l + m
    u = math.sqrt(m / ((k + l) * (n - 1)))
    return u, u, -(k + l) * u / m


def three_simplex(k, l, m):
    """Stationary configuration of three regular simplexes on a common axis.

    Sizes ``k, l, m >= 2``, ``N = k + l + m`` points on ``S^(N-3)``. Simplex
    centres sit at ``u = v`` and ``w = -(k+l)u/m`` on the first axis with
    ``uw = -1/(N-1)``; each simplex spans its own block orthogonal to the axis.
    """
    sizes = (int(k), int(l), int(m))
    if min(sizes) < 2:
        raise InfeasibleSizes(f"three-simplex sizes must all be >= 2, got {sizes}")
    n = sum(sizes)
    d = n - 2
    if sum(s - 1 for s in sizes) > d - 1:
        raise InfeasibleSizes(f"sizes {sizes} do not fit orthogonally in R^{d}")
    heights = three_simplex_heights(*sizes)
    pts = np.zeros((n, d))
    row, col = 0, 1
    for s, h in zip(sizes, heights):
        pts[row:row + s, 0] = h
        pts[row:row + s, col:col + s - 1] = math.sqrt(1.0 - h * h) * _simplex_block(s)
        row += s
        col += s - 1
    return Configuration(pts)


def _great_circle_polygon(n, d, scale=1.0, offset=0, height=None):
    ang = 2.0 * np.pi * np.arange(n) / n
    pts = np.zeros((n, d))
    pts[:, offset] = scale * np.cos(ang)
    pts[:, offset + 1] = scale * np.sin(ang)
    if height is not None:
        pts[:, -1] = height
    return pts


def _triangle_pair_4d():
    return np.vstack([_great_circle_polygon(3, 4), _great_circle_polygon(3, 4, offset=2)])


def _omega_3_4():
    tri = _great_circle_polygon(3, 5)
    c = 2.0 * math.sqrt(2.0) / 3.0
    tet = np.vstack([[0, 0, 0, 0, 1.0], _great_circle_polygon(3, 5, scale=c, offset=2, height=-1.0 / 3.0)])
    return np.vstack([tri, tet])


def _omega_2_4():
    c = 2.0 * math.sqrt(2.0) / 3.0
    ang = 2.0 * np.pi * np.arange(3) / 3
    tet = np.zeros((3, 4))
    tet[:, 0] = -1.0 / 3.0
    tet[:, 1] = c * np.cos(ang)
    tet[:, 2] = c * np.sin(ang)
    return np.vstack([[0, 0, 0, 1.0], [0, 0, 0, -1.0], [1.0, 0, 0, 0], tet])


def _omega_6_apex():
    a = math.sqrt(24.0) / 5.0
    ang = 2.0 * np.pi * np.arange(3) / 3
    tri = np.zeros((3, 4))
    tri[:, 0] = a * np.cos(ang)
    tri[:, 1] = a * np.sin(ang)
    tri[:, 3] = -0.2
    return np.vstack([[0, 0, 0, 1.0], [0, 0, a, -0.2], [0, 0, -a, -0.2], tri])


def _omega_7_apex():
    a = math.sqrt(35.0) / 6.0
    t1 = _great_circle_polygon(3, 5, scale=a, height=-1.0 / 6.0)
    t2 = _great_circle_polygon(3, 5, scale=a, offset=2, height=-1.0 / 6.0)
    return np.vstack([[0, 0, 0, 0, 1.0], t1, t2])


def _bipyramid():
    return np.vstack([[0, 0, 1.0], [0, 0, -1.0], _great_circle_polygon(3, 3)])


def _square_pyramid():
    base = _great_circle_polygon(4, 3, scale=math.sqrt(15.0) / 4.0, height=-0.25)
    return np.vstack([[0, 0, 1.0], base])


def _icosahedron():
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    pts = []
    for s1 in (1.0, -1.0):
        for s2 in (phi, -phi):
            pts.append((0.0, s1, s2))
            pts.append((s1, s2, 0.0))
            pts.append((s2, 0.0, s1))
    pts = np.array(pts)
    return pts / np.linalg.norm(pts, axis=1)[:, None]


def _three_simplex_2_2_2():
    # u = v, w = -2u, u^2 = 1/10.
    u = math.sqrt(0.1)
    rows = []
    for axis, h in ((1, u), (2, u), (3, -2 * u)):
        for sign in (1.0, -1.0):
            p = [h, 0.0, 0.0, 0.0]
            p[axis] = sign * math.sqrt(1.0 - h * h)
            rows.append(p)
    return np.array(rows)


# name -> (builder, where the configuration comes from)
_CATALOG = {
    "antipodal_pair": (lambda: regular_simplex(2, 3).points, "1-simplex (a diameter) in S^2"),
    "triangle": (lambda: _great_circle_polygon(3, 2), "equilateral triangle on the unit circle"),
    "square": (lambda: _great_circle_polygon(4, 2), "square on the unit circle; d = 2, N = 4 stationary case"),
    "tetrahedron": (lambda: regular_simplex(4, 3).points, "regular tetrahedron in S^2"),
    "octahedron": (lambda: ortho_simplexes([2, 2, 2], 3).points, "generalized octahedron, N = 2d, d = 3"),
    "pentagon_in_S2": (lambda: _great_circle_polygon(5, 3), "regular pentagon on the equator of S^2 (degenerate)"),
    "bipyramid": (_bipyramid, "triangular bipyramid: poles plus equatorial triangle"),
    "square_pyramid": (_square_pyramid, "apex at north pole, square base at altitude -1/4"),
    "omega_6_apex": (_omega_6_apex, "6 points on S^3 with a vertex equidistant to a shrunken bipyramid"),
    "omega_2_4": (_omega_2_4, "diameter orthogonal to a regular tetrahedron in S^3"),
    "omega_3_3": (_triangle_pair_4d, "two orthogonal equilateral triangles in great circles of S^3"),
    "three_simplex_2_2_2": (_three_simplex_2_2_2, "three orthogonal diameters on S^3 with u = v, w = -2u"),
    "omega_7_apex": (_omega_7_apex, "7 points on S^4: north pole over two orthogonal triangles at x_5 = -1/6"),
    "omega_2_5": (lambda: ortho_simplexes([2, 5], 5).points, "diameter orthogonal to a 5-point simplex in S^4"),
    "omega_2_2_3": (lambda: three_simplex(2, 2, 3).points, "three orthogonal simplexes of sizes 2, 2, 3 in S^4"),
    "omega_3_4": (_omega_3_4, "equilateral triangle orthogonal to a regular tetrahedron in S^4"),
    "icosahedron": (_icosahedron, "regular icosahedron, N = 12, d = 3"),
}

CATALOG_NAMES = tuple(_CATALOG)


def describe(name):
    try:
        return _CATALOG[name][1]
    except KeyError:
        raise UnknownName(f"no catalog entry named {name!r}") from None


def named(name):
    """Closed-form coordinates of a catalog configuration; see :data:`CATALOG_NAMES`."""
    try:
        builder, _ = _CATALOG[name]
    except KeyError:
        raise UnknownName(f"no catalog entry named {name!r}; known: {', '.join(CATALOG_NAMES)}") from None
    return Configuration(builder())
