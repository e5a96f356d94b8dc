"""Independent brute-force references used by the tests.

Plain Python loops over explicit coordinates; nothing here calls into the
package, so these stay independent of the code paths they check.
"""
import math


def pair_sq(a, b):
    return sum((p - q) ** 2 for p, q in zip(a, b))


def brute_log_product(points):
    pts = [list(map(float, p)) for p in points]
    return math.fsum(math.log(pair_sq(pts[i], pts[j])) for i in range(len(pts)) for j in range(i + 1, len(pts)))


def brute_riesz(points, s):
    pts = [list(map(float, p)) for p in points]
    return math.fsum(
        pair_sq(pts[i], pts[j]) ** (-s / 2) for i in range(len(pts)) for j in range(len(pts)) if i != j
    )


def brute_log_energy(points):
    pts = [list(map(float, p)) for p in points]
    return math.fsum(
        -0.5 * math.log(pair_sq(pts[i], pts[j])) for i in range(len(pts)) for j in range(len(pts)) if i != j
    )


def central_difference_gradient(energy, x, h=1e-6):
    """Ambient gradient of ``energy`` (a function of an N x d nested list) by central differences."""
    n, d = len(x), len(x[0])
    grad = [[0.0] * d for _ in range(n)]
    for i in range(n):
        for k in range(d):
            xp = [row[:] for row in x]
            xm = [row[:] for row in x]
            xp[i][k] += h
            xm[i][k] -= h
            grad[i][k] = (energy(xp) - energy(xm)) / (2 * h)
    return grad


def project_tangent(x, g):
    out = []
    for xi, gi in zip(x, g):
        dot = sum(a * b for a, b in zip(xi, gi))
        out.append([b - dot * a for a, b in zip(xi, gi)])
    return out


def triangle_pair_4d():
    """The two orthogonal equilateral triangles, written out coordinate by coordinate."""
    c = [(math.cos(2 * k * math.pi / 3), math.sin(2 * k * math.pi / 3)) for k in range(3)]
    return [[a, b, 0.0, 0.0] for a, b in c] + [[0.0, 0.0, a, b] for a, b in c]


def triangle_tetrahedron_5d():
    c = [(math.cos(2 * k * math.pi / 3), math.sin(2 * k * math.pi / 3)) for k in range(3)]
    r = 2 * math.sqrt(2) / 3
    return ([[a, b, 0.0, 0.0, 0.0] for a, b in c] + [[0.0, 0.0, 0.0, 0.0, 1.0]]
            + [[0.0, 0.0, r * a, r * b, -1.0 / 3] for a, b in c])


def bipyramid():
    c = [(math.cos(2 * k * math.pi / 3), math.sin(2 * k * math.pi / 3)) for k in range(3)]
    return [[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]] + [[a, b, 0.0] for a, b in c]


def random_orthogonal(rng, d):
    import numpy as np

    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))
