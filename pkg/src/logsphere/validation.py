"""Input validation helpers shared by the public functions and estimators."""
import numbers

import numpy as np

from .exceptions import DimensionMismatch, InvalidConfiguration

#: Maximum deviation of a row norm from 1 accepted without renormalizing.
UNIT_NORM_TOL = 1e-12


def check_points(points, *, renormalize=False, tol=UNIT_NORM_TOL, min_points=2, min_dim=2):
    """Validate an ``(N, d)`` array of points on the unit sphere.

    Parameters
    ----------
    points : array-like of shape (N, d)
    renormalize : bool, default False
        Project nonzero rows onto the sphere instead of rejecting them.
    tol : float
        Allowed ``| |x_i| - 1 |`` when ``renormalize`` is False.
    min_points, min_dim : int
        Lower bounds on N and d.

    Returns
    -------
    ndarray of shape (N, d), float64, C-contiguous copy.
    """
    arr = np.array(points, dtype=np.float64, copy=True)
    if arr.ndim != 2:
        raise InvalidConfiguration(f"expected a 2-D array of points, got shape {arr.shape}")
    n, d = arr.shape
    if n < min_points:
        raise InvalidConfiguration(f"need at least {min_points} points, got {n}")
    if d < min_dim:
        raise InvalidConfiguration(f"need ambient dimension >= {min_dim}, got {d}")
    if not np.all(np.isfinite(arr)):
        raise InvalidConfiguration("points contain NaN or infinite coordinates")
    norms = np.linalg.norm(arr, axis=1)
    if renormalize:
        if np.any(norms == 0.0):
            raise InvalidConfiguration("cannot renormalize a zero row")
        arr /= norms[:, None]
    else:
        bad = np.flatnonzero(np.abs(norms - 1.0) > tol)
        if bad.size:
            i = int(bad[0])
            raise InvalidConfiguration(
                f"row {i} has norm {norms[i]:.17g}, not unit within {tol:g} "
                "(pass renormalize=True to accept)"
            )
    return np.ascontiguousarray(arr)


def check_same_shape(a, b):
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape {a.shape} differs from {b.shape}")


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)
