"""First-order stationarity checks and the coefficient-matrix rank diagnostics.

A log-energy configuration is stationary when every vertex satisfies the
force balance ``sum_{j != i} (x_i - x_j) / d_ij = (N-1)/2 * x_i``. Stationary
configurations also have zero centre of mass and ``sum_{j != i} d_ij = 2N``.
"""
from dataclasses import dataclass, field
import warnings

import numpy as np

from .exceptions import AdvisoryWarning, CoincidentPoints, PoleCollision, WrongCardinality
from .geometry import _raise_if_coincident, as_points, squared_distances

DEFAULT_STATIONARY_TOL = 1e-8
DEFAULT_RANK_TOL = 1e-9


@dataclass(frozen=True)
class StationarityReport:
    force_residuals: np.ndarray
    sum_residuals: np.ndarray
    mass_norm: float
    tolerance: float

    @property
    def is_stationary(self):
        return bool(
            self.force_residuals.max() <= self.tolerance
            and self.sum_residuals.max() <= self.tolerance
            and self.mass_norm <= self.tolerance
        )

    @property
    def max_force_residual(self):
        return float(self.force_residuals.max())

    def to_dict(self):
        return {
            "force_residuals": self.force_residuals.tolist(),
            "sum_residuals": self.sum_residuals.tolist(),
            "mass_norm": self.mass_norm,
            "tolerance": self.tolerance,
            "is_stationary": self.is_stationary,
        }


def force_vectors(config):
    """``F_i = sum_{j != i} (x_i - x_j) / d_ij`` for every vertex, shape ``(N, d)``."""
    x = as_points(config)
    dists = squared_distances(x)
    _raise_if_coincident(dists)
    inv = np.zeros_like(dists)
    off = ~np.eye(len(x), dtype=bool)
    inv[off] = 1.0 / dists[off]
    return inv.sum(axis=1)[:, None] * x - inv @ x


def check_stationary(config, tol=DEFAULT_STATIONARY_TOL):
    """Residuals of the force balance, the distance-sum condition and the centre of mass."""
    x = as_points(config)
    n = len(x)
    force = force_vectors(x) - 0.5 * (n - 1) * x
    dists = squared_distances(x)
    return StationarityReport(
        force_residuals=np.linalg.norm(force, axis=1),
        sum_residuals=np.abs(dists.sum(axis=1) - 2.0 * n),
        mass_norm=float(np.linalg.norm(x.mean(axis=0))),
        tolerance=float(tol),
    )


def riesz_gradient_residual(config, s):
    """Per-vertex norm of the tangential gradient of the Riesz s-energy (``s != 0``)."""
    from .optimizer import tangential_gradient

    if s == 0:
        raise ValueError("s must be nonzero; use check_stationary for the log energy")
    return np.linalg.norm(tangential_gradient(config, s=s), axis=1)


def _householder_to_north(p):
    """Orthogonal (symmetric) matrix ``h`` with ``p @ h = e_d`` for a unit vector ``p``."""
    d = p.shape[0]
    e = np.zeros(d)
    e[-1] = 1.0
    v = p - e
    vv = float(v @ v)
    if vv < 1e-30:
        return np.eye(d)
    return np.eye(d) - 2.0 * np.outer(v, v) / vv


def stereographic_project(config, pole_index):
    """Stereographic images ``a_i = y_i / (1 - r_i)`` of all vertices but the pole.

    The configuration is first reflected so the pole vertex lands exactly on
    ``(0, ..., 0, 1)``; ``y_i`` are the first ``d-1`` coordinates and ``r_i``
    the last. Returns an ``(N-1, d-1)`` array ordered like the input.
    """
    x = as_points(config)
    pole = int(pole_index) % len(x)
    h = _householder_to_north(x[pole])
    rot = x @ h
    rot[pole] = 0.0
    rot[pole, -1] = 1.0
    others = np.delete(rot, pole, axis=0)
    denom = 1.0 - others[:, -1]
    if np.any(denom <= 1e-14):
        i = int(np.argmin(denom))
        raise PoleCollision(f"a vertex coincides with pole {pole} (index {i if i < pole else i + 1})")
    return others[:, :-1] / denom[:, None]


@dataclass(frozen=True)
class CoefficientMatrixData:
    matrix: np.ndarray
    singular_values: np.ndarray
    numerical_rank: int
    rank_tolerance: float
    pole_index: int = 0
    advisory: bool = False

    def gap(self, k):
        """Ratio ``sigma_k / sigma_{k+1}`` (1-based), ``inf`` when ``sigma_{k+1}`` is 0."""
        sv = self.singular_values
        if k < 1 or k >= len(sv):
            raise ValueError(f"gap index {k} out of range for {len(sv)} singular values")
        lo = sv[k]
        return float("inf") if lo == 0.0 else float(sv[k - 1] / lo)

    def to_dict(self):
        return {
            "matrix": self.matrix.tolist(),
            "singular_values": self.singular_values.tolist(),
            "numerical_rank": self.numerical_rank,
            "rank_tolerance": self.rank_tolerance,
            "pole_index": self.pole_index,
            "advisory": self.advisory,
        }


def numerical_rank(singular_values, rank_tol=DEFAULT_RANK_TOL):
    sv = np.asarray(singular_values)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > rank_tol * sv[0]))


def coefficient_matrix(config, pole_index, rank_tol=DEFAULT_RANK_TOL, stationary_tol=DEFAULT_STATIONARY_TOL):
    """The ``(N+1) x (N-1)`` matrix ``M`` with ``M A = 0`` for stationary configurations.

    Rows: all ones; the squared distances from the pole; then for each
    non-pole vertex ``i`` the entries ``d_pj / d_ij`` off the diagonal and
    ``(N-1) - sum_{j != i, pole} d_pj / d_ij`` on it. Non-stationary inputs are
    still processed but flagged ``advisory``.
    """
    x = as_points(config)
    n = len(x)
    pole = int(pole_index) % n
    dists = squared_distances(x)
    _raise_if_coincident(dists)
    advisory = not check_stationary(x, stationary_tol).is_stationary
    if advisory:
        warnings.warn("configuration is not stationary; rank diagnostics are advisory", AdvisoryWarning, stacklevel=2)
    rest = [i for i in range(n) if i != pole]
    dp = dists[pole, rest]
    sub = dists[np.ix_(rest, rest)]
    ratio = np.zeros_like(sub)
    off = ~np.eye(n - 1, dtype=bool)
    ratio[off] = (dp[None, :] * np.ones_like(sub))[off] / sub[off]
    body = ratio.copy()
    body[np.diag_indices(n - 1)] = (n - 1) - ratio.sum(axis=1)
    m = np.vstack([np.ones(n - 1), dp, body])
    sv = np.linalg.svd(m, compute_uv=False)
    return CoefficientMatrixData(
        matrix=m,
        singular_values=sv,
        numerical_rank=numerical_rank(sv, rank_tol),
        rank_tolerance=float(rank_tol),
        pole_index=pole,
        advisory=advisory,
    )


def rank_condition_holds(data, n, d):
    """True iff the numerical rank of ``M`` is at most ``N - d``."""
    return data.numerical_rank <= n - d


@dataclass(frozen=True)
class ScalarEquationReport:
    """Per non-pole vertex: the scalar-equation bracket and the mirror factor.

    ``bracket[i] = 2N(2N - d_pi) - (N-1) sum_{l != i, p} d_pl d_il`` and
    ``mirror_factor[i] = max_{j != i, p} |d_ij - d_pj|``. For stationary
    non-degenerate ``N = d + 2`` inputs, each vertex has at least one of the
    two (numerically) zero.
    """

    indices: np.ndarray
    bracket: np.ndarray
    mirror_factor: np.ndarray
    pole_index: int

    def to_dict(self):
        return {
            "pole_index": self.pole_index,
            "indices": self.indices.tolist(),
            "bracket": self.bracket.tolist(),
            "mirror_factor": self.mirror_factor.tolist(),
        }


def scalar_equation_report(config, pole_index):
    x = as_points(config)
    n, d = x.shape
    if n != d + 2:
        raise WrongCardinality(f"scalar equation needs N = d + 2, got N={n}, d={d}")
    pole = int(pole_index) % n
    dists = squared_distances(x)
    rest = np.array([i for i in range(n) if i != pole])
    bracket = np.empty(len(rest))
    mirror = np.empty(len(rest))
    for k, i in enumerate(rest):
        others = rest[rest != i]
        bracket[k] = 2 * n * (2 * n - dists[pole, i]) - (n - 1) * np.dot(dists[pole, others], dists[i, others])
        mirror[k] = np.abs(dists[i, others] - dists[pole, others]).max() if others.size else 0.0
    return ScalarEquationReport(rest, bracket, mirror, pole)


def scalar_equation_residuals(config, pole_index):
    """Residual of the scalar equation at each non-pole vertex (``N = d + 2`` only)."""
    return scalar_equation_report(config, pole_index).bracket


__all__ = [
    "CoefficientMatrixData",
    "CoincidentPoints",
    "DEFAULT_RANK_TOL",
    "DEFAULT_STATIONARY_TOL",
    "ScalarEquationReport",
    "StationarityReport",
    "check_stationary",
    "coefficient_matrix",
    "force_vectors",
    "numerical_rank",
    "rank_condition_holds",
    "riesz_gradient_residual",
    "scalar_equation_report",
    "scalar_equation_residuals",
    "stereographic_project",
]
