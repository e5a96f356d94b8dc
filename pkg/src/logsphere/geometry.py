"""Point configurations on the unit sphere, pair distances, products and energies.

Pair-count conventions (the two are mixed in the literature, so they are
fixed here once):

* products run over unordered pairs, ``P = prod_{i<j} d_ij`` with
  ``d_ij = |x_i - x_j|**2``;
* energies run over ordered pairs, ``E_s = sum_{i != j} |x_i - x_j|**-s`` and
  ``E_log = sum_{i != j} log(1 / |x_i - x_j|)``, which makes
  ``E_log = -log P`` exactly.
"""
from dataclasses import dataclass, field
import itertools
import json
import math

import numpy as np
from scipy.optimize import linear_sum_assignment

from .exceptions import CoincidentPoints, DimensionMismatch, InvalidConfiguration
from .validation import UNIT_NORM_TOL, check_points, check_same_shape

_MAX_LOG_DOUBLE = math.log(np.finfo(np.float64).max)

# Exhaustive relabeling search is used while N! stays below this.
_MAX_EXACT_PERMUTATIONS = 40320


@dataclass(frozen=True, eq=False)
class Configuration:
    """An ordered list of ``N`` unit vectors in ``R^d``.

    Rows must have unit norm within ``1e-12`` unless ``renormalize=True``.
    The stored array is read-only, so instances can be shared freely.
    """

    points: np.ndarray
    renormalize: bool = field(default=False, repr=False)

    def __post_init__(self):
        arr = check_points(self.points, renormalize=self.renormalize)
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)
        object.__setattr__(self, "renormalize", False)

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def d(self):
        return self.points.shape[1]

    def __len__(self):
        return self.n

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.points
        return self.points.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.points.shape == other.points.shape and bool(np.array_equal(self.points, other.points))

    def __hash__(self):
        return hash((self.points.shape, self.points.tobytes()))

    def transformed(self, orthogonal):
        """Return the configuration with every point mapped by ``x -> x @ orthogonal``."""
        q = np.asarray(orthogonal, dtype=np.float64)
        return Configuration(self.points @ q, renormalize=True)

    def permuted(self, order):
        return Configuration(self.points[np.asarray(order)])

    def to_dict(self):
        return {"d": self.d, "n": self.n, "points": self.points.tolist()}

    @classmethod
    def from_dict(cls, data, renormalize=False):
        try:
            d = int(data["d"])
            n = int(data["n"])
            pts = data["points"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidConfiguration(f"malformed configuration record: {exc}") from exc
        arr = np.asarray(pts, dtype=np.float64)
        if arr.shape != (n, d):
            raise InvalidConfiguration(f"declared n={n}, d={d} but points have shape {arr.shape}")
        return cls(arr, renormalize=renormalize)


def as_points(config):
    """Return the ``(N, d)`` coordinate array of a Configuration or array-like."""
    if isinstance(config, Configuration):
        return config.points
    return check_points(config)


def read_configuration(path, renormalize=False):
    with open(path) as fh:
        data = json.load(fh)
    return Configuration.from_dict(data, renormalize=renormalize)


def write_configuration(config, path, meta=None):
    record = config.to_dict()
    if meta is not None:
        record["meta"] = meta
    with open(path, "w") as fh:
        json.dump(record, fh, indent=1)
        fh.write("\n")


def squared_distances(config):
    """Matrix of squared pair distances ``d_ij = |x_i - x_j|**2``.

    Computed from coordinate differences rather than ``2 - 2 x_i.x_j`` so that
    close pairs keep full relative precision. The result is exactly symmetric
    with a zero diagonal.
    """
    x = as_points(config)
    diff = x[:, None, :] - x[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _upper_pairs(n):
    return np.triu_indices(n, k=1)


def _raise_if_coincident(dists):
    iu, ju = _upper_pairs(dists.shape[0])
    zero = np.flatnonzero(dists[iu, ju] <= 0.0)
    if zero.size:
        k = zero[0]
        raise CoincidentPoints((iu[k], ju[k]))


def log_product(config):
    """``log P = sum_{i<j} log d_ij``, accumulated with ``math.fsum``.

    Raises
    ------
    CoincidentPoints
        If some pair has ``d_ij = 0``.
    """
    dists = squared_distances(config)
    _raise_if_coincident(dists)
    iu, ju = _upper_pairs(dists.shape[0])
    return math.fsum(np.log(dists[iu, ju]).tolist())


def product(config):
    """Raw product of squared distances, or ``None`` when it overflows a double."""
    lp = log_product(config)
    if lp >= _MAX_LOG_DOUBLE:
        return None
    return math.exp(lp)


def riesz_energy(config, s):
    """Riesz s-energy summed over ordered pairs, ``sum_{i != j} d_ij**(-s/2)``.

    For ``s < 0`` this is the (positive) distance-power sum, which optimal
    configurations maximize. ``s = 0`` gives ``N(N-1)``.
    """
    s = float(s)
    dists = squared_distances(config)
    iu, ju = _upper_pairs(dists.shape[0])
    vals = dists[iu, ju]
    if s > 0:
        _raise_if_coincident(dists)
    return 2.0 * math.fsum(np.power(vals, -0.5 * s).tolist())


@dataclass(frozen=True)
class EnergyReport:
    log_energy: float
    log_product: float
    riesz: dict = field(default_factory=dict)

    @property
    def product(self):
        if self.log_product >= _MAX_LOG_DOUBLE:
            return None
        return math.exp(self.log_product)

    def to_dict(self):
        return {
            "log_energy": self.log_energy,
            "log_product": self.log_product,
            "product": self.product,
            "riesz": {repr(float(s)): v for s, v in self.riesz.items()},
        }


def log_energy(config, riesz_s=()):
    """Energy report with ``log_energy = -log_product`` and optional Riesz energies."""
    lp = log_product(config)
    riesz = {float(s): riesz_energy(config, s) for s in riesz_s}
    return EnergyReport(log_energy=-lp, log_product=lp, riesz=riesz)


def center_of_mass(config):
    return as_points(config).mean(axis=0)


@dataclass(frozen=True)
class Alignment:
    """Best relabeling and orthogonal map taking ``b`` onto ``a``.

    ``a ≈ b[permutation] @ orthogonal`` with Frobenius residual ``distance``.
    ``exact`` is False when the relabeling came from the anchored heuristic.
    """

    distance: float
    permutation: np.ndarray
    orthogonal: np.ndarray
    exact: bool


def _procrustes(a, b):
    """Orthogonal ``q`` minimizing ``|a - b @ q|_F``."""
    u, _, vt = np.linalg.svd(b.T @ a)
    return u @ vt


def _residual(a, b, q):
    return float(np.linalg.norm(a - b @ q))


def _align_exhaustive(a, b):
    n = a.shape[0]
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    best = None
    for start in range(0, len(perms), 8192):
        chunk = perms[start:start + 8192]
        m = np.einsum("pnd,ne->pde", b[chunk], a)
        score = np.linalg.svd(m, compute_uv=False).sum(axis=1)
        # Nuclear-norm scores are only accurate to ~sqrt(eps) in distance, so
        # re-evaluate the leading candidates directly.
        order = np.argsort(-score)[:32]
        top = score[order[0]]
        for k in order:
            if score[k] < top - 1e-6:
                break
            p = chunk[k]
            q = _procrustes(a, b[p])
            r = _residual(a, b[p], q)
            if best is None or r < best[0]:
                best = (r, p.copy(), q)
    return Alignment(best[0], best[1], best[2], True)


def _frame(a, rank_tol=1e-9):
    """Greedy choice of rows of ``a`` spanning its row space."""
    chosen = []
    basis = np.zeros((0, a.shape[1]))
    scale = max(1.0, float(np.linalg.norm(a, axis=1).max()))
    while True:
        resid = a - (a @ basis.T) @ basis if basis.size else a.copy()
        norms = np.linalg.norm(resid, axis=1)
        norms[chosen] = -1.0
        i = int(np.argmax(norms))
        if norms[i] <= rank_tol * scale:
            return chosen
        chosen.append(i)
        basis = np.vstack([basis, resid[i] / norms[i]])
        if len(chosen) == a.shape[1]:
            return chosen


def _frame_candidates(a, b, frame, gram_tol, cap):
    ga = a[frame] @ a[frame].T
    gb = b @ b.T
    out = []

    def extend(assigned):
        if len(out) >= cap:
            return
        k = len(assigned)
        if k == len(frame):
            out.append(tuple(assigned))
            return
        for j in range(b.shape[0]):
            if j in assigned:
                continue
            if abs(gb[j, j] - ga[k, k]) > gram_tol:
                continue
            if all(abs(gb[j, assigned[t]] - ga[k, t]) <= gram_tol for t in range(k)):
                extend(assigned + [j])

    extend([])
    return out


def _align_anchored(a, b, cap=4096):
    frame = _frame(a)
    candidates = []
    gram_tol = 1e-6
    while not candidates:
        candidates = _frame_candidates(a, b, frame, gram_tol, cap)
        gram_tol *= 10.0
        if gram_tol > 10.0 and not candidates:
            candidates = [tuple(frame)]
    best = None
    for cand in candidates:
        q = _procrustes(a[frame], b[list(cand)])
        for _ in range(3):
            bq = b @ q
            cost = np.sum((a[:, None, :] - bq[None, :, :]) ** 2, axis=-1)
            rows, cols = linear_sum_assignment(cost)
            perm = cols[np.argsort(rows)]
            q = _procrustes(a, b[perm])
        r = _residual(a, b[perm], q)
        if best is None or r < best[0]:
            best = (r, perm, q)
    return Alignment(best[0], best[1], best[2], False)


def align(a, b):
    """Find the relabeling and orthogonal transform that best maps ``b`` onto ``a``.

    For ``N <= 8`` all ``N!`` relabelings are scored with an orthogonal
    Procrustes fit each, which is exact. Larger inputs anchor on a spanning
    frame of ``a``, enumerate Gram-consistent images of that frame in ``b``,
    and complete each by assignment plus Procrustes refinement. The anchored
    search always returns a valid upper bound and finds 0 for congruent sets.
    """
    pa = as_points(a)
    pb = as_points(b)
    check_same_shape(pa, pb)
    if math.factorial(pa.shape[0]) <= _MAX_EXACT_PERMUTATIONS:
        return _align_exhaustive(pa, pb)
    return _align_anchored(pa, pb)


def rotation_distance(a, b):
    """Frobenius distance between ``a`` and ``b`` minimized over relabelings and
    orthogonal maps; 0 exactly when the two are congruent."""
    return align(a, b).distance


__all__ = [
    "Alignment",
    "Configuration",
    "DimensionMismatch",
    "EnergyReport",
    "UNIT_NORM_TOL",
    "align",
    "as_points",
    "center_of_mass",
    "log_energy",
    "log_product",
    "product",
    "read_configuration",
    "riesz_energy",
    "rotation_distance",
    "squared_distances",
    "write_configuration",
]
