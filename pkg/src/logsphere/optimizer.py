"""Multistart projected gradient descent for log and Riesz energies on spheres."""
from dataclasses import dataclass, field, asdict
import math

import numpy as np

from .exceptions import AllSeedsFailed, CoincidentPoints
from .geometry import Configuration, as_points, log_product, riesz_energy, rotation_distance, squared_distances
from .stationarity import StationarityReport, check_stationary

ARMIJO = 1e-4
SHRINK = 0.5
MIN_PAIR_DIST2 = 1e-14
BASIN_GAP = 1e-6


@dataclass(frozen=True)
class OptimizeSettings:
    max_iters: int = 20000
    grad_tol: float = 1e-9
    step_rule: str = "backtracking"
    initial_step: float = None
    seeds: int = 10
    rng_seed: int = 0
    s_exponent: float = None

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not self.grad_tol > 0:
            raise ValueError("grad_tol must be positive")
        if self.seeds < 1:
            raise ValueError("seeds must be >= 1")
        if self.step_rule not in ("backtracking", "fixed"):
            raise ValueError(f"unknown step_rule {self.step_rule!r}")
        if self.s_exponent is not None and self.s_exponent == 0:
            raise ValueError("s_exponent = 0 is the log energy; leave it unset")

    def to_dict(self):
        return asdict(self)


def _pair_inverse_powers(x, dists, s):
    n = len(x)
    off = ~np.eye(n, dtype=bool)
    if np.any(dists[off] <= 0.0):
        i, j = np.argwhere((dists <= 0.0) & off)[0]
        raise CoincidentPoints((i, j))
    w = np.zeros_like(dists)
    if s is None:
        w[off] = 1.0 / dists[off]
    else:
        w[off] = np.power(dists[off], -0.5 * s - 1.0)
    return w


def euclidean_gradient(config, s=None):
    """Gradient of ``E_log`` (``s=None``) or of ``E_s`` in the ambient coordinates.

    ``E_log`` gives ``g_i = -2 sum_j (x_i - x_j)/d_ij``; ``E_s`` gives
    ``g_i = -2 s sum_j d_ij**(-s/2-1) (x_i - x_j)``, both with ordered pairs.
    """
    x = as_points(config)
    dists = squared_distances(x)
    w = _pair_inverse_powers(x, dists, s)
    f = w.sum(axis=1)[:, None] * x - w @ x
    return (-2.0 if s is None else -2.0 * s) * f


def _project(x, g):
    return g - np.einsum("ij,ij->i", g, x)[:, None] * x


def tangential_gradient(config, s=None):
    """Euclidean energy gradient projected onto each tangent space, ``g_i - (g_i.x_i) x_i``."""
    x = as_points(config)
    # The radial part of the Euclidean gradient is O(N); a second projection
    # removes the O(N eps) radial residue the first one leaves behind.
    return _project(x, _project(x, euclidean_gradient(x, s)))


def _objective(x, s):
    if s is None:
        return -log_product(x)
    e = riesz_energy(x, s)
    return e if s > 0 else -e


def _objective_gradient(x, s):
    g = tangential_gradient(x, s)
    return g if s is None or s > 0 else -g


def _objective_delta(x, g, t, dists, s):
    """``objective(retract(x - t g)) - objective(x)`` evaluated without cancellation.

    With ``g`` tangent and ``rho_i = sqrt(1 + t^2 |g_i|^2)``, the change in each
    inner product of the retracted points is expanded analytically, so the
    energy change keeps full relative precision long after the energies agree
    to machine precision (rounding of the stored coordinates would otherwise
    swamp it near convergence).
    """
    iu, ju = np.triu_indices(len(x), k=1)
    half_log_rho = 0.5 * np.log1p(t * t * np.einsum("ij,ij->i", g, g))
    rr_minus_1 = np.expm1(half_log_rho[iu] + half_log_rho[ju])
    c = 1.0 - 0.5 * dists[iu, ju]
    cross = np.einsum("pk,pk->p", g[iu], x[ju]) + np.einsum("pk,pk->p", x[iu], g[ju])
    gij = np.einsum("pk,pk->p", g[iu], g[ju])
    dc = (-t * cross + t * t * gij - c * rr_minus_1) / (1.0 + rr_minus_1)
    rel = np.log1p(-2.0 * dc / dists[iu, ju])
    if s is None:
        return -float(np.sum(rel))
    change = 2.0 * float(np.sum(np.power(dists[iu, ju], -0.5 * s) * np.expm1(-0.5 * s * rel)))
    return change if s > 0 else -change


def _normalize(x):
    return x / np.linalg.norm(x, axis=1)[:, None]


@dataclass
class SeedResult:
    seed: int
    energy: float
    log_product: float
    iterations: int
    converged: bool
    grad_norm: float
    points: np.ndarray = field(repr=False)
    trace: list = field(default_factory=list, repr=False)

    def to_dict(self, with_trace=False):
        out = {
            "seed": self.seed,
            "energy": self.energy,
            "log_product": self.log_product,
            "iterations": self.iterations,
            "converged": self.converged,
            "grad_norm": self.grad_norm,
        }
        if with_trace:
            out["trace"] = list(self.trace)
        return out


def descend(x0, settings, seed=0):
    """Run one projected gradient descent from ``x0``.

    Each step retracts by renormalizing rows. With ``step_rule="backtracking"``
    the trial step is the Barzilai-Borwein length (``1/N`` on the first
    iteration unless ``initial_step`` is set) and is halved until the Armijo
    condition holds, so accepted steps never raise the energy. Any trial step
    bringing a pair within squared distance ``1e-14`` is halved as well.
    """
    s = settings.s_exponent
    x = _normalize(np.array(x0, dtype=np.float64))
    n = len(x)
    step = settings.initial_step if settings.initial_step is not None else 1.0 / n
    energy = _objective(x, s)
    dists = squared_distances(x)
    g = _objective_gradient(x, s)
    gnorm = float(np.linalg.norm(g, axis=1).max())
    trace = [energy]
    converged = gnorm <= settings.grad_tol
    it = 0
    while not converged and it < settings.max_iters:
        gg = float(np.sum(g * g))
        t = step
        while True:
            xn = _normalize(x - t * g)
            dn = squared_distances(xn)
            dn_off = dn[np.triu_indices(n, k=1)]
            if dn_off.min() < MIN_PAIR_DIST2:
                t *= SHRINK
                continue
            delta = _objective_delta(x, g, t, dists, s)
            if settings.step_rule == "fixed" or delta <= -ARMIJO * t * gg:
                break
            t *= SHRINK
            if t < 1e-300:
                break
        if t < 1e-300:
            break
        if settings.step_rule == "backtracking":
            assert delta <= 0.0, "line search accepted an energy increase"
        gn = _objective_gradient(xn, s)
        if settings.step_rule == "backtracking":
            sv = xn - x
            sy = float(np.sum(sv * (gn - g)))
            step = float(np.sum(sv * sv)) / sy if sy > 0 else 2.0 * t
            step = min(max(step, 1e-12), 1e3)
        x, g, dists = xn, gn, dn
        energy += delta
        trace.append(energy)
        it += 1
        gnorm = float(np.linalg.norm(g, axis=1).max())
        converged = gnorm <= settings.grad_tol
    x = _normalize(x)
    lp = log_product(x)
    return SeedResult(
        seed=seed,
        energy=_objective(x, s),
        log_product=lp,
        iterations=it,
        converged=bool(converged),
        grad_norm=gnorm,
        points=x,
        trace=trace,
    )


def random_start(n, d, rng):
    """I.i.d. standard normal rows projected to the sphere."""
    return _normalize(rng.standard_normal((n, d)))


def basin_histogram(energies, gap=BASIN_GAP):
    """Group sorted final energies into clusters separated by more than ``gap``."""
    items = sorted((e, k) for k, e in energies)
    basins = []
    for e, k in items:
        if basins and e - basins[-1]["max_energy"] <= gap:
            b = basins[-1]
            b["count"] += 1
            b["seeds"].append(k)
            b["max_energy"] = e
        else:
            basins.append({"energy": e, "max_energy": e, "count": 1, "seeds": [k]})
    return basins


@dataclass
class OptimizeResult:
    n: int
    d: int
    settings: OptimizeSettings
    best: Configuration
    best_log_product: float
    best_energy: float
    per_seed: list
    stationarity: StationarityReport
    basin_histogram: list

    @property
    def n_converged(self):
        return sum(r.converged for r in self.per_seed)

    def to_dict(self, with_traces=False):
        return {
            "n": self.n,
            "d": self.d,
            "settings": self.settings.to_dict(),
            "best": self.best.to_dict(),
            "best_log_product": self.best_log_product,
            "best_energy": self.best_energy,
            "n_converged": self.n_converged,
            "per_seed": [r.to_dict(with_traces) for r in self.per_seed],
            "stationarity": self.stationarity.to_dict(),
            "basin_histogram": self.basin_histogram,
        }


def minimize(n, d, settings=None):
    """Multistart minimization of the log energy (or Riesz energy) of ``n`` points on ``S^(d-1)``.

    Seed ``k`` draws its start from the ``k``-th child of
    ``SeedSequence(settings.rng_seed)``, so runs are reproducible and each seed
    is independent of how many others are run. ``per_seed`` is sorted by final
    energy (ties by seed index); ``best`` is the lowest-energy converged seed.
    """
    settings = settings or OptimizeSettings()
    if n < 2 or d < 2:
        raise ValueError(f"need n >= 2 and d >= 2, got n={n}, d={d}")
    children = np.random.SeedSequence(settings.rng_seed).spawn(settings.seeds)
    runs = []
    for k, child in enumerate(children):
        x0 = random_start(n, d, np.random.default_rng(child))
        runs.append(descend(x0, settings, seed=k))
    runs.sort(key=lambda r: (r.energy, r.seed))
    converged = [r for r in runs if r.converged]
    if not converged:
        raise AllSeedsFailed(f"none of {settings.seeds} seeds reached grad_tol={settings.grad_tol:g}")
    top = converged[0]
    best = Configuration(top.points, renormalize=True)
    return OptimizeResult(
        n=n,
        d=d,
        settings=settings,
        best=best,
        best_log_product=log_product(best),
        best_energy=top.energy,
        per_seed=runs,
        stationarity=check_stationary(best, 10 * settings.grad_tol),
        basin_histogram=basin_histogram([(r.seed, r.energy) for r in converged]),
    )


@dataclass
class MonotonicityReport:
    n: int
    dims: list
    log_products: list
    increasing_margins: list
    strictly_increasing: bool
    plateau_value: float
    plateau_deviations: list
    plateau_holds: bool

    def to_dict(self):
        return asdict(self)


def verify_monotonicity(n, d_max, settings=None, margin=0.0, plateau_tol=1e-7, d_min=2):
    """Best log products for ``d = d_min .. d_max`` and the two monotonicity claims.

    ``strictly_increasing`` compares consecutive dimensions up to ``d = n - 1``
    (each step must gain more than ``margin``); ``plateau_holds`` checks that
    every ``d >= n - 1`` reaches the regular-simplex product within ``plateau_tol``.
    """
    from .formulas import simplex_product

    settings = settings or OptimizeSettings()
    dims = list(range(d_min, d_max + 1))
    values = [minimize(n, d, settings).best_log_product for d in dims]
    margins = [values[k] - values[k - 1] for k in range(1, len(dims)) if dims[k] <= n - 1]
    plateau = simplex_product(n)
    devs = [values[k] - plateau for k, d in enumerate(dims) if d >= n - 1]
    return MonotonicityReport(
        n=n,
        dims=dims,
        log_products=values,
        increasing_margins=margins,
        strictly_increasing=all(m > margin for m in margins),
        plateau_value=plateau,
        plateau_deviations=devs,
        plateau_holds=all(abs(v) <= plateau_tol for v in devs),
    )


@dataclass
class ConjectureReport:
    d: int
    best_log_product: float
    conjectured_log_product: float
    rotation_distance: float
    verdict: str
    result: OptimizeResult = field(repr=False)

    def to_dict(self):
        return {
            "d": self.d,
            "best_log_product": self.best_log_product,
            "conjectured_log_product": self.conjectured_log_product,
            "difference": self.best_log_product - self.conjectured_log_product,
            "rotation_distance": self.rotation_distance,
            "verdict": self.verdict,
        }


def verify_conjecture(d, settings=None, value_tol=1e-7, shape_tol=1e-5):
    """Compare the numerical optimum of ``d + 2`` points on ``S^(d-1)`` with the
    two-orthogonal-simplex candidate.

    Verdicts: ``SUPPORTED`` (same product and congruent), ``REFUTED-CANDIDATE``
    (a strictly better configuration was found) or ``INCONCLUSIVE`` (the search
    did not reach the candidate's product).
    """
    from .formulas import conjecture_product
    from .generators import ortho_simplexes

    result = minimize(d + 2, d, settings)
    target = conjecture_product(d)
    candidate = ortho_simplexes([d // 2 + 1, (d + 1) // 2 + 1], d)
    dist = rotation_distance(result.best, candidate)
    diff = result.best_log_product - target
    if diff > value_tol:
        verdict = "REFUTED-CANDIDATE"
    elif abs(diff) <= value_tol and dist < shape_tol:
        verdict = "SUPPORTED"
    else:
        verdict = "INCONCLUSIVE"
    return ConjectureReport(d, result.best_log_product, target, dist, verdict, result)
