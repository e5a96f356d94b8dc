"""scikit-learn compatible wrapper around the multistart optimizer."""
import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .geometry import Configuration, log_product
from .optimizer import OptimizeSettings, descend, minimize
from .stationarity import check_stationary
from .validation import check_points, check_positive_int


class SphereEnergyMinimizer(BaseEstimator):
    """Find low-energy configurations of ``n_points`` points on ``S^(dim-1)``.

    Parameters
    ----------
    n_points, dim : int
        Number of points and ambient dimension.
    s : float or None, default None
        Riesz exponent; ``None`` selects the logarithmic energy.
    n_init : int, default 10
        Number of random starts.
    max_iter : int, default 20000
    grad_tol : float, default 1e-9
        Convergence threshold on the largest tangential gradient norm.
    random_state : int, default 0

    Attributes
    ----------
    configuration_ : Configuration
    log_product_ : float
    energy_ : float
    n_iter_ : int
    result_ : OptimizeResult or None
        Full multistart record (``None`` when fitted from a given start).
    """

    def __init__(self, n_points=5, dim=3, s=None, n_init=10, max_iter=20000, grad_tol=1e-9, random_state=0):
        self.n_points = n_points
        self.dim = dim
        self.s = s
        self.n_init = n_init
        self.max_iter = max_iter
        self.grad_tol = grad_tol
        self.random_state = random_state

    def _settings(self):
        return OptimizeSettings(
            max_iters=check_positive_int(self.max_iter, "max_iter"),
            grad_tol=float(self.grad_tol),
            seeds=check_positive_int(self.n_init, "n_init"),
            rng_seed=int(self.random_state),
            s_exponent=self.s,
        )

    def fit(self, X=None, y=None):
        """Run the search. If ``X`` (shape ``(n_points, dim)``) is given it is used
        as the single starting configuration instead of random starts."""
        settings = self._settings()
        if X is None:
            self.result_ = minimize(check_positive_int(self.n_points, "n_points", 2),
                                    check_positive_int(self.dim, "dim", 2), settings)
            best = self.result_.best
            self.energy_ = self.result_.best_energy
            self.n_iter_ = next(r.iterations for r in self.result_.per_seed if r.converged)
            self.converged_ = True
        else:
            x0 = check_points(X, renormalize=True)
            run = descend(x0, settings)
            self.result_ = None
            best = Configuration(run.points, renormalize=True)
            self.energy_ = run.energy
            self.n_iter_ = run.iterations
            self.converged_ = run.converged
        self.configuration_ = best
        self.log_product_ = log_product(best)
        self.stationarity_ = check_stationary(best, 10 * settings.grad_tol)
        return self

    def _check_fitted(self):
        if not hasattr(self, "configuration_"):
            raise NotFittedError("call fit before using this estimator")

    def transform(self, X=None):
        """Return the fitted point array (``X`` is ignored)."""
        self._check_fitted()
        return np.array(self.configuration_.points)

    def fit_transform(self, X=None, y=None):
        return self.fit(X, y).transform()

    def score(self, X=None, y=None):
        """Log product of the fitted configuration (higher is better)."""
        self._check_fitted()
        return self.log_product_
