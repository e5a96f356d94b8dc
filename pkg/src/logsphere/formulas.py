"""Closed-form log products of the configuration families and the auxiliary
functions ``F, G, H, L`` behind the comparison inequalities.

Every product is returned as a natural log. Where a printed display and a
simplified algebraic form both exist, both are implemented (``*_display``)
and the test suite checks they agree.
"""
from dataclasses import dataclass
import math

import numpy as np

from .exceptions import DomainError, InfeasibleSizes

LN2 = math.log(2.0)


@dataclass(frozen=True)
class ProductFormulaResult:
    formula_id: str
    params: tuple
    log_value: float

    @property
    def value(self):
        return math.exp(self.log_value) if self.log_value < 709.0 else None


def _xlog_ratio(n):
    """``C(n, 2) * log(n / (n - 1))``, zero for ``n = 1``."""
    if n < 2:
        return 0.0
    return 0.5 * n * (n - 1) * math.log(n / (n - 1))


def simplex_product(n):
    """Log product of the regular ``(n-1)``-simplex: ``C(n,2) log(2n/(n-1))``."""
    if n < 2:
        raise DomainError(f"simplex needs n >= 2, got {n}")
    return 0.5 * n * (n - 1) * math.log(2.0 * n / (n - 1))


def two_simplex_product(k, l):
    """Log product of orthogonal origin-centred simplexes with ``k`` and ``l`` vertices.

    ``kl log 2 + C(k,2) log(2k/(k-1)) + C(l,2) log(2l/(l-1))``; a single vertex
    contributes no internal edges. For ``k = 1`` this is formula-only: a lone
    apex at squared distance 2 from a centred simplex is not an optimum of this
    family.
    """
    if k < 1 or l < 1:
        raise DomainError(f"simplex sizes must be >= 1, got {(k, l)}")
    out = k * l * LN2
    for s in (k, l):
        if s >= 2:
            out += simplex_product(s)
    return out


def two_simplex_product_display(k, d):
    """Same quantity parameterized by a ``k``-simplex and a ``(d-k)``-simplex in ``R^d``:
    ``2^((d+1)(d+2)/2) ((k+1)/k)^((k+1)k/2) ((d-k+1)/(d-k))^((d-k+1)(d-k)/2)``."""
    if not 1 <= k <= d - 1:
        raise DomainError(f"need 1 <= k <= d-1, got k={k}, d={d}")
    return 0.5 * (d + 1) * (d + 2) * LN2 + _xlog_ratio(k + 1) + _xlog_ratio(d - k + 1)


def conjecture_product(d):
    """Log of the conjectured maximal product of ``d + 2`` points on ``S^(d-1)``.

    Uses ``a = floor(d/2)`` and ``b = floor((d+1)/2)``:
    ``((d+2)(d+1)/2) log 2 + C(a+1,2) log((a+1)/a) + C(b+1,2) log((b+1)/b)``.
    """
    if d < 2:
        raise DomainError(f"need d >= 2, got {d}")
    a, b = d // 2, (d + 1) // 2
    return 0.5 * (d + 2) * (d + 1) * LN2 + _xlog_ratio(a + 1) + _xlog_ratio(b + 1)


def square_base_product(d):
    """Log product of the best ``d + 2``-point configuration with an equidistant apex.

    The apex sits over the conjectured ``d + 1``-point optimum of ``S^(d-2)``
    shrunk to radius ``r``, ``r^2 = N(N-2)/(N-1)^2``:
    ``log P = (N-1) log(2N/(N-1)) + C(N-1, 2) log r^2 + conjecture_product(d-1)``.
    """
    if d < 3:
        raise DomainError(f"need d >= 3, got {d}")
    n = d + 2
    r2 = n * (n - 2) / (n - 1) ** 2
    return (n - 1) * math.log(2.0 * n / (n - 1)) + 0.5 * (n - 1) * (n - 2) * math.log(r2) + conjecture_product(d - 1)


def square_base_product_display(k):
    """The even-dimension (``d = 2k``, ``k >= 2``) expansion of :func:`square_base_product`."""
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    return (
        (k + 1) * (2 * k + 1) * LN2
        + (2 * k + 1) * math.log((2 * k + 2) / (2 * k + 1))
        + k * (2 * k + 1) * math.log(2 * k * (2 * k + 2) / (2 * k + 1) ** 2)
        + _xlog_ratio(k)
        + _xlog_ratio(k + 1)
    )


def conjecture_product_even_display(k):
    """``2^((k+1)(2k+1)) ((k+1)/k)^(k(k+1))``, the ``d = 2k`` case of :func:`conjecture_product`."""
    return (k + 1) * (2 * k + 1) * LN2 + k * (k + 1) * math.log((k + 1) / k)


def _check_three_sizes(k, l, m):
    if min(k, l, m) < 2:
        raise InfeasibleSizes(f"three-simplex sizes must be >= 2, got {(k, l, m)}")


def three_simplex_product(k, l, m):
    """Log product of the three-simplex stationary configuration, as displayed.

    ``P = 2^C(N,2) (N/(N-1))^C(N,2) (k/(k-1))^C(k,2) (l/(l-1))^C(l,2) / ((k+l)/(k+l-1))^C(k+l,2)``.
    Symmetric in ``k, l``; ``m`` is the simplex on the opposite side of the axis.
    """
    _check_three_sizes(k, l, m)
    n = k + l + m
    return 0.5 * n * (n - 1) * LN2 + _xlog_ratio(n) + _xlog_ratio(k) + _xlog_ratio(l) - _xlog_ratio(k + l)


def three_simplex_product_from_edges(k, l, m):
    """Same product assembled edge class by edge class from the closed-form heights."""
    _check_three_sizes(k, l, m)
    n = k + l + m
    one_minus_u2 = (k + l - 1) * n / ((k + l) * (n - 1))
    apex = 2.0 * n / (n - 1)
    c2 = lambda x: 0.5 * x * (x - 1)
    return (
        c2(k) * math.log(2.0 * k * one_minus_u2 / (k - 1))
        + c2(l) * math.log(2.0 * l * one_minus_u2 / (l - 1))
        + k * l * math.log(2.0 * one_minus_u2)
        + (c2(m) + m * (k + l)) * math.log(apex)
    )


FORMULAS = {
    "simplex": simplex_product,
    "conjecture": conjecture_product,
    "square_base": square_base_product,
    "two_simplex": two_simplex_product,
    "three_simplex": three_simplex_product,
}


def evaluate(formula_id, *params):
    try:
        fn = FORMULAS[formula_id]
    except KeyError:
        raise DomainError(f"unknown formula {formula_id!r}; known: {', '.join(FORMULAS)}") from None
    return ProductFormulaResult(formula_id, tuple(params), fn(*params))


def _check_positive(x):
    if np.any(np.asarray(x) <= 0):
        raise DomainError("F and its derivatives need x > 0")


def F(x):
    """``F(x) = x(x+1) [ln x - ln(x+1)]`` for ``x > 0``."""
    _check_positive(x)
    x = np.asarray(x, dtype=float)
    return x * (x + 1) * (np.log(x) - np.log1p(x))


def F1(x):
    _check_positive(x)
    x = np.asarray(x, dtype=float)
    return (2 * x + 1) * (np.log(x) - np.log1p(x)) + 1


def F2(x):
    _check_positive(x)
    x = np.asarray(x, dtype=float)
    return 2 * (np.log(x) - np.log1p(x)) + 1 / x + 1 / (x + 1)


def F3(x):
    _check_positive(x)
    x = np.asarray(x, dtype=float)
    return -((1 / x - 1 / (x + 1)) ** 2)


def G(x):
    """``G(x) = F(x) - F(x+1)``; strictly decreasing."""
    return F(x) - F(np.asarray(x, dtype=float) + 1)


def L(x):
    """``L(x) = C(x,2) [ln x - ln(x-1)]`` for ``x > 1``. Equals ``-F(x-1)/2``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 1):
        raise DomainError("L needs x > 1")
    return 0.5 * x * (x - 1) * (np.log(x) - np.log(x - 1))


def H(x, d):
    """``H(x) = -F(x) - F(d - x)``, maximized at ``x = d/2``."""
    return -F(x) - F(d - np.asarray(x, dtype=float))


def case_b_gap(k, odd=False):
    """``G(2k) - G(k-1)`` (``d = 2k``) or ``G(2k+1) - G(k)`` (``d = 2k+1``).

    Equals twice the log-product gap between the apex configuration and the
    conjectured optimum, so negative values mean the apex family loses.
    """
    if odd:
        if k < 1:
            raise DomainError(f"odd branch needs k >= 1, got {k}")
        return float(G(2 * k + 1) - G(k))
    if k < 2:
        raise DomainError(f"even branch needs k >= 2, got {k}")
    return float(G(2 * k) - G(k - 1))


def check_case_b_inequality(k, odd=False):
    """Whether the apex family is beaten by the two-simplex candidate in ``d = 2k`` (or ``2k+1``)."""
    return case_b_gap(k, odd) < 0


def check_case_b_by_products(k, odd=False):
    d = 2 * k + 1 if odd else 2 * k
    return square_base_product(d) < conjecture_product(d)


def H_argmax(d):
    """Split ``k`` in ``[1, d-1]`` maximizing the two-simplex product with sizes ``k+1, d-k+1``.

    Ties (``d`` odd) resolve to the smaller ``k``, which is ``floor(d/2)``.
    """
    if d < 2:
        raise DomainError(f"need d >= 2, got {d}")
    values = [two_simplex_product(k + 1, d - k + 1) for k in range(1, d)]
    top = max(values)
    return 1 + next(i for i, v in enumerate(values) if v >= top - 1e-12 * abs(top))


def three_simplex_gap(k, l, m):
    """``L(l) + L(N) - L(l+m) - L(k+l)``; equals the log of ``P(three) / P(two, merged)``."""
    _check_three_sizes(k, l, m)
    n = k + l + m
    return float(L(l) + L(n) - L(l + m) - L(k + l))


def check_three_simplex_inequality(k, l, m):
    """Both forms of the three-simplex comparison; returns ``(by_L, by_products)``."""
    by_l = three_simplex_gap(k, l, m) < 0
    by_products = three_simplex_product(k, l, m) < two_simplex_product(k, l + m)
    return by_l, by_products
