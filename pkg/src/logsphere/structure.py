"""Mirror relations, their equivalence classes, degeneracy, and the
three-way classification of stationary ``N = d + 2`` configurations.

Two vertices are mirror related when every other vertex is equidistant from
both. All comparisons are absolute on squared distances, which live in
``[0, 4]``, with one shared tolerance.
"""
from dataclasses import dataclass, field
import warnings

import numpy as np

from .exceptions import IndexOutOfRange, TransitivityViolation, WrongCardinalityWarning
from .geometry import as_points, squared_distances
from .stationarity import DEFAULT_RANK_TOL, DEFAULT_STATIONARY_TOL, check_stationary, numerical_rank

DEFAULT_TOL = 1e-7


def mirror_related(dists, i, j, tol=DEFAULT_TOL):
    """``max_{k != i, j} |d_ik - d_jk| <= tol`` (vacuously true for ``N = 2``)."""
    dists = np.asarray(dists)
    n = dists.shape[0]
    for idx in (i, j):
        if not 0 <= idx < n:
            raise IndexOutOfRange(f"vertex index {idx} outside 0..{n - 1}")
    if i == j:
        raise ValueError("mirror relation needs two distinct vertices")
    mask = np.ones(n, dtype=bool)
    mask[[i, j]] = False
    if not mask.any():
        return True
    return bool(np.abs(dists[i, mask] - dists[j, mask]).max() <= tol)


def mirror_matrix(dists, tol=DEFAULT_TOL):
    """Boolean matrix of pairwise mirror verdicts (diagonal False)."""
    n = dists.shape[0]
    out = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = mirror_related(dists, i, j, tol)
    return out


@dataclass(frozen=True)
class MirrorPartition:
    classes: list
    pair_tolerance: float
    class_edge_lengths: dict = field(default_factory=dict)

    @property
    def sizes(self):
        return sorted(len(c) for c in self.classes)

    def to_dict(self):
        return {
            "classes": [list(c) for c in self.classes],
            "sizes": self.sizes,
            "pair_tolerance": self.pair_tolerance,
            "class_edge_lengths": {str(k): v for k, v in self.class_edge_lengths.items()},
        }


def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def mirror_partition(config, tol=DEFAULT_TOL):
    """Equivalence classes of the mirror relation (0-based indices, sorted).

    Classes come from union-find over the pairwise verdicts and are then
    re-validated: every pair inside a class must itself be mirror related and
    the class must be a regular simplex (edge spread at most ``2 tol``).

    Raises
    ------
    TransitivityViolation
        When the pairwise verdicts at ``tol`` are not transitive on this data.
    """
    dists = squared_distances(config)
    n = dists.shape[0]
    rel = mirror_matrix(dists, tol)
    parent = list(range(n))
    for i, j in zip(*np.nonzero(np.triu(rel))):
        ri, rj = _find(parent, i), _find(parent, j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups = {}
    for i in range(n):
        groups.setdefault(_find(parent, i), []).append(i)
    classes = sorted((sorted(g) for g in groups.values()), key=lambda c: c[0])
    lengths = {}
    for c in classes:
        if len(c) < 2:
            continue
        for a in range(len(c)):
            for b in range(a + 1, len(c)):
                if not rel[c[a], c[b]]:
                    raise TransitivityViolation(
                        f"vertices {c[a]} and {c[b]} are joined through mirror relations "
                        f"but are not mirror related at tol={tol:g}"
                    )
        edges = dists[np.ix_(c, c)][np.triu_indices(len(c), k=1)]
        if edges.max() - edges.min() > 2 * tol:
            raise TransitivityViolation(f"class {c} is not a regular simplex within {2 * tol:g}")
        lengths[tuple(c)] = float(edges.mean())
    return MirrorPartition(classes=classes, pair_tolerance=float(tol), class_edge_lengths=lengths)


def span_dimension(config, rank_tol=DEFAULT_RANK_TOL):
    """Dimension of the affine hull: numerical rank of the differences ``x_i - x_1``."""
    x = np.asarray(config.points if hasattr(config, "points") else config, dtype=float)
    if x.shape[0] < 2:
        return 0
    sv = np.linalg.svd(x[1:] - x[0], compute_uv=False)
    return numerical_rank(sv, rank_tol)


def apex_vertices(dists, tol=DEFAULT_TOL):
    """Vertices whose outgoing squared edge lengths all agree within ``tol``."""
    n = dists.shape[0]
    out = []
    for i in range(n):
        row = np.delete(dists[i], i)
        if row.max() - row.min() <= tol:
            out.append(i)
    return out


@dataclass(frozen=True)
class TrichotomyVerdict:
    """Which of (a) degenerate, (b) equidistant apex, (c) fully mirrored hold.

    ``counterexample_candidate`` is set when a stationary ``N = d + 2`` input
    satisfies none of them.
    """

    degenerate: bool
    span_dimension: int
    apex_vertices: list
    fully_mirrored: bool
    unmirrored_vertices: list
    partition: MirrorPartition
    case_labels: frozenset
    n: int
    d: int
    is_stationary: bool
    advisory: bool
    counterexample_candidate: bool

    def to_dict(self):
        return {
            "case_labels": sorted(self.case_labels),
            "degenerate": self.degenerate,
            "span_dimension": self.span_dimension,
            "apex_vertices": list(self.apex_vertices),
            "fully_mirrored": self.fully_mirrored,
            "unmirrored_vertices": list(self.unmirrored_vertices),
            "partition": self.partition.to_dict() if self.partition is not None else None,
            "n": self.n,
            "d": self.d,
            "is_stationary": self.is_stationary,
            "advisory": self.advisory,
            "counterexample_candidate": self.counterexample_candidate,
        }


def classify_trichotomy(config, tol=DEFAULT_TOL, rank_tol=DEFAULT_RANK_TOL, stationary_tol=DEFAULT_STATIONARY_TOL):
    """Evaluate the three predicates independently and report every one that holds.

    The classification is meant for stationary configurations with
    ``N = d + 2``; other inputs are still classified but marked advisory
    (with a :class:`WrongCardinalityWarning` for the cardinality case).
    """
    x = as_points(config)
    n, d = x.shape
    if n != d + 2:
        warnings.warn(f"trichotomy assumes N = d + 2, got N={n}, d={d}", WrongCardinalityWarning, stacklevel=2)
    dists = squared_distances(x)
    span = span_dimension(x, rank_tol)
    degenerate = span < d
    apex = apex_vertices(dists, tol)
    rel = mirror_matrix(dists, tol)
    unmirrored = [i for i in range(n) if not rel[i].any()]
    fully = not unmirrored
    try:
        partition = mirror_partition(x, tol)
    except TransitivityViolation:
        partition = None
    labels = set()
    if degenerate:
        labels.add("a")
    if apex:
        labels.add("b")
    if fully:
        labels.add("c")
    stationary = check_stationary(x, stationary_tol).is_stationary
    advisory = n != d + 2 or not stationary
    return TrichotomyVerdict(
        degenerate=degenerate,
        span_dimension=span,
        apex_vertices=apex,
        fully_mirrored=fully,
        unmirrored_vertices=unmirrored,
        partition=partition,
        case_labels=frozenset(labels),
        n=n,
        d=d,
        is_stationary=stationary,
        advisory=advisory,
        counterexample_candidate=(not advisory) and not labels,
    )
