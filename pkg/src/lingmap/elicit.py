"""Automatic elicitation of linguistic variables from 1-D samples.

The pipeline has three stages:

1. subtractive clustering picks the number of clusters and seed centers,
2. fuzzy c-means refines the centers and produces a membership column per
   cluster,
3. a damped Gauss-Newton fit compresses each membership column into a
   two-term Gaussian, which becomes one linguistic term.

Everything is deterministic: no RNG is involved anywhere, and exact
potential ties in stage 1 are broken by value so that permuting the input
cannot change the outcome.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DatasetError, DefinitionError, ElicitationError
from .membership import Gauss2, gauss2_sum
from .variables import Interval, LinguisticVariable

# A two-term Gaussian has six parameters, so fits (and therefore
# elicitation) need at least six observations.
MIN_OBSERVATIONS = 6


@dataclass(frozen=True)
class TrainingSet:
    """1-D observations with optional row labels (labels are metadata only)."""

    values: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float).ravel()
        if arr.size == 0:
            raise DatasetError("training set is empty")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0])
            raise DatasetError(f"non-finite value at row {bad + 1}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != arr.size:
                raise DatasetError(
                    f"{len(labels)} labels for {arr.size} values"
                )
            object.__setattr__(self, "labels", labels)

    def __len__(self):
        return int(self.values.size)


@dataclass(frozen=True)
class ElicitConfig:
    """Tunables for the elicitation pipeline, with conventional defaults."""

    radius: float = 0.5
    squash_factor: float = 1.25
    accept_ratio: float = 0.5
    reject_ratio: float = 0.15
    fuzzifier: float = 2.0
    tol: float = 1e-6
    max_iter: int = 500
    residual_ceiling: float = 0.15
    coverage_floor: float = 0.2

    def __post_init__(self):
        if not 0.0 < self.radius:
            raise DefinitionError("radius must be positive")
        if self.squash_factor < 1.0:
            raise DefinitionError("squash_factor must be at least 1")
        if not 0.0 < self.reject_ratio < self.accept_ratio <= 1.0:
            raise DefinitionError("need 0 < reject_ratio < accept_ratio <= 1")
        if self.fuzzifier <= 1.0:
            raise DefinitionError("fuzzifier must exceed 1")
        if self.tol <= 0.0 or self.max_iter < 1:
            raise DefinitionError("tol must be positive and max_iter >= 1")
        if self.residual_ceiling <= 0.0:
            raise DefinitionError("residual_ceiling must be positive")


@dataclass(frozen=True)
class ClusterModel:
    """Fuzzy c-means result: ascending centers and matching memberships.

    memberships has one row per observation and one column per center;
    rows sum to 1.  objective_path records the weighted within-cluster
    scatter at the start of each iteration and is nonincreasing.
    """

    centers: np.ndarray
    memberships: np.ndarray
    objective_path: tuple[float, ...]
    iterations: int
    converged: bool


@dataclass(frozen=True)
class Gauss2Fit:
    """Outcome of fitting a two-term Gaussian to (x, y) samples."""

    params: Gauss2
    residual: float
    converged: bool
    iterations: int


@dataclass(frozen=True)
class ElicitResult:
    """A fully elicited variable plus the intermediate artifacts behind it."""

    variable: LinguisticVariable
    clusters: ClusterModel
    fits: tuple[Gauss2Fit, ...]
    warnings: tuple[str, ...] = field(default_factory=tuple)


def _pick_max(potentials: np.ndarray, xs: np.ndarray) -> int:
    """Index of the highest potential; exact ties go to the smallest value."""
    top = potentials.max()
    candidates = np.flatnonzero(potentials == top)
    return int(candidates[np.argmin(xs[candidates])])


def subtractive_clusters(values, config: ElicitConfig = ElicitConfig()) -> np.ndarray:
    """Estimate cluster centers by potential subtraction.

    values are normalized to [0, 1] by their own min/max before any
    distance is computed, so `radius` is a fraction of the observed data
    span.  Returns centers in original units, in order of selection
    (strongest first).  Identical data collapses to a single center.
    """
    xs = np.asarray(values, dtype=float).ravel()
    if xs.size == 0:
        raise DatasetError("training set is empty")
    # canonical order: potentials are sums whose float rounding depends on
    # summation order, so sorting first makes the result independent of how
    # the caller happened to arrange the data
    xs = np.sort(xs)
    lo, hi = float(xs[0]), float(xs[-1])
    if hi == lo:
        return np.array([lo])
    zs = (xs - lo) / (hi - lo)

    sq = (zs[:, None] - zs[None, :]) ** 2
    potentials = np.exp(-4.0 / config.radius**2 * sq).sum(axis=1)
    rb = config.squash_factor * config.radius

    first_idx = _pick_max(potentials, zs)
    p_first = potentials[first_idx]
    centers = [first_idx]
    potentials = potentials - p_first * np.exp(-4.0 / rb**2 * sq[first_idx])

    while True:
        idx = _pick_max(potentials, zs)
        p = potentials[idx]
        if p <= 0.0:
            break
        if p > config.accept_ratio * p_first:
            accept = True
        elif p < config.reject_ratio * p_first:
            break
        else:
            # gray zone: accept only if the candidate is far enough from
            # every existing center relative to how weak it is
            dmin = min(abs(zs[idx] - zs[c]) for c in centers)
            accept = dmin / config.radius + p / p_first >= 1.0
        if accept:
            centers.append(idx)
            potentials = potentials - p * np.exp(-4.0 / rb**2 * sq[idx])
        else:
            potentials = potentials.copy()
            potentials[idx] = 0.0

    return xs[centers]


def _fcm_memberships(xs: np.ndarray, centers: np.ndarray, fuzzifier: float) -> np.ndarray:
    d2 = (xs[:, None] - centers[None, :]) ** 2
    u = np.zeros_like(d2)
    zero_rows = np.any(d2 == 0.0, axis=1)
    if np.any(zero_rows):
        hits = d2[zero_rows] == 0.0
        u[zero_rows] = hits / hits.sum(axis=1, keepdims=True)
    regular = ~zero_rows
    if np.any(regular):
        power = 1.0 / (fuzzifier - 1.0)
        inv = d2[regular] ** -power
        u[regular] = inv / inv.sum(axis=1, keepdims=True)
    return u


def fcm(values, k: int, init=None, config: ElicitConfig = ElicitConfig()) -> ClusterModel:
    """Fuzzy c-means on 1-D data with a deterministic start.

    init supplies the starting centers (e.g. from subtractive_clusters);
    when missing or shorter than k, evenly spaced quantiles of the data are
    used instead.  Iteration stops when the largest center movement drops
    below config.tol; hitting config.max_iter first sets converged=False
    rather than raising.  Centers come back sorted ascending with
    membership columns permuted to match.
    """
    xs = np.asarray(values, dtype=float).ravel()
    if xs.size == 0:
        raise DatasetError("training set is empty")
    if k < 1:
        raise DefinitionError("k must be at least 1")
    if k > xs.size:
        raise DefinitionError(f"cannot form {k} clusters from {xs.size} observations")

    if init is not None and len(init) >= k:
        centers = np.asarray(init, dtype=float).ravel()[:k].copy()
    else:
        centers = np.quantile(xs, (np.arange(k) + 0.5) / k)
    if np.unique(centers).size < k:
        # coincident seeds would never separate; nudge onto quantiles
        centers = np.quantile(xs, (np.arange(k) + 0.5) / k)
        if np.unique(centers).size < k:
            centers = centers + np.arange(k) * 1e-9 * max(np.ptp(xs), 1.0)

    m = config.fuzzifier
    objective_path = []
    converged = False
    iterations = 0
    for _ in range(config.max_iter):
        u = _fcm_memberships(xs, centers, m)
        d2 = (xs[:, None] - centers[None, :]) ** 2
        objective_path.append(float((u**m * d2).sum()))
        weights = u**m
        new_centers = (weights * xs[:, None]).sum(axis=0) / weights.sum(axis=0)
        iterations += 1
        shift = float(np.abs(new_centers - centers).max())
        centers = new_centers
        if shift < config.tol:
            converged = True
            break

    u = _fcm_memberships(xs, centers, m)
    order = np.argsort(centers, kind="stable")
    centers = centers[order]
    u = u[:, order]
    centers.setflags(write=False)
    u.setflags(write=False)
    return ClusterModel(
        centers=centers,
        memberships=u,
        objective_path=tuple(objective_path),
        iterations=iterations,
        converged=converged,
    )


def _gauss2_jacobian(xs: np.ndarray, p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Model values and Jacobian at p = (a1, b1, log g1, a2, b2, log g2)."""
    jac = np.empty((xs.size, 6))
    f = np.zeros(xs.size)
    # trial steps can push log-widths to extremes; exp then saturates to
    # inf/0 and the resulting non-finite cost gets the step rejected
    with np.errstate(all="ignore"):
        for t in range(2):
            a, b, logg = p[3 * t : 3 * t + 3]
            g = float(np.exp(logg))
            dx = xs - b
            e = np.exp(-(dx**2) / g**2)
            f += a * e
            jac[:, 3 * t] = e
            jac[:, 3 * t + 1] = a * e * 2.0 * dx / g**2
            jac[:, 3 * t + 2] = a * e * 2.0 * dx**2 / g**2
    return f, jac


def fit_gauss2(
    xs,
    ys,
    init: Gauss2,
    max_iter: int = 200,
    cost_tol: float = 1e-9,
    step_tol: float = 1e-10,
) -> Gauss2Fit:
    """Least-squares fit of a two-term Gaussian by damped Gauss-Newton.

    Widths are optimized in log space, which keeps them positive without
    constraints.  Only cost-reducing steps are ever accepted, so the result
    is never worse than init.  Convergence means the relative cost decrease
    fell below cost_tol or the step shrank below step_tol; running out of
    iterations or damping headroom reports converged=False instead.
    """
    xs = np.asarray(xs, dtype=float).ravel()
    ys = np.asarray(ys, dtype=float).ravel()
    if xs.size != ys.size:
        raise DatasetError(f"{xs.size} x values but {ys.size} y values")
    if xs.size < MIN_OBSERVATIONS:
        raise DatasetError(
            f"dataset too small: fitting a two-term Gaussian needs at least "
            f"{MIN_OBSERVATIONS} points, got {xs.size}"
        )
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        raise DatasetError("non-finite values in fit data")

    p = np.array(
        [
            init.alpha1,
            init.beta1,
            math.log(init.gamma1),
            init.alpha2,
            init.beta2,
            math.log(init.gamma2),
        ]
    )
    f, jac = _gauss2_jacobian(xs, p)
    residual = f - ys
    cost = float(residual @ residual)
    # below this, the residual is numerical noise and further damping
    # sweeps would just stall without improving
    cost_floor = 1e-22 * max(float(ys @ ys), 1.0)

    lam = 1e-3
    converged = cost <= cost_floor
    iterations = 0
    while not converged and iterations < max_iter:
        iterations += 1
        grad = jac.T @ residual
        hess = jac.T @ jac
        diag = np.maximum(np.diag(hess), 1e-12)

        accepted = False
        while lam <= 1e12:
            try:
                step = np.linalg.solve(hess + lam * np.diag(diag), -grad)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            new_p = p + step
            new_f, new_jac = _gauss2_jacobian(xs, new_p)
            new_residual = new_f - ys
            new_cost = float(new_residual @ new_residual)
            if np.isfinite(new_cost) and new_cost < cost:
                accepted = True
                break
            lam *= 10.0
        if not accepted:
            break

        drop = cost - new_cost
        p, residual, jac, cost = new_p, new_residual, new_jac, new_cost
        lam = max(lam / 10.0, 1e-12)
        if (
            cost <= cost_floor
            or drop <= cost_tol * max(cost, 1e-300)
            or float(np.linalg.norm(step)) <= step_tol
        ):
            converged = True
            break

    params = Gauss2(
        alpha1=float(p[0]),
        beta1=float(p[1]),
        gamma1=float(np.exp(p[2])),
        alpha2=float(p[3]),
        beta2=float(p[4]),
        gamma2=float(np.exp(p[5])),
    )
    rms = math.sqrt(cost / xs.size)
    return Gauss2Fit(params=params, residual=rms, converged=converged, iterations=iterations)


def _cluster_spread(xs: np.ndarray, u_col: np.ndarray, center: float, m: float) -> float:
    """Membership-weighted standard deviation of a cluster, floored away from 0."""
    w = u_col**m
    var = float((w * (xs - center) ** 2).sum() / w.sum())
    floor = 0.01 * max(float(np.ptp(xs)), 1e-9)
    return max(math.sqrt(var), floor)


def elicit_variable(
    data: TrainingSet,
    name: str,
    domain: Interval,
    config: ElicitConfig = ElicitConfig(),
    kind: str = "interval",
) -> ElicitResult:
    """Derive a linguistic variable from raw samples.

    Cluster count and seeds come from subtractive clustering, memberships
    from fuzzy c-means, and each membership column is compressed into a
    two-term Gaussian term named LC1..LCk in ascending-center order.  Fails
    if any fit's RMS exceeds config.residual_ceiling; merely thin coverage
    of the sampled range is reported as a warning instead.
    """
    xs = data.values
    if xs.size < MIN_OBSERVATIONS:
        raise ElicitationError(
            f"dataset too small: elicitation needs at least {MIN_OBSERVATIONS} "
            f"observations, got {xs.size}"
        )
    outside = xs[(xs < domain.lo) | (xs > domain.hi)]
    if outside.size:
        raise ElicitationError(
            f"{outside.size} observation(s) outside the domain {domain}, "
            f"first is {float(outside[0])!r}"
        )

    seeds = subtractive_clusters(xs, config)
    model = fcm(xs, k=seeds.size, init=seeds, config=config)

    fits = []
    terms = {}
    for col, center in enumerate(model.centers):
        spread = _cluster_spread(xs, model.memberships[:, col], float(center), config.fuzzifier)
        init = Gauss2(
            alpha1=0.5,
            beta1=float(center),
            gamma1=spread,
            alpha2=0.5,
            beta2=float(center),
            gamma2=spread,
        )
        fit = fit_gauss2(xs, model.memberships[:, col], init)
        if fit.residual > config.residual_ceiling:
            raise ElicitationError(
                f"membership fit for term LC{col + 1} of '{name}' has RMS residual "
                f"{fit.residual:.4f}, above the ceiling {config.residual_ceiling}"
            )
        fits.append(fit)
        terms[f"LC{col + 1}"] = fit.params

    variable = LinguisticVariable(name=name, kind=kind, domain=domain, terms=terms)

    warnings = []
    hull = np.linspace(float(xs.min()), float(xs.max()), 101)
    probe = np.unique(np.concatenate([hull, xs]))
    coverage = np.max(
        np.stack([np.asarray(mf(probe), dtype=float) for mf in terms.values()]), axis=0
    )
    worst = int(np.argmin(coverage))
    if coverage[worst] < config.coverage_floor:
        warnings.append(
            f"coverage of '{name}' dips to {coverage[worst]:.3f} near "
            f"{probe[worst]:.4g}, below the floor {config.coverage_floor}"
        )

    return ElicitResult(
        variable=variable,
        clusters=model,
        fits=tuple(fits),
        warnings=tuple(warnings),
    )
