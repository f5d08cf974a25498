"""Fuzzy c-means over scalar data.

Alternating optimization of the fuzzy within-cluster cost

    J(U, V) = sum_j sum_i u_ij**m * (x_j - v_i)**2

where memberships are refreshed from the current centers, then centers from
the fresh memberships, until the largest center shift drops below the
tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import ConfigError, InsufficientData, NonFiniteInput

InitPolicy = Literal["quantile", "random"]


@dataclass(frozen=True)
class FcmConfig:
    """Knobs for one :func:`fcm_fit` run.

    ``init="quantile"`` places center ``i`` at the ``(i + 0.5) / c`` quantile of
    the distinct data values. ``init="random"`` draws ``c`` distinct values
    without replacement using ``seed``.
    """

    cluster_count: int = 3
    fuzzifier: float = 2.0
    tolerance: float = 1e-6
    max_iterations: int = 300
    init: InitPolicy = "quantile"
    seed: int = 0

    def __post_init__(self) -> None:
        if isinstance(self.cluster_count, bool) or int(self.cluster_count) != self.cluster_count or self.cluster_count < 1:
            raise ConfigError(f"cluster_count must be an integer >= 1, got {self.cluster_count!r}")
        if not np.isfinite(self.fuzzifier) or self.fuzzifier <= 1:
            raise ConfigError(f"fuzzifier must be > 1, got {self.fuzzifier!r}")
        if not np.isfinite(self.tolerance) or self.tolerance <= 0:
            raise ConfigError(f"tolerance must be > 0, got {self.tolerance!r}")
        if isinstance(self.max_iterations, bool) or int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ConfigError(f"max_iterations must be an integer >= 1, got {self.max_iterations!r}")
        if self.init not in ("quantile", "random"):
            raise ConfigError(f"init must be 'quantile' or 'random', got {self.init!r}")
        if int(self.seed) != self.seed or not -(2**63) <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit integer, got {self.seed!r}")


@dataclass(frozen=True, eq=False)
class FcmModel:
    """Result of one fit.

    Attributes
    ----------
    centers : (c,) array
    memberships : (N, c) array
        Row ``j`` holds the memberships of point ``j``; rows sum to one.
        Computed from the final ``centers``.
    labels : (N,) int array
        ``argmax`` of each membership row, ties resolved to the lowest index.
    iterations_run : int
    final_cost : float
        Cost of ``(memberships, centers)``.
    converged : bool
        False when the iteration cap was hit or an empty cluster was met.
    cost_history : tuple of float
        Cost after each completed iteration (memberships then centers).
    """

    centers: np.ndarray
    memberships: np.ndarray
    labels: np.ndarray
    iterations_run: int
    final_cost: float
    converged: bool
    cost_history: tuple = field(default=())


def _as_data(data) -> np.ndarray:
    x = np.asarray(data, dtype=np.float64).ravel()
    if not np.all(np.isfinite(x)):
        raise NonFiniteInput("data contains NaN or infinite values")
    return x


def update_memberships(data, centers, m: float = 2.0) -> np.ndarray:
    """Membership matrix ``u[j, i] = 1 / sum_k (d_ij / d_kj) ** (2 / (m - 1))``.

    Points sitting exactly on one or more centers split their membership
    evenly among those centers and get zero elsewhere.
    """
    x = _as_data(data)
    v = _as_data(centers)
    if m <= 1:
        raise ConfigError(f"fuzzifier must be > 1, got {m!r}")
    d = np.abs(x[:, None] - v[None, :])
    dmin = d.min(axis=1, keepdims=True)
    hit = d == 0.0
    coincident = hit.any(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        # (dmin / d) in (0, 1] keeps the power from overflowing near a center.
        w = (dmin / d) ** (2.0 / (m - 1.0))
    w[coincident] = hit[coincident].astype(np.float64)
    return w / w.sum(axis=1, keepdims=True)


def _update_centers(x: np.ndarray, u: np.ndarray, m: float, previous):
    w = u**m
    denom = w.sum(axis=0)
    empty = denom == 0.0
    if empty.any() and previous is None:
        raise ValueError("empty cluster encountered and no previous centers were given")
    with np.errstate(divide="ignore", invalid="ignore"):
        v = (w * x[:, None]).sum(axis=0) / denom
    # A weighted mean is bounded by the data range; clip away rounding spill.
    v = np.clip(v, x.min(), x.max())
    if empty.any():
        v = np.where(empty, np.asarray(previous, dtype=np.float64), v)
    return v, empty


def update_centers(data, memberships, m: float = 2.0, previous=None) -> np.ndarray:
    """Centers ``v_i = sum_j u_ij**m x_j / sum_j u_ij**m``.

    A cluster whose weight sum is zero keeps its value from ``previous``;
    without ``previous`` such a cluster raises ``ValueError``.
    """
    x = _as_data(data)
    u = np.asarray(memberships, dtype=np.float64)
    if u.ndim != 2 or u.shape[0] != x.size:
        raise ValueError(f"memberships must have shape ({x.size}, c), got {u.shape}")
    if not np.all(np.isfinite(u)):
        raise NonFiniteInput("memberships contain NaN or infinite values")
    v, _ = _update_centers(x, u, m, previous)
    return v


def compute_cost(data, centers, memberships, m: float = 2.0) -> float:
    x = _as_data(data)
    v = _as_data(centers)
    u = np.asarray(memberships, dtype=np.float64)
    return float(((u**m) * (x[:, None] - v[None, :]) ** 2).sum())


def initial_centers(data, config: FcmConfig) -> np.ndarray:
    """Starting centers per ``config.init``; always sorted ascending.

    Both policies work on the distinct values of ``data`` so that heavily
    repeated values (e.g. empty histogram bins) do not collapse several
    centers onto one point. With fewer distinct values than clusters the
    quantile policy necessarily repeats values.
    """
    x = _as_data(data)
    c = config.cluster_count
    distinct = np.unique(x)
    if config.init == "quantile":
        q = (np.arange(c) + 0.5) / c
        return np.quantile(distinct, q)
    rng = np.random.default_rng(config.seed % 2**64)
    pool = distinct if distinct.size >= c else x
    return np.sort(rng.choice(pool, size=c, replace=False))


def _labels(u: np.ndarray) -> np.ndarray:
    return np.argmax(u, axis=1).astype(np.int64)


def fcm_fit(data, config: FcmConfig | None = None, *, init=None) -> FcmModel:
    """Fit fuzzy c-means to scalar ``data``.

    ``init`` overrides the configured initialization with explicit starting
    centers.
    """
    config = config or FcmConfig()
    x = _as_data(data)
    c = config.cluster_count
    m = config.fuzzifier
    if x.size < c:
        raise InsufficientData(f"{x.size} data points cannot form {c} clusters")
    if init is None:
        v = initial_centers(x, config)
    else:
        v = _as_data(init)
        if v.size != c:
            raise ValueError(f"expected {c} initial centers, got {v.size}")

    history = []
    converged = False
    saw_empty = False
    iterations = 0
    for iterations in range(1, config.max_iterations + 1):
        u = update_memberships(x, v, m)
        v_new, empty = _update_centers(x, u, m, v)
        saw_empty |= bool(empty.any())
        history.append(compute_cost(x, v_new, u, m))
        shift = float(np.max(np.abs(v_new - v)))
        v = v_new
        if shift < config.tolerance:
            converged = True
            break

    u = update_memberships(x, v, m)
    v.flags.writeable = False
    u.flags.writeable = False
    labels = _labels(u)
    labels.flags.writeable = False
    return FcmModel(
        centers=v,
        memberships=u,
        labels=labels,
        iterations_run=iterations,
        final_cost=compute_cost(x, v, u, m),
        converged=converged and not saw_empty,
        cost_history=tuple(history),
    )
