"""Frank-Wolfe minimization of the relaxed alignment objective.

The relaxed problem minimizes q(Y) + r(Y) + l(Y) over the convex hull of
the block-diagonal alignment vertices.  Each iteration calls the dynamic
programming oracle on the gradient, takes an exact line-search step along
the vertex direction, and tracks the duality gap <grad, Y - V> which
certifies suboptimality.
"""

from dataclasses import dataclass, field

import numpy as np

from .core import CostKernel, discriminative_cost, fit_model
from .polytope import (
    StreamLayout,
    band_indicator,
    blocks_to_matrix,
    is_feasible,
    lmo_blocks,
    minimize_linear,
    path_to_matrix,
)
from .priors import PriorConfig, band_penalty, duration_penalty


@dataclass(frozen=True)
class ProblemInstance:
    """A fully assembled relaxed alignment problem.

    phi and psi are the concatenated (and, for phi, affine-augmented)
    feature matrices; masks and fixed are per-stream lists (None entries
    where a stream is unconstrained / free).
    """

    psi: np.ndarray  # (E, J_total)
    phi: np.ndarray  # (D, I_total)
    layout: StreamLayout
    kernel: CostKernel
    priors: PriorConfig
    band: np.ndarray  # (J_total, I_total), block-diagonal band indicator
    masks: tuple = None
    fixed: tuple = None
    kappa: float = 1.0

    def __post_init__(self):
        if self.masks is None:
            object.__setattr__(self, "masks", tuple([None] * self.layout.n_streams))
        if self.fixed is None:
            object.__setattr__(self, "fixed", tuple([None] * self.layout.n_streams))


@dataclass
class SolveResult:
    y_relaxed: np.ndarray
    w_star: np.ndarray
    objective_trace: list = field(default_factory=list)
    gap_trace: list = field(default_factory=list)
    iterations: int = 0
    converged: bool = False


def block_band(layout, beta):
    """Block-diagonal band indicator for a multi-stream layout."""
    y_c = np.zeros((layout.j_total, layout.i_total))
    for n in range(layout.n_streams):
        b = band_indicator(layout.j_sizes[n], layout.i_sizes[n], beta)
        layout.block(y_c, n)[:, :] = b.y_c
    return y_c


@dataclass(frozen=True)
class _Band:
    y_c: np.ndarray


def objective(instance, y):
    """q(Y) + r(Y) + l(Y)."""
    return (
        discriminative_cost(instance.psi, y, instance.kernel)
        + duration_penalty(y, instance.priors)
        + band_penalty(y, _Band(instance.band), instance.priors.alpha)
    )


def gradient(instance, y):
    """(1/I) psi^T psi Y Q + (1/sigma^2)(Y 1 - mu) 1^T + alpha Y_c."""
    y = np.asarray(y, dtype=np.float64)
    p = instance.priors
    g = (instance.psi.T @ (instance.psi @ y)) @ instance.kernel.q_matrix
    g /= instance.kernel.i_total
    d = (y.sum(axis=1) - p.mu_vector(y.shape[0])) / p.sigma**2
    g += d[:, None]
    g += p.alpha * instance.band
    return g


def exact_line_search(instance, y, direction, grad=None):
    """Optimal step in [0, 1] along a vertex direction of the quadratic.

    gamma* = clamp(-<grad, D> / c, 0, 1) with curvature
    c = (1/I) Tr(psi D Q D^T psi^T) + (1/sigma^2) ||D 1||^2.
    """
    if grad is None:
        grad = gradient(instance, y)
    d = np.asarray(direction, dtype=np.float64)
    slope = float(np.sum(grad * d))
    pd = instance.psi @ d
    c = float(np.sum((pd @ instance.kernel.q_matrix) * pd)) / instance.kernel.i_total
    r = d.sum(axis=1)
    c += float(np.dot(r, r)) / instance.priors.sigma**2
    if not np.isfinite(c) or c <= 1e-14:
        return 1.0 if slope < 0 else 0.0
    return float(np.clip(-slope / c, 0.0, 1.0))


def _initial_paths(instance):
    """Mask-feasible starting vertex, the uniform diagonal path when allowed."""
    from .evaluation import diagonal_path

    layout = instance.layout
    paths = []
    for n in range(layout.n_streams):
        if instance.fixed[n] is not None:
            paths.append(instance.fixed[n])
            continue
        I, J = layout.i_sizes[n], layout.j_sizes[n]
        mask = instance.masks[n]
        diag = diagonal_path(I, J)
        if mask is None or not mask.forbidden[diag.assignment, np.arange(I)].any():
            paths.append(diag)
        else:
            # Fall back to the feasible path closest to the diagonal.
            j = np.arange(J)[:, None] / J
            i = np.arange(I)[None, :] / I
            p, _ = minimize_linear(np.abs(j - i), mask)
            paths.append(p)
    return paths


def solve(instance, max_iter=2000, gap_tol=1e-6, init=None):
    """Run Frank-Wolfe with exact line search until the duality gap closes.

    init may be a list of per-stream AlignmentPath; defaults to the
    diagonal path (or the nearest mask-feasible vertex).  The returned
    objective trace is non-increasing and the gap trace certifies the
    distance to the relaxed optimum.
    """
    layout = instance.layout
    for n in range(layout.n_streams):
        if instance.fixed[n] is None and not is_feasible(
            layout.j_sizes[n], layout.i_sizes[n], instance.masks[n]
        ):
            raise ValueError(f"stream {n}: mask admits no feasible path")

    paths = init if init is not None else _initial_paths(instance)
    y = blocks_to_matrix(paths, layout)

    result = SolveResult(y_relaxed=y, w_star=None)
    obj = objective(instance, y)
    if not np.isfinite(obj):
        raise ValueError("non-finite objective at initialization")

    for t in range(max_iter):
        grad = gradient(instance, y)
        v_paths, _ = lmo_blocks(grad, layout, instance.masks, instance.fixed)
        v = blocks_to_matrix(v_paths, layout)
        gap = float(np.sum(grad * (y - v)))
        result.objective_trace.append(obj)
        result.gap_trace.append(gap)
        result.iterations = t
        if gap <= gap_tol:
            result.converged = True
            break
        d = v - y
        gamma = exact_line_search(instance, y, d, grad=grad)
        if gamma <= 0.0:
            break
        y = y + gamma * d
        obj = objective(instance, y)
        if not np.isfinite(obj):
            raise ValueError(f"non-finite objective at iteration {t}")
    else:
        # max_iter exhausted; record the last iterate's certificate.
        grad = gradient(instance, y)
        v_paths, _ = lmo_blocks(grad, layout, instance.masks, instance.fixed)
        v = blocks_to_matrix(v_paths, layout)
        result.objective_trace.append(objective(instance, y))
        result.gap_trace.append(float(np.sum(grad * (y - v))))
        result.iterations = max_iter

    result.y_relaxed = y
    result.w_star = fit_model(instance.psi, y, instance.phi, instance.kernel.lam)
    return result
