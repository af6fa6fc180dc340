"""Semi-supervised instance assembly: annotations, masks and feature scaling.

Supervision enters the problem in two ways: ground-truth interval
annotations become cell masks on the assignment (hard: the block is pinned
to one vertex; soft: each annotated row may only occupy columns inside its
interval), and supervised streams' features are scaled by kappa so their
squared loss is weighted by kappa^2.
"""

from dataclasses import dataclass, field

import numpy as np

from .core import augment_affine, compute_q
from .polytope import CellMask, InfeasibleError, StreamLayout, is_feasible, minimize_linear
from .priors import PriorConfig
from .solver import ProblemInstance, block_band


@dataclass(frozen=True)
class Annotation:
    """Ground-truth intervals: (row j, start i0, end i1), 0-based, end-exclusive."""

    entries: tuple  # of (j, i0, i1)

    def __post_init__(self):
        entries = tuple((int(j), int(a), int(b)) for j, a, b in self.entries)
        object.__setattr__(self, "entries", entries)
        prev_j, prev_end = -1, -1
        for j, a, b in entries:
            if a >= b:
                raise ValueError(f"row {j}: empty interval [{a}, {b})")
            if j < prev_j or (j > prev_j and a < prev_end):
                raise ValueError(f"row {j}: intervals out of order or overlapping")
            if j == prev_j and a < prev_end:
                raise ValueError(f"row {j}: overlapping intervals")
            prev_j, prev_end = j, b

    def validate_range(self, j_count, i_count):
        for j, a, b in self.entries:
            if not (0 <= j < j_count and 0 <= a < b <= i_count):
                raise ValueError(f"annotation ({j},{a},{b}) out of range for J={j_count}, I={i_count}")

    def rows(self):
        """Map row index -> set of annotated columns."""
        out = {}
        for j, a, b in self.entries:
            out.setdefault(j, set()).update(range(a, b))
        return out


@dataclass(frozen=True)
class Stream:
    """One (video, text) pair ready for assembly.

    phi is the raw (D, I) interval feature matrix; psi the (E, J) text
    matrix with background zero-columns already interleaved; background
    holds the interleaved background row indices.
    """

    id: str
    phi: np.ndarray
    psi: np.ndarray
    background: frozenset = frozenset()
    annotation: Annotation = None
    supervised: bool = False

    @property
    def i_count(self):
        return self.phi.shape[1]

    @property
    def j_count(self):
        return self.psi.shape[1]


def build_interval_mask(ann, j_count, i_count, background_set=frozenset()):
    """Soft supervision: annotated non-background rows confined to their intervals."""
    ann.validate_range(j_count, i_count)
    forbidden = np.zeros((j_count, i_count), dtype=bool)
    for j, cols in ann.rows().items():
        if j in background_set:
            continue
        forbidden[j, :] = True
        forbidden[j, sorted(cols)] = False
    mask = CellMask(forbidden)
    if not is_feasible(j_count, i_count, mask):
        raise InfeasibleError("annotated intervals admit no monotone path")
    return mask


def fix_assignment_mask(y_s):
    """Hard supervision: forbid every cell off the given path."""
    forbidden = np.ones((y_s.j_count, y_s.i_count), dtype=bool)
    forbidden[y_s.assignment, np.arange(y_s.i_count)] = False
    return CellMask(forbidden)


def annotation_to_path(ann, j_count, i_count, background_set=frozenset()):
    """Canonical path expansion of an annotation.

    Among paths respecting the interval mask, picks the one maximizing the
    number of columns placed inside annotated intervals (background rows
    absorb the rest), deterministically via the oracle's tie-breaking.
    """
    mask = build_interval_mask(ann, j_count, i_count, background_set)
    reward = np.zeros((j_count, i_count))
    for j, cols in ann.rows().items():
        if j not in background_set:
            reward[j, sorted(cols)] = -1.0
    path, _ = minimize_linear(reward, mask)
    return path


def resolve_mu(layout, backgrounds, mu=None, mu_background=None):
    """Per-row duration targets for the concatenated problem.

    Default: I_n / J_n for every row of stream n.  A scalar mu applies to
    all rows.  mu_background sets background rows explicitly; sentence
    rows then share the remaining mass (I_n - B_n * mu_background) / S_n.
    """
    out = np.empty(layout.j_total)
    for n in range(layout.n_streams):
        I, J = layout.i_sizes[n], layout.j_sizes[n]
        j0 = layout.j_offsets[n]
        if mu_background is not None:
            bg = backgrounds[n]
            n_bg = len(bg)
            n_sent = J - n_bg
            if n_sent <= 0:
                raise ValueError(f"stream {n}: no sentence rows")
            mu_sent = (I - n_bg * mu_background) / n_sent
            if mu_sent <= 0:
                raise ValueError(f"stream {n}: mu_background leaves no sentence mass")
            row_mu = np.full(J, mu_sent)
            row_mu[sorted(bg)] = mu_background
        elif mu is not None:
            row_mu = np.full(J, float(mu))
        else:
            row_mu = np.full(J, I / J)
        out[j0 : j0 + J] = row_mu
    return out


def assemble(
    streams,
    lam,
    sigma,
    alpha=0.0,
    beta=0.1,
    mu=None,
    mu_background=None,
    kappa=1.0,
    mode="soft",
    augment=True,
):
    """Build a ProblemInstance from a list of streams.

    Supervised streams have psi and phi scaled by kappa and carry either a
    soft interval mask or (mode="hard") a pinned ground-truth path derived
    from their annotation.  mode="none" ignores annotations entirely.
    """
    if kappa < 0:
        raise ValueError("kappa must be non-negative")
    if mode not in ("none", "soft", "hard"):
        raise ValueError(f"unknown supervision mode {mode!r}")
    if not streams:
        raise ValueError("at least one stream is required")
    e_dims = {s.psi.shape[0] for s in streams}
    d_dims = {s.phi.shape[0] for s in streams}
    if len(e_dims) != 1 or len(d_dims) != 1:
        raise ValueError("inconsistent feature dimensions across streams")

    phis, psis, masks, fixed = [], [], [], []
    for s in streams:
        phi = augment_affine(s.phi) if augment else np.asarray(s.phi, dtype=np.float64)
        psi = np.asarray(s.psi, dtype=np.float64)
        if s.supervised and mode != "none":
            if s.annotation is None:
                raise ValueError(f"stream {s.id}: supervised but has no annotation")
            phi = kappa * phi
            psi = kappa * psi
            if mode == "hard":
                y_s = annotation_to_path(s.annotation, s.j_count, s.i_count, s.background)
                masks.append(fix_assignment_mask(y_s))
                fixed.append(y_s)
            else:
                masks.append(
                    build_interval_mask(s.annotation, s.j_count, s.i_count, s.background)
                )
                fixed.append(None)
        else:
            masks.append(None)
            fixed.append(None)
        phis.append(phi)
        psis.append(psi)

    layout = StreamLayout(
        i_sizes=[s.i_count for s in streams], j_sizes=[s.j_count for s in streams]
    )
    phi_all = np.hstack(phis)
    psi_all = np.hstack(psis)
    priors = PriorConfig(
        mu=resolve_mu(layout, [s.background for s in streams], mu, mu_background),
        sigma=sigma,
        alpha=alpha,
        beta=beta,
    )
    return ProblemInstance(
        psi=psi_all,
        phi=phi_all,
        layout=layout,
        kernel=compute_q(phi_all, lam),
        priors=priors,
        band=block_band(layout, beta),
        masks=tuple(masks),
        fixed=tuple(fixed),
        kappa=float(kappa),
    )
