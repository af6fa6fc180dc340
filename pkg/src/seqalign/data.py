"""File formats, background interleaving and synthetic stream generation.

All artifacts are headered comma-separated text so that desk-scale runs
stay human-inspectable.  Matrix values are written with Python's shortest
round-trip float rendering, so write/read cycles are bit-exact and runs
with a fixed seed produce bit-identical files.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .supervision import Annotation

ANNOTATION_HEADER = "j,i_start,i_end"
PREDICTION_HEADER = "i,j"


def write_matrix(path, m):
    m = np.asarray(m, dtype=np.float64)
    lines = [f"{m.shape[0]},{m.shape[1]}"]
    for row in m:
        lines.append(",".join(repr(float(v)) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix(path):
    text = Path(path).read_text()
    lines = text.splitlines()
    if not lines:
        raise ValueError(f"{path}: empty file, malformed header")
    try:
        rows, cols = (int(tok) for tok in lines[0].split(","))
    except ValueError:
        raise ValueError(f"{path}:1: malformed header {lines[0]!r}") from None
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != rows:
        raise ValueError(f"{path}: expected {rows} data lines, found {len(body)}")
    out = np.empty((rows, cols))
    for r, ln in enumerate(body):
        toks = ln.split(",")
        if len(toks) != cols:
            raise ValueError(f"{path}:{r + 2}: expected {cols} values, found {len(toks)}")
        try:
            out[r] = [float(t) for t in toks]
        except ValueError:
            raise ValueError(f"{path}:{r + 2}: non-numeric token") from None
    return out


def write_annotations(path, ann):
    lines = [ANNOTATION_HEADER]
    for j, a, b in ann.entries:
        lines.append(f"{j},{a},{b}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_annotations(path, j_count=None, i_count=None):
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines or lines[0] != ANNOTATION_HEADER:
        raise ValueError(f"{path}: missing '{ANNOTATION_HEADER}' header")
    entries = []
    for k, ln in enumerate(lines[1:], start=2):
        toks = ln.split(",")
        if len(toks) != 3:
            raise ValueError(f"{path}:{k}: expected 'j,i_start,i_end'")
        try:
            entries.append(tuple(int(t) for t in toks))
        except ValueError:
            raise ValueError(f"{path}:{k}: non-integer token") from None
    ann = Annotation(tuple(entries))
    if j_count is not None and i_count is not None:
        ann.validate_range(j_count, i_count)
    return ann


def write_predictions(path, pred):
    lines = [PREDICTION_HEADER]
    for i, j in enumerate(pred.assignment):
        lines.append(f"{i},{j}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_predictions(path):
    from .polytope import AlignmentPath

    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines or lines[0] != PREDICTION_HEADER:
        raise ValueError(f"{path}: missing '{PREDICTION_HEADER}' header")
    assignment = []
    for k, ln in enumerate(lines[1:], start=2):
        toks = ln.split(",")
        if len(toks) != 2 or int(toks[0]) != k - 2:
            raise ValueError(f"{path}:{k}: malformed prediction line")
        assignment.append(int(toks[1]))
    a = np.asarray(assignment, dtype=np.int64)
    return AlignmentPath(a, j_count=int(a[-1]) + 1)


def interleave_background(psi_raw):
    """Insert zero background columns around and between the K sentences.

    Returns (psi with 2K+1 columns, background index set {0, 2, ..., 2K});
    sentence k lands at column 2k+1.
    """
    psi_raw = np.asarray(psi_raw, dtype=np.float64)
    E, K = psi_raw.shape
    if K < 1:
        raise ValueError("need at least one sentence column")
    psi = np.zeros((E, 2 * K + 1))
    psi[:, 1::2] = psi_raw
    return psi, frozenset(range(0, 2 * K + 1, 2))


@dataclass(frozen=True)
class SynthConfig:
    """Generator settings for one synthetic (video, text) stream."""

    sentences: int = 5
    intervals: int = 60
    text_dim: int = 8
    video_dim: int = 8
    noise: float = 0.1
    concentration: float = 5.0
    seed: int = 0

    def __post_init__(self):
        if min(self.sentences, self.intervals, self.text_dim, self.video_dim) < 1:
            raise ValueError("all sizes must be positive")
        if self.sentences > self.intervals:
            raise ValueError("sentences must not exceed intervals")
        if self.noise < 0 or self.concentration <= 0:
            raise ValueError("noise must be >= 0 and concentration > 0")


@dataclass(frozen=True)
class SynthStream:
    phi: np.ndarray  # (D, I)
    psi_raw: np.ndarray  # (E, K)
    annotation: Annotation  # in interleaved row indices (sentence k -> 2k+1)
    durations: np.ndarray  # (K,), sums to I


def _round_durations(weights, total):
    """Largest-remainder rounding of weights * total to integers summing to total."""
    scaled = weights * total
    base = np.floor(scaled).astype(int)
    short = total - base.sum()
    order = np.argsort(scaled - base)[::-1]
    base[order[:short]] += 1
    return base


def synthesize(config, rng=None, a_map=None):
    """Draw one stream: interval features are a noisy linear image of their sentence.

    Sentence features are spherical normal; durations follow a symmetric
    Dirichlet scaled to the interval count; each interval feature is
    A @ psi_sentence + noise.  The map A is drawn here unless passed in;
    streams of one suite must share A so that a single model can fit them.
    """
    rng = np.random.default_rng(config.seed if rng is None else rng)
    K, I = config.sentences, config.intervals
    E, D = config.text_dim, config.video_dim
    if a_map is None:
        a_map = rng.standard_normal((D, E)) / np.sqrt(E)
    psi_raw = rng.standard_normal((E, K))
    durations = None
    for _ in range(100):
        w = rng.dirichlet(np.full(K, config.concentration))
        d = _round_durations(w, I)
        if np.all(d > 0):
            durations = d
            break
    if durations is None:
        raise ValueError("could not draw positive durations in 100 attempts")
    labels = np.repeat(np.arange(K), durations)
    phi = a_map @ psi_raw[:, labels] + config.noise * rng.standard_normal((D, I))
    bounds = np.concatenate([[0], np.cumsum(durations)])
    entries = tuple(
        (2 * k + 1, int(bounds[k]), int(bounds[k + 1])) for k in range(K)
    )
    return SynthStream(
        phi=phi, psi_raw=psi_raw, annotation=Annotation(entries), durations=durations
    )


DEFAULT_HYPERPARAMETERS = {
    "lambda": 0.01,
    "sigma": 8.0,
    "mu": None,
    "mu_background": 1.0,
    "alpha": 0.05,
    "beta": 0.15,
    "kappa": 1.0,
    "rounding": "model",
    "supervision": "soft",
    "gap_tol": 1e-6,
    "max_iter": 2000,
    "seed": 0,
}


@dataclass
class Manifest:
    """Run description: stream files plus global hyperparameters."""

    streams: list
    hyperparameters: dict = field(default_factory=dict)
    synth: dict = None
    base_dir: Path = Path(".")

    def __post_init__(self):
        hp = dict(DEFAULT_HYPERPARAMETERS)
        hp.update(self.hyperparameters)
        self.hyperparameters = hp

    def resolve(self, rel):
        return self.base_dir / rel


def read_manifest(path):
    path = Path(path)
    raw = json.loads(path.read_text())
    return Manifest(
        streams=raw["streams"],
        hyperparameters=raw.get("hyperparameters", {}),
        synth=raw.get("synth"),
        base_dir=path.parent,
    )


def write_manifest(path, manifest):
    payload = {
        "streams": manifest.streams,
        "hyperparameters": manifest.hyperparameters,
    }
    if manifest.synth is not None:
        payload["synth"] = manifest.synth
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")
