"""End-to-end runs: ingest, align, round, score, synthesize, sweep."""

import json
import time
from pathlib import Path

import numpy as np

from . import data as io
from .evaluation import jaccard_score
from .rounding import round_feature, round_model, round_nearest
from .solver import solve
from .supervision import Stream, assemble


def load_streams(manifest, supervision="soft"):
    """Read every stream in the manifest and interleave background columns."""
    streams = []
    for rec in manifest.streams:
        sid = rec["id"]
        try:
            phi = io.read_matrix(manifest.resolve(rec["phi_path"]))
            psi_raw = io.read_matrix(manifest.resolve(rec["psi_path"]))
            psi, background = io.interleave_background(psi_raw)
            if psi.shape[1] > phi.shape[1]:
                raise ValueError(
                    f"infeasible stream: J={psi.shape[1]} > I={phi.shape[1]}"
                )
            ann = None
            if rec.get("annotation_path"):
                ann = io.read_annotations(
                    manifest.resolve(rec["annotation_path"]),
                    j_count=psi.shape[1],
                    i_count=phi.shape[1],
                )
            streams.append(
                Stream(
                    id=sid,
                    phi=phi,
                    psi=psi,
                    background=background,
                    annotation=ann,
                    supervised=bool(rec.get("supervised", False)) and supervision != "none",
                )
            )
        except ValueError as e:
            raise ValueError(f"stream {sid}: {e}") from None
    return streams


_ROUNDERS = ("nearest", "feature", "model")


def round_stream(instance, result, n, rounding):
    """Round stream n of a solve result with the requested procedure."""
    if instance.fixed[n] is not None:
        return instance.fixed[n]
    layout = instance.layout
    i0, j0 = layout.i_offsets[n], layout.j_offsets[n]
    In, Jn = layout.i_sizes[n], layout.j_sizes[n]
    psi_n = instance.psi[:, j0 : j0 + Jn]
    phi_n = instance.phi[:, i0 : i0 + In]
    y_n = layout.block(result.y_relaxed, n)
    mask = instance.masks[n]
    if rounding == "nearest":
        return round_nearest(y_n, mask)
    if rounding == "feature":
        return round_feature(y_n, psi_n, mask)
    if rounding == "model":
        return round_model(result.w_star, psi_n, phi_n, mask)
    raise ValueError(f"unknown rounding {rounding!r}; expected one of {_ROUNDERS}")


def align_streams(streams, hp, supervision="soft"):
    """Assemble, solve and round; returns (instance, result, predictions)."""
    instance = assemble(
        streams,
        lam=hp["lambda"],
        sigma=hp["sigma"],
        alpha=hp["alpha"],
        beta=hp["beta"],
        mu=hp.get("mu"),
        mu_background=hp.get("mu_background"),
        kappa=hp["kappa"],
        mode=supervision,
    )
    result = solve(instance, max_iter=int(hp["max_iter"]), gap_tol=float(hp["gap_tol"]))
    preds = [
        round_stream(instance, result, n, hp["rounding"]) for n in range(len(streams))
    ]
    return instance, result, preds


def run_align(manifest, out_dir, overrides=None):
    """The align command: solve a manifest and persist predictions and report."""
    hp = dict(manifest.hyperparameters)
    hp.update({k: v for k, v in (overrides or {}).items() if v is not None})
    supervision = hp.get("supervision", "soft")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    t0 = time.perf_counter()
    streams = load_streams(manifest, supervision)
    t_load = time.perf_counter() - t0

    t0 = time.perf_counter()
    instance, result, preds = align_streams(streams, hp, supervision)
    t_solve = time.perf_counter() - t0

    for s, p in zip(streams, preds):
        io.write_predictions(out_dir / f"pred_{s.id}.csv", p)
    trace_lines = ["iteration,objective,gap"]
    for t, (o, g) in enumerate(zip(result.objective_trace, result.gap_trace)):
        trace_lines.append(f"{t},{o!r},{g!r}")
    (out_dir / "trace.csv").write_text("\n".join(trace_lines) + "\n")
    report = {
        "hyperparameters": hp,
        "streams": [s.id for s in streams],
        "iterations": result.iterations,
        "converged": result.converged,
        "final_objective": result.objective_trace[-1],
        "final_gap": result.gap_trace[-1],
        "affine_augmented": True,
        "timings": {"load_s": t_load, "solve_s": t_solve},
    }
    (out_dir / "report.json").write_text(json.dumps(report, indent=2) + "\n")
    return report


def run_eval(manifest, out_dir):
    """The eval command: score prediction files against manifest annotations."""
    out_dir = Path(out_dir)
    streams = load_streams(manifest, supervision="none")
    rows = []
    for s in streams:
        if s.annotation is None:
            continue
        pred = io.read_predictions(out_dir / f"pred_{s.id}.csv")
        if pred.i_count != s.i_count:
            raise ValueError(f"stream {s.id}: prediction has wrong length")
        rows.append((s.id, jaccard_score(pred, s.annotation, s.background)))
    if not rows:
        raise ValueError("no annotated streams to evaluate")
    lines = ["stream,jaccard"] + [f"{sid},{score!r}" for sid, score in rows]
    mean = float(np.mean([sc for _, sc in rows]))
    lines.append(f"mean,{mean!r}")
    (out_dir / "scores.csv").write_text("\n".join(lines) + "\n")
    return mean, rows


def run_synth(out_dir, n_streams=4, supervised_fraction=0.0, hyperparameters=None, **cfg):
    """The synth command: generate a suite of streams plus its manifest."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    seed = int(cfg.get("seed", 0))
    base = io.SynthConfig(**cfg)
    ss = np.random.SeedSequence(seed)
    # One linear map for the whole suite: streams share the ground-truth model.
    master = np.random.default_rng(ss)
    a_map = master.standard_normal((base.video_dim, base.text_dim)) / np.sqrt(base.text_dim)
    children = ss.spawn(n_streams)
    n_sup = int(round(supervised_fraction * n_streams))
    records = []
    for n in range(n_streams):
        s = io.synthesize(base, rng=np.random.default_rng(children[n]), a_map=a_map)
        sid = f"stream_{n:02d}"
        io.write_matrix(out_dir / f"{sid}.phi.csv", s.phi)
        io.write_matrix(out_dir / f"{sid}.psi.csv", s.psi_raw)
        io.write_annotations(out_dir / f"{sid}.gt.csv", s.annotation)
        records.append(
            {
                "id": sid,
                "phi_path": f"{sid}.phi.csv",
                "psi_path": f"{sid}.psi.csv",
                "annotation_path": f"{sid}.gt.csv",
                "supervised": n < n_sup,
            }
        )
    hp = dict(hyperparameters or {})
    hp.setdefault("seed", seed)
    manifest = io.Manifest(
        streams=records,
        hyperparameters=hp,
        synth={
            "n_streams": n_streams,
            "supervised_fraction": supervised_fraction,
            **{k: getattr(base, k) for k in
               ("sentences", "intervals", "text_dim", "video_dim", "noise", "concentration")},
            "seed": seed,
        },
        base_dir=out_dir,
    )
    io.write_manifest(out_dir / "manifest.json", manifest)
    return manifest


_SWEEP_PARAMS = {"sigma": ("sigma",), "alpha-beta": ("alpha", "beta"), "kappa": ("kappa",)}


def run_sweep(manifest, param, values, seeds, out_dir):
    """The sweep command: align+eval per grid value per seed on fresh suites."""
    if param not in _SWEEP_PARAMS:
        raise ValueError(f"unknown sweep parameter {param!r}")
    if not values:
        raise ValueError("empty sweep grid")
    if manifest.synth is None:
        raise ValueError("sweep requires a manifest with a 'synth' section")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    keys = _SWEEP_PARAMS[param]
    synth = dict(manifest.synth)
    n_streams = synth.pop("n_streams")
    supervised_fraction = synth.pop("supervised_fraction", 0.0)
    synth.pop("seed", None)

    rows = []
    for vi, value in enumerate(values):
        point = value if isinstance(value, tuple) else (value,)
        if len(point) != len(keys):
            raise ValueError(f"sweep value {value!r} does not match {keys}")
        scores = []
        for seed in seeds:
            run_dir = out_dir / f"{param}_{vi}" / f"seed_{seed}"
            m = run_synth(
                run_dir,
                n_streams=n_streams,
                supervised_fraction=supervised_fraction,
                hyperparameters=manifest.hyperparameters,
                seed=seed,
                **synth,
            )
            run_align(m, run_dir, overrides=dict(zip(keys, point)))
            mean, _ = run_eval(m, run_dir)
            scores.append(mean)
        mean = float(np.mean(scores))
        stderr = float(np.std(scores, ddof=1) / np.sqrt(len(scores))) if len(scores) > 1 else 0.0
        rows.append((point, mean, stderr, len(scores)))

    header = ",".join(keys) + ",mean_jaccard,stderr,n_seeds"
    lines = [header]
    for point, mean, stderr, n in rows:
        lines.append(",".join(repr(float(v)) for v in point) + f",{mean!r},{stderr!r},{n}")
    (out_dir / "sweep.csv").write_text("\n".join(lines) + "\n")
    return rows
