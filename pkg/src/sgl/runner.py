"""Experiment orchestration behind the CLI: configure, run, score, report."""

import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ConfigError
from .io import emit_history, load_dataset, write_report
from .kernels import (DEFAULT_CLUSTER_BANK, DEFAULT_SSL_BANK, build_kernel_bank,
                      pairwise_sq_dist)
from .metrics import clustering_accuracy, nmi, purity
from .multi_kernel import sgmk_fit
from .single_kernel import SgskConfig, sgsk_fit
from .ssl import LabelSet, sgmk_ssl_fit
from .synth import make_dataset


@dataclass
class RunConfig:
    """One CLI invocation's worth of settings."""
    mode: str  # "cluster" | "ssl"
    c: int
    k: int
    input_path: str | None = None
    input_format: str | None = None
    synth: str | None = None
    synth_n: int = 150
    synth_seed: int = 0
    synth_centers: int | None = None  # blobs only
    kernels: list[str] | None = None
    multi_kernel: bool = False
    gamma0: float | None = None
    gamma_adapt: bool = True
    seed: int = 0
    zscore: bool = False
    label_fraction: float = 0.1
    repeats: int = 1
    label_seed: int = 0
    max_outer: int = 50
    emit_history: bool = True

    def validate(self):
        if self.mode not in ("cluster", "ssl"):
            raise ConfigError(f"mode must be 'cluster' or 'ssl', got {self.mode!r}")
        if (self.input_path is None) == (self.synth is None):
            raise ConfigError("exactly one of an input path or a synthetic kind is required")
        if self.mode == "ssl":
            if not 0.0 < self.label_fraction <= 1.0:
                raise ConfigError(f"label fraction must lie in (0, 1], got {self.label_fraction}")
            if self.repeats < 1:
                raise ConfigError(f"repeats must be >= 1, got {self.repeats}")


@dataclass
class RunReport:
    """Machine-readable outcome of one run; serializes to JSON."""
    mode: str
    config: dict
    n_samples: int
    iterations: int
    converged: bool
    alpha: float
    final_gamma: float
    wall_time_s: float
    metrics: dict | None = None
    components: int | None = None
    weights: list[dict] | None = None
    history: list[dict] = field(default_factory=list)
    ssl: dict | None = None

    def to_dict(self):
        d = asdict(self)
        if not self.config.get("emit_history", True):
            d.pop("history")
        return d


def _zscore(X):
    mu = X.mean(axis=0)
    sd = X.std(axis=0)
    sd[sd == 0.0] = 1.0  # constant features pass through centered
    return (X - mu) / sd


def _load(cfg):
    if cfg.synth is not None:
        kwargs = {}
        if cfg.synth == "blobs" and cfg.synth_centers is not None:
            kwargs["centers"] = cfg.synth_centers
        X, truth = make_dataset(cfg.synth, n=cfg.synth_n, seed=cfg.synth_seed, **kwargs)
    else:
        X, truth = load_dataset(cfg.input_path, cfg.input_format)
    if cfg.zscore:
        X = _zscore(X)
    return X, truth


def _bank_spec(cfg):
    if cfg.kernels:
        return list(cfg.kernels)
    if cfg.mode == "ssl":
        return list(DEFAULT_SSL_BANK)
    if cfg.multi_kernel:
        return list(DEFAULT_CLUSTER_BANK)
    return ["gaussian:1"]


def _history_dicts(records):
    return [{
        "iteration": i + 1,
        "objective": rec.objective,
        "eig_sum": rec.eig_sum,
        "gamma": rec.gamma,
        "components": rec.components,
    } for i, rec in enumerate(records)]


def _fit_config(cfg, c=None):
    return SgskConfig(c=cfg.c if c is None else c, k=cfg.k, gamma0=cfg.gamma0,
                      gamma_adapt=cfg.gamma_adapt, max_outer=cfg.max_outer,
                      seed=cfg.seed)


def run_cluster(cfg):
    """Build the kernel bank, learn the graph, score against truth when present."""
    cfg.validate()
    start = time.perf_counter()
    X, truth = _load(cfg)
    if cfg.c >= X.shape[0]:
        raise ConfigError(f"c={cfg.c} must be smaller than n={X.shape[0]}")
    Dx = pairwise_sq_dist(X)
    spec = _bank_spec(cfg)
    bank = build_kernel_bank(X, spec)

    fit_cfg = _fit_config(cfg)
    if len(bank) == 1 and not cfg.multi_kernel:
        result = sgsk_fit(bank[0], Dx, fit_cfg)
        weights = None
    else:
        result = sgmk_fit(bank, Dx, fit_cfg)
        weights = [{"kernel": name, "weight": float(w)}
                   for name, w in zip(spec, result.weights)]

    metrics = None
    if truth is not None:
        metrics = {
            "acc": clustering_accuracy(result.labels, truth),
            "nmi": nmi(result.labels, truth),
            "purity": purity(result.labels, truth),
        }
    report = RunReport(
        mode="cluster", config=asdict(cfg), n_samples=X.shape[0],
        iterations=len(result.history), converged=result.converged,
        alpha=result.alpha, final_gamma=result.final_gamma,
        wall_time_s=time.perf_counter() - start, metrics=metrics,
        components=result.n_components, weights=weights,
        history=_history_dicts(result.history))
    return report, result, X


def sample_labels(truth, fraction, seed):
    """Stratified labeled-index sample: ceil(fraction * class size) per class."""
    rng = np.random.default_rng(seed)
    truth = np.asarray(truth, dtype=int)
    picked = []
    for cls in np.unique(truth):
        idx = np.nonzero(truth == cls)[0]
        m = int(np.ceil(fraction * idx.size))
        if m < 1:
            raise ConfigError(f"class {cls} would receive zero labels")
        picked.append(rng.choice(idx, size=m, replace=False))
    return np.sort(np.concatenate(picked))


def run_ssl(cfg):
    """Repeated stratified-label runs; accuracy scored on unlabeled points only."""
    cfg.validate()
    start = time.perf_counter()
    X, truth = _load(cfg)
    if truth is None:
        raise ConfigError("ssl mode needs ground-truth labels for sampling and scoring")
    classes = np.unique(truth)
    if cfg.c != classes.size:
        raise ConfigError(f"c={cfg.c} but the data has {classes.size} classes")
    Dx = pairwise_sq_dist(X)
    spec = _bank_spec(cfg)
    bank = build_kernel_bank(X, spec)

    accs, first = [], None
    for rep in range(cfg.repeats):
        labeled = sample_labels(truth, cfg.label_fraction, cfg.label_seed + rep)
        labels = LabelSet.from_labels(labeled, truth[labeled], cfg.c)
        fit_cfg = _fit_config(cfg)
        fit_cfg.seed = cfg.seed + rep
        result = sgmk_ssl_fit(bank, Dx, labels, fit_cfg)
        if first is None:
            first = result
        unlabeled = np.setdiff1d(np.arange(X.shape[0]), labeled)
        if unlabeled.size:
            accs.append(float(np.mean(result.predicted_labels[unlabeled] == truth[unlabeled])))

    ssl_summary = {
        "repeats": cfg.repeats,
        "label_fraction": cfg.label_fraction,
        "per_repeat_accuracy": accs if accs else None,
        "unlabeled_accuracy_mean": float(np.mean(accs)) if accs else None,
        "unlabeled_accuracy_std": float(np.std(accs)) if accs else None,
    }
    metrics = None
    if accs:
        metrics = {"acc": ssl_summary["unlabeled_accuracy_mean"]}
    weights = [{"kernel": name, "weight": float(w)}
               for name, w in zip(spec, first.weights)]
    history = [{"iteration": i + 1, "objective": obj, "eig_sum": None,
                "gamma": None, "components": None}
               for i, obj in enumerate(first.history)]
    report = RunReport(
        mode="ssl", config=asdict(cfg), n_samples=X.shape[0],
        iterations=len(first.history), converged=first.converged,
        alpha=first.alpha,
        final_gamma=cfg.gamma0 if cfg.gamma0 is not None else first.alpha,
        wall_time_s=time.perf_counter() - start, metrics=metrics,
        components=None, weights=weights, history=history, ssl=ssl_summary)
    return report, first, X


def execute(cfg, out_path=None, history_path=None, plots_dir=None):
    """Run one configured experiment and write its artifacts."""
    if cfg.mode == "cluster":
        report, result, X = run_cluster(cfg)
        labels = result.labels
    else:
        report, result, X = run_ssl(cfg)
        labels = result.predicted_labels
    if out_path:
        write_report(report, out_path)
    if history_path:
        emit_history(report, history_path)
    written = []
    if plots_dir:
        from .plots import render_report_figures
        written = render_report_figures(report, X, labels, plots_dir)
    return report, written
