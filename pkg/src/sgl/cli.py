"""Command line interface: sgl cluster | ssl | synth.

Exit codes: 0 success, 2 configuration/input error, 3 numerical error.
"""

import argparse
import sys

from .errors import (ConfigError, DegenerateDataError, FormatError, InputError,
                     NumericalError)
from .io import save_csv
from .runner import RunConfig, execute
from .synth import make_dataset


def _add_common(p):
    src = p.add_argument_group("data source")
    src.add_argument("--input", help="dataset file (csv, or matrix with sidecar labels)")
    src.add_argument("--format", choices=["csv", "matrix"], help="override format detection")
    src.add_argument("--synth", choices=["blobs", "rings", "moons"],
                     help="generate a synthetic dataset instead of reading one")
    src.add_argument("--n", type=int, default=150, help="synthetic sample count")
    src.add_argument("--synth-seed", type=int, default=0, help="synthetic generator seed")
    src.add_argument("--centers", type=int, help="blob count (synth blobs only)")
    p.add_argument("--c", type=int, required=True, help="number of clusters/classes")
    p.add_argument("--k", type=int, required=True, help="neighborhood size")
    p.add_argument("--kernels", help="comma-separated kernel descriptors, e.g. gaussian:1,linear")
    p.add_argument("--gamma0", type=float, help="initial spectral weight (default: estimated alpha)")
    p.add_argument("--no-gamma-adapt", action="store_true", help="keep gamma fixed")
    p.add_argument("--seed", type=int, default=0, help="graph initialization seed")
    p.add_argument("--zscore", action="store_true", help="standardize features per column")
    p.add_argument("--max-outer", type=int, default=50, help="outer iteration cap")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--history", help="write the per-iteration CSV here")
    p.add_argument("--plots", help="render figures into this directory")


def build_parser():
    parser = argparse.ArgumentParser(prog="sgl",
                                     description="Structured graph learning for clustering "
                                                 "and semi-supervised classification")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("cluster", help="learn a graph and cluster it")
    _add_common(pc)
    pc.add_argument("--multi-kernel", action="store_true",
                    help="learn weights over the kernel bank (default bank: 12 kernels)")

    ps = sub.add_parser("ssl", help="semi-supervised classification from partial labels")
    _add_common(ps)
    ps.add_argument("--label-fraction", type=float, default=0.1,
                    help="labeled fraction per class (rounded up)")
    ps.add_argument("--repeats", type=int, default=1, help="label resamples to average over")
    ps.add_argument("--label-seed", type=int, default=0, help="base seed for label sampling")

    pg = sub.add_parser("synth", help="write a synthetic dataset to csv")
    pg.add_argument("--kind", choices=["blobs", "rings", "moons"], required=True)
    pg.add_argument("--n", type=int, default=150)
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--centers", type=int, help="blob count (blobs only)")
    pg.add_argument("--out", required=True)
    return parser


def _config_from(args, mode):
    kernels = args.kernels.split(",") if args.kernels else None
    cfg = RunConfig(
        mode=mode, c=args.c, k=args.k, input_path=args.input,
        input_format=args.format, synth=args.synth, synth_n=args.n,
        synth_seed=args.synth_seed, synth_centers=args.centers, kernels=kernels,
        multi_kernel=getattr(args, "multi_kernel", False), gamma0=args.gamma0,
        gamma_adapt=not args.no_gamma_adapt, seed=args.seed, zscore=args.zscore,
        max_outer=args.max_outer)
    if mode == "ssl":
        cfg.label_fraction = args.label_fraction
        cfg.repeats = args.repeats
        cfg.label_seed = args.label_seed
    return cfg


def _summarize(report, written):
    print(f"mode={report.mode} n={report.n_samples} iterations={report.iterations} "
          f"converged={report.converged}")
    if report.components is not None:
        print(f"components={report.components}")
    if report.metrics:
        print("  ".join(f"{k}={v:.4f}" for k, v in report.metrics.items()))
    if report.ssl and report.ssl["unlabeled_accuracy_mean"] is not None:
        print(f"unlabeled accuracy: {report.ssl['unlabeled_accuracy_mean']:.4f} "
              f"+/- {report.ssl['unlabeled_accuracy_std']:.4f} "
              f"over {report.ssl['repeats']} repeats")
    elif report.ssl:
        print("unlabeled accuracy: not applicable (no unlabeled samples)")
    for path in written:
        print(f"wrote {path}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "synth":
            kwargs = {"centers": args.centers} if (args.kind == "blobs"
                                                   and args.centers) else {}
            X, y = make_dataset(args.kind, n=args.n, seed=args.seed, **kwargs)
            save_csv(args.out, X, y)
            print(f"wrote {args.out}")
            return 0
        cfg = _config_from(args, args.command)
        report, figures = execute(cfg, out_path=args.out,
                                  history_path=args.history, plots_dir=args.plots)
        written = [p for p in (args.out, args.history) if p] + figures
        _summarize(report, written)
        return 0
    except (ConfigError, InputError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, DegenerateDataError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
