"""Command-line interface.

Three subcommands: ``segment`` (fixed-K hybrid run), ``sweep`` (automatic K
with a validity-curve CSV), and ``baseline`` (k-means or fuzzy-network-only
runs for comparison).  Each prints one line ``k,centers,metric,validity``
with centers joined by ';'.

Exit codes: 0 success, 2 invalid arguments, 3 input/format error,
4 degenerate input.
"""

from __future__ import annotations

import argparse
import sys

from .errors import DegenerateInputError, InputFormatError, InvalidK
from .fhnn import ExponentMode, FhnnConfig
from .ga import GaConfig, clustering_metric
from .imaging import compute_histogram, load_image, render_segmentation, save_image
from .pipeline import (
    SweepConfig,
    derive_seeds,
    export_sweep_csv,
    fhnn_only_segment,
    kmeans_baseline,
    segment_k,
    sweep,
)
from .validity import ValidityConfig

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_DEGENERATE = 4


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="input image (PGM P5 or grayscale PNG)")
    parser.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    parser.add_argument("--m", type=float, default=2.0, help="fuzzification exponent (default 2.0)")
    parser.add_argument(
        "--epsilon", type=float, default=1e-4, help="membership convergence threshold (default 1e-4)"
    )
    parser.add_argument(
        "--exponent-mode",
        choices=["paper", "fcm"],
        default="paper",
        help="membership-update exponent: 2/(m-1) (paper) or 1/(m-1) (fcm)",
    )
    parser.add_argument("--pop", type=int, default=30, help="population size (default 30)")
    parser.add_argument("--crossover", type=float, default=0.9, help="crossover rate (default 0.9)")
    parser.add_argument("--mutation", type=float, default=0.01, help="mutation rate (default 0.01)")
    parser.add_argument(
        "--generations", type=int, default=20, help="genetic generations (default 20)"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grayseg",
        description="Grayscale image segmentation by fuzzy-network-seeded genetic clustering.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    seg = sub.add_parser("segment", help="hybrid segmentation at a fixed K")
    _add_common_flags(seg)
    seg.add_argument("--k", type=int, required=True, help="number of clusters (>= 2)")
    seg.add_argument("--c-param", type=float, default=25.0, help="validity weight (default 25)")
    seg.add_argument("--output", required=True, help="rendered segmentation image path")

    sw = sub.add_parser("sweep", help="automatic-K segmentation over K=2..kmax")
    _add_common_flags(sw)
    sw.add_argument("--kmax", type=int, required=True, help="largest K to try (>= 2)")
    sw.add_argument("--c-param", type=float, default=25.0, help="validity weight (default 25)")
    sw.add_argument("--output", required=True, help="rendered segmentation image path")
    sw.add_argument("--curve", required=True, help="validity-curve CSV path")

    base = sub.add_parser("baseline", help="k-means or fuzzy-network-only comparison run")
    _add_common_flags(base)
    base.add_argument("--method", choices=["kmeans", "fhnn"], required=True)
    base.add_argument("--k", type=int, required=True, help="number of clusters")
    base.add_argument("--c-param", type=float, default=25.0, help="validity weight (default 25)")
    base.add_argument("--output", required=True, help="rendered segmentation image path")

    return parser


def _sweep_config(args: argparse.Namespace, k_max: int) -> SweepConfig:
    try:
        return SweepConfig(
            k_max=k_max,
            fhnn=FhnnConfig(
                m=args.m,
                epsilon=args.epsilon,
                exponent_mode=ExponentMode(args.exponent_mode),
            ),
            ga=GaConfig(
                population_size=args.pop,
                crossover_prob=args.crossover,
                mutation_prob=args.mutation,
                generations=args.generations,
            ),
            validity=ValidityConfig(c_param=args.c_param),
            master_seed=args.seed,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


class _UsageError(Exception):
    pass


def _print_result(k: int, centers, metric: float, validity: float) -> None:
    joined = ";".join(str(int(c)) for c in centers)
    print(f"{k},{joined},{metric:.6f},{validity:.6f}")


def _run_segment(args: argparse.Namespace) -> int:
    if args.k < 2:
        raise _UsageError("--k must be at least 2")
    cfg = _sweep_config(args, k_max=max(args.k, 2))
    img = load_image(args.input)
    result = segment_k(img, args.k, cfg)
    save_image(result.rendered, args.output)
    _print_result(result.k, result.centers, result.ga_result.best_metric, result.validity.v)
    return EXIT_OK


def _run_sweep(args: argparse.Namespace) -> int:
    if args.kmax < 2:
        raise _UsageError("--kmax must be at least 2")
    cfg = _sweep_config(args, k_max=args.kmax)
    img = load_image(args.input)
    result, record = sweep(img, cfg)
    save_image(result.rendered, args.output)
    export_sweep_csv(record, args.curve)
    _print_result(result.k, result.centers, result.ga_result.best_metric, result.validity.v)
    return EXIT_OK


def _run_baseline(args: argparse.Namespace) -> int:
    from .validity import validity_index

    img = load_image(args.input)
    if args.method == "kmeans":
        if args.k < 1:
            raise _UsageError("--k must be at least 1")
        hist = compute_histogram(img)
        fhnn_seed, _ = derive_seeds(args.seed, args.k)
        res = kmeans_baseline(hist, args.k, seed=fhnn_seed)
        _, rendered = render_segmentation(img, res.centers)
        save_image(rendered, args.output)
        if args.k >= 2:
            v = validity_index(hist, res.centers, ValidityConfig(c_param=args.c_param)).v
        else:
            v = float("nan")
        _print_result(args.k, res.centers, res.metric, v)
        return EXIT_OK

    if args.k < 2:
        raise _UsageError("--k must be at least 2 for the fhnn baseline")
    fhnn_seed, _ = derive_seeds(args.seed, args.k)
    fhnn_cfg = FhnnConfig(
        m=args.m,
        epsilon=args.epsilon,
        exponent_mode=ExponentMode(args.exponent_mode),
        seed=fhnn_seed,
    )
    result = fhnn_only_segment(img, args.k, fhnn_cfg, ValidityConfig(c_param=args.c_param))
    save_image(result.rendered, args.output)
    hist = compute_histogram(img)
    metric = clustering_metric(hist, result.centers)
    _print_result(result.k, result.centers, metric, result.validity.v)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    try:
        if args.command == "segment":
            return _run_segment(args)
        if args.command == "sweep":
            return _run_sweep(args)
        return _run_baseline(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidK as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegenerateInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
