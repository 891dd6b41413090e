"""Command-line front door: ingest, mine, evaluate, recommend, export.

Exit codes: 0 success, 1 usage error, 2 data error. Every subcommand is
reproducible: identical inputs, flags, and seed give byte-identical outputs.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import baseline as bl
from .corpus import canonical_library_id, filter_matrix, load_matrix, stats, write_matrix
from .evaluation import cross_validate, make_folds, sweep_max_epsilon, training_matrix
from .export import (result_from_json, result_to_json, to_viz_json, validate_viz,
                     write_reports, write_rules_csv, write_sweep_csv)
from .layering import MiningConfig, epsilon_dbscan, flatten
from .metrics import puc
from .recommend import DEFAULT_KS, MODES, eval_ranking, recommend


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage problems, not argparse's 2
        raise _UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _positive_int(minimum: int, name: str):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {text!r}")
        if value < minimum:
            raise argparse.ArgumentTypeError(f"{name} must be >= {minimum}, got {value}")
        return value
    return parse


def _ratio(low: float, high: float, name: str, low_open: bool = False):
    def parse(text: str) -> float:
        try:
            value = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number, got {text!r}")
        if value > high or value < low or (low_open and value == low):
            bound = f"({low}, {high}]" if low_open else f"[{low}, {high}]"
            raise argparse.ArgumentTypeError(f"{name} must be in {bound}, got {text}")
        return value
    return parse


def parse_epsilon_range(spec: str) -> list[float]:
    """Parse 'start:stop:step' into the inclusive grid {start, start+step, ...}."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"epsilon range must be start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"epsilon range has non-numeric parts: {spec!r}")
    if step <= 0 or start > stop or start < 0 or stop > 1:
        raise argparse.ArgumentTypeError(
            f"epsilon range needs 0 <= start <= stop <= 1 and step > 0, got {spec!r}")
    values = []
    i = 0
    while True:
        value = start + i * step
        if value > stop + 1e-9:
            break
        values.append(min(value, stop))
        i += 1
    return values


def _libs_arg(text: str) -> frozenset[str]:
    libs = frozenset(canonical_library_id(part) for part in text.split(",") if part.strip())
    if not libs:
        raise argparse.ArgumentTypeError("expected a comma-separated list of library ids")
    return libs


def _ks_arg(text: str) -> tuple[int, ...]:
    try:
        ks = tuple(sorted({int(part) for part in text.split(",") if part.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"ks must be comma-separated integers, got {text!r}")
    if not ks or ks[0] < 1:
        raise argparse.ArgumentTypeError("ks must be positive integers")
    return ks


def _add_mining_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-epsilon", type=_ratio(0, 1, "max-epsilon"), default=0.5,
                        help="stop relaxing epsilon at this bound, open (default 0.5)")
    parser.add_argument("--epsilon-step", type=_ratio(0, 1, "epsilon-step", low_open=True),
                        default=0.05, help="epsilon increment per pass (default 0.05)")
    parser.add_argument("--min-pts", type=_positive_int(2, "min-pts"), default=2,
                        help="minimum points per cluster, the point itself counts (default 2)")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--threads", type=_positive_int(1, "threads"), default=1,
                        help="upper bound on worker threads (computation is "
                             "currently sequential, so any value >= 1 is honored)")


def build_parser() -> _Parser:
    parser = _Parser(prog="cousage",
                     description="Mine and explore library co-usage patterns.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", help="load raw dependency data into a canonical matrix")
    p.add_argument("--input", required=True, help="csv/json file or manifest directory")
    p.add_argument("--format", choices=["auto", "csv", "json", "manifest-dir"],
                   default="auto", help="input layout (default auto-detect)")
    p.add_argument("--out", required=True, help="output matrix (.json or .csv)")
    p.add_argument("--min-clients", type=_positive_int(0, "min-clients"), default=2,
                   help="drop libraries with fewer clients (default 2)")
    p.add_argument("--min-libs", type=_positive_int(0, "min-libs"), default=1,
                   help="drop clients with fewer libraries (default 1)")
    _add_common(p)

    p = sub.add_parser("mine", help="mine multi-layer co-usage patterns")
    p.add_argument("--matrix", required=True, help="matrix file (.json or .csv)")
    _add_mining_flags(p)
    p.add_argument("--out", required=True, help="output mining result (.json)")
    _add_common(p)

    p = sub.add_parser("metrics", help="print the per-pattern cohesion table")
    p.add_argument("--matrix", required=True, help="matrix file (.json or .csv)")
    p.add_argument("--result", required=True, help="mining result from `mine`")
    _add_common(p)

    p = sub.add_parser("cv", help="k-fold cross-validation plus ranking evaluation")
    p.add_argument("--matrix", required=True, help="matrix file (.json or .csv)")
    p.add_argument("--k", type=_positive_int(2, "k"), default=10,
                   help="number of folds (default 10)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for fold assignment and drop-half splits (default 0)")
    _add_mining_flags(p)
    p.add_argument("--ks", type=_ks_arg, default=DEFAULT_KS,
                   help="recall cutoffs, comma-separated (default 1,3,5,7,10)")
    p.add_argument("--mode", choices=list(MODES), default="holdout-safe",
                   help="ranking protocol (default holdout-safe)")
    p.add_argument("--out-dir", required=True, help="directory for the report csvs")
    _add_common(p)

    p = sub.add_parser("sweep", help="mining sweep over a max-epsilon grid")
    p.add_argument("--matrix", required=True, help="matrix file (.json or .csv)")
    p.add_argument("--epsilons", type=parse_epsilon_range, default="0.05:0.95:0.05",
                   help="grid as start:stop:step (default 0.05:0.95:0.05)")
    p.add_argument("--epsilon-step", type=_ratio(0, 1, "epsilon-step", low_open=True),
                   default=0.05, help="epsilon increment per pass (default 0.05)")
    p.add_argument("--min-pts", type=_positive_int(2, "min-pts"), default=2,
                   help="minimum points per cluster (default 2)")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock times (breaks byte-identical reruns)")
    p.add_argument("--out", required=True, help="output csv")
    _add_common(p)

    p = sub.add_parser("recommend", help="rank candidate libraries for a client profile")
    p.add_argument("--matrix", required=True, help="matrix file (.json or .csv)")
    p.add_argument("--result", required=True, help="mining result from `mine`")
    p.add_argument("--seed-libs", type=_libs_arg, required=True,
                   help="libraries the client already uses, comma-separated")
    p.add_argument("--k", type=_positive_int(1, "k"), default=10,
                   help="list length (default 10)")
    p.add_argument("--mode", choices=list(MODES), default="holdout-safe",
                   help="scoring protocol (default holdout-safe)")
    p.add_argument("--ground-truth", type=_libs_arg, default=None,
                   help="held-out libraries (faithful mode only)")
    _add_common(p)

    p = sub.add_parser("baseline", help="association-rule baseline over the same matrix")
    p.add_argument("--matrix", required=True, help="matrix file (.json or .csv)")
    p.add_argument("--minsup", type=_ratio(0, 1, "minsup", low_open=True), default=0.002,
                   help="minimum itemset support (default 0.002)")
    p.add_argument("--minconf", type=_ratio(0, 1, "minconf", low_open=True), default=0.8,
                   help="minimum rule confidence (default 0.8)")
    p.add_argument("--neighbors", type=_positive_int(1, "neighbors"), default=25,
                   help="voting neighbors for collaborative filtering (default 25)")
    p.add_argument("--target-libs", type=_libs_arg, default=None,
                   help="optional profile: also print fused rule/CF scores")
    p.add_argument("--out-dir", required=True, help="directory for rules.csv and baseline_patterns.csv")
    _add_common(p)

    p = sub.add_parser("export-viz", help="export the explorer JSON document")
    p.add_argument("--matrix", required=True, help="matrix file (.json or .csv)")
    p.add_argument("--result", required=True, help="mining result from `mine`")
    p.add_argument("--out", required=True, help="output explorer document (.json)")
    _add_common(p)

    return parser


def _load_result(args, m):
    return result_from_json(Path(args.result).read_text(encoding="utf-8"), m)


def _cmd_ingest(args) -> int:
    m = load_matrix(args.input, args.format)
    m = filter_matrix(m, args.min_clients, args.min_libs)
    write_matrix(m, args.out)
    s = stats(m)
    print(f"{s.client_count} clients x {s.library_count} libraries "
          f"(avg {s.avg_libs_per_client:.2f}, median {s.median_libs_per_client:g} "
          f"libraries per client) -> {args.out}")
    return 0


def _cmd_mine(args) -> int:
    m = load_matrix(args.matrix)
    cfg = MiningConfig(max_epsilon=args.max_epsilon, epsilon_step=args.epsilon_step,
                       min_pts=args.min_pts)
    result = epsilon_dbscan(m, cfg)
    Path(args.out).write_text(result_to_json(result), encoding="utf-8")
    print(f"{len(result.patterns)} patterns, {len(result.noise)} noise libraries "
          f"-> {args.out}")
    return 0


def _cmd_metrics(args) -> int:
    m = load_matrix(args.matrix)
    result = _load_result(args, m)
    print("pattern,size,epsilon,puc,libraries")
    for i, pattern in enumerate(result.patterns, start=1):
        libs = sorted(flatten(pattern))
        value = puc(libs, m)
        shown = "undefined" if value is None else f"{value:.4f}"
        print(f"{i},{len(libs)},{pattern.formed_at:g},{shown},{'|'.join(libs)}")
    return 0


def _cmd_cv(args) -> int:
    m = load_matrix(args.matrix)
    cfg = MiningConfig(max_epsilon=args.max_epsilon, epsilon_step=args.epsilon_step,
                       min_pts=args.min_pts)
    report = cross_validate(m, cfg, k=args.k, seed=args.seed)
    folds = make_folds(m.clients, args.k, args.seed)
    minings = [epsilon_dbscan(training_matrix(m, folds, f), cfg) for f in range(args.k)]
    ranking = eval_ranking(m, minings, folds, ks=args.ks, seed=args.seed, mode=args.mode)
    written = write_reports(Path(args.out_dir), cv=report, ranking=ranking)
    for name in sorted(written):
        print(f"wrote {written[name]}")
    return 0


def _cmd_sweep(args) -> int:
    m = load_matrix(args.matrix)
    epsilons = args.epsilons if isinstance(args.epsilons, list) \
        else parse_epsilon_range(args.epsilons)
    report = sweep_max_epsilon(m, epsilons, step=args.epsilon_step, min_pts=args.min_pts)
    write_sweep_csv(report, Path(args.out), include_timing=args.timings)
    print(f"{len(report.rows)} sweep rows -> {args.out}")
    return 0


def _cmd_recommend(args) -> int:
    m = load_matrix(args.matrix)
    result = _load_result(args, m)
    if args.mode == "faithful" and not args.ground_truth:
        raise _UsageError("cousage recommend: error: --mode faithful requires --ground-truth")
    rec = recommend(args.seed_libs, result, m, k=args.k, mode=args.mode,
                    ground_truth=args.ground_truth)
    print("rank,library,score")
    for rank, (lib, score) in enumerate(rec.ranked, start=1):
        print(f"{rank},{lib},{score!r}")
    return 0


def _cmd_baseline(args) -> int:
    m = load_matrix(args.matrix)
    cfg = bl.BaselineConfig(minsup=args.minsup, minconf=args.minconf,
                            neighbors=args.neighbors)
    frequent = bl.mine_frequent_itemsets(m, cfg.minsup)
    closed = bl.closed_itemsets(frequent)
    rules = bl.generate_rules(closed, cfg.minconf)
    patterns = bl.baseline_patterns(rules)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_rules_csv(rules, out_dir / "rules.csv")
    with open(out_dir / "baseline_patterns.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("libraries,puc\n")
        for pattern in patterns:
            value = puc(pattern, m)
            fh.write(f"{'|'.join(sorted(pattern))},{value!r}\n")
    print(f"{len(rules)} rules, {len(patterns)} flat patterns -> {out_dir}")
    if args.target_libs:
        print("library,score")
        for lib, score in bl.baseline_recommend(args.target_libs, rules, m, cfg).items():
            print(f"{lib},{score!r}")
    return 0


def _cmd_export_viz(args) -> int:
    m = load_matrix(args.matrix)
    result = _load_result(args, m)
    document = to_viz_json(result, m)
    validate_viz(document)
    Path(args.out).write_text(document, encoding="utf-8")
    print(f"{len(result.patterns)} patterns, {len(result.noise)} noise libraries "
          f"-> {args.out}")
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "mine": _cmd_mine,
    "metrics": _cmd_metrics,
    "cv": _cmd_cv,
    "sweep": _cmd_sweep,
    "recommend": _cmd_recommend,
    "baseline": _cmd_baseline,
    "export-viz": _cmd_export_viz,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help exits 0
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"cousage {args.command}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
