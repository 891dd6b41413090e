"""Serialization: explorer JSON, mining-result persistence, report CSVs.

All outputs are UTF-8 with LF line endings and deterministic for identical
inputs, so repeated runs with the same flags and seed are byte-identical.
"""
from __future__ import annotations

import csv
import importlib.resources
import json
from pathlib import Path
from typing import Any

import jsonschema

from .corpus import DependencyMatrix, LibraryId
from .evaluation import CvReport, SweepReport
from .layering import MiningConfig, MiningResult, Pattern, TraceStep
from .metrics import puc
from .recommend import RankingEval
from .simindex import Point, UsageVector

ARTIFACT_URL_TEMPLATE = "https://mvnrepository.com/artifact/{group}/{artifact}"


def viz_schema() -> dict:
    """The shipped JSON schema for the explorer export."""
    text = (importlib.resources.files("cousage") / "schemas" / "viz-schema.json").read_text(
        encoding="utf-8")
    return json.loads(text)


def validate_viz(document: str | dict) -> None:
    """Raise jsonschema.ValidationError when the export is malformed."""
    obj = json.loads(document) if isinstance(document, str) else document
    jsonschema.validate(obj, viz_schema())


def artifact_url(library: LibraryId) -> str | None:
    """Maven artifact page URL, when the id parses as group:artifact."""
    parts = library.split(":")
    if len(parts) == 2 and parts[0] and parts[1]:
        return ARTIFACT_URL_TEMPLATE.format(group=parts[0], artifact=parts[1])
    return None


def _library_node(library: LibraryId, m: DependencyMatrix) -> dict[str, Any]:
    node: dict[str, Any] = {
        "kind": "library",
        "name": library,
        "clientCount": int(m.row(library).sum()) if library in m.libraries else 0,
    }
    url = artifact_url(library)
    if url is not None:
        node["artifactUrl"] = url
    return node


def _layer_node(point: Point, m: DependencyMatrix, name: str) -> dict[str, Any]:
    assert not point.is_atomic and point.formed_at is not None
    children = []
    for i, child in enumerate(point.children):
        if child.is_atomic:
            assert child.library is not None
            children.append(_library_node(child.library, m))
        else:
            assert child.formed_at is not None
            children.append(_layer_node(child, m, f"{name} / layer eps={child.formed_at:g}"))
    return {
        "kind": "pattern-layer",
        "name": name,
        "epsilon": point.formed_at,
        "puc": puc(point.member_libraries(), m),
        "clientCount": point.vector.cardinality,
        "children": children,
    }


def to_viz_json(result: MiningResult, m: DependencyMatrix) -> str:
    """Explorer document: pattern trees mirroring the layer nesting, plus noise.

    Every layer is annotated with its usage cohesion so the UI can color
    regions without recomputing, and every library leaf carries its client
    count plus (when the id is a Maven coordinate) its artifact page URL.
    """
    patterns = [
        _layer_node(p.root, m, f"pattern {i + 1}")
        for i, p in enumerate(result.patterns)
    ]
    noise = [_library_node(lib, m) for lib in result.noise]
    document = {"patterns": patterns, "noise": noise}
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


# -- mining-result persistence ------------------------------------------------

def _point_to_obj(point: Point) -> dict[str, Any]:
    if point.is_atomic:
        return {"library": point.library}
    return {
        "formed_at": point.formed_at,
        "children": [_point_to_obj(c) for c in point.children],
    }


def result_to_json(result: MiningResult) -> str:
    obj = {
        "config": {
            "max_epsilon": result.config.max_epsilon,
            "epsilon_step": result.config.epsilon_step,
            "min_pts": result.config.min_pts,
        },
        "patterns": [_point_to_obj(p.root) for p in result.patterns],
        "noise": list(result.noise),
        "trace": [
            {"epsilon": t.epsilon, "points_in": t.points_in,
             "clusters_formed": t.clusters_formed, "noise_points": t.noise_points}
            for t in result.trace
        ],
    }
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _point_from_obj(obj: dict, m: DependencyMatrix) -> Point:
    if "library" in obj:
        lib = obj["library"]
        if lib not in m.libraries:
            raise ValueError(f"result references library {lib!r} missing from the matrix")
        return Point.atomic(lib, UsageVector(m.row(lib)))
    children = [_point_from_obj(c, m) for c in obj["children"]]
    return Point.composite(children, float(obj["formed_at"]))


def result_from_json(text: str, m: DependencyMatrix) -> MiningResult:
    """Rebuild a mining result against the matrix it was mined from."""
    obj = json.loads(text)
    cfg = MiningConfig(**obj["config"])
    patterns = tuple(Pattern(_point_from_obj(p, m)) for p in obj["patterns"])
    for lib in obj["noise"]:
        if lib not in m.libraries:
            raise ValueError(f"result references library {lib!r} missing from the matrix")
    trace = tuple(TraceStep(**t) for t in obj["trace"])
    return MiningResult(patterns=patterns, noise=tuple(obj["noise"]), trace=trace,
                        config=cfg)


# -- report CSVs --------------------------------------------------------------

def _cell(value: float | int | None) -> str:
    if value is None:
        return ""
    return repr(value) if isinstance(value, float) else str(value)


def write_cv_csv(report: CvReport, path: Path) -> None:
    """One row per cross-validation run; validation stats cover eligible only."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([
            "run", "pattern_count", "eligible_count",
            "avg_puc_training", "max_puc_training", "std_puc_training",
            "avg_puc_validation", "max_puc_validation", "std_puc_validation",
        ])
        for run in report.runs:
            writer.writerow([
                run.fold, run.pattern_count, run.eligible_count,
                _cell(run.avg_puc_training), _cell(run.max_puc_training),
                _cell(run.std_puc_training),
                _cell(run.avg_puc_validation), _cell(run.max_puc_validation),
                _cell(run.std_puc_validation),
            ])


def write_sweep_csv(report: SweepReport, path: Path, include_timing: bool = False) -> None:
    """Sweep rows for plotting. Timing is opt-in: it varies between runs,
    and default outputs must stay byte-identical for identical inputs."""
    header = ["max_epsilon", "library_count", "avg_puc", "pattern_count",
              "avg_pattern_size", "avg_clients_per_pattern"]
    if include_timing:
        header.append("wall_time_s")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in report.rows:
            cells = [_cell(row.max_epsilon), row.library_count, _cell(row.avg_puc),
                     row.pattern_count, _cell(row.avg_pattern_size),
                     _cell(row.avg_clients_per_pattern)]
            if include_timing:
                cells.append(_cell(row.wall_time_s))
            writer.writerow(cells)


def write_ranking_csv(report: RankingEval, path: Path) -> None:
    """recall@k rows plus a one-line MRR record."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["k", "recall"])
        for k in sorted(report.recall_at_k):
            writer.writerow([k, _cell(report.recall_at_k[k])])
        writer.writerow(["mrr", _cell(report.mrr)])


def write_rules_csv(rules, path: Path) -> None:
    """Association rules; multi-library cells join members with '|'."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["antecedent", "consequent", "support", "confidence"])
        for rule in rules:
            writer.writerow([
                "|".join(sorted(rule.antecedent)),
                "|".join(sorted(rule.consequent)),
                _cell(rule.support), _cell(rule.confidence),
            ])


def write_reports(out_dir: Path, cv: CvReport | None = None,
                  sweep: SweepReport | None = None,
                  ranking: RankingEval | None = None,
                  include_timing: bool = False) -> dict[str, Path]:
    """Write available reports under fixed names; returns name -> path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}
    if cv is not None:
        path = out_dir / "cv_report.csv"
        write_cv_csv(cv, path)
        written["cv_report.csv"] = path
    if sweep is not None:
        path = out_dir / "sweep_report.csv"
        write_sweep_csv(sweep, path, include_timing=include_timing)
        written["sweep_report.csv"] = path
    if ranking is not None:
        path = out_dir / "ranking_eval.csv"
        write_ranking_csv(ranking, path)
        written["ranking_eval.csv"] = path
    return written
