"""Library co-usage pattern mining over client dependency corpora.

The pipeline: ingest dependency manifests into a binary client x library
matrix, cluster libraries by shared clients with an epsilon-relaxing DBSCAN
variant into nested cohesion layers, score the patterns (usage cohesion,
consistency, informativeness), evaluate generalizability and recommendation
quality, and export the hierarchy for interactive exploration.
"""
from .baseline import (AssociationRule, BaselineConfig, baseline_patterns,
                       baseline_recommend, closed_itemsets, generate_rules,
                       knn_cf_scores, mine_frequent_itemsets)
from .corpus import (CorpusStats, DependencyMatrix, ManifestError, ParsedManifest,
                     canonical_library_id, filter_matrix, load_matrix, parse_manifest,
                     stats, write_matrix)
from .dbscan import ClusteringResult, run_dbscan
from .evaluation import (CvPatternRow, CvReport, CvRun, FoldPlan, SweepReport, SweepRow,
                         cross_validate, eligible_patterns, make_folds, sweep_dataset_size,
                         sweep_max_epsilon, training_matrix)
from .export import (result_from_json, result_to_json, to_viz_json, validate_viz,
                     viz_schema, write_reports)
from .layering import (MiningConfig, MiningResult, Pattern, TraceStep, epsilon_dbscan,
                       epsilon_schedule, flatten, layer_paths)
from .metrics import (INFORMATIVE_THRESHOLD, PatternMetrics, consistency, is_informative,
                      precision, puc)
from .recommend import (DEFAULT_KS, RankingEval, Recommendation, eval_ranking, rec_score,
                        recommend)
from .simindex import Point, UsageVector, dist, neighbors, or_all, pairwise_distances, usim

__version__ = "0.1.0"

__all__ = [
    "AssociationRule", "BaselineConfig", "ClusteringResult", "CorpusStats",
    "CvPatternRow", "CvReport", "CvRun", "DEFAULT_KS", "DependencyMatrix", "FoldPlan",
    "INFORMATIVE_THRESHOLD", "ManifestError", "MiningConfig", "MiningResult",
    "ParsedManifest", "Pattern", "PatternMetrics", "Point", "RankingEval",
    "Recommendation", "SweepReport", "SweepRow", "TraceStep", "UsageVector",
    "baseline_patterns", "baseline_recommend", "canonical_library_id",
    "closed_itemsets", "consistency", "cross_validate", "dist", "eligible_patterns",
    "epsilon_dbscan", "epsilon_schedule", "eval_ranking", "filter_matrix", "flatten",
    "generate_rules", "is_informative", "knn_cf_scores", "layer_paths", "load_matrix",
    "make_folds", "mine_frequent_itemsets", "neighbors", "or_all",
    "pairwise_distances", "parse_manifest", "precision", "puc", "rec_score",
    "recommend", "result_from_json", "result_to_json", "run_dbscan", "stats",
    "sweep_dataset_size", "sweep_max_epsilon", "to_viz_json", "training_matrix",
    "usim", "validate_viz", "viz_schema", "write_matrix", "write_reports",
]
