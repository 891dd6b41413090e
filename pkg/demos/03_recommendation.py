"""Recommend libraries from mined patterns and evaluate with drop-half.

A developer's retained libraries select the overlapping patterns; the other
members of those patterns are ranked by their best usage similarity to what
the developer already has. The evaluation hides half of each validation
client's libraries and measures how often they resurface near the top.
"""
from cousage import (MiningConfig, epsilon_dbscan, eval_ranking, make_folds,
                     recommend, training_matrix, DependencyMatrix)

mapping = {}
for g in range(6):
    cores = [f"g{g}:core{j}" for j in range(4)]
    satellites = [f"g{g}:sat{j}" for j in range(2)]
    for i in range(20):
        libs = list(cores) + (satellites if i < 10 else [])
        mapping[f"g{g}c{i}"] = libs
matrix = DependencyMatrix.from_client_map(mapping)
cfg = MiningConfig(max_epsilon=0.55, epsilon_step=0.05)

mining = epsilon_dbscan(matrix, cfg)
print(f"{matrix} -> {len(mining.patterns)} patterns")

seed_libs = {"g2:core0", "g2:core1"}
rec = recommend(seed_libs, mining, matrix, k=5)
print(f"\nalready using {sorted(seed_libs)}; suggested next:")
for rank, (lib, score) in enumerate(rec.ranked, start=1):
    print(f"  {rank}. {lib}  (usage similarity {score:.2f})")

print("\ndrop-half ranking evaluation over 10 folds:")
folds = make_folds(matrix.clients, 10, seed=17)
minings = [epsilon_dbscan(training_matrix(matrix, folds, f), cfg) for f in range(10)]
result = eval_ranking(matrix, minings, folds, ks=(1, 3, 5, 7, 10), seed=17)
for k, recall in result.recall_at_k.items():
    print(f"  recall@{k}: {recall:.3f}")
print(f"  MRR: {result.mrr:.3f} over {result.system_count} systems "
      f"({result.skipped} skipped)")
