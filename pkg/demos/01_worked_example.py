"""Walk through multi-layer mining on a small 8-client / 8-library corpus.

Three libraries share one client set exactly, two share another, one sits at
distance 0.5 from the first group's aggregate, and two have no consistent
co-usage at all. Watching the epsilon relaxation step by step shows how the
tight cores form first and the looser layer wraps around them later.
"""
import logging

from cousage import MiningConfig, DependencyMatrix, epsilon_dbscan, flatten, layer_paths, puc

logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")

matrix = DependencyMatrix.from_client_map({
    "c1": ["lib1", "lib2", "lib3", "lib7"],
    "c2": ["lib1", "lib2", "lib3", "lib7"],
    "c3": ["lib1", "lib2", "lib3", "lib8"],
    "c4": ["lib4", "lib5", "lib8"],
    "c5": ["lib4", "lib5", "lib8"],
    "c6": ["lib1", "lib2", "lib3", "lib8"],
    "c7": ["lib6", "lib8"],
    "c8": ["lib8"],
})

print(f"corpus: {matrix}")
for lib in matrix.libraries:
    print(f"  {lib}: clients {', '.join(matrix.clients_of(lib))}")

result = epsilon_dbscan(matrix, MiningConfig(max_epsilon=0.55, epsilon_step=0.25))

print("\nepsilon relaxation trace:")
for step in result.trace:
    print(f"  eps={step.epsilon:<5g} points={step.points_in:<3d} "
          f"clusters={step.clusters_formed} noise={step.noise_points}")

print("\npatterns (outermost epsilon first, nesting as layer chains):")
for i, pattern in enumerate(result.patterns, start=1):
    cohesion = puc(flatten(pattern), matrix)
    print(f"  pattern {i}: {sorted(flatten(pattern))} "
          f"(formed at eps={pattern.formed_at:g}, PUC={cohesion:.3f})")
    for lib, path in layer_paths(pattern):
        chain = " > ".join(f"{eps:g}" for eps in path)
        print(f"    {lib}: layers {chain}")

print(f"\nnoise (no consistent co-usage): {sorted(result.noise)}")
