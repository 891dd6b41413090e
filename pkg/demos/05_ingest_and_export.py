"""From raw manifests to an explorer document, end to end.

Builds a few Maven-style manifests on disk, ingests them into the canonical
matrix, mines patterns, and exports the nested hierarchy the interactive
explorer consumes (see frontend/).
"""
import tempfile
from pathlib import Path

from cousage import (MiningConfig, epsilon_dbscan, filter_matrix, load_matrix,
                     parse_manifest, stats, to_viz_json, validate_viz)

POM = """<project>
  <dependencies>
    {deps}
  </dependencies>
</project>
"""
DEP = "<dependency><groupId>{g}</groupId><artifactId>{a}</artifactId></dependency>"


def pom(*coords):
    deps = "\n    ".join(DEP.format(g=g, a=a) for g, a in coords)
    return POM.format(deps=deps)


CLIENTS = {
    "webshop": [("org.apache.httpcomponents", "httpclient"), ("com.google.code.gson", "gson"),
                ("junit", "junit")],
    "crawler": [("org.apache.httpcomponents", "httpclient"), ("com.google.code.gson", "gson"),
                ("junit", "junit")],
    "gateway": [("org.apache.httpcomponents", "httpclient"), ("com.google.code.gson", "gson")],
    "reporting": [("org.apache.poi", "poi"), ("org.apache.poi", "poi-ooxml")],
    "invoicing": [("org.apache.poi", "poi"), ("org.apache.poi", "poi-ooxml"),
                  ("junit", "junit")],
    "one-off": [("org.jsoup", "jsoup")],
}

with tempfile.TemporaryDirectory() as tmp:
    manifest_dir = Path(tmp) / "manifests"
    manifest_dir.mkdir()
    for client, coords in CLIENTS.items():
        (manifest_dir / f"{client}.xml").write_text(pom(*coords), encoding="utf-8")

    sample = parse_manifest((manifest_dir / "webshop.xml").read_text(encoding="utf-8"))
    print(f"webshop.xml declares: {sample.dependencies}")

    matrix = load_matrix(manifest_dir, "manifest-dir")
    matrix = filter_matrix(matrix, min_clients_per_lib=2, min_libs_per_client=1)
    s = stats(matrix)
    print(f"\nafter filtering: {s.client_count} clients x {s.library_count} libraries, "
          f"avg {s.avg_libs_per_client:.2f} libs/client")

    result = epsilon_dbscan(matrix, MiningConfig(max_epsilon=0.55, epsilon_step=0.05))
    document = to_viz_json(result, matrix)
    validate_viz(document)

    out = Path(tmp) / "patterns.json"
    out.write_text(document, encoding="utf-8")
    print(f"\nexplorer document ({len(document.splitlines())} lines) validates "
          f"against the shipped schema")
    print(document)
