"""Ingestion, filtering, and corpus statistics."""
from __future__ import annotations

import json
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cousage import (DependencyMatrix, ManifestError, filter_matrix, load_matrix,
                     parse_manifest, stats, write_matrix)

POM_TWO_DEPS = """<?xml version="1.0"?>
<project>
  <dependencies>
    <dependency>
      <groupId>junit</groupId>
      <artifactId>junit</artifactId>
      <version>4.12</version>
      <scope>test</scope>
    </dependency>
    <dependency>
      <groupId>org.apache.commons</groupId>
      <artifactId>commons-email</artifactId>
    </dependency>
  </dependencies>
</project>
"""

POM_NAMESPACED = """<?xml version="1.0"?>
<project xmlns="http://maven.apache.org/POM/4.0.0">
  <dependencies>
    <dependency>
      <groupId>Junit</groupId>
      <artifactId>JUnit</artifactId>
    </dependency>
  </dependencies>
</project>
"""

POM_EMPTY = "<project><dependencies/></project>"

POM_DUPLICATE = """<project>
  <dependencies>
    <dependency><groupId>a</groupId><artifactId>x</artifactId></dependency>
    <dependency><groupId>b</groupId><artifactId>y</artifactId></dependency>
    <dependency><groupId>a</groupId><artifactId>x</artifactId></dependency>
  </dependencies>
</project>
"""

POM_MISSING_PARTS = """<project>
  <dependencies>
    <dependency><artifactId>orphan</artifactId></dependency>
    <dependency><groupId>solo</groupId></dependency>
    <dependency><groupId>ok</groupId><artifactId>kept</artifactId></dependency>
  </dependencies>
</project>
"""

POM_DISTRACTORS = """<project>
  <dependencyManagement>
    <dependencies>
      <dependency><groupId>managed</groupId><artifactId>nope</artifactId></dependency>
    </dependencies>
  </dependencyManagement>
  <profiles>
    <profile>
      <dependencies>
        <dependency><groupId>profiled</groupId><artifactId>nope</artifactId></dependency>
      </dependencies>
    </profile>
  </profiles>
  <dependencies>
    <dependency><groupId>real</groupId><artifactId>dep</artifactId></dependency>
  </dependencies>
</project>
"""


class TestParseManifest:
    def test_two_dependencies_in_document_order(self):
        parsed = parse_manifest(POM_TWO_DEPS)
        assert parsed.dependencies == ["junit:junit", "org.apache.commons:commons-email"]
        assert parsed.warnings == []

    def test_namespaced_pom_and_lowercase_normalization(self):
        parsed = parse_manifest(POM_NAMESPACED)
        assert parsed.dependencies == ["junit:junit"]

    def test_zero_dependencies(self):
        assert parse_manifest(POM_EMPTY).dependencies == []

    def test_duplicate_kept_once(self):
        parsed = parse_manifest(POM_DUPLICATE)
        # oracle: the set of (group, artifact) pairs hand-read from the fixture
        assert set(parsed.dependencies) == {"a:x", "b:y"}
        assert parsed.dependencies == ["a:x", "b:y"]

    def test_missing_parts_skipped_with_warnings(self):
        parsed = parse_manifest(POM_MISSING_PARTS)
        assert parsed.dependencies == ["ok:kept"]
        assert len(parsed.warnings) == 2
        assert "groupId" in parsed.warnings[0]
        assert "artifactId" in parsed.warnings[1]

    def test_management_and_profiles_ignored(self):
        assert parse_manifest(POM_DISTRACTORS).dependencies == ["real:dep"]

    def test_malformed_xml_reports_position(self):
        with pytest.raises(ManifestError, match=r"line \d+, column \d+"):
            parse_manifest("<project><dependencies></project>")


class TestLoadMatrix:
    def test_json_two_by_two(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"C1": ["L1", "L2"], "C2": ["L1"]}), encoding="utf-8")
        m = load_matrix(path, "json")
        assert m.clients == ("C1", "C2")
        assert m.libraries == ("l1", "l2")
        assert m.row("l1").tolist() == [True, True]
        assert m.row("l2").tolist() == [True, False]

    def test_csv_round_matches_json(self, tmp_path):
        jpath = tmp_path / "m.json"
        jpath.write_text(json.dumps({"c1": ["a:x", "b:y"], "c2": ["a:x"]}), encoding="utf-8")
        m = load_matrix(jpath)
        cpath = tmp_path / "m.csv"
        write_matrix(m, cpath)
        assert load_matrix(cpath) == m

    def test_csv_ragged_row_names_the_row(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("client,a,b\nc1,1,0\nc2,1\n", encoding="utf-8")
        with pytest.raises(ValueError, match=r"line 3.*c2"):
            load_matrix(path)

    def test_csv_bad_cell_rejected(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("client,a\nc1,2\n", encoding="utf-8")
        with pytest.raises(ValueError, match="0 or 1"):
            load_matrix(path)

    def test_duplicate_client_rejected(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("client,a\nc1,1\nc1,0\n", encoding="utf-8")
        with pytest.raises(ValueError, match="duplicate client"):
            load_matrix(path)
        jpath = tmp_path / "m.json"
        jpath.write_text('{"c1": ["a"], "c1": ["b"]}', encoding="utf-8")
        with pytest.raises(ValueError, match="duplicate client"):
            load_matrix(jpath)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(ValueError, match="empty matrix file"):
            load_matrix(path)

    def test_manifest_dir_equals_hand_built(self, tmp_path):
        mdir = tmp_path / "manifests"
        mdir.mkdir()
        (mdir / "alpha.xml").write_text(POM_TWO_DEPS, encoding="utf-8")
        (mdir / "beta.xml").write_text(POM_EMPTY, encoding="utf-8")
        (mdir / "gamma.xml").write_text(POM_DUPLICATE, encoding="utf-8")
        m = load_matrix(mdir, "manifest-dir")
        expected = DependencyMatrix.from_client_map({
            "alpha": ["junit:junit", "org.apache.commons:commons-email"],
            "beta": [],
            "gamma": ["a:x", "b:y"],
        })
        assert m == expected

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError, match="unknown matrix format"):
            load_matrix(tmp_path / "x.json", "yaml")


class TestFilterMatrix:
    def test_zero_thresholds_identity(self, walkthrough_matrix):
        assert filter_matrix(walkthrough_matrix, 0, 0) == walkthrough_matrix

    def test_sparse_library_removed(self):
        m = DependencyMatrix.from_client_map({"c1": ["a", "b"], "c2": ["a"]})
        filtered = filter_matrix(m, min_clients_per_lib=2, min_libs_per_client=1)
        assert filtered.libraries == ("a",)
        assert filtered.clients == ("c1", "c2")

    def test_cascading_removal_matches_fixed_point_oracle(self):
        # c3 only uses b; removing b (single client) must also remove c3
        m = DependencyMatrix.from_client_map({
            "c1": ["a", "c"], "c2": ["a", "c"], "c3": ["b"],
        })
        filtered = filter_matrix(m, 2, 1)

        # oracle: repeated single-pass filtering over plain sets
        libs = {lib: set(m.clients_of(lib)) for lib in m.libraries}
        clients = {c: set(m.libraries_of(c)) for c in m.clients}
        changed = True
        while changed:
            changed = False
            for lib in list(libs):
                if len(libs[lib]) < 2:
                    for c in libs.pop(lib):
                        clients[c].discard(lib)
                    changed = True
            for c in list(clients):
                if len(clients[c]) < 1:
                    for lib in clients.pop(c):
                        libs[lib].discard(c)
                    changed = True
        assert set(filtered.libraries) == set(libs)
        assert set(filtered.clients) == set(clients)
        assert filtered.clients == ("c1", "c2")

    def test_idempotent(self, walkthrough_matrix):
        once = filter_matrix(walkthrough_matrix, 2, 1)
        assert filter_matrix(once, 2, 1) == once

    def test_empty_result_is_an_error(self):
        m = DependencyMatrix.from_client_map({"c1": ["a"]})
        with pytest.raises(ValueError, match="empty corpus after filtering"):
            filter_matrix(m, 2, 1)

    def test_negative_threshold_rejected(self, walkthrough_matrix):
        with pytest.raises(ValueError):
            filter_matrix(walkthrough_matrix, -1, 0)


class TestStats:
    def test_two_clients(self):
        m = DependencyMatrix.from_client_map({"c1": ["a", "b"], "c2": ["a", "b", "c", "d"]})
        s = stats(m)
        assert s.avg_libs_per_client == 3.0
        assert s.median_libs_per_client == 3.0

    def test_uniform_matrix(self):
        m = DependencyMatrix.from_client_map({f"c{i}": ["a", "b", "c"] for i in range(5)})
        s = stats(m)
        assert s.avg_libs_per_client == 3.0 == s.median_libs_per_client

    def test_random_matrix_matches_recomputation(self):
        rng = random.Random(20)
        mapping = {
            f"c{i}": [f"lib{j}" for j in range(30) if rng.random() < 0.4] or ["lib0"]
            for i in range(20)
        }
        m = DependencyMatrix.from_client_map(mapping)
        s = stats(m)
        counts = sorted(len(set(libs)) for libs in mapping.values())
        assert s.avg_libs_per_client == pytest.approx(sum(counts) / len(counts), abs=1e-12)
        mid = (counts[9] + counts[10]) / 2
        assert s.median_libs_per_client == mid

    def test_empty_matrix_rejected(self):
        m = DependencyMatrix((), (), np.zeros((0, 0), bool))
        with pytest.raises(ValueError):
            stats(m)


_name = st.text(alphabet="abcdefghij0123456789_.-", min_size=1, max_size=8)


@given(st.dictionaries(
    keys=_name, values=st.lists(_name, max_size=6), min_size=1, max_size=8))
@settings(max_examples=60, deadline=None)
def test_round_trip_json_and_csv(tmp_path_factory, mapping):
    m = DependencyMatrix.from_client_map(mapping)
    tmp = tmp_path_factory.mktemp("roundtrip")
    write_matrix(m, tmp / "m.json")
    assert load_matrix(tmp / "m.json") == m
    write_matrix(m, tmp / "m.csv")
    assert load_matrix(tmp / "m.csv") == m


def test_column_sums_equal_usage_cardinalities(walkthrough_matrix):
    for lib in walkthrough_matrix.libraries:
        assert walkthrough_matrix.row(lib).sum() == len(walkthrough_matrix.clients_of(lib))
    assert walkthrough_matrix.clients_per_lib().tolist() == [
        int(walkthrough_matrix.row(lib).sum()) for lib in walkthrough_matrix.libraries
    ]


def test_restrict_preserves_order(walkthrough_matrix):
    sub = walkthrough_matrix.restrict(clients=["c1", "c4", "c8"], drop_empty_libraries=True)
    assert sub.clients == ("c1", "c4", "c8")
    assert set(sub.libraries) <= set(walkthrough_matrix.libraries)
    order = [lib for lib in walkthrough_matrix.libraries if lib in sub.libraries]
    assert list(sub.libraries) == order
