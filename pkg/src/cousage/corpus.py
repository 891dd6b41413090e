"""Client x library dependency corpus.

A corpus is a binary matrix: one row per third-party library, one column per
client system, cell set when the client declares a dependency on the library.
Rows and columns keep the insertion order of whatever file they were loaded
from, so downstream results are reproducible byte for byte.

Library identifiers are canonical ``group:artifact`` coordinates,
lowercase-normalized, with versions collapsed at ingestion.
"""
from __future__ import annotations

import json
import statistics
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

LibraryId = str
ClientId = str


class ManifestError(ValueError):
    """Raised for malformed manifest XML; message carries line/column."""


def canonical_library_id(raw: str) -> LibraryId:
    """Normalize a library identifier: strip whitespace, lowercase."""
    ident = raw.strip().lower()
    if not ident:
        raise ValueError("empty library identifier")
    return ident


class ParsedManifest(NamedTuple):
    dependencies: list[LibraryId]
    warnings: list[str]


def _local_name(tag: str) -> str:
    # ElementTree keeps namespaces as '{uri}tag'
    return tag.rsplit("}", 1)[-1]


def parse_manifest(xml_text: str) -> ParsedManifest:
    """Extract ``group:artifact`` coordinates from a Maven-style manifest.

    Only literal ``<dependency>`` entries directly under the project-level
    ``<dependencies>`` section are read; ``dependencyManagement``, profiles,
    and property interpolation are ignored. Version, scope, and exclusions
    are dropped. Duplicates keep the first occurrence, in document order.

    Entries missing a groupId or artifactId are skipped and reported in the
    returned warnings list.
    """
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        line, col = exc.position
        raise ManifestError(f"malformed manifest XML at line {line}, column {col}: {exc}") from exc

    deps: list[LibraryId] = []
    seen: set[LibraryId] = set()
    warnings: list[str] = []
    for section in root:
        if _local_name(section.tag) != "dependencies":
            continue
        for index, dep in enumerate(section):
            if _local_name(dep.tag) != "dependency":
                continue
            group = artifact = None
            for child in dep:
                name = _local_name(child.tag)
                if name == "groupId":
                    group = (child.text or "").strip()
                elif name == "artifactId":
                    artifact = (child.text or "").strip()
            if not group or not artifact:
                missing = "groupId" if not group else "artifactId"
                warnings.append(f"dependency #{index + 1}: missing {missing}, entry skipped")
                continue
            ident = canonical_library_id(f"{group}:{artifact}")
            if ident not in seen:
                seen.add(ident)
                deps.append(ident)
    return ParsedManifest(deps, warnings)


class DependencyMatrix:
    """Immutable client x library binary usage matrix.

    ``usage`` has shape (n_libraries, n_clients); row i is library i's usage
    vector over the client columns.
    """

    __slots__ = ("clients", "libraries", "usage", "_client_index", "_library_index")

    def __init__(self, clients: Sequence[ClientId], libraries: Sequence[LibraryId],
                 usage: np.ndarray):
        clients = tuple(clients)
        libraries = tuple(libraries)
        if len(set(clients)) != len(clients):
            raise ValueError("duplicate client names")
        if len(set(libraries)) != len(libraries):
            raise ValueError("duplicate library identifiers")
        if any(not c for c in clients):
            raise ValueError("empty client name")
        if any(not lib for lib in libraries):
            raise ValueError("empty library identifier")
        usage = np.asarray(usage, dtype=bool)
        if usage.shape != (len(libraries), len(clients)):
            raise ValueError(
                f"usage shape {usage.shape} does not match "
                f"{len(libraries)} libraries x {len(clients)} clients")
        usage = usage.copy()
        usage.setflags(write=False)
        self.clients = clients
        self.libraries = libraries
        self.usage = usage
        self._client_index = {c: i for i, c in enumerate(clients)}
        self._library_index = {lib: i for i, lib in enumerate(libraries)}

    # -- construction ------------------------------------------------------

    @classmethod
    def from_client_map(cls, mapping: Mapping[ClientId, Iterable[str]]) -> "DependencyMatrix":
        """Build a matrix from client -> libraries, preserving insertion order.

        Libraries are ordered by first appearance; identifiers are
        canonicalized, so differently-cased duplicates collapse.
        """
        clients = list(mapping.keys())
        libraries: list[LibraryId] = []
        index: dict[LibraryId, int] = {}
        rows_per_client: list[list[int]] = []
        for client in clients:
            row = []
            for raw in mapping[client]:
                lib = canonical_library_id(raw)
                if lib not in index:
                    index[lib] = len(libraries)
                    libraries.append(lib)
                row.append(index[lib])
            rows_per_client.append(row)
        usage = np.zeros((len(libraries), len(clients)), dtype=bool)
        for col, row in enumerate(rows_per_client):
            usage[row, col] = True
        return cls(clients, libraries, usage)

    # -- accessors ---------------------------------------------------------

    @property
    def client_count(self) -> int:
        return len(self.clients)

    @property
    def library_count(self) -> int:
        return len(self.libraries)

    def row(self, library: LibraryId) -> np.ndarray:
        """The library's usage vector (read-only bool array over clients)."""
        return self.usage[self._library_index[library]]

    def clients_of(self, library: LibraryId) -> tuple[ClientId, ...]:
        mask = self.row(library)
        return tuple(c for c, used in zip(self.clients, mask) if used)

    def libraries_of(self, client: ClientId) -> tuple[LibraryId, ...]:
        col = self.usage[:, self._client_index[client]]
        return tuple(lib for lib, used in zip(self.libraries, col) if used)

    def libs_per_client(self) -> np.ndarray:
        return self.usage.sum(axis=0)

    def clients_per_lib(self) -> np.ndarray:
        return self.usage.sum(axis=1)

    def restrict(self, clients: Iterable[ClientId] | None = None,
                 libraries: Iterable[LibraryId] | None = None,
                 drop_empty_libraries: bool = False) -> "DependencyMatrix":
        """Submatrix keeping only the given clients/libraries, order preserved.

        With ``drop_empty_libraries`` libraries left with zero clients after
        the client restriction are removed as well.
        """
        client_keep = set(clients) if clients is not None else None
        lib_keep = set(libraries) if libraries is not None else None
        col_mask = np.array([client_keep is None or c in client_keep for c in self.clients])
        row_mask = np.array([lib_keep is None or lib in lib_keep for lib in self.libraries])
        usage = self.usage[np.ix_(row_mask, col_mask)]
        libs = [lib for lib, keep in zip(self.libraries, row_mask) if keep]
        if drop_empty_libraries:
            nonempty = usage.any(axis=1)
            usage = usage[nonempty]
            libs = [lib for lib, keep in zip(libs, nonempty) if keep]
        return DependencyMatrix(
            [c for c, keep in zip(self.clients, col_mask) if keep], libs, usage)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DependencyMatrix):
            return NotImplemented
        return (self.clients == other.clients and self.libraries == other.libraries
                and bool(np.array_equal(self.usage, other.usage)))

    def __hash__(self) -> int:
        return hash((self.clients, self.libraries, self.usage.tobytes()))

    def __repr__(self) -> str:
        return f"DependencyMatrix({self.client_count} clients x {self.library_count} libraries)"


@dataclass(frozen=True)
class CorpusStats:
    client_count: int
    library_count: int
    avg_libs_per_client: float
    median_libs_per_client: float


def stats(m: DependencyMatrix) -> CorpusStats:
    """Average and median number of libraries per client."""
    if m.client_count == 0 or m.library_count == 0:
        raise ValueError("stats of an empty matrix")
    counts = m.libs_per_client()
    return CorpusStats(
        client_count=m.client_count,
        library_count=m.library_count,
        avg_libs_per_client=float(counts.mean()),
        median_libs_per_client=float(statistics.median(int(c) for c in counts)),
    )


def filter_matrix(m: DependencyMatrix, min_clients_per_lib: int = 2,
                  min_libs_per_client: int = 1) -> DependencyMatrix:
    """Drop sparse libraries/clients until a fixed point, order preserved.

    Each pass removes libraries used by fewer than ``min_clients_per_lib``
    clients, then clients using fewer than ``min_libs_per_client`` libraries;
    removals can cascade, so passes repeat until nothing changes.
    """
    if min_clients_per_lib < 0 or min_libs_per_client < 0:
        raise ValueError("filter thresholds must be >= 0")
    usage = m.usage
    libraries = list(m.libraries)
    clients = list(m.clients)
    while True:
        lib_mask = usage.sum(axis=1) >= min_clients_per_lib
        usage = usage[lib_mask]
        libraries = [lib for lib, keep in zip(libraries, lib_mask) if keep]
        client_mask = usage.sum(axis=0) >= min_libs_per_client
        usage = usage[:, client_mask]
        clients = [c for c, keep in zip(clients, client_mask) if keep]
        if bool(lib_mask.all()) and bool(client_mask.all()):
            break
    if not libraries or not clients:
        raise ValueError("empty corpus after filtering")
    return DependencyMatrix(clients, libraries, usage)


# -- file formats -----------------------------------------------------------

def load_matrix(path: str | Path, format: str = "auto") -> DependencyMatrix:
    """Load a matrix from ``csv``, ``json``, or ``manifest-dir`` input.

    ``auto`` picks the format from the path: a directory is a manifest dir,
    otherwise the file extension decides.
    """
    path = Path(path)
    if format == "auto":
        if path.is_dir():
            format = "manifest-dir"
        elif path.suffix.lower() == ".csv":
            format = "csv"
        else:
            format = "json"
    if format == "csv":
        return _load_csv(path)
    if format == "json":
        return _load_json(path)
    if format == "manifest-dir":
        return _load_manifest_dir(path)
    raise ValueError(f"unknown matrix format: {format!r}")


def write_matrix(m: DependencyMatrix, path: str | Path, format: str = "auto") -> None:
    """Write a matrix as CSV or JSON (UTF-8, LF line endings).

    The JSON form maps each client to its library list; reloading it yields
    libraries in first-appearance order, so the round trip is exact for
    matrices already in that canonical order. CSV keeps the full header and
    round-trips any column order.
    """
    path = Path(path)
    if format == "auto":
        format = "csv" if path.suffix.lower() == ".csv" else "json"
    if format == "csv":
        lines = [",".join(["client", *m.libraries])]
        for i, client in enumerate(m.clients):
            cells = ["1" if used else "0" for used in m.usage[:, i]]
            lines.append(",".join([client, *cells]))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    elif format == "json":
        mapping = {c: list(m.libraries_of(c)) for c in m.clients}
        path.write_text(json.dumps(mapping, indent=2, ensure_ascii=False) + "\n",
                        encoding="utf-8")
    else:
        raise ValueError(f"unknown matrix format: {format!r}")


def _load_csv(path: Path) -> DependencyMatrix:
    text = path.read_text(encoding="utf-8")
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError(f"empty matrix file: {path}")
    header = [cell.strip() for cell in lines[0].split(",")]
    if not header or header[0].lower() != "client":
        raise ValueError("csv header must start with a 'client' cell")
    libraries = [canonical_library_id(cell) for cell in header[1:]]
    clients: list[ClientId] = []
    rows: list[list[bool]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = [cell.strip() for cell in line.split(",")]
        if len(cells) != len(header):
            raise ValueError(
                f"ragged csv row at line {lineno} ({cells[0] if cells else '?'}): "
                f"expected {len(header)} cells, got {len(cells)}")
        client = cells[0]
        for cell in cells[1:]:
            if cell not in ("0", "1"):
                raise ValueError(f"line {lineno}: matrix cells must be 0 or 1, got {cell!r}")
        clients.append(client)
        rows.append([cell == "1" for cell in cells[1:]])
    usage = np.array(rows, dtype=bool).T if rows else np.zeros((len(libraries), 0), bool)
    return DependencyMatrix(clients, libraries, usage)


def _load_json(path: Path) -> DependencyMatrix:
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        raise ValueError(f"empty matrix file: {path}")

    def reject_duplicates(pairs):
        keys = [k for k, _ in pairs]
        if len(set(keys)) != len(keys):
            dup = next(k for k in keys if keys.count(k) > 1)
            raise ValueError(f"duplicate client names: {dup!r}")
        return dict(pairs)

    mapping = json.loads(text, object_pairs_hook=reject_duplicates)
    if not isinstance(mapping, dict):
        raise ValueError("json matrix must be an object mapping client -> [libraries]")
    for client, libs in mapping.items():
        if not isinstance(libs, list) or not all(isinstance(x, str) for x in libs):
            raise ValueError(f"client {client!r}: libraries must be an array of strings")
    return DependencyMatrix.from_client_map(mapping)


def _load_manifest_dir(path: Path) -> DependencyMatrix:
    files = sorted(path.glob("*.xml"))
    if not files:
        raise ValueError(f"no *.xml manifests in {path}")
    mapping: dict[ClientId, list[LibraryId]] = {}
    for file in files:
        parsed = parse_manifest(file.read_text(encoding="utf-8"))
        mapping[file.stem] = parsed.dependencies
    return DependencyMatrix.from_client_map(mapping)
