"""Corpus ingestion: project selection and parallel pair extraction.

Projects come from a manifest of already-local checkouts.  Selection applies
the star / fork / size predicate; mining walks each accepted project's ``.py``
files, parses them, and emits (desc, apiseq) pair records in canonical
(project, path, def offset) order regardless of worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .apicalls import (build_import_table, extract_file_sequences,
                       project_module_set)
from .describe import extract_description
from .pipeline import DescApiPair
from .pysrc import EncodingError, decode_file, parse_source

MAX_PROJECT_SIZE_BYTES = 300 * 2 ** 20
MIN_STARS = 5


@dataclass(frozen=True)
class ProjectManifestEntry:
    project_id: str
    local_path: str
    stars: int = 0
    is_fork: bool = False
    size_bytes: int = 0


@dataclass
class MiningStats:
    files_seen: int = 0
    parsed_ok: int = 0
    encoding_errors: int = 0
    syntax_errors: int = 0
    functions_seen: int = 0
    functions_with_apiseq: int = 0

    def merge(self, other: "MiningStats") -> None:
        self.files_seen += other.files_seen
        self.parsed_ok += other.parsed_ok
        self.encoding_errors += other.encoding_errors
        self.syntax_errors += other.syntax_errors
        self.functions_seen += other.functions_seen
        self.functions_with_apiseq += other.functions_with_apiseq

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def load_manifest(path) -> list[ProjectManifestEntry]:
    """Read a JSONL manifest; relative local paths resolve against the
    manifest file's directory."""
    base = Path(path).parent
    entries = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            local = Path(rec["local_path"])
            if not local.is_absolute():
                local = base / local
            entries.append(ProjectManifestEntry(
                project_id=rec["project_id"],
                local_path=str(local),
                stars=int(rec.get("stars", 0)),
                is_fork=bool(rec.get("is_fork", False)),
                size_bytes=int(rec.get("size_bytes", 0)),
            ))
    return entries


def select_projects(entries, min_stars: int = MIN_STARS,
                    max_size_bytes: int = MAX_PROJECT_SIZE_BYTES):
    """Keep entries with enough stars, that are not forks, and fit the size
    cap (both boundaries inclusive)."""
    return [e for e in entries
            if e.stars >= min_stars and not e.is_fork
            and e.size_bytes <= max_size_bytes]


def _project_files(root: Path) -> list[str]:
    return sorted(p.relative_to(root).as_posix()
                  for p in root.rglob("*.py") if p.is_file())


@dataclass
class _FileResult:
    records: list[DescApiPair] = field(default_factory=list)
    stats: MiningStats = field(default_factory=MiningStats)


def _mine_file(args) -> _FileResult:
    project_id, root, relpath, project_modules = args
    result = _FileResult()
    result.stats.files_seen = 1
    data = (Path(root) / relpath).read_bytes()
    try:
        text = decode_file(data)
    except EncodingError:
        result.stats.encoding_errors = 1
        return result
    try:
        module = parse_source(text, relpath)
    except SyntaxError:
        result.stats.syntax_errors = 1
        return result
    result.stats.parsed_ok = 1

    table = build_import_table(module, project_modules)
    for unit, seq in extract_file_sequences(module, table):
        result.stats.functions_seen += 1
        if not seq.calls:
            continue
        desc = extract_description(unit).text
        if not desc:  # e.g. a function named "_" yields no words
            continue
        result.stats.functions_with_apiseq += 1
        result.records.append(DescApiPair(
            desc=desc, apiseq=seq, project=project_id, path=relpath,
            qualname=unit.qualname))
    return result


def mine(entries, workers: int = 1):
    """Mine accepted manifest entries into (pairs, stats).

    Pairs come back in canonical order: (project_id, file path, definition
    offset within the file), identical at any worker count.
    """
    tasks = []
    for entry in entries:
        root = Path(entry.local_path)
        if not root.is_dir():
            raise NotADirectoryError(f"project path is not a directory: {root}")
        files = _project_files(root)
        modules = project_module_set(files)
        for relpath in files:
            tasks.append((entry.project_id, str(root), relpath, modules))

    stats = MiningStats()
    records: list[DescApiPair] = []
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_mine_file, tasks, chunksize=8))
    else:
        results = [_mine_file(t) for t in tasks]
    for result in results:
        stats.merge(result.stats)
        records.extend(result.records)

    # stable sort: in-file records are already in def-offset order
    records.sort(key=lambda r: (r.project, r.path))
    return records, stats
