"""Import binding resolution and API-sequence extraction.

An import statement binds an in-scope name to a dotted module prefix unless it
is relative, wildcard, or resolves to a module inside the project's own source
tree.  A call site whose head identifier is bound becomes an API call with the
prefix substituted; a call to an earlier-defined top-level or local function is
replaced by that function's already-extracted sequence (inlining).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .pysrc import FunctionUnit, ParsedModule

SOURCE_SUFFIX = ".py"


@dataclass(frozen=True)
class ApiCall:
    full_path: str  # e.g. "os.path.join"


@dataclass(frozen=True)
class ApiSequence:
    calls: tuple[ApiCall, ...] = ()

    def paths(self) -> tuple[str, ...]:
        return tuple(c.full_path for c in self.calls)


@dataclass
class ImportTable:
    bindings: dict[str, str] = field(default_factory=dict)


def project_module_set(py_files: Iterable[str]) -> frozenset[str]:
    """Dotted module paths importable from a project's own tree.

    ``a/b.py`` and ``a/b/__init__.py`` both yield ``a.b``; paths are
    project-root-relative with ``/`` separators.
    """
    modules = set()
    for rel in py_files:
        if not rel.endswith(SOURCE_SUFFIX):
            continue
        parts = rel[:-len(SOURCE_SUFFIX)].split("/")
        if parts[-1] == "__init__":
            parts = parts[:-1]
        if parts and all(p.isidentifier() for p in parts):
            modules.add(".".join(parts))
    return frozenset(modules)


def _dir_prefix(file_path: str) -> str:
    """Dotted prefix of the directory containing a project-relative file."""
    parts = file_path.split("/")[:-1]
    return ".".join(parts)


def _is_internal(module_path: str, prefix: str,
                 project_modules: frozenset[str]) -> bool:
    if module_path in project_modules:
        return True
    # also resolvable relative to the importing file's directory
    return bool(prefix) and f"{prefix}.{module_path}" in project_modules


def build_import_table(module: ParsedModule,
                       project_modules: frozenset[str]) -> ImportTable:
    """File-scoped name bindings from the accepted imports, in source order;
    later bindings of a name shadow earlier ones."""
    prefix = _dir_prefix(module.file_path)
    table = ImportTable()
    for stmt in module.imports:
        if stmt.relative_level >= 1 or stmt.kind == "wildcard":
            continue
        candidates = [stmt.module_path]
        if stmt.kind in ("from", "from-aliased"):
            candidates.append(stmt.replacement)
        if any(_is_internal(c, prefix, project_modules) for c in candidates if c):
            continue
        if stmt.bound_name and stmt.replacement:
            table.bindings[stmt.bound_name] = stmt.replacement
    return table


def extract_apiseq(unit: FunctionUnit, table: ImportTable,
                   earlier: Mapping[str, ApiSequence]) -> ApiSequence:
    """API sequence of one function, in close-paren order.

    ``earlier`` maps the simple names of top-level functions defined before
    ``unit`` in the same file to their extracted sequences.  Local functions
    are extracted here and spliced only at call sites after their def.
    """
    local_seqs: dict[str, tuple[int, ApiSequence]] = {}
    combined = dict(earlier)
    for sub in unit.local_defs:
        if not unit.is_direct_child(sub):
            continue
        sub_seq = extract_apiseq(sub, table, combined)
        local_seqs[sub.simple_name] = (sub.def_offset, sub_seq)
        combined[sub.simple_name] = sub_seq

    calls: list[ApiCall] = []
    for site in unit.call_sites:
        head = site.name_path[0]
        if len(site.name_path) == 1:
            if head in local_seqs:
                def_offset, seq = local_seqs[head]
                if def_offset < site.close_paren_offset:
                    calls.extend(seq.calls)
                    continue
            elif head in earlier:
                calls.extend(earlier[head].calls)
                continue
        if head in table.bindings:
            full = ".".join((table.bindings[head],) + tuple(site.name_path[1:]))
            if full.count(".") >= 1:  # need a module prefix plus a member
                calls.append(ApiCall(full))
    return ApiSequence(tuple(calls))


def extract_file_sequences(module: ParsedModule, table: ImportTable,
                           ) -> list[tuple[FunctionUnit, ApiSequence]]:
    """Extract every top-level function and class method of a file, feeding
    each earlier top-level function's sequence to later ones."""
    earlier: dict[str, ApiSequence] = {}
    out = []
    for unit in module.functions:
        seq = extract_apiseq(unit, table, earlier)
        if "." not in unit.qualname:  # methods are not splice candidates
            earlier[unit.simple_name] = seq
        out.append((unit, seq))
    return out
