"""Structural parsing of Python source files.

Turns raw file bytes into a :class:`ParsedModule`: the ordered import
statements, the top-level functions and class methods (with their docstrings,
dotted call sites in close-paren order, and nested local functions), which is
everything the downstream description / API-sequence extraction needs.

Files that cannot be decoded raise :class:`EncodingError`; files that are not
valid Python 3 (including Python 2-only syntax) raise ``SyntaxError``.  Callers
count and skip such files.
"""

from __future__ import annotations

import ast
import io
import tokenize
from dataclasses import dataclass, field


class EncodingError(ValueError):
    """Raised when file bytes cannot be decoded to source text."""


@dataclass(frozen=True)
class ImportStmt:
    """One name bound (or not, for wildcards) by an import statement."""

    kind: str  # plain | plain-aliased | from | from-aliased | wildcard
    module_path: str
    bound_name: str  # empty for wildcard imports
    replacement: str  # dotted prefix the bound name expands to
    relative_level: int = 0


@dataclass(frozen=True)
class CallSite:
    """A call whose callee is a dotted identifier chain, e.g. ``x.y.z()``."""

    name_path: tuple[str, ...]
    close_paren_offset: int


@dataclass
class FunctionUnit:
    """A function definition: top-level, class method, or nested local def."""

    qualname: str
    simple_name: str
    docstring: str | None
    call_sites: list[CallSite]
    local_defs: list["FunctionUnit"]
    def_offset: int

    def is_direct_child(self, sub: "FunctionUnit") -> bool:
        """True when ``sub`` is a def lexically directly inside this function
        (not hidden behind a nested class), i.e. a splice candidate."""
        return sub.qualname == f"{self.qualname}.{sub.simple_name}"


@dataclass
class ParsedModule:
    file_path: str
    imports: list[ImportStmt] = field(default_factory=list)
    functions: list[FunctionUnit] = field(default_factory=list)
    byte_length: int = 0


def decode_file(data: bytes) -> str:
    """Decode source bytes, honoring a PEP 263 coding cookie on the first two
    lines (and a UTF-8 BOM); plain UTF-8 otherwise."""
    try:
        encoding, _ = tokenize.detect_encoding(io.BytesIO(data).readline)
    except SyntaxError as exc:  # bad or conflicting coding cookie
        raise EncodingError(str(exc)) from exc
    try:
        return data.decode(encoding)
    except (UnicodeDecodeError, LookupError) as exc:
        raise EncodingError(str(exc)) from exc


def parse_source(text: str, path: str) -> ParsedModule:
    """Parse decoded source text into a :class:`ParsedModule`.

    Raises ``SyntaxError`` for anything the Python 3 grammar rejects.
    """
    tree = ast.parse(text)
    offsets = _line_byte_offsets(text)

    module = ParsedModule(file_path=path, byte_length=len(text.encode("utf-8")))
    module.imports = _collect_imports(tree)
    for stmt in tree.body:
        if isinstance(stmt, (ast.FunctionDef, ast.AsyncFunctionDef)):
            module.functions.append(_build_unit(stmt, "", offsets))
        elif isinstance(stmt, ast.ClassDef):
            module.functions.extend(_class_methods(stmt, "", offsets))
    module.functions.sort(key=lambda u: u.def_offset)
    return module


# ---------------------------------------------------------------------------


def _line_byte_offsets(text: str) -> list[int]:
    offsets = [0]
    for line in text.splitlines(keepends=True):
        offsets.append(offsets[-1] + len(line.encode("utf-8")))
    return offsets


def _byte_offset(offsets: list[int], lineno: int, col: int) -> int:
    # ast column offsets are already utf-8 byte offsets within the line
    return offsets[lineno - 1] + col


def _collect_imports(tree: ast.Module) -> list[ImportStmt]:
    found: list[tuple[int, int, int, ImportStmt]] = []
    for node in ast.walk(tree):
        if isinstance(node, ast.Import):
            for i, alias in enumerate(node.names):
                if alias.asname:
                    stmt = ImportStmt("plain-aliased", alias.name,
                                      alias.asname, alias.name)
                else:
                    head = alias.name.split(".")[0]
                    stmt = ImportStmt("plain", alias.name, head, head)
                found.append((node.lineno, node.col_offset, i, stmt))
        elif isinstance(node, ast.ImportFrom):
            modpath = node.module or ""
            for i, alias in enumerate(node.names):
                if alias.name == "*":
                    stmt = ImportStmt("wildcard", modpath, "", "", node.level)
                else:
                    repl = f"{modpath}.{alias.name}" if modpath else alias.name
                    kind = "from-aliased" if alias.asname else "from"
                    stmt = ImportStmt(kind, modpath, alias.asname or alias.name,
                                      repl, node.level)
                found.append((node.lineno, node.col_offset, i, stmt))
    found.sort(key=lambda item: item[:3])
    return [stmt for _, _, _, stmt in found]


def _class_methods(cls: ast.ClassDef, prefix: str,
                   offsets: list[int]) -> list[FunctionUnit]:
    qual = f"{prefix}{cls.name}."
    units: list[FunctionUnit] = []
    for stmt in cls.body:
        if isinstance(stmt, (ast.FunctionDef, ast.AsyncFunctionDef)):
            units.append(_build_unit(stmt, qual, offsets))
        elif isinstance(stmt, ast.ClassDef):
            units.extend(_class_methods(stmt, qual, offsets))
    return units


def _build_unit(node, prefix: str, offsets: list[int]) -> FunctionUnit:
    qualname = f"{prefix}{node.name}"
    unit = FunctionUnit(
        qualname=qualname,
        simple_name=node.name,
        docstring=ast.get_docstring(node),
        call_sites=[],
        local_defs=[],
        def_offset=_byte_offset(offsets, node.lineno, node.col_offset),
    )
    collector = _BodyCollector(qualname, offsets)
    for stmt in node.body:
        collector.visit(stmt)
    unit.call_sites = sorted(collector.sites,
                             key=lambda s: s.close_paren_offset)
    unit.local_defs = sorted(collector.local_defs,
                             key=lambda u: u.def_offset)
    return unit


class _BodyCollector(ast.NodeVisitor):
    """Walks a function body, collecting dotted call sites and nested defs.

    Does not descend into nested function or class bodies; those become
    local_defs of the enclosing unit.  Decorator expressions are never
    visited (only ``node.body`` is walked).
    """

    def __init__(self, qualname: str, offsets: list[int]):
        self.qualname = qualname
        self.offsets = offsets
        self.sites: list[CallSite] = []
        self.local_defs: list[FunctionUnit] = []

    def visit_FunctionDef(self, node):
        self.local_defs.append(
            _build_unit(node, f"{self.qualname}.", self.offsets))

    visit_AsyncFunctionDef = visit_FunctionDef

    def visit_ClassDef(self, node):
        self.local_defs.extend(
            _class_methods(node, f"{self.qualname}.", self.offsets))

    def visit_Call(self, node):
        path = _dotted_name_path(node.func)
        if path is not None:
            close = _byte_offset(self.offsets, node.end_lineno,
                                 node.end_col_offset) - 1
            self.sites.append(CallSite(tuple(path), close))
        self.generic_visit(node)


def _dotted_name_path(func: ast.expr) -> list[str] | None:
    parts: list[str] = []
    node = func
    while isinstance(node, ast.Attribute):
        parts.append(node.attr)
        node = node.value
    if isinstance(node, ast.Name):
        parts.append(node.id)
        parts.reverse()
        return parts
    return None
