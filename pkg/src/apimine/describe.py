"""Natural-language description of a function.

The description is built from the docstring when one exists: the "primary"
block (leading lines up to a blank line or a param/return marker) joined with
the "returns" block (the block whose first line starts with return/returns,
normalized to start with the word ``return``).  Without a usable docstring the
function name is split into words instead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .pysrc import FunctionUnit

_STOP_WORDS = {"param", "params", "parameter", "parameters", "return", "returns"}
_PARAM_WORDS = {"param", "params", "parameter", "parameters"}
_RETURN_WORDS = {"return", "returns"}


@dataclass(frozen=True)
class Description:
    text: str
    source_kind: str  # "docstring" | "name"


def _first_word(line: str) -> str:
    """First whitespace-delimited word of a line, with decorating colons
    (any number of leading/trailing ':') stripped, lowercased."""
    stripped = line.strip()
    if not stripped:
        return ""
    word = stripped.split()[0]
    return word.strip(":").lower()


def _strip_decorating_colons(line: str) -> str:
    stripped = line.strip()
    parts = stripped.split(None, 1)
    head = parts[0].strip(":")
    rest = parts[1] if len(parts) > 1 else ""
    return f"{head} {rest}".strip() if head or rest else ""


def primary_description(docstring: str) -> str:
    """Leading docstring lines until a blank line or a param/return marker."""
    kept: list[str] = []
    for line in docstring.splitlines():
        if not line.strip():
            break
        if _first_word(line) in _STOP_WORDS:
            break
        kept.append(line.strip())
    return " ".join(kept)


def returns_description(docstring: str) -> str:
    """The block whose first line begins with return/returns, until a blank
    line or a param-marker line; leading word normalized to ``return``."""
    lines = docstring.splitlines()
    start = None
    for i, line in enumerate(lines):
        if _first_word(line) in _RETURN_WORDS:
            start = i
            break
    if start is None:
        return ""
    kept: list[str] = []
    for line in lines[start:]:
        if not line.strip():
            break
        if kept and _first_word(line) in _PARAM_WORDS:
            break
        kept.append(line)
    if not kept:
        return ""
    first = _strip_decorating_colons(kept[0])
    first_words = first.split()
    first_words[0] = "return"
    parts = [" ".join(first_words)]
    parts.extend(line.strip() for line in kept[1:])
    return " ".join(p for p in parts if p)


def split_name(name: str) -> str:
    """Turn an identifier into words: underscores become spaces, a space is
    inserted before each uppercase letter, which is then lowercased."""
    text = name.replace("_", " ")
    text = re.sub(r"([A-Z])", lambda m: " " + m.group(1).lower(), text)
    return " ".join(text.split())


def _normalize_ws(text: str) -> str:
    return " ".join(text.split())


def extract_description(unit: FunctionUnit) -> Description:
    if unit.docstring:
        primary = _normalize_ws(primary_description(unit.docstring))
        returns = _normalize_ws(returns_description(unit.docstring))
        if primary and returns:
            return Description(f"{primary} {returns}", "docstring")
        if primary or returns:
            return Description(primary or returns, "docstring")
    return Description(split_name(unit.simple_name), "name")
