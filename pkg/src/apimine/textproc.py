"""Tokenization for descriptions and API sequences.

Description tokens are lowercased runs of alphanumerics; they are the only
tokens that get stemmed.  An API call ``os.path.join`` tokenizes to
``os . path . join``; consecutive calls concatenate with no extra delimiter
(call boundaries are where two identifiers are adjacent).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .apicalls import ApiSequence
from .porter import stem

__all__ = ["TokenStream", "SpecialTokens", "SPECIAL_TOKENS", "stem",
           "tokenize_desc", "tokenize_apiseq", "stem_tokens"]

_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)

DOT = "."


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[str, ...]
    kind: str  # "desc" | "apiseq"


@dataclass(frozen=True)
class SpecialTokens:
    pad: str = "<pad>"
    bos: str = "<s>"
    eos: str = "</s>"
    unk: str = "<unk>"

    def as_tuple(self) -> tuple[str, str, str, str]:
        return (self.pad, self.bos, self.eos, self.unk)


SPECIAL_TOKENS = SpecialTokens()


def tokenize_desc(text: str) -> TokenStream:
    """Lowercase and split on any non-alphanumeric character."""
    return TokenStream(tuple(_WORD_RE.findall(text.lower())), "desc")


def stem_tokens(tokens) -> tuple[str, ...]:
    return tuple(stem(t) for t in tokens)


def tokenize_apiseq(seq: ApiSequence) -> TokenStream:
    tokens: list[str] = []
    for call in seq.calls:
        parts = call.full_path.split(DOT)
        for i, part in enumerate(parts):
            if i:
                tokens.append(DOT)
            tokens.append(part)
    return TokenStream(tuple(tokens), "apiseq")
