"""Loading of line-aligned token files and vocabulary files.

The dataset format is plain text: one whitespace-separated token sequence per
line, with the description file and the API-sequence file aligned line by
line. Vocabulary files list one token per line, the four special tokens
first, then regular tokens.
"""

from __future__ import annotations

from pathlib import Path

PAD, BOS, EOS, UNK = "<pad>", "<s>", "</s>", "<unk>"
SPECIALS = (PAD, BOS, EOS, UNK)


class VocabularyOverflow(ValueError):
    """Raised when a dataset token is not covered by the vocabulary files."""


class Vocabulary:
    """Token-to-id mapping with the special tokens at ids 0..3."""

    def __init__(self, tokens: list[str]):
        if tuple(tokens[:4]) != SPECIALS:
            raise ValueError("vocabulary must start with "
                             + " ".join(SPECIALS))
        if len(set(tokens)) != len(tokens):
            raise ValueError("vocabulary contains duplicate tokens")
        self.tokens = list(tokens)
        self.ids = {tok: i for i, tok in enumerate(tokens)}

    def __len__(self) -> int:
        return len(self.tokens)

    def encode(self, token: str) -> int:
        try:
            return self.ids[token]
        except KeyError:
            raise VocabularyOverflow(f"token {token!r} is not in the "
                                     "vocabulary") from None

    def encode_lossy(self, token: str) -> int:
        """Map unknown tokens to <unk> (query-time inputs only)."""
        return self.ids.get(token, self.ids[UNK])


def load_vocab(path: str | Path) -> Vocabulary:
    with open(path, encoding="utf-8") as fh:
        return Vocabulary([line.rstrip("\n") for line in fh if line != "\n"])


def load_parallel(desc_path: str | Path,
                  apiseq_path: str | Path) -> list[tuple[list[str], list[str]]]:
    """Read aligned (desc tokens, apiseq tokens) pairs."""
    with open(desc_path, encoding="utf-8") as fh:
        descs = [line.split() for line in fh]
    with open(apiseq_path, encoding="utf-8") as fh:
        apis = [line.split() for line in fh]
    if len(descs) != len(apis):
        raise ValueError(f"{desc_path} has {len(descs)} lines but "
                         f"{apiseq_path} has {len(apis)}")
    return list(zip(descs, apis))


def encode_pairs(pairs, src_vocab: Vocabulary, tgt_vocab: Vocabulary,
                 max_target_tokens: int) -> list[tuple[list[int], list[int]]]:
    """Encode token pairs to id pairs.

    Targets are truncated to ``max_target_tokens`` tokens and terminated with
    the end-of-sequence id; any out-of-vocabulary token raises
    VocabularyOverflow.
    """
    eos = tgt_vocab.ids[EOS]
    encoded = []
    for desc, api in pairs:
        src = [src_vocab.encode(t) for t in desc]
        tgt = [tgt_vocab.encode(t) for t in api[:max_target_tokens]] + [eos]
        encoded.append((src, tgt))
    return encoded
