"""BLEU-4 scoring and cross-corpus overlap analysis.

``sentence_bleu4`` is the geometric mean of clipped 1..4-gram precisions times
a brevity penalty, with add-one smoothing applied to higher-order precisions
whose clipped count is zero (so short but correct sequences do not score 0).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

SMOOTHING_LABEL = "add-one"


class EmptyReference(ValueError):
    """Raised when a reference token stream is empty."""


@dataclass(frozen=True)
class BleuReport:
    per_k: dict[int, float]
    n_pairs: int
    smoothing: str = SMOOTHING_LABEL


@dataclass(frozen=True)
class OverlapReport:
    matched_desc: int
    matched_apiseq: int
    matched_pairs: int


def _tokens(stream) -> tuple[str, ...]:
    return tuple(getattr(stream, "tokens", stream))


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def sentence_bleu4(hyp, ref) -> float:
    """BLEU-4 of one hypothesis against one reference, in [0, 1]."""
    hyp = _tokens(hyp)
    ref = _tokens(ref)
    if not ref:
        raise EmptyReference("reference token stream is empty")
    if not hyp:
        return 0.0

    log_sum = 0.0
    for n in range(1, 5):
        total = len(hyp) - n + 1
        if total <= 0:
            continue  # no n-grams of this order; contributes precision 1
        clipped = sum((_ngram_counts(hyp, n) & _ngram_counts(ref, n)).values())
        if clipped == 0:
            if n == 1:
                return 0.0
            precision = 1.0 / (total + 1)
        else:
            precision = clipped / total
        log_sum += 0.25 * math.log(precision)

    bp = 1.0 if len(hyp) >= len(ref) else math.exp(1.0 - len(ref) / len(hyp))
    return bp * math.exp(log_sum)


def topk_bleu(candidates, refs, ks: Sequence[int] = (1, 5, 10)) -> BleuReport:
    """Mean over queries of the best sentence BLEU among the first k ranked
    candidates, for each k."""
    if len(candidates) != len(refs):
        raise ValueError("candidates and references are not aligned")
    per_k: dict[int, float] = {}
    for k in ks:
        if k < 1:
            raise ValueError("k must be >= 1")
        total = 0.0
        for cand_list, ref in zip(candidates, refs):
            if not cand_list:
                raise ValueError("every query needs at least one candidate")
            total += max(sentence_bleu4(c, ref) for c in cand_list[:k])
        per_k[k] = total / len(refs) if refs else 0.0
    return BleuReport(per_k=per_k, n_pairs=len(refs))


def corpus_bleu4(hyps, refs) -> float:
    """Corpus-level BLEU-4 (pooled n-gram counts), for comparison only."""
    if len(hyps) != len(refs):
        raise ValueError("hypotheses and references are not aligned")
    hyps = [_tokens(h) for h in hyps]
    refs = [_tokens(r) for r in refs]
    if any(not r for r in refs):
        raise EmptyReference("reference token stream is empty")
    hyp_len = sum(len(h) for h in hyps)
    ref_len = sum(len(r) for r in refs)
    if hyp_len == 0:
        return 0.0
    log_sum = 0.0
    for n in range(1, 5):
        clipped = 0
        total = 0
        for hyp, ref in zip(hyps, refs):
            counts = _ngram_counts(hyp, n)
            clipped += sum((counts & _ngram_counts(ref, n)).values())
            total += max(len(hyp) - n + 1, 0)
        if total == 0:
            continue
        if clipped == 0:
            if n == 1:
                return 0.0
            precision = 1.0 / (total + 1)
        else:
            precision = clipped / total
        log_sum += 0.25 * math.log(precision)
    bp = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return bp * math.exp(log_sum)


def is_subsequence(needle: Sequence[str], hay: Sequence[str]) -> bool:
    """Greedy ordered (not necessarily contiguous) subsequence check."""
    it = iter(hay)
    return all(any(tok == h for h in it) for tok in needle)


def overlap_report(test_pairs, corpus_entries) -> OverlapReport:
    """Overlap of test (desc tokens, apiseq tokens) pairs with a corpus of
    (doc tokens, code tokens) entries.

    A desc matches on exact token equality with some doc; an apiseq matches
    when its tokens are an ordered subsequence of some code stream; a pair
    matches when a single corpus entry matches both sides.
    """
    corpus = [(tuple(_tokens(d)), tuple(_tokens(c))) for d, c in corpus_entries]
    docs = {d for d, _ in corpus}

    matched_desc = matched_apiseq = matched_pairs = 0
    for desc_tokens, api_tokens in test_pairs:
        desc_tokens = tuple(_tokens(desc_tokens))
        api_tokens = tuple(_tokens(api_tokens))
        desc_hit = desc_tokens in docs
        api_hit = False
        pair_hit = False
        for doc, code in corpus:
            if is_subsequence(api_tokens, code):
                api_hit = True
                if doc == desc_tokens:
                    pair_hit = True
                    break
        matched_desc += desc_hit
        matched_apiseq += api_hit
        matched_pairs += pair_hit
    return OverlapReport(matched_desc, matched_apiseq, matched_pairs)
