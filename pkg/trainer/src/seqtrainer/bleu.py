"""Sentence-level BLEU-4 with add-one smoothing.

Kept self-contained so the trainer has no dependency on the dataset tooling;
the definition (clipped n-gram precisions up to 4, add-one smoothing for
higher orders with zero clipped counts, brevity penalty) is the same one the
evaluation side of the toolchain uses, and the test suite checks the two
agree to within 1e-9.
"""

from __future__ import annotations

import math
from collections import Counter


def bleu4(hyp: list[str], ref: list[str]) -> float:
    if not ref:
        raise ValueError("reference token stream is empty")
    if not hyp:
        return 0.0

    log_sum = 0.0
    for n in range(1, 5):
        total = len(hyp) - n + 1
        if total <= 0:
            continue
        hyp_counts = Counter(tuple(hyp[i:i + n]) for i in range(total))
        ref_counts = Counter(tuple(ref[i:i + n])
                             for i in range(len(ref) - n + 1))
        clipped = sum(min(c, ref_counts[g]) for g, c in hyp_counts.items())
        if clipped == 0:
            if n == 1:
                return 0.0
            precision = 1.0 / (total + 1)
        else:
            precision = clipped / total
        log_sum += math.log(precision) / 4.0

    brevity = 1.0 if len(hyp) >= len(ref) else math.exp(1 - len(ref) / len(hyp))
    return brevity * math.exp(log_sum)
