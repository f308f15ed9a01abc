"""Five-stage filtering, deduplication and train/test splitting.

Stage order: length filter -> vocabulary cap -> exact dedup -> short-desc
filter -> "test"-word filter -> hash split.  Every stage records its
input/output counts.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field

from .apicalls import ApiSequence
from .describe import split_name
from .textproc import tokenize_desc


class EmptyDataset(ValueError):
    """Raised when no pairs survive the pipeline."""


@dataclass(frozen=True)
class DescApiPair:
    desc: str
    apiseq: ApiSequence
    project: str = ""
    path: str = ""
    qualname: str = ""

    def key(self) -> tuple[str, tuple[str, ...]]:
        """Exact-duplicate key: description text plus dotted call list."""
        return (self.desc, self.apiseq.paths())


@dataclass(frozen=True)
class PipelineConfig:
    max_calls: int = 14
    vocab_identifier_budget: int = 9995
    min_desc_words: int = 3
    test_fraction: float = 0.04
    split_seed: int = 0
    test_word_filter: str = "test"
    test_word_substring: bool = False  # substring instead of whole-token match

    def __post_init__(self):
        if not 0 < self.test_fraction < 1:
            raise ValueError("test_fraction must be in (0, 1)")
        if self.vocab_identifier_budget < 1:
            raise ValueError("vocab budget must be >= 1")


@dataclass
class DatasetBundle:
    train: list[DescApiPair]
    test: list[DescApiPair]
    accepted_modules: list[str]
    stage_stats: list[tuple[str, int, int]] = field(default_factory=list)


def call_module(full_path: str) -> str:
    """The top-level module an API call is attributed to."""
    return full_path.split(".", 1)[0]


def filter_length(pairs, max_calls: int):
    return [p for p in pairs if len(p.apiseq.calls) <= max_calls]


def cap_vocabulary(pairs, budget: int):
    """Greedy module acceptance by call-count popularity under a running
    distinct-identifier budget; drops pairs calling unaccepted modules."""
    popularity: Counter[str] = Counter()
    identifiers: dict[str, set[str]] = {}
    for pair in pairs:
        for call in pair.apiseq.calls:
            mod = call_module(call.full_path)
            popularity[mod] += 1
            identifiers.setdefault(mod, set()).update(call.full_path.split("."))

    accepted: list[str] = []
    seen: set[str] = set()
    for mod in sorted(popularity, key=lambda m: (-popularity[m], m)):
        union = seen | identifiers[mod]
        if len(union) <= budget:
            accepted.append(mod)
            seen = union
    accepted_set = set(accepted)
    kept = [p for p in pairs
            if all(call_module(c.full_path) in accepted_set
                   for c in p.apiseq.calls)]
    return accepted, kept


def deduplicate(pairs):
    seen: set = set()
    kept = []
    for pair in pairs:
        key = pair.key()
        if key not in seen:
            seen.add(key)
            kept.append(pair)
    return kept


def filter_desc(pairs, min_words: int):
    return [p for p in pairs if len(p.desc.split()) >= min_words]


def _name_tokens(qualname: str) -> set[str]:
    words = set()
    for part in qualname.split("."):
        words.update(split_name(part).split())
    return words


def filter_test_word(pairs, word: str, substring: bool = False):
    """Drop pairs mentioning ``word`` in the function name or description."""
    word = word.lower()
    kept = []
    for pair in pairs:
        if substring:
            hit = word in pair.qualname.lower() or word in pair.desc.lower()
        else:
            hit = (word in _name_tokens(pair.qualname)
                   or word in tokenize_desc(pair.desc).tokens)
        if not hit:
            kept.append(pair)
    return kept


def _key_fraction(key, seed: int) -> float:
    desc, calls = key
    payload = "\x00".join([str(seed), desc, "\x1f".join(calls)])
    digest = hashlib.sha256(payload.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") / 2 ** 64


def split(pairs, test_fraction: float, seed: int):
    """Deterministic split by seeded hash of the dedup key; test pairs whose
    key also occurs in train are removed."""
    train, test = [], []
    for pair in pairs:
        if _key_fraction(pair.key(), seed) < test_fraction:
            test.append(pair)
        else:
            train.append(pair)
    train_keys = {p.key() for p in train}
    test = [p for p in test if p.key() not in train_keys]
    return train, test


def run_pipeline(raw_pairs, config: PipelineConfig) -> DatasetBundle:
    stats: list[tuple[str, int, int]] = []

    def record(name, before, after):
        stats.append((name, len(before), len(after)))
        return after

    pairs = list(raw_pairs)
    pairs = record("filter_length", pairs,
                   filter_length(pairs, config.max_calls))
    accepted, capped = cap_vocabulary(pairs, config.vocab_identifier_budget)
    pairs = record("cap_vocabulary", pairs, capped)
    pairs = record("deduplicate", pairs, deduplicate(pairs))
    pairs = record("filter_desc", pairs,
                   filter_desc(pairs, config.min_desc_words))
    pairs = record("filter_test_word", pairs,
                   filter_test_word(pairs, config.test_word_filter,
                                    config.test_word_substring))
    if not pairs:
        raise EmptyDataset("no pairs survived the filtering stages")
    train, test = split(pairs, config.test_fraction, config.split_seed)
    stats.append(("split_train", len(pairs), len(train)))
    stats.append(("split_test", len(pairs), len(test)))
    return DatasetBundle(train=train, test=test, accepted_modules=accepted,
                         stage_stats=stats)
