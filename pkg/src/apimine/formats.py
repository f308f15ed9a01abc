"""File formats: JSONL pair records, aligned parallel text, config files.

JSONL rows carry the fields desc, apiseq, project, path, qualname in that
order, UTF-8, one record per line.  The aligned-text export is a pair of
line-aligned desc and apiseq token files (LF endings, single-space
separators) plus vocabulary files with the special tokens first.
"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path

from .apicalls import ApiCall, ApiSequence
from .pipeline import DatasetBundle, DescApiPair, PipelineConfig
from .textproc import SPECIAL_TOKENS, stem_tokens, tokenize_apiseq, tokenize_desc

APISEQ_VOCAB_CAP = 10_000


def pair_to_json(pair: DescApiPair) -> str:
    return json.dumps({
        "desc": pair.desc,
        "apiseq": list(pair.apiseq.paths()),
        "project": pair.project,
        "path": pair.path,
        "qualname": pair.qualname,
    }, ensure_ascii=False)


def pair_from_json(line: str) -> DescApiPair:
    rec = json.loads(line)
    calls = tuple(ApiCall(str(c)) for c in rec["apiseq"])
    return DescApiPair(desc=rec["desc"], apiseq=ApiSequence(calls),
                       project=rec.get("project", ""),
                       path=rec.get("path", ""),
                       qualname=rec.get("qualname", ""))


def write_pairs(pairs, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for pair in pairs:
            fh.write(pair_to_json(pair))
            fh.write("\n")


def read_pairs(path) -> list[DescApiPair]:
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                pairs.append(pair_from_json(line))
    return pairs


def desc_line(pair: DescApiPair) -> str:
    return " ".join(stem_tokens(tokenize_desc(pair.desc).tokens))


def apiseq_line(pair: DescApiPair) -> str:
    return " ".join(tokenize_apiseq(pair.apiseq).tokens)


def _write_lines(path, lines) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def _vocab_lines(counter: Counter, cap: int | None = None) -> list[str]:
    specials = list(SPECIAL_TOKENS.as_tuple())
    ordered = sorted(counter, key=lambda t: (-counter[t], t))
    lines = specials + [t for t in ordered if t not in specials]
    return lines[:cap] if cap else lines


def export_aligned_text(bundle: DatasetBundle, out_dir) -> dict[str, str]:
    """Write line-aligned desc/apiseq files per split plus vocabulary files.

    Returns the mapping of logical names to file paths.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: dict[str, str] = {}
    desc_counts: Counter = Counter()
    api_counts: Counter = Counter()

    for split_name, pairs in (("train", bundle.train), ("test", bundle.test)):
        desc_lines = [desc_line(p) for p in pairs]
        api_lines = [apiseq_line(p) for p in pairs]
        for line in desc_lines:
            desc_counts.update(line.split())
        for line in api_lines:
            api_counts.update(line.split())
        dpath = out / f"{split_name}.desc.txt"
        apath = out / f"{split_name}.apiseq.txt"
        _write_lines(dpath, desc_lines)
        _write_lines(apath, api_lines)
        written[f"{split_name}.desc"] = str(dpath)
        written[f"{split_name}.apiseq"] = str(apath)

    dvocab = out / "vocab.desc.txt"
    avocab = out / "vocab.apiseq.txt"
    _write_lines(dvocab, _vocab_lines(desc_counts))
    _write_lines(avocab, _vocab_lines(api_counts, cap=APISEQ_VOCAB_CAP))
    written["vocab.desc"] = str(dvocab)
    written["vocab.apiseq"] = str(avocab)
    return written


CONFIG_KEYS = {
    "max_calls": int,
    "vocab_identifier_budget": int,
    "min_desc_words": int,
    "test_fraction": float,
    "split_seed": int,
    "test_word_filter": str,
    "test_word_substring": lambda v: v.lower() in ("1", "true", "yes"),
}


def load_config(path) -> PipelineConfig:
    """Parse a ``key = value`` config file; unknown keys are rejected."""
    values: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = CONFIG_KEYS[key](value.strip())
    return PipelineConfig(**values)


def stats_report(stage_stats) -> str:
    lines = ["stage                 in        out"]
    for name, n_in, n_out in stage_stats:
        lines.append(f"{name:<18} {n_in:>9} {n_out:>10}")
    return "\n".join(lines)
