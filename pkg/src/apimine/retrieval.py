"""TF-IDF nearest-neighbor baseline over training descriptions.

Documents are the stemmed description tokens of the training pairs;
idf = log((1+N)/(1+df)) + 1 and document vectors are L2-normalized, so cosine
similarity is a sparse dot product.  Ties rank by ascending pair index.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .apicalls import ApiCall, ApiSequence
from .pipeline import DescApiPair, EmptyDataset
from .textproc import stem_tokens, tokenize_desc

INDEX_FORMAT = "apimine-tfidf-index"
INDEX_VERSION = 1


@dataclass
class RetrievalIndex:
    vocabulary: dict[str, int]
    idf: list[float]
    postings: dict[int, list[int]]  # term index -> sorted doc indexes
    doc_vectors: list[dict[int, float]]  # unit-norm sparse tf-idf vectors
    pairs: list[DescApiPair]


def _doc_terms(desc: str) -> tuple[str, ...]:
    return stem_tokens(tokenize_desc(desc).tokens)


def _tfidf_vector(terms, vocabulary, idf) -> dict[int, float]:
    tf: dict[int, int] = {}
    for term in terms:
        ti = vocabulary.get(term)
        if ti is not None:
            tf[ti] = tf.get(ti, 0) + 1
    vec = {ti: count * idf[ti] for ti, count in tf.items()}
    norm = math.sqrt(sum(w * w for w in vec.values()))
    if norm > 0:
        vec = {ti: w / norm for ti, w in vec.items()}
    return vec


def build_index(train_pairs) -> RetrievalIndex:
    pairs = list(train_pairs)
    if not pairs:
        raise EmptyDataset("cannot index an empty training set")

    docs = [_doc_terms(p.desc) for p in pairs]
    vocabulary: dict[str, int] = {}
    df: list[int] = []
    for terms in docs:
        for term in sorted(set(terms)):
            if term not in vocabulary:
                vocabulary[term] = len(vocabulary)
                df.append(0)
            df[vocabulary[term]] += 1

    n_docs = len(docs)
    idf = [math.log((1 + n_docs) / (1 + d)) + 1.0 for d in df]

    postings: dict[int, list[int]] = {}
    vectors = []
    for doc_i, terms in enumerate(docs):
        vec = _tfidf_vector(terms, vocabulary, idf)
        vectors.append(vec)
        for ti in vec:
            postings.setdefault(ti, []).append(doc_i)
    return RetrievalIndex(vocabulary=vocabulary, idf=idf, postings=postings,
                          doc_vectors=vectors, pairs=pairs)


def query(index: RetrievalIndex, text: str, k: int):
    """Top-k (pair, cosine similarity), ranked by descending similarity then
    ascending pair index.  All-unknown-term queries return zeros in order."""
    if k < 1:
        raise ValueError("k must be >= 1")
    qvec = _tfidf_vector(_doc_terms(text), index.vocabulary, index.idf)
    scores: dict[int, float] = {}
    for ti, qw in qvec.items():
        for doc_i in index.postings.get(ti, ()):
            scores[doc_i] = scores.get(doc_i, 0.0) + qw * index.doc_vectors[doc_i][ti]
    ranked = sorted(scores, key=lambda d: (-scores[d], d))[:k]
    results = [(index.pairs[d], scores[d]) for d in ranked]
    if len(results) < k:  # pad with zero-similarity pairs in index order
        chosen = set(ranked)
        for doc_i in range(len(index.pairs)):
            if len(results) >= k:
                break
            if doc_i not in chosen:
                results.append((index.pairs[doc_i], 0.0))
    return results


def save_index(index: RetrievalIndex, path) -> None:
    payload = {
        "format": INDEX_FORMAT,
        "version": INDEX_VERSION,
        "pairs": [
            {"desc": p.desc, "apiseq": list(p.apiseq.paths()),
             "project": p.project, "path": p.path, "qualname": p.qualname}
            for p in index.pairs
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False)
        fh.write("\n")


def load_index(path) -> RetrievalIndex:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != INDEX_FORMAT:
        raise ValueError(f"not an {INDEX_FORMAT} file: {path}")
    if payload.get("version") != INDEX_VERSION:
        raise ValueError(f"unsupported index version: {payload.get('version')}")
    pairs = [
        DescApiPair(desc=rec["desc"],
                    apiseq=ApiSequence(tuple(ApiCall(c) for c in rec["apiseq"])),
                    project=rec.get("project", ""), path=rec.get("path", ""),
                    qualname=rec.get("qualname", ""))
        for rec in payload["pairs"]
    ]
    # index structures are derived data; rebuilding them is deterministic
    return build_index(pairs)
