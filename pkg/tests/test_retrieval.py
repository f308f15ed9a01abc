import math
import random

import pytest

from conftest import make_pair
from apimine.pipeline import EmptyDataset
from apimine.retrieval import (build_index, load_index, query, save_index)
from apimine.textproc import stem_tokens, tokenize_desc


def brute_force_ranking(pairs, text, k):
    """Exhaustive tf-idf cosine ranking, built independently of the index."""
    docs = [stem_tokens(tokenize_desc(p.desc).tokens) for p in pairs]
    qterms = stem_tokens(tokenize_desc(text).tokens)
    vocab = sorted({t for d in docs for t in d})
    n = len(docs)
    idf = {t: math.log((1 + n) / (1 + sum(t in d for d in docs))) + 1
           for t in vocab}

    def vec(terms):
        v = {}
        for t in terms:
            if t in idf:
                v[t] = v.get(t, 0) + 1
        v = {t: c * idf[t] for t, c in v.items()}
        norm = math.sqrt(sum(w * w for w in v.values()))
        return {t: w / norm for t, w in v.items()} if norm else {}

    qv = vec(qterms)
    sims = []
    for i, d in enumerate(docs):
        dv = vec(d)
        sims.append((sum(qv.get(t, 0) * w for t, w in dv.items()), i))
    sims.sort(key=lambda s: (-s[0], s[1]))
    return [(i, s) for s, i in sims[:k]]


class TestBuildIndex:
    def test_single_pair(self):
        index = build_index([make_pair("copy a file", ["shutil.copy"])])
        assert len(index.pairs) == 1
        assert index.vocabulary

    def test_empty_raises(self):
        with pytest.raises(EmptyDataset):
            build_index([])

    def test_duplicate_descs_both_indexed(self):
        pairs = [make_pair("copy a file", ["shutil.copy"]),
                 make_pair("copy a file", ["shutil.copyfile"])]
        assert len(build_index(pairs).doc_vectors) == 2

    def test_unit_norm_vectors(self):
        pairs = [make_pair(f"words number {i} here", ["m.f"]) for i in range(9)]
        for vec in build_index(pairs).doc_vectors:
            assert sum(w * w for w in vec.values()) == pytest.approx(1.0)


class TestQuery:
    def test_exact_desc_ranks_first_with_similarity_one(self):
        pairs = [make_pair("copy a file", ["shutil.copy"]),
                 make_pair("read the config", ["json.load"]),
                 make_pair("walk directory tree", ["os.walk"])]
        index = build_index(pairs)
        (top, sim), *_ = query(index, "copy a file", 3)
        assert top == pairs[0]
        assert sim == pytest.approx(1.0)

    def test_unknown_terms_give_zero_similarities(self):
        index = build_index([make_pair("copy a file", ["shutil.copy"])])
        results = query(index, "zzz qqq", 1)
        assert results == [(index.pairs[0], 0.0)]

    def test_matches_brute_force_on_random_corpus(self):
        rng = random.Random(42)
        words = "copy read write file json table merge sort index value".split()
        pairs = [make_pair(" ".join(rng.choices(words, k=rng.randint(2, 6))),
                           [f"m.f{i}"]) for i in range(200)]
        index = build_index(pairs)
        for q in ("copy file", "merge the table value", "sort index"):
            got = [(index.pairs.index(p), s) for p, s in query(index, q, 10)]
            expected = brute_force_ranking(pairs, q, 10)
            assert [g[0] for g in got] == [e[0] for e in expected]
            for (_, gs), (_, es) in zip(got, expected):
                assert gs == pytest.approx(es, abs=1e-12)

    def test_scale_invariance(self):
        pairs = [make_pair("copy a file now", ["a.b"]),
                 make_pair("read config table", ["c.d"])]
        doubled = [make_pair(f"{p.desc} {p.desc}", p.apiseq.paths())
                   for p in pairs]
        r1 = [p.desc for p, _ in query(build_index(pairs), "copy file", 2)]
        r2 = [p.desc for p, _ in query(build_index(doubled), "copy file", 2)]
        assert [d.split()[0] for d in r1] == [d.split()[0] for d in r2]

    def test_deterministic(self):
        pairs = [make_pair(f"doc {i} word", ["m.f"]) for i in range(30)]
        index = build_index(pairs)
        assert query(index, "word doc", 5) == query(index, "word doc", 5)

    def test_k_larger_than_index(self):
        index = build_index([make_pair("only one doc", ["m.f"])])
        assert len(query(index, "one", 10)) == 1


class TestPersistence:
    def test_round_trip(self, tmp_path):
        pairs = [make_pair(f"desc {i} here", [f"m.f{i}"]) for i in range(20)]
        index = build_index(pairs)
        path = tmp_path / "index.json"
        save_index(index, path)
        loaded = load_index(path)
        assert loaded.pairs == index.pairs
        assert query(loaded, "desc here", 5) == query(index, "desc here", 5)

    def test_rejects_foreign_file(self, tmp_path):
        path = tmp_path / "not_index.json"
        path.write_text('{"something": "else"}')
        with pytest.raises(ValueError):
            load_index(path)
