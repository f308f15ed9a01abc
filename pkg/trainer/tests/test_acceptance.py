"""Acceptance suite for the trainer, one printed pass/fail line per check.

Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import random
import time

import pytest

from apimine.evaluation import sentence_bleu4
from conftest import SMALL_CONFIG, toy_pairs, write_corpus
from seqtrainer.bleu import bleu4
from seqtrainer.model import ModelConfig, Seq2Seq
from seqtrainer.training import train


class _Criterion:
    def __init__(self, name, limit_s):
        self.name = name
        self.limit_s = limit_s

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None and elapsed <= self.limit_s else "FAIL"
        print(f"[{status}] {self.name} ({elapsed:.2f}s, limit {self.limit_s:g}s)")
        if exc_type is None:
            assert elapsed <= self.limit_s, (
                f"{self.name}: {elapsed:.2f}s over {self.limit_s:g}s limit")
        return False


def test_toy_training_halves_loss(tmp_path):
    with _Criterion("toy training: 200 pairs, 2000 iterations, "
                    "final loss <= 50% of initial", 1800.0):
        corpus = write_corpus(tmp_path / "toy", toy_pairs(200, seed=2))
        args = (corpus["desc"], corpus["apiseq"], corpus["vocab.desc"],
                corpus["vocab.apiseq"], SMALL_CONFIG)
        _, _, _, probe = train(*args, iterations=1, eval_interval=1, seed=3)
        initial_loss = probe.entries[0].loss
        _, _, _, log = train(*args, iterations=2000, eval_interval=500,
                             seed=3)
        final_loss = log.entries[-1].loss
        print(f"  loss {initial_loss:.3f} -> {final_loss:.3f}, sampled "
              f"BLEU-4 {log.entries[-1].sampled_bleu:.3f}")
        assert final_loss <= 0.5 * initial_loss


def test_single_pair_memorization(tmp_path):
    with _Criterion("single-pair memorization decodes exactly", 120.0):
        import dataclasses
        from seqtrainer.inference import infer
        corpus = write_corpus(tmp_path / "one",
                              [(["walk", "the", "tree"],
                                ["os", ".", "walk"])])
        config = dataclasses.replace(SMALL_CONFIG, batch_size=1,
                                     learning_rate=1e-2)
        model, src_vocab, tgt_vocab, _ = train(
            corpus["desc"], corpus["apiseq"], corpus["vocab.desc"],
            corpus["vocab.apiseq"], config, iterations=200,
            eval_interval=200)
        assert infer(model, src_vocab, tgt_vocab, "walk the tree",
                     k=1)[0] == ["os", ".", "walk"]


def test_default_model_shapes():
    with _Criterion("model shape assertions 2000/1000/10000", 60.0):
        model = Seq2Seq(ModelConfig(), src_vocab_size=100, tgt_vocab_size=100)
        assert model.encoder_feature_dim == 2000
        assert model.bridge.out_features == 1000
        assert model.project.out_features == 10_000


def test_cross_component_bleu_agreement():
    with _Criterion("cross-component BLEU agreement within 1e-9", 60.0):
        rng = random.Random(11)
        for _ in range(5000):
            hyp = [rng.choice("abcde.") for _ in range(rng.randint(0, 14))]
            ref = [rng.choice("abcde.") for _ in range(rng.randint(1, 14))]
            assert bleu4(hyp, ref) == pytest.approx(
                sentence_bleu4(hyp, ref), abs=1e-9)
