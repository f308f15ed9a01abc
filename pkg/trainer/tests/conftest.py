import random
import sys
from collections import Counter
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from seqtrainer.data import SPECIALS
from seqtrainer.model import ModelConfig

SMALL_CONFIG = ModelConfig(embed_dim=16, encoder_hidden_total=32,
                           bridge_out=32, decoder_hidden=32, output_vocab=64,
                           batch_size=16, learning_rate=3e-3,
                           max_target_tokens=10)


def write_corpus(directory, pairs):
    """Write aligned token files plus frequency-ordered vocab files.

    ``pairs`` is a list of (desc tokens, apiseq tokens). Returns the four
    file paths as a dict.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "desc": directory / "train.desc.txt",
        "apiseq": directory / "train.apiseq.txt",
        "vocab.desc": directory / "vocab.desc.txt",
        "vocab.apiseq": directory / "vocab.apiseq.txt",
    }
    paths["desc"].write_text(
        "".join(" ".join(d) + "\n" for d, _ in pairs), encoding="utf-8")
    paths["apiseq"].write_text(
        "".join(" ".join(a) + "\n" for _, a in pairs), encoding="utf-8")
    for key, side in (("vocab.desc", 0), ("vocab.apiseq", 1)):
        counts = Counter(t for p in pairs for t in p[side])
        ordered = sorted(counts, key=lambda t: (-counts[t], t))
        paths[key].write_text(
            "".join(t + "\n" for t in (*SPECIALS, *ordered)),
            encoding="utf-8")
    return paths


def toy_pairs(n, seed=0):
    """Learnable synthetic corpus: each desc word maps to one api token."""
    rng = random.Random(seed)
    words = [f"word{i}" for i in range(24)]
    mapping = {w: ["ns", ".", f"call{i}"] for i, w in enumerate(words)}
    pairs = []
    for _ in range(n):
        desc = rng.sample(words, rng.randint(2, 3))
        api = [tok for w in desc for tok in mapping[w]]
        pairs.append((desc, api))
    return pairs


@pytest.fixture
def toy_corpus(tmp_path):
    return write_corpus(tmp_path / "corpus", toy_pairs(60, seed=1))
