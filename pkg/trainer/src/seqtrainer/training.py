"""Training loop, logging, and checkpointing."""

from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass, field
from pathlib import Path

import torch
from torch import nn

from . import bleu
from .data import (BOS, EOS, Vocabulary, encode_pairs, load_parallel,
                   load_vocab)
from .inference import DEFAULT_BEAM_WIDTH, beam_decode
from .model import ModelConfig, Seq2Seq

SAMPLED_EVAL_PAIRS = 100


@dataclass(frozen=True)
class LogEntry:
    iteration: int
    loss: float
    sampled_bleu: float


@dataclass
class TrainingLog:
    """Per-interval training metrics plus a header of run choices."""

    header: dict = field(default_factory=lambda: {
        "cell": "gru",
        "attention": "dot",
        "beam_width": DEFAULT_BEAM_WIDTH,
        "sampled_pairs": SAMPLED_EVAL_PAIRS,
    })
    entries: list[LogEntry] = field(default_factory=list)

    def append(self, entry: LogEntry) -> None:
        if self.entries and entry.iteration <= self.entries[-1].iteration:
            raise ValueError("log iterations must be strictly increasing")
        self.entries.append(entry)

    def to_text(self) -> str:
        lines = [f"# {key} = {value}" for key, value in self.header.items()]
        lines.append("iteration\tloss\tsampled_bleu")
        lines.extend(f"{e.iteration}\t{e.loss:.6f}\t{e.sampled_bleu:.6f}"
                     for e in self.entries)
        return "\n".join(lines) + "\n"


def _pad_batch(seqs: list[list[int]], pad_id: int = 0) -> torch.Tensor:
    width = max(len(s) for s in seqs)
    return torch.tensor([s + [pad_id] * (width - len(s)) for s in seqs])


def make_batch(encoded, bos_id: int):
    """Build (src, src_mask, decoder input, decoder target) tensors."""
    src = _pad_batch([s for s, _ in encoded])
    tgt = _pad_batch([t for _, t in encoded])
    tgt_in = _pad_batch([[bos_id] + t[:-1] for _, t in encoded])
    return src, src != 0, tgt_in, tgt


def _sampled_bleu(model: Seq2Seq, encoded, tgt_vocab: Vocabulary,
                  rng: random.Random) -> float:
    sample = rng.sample(encoded, min(SAMPLED_EVAL_PAIRS, len(encoded)))
    eos = tgt_vocab.ids[EOS]
    total = 0.0
    for src_ids, tgt_ids in sample:
        best = beam_decode(model, src_ids, k=1,
                           bos_id=tgt_vocab.ids[BOS], eos_id=eos,
                           vocab_size=len(tgt_vocab))[0]
        hyp = [tgt_vocab.tokens[i] for i in best]
        ref = [tgt_vocab.tokens[i] for i in tgt_ids if i != eos]
        total += bleu.bleu4(hyp, ref) if ref else float(not hyp)
    return total / len(sample)


def train(train_desc: str | Path, train_apiseq: str | Path,
          desc_vocab_path: str | Path, apiseq_vocab_path: str | Path,
          config: ModelConfig = ModelConfig(), iterations: int = 2000,
          eval_interval: int = 1000, seed: int = 0,
          checkpoint_path: str | Path | None = None):
    """Train a model on aligned token files.

    Returns (model, src vocab, tgt vocab, TrainingLog). One iteration is one
    optimizer step on a batch of ``config.batch_size`` pairs; the sampled
    BLEU-4 of greedy-best beam decodes is logged every ``eval_interval``
    iterations and at the end.
    """
    src_vocab = load_vocab(desc_vocab_path)
    tgt_vocab = load_vocab(apiseq_vocab_path)
    pairs = load_parallel(train_desc, train_apiseq)
    if not pairs:
        raise ValueError(f"training file {train_desc} is empty")
    encoded = encode_pairs(pairs, src_vocab, tgt_vocab,
                           config.max_target_tokens)

    torch.manual_seed(seed)
    rng = random.Random(seed)
    model = Seq2Seq(config, len(src_vocab), len(tgt_vocab))
    optimizer = torch.optim.AdamW(model.parameters(), lr=config.learning_rate,
                                  eps=config.adam_epsilon)
    loss_fn = nn.CrossEntropyLoss(ignore_index=0)
    bos = tgt_vocab.ids[BOS]

    log = TrainingLog()
    order: list[int] = []
    for iteration in range(1, iterations + 1):
        batch_idx = []
        while len(batch_idx) < config.batch_size:
            if not order:
                order = list(range(len(encoded)))
                rng.shuffle(order)
            batch_idx.append(order.pop())
        src, mask, tgt_in, tgt = make_batch([encoded[i] for i in batch_idx],
                                            bos)
        model.train()
        optimizer.zero_grad()
        logits = model(src, mask, tgt_in)
        loss = loss_fn(logits.reshape(-1, logits.size(-1)), tgt.reshape(-1))
        loss.backward()
        optimizer.step()

        if iteration % eval_interval == 0 or iteration == iterations:
            log.append(LogEntry(iteration, loss.item(),
                                _sampled_bleu(model, encoded, tgt_vocab, rng)))
            if checkpoint_path is not None:
                save_checkpoint(model, src_vocab, tgt_vocab, checkpoint_path)
    return model, src_vocab, tgt_vocab, log


def save_checkpoint(model: Seq2Seq, src_vocab: Vocabulary,
                    tgt_vocab: Vocabulary, path: str | Path) -> None:
    torch.save({
        "config": dataclasses.asdict(model.config),
        "src_tokens": src_vocab.tokens,
        "tgt_tokens": tgt_vocab.tokens,
        "state": model.state_dict(),
    }, path)


def load_checkpoint(path: str | Path):
    """Returns (model, src vocab, tgt vocab)."""
    payload = torch.load(path, weights_only=True)
    config = ModelConfig(**payload["config"])
    src_vocab = Vocabulary(payload["src_tokens"])
    tgt_vocab = Vocabulary(payload["tgt_tokens"])
    model = Seq2Seq(config, len(src_vocab), len(tgt_vocab))
    model.load_state_dict(payload["state"])
    return model, src_vocab, tgt_vocab
