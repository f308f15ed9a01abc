"""Beam-search decoding."""

from __future__ import annotations

import torch

from .data import BOS, EOS, Vocabulary
from .model import Seq2Seq

DEFAULT_BEAM_WIDTH = 5


@torch.no_grad()
def beam_decode(model: Seq2Seq, src_ids: list[int], k: int,
                beam_width: int = DEFAULT_BEAM_WIDTH,
                bos_id: int = 1, eos_id: int = 2,
                vocab_size: int | None = None) -> list[list[int]]:
    """Top-k decoded id sequences (without BOS/EOS), best first.

    The beam is widened to k automatically when k exceeds it. Hypotheses are
    ranked by total log-probability; decoding stops at EOS or after
    ``max_target_tokens`` steps. Ids at or beyond ``vocab_size`` (unused
    output-layer columns) and the padding/BOS ids are never proposed.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    width = max(beam_width, k)
    if vocab_size is None:
        vocab_size = model.config.output_vocab
    model.eval()
    src = torch.tensor([src_ids], dtype=torch.long)
    mask = torch.ones_like(src, dtype=torch.bool)
    keys, state = model.encode(src, mask)

    # each beam entry: (score, token ids, decoder state)
    beams = [(0.0, [], state[0])]
    finished: list[tuple[float, list[int]]] = []
    for _ in range(model.config.max_target_tokens):
        if not beams:
            break
        prev = torch.tensor([b[1][-1] if b[1] else bos_id for b in beams])
        states = torch.stack([b[2] for b in beams])
        n = len(beams)
        logits, new_states = model.decode_step(
            prev, states, keys.expand(n, -1, -1), mask.expand(n, -1))
        logits = logits[:, :vocab_size].clone()
        logits[:, 0] = float("-inf")     # never emit padding
        logits[:, bos_id] = float("-inf")
        log_probs = torch.log_softmax(logits, dim=-1)
        top_lp, top_ids = log_probs.topk(min(width, vocab_size - 2), dim=-1)

        candidates = []
        for i, (score, ids, _) in enumerate(beams):
            for lp, tok in zip(top_lp[i].tolist(), top_ids[i].tolist()):
                candidates.append((score + lp, ids + [tok], new_states[i]))
        candidates.sort(key=lambda c: -c[0])

        beams = []
        for score, ids, st in candidates:
            if ids[-1] == eos_id:
                finished.append((score, ids[:-1]))
            elif len(beams) < width:
                beams.append((score, ids, st))
            if len(finished) >= width and len(beams) >= width:
                break
    finished.extend((score, ids) for score, ids, _ in beams)
    finished.sort(key=lambda c: -c[0])
    return [ids for _, ids in finished[:k]]


def infer(model: Seq2Seq, src_vocab: Vocabulary, tgt_vocab: Vocabulary,
          desc_text: str, k: int,
          beam_width: int = DEFAULT_BEAM_WIDTH) -> list[list[str]]:
    """Top-k API token sequences for a whitespace-tokenized description."""
    tokens = desc_text.lower().split()
    if not tokens:
        raise ValueError("empty query description")
    src_ids = [src_vocab.encode_lossy(t) for t in tokens]
    results = beam_decode(model, src_ids, k, beam_width,
                          bos_id=tgt_vocab.ids[BOS],
                          eos_id=tgt_vocab.ids[EOS],
                          vocab_size=len(tgt_vocab))
    return [[tgt_vocab.tokens[i] for i in ids] for ids in results]
