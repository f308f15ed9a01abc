"""Bidirectional GRU encoder with an attentional GRU decoder."""

from __future__ import annotations

from dataclasses import dataclass

import torch
from torch import nn


@dataclass(frozen=True)
class ModelConfig:
    embed_dim: int = 120
    encoder_hidden_total: int = 2000
    bridge_out: int = 1000
    decoder_hidden: int = 1000
    output_vocab: int = 10_000
    batch_size: int = 100
    learning_rate: float = 1e-4
    adam_epsilon: float = 1e-8
    max_target_tokens: int = 28

    def __post_init__(self):
        if self.encoder_hidden_total % 2:
            raise ValueError("encoder_hidden_total must be even "
                             "(split across two directions)")
        if self.bridge_out != self.decoder_hidden:
            raise ValueError("bridge output must match the decoder state size")


class Seq2Seq(nn.Module):
    """Encoder-decoder over id sequences.

    The encoder is a single-layer bidirectional GRU; its two final states are
    concatenated and passed through a linear + tanh bridge to initialize the
    decoder. The decoder is a GRU cell with dot-product attention over the
    (projected) encoder states.
    """

    def __init__(self, config: ModelConfig, src_vocab_size: int,
                 tgt_vocab_size: int):
        super().__init__()
        if tgt_vocab_size > config.output_vocab:
            raise ValueError(f"target vocabulary ({tgt_vocab_size}) exceeds "
                             f"the output layer size ({config.output_vocab})")
        self.config = config
        half = config.encoder_hidden_total // 2
        self.src_embed = nn.Embedding(src_vocab_size, config.embed_dim,
                                      padding_idx=0)
        self.tgt_embed = nn.Embedding(config.output_vocab, config.embed_dim,
                                      padding_idx=0)
        self.encoder = nn.GRU(config.embed_dim, half, batch_first=True,
                              bidirectional=True)
        self.bridge = nn.Linear(config.encoder_hidden_total, config.bridge_out)
        self.attn_key = nn.Linear(config.encoder_hidden_total,
                                  config.decoder_hidden, bias=False)
        self.decoder_cell = nn.GRUCell(config.embed_dim, config.decoder_hidden)
        self.combine = nn.Linear(2 * config.decoder_hidden,
                                 config.decoder_hidden)
        self.project = nn.Linear(config.decoder_hidden, config.output_vocab)

        assert self.encoder_feature_dim == config.encoder_hidden_total
        assert self.bridge.out_features == config.bridge_out
        assert self.project.out_features == config.output_vocab

    @property
    def encoder_feature_dim(self) -> int:
        return self.encoder.hidden_size * (2 if self.encoder.bidirectional
                                           else 1)

    def encode(self, src: torch.Tensor, src_mask: torch.Tensor):
        """Return (attention keys, initial decoder state)."""
        lengths = src_mask.sum(dim=1).cpu()
        packed = nn.utils.rnn.pack_padded_sequence(
            self.src_embed(src), lengths, batch_first=True,
            enforce_sorted=False)
        outputs, final = self.encoder(packed)
        outputs, _ = nn.utils.rnn.pad_packed_sequence(
            outputs, batch_first=True, total_length=src.size(1))
        pooled = torch.cat([final[0], final[1]], dim=-1)
        state = torch.tanh(self.bridge(pooled))
        return self.attn_key(outputs), state

    def decode_step(self, prev_token: torch.Tensor, state: torch.Tensor,
                    keys: torch.Tensor, src_mask: torch.Tensor):
        """One decoder step; returns (logits, new state)."""
        state = self.decoder_cell(self.tgt_embed(prev_token), state)
        scores = torch.bmm(keys, state.unsqueeze(-1)).squeeze(-1)
        scores = scores.masked_fill(~src_mask, float("-inf"))
        attn = torch.softmax(scores, dim=-1)
        context = torch.bmm(attn.unsqueeze(1), keys).squeeze(1)
        combined = torch.tanh(self.combine(torch.cat([state, context], -1)))
        return self.project(combined), state

    def forward(self, src: torch.Tensor, src_mask: torch.Tensor,
                tgt_in: torch.Tensor) -> torch.Tensor:
        """Teacher-forced logits of shape (batch, tgt_len, output_vocab)."""
        keys, state = self.encode(src, src_mask)
        logits = []
        for t in range(tgt_in.size(1)):
            step_logits, state = self.decode_step(tgt_in[:, t], state, keys,
                                                  src_mask)
            logits.append(step_logits)
        return torch.stack(logits, dim=1)
