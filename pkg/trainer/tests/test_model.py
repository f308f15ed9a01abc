import pytest
import torch

from conftest import SMALL_CONFIG
from seqtrainer.model import ModelConfig, Seq2Seq


class TestModelConfig:
    def test_defaults(self):
        config = ModelConfig()
        assert (config.embed_dim, config.encoder_hidden_total,
                config.bridge_out, config.decoder_hidden,
                config.output_vocab) == (120, 2000, 1000, 1000, 10_000)
        assert (config.batch_size, config.learning_rate,
                config.adam_epsilon, config.max_target_tokens) == (
                    100, 1e-4, 1e-8, 28)

    def test_odd_encoder_width_rejected(self):
        with pytest.raises(ValueError):
            ModelConfig(encoder_hidden_total=2001)

    def test_bridge_decoder_mismatch_rejected(self):
        with pytest.raises(ValueError):
            ModelConfig(bridge_out=900)


class TestDefaultShapes:
    def test_construction_time_assertions(self):
        model = Seq2Seq(ModelConfig(), src_vocab_size=50, tgt_vocab_size=50)
        assert model.encoder_feature_dim == 2000
        assert model.bridge.in_features == 2000
        assert model.bridge.out_features == 1000
        assert model.project.out_features == 10_000

    def test_vocab_over_output_layer_rejected(self):
        with pytest.raises(ValueError):
            Seq2Seq(SMALL_CONFIG, src_vocab_size=10,
                    tgt_vocab_size=SMALL_CONFIG.output_vocab + 1)


class TestForward:
    def test_logit_shape(self):
        model = Seq2Seq(SMALL_CONFIG, src_vocab_size=12, tgt_vocab_size=20)
        src = torch.tensor([[4, 5, 6, 0], [4, 7, 0, 0]])
        tgt_in = torch.tensor([[1, 4, 5], [1, 6, 0]])
        logits = model(src, src != 0, tgt_in)
        assert logits.shape == (2, 3, SMALL_CONFIG.output_vocab)

    def test_padding_does_not_change_encoding(self):
        torch.manual_seed(0)
        model = Seq2Seq(SMALL_CONFIG, src_vocab_size=12, tgt_vocab_size=20)
        model.eval()
        short = torch.tensor([[4, 5, 6]])
        padded = torch.tensor([[4, 5, 6, 0, 0]])
        with torch.no_grad():
            _, state_a = model.encode(short, short != 0)
            _, state_b = model.encode(padded, padded != 0)
        assert torch.allclose(state_a, state_b, atol=1e-6)
