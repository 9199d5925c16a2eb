"""Tests for anhomomorphic.config."""

from anhomomorphic.config import DEFAULT_CAP, DEFAULT_TOLERANCE, AnalysisConfig


class TestAnalysisConfig:
    def test_default_values(self):
        cfg = AnalysisConfig()
        assert cfg.tolerance == DEFAULT_TOLERANCE == 1e-9
        assert cfg.cap == DEFAULT_CAP == 20
        assert cfg.sum_rule_cap == 10
        assert cfg.materialize_cap == 1024
        assert cfg.epsilon == 1e-3
        assert cfg.coin_tosses == 10
        assert cfg.appc_coin_tosses == 2
        assert cfg.appc_epsilon == 0.3

    def test_heads_limit_derived(self):
        cfg = AnalysisConfig()
        assert cfg.heads_limit() == 6
        assert cfg.heads_limit(5) == 3
        cfg.coin_tosses = 4
        assert cfg.heads_limit() == 2

    def test_homomorphism_method_follows_cap(self):
        cfg = AnalysisConfig()
        assert cfg.exhaustive_homomorphism_cap == 8
        assert cfg.homomorphism_method(8) == "exhaustive"
        assert cfg.homomorphism_method(9) == "block"
        cfg.exhaustive_homomorphism_cap = 1
        assert cfg.homomorphism_method(2) == "block"

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("ANHOM_TOLERANCE", "1e-6")
        monkeypatch.setenv("ANHOM_CAP", "12")
        cfg = AnalysisConfig()
        assert cfg.tolerance == 1e-6
        assert cfg.cap == 12
