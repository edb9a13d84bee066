#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for configuration and key handling

Author: Dexter
Date: 2025
"""

import pytest

from sealkit.core.config import Config, config
from sealkit.core.exceptions import ValidationError
from sealkit.core.models import SecretKey


class TestSecretKey:
    def test_hex_round_trip(self, key_hex):
        key = SecretKey.from_hex(key_hex)
        assert key.k1 == 0x0123456789ABCDEF
        assert key.k3 == 0x0F1E2D3C4B5A6978
        assert key.to_hex() == key_hex

    @pytest.mark.parametrize("text", [
        "abc", "g" * 48, "0" * 47,
        "0x" + "a" * 46,
        "+" + "a" * 47,
        "aaaaaaa_aaaaaaaa" + "a" * 32,
        "a" * 16 + " " + "a" * 31,
    ])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            SecretKey.from_hex(text)


class TestGetSecretKey:
    def test_explicit_key(self, key_hex):
        assert config.get_secret_key(key_hex) == SecretKey.from_hex(key_hex)

    def test_environment_fallback(self, key_hex, monkeypatch):
        monkeypatch.setattr(Config, 'SECRET_KEY', key_hex)
        assert config.get_secret_key() == SecretKey.from_hex(key_hex)

    def test_missing_key_returns_none(self, monkeypatch):
        monkeypatch.setattr(Config, 'SECRET_KEY', '')
        assert config.get_secret_key(None) is None

    def test_malformed_key(self):
        with pytest.raises(ValidationError):
            config.get_secret_key('zz' * 24)


def test_defaults():
    assert Config.MORPHOLOGY_WINDOW == 5
    assert Config.SVM_C == 10.0
    assert Config.SVM_GAMMA == pytest.approx(1 / 7)
    assert Config.JPEG_QUALITIES == (75, 80, 85, 90, 95)


class TestGetQuantizationStep:
    def test_default(self, monkeypatch):
        monkeypatch.setattr(Config, 'QUANTIZATION_STEP_ENV', '')
        assert config.get_quantization_step() == 8.0

    def test_environment(self, monkeypatch):
        monkeypatch.setattr(Config, 'QUANTIZATION_STEP_ENV', '4')
        assert config.get_quantization_step() == 4.0

    def test_explicit_wins(self, monkeypatch):
        monkeypatch.setattr(Config, 'QUANTIZATION_STEP_ENV', '4')
        assert config.get_quantization_step(6.0) == 6.0

    @pytest.mark.parametrize("value", ['abc', '-2', '0'])
    def test_malformed_environment(self, monkeypatch, value):
        monkeypatch.setattr(Config, 'QUANTIZATION_STEP_ENV', value)
        with pytest.raises(ValidationError):
            config.get_quantization_step()

    @pytest.mark.parametrize("value", [0.0, -1.0])
    def test_non_positive(self, value):
        with pytest.raises(ValidationError):
            config.get_quantization_step(value)
