#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for watermark generation, embedding and extraction

Author: Dexter
Date: 2025
"""

import numpy as np
import pytest

from sealkit.attacks.harness import psnr
from sealkit.core.exceptions import GeometryError, ValidationError
from sealkit.core.models import SecretKey
from sealkit.watermark.partitioner import partition
from sealkit.watermark.pipeline import (
    block_bits, embed, extract, extract_state, generate_payload, gray_code_4bit,
    part1_carriers, part2_carriers,
)
from tests.conftest import natural_image


GRAY_TABLE = [
    (0, (0, 0, 0, 0)), (1, (0, 0, 0, 1)), (2, (0, 0, 1, 1)), (3, (0, 0, 1, 0)),
    (4, (0, 1, 1, 0)), (5, (0, 1, 1, 1)), (6, (0, 1, 0, 1)), (7, (0, 1, 0, 0)),
    (8, (1, 1, 0, 0)), (9, (1, 1, 0, 1)), (10, (1, 1, 1, 1)), (11, (1, 1, 1, 0)),
    (12, (1, 0, 1, 0)), (13, (1, 0, 1, 1)), (14, (1, 0, 0, 1)), (15, (1, 0, 0, 0)),
]


class TestGrayCode:
    @pytest.mark.parametrize("v, bits", GRAY_TABLE)
    def test_interval_table(self, v, bits):
        assert gray_code_4bit(v) == bits

    @pytest.mark.parametrize("v", range(15))
    def test_adjacent_intervals_differ_in_one_bit(self, v):
        a, b = gray_code_4bit(v), gray_code_4bit(v + 1)
        assert sum(x != y for x, y in zip(a, b)) == 1

    @pytest.mark.parametrize("v", [-1, 16])
    def test_out_of_range(self, v):
        with pytest.raises(ValidationError):
            gray_code_4bit(v)


class TestBlockBits:
    @pytest.mark.parametrize("value, bits", [(100, (0, 1, 0, 1)), (255, (1, 0, 0, 0)), (0, (0, 0, 0, 0))])
    def test_constant_blocks(self, value, bits):
        assert block_bits([value] * 64) == bits

    def test_floor_boundary(self):
        assert block_bits([15.999] * 64) == (0, 0, 0, 0)
        assert block_bits([16.0] * 64) == (0, 0, 0, 1)

    def test_empty(self):
        with pytest.raises(ValidationError):
            block_bits([])


class TestEmbed:
    def test_output_shape_and_type(self, image, key):
        marked = embed(image, key)
        assert marked.shape == image.shape
        assert marked.dtype == np.uint8

    def test_deterministic(self, image, key):
        np.testing.assert_array_equal(embed(image, key), embed(image, key))

    def test_different_keys_give_different_images(self, image):
        for seed in range(5):
            rng = np.random.default_rng(seed)
            a = SecretKey(**{k: int(rng.integers(0, 2 ** 63)) for k in ('k1', 'k2', 'k3')})
            b = SecretKey(**{k: int(rng.integers(0, 2 ** 63)) for k in ('k1', 'k2', 'k3')})
            differing = np.count_nonzero(embed(image, a) != embed(image, b))
            assert differing >= 0.01 * image.size

    def test_payload_size(self, image, key):
        payload = generate_payload(image, key, 8.0)
        m = partition(128, 128, key.k1).m
        assert len(payload.part1) == len(payload.part2) == 4 * m

    def test_carriers_are_disjoint(self, key):
        part = partition(128, 128, key.k1)
        first = {(b.x, b.y) for b in part1_carriers(part, key.k2)}
        second = {(b.x, b.y) for b in part2_carriers(part, key.k3)}
        assert len(first) == len(second) == 4 * part.m
        assert not first & second

    def test_imperceptibility_at_default_step(self, key):
        values = [psnr(img, embed(img, key, 8.0)) for img in (natural_image(256, s) for s in range(3))]
        assert 31.0 <= np.mean(values) <= 36.0

    def test_imperceptibility_at_half_step(self, key):
        values = [psnr(img, embed(img, key, 4.0)) for img in (natural_image(256, s) for s in range(3))]
        assert np.mean(values) > 37.72

    def test_unsupported_geometry(self, key):
        with pytest.raises(GeometryError):
            embed(np.zeros((100, 100), dtype=np.uint8), key)

    def test_tiny_image_is_unchanged(self, key):
        tiny = np.full((8, 8), 77, dtype=np.uint8)
        np.testing.assert_array_equal(embed(tiny, key), tiny)


class TestExtract:
    def test_clean_image_agrees(self, image, key):
        result = extract(embed(image, key), key)
        assert result.agreement() > 0.95

    def test_each_part_agrees_on_clean_image(self, image, key):
        state = extract_state(embed(image, key), key)
        assert np.mean(state.extracted1 == state.reference1[:, None]) > 0.93
        assert np.mean(state.extracted2 == state.reference2[:, None]) > 0.95

    def test_wrong_key_is_chance(self, image, key):
        marked = embed(image, key)
        for seed in range(5):
            rng = np.random.default_rng(100 + seed)
            wrong = SecretKey(**{k: int(rng.integers(0, 2 ** 63)) for k in ('k1', 'k2', 'k3')})
            assert 0.3 < extract(marked, wrong).agreement() < 0.7

    def test_degenerate_image(self, key):
        result = extract(np.zeros((8, 8), dtype=np.uint8), key)
        assert result.part1_extracted == result.part2_extracted == []
        assert result.part1_reference == result.part2_reference == []
