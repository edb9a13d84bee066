#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for tamper localization

Author: Dexter
Date: 2025
"""

import numpy as np
import pytest

from sealkit.attacks.harness import default_rect, jpeg_roundtrip, object_insert
from sealkit.core.config import Config
from sealkit.core.exceptions import ValidationError
from sealkit.core.models import Rect
from sealkit.verification.authenticator import ErrorMapSet, authenticate
from sealkit.verification.localization import bounding_rect, iou, localize, rect_mask, tamper_mask
from sealkit.watermark.pipeline import embed


def maps_from(xw1: np.ndarray) -> ErrorMapSet:
    blank = np.zeros_like(xw1)
    return ErrorMapSet(xw1=xw1, xw2=blank, vmap1=blank, vmap2=blank)


def blob_map(shape=(128, 128), blobs=((16, 16, 32),), value=255) -> np.ndarray:
    grid = np.zeros(shape, dtype=np.uint8)
    for y, x, side in blobs:
        grid[y:y + side, x:x + side] = value
    return grid


class TestTamperMask:
    def test_square_region_recovered(self):
        xw1 = blob_map()
        xw1[100, 5] = xw1[3, 90] = 255
        mask = tamper_mask(maps_from(xw1))
        np.testing.assert_array_equal(mask, blob_map() > 0)

    def test_largest_component_wins(self):
        mask = tamper_mask(maps_from(blob_map(blobs=((8, 8, 16), (64, 64, 40)))))
        assert bounding_rect(mask) == Rect(x=64, y=64, width=40, height=40)

    def test_clean_map(self):
        maps = maps_from(np.zeros((64, 64), dtype=np.uint8))
        assert not tamper_mask(maps).any()
        assert localize(maps) is None

    def test_threshold(self):
        maps = maps_from(blob_map(value=63))
        assert not tamper_mask(maps).any()
        assert tamper_mask(maps, threshold=63).any()

    def test_default_threshold_frozen(self):
        assert Config.LOCALIZATION_THRESHOLD == 64


class TestIou:
    def test_exact(self):
        rect = Rect(x=8, y=4, width=16, height=12)
        assert iou(rect_mask(rect, (32, 32)), rect) == 1.0

    def test_half_overlap(self):
        mask = rect_mask(Rect(x=0, y=0, width=16, height=16), (32, 32))
        assert iou(mask, Rect(x=8, y=0, width=16, height=16)) == pytest.approx(128 / 384)

    def test_disjoint(self):
        mask = rect_mask(Rect(x=0, y=0, width=8, height=8), (32, 32))
        assert iou(mask, Rect(x=16, y=16, width=8, height=8)) == 0.0

    def test_both_empty(self):
        assert iou(np.zeros((8, 8), dtype=bool), Rect(x=0, y=0, width=0, height=0)) == 0.0

    def test_rect_outside_image(self):
        with pytest.raises(ValidationError):
            rect_mask(Rect(x=30, y=0, width=8, height=8), (32, 32))


@pytest.mark.slow
class TestPhotographs:
    CASES = 10

    def insertion_iou(self, photos, key, index, qf=None):
        marked = embed(photos[index], key)
        donor = photos[(index + 1) % len(photos)]
        rect = default_rect(marked.shape[1], marked.shape[0])
        attacked = object_insert(marked, donor, rect)
        if qf is not None:
            attacked = jpeg_roundtrip(attacked, qf)
        return iou(tamper_mask(authenticate(attacked, key)), rect)

    def test_insertion_localized(self, photos, key):
        scores = [self.insertion_iou(photos, key, i) for i in range(self.CASES)]
        assert sum(score >= 0.3 for score in scores) >= 0.7 * self.CASES
        assert np.median(scores) >= 0.3

    def test_insertion_localized_after_recompression(self, photos, key):
        scores = [
            self.insertion_iou(photos, key, i, qf)
            for i in range(self.CASES)
            for qf in (75, 80, 85, 90)
        ]
        assert np.median(scores) >= 0.3
