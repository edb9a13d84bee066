#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for keyed partitioning

Author: Dexter
Date: 2025
"""

import numpy as np
import pytest

from sealkit.core.exceptions import GeometryError, ValidationError
from sealkit.core.models import BlockRef, Partition
from sealkit.watermark.keyed_random import seed_stream
from sealkit.watermark.partitioner import (
    block_origins, group_b4_into_virtual8, partition, quadrants,
)


def coverage(part: Partition) -> np.ndarray:
    grid = np.zeros((part.height, part.width), dtype=np.int32)
    for block in part.b8 + part.b4:
        grid[block.y:block.y + block.size, block.x:block.x + block.size] += 1
    return grid


class TestPartition:
    @pytest.mark.parametrize("k1", [0, 1, 0xFFFFFFFFFFFFFFFF, 0x1234ABCD])
    def test_tiles_every_pixel_once(self, k1):
        part = partition(64, 48, k1)
        assert np.all(coverage(part) == 1)
        assert len(part.b4) + 4 * len(part.b8) == 64 * 48 // 16

    def test_512_counts_and_tiling(self):
        part = partition(512, 512, 42)
        assert len(part.b4) + 4 * len(part.b8) == 16384
        assert np.all(coverage(part) == 1)
        assert part.m == min(len(part.b8), len(part.b4) // 4)

    def test_ratio_over_many_keys(self):
        ratios = []
        for k1 in range(1000, 1050):
            part = partition(512, 512, k1)
            deviation = abs(len(part.b4) - 4 * len(part.b8)) / len(part.b4)
            assert deviation < 0.01
            ratios.append(len(part.b4) / len(part.b8))
        assert 3.9 <= np.mean(ratios) <= 4.1

    def test_eight_by_eight_image_single_block(self):
        k1 = next(k for k in range(1000) if seed_stream(k).next_below(5) == 0)
        part = partition(8, 8, k1)
        assert part.b8 == (BlockRef(x=0, y=0, size=8),)
        assert part.b4 == ()
        assert part.m == 0

    def test_deterministic(self):
        assert partition(128, 64, 9).model_dump() == partition(128, 64, 9).model_dump()

    def test_depends_on_key(self):
        assert partition(128, 128, 1).b8 != partition(128, 128, 2).b8

    @pytest.mark.parametrize("width, height", [(100, 64), (64, 4), (0, 8), (12, 16)])
    def test_unsupported_geometry(self, width, height):
        with pytest.raises(GeometryError):
            partition(width, height, 1)

    def test_blocks_on_lattice(self):
        part = partition(96, 96, 5)
        assert all(b.x % 4 == 0 and b.y % 4 == 0 for b in part.b8 + part.b4)

    def test_cached_partition_is_immutable(self):
        part = partition(64, 64, 21)
        with pytest.raises(AttributeError):
            part.b4.append(BlockRef(x=0, y=0, size=4))
        assert partition(64, 64, 21).b4 == part.b4
        assert isinstance(part.b8, tuple)


class TestGrouping:
    def test_groups_consecutive_b4(self):
        b4 = [BlockRef(x=4 * i, y=0, size=4) for i in range(9)]
        b8 = [BlockRef(x=8 * i, y=8, size=8) for i in range(3)]
        part = Partition(b8=b8, b4=b4, m=2, width=64, height=16)
        groups = group_b4_into_virtual8(part)
        assert groups == [tuple(b4[0:4]), tuple(b4[4:8])]

    def test_no_groups_when_m_zero(self):
        part = Partition(b8=[BlockRef(x=0, y=0, size=8)], b4=[], m=0, width=8, height=8)
        assert group_b4_into_virtual8(part) == []

    def test_group_count_equals_m(self):
        part = partition(256, 256, 3)
        assert len(group_b4_into_virtual8(part)) == part.m


class TestQuadrants:
    def test_origin_block(self):
        assert quadrants(BlockRef(x=0, y=0, size=8)) == [
            BlockRef(x=0, y=0, size=4), BlockRef(x=4, y=0, size=4),
            BlockRef(x=0, y=4, size=4), BlockRef(x=4, y=4, size=4),
        ]

    def test_offset_block(self):
        assert [(q.x, q.y) for q in quadrants(BlockRef(x=8, y=16, size=8))] == [
            (8, 16), (12, 16), (8, 20), (12, 20),
        ]

    def test_rejects_small_block(self):
        with pytest.raises(ValidationError):
            quadrants(BlockRef(x=0, y=0, size=4))

    def test_payload_quadrants_are_disjoint(self):
        part = partition(128, 128, 17)
        quads = [q for block in part.b8[:part.m] for q in quadrants(block)]
        assert len(quads) == 4 * part.m
        assert len({(q.x, q.y) for q in quads}) == 4 * part.m


def test_block_origins_rows_then_columns():
    origins = block_origins([BlockRef(x=12, y=4, size=4), BlockRef(x=0, y=8, size=8)])
    assert origins.tolist() == [[4, 12], [8, 0]]
    assert block_origins([]).shape == (0, 2)
