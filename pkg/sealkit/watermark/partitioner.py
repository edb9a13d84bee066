#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Keyed image partitioning

Splits the image into non-overlapping 8×8 (B8) and 4×4 (B4) blocks whose
layout depends only on the image size and key part k1. 4×4 blocks are
roughly four times as numerous as 8×8 blocks.

Author: Dexter
Date: 2025
"""

import logging
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from sealkit.core.exceptions import GeometryError, ValidationError
from sealkit.core.models import BlockRef, Partition
from sealkit.watermark.keyed_random import seed_stream


# 配置日志
logger = logging.getLogger(__name__)

ANCHOR = 4
DRAW_RANGE = 5


def partition(width: int, height: int, k1: int) -> Partition:
    """
    Partition an image of the given size with key part k1

    Raster-scans the 4×4 anchor grid. At every uncovered anchor one value
    u = next_below(5) is drawn; an 8×8 block is emitted when u falls below
    the current threshold and the block fits over uncovered anchors,
    otherwise a 4×4 block. The threshold is 1, raised to 2 while the
    running 4×4 count exceeds four times the 8×8 count (less an allowance
    for the bottom anchor row, where 8×8 blocks never fit).

    Args:
        width (int): image width in pixels, divisible by 8
        height (int): image height in pixels, divisible by 8
        k1 (int): 64-bit key part

    Returns:
        Partition: blocks in discovery order plus usable pair count m

    Raises:
        GeometryError: if a dimension is smaller than 8 or not divisible by 8
    """
    return _partition_cached(width, height, k1)


@lru_cache(maxsize=32)
def _partition_cached(width: int, height: int, k1: int) -> Partition:
    if width < 8 or height < 8 or width % 8 or height % 8:
        raise GeometryError(f"image dimensions {width}x{height} must be multiples of 8")

    stream = seed_stream(k1, 'k1')
    columns = width // ANCHOR
    rows = height // ANCHOR
    allowance = columns // 2
    covered = [bytearray(columns) for _ in range(rows)]
    b8: List[BlockRef] = []
    b4: List[BlockRef] = []

    for gy in range(rows):
        row = covered[gy]
        below = covered[gy + 1] if gy + 1 < rows else None
        for gx in range(columns):
            if row[gx]:
                continue
            u = stream.next_below(DRAW_RANGE)
            threshold = 2 if len(b4) - 4 * len(b8) + allowance > 0 else 1
            fits = (
                below is not None
                and gx + 1 < columns
                and not row[gx + 1]
                and not below[gx]
                and not below[gx + 1]
            )
            if u < threshold and fits:
                row[gx] = row[gx + 1] = 1
                below[gx] = below[gx + 1] = 1
                b8.append(BlockRef(x=gx * ANCHOR, y=gy * ANCHOR, size=8))
            else:
                row[gx] = 1
                b4.append(BlockRef(x=gx * ANCHOR, y=gy * ANCHOR, size=4))

    m = min(len(b8), len(b4) // 4)
    logger.debug(f"分块完成: {width}x{height}, |b8|={len(b8)}, |b4|={len(b4)}, m={m}")
    if m == 0:
        logger.warning(f"分块 {width}x{height} 没有可用的载荷块 (m=0)")
    return Partition(b8=tuple(b8), b4=tuple(b4), m=m, width=width, height=height)


def group_b4_into_virtual8(part: Partition) -> List[Tuple[BlockRef, BlockRef, BlockRef, BlockRef]]:
    """Join consecutive b4 entries 4i..4i+3 into virtual 8×8 block i, for i < m."""
    return [tuple(part.b4[4 * i:4 * i + 4]) for i in range(part.m)]


def quadrants(block: BlockRef) -> List[BlockRef]:
    """
    Split an 8×8 block into its four 4×4 sub-blocks

    Returns top-left, top-right, bottom-left, bottom-right.

    Raises:
        ValidationError: if the block is not 8×8
    """
    if block.size != 8:
        raise ValidationError(f"quadrants requires an 8x8 block, got size {block.size}")
    x, y = block.x, block.y
    return [
        BlockRef(x=x, y=y, size=4),
        BlockRef(x=x + 4, y=y, size=4),
        BlockRef(x=x, y=y + 4, size=4),
        BlockRef(x=x + 4, y=y + 4, size=4),
    ]


def block_origins(blocks: Sequence[BlockRef]) -> np.ndarray:
    """Stack block anchors into an (n, 2) integer array of (y, x)."""
    if not blocks:
        return np.zeros((0, 2), dtype=np.intp)
    return np.array([(b.y, b.x) for b in blocks], dtype=np.intp)
