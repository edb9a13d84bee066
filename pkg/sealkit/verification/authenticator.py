#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Watermark authentication and error maps

Compares every regenerated watermark bit with its three extracted
copies, turns the differences into block-level values (sums for X_w,
severity levels and votes for VMap) and paints them back onto
full-resolution maps at the blocks that produced or carried the bits.

Author: Dexter
Date: 2025
"""

import logging
import os
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np

from sealkit.core.exceptions import ValidationError
from sealkit.core.imageio import write_image
from sealkit.core.models import EwTriple, SecretKey
from sealkit.watermark.partitioner import block_origins
from sealkit.watermark.pipeline import ExtractionState, extract_state


# 配置日志
logger = logging.getLogger(__name__)

XW_VALUES = np.array([0, 63, 127, 191, 255], dtype=np.uint8)
VMAP_SCALE = 85
MAP_NAMES = ('xw1', 'xw2', 'vmap1', 'vmap2', 'xw_comb')


@dataclass
class ErrorMapSet:
    """
    Full-resolution error maps, all uint8 arrays of the image's shape

    xw1/xw2 take values in {0, 63, 127, 191, 255}, vmap1/vmap2 in
    {0, 85, 170, 255}; xw_comb is filled in by combine().
    """
    xw1: np.ndarray
    xw2: np.ndarray
    vmap1: np.ndarray
    vmap2: np.ndarray
    xw_comb: Optional[np.ndarray] = None

    def as_dict(self) -> Dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in MAP_NAMES if getattr(self, name) is not None}


def ew(reference: int, extracted: Sequence[int]) -> EwTriple:
    """Componentwise |w - w̃(k)| for the three extracted copies."""
    e1, e2, e3 = (abs(int(reference) - int(bit)) for bit in extracted)
    return EwTriple(e1=e1, e2=e2, e3=e3)


def xw_block8(e1_bits: Sequence[int]) -> int:
    """Map the number of wrong first copies among a block's four bits to a gray level."""
    if len(e1_bits) != 4:
        raise ValidationError(f"xw_block8 expects four values, got {len(e1_bits)}")
    return int(XW_VALUES[int(sum(e1_bits))])


def vmap_cell(e: EwTriple) -> int:
    """Severity level 0..3 of one carrier block."""
    if e.e1 == 0:
        return 0 if e.e2 == 0 and e.e3 == 0 else 1
    return 3 if e.e2 == 1 and e.e3 == 1 else 2


def vote_block8(levels: Sequence[int]) -> int:
    """Collapse four severity levels into one 8×8 block value."""
    if len(levels) != 4:
        raise ValidationError(f"vote_block8 expects four levels, got {len(levels)}")
    c = [0, 0, 0, 0]
    for level in levels:
        c[int(level)] += 1
    if c[3] + c[2] >= c[1] + c[0]:
        return 255 if c[3] >= c[2] else 170
    return 85 if c[1] >= c[0] else 0


def _ew_matrix(reference: np.ndarray, extracted: np.ndarray) -> np.ndarray:
    return np.abs(reference[:, None].astype(np.int16) - extracted.astype(np.int16))


def _levels(errors: np.ndarray) -> np.ndarray:
    e1 = errors[:, 0]
    all_zero = errors.sum(axis=1) == 0
    all_one = errors.sum(axis=1) == 3
    return np.where(all_zero, 0, np.where(e1 == 0, 1, np.where(all_one, 3, 2))).astype(np.uint8)


def _xw_groups(errors: np.ndarray) -> np.ndarray:
    return XW_VALUES[errors[:, 0].reshape(-1, 4).sum(axis=1)]


def _vote_groups(levels: np.ndarray) -> np.ndarray:
    grouped = levels.reshape(-1, 4)
    c0, c1, c2, c3 = ((grouped == k).sum(axis=1) for k in range(4))
    high = np.where(c3 >= c2, 255, 170)
    low = np.where(c1 >= c0, 85, 0)
    return np.where(c3 + c2 >= c1 + c0, high, low).astype(np.uint8)


def _paint(canvas: np.ndarray, origins: np.ndarray, size: int, values: np.ndarray) -> None:
    if len(origins) == 0:
        return
    offsets = np.arange(size)
    rows = origins[:, 0, None] + offsets
    cols = origins[:, 1, None] + offsets
    canvas[rows[:, :, None], cols[:, None, :]] = values[:, None, None]


def assemble_maps(state: ExtractionState) -> ErrorMapSet:
    """
    Build X_w1, X_w2, VMap_1 and VMap_2 from an extraction

    Part 1: each payload b8 block gets its X_w / vote value over its 8×8
    footprint, each part-1 carrier gets Ew(1)·255 / level·85 over its 4×4
    footprint. Part 2: each virtual group's value is written into the
    footprints of its four member b4 blocks, each carrier quadrant gets
    its own value inside its parent b8 block. Unused blocks stay 0.
    """
    part = state.partition
    shape = (part.height, part.width)
    xw1 = np.zeros(shape, dtype=np.uint8)
    xw2 = np.zeros(shape, dtype=np.uint8)
    vmap1 = np.zeros(shape, dtype=np.uint8)
    vmap2 = np.zeros(shape, dtype=np.uint8)
    if part.m == 0:
        return ErrorMapSet(xw1=xw1, xw2=xw2, vmap1=vmap1, vmap2=vmap2)

    errors1 = _ew_matrix(state.reference1, state.extracted1)
    levels1 = _levels(errors1)
    payload8 = block_origins(part.b8[:part.m])
    carriers1 = block_origins(state.carriers1)
    _paint(xw1, payload8, 8, _xw_groups(errors1))
    _paint(xw1, carriers1, 4, (errors1[:, 0] * 255).astype(np.uint8))
    _paint(vmap1, payload8, 8, _vote_groups(levels1))
    _paint(vmap1, carriers1, 4, levels1 * VMAP_SCALE)

    errors2 = _ew_matrix(state.reference2, state.extracted2)
    levels2 = _levels(errors2)
    members = block_origins(part.b4[:4 * part.m])
    carriers2 = block_origins(state.carriers2)
    _paint(xw2, members, 4, np.repeat(_xw_groups(errors2), 4))
    _paint(xw2, carriers2, 4, (errors2[:, 0] * 255).astype(np.uint8))
    _paint(vmap2, members, 4, np.repeat(_vote_groups(levels2), 4))
    _paint(vmap2, carriers2, 4, levels2 * VMAP_SCALE)

    return ErrorMapSet(xw1=xw1, xw2=xw2, vmap1=vmap1, vmap2=vmap2)


def combine(xw1: np.ndarray, xw2: np.ndarray) -> np.ndarray:
    """
    Per-pixel min(255, round(sqrt(a² + b²)))

    Raises:
        ValidationError: if the maps differ in shape
    """
    a = np.asarray(xw1, dtype=np.float64)
    b = np.asarray(xw2, dtype=np.float64)
    if a.shape != b.shape:
        raise ValidationError(f"cannot combine maps of shapes {a.shape} and {b.shape}")
    magnitude = np.floor(np.sqrt(a * a + b * b) + 0.5)
    return np.minimum(magnitude, 255).astype(np.uint8)


def authenticate(image, key: SecretKey, q: float = 8.0) -> ErrorMapSet:
    """
    Run extraction and build the complete error map set

    Returns:
        ErrorMapSet: all five maps, xw_comb included
    """
    maps = assemble_maps(extract_state(image, key, q))
    maps.xw_comb = combine(maps.xw1, maps.xw2)
    density = float(np.count_nonzero(maps.xw_comb)) / maps.xw_comb.size
    logger.debug(f"误差图生成完成, xw_comb 非零比例 {density:.4f}")
    return maps


def write_maps(maps: ErrorMapSet, directory: str) -> Dict[str, str]:
    """
    Write every map as an 8-bit grayscale PNG named after it

    Returns:
        Dict[str, str]: map name to written path
    """
    os.makedirs(directory, exist_ok=True)
    written = {}
    for name, grid in maps.as_dict().items():
        path = os.path.join(directory, f"{name}.png")
        write_image(path, grid)
        written[name] = path
    logger.info(f"误差图已写入 {directory}: {', '.join(sorted(written))}")
    return written
