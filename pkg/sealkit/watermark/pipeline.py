#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Two-part watermark generation, embedding and extraction

Part 1 is generated from the averages of the 8×8 blocks and carried by
4×4 blocks chosen with k2. Part 2 is generated from virtual 8×8 blocks
(four consecutive 4×4 blocks, read after part 1 is embedded) and carried
by quadrants of the 8×8 blocks chosen with k3. Each bit is written three
times per carrier, into LL_LL, LL_HL and LL_LH.

Author: Dexter
Date: 2025
"""

import logging
import time
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from sealkit.core.exceptions import ValidationError
from sealkit.core.models import (
    BlockRef, ExtractionResult, Partition, SecretKey, WatermarkPayload, as_gray_image,
)
from sealkit.watermark.keyed_random import keyed_permutation, seed_stream
from sealkit.watermark.lwt import analyze_block, synthesize_block
from sealkit.watermark.partitioner import block_origins, partition, quadrants
from sealkit.watermark.qim import embed_bit, extract_bit, round_half_away


# 配置日志
logger = logging.getLogger(__name__)

INTERVAL_WIDTH = 16
GRAY_SHIFTS = np.array([3, 2, 1, 0])


def gray_code_4bit(v: int) -> Tuple[int, int, int, int]:
    """
    Four-bit gray code of an interval index, most significant bit first

    Raises:
        ValidationError: if v is outside [0, 15]
    """
    if not 0 <= v <= 15:
        raise ValidationError(f"gray code index must lie in [0, 15], got {v}")
    g = v ^ (v >> 1)
    return tuple((g >> shift) & 1 for shift in (3, 2, 1, 0))


def block_bits(pixels: Sequence[float]) -> Tuple[int, int, int, int]:
    """
    Gray-coded interval of the average of a (real or virtual) 8×8 block

    The last interval [240, 255] is closed, so an average of 255 maps to
    index 15.

    Raises:
        ValidationError: if no pixels are given
    """
    samples = np.asarray(pixels, dtype=np.float64)
    if samples.size == 0:
        raise ValidationError("block_bits requires at least one pixel")
    index = min(int(samples.mean() // INTERVAL_WIDTH), 15)
    return gray_code_4bit(index)


def _bits_from_means(means: np.ndarray) -> np.ndarray:
    index = np.clip(np.floor(means / INTERVAL_WIDTH), 0, 15).astype(np.int64)
    gray = index ^ (index >> 1)
    return ((gray[:, None] >> GRAY_SHIFTS) & 1).astype(np.int8)


def _gather(image: np.ndarray, origins: np.ndarray, size: int) -> np.ndarray:
    offsets = np.arange(size)
    rows = origins[:, 0, None] + offsets
    cols = origins[:, 1, None] + offsets
    return image[rows[:, :, None], cols[:, None, :]]


def _scatter(image: np.ndarray, origins: np.ndarray, blocks: np.ndarray) -> None:
    size = blocks.shape[-1]
    offsets = np.arange(size)
    rows = origins[:, 0, None] + offsets
    cols = origins[:, 1, None] + offsets
    image[rows[:, :, None], cols[:, None, :]] = blocks


def _block_means(image: np.ndarray, origins: np.ndarray, size: int) -> np.ndarray:
    if len(origins) == 0:
        return np.zeros(0)
    return _gather(image, origins, size).mean(axis=(1, 2))


def part1_carriers(part: Partition, k2: int) -> List[BlockRef]:
    """First 4m entries of the k2-permuted b4 list."""
    order = keyed_permutation(seed_stream(k2, 'k2'), len(part.b4))
    return [part.b4[order[j]] for j in range(4 * part.m)]


def part2_carriers(part: Partition, k3: int) -> List[BlockRef]:
    """Quadrants of the m payload b8 blocks, permuted with k3."""
    pool = [quad for block in part.b8[:part.m] for quad in quadrants(block)]
    order = keyed_permutation(seed_stream(k3, 'k3'), len(pool))
    return [pool[i] for i in order]


def _part1_bits(image: np.ndarray, part: Partition) -> np.ndarray:
    means = _block_means(image, block_origins(part.b8[:part.m]), 8)
    return _bits_from_means(means).reshape(-1)


def _part2_bits(image: np.ndarray, part: Partition) -> np.ndarray:
    members = block_origins(part.b4[:4 * part.m])
    # a virtual block averages four equally sized 4×4 blocks
    means = _block_means(image, members, 4).reshape(part.m, 4).mean(axis=1)
    return _bits_from_means(means).reshape(-1)


def _embed_into(image: np.ndarray, origins: np.ndarray, bits: np.ndarray, q: float) -> None:
    if len(origins) == 0:
        return
    subbands, carriers = analyze_block(_gather(image, origins, 4))
    marked = carriers.replace(
        ll_ll=embed_bit(carriers.ll_ll, bits, q),
        ll_hl=embed_bit(carriers.ll_hl, bits, q),
        ll_lh=embed_bit(carriers.ll_lh, bits, q),
    )
    _scatter(image, origins, synthesize_block(subbands, marked))


def _extract_from(image: np.ndarray, origins: np.ndarray, q: float) -> np.ndarray:
    if len(origins) == 0:
        return np.zeros((0, 3), dtype=np.int8)
    _, carriers = analyze_block(_gather(image, origins, 4))
    return np.stack([
        extract_bit(carriers.ll_ll, q),
        extract_bit(carriers.ll_hl, q),
        extract_bit(carriers.ll_lh, q),
    ], axis=-1).astype(np.int8)


def generate_payload(image, key: SecretKey, q: float) -> WatermarkPayload:
    """Run the embedding pipeline and report the bits it wrote."""
    _, payload = _embed(as_gray_image(image), key, q)
    return payload


def embed(image, key: SecretKey, q: float = 8.0) -> np.ndarray:
    """
    Embed the two-part watermark

    Args:
        image: GrayImage with dimensions divisible by 8
        key (SecretKey): secret key k1|k2|k3
        q (float): quantization step

    Returns:
        np.ndarray: watermarked GrayImage (uint8)

    Raises:
        GeometryError: if the image cannot be partitioned
    """
    started = time.perf_counter()
    marked, payload = _embed(as_gray_image(image), key, q)
    logger.info(f"水印嵌入完成: {len(payload.part1)}+{len(payload.part2)} 位, "
                f"耗时 {time.perf_counter() - started:.3f}s")
    return marked


def _embed(image: np.ndarray, key: SecretKey, q: float) -> Tuple[np.ndarray, WatermarkPayload]:
    height, width = image.shape
    part = partition(width, height, key.k1)
    work = image.astype(np.float64)

    bits1 = _part1_bits(work, part)
    _embed_into(work, block_origins(part1_carriers(part, key.k2)), bits1, q)

    # part 2 reads the image that already carries part 1
    bits2 = _part2_bits(work, part)
    _embed_into(work, block_origins(part2_carriers(part, key.k3)), bits2, q)

    logger.debug(f"载体块: part1={len(bits1)}, part2={len(bits2)}, q={q}")
    marked = np.clip(round_half_away(work), 0, 255).astype(np.uint8)
    payload = WatermarkPayload(part1=bits1.tolist(), part2=bits2.tolist())
    return marked, payload


@dataclass(frozen=True)
class ExtractionState:
    """Array form of an extraction, with the geometry needed to draw maps."""
    partition: Partition
    carriers1: List[BlockRef]
    carriers2: List[BlockRef]
    reference1: np.ndarray   # (4m,)
    extracted1: np.ndarray   # (4m, 3)
    reference2: np.ndarray   # (4m,)
    extracted2: np.ndarray   # (4m, 3)


def extract_state(image, key: SecretKey, q: float = 8.0) -> ExtractionState:
    """Regenerate reference bits and read the three copies from every carrier."""
    received = as_gray_image(image)
    height, width = received.shape
    part = partition(width, height, key.k1)
    work = received.astype(np.float64)

    carriers1 = part1_carriers(part, key.k2)
    carriers2 = part2_carriers(part, key.k3)
    return ExtractionState(
        partition=part,
        carriers1=carriers1,
        carriers2=carriers2,
        reference1=_part1_bits(work, part),
        extracted1=_extract_from(work, block_origins(carriers1), q),
        reference2=_part2_bits(work, part),
        extracted2=_extract_from(work, block_origins(carriers2), q),
    )


def extract(image, key: SecretKey, q: float = 8.0) -> ExtractionResult:
    """
    Extract both watermark parts from a received image

    Returns:
        ExtractionResult: extracted bit triples and regenerated reference bits
    """
    started = time.perf_counter()
    state = extract_state(image, key, q)
    result = ExtractionResult(
        part1_extracted=[tuple(t) for t in state.extracted1.tolist()],
        part2_extracted=[tuple(t) for t in state.extracted2.tolist()],
        part1_reference=state.reference1.tolist(),
        part2_reference=state.reference2.tolist(),
    )
    logger.info(f"水印提取完成, 耗时 {time.perf_counter() - started:.3f}s")
    return result
