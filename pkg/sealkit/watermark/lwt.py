#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Two-level lifting wavelet transform on 4×4 blocks

Level 1 splits a 4×4 block into the 2×2 subbands LL, HL, LH, HH with a
mean/difference lifting step (predict d = b - a, update s = a + d/2).
Level 2 applies the same step to LL, HL and LH and keeps the single
s-of-s coefficient of each as a carrier. Every function accepts a stack
of blocks with shape (..., 4, 4) so whole carrier sets are transformed
at once.

Author: Dexter
Date: 2025
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from sealkit.core.exceptions import ValidationError


def lift_pair(a, b) -> Tuple[np.ndarray, np.ndarray]:
    """Forward lifting step: d = b - a, s = a + d/2 (pair mean and difference)."""
    d = np.subtract(b, a)
    s = np.add(a, d / 2.0)
    return s, d


def inverse_lift(s, d) -> Tuple[np.ndarray, np.ndarray]:
    """Inverse lifting step: a = s - d/2, b = s + d/2."""
    a = np.subtract(s, np.divide(d, 2.0))
    b = np.add(s, np.divide(d, 2.0))
    return a, b


@dataclass(frozen=True)
class Level2:
    """Second-level decomposition of one 2×2 subband."""
    s: np.ndarray        # (...,) carrier coefficient
    row_d: np.ndarray    # (..., 2) per-row differences
    col_d: np.ndarray    # (...,) difference of the two row means


@dataclass(frozen=True)
class SubbandSet:
    """
    Level-1 subbands of a stack of 4×4 blocks plus level-2 state

    ll, hl, lh, hh have shape (..., 2, 2). The level-2 decompositions of
    ll, hl and lh hold everything synthesis needs besides the carriers.
    """
    ll: np.ndarray
    hl: np.ndarray
    lh: np.ndarray
    hh: np.ndarray
    ll2: Level2
    hl2: Level2
    lh2: Level2


@dataclass(frozen=True)
class CarrierTriple:
    """The three embedding coefficients LL_LL, LL_HL, LL_LH."""
    ll_ll: np.ndarray
    ll_hl: np.ndarray
    ll_lh: np.ndarray

    def replace(self, ll_ll=None, ll_hl=None, ll_lh=None) -> "CarrierTriple":
        return CarrierTriple(
            ll_ll=self.ll_ll if ll_ll is None else np.asarray(ll_ll, dtype=np.float64),
            ll_hl=self.ll_hl if ll_hl is None else np.asarray(ll_hl, dtype=np.float64),
            ll_lh=self.ll_lh if ll_lh is None else np.asarray(ll_lh, dtype=np.float64),
        )


def _analyze_2x2(band: np.ndarray) -> Level2:
    s_rows, row_d = lift_pair(band[..., :, 0], band[..., :, 1])
    s, col_d = lift_pair(s_rows[..., 0], s_rows[..., 1])
    return Level2(s=s, row_d=row_d, col_d=col_d)


def _synthesize_2x2(s: np.ndarray, level: Level2) -> np.ndarray:
    s0, s1 = inverse_lift(s, level.col_d)
    s_rows = np.stack([s0, s1], axis=-1)
    a, b = inverse_lift(s_rows, level.row_d)
    return np.stack([a, b], axis=-1)


def analyze_block(block) -> Tuple[SubbandSet, CarrierTriple]:
    """
    Two-level analysis of one 4×4 block or a stack of them

    Args:
        block: real array with shape (..., 4, 4)

    Returns:
        Tuple[SubbandSet, CarrierTriple]: synthesis state and carriers

    Raises:
        ValidationError: if the trailing shape is not 4×4
    """
    x = np.asarray(block, dtype=np.float64)
    if x.ndim < 2 or x.shape[-2:] != (4, 4):
        raise ValidationError(f"analyze_block expects (..., 4, 4), got shape {x.shape}")

    # rows: horizontal pairs
    s_r, d_r = lift_pair(x[..., :, 0::2], x[..., :, 1::2])
    # columns: vertical pairs
    ll, lh = lift_pair(s_r[..., 0::2, :], s_r[..., 1::2, :])
    hl, hh = lift_pair(d_r[..., 0::2, :], d_r[..., 1::2, :])

    ll2 = _analyze_2x2(ll)
    hl2 = _analyze_2x2(hl)
    lh2 = _analyze_2x2(lh)
    subbands = SubbandSet(ll=ll, hl=hl, lh=lh, hh=hh, ll2=ll2, hl2=hl2, lh2=lh2)
    carriers = CarrierTriple(ll_ll=ll2.s, ll_hl=hl2.s, ll_lh=lh2.s)
    return subbands, carriers


def synthesize_block(subbands: SubbandSet, carriers: CarrierTriple) -> np.ndarray:
    """
    Exact inverse of analyze_block with possibly modified carriers

    Shifting ll_ll by δ shifts every pixel of the block by δ; shifting
    ll_hl or ll_lh leaves the block mean unchanged.

    Returns:
        np.ndarray: real array with shape (..., 4, 4)
    """
    ll = _synthesize_2x2(np.asarray(carriers.ll_ll, dtype=np.float64), subbands.ll2)
    hl = _synthesize_2x2(np.asarray(carriers.ll_hl, dtype=np.float64), subbands.hl2)
    lh = _synthesize_2x2(np.asarray(carriers.ll_lh, dtype=np.float64), subbands.lh2)
    hh = subbands.hh

    shape = ll.shape[:-2] + (4, 4)
    s_r = np.empty(ll.shape[:-2] + (4, 2))
    d_r = np.empty(ll.shape[:-2] + (4, 2))
    s_r[..., 0::2, :], s_r[..., 1::2, :] = inverse_lift(ll, lh)
    d_r[..., 0::2, :], d_r[..., 1::2, :] = inverse_lift(hl, hh)

    block = np.empty(shape)
    block[..., :, 0::2], block[..., :, 1::2] = inverse_lift(s_r, d_r)
    return block
