#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Parity quantization embedding

A bit is carried by the parity of the quantizer index of one real
coefficient. Embedding moves the coefficient onto a multiple of q whose
quotient has the bit's parity; extraction rounds and takes the parity,
so any perturbation smaller than q/2 leaves the bit intact.

Author: Dexter
Date: 2025
"""

import numpy as np

from sealkit.core.exceptions import ValidationError


def _check_step(q: float) -> None:
    if not q > 0:
        raise ValidationError(f"quantization step must be positive, got {q}")


def round_half_away(x) -> np.ndarray:
    """Round to nearest integer, ties away from zero."""
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def embed_bit(coef, w, q: float):
    """
    Quantize coef so that its quotient by q has parity w

    With m = ⌊coef/q⌋: returns m·q when m mod 2 = w, else (m+1)·q.
    Works elementwise on arrays.

    Args:
        coef: real coefficient(s)
        w: bit(s) in {0, 1}
        q (float): quantization step, q > 0

    Returns:
        float or np.ndarray: watermarked coefficient(s)
    """
    _check_step(q)
    m = np.floor(np.asarray(coef, dtype=np.float64) / q)
    parity = np.mod(m, 2)
    out = np.where(parity == np.asarray(w), m, m + 1) * q
    return float(out) if out.ndim == 0 else out


def extract_bit(coef, q: float):
    """Return round(coef/q) mod 2 with round-half-away-from-zero."""
    _check_step(q)
    index = round_half_away(np.asarray(coef, dtype=np.float64) / q)
    bits = np.mod(index, 2).astype(np.int8)
    return int(bits) if bits.ndim == 0 else bits
