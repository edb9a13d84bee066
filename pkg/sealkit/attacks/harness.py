#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Attack harness

JPEG recompression through Pillow's baseline encoder, object insertion
from a donor image, and PSNR.

Author: Dexter
Date: 2025
"""

import io
import logging
import math

import numpy as np
from PIL import Image

from sealkit.core.config import config
from sealkit.core.exceptions import ImageIOError, ValidationError
from sealkit.core.imageio import read_image
from sealkit.core.models import AttackSpec, Rect, as_gray_image


# 配置日志
logger = logging.getLogger(__name__)


def _check_quality(qf: int) -> None:
    if not 1 <= int(qf) <= 100:
        raise ValidationError(f"JPEG quality factor must lie in [1, 100], got {qf}")


def encode_jpeg(image, qf: int) -> bytes:
    """
    Encode a GrayImage as a baseline grayscale JPEG stream

    Raises:
        ValidationError: if qf is outside [1, 100]
        ImageIOError: if the codec fails
    """
    _check_quality(qf)
    buffer = io.BytesIO()
    try:
        Image.fromarray(as_gray_image(image)).save(buffer, format='JPEG', quality=int(qf))
    except (OSError, ValueError) as e:
        raise ImageIOError(f"JPEG encoding failed at QF {qf}: {e}") from e
    return buffer.getvalue()


def decode_jpeg(data: bytes) -> np.ndarray:
    try:
        with Image.open(io.BytesIO(data)) as img:
            return np.asarray(img.convert('L'), dtype=np.uint8).copy()
    except (OSError, ValueError) as e:
        raise ImageIOError(f"JPEG decoding failed: {e}") from e


def jpeg_roundtrip(image, qf: int) -> np.ndarray:
    """
    Compress at quality qf and decode again

    Args:
        image: GrayImage
        qf (int): JPEG quality factor in [1, 100]

    Returns:
        np.ndarray: decoded GrayImage with the same dimensions
    """
    decoded = decode_jpeg(encode_jpeg(image, qf))
    logger.debug(f"JPEG 压缩完成: QF={qf}")
    return decoded


def object_insert(target, donor, rect: Rect) -> np.ndarray:
    """
    Replace the pixels inside rect with the donor's pixels at the same place

    Raises:
        ValidationError: if rect does not fit both images
    """
    base = as_gray_image(target)
    source = as_gray_image(donor)
    height, width = base.shape
    if not rect.fits(width, height) or not rect.fits(source.shape[1], source.shape[0]):
        raise ValidationError(
            f"rect {rect.x},{rect.y},{rect.width},{rect.height} does not fit "
            f"{width}x{height} target and {source.shape[1]}x{source.shape[0]} donor"
        )
    result = base.copy()
    rows = slice(rect.y, rect.y + rect.height)
    cols = slice(rect.x, rect.x + rect.width)
    result[rows, cols] = source[rows, cols]
    return result


def default_rect(width: int, height: int) -> Rect:
    """Centered rectangle covering TAMPER_AREA_FRACTION of the frame, same aspect ratio."""
    scale = math.sqrt(config.TAMPER_AREA_FRACTION)
    w = max(1, int(round(width * scale)))
    h = max(1, int(round(height * scale)))
    return Rect(x=(width - w) // 2, y=(height - h) // 2, width=w, height=h)


def apply_attack(image, spec: AttackSpec, donor=None) -> np.ndarray:
    """
    Apply one AttackSpec

    Args:
        image: watermarked GrayImage
        spec (AttackSpec): attack description
        donor: donor GrayImage for insertion kinds, read from spec.donor when omitted

    Raises:
        ValidationError: if an insertion kind has neither a donor image nor a donor path
        ImageIOError: if spec.donor cannot be read
    """
    if spec.kind == 'none':
        return as_gray_image(image).copy()
    if spec.kind == 'jpeg':
        return jpeg_roundtrip(image, spec.qf)
    if donor is None:
        if spec.donor is None:
            raise ValidationError(f"attack {spec.name} needs a donor image")
        donor = read_image(spec.donor)
    inserted = object_insert(image, donor, spec.rect)
    if spec.kind == 'insert_then_jpeg':
        return jpeg_roundtrip(inserted, spec.qf)
    return inserted


def psnr(a, b) -> float:
    """
    Peak signal-to-noise ratio in dB

    Returns:
        float: 10·log10(255² / MSE), or inf for identical images

    Raises:
        ValidationError: if the images differ in size
    """
    x = np.asarray(a, dtype=np.float64)
    y = np.asarray(b, dtype=np.float64)
    if x.shape != y.shape:
        raise ValidationError(f"PSNR needs equal dimensions, got {x.shape} and {y.shape}")
    mse = float(np.mean((x - y) ** 2))
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(255.0 ** 2 / mse)
