#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tamper localization from the combined error map

The EDDE5-filtered xw_comb is thresholded and the largest 4-connected
component is taken as the tampered region.

Author: Dexter
Date: 2025
"""

import logging
from typing import Optional

import numpy as np
from scipy import ndimage

from sealkit.core.config import config
from sealkit.core.exceptions import ValidationError
from sealkit.core.models import Rect
from sealkit.verification.authenticator import ErrorMapSet, combine
from sealkit.verification.features import edde5


# 配置日志
logger = logging.getLogger(__name__)

FOUR_CONNECTED = ndimage.generate_binary_structure(2, 1)


def tamper_mask(maps: ErrorMapSet, threshold: Optional[int] = None) -> np.ndarray:
    """
    Largest connected region of the thresholded, filtered combined map

    Args:
        maps (ErrorMapSet): error maps; xw_comb is computed when missing
        threshold (Optional[int]): pixels >= threshold count as tampered,
            default config.LOCALIZATION_THRESHOLD

    Returns:
        np.ndarray: boolean mask of the image's shape, all False when nothing passes
    """
    threshold = config.LOCALIZATION_THRESHOLD if threshold is None else threshold
    combined = maps.xw_comb if maps.xw_comb is not None else combine(maps.xw1, maps.xw2)
    binary = edde5(combined) >= threshold
    labeled, count = ndimage.label(binary, structure=FOUR_CONNECTED)
    if count == 0:
        return np.zeros(binary.shape, dtype=bool)
    sizes = np.bincount(labeled.ravel())
    sizes[0] = 0
    return labeled == int(np.argmax(sizes))


def bounding_rect(mask: np.ndarray) -> Optional[Rect]:
    """Smallest Rect holding every True pixel, or None for an empty mask."""
    rows = np.flatnonzero(mask.any(axis=1))
    cols = np.flatnonzero(mask.any(axis=0))
    if rows.size == 0:
        return None
    return Rect(x=int(cols[0]), y=int(rows[0]),
                width=int(cols[-1] - cols[0] + 1), height=int(rows[-1] - rows[0] + 1))


def rect_mask(rect: Rect, shape) -> np.ndarray:
    """
    Boolean mask of rect inside an image of the given (height, width)

    Raises:
        ValidationError: if rect does not fit
    """
    height, width = shape
    if not rect.fits(width, height):
        raise ValidationError(f"rect {rect.x},{rect.y},{rect.width},{rect.height} does not fit {width}x{height}")
    mask = np.zeros((height, width), dtype=bool)
    mask[rect.y:rect.y + rect.height, rect.x:rect.x + rect.width] = True
    return mask


def iou(mask: np.ndarray, rect: Rect) -> float:
    """Intersection over union of a mask and a rectangle; 0 when both are empty."""
    truth = rect_mask(rect, mask.shape)
    union = np.count_nonzero(mask | truth)
    if union == 0:
        return 0.0
    return np.count_nonzero(mask & truth) / union


def localize(maps: ErrorMapSet, threshold: Optional[int] = None) -> Optional[Rect]:
    """Bounding rectangle of the suspected tampered region, None for a clean map."""
    region = bounding_rect(tamper_mask(maps, threshold))
    if region is None:
        logger.debug("未检测到篡改区域")
    else:
        logger.debug(f"篡改区域: x={region.x}, y={region.y}, {region.width}x{region.height}")
    return region
