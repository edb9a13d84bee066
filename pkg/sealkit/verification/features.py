#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Morphological filtering and energy features

EDDE5 (erosion, dilation, dilation, erosion with a 5×5 square window)
removes scattered error pixels and keeps concentrated regions; the
average pixel energy of raw and filtered maps gives features f1..f9.

Author: Dexter
Date: 2025
"""

import csv
import logging
import os
from typing import List

import numpy as np
from scipy import ndimage

from sealkit.core.config import config
from sealkit.core.exceptions import SealkitIOError, ValidationError
from sealkit.core.models import FeatureVector
from sealkit.verification.authenticator import ErrorMapSet, combine


# 配置日志
logger = logging.getLogger(__name__)

FEATURE_HEADER = ['path', 'f1', 'f2', 'f3', 'f4', 'f5', 'f6', 'f7', 'f8', 'f9']


def _check_window(w: int) -> None:
    if w < 1 or w % 2 == 0:
        raise ValidationError(f"morphology window must be odd and positive, got {w}")


def erode(grid: np.ndarray, w: int = 5) -> np.ndarray:
    """Per-pixel minimum over the w×w neighborhood, borders replicated."""
    _check_window(w)
    return ndimage.grey_erosion(np.asarray(grid), size=(w, w), mode='nearest')


def dilate(grid: np.ndarray, w: int = 5) -> np.ndarray:
    """Per-pixel maximum over the w×w neighborhood, borders replicated."""
    _check_window(w)
    return ndimage.grey_dilation(np.asarray(grid), size=(w, w), mode='nearest')


def edde5(grid: np.ndarray, w: int = None) -> np.ndarray:
    w = w or config.MORPHOLOGY_WINDOW
    return erode(dilate(dilate(erode(grid, w), w), w), w)


def energy(grid: np.ndarray) -> float:
    """
    Average pixel energy Σp² / (rows·cols)

    Raises:
        ValidationError: if the map is empty
    """
    values = np.asarray(grid, dtype=np.float64)
    if values.size == 0:
        raise ValidationError("energy of an empty map is undefined")
    return float(np.mean(values * values))


def feature_vector(maps: ErrorMapSet) -> FeatureVector:
    """
    Compute f1..f9 from a complete map set

    xw_comb is derived from xw1 and xw2 when the set does not carry it.
    """
    xw_comb = maps.xw_comb if maps.xw_comb is not None else combine(maps.xw1, maps.xw2)
    return FeatureVector(
        f1=energy(maps.xw1),
        f2=energy(maps.xw2),
        f3=energy(edde5(maps.xw1)),
        f4=energy(edde5(maps.xw2)),
        f5=energy(maps.vmap2),
        f6=energy(edde5(maps.vmap2)),
        f7=energy(maps.vmap1),
        f8=energy(edde5(maps.vmap1)),
        f9=energy(edde5(xw_comb)),
    )


def append_feature_row(csv_path: str, image_path: str, features: FeatureVector) -> None:
    """
    Append one `path,f1..f9` row, writing the header when the file is new

    Raises:
        SealkitIOError: if the file cannot be written
    """
    is_new = not os.path.exists(csv_path) or os.path.getsize(csv_path) == 0
    try:
        with open(csv_path, 'a', newline='') as handle:
            writer = csv.writer(handle)
            if is_new:
                writer.writerow(FEATURE_HEADER)
            writer.writerow([image_path] + [repr(value) for value in features.as_list()])
    except OSError as e:
        logger.error(f"写入特征文件失败: {e}")
        raise SealkitIOError(f"cannot write features to {csv_path}: {e}") from e


def write_feature_rows(csv_path: str, rows: List[tuple]) -> None:
    """
    Write a complete features CSV (header plus one row per (path, FeatureVector))

    Raises:
        SealkitIOError: if the file cannot be written
    """
    try:
        with open(csv_path, 'w', newline='') as handle:
            writer = csv.writer(handle)
            writer.writerow(FEATURE_HEADER)
            for image_path, features in rows:
                writer.writerow([image_path] + [repr(value) for value in features.as_list()])
    except OSError as e:
        logger.error(f"写入特征文件失败: {e}")
        raise SealkitIOError(f"cannot write features to {csv_path}: {e}") from e


def read_feature_rows(csv_path: str) -> List[tuple]:
    """
    Read a features CSV into (path, FeatureVector) pairs

    Raises:
        SealkitIOError: if the file is missing or its header is wrong
        ValidationError: if a row cannot be parsed
    """
    try:
        with open(csv_path, newline='') as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header != FEATURE_HEADER:
                raise SealkitIOError(f"{csv_path}: expected header {','.join(FEATURE_HEADER)}")
            rows = []
            for line_no, row in enumerate(reader, start=2):
                if not row:
                    continue
                try:
                    values = [float(v) for v in row[1:]]
                    rows.append((row[0], FeatureVector(**dict(zip(FEATURE_HEADER[1:], values)))))
                except (ValueError, TypeError) as e:
                    raise ValidationError(f"{csv_path}:{line_no}: bad feature row: {e}") from e
            return rows
    except SealkitIOError:
        raise
    except OSError as e:
        raise SealkitIOError(f"cannot read features from {csv_path}: {e}") from e
