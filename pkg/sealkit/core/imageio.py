#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Grayscale image reading and writing

Reads binary PGM (P5, maxval 255), PNG and JPEG through Pillow and
returns 2-D uint8 arrays. Color inputs are converted with the BT.601
integer luminance round(0.299R + 0.587G + 0.114B); 16-bit and float
inputs are rejected. Writes PGM and PNG losslessly.

Author: Dexter
Date: 2025
"""

import logging
import os

import numpy as np
from PIL import Image, UnidentifiedImageError

from sealkit.core.exceptions import ImageIOError
from sealkit.core.models import as_gray_image


# 配置日志
logger = logging.getLogger(__name__)

WRITE_FORMATS = {
    '.pgm': 'PPM',
    '.png': 'PNG',
}
COLOR_MODES = ('RGB', 'RGBA', 'RGBX', 'P', 'PA', 'CMYK', 'YCbCr', 'LAB', 'HSV')
WIDE_MODES = ('I', 'F', 'I;16', 'I;16B', 'I;16L', 'I;16N')


def _luminance(rgb: np.ndarray) -> np.ndarray:
    r, g, b = (rgb[..., c].astype(np.float64) for c in range(3))
    return np.floor(0.299 * r + 0.587 * g + 0.114 * b + 0.5).clip(0, 255).astype(np.uint8)


def read_image(path: str) -> np.ndarray:
    """
    Read an image file as a GrayImage

    Args:
        path (str): PGM, PNG or JPEG file

    Returns:
        np.ndarray: 2-D uint8 array (height, width)

    Raises:
        ImageIOError: if the file is missing, undecodable or has 16-bit/float samples
    """
    if not os.path.isfile(path):
        raise ImageIOError(f"{path}: no such image file")
    try:
        with Image.open(path) as img:
            img.load()
            mode = img.mode
            if mode in WIDE_MODES:
                raise ImageIOError(f"{path}: {mode} images are not supported, only 8-bit samples")
            if mode == 'L':
                array = np.asarray(img, dtype=np.uint8).copy()
            elif mode in ('1', 'LA'):
                array = np.asarray(img.convert('L'), dtype=np.uint8).copy()
            elif mode in COLOR_MODES:
                array = _luminance(np.asarray(img.convert('RGB')))
                logger.debug(f"{path}: {mode} 图像已转换为灰度")
            else:
                raise ImageIOError(f"{path}: unsupported pixel mode {mode}")
            source_format = img.format
    except ImageIOError:
        raise
    except UnidentifiedImageError as e:
        raise ImageIOError(f"{path}: not a PGM, PNG or JPEG image") from e
    except (OSError, ValueError, SyntaxError) as e:
        raise ImageIOError(f"{path}: malformed image data ({e})") from e

    logger.debug(f"读取图像 {path}: {source_format} {array.shape[1]}x{array.shape[0]}")
    return array


def write_image(path: str, image) -> None:
    """
    Write a GrayImage as PGM (P5) or PNG, chosen by extension

    Raises:
        ImageIOError: for unsupported extensions or unwritable paths
    """
    extension = os.path.splitext(path)[1].lower()
    image_format = WRITE_FORMATS.get(extension)
    if image_format is None:
        raise ImageIOError(f"{path}: output must be .pgm or .png")
    try:
        array = as_gray_image(image)
    except ValueError as e:
        raise ImageIOError(f"{path}: {e}") from e
    try:
        Image.fromarray(array).save(path, format=image_format)
    except OSError as e:
        raise ImageIOError(f"{path}: cannot write image ({e})") from e
