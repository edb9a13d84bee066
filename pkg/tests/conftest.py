#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Shared pytest fixtures

Synthetic natural-looking grayscale images (smoothed noise, scaled to
[20, 235] so embedding never clamps), crops of the scikit-image sample
photographs, and a fixed secret key.

Author: Dexter
Date: 2025
"""

import numpy as np
import pytest
from PIL import Image
from scipy.ndimage import gaussian_filter

from sealkit.attacks.corpus import build_corpus, default_labels_path, list_images
from sealkit.core.imageio import read_image, write_image
from sealkit.core.models import SecretKey


KEY_HEX = '0123456789abcdef' 'fedcba9876543210' '0f1e2d3c4b5a6978'


def natural_image(size: int, seed: int) -> np.ndarray:
    """Smooth structure plus fine texture, spanning most of the 8-bit range."""
    rng = np.random.default_rng(seed)
    coarse = gaussian_filter(rng.normal(size=(size, size)), sigma=size / 16)
    fine = gaussian_filter(rng.normal(size=(size, size)), sigma=1.0)
    field = coarse / coarse.std() + 0.25 * fine / fine.std()
    field = (field - field.min()) / (field.max() - field.min())
    return np.round(20 + 215 * field).astype(np.uint8)


@pytest.fixture
def key() -> SecretKey:
    return SecretKey.from_hex(KEY_HEX)


@pytest.fixture
def key_hex() -> str:
    return KEY_HEX


@pytest.fixture
def image() -> np.ndarray:
    return natural_image(128, seed=7)


@pytest.fixture
def large_image() -> np.ndarray:
    return natural_image(256, seed=11)


@pytest.fixture
def image_dir(tmp_path):
    """Directory holding two small PNG source images."""
    directory = tmp_path / 'images'
    directory.mkdir()
    for index in range(2):
        write_image(str(directory / f"src{index}.png"), natural_image(64, seed=100 + index))
    return directory


PHOTO_SOURCES = ('camera', 'astronaut', 'coffee', 'chelsea', 'moon', 'brick', 'grass', 'gravel')
PHOTO_SIZE = 256
CROPS_PER_PHOTO = 6


def photo_crops():
    """
    256×256 crops of the scikit-image sample photographs

    Crops are taken on a 128-pixel stride, at most CROPS_PER_PHOTO per
    photograph, and interleaved so neighbouring entries come from
    different photographs.
    """
    data = pytest.importorskip('skimage.data')
    per_source = []
    for name in PHOTO_SOURCES:
        try:
            photo = np.asarray(getattr(data, name)(), dtype=np.uint8)
        except Exception:
            continue
        height, width = photo.shape[:2]
        crops = [
            photo[y:y + PHOTO_SIZE, x:x + PHOTO_SIZE]
            for y in range(0, height - PHOTO_SIZE + 1, PHOTO_SIZE // 2)
            for x in range(0, width - PHOTO_SIZE + 1, PHOTO_SIZE // 2)
        ]
        per_source.append((name, crops[:CROPS_PER_PHOTO]))

    ordered = []
    for index in range(CROPS_PER_PHOTO):
        ordered += [(f"{name}{index}", crops[index]) for name, crops in per_source if index < len(crops)]
    return ordered


@pytest.fixture(scope='session')
def photo_dir(tmp_path_factory):
    """Directory of PNG photograph crops, file names sorted in interleaved order."""
    crops = photo_crops()
    if len(crops) < 10:
        pytest.skip("scikit-image sample photographs unavailable")
    directory = tmp_path_factory.mktemp('photos')
    for position, (name, crop) in enumerate(crops):
        Image.fromarray(np.ascontiguousarray(crop)).save(str(directory / f"{position:03d}_{name}.png"))
    return directory


@pytest.fixture(scope='session')
def photos(photo_dir):
    """Grayscale photograph crops as read by the toolkit."""
    return [read_image(str(path)) for path in sorted(photo_dir.glob('*.png'))]


@pytest.fixture(scope='session')
def photo_corpus(photo_dir, tmp_path_factory):
    """Labeled corpus built from the photograph crops: (features CSV, labels CSV)."""
    out = str(tmp_path_factory.mktemp('photo_corpus') / 'corpus.csv')
    build_corpus(list_images(str(photo_dir)), SecretKey.from_hex(KEY_HEX), out, workers=4)
    return out, default_labels_path(out)
