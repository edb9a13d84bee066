#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Labeled attack corpus

Embeds every source image, applies the four-class attack grid, verifies
each variant and writes a features CSV plus a `path,label` CSV that
train and crossval join by path.

Author: Dexter
Date: 2025
"""

import csv
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from sealkit.attacks.harness import apply_attack, default_rect, psnr
from sealkit.core.config import config
from sealkit.core.exceptions import SealkitIOError, ValidationError
from sealkit.core.imageio import read_image
from sealkit.core.models import AttackSpec, ClassLabel, FeatureVector, Rect, SecretKey
from sealkit.verification.authenticator import authenticate
from sealkit.verification.features import feature_vector, read_feature_rows, write_feature_rows
from sealkit.watermark.pipeline import embed


# 配置日志
logger = logging.getLogger(__name__)

LABEL_HEADER = ['path', 'label']
IMAGE_EXTENSIONS = ('.pgm', '.png', '.jpg', '.jpeg')


def attack_grid(rect: Rect) -> List[Tuple[AttackSpec, ClassLabel]]:
    """
    The fourteen labeled variants produced for every source image

    Class 1: untouched and QF100. Class 2: JPEG at each configured quality.
    Class 3: insertion and insertion+QF100. Class 4: insertion then JPEG.
    """
    clean = config.CLEAN_QUALITY
    grid = [
        (AttackSpec(kind='none'), ClassLabel.CLEAN),
        (AttackSpec(kind='jpeg', qf=clean), ClassLabel.CLEAN),
    ]
    grid += [(AttackSpec(kind='jpeg', qf=qf), ClassLabel.UNINTENTIONAL) for qf in config.JPEG_QUALITIES]
    grid += [
        (AttackSpec(kind='insert', rect=rect), ClassLabel.INTENTIONAL),
        (AttackSpec(kind='insert_then_jpeg', qf=clean, rect=rect), ClassLabel.INTENTIONAL),
    ]
    grid += [(AttackSpec(kind='insert_then_jpeg', qf=qf, rect=rect), ClassLabel.BOTH)
             for qf in config.JPEG_QUALITIES]
    return grid


@dataclass
class SourceResult:
    """Rows and timings produced for one source image."""
    rows: List[Tuple[str, FeatureVector, int]] = field(default_factory=list)
    embed_seconds: float = 0.0
    verify_seconds: List[float] = field(default_factory=list)
    psnr: float = 0.0


def list_images(directory: str) -> List[str]:
    """
    Image files of a directory in sorted order

    Raises:
        SealkitIOError: if the directory does not exist
    """
    if not os.path.isdir(directory):
        raise SealkitIOError(f"{directory}: no such image directory")
    names = sorted(n for n in os.listdir(directory) if n.lower().endswith(IMAGE_EXTENSIONS))
    return [os.path.join(directory, n) for n in names]


def _process_source(index: int, paths: Sequence[str], key: SecretKey, q: float,
                    rect: Optional[Rect]) -> SourceResult:
    path = paths[index]
    source = read_image(path)
    if len(paths) > 1:
        donor = read_image(paths[(index + 1) % len(paths)])
    else:
        donor = np.fliplr(source).copy()

    result = SourceResult()
    started = time.perf_counter()
    marked = embed(source, key, q)
    result.embed_seconds = time.perf_counter() - started
    result.psnr = psnr(source, marked)

    height, width = marked.shape
    for spec, label in attack_grid(rect or default_rect(width, height)):
        attacked = apply_attack(marked, spec, donor)
        started = time.perf_counter()
        features = feature_vector(authenticate(attacked, key, q))
        result.verify_seconds.append(time.perf_counter() - started)
        result.rows.append((f"{path}#{spec.name}", features, int(label)))
    return result


def build_corpus(paths: Sequence[str], key: SecretKey, out_csv: str,
                 labels_csv: Optional[str] = None, q: Optional[float] = None,
                 rect: Optional[Rect] = None, workers: int = 1) -> int:
    """
    Generate, verify and label the attack corpus

    Args:
        paths: source image files
        key (SecretKey): embedding key
        out_csv (str): features CSV to write
        labels_csv (Optional[str]): labels CSV, default `<out-stem>.labels.csv`
        q (Optional[float]): quantization step, default from config.get_quantization_step
        rect (Optional[Rect]): tamper rectangle, default centered 1/16 of the area
        workers (int): process pool size; 1 runs in-process

    Returns:
        int: number of labeled rows written
    """
    q = config.get_quantization_step(q)
    if workers < 1:
        raise ValidationError(f"workers must be at least 1, got {workers}")
    labels_csv = labels_csv or default_labels_path(out_csv)

    if workers > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_process_source, i, paths, key, q, rect) for i in range(len(paths))]
            results = [future.result() for future in futures]
    else:
        results = [_process_source(i, paths, key, q, rect) for i in range(len(paths))]

    rows = [row for result in results for row in result.rows]
    write_feature_rows(out_csv, [(name, features) for name, features, _ in rows])
    write_labels(labels_csv, [(name, label) for name, _, label in rows])

    if results:
        verify_times = [t for result in results for t in result.verify_seconds]
        logger.info(
            f"语料生成完成: {len(paths)} 张源图, {len(rows)} 行; "
            f"平均嵌入 {np.mean([r.embed_seconds for r in results]):.3f}s, "
            f"平均验证 {np.mean(verify_times):.3f}s, "
            f"平均 PSNR {np.mean([r.psnr for r in results]):.2f} dB"
        )
    else:
        logger.warning("没有源图像，仅写入表头")
    return len(rows)


def default_labels_path(out_csv: str) -> str:
    return f"{os.path.splitext(out_csv)[0]}.labels.csv"


def write_labels(labels_csv: str, rows: Sequence[Tuple[str, int]]) -> None:
    try:
        with open(labels_csv, 'w', newline='') as handle:
            writer = csv.writer(handle)
            writer.writerow(LABEL_HEADER)
            writer.writerows([name, int(label)] for name, label in rows)
    except OSError as e:
        logger.error(f"写入标签文件失败: {e}")
        raise SealkitIOError(f"cannot write labels to {labels_csv}: {e}") from e


def read_labels(labels_csv: str) -> Dict[str, int]:
    """
    Read a `path,label` CSV

    Raises:
        SealkitIOError: if the file is missing or its header is wrong
        ValidationError: if a label is not one of 1..4
    """
    try:
        with open(labels_csv, newline='') as handle:
            reader = csv.reader(handle)
            if next(reader, None) != LABEL_HEADER:
                raise SealkitIOError(f"{labels_csv}: expected header {','.join(LABEL_HEADER)}")
            labels = {}
            for line_no, row in enumerate(reader, start=2):
                if not row:
                    continue
                try:
                    labels[row[0]] = int(ClassLabel(int(row[1])))
                except (ValueError, IndexError) as e:
                    raise ValidationError(f"{labels_csv}:{line_no}: bad label row: {e}") from e
            return labels
    except SealkitIOError:
        raise
    except OSError as e:
        raise SealkitIOError(f"cannot read labels from {labels_csv}: {e}") from e


def load_samples(features_csv: str, labels_csv: str) -> List[Tuple[List[float], int]]:
    """
    Join a features CSV with a labels CSV by path

    Returns:
        List[Tuple[List[float], int]]: (classifier inputs, label) in features order

    Raises:
        ValidationError: if a feature row has no label
    """
    labels = read_labels(labels_csv)
    samples = []
    for path, features in read_feature_rows(features_csv):
        if path not in labels:
            raise ValidationError(f"{features_csv}: no label for {path}")
        samples.append((features.classifier_inputs(), labels[path]))
    logger.debug(f"加载样本 {len(samples)} 个")
    return samples
