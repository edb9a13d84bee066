#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Pydantic models for domain types

This module contains all Pydantic models shared between the watermark,
verification, classification and attack modules, plus the GrayImage
validation helper (images themselves stay plain numpy arrays).

Author: Dexter
Date: 2025
"""

import re
from enum import IntEnum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


MAX_U64 = (1 << 64) - 1
KEY_HEX_LENGTH = 48
HEX_KEY_PATTERN = re.compile(f"[0-9a-fA-F]{{{KEY_HEX_LENGTH}}}")


def as_gray_image(image) -> np.ndarray:
    """
    Validate and normalize a GrayImage

    Args:
        image: array-like of 8-bit luminance samples

    Returns:
        np.ndarray: 2-D uint8 array (height, width)

    Raises:
        ValueError: if the array is not 2-D or samples leave [0, 255]
    """
    array = np.asarray(image)
    if array.ndim != 2:
        raise ValueError(f"GrayImage must be 2-D, got shape {array.shape}")
    if array.dtype != np.uint8:
        if array.size and (array.min() < 0 or array.max() > 255):
            raise ValueError("GrayImage samples must lie in [0, 255]")
        array = array.astype(np.uint8)
    return array


class SecretKey(BaseModel):
    """
    密钥模型

    K = k1|k2|k3，三个相互独立的64位无符号整数

    Attributes:
        k1 (int): 分块密钥
        k2 (int): 第一部分载体置换密钥
        k3 (int): 第二部分载体置换密钥
    """
    model_config = ConfigDict(frozen=True)

    k1: int = Field(ge=0, le=MAX_U64)
    k2: int = Field(ge=0, le=MAX_U64)
    k3: int = Field(ge=0, le=MAX_U64)

    @classmethod
    def from_hex(cls, text: str) -> "SecretKey":
        """Parse 48 hex characters as three big-endian 64-bit parts."""
        text = text.strip()
        if len(text) != KEY_HEX_LENGTH:
            raise ValueError(f"key must be {KEY_HEX_LENGTH} hex characters, got {len(text)}")
        if not HEX_KEY_PATTERN.fullmatch(text):
            raise ValueError("key contains non-hexadecimal characters")
        parts = [int(text[i:i + 16], 16) for i in range(0, KEY_HEX_LENGTH, 16)]
        return cls(k1=parts[0], k2=parts[1], k3=parts[2])

    def to_hex(self) -> str:
        return f"{self.k1:016x}{self.k2:016x}{self.k3:016x}"


class BlockRef(BaseModel):
    """
    图像块引用

    Attributes:
        x (int): 左上角像素列
        y (int): 左上角像素行
        size (int): 块大小 (4 或 8)
    """
    model_config = ConfigDict(frozen=True)

    x: int = Field(ge=0)
    y: int = Field(ge=0)
    size: int

    @field_validator('size')
    @classmethod
    def _check_size(cls, v: int) -> int:
        if v not in (4, 8):
            raise ValueError("block size must be 4 or 8")
        return v

    @model_validator(mode='after')
    def _check_lattice(self) -> "BlockRef":
        if self.x % 4 or self.y % 4:
            raise ValueError("block anchor must lie on the 4-pixel lattice")
        return self


class Partition(BaseModel):
    """
    密钥决定的分块结果

    Attributes:
        b8 (Tuple[BlockRef, ...]): 8×8块，按发现顺序
        b4 (Tuple[BlockRef, ...]): 4×4块，按发现顺序
        m (int): 可用载荷对数 min(|b8|, ⌊|b4|/4⌋)
        width (int): 图像宽度
        height (int): 图像高度
    """
    model_config = ConfigDict(frozen=True)

    b8: Tuple[BlockRef, ...]
    b4: Tuple[BlockRef, ...]
    m: int = Field(ge=0)
    width: int = Field(ge=8)
    height: int = Field(ge=8)

    @model_validator(mode='after')
    def _check_capacity(self) -> "Partition":
        if self.m != min(len(self.b8), len(self.b4) // 4):
            raise ValueError("m must equal min(|b8|, |b4| // 4)")
        return self


class QuantizerConfig(BaseModel):
    """Quantization step for parity QIM (default q = 8)."""
    model_config = ConfigDict(frozen=True)

    q: float = Field(default=8.0, gt=0)


class WatermarkPayload(BaseModel):
    """
    两部分水印

    Attributes:
        part1 (List[int]): 4m 位，由8×8块生成
        part2 (List[int]): 4m 位，由虚拟8×8块生成
    """
    part1: List[int]
    part2: List[int]

    @model_validator(mode='after')
    def _check_lengths(self) -> "WatermarkPayload":
        if len(self.part1) != len(self.part2) or len(self.part1) % 4:
            raise ValueError("both watermark parts must hold 4m bits")
        return self


class ExtractionResult(BaseModel):
    """
    Watermark extraction output

    Attributes:
        part1_extracted (List[Tuple[int, int, int]]): bit triples read from part-1 carriers
        part2_extracted (List[Tuple[int, int, int]]): bit triples read from part-2 carriers
        part1_reference (List[int]): part-1 bits regenerated from the received image
        part2_reference (List[int]): part-2 bits regenerated from the received image
    """
    part1_extracted: List[Tuple[int, int, int]]
    part2_extracted: List[Tuple[int, int, int]]
    part1_reference: List[int]
    part2_reference: List[int]

    def agreement(self) -> float:
        """Fraction of extracted bit copies equal to their reference bit."""
        total = 0
        matched = 0
        pairs = [
            (self.part1_reference, self.part1_extracted),
            (self.part2_reference, self.part2_extracted),
        ]
        for reference, extracted in pairs:
            for bit, triple in zip(reference, extracted):
                matched += sum(1 for copy in triple if copy == bit)
                total += 3
        return matched / total if total else 1.0


class EwTriple(BaseModel):
    """Absolute differences between a reference bit and its three copies."""
    model_config = ConfigDict(frozen=True)

    e1: int = Field(ge=0, le=1)
    e2: int = Field(ge=0, le=1)
    e3: int = Field(ge=0, le=1)


class FeatureVector(BaseModel):
    """
    误差图能量特征

    Attributes:
        f1..f9 (float): 平均像素能量，单位为8位灰度的平方
    """
    f1: float = Field(ge=0, le=255 ** 2)
    f2: float = Field(ge=0, le=255 ** 2)
    f3: float = Field(ge=0, le=255 ** 2)
    f4: float = Field(ge=0, le=255 ** 2)
    f5: float = Field(ge=0, le=255 ** 2)
    f6: float = Field(ge=0, le=255 ** 2)
    f7: float = Field(ge=0, le=255 ** 2)
    f8: float = Field(ge=0, le=255 ** 2)
    f9: float = Field(ge=0, le=255 ** 2)

    def as_list(self) -> List[float]:
        return [self.f1, self.f2, self.f3, self.f4, self.f5,
                self.f6, self.f7, self.f8, self.f9]

    def classifier_inputs(self) -> List[float]:
        """The seven features the classifier consumes: f1..f6 and f9."""
        return [self.f1, self.f2, self.f3, self.f4, self.f5, self.f6, self.f9]


class ClassLabel(IntEnum):
    """Four image states distinguished by the classifier."""
    CLEAN = 1
    UNINTENTIONAL = 2
    INTENTIONAL = 3
    BOTH = 4

    @property
    def description(self) -> str:
        return {
            ClassLabel.CLEAN: "clean or QF100",
            ClassLabel.UNINTENTIONAL: "JPEG only (QF75-95)",
            ClassLabel.INTENTIONAL: "tampered, optionally QF100",
            ClassLabel.BOTH: "tampered then JPEG (QF75-95)",
        }[self]


class Rect(BaseModel):
    """Axis-aligned rectangle in pixel coordinates."""
    model_config = ConfigDict(frozen=True)

    x: int = Field(ge=0)
    y: int = Field(ge=0)
    width: int = Field(ge=0)
    height: int = Field(ge=0)

    @classmethod
    def parse(cls, text: str) -> "Rect":
        """Parse the command-line form 'x,y,w,h'."""
        parts = text.split(',')
        if len(parts) != 4:
            raise ValueError(f"rect must be x,y,w,h, got {text!r}")
        x, y, w, h = (int(p) for p in parts)
        return cls(x=x, y=y, width=w, height=h)

    def fits(self, width: int, height: int) -> bool:
        return self.x + self.width <= width and self.y + self.height <= height


class AttackSpec(BaseModel):
    """
    攻击描述模型

    Attributes:
        kind (str): 'none', 'jpeg', 'insert' 或 'insert_then_jpeg'
        qf (Optional[int]): JPEG质量因子 (1-100)
        rect (Optional[Rect]): 插入区域
        donor (Optional[str]): 供体图像路径
    """
    model_config = ConfigDict(frozen=True)

    kind: str
    qf: Optional[int] = Field(default=None, ge=1, le=100)
    rect: Optional[Rect] = None
    donor: Optional[str] = None

    @model_validator(mode='after')
    def _check_kind(self) -> "AttackSpec":
        if self.kind not in ('none', 'jpeg', 'insert', 'insert_then_jpeg'):
            raise ValueError(f"unknown attack kind {self.kind!r}")
        if self.kind in ('jpeg', 'insert_then_jpeg') and self.qf is None:
            raise ValueError(f"attack kind {self.kind!r} requires qf")
        if self.kind in ('insert', 'insert_then_jpeg') and self.rect is None:
            raise ValueError(f"attack kind {self.kind!r} requires rect")
        return self

    @property
    def name(self) -> str:
        if self.kind == 'none':
            return 'clean'
        if self.kind == 'jpeg':
            return f"jpeg{self.qf}"
        if self.kind == 'insert':
            return 'insert'
        return f"insert_jpeg{self.qf}"


class ClassificationReport(BaseModel):
    """
    Cross-validation report

    Attributes:
        labels (List[int]): class labels, ascending
        confusion (List[List[int]]): confusion[p][t] counts samples predicted p with true label t
        precision (List[float]): per-class precision, same order as labels
        recall (List[float]): per-class recall, same order as labels
        accuracy (float): overall accuracy
    """
    labels: List[int]
    confusion: List[List[int]]
    precision: List[float]
    recall: List[float]
    accuracy: float

    def render(self) -> str:
        """Render the report as a plain-text table (predicted rows, true columns)."""
        header = "".join(f"{'true ' + str(label):>10}" for label in self.labels)
        lines = [f"Accuracy: {self.accuracy * 100:.2f}%", f"{'':<10}{header}{'precision':>12}"]
        for row_index, label in enumerate(self.labels):
            counts = "".join(f"{count:>10d}" for count in self.confusion[row_index])
            lines.append(f"{'pred ' + str(label):<10}{counts}{self.precision[row_index] * 100:>11.2f}%")
        recalls = "".join(f"{value * 100:>9.2f}%" for value in self.recall)
        lines.append(f"{'recall':<10}{recalls}")
        return "\n".join(lines)
