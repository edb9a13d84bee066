#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Application configuration module

This module contains all configuration settings for the toolkit,
including the default secret key, quantization step, classifier
hyperparameters and logging settings.

Author: Dexter
Date: 2025
"""

import os
import logging
from typing import Optional, Tuple

from sealkit.core.exceptions import ValidationError
from sealkit.core.models import QuantizerConfig, SecretKey


class Config:
    """
    应用配置类

    管理所有配置设置，包括密钥、量化步长、形态学窗口和分类器超参数
    支持通过环境变量覆盖默认值
    """

    # 默认密钥 (48位十六进制字符，可通过 --key 覆盖)
    SECRET_KEY = os.getenv('SEALKIT_KEY', '')

    # 嵌入/提取参数 (SEALKIT_Q 在使用时解析)
    QUANTIZATION_STEP_ENV = os.getenv('SEALKIT_Q', '')
    DEFAULT_QUANTIZATION_STEP = 8.0
    MORPHOLOGY_WINDOW = 5

    # 篡改定位阈值 (EDDE5 滤波后的 xw_comb)
    LOCALIZATION_THRESHOLD = 64

    # 分类器参数
    SVM_C = 10.0
    SVM_GAMMA = 1.0 / 7.0
    SVM_TOLERANCE = 1e-3
    SVM_MAX_ITER = 100000
    CV_FOLDS = 15
    CV_SEED = 0

    # 攻击语料参数
    JPEG_QUALITIES: Tuple[int, ...] = (75, 80, 85, 90, 95)
    CLEAN_QUALITY = 100
    TAMPER_AREA_FRACTION = 1.0 / 16.0

    # 日志配置
    LOG_LEVEL = getattr(logging, os.getenv('SEALKIT_LOG_LEVEL', 'INFO').upper(), logging.INFO)
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    @classmethod
    def get_secret_key(cls, key_hex: Optional[str] = None) -> Optional[SecretKey]:
        """
        解析并返回密钥

        Args:
            key_hex (Optional[str]): 命令行给出的密钥，为None时使用默认配置

        Returns:
            Optional[SecretKey]: 密钥对象或None（如果未配置）

        Raises:
            ValidationError: 密钥格式错误
        """
        logger = logging.getLogger(__name__)

        source = key_hex if key_hex else cls.SECRET_KEY
        if not source:
            logger.warning("密钥未提供，无法嵌入或验证水印")
            return None

        try:
            key = SecretKey.from_hex(source)
        except ValueError as e:
            logger.error(f"密钥解析失败: {e}")
            raise ValidationError(f"malformed key: {e}") from e

        logger.debug(f"密钥加载成功 (来源: {'--key' if key_hex else 'SEALKIT_KEY'})")
        return key

    @classmethod
    def get_quantization_step(cls, q: Optional[float] = None) -> float:
        """
        获取量化步长

        Args:
            q (Optional[float]): 命令行给出的步长，为None时依次使用 SEALKIT_Q 和默认值

        Returns:
            float: 经 QuantizerConfig 校验的正步长

        Raises:
            ValidationError: 步长不是正数或 SEALKIT_Q 无法解析
        """
        source = q
        if source is None:
            source = cls.QUANTIZATION_STEP_ENV or cls.DEFAULT_QUANTIZATION_STEP
        try:
            return QuantizerConfig(q=source).q
        except ValueError as e:
            logging.getLogger(__name__).error(f"量化步长无效: {source!r}")
            raise ValidationError(f"quantization step must be a positive number, got {source!r}") from e


# Global configuration instance
config = Config()
