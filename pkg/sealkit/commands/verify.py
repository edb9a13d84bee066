#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Verify command

Builds the error maps of a received image, optionally writes them as
PNGs, appends its feature row to a CSV and classifies it with a trained
model.

Author: Dexter
Date: 2025
"""

import argparse
import logging
import os

from sealkit.classification.svm import load_model, predict
from sealkit.commands.common import (
    add_key_arguments, get_secret_key, quantization_step, require_files, require_output,
)
from sealkit.core.exceptions import SealkitError, SealkitIOError
from sealkit.core.imageio import read_image
from sealkit.core.models import ClassLabel
from sealkit.verification.authenticator import authenticate, write_maps
from sealkit.verification.features import append_feature_row, feature_vector
from sealkit.verification.localization import localize


# 配置日志
logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser('verify', help='build error maps and features of a received image')
    parser.add_argument('--in', dest='input', required=True, help='received image')
    add_key_arguments(parser)
    parser.add_argument('--maps-dir', help='directory for xw1/xw2/vmap1/vmap2/xw_comb PNGs')
    parser.add_argument('--features', help='CSV to append the path,f1..f9 row to')
    parser.add_argument('--model', help='trained model; prints the predicted class')
    parser.set_defaults(handler=handle_verify, parser=parser)


def handle_verify(args: argparse.Namespace) -> int:
    """
    验证图像并输出误差图、特征和分类结果

    Raises:
        SealkitError: validation or I/O failure
    """
    key = get_secret_key(args)
    q = quantization_step(args)
    require_files([args.input] + ([args.model] if args.model else []))
    if args.features:
        require_output(args.features)
    if args.maps_dir and os.path.exists(args.maps_dir) and not os.path.isdir(args.maps_dir):
        raise SealkitIOError(f"{args.maps_dir}: not a directory")

    try:
        model = load_model(args.model) if args.model else None
        maps = authenticate(read_image(args.input), key, q)
        features = feature_vector(maps)
        region = localize(maps)
        if args.maps_dir:
            write_maps(maps, args.maps_dir)
        if args.features:
            append_feature_row(args.features, args.input, features)
        if model is not None:
            label = ClassLabel(predict(model, features.classifier_inputs()))
            print(f"{int(label)} {label.description}")
    except SealkitError as e:
        logger.error(f"验证失败: {e}")
        raise

    if region is not None:
        logger.info(f"疑似篡改区域: {region.x},{region.y},{region.width},{region.height}")
    logger.info(f"验证完成: {args.input}, f9={features.f9:.2f}")
    return 0
