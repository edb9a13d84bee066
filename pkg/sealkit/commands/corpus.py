#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Corpus command

`corpus --images <dir> --key <hex48> --out <csv> [--labels <csv>] [--workers N]`

Author: Dexter
Date: 2025
"""

import argparse
import logging

from sealkit.attacks.corpus import build_corpus, default_labels_path, list_images
from sealkit.commands.common import (
    add_key_arguments, get_secret_key, parse_rect, quantization_step, require_output,
)
from sealkit.core.exceptions import SealkitError


# 配置日志
logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser('corpus', help='build the labeled attack corpus of a directory')
    parser.add_argument('--images', required=True, help='directory of source images')
    add_key_arguments(parser)
    parser.add_argument('--out', required=True, help='features CSV')
    parser.add_argument('--labels', help='labels CSV (default: <out-stem>.labels.csv)')
    parser.add_argument('--rect', help='tamper rectangle x,y,w,h (default: centered 1/16 of the area)')
    parser.add_argument('--workers', type=int, default=1, help='worker processes (default: 1)')
    parser.set_defaults(handler=handle_corpus, parser=parser)


def handle_corpus(args: argparse.Namespace) -> int:
    """
    生成攻击语料

    Raises:
        SealkitError: validation or I/O failure
    """
    key = get_secret_key(args)
    q = quantization_step(args)
    rect = parse_rect(args.rect) if args.rect else None
    labels = args.labels or default_labels_path(args.out)
    paths = list_images(args.images)
    require_output(args.out)
    require_output(labels)

    try:
        count = build_corpus(paths, key, args.out, labels_csv=labels, q=q, rect=rect,
                             workers=args.workers)
    except SealkitError as e:
        logger.error(f"语料生成失败: {e}")
        raise

    logger.info(f"特征写入 {args.out}, 标签写入 {labels}, 共 {count} 行")
    return 0
