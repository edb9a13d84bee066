#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Embed command

`embed --in <img> --out <img> --key <hex48> [--q 8]`

Author: Dexter
Date: 2025
"""

import argparse
import logging

from sealkit.commands.common import (
    add_key_arguments, get_secret_key, quantization_step, require_files, require_output,
)
from sealkit.core.exceptions import SealkitError
from sealkit.core.imageio import WRITE_FORMATS, read_image, write_image
from sealkit.watermark.pipeline import embed


# 配置日志
logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser('embed', help='embed the two-part watermark into an image')
    parser.add_argument('--in', dest='input', required=True, help='source image (PGM, PNG or JPEG)')
    parser.add_argument('--out', required=True, help='watermarked image (.pgm or .png)')
    add_key_arguments(parser)
    parser.set_defaults(handler=handle_embed, parser=parser)


def handle_embed(args: argparse.Namespace) -> int:
    """
    嵌入水印

    Raises:
        SealkitError: validation or I/O failure
    """
    key = get_secret_key(args)
    q = quantization_step(args)
    require_files([args.input])
    require_output(args.out, WRITE_FORMATS)

    try:
        marked = embed(read_image(args.input), key, q)
        write_image(args.out, marked)
    except SealkitError as e:
        logger.error(f"嵌入水印失败: {e}")
        raise

    logger.info(f"水印图像已写入 {args.out}")
    return 0
