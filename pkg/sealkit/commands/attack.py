#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Attack and PSNR commands

`attack jpeg --in <img> --out <img> --qf <n>`
`attack insert --in <img> --donor <img> --rect x,y,w,h --out <img>`
`psnr <a> <b>`

Author: Dexter
Date: 2025
"""

import argparse
import logging
import math

from sealkit.attacks.harness import apply_attack, encode_jpeg, jpeg_roundtrip, psnr
from sealkit.commands.common import parse_rect, require_files, require_output
from sealkit.core.exceptions import ImageIOError, SealkitError, ValidationError
from sealkit.core.imageio import WRITE_FORMATS, read_image, write_image
from sealkit.core.models import AttackSpec


# 配置日志
logger = logging.getLogger(__name__)

JPEG_EXTENSIONS = ('.jpg', '.jpeg')


def register(subparsers) -> None:
    attack = subparsers.add_parser('attack', help='apply a JPEG or object insertion attack')
    kinds = attack.add_subparsers(dest='attack_kind', metavar='{jpeg,insert}')
    kinds.required = True

    jpeg = kinds.add_parser('jpeg', help='JPEG recompression')
    jpeg.add_argument('--in', dest='input', required=True)
    jpeg.add_argument('--out', required=True, help='.jpg keeps the stream, .pgm/.png the decoded image')
    jpeg.add_argument('--qf', type=int, required=True, help='quality factor 1-100')
    jpeg.set_defaults(handler=handle_jpeg, parser=jpeg)

    insert = kinds.add_parser('insert', help='paste a donor region into the image')
    insert.add_argument('--in', dest='input', required=True)
    insert.add_argument('--donor', required=True)
    insert.add_argument('--rect', required=True, help='x,y,w,h')
    insert.add_argument('--out', required=True)
    insert.set_defaults(handler=handle_insert, parser=insert)

    metric = subparsers.add_parser('psnr', help='peak signal-to-noise ratio of two images')
    metric.add_argument('a')
    metric.add_argument('b')
    metric.set_defaults(handler=handle_psnr, parser=metric)


def handle_jpeg(args: argparse.Namespace) -> int:
    if not 1 <= args.qf <= 100:
        raise ValidationError(f"--qf must lie in [1, 100], got {args.qf}")
    require_files([args.input])
    require_output(args.out, tuple(WRITE_FORMATS) + JPEG_EXTENSIONS)

    try:
        image = read_image(args.input)
        if args.out.lower().endswith(JPEG_EXTENSIONS):
            data = encode_jpeg(image, args.qf)
            try:
                with open(args.out, 'wb') as handle:
                    handle.write(data)
            except OSError as e:
                raise ImageIOError(f"{args.out}: cannot write JPEG ({e})") from e
        else:
            write_image(args.out, jpeg_roundtrip(image, args.qf))
    except SealkitError as e:
        logger.error(f"JPEG 攻击失败: {e}")
        raise

    logger.info(f"JPEG 攻击完成: QF={args.qf} -> {args.out}")
    return 0


def handle_insert(args: argparse.Namespace) -> int:
    rect = parse_rect(args.rect)
    require_files([args.input, args.donor])
    require_output(args.out, WRITE_FORMATS)

    try:
        spec = AttackSpec(kind='insert', rect=rect, donor=args.donor)
        write_image(args.out, apply_attack(read_image(args.input), spec))
    except SealkitError as e:
        logger.error(f"对象插入失败: {e}")
        raise

    logger.info(f"对象插入完成: {args.rect} -> {args.out}")
    return 0


def handle_psnr(args: argparse.Namespace) -> int:
    require_files([args.a, args.b])
    value = psnr(read_image(args.a), read_image(args.b))
    print('inf' if math.isinf(value) else f"{value:.4f}")
    return 0
