#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Shared command helpers

Argument parser that reports usage problems as UsageError, plus the
path and key checks every command runs before doing any work.

Author: Dexter
Date: 2025
"""

import argparse
import logging
import os
from typing import Iterable

from sealkit.core.config import config
from sealkit.core.exceptions import SealkitIOError, UsageError, ValidationError
from sealkit.core.models import Rect, SecretKey


# 配置日志
logger = logging.getLogger(__name__)


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so run() owns the exit code."""

    def error(self, message: str):
        raise UsageError(message, self.format_usage())


def get_secret_key(args: argparse.Namespace) -> SecretKey:
    """
    获取密钥

    Args:
        args: parsed arguments carrying `key` and `parser`

    Returns:
        SecretKey: from --key, else from SEALKIT_KEY

    Raises:
        UsageError: if neither is set
        ValidationError: if the key is malformed
    """
    key = config.get_secret_key(args.key)
    if key is None:
        raise UsageError("--key is required (or set SEALKIT_KEY)", args.parser.format_usage())
    return key


def quantization_step(args: argparse.Namespace) -> float:
    return config.get_quantization_step(args.q)


def require_files(paths: Iterable[str]) -> None:
    """Raise SealkitIOError for the first path that is not a readable file."""
    for path in paths:
        if not os.path.isfile(path):
            raise SealkitIOError(f"{path}: no such file")
        if not os.access(path, os.R_OK):
            raise SealkitIOError(f"{path}: permission denied")


def require_output(path: str, extensions: Iterable[str] = ()) -> None:
    """
    Check an output path before work starts

    Raises:
        ValidationError: if the extension is not one of `extensions`
        SealkitIOError: if the parent directory does not exist
    """
    allowed = tuple(extensions)
    if allowed and not path.lower().endswith(allowed):
        raise ValidationError(f"{path}: output must end with one of {', '.join(allowed)}")
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        raise SealkitIOError(f"{parent}: output directory does not exist")


def parse_rect(text: str) -> Rect:
    try:
        return Rect.parse(text)
    except ValueError as e:
        raise ValidationError(f"bad --rect {text!r}: {e}") from e


def add_key_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--key', help='48 hex characters k1|k2|k3 (default: $SEALKIT_KEY)')
    parser.add_argument('--q', type=float, default=None,
                        help='quantization step (default: $SEALKIT_Q or 8)')
