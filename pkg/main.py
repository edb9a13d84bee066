#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Semi-fragile image watermarking toolkit

This is the main command-line entry point that builds the argument
parser and includes all commands from the sealkit.commands package.

Author: Dexter
Date: 2025
"""

import logging
import sys
from typing import List, Optional

from sealkit import __version__
from sealkit.commands.common import CommandParser
from sealkit.commands.router import register_commands
from sealkit.core.config import config
from sealkit.core.exceptions import SealkitError, UsageError


# Configure logging
logging.basicConfig(
    level=config.LOG_LEVEL,
    format=config.LOG_FORMAT
)
logger = logging.getLogger(__name__)


def create_parser() -> CommandParser:
    """
    Create and configure the argument parser

    Returns:
        CommandParser: parser with every subcommand registered
    """
    parser = CommandParser(
        prog='sealkit',
        description='Semi-fragile watermarking: embed, verify, attack and classify grayscale images',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')

    subparsers = parser.add_subparsers(dest='command', metavar='<command>')
    subparsers.required = True
    register_commands(subparsers)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv, run the selected command and map failures to exit codes

    Returns:
        int: 0 on success, 1 on validation errors, 2 on I/O errors
    """
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
        if args.verbose:
            logging.getLogger().setLevel(logging.DEBUG)
        return args.handler(args)
    except UsageError as e:
        sys.stderr.write(e.usage or parser.format_usage())
        print(f"sealkit: error: {e}", file=sys.stderr)
        return e.exit_code
    except SealkitError as e:
        print(f"sealkit: error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception(f"未预期的错误: {e}")
        print(f"sealkit: internal error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
