#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Main command router

This module aggregates all command groups and provides a single
registration entry point for the top-level parser.

Author: Dexter
Date: 2025
"""

from sealkit.commands import attack, classify, corpus, embed, verify


# All command groups, in help order
COMMAND_MODULES = (embed, verify, attack, corpus, classify)


def register_commands(subparsers) -> None:
    """Register every command group on the given subparsers action."""
    for module in COMMAND_MODULES:
        module.register(subparsers)
