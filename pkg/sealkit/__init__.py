#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
sealkit package initialization

Semi-fragile image watermarking: keyed two-part embedding, error-map
authentication and four-class tamper classification.

Author: Dexter
Date: 2025
"""

__version__ = "0.1.0"
