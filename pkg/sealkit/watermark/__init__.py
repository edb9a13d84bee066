#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Watermark package initialization

Author: Dexter
Date: 2025
"""
