#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Attacks package initialization

Author: Dexter
Date: 2025
"""
