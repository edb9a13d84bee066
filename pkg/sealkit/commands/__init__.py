#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Commands package initialization

Author: Dexter
Date: 2025
"""
