#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exception hierarchy

Every failure raised by the library carries the process exit code the
command line maps it to: 1 for validation and domain errors, 2 for
image/model I/O errors.

Author: Dexter
Date: 2025
"""


class SealkitError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class ValidationError(SealkitError, ValueError):
    """Invalid argument, malformed key or out-of-range value."""

    exit_code = 1


class UsageError(ValidationError):
    """Command line could not be parsed (missing or unknown flags)."""

    def __init__(self, message: str, usage: str = ""):
        super().__init__(message)
        self.usage = usage


class GeometryError(ValidationError):
    """Image dimensions the partitioner cannot tile."""


class TrainingError(ValidationError):
    """Classifier training or cross-validation preconditions not met."""


class SealkitIOError(SealkitError, OSError):
    """Unreadable, malformed or unwritable file."""

    exit_code = 2


class ImageIOError(SealkitIOError):
    """Image file could not be decoded or encoded."""


class ModelFormatError(SealkitIOError):
    """Model file is not a valid sealkit-svm v1 document."""
