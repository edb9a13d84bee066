#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Keyed pseudo-random streams

Sender and receiver must reproduce identical partitions and block
orderings from the secret key alone, so every random decision in the
toolkit is drawn from a splitmix64 stream seeded with one key part.

Author: Dexter
Date: 2025
"""

from typing import List

from sealkit.core.exceptions import ValidationError


MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MUL1 = 0xBF58476D1CE4E5B9
MIX_MUL2 = 0x94D049BB133111EB


class KeyedStream:
    """
    splitmix64 generator seeded with a 64-bit key part

    Not shareable across concurrent tasks; distinct streams are independent.

    Attributes:
        state (int): current 64-bit generator state
        origin (str): which key part seeded the stream ('k1', 'k2', 'k3')
    """

    __slots__ = ('state', 'origin')

    def __init__(self, seed: int, origin: str = ''):
        self.state = seed & MASK64
        self.origin = origin

    def next(self) -> int:
        """Advance the state and return the next 64-bit output."""
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX_MUL1) & MASK64
        z = ((z ^ (z >> 27)) * MIX_MUL2) & MASK64
        return z ^ (z >> 31)

    def next_below(self, n: int) -> int:
        """
        Draw a value in [0, n) by rejection sampling

        Args:
            n (int): exclusive upper bound, n >= 1

        Returns:
            int: uniformly distributed value in [0, n)

        Raises:
            ValidationError: if n < 1
        """
        if n < 1:
            raise ValidationError(f"next_below requires n >= 1, got {n}")
        limit = n * ((1 << 64) // n)
        while True:
            value = self.next()
            if value < limit:
                return value % n

    def __repr__(self) -> str:
        return f"KeyedStream(state=0x{self.state:016x}, origin={self.origin!r})"


def seed_stream(part: int, origin: str = '') -> KeyedStream:
    """Create a stream whose output sequence is a function of the key part."""
    return KeyedStream(part, origin)


def next_below(stream: KeyedStream, n: int) -> int:
    return stream.next_below(n)


def keyed_permutation(stream: KeyedStream, n: int) -> List[int]:
    """
    Fisher-Yates shuffle of 0..n-1 driven by the stream

    Iterates i from n-1 down to 1, swapping index i with next_below(i + 1).

    Args:
        stream (KeyedStream): seeded stream, advanced in place
        n (int): number of items, n >= 0

    Returns:
        List[int]: a permutation of range(n)
    """
    if n < 0:
        raise ValidationError(f"permutation size must be >= 0, got {n}")
    order = list(range(n))
    for i in range(n - 1, 0, -1):
        j = stream.next_below(i + 1)
        order[i], order[j] = order[j], order[i]
    return order
