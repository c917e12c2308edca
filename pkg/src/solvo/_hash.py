"""Stable 64-bit hashing shared by atom invariants and fingerprints.

FNV-1a over a canonical little-endian byte serialization of integer
tuples: platform-independent, process-independent, and fast enough for
molecule-sized inputs.
"""

from __future__ import annotations

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = (1 << 64) - 1


def fnv1a64(values: tuple | list) -> int:
    """Hash a flat or nested sequence of ints to a 64-bit code."""
    h = _FNV_OFFSET
    for v in _flatten(values):
        # Two's-complement 64-bit little-endian encoding of each int.
        b = (v & _MASK).to_bytes(8, "little")
        for byte in b:
            h ^= byte
            h = (h * _FNV_PRIME) & _MASK
    return h


def _flatten(values):
    for v in values:
        if isinstance(v, (tuple, list)):
            yield from _flatten(v)
        else:
            yield int(v)
