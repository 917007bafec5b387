"""Fixed-width bit packing shared by the codecs.

Values are laid out as one contiguous bitstream, LSB-first within bytes,
zero-padded at the end to a byte boundary.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class BadLength(ValueError):
    """Serialized input has the wrong byte length."""


class BadPadding(ValueError):
    """Padding bits (or unused high bits) are nonzero."""


def packed_size(count: int, width: int) -> int:
    return (count * width + 7) // 8


def pack_bits(values: Iterable[int], width: int) -> bytes:
    acc = 0
    count = 0
    for v in values:
        acc |= v << (width * count)
        count += 1
    return acc.to_bytes(packed_size(count, width), "little")


def unpack_bits(data: bytes, width: int, count: int) -> list[int]:
    expected = packed_size(count, width)
    if len(data) != expected:
        raise BadLength(f"expected {expected} bytes, got {len(data)}")
    acc = int.from_bytes(data, "little")
    if acc >> (count * width):
        raise BadPadding("nonzero padding bits")
    mask = (1 << width) - 1
    return [(acc >> (width * i)) & mask for i in range(count)]
