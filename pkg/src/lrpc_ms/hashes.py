"""Domain-separated hashes of error supports.

Both hashes consume the canonical subspace encoding; a one-byte prefix
separates the shared-secret hash from the support-check hash.
"""

from __future__ import annotations

import hashlib

from .subspace import Subspace

SHARED_SECRET_BYTES = 64
SUPPORT_HASH_BYTES = 64

_G_PREFIX = b"\x00"
_GPRIME_PREFIX = b"\x01"


def shared_secret_hash(space: Subspace) -> bytes:
    """G: 64-byte shared secret derived from the error support."""
    return hashlib.shake_256(_G_PREFIX + space.canonical_bytes()).digest(
        SHARED_SECRET_BYTES)


def support_check_hash(space: Subspace) -> bytes:
    """G': 64-byte support fingerprint carried by extended ciphertexts."""
    return hashlib.shake_256(_GPRIME_PREFIX + space.canonical_bytes()).digest(
        SUPPORT_HASH_BYTES)
