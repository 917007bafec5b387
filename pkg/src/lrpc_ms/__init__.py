"""Rank-metric multi-syndrome LRPC key encapsulation.

Four KEM variants (unstructured/ideal x standard/extended decoding), the
closed-form analysis behind their parameters, and Monte Carlo validation of
the underlying probabilistic bounds.
"""

from .decoder import DecodeOutcome, rsr, scaled_intersection, xrsr
from .gf2m import FieldParams, ZeroInverse, field_for, find_irreducible
from .hashes import shared_secret_hash, support_check_hash
from .ideal_ring import (NotInvertible, RingParams, choose_ring_modulus,
                         ring_inv, ring_mul)
from .kem import (Ciphertext, ParameterSet, PublicKey, REGISTRY, SecretKey,
                  decap, encap, get_params, keygen)
from .linalg import Matrix, mat_inv, mat_mul, rank_weight
from .sampler import SEED_BYTES, XofStream, derive_seed
from .subspace import Subspace, full_space, span_of

__all__ = [
    "Ciphertext", "DecodeOutcome", "FieldParams", "Matrix", "NotInvertible",
    "ParameterSet", "PublicKey", "REGISTRY", "RingParams", "SecretKey",
    "SEED_BYTES", "Subspace", "XofStream", "ZeroInverse",
    "choose_ring_modulus", "decap", "derive_seed", "encap", "field_for",
    "find_irreducible", "full_space", "get_params", "keygen", "mat_inv",
    "mat_mul", "rank_weight", "ring_inv", "ring_mul", "rsr",
    "scaled_intersection", "shared_secret_hash", "span_of",
    "support_check_hash", "xrsr",
]
