"""Rank support recovery from syndrome matrices.

Both decoders span the syndrome coordinates, then intersect the scaled-down
copies f_i^{-1}S over the canonical basis of the dual support F. The
extended variant additionally disambiguates a dim r+1 intersection by
hashing every codimension-1 subspace against a transmitted fingerprint.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hashes import support_check_hash
from .linalg import Matrix
from .subspace import Subspace, span_of


@dataclass(frozen=True)
class DecodeOutcome:
    support: Subspace | None
    candidates_examined: int = 0

    @property
    def ok(self) -> bool:
        return self.support is not None


FAILURE = DecodeOutcome(None)


def scaled_intersection(dual_support: Subspace, syndrome_space: Subspace) -> Subspace:
    """The intersection of f^{-1}S over the canonical basis rows f of the
    dual support, in row order."""
    acc = None
    for f in dual_support.rows:
        scaled = syndrome_space.scalar_div(f)
        acc = scaled if acc is None else acc.intersect(scaled)
    return acc


def rsr(dual_support: Subspace, syndromes: Matrix, r: int) -> DecodeOutcome:
    """Multi-syndrome rank support recovery; fails (never aborts) when the
    recovered space is larger than r."""
    if dual_support.dim < 1:
        raise ValueError("dual support must have dimension >= 1")
    syndrome_space = span_of(syndromes.field, syndromes.entries)
    candidate = scaled_intersection(dual_support, syndrome_space)
    if candidate.dim <= r:
        return DecodeOutcome(candidate)
    return FAILURE


def xrsr(dual_support: Subspace, syndromes: Matrix, r: int,
         target_hash: bytes) -> DecodeOutcome:
    """Extended recovery: accepts dim r directly, scans the hyperplanes of a
    dim r+1 candidate against the transmitted support hash, fails otherwise.
    """
    if dual_support.dim < 1:
        raise ValueError("dual support must have dimension >= 1")
    syndrome_space = span_of(syndromes.field, syndromes.entries)
    candidate = scaled_intersection(dual_support, syndrome_space)
    if candidate.dim == r:
        return DecodeOutcome(candidate)
    if candidate.dim != r + 1:
        return FAILURE
    examined = 0
    for hyperplane in candidate.hyperplanes():
        examined += 1
        if support_check_hash(hyperplane) == target_hash:
            return DecodeOutcome(hyperplane, examined)
    return DecodeOutcome(None, examined)
