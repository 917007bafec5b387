"""Monte Carlo validation of the probabilistic bounds at desk scale.

Trials are independent; every trial derives its own 40-byte seed as
XOF(master || trial-index), so runs are reproducible and order-independent
(and safe to shard, should a parallel runner ever drive them).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Mapping

from . import kem
from .gf2m import field_for
from .analysis import Log2Real, dfr_bound_for, prob_dim_excess
from .decoder import scaled_intersection
from .kem import ParameterSet
from .sampler import (DOMAIN_SIMULATION, XofStream, derive_seed,
                      sample_homogeneous_matrix, sample_subspace)
from .subspace import rank_of_rows, span_of
from .linalg import mat_mul


class HypothesisViolated(ValueError):
    pass


# one-sided 99% normal quantile for the Wilson upper bound
_Z99 = 2.3263478740408408


def wilson_upper(failures: int, trials: int, z: float = _Z99) -> float:
    """One-sided Wilson score upper confidence bound for a proportion."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    phat = failures / trials
    z2 = z * z
    centre = phat + z2 / (2 * trials)
    half = z * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials * trials))
    return (centre + half) / (1 + z2 / trials)


@dataclass(frozen=True)
class TrialConfig:
    trials: int
    master_seed: bytes
    params: ParameterSet | None = None
    m: int | None = None
    n: int | None = None
    n1: int | None = None
    n2: int | None = None
    r: int | None = None
    d: int | None = None
    ell: int | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass
class TrialStats:
    trials: int
    failures: int
    fail_s_deficient: int = 0
    fail_excess: int = 0
    fail_both: int = 0

    @property
    def successes(self) -> int:
        return self.trials - self.failures

    @property
    def empirical_rate(self) -> float:
        return self.failures / self.trials

    @property
    def empirical_log2(self) -> float:
        return math.log2(self.failures / self.trials) if self.failures else -math.inf

    @property
    def wilson_upper(self) -> float:
        return wilson_upper(self.failures, self.trials)

    @property
    def wilson_upper_log2(self) -> float:
        return math.log2(self.wilson_upper)


# ---------------------------------------------------------------------------
# Support of a product of homogeneous matrices
# ---------------------------------------------------------------------------

def thm51_bound(n1: int, n2: int, r: int, d: int) -> Log2Real:
    """n1 * 2^{rd - n1*n2}, the product-support failure bound."""
    return Log2Real.exp2(math.log2(n1) + r * d - n1 * n2)


def product_support_trials(cfg: TrialConfig) -> TrialStats:
    """Empirical P(Supp(UV) != EF) for U, V uniform homogeneous matrices,
    conditioned on dim(EF) = rd; trial count refers to accepted trials."""
    m, n, n1, n2, r, d = cfg.m, cfg.n, cfg.n1, cfg.n2, cfg.r, cfg.d
    if None in (m, n, n1, n2, r, d):
        raise ValueError("product_support_trials needs raw (m, n, n1, n2, r, d)")
    if n1 + n2 > n:
        raise HypothesisViolated("the theorem needs n1 + n2 <= n")
    if n1 < 1 or n2 < 1:
        raise HypothesisViolated("n1 and n2 must be >= 1")
    fld = field_for(m)
    failures = 0
    for t in range(cfg.trials):
        stream = XofStream(derive_seed(cfg.master_seed, t), DOMAIN_SIMULATION)
        while True:
            err_sup = sample_subspace(stream, r, fld)
            dual_sup = sample_subspace(stream, d, fld)
            product = err_sup.product_space(dual_sup)
            if product.dim == r * d:
                break
        u = sample_homogeneous_matrix(stream, dual_sup, n1, n)
        v = sample_homogeneous_matrix(stream, err_sup, n, n2)
        uv = mat_mul(u, v)
        if span_of(fld, uv.entries) != product:
            failures += 1
    return TrialStats(cfg.trials, failures, fail_s_deficient=failures)


# ---------------------------------------------------------------------------
# Rank statistics of uniform binary matrices
# ---------------------------------------------------------------------------

@dataclass
class RankDistribution:
    m_rows: int
    n_cols: int
    trials: int
    counts: list[int] = field(default_factory=list)  # counts[rank]

    def empirical_prob_rank_at_most(self, rank: int) -> float:
        return sum(self.counts[:rank + 1]) / self.trials

    def tail_bound(self, i: int) -> float:
        """2^{i(m-n)} bounds P(rank <= m - i)."""
        return 2.0 ** (i * (self.m_rows - self.n_cols))

    def exact_full_rank_prob(self) -> Fraction:
        """prod_{j=0}^{m-1} (1 - 2^{j-n}) for m <= n."""
        p = Fraction(1)
        for j in range(self.m_rows):
            p *= 1 - Fraction(1 << j, 1 << self.n_cols)
        return p

    def expectation_2_neg(self, n2: int) -> float:
        """Empirical E[2^{-n2 R}]."""
        total = sum(c * 2.0 ** (-n2 * rank) for rank, c in enumerate(self.counts))
        return total / self.trials

    def expectation_bound(self, n2: int) -> float:
        """n1 * 2^{-n1*n2} with n1 = m_rows."""
        return self.m_rows * 2.0 ** (-self.m_rows * n2)


def binary_rank_trials(m_rows: int, n_cols: int, trials: int,
                       seed: bytes) -> RankDistribution:
    if m_rows > n_cols:
        raise ValueError("needs m_rows <= n_cols")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    counts = [0] * (m_rows + 1)
    stream = XofStream(derive_seed(seed), DOMAIN_SIMULATION)
    for _ in range(trials):
        rows = [stream.read_bits(n_cols) for _ in range(m_rows)]
        counts[rank_of_rows(rows)] += 1
    return RankDistribution(m_rows, n_cols, trials, counts)


# ---------------------------------------------------------------------------
# End-to-end decoding failure rate
# ---------------------------------------------------------------------------

def dfr_trials(cfg: TrialConfig) -> TrialStats:
    """Full keygen/encap/decap cycles; failures are shared-secret mismatches
    or decode rejections, classified by which bound hypothesis broke."""
    params = cfg.params
    if params is None:
        raise ValueError("dfr_trials needs a ParameterSet in cfg.params")
    failures = s_def = excess = both = 0
    for t in range(cfg.trials):
        kg_seed = derive_seed(cfg.master_seed, t, 0)
        enc_seed = derive_seed(cfg.master_seed, t, 1)
        pk, sk = kem.keygen(params, kg_seed)
        ct, secret = kem.encap(params, pk, enc_seed)
        recovered = kem.decap(params, sk, ct)
        if recovered == secret:
            continue
        failures += 1
        got_s_def, got_excess = _classify_failure(params, kg_seed, enc_seed, ct)
        if got_s_def and got_excess:
            both += 1
        elif got_s_def:
            s_def += 1
        elif got_excess:
            excess += 1
        else:  # the two cases are exhaustive for honest ciphertexts
            raise RuntimeError("unclassifiable decoding failure")
    return TrialStats(cfg.trials, failures, s_def, excess, both)


def _classify_failure(params, kg_seed, enc_seed, ct):
    parts = kem.expand_secret(params, kg_seed)
    eparts = kem.expand_encap_randomness(params, enc_seed)
    product = eparts.support.product_space(parts.support)
    syndromes = kem.syndrome_matrix(params, parts, ct)
    syn_space = span_of(params.field, syndromes.entries)
    s_deficient = syn_space != product
    inter = scaled_intersection(parts.support, syn_space)
    excess = (inter != eparts.support
              and all(inter.contains(row) for row in eparts.support.rows))
    return s_deficient, excess


# ---------------------------------------------------------------------------
# Intersection-dimension excess with S = EF forced
# ---------------------------------------------------------------------------

@dataclass
class ExcessDimStats:
    trials: int
    ge_r_plus_1: int
    ge_r_plus_2: int

    def rate(self, c: int) -> float:
        return (self.ge_r_plus_1 if c == 1 else self.ge_r_plus_2) / self.trials

    def wilson_upper(self, c: int) -> float:
        count = self.ge_r_plus_1 if c == 1 else self.ge_r_plus_2
        return wilson_upper(count, self.trials)


def excess_dim_trials(cfg: TrialConfig) -> ExcessDimStats:
    """P(dim of the intersection >= r+1, r+2) when the syndrome space is the
    full product EF; checks the excess-dimension bounds in isolation."""
    m, r, d = cfg.m, cfg.r, cfg.d
    if None in (m, r, d):
        raise ValueError("excess_dim_trials needs raw (m, r, d)")
    if d < 2:
        raise HypothesisViolated("needs d >= 2 (a single S_1 = f^(-1)EF has dim rd)")
    fld = field_for(m)
    ge1 = ge2 = 0
    for t in range(cfg.trials):
        stream = XofStream(derive_seed(cfg.master_seed, t), DOMAIN_SIMULATION)
        while True:
            err_sup = sample_subspace(stream, r, fld)
            dual_sup = sample_subspace(stream, d, fld)
            product = err_sup.product_space(dual_sup)
            if product.dim == r * d:
                break
        inter = scaled_intersection(dual_sup, product)
        if inter.dim >= r + 1:
            ge1 += 1
        if inter.dim >= r + 2:
            ge2 += 1
    return ExcessDimStats(cfg.trials, ge1, ge2)


def excess_bound(c: int, m: int, r: int, d: int) -> Log2Real:
    """Remark-refined bound at c = 1, generic bound for c >= 2."""
    return prob_dim_excess(c, m, r, d, refined=(c == 1))


# ---------------------------------------------------------------------------
# CSV reporting
# ---------------------------------------------------------------------------

def product_support_row(cfg: TrialConfig, stats: TrialStats) -> dict:
    bound = thm51_bound(cfg.n1, cfg.n2, cfg.r, cfg.d)
    return {
        "kind": "product_support",
        "m": cfg.m, "n": cfg.n, "n1": cfg.n1, "n2": cfg.n2,
        "r": cfg.r, "d": cfg.d,
        "trials": stats.trials,
        "failures": stats.failures,
        "fail_s_deficient": stats.fail_s_deficient,
        "fail_excess": stats.fail_excess,
        "fail_both": stats.fail_both,
        "empirical_log2": f"{stats.empirical_log2:.4f}",
        "bound_log2": f"{bound.log2:.4f}",
        "wilson_upper_log2": f"{stats.wilson_upper_log2:.4f}",
        "pass": stats.wilson_upper <= bound.value,
    }


def dfr_row(cfg: TrialConfig, stats: TrialStats) -> dict:
    params = cfg.params
    bound = dfr_bound_for(params)
    return {
        "kind": "dfr",
        "name": params.name,
        "n": params.n, "k": params.k, "m": params.m,
        "r": params.r, "d": params.d, "ell": params.ell,
        "trials": stats.trials,
        "failures": stats.failures,
        "fail_s_deficient": stats.fail_s_deficient,
        "fail_excess": stats.fail_excess,
        "fail_both": stats.fail_both,
        "empirical_log2": f"{stats.empirical_log2:.4f}",
        "bound_log2": f"{bound.log2:.4f}",
        "wilson_upper_log2": f"{stats.wilson_upper_log2:.4f}",
        "pass": stats.wilson_upper <= bound.value,
    }


def write_csv(out: IO[str], rows: Iterable[Mapping]) -> None:
    rows = list(rows)
    if not rows:
        return
    writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    writer.writerows(rows)
