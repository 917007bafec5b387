"""Closed-form quantities: subspace counts, decoding-failure-rate bounds,
size formulas, and attack-cost estimators (all at q = 2).

Probabilities and costs are carried in log2 domain so magnitudes like
2^-190 survive double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from .kem import ParameterSet
from .sampler import SEED_BYTES


class DomainError(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


class NoFeasibleA(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Log2Real:
    """Nonnegative real carried as its log2 (-inf encodes zero)."""
    log2: float

    @classmethod
    def from_value(cls, x: float) -> "Log2Real":
        if x < 0:
            raise DomainError("Log2Real holds nonnegative values")
        return cls(math.log2(x) if x else -math.inf)

    @classmethod
    def exp2(cls, e: float) -> "Log2Real":
        return cls(float(e))

    @property
    def value(self) -> float:
        return 2.0 ** self.log2 if self.log2 != -math.inf else 0.0

    @property
    def neg_log2(self) -> float:
        return -self.log2

    def __add__(self, other: "Log2Real") -> "Log2Real":
        hi, lo = sorted((self.log2, other.log2), reverse=True)
        if hi == -math.inf:
            return Log2Real(-math.inf)
        return Log2Real(hi + math.log2(1.0 + 2.0 ** (lo - hi)))

    def __mul__(self, other: "Log2Real") -> "Log2Real":
        return Log2Real(self.log2 + other.log2)


# phi(1/2) = prod_{k>=1} (1 - 2^-k); 64 factors leave a tail below 2^-64
PHI_HALF = reduce(lambda acc, k: acc * (1.0 - 2.0 ** -k), range(1, 65), 1.0)
LOG2_INV_PHI_HALF = -math.log2(PHI_HALF)


def gaussian_binomial_exact(r: int, m: int) -> int:
    """Number of r-dimensional subspaces of F_2^m, as an exact integer."""
    if r < 0 or m < 0 or r > m:
        raise DomainError(f"need 0 <= r <= m, got r={r}, m={m}")
    num = 1
    den = 1
    for i in range(r):
        num *= (1 << m) - (1 << i)
        den *= (1 << r) - (1 << i)
    return num // den


def gaussian_binomial(r: int, m: int) -> Log2Real:
    if r < 0 or m < 0 or r > m:
        raise DomainError(f"need 0 <= r <= m, got r={r}, m={m}")
    log2 = sum(math.log2((1 << m) - (1 << i)) - math.log2((1 << r) - (1 << i))
               for i in range(r))
    return Log2Real(log2)


def euler_phi_bound(c: int, m: int) -> Log2Real:
    """Upper bound (1/phi(1/2)) * 2^{c(m-c)} on the Gaussian binomial."""
    if c < 0 or c > m:
        raise DomainError(f"need 0 <= c <= m, got c={c}, m={m}")
    return Log2Real(LOG2_INV_PHI_HALF + c * (m - c))


def dfr_bound_basic(n: int, k: int, m: int, r: int, d: int) -> Log2Real:
    """Single-syndrome failure bound: 2^{-(d-1)(m-rd-r)} + 2^{rd-(n-k)-1}."""
    _check_positive(n=n, k=k, m=m, r=r, d=d)
    return (Log2Real.exp2(-(d - 1) * (m - r * d - r))
            + Log2Real.exp2(r * d - (n - k) - 1))


def dfr_bound_ms(n: int, k: int, m: int, r: int, d: int, ell: int) -> Log2Real:
    """Multi-syndrome failure bound:
    2^{-(d-1)(m-rd-r)} + (n-k) * 2^{rd-(n-k)ell}."""
    _check_positive(n=n, k=k, m=m, r=r, d=d, ell=ell)
    if k < ell:
        raise HypothesisViolated("the bound needs k >= ell")
    first = Log2Real.exp2(-(d - 1) * (m - r * d - r))
    second = Log2Real.exp2(math.log2(n - k) + r * d - (n - k) * ell)
    return first + second


def prob_dim_excess(c: int, m: int, r: int, d: int,
                    refined: bool = False) -> Log2Real:
    """Bound on P(dim of the intersection >= r + c) given S = EF.

    Generic form: (1/phi(1/2)) * 2^{c(rd-r-c+(d-1)(rd-m))}. The refined
    flag selects the sharper c = 1 form 2^{rd-r+(d-1)(rd-m)}.
    """
    if c < 1:
        raise DomainError("c must be >= 1")
    if refined:
        if c != 1:
            raise DomainError("the refined bound is for c = 1 only")
        return Log2Real.exp2(r * d - r + (d - 1) * (r * d - m))
    return Log2Real.exp2(
        LOG2_INV_PHI_HALF + c * (r * d - r - c + (d - 1) * (r * d - m)))


def dfr_bound_xms(n: int, k: int, m: int, r: int, d: int, ell: int) -> Log2Real:
    """Extended-decoder failure bound:
    (1/phi(1/2)) * 2^{2(rd-r-2+(d-1)(rd-m))} + (n-k) * 2^{rd-(n-k)ell}."""
    _check_positive(n=n, k=k, m=m, r=r, d=d, ell=ell)
    if k < ell:
        raise HypothesisViolated("the bound needs k >= ell")
    first = Log2Real.exp2(
        LOG2_INV_PHI_HALF + 2 * (r * d - r - 2 + (d - 1) * (r * d - m)))
    second = Log2Real.exp2(math.log2(n - k) + r * d - (n - k) * ell)
    return first + second


def dfr_bound_for(params: ParameterSet) -> Log2Real:
    fn = dfr_bound_xms if params.is_extended else dfr_bound_ms
    return fn(params.n, params.k, params.m, params.r, params.d, params.ell)


def rgv_half_rate(m: int, n: int) -> float:
    """Asymptotic rank Gilbert-Varshamov distance for half-rate codes."""
    if m <= 0 or n <= 0:
        raise DomainError("m and n must be positive")
    return (m + n - math.sqrt(m * m + n * n)) / 2


@dataclass(frozen=True)
class Sizes:
    pk_bytes: int
    sk_bytes: int
    ct_bytes: int
    ss_bytes: int


def sizes(params: ParameterSet) -> Sizes:
    """Published ceiling formulas (independent of the codec, which must
    agree byte for byte)."""
    n, k, m, ell = params.n, params.k, params.m, params.ell
    if params.is_ideal:
        pk = -(-((n - k) * m) // 8)
    else:
        pk = -(-(k * (n - k) * m) // 8)
    ct = -(-((n - k) * ell * m) // 8)
    if params.is_extended:
        ct += 64
    return Sizes(pk, SEED_BYTES, ct, 64)


# ---------------------------------------------------------------------------
# Attack costs
# ---------------------------------------------------------------------------

def attack_combinatorial_rsd(n: int, k: int, m: int, w: int,
                             omega: float = 2.0) -> Log2Real:
    """min((n-k)^w m^w q^{(w-1)(k+1)}, (km)^w q^{w ceil(km/n) - m}) with the
    exponent w written as omega."""
    if w < 1:
        raise DomainError("weight must be >= 1")
    t1 = omega * (math.log2(n - k) + math.log2(m)) + (w - 1) * (k + 1)
    t2 = omega * math.log2(k * m) + w * math.ceil(k * m / n) - m
    return Log2Real.exp2(min(t1, t2))


def attack_algebraic_rsd(n: int, k: int, m: int, r: int,
                         omega: float = 2.0) -> tuple[Log2Real, int]:
    """q^{ar} m C(n-k-1, r) C(n-a, r)^{omega-1} with a minimal such that
    m C(n-k-1, r) >= C(n-a, r) - 1."""
    if r > n - k - 1:
        raise DomainError("algebraic attack needs r <= n - k - 1")
    lhs = m * math.comb(n - k - 1, r)
    chosen = None
    for a in range(0, n - r + 1):
        if lhs >= math.comb(n - a, r) - 1:
            chosen = a
            break
    if chosen is None:
        raise NoFeasibleA("no feasible specialization count")
    cost = (chosen * r + math.log2(m) + math.log2(math.comb(n - k - 1, r))
            + (omega - 1) * math.log2(math.comb(n - chosen, r)))
    return Log2Real.exp2(cost), chosen


def attack_lrpc_distinguisher(n: int, k: int, m: int, d: int,
                              omega: float = 2.0) -> Log2Real:
    """Cost of finding a weight-d codeword in the shortened dual subcode
    [n - floor((n-k)/d), . ]; the search instance keeps the dual codimension
    n - k, so it runs at length n' and dimension n' - (n-k)."""
    if d < 1:
        raise DomainError("d must be >= 1")
    shorten = (n - k) // d
    n2 = n - shorten
    k2 = n2 - (n - k)
    best = attack_combinatorial_rsd(n2, k2, m, d, omega)
    if d <= n2 - k2 - 1:
        alg, _ = attack_algebraic_rsd(n2, k2, m, d, omega)
        if alg.log2 < best.log2:
            best = alg
    return best


def effective_syndromes(params: ParameterSet) -> int:
    """Sample count N an attacker gets: ell, or k*ell after ideal rotations."""
    return params.k * params.ell if params.is_ideal else params.ell


def rsl_sample_guard(n: int, k: int, r: int, ell_effective: int) -> bool:
    """True iff N <= kr, the regime without the subexponential attack."""
    return ell_effective <= k * r


@dataclass(frozen=True)
class AttackReport:
    omega: float
    combinatorial_log2: float
    algebraic_log2: float
    algebraic_a: int
    lrpc_distinguisher_log2: float

    @property
    def minimum_log2(self) -> float:
        return min(self.combinatorial_log2, self.algebraic_log2,
                   self.lrpc_distinguisher_log2)


def attack_report(params: ParameterSet, omega: float = 2.0) -> AttackReport:
    n, k, m = params.n, params.k, params.m
    comb = attack_combinatorial_rsd(n, k, m, params.r, omega)
    alg, a = attack_algebraic_rsd(n, k, m, params.r, omega)
    dist = attack_lrpc_distinguisher(n, k, m, params.d, omega)
    return AttackReport(omega, comb.log2, alg.log2, a, dist.log2)


def security_warnings(params: ParameterSet, omega: float = 2.0) -> list[str]:
    """Advisory only: the exact accounting behind published security levels
    depends on conventions (omega above all) that are a caller choice."""
    out = []
    report = attack_report(params, omega)
    if params.security_bits and report.minimum_log2 < params.security_bits:
        out.append(
            f"cheapest attack 2^{report.minimum_log2:.1f} is below the "
            f"{params.security_bits}-bit target at omega={omega}")
    if not rsl_sample_guard(params.n, params.k, params.r,
                            effective_syndromes(params)):
        out.append("N > kr: subexponential support-learning attack applies")
    return out


# ---------------------------------------------------------------------------
# Report rendering
# ---------------------------------------------------------------------------

def params_kv_lines(params: ParameterSet, omega: float = 2.0) -> list[str]:
    """Machine-readable key=value lines, one quantity per line."""
    s = sizes(params)
    report = attack_report(params, omega)
    bound = dfr_bound_for(params)
    n_eff = effective_syndromes(params)
    lines = [
        f"name={params.name}",
        f"structure={params.structure}",
        f"decoding={params.decoding}",
        "q=2",
        f"n={params.n}",
        f"k={params.k}",
        f"m={params.m}",
        f"r={params.r}",
        f"d={params.d}",
        f"ell={params.ell}",
        f"security_bits={params.security_bits}",
        f"dfr_claimed_log2={params.claimed_dfr_log2}",
        f"dfr_bound_log2={bound.neg_log2:.3f}",
        f"pk_bytes={s.pk_bytes}",
        f"sk_bytes={s.sk_bytes}",
        f"ct_bytes={s.ct_bytes}",
        f"ss_bytes={s.ss_bytes}",
        f"omega={omega}",
        f"attack_combinatorial_log2={report.combinatorial_log2:.3f}",
        f"attack_algebraic_log2={report.algebraic_log2:.3f}",
        f"attack_algebraic_a={report.algebraic_a}",
        f"attack_lrpc_distinguisher_log2={report.lrpc_distinguisher_log2:.3f}",
        f"attack_min_log2={report.minimum_log2:.3f}",
        f"rsl_samples={n_eff}",
        f"rsl_guard_ok={rsl_sample_guard(params.n, params.k, params.r, n_eff)}",
    ]
    return lines


_TABLE_COLUMNS = ("name", "decoding", "n", "k", "m", "r", "d", "ell",
                  "security", "dfr", "pk", "ct", "attacks_min")


def render_params_table(param_sets, omega: float = 2.0) -> str:
    rows = [_TABLE_COLUMNS]
    for p in param_sets:
        s = sizes(p)
        bound = dfr_bound_for(p)
        report = attack_report(p, omega)
        rows.append((p.name, p.decoding, str(p.n), str(p.k), str(p.m),
                     str(p.r), str(p.d), str(p.ell),
                     str(p.security_bits or "-"),
                     f"{bound.neg_log2:.1f}",
                     str(s.pk_bytes), str(s.ct_bytes),
                     f"{report.minimum_log2:.1f}"))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in rows)


def _check_positive(**kwargs):
    for name, value in kwargs.items():
        if value < 1:
            raise DomainError(f"{name} must be positive, got {value}")
