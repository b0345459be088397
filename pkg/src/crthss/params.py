"""Coprime modulus sequences, hierarchy layouts, and their validation.

A compact sequence is a prime m0 together with pairwise-coprime moduli
m_1 < ... < m_n squeezed into the open interval (k*m0, k*m0 + floor(m0^theta)).
theta is kept rational so the interval bound is an exact integer root; no
floating point enters any validity decision.

Participants are numbered 1..n across levels in order, and participant i owns
modulus m_i. A hierarchy stores the per-level sizes n_1..n_m and thresholds
t_1 < ... < t_m with t_l <= N_l (cumulative size).
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from .errors import IntervalExhausted, ThresholdOutOfRange
from .oneway import OwfFamily

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed witness set, deterministic below 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    if n in small:
        return True
    if any(n % p == 0 for p in small):
        return False
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def integer_root(x: int, q: int) -> int:
    """Largest r with r**q <= x, exact (Newton on integers)."""
    if x < 0 or q < 1:
        raise ValueError("need x >= 0 and q >= 1")
    if x in (0, 1) or q == 1:
        return x
    r = 1 << ((x.bit_length() + q - 1) // q)  # upper start
    while True:
        nxt = ((q - 1) * r + x // r ** (q - 1)) // q
        if nxt >= r:
            break
        r = nxt
    while r ** q > x:
        r -= 1
    return r


def compact_width(m0: int, theta: Fraction) -> int:
    """floor(m0^theta) for rational theta = p/q, via an exact integer q-th root."""
    theta = Fraction(theta)
    return integer_root(m0 ** theta.numerator, theta.denominator)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validator: empty violation list means pass."""

    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return "pass" if self.ok else "; ".join(self.violations)


@dataclass(frozen=True)
class CompactSequence:
    """Public modulus ladder: prime m0 plus moduli m_1..m_n, and the (k, theta)
    compactness parameters they are supposed to satisfy.

    Construction does not validate the number-theoretic invariants; run
    :func:`validate_compact` to get a violation report.
    """

    m0: int
    moduli: tuple[int, ...]
    k: int = 1
    theta: Fraction = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        object.__setattr__(self, "theta", Fraction(self.theta))

    @property
    def n(self) -> int:
        return len(self.moduli)

    def modulus_of(self, participant: int) -> int:
        """Modulus owned by 1-based participant index."""
        if not 1 <= participant <= self.n:
            raise ValueError(f"participant {participant} not in [1, {self.n}]")
        return self.moduli[participant - 1]

    def prefix_product(self, t: int) -> int:
        """prod(m_1..m_t); the dealer's range bound for threshold t."""
        if not 0 <= t <= self.n:
            raise ThresholdOutOfRange(f"t={t} with only {self.n} moduli")
        return prod(self.moduli[:t])


def generate_compact_sequence(
    m0: int, n: int, k: int, theta: Fraction, rng_seed: int
) -> CompactSequence:
    """Draw n pairwise-coprime integers from (k*m0, k*m0 + floor(m0^theta)).

    Candidates are scanned in seeded random order and accepted greedily when
    coprime to m0 and to everything already accepted, then sorted ascending.
    Deterministic for a given seed. Raises IntervalExhausted when the greedy
    pass cannot place n values (m0 too small for the requested n and theta).
    """
    if not is_prime(m0):
        raise ValueError(f"m0 = {m0} is not prime")
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise ValueError(f"theta must be in (0, 1), got {theta}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    lo = k * m0
    width = compact_width(m0, theta)
    candidates = list(range(lo + 1, lo + width))
    rng = random.Random(rng_seed)
    rng.shuffle(candidates)
    accepted: list[int] = []
    for c in candidates:
        if gcd(c, m0) != 1:
            continue
        if all(gcd(c, a) == 1 for a in accepted):
            accepted.append(c)
            if len(accepted) == n:
                break
    if len(accepted) < n:
        raise IntervalExhausted(
            f"interval ({lo}, {lo + width}) yielded only {len(accepted)} of "
            f"{n} pairwise-coprime values"
        )
    return CompactSequence(m0=m0, moduli=tuple(sorted(accepted)), k=k, theta=theta)


def validate_sequence_structure(seq: CompactSequence) -> ValidationReport:
    """Primality of m0, strict ordering, pairwise coprimality. These are the
    properties dealing and reconstruction actually rely on."""
    bad: list[str] = []
    if not is_prime(seq.m0):
        bad.append(f"m0 = {seq.m0} is not prime")
    full = (seq.m0,) + seq.moduli
    for idx in range(1, len(full)):
        if full[idx] <= full[idx - 1]:
            bad.append(
                f"not strictly increasing at position {idx}: "
                f"{full[idx - 1]} >= {full[idx]}"
            )
    for i in range(len(full)):
        for j in range(i + 1, len(full)):
            g = gcd(full[i], full[j])
            if g != 1:
                bad.append(
                    f"gcd(m_{i}, m_{j}) = gcd({full[i]}, {full[j]}) = {g}"
                )
    return ValidationReport(tuple(bad))


def validate_compact(seq: CompactSequence) -> ValidationReport:
    """Structural checks plus the open compactness interval bounds.
    Every violation is reported with its indices."""
    bad = list(validate_sequence_structure(seq).violations)
    lo = seq.k * seq.m0
    hi = lo + compact_width(seq.m0, seq.theta)
    for idx, m in enumerate(seq.moduli, start=1):
        if not lo < m < hi:
            bad.append(f"m_{idx} = {m} outside open interval ({lo}, {hi})")
    return ValidationReport(tuple(bad))


def check_ab_constraint(seq: CompactSequence, t: int) -> bool:
    """True iff m0 * prod(m_1..m_{t-1}) < prod(m_1..m_t), compared exactly."""
    if not 1 <= t <= seq.n:
        raise ThresholdOutOfRange(f"t={t} with only {seq.n} moduli")
    return seq.m0 * seq.prefix_product(t - 1) < seq.prefix_product(t)


@dataclass(frozen=True)
class Hierarchy:
    """Level sizes n_1..n_m and cumulative thresholds t_1 < ... < t_m."""

    level_sizes: tuple[int, ...]
    thresholds: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "level_sizes", tuple(int(v) for v in self.level_sizes))
        object.__setattr__(self, "thresholds", tuple(int(v) for v in self.thresholds))

    @property
    def m(self) -> int:
        """Number of levels."""
        return len(self.level_sizes)

    @property
    def n(self) -> int:
        """Total number of participants."""
        return sum(self.level_sizes)

    @property
    def cumulative(self) -> tuple[int, ...]:
        """N_l = n_1 + ... + n_l for l = 1..m."""
        acc, out = 0, []
        for size in self.level_sizes:
            acc += size
            out.append(acc)
        return tuple(out)

    def level_of(self, participant: int) -> int:
        """Level l with N_{l-1} < participant <= N_l."""
        if not 1 <= participant <= self.n:
            raise ValueError(f"participant {participant} not in [1, {self.n}]")
        for lvl, upper in enumerate(self.cumulative, start=1):
            if participant <= upper:
                return lvl
        raise AssertionError("unreachable")

    def members_of(self, level: int) -> range:
        """Participant indices belonging to one level."""
        if not 1 <= level <= self.m:
            raise ValueError(f"level {level} not in [1, {self.m}]")
        cum = (0,) + self.cumulative
        return range(cum[level - 1] + 1, cum[level] + 1)


def validate_hierarchy(h: Hierarchy) -> ValidationReport:
    """Check positive sizes, strictly increasing thresholds, and t_l <= N_l."""
    bad: list[str] = []
    if len(h.level_sizes) == 0:
        bad.append("no levels")
    if len(h.level_sizes) != len(h.thresholds):
        bad.append(
            f"{len(h.level_sizes)} level sizes but {len(h.thresholds)} thresholds"
        )
        return ValidationReport(tuple(bad))
    for lvl, size in enumerate(h.level_sizes, start=1):
        if size < 1:
            bad.append(f"level {lvl} size {size} < 1")
    if h.thresholds and h.thresholds[0] < 1:
        bad.append(f"t_1 = {h.thresholds[0]} < 1")
    for lvl in range(1, len(h.thresholds)):
        if h.thresholds[lvl] <= h.thresholds[lvl - 1]:
            bad.append(
                f"thresholds not strictly increasing: t_{lvl} = "
                f"{h.thresholds[lvl - 1]} >= t_{lvl + 1} = {h.thresholds[lvl]}"
            )
    for lvl, (t, upper) in enumerate(zip(h.thresholds, h.cumulative), start=1):
        if t > upper:
            bad.append(f"t_{lvl} = {t} > N_{lvl} = {upper}")
    return ValidationReport(tuple(bad))


@dataclass(frozen=True)
class SchemeParams:
    """Everything public a deal needs: modulus ladder, hierarchy, OWF family."""

    sequence: CompactSequence
    hierarchy: Hierarchy
    owf: OwfFamily = field(default_factory=OwfFamily)


def validate_dealable(params: SchemeParams) -> ValidationReport:
    """What a deal needs: structural sequence validity, hierarchy validity,
    size agreement, and the Asmuth-Bloom product inequality at every level
    threshold. The compactness interval is deliberately not required here;
    it governs the asymptotic quality of the scheme, not its correctness."""
    bad = [
        f"sequence: {v}"
        for v in validate_sequence_structure(params.sequence).violations
    ]
    bad += [f"hierarchy: {v}" for v in validate_hierarchy(params.hierarchy).violations]
    if params.sequence.n != params.hierarchy.n:
        bad.append(
            f"{params.sequence.n} moduli for {params.hierarchy.n} participants"
        )
        return ValidationReport(tuple(bad))
    if not bad:
        for lvl, t in enumerate(params.hierarchy.thresholds, start=1):
            if not check_ab_constraint(params.sequence, t):
                bad.append(f"Asmuth-Bloom inequality fails at level {lvl} (t={t})")
    return ValidationReport(tuple(bad))


def validate_params(params: SchemeParams) -> ValidationReport:
    """Full validation: everything a deal needs plus the compactness bounds."""
    bad = list(validate_dealable(params).violations)
    lo = params.sequence.k * params.sequence.m0
    hi = lo + compact_width(params.sequence.m0, params.sequence.theta)
    for idx, m in enumerate(params.sequence.moduli, start=1):
        if not lo < m < hi:
            bad.append(f"sequence: m_{idx} = {m} outside open interval ({lo}, {hi})")
    return ValidationReport(tuple(bad))
