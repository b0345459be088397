"""Disjunctive hierarchical dealing and reconstruction.

A set is authorized when SOME level l has at least t_l of its members inside
the first N_l participants. Every level gets its own lift y_l = s + alpha_l*m0
below prod(m_1..m_{t_l}); participants outside the top level hold a random
value c_i and the published offset w[i, l] = (y_l - h_l(c_i)) mod m_i converts
it into a level-l residue. Top-level participants hold y_m mod m_i directly
and have no published offsets.

Deals are reproducible: for a given seed the dealer draws alpha_1..alpha_m
(by level), then c_1..c_{N_{m-1}} (by participant index).
"""

import random
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .crt import Congruence, crt_solve
from .errors import (
    InvalidParams,
    MissingPublicValue,
    NotAuthorized,
    SecretOutOfRange,
)
from .oneway import eval_owf
from .params import SchemeParams, validate_dealable


@dataclass(frozen=True)
class Share:
    """One participant's private value together with its public coordinates."""

    participant: int
    level: int
    modulus: int
    value: int


@dataclass(frozen=True)
class PublicBundle:
    """Published masked values, keyed by (participant, level), plus params.

    Key set: every participant below the top level has one entry per level
    from its own up to the top. Treated as immutable after dealing.
    """

    params: SchemeParams
    w: Mapping[tuple[int, int], int]


@dataclass(frozen=True)
class DealResult:
    shares: tuple[Share, ...]
    public: PublicBundle
    dealer_secrets: Optional[dict] = None


def _check_dealable(secret: int, params: SchemeParams) -> None:
    report = validate_dealable(params)
    if not report.ok:
        raise InvalidParams(str(report))
    if not 0 <= secret < params.sequence.m0:
        raise SecretOutOfRange(
            f"secret {secret} not in [0, {params.sequence.m0})"
        )


def _draw_lift(rng: random.Random, residue: int, m0: int, bound: int) -> tuple[int, int]:
    """Uniform alpha with residue + alpha*m0 in [0, bound); returns (alpha, y)."""
    alpha = rng.randrange((bound - 1 - residue) // m0 + 1)
    return alpha, residue + alpha * m0


def dhss_deal(
    secret: int,
    params: SchemeParams,
    rng_seed: int,
    keep_dealer_secrets: bool = False,
) -> DealResult:
    """Deal ``secret`` disjunctively. Deterministic for a given seed.

    dealer_secrets (y_l and alpha_l per level) is populated only when
    keep_dealer_secrets is set; it must never leave a test or audit context.
    """
    _check_dealable(secret, params)
    seq, hier = params.sequence, params.hierarchy
    rng = random.Random(rng_seed)
    alphas, ys = [], []
    for t in hier.thresholds:
        alpha, y = _draw_lift(rng, secret, seq.m0, seq.prefix_product(t))
        alphas.append(alpha)
        ys.append(y)
    n_masked = hier.cumulative[-2] if hier.m > 1 else 0
    shares = []
    for i in range(1, n_masked + 1):
        m_i = seq.modulus_of(i)
        shares.append(
            Share(participant=i, level=hier.level_of(i), modulus=m_i,
                  value=rng.randrange(m_i))
        )
    for i in range(n_masked + 1, hier.n + 1):
        m_i = seq.modulus_of(i)
        shares.append(
            Share(participant=i, level=hier.m, modulus=m_i, value=ys[-1] % m_i)
        )
    w = {}
    for share in shares[:n_masked]:
        for level in range(share.level, hier.m + 1):
            mask = eval_owf(params.owf, level, share.value, share.modulus)
            w[(share.participant, level)] = (ys[level - 1] - mask) % share.modulus
    secrets_out = {"y": tuple(ys), "alpha": tuple(alphas)} if keep_dealer_secrets else None
    return DealResult(
        shares=tuple(shares),
        public=PublicBundle(params=params, w=dict(w)),
        dealer_secrets=secrets_out,
    )


def dhss_authorized_level(
    members: frozenset | set | Sequence[int], params: SchemeParams
) -> Optional[int]:
    """Smallest level whose cumulative threshold the set meets, else None."""
    got = set(members)
    hier = params.hierarchy
    for level, (upper, t) in enumerate(zip(hier.cumulative, hier.thresholds), start=1):
        if sum(1 for i in got if i <= upper) >= t:
            return level
    return None


def lift_share(
    share: Share, level: int, public: PublicBundle
) -> int:
    """Level-l residue of one share: masked via the published offset for
    participants below the top level, the raw value for top-level holders."""
    hier = public.params.hierarchy
    n_masked = hier.cumulative[-2] if hier.m > 1 else 0
    if share.participant > n_masked:
        return share.value % share.modulus
    key = (share.participant, level)
    if key not in public.w:
        raise MissingPublicValue(
            f"no published value for participant {share.participant} "
            f"at level {level}"
        )
    mask = eval_owf(public.params.owf, level, share.value, share.modulus)
    return (mask + public.w[key]) % share.modulus


def dedupe_shares(shares: Sequence[Share], params: SchemeParams) -> list[Share]:
    """One share per participant, checked against the parameter set."""
    seen: dict[int, Share] = {}
    for s in shares:
        expected = params.sequence.modulus_of(s.participant)
        if s.modulus != expected:
            raise ValueError(
                f"share for participant {s.participant} carries modulus "
                f"{s.modulus}, params say {expected}"
            )
        if s.participant in seen and seen[s.participant].value != s.value:
            raise ValueError(
                f"conflicting shares for participant {s.participant}"
            )
        seen[s.participant] = s
    return [seen[i] for i in sorted(seen)]


def dhss_reconstruct(shares: Sequence[Share], public: PublicBundle) -> int:
    """Recover the secret from an authorized set of shares.

    Uses the smallest qualifying level and every available share inside it;
    the extras only tighten the congruence system.
    """
    params = public.params
    hier = params.hierarchy
    unique = dedupe_shares(shares, params)
    members = {s.participant for s in unique}
    level = dhss_authorized_level(members, params)
    if level is None:
        raise NotAuthorized(
            f"no level threshold met by participants {sorted(members)}",
            failing_levels=tuple(range(1, hier.m + 1)),
        )
    upper = hier.cumulative[level - 1]
    system = [
        Congruence(residue=lift_share(s, level, public), modulus=s.modulus)
        for s in unique
        if s.participant <= upper
    ]
    y = crt_solve(system).value
    return y % params.sequence.m0
