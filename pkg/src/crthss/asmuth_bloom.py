"""Flat (t, n) threshold sharing over a coprime modulus ladder.

The dealer lifts the secret s to y = s + alpha*m0 with y below the product of
the first t moduli and hands participant i the residue y mod m_i. Any t shares
pin y by congruence solving; t - 1 leave roughly prod/(m0 * prod_B) candidates
per secret. alpha is drawn uniformly over its whole valid range, which is what
the candidate-counting analysis assumes.

y = 0 is allowed (secret 0 with alpha 0); the range is [0, prod) throughout.
"""

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .crt import Congruence, crt_solve
from .errors import (
    AbConstraintViolated,
    InconsistentShares,
    SecretOutOfRange,
    ThresholdOutOfRange,
    TooFewShares,
)
from .params import CompactSequence, check_ab_constraint


@dataclass(frozen=True)
class AbDeal:
    """One dealing: the lifted value y = secret + alpha*m0 and all residues.

    shares holds (participant index, y mod m_i) pairs for every participant.
    alpha and y are dealer-side secrets; they are kept here so tests and the
    audit tooling can cross-check, and must never be published.
    """

    secret: int
    alpha: int
    y: int
    shares: tuple[tuple[int, int], ...]


def ab_split(secret: int, t: int, seq: CompactSequence, rng_seed: int) -> AbDeal:
    """Deal ``secret`` with threshold t over the sequence's n participants.

    alpha is uniform over {a >= 0 : secret + a*m0 < m_1*...*m_t}.
    """
    if not 0 <= secret < seq.m0:
        raise SecretOutOfRange(f"secret {secret} not in [0, {seq.m0})")
    if not 1 <= t <= seq.n:
        raise ThresholdOutOfRange(f"t={t} with only {seq.n} moduli")
    if not check_ab_constraint(seq, t):
        raise AbConstraintViolated(
            f"m0 * prod(m_1..m_{t - 1}) >= prod(m_1..m_{t})"
        )
    bound = seq.prefix_product(t)
    rng = random.Random(rng_seed)
    alpha = rng.randrange((bound - 1 - secret) // seq.m0 + 1)
    y = secret + alpha * seq.m0
    shares = tuple((i, y % m) for i, m in enumerate(seq.moduli, start=1))
    return AbDeal(secret=secret, alpha=alpha, y=y, shares=shares)


def _collect(shares: Iterable[tuple[int, int]], seq: CompactSequence) -> dict[int, int]:
    by_index: dict[int, int] = {}
    for i, value in shares:
        if not 1 <= i <= seq.n:
            raise ValueError(f"participant {i} not in [1, {seq.n}]")
        if i in by_index and by_index[i] != value:
            raise InconsistentShares(
                f"participant {i} appears with values {by_index[i]} and {value}"
            )
        by_index[i] = value
    return by_index


def ab_reconstruct(
    shares: Sequence[tuple[int, int]], t: int, seq: CompactSequence
) -> int:
    """Recover the secret from at least t (participant, value) pairs.

    All supplied shares enter the congruence system; extras tighten the
    combined modulus and never change a consistent answer. A solution at or
    above prod(m_1..m_t) cannot come from one deal and is rejected
    (best-effort inconsistency detection).
    """
    by_index = _collect(shares, seq)
    if len(by_index) < t:
        raise TooFewShares(f"got {len(by_index)} distinct shares, need {t}")
    system = [
        Congruence(residue=value, modulus=seq.modulus_of(i))
        for i, value in sorted(by_index.items())
    ]
    y = crt_solve(system).value
    if y >= seq.prefix_product(t):
        raise InconsistentShares(
            f"recovered value {y} exceeds the dealer bound; shares disagree"
        )
    return y % seq.m0
