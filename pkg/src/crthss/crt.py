"""Exact integer congruence solving.

All arithmetic is arbitrary precision; nothing here ever touches floats or
fixed-width types. The solver uses the direct summation form

    x = sum(lambda_i * M_i * x_i) mod M,    M = prod(m_i), M_i = M / m_i,
    lambda_i = M_i^-1 mod m_i,

rather than an incremental pairwise fold, so the basis terms are individually
inspectable via :func:`crt_basis`.
"""

from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

from .errors import EmptySystem, ModuliNotPairwiseCoprime, NotCoprime


@dataclass(frozen=True)
class Congruence:
    """One constraint ``x = residue (mod modulus)``.

    Residues must already be normalized into [0, modulus); negative residues
    are rejected so that callers keep normalization explicit.
    """

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(
                f"residue {self.residue} not in [0, {self.modulus})"
            )


@dataclass(frozen=True)
class CrtSolution:
    """The unique solution in [0, combined_modulus) of a congruence system."""

    value: int
    combined_modulus: int


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclidean algorithm.

    Returns ``(g, u, v)`` with ``g = gcd(a, b) >= 0`` and ``u*a + v*b = g``.
    Raises ValueError if both arguments are zero.
    """
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def mod_inverse(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m``, in [0, m).

    Raises NotCoprime when gcd(a, m) != 1.
    """
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    g, u, _ = ext_gcd(a % m, m)
    if g != 1:
        raise NotCoprime(f"gcd({a}, {m}) = {g}, inverse does not exist")
    return u % m


def _check_pairwise_coprime(moduli: Sequence[int]) -> None:
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            g = gcd(moduli[i], moduli[j])
            if g != 1:
                raise ModuliNotPairwiseCoprime(
                    f"moduli {moduli[i]} and {moduli[j]} share factor {g}"
                )


def crt_basis(moduli: Sequence[int]) -> tuple[int, list[tuple[int, int]]]:
    """Combined modulus M and the basis terms (M_i, lambda_i) per modulus.

    Each e_i = lambda_i * M_i satisfies e_i = 1 (mod m_i) and
    e_i = 0 (mod m_j) for j != i.
    """
    _check_pairwise_coprime(moduli)
    combined = prod(moduli)
    terms = []
    for m in moduli:
        partial = combined // m
        terms.append((partial, mod_inverse(partial, m)))
    return combined, terms


def crt_solve(system: Sequence[Congruence]) -> CrtSolution:
    """Solve a system of congruences with pairwise-coprime moduli.

    Returns the unique x in [0, M) with x = residue_i (mod modulus_i) for
    every congruence, where M is the product of the moduli.

    Raises EmptySystem for an empty input and ModuliNotPairwiseCoprime when
    two moduli share a factor (the offending pair is named).
    """
    if not system:
        raise EmptySystem("need at least one congruence")
    combined, terms = crt_basis([c.modulus for c in system])
    acc = 0
    for c, (partial, lam) in zip(system, terms):
        acc += lam * partial * c.residue
    return CrtSolution(value=acc % combined, combined_modulus=combined)
