"""Number-theoretic obstruction predicates.

The binary-digit criterion: if two exponents share no one-bit, every
biskew map between the corresponding spheres into the critical dimension
hits zero.  `zero_guaranteed` is the refinement for (Z/2)^2-equivariant
maps into a product of sign representations, parameterized by an action
signature (i, j, k).

A True return is a certificate that zero is forced; a False return is
silence, never an existence claim (the minimal dimensions are unknown in
general).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ActionSignature:
    """Multiplicities (i, j, k) of the three sign representations of
    (Z/2)^2 in the codomain: first-only, second-only, and both."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if self.i < 0 or self.j < 0 or self.k < 0:
            raise ValueError("signature multiplicities must be nonnegative")

    @property
    def total(self) -> int:
        return self.i + self.j + self.k


def shares_binary_one(a: int, b: int) -> bool:
    """True iff a and b share a one in some digit of their binary
    expansions, i.e. a & b != 0."""
    if a < 0 or b < 0:
        raise ValueError("arguments must be nonnegative")
    return (a & b) != 0


def biskew_blocked(m: int, n: int) -> bool:
    """True iff every biskew map S^m x S^n -> R^{m+n} hits zero.

    Holds exactly when m and n have disjoint binary digits.  False means
    the criterion is silent, not that a nonsingular map exists.
    """
    return not shares_binary_one(m, n)


def zero_guaranteed(m: int, n: int, sig: ActionSignature) -> bool:
    """True iff every (Z/2)^2-equivariant map S^m x S^n into the signed
    codomain with signature (i, j, k) has a zero.

    Requires the dimensions to balance (m+n = i+j+k with m >= i, n >= j)
    and the residual exponents m-i and n-j to have disjoint binary digits.
    """
    if m < 0 or n < 0:
        raise ValueError("sphere dimensions must be nonnegative")
    if m + n != sig.total or m < sig.i or n < sig.j:
        return False
    return not shares_binary_one(m - sig.i, n - sig.j)
