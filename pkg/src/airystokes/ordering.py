"""Dominance order on the singularities n*mu_n and Stokes-direction geometry.

The reference direction multiplies the n-th roots of unity by
b = exp(2*pi*i/(3n)) and orders them by real part.  Writing the real part of
zeta_n^k * b as cos(2*pi*(3k+1)/(3n)), the integer D(k) = min(3k+1, 3(n-k)-1)
measures the distance of the angle from a multiple of 2*pi, so a larger D
means a smaller real part.  D-values are pairwise distinct (they are 1 mod 3
on one branch and 2 mod 3 on the other), hence the order is total and can be
computed exactly.

Angles are exact fractions of a full turn (Fraction values "of 2*pi"), never
floats, so genericity of a direction is decidable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import CoprimalityError


def _distance_rank(n: int, k: int) -> int:
    return min(3 * k + 1, 3 * (n - k) - 1)


@dataclass(frozen=True)
class DominanceOrder:
    """Permutation of the exponents 0..n-1, most dominated first."""

    n: int
    ascending: tuple[int, ...]

    @property
    def descending(self) -> tuple[int, ...]:
        return tuple(reversed(self.ascending))

    def position(self, exponent: int) -> int:
        return self.ascending.index(exponent)

    def chain_str(self) -> str:
        def label(k: int) -> str:
            return "1" if k == 0 else ("ζ" if k == 1 else f"ζ^{k}")

        return " > ".join(label(k) for k in self.descending)


def dominance_order(n: int) -> DominanceOrder:
    """Exponents k sorted so that Re(zeta_n^k * exp(2*pi*i/(3n))) increases."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    ascending = tuple(sorted(range(n), key=lambda k: -_distance_rank(n, k)))
    return DominanceOrder(n, ascending)


def check_ab(n: int) -> bool:
    """Admissibility of the pair a = i/b, b = exp(2*pi*i/(3n)) for n*mu_n.

    Re(a*b) = Re(i) = 0 holds identically; the separation condition
    Re((s - s') b) != 0 for distinct singularities reduces to the D-values
    being pairwise distinct.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    ranks = [_distance_rank(n, k) for k in range(n)]
    return len(set(ranks)) == n


class StokesDirection(NamedTuple):
    turns: Fraction          # direction as a fraction of a full turn, in [0, 1)
    pair: tuple[int, int]    # exponent pair (i, j), i < j


def stokes_directions(n: int, m: int) -> list[StokesDirection]:
    """All directions where the dominance of a pair of exponentials flips.

    For exponents i < j the difference zeta^i - zeta^j has argument
    pi*(i+j)/n - pi/2, and the 2(n+m) directions for the pair are
    (n*(1+t) - (i+j)) / (2n(n+m)) turns, t = 0..2(n+m)-1.  For n < 2 there
    are no pairs and the list is empty.
    """
    if math.gcd(n, m) != 1:
        raise CoprimalityError(f"n={n} and m={m} must be coprime")
    out: list[StokesDirection] = []
    for i in range(n):
        for j in range(i + 1, n):
            for t in range(2 * (n + m)):
                frac = Fraction(n * (1 + t) - (i + j), 2 * n * (n + m)) % 1
                out.append(StokesDirection(frac, (i, j)))
    out.sort()
    return out


def generic_direction(n: int, m: int) -> Fraction:
    """The reference generic direction, 1/(3n(n+m)) of a full turn."""
    return Fraction(1, 3 * n * (n + m))


def is_generic(theta: Fraction, n: int, m: int) -> bool:
    """True iff the direction (a fraction of a full turn) avoids every Stokes
    direction; the comparison is exact."""
    theta = theta % 1
    return all(d.turns != theta for d in stokes_directions(n, m))
