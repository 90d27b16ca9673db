"""Stokes multipliers: general block assembly, the Airy pipeline, regularity
test and differential Galois group classification.

Given a quiver with nodes in ascending dominance order, the two multipliers
at infinity are

    S_b  = unitriangular, block (i, j) = u_i v_j above the diagonal,
    S_mb = block lower triangular, diagonal blocks 1 - u_k v_k,
           block (i, j) = -u_i v_j below the diagonal,

and the 2(n+m) Stokes matrices of the ramified Airy connection repeat the
pair (inverse(S_mb), S_b) around the circle.  The block computation is always
the construction path; the closed index formula for the entries is used only
as a cross-check, so a convention error in it cannot corrupt output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycNum, lambda_coeffs
from .errors import CoprimalityError, InvariantError
from .hypergeom import Quiver, build_airy_quiver
from .linalg import ExactMat
from .ordering import DominanceOrder, dominance_order, generic_direction


def assemble(quiver: Quiver) -> tuple[ExactMat, ExactMat]:
    """Stokes multipliers (S_b, S_mb) of a quiver with dominance-ordered nodes.

    Works for arbitrary phi-dimensions; raises if some diagonal block
    1 - u_k v_k is singular.
    """
    quiver.validate()
    order = quiver.order
    dims = [node.phi_dim for node in quiver.nodes]
    total = sum(dims)
    offsets = [sum(dims[:i]) for i in range(len(dims))]

    sb = [[CycNum.zero(order) for _ in range(total)] for _ in range(total)]
    smb = [[CycNum.zero(order) for _ in range(total)] for _ in range(total)]
    one = CycNum.one(order)

    for i, node_i in enumerate(quiver.nodes):
        oi = offsets[i]
        for r in range(dims[i]):
            sb[oi + r][oi + r] = one
        diag = ExactMat.identity(dims[i], order) - node_i.u @ node_i.v
        for r in range(dims[i]):
            for s in range(dims[i]):
                smb[oi + r][oi + s] = diag[r, s]
        for j, node_j in enumerate(quiver.nodes):
            if i == j:
                continue
            block = node_i.u @ node_j.v
            oj = offsets[j]
            for r in range(dims[i]):
                for s in range(dims[j]):
                    if i < j:
                        sb[oi + r][oj + s] = block[r, s]
                    else:
                        smb[oi + r][oj + s] = -block[r, s]

    return ExactMat(order, sb), ExactMat(order, smb)


@dataclass(frozen=True)
class StokesData:
    """The full Stokes description of the ramified Airy connection."""

    n: int
    m: int
    order: int
    theta0: Fraction                # generic direction, as a fraction of 2*pi
    lam: tuple[CycNum, ...]
    dominance: DominanceOrder
    S_b: ExactMat
    S_mb: ExactMat
    gauge: str = "phi_k = P^k c"

    SEQUENCE_RULE = "S_even=S_b, S_odd=inv(S_mb)"

    def stokes_sequence(self) -> list[ExactMat]:
        """S_1, ..., S_2(n+m): odd entries inverse(S_mb), even entries S_b."""
        smb_inv = self.S_mb.inverse()
        return [smb_inv if j % 2 else self.S_b for j in range(1, 2 * (self.n + self.m) + 1)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "theta0": {"num": self.theta0.numerator, "den": self.theta0.denominator, "of": "2pi"},
            "lambda": [lam.to_json() for lam in self.lam],
            "dominance": list(self.dominance.ascending),
            "S_b": self.S_b.to_json(),
            "S_mb": self.S_mb.to_json(),
            "sequence_rule": self.SEQUENCE_RULE,
            "gauge": self.gauge,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StokesData":
        n, m = obj["n"], obj["m"]
        return cls(
            n=n,
            m=m,
            order=n + m,
            theta0=Fraction(obj["theta0"]["num"], obj["theta0"]["den"]),
            lam=tuple(CycNum.from_json(o) for o in obj["lambda"]),
            dominance=DominanceOrder(n, tuple(obj["dominance"])),
            S_b=ExactMat.from_json(obj["S_b"]),
            S_mb=ExactMat.from_json(obj["S_mb"]),
            gauge=obj["gauge"],
        )


def airy_stokes(n: int, m: int) -> StokesData:
    """Run the whole pipeline for d^n - y^m and return the Stokes data.

    Asserts, exactly: off-diagonal entries of S_b are lambda-coefficients,
    the diagonal of S_mb is -lambda_n throughout, and the entry placement
    matches the index rule s_ij = lambda_((k_j - k_i) mod n).
    """
    if math.gcd(n, m) != 1:
        raise CoprimalityError(f"n={n} and m={m} must be coprime")
    lam = lambda_coeffs(n, m)
    quiver = build_airy_quiver(n, m)
    sb, smb = assemble(quiver)
    dom = dominance_order(n)

    allowed = set(lam[: n - 1])
    minus_lam_n = -lam[n - 1]
    exponents = [node.exponent for node in quiver.nodes]
    for i in range(n):
        if smb[i, i] != minus_lam_n:
            raise InvariantError(f"S_mb diagonal entry {i} is not -lambda_n")
        for j in range(n):
            if i == j:
                continue
            entry = sb[i, j] if i < j else -smb[i, j]
            if entry not in allowed:
                raise InvariantError(f"Stokes entry ({i},{j}) is not a lambda-coefficient")
            expected = lam[(exponents[j] - exponents[i]) % n - 1]
            if entry != expected:
                raise InvariantError(f"Stokes entry ({i},{j}) violates the index rule")

    return StokesData(
        n=n,
        m=m,
        order=n + m,
        theta0=generic_direction(n, m),
        lam=lam,
        dominance=dom,
        S_b=sb,
        S_mb=smb,
    )


def is_regular_unipotent(mat: ExactMat) -> bool:
    """True iff (S - 1)^n = 0 and rank(S - 1) = n - 1, computed exactly."""
    if mat.rows != mat.cols:
        raise ValueError("regularity test needs a square matrix")
    n = mat.rows
    shifted = mat - ExactMat.identity(n, mat.order)
    return (shifted ** n).is_zero() and shifted.rank() == n - 1


@dataclass(frozen=True)
class GaloisVerdict:
    group: str
    n_parity: str

    def to_json(self) -> dict:
        return {"group": self.group, "n_parity": self.n_parity}


def galois_group(n: int, m: int) -> GaloisVerdict:
    """Differential Galois group of d^n - y^m: SL(n) for odd n, Sp(n) for even.

    The classification needs n >= 2; a rank-one connection is outside its
    scope.
    """
    if math.gcd(n, m) != 1:
        raise CoprimalityError(f"n={n} and m={m} must be coprime")
    if n < 2:
        raise ValueError("Galois classification requires n >= 2")
    if n % 2:
        return GaloisVerdict(group=f"SL({n})", n_parity="odd")
    return GaloisVerdict(group=f"Sp({n})", n_parity="even")


@dataclass(frozen=True)
class FourierPair:
    """Stokes data of the types (n, m) and (m, n), which share Q(zeta_{n+m}).

    Emitted side by side for comparison; no equivalence between the two is
    asserted.
    """

    first: StokesData
    second: StokesData

    def to_json(self) -> dict:
        return {
            "order": self.first.order,
            "first": self.first.to_json(),
            "second": self.second.to_json(),
        }


def fourier_pair_report(n: int, m: int) -> FourierPair:
    return FourierPair(first=airy_stokes(n, m), second=airy_stokes(m, n))
