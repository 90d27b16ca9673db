"""Monodromy of the auxiliary hypergeometric system and the derived quiver.

The rank-n system with local exponents alpha_k = k/n at 0 and beta_k =
-k/(n+m) at infinity is rigid: once the eigenvalues are fixed, the monodromy
representation can be written down in companion form.  Pulling back along the
degree-n cyclic cover turns the single reflection at 1 into n conjugate
reflections, one per singularity n*zeta_n^k, and the vanishing-cycle data of
that configuration is the quiver consumed by the Stokes assembly.

Everything is exact over Q(zeta_{n+m}): the cyclic matrix has integer entries
and the reflection data lives in the lambda-coefficient field, so no larger
field is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CycNum, lambda_coeffs
from .errors import CoprimalityError, InvariantError
from .linalg import ExactMat
from .ordering import DominanceOrder, dominance_order


@dataclass(frozen=True)
class HypParams:
    """Exponent data of the auxiliary hypergeometric operator."""

    n: int
    m: int
    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    gamma: Fraction


def hyp_params(n: int, m: int) -> HypParams:
    """alpha_k = k/n, beta_k = -k/(n+m) and gamma = sum(beta - alpha).

    Validates that no alpha_j - beta_k is an integer, which is what makes the
    system irreducible; for coprime n, m this never fails.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    if math.gcd(n, m) != 1:
        raise CoprimalityError(f"n={n} and m={m} must be coprime")
    alpha = tuple(Fraction(k, n) for k in range(1, n + 1))
    beta = tuple(Fraction(-k, n + m) for k in range(1, n + 1))
    for a in alpha:
        for b in beta:
            if (a - b).denominator == 1:
                raise InvariantError(f"integral exponent difference {a} - ({b})")
    gamma = sum(beta, Fraction(0)) - sum(alpha, Fraction(0))
    return HypParams(n, m, alpha, beta, gamma)


def companion(poly: Sequence[CycNum]) -> ExactMat:
    """Companion matrix of a monic polynomial (ascending coefficients).

    Shape: ones on the subdiagonal, last column -(A_n, ..., A_1) for
    X^n + A_1 X^(n-1) + ... + A_n.
    """
    if len(poly) < 2:
        raise ValueError("degree must be at least 1")
    lead = poly[-1]
    if not lead == 1:
        raise ValueError("polynomial must be monic")
    order = lead.order
    n = len(poly) - 1
    entries = [[CycNum.zero(order) for _ in range(n)] for _ in range(n)]
    for i in range(1, n):
        entries[i][i - 1] = CycNum.one(order)
    for i in range(n):
        entries[i][n - 1] = -poly[i]
    return ExactMat(order, entries)


@dataclass(frozen=True)
class MonodromyData:
    """Companion-form monodromy of the hypergeometric system.

    T0 is the cyclic matrix e_j -> e_(j+1); its powers conjugate the
    reflection T1 through the singularities of the pullback.  The column c
    spans the image of 1 - T1.
    """

    n: int
    m: int
    order: int
    T0: ExactMat
    T1: ExactMat
    Tinf: ExactMat
    P: ExactMat
    c: tuple[CycNum, ...]
    lam: tuple[CycNum, ...]


def build_monodromy(n: int, m: int) -> MonodromyData:
    """Monodromy triple in the companion basis, with exact structural checks."""
    if math.gcd(n, m) != 1:
        raise CoprimalityError(f"n={n} and m={m} must be coprime")
    N = n + m
    lam = lambda_coeffs(n, m)
    one = CycNum.one(N)
    # X^n - 1 ascending, then X^n + lam_1 X^(n-1) + ... + lam_n ascending
    t0_poly = [-one] + [CycNum.zero(N)] * (n - 1) + [one]
    tinf_inv_poly = [lam[n - 1 - i] for i in range(n)] + [one]
    T0 = companion(t0_poly)
    Tinf_inv = companion(tinf_inv_poly)
    T1 = T0.inverse() @ Tinf_inv
    Tinf = Tinf_inv.inverse()

    reflection = ExactMat.identity(n, N) - T1
    for j in range(n - 1):
        if any(not reflection[i, j].is_zero() for i in range(n)):
            raise InvariantError("1 - T1 has a non-trivial column before the last")
    expected = [lam[n - 2 - i] for i in range(n - 1)] + [one + lam[n - 1]]
    column = [reflection[i, n - 1] for i in range(n)]
    if column != expected:
        raise InvariantError("last column of 1 - T1 does not match the reflection data")

    cp = T0.char_poly()
    if list(cp) != t0_poly:
        raise InvariantError("cyclic matrix has wrong characteristic polynomial")
    if reflection.rank() != 1:
        raise InvariantError("1 - T1 does not have rank one")

    return MonodromyData(n, m, N, T0, T1, Tinf, T0, tuple(column), lam)


def local_monodromies(mono: MonodromyData) -> list[ExactMat]:
    """Conjugates P^k T1 P^(-k), k = 0..n-1: the local monodromy at each
    singularity of the pullback."""
    out = []
    P_inv = mono.P.inverse()
    Pk = ExactMat.identity(mono.n, mono.order)
    Pk_inv = Pk
    for _ in range(mono.n):
        out.append(Pk @ mono.T1 @ Pk_inv)
        Pk = Pk @ mono.P
        Pk_inv = P_inv @ Pk_inv
    return out


@dataclass(frozen=True)
class QuiverNode:
    """One singularity: its vanishing-cycle space Phi with maps u: Psi -> Phi
    and v: Phi -> Psi.  ``exponent`` labels the singularity n*zeta_n^k for
    pipeline-produced quivers and is None for synthetic ones."""

    phi_dim: int
    u: ExactMat   # phi_dim x psi_dim
    v: ExactMat   # psi_dim x phi_dim
    exponent: int | None = None


@dataclass(frozen=True)
class Quiver:
    """Global space Psi plus one node per singularity, in dominance order."""

    psi_dim: int
    order: int
    nodes: tuple[QuiverNode, ...]

    def validate(self) -> None:
        """Both invertibility invariants: 1 - v u on Psi and 1 - u v on Phi."""
        eye = ExactMat.identity(self.psi_dim, self.order)
        for idx, node in enumerate(self.nodes):
            if (eye - node.v @ node.u).rank() != self.psi_dim:
                raise InvariantError(f"node {idx}: 1 - v·u is singular")
            small = ExactMat.identity(node.phi_dim, self.order) - node.u @ node.v
            if small.rank() != node.phi_dim:
                raise InvariantError(f"node {idx}: 1 - u·v is singular")

    def to_json(self) -> dict:
        return {
            "psi_dim": self.psi_dim,
            "order": self.order,
            "nodes": [
                {
                    "exponent": node.exponent,
                    "phi_dim": node.phi_dim,
                    "u": node.u.to_json(),
                    "v": node.v.to_json(),
                }
                for node in self.nodes
            ],
        }


def build_airy_quiver(n: int, m: int) -> Quiver:
    """Quiver of the pulled-back solution sheaf, nodes in ascending dominance.

    The node at exponent k has one-dimensional Phi generated by c_k = P^k c;
    v_k is the inclusion of that generator and u_k is the unique row with
    1 - P^k T1 P^(-k) = c_k · u_k.
    """
    mono = build_monodromy(n, m)
    N = mono.order
    order_info = dominance_order(n)
    eye = ExactMat.identity(n, N)
    locals_ = local_monodromies(mono)
    c_col = ExactMat.column(N, mono.c)

    P_pows = [eye]
    for _ in range(n - 1):
        P_pows.append(P_pows[-1] @ mono.P)

    nodes = []
    for k in order_info.ascending:
        drop = eye - locals_[k]
        ck = P_pows[k] @ c_col
        pivot = next(i for i in range(n) if not ck[i, 0].is_zero())
        scale = ck[pivot, 0].inv()
        u = ExactMat.row(N, [scale * drop[pivot, j] for j in range(n)])
        if ck @ u != drop:
            raise InvariantError(f"1 - P^{k} T1 P^-{k} is not the expected rank-one product")
        nodes.append(QuiverNode(phi_dim=1, u=u, v=ck, exponent=k))

    quiver = Quiver(psi_dim=n, order=N, nodes=tuple(nodes))
    quiver.validate()
    return quiver
