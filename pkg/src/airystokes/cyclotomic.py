"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are represented in the power basis 1, zeta, ..., zeta^(phi(N)-1)
modulo the N-th cyclotomic polynomial, with rational coefficients.  Reduction
is applied on every operation, so equality is plain coefficient equality.
All values are immutable; all operations are pure.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CoprimalityError, InvariantError, OrderMismatchError


@dataclass(init=False, eq=True)
class IntPoly:
    """Dense integer polynomial, coefficients in ascending degree.

    Trailing zeros are trimmed, so the leading coefficient is non-zero unless
    the polynomial is zero (empty tuple).
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero() or other.is_zero():
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if c:
                for j, d in enumerate(other.coeffs):
                    out[i + j] += c * d
        return IntPoly(out)

    def __divmod__(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Division with remainder; requires every quotient step to be exact over Z."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return IntPoly(()), IntPoly(rem)
        quo = [0] * (dq + 1)
        for i in range(dq, -1, -1):
            top = rem[i + other.degree()]
            if top % lead != 0:
                raise ValueError(f"non-exact integer division: {top} by {lead}")
            q = top // lead
            quo[i] = q
            if q:
                for j, d in enumerate(other.coeffs):
                    rem[i + j] -= q * d
        return IntPoly(quo), IntPoly(rem)

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        quo, rem = divmod(self, other)
        if not rem.is_zero():
            raise ValueError("division is not exact")
        return quo

    def __str__(self) -> str:
        return _poly_str([Fraction(c) for c in self.coeffs], "X")


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> IntPoly:
    """The N-th cyclotomic polynomial Phi_N.

    Computed by dividing X^N - 1 by the product of Phi_d over the proper
    divisors d of N; the cache makes the recursion cheap and is safe for
    concurrent readers.
    """
    if N < 1:
        raise ValueError("cyclotomic order must be a positive integer")
    poly = IntPoly([-1] + [0] * (N - 1) + [1])
    for d in range(1, N):
        if N % d == 0:
            poly = poly.exact_div(cyclotomic_poly(d))
    return poly


def euler_phi(N: int) -> int:
    return cyclotomic_poly(N).degree()


def _reduce(order: int, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Remainder of a coefficient vector modulo Phi_order, padded to length phi."""
    mod = cyclotomic_poly(order).coeffs
    deg = len(mod) - 1
    cs = list(coeffs)
    for i in range(len(cs) - 1, deg - 1, -1):
        c = cs[i]
        cs[i] = Fraction(0)
        if c:
            for j in range(deg):
                cs[i - deg + j] -= c * mod[j]
    cs = cs[:deg]
    cs += [Fraction(0)] * (deg - len(cs))
    return tuple(cs)


class CycNum:
    """An element of Q(zeta_N), reduced modulo Phi_N.

    Arithmetic between two elements requires equal order; use ``lift`` to move
    an element into a larger field explicitly.  Integers and Fractions are
    accepted as scalar operands.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Fraction | int]):
        cs = [Fraction(c) for c in coeffs]
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", _reduce(order, cs))

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    @classmethod
    def from_rational(cls, order: int, value: Fraction | int) -> "CycNum":
        return cls(order, [Fraction(value)])

    @classmethod
    def zero(cls, order: int) -> "CycNum":
        return cls.from_rational(order, 0)

    @classmethod
    def one(cls, order: int) -> "CycNum":
        return cls.from_rational(order, 1)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def _coerce(self, other) -> "CycNum | None":
        if isinstance(other, CycNum):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"mixed cyclotomic orders {self.order} and {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(self.order, other)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return CycNum(self.order, [a + b for a, b in zip(self.coeffs, rhs.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = [Fraction(0)] * (2 * len(self.coeffs) - 1 if self.coeffs else 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(rhs.coeffs):
                    out[i + j] += a * b
        return CycNum(self.order, out)

    __rmul__ = __mul__

    def inv(self) -> "CycNum":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError(f"inverse of zero in Q(zeta_{self.order})")
        mod = [Fraction(c) for c in cyclotomic_poly(self.order).coeffs]
        r0, r1 = list(self.coeffs), mod
        s0, s1 = [Fraction(1)], [Fraction(0)]
        while any(c != 0 for c in r1):
            q = _frac_poly_div(r0, r1)
            r0, r1 = r1, _frac_poly_sub(r0, _frac_poly_mul(q, r1))
            s0, s1 = s1, _frac_poly_sub(s0, _frac_poly_mul(q, s1))
        # r0 is a non-zero constant gcd (Phi_N is irreducible over Q)
        g = next(c for c in reversed(r0) if c != 0)
        return CycNum(self.order, [c / g for c in s0])

    def __truediv__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.inv()

    def __rtruediv__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result = CycNum.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(self.order, other)
        if not isinstance(other, CycNum):
            return NotImplemented
        if other.order != self.order:
            raise OrderMismatchError(
                f"mixed cyclotomic orders {self.order} and {other.order}"
            )
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __str__(self):
        return _poly_str(self.coeffs, f"ζ_{self.order}")

    def __repr__(self):
        return f"CycNum({self.order}, {self})"

    def latex(self) -> str:
        """Render as a polynomial expression in zeta_N, shortest form first."""
        if self.is_rational():
            return _frac_latex(self.coeffs[0])
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            zeta = "" if k == 0 else f"\\zeta_{{{self.order}}}" + (f"^{{{k}}}" if k > 1 else "")
            mag = _frac_latex(abs(c))
            body = mag if k == 0 else (zeta if abs(c) == 1 else mag + " " + zeta)
            sign = "-" if c < 0 else ("+" if parts else "")
            parts.append((sign + " " if parts else sign) + body)
        return " ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CycNum":
        return cls(obj["order"], [Fraction(s) for s in obj["coeffs"]])


def zeta_pow(N: int, k: int) -> CycNum:
    """The root of unity zeta_N^k (exponent reduced mod N), in canonical form."""
    if N < 1:
        raise ValueError("order must be a positive integer")
    k %= N
    return CycNum(N, [0] * k + [1])


def lift(x: CycNum, order: int) -> CycNum:
    """Lift x from Q(zeta_N) into Q(zeta_M) for N | M, via zeta_N = zeta_M^(M/N)."""
    if order % x.order != 0:
        raise OrderMismatchError(f"{x.order} does not divide {order}")
    step = order // x.order
    out = [Fraction(0)] * (step * (len(x.coeffs) - 1) + 1)
    for i, c in enumerate(x.coeffs):
        out[i * step] += c
    return CycNum(order, out)


def embed(x: CycNum, branch: int = 1) -> complex:
    """Numeric value of x under zeta_N -> exp(2*pi*i*branch/N), branch coprime to N."""
    if math.gcd(branch, x.order) != 1:
        raise ValueError(f"branch {branch} is not coprime to the order {x.order}")
    z = cmath.exp(2j * cmath.pi * branch / x.order)
    value = 0j
    for c in reversed(x.coeffs):
        value = value * z + complex(c)
    return value


def lambda_coeffs(n: int, m: int) -> tuple[CycNum, ...]:
    """Coefficients lambda_1..lambda_n of prod_{j=1..n} (X - zeta_{n+m}^(-j)).

    The expansion is monic, X^n + lambda_1 X^(n-1) + ... + lambda_n, over
    Q(zeta_{n+m}).  Every coefficient is provably non-zero; that is asserted
    here because the regularity of the Stokes matrices rests on it.
    """
    if math.gcd(n, m) != 1:
        raise CoprimalityError(f"n={n} and m={m} must be coprime")
    N = n + m
    poly: list[CycNum] = [CycNum.one(N)]  # ascending coefficients, starts as 1
    for j in range(1, n + 1):
        root = zeta_pow(N, -j)
        poly = [CycNum.zero(N)] + poly  # multiply by X
        for i in range(len(poly) - 1):
            poly[i] = poly[i] - root * poly[i + 1]
    lams = tuple(poly[n - i] for i in range(1, n + 1))
    for i, lam in enumerate(lams, start=1):
        if lam.is_zero():
            raise InvariantError(f"lambda_{i} vanished for (n, m) = ({n}, {m})")
    return lams


# -- rational-coefficient polynomial helpers (dense ascending lists) --------

def _frac_poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _frac_poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _frac_poly_trim(out)


def _frac_poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] += c * d
    return _frac_poly_trim(out)


def _frac_poly_div(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Quotient of a by b over the rationals (remainder discarded)."""
    rem = _frac_poly_trim(list(a))
    div = _frac_poly_trim(list(b))
    if not div:
        raise ZeroDivisionError("polynomial division by zero")
    if len(rem) < len(div):
        return []
    quo = [Fraction(0)] * (len(rem) - len(div) + 1)
    while len(rem) >= len(div):
        shift = len(rem) - len(div)
        q = rem[-1] / div[-1]
        quo[shift] = q
        for j, d in enumerate(div):
            rem[shift + j] -= q * d
        _frac_poly_trim(rem)
    return quo


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _frac_latex(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return f"{sign}\\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def _poly_str(coeffs: Sequence[Fraction], var: str) -> str:
    parts: list[str] = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        power = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = _frac_str(abs(c))
        if k == 0:
            body = mag
        elif abs(c) == 1:
            body = power
        else:
            body = f"{mag}*{power}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"
