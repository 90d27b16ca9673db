"""Differential operators with rational coefficients, in two canonical forms.

``WeylOp`` stores an operator as a sum of normal-ordered monomials y^a d^b
(all powers of y to the left of all derivatives).  ``ThetaOp`` stores a sum
y^a * p(theta) with theta = y*d, using the skew relation p(theta) * y^a =
y^a * p(theta + a).  The reduction chain from the generalised Airy operator
to a hypergeometric operator alternates between the two forms, so explicit
converters are provided rather than a single universal representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import CoprimalityError

Rat = Fraction | int


# -- polynomials in one variable over Q (dense ascending tuples) -------------

def _ptrim(p: list[Fraction]) -> tuple[Fraction, ...]:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)

def _padd(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _ptrim(out)

def _pmul(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] += c * d
    return _ptrim(out)

def _pshift(p: Sequence[Fraction], s: Fraction) -> tuple[Fraction, ...]:
    """p(theta + s) by Horner evaluation at (theta + s)."""
    out: tuple[Fraction, ...] = ()
    for c in reversed(p):
        out = _padd(_pmul(out, (s, Fraction(1))), (c,))
    return out

def _pscale_arg(p: Sequence[Fraction], c: Fraction) -> tuple[Fraction, ...]:
    """p(c * theta)."""
    return _ptrim([coef * c**k for k, coef in enumerate(p)])

def _pstr(p: Sequence[Fraction], var: str = "θ") -> str:
    from .cyclotomic import _poly_str
    return _poly_str(tuple(p), var)


class WeylOp:
    """Sum of monomials c * y^a * d^b in normal order, keyed by (a, b)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Rat] | None = None):
        cleaned = {}
        for (a, b), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if a < 0 or b < 0:
                    raise ValueError("negative exponents are not supported")
                cleaned[(a, b)] = c
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("WeylOp is immutable")

    @classmethod
    def monomial(cls, a: int, b: int, c: Rat = 1) -> "WeylOp":
        return cls({(a, b): c})

    @classmethod
    def y(cls, power: int = 1) -> "WeylOp":
        return cls.monomial(power, 0)

    @classmethod
    def d(cls, power: int = 1) -> "WeylOp":
        return cls.monomial(0, power)

    @classmethod
    def one(cls) -> "WeylOp":
        return cls.monomial(0, 0)

    @classmethod
    def zero(cls) -> "WeylOp":
        return cls({})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylOp.monomial(0, 0, other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return WeylOp(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylOp.monomial(0, 0, other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Normal-ordered product; the relation d*y = y*d + 1 is applied via
        d^b y^a = sum_k C(b,k) * a!/(a-k)! * y^(a-k) d^(b-k)."""
        if isinstance(other, (int, Fraction)):
            return WeylOp({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, WeylOp):
            return NotImplemented
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                c = c1 * c2
                for k in range(min(a2, b1) + 1):
                    coef = c * math.comb(b1, k) * math.perm(a2, k)
                    key = (a1 + a2 - k, b1 + b2 - k)
                    out[key] = out.get(key, Fraction(0)) + coef
        return WeylOp(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        result = WeylOp.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylOp.monomial(0, 0, other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.terms[(a, b)]
            mono = "*".join(
                ([f"y^{a}" if a > 1 else "y"] if a else [])
                + ([f"∂^{b}" if b > 1 else "∂"] if b else [])
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {body}" if parts else (f"-{body}" if c < 0 else body))
        return " ".join(parts)

    def __repr__(self):
        return f"WeylOp({self})"


class ThetaOp:
    """Sum of terms y^a * p_a(theta), keyed by the y-degree a."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Sequence[Rat]] | None = None):
        cleaned = {}
        for a, p in (terms or {}).items():
            poly = _ptrim([Fraction(c) for c in p])
            if poly:
                if a < 0:
                    raise ValueError("negative y-degrees are not supported")
                cleaned[a] = poly
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("ThetaOp is immutable")

    @classmethod
    def theta(cls) -> "ThetaOp":
        return cls({0: (0, 1)})

    @classmethod
    def y(cls, power: int = 1) -> "ThetaOp":
        return cls({power: (1,)})

    @classmethod
    def poly(cls, coeffs: Sequence[Rat], y_degree: int = 0) -> "ThetaOp":
        return cls({y_degree: coeffs})

    @classmethod
    def one(cls) -> "ThetaOp":
        return cls({0: (1,)})

    @classmethod
    def zero(cls) -> "ThetaOp":
        return cls({})

    @classmethod
    def product(cls, factors: Sequence["ThetaOp"]) -> "ThetaOp":
        result = cls.one()
        for f in factors:
            result = result * f
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ThetaOp({0: (other,)})
        if not isinstance(other, ThetaOp):
            return NotImplemented
        out = dict(self.terms)
        for a, p in other.terms.items():
            out[a] = _padd(out.get(a, ()), p)
        return ThetaOp(out)

    __radd__ = __add__

    def __neg__(self):
        return ThetaOp({a: [-c for c in p] for a, p in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ThetaOp({0: (other,)})
        if not isinstance(other, ThetaOp):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Product in theta form: (y^a p(θ)) (y^b q(θ)) = y^(a+b) p(θ+b) q(θ)."""
        if isinstance(other, (int, Fraction)):
            return ThetaOp({a: [c * other for c in p] for a, p in self.terms.items()})
        if not isinstance(other, ThetaOp):
            return NotImplemented
        out: dict[int, tuple[Fraction, ...]] = {}
        for a1, p1 in self.terms.items():
            for a2, p2 in other.terms.items():
                prod = _pmul(_pshift(p1, Fraction(a2)), p2)
                out[a1 + a2] = _padd(out.get(a1 + a2, ()), prod)
        return ThetaOp(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, ThetaOp):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for a in sorted(self.terms, reverse=True):
            p = self.terms[a]
            ppart = _pstr(p)
            if a == 0:
                body = ppart
            else:
                ypow = f"y^{a}" if a > 1 else "y"
                body = f"{ypow}*({ppart})" if (len(p) > 1 or p[0] != 1) else ypow
            parts.append(body)
        return " + ".join(parts)

    def __repr__(self):
        return f"ThetaOp({self})"


def theta_to_weyl(t: ThetaOp) -> WeylOp:
    """Expand every y^a p(theta) into normal order, using theta = y*d."""
    theta_w = WeylOp.monomial(1, 1)
    out = WeylOp.zero()
    for a, p in sorted(t.terms.items()):
        poly_w = WeylOp.zero()
        power = WeylOp.one()
        for c in p:
            if c:
                poly_w = poly_w + power * c
            power = power * theta_w
        out = out + WeylOp.y(a) * poly_w
    return out


def weyl_to_theta(w: WeylOp) -> ThetaOp:
    """Rewrite a normal-ordered operator as sum y^a p_a(theta).

    Uses y^b d^b = theta (theta-1) ... (theta-b+1); a term y^a d^b is only
    expressible when a >= b.
    """
    out = ThetaOp.zero()
    for (a, b), c in sorted(w.terms.items()):
        if a < b:
            raise ValueError(
                f"term y^{a} ∂^{b} is not theta-graded (y-power below derivative order)"
            )
        falling = ThetaOp.product([ThetaOp.poly((-k, 1)) for k in range(b)])
        out = out + ThetaOp.y(a - b) * falling * c
    return out


def fourier(w: WeylOp) -> WeylOp:
    """Image under the algebra isomorphism y -> d, d -> -y (re-normal-ordered)."""
    out = WeylOp.zero()
    for (a, b), c in w.terms.items():
        image = WeylOp.d(a) * WeylOp.y(b) if a and b else WeylOp.monomial(b, a)
        out = out + image * (c * (-1) ** b)
    return out


def ramify(t: ThetaOp, d: int) -> ThetaOp:
    """Substitution y = v^d, theta_y = theta_v / d."""
    if d < 1:
        raise ValueError("ramification degree must be positive")
    return ThetaOp({d * a: _pscale_arg(p, Fraction(1, d)) for a, p in t.terms.items()})


def rescale_ramify(t: ThetaOp, d: int, c: Rat) -> ThetaOp:
    """Substitution y^d = c * w, theta_y = d * theta_w.

    Every y-exponent of t must be divisible by d.
    """
    if d < 1:
        raise ValueError("descent degree must be positive")
    c = Fraction(c)
    out: dict[int, tuple[Fraction, ...]] = {}
    for a, p in t.terms.items():
        if a % d != 0:
            raise ValueError(f"y-exponent {a} is not divisible by {d}")
        k = a // d
        out[k] = _padd(out.get(k, ()), [coef * c**k for coef in _pscale_arg(p, Fraction(d))])
    return ThetaOp(out)


# -- the reduction chain ------------------------------------------------------

def airy_weyl(n: int, m: int) -> WeylOp:
    """The generalised Airy operator d^n - y^m."""
    return WeylOp({(0, n): 1, (m, 0): -1})


def airy_theta(n: int, m: int) -> ThetaOp:
    """Theta form of the Airy operator on the punctured line:
    prod_{k=1..n} (theta - k) - y^(n+m)."""
    return ThetaOp.product([ThetaOp.poly((-k, 1)) for k in range(1, n + 1)]) - ThetaOp.y(n + m)


def airy_ramified(n: int, m: int) -> ThetaOp:
    """After y = v^n: prod_{k=1..n} (theta/n - k) - v^(n(n+m))."""
    prod = ThetaOp.product([ThetaOp.poly((-k, Fraction(1, n))) for k in range(1, n + 1)])
    return prod - ThetaOp.y(n * (n + m))


def airy_rescaled(n: int, m: int) -> ThetaOp:
    """After v^(n+m) = (n+m) w: prod_{k=1..n} ((n+m)/n theta - k) - (n+m)^n w^n."""
    N = n + m
    prod = ThetaOp.product([ThetaOp.poly((-k, Fraction(N, n))) for k in range(1, n + 1)])
    return prod - ThetaOp.y(n) * Fraction(N**n)


def laplace_source(n: int, m: int) -> WeylOp:
    """The operator whose image under ``fourier`` is the rescaled operator:
    prod_{k=1..n} ((n+m)/n (-1 - theta) - k) - (-1)^n (n+m)^n d^n."""
    N = n + m
    theta = WeylOp.monomial(1, 1)
    prod = WeylOp.one()
    for k in range(1, n + 1):
        prod = prod * ((-1 - theta) * Fraction(N, n) - k)
    return prod - WeylOp.d(n) * Fraction((-1) ** n * N**n)


def reduced_source(n: int, m: int) -> ThetaOp:
    """Left-factored form: (y/n)^n prod (theta + kn/(n+m)) - prod (theta - k)."""
    N = n + m
    left = ThetaOp.y(n) * Fraction(1, n**n) * ThetaOp.product(
        [ThetaOp.poly((Fraction(k * n, N), 1)) for k in range(1, n + 1)]
    )
    right = ThetaOp.product([ThetaOp.poly((-k, 1)) for k in range(1, n + 1)])
    return left - right


def hypergeometric_theta(alpha: Sequence[Rat], beta: Sequence[Rat]) -> ThetaOp:
    """prod (theta - alpha_k) - y * prod (theta - beta_k)."""
    pa = ThetaOp.product([ThetaOp.poly((-Fraction(a), 1)) for a in alpha])
    pb = ThetaOp.product([ThetaOp.poly((-Fraction(b), 1)) for b in beta])
    return pa - ThetaOp.y(1) * pb


@dataclass(frozen=True)
class ChainCheck:
    name: str
    description: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class ChainReport:
    n: int
    m: int
    checks: tuple[ChainCheck, ...]
    printouts: tuple[tuple[str, str], ...] = field(default=())

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "all_passed": self.all_passed,
            "identities": [c.to_json() for c in self.checks],
            "operators": {name: text for name, text in self.printouts},
        }


def _first_diff_weyl(lhs: WeylOp, rhs: WeylOp) -> str:
    diff = lhs - rhs
    if diff.is_zero():
        return ""
    a, b = min(diff.terms)
    return f"first differing term: {diff.terms[(a, b)]}*y^{a}∂^{b}"


def _first_diff_theta(lhs: ThetaOp, rhs: ThetaOp) -> str:
    diff = lhs - rhs
    if diff.is_zero():
        return ""
    a = min(diff.terms)
    return f"first differing term at y^{a}: {_pstr(diff.terms[a])}"


def check_chain(n: int, m: int) -> ChainReport:
    """Verify, exactly, each step of the reduction from d^n - y^m down to the
    hypergeometric operator with alpha_k = k/n, beta_k = -k/(n+m).

    Every identity is an operator identity over Q; the final step is checked
    up to an invertible constant, whose value is reported.
    """
    if math.gcd(n, m) != 1:
        raise CoprimalityError(f"n={n} and m={m} must be coprime")
    N = n + m

    airy = airy_weyl(n, m)
    theta_form = airy_theta(n, m)
    ramified = airy_ramified(n, m)
    rescaled = airy_rescaled(n, m)
    lap_src = laplace_source(n, m)
    reduced = reduced_source(n, m)
    alpha = [Fraction(k, n) for k in range(1, n + 1)]
    beta = [Fraction(-k, N) for k in range(1, n + 1)]
    hyp = hypergeometric_theta(alpha, beta)

    checks: list[ChainCheck] = []

    def record(name: str, description: str, passed: bool, detail: str = ""):
        checks.append(ChainCheck(name, description, passed, detail))

    lhs = theta_to_weyl(theta_form) * WeylOp.y()
    rhs = WeylOp.y(n + 1) * airy
    record("mul_by_y", "Q·y = y^(n+1)·(∂^n − y^m)", lhs == rhs, _first_diff_weyl(lhs, rhs))

    got = ramify(theta_form, n)
    record("ramify", "Q(y=v^n) = L", got == ramified, _first_diff_theta(got, ramified))

    got = rescale_ramify(ramified, N, N)
    record("rescale", "L(v^(n+m)=(n+m)w) = S", got == rescaled, _first_diff_theta(got, rescaled))

    got = fourier(lap_src)
    want = theta_to_weyl(rescaled)
    record("fourier", "F(R) = S", got == want, _first_diff_weyl(got, want))

    lhs = Fraction((-1) ** n, N**n) * (WeylOp.y(n + 1) * lap_src)
    rhs = theta_to_weyl(reduced) * WeylOp.y()
    record("left_factor", "(−1)^n (n+m)^−n z^(n+1) R = R̃·z", lhs == rhs, _first_diff_weyl(lhs, rhs))

    pulled = ramify(rescale_ramify(hyp, 1, Fraction(1, n**n)), n)
    unit = _proportionality_unit(reduced, pulled)
    if unit is None:
        record("hyp_pullback", "γ_n^* Hyp(α,β) ∝ R̃", False,
               _first_diff_theta(reduced, pulled) or "no exact unit factor found")
    else:
        record("hyp_pullback", "γ_n^* Hyp(α,β) ∝ R̃", True, f"unit factor {unit}")

    printouts = (
        ("airy", str(airy)),
        ("theta_form", str(theta_form)),
        ("ramified", str(ramified)),
        ("rescaled", str(rescaled)),
        ("laplace_source", str(lap_src)),
        ("reduced_source", str(reduced)),
        ("hypergeometric", str(hyp)),
    )
    return ChainReport(n, m, tuple(checks), printouts)


def _proportionality_unit(target: ThetaOp, candidate: ThetaOp) -> Fraction | None:
    """The constant u with target = u * candidate, or None if there is none."""
    if candidate.is_zero():
        return None
    a, p = next(iter(sorted(candidate.terms.items())))
    if a not in target.terms:
        return None
    q = target.terms[a]
    pivot = next(i for i, c in enumerate(p) if c)
    if pivot >= len(q) or q[pivot] == 0:
        return None
    u = q[pivot] / p[pivot]
    return u if (candidate * u) == target else None
