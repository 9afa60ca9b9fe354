"""Exact arithmetic in Z[q] and the q-combinatorial functions built on it.

A polynomial is a dense ascending tuple of arbitrary-precision integer
coefficients; the zero polynomial is the empty tuple.  Everything here is
exact: no floats, no modular reduction, no silent overflow.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Iterable, NamedTuple

__all__ = [
    "QPoly",
    "NotDivisible",
    "ZERO",
    "ONE",
    "q",
    "q_integer",
    "q_factorial",
    "q_binomial",
    "q_multinomial",
    "cyclotomic",
    "cyclotomic_factor",
    "CyclotomicFactorization",
    "to_json_coeffs",
    "from_json_coeffs",
    "to_latex",
]

# Largest integer JSON consumers can hold losslessly in a double.
_JSON_SAFE_MAX = 2**53 - 1


class NotDivisible(ArithmeticError):
    """Raised when an exact quotient does not exist in Z[q]."""


class QPoly:
    """A polynomial in Z[q]; the last stored coefficient is always nonzero."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficient required, got {type(c).__name__}")
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object):
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPoly({str(self)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "q" if i == 1 else f"q^{i}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return QPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def shift(self, k: int) -> "QPoly":
        """Multiply by q**k."""
        if k < 0:
            raise ValueError("negative shift")
        if not self.coeffs or k == 0:
            return self
        return QPoly((0,) * k + self.coeffs)

    def divexact(self, divisor) -> "QPoly":
        """Exact quotient in Z[q]; raises NotDivisible when none exists."""
        divisor = _coerce(divisor)
        if divisor is None:
            raise TypeError("cannot divide by this operand")
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return ZERO
        dcs = divisor.coeffs
        if len(self.coeffs) < len(dcs):
            raise NotDivisible(f"({self}) is not divisible by ({divisor})")
        rem = list(self.coeffs)
        lead = dcs[-1]
        span = len(dcs)
        quot = [0] * (len(rem) - span + 1)
        for i in range(len(quot) - 1, -1, -1):
            c = rem[i + span - 1]
            if c % lead:
                raise NotDivisible(f"({self}) is not divisible by ({divisor})")
            f = c // lead
            if f:
                quot[i] = f
                for j, d in enumerate(dcs):
                    rem[i + j] -= f * d
        if any(rem):
            raise NotDivisible(f"({self}) is not divisible by ({divisor})")
        return QPoly(quot)

    def eval_int(self, x: int) -> int:
        """Evaluate at an integer point, exactly."""
        if not isinstance(x, int):
            raise TypeError("integer point required")
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]


def _coerce(value) -> QPoly | None:
    if isinstance(value, QPoly):
        return value
    if isinstance(value, int):
        return QPoly((value,))
    return None


ZERO = QPoly()
ONE = QPoly((1,))
q = QPoly((0, 1))


def q_integer(n: int) -> QPoly:
    """1 + q + ... + q**(n-1); the zero polynomial for n = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return QPoly((1,) * n)


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QPoly:
    """Product of the q-integers 1..n; one for n = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= 1:
        return ONE
    return q_factorial(n - 1) * q_integer(n)


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> QPoly:
    """Gaussian binomial by the q-Pascal recurrence; zero outside 0 <= k <= n.

    C(n, k) = C(n-1, k-1) + q**k * C(n-1, k), staying in Z[q] throughout.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return q_binomial(n - 1, k - 1) + q_binomial(n - 1, k).shift(k)


def q_multinomial(parts: Iterable[int]) -> QPoly:
    """Gaussian multinomial as a telescoping product of Gaussian binomials.

    For parts (a1, ..., ak) this is
    binom(a1+a2, a2) * binom(a1+a2+a3, a3) * ... * binom(a1+...+ak, ak);
    the result is symmetric in the parts.  Empty or single-part input gives 1.
    """
    out = ONE
    total = 0
    for i, a in enumerate(parts):
        if a < 0:
            raise ValueError("parts must be nonnegative")
        total += a
        if i:
            out = out * q_binomial(total, a)
    return out


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> QPoly:
    """The d-th cyclotomic polynomial, by exact division of q**d - 1."""
    if d < 1:
        raise ValueError("d must be positive")
    out = QPoly((-1,) + (0,) * (d - 1) + (1,))
    for e in range(1, d):
        if d % e == 0:
            out = out.divexact(cyclotomic(e))
    return out


class CyclotomicFactorization(NamedTuple):
    monomial_exponent: int
    factors: "Counter[int]"
    remainder: QPoly


def _totient(d: int) -> int:
    out, rem, p = 1, d, 2
    while p * p <= rem:
        if rem % p == 0:
            pk = 1
            while rem % p == 0:
                rem //= p
                pk *= p
            out *= pk - pk // p
        p += 1
    if rem > 1:
        out *= rem - 1
    return out


def cyclotomic_factor(poly: QPoly) -> CyclotomicFactorization:
    """Strip the maximal monomial q**k and every cyclotomic factor.

    Returns (k, multiset of stripped cyclotomic indices, remaining factor);
    the input is a monomial times a product of cyclotomics exactly when the
    remainder is 1.  Reassembling q**k * prod(phi_d ** mult) * remainder
    always gives back the input.
    """
    if not poly:
        raise ValueError("zero polynomial")
    k = 0
    while poly.coeffs[k] == 0:
        k += 1
    cur = QPoly(poly.coeffs[k:])
    factors: Counter[int] = Counter()
    cur_at_2 = cur.eval_int(2)
    d = 1
    # phi(d) >= sqrt(d/2), so indices past 2*deg^2 + 2 can no longer divide.
    while cur.degree > 0 and d <= 2 * cur.degree * cur.degree + 2:
        if _totient(d) <= cur.degree:
            phi = cyclotomic(d)
            phi_at_2 = phi.eval_int(2)
            # Cheap integer prefilter: phi | cur forces phi(2) | cur(2).
            while cur_at_2 % phi_at_2 == 0:
                try:
                    cur = cur.divexact(phi)
                except NotDivisible:
                    break
                factors[d] += 1
                cur_at_2 = cur.eval_int(2)
                if cur.degree <= 0:
                    break
        d += 1
    return CyclotomicFactorization(k, factors, cur)


def to_json_coeffs(poly: QPoly) -> list:
    """Ascending coefficients for JSON; entries outside the 53-bit safe
    integer range are rendered as strings."""
    return [c if abs(c) <= _JSON_SAFE_MAX else str(c) for c in poly.coeffs]


def from_json_coeffs(values: Iterable) -> QPoly:
    """Inverse of to_json_coeffs; accepts integers or decimal strings."""
    return QPoly(int(v) for v in values)


def to_latex(poly: QPoly) -> str:
    """LaTeX rendering with braced exponents, ascending terms."""
    if not poly.coeffs:
        return "0"
    parts: list[str] = []
    for i, c in enumerate(poly.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            var = "q" if i == 1 else f"q^{{{i}}}"
            body = var if mag == 1 else f"{mag}{var}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)
