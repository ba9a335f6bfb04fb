"""Integer-coefficient polynomials, q-binomials and cyclotomic polynomials.

Polynomials are stored as ascending coefficient tuples with trailing zeros
trimmed, so the zero polynomial has an empty coefficient tuple.  Everything
here is exact integer arithmetic; evaluation into an exact field element is
provided by :func:`eval_poly` via Horner's rule.
"""

from __future__ import annotations

import functools
import math

from .errors import InputError


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPoly:
    """A polynomial in one variable over the integers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls((0,) * degree + (coeff,))

    @classmethod
    def n_t(cls, n):
        """The polynomial 1 + t + ... + t^(n-1); zero for n = 0."""
        if n < 0:
            raise InputError("n_t needs a nonnegative integer")
        return cls((1,) * n)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise InputError("negative power of an integer polynomial")
        out = IntPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k):
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def divexact(self, other):
        """Exact division; raises if the remainder is nonzero."""
        q, r = self.divmod_int(other)
        if not r.is_zero():
            raise InputError("integer polynomial division is not exact")
        return q

    def divmod_int(self, other):
        """Division with remainder, valid when it stays over the integers."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        if len(rem) - 1 < d:
            return IntPoly(()), IntPoly(rem)
        q = [0] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            if rem[i] % lead != 0:
                raise InputError("quotient leaves the integers")
            f = rem[i] // lead
            q[i - d] = f
            for j, c in enumerate(other.coeffs):
                rem[i - d + j] -= f * c
        return IntPoly(q), IntPoly(rem)

    def __call__(self, x):
        """Evaluate at a plain integer (or Fraction)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "IntPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        return "IntPoly(" + " + ".join(parts) + ")"


def eval_poly(pol, x):
    """Horner evaluation of an IntPoly at an exact field element."""
    field = x.field
    acc = field.zero()
    for c in reversed(pol.coeffs):
        acc = acc * x + field.from_int(c)
    return acc


def gauss_binomial(n, k):
    """q-binomial coefficient via the q-Pascal recursion.

    binom(n, k)_q = binom(n-1, k-1)_q + q^k * binom(n-1, k)_q with
    binom(n, 0)_q = 1, computed division-free in Z[q].
    """
    if n < 0 or k < 0:
        raise InputError("gauss_binomial needs nonnegative arguments")
    if k > n:
        raise InputError(f"gauss_binomial: k={k} exceeds n={n}")
    row = [IntPoly.one()]  # row for n' = 0
    for m in range(1, n + 1):
        new = [IntPoly.one()]
        for j in range(1, min(m, k) + 1):
            above = row[j] if j < len(row) else IntPoly.zero()
            left = row[j - 1]
            new.append(left + IntPoly.monomial(j) * above)
        row = new
    return row[k]


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(N):
    """The N-th cyclotomic polynomial, by exact division of x^N - 1."""
    if N < 1:
        raise InputError("cyclotomic_poly needs N >= 1")
    num = IntPoly((-1,) + (0,) * (N - 1) + (1,))  # x^N - 1
    for d in range(1, N):
        if N % d == 0:
            num = num.divexact(cyclotomic_poly(d))
    return num


# ---------------------------------------------------------------------------
# small integer utilities used across modules
# ---------------------------------------------------------------------------


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factor_int(n):
    """Prime factorization by trial division, as a dict prime -> exponent."""
    if n < 1:
        raise InputError("factor_int needs a positive integer")
    out = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n):
    phi = 1
    for p, e in factor_int(n).items():
        phi *= (p - 1) * p ** (e - 1)
    return phi


def divisors(n):
    out = [1]
    for p, e in factor_int(n).items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def multiplicative_order(a, n):
    """Order of a modulo n; raises if gcd(a, n) != 1."""
    a %= n
    if math.gcd(a, n) != 1:
        raise InputError(f"{a} is not a unit modulo {n}")
    for d in divisors(euler_phi(n)):
        if pow(a, d, n) == 1:
            return d
    raise AssertionError("unreachable: order divides phi(n)")
