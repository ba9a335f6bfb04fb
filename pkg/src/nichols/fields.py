"""Exact scalar arithmetic over Q, cyclotomic fields Q(zeta_N), and F_{p^d}.

Field elements are immutable :class:`Scalar` values tagged with the field
they live in.  Cyclotomic elements are stored modulo the N-th cyclotomic
polynomial (not x^N - 1) so that equality against zero is a plain
coefficient test.  Finite fields are presented as F_p[x]/(minpoly) for an
explicit monic irreducible minpoly, which pins down the particular root a
specialization maps the canonical generator to.

Field spec string grammar (shared with the CLI and the service):

    "QQ"                    the rationals
    "cyclo:N"               Q(zeta_N)
    "gf:p"                  the prime field F_p
    "gf:p:c0,c1,...,1"      F_p[x]/(c0 + c1 x + ... + x^d)
"""

from __future__ import annotations

import functools
import math
import random
from fractions import Fraction

from .errors import FieldMismatchError, InputError
from .polys import cyclotomic_poly, divisors, factor_int, is_prime

# ---------------------------------------------------------------------------
# dense polynomial arithmetic over F_p (coefficient lists, ascending)
# ---------------------------------------------------------------------------


def _gf_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def gf_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _gf_trim(out)


def gf_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _gf_trim(out)


def gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _gf_trim([c % p for c in out])


def gf_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = [c % p for c in a]
    _gf_trim(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        f = a[-1] * inv_lead % p
        k = len(a) - 1 - db
        q[k] = f
        for j, c in enumerate(b):
            a[k + j] = (a[k + j] - f * c) % p
        _gf_trim(a)
    return q, a


def gf_mod(a, b, p):
    return gf_divmod(a, b, p)[1]


def gf_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, gf_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def gf_powmod(a, e, mod, p):
    out = [1]
    base = gf_mod(a, mod, p)
    while e:
        if e & 1:
            out = gf_mod(gf_mul(out, base, p), mod, p)
        base = gf_mod(gf_mul(base, base, p), mod, p)
        e >>= 1
    return out


def gf_inv_mod(a, mod, p):
    """Inverse of a modulo mod in F_p[x], by the extended Euclid algorithm."""
    r0, r1 = list(mod), gf_mod(a, mod, p)
    s0, s1 = [], [1]
    while r1:
        q, r = gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, gf_sub(s0, gf_mul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    inv_lead = pow(r0[0], -1, p)
    return _gf_trim([c * inv_lead % p for c in s0])


def gf_is_irreducible(f, p):
    """Rabin irreducibility test over F_p."""
    f = [c % p for c in f]
    _gf_trim(f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    for q in factor_int(d):
        h = gf_sub(gf_powmod(x, p ** (d // q), f, p), x, p)
        if len(gf_gcd(h, f, p)) != 1:
            return False
    h = gf_sub(gf_powmod(x, p**d, f, p), x, p)
    return not h


def _gf_equal_degree_split(f, d, p, rng):
    """Split a monic squarefree product of degree-d irreducibles (Cantor-Zassenhaus)."""
    n = len(f) - 1
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        _gf_trim(a)
        if len(a) <= 1:
            continue
        g = gf_gcd(a, f, p)
        if 1 < len(g) < len(f):
            return g
        if p == 2:
            b = list(a)
            t = list(a)
            for _ in range(d - 1):
                t = gf_powmod(t, 2, f, p)
                b = gf_add(b, t, p)
        else:
            b = gf_sub(gf_powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = gf_gcd(b, f, p)
        if 1 < len(g) < len(f):
            return g


def gf_distinct_irreducible_factors(f, p):
    """All distinct monic irreducible factors of f over F_p, lex-sorted.

    Uses squarefree reduction, distinct-degree decomposition and seeded
    equal-degree splitting, so the output ordering is reproducible.
    """
    f = [c % p for c in f]
    _gf_trim(f)
    if len(f) <= 1:
        raise InputError("cannot factor a constant polynomial")
    inv = pow(f[-1], -1, p)
    f = [c * inv % p for c in f]
    rng = random.Random(f"gf-factor:{p}:{tuple(f)}")

    factors = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if len(g) <= 1:
            continue
        if len(g) == 2:
            factors.add(tuple(g))
            continue
        deriv = _gf_trim([(i * c) % p for i, c in enumerate(g)][1:])
        if not deriv:
            # g = h(x^p); over F_p the coefficients are their own p-th roots
            h = [g[i] for i in range(0, len(g), p)]
            stack.append(h)
            continue
        d0 = gf_gcd(g, deriv, p)
        if len(d0) > 1:
            stack.append(d0)
            stack.append(gf_divmod(g, d0, p)[0])
            continue
        # g monic squarefree: distinct-degree decomposition
        rest = g
        x = [0, 1]
        xq = list(x)
        d = 0
        while len(rest) - 1 > 0:
            d += 1
            if 2 * d > len(rest) - 1:
                factors.add(tuple(rest))
                break
            xq = gf_powmod(xq, p, rest, p)
            h = gf_gcd(gf_sub(xq, x, p), rest, p)
            if len(h) > 1:
                # h is a product of irreducibles all of degree d
                pieces = [h]
                while pieces:
                    piece = pieces.pop()
                    if len(piece) - 1 == d:
                        factors.add(tuple(piece))
                        continue
                    g1 = _gf_equal_degree_split(piece, d, p, rng)
                    pieces.append(g1)
                    pieces.append(gf_divmod(piece, g1, p)[0])
                rest = gf_divmod(rest, h, p)[0]
    return sorted(factors)


# ---------------------------------------------------------------------------
# scalar values
# ---------------------------------------------------------------------------


class Scalar:
    """An exact element of one of the supported fields."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"mixing elements of {self.field.spec()} and {other.field.spec()}"
                )
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            return self.field.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._add(self.rep, other.rep))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._sub(self.rep, other.rep))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._mul(self.rep, other.rep))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __neg__(self):
        return Scalar(self.field, self.field._neg(self.rep))

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = self.field.one()
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return Scalar(self.field, self.field._inv(self.rep))

    def is_zero(self):
        return self.field._is_zero(self.rep)

    def is_one(self):
        return self == self.field.one()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.rep == other.rep

    def __hash__(self):
        return hash((self.field.spec(), self.rep))

    def __repr__(self):
        return f"{self.field.render(self.rep)}"

    def to_json(self):
        return self.field.scalar_to_json(self.rep)


def scalar_order(x):
    """Least N >= 1 with x^N = 1, or None when x is not a root of unity.

    For cyclotomic inputs the order is searched within the full group of
    roots of unity of the field (order lcm(2, N)); for finite fields it
    divides p^d - 1.  Zero input is a domain error.
    """
    if not isinstance(x, Scalar):
        raise InputError("scalar_order expects a Scalar")
    if x.is_zero():
        raise InputError("scalar_order of zero is undefined")
    return x.field.element_order(x)


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------


class RationalField:
    """The field Q with Fraction representatives."""

    char = 0
    degree = 1

    def spec(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "RationalField()"

    def zero(self):
        return Scalar(self, Fraction(0))

    def one(self):
        return Scalar(self, Fraction(1))

    def from_int(self, n):
        return Scalar(self, Fraction(n))

    def from_fraction(self, q):
        return Scalar(self, Fraction(q))

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def element_order(self, x):
        if x.rep == 1:
            return 1
        if x.rep == -1:
            return 2
        return None

    def render(self, rep):
        return str(rep)

    def scalar_to_json(self, rep):
        return str(rep)

    def scalar_from_json(self, data):
        return Scalar(self, Fraction(data))

    def random_scalar(self, rng):
        return Scalar(self, Fraction(rng.randint(-6, 6), rng.randint(1, 4)))


def _reduction_rows(modulus_coeffs):
    """Rows x^(d+i) reduced mod a monic integer polynomial, for i = 0..d-2."""
    d = len(modulus_coeffs) - 1
    rows = []
    base = [-c for c in modulus_coeffs[:-1]]  # x^d
    rows.append(tuple(base))
    for _ in range(d - 2):
        shifted = [0] + list(rows[-1])
        top = shifted.pop()
        row = [shifted[i] + top * rows[0][i] for i in range(d)]
        rows.append(tuple(row))
    return rows


def _reduce_by_rows(conv, d, rows, zero):
    out = list(conv[:d]) + [zero] * max(0, d - len(conv))
    for k in range(d, len(conv)):
        c = conv[k]
        if c == 0:
            continue
        row = rows[k - d]
        for i in range(d):
            if row[i]:
                out[i] = out[i] + c * row[i]
    return out


class CyclotomicField:
    """Q(zeta_N), elements stored modulo the N-th cyclotomic polynomial."""

    char = 0

    def __init__(self, N):
        if N < 1:
            raise InputError("cyclotomic field needs N >= 1")
        self.N = N
        self.modulus = cyclotomic_poly(N).coeffs
        self.degree = len(self.modulus) - 1
        self._rows = _reduction_rows(self.modulus) if self.degree > 1 else []

    def spec(self):
        return f"cyclo:{self.N}"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.N == self.N

    def __hash__(self):
        return hash(("cyclo", self.N))

    def __repr__(self):
        return f"CyclotomicField({self.N})"

    def zero(self):
        return Scalar(self, (Fraction(0),) * self.degree)

    def one(self):
        rep = (Fraction(1),) + (Fraction(0),) * (self.degree - 1)
        return Scalar(self, rep)

    def generator(self):
        """The canonical primitive N-th root of unity."""
        if self.degree == 1:
            # x is congruent to a rational modulo a degree-one modulus
            return Scalar(self, (Fraction(-self.modulus[0]),))
        rep = [Fraction(0)] * self.degree
        rep[1] = Fraction(1)
        return Scalar(self, tuple(rep))

    def from_int(self, n):
        return Scalar(self, (Fraction(n),) + (Fraction(0),) * (self.degree - 1))

    def from_fraction(self, q):
        return Scalar(self, (Fraction(q),) + (Fraction(0),) * (self.degree - 1))

    def from_coeffs(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > self.degree:
            raise InputError("coefficient vector longer than the field degree")
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        return Scalar(self, tuple(coeffs))

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _mul(self, a, b):
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        conv = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        return tuple(_reduce_by_rows(conv, d, self._rows, Fraction(0)))

    def zmul(self, a, b):
        """Product of two integer coefficient vectors, reduced mod Phi_N."""
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        conv = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        return tuple(_reduce_by_rows(conv, d, self._rows, 0))

    def _is_zero(self, a):
        return all(c == 0 for c in a)

    def _inv(self, a):
        # extended Euclid in Q[x] against the modulus
        r0 = [Fraction(c) for c in self.modulus]
        r1 = list(a)
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [], [Fraction(1)]

        def q_divmod(x, y):
            x = list(x)
            q = [Fraction(0)] * max(len(x) - len(y) + 1, 0)
            while x and len(x) >= len(y):
                f = x[-1] / y[-1]
                k = len(x) - len(y)
                q[k] = f
                for j, c in enumerate(y):
                    x[k + j] -= f * c
                while x and x[-1] == 0:
                    x.pop()
            return q, x

        def q_mulsub(u, q, v):
            # u - q*v
            out = list(u) + [Fraction(0)] * max(0, len(q) + len(v) - 1 - len(u))
            for i, qi in enumerate(q):
                if qi:
                    for j, vj in enumerate(v):
                        out[i + j] -= qi * vj
            while out and out[-1] == 0:
                out.pop()
            return out

        while r1:
            q, r = q_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, q_mulsub(s0, q, s1)
        if len(r0) != 1:
            raise ZeroDivisionError("element is not invertible")
        lead = r0[0]
        inv = [c / lead for c in s0]
        inv += [Fraction(0)] * (self.degree - len(inv))
        return tuple(inv[: self.degree])

    def element_order(self, x):
        L = self.N if self.N % 2 == 0 else 2 * self.N
        if not (x**L).is_one():
            return None
        for d in divisors(L):
            if (x**d).is_one():
                return d
        raise AssertionError("unreachable")

    def root_of_unity(self, order, exponent=1):
        """zeta_order^exponent inside this field, when the field contains it."""
        L = self.N if self.N % 2 == 0 else 2 * self.N
        if L % order != 0:
            raise InputError(f"cyclo:{self.N} has no root of unity of order {order}")
        if self.N % 2 == 0:
            zl = self.generator()
        else:
            zl = -(self.generator() ** ((self.N + 1) // 2))
        return zl ** ((L // order) * exponent)

    def render(self, rep):
        parts = []
        for i, c in enumerate(rep):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                parts.append(f"{head}z" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts) if parts else "0"

    def scalar_to_json(self, rep):
        return [str(c) for c in rep]

    def scalar_from_json(self, data):
        if len(data) != self.degree:
            raise InputError("coefficient vector has the wrong length")
        return Scalar(self, tuple(Fraction(c) for c in data))

    def random_scalar(self, rng):
        return Scalar(
            self,
            tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(self.degree)),
        )


class GaloisField:
    """F_p[x]/(minpoly) for a monic irreducible minpoly over F_p."""

    def __init__(self, p, minpoly=(0, 1)):
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
        minpoly = tuple(c % p for c in minpoly)
        while minpoly and minpoly[-1] == 0:
            minpoly = minpoly[:-1]
        if len(minpoly) < 2:
            raise InputError("minpoly must have degree >= 1")
        if minpoly[-1] != 1:
            raise InputError("minpoly must be monic")
        if not gf_is_irreducible(list(minpoly), p):
            raise InputError(f"minpoly {list(minpoly)} is reducible over F_{p}")
        self.p = p
        self.minpoly = minpoly
        self.degree = len(minpoly) - 1
        self.char = p
        self._rows = (
            _reduction_rows([c % p for c in minpoly]) if self.degree > 1 else []
        )
        if self.degree > 1:
            self._rows = [tuple(c % p for c in row) for row in self._rows]

    @property
    def size(self):
        return self.p**self.degree

    def spec(self):
        if self.degree == 1 and self.minpoly == (0, 1):
            return f"gf:{self.p}"
        return f"gf:{self.p}:" + ",".join(str(c) for c in self.minpoly)

    def __eq__(self, other):
        return (
            isinstance(other, GaloisField)
            and other.p == self.p
            and other.minpoly == self.minpoly
        )

    def __hash__(self):
        return hash(("gf", self.p, self.minpoly))

    def __repr__(self):
        return f"GaloisField({self.p}, {list(self.minpoly)})"

    def zero(self):
        return Scalar(self, (0,) * self.degree)

    def one(self):
        return Scalar(self, (1,) + (0,) * (self.degree - 1))

    def generator(self):
        """The class of x, a root of minpoly."""
        if self.degree == 1:
            return Scalar(self, ((-self.minpoly[0]) % self.p,))
        rep = [0] * self.degree
        rep[1] = 1
        return Scalar(self, tuple(rep))

    def from_int(self, n):
        return Scalar(self, (n % self.p,) + (0,) * (self.degree - 1))

    def from_fraction(self, q):
        q = Fraction(q)
        val = q.numerator * pow(q.denominator, -1, self.p) % self.p
        return self.from_int(val)

    def from_coeffs(self, coeffs):
        coeffs = [c % self.p for c in coeffs]
        if len(coeffs) > self.degree:
            raise InputError("coefficient vector longer than the field degree")
        coeffs += [0] * (self.degree - len(coeffs))
        return Scalar(self, tuple(coeffs))

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul(self, a, b):
        d = self.degree
        p = self.p
        if d == 1:
            return (a[0] * b[0] % p,)
        conv = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = _reduce_by_rows(conv, d, self._rows, 0)
        return tuple(c % p for c in out)

    def _is_zero(self, a):
        return all(c == 0 for c in a)

    def _inv(self, a):
        if self.degree == 1:
            return (pow(a[0], -1, self.p),)
        inv = gf_inv_mod(list(a), list(self.minpoly), self.p)
        inv = inv + [0] * (self.degree - len(inv))
        return tuple(inv[: self.degree])

    def element_order(self, x, multiple=None):
        m = multiple if multiple is not None else self.size - 1
        order = m
        for q in factor_int(m):
            while order % q == 0 and (x ** (order // q)).is_one():
                order //= q
        if not (x**order).is_one():
            raise InputError("element order does not divide the given multiple")
        return order

    def render(self, rep):
        if self.degree == 1:
            return f"{rep[0]}"
        parts = []
        for i, c in enumerate(rep):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}x" + (f"^{i}" if i > 1 else ""))
        return (" + ".join(parts) if parts else "0") + f" (mod {self.p})"

    def scalar_to_json(self, rep):
        return list(rep)

    def scalar_from_json(self, data):
        if len(data) != self.degree:
            raise InputError("coefficient vector has the wrong length")
        return Scalar(self, tuple(int(c) % self.p for c in data))

    def random_scalar(self, rng):
        return Scalar(self, tuple(rng.randrange(self.p) for _ in range(self.degree)))


# ---------------------------------------------------------------------------
# field spec strings
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _cached_field(spec):
    parts = spec.split(":")
    if parts[0] == "QQ" and len(parts) == 1:
        return RationalField()
    if parts[0] == "cyclo" and len(parts) == 2:
        try:
            n = int(parts[1])
        except ValueError:
            raise InputError(f"bad cyclotomic spec {spec!r}") from None
        return CyclotomicField(n)
    if parts[0] == "gf" and len(parts) in (2, 3):
        try:
            p = int(parts[1])
        except ValueError:
            raise InputError(f"bad finite field spec {spec!r}") from None
        if len(parts) == 2:
            return GaloisField(p)
        try:
            coeffs = tuple(int(c) for c in parts[2].split(","))
        except ValueError:
            raise InputError(f"bad minpoly in field spec {spec!r}") from None
        return GaloisField(p, coeffs)
    raise InputError(f"unrecognized field spec {spec!r}")


def parse_field(spec):
    """Parse a field spec string ("QQ", "cyclo:N", "gf:p[:coeffs]")."""
    if isinstance(spec, (RationalField, CyclotomicField, GaloisField)):
        return spec
    if not isinstance(spec, str):
        raise InputError(f"field spec must be a string, got {type(spec).__name__}")
    return _cached_field(spec.strip())


def rational_field():
    return _cached_field("QQ")


def cyclotomic_field(N):
    return _cached_field(f"cyclo:{N}")


def galois_field(p, minpoly=None):
    if minpoly is None:
        return _cached_field(f"gf:{p}")
    return _cached_field(f"gf:{p}:" + ",".join(str(c) for c in minpoly))


def lcm(a, b):
    return a * b // math.gcd(a, b)
