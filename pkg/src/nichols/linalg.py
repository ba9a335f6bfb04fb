"""Exact linear algebra.

Two layers live here.  The dense layer works on small matrices of
:class:`~nichols.fields.Scalar` values (reduced row echelon form, kernels,
inverses) and is used for relation bases, filtrations and basis changes.
The sparse layer computes ranks of large structured matrices: rows are
sorted coefficient lists over an integral form of the field, eliminated
fraction-free in characteristic zero (cross-multiplication with content
stripping, no divisions) and with normalized pivots over finite fields.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InputError
from .fields import CyclotomicField, GaloisField, RationalField, Scalar

# ---------------------------------------------------------------------------
# dense exact elimination over Scalars
# ---------------------------------------------------------------------------


def rref(rows, field):
    """Reduced row echelon form; returns (rows, pivot_columns).

    Input rows are lists of Scalars; the input is not mutated.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if not m[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_dense(rows, field):
    return len(rref(rows, field)[0])


def kernel_basis(rows, field, ncols=None):
    """Basis of {x : M x = 0} for the matrix with the given rows.

    The output vectors are themselves in reduced row echelon form, so the
    basis is canonical.
    """
    if ncols is None:
        if not rows:
            raise InputError("kernel_basis needs ncols for an empty matrix")
        ncols = len(rows[0])
    red, pivots = rref(rows, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [field.zero()] * ncols
        vec[fc] = field.one()
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    out, _ = rref(basis, field)
    return out


def matrix_inverse(rows, field):
    """Exact inverse of a square Scalar matrix, by Gauss-Jordan."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("matrix_inverse needs a square matrix")
    aug = [list(rows[i]) + [field.one() if j == i else field.zero() for j in range(n)] for i in range(n)]
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, n):
            if not aug[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            raise InputError("matrix is singular")
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][c].inverse()
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        r += 1
    return [row[n:] for row in aug]


def mat_vec(rows, vec):
    out = []
    for row in rows:
        acc = None
        for a, x in zip(row, vec):
            term = a * x
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


class ScalarEchelon:
    """Incremental echelon basis of a subspace, for membership tests."""

    def __init__(self, field, ncols):
        self.field = field
        self.ncols = ncols
        self.rows = {}  # pivot column -> normalized dense row

    def reduce(self, vec):
        """Reduce vec against the stored rows; returns the residual."""
        vec = list(vec)
        for c in range(self.ncols):
            if vec[c].is_zero():
                continue
            row = self.rows.get(c)
            if row is None:
                break
            f = vec[c]
            vec = [a - f * b for a, b in zip(vec, row)]
        return vec

    def _residual_pivot(self, vec):
        for c in range(self.ncols):
            if not vec[c].is_zero():
                return c
        return None

    def insert(self, vec):
        """Insert a vector; returns True if it enlarged the span."""
        res = self.reduce(vec)
        c = self._residual_pivot(res)
        if c is None:
            return False
        inv = res[c].inverse()
        self.rows[c] = [x * inv for x in res]
        return True

    def contains(self, vec):
        res = self.reduce(vec)
        return self._residual_pivot(res) is None

    @property
    def dim(self):
        return len(self.rows)


# ---------------------------------------------------------------------------
# sparse fraction-free rank accumulation
# ---------------------------------------------------------------------------


def _merge_ff(row, piv, b, a, mul, neg_a):
    """b*row - a*piv, skipping the shared pivot column.

    ``row`` and ``piv`` are sorted (col, value) lists with the same leading
    column; ``mul`` multiplies two raw values, ``neg_a`` is -a precomputed.
    """
    out = []
    i, j = 1, 1
    nr, np_ = len(row), len(piv)
    while i < nr and j < np_:
        ci, cj = row[i][0], piv[j][0]
        if ci < cj:
            out.append((ci, mul(b, row[i][1])))
            i += 1
        elif ci > cj:
            out.append((cj, mul(neg_a, piv[j][1])))
            j += 1
        else:
            v = _raw_add(mul(b, row[i][1]), mul(neg_a, piv[j][1]))
            if not _raw_is_zero(v):
                out.append((ci, v))
            i += 1
            j += 1
    while i < nr:
        out.append((row[i][0], mul(b, row[i][1])))
        i += 1
    while j < np_:
        out.append((piv[j][0], mul(neg_a, piv[j][1])))
        j += 1
    return out


def _raw_add(x, y):
    if isinstance(x, tuple):
        return tuple(a + b for a, b in zip(x, y))
    return x + y


def _raw_is_zero(x):
    if isinstance(x, tuple):
        return all(c == 0 for c in x)
    return x == 0


class _RationalRawOps:
    """Integer rows over Q; elimination is fraction-free."""

    fraction_free = True

    def __init__(self, field):
        self.field = field

    def integralize(self, entries):
        items = sorted(entries.items())
        items = [(c, v.rep) for c, v in items if v.rep != 0]
        if not items:
            return []
        den = 1
        for _, v in items:
            den = den * v.denominator // math.gcd(den, v.denominator)
        row = [(c, int(v * den)) for c, v in items]
        return self.strip(row)

    def strip(self, row):
        g = 0
        for _, v in row:
            g = math.gcd(g, v)
            if g == 1:
                return row
        if g > 1:
            row = [(c, v // g) for c, v in row]
        return row

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a


class _CyclotomicRawOps:
    """Rows over Z[zeta_N]; elimination is fraction-free."""

    fraction_free = True

    def __init__(self, field):
        self.field = field

    def integralize(self, entries):
        items = sorted(entries.items())
        items = [(c, v.rep) for c, v in items if not v.is_zero()]
        if not items:
            return []
        den = 1
        for _, rep in items:
            for comp in rep:
                den = den * comp.denominator // math.gcd(den, comp.denominator)
        row = [(c, tuple(int(comp * den) for comp in rep)) for c, rep in items]
        return self.strip(row)

    def strip(self, row):
        g = 0
        for _, v in row:
            for comp in v:
                g = math.gcd(g, comp)
                if g == 1:
                    return row
        if g > 1:
            row = [(c, tuple(comp // g for comp in v)) for c, v in row]
        return row

    def mul(self, a, b):
        return self.field.zmul(a, b)

    def neg(self, a):
        return tuple(-c for c in a)


class _PrimeFieldRawOps:
    """Rows over F_p; pivots are normalized to 1 on insertion."""

    fraction_free = False

    def __init__(self, field):
        self.field = field
        self.p = field.p

    def integralize(self, entries):
        items = sorted(entries.items())
        return [(c, v.rep[0]) for c, v in items if v.rep[0] != 0]

    def normalize(self, row):
        inv = pow(row[0][1], -1, self.p)
        if inv == 1:
            return row
        return [(c, v * inv % self.p) for c, v in row]

    def eliminate(self, row, piv):
        # piv has leading value 1
        p = self.p
        a = row[0][1]
        out = []
        i, j = 1, 1
        while i < len(row) and j < len(piv):
            ci, cj = row[i][0], piv[j][0]
            if ci < cj:
                out.append(row[i])
                i += 1
            elif ci > cj:
                out.append((cj, (-a * piv[j][1]) % p))
                j += 1
            else:
                v = (row[i][1] - a * piv[j][1]) % p
                if v:
                    out.append((ci, v))
                i += 1
                j += 1
        out.extend(row[i:])
        for cj, v in piv[j:]:
            out.append((cj, (-a * v) % p))
        return out


class _ExtensionFieldRawOps:
    """Rows over F_{p^d}, d > 1; pivots are normalized to 1 on insertion."""

    fraction_free = False

    def __init__(self, field):
        self.field = field

    def integralize(self, entries):
        items = sorted(entries.items())
        return [(c, v.rep) for c, v in items if not v.is_zero()]

    def normalize(self, row):
        f = self.field
        inv = f._inv(row[0][1])
        if f._is_zero(f._sub(inv, f.one().rep)):
            return row
        return [(c, f._mul(v, inv)) for c, v in row]

    def eliminate(self, row, piv):
        f = self.field
        a = row[0][1]
        neg_a = f._neg(a)
        out = []
        i, j = 1, 1
        while i < len(row) and j < len(piv):
            ci, cj = row[i][0], piv[j][0]
            if ci < cj:
                out.append(row[i])
                i += 1
            elif ci > cj:
                out.append((cj, f._mul(neg_a, piv[j][1])))
                j += 1
            else:
                v = f._add(row[i][1], f._mul(neg_a, piv[j][1]))
                if not f._is_zero(v):
                    out.append((ci, v))
                i += 1
                j += 1
        out.extend(row[i:])
        for cj, v in piv[j:]:
            out.append((cj, f._mul(neg_a, v)))
        return out


def raw_ops(field):
    if isinstance(field, RationalField):
        return _RationalRawOps(field)
    if isinstance(field, CyclotomicField):
        if field.degree == 1:
            # Q(zeta_1) and Q(zeta_2) carry plain integer rows in disguise
            return _CyclotomicRawOps(field)
        return _CyclotomicRawOps(field)
    if isinstance(field, GaloisField):
        if field.degree == 1:
            return _PrimeFieldRawOps(field)
        return _ExtensionFieldRawOps(field)
    raise InputError(f"no raw arithmetic for field {field!r}")


class SparseRank:
    """Incremental exact rank via sparse row echelon.

    Rows are inserted one at a time; each returns whether it was linearly
    independent from the rows seen so far.  Deterministic: pivots are the
    smallest column index of the reduced row.
    """

    def __init__(self, field):
        self.field = field
        self.ops = raw_ops(field)
        self.rows = {}  # pivot column -> stored row

    def insert_scalars(self, entries):
        """Insert a row given as {column: Scalar}; returns independence."""
        return self.insert_raw(self.ops.integralize(entries))

    def insert_raw(self, row):
        ops = self.ops
        if ops.fraction_free:
            mul, neg = ops.mul, ops.neg
            while row:
                piv = self.rows.get(row[0][0])
                if piv is None:
                    self.rows[row[0][0]] = row
                    return True
                a, b = row[0][1], piv[0][1]
                row = ops.strip(_merge_ff(row, piv, b, a, mul, neg(a)))
        else:
            while row:
                piv = self.rows.get(row[0][0])
                if piv is None:
                    self.rows[row[0][0]] = ops.normalize(row)
                    return True
                row = ops.eliminate(row, piv)
        return False

    @property
    def rank(self):
        return len(self.rows)
