"""Finite racks and quandles.

A rack is a finite set with a binary operation x |> y whose left
translations y -> x |> y are bijections and which is left self-distributive.
Elements are canonically the integers 0..size-1; affine racks identify
element i with i in Z/pZ so that basis indexing stays stable downstream.

Rack file format (JSON):
    {"type": "affine", "p": 5, "alpha": 2}
    {"type": "table", "op": [[...], ...]}
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

from .errors import InputError, ResourceLimitError
from .polys import is_prime, multiplicative_order


@dataclass(frozen=True)
class AffineRackSpec:
    """Parameters of the affine rack on Z/pZ with a |> b = (1-alpha)a + alpha*b."""

    p: int
    alpha: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"affine rack needs a prime modulus, got {self.p}")
        if self.alpha % self.p in (0, 1):
            raise InputError("affine rack parameter alpha must avoid 0 and 1")
        object.__setattr__(self, "alpha", self.alpha % self.p)

    def spec(self):
        return f"affine:{self.p}:{self.alpha}"


class Rack:
    """A finite rack given by its full operation table op[x][y] = x |> y."""

    __slots__ = ("table",)

    def __init__(self, table, validate=True):
        table = tuple(tuple(row) for row in table)
        object.__setattr__(self, "table", table)
        if validate:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("Rack is immutable")

    def _validate(self):
        n = len(self.table)
        universe = set(range(n))
        for x, row in enumerate(self.table):
            if len(row) != n or set(row) != universe:
                raise InputError(f"row {x} of the rack table is not a permutation")
        t = self.table
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if t[x][t[y][z]] != t[t[x][y]][t[x][z]]:
                        raise InputError(
                            f"self-distributivity fails at ({x}, {y}, {z})"
                        )

    @property
    def size(self):
        return len(self.table)

    def op(self, x, y):
        return self.table[x][y]

    def __eq__(self, other):
        return isinstance(other, Rack) and other.table == self.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"Rack(size={self.size})"

    def to_json(self):
        return {"type": "table", "op": [list(row) for row in self.table]}


def affine_rack(spec):
    """The rack Z/pZ with a |> b = (1-alpha)a + alpha*b."""
    if not isinstance(spec, AffineRackSpec):
        spec = AffineRackSpec(*spec)
    p, a = spec.p, spec.alpha
    table = [[((1 - a) * x + a * y) % p for y in range(p)] for x in range(p)]
    return Rack(table, validate=False)


def is_quandle(r):
    return all(r.table[x][x] == x for x in range(r.size))


def is_indecomposable(r):
    """True iff the group generated by the left translations acts transitively."""
    n = r.size
    if n == 0:
        return False
    seen = {0}
    frontier = [0]
    while frontier:
        y = frontier.pop()
        for x in range(n):
            z = r.table[x][y]
            if z not in seen:
                seen.add(z)
                frontier.append(z)
    return len(seen) == n


def _perm_order(perm):
    n = len(perm)
    order = 1
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        c = s
        while not seen[c]:
            seen[c] = True
            c = perm[c]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


def inner_order(r, x=0):
    """Order of the left translation by x; constant over indecomposable racks."""
    if not is_indecomposable(r):
        raise InputError("inner_order is defined for indecomposable racks")
    orders = {_perm_order(r.table[y]) for y in range(r.size)}
    if len(orders) != 1:
        raise AssertionError("translation orders differ on an indecomposable rack")
    return _perm_order(r.table[x])


def rack_isomorphic(r1, r2):
    """A bijection intertwining the two operations, or None.

    Backtracking over images with first-element anchoring; sized for the
    desk-scale racks used here (|X| <= 8 or so).
    """
    n = r1.size
    if n != r2.size:
        return None
    t1, t2 = r1.table, r2.table

    def consistent(b, assigned):
        for x in assigned:
            for y in assigned:
                z = t1[x][y]
                if b[z] is not None and t2[b[x]][b[y]] != b[z]:
                    return False
        return True

    b = [None] * n
    used = [False] * n

    def extend(i, assigned):
        if i == n:
            return True
        for v in range(n):
            if used[v]:
                continue
            b[i] = v
            used[v] = True
            if consistent(b, assigned + [i]) and extend(i + 1, assigned + [i]):
                return True
            b[i] = None
            used[v] = False
        return False

    if extend(0, []):
        return list(b)
    return None


# ---------------------------------------------------------------------------
# quandle enumeration
# ---------------------------------------------------------------------------


def _perms_fixing(n, x):
    rest = [i for i in range(n) if i != x]
    for images in itertools.permutations(rest):
        perm = [None] * n
        perm[x] = x
        for i, v in zip(rest, images):
            perm[i] = v
        yield tuple(perm)


def _compose(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


def _invert(a):
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def enumerate_quandles(n):
    """Yield the operation tables of all quandles on {0..n-1}.

    Rows are chosen as permutations fixing their own index; the rack law
    phi_x phi_y phi_x^{-1} = phi_{x |> y} is propagated eagerly, which
    forces most rows once the first few are chosen.
    """
    if n == 0:
        return
    candidates = {x: list(_perms_fixing(n, x)) for x in range(n)}

    def propagate(rows):
        # returns a completed/extended assignment or None on contradiction
        rows = dict(rows)
        changed = True
        while changed:
            changed = False
            for x in list(rows):
                px = rows[x]
                px_inv = _invert(px)
                for y in list(rows):
                    z = px[y]
                    forced = _compose(_compose(px, rows[y]), px_inv)
                    if forced[z] != z:
                        return None
                    if z in rows:
                        if rows[z] != forced:
                            return None
                    else:
                        rows[z] = forced
                        changed = True
        return rows

    def extend(rows):
        if len(rows) == n:
            yield tuple(rows[x] for x in range(n))
            return
        x = min(i for i in range(n) if i not in rows)
        for perm in candidates[x]:
            trial = dict(rows)
            trial[x] = perm
            trial = propagate(trial)
            if trial is not None:
                yield from extend(trial)

    yield from extend({})


def verify_egs(p, max_size=7):
    """Check that every indecomposable quandle of prime size p is affine.

    Exhausts all quandle tables of size p and tests each indecomposable one
    for isomorphism against Aff(p, alpha), alpha in {2..p-1}.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if p > max_size:
        raise ResourceLimitError(
            f"quandle enumeration of size {p} exceeds the desk-scale bound",
            size=p,
        )
    affine = [affine_rack(AffineRackSpec(p, a)) for a in range(2, p)]
    for table in enumerate_quandles(p):
        r = Rack(table, validate=False)
        if not is_indecomposable(r):
            continue
        if not any(rack_isomorphic(r, ar) is not None for ar in affine):
            return False
    return True


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def rack_to_json(r):
    return r.to_json()


def rack_from_json(data):
    if not isinstance(data, dict) or "type" not in data:
        raise InputError("rack JSON must be an object with a 'type' key")
    if data["type"] == "affine":
        try:
            spec = AffineRackSpec(int(data["p"]), int(data["alpha"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad affine rack JSON: {exc}") from None
        return affine_rack(spec)
    if data["type"] == "table":
        if "op" not in data or not isinstance(data["op"], list):
            raise InputError("table rack JSON needs an 'op' list of rows")
        return Rack(data["op"])
    raise InputError(f"unknown rack type {data['type']!r}")


def load_rack_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read rack file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"rack file {path} is not valid JSON: {exc}") from None
    return rack_from_json(data)
