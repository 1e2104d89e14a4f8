"""The polynomial ring A = F_q[T]."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import ParameterError
from .fields import FieldCtx, is_irreducible_over

ZERO_DEGREE = -1


class APoly:
    """Dense polynomial over F_q, coefficients as F_q codes, lowest degree first.

    Trailing zeros are stripped, so equal polynomials have equal ``coeffs``.
    The zero polynomial has degree ``ZERO_DEGREE``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs, field: FieldCtx):
        if field.flat_degree != field.s:
            raise ParameterError("APoly coefficients must live in F_q")
        c = list(coeffs)
        if field.s == 1:
            p = field.p
            c = [x % p for x in c]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def T(cls, field):
        return cls((0, 1), field)

    @classmethod
    def constant(cls, field, c):
        return cls((c,), field)

    @classmethod
    def monomial(cls, field, k, c=1):
        return cls([0] * k + [c], field)

    # basic properties -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_monic(self) -> bool:
        return self.lc == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, APoly):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == APoly((other,), self.field).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def sort_key(self):
        return (self.degree, tuple(self.field.key(c) for c in self.coeffs))

    def __repr__(self):
        return f"APoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(c) if self.field.s == 1 else str(self.field.key(c))
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms)

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, APoly):
            if other.field is not self.field:
                raise ParameterError("APoly field mismatch")
            return other
        if isinstance(other, int):
            return APoly((self.field.from_int(other),), self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        add = self.field.add
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return APoly(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return APoly([neg(c) for c in self.coeffs], self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return APoly((), self.field)
        add, mul = self.field.add, self.field.mul
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return APoly(out, self.field)

    __rmul__ = __mul__

    def scale(self, c: int) -> "APoly":
        mul = self.field.mul
        return APoly([mul(c, x) for x in self.coeffs], self.field)

    def __pow__(self, e: int):
        if e < 0:
            raise ParameterError("negative power of a polynomial")
        result = APoly((1,), self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        g = other.coeffs
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        r = list(self.coeffs)
        dg = len(g) - 1
        if len(r) - 1 < dg:
            return APoly((), F), self
        quo = [0] * (len(r) - dg)
        inv_lc = F.inv(g[-1])
        sub, mul = F.sub, F.mul
        for top in range(len(r) - 1, dg - 1, -1):
            c = r[top]
            if c:
                c = mul(c, inv_lc)
                quo[top - dg] = c
                for j in range(dg + 1):
                    if g[j]:
                        r[top - dg + j] = sub(r[top - dg + j], mul(c, g[j]))
        return APoly(quo, F), APoly(r[:dg], F)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "APoly") -> bool:
        """True when self | other (zero divides only zero)."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self) -> "APoly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    # serialization --------------------------------------------------------

    def to_json(self):
        if self.field.s == 1:
            return list(self.coeffs)
        return [list(self.field.key(c)) for c in self.coeffs]

    @classmethod
    def from_json(cls, data, field: FieldCtx):
        if isinstance(data, int):
            data = [data]
        if not isinstance(data, list):
            raise ParameterError(f"polynomial must be a JSON list, got {data!r}")
        coeffs = []
        for c in data:
            if field.s == 1:
                if not isinstance(c, int) or not 0 <= c < field.p:
                    raise ParameterError(f"coefficient {c!r} is not in [0, {field.p})")
                coeffs.append(c)
            else:
                if (not isinstance(c, list) or len(c) != field.s
                        or not all(isinstance(x, int) and 0 <= x < field.p for x in c)):
                    raise ParameterError(f"F_q coefficient must be a list of {field.s} digits, got {c!r}")
                coeffs.append(field.encode(c))
        return cls(coeffs, field)


def gcd(f: APoly, g: APoly) -> APoly:
    """Monic generator of (f, g)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def xgcd(f: APoly, g: APoly):
    """(g, s, t) with s*f + t*g = g monic."""
    F = f.field
    r0, r1 = f, g
    s0, s1 = APoly((1,), F), APoly((), F)
    t0, t1 = APoly((), F), APoly((1,), F)
    while not r1.is_zero():
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def is_irreducible(f: APoly) -> bool:
    return is_irreducible_over(f.field, list(f.coeffs))


def polys_of_degree_below(field: FieldCtx, k: int):
    """Every polynomial of degree < k (residues modulo a degree-k modulus), in lex order."""
    for coeffs in itertools.product(field.elements(), repeat=k):
        yield APoly(coeffs, field)


def monic_polys(field: FieldCtx, deg: int):
    """All monic polynomials of the given degree, constant term most significant."""
    for lower in itertools.product(field.elements(), repeat=deg):
        yield APoly(list(lower) + [1], field)


@lru_cache(maxsize=None)
def monic_irreducibles(field: FieldCtx, deg: int) -> tuple[APoly, ...]:
    return tuple(f for f in monic_polys(field, deg) if is_irreducible(f))


def factor(f: APoly) -> list[tuple[APoly, int]]:
    """Factorization of a nonzero polynomial into monic primes by trial division."""
    if f.is_zero():
        raise ParameterError("cannot factor the zero polynomial")
    f = f.monic()
    out = []
    deg = 1
    while f.degree >= 1:
        if 2 * deg > f.degree:
            out.append((f, 1))
            break
        for r in monic_irreducibles(f.field, deg):
            e = 0
            while True:
                qt, rem = divmod(f, r)
                if not rem.is_zero():
                    break
                f, e = qt, e + 1
            if e:
                out.append((r, e))
        deg += 1
    merged = {}
    for r, e in out:
        merged[r] = merged.get(r, 0) + e
    return sorted(merged.items(), key=lambda item: item[0].sort_key())


def prime_divisors(f: APoly) -> list[APoly]:
    return [r for r, _ in factor(f)]


def coprime_part(f: APoly, r: APoly) -> APoly:
    """f with every factor of r removed."""
    f = f.monic()
    while True:
        g = gcd(f, r)
        if g.degree < 1:
            return f
        f = f // g
