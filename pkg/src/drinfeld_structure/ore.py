"""The twisted polynomial ring L{tau}, with tau * x = x^q * tau."""

from __future__ import annotations

from .errors import ParameterError
from .fields import FieldCtx, FieldElem, embed_code


class OrePoly:
    """Element of L{tau}; ``coeffs[j]`` is the code of the coefficient of tau^j.

    Products twist by the base Frobenius x -> x^q even when the coefficients
    live in an extension of L.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        c = [x.code if isinstance(x, FieldElem) else x for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.coeffs = tuple(c)

    @classmethod
    def tau(cls, ctx, k=1):
        return cls(ctx, [0] * k + [1])

    @classmethod
    def constant(cls, ctx, c):
        return cls(ctx, (c.code if isinstance(c, FieldElem) else c,))

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

    def coefficient(self, j) -> int:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def coefficients(self) -> list[FieldElem]:
        return [FieldElem(self.ctx, c) for c in self.coeffs]

    def __eq__(self, other):
        if isinstance(other, OrePoly):
            return self.ctx is other.ctx and self.coeffs == other.coeffs
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"OrePoly({[self.ctx.coords(c) for c in self.coeffs]})"

    def _check(self, other):
        if not isinstance(other, OrePoly):
            raise TypeError(f"expected OrePoly, got {type(other).__name__}")
        if other.ctx is not self.ctx:
            raise ParameterError("Ore polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        add = self.ctx.add
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = add(out[i], x)
        return OrePoly(self.ctx, out)

    def __neg__(self):
        neg = self.ctx.neg
        return OrePoly(self.ctx, [neg(x) for x in self.coeffs])

    def __sub__(self, other):
        self._check(other)
        sub = self.ctx.sub
        a, b = self.coeffs, other.coeffs
        out = list(a) + [0] * max(0, len(b) - len(a))
        for i, x in enumerate(b):
            out[i] = sub(out[i], x)
        return OrePoly(self.ctx, out)

    def scale(self, c: int) -> "OrePoly":
        """Left multiplication by the constant c (an element code of ctx)."""
        mul = self.ctx.mul
        return OrePoly(self.ctx, [mul(c, x) for x in self.coeffs])

    def __mul__(self, other):
        self._check(other)
        ctx = self.ctx
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return OrePoly(ctx, ())
        add, mul, frob = ctx.add, ctx.mul, ctx.frob
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            if ctx.tabled:
                ft = ctx.frob_table(i)
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, ft[y]))
            else:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, frob(y, i)))
        return OrePoly(ctx, out)

    def __pow__(self, e: int):
        result = OrePoly(self.ctx, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift_down(self, k: int) -> "OrePoly":
        """Drop the k lowest coefficients: S = Q * tau^k recovers Q when those vanish."""
        return OrePoly(self.ctx, self.coeffs[k:])

    def height(self) -> int:
        if not self.coeffs:
            raise ParameterError("height of the zero Ore polynomial")
        return next(j for j, c in enumerate(self.coeffs) if c)

    def embed(self, target: FieldCtx) -> "OrePoly":
        if target is self.ctx:
            return self
        return OrePoly(target, [embed_code(c, self.ctx, target) for c in self.coeffs])

    def apply_code(self, x: int) -> int:
        ctx = self.ctx
        add, mul, frob = ctx.add, ctx.mul, ctx.frob
        acc = 0
        y = x
        for j, c in enumerate(self.coeffs):
            if j:
                y = frob(y, 1)
            if c:
                acc = add(acc, mul(c, y))
        return acc

    def __call__(self, x: FieldElem) -> FieldElem:
        return ore_apply(self, x)

    def right_divmod(self, g: "OrePoly"):
        return ore_right_divmod(self, g)

    def to_json(self):
        return [self.ctx.coords(c) for c in self.coeffs]


def ore_mul(f: OrePoly, g: OrePoly) -> OrePoly:
    return f * g


def ore_apply(f: OrePoly, x: FieldElem) -> FieldElem:
    """The additive map sum_j f_j x^(q^j); coefficients are embedded when x lives in an extension."""
    if x.ctx is not f.ctx:
        f = f.embed(x.ctx)
    return FieldElem(x.ctx, f.apply_code(x.code))


def ore_right_divmod(f: OrePoly, g: OrePoly):
    """(quo, rem) with f = quo * g + rem and deg rem < deg g."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("Ore division by zero")
    ctx = f.ctx
    dg = g.degree
    r = list(f.coeffs)
    if len(r) - 1 < dg:
        return OrePoly(ctx, ()), f
    quo = [0] * (len(r) - dg)
    lg = g.coeffs[-1]
    sub, mul, frob = ctx.sub, ctx.mul, ctx.frob
    g_coeffs = g.coeffs
    for top in range(len(r) - 1, dg - 1, -1):
        c = r[top]
        if not c:
            continue
        k = top - dg
        # (c' tau^k) g has leading coefficient c' * lg^(q^k)
        c = ctx.div(c, frob(lg, k))
        quo[k] = c
        for j, y in enumerate(g_coeffs):
            if y:
                r[k + j] = sub(r[k + j], mul(c, frob(y, k)))
    return OrePoly(ctx, quo), OrePoly(ctx, r[:dg])
