"""Finite fields F_q, their extensions L = F_{q^n} and towers L_k over L.

Every field element is an integer *code*.  A field is either the prime field
F_p (codes 0..p-1) or ``base[y]/(modulus)`` with ``modulus`` a monic irreducible
polynomial over ``base``; the element ``sum(c_j y^j)`` has code
``sum(code(c_j) * |base|**j)``.  Flattened all the way down, a code is the
base-p integer whose digits are the F_p coordinates, so:

* a subfield sitting lower in the tower keeps its codes (F_q elements are the
  codes ``< q`` of every field built over F_q, L elements the codes ``< |L|``
  of every tower over L);
* in characteristic 2 addition is XOR on codes;
* the F_q coordinates of an element are the base-q digits of its code.

Small fields use lookup tables, larger ones fall back to polynomial arithmetic
over the base field.
"""

from __future__ import annotations

import itertools
import operator
from functools import lru_cache

from . import config
from .errors import CapExceeded, ParameterError

FULL_TABLE_LIMIT = 256
LOG_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors_int(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p**s; raises ParameterError if q is not a prime power."""
    if q < 2:
        raise ParameterError(f"{q} is not a prime power")
    ps = prime_factors_int(q)
    if len(ps) != 1:
        raise ParameterError(f"{q} is not a prime power")
    p, s = ps[0], 0
    while q > 1:
        q //= p
        s += 1
    return p, s


class FieldCtx:
    """Descriptor of a finite field; performs all arithmetic on integer codes."""

    def __init__(self, p, s, base=None, modulus=(), recipe=None):
        self.p = p
        self.s = s
        self.q = p**s
        self.base = base
        self.modulus = tuple(modulus)
        if base is None:
            self.degree = 1
            self.size = p
            self.flat_degree = 1
        else:
            self.degree = len(self.modulus) - 1
            self.size = base.size**self.degree
            self.flat_degree = base.flat_degree * self.degree
        self.degree_over_fq = self.flat_degree // s
        self._recipe = recipe
        self._elements = None
        self._frob_tables = {}
        self._setup()

    # construction helpers -------------------------------------------------

    def __reduce__(self):
        return (_from_recipe, (self._recipe,))

    def __repr__(self):
        if self.base is None:
            return f"FieldCtx(F_{self.p})"
        return f"FieldCtx(F_{self.p}^{self.flat_degree}, degree {self.degree} over {self.base!r})"

    @property
    def chain(self) -> list[tuple[int, ...]]:
        """Defining polynomials from the bottom of the tower up."""
        out, ctx = [], self
        while ctx.base is not None:
            out.append(ctx.modulus)
            ctx = ctx.base
        return out[::-1]

    @property
    def fq(self) -> "FieldCtx":
        ctx = self
        while ctx.flat_degree > self.s:
            ctx = ctx.base
        if ctx.flat_degree != self.s:
            raise ParameterError(f"{self!r} does not contain F_{self.q}")
        return ctx

    def ancestors(self):
        ctx = self
        while ctx is not None:
            yield ctx
            ctx = ctx.base

    # coordinates ----------------------------------------------------------

    def coords(self, code: int) -> list[int]:
        """Coordinates over ``base`` (as base codes), lowest power first."""
        if self.base is None:
            return [code]
        b = self.base.size
        out = []
        for _ in range(self.degree):
            code, r = divmod(code, b)
            out.append(r)
        return out

    def encode(self, coords) -> int:
        if self.base is None:
            return coords[0] % self.p
        b = self.base.size
        code = 0
        for c in reversed(coords):
            code = code * b + c
        return code

    def fq_vector(self, code: int) -> list[int]:
        """Coordinates over F_q in the canonical basis (codes q**j)."""
        q = self.q
        out = []
        for _ in range(self.degree_over_fq):
            code, r = divmod(code, q)
            out.append(r)
        return out

    def from_fq_vector(self, vec) -> int:
        code = 0
        for c in reversed(vec):
            code = code * self.q + c
        return code

    def key(self, code: int) -> tuple[int, ...]:
        """Sort key: F_p coordinates, lowest first, compared lexicographically."""
        p = self.p
        out = []
        for _ in range(self.flat_degree):
            code, r = divmod(code, p)
            out.append(r)
        return tuple(out)

    def elements(self) -> list[int]:
        """All codes in element order (see ``key``)."""
        if self._elements is None:
            if self.size > config.SCAN_CAP:
                raise CapExceeded(f"refusing to list {self.size} elements of {self!r}")
            self._elements = sorted(range(self.size), key=self.key)
        return self._elements

    def in_fq(self, code: int) -> bool:
        return code < self.q

    def from_int(self, n: int) -> int:
        return n % self.p

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.ctx is not self:
                raise ParameterError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElem(self, self.from_int(value))
        return FieldElem(self, self.encode(list(value)))

    def elem(self, code: int) -> "FieldElem":
        return FieldElem(self, code)

    @property
    def generator(self) -> "FieldElem":
        """The class of y in base[y]/(modulus)."""
        if self.base is None:
            raise ParameterError("prime field has no defining element")
        return FieldElem(self, self.base.size if self.degree > 1 else self._root_of_linear())

    def _root_of_linear(self):
        # degree-1 modulus y + c0 has root -c0
        return self.base.neg(self.modulus[0])

    # arithmetic -----------------------------------------------------------

    def _setup(self):
        p, Q = self.p, self.size
        if self.base is None:
            self.add = (lambda a, b: a ^ b) if p == 2 else (lambda a, b: (a + b) % p)
            self.sub = (lambda a, b: a ^ b) if p == 2 else (lambda a, b: (a - b) % p)
            self.neg = (lambda a: a) if p == 2 else (lambda a: (-a) % p)
            self.mul = lambda a, b: a * b % p
            self.inv = self._prime_inv
            self.pow = self._prime_pow
            self.frob = lambda a, k=1: a
            return

        self.add = operator.xor if p == 2 else self._slow_add
        self.sub = operator.xor if p == 2 else self._slow_sub
        self.neg = (lambda a: a) if p == 2 else self._slow_neg
        self.mul = self._slow_mul
        self.inv = self._slow_inv
        self.pow = self._slow_pow
        self.frob = self._slow_frob
        if Q > LOG_TABLE_LIMIT:
            return

        g = self._find_primitive()
        exp = [0] * (Q - 1)
        log = [0] * Q
        x = 1
        for i in range(Q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        self._exp, self._log = exp, log
        self.inv = self._log_inv
        self.pow = self._log_pow
        self.frob = self._log_frob
        if Q <= FULL_TABLE_LIMIT:
            n1 = Q - 1
            mul = [[0] * Q for _ in range(Q)]
            for a in range(1, Q):
                la = log[a]
                row = mul[a]
                for b in range(1, Q):
                    row[b] = exp[(la + log[b]) % n1]
            self._mul_t = mul
            self.mul = lambda a, b, t=mul: t[a][b]
            if p != 2:
                add = [[self._slow_add(a, b) for b in range(Q)] for a in range(Q)]
                self._add_t = add
                self.add = lambda a, b, t=add: t[a][b]
                negs = [self._slow_neg(a) for a in range(Q)]
                self.neg = lambda a, t=negs: t[a]
                self.sub = lambda a, b, t=add, n=negs: t[a][n[b]]
        else:
            n1 = Q - 1
            self.mul = lambda a, b, e=exp, l=log, n1=n1: 0 if a == 0 or b == 0 else e[(l[a] + l[b]) % n1]

    def _prime_inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def _prime_pow(self, a, e):
        if e < 0:
            return pow(self._prime_inv(a), -e, self.p)
        return pow(a, e, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def _digits_op(self, a, b, op):
        p = self.p
        out, place = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += (op(da, db) % p) * place
            place *= p
        return out

    def _slow_add(self, a, b):
        return self._digits_op(a, b, operator.add)

    def _slow_sub(self, a, b):
        return self._digits_op(a, b, operator.sub)

    def _slow_neg(self, a):
        return self._digits_op(0, a, operator.sub)

    def _slow_mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        base = self.base
        badd, bmul = base.add, base.mul
        x, y = self.coords(a), self.coords(b)
        prod = [0] * (2 * self.degree - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        prod[i + j] = badd(prod[i + j], bmul(xi, yj))
        mod = self.modulus
        d = self.degree
        for top in range(len(prod) - 1, d - 1, -1):
            c = prod[top]
            if c:
                for j in range(d):
                    if mod[j]:
                        prod[top - d + j] = base.sub(prod[top - d + j], bmul(c, mod[j]))
                prod[top] = 0
        return self.encode(prod[:d])

    def _slow_pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if e > 0:
            e = (e - 1) % (self.size - 1) + 1
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            e >>= 1
            if e:
                a = self._slow_mul(a, a)
        return result

    def _slow_inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._slow_pow(a, self.size - 2)

    def _slow_frob(self, a, k=1):
        e = self.degree_over_fq
        k %= e if e else 1
        for _ in range(k):
            a = self._slow_pow(a, self.q)
        return a

    def _find_primitive(self):
        n1 = self.size - 1
        exps = [n1 // r for r in prime_factors_int(n1)]
        for g in range(2, self.size):
            if all(self._slow_pow(g, e) != 1 for e in exps):
                return g
        return 1  # F_2: the only nonzero element

    def _log_inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % (self.size - 1)]

    def _log_pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.size - 1)]

    def _log_frob(self, a, k=1):
        return self.frob_table(k)[a]

    def frob_table(self, k: int) -> list[int]:
        """Lookup list x -> x^(q^k); only for table-backed fields."""
        e = self.degree_over_fq or 1
        k %= e
        t = self._frob_tables.get(k)
        if t is None:
            n1 = self.size - 1
            qk = pow(self.q, k, n1) if n1 > 1 else 1
            exp, log = self._exp, self._log
            t = [0] + [exp[(log[a] * qk) % n1] for a in range(1, self.size)]
            self._frob_tables[k] = t
        return t

    @property
    def tabled(self) -> bool:
        return hasattr(self, "_exp")


class FieldElem:
    """An element of a FieldCtx, wrapping its integer code."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise ParameterError("field mismatch")
            return other.code
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.sub(o, self.code))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.div(self.code, o))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.code, e))

    def inverse(self):
        return FieldElem(self.ctx, self.ctx.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return other.ctx is self.ctx and other.code == self.code
        if isinstance(other, int):
            return self.code == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.code))

    def __bool__(self):
        return self.code != 0

    def __lt__(self, other):
        return self.ctx.key(self.code) < other.ctx.key(other.code)

    @property
    def coords(self) -> list[int]:
        return self.ctx.coords(self.code)

    def __repr__(self):
        return f"FieldElem({self.coords})"


# polynomials over a field, as lists of codes (low degree first) -----------

def upoly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def upoly_mul(ctx, f, g):
    if not f or not g:
        return []
    add, mul = ctx.add, ctx.mul
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = add(out[i + j], mul(a, b))
    return upoly_trim(out)


def upoly_divmod(ctx, f, g):
    g = upoly_trim(list(g))
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f)
    upoly_trim(r)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], r
    quo = [0] * (len(r) - dg)
    inv_lc = ctx.inv(g[-1])
    sub, mul = ctx.sub, ctx.mul
    for top in range(len(r) - 1, dg - 1, -1):
        c = r[top]
        if c:
            c = mul(c, inv_lc)
            quo[top - dg] = c
            for j in range(dg + 1):
                if g[j]:
                    r[top - dg + j] = sub(r[top - dg + j], mul(c, g[j]))
    return upoly_trim(quo), upoly_trim(r[:dg])


def upoly_sub(ctx, f, g):
    n = max(len(f), len(g))
    out = [ctx.sub(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)]
    return upoly_trim(out)


def upoly_gcd(ctx, f, g):
    f, g = upoly_trim(list(f)), upoly_trim(list(g))
    while g:
        f, g = g, upoly_divmod(ctx, f, g)[1]
    if f:
        inv = ctx.inv(f[-1])
        f = [ctx.mul(c, inv) for c in f]
    return f


def upoly_powmod(ctx, f, e, mod):
    result = [1]
    base = upoly_divmod(ctx, f, mod)[1]
    while e:
        if e & 1:
            result = upoly_divmod(ctx, upoly_mul(ctx, result, base), mod)[1]
        e >>= 1
        if e:
            base = upoly_divmod(ctx, upoly_mul(ctx, base, base), mod)[1]
    return result


def upoly_eval(ctx, f, x):
    acc = 0
    for c in reversed(f):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def is_irreducible_over(ctx: FieldCtx, f) -> bool:
    """Rabin's test for a polynomial given as a list of ctx codes."""
    f = upoly_trim(list(f))
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    Q = ctx.size
    x = [0, 1]

    def x_power_iter(times):
        h = x
        for _ in range(times):
            h = upoly_powmod(ctx, h, Q, f)
        return h

    if upoly_sub(ctx, x_power_iter(k), x):
        return False
    for r in prime_factors_int(k):
        h = upoly_sub(ctx, x_power_iter(k // r), x)
        if len(upoly_gcd(ctx, h, f)) > 1:
            return False
    return True


def smallest_irreducible(base: FieldCtx, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over ``base``.

    Candidates are ordered by their coefficient sequence, constant term first,
    each coefficient compared by element order.
    """
    elems = base.elements()
    for lower in itertools.product(elems, repeat=k):
        if k > 1 and lower[0] == 0:
            continue
        f = list(lower) + [1]
        if is_irreducible_over(base, f):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {k} over {base!r}")


# field construction ---------------------------------------------------------

@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldCtx:
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    return FieldCtx(p, 1, recipe=("prime", p))


def make_field(p: int, s: int = 1, k: int = 1, *, max_size: int | None = None) -> FieldCtx:
    """Context for F_{q^k}, q = p^s, built with lex-smallest defining polynomials."""
    if not isinstance(p, int) or not is_prime(p):
        raise ParameterError(f"p = {p!r} is not prime")
    if s < 1 or k < 1:
        raise ParameterError("s and k must be positive")
    cap = config.FIELD_CAP if max_size is None else max_size
    if p ** (s * k) > cap:
        raise CapExceeded(f"field of size {p}^{s * k} exceeds cap {cap}")
    return _make_field(p, s, k)


@lru_cache(maxsize=None)
def _make_field(p, s, k):
    if k == 1:
        if s == 1:
            return prime_field(p)
        fp = prime_field(p)
        return FieldCtx(p, s, fp, smallest_irreducible(fp, s), recipe=("make", p, s, 1))
    fq = _make_field(p, s, 1)
    return FieldCtx(p, s, fq, smallest_irreducible(fq, k), recipe=("make", p, s, k))


def extend(ctx: FieldCtx, k: int, *, max_size: int | None = None) -> FieldCtx:
    """Tower extension of degree k over ctx (ctx itself when k == 1)."""
    if k < 1:
        raise ParameterError("extension degree must be positive")
    if k == 1:
        return ctx
    if max_size is not None and ctx.size**k > max_size:
        raise CapExceeded(f"extension of size {ctx.size}^{k} exceeds cap {max_size}")
    return _extend(ctx, k)


@lru_cache(maxsize=None)
def _extend(ctx, k):
    return FieldCtx(ctx.p, ctx.s, ctx, smallest_irreducible(ctx, k), recipe=("extend", ctx, k))


def _from_recipe(recipe):
    kind = recipe[0]
    if kind == "prime":
        return prime_field(recipe[1])
    if kind == "make":
        return _make_field(*recipe[1:])
    return _extend(recipe[1], recipe[2])


# ff-tower operations ----------------------------------------------------------

def frob_power(x: FieldElem, k: int) -> FieldElem:
    """x^(q^k)."""
    if k < 0:
        raise ParameterError("k must be non-negative")
    return FieldElem(x.ctx, x.ctx.frob(x.code, k))


def conjugates(x: FieldElem) -> list[int]:
    ctx = x.ctx
    orbit = [x.code]
    y = ctx.frob(x.code, 1)
    while y != x.code:
        orbit.append(y)
        y = ctx.frob(y, 1)
    return orbit


def min_poly(x: FieldElem):
    """Minimal polynomial of x over F_q, as an APoly."""
    from .apoly import APoly

    ctx = x.ctx
    f = [1]
    for y in conjugates(x):
        f = upoly_mul(ctx, f, [ctx.neg(y), 1])
    if not all(ctx.in_fq(c) for c in f):
        raise AssertionError("minimal polynomial coefficients escaped F_q")
    return APoly(f, ctx.fq)


def _defining_roots(source: FieldCtx, target: FieldCtx) -> list[int]:
    if source in target.ancestors():
        # the roots are the Frobenius conjugates of the generator, already in target
        return conjugates(source.generator)
    mod = list(source.modulus)
    return [x for x in target.elements() if upoly_eval(target, mod, x) == 0]


def embedding_root(source: FieldCtx, target: FieldCtx) -> int | None:
    """Image of the defining element of source in target (None when source = F_q)."""
    if target.q != source.q:
        raise ParameterError("fields have different F_q")
    if target.degree_over_fq % source.degree_over_fq:
        raise ParameterError(
            f"degree {target.degree_over_fq} is not a multiple of {source.degree_over_fq}")
    if source.degree_over_fq == 1:
        return None
    if source.base is not source.fq:
        raise ParameterError("embedding is only defined for fields built directly over F_q")
    return _embedding_root(source, target)


@lru_cache(maxsize=None)
def _embedding_root(source, target):
    roots = _defining_roots(source, target)
    if not roots:
        raise AssertionError("defining polynomial has no root in a larger field")
    return min(roots, key=target.key)


def embed_code(code: int, source: FieldCtx, target: FieldCtx) -> int:
    if source is target:
        return code
    r = embedding_root(source, target)
    if r is None:
        return code
    return upoly_eval(target, source.coords(code), r)


def embed(x: FieldElem, target: FieldCtx) -> FieldElem:
    """Deterministic F_q-embedding of x into target (smallest root of the defining polynomial)."""
    return FieldElem(target, embed_code(x.code, x.ctx, target))
