"""Rank-2 Drinfeld F_q[T]-modules over a finite field L."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .apoly import APoly, is_irreducible, polys_of_degree_below
from .errors import InternalConsistencyError, NotInImage, ParameterError
from .fields import FieldCtx, FieldElem, min_poly
from .ore import OrePoly


class DrinfeldModule:
    """phi_T = a1 + a2*tau + a3*tau^2 over L, with a3 != 0.

    Immutable; derived data (A-characteristic, Frobenius characteristic
    polynomial, ...) is computed lazily and cached.
    """

    def __init__(self, ctx: FieldCtx, a1, a2, a3):
        self.ctx = ctx
        self.a1, self.a2, self.a3 = (self._coerce(x) for x in (a1, a2, a3))
        if not self.a3:
            raise ParameterError("a3 must be nonzero for a rank-2 module")
        self.phi_T = OrePoly(ctx, (self.a1.code, self.a2.code, self.a3.code))
        self._tpowers = [OrePoly(ctx, (1,)), self.phi_T]

    def _coerce(self, x):
        if isinstance(x, FieldElem):
            if x.ctx is not self.ctx:
                raise ParameterError("coefficient from a different field")
            return x
        if isinstance(x, int):
            if not 0 <= x < self.ctx.size:
                raise ParameterError(f"code {x} out of range for {self.ctx!r}")
            return FieldElem(self.ctx, x)
        return self.ctx(x)

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def n(self) -> int:
        return self.ctx.degree_over_fq

    @property
    def fq(self) -> FieldCtx:
        return self.ctx.fq

    @cached_property
    def characteristic(self):
        return a_characteristic(self)

    @property
    def P(self) -> APoly:
        return self.characteristic[0]

    @property
    def d(self) -> int:
        return self.characteristic[1]

    @property
    def m(self) -> int:
        return self.characteristic[2]

    @cached_property
    def charpoly(self) -> "FrobCharPoly":
        return frobenius_charpoly(self)

    @cached_property
    def frobenius(self) -> OrePoly:
        return OrePoly.tau(self.ctx, self.n)

    def phi(self, a: APoly) -> OrePoly:
        return phi_of(self, a)

    def phi_T_power(self, k: int) -> OrePoly:
        while len(self._tpowers) <= k:
            self._tpowers.append(self._tpowers[-1] * self.phi_T)
        return self._tpowers[k]

    def coefficients(self):
        return (self.a1, self.a2, self.a3)

    def __eq__(self, other):
        return (isinstance(other, DrinfeldModule) and self.ctx is other.ctx
                and self.phi_T == other.phi_T)

    def __hash__(self):
        return hash(self.phi_T.coeffs)

    def __repr__(self):
        return f"DrinfeldModule(q={self.q}, n={self.n}, a=({self.a1.coords}, {self.a2.coords}, {self.a3.coords}))"

    def to_json(self):
        return {"a1": _elem_json(self.a1), "a2": _elem_json(self.a2), "a3": _elem_json(self.a3)}


def _elem_json(x: FieldElem):
    fq = x.ctx.fq
    if fq.s == 1:
        return x.ctx.fq_vector(x.code)
    return [list(fq.key(c)) for c in x.ctx.fq_vector(x.code)]


@dataclass(frozen=True)
class FrobCharPoly:
    """X^2 - c X + mu P^m, the minimal equation of the Frobenius tau^n."""

    c: APoly
    mu: int
    Pm: APoly

    @property
    def constant_term(self) -> APoly:
        return self.Pm.scale(self.mu)

    def __call__(self, x: APoly) -> APoly:
        return x * x - self.c * x + self.constant_term

    @property
    def at_one(self) -> APoly:
        """P_Phi(1) = 1 - c + mu P^m."""
        one = APoly((1,), self.c.field)
        return one - self.c + self.constant_term

    def to_json(self):
        return {"c": self.c.to_json(), "mu": self.c.field.key(self.mu)[0] if self.c.field.s == 1
                else list(self.c.field.key(self.mu))}


def phi_of(D: DrinfeldModule, a: APoly) -> OrePoly:
    """Image of a under phi, by Horner's rule in L{tau}."""
    ctx = D.ctx
    result = OrePoly(ctx, ())
    for c in reversed(a.coeffs):
        result = result * D.phi_T
        if c:
            result = result + OrePoly(ctx, (c,))
    return result


def a_characteristic(D: DrinfeldModule):
    """(P, d, m): P the minimal polynomial of a1 = gamma(T), d = deg P, m = n/d."""
    P = min_poly(D.a1)
    d = P.degree
    if D.n % d:
        raise InternalConsistencyError("deg P does not divide n", P=P, n=D.n)
    return P, d, D.n // d


def height(f: OrePoly) -> int:
    return f.height()


def recover_scalar(Q: OrePoly, D: DrinfeldModule) -> APoly:
    """The a in F_q[T] with phi_a = Q; raises NotInImage when there is none."""
    F = D.fq
    ctx = D.ctx
    coeffs = {}
    R = Q
    while not R.is_zero():
        if R.degree % 2:
            raise NotInImage(f"tau-degree {R.degree} is odd")
        k = R.degree // 2
        tk = D.phi_T_power(k)
        ck = ctx.div(R.lc, tk.lc)
        if not ctx.in_fq(ck):
            raise NotInImage(f"coefficient of T^{k} is not in F_q")
        coeffs[k] = ck
        R = R - tk.scale(ck)
    top = max(coeffs, default=-1)
    return APoly([coeffs.get(i, 0) for i in range(top + 1)], F)


def minimal_equation_solutions(D: DrinfeldModule) -> list[tuple[APoly, int]]:
    """Every (c, mu) with tau^(2n) - phi_c tau^n + mu phi_(P^m) = 0.

    S = tau^(2n) + mu phi_(P^m) must equal phi_c tau^n: its coefficients below
    tau^n vanish and shifting down by n (tau^n is central over L) leaves phi_c.
    """
    ctx, n = D.ctx, D.n
    Pm = D.P ** D.m
    phi_Pm = phi_of(D, Pm)
    top = OrePoly.tau(ctx, 2 * n)
    out = []
    for mu in D.fq.elements():
        if mu == 0:
            continue
        S = top + phi_Pm.scale(mu)
        if any(S.coefficient(j) for j in range(n)):
            continue
        try:
            c = recover_scalar(S.shift_down(n), D)
        except NotInImage:
            continue
        out.append((c, mu))
    return out


def charpoly_identity_holds(D: DrinfeldModule, c: APoly, mu: int) -> bool:
    F = D.frobenius
    lhs = F * F - phi_of(D, c) * F + phi_of(D, D.P ** D.m).scale(mu)
    return lhs.is_zero()


def frobenius_charpoly(D: DrinfeldModule) -> FrobCharPoly:
    """(c, mu) with F^2 - c F + mu P^m = 0 for the Frobenius F = tau^n.

    When F itself lies in phi(A), say F = phi_b, every X^2 - cX + mu P^m
    vanishing at b satisfies the Ore identity and several mu may succeed; the
    characteristic polynomial is then (X - b)^2.
    """
    Pm = D.P ** D.m
    try:
        b = recover_scalar(D.frobenius, D)
    except NotInImage:
        b = None
    if b is not None:
        c = b + b
        sq = b * b
        mu = sq.lc
        if sq != Pm.scale(mu):
            raise InternalConsistencyError("Frobenius in phi(A) but b^2 is not a unit times P^m",
                                           module=D, b=b)
        sols = [(c, mu)]
    else:
        sols = minimal_equation_solutions(D)
    if len(sols) != 1:
        raise InternalConsistencyError(
            f"{len(sols)} solutions of the Frobenius minimal equation", module=D, solutions=sols)
    c, mu = sols[0]
    if not charpoly_identity_holds(D, c, mu):
        raise InternalConsistencyError("Frobenius identity failed", module=D, c=c, mu=mu)
    return FrobCharPoly(c, mu, Pm)


def is_ordinary(D: DrinfeldModule) -> bool:
    """height(phi_P) == d; cross-checked against the trace criterion P does not divide c."""
    h = height(phi_of(D, D.P))
    if h not in (D.d, 2 * D.d):
        raise InternalConsistencyError(f"height {h} not in {{d, 2d}}", module=D)
    ordinary = h == D.d
    if ordinary != (not D.P.divides(D.charpoly.c)):
        raise InternalConsistencyError("height and trace disagree on ordinarity", module=D)
    return ordinary


def is_endomorphism(g: OrePoly, D: DrinfeldModule) -> bool:
    # T generates A, so commuting with phi_T is enough
    return g * D.phi_T == D.phi_T * g


def _check_rho(D: DrinfeldModule, rho: APoly):
    if rho.field is not D.fq:
        raise ParameterError("rho must be a polynomial over F_q")
    if not rho.is_monic() or not is_irreducible(rho):
        raise ParameterError(f"rho = {rho} is not a monic prime")
    if rho == D.P:
        raise ParameterError("rho must differ from the A-characteristic P")


def lemma21_quotient(D: DrinfeldModule, rho: APoly) -> OrePoly | None:
    """g with F - 1 = g * phi_rho when phi_rho right-divides F - 1, else None."""
    _check_rho(D, rho)
    F1 = D.frobenius - OrePoly(D.ctx, (1,))
    g, r = F1.right_divmod(phi_of(D, rho))
    if not r.is_zero():
        return None
    if not is_endomorphism(g, D):
        raise InternalConsistencyError("(F - 1)/rho is not an endomorphism", module=D, rho=rho)
    return g


def discriminant(cp: FrobCharPoly, D: DrinfeldModule) -> APoly:
    """c^2 - 4 mu P^m."""
    four = D.fq.from_int(4)
    return cp.c * cp.c - cp.constant_term.scale(four)


def order_in_end(D: DrinfeldModule, rho: APoly) -> bool:
    """Whether the order of discriminant Delta/rho^2 lies in End(phi).

    That order is A[(F - b)/rho] for any b with rho | c - 2b and
    rho^2 | P_Phi(b), so membership means (F - b)/rho is an endomorphism
    for some residue b modulo rho.
    """
    _check_rho(D, rho)
    cp = D.charpoly
    two = D.fq.from_int(2)
    if not (rho * rho).divides(cp.at_one):
        raise ParameterError("order_in_end requires rho^2 | P_Phi(1)")
    if not rho.divides(cp.c - APoly.constant(D.fq, two)):
        raise ParameterError("order_in_end requires rho | c - 2")
    phi_rho = phi_of(D, rho)
    for b in polys_of_degree_below(D.fq, rho.degree):
        g, r = (D.frobenius - phi_of(D, b)).right_divmod(phi_rho)
        if r.is_zero() and is_endomorphism(g, D):
            return True
    return False
