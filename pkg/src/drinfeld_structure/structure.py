"""The finite A-module L^phi: invariant factors, Euler-Poincare characteristic, checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .apoly import APoly, gcd, prime_divisors
from .drinfeld import (DrinfeldModule, height, is_ordinary, lemma21_quotient, order_in_end,
                       phi_of, minimal_equation_solutions)
from .errors import InternalConsistencyError
from .smith import AMatrix, invariant_factors


def phiT_matrix(D: DrinfeldModule):
    """Matrix over F_q of x -> a1 x + a2 x^q + a3 x^(q^2) in the basis of codes q**j."""
    ctx = D.ctx
    n, q = D.n, D.q
    cols = [ctx.fq_vector(D.phi_T.apply_code(q**j)) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class ModuleStructure:
    """L^phi = A/(i1) + A/(i2) with i2 | i1; ``factors`` ascending, trivial ones dropped."""

    factors: tuple

    @property
    def i1(self) -> APoly:
        return self.factors[-1]

    @property
    def i2(self) -> APoly:
        if len(self.factors) >= 2:
            return self.factors[-2]
        return APoly((1,), self.factors[-1].field)

    @property
    def cyclic(self) -> bool:
        return len(self.factors) <= 1

    def product(self) -> APoly:
        out = APoly((1,), self.factors[0].field)
        for f in self.factors:
            out = out * f
        return out

    def to_json(self):
        return {"factors": [f.to_json() for f in self.factors],
                "i1": self.i1.to_json(), "i2": self.i2.to_json()}


class StructureError(InternalConsistencyError):
    """More than two invariant factors: L^phi would not have the rank-2 shape."""


def module_structure(D: DrinfeldModule) -> ModuleStructure:
    factors = invariant_factors(AMatrix.char_matrix(phiT_matrix(D), D.fq))
    if len(factors) > 2:
        raise StructureError(f"{len(factors)} invariant factors", module=D, factors=factors)
    if not factors:
        raise StructureError("no nontrivial invariant factor", module=D)
    return ModuleStructure(tuple(factors))


def euler_char(D: DrinfeldModule) -> APoly:
    """monic(det(T I - phi_T)), the characteristic polynomial of the T-action on L."""
    return AMatrix.char_matrix(phiT_matrix(D), D.fq).det().monic()


@dataclass
class RhoCheck:
    rho: APoly
    divides_i2: bool
    lemma: bool
    rho2_divides: bool
    divides_c_minus_2: bool
    order_in_end: bool | None

    @property
    def consistent(self) -> bool:
        third = self.rho2_divides and self.divides_c_minus_2 and bool(self.order_in_end)
        return self.divides_i2 == self.lemma == third

    def to_json(self):
        return {"rho": self.rho.to_json(), "divides_i2": self.divides_i2, "lemma": self.lemma,
                "rho2_divides_P1": self.rho2_divides, "divides_c_minus_2": self.divides_c_minus_2,
                "order_in_end": self.order_in_end, "consistent": self.consistent}


PREDICATES = ("prop21", "prop22", "gcd_sq", "hasse", "heights", "cor21", "rho_equivalence")


@dataclass
class VerificationRecord:
    module: DrinfeldModule
    P: APoly | None = None
    d: int | None = None
    m: int | None = None
    c: APoly | None = None
    mu: int | None = None
    P1: APoly | None = None
    chi: APoly | None = None
    factors: tuple = ()
    height: int | None = None
    ordinary: bool | None = None
    charpoly_solutions: int | None = None
    rho_checks: list = field(default_factory=list)
    predicates: dict = field(default_factory=dict)
    errors: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.errors and all(self.predicates.get(k) for k in PREDICATES)

    @property
    def i1(self) -> APoly:
        return self.factors[-1]

    @property
    def i2(self) -> APoly:
        return self.factors[-2] if len(self.factors) >= 2 else APoly((1,), self.module.fq)

    @property
    def cyclic(self) -> bool:
        return len(self.factors) <= 1

    def to_json(self):
        D = self.module
        fq = D.fq
        out = {
            "q": D.q, "n": D.n, **D.to_json(),
            "P": _j(self.P), "d": self.d, "m": self.m, "c": _j(self.c),
            "mu": None if self.mu is None else (self.mu if fq.s == 1 else list(fq.key(self.mu))),
            "P_phi_1": _j(self.P1), "chi": _j(self.chi),
            "factors": [f.to_json() for f in self.factors],
            "i1": _j(self.i1) if self.factors else None,
            "i2": _j(self.i2) if self.factors else None,
            "cyclic": self.cyclic if self.factors else None,
            "height": self.height, "ordinary": self.ordinary,
            "charpoly_solutions": self.charpoly_solutions,
            "rho_checks": [r.to_json() for r in self.rho_checks],
            "predicates": dict(self.predicates), "passed": self.passed,
        }
        if self.errors:
            out["errors"] = list(self.errors)
        return out


def _j(x):
    return None if x is None else x.to_json()


def rho_check(D: DrinfeldModule, rho: APoly, i2: APoly) -> RhoCheck:
    cp = D.charpoly
    two = APoly.constant(D.fq, D.fq.from_int(2))
    rho2 = (rho * rho).divides(cp.at_one)
    rc2 = rho.divides(cp.c - two)
    return RhoCheck(
        rho=rho,
        divides_i2=rho.divides(i2),
        lemma=lemma21_quotient(D, rho) is not None,
        rho2_divides=rho2,
        divides_c_minus_2=rc2,
        order_in_end=order_in_end(D, rho) if rho2 and rc2 else None,
    )


def verify_paper_predicates(D: DrinfeldModule) -> VerificationRecord:
    """Analyze D and evaluate every structural predicate; failures are data, not exceptions."""
    rec = VerificationRecord(module=D)
    try:
        rec.P, rec.d, rec.m = D.characteristic
        rec.charpoly_solutions = len(minimal_equation_solutions(D))
        cp = D.charpoly
        rec.c, rec.mu = cp.c, cp.mu
        rec.P1 = cp.at_one
        rec.chi = euler_char(D)
        rec.height = height(phi_of(D, D.P))
        rec.ordinary = is_ordinary(D)
    except InternalConsistencyError as exc:
        rec.errors.append(f"{type(exc).__name__}: {exc}")
        return rec
    pred = rec.predicates
    pred["hasse"] = 2 * cp.c.degree <= D.n
    pred["heights"] = rec.height in (D.d, 2 * D.d)
    try:
        ms = module_structure(D)
    except InternalConsistencyError as exc:
        rec.errors.append(f"{type(exc).__name__}: {exc}")
        pred["prop21"] = False
        return rec
    rec.factors = ms.factors
    i1, i2 = ms.i1, ms.i2
    P1 = rec.P1
    pred["prop21"] = ms.product().monic() == P1.monic() == rec.chi
    two = APoly.constant(D.fq, D.fq.from_int(2))
    pred["prop22"] = ms.cyclic or (i2.divides(i1) and i2.divides(cp.c - two))
    g = gcd(i1, i2)
    pred["gcd_sq"] = (g * g).divides(P1)
    for rho in prime_divisors(rec.chi):
        if rho == D.P:
            continue
        rec.rho_checks.append(rho_check(D, rho, i2))
    pred["cor21"] = not any(r.lemma for r in rec.rho_checks) or not ms.cyclic
    pred["rho_equivalence"] = all(r.consistent for r in rec.rho_checks)
    return rec
