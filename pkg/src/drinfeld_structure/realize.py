"""Exhaustive enumeration of rank-2 modules and the search realizing prescribed L^phi."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from . import config
from .apoly import APoly, monic_irreducibles, monic_polys
from .drinfeld import DrinfeldModule, is_ordinary
from .errors import CapExceeded, ParameterError
from .fields import FieldCtx, make_field, prime_power
from .structure import VerificationRecord, euler_char, module_structure, verify_paper_predicates


@dataclass
class EnumerationRecord:
    index: int
    record: VerificationRecord

    @property
    def module(self) -> DrinfeldModule:
        return self.record.module

    def to_json(self):
        return {"index": self.index, **self.record.to_json()}


def field_for(q: int, n: int) -> FieldCtx:
    p, s = prime_power(q)
    return make_field(p, s, n)


def _check_enum_size(L: FieldCtx):
    total = L.size * L.size * (L.size - 1)
    if total > config.ENUM_CAP:
        raise CapExceeded(f"{total} modules exceed the enumeration cap {config.ENUM_CAP}")
    return total


def _analyze_block(args):
    q, n, a1 = args
    L = field_for(q, n)
    out = []
    elems = L.elements()
    for a2 in elems:
        for a3 in elems:
            if a3:
                out.append(verify_paper_predicates(DrinfeldModule(L, a1, a2, a3)))
    return out


def iter_modules(q: int, n: int):
    """Every (a1, a2, a3) in L x L x L*, a1 slowest, each coordinate in element order."""
    L = field_for(q, n)
    _check_enum_size(L)
    elems = L.elements()
    for a1 in elems:
        for a2 in elems:
            for a3 in elems:
                if a3:
                    yield DrinfeldModule(L, a1, a2, a3)


def enumerate_all(q: int, n: int, visitor=None, *, mapper=map):
    """Yield an EnumerationRecord for every rank-2 module over F_{q^n}, in index order.

    The a1-blocks are analyzed through ``mapper`` (``map`` by default; a
    process pool's ``map`` fans them out), and results keep index order, so
    the stream is identical for any worker count.
    """
    L = field_for(q, n)
    _check_enum_size(L)
    blocks = [(q, n, a1) for a1 in L.elements()]
    index = 0
    for block in mapper(_analyze_block, blocks):
        for rec in block:
            er = EnumerationRecord(index, rec)
            index += 1
            if visitor is not None:
                visitor(er)
            yield er


# realization --------------------------------------------------------------------

@dataclass(frozen=True)
class RealizationTarget:
    """M = A/(i1) + A/(i2) with i2 | i1; n = deg(i1 i2)."""

    q: int
    i1: APoly
    i2: APoly

    def __post_init__(self):
        p, s = prime_power(self.q)
        for f in (self.i1, self.i2):
            if f.field.q != self.q or f.field.flat_degree != s:
                raise ParameterError("target polynomials must lie in F_q[T]")
            if not f.is_monic():
                raise ParameterError(f"{f} is not monic")
        if not self.i2.divides(self.i1):
            raise ParameterError(f"i2 = {self.i2} does not divide i1 = {self.i1}")
        if self.n < 1:
            raise ParameterError("target module is trivial")

    @property
    def n(self) -> int:
        return self.i1.degree + self.i2.degree

    @property
    def chi(self) -> APoly:
        return self.i1 * self.i2

    def factors(self) -> tuple:
        return tuple(f for f in (self.i2, self.i1) if f.degree > 0)

    def to_json(self):
        return {"q": self.q, "i1": self.i1.to_json(), "i2": self.i2.to_json()}


def admissible_data(target: RealizationTarget, *, require_ordinary: bool = False,
                    monic_c: bool = True) -> list[dict]:
    """Every (P, m, c, mu) satisfying the theorem's hypotheses for this target.

    c is recovered from 1 - c + mu P^m = lam * i1 i2 for each unit lam, and must
    satisfy deg c <= n/2 and i2 | c - 2 (and be monic or zero when ``monic_c``).
    """
    F = target.i1.field
    n = target.n
    chi = target.chi
    one = APoly((1,), F)
    two = one + one
    units = [u for u in F.elements() if u]
    out = []
    for d in range(1, n + 1):
        if n % d:
            continue
        m = n // d
        for P in monic_irreducibles(F, d):
            Pm = P**m
            for mu in units:
                for lam in units:
                    c = one + Pm.scale(mu) - chi.scale(lam)
                    if 2 * c.degree > n:
                        continue
                    if monic_c and not (c.is_zero() or c.is_monic()):
                        continue
                    if not target.i2.divides(c - two):
                        continue
                    if require_ordinary and P.divides(c):
                        continue
                    out.append({"P": P, "m": m, "c": c, "mu": mu})
    return out


@dataclass
class Exhausted:
    target: RealizationTarget
    examined: int
    admissible: bool
    log: dict = field(default_factory=dict)

    def to_json(self):
        return {"status": "exhausted", "target": self.target.to_json(), "examined": self.examined,
                "admissible": self.admissible, "log": self.log}


def realize(target: RealizationTarget):
    """First ordinary module (in enumeration order) with L^phi = target, else Exhausted."""
    chi = target.chi.monic()
    want = target.factors()
    log = {"euler_char_rejects": 0, "supersingular": 0, "structure_mismatch": 0}
    examined = 0
    for D in iter_modules(target.q, target.n):
        examined += 1
        if euler_char(D) != chi:
            log["euler_char_rejects"] += 1
            continue
        if not is_ordinary(D):
            log["supersingular"] += 1
            continue
        if module_structure(D).factors != want:
            log["structure_mismatch"] += 1
            continue
        return D
    return Exhausted(target, examined, bool(admissible_data(target)), log)


def all_targets(q: int, n: int):
    """Every (i1, i2) monic with i2 | i1 and deg(i1 i2) = n."""
    F = field_for(q, 1)
    for d2 in range(0, n // 2 + 1):
        for i2 in monic_polys(F, d2):
            for h in monic_polys(F, n - 2 * d2):
                yield RealizationTarget(q, i2 * h, i2)


@dataclass
class CensusReport:
    q: int
    n: int
    total: int
    classes: list
    unrealized_admissible: list
    inadmissible_targets: list = field(default_factory=list)
    records: list | None = None

    def to_json(self, full=False):
        out = {"q": self.q, "n": self.n, "total": self.total, "classes": self.classes,
               "unrealized_admissible": self.unrealized_admissible,
               "inadmissible_targets": self.inadmissible_targets}
        if full and self.records is not None:
            out["records"] = [r.to_json() for r in self.records]
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i1", "i2", "ordinary", "count"])
        for row in self.classes:
            w.writerow([row["i1"], row["i2"], row["ordinary"], row["count"]])
        return buf.getvalue()


def census(q: int, n: int, *, records=None, mapper=map) -> CensusReport:
    """Count modules per (i1, i2, ordinary) class and list admissible targets nobody realizes.

    Targets for which no admissible (P, m, c, mu) exists are flagged separately.
    """
    if records is None:
        records = list(enumerate_all(q, n, mapper=mapper))
    counts = {}
    total = 0
    realized_ordinary = set()
    for er in records:
        rec = er.record if isinstance(er, EnumerationRecord) else er
        total += 1
        key = (tuple(rec.i1.coeffs), tuple(rec.i2.coeffs), bool(rec.ordinary))
        counts[key] = counts.get(key, 0) + 1
        if rec.ordinary:
            realized_ordinary.add(key[:2])
    F = field_for(q, 1)
    classes = []
    for key in sorted(counts, key=lambda k: (APoly(k[0], F).sort_key(), APoly(k[1], F).sort_key(), k[2])):
        classes.append({"i1": APoly(key[0], F).to_json(), "i2": APoly(key[1], F).to_json(),
                        "ordinary": key[2], "count": counts[key]})
    unrealized, inadmissible = [], []
    for t in all_targets(q, n):
        data = admissible_data(t)
        if not data:
            inadmissible.append({**t.to_json(),
                                 "realized": (t.i1.coeffs, t.i2.coeffs) in realized_ordinary})
        if (t.i1.coeffs, t.i2.coeffs) in realized_ordinary:
            continue
        if data:
            unrealized.append({**t.to_json(), "admissible_via": [
                {"P": x["P"].to_json(), "m": x["m"], "c": x["c"].to_json(), "mu": x["mu"]}
                for x in data]})
    return CensusReport(q, n, total, classes, unrealized, inadmissible,
                        records=[er for er in records if isinstance(er, EnumerationRecord)] or None)
