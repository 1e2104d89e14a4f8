"""a-division points phi[a] over extensions of L and the Frobenius matrix on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import config
from .apoly import APoly, gcd, polys_of_degree_below, prime_divisors
from .drinfeld import DrinfeldModule, phi_of
from .errors import CapExceeded, InternalConsistencyError, ParameterError
from .fields import FieldElem, extend
from .linalg import kernel_basis, mat_vec, rref
from .ore import OrePoly
from .smith import AMatrix, module_invariants, smith_normal_form


class TorsionModule:
    """phi[a] inside L_k, with the F_q-linear T-action and Frobenius in kernel coordinates.

    A point's kernel coordinates are its F_q coordinates at the free columns of
    the eliminated phi_a matrix; the kernel basis is the identity there.
    """

    def __init__(self, D, a, ambient, k, kernel, free):
        self.module = D
        self.a = a
        self.ambient = ambient
        self.k = k
        self._kernel = kernel              # list of L_k codes
        self._free = free                  # free column indices
        F = D.fq
        self.rank = len(kernel)
        # T and Frobenius as matrices on kernel coordinates (columns = images)
        phiT = D.phi_T.embed(ambient)
        self.t_action = self._matrix_of(phiT.apply_code)
        self.frob_action = self._matrix_of(lambda x: ambient.frob(x, D.n))
        size = F.size**self.rank
        vecs = itertools.product(F.elements(), repeat=self.rank)
        self._point_codes = sorted((self.code_of(list(v)) for v in vecs), key=ambient.key)
        self.basis = self._choose_basis() if self.rank else (0, 0)
        if len(self._point_codes) != size:
            raise InternalConsistencyError("torsion point count mismatch")

    def _matrix_of(self, f):
        cols = [self.coords(f(x)) for x in self._kernel]
        r = self.rank
        return [[cols[j][i] for j in range(r)] for i in range(r)]

    def coords(self, code: int) -> list[int]:
        v = self.ambient.fq_vector(code)
        return [v[c] for c in self._free]

    def code_of(self, vec) -> int:
        F = self.module.fq
        ambient = self.ambient
        acc = [0] * ambient.degree_over_fq
        for c, kcode in zip(vec, self._kernel):
            if c:
                kv = ambient.fq_vector(kcode)
                acc = [F.add(x, F.mul(c, y)) for x, y in zip(acc, kv)]
        return ambient.from_fq_vector(acc)

    @property
    def points(self) -> list[FieldElem]:
        return [FieldElem(self.ambient, c) for c in self._point_codes]

    def __len__(self):
        return len(self._point_codes)

    def act(self, b: APoly, vec):
        """Kernel coordinates of phi_b(x) for x with coordinates vec (Horner in the T-action)."""
        F = self.module.fq
        acc = [0] * self.rank
        for c in reversed(b.coeffs):
            acc = mat_vec(self.t_action, acc, F)
            if c:
                acc = [F.add(x, F.mul(c, y)) for x, y in zip(acc, vec)]
        return acc

    def annihilated_by(self, b: APoly, vec) -> bool:
        return not any(self.act(b, vec))

    def span(self, vectors) -> set:
        residues = list(polys_of_degree_below(self.module.fq, self.a.degree))
        F = self.module.fq
        out = set()
        images = [[self.act(r, v) for r in residues] for v in vectors]
        for combo in itertools.product(*images):
            acc = [0] * self.rank
            for w in combo:
                acc = [F.add(x, y) for x, y in zip(acc, w)]
            out.add(tuple(acc))
        return out

    def _choose_basis(self):
        a = self.a
        maximal = [a // r for r in prime_divisors(a)]
        e1 = None
        for code in self._point_codes:
            v = self.coords(code)
            if all(not self.annihilated_by(b, v) for b in maximal):
                e1 = code
                break
        if e1 is None:
            raise InternalConsistencyError("no point of full order in phi[a]", a=a)
        v1 = self.coords(e1)
        total = len(self._point_codes)
        for code in self._point_codes:
            if len(self.span([v1, self.coords(code)])) == total:
                return (e1, code)
        raise InternalConsistencyError("phi[a] is not free of rank 2 over A/a", a=a)


def _check_modulus(D: DrinfeldModule, a: APoly):
    if a.field is not D.fq:
        raise ParameterError("a must be a polynomial over F_q")
    if a.is_zero() or not a.is_monic():
        raise ParameterError("a must be monic")
    if gcd(a, D.P).degree > 0:
        raise ParameterError("a must be coprime to the A-characteristic P")


def splitting_degree(D: DrinfeldModule, a: APoly, kmax: int) -> int | None:
    """Least k <= kmax with phi[a] inside L_k, i.e. phi_a right-dividing tau^(nk) - 1."""
    phi_a = phi_of(D, a)
    one = OrePoly(D.ctx, (1,))
    for k in range(1, kmax + 1):
        _, r = (OrePoly.tau(D.ctx, D.n * k) - one).right_divmod(phi_a)
        if r.is_zero():
            return k
    return None


def torsion_points(D: DrinfeldModule, a: APoly, *, kmax: int | None = None,
                   point_cap: int | None = None) -> TorsionModule:
    """All of phi[a], found in the first extension L_k that contains it."""
    _check_modulus(D, a)
    kmax = config.KMAX if kmax is None else kmax
    point_cap = config.POINT_CAP if point_cap is None else point_cap
    F = D.fq
    if F.size ** (2 * a.degree) > point_cap:
        raise CapExceeded(f"|phi[a]| = {F.size}^{2 * a.degree} exceeds the point cap {point_cap}")
    if a.degree == 0:
        return TorsionModule(D, a, D.ctx, 1, [], [])
    k = splitting_degree(D, a, kmax)
    if k is None:
        raise CapExceeded(f"phi[{a}] not found in L_k for k <= {kmax}")
    ambient = extend(D.ctx, k)
    phi_a = phi_of(D, a).embed(ambient)
    N = ambient.degree_over_fq
    q = F.size
    cols = [ambient.fq_vector(phi_a.apply_code(q**j)) for j in range(N)]
    M = [[cols[j][i] for j in range(N)] for i in range(N)]
    _, pivots = rref(M, F)
    free = [c for c in range(N) if c not in pivots]
    if len(free) != 2 * a.degree:
        raise InternalConsistencyError(
            f"phi[a] has F_q-dimension {len(free)} in L_{k}, expected {2 * a.degree}", a=a, k=k)
    kernel = [ambient.from_fq_vector(v) for v in kernel_basis(M, F, N)]
    return TorsionModule(D, a, ambient, k, kernel, free)


@dataclass
class FrobMatrix:
    """Matrix of F = tau^n on phi[a] in the basis (e1, e2); column j is F(e_j)."""

    a: APoly
    entries: tuple
    torsion: TorsionModule = field(repr=False)

    @property
    def trace(self) -> APoly:
        return (self.entries[0][0] + self.entries[1][1]) % self.a

    @property
    def det(self) -> APoly:
        (w, x), (y, z) = self.entries
        return (w * z - x * y) % self.a

    def minus_identity(self):
        (w, x), (y, z) = self.entries
        return ((w - 1) % self.a, x), (y, (z - 1) % self.a)

    def fixed_module_type(self) -> list[APoly]:
        """Invariant factors of ker(F - 1) on phi[a] as an A-module."""
        tm = self.torsion
        F = tm.module.fq
        r = tm.rank
        if r == 0:
            return []
        fm = [[F.sub(tm.frob_action[i][j], 1 if i == j else 0) for j in range(r)] for i in range(r)]
        W = kernel_basis(fm, F, r)
        if not W:
            return []
        # T preserves ker(F - 1); express T on the basis W
        T_on_W = []
        for w in W:
            image = mat_vec(tm.t_action, w, F)
            T_on_W.append(_solve_in_span(W, image, F))
        k = len(W)
        action = [[T_on_W[j][i] for j in range(k)] for i in range(k)]
        return module_invariants(action, F)

    def to_json(self):
        return {"a": self.a.to_json(),
                "entries": [[x.to_json() for x in row] for row in self.entries],
                "trace": self.trace.to_json(), "det": self.det.to_json(),
                "k": self.torsion.k, "points": len(self.torsion)}


def _solve_in_span(W, target, F):
    """Coefficients expressing target in the independent vectors W."""
    k = len(W)
    aug = [[W[j][i] for j in range(k)] + [target[i]] for i in range(len(target))]
    R, pivots = rref(aug, F)
    if k in pivots:
        raise InternalConsistencyError("vector not in span")
    sol = [0] * k
    for i, pc in enumerate(pivots):
        sol[pc] = R[i][k]
    return sol


def frobenius_matrix(D: DrinfeldModule, a: APoly, *, kmax=None, point_cap=None,
                     torsion: TorsionModule | None = None) -> FrobMatrix:
    """M_F over A/a, found by exhaustive search over (A/a)^2 coordinates."""
    tm = torsion if torsion is not None else torsion_points(D, a, kmax=kmax, point_cap=point_cap)
    F = D.fq
    zero = APoly((), F)
    if a.degree == 0:
        return FrobMatrix(a, ((zero, zero), (zero, zero)), tm)
    residues = list(polys_of_degree_below(F, a.degree))
    v1, v2 = tm.coords(tm.basis[0]), tm.coords(tm.basis[1])
    table = {}
    img1 = [tm.act(r, v1) for r in residues]
    img2 = [tm.act(r, v2) for r in residues]
    for r1, w1 in zip(residues, img1):
        for r2, w2 in zip(residues, img2):
            key = tuple(F.add(x, y) for x, y in zip(w1, w2))
            table[key] = (r1, r2)
    cols = []
    for v in (v1, v2):
        image = tuple(mat_vec(tm.frob_action, v, F))
        if image not in table:
            raise InternalConsistencyError("Frobenius image outside the span of the basis")
        cols.append(table[image])
    entries = ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))
    fm = FrobMatrix(a, entries, tm)
    cp = D.charpoly
    if fm.trace != cp.c % a or fm.det != cp.constant_term % a:
        raise InternalConsistencyError("Frobenius matrix congruences failed", module=D, a=a,
                                       trace=fm.trace, det=fm.det)
    return fm


# conjecture survey -------------------------------------------------------------

def _coker_type(mat, modulus: APoly):
    """Invariant factors of the cokernel of a 2x2 matrix acting on (A/modulus)^2."""
    F = modulus.field
    zero = APoly((), F)
    rows = [[mat[0][0], mat[0][1], modulus, zero], [mat[1][0], mat[1][1], zero, modulus]]
    D, _, _ = smith_normal_form(AMatrix(rows, F))
    return tuple(tuple(d.coeffs) for d in D.diagonal() if d.degree > 0)


def class_invariants(mat, modulus: APoly):
    """(trace, det, coker(M - 1)) -- conjugation invariants of M modulo modulus."""
    (w, x), (y, z) = mat
    tr = (w + z) % modulus
    det = (w * z - x * y) % modulus
    mi = (((w - 1) % modulus, x), (y, (z - 1) % modulus))
    return (tuple(tr.coeffs), tuple(det.coeffs), _coker_type(mi, modulus))


def _invariants_json(inv, F):
    tr, det, coker = inv
    return {"trace": APoly(tr, F).to_json(), "det": APoly(det, F).to_json(),
            "coker_M_minus_1": [APoly(c, F).to_json() for c in coker]}


@dataclass
class CoverageReport:
    q: int
    n: int
    groups: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)
    readings: dict = field(default_factory=dict)

    def to_json(self):
        return {"q": self.q, "n": self.n, "groups": self.groups, "skipped": self.skipped,
                "readings": self.readings, "discrepancies": self.discrepancies}


def conjecture_survey(q: int, n: int, *, records=None, kmax=None, point_cap=None,
                      mapper=map) -> CoverageReport:
    """Compare realized Frobenius matrices with the matrices the conjecture allows.

    Works modulo chi' (the part of chi_Phi prime to P).  Records both readings
    of the divisibility hypothesis and of the determinant condition, and
    evaluates the closing matrix [[c - 1, i1], [i2, -1]] for each structure.
    """
    from .realize import enumerate_all

    if records is None:
        records = [r.record for r in enumerate_all(q, n, mapper=mapper)]
    report = CoverageReport(q, n)
    groups = {}
    p_ndiv_c = c_ndiv_P = 0
    for rec in records:
        D = rec.module
        if not rec.ordinary:
            continue
        p_ndiv_c += not D.P.divides(rec.c)
        c_ndiv_P += not rec.c.divides(D.P)
        chi_p = rec.chi
        while D.P.divides(chi_p):
            chi_p = chi_p // D.P
        key = (tuple(D.P.coeffs), D.m, tuple(rec.c.coeffs), rec.mu)
        g = groups.setdefault(key, {"rec": rec, "chi_prime": chi_p, "modules": 0,
                                    "realized": {}, "structures": {}})
        g["modules"] += 1
        skey = (tuple(rec.i1.coeffs), tuple(rec.i2.coeffs))
        g["structures"][skey] = g["structures"].get(skey, 0) + 1
        if chi_p.degree < 1:
            continue
        try:
            fm = frobenius_matrix(D, chi_p, kmax=kmax, point_cap=point_cap)
        except CapExceeded as exc:
            report.skipped.append({"module": D.to_json(), "reason": str(exc)})
            continue
        inv = class_invariants(fm.entries, chi_p)
        g["realized"][inv] = g["realized"].get(inv, 0) + 1

    F = None
    trace_c = trace_c2 = det_p = det_mu = det_neg = total_closing = 0
    obs_det_mu = obs_det_plain = obs_total = 0
    for key in sorted(groups, key=lambda k: (len(k[0]), k)):
        g = groups[key]
        rec = g["rec"]
        D = rec.module
        F = D.fq
        chi_p = g["chi_prime"]
        Pm = D.P ** D.m
        mu_Pm = Pm.scale(rec.mu)
        entry = {"P": D.P.to_json(), "m": D.m, "c": rec.c.to_json(),
                 "mu": rec.mu, "chi": rec.chi.to_json(), "chi_prime": chi_p.to_json(),
                 "modules": g["modules"]}
        if chi_p.degree >= 1:
            targets_mu, targets_ideal = _targets(rec.c, mu_Pm, Pm, chi_p)
            realized = set(g["realized"])
            entry["realized_classes"] = [
                {**_invariants_json(inv, F), "count": g["realized"][inv]}
                for inv in sorted(realized)]
            entry["target_classes_mu_det"] = len(targets_mu)
            entry["target_classes_ideal_det"] = len(targets_ideal)
            entry["coverage_mu_det"] = _frac(len(realized & targets_mu), len(targets_mu))
            entry["coverage_ideal_det"] = _frac(len(realized & targets_ideal), len(targets_ideal))
            entry["unrealized_targets_mu_det"] = [_invariants_json(t, F)
                                                  for t in sorted(targets_mu - realized)]
            for inv, cnt in g["realized"].items():
                obs_total += cnt
                det = APoly(inv[1], F)
                obs_det_mu += cnt * (det == mu_Pm % chi_p)
                obs_det_plain += cnt * (det == Pm % chi_p)
        closing = []
        for (i1c, i2c), cnt in sorted(g["structures"].items()):
            i1, i2 = APoly(i1c, F), APoly(i2c, F)
            chi = rec.chi
            one = APoly((1,), F)
            tr = (rec.c - one - one) % chi
            det = ((rec.c - one) * (-one) - i1 * i2) % chi
            row = {"i1": i1.to_json(), "i2": i2.to_json(), "modules": cnt,
                   "trace": tr.to_json(), "det": det.to_json(),
                   "trace_equals_c": tr == rec.c % chi,
                   "trace_equals_c_minus_2": tr == (rec.c - one - one) % chi,
                   "det_equals_Pm": det == Pm % chi,
                   "det_equals_mu_Pm": det == mu_Pm % chi,
                   "det_equals_minus_mu_Pm": det == (-mu_Pm) % chi}
            closing.append(row)
            total_closing += 1
            trace_c += row["trace_equals_c"]
            trace_c2 += row["trace_equals_c_minus_2"]
            det_p += row["det_equals_Pm"]
            det_mu += row["det_equals_mu_Pm"]
            det_neg += row["det_equals_minus_mu_Pm"]
        entry["closing_matrix"] = closing
        report.groups.append(entry)

    report.readings = {"ordinary_modules": sum(g["modules"] for g in groups.values()),
                       "P_does_not_divide_c": p_ndiv_c, "c_does_not_divide_P": c_ndiv_P}
    report.discrepancies = [
        {"item": "closing_matrix_trace", "value": "c - 2", "conjecture_requires": "c",
         "equal_to_c_mod_chi": trace_c, "equal_to_c_minus_2_mod_chi": trace_c2,
         "structures": total_closing},
        {"item": "closing_matrix_det", "value": "-mu * P^m (mod chi)",
         "conjecture_requires": "P^m",
         "equal_to_P_m": det_p, "equal_to_mu_P_m": det_mu, "equal_to_minus_mu_P_m": det_neg,
         "structures": total_closing},
        {"item": "divisibility_hypothesis", "stated": "c does not divide P",
         "ordinarity": "P does not divide c", **report.readings},
        {"item": "observed_frobenius_det", "equal_to_mu_P_m_mod_chi_prime": obs_det_mu,
         "equal_to_P_m_mod_chi_prime": obs_det_plain, "matrices": obs_total},
    ]
    return report


def _frac(a, b):
    return None if b == 0 else round(a / b, 6)


def _targets(c: APoly, mu_Pm: APoly, Pm: APoly, modulus: APoly):
    """Class invariants of every M mod modulus with Tr M = c and det M = mu P^m (resp. any
    generator of the ideal (P^m), which is the unit ideal since P is prime to modulus)."""
    F = modulus.field
    residues = list(polys_of_degree_below(F, modulus.degree))
    c_r = c % modulus
    det_mu = mu_Pm % modulus
    ideal_gen = gcd(Pm, modulus)
    mu_set, ideal_set = set(), set()
    for w in residues:
        z = (c_r - w) % modulus
        wz = w * z
        for x in residues:
            for y in residues:
                det = (wz - x * y) % modulus
                mat = ((w, x), (y, z))
                if det == det_mu:
                    mu_set.add(class_invariants(mat, modulus))
                if gcd(det, modulus) == ideal_gen:
                    ideal_set.add(class_invariants(mat, modulus))
    return mu_set, ideal_set
