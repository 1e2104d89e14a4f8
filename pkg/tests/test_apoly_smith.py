import itertools

import pytest
from hypothesis import given, settings, strategies as st

from drinfeld_structure.apoly import (APoly, factor, gcd, is_irreducible, monic_irreducibles,
                                      monic_polys, xgcd)
from drinfeld_structure.errors import ParameterError
from drinfeld_structure.fields import make_field
from drinfeld_structure.smith import AMatrix, invariant_factors, module_invariants, smith_normal_form

F2 = make_field(2, 1, 1)
F3 = make_field(3, 1, 1)
F4 = make_field(2, 2, 1)


def P(coeffs, F=F2):
    return APoly(coeffs, F)


def test_gcd_example():
    assert gcd(P([1, 0, 1]), P([1, 1])) == P([1, 1])
    assert P([1, 1]) ** 2 == P([1, 0, 1])


def test_divmod_by_one():
    f = P([1, 0, 1, 1])
    assert divmod(f, P([1])) == (f, P([]))


def test_monic_over_f3():
    assert P([2, 2], F3).monic() == P([1, 1], F3)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        divmod(P([1, 1]), P([]))


def test_irreducible_counts():
    # number of monic irreducibles of degree d over F_q (necklace count)
    assert [len(monic_irreducibles(F2, d)) for d in (1, 2, 3, 4)] == [2, 1, 2, 3]
    assert [len(monic_irreducibles(F3, d)) for d in (1, 2, 3)] == [3, 3, 8]
    assert len(monic_irreducibles(F4, 2)) == 6


def test_irreducible_matches_brute_force():
    for f in monic_polys(F3, 3):
        roots = [x for x in range(3) if f(x) == 0]
        assert is_irreducible(f) == (not roots)


def test_factor_reconstructs():
    f = P([1, 1]) ** 3 * P([1, 1, 1]) * P([0, 1])
    parts = factor(f)
    out = P([1])
    for g, e in parts:
        assert is_irreducible(g)
        out = out * g**e
    assert out == f


def test_json_grammar():
    assert P([1, 1, 1]).to_json() == [1, 1, 1]
    g = APoly.from_json([[0, 1], [1, 0]], F4)
    assert g.to_json() == [[0, 1], [1, 0]]
    with pytest.raises(ParameterError):
        APoly.from_json([[0, 2]], F4)


polys = st.lists(st.integers(0, 2), max_size=5).map(lambda c: APoly(c, F3))


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def test_divmod_and_xgcd_properties(f, g):
    if not g.is_zero():
        q, r = divmod(f, g)
        assert q * g + r == f and r.degree < g.degree
    if not (f.is_zero() and g.is_zero()):
        d, s, t = xgcd(f, g)
        assert s * f + t * g == d and d.is_monic()
        assert d.divides(f) and d.divides(g)


# smith ------------------------------------------------------------------------

def M(rows, F=F2):
    return AMatrix([[APoly(c, F) for c in row] for row in rows], F)


def test_snf_identity():
    D, U, V = smith_normal_form(AMatrix.identity(3, F2))
    assert D == AMatrix.identity(3, F2)


def test_snf_already_normal():
    A = M([[[1, 1], []], [[], [1, 1]]])
    D, _, _ = smith_normal_form(A)
    assert D == A


def test_snf_hand_example():
    A = M([[[0, 1], [1]], [[], [0, 1]]])
    D, U, V = smith_normal_form(A)
    assert D.diagonal() == [P([1]), P([0, 0, 1])]
    assert U @ A @ V == D


def test_invariant_factors_examples():
    assert invariant_factors(AMatrix.identity(2, F2)) == []
    f1, f2 = P([1, 1]), P([1, 1]) * P([1, 1, 1])
    A = AMatrix([[f1, P([])], [P([]), f2]], F2)
    assert invariant_factors(A) == [f1, f2]
    assert invariant_factors(AMatrix.char_matrix([[1, 0], [0, 1]], F2)) == [P([1, 1]), P([1, 1])]


def test_invariant_factors_singular():
    with pytest.raises(ParameterError):
        invariant_factors(M([[[1], [1]], [[1], [1]]]))


def test_module_invariants_cyclic_companion():
    # companion matrix of T^2 + T + 1 generates a cyclic module A/(T^2+T+1)
    assert module_invariants([[0, 1], [1, 1]], F2) == [P([1, 1, 1])]


def test_bareiss_det_matches_cofactor():
    A = M([[[1, 1], [0, 1], [1]], [[1], [1, 0, 1], []], [[0, 1], [1], [1, 1]]])
    e = A.entries
    cof = P([])
    for perm in itertools.permutations(range(3)):
        term = P([1])
        for i, j in enumerate(perm):
            term = term * e[i][j]
        cof = cof + term  # signs vanish in characteristic 2
    assert A.det() == cof


entries = st.lists(st.integers(0, 2), max_size=3)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(entries, min_size=3, max_size=3), min_size=2, max_size=4))
def test_snf_properties(rows):
    A = M(rows, F3)
    D, U, V = smith_normal_form(A)
    assert U @ A @ V == D and D.is_diagonal()
    assert U.det().degree == 0 and V.det().degree == 0
    diag = [d for d in D.diagonal() if not d.is_zero()]
    assert all(d.is_monic() for d in diag)
    assert all(a.divides(b) for a, b in zip(diag, diag[1:]))
