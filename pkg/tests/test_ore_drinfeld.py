import itertools

import pytest
from hypothesis import given, settings, strategies as st

from drinfeld_structure.apoly import APoly, monic_irreducibles, polys_of_degree_below
from drinfeld_structure.drinfeld import (DrinfeldModule, a_characteristic, charpoly_identity_holds,
                                        discriminant, frobenius_charpoly, height, is_endomorphism,
                                        is_ordinary, lemma21_quotient, minimal_equation_solutions,
                                        order_in_end, phi_of, recover_scalar)
from drinfeld_structure.errors import NotInImage, ParameterError
from drinfeld_structure.fields import extend, make_field
from drinfeld_structure.ore import OrePoly, ore_apply, ore_right_divmod
from drinfeld_structure.realize import iter_modules
from drinfeld_structure.structure import module_structure

F4 = make_field(2, 1, 2)
W = F4.generator.code          # omega
W1 = F4.add(W, 1)              # omega + 1 = omega^2


def tau(k=1, L=F4):
    return OrePoly.tau(L, k)


# ore --------------------------------------------------------------------------

def test_commutation_rule():
    lam = OrePoly.constant(F4, W)
    assert tau() * lam == OrePoly(F4, (0, W1))


def test_apply_examples():
    x = F4.generator
    assert tau()(x) == x * x
    assert OrePoly(F4, ())(x) == F4.elem(0)
    assert (tau(2) + tau())(x) == F4.elem(1)


def test_apply_embeds_into_extension():
    L2 = extend(F4, 2)
    x = L2.elem(13)
    f = OrePoly(F4, (W, 1, W1))
    assert ore_apply(f, x) == f.embed(L2)(x)


def test_right_divmod_examples():
    g = OrePoly(F4, (W, 1, 1))
    assert ore_right_divmod(g, g) == (OrePoly(F4, (1,)), OrePoly(F4, ()))
    f = OrePoly(F4, (1, W))
    assert ore_right_divmod(f, g) == (OrePoly(F4, ()), f)
    assert tau(2).right_divmod(tau(1)) == (tau(1), OrePoly(F4, ()))


def test_height():
    assert height(tau(2)) == 2
    assert height(OrePoly(F4, (1, 1))) == 0


L8 = make_field(2, 1, 3)
ore_polys = st.lists(st.integers(0, 7), max_size=4).map(lambda c: OrePoly(L8, c))


@settings(max_examples=80, deadline=None)
@given(ore_polys, ore_polys, ore_polys, st.integers(0, 7))
def test_ore_ring_laws(f, g, h, x):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    # evaluation is a ring map to composition of additive maps
    assert (f * g)(L8.elem(x)) == f(g(L8.elem(x)))
    if not g.is_zero():
        qq, r = f.right_divmod(g)
        assert qq * g + r == f and r.degree < g.degree


# drinfeld ---------------------------------------------------------------------

def D4(a1, a2, a3):
    return DrinfeldModule(F4, a1, a2, a3)


WORKED = D4(0, 0, 1)


def test_phi_of_examples():
    F2 = F4.fq
    assert phi_of(WORKED, APoly((1,), F2)) == OrePoly(F4, (1,))
    D = D4(W, 1, W1)
    assert phi_of(D, APoly.T(F2)) == OrePoly(F4, (W, 1, W1))
    assert phi_of(WORKED, APoly((0, 0, 1), F2)) == tau(4)


def test_a_characteristic_examples():
    F2 = F4.fq
    assert a_characteristic(D4(0, 0, 1)) == (APoly.T(F2), 1, 2)
    assert a_characteristic(D4(1, 0, 1)) == (APoly((1, 1), F2), 1, 2)
    assert a_characteristic(D4(W, 0, 1)) == (APoly((1, 1, 1), F2), 2, 1)


def test_a3_must_be_nonzero():
    with pytest.raises(ParameterError):
        D4(1, 1, 0)


def test_worked_example_charpoly():
    cp = frobenius_charpoly(WORKED)
    assert cp.c.is_zero() and cp.mu == 1
    assert minimal_equation_solutions(WORKED) == [(cp.c, 1)]
    assert not is_ordinary(WORKED)
    assert height(phi_of(WORKED, WORKED.P)) == 2


def test_realize_witness_is_ordinary():
    D = D4(W, 0, W1)
    cp = D.charpoly
    assert D.P == APoly((1, 1, 1), F4.fq)
    assert cp.c == APoly((1, 1), F4.fq)
    assert is_ordinary(D)


def test_recover_scalar_examples():
    F2 = F4.fq
    D = D4(W, 1, W1)
    assert recover_scalar(OrePoly(F4, ()), D).is_zero()
    a = APoly((0, 1, 0, 1), F2)
    assert recover_scalar(phi_of(D, a), D) == a
    with pytest.raises(NotInImage):
        recover_scalar(tau(), D)
    with pytest.raises(NotInImage):
        recover_scalar(OrePoly(F4, (W,)), D)


def test_is_endomorphism_examples():
    F2 = F4.fq
    D = D4(1, W, 1)
    assert is_endomorphism(phi_of(D, APoly((1, 0, 1), F2)), D)
    assert is_endomorphism(D.frobenius, D)
    assert not is_endomorphism(tau(), D)


def test_brute_force_charpoly_over_small_fields():
    # oracle: search every mu and every c with deg c <= n/2 for the Ore identity
    for q, n in ((2, 2), (3, 2)):
        for D in iter_modules(q, n):
            F = D.fq
            hits = [(c, mu) for mu in F.elements() if mu
                    for c in polys_of_degree_below(F, n // 2 + 1)
                    if charpoly_identity_holds(D, c, mu)]
            assert sorted(hits, key=lambda h: (h[0].sort_key(), h[1])) == sorted(
                minimal_equation_solutions(D), key=lambda h: (h[0].sort_key(), h[1]))
            assert (D.charpoly.c, D.charpoly.mu) in hits


def test_degenerate_frobenius_in_image():
    # phi_T = -tau^2 over F_9: tau^2 = phi_(-T), so X^2 - cX + mu T^2 vanishes at -T
    # for two values of mu; the characteristic polynomial is (X + T)^2
    L = make_field(3, 1, 2)
    D = DrinfeldModule(L, 0, 0, 2)
    sols = minimal_equation_solutions(D)
    assert len(sols) == 2
    cp = D.charpoly
    F = L.fq
    assert cp.c == APoly((0, 1), F) and cp.mu == 1
    assert discriminant(cp, D).is_zero()


def test_discriminant_zero_exactly_when_frobenius_in_image():
    # odd characteristic only: in characteristic 2 the discriminant is c^2
    for q, n in ((3, 2),):
        for D in iter_modules(q, n):
            try:
                recover_scalar(D.frobenius, D)
                in_image = True
            except NotInImage:
                in_image = False
            assert discriminant(D.charpoly, D).is_zero() == in_image


def test_lemma21_and_order_examples():
    F2 = F4.fq
    rho = APoly((1, 1), F2)
    assert lemma21_quotient(WORKED, rho) is not None
    assert order_in_end(WORKED, rho)
    with pytest.raises(ParameterError):
        lemma21_quotient(WORKED, WORKED.P)
    with pytest.raises(ParameterError):
        lemma21_quotient(WORKED, APoly((1, 0, 1), F2))   # not prime


def test_quotient_absent_when_rho_does_not_divide_p1():
    for D in iter_modules(2, 2):
        P1 = D.charpoly.at_one
        for rho in monic_irreducibles(D.fq, 1) + monic_irreducibles(D.fq, 2):
            if rho != D.P and not rho.divides(P1):
                assert lemma21_quotient(D, rho) is None


def test_order_false_for_cyclic_structure():
    for D in itertools.islice(iter_modules(3, 2), 0, None, 7):
        ms = module_structure(D)
        if not ms.cyclic:
            continue
        cp = D.charpoly
        two = APoly.constant(D.fq, 2)
        for rho in monic_irreducibles(D.fq, 1):
            if (rho != D.P and (rho * rho).divides(cp.at_one)
                    and rho.divides(cp.c - two)):
                assert not order_in_end(D, rho)


def test_order_in_end_preconditions():
    F2 = F4.fq
    D = D4(W, 0, W1)
    with pytest.raises(ParameterError):
        order_in_end(D, APoly((0, 1), F2))   # T^2 does not divide P_Phi(1)
