import itertools
import pickle

import pytest
from hypothesis import given, settings, strategies as st

from drinfeld_structure.apoly import APoly
from drinfeld_structure.errors import CapExceeded, ParameterError
from drinfeld_structure.fields import (FieldElem, embed, extend, frob_power, is_prime, make_field,
                                       min_poly, prime_power)
from drinfeld_structure.linalg import identity, kernel_basis, linear_map_matrix


def _has_root(coeffs, p):
    return any(sum(c * x**i for i, c in enumerate(coeffs)) % p == 0 for x in range(p))


def _brute_irreducible_quadratics(p):
    # monic quadratics are irreducible iff they have no root
    return [(c0, c1, 1) for c1 in range(p) for c0 in range(p) if not _has_root((c0, c1, 1), p)]


def _lex_key(coeffs):
    return tuple(coeffs)


def test_prime_field():
    F2 = make_field(2, 1, 1)
    assert F2.size == 2 and F2.chain == []
    assert F2.add(1, 1) == 0


def test_f4_defined_by_only_irreducible_quadratic():
    F4 = make_field(2, 1, 2)
    assert _brute_irreducible_quadratics(2) == [(1, 1, 1)]
    assert F4.chain == [(1, 1, 1)]


def test_f9_uses_lex_smallest_irreducible_quadratic():
    irr = _brute_irreducible_quadratics(3)
    assert len(irr) == 3
    assert make_field(3, 1, 2).chain == [min(irr, key=_lex_key)]


def test_field_towers():
    F16 = make_field(2, 1, 4)
    assert F16.size == 16 and F16.q == 2
    F16_over_F4 = make_field(2, 2, 2)
    assert F16_over_F4.q == 4 and F16_over_F4.degree_over_fq == 2
    assert F16_over_F4.fq.size == 4


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(ParameterError):
        prime_power(12)
    assert is_prime(13) and not is_prime(1)


def test_field_cap():
    with pytest.raises(CapExceeded):
        make_field(2, 1, 30)


def test_min_poly_examples():
    F4 = make_field(2, 1, 2)
    F2 = F4.fq
    assert min_poly(F4.elem(0)) == APoly.T(F2)
    assert min_poly(F4.elem(1)) == APoly((1, 1), F2)
    assert min_poly(F4.generator) == APoly((1, 1, 1), F2)


def test_frob_power_examples():
    F4 = make_field(2, 1, 2)
    w = F4.generator
    assert frob_power(w, 0) == w
    assert frob_power(w, 1) == w + 1
    for x in F4.elements():
        assert frob_power(F4.elem(x), 2) == F4.elem(x)


def test_linear_map_matrix_examples():
    F4 = make_field(2, 1, 2)
    assert linear_map_matrix(lambda x: x, F4) == identity(2)
    assert linear_map_matrix(lambda x: x * x, F4) == [[1, 1], [0, 1]]
    assert linear_map_matrix(lambda x: x * 0, F4) == [[0, 0], [0, 0]]
    with pytest.raises(ParameterError):
        linear_map_matrix(lambda x: x * x * x, F4)


def test_kernel_basis_examples():
    F2 = make_field(2, 1, 1)
    assert kernel_basis(identity(3), F2) == []
    assert len(kernel_basis([[0] * 3 for _ in range(3)], F2)) == 3
    assert kernel_basis([[1, 1], [1, 1]], F2) == [[1, 1]]


def test_embed_examples():
    F4 = make_field(2, 1, 2)
    F16 = make_field(2, 1, 4)
    assert embed(F4.elem(0), F16) == F16.elem(0)
    assert embed(F4.elem(1), F16) == F16.elem(1)
    roots = [x for x in F16.elements()
             if F16.add(F16.add(F16.mul(x, x), x), 1) == 0]
    assert len(roots) == 2
    assert embed(F4.generator, F16).code == min(roots, key=F16.key)


def test_embed_into_tower_extension_is_homomorphism():
    L = make_field(2, 1, 2)
    L3 = extend(L, 3)
    assert L3.size == 64
    for x, y in itertools.product(L.elements(), repeat=2):
        ex, ey = embed(L.elem(x), L3), embed(L.elem(y), L3)
        assert embed(L.elem(x) * L.elem(y), L3) == ex * ey
        assert embed(L.elem(x) + L.elem(y), L3) == ex + ey


def test_large_field_uses_polynomial_arithmetic():
    F = make_field(2, 1, 20)
    assert not F.tabled
    x = F.elem(123457)
    assert x * x.inverse() == F.elem(1)
    assert frob_power(x, 20) == x


def test_pickle_round_trip_keeps_identity():
    F = make_field(3, 1, 2)
    assert pickle.loads(pickle.dumps(F)) is F


FIELDS = [(2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 1, 3)]


@pytest.mark.parametrize("pars", FIELDS)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_field_axioms(pars, data):
    L = make_field(*pars)
    elem = st.integers(0, L.size - 1).map(lambda c: FieldElem(L, c))
    x, y, z = data.draw(elem), data.draw(elem), data.draw(elem)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == L.elem(0)
    if x:
        assert x * x.inverse() == L.elem(1)
    # Frobenius x -> x^p is additive
    p = L.p
    assert (x + y) ** p == x**p + y**p


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15))
def test_embed_f4_into_f256_homomorphism(a, b):
    F4 = make_field(2, 1, 2)
    F256 = make_field(2, 1, 8)
    x, y = F4.elem(a % 4), F4.elem(b % 4)
    assert embed(x * y, F256) == embed(x, F256) * embed(y, F256)
    assert embed(x + y, F256) == embed(x, F256) + embed(y, F256)
