"""Dirichlet characters, Eisenstein series, and certified bases."""

from fractions import Fraction

import pytest

from ellgenus.cyclo import Cyclo, descend, in_NZ
from ellgenus.errors import PrecisionInsufficient, SpanFailure, UnsupportedLevel
from ellgenus.genus import phi_series
from ellgenus.modforms import (
    all_characters,
    ambient_field_level,
    bernoulli_number,
    dim_Mk,
    eisenstein_candidates,
    gen_bernoulli,
    is_in_span,
    sturm_bound,
    unit_group_exponent,
    weight_basis,
)
from ellgenus.series import QSeries


def test_bernoulli_numbers():
    got = [bernoulli_number(n) for n in range(9)]
    assert got == [
        Fraction(1),
        Fraction(-1, 2),
        Fraction(1, 6),
        Fraction(0),
        Fraction(-1, 30),
        Fraction(0),
        Fraction(1, 42),
        Fraction(0),
        Fraction(-1, 30),
    ]


def test_characters_mod_4():
    chars = all_characters(4, 4)
    assert len(chars) == 2
    odd = [ch for ch in chars if ch.parity() == -1]
    assert len(odd) == 1
    chi = odd[0]
    assert chi.conductor() == 4
    assert chi.value(3) == Cyclo.from_rational(4, -1)
    assert chi.value(2) == Cyclo(4)


def test_generalized_bernoulli_of_the_odd_character_mod_4():
    chi = [ch for ch in all_characters(4, 4) if ch.parity() == -1][0]
    assert gen_bernoulli(chi, 1) == Cyclo.from_rational(4, Fraction(-1, 2))


def test_ambient_field_levels():
    assert ambient_field_level(4) == 4
    assert ambient_field_level(5) == 20
    assert ambient_field_level(6) == 6


def test_unit_group_exponents():
    assert unit_group_exponent(5) == 4
    assert unit_group_exponent(8) == 2
    assert unit_group_exponent(12) == 2


def test_dimension_table():
    assert [dim_Mk(5, k) for k in range(5)] == [1, 2, 3, 4, 5]
    assert [dim_Mk(4, k) for k in range(5)] == [1, 1, 2, 2, 3]
    assert [dim_Mk(6, k) for k in range(4)] == [1, 2, 3, 4]


def test_sturm_bounds():
    assert sturm_bound(5, 2) == 5
    assert sturm_bound(4, 2) == 3
    assert sturm_bound(5, 3) == 7
    assert sturm_bound(6, 2) == 5


def test_levels_below_4_are_rejected():
    with pytest.raises(UnsupportedLevel):
        sturm_bound(3, 2)
    with pytest.raises(UnsupportedLevel):
        dim_Mk(2, 2)


def test_basis_rank_certificates():
    for N in (4, 5, 6):
        for k in (1, 2, 3):
            basis = weight_basis(N, k, max(sturm_bound(N, k), 6))
            cert = basis.certificate
            assert cert["rank"] == cert["dimension"] == dim_Mk(N, k)
            assert len(basis.elements) == cert["rank"]


def test_basis_is_echelonized_with_unit_pivots():
    basis = weight_basis(5, 2, 8)
    for i, (elem, piv) in enumerate(zip(basis.elements, basis.pivots)):
        assert elem.coeffs[piv] == Cyclo.from_rational(basis.field_level, 1)
        for other in basis.pivots[:i]:
            assert not elem.coeffs[other]


def test_basis_elements_are_N_integral():
    for N, k in ((4, 2), (5, 2), (5, 3)):
        basis = weight_basis(N, k, max(sturm_bound(N, k), 6))
        for elem in basis.elements:
            for c in elem.coeffs:
                down = descend(c, N)
                assert down is not None and in_NZ(down)


def test_weight2_level5_frozen_leading_element():
    basis = weight_basis(5, 2, 8)
    first = [descend(c, 5).rational_part() for c in basis.elements[0].coeffs]
    assert first == [1, 0, 0, 60, -120, 240, -300, 300]


def test_precision_below_sturm_bound_is_refused():
    with pytest.raises(PrecisionInsufficient):
        weight_basis(5, 2, 4)


def test_span_failure_on_a_starved_candidate_pool():
    pool = eisenstein_candidates(5, 2, 8)[:1]
    with pytest.raises(SpanFailure) as info:
        weight_basis(5, 2, 8, candidates=pool)
    assert info.value.rank < info.value.dimension


def test_phi_coefficients_are_modular():
    for N in (4, 5):
        for n in (1, 2, 3):
            prec = max(sturm_bound(N, n), 8)
            phi = phi_series(N, n + 1, prec)
            ok, coeffs = is_in_span(phi[n], weight_basis(N, n, prec))
            assert ok
            assert len(coeffs) == dim_Mk(N, n)


def test_is_in_span_rejects_non_members():
    basis = weight_basis(5, 2, 8)
    coeffs = [Cyclo(5)] * 8
    coeffs[3] = Cyclo.from_rational(5, Fraction(1, 7))
    probe = QSeries(5, 8, coeffs)
    # q^3 support alone cannot be matched by the echelon tails exactly
    ok, _ = is_in_span(probe, basis)
    assert not ok


def test_weight_basis_results_are_cached():
    a = weight_basis(5, 2, 8)
    b = weight_basis(5, 2, 8)
    assert a is b


def test_basis_serialization_shape():
    basis = weight_basis(4, 2, 6)
    doc = basis.serialize()
    assert doc["level"] == 4 and doc["weight"] == 2
    assert doc["sturm"] == sturm_bound(4, 2)
    assert len(doc["elements"]) == doc["certificate"]["rank"]
