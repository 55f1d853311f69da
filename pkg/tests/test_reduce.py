"""Quotient reductions: canonical representatives and triviality."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellgenus.cyclo import Cyclo, in_NZ
from ellgenus.errors import PrecisionInsufficient
from ellgenus.genus import cp_chern, genus, genus_bivariate, split_product
from ellgenus.modforms import weight_basis
from ellgenus.reduce import project_q0, reduce_Uq, reduce_Wtilde
from ellgenus.series import PQSeries, QSeries


def const_series(level, prec, value):
    coeffs = [Cyclo.from_rational(level, value)] + [Cyclo(level)] * (prec - 1)
    return QSeries(level, prec, coeffs)


def single_coeff(level, prec, n, value):
    coeffs = [Cyclo(level)] * prec
    coeffs[n] = Cyclo.from_rational(level, value)
    return QSeries(level, prec, coeffs)


def test_genus_of_cp2_reduces_trivially():
    cls = reduce_Uq(genus(cp_chern(2), 5, 7), 5, 6)
    assert cls.trivial
    assert cls.rep.is_zero()


def test_constant_series_is_always_trivial():
    for value in (0, 1, Fraction(7, 3), Fraction(-22, 21)):
        cls = reduce_Uq(const_series(5, 7, value), 5, 6)
        assert cls.trivial


def test_N_integral_series_is_trivial():
    coeffs = [
        Cyclo(5, [Fraction(3, 5), Fraction(-2), Fraction(7, 25), Fraction(1)])
        for _ in range(7)
    ]
    cls = reduce_Uq(QSeries(5, 7, coeffs), 5, 6)
    assert cls.trivial


def test_basis_element_is_trivial():
    basis = weight_basis(5, 3, 7)
    cls = reduce_Uq(basis.elements[1], 5, 6)
    assert cls.trivial


def test_stray_small_denominator_is_nontrivial():
    cls = reduce_Uq(single_coeff(5, 7, 1, Fraction(1, 7)), 5, 6)
    assert not cls.trivial
    assert any(c is None or not c.is_zero() for c in cls.cosets)


def test_triviality_agrees_with_zero_representative():
    probes = [
        genus(cp_chern(2), 5, 7),
        single_coeff(5, 7, 2, Fraction(5, 6)),
        const_series(5, 7, Fraction(1, 3)),
    ]
    for s in probes:
        cls = reduce_Uq(s, 5, 6)
        assert cls.trivial == cls.rep.is_zero()


def test_verdict_is_linear_in_trivial_classes():
    a = genus(cp_chern(2), 5, 7)
    b = const_series(5, 7, Fraction(9, 14))
    assert reduce_Uq(a + b, 5, 6).trivial
    lam = Cyclo.from_rational(5, Fraction(3, 25))
    assert in_NZ(lam)
    scaled = QSeries(5, 7, [lam * c for c in a.coeffs])
    assert reduce_Uq(scaled, 5, 6).trivial


def test_verdict_stable_under_subgroup_shifts():
    base = genus(cp_chern(2), 5, 7)
    basis = weight_basis(5, 3, 7)
    lifted = base.lift(basis.field_level)
    shifted = lifted + basis.elements[0] + basis.elements[2]
    assert reduce_Uq(shifted, 5, 6).trivial
    bad = single_coeff(5, 7, 4, Fraction(2, 3))
    shifted_bad = (bad + base).lift(basis.field_level) + basis.elements[1]
    assert not reduce_Uq(shifted_bad, 5, 6).trivial


small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@settings(max_examples=25, deadline=None)
@given(c=small_fractions, d=small_fractions)
def test_constants_plus_integral_noise_always_trivial(c, d):
    s = const_series(5, 7, c) + single_coeff(5, 7, 3, 5 * d)
    if in_NZ(Cyclo.from_rational(5, 5 * d)):
        assert reduce_Uq(s, 5, 6).trivial


def test_precision_monotonicity_of_trivial_verdicts():
    g = genus(cp_chern(2), 5, 9)
    assert reduce_Uq(g, 5, 6, 9).trivial
    assert reduce_Uq(g, 5, 6, 8).trivial
    assert reduce_Uq(g, 5, 6, 7).trivial


def test_precision_below_sturm_is_refused():
    with pytest.raises(PrecisionInsufficient):
        reduce_Uq(genus(cp_chern(2), 5, 6), 5, 6)


def test_report_carries_certificate_and_sturm():
    cls = reduce_Uq(genus(cp_chern(2), 5, 7), 5, 6)
    doc = cls.serialize()
    assert doc["sturm"] == 7
    assert isinstance(doc["basis_hash"], str) and doc["basis_hash"]
    assert len(doc["modular_part"]["coefficients"]) == len(
        doc["modular_part"]["pivot_columns"]
    )
    assert doc["modular_part"]["constant"] is not None


def test_recorded_decomposition_is_exact():
    s = genus(cp_chern(2), 5, 7)
    cls = reduce_Uq(s, 5, 6)
    basis = weight_basis(5, 3, 7)
    L = basis.field_level
    rebuilt = QSeries.zero(L, 7)
    for c, elem in zip(cls.modular_part["coefficients"], basis.elements):
        rebuilt = rebuilt + QSeries(L, 7, [c * x for x in elem.coeffs])
    alpha = cls.modular_part["constant"]
    rebuilt = rebuilt + QSeries(L, 7, [alpha] + [Cyclo(L)] * 6)
    residual = s.lift(L) - rebuilt
    # trivial verdict: what remains is N-integral coefficientwise
    from ellgenus.cyclo import descend

    for c in residual.coeffs:
        down = descend(c, 5)
        assert down is not None and in_NZ(down)


def test_closed_product_degree4_vanishes_in_two_variables():
    F = genus_bivariate(split_product(cp_chern(1), cp_chern(1)), 5, 5, 5)
    cls = reduce_Wtilde(F, 5, 4)
    assert cls.trivial


def test_closed_product_degree6_vanishes_in_two_variables():
    F = genus_bivariate(split_product(cp_chern(1), cp_chern(2)), 5, 7, 7)
    cls = reduce_Wtilde(F, 5, 6)
    assert cls.trivial
    assert cls.row_class.trivial and cls.column_class.trivial


def test_single_mixed_half_coefficient_is_detected():
    F = PQSeries(5, 5, 5)
    rows = [list(r) for r in F.rows]
    rows[1][1] = Cyclo.from_rational(5, Fraction(1, 2))
    F = PQSeries(5, 5, 5, rows)
    cls = reduce_Wtilde(F, 5, 4)
    assert not cls.trivial
    assert cls.mixed_cosets[0][0].rep == Cyclo.from_rational(5, Fraction(1, 2))


def test_constant_rectangle_is_trivial():
    F = PQSeries.constant(5, 5, 5, Fraction(11, 6))
    assert reduce_Wtilde(F, 5, 4).trivial


def test_projection_compatibility():
    for a, b, degree, prec in (
        (1, 1, 4, 5),
        (1, 2, 6, 7),
    ):
        F = genus_bivariate(split_product(cp_chern(a), cp_chern(b)), 5, prec, prec)
        assert reduce_Wtilde(F, 5, degree).trivial
        assert reduce_Uq(project_q0(F), 5, degree).trivial


def test_projection_of_positive_q_support_is_trivially_trivial():
    F = PQSeries(5, 5, 5)
    rows = [list(r) for r in F.rows]
    rows[2][3] = Cyclo.from_rational(5, Fraction(1, 7))
    F = PQSeries(5, 5, 5, rows)
    assert project_q0(F).is_zero()
    assert reduce_Uq(project_q0(F), 5, 4).trivial
