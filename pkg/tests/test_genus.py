"""The level-N genus: characteristic series, Chern pairing, F-hat."""

from fractions import Fraction

import pytest

from ellgenus.cyclo import Cyclo, in_NZ
from ellgenus.errors import BadChernData, InsufficientXPrecision
from ellgenus.genus import (
    ChernData,
    chern_product,
    chi_y_cp,
    cp_chern,
    genus,
    genus_bivariate,
    multiplicative_class,
    partitions_of,
    phi_series,
    split_product,
    verify_Q_identity,
)
from ellgenus.series import QSeries, XQSeries


def test_partitions_of_small_n():
    assert partitions_of(0) == [()]
    assert sorted(partitions_of(4)) == sorted(
        [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    )


def test_projective_space_chern_numbers():
    assert cp_chern(1).numbers == {(1,): 2}
    assert cp_chern(2).numbers == {(1, 1): 9, (2,): 3}
    assert cp_chern(3).numbers == {(1, 1, 1): 64, (2, 1): 24, (3,): 4}


def test_chern_data_rejects_wrong_degree():
    with pytest.raises(BadChernData):
        ChernData(2, {(1,): 1})


def test_whitney_product_of_two_cp1():
    prod = chern_product(cp_chern(1), cp_chern(1))
    assert prod.numbers == {(1, 1): 8, (2,): 4}


def test_chern_product_is_symmetric():
    a, b = cp_chern(1), cp_chern(2)
    assert chern_product(a, b).numbers == chern_product(b, a).numbers


def test_phi_zero_is_one():
    for N in (4, 5, 6):
        assert phi_series(N, 3, 8)[0] == QSeries.one(N, 8)


def test_multiplicative_class_of_quadratic_series():
    # phi(x) = 1 + x + x^2 gives K_1 = sigma_1 and K_2 = sigma_1^2 - sigma_2
    phi = XQSeries.from_x_poly(5, 3, 2, [1, 1, 1])
    k1 = multiplicative_class(phi, 1)
    assert set(k1.terms) == {(1,)}
    assert k1.terms[(1,)] == QSeries.one(5, 2)
    k2 = multiplicative_class(phi, 2)
    one = QSeries.one(5, 2)
    assert k2.terms[(1, 1)] == one
    assert k2.terms[(2,)] == -one


def test_multiplicative_class_needs_x_precision():
    phi = XQSeries.from_x_poly(5, 2, 2, [1, 1])
    with pytest.raises(InsufficientXPrecision):
        multiplicative_class(phi, 2)


def test_genus_cp1_level5_frozen_expansion():
    got = genus(cp_chern(1), 5, 6).serialize()
    assert got == [
        ["3/5", "6/5", "4/5", "2/5"],
        ["2/1", "4/1", "2/1", "2/1"],
        ["2/1", "4/1", "4/1", "0/1"],
        ["2/1", "4/1", "0/1", "4/1"],
        ["0/1", "0/1", "2/1", "-2/1"],
        ["2/1", "4/1", "2/1", "2/1"],
    ]


def test_genus_cp2_level4_frozen_expansion():
    got = genus(cp_chern(2), 4, 6).serialize()
    assert got == [
        ["-1/2", "0/1"],
        ["-6/1", "0/1"],
        ["-12/1", "0/1"],
        ["-24/1", "0/1"],
        ["-12/1", "0/1"],
        ["-36/1", "0/1"],
    ]


def test_genus_coefficients_are_N_integral():
    for N in (4, 5):
        for data in (cp_chern(1), cp_chern(3)):
            g = genus(data, N, 8)
            assert all(in_NZ(c) for c in g.coeffs)


def test_genus_is_multiplicative_on_products():
    a, b = cp_chern(1), cp_chern(2)
    left = genus(chern_product(a, b), 5, 8)
    right = genus(a, 5, 8) * genus(b, 5, 8)
    assert left == right


def test_chi_y_oracle_matches_q0_coefficient():
    for N in (4, 5):
        for n in (1, 2, 3):
            assert genus(cp_chern(n), N, 3)[0] == chi_y_cp(n, N)


def test_chi_y_cp1_is_the_paper_value():
    # (1 + zeta) / (1 - zeta) at N = 5
    z = Cyclo.zeta(5)
    one = Cyclo.from_rational(5, 1)
    assert chi_y_cp(1, 5) == (one + z) * (one - z).inv()


def test_bundle_identity_for_the_characteristic_series():
    assert verify_Q_identity(5, 4, 6)
    assert verify_Q_identity(4, 3, 5)


def test_bivariate_degenerates_to_genus_when_one_factor_is_trivial():
    # dim1 = 0: the q-variable carries no weight, p-row reproduces genus
    a = cp_chern(2)
    sp = split_product(a, cp_chern(0))
    F = genus_bivariate(sp, 5, 6, 6)
    assert F.q_column(0) == genus(a, 5, 6)


def test_bivariate_swap_transposes_the_rectangle():
    sp = split_product(cp_chern(1), cp_chern(2))
    F = genus_bivariate(sp, 5, 6, 6)
    G = genus_bivariate(sp.swap(), 5, 6, 6)
    assert G == F.transpose()


def test_bivariate_coefficients_are_N_integral():
    sp = split_product(cp_chern(1), cp_chern(1))
    F = genus_bivariate(sp, 5, 5, 5)
    assert all(in_NZ(F[i, j]) for i in range(5) for j in range(5))
