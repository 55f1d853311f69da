"""The level-N complex elliptic genus and its two-variable refinement.

The characteristic series is

    phi(x)(q) = a(q) * Q_{-zeta_N}(x)(q),

    Q_y(x)(q) = x/(1-e^{-x}) * (1+y e^{-x})
                * prod_{n>=1} (1+y q^n e^{-x})/(1-q^n e^{-x})
                            * (1+y^{-1} q^n e^{x})/(1-q^n e^{x}),

    a(q) = Q_{-zeta_N}(0)(q)^{-1}.

Genus values are computed from Chern numbers: the degree-n multiplicative
class of phi is expanded in elementary symmetric polynomials (= Chern
classes) via power sums and Newton's identities, then paired against the
Chern-number data.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import comb

from .cyclo import Cyclo
from .errors import (
    BadChernData,
    BadSplitChernData,
    InsufficientXPrecision,
)
from .series import PQSeries, QSeries, XQSeries, exp_x, todd_series

Partition = tuple[int, ...]


def _normalize_partition(key) -> Partition:
    parts = tuple(sorted((int(p) for p in key), reverse=True))
    if any(p < 1 for p in parts):
        raise ValueError(f"bad partition {key}")
    return parts


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n, parts weakly decreasing."""
    if n == 0:
        return [()]
    out = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(largest, remaining), 0, -1):
            rec(remaining - p, p, prefix + [p])

    rec(n, n, [])
    return out


class ChernData:
    """Chern numbers of a stably almost complex manifold.

    ``numbers`` maps partitions of the complex dimension to the integers
    <c_{lambda_1} ... c_{lambda_r}, [M]>.  Missing partitions mean 0.
    """

    __slots__ = ("dim", "numbers")

    def __init__(self, dim: int, numbers: dict):
        self.dim = dim
        clean = {}
        for key, value in numbers.items():
            part = _normalize_partition(key)
            if sum(part) != dim:
                raise BadChernData(f"{part} is not a partition of {dim}")
            clean[part] = clean.get(part, 0) + int(value)
        self.numbers = clean

    def __eq__(self, other):
        if not isinstance(other, ChernData):
            return NotImplemented
        a = {k: v for k, v in self.numbers.items() if v}
        b = {k: v for k, v in other.numbers.items() if v}
        return self.dim == other.dim and a == b

    def __repr__(self):
        return f"ChernData(dim={self.dim}, numbers={self.numbers})"


class SplitChernData:
    """Chern numbers for a split tangent bundle T0 + T1.

    Keys are pairs of partitions (lam, mu) with |lam| + |mu| = dim0 + dim1,
    valued <c_lam(T0) c_mu(T1), [X]>.
    """

    __slots__ = ("dim0", "dim1", "numbers")

    def __init__(self, dim0: int, dim1: int, numbers: dict):
        self.dim0 = dim0
        self.dim1 = dim1
        total = dim0 + dim1
        clean = {}
        for (lam, mu), value in numbers.items():
            lam = _normalize_partition(lam)
            mu = _normalize_partition(mu)
            if sum(lam) + sum(mu) != total:
                raise BadSplitChernData(
                    f"({lam}, {mu}) has total degree != {total}"
                )
            clean[(lam, mu)] = clean.get((lam, mu), 0) + int(value)
        self.numbers = clean

    def swap(self) -> "SplitChernData":
        return SplitChernData(
            self.dim1,
            self.dim0,
            {(mu, lam): v for (lam, mu), v in self.numbers.items()},
        )

    def __repr__(self):
        return (
            f"SplitChernData(dim0={self.dim0}, dim1={self.dim1}, "
            f"numbers={self.numbers})"
        )


def cp_chern(n: int) -> ChernData:
    """Chern numbers of CP^n: c_lam = prod_i binom(n+1, lam_i)."""
    numbers = {}
    for part in partitions_of(n):
        value = 1
        for p in part:
            value *= comb(n + 1, p)
        numbers[part] = value
    return ChernData(n, numbers)


def chern_product(a: ChernData, b: ChernData) -> ChernData:
    """Chern numbers of a product manifold, by the Whitney formula.

    c_k(A x B) = sum_{i+j=k} c_i(A) c_j(B); the Kunneth pairing keeps the
    terms whose A-degrees sum to dim(A).
    """
    dim = a.dim + b.dim
    numbers = {}
    for part in partitions_of(dim):
        total = 0
        # distribute each part lam_t = i_t + j_t over the two factors
        def rec(idx, left_a, left_b, parts_a, parts_b):
            nonlocal total
            if idx == len(part):
                if left_a == 0 and left_b == 0:
                    ka = tuple(sorted(parts_a, reverse=True))
                    kb = tuple(sorted(parts_b, reverse=True))
                    total += a.numbers.get(ka, 0) * b.numbers.get(kb, 0)
                return
            p = part[idx]
            for i in range(p + 1):
                j = p - i
                if i <= left_a and j <= left_b:
                    rec(
                        idx + 1,
                        left_a - i,
                        left_b - j,
                        parts_a + [i] * (i > 0),
                        parts_b + [j] * (j > 0),
                    )

        rec(0, a.dim, b.dim, [], [])
        numbers[part] = total
    return ChernData(dim, numbers)


def split_product(a: ChernData, b: ChernData) -> SplitChernData:
    """Split Chern data of A x B with T0 = TA, T1 = TB (pulled back)."""
    numbers = {}
    for lam, va in a.numbers.items():
        for mu, vb in b.numbers.items():
            numbers[(lam, mu)] = va * vb
    return SplitChernData(a.dim, b.dim, numbers)


def _q_monomial(level: int, prec: int, n: int) -> QSeries:
    coeffs = [0] * prec
    if n < prec:
        coeffs[n] = 1
    return QSeries(level, prec, coeffs)


def q_factor_Q(N: int, prec_x: int, prec_q: int) -> XQSeries:
    """The series Q_{-zeta_N}(x)(q), exact up to the truncations."""
    y = -Cyclo.zeta(N)
    yinv = y.inv()
    em = exp_x(N, prec_x, prec_q, -1)
    ep = exp_x(N, prec_x, prec_q, +1)
    one = XQSeries.one(N, prec_x, prec_q)
    result = todd_series(N, prec_x, prec_q) * (one + em * y)
    for n in range(1, prec_q):
        qn = _q_monomial(N, prec_q, n)
        result = result * (one + em * (y * Fraction(1)) * qn) * (one - em * qn).inv()
        result = result * (one + ep * yinv * qn) * (one - ep * qn).inv()
    return result


@functools.lru_cache(maxsize=None)
def phi_series(N: int, prec_x: int, prec_q: int) -> XQSeries:
    """phi(x)(q) = a(q) Q_{-zeta_N}(x)(q); the x^0 coefficient is 1."""
    Q = q_factor_Q(N, prec_x, prec_q)
    a = Q[0].inv()
    return Q * a


def q_factor_a(N: int, prec_q: int) -> QSeries:
    """a(q) = Q_{-zeta_N}(0)(q)^{-1}."""
    return q_factor_Q(N, 1, prec_q)[0].inv()


class GradedSymPoly:
    """Homogeneous polynomial in Chern classes with QSeries coefficients.

    Monomials are encoded as partitions: (2, 1) stands for c_2 * c_1.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict):
        self.degree = degree
        self.terms = dict(terms)

    def coefficient(self, part: Partition) -> QSeries | None:
        return self.terms.get(_normalize_partition(part))


def _newton_power_sum(k: int) -> dict[Partition, int]:
    """p_k in the elementary symmetric basis, by Newton's identities."""
    ps: list[dict[Partition, int]] = [dict() for _ in range(k + 1)]
    for m in range(1, k + 1):
        acc: dict[Partition, int] = {}
        for i in range(1, m):
            sign = (-1) ** (i - 1)
            for part, c in ps[m - i].items():
                key = tuple(sorted(part + (i,), reverse=True))
                acc[key] = acc.get(key, 0) + sign * c
        sign = (-1) ** (m - 1)
        acc[(m,)] = acc.get((m,), 0) + sign * m
        ps[m] = acc
    return ps[k]


def _sym_mul(a: dict, b: dict, cutoff: int, zero: QSeries) -> dict:
    out: dict[Partition, QSeries] = {}
    for la, ca in a.items():
        for lb, cb in b.items():
            if sum(la) + sum(lb) > cutoff:
                continue
            key = tuple(sorted(la + lb, reverse=True))
            prev = out.get(key)
            prod = ca * cb
            out[key] = prod if prev is None else prev + prod
    return out


def multiplicative_class(phi: XQSeries, n: int) -> GradedSymPoly:
    """Degree-n piece of prod_i phi(x_i), in elementary symmetric basis.

    Computed as exp(sum_k l_k p_k) with l = log(phi), truncated at
    symmetric-function weight n.
    """
    if n == 0:
        return GradedSymPoly(0, {(): QSeries.one(phi.level, phi.prec_q)})
    if phi.prec_x <= n:
        raise InsufficientXPrecision(f"prec_x {phi.prec_x} <= degree {n}")
    level, prec_q = phi.level, phi.prec_q
    ell = phi.log()
    zero = QSeries.zero(level, prec_q)
    one = QSeries.one(level, prec_q)
    # A = sum_k l_k p_k as a symmetric polynomial with QSeries coefficients
    A: dict[Partition, QSeries] = {}
    for k in range(1, n + 1):
        lk = ell[k]
        if lk.is_zero():
            continue
        for part, c in _newton_power_sum(k).items():
            prev = A.get(part)
            contrib = lk * c
            A[part] = contrib if prev is None else prev + contrib
    result: dict[Partition, QSeries] = {(): one}
    term: dict[Partition, QSeries] = {(): one}
    for j in range(1, n + 1):
        term = _sym_mul(term, A, n, zero)
        term = {k: v * Fraction(1, j) for k, v in term.items()}
        for key, v in term.items():
            prev = result.get(key)
            result[key] = v if prev is None else prev + v
    top = {k: v for k, v in result.items() if sum(k) == n}
    return GradedSymPoly(n, top)


@functools.lru_cache(maxsize=None)
def _mclass(N: int, prec_x: int, prec_q: int, n: int) -> GradedSymPoly:
    return multiplicative_class(phi_series(N, prec_x, prec_q), n)


def genus(M: ChernData, N: int, prec_q: int, prec_x: int | None = None) -> QSeries:
    """The level-N complex elliptic genus of M as a q-expansion."""
    if prec_x is None:
        prec_x = M.dim + 2
    if prec_x <= M.dim:
        raise InsufficientXPrecision(f"prec_x {prec_x} <= dim {M.dim}")
    K = _mclass(N, prec_x, prec_q, M.dim)
    result = QSeries.zero(N, prec_q)
    for part, value in M.numbers.items():
        if not value:
            continue
        coeff = K.terms.get(part)
        if coeff is not None:
            result = result + coeff * value
    return result


def genus_bivariate(
    X: SplitChernData,
    N: int,
    prec_p: int,
    prec_q: int,
    prec_x: int | None = None,
) -> PQSeries:
    """The two-variable representative F(X) in (p, q).

    Per split factor, Td * ch C equals the characteristic series phi, so
    F(X) pairs prod phi(x_i)(p) * prod phi(y_j)(q) against the split
    Chern numbers.
    """
    dim = X.dim0 + X.dim1
    if prec_x is None:
        prec_x = dim + 2
    if prec_x <= dim:
        raise InsufficientXPrecision(f"prec_x {prec_x} <= dim {dim}")
    result = PQSeries(N, prec_p, prec_q)
    for (lam, mu), value in X.numbers.items():
        if not value:
            continue
        Kp = _mclass(N, prec_x, prec_p, sum(lam))
        Kq = _mclass(N, prec_x, prec_q, sum(mu))
        a = Kp.terms.get(lam)
        b = Kq.terms.get(mu)
        if a is None or b is None:
            continue
        result = result + PQSeries.outer(a, b) * value
    return result


def chi_y_cp(n: int, N: int) -> Cyclo:
    """Independent oracle for the q = 0 shadow of genus(CP^n).

    chi_y(CP^n) = sum_i (-y)^i at y = -zeta_N, normalized by the q = 0
    value (1 - zeta_N)^n of the genus normalization.
    """
    z = Cyclo.zeta(N)
    total = Cyclo.from_rational(N, 0)
    power = Cyclo.from_rational(N, 1)
    for _ in range(n + 1):
        total = total + power
        power = power * z
    scale = (Cyclo.from_rational(N, 1) - z).inv()
    for _ in range(n):
        total = total * scale
    return total


def verify_Q_identity(N: int, prec_x: int, prec_q: int) -> bool:
    """Check prod_i Q_y(x_i) = Td(V) ch[Lambda_y V* prod ...] for a line bundle.

    The right side is assembled from the Chern-character primitives
    ch Lambda_t(L*) = 1 + t e^{-x}, ch Lambda_t(L) = 1 + t e^{x},
    ch S_t(L) = (1 - t e^{x})^{-1}, ch S_t(L*) = (1 - t e^{-x})^{-1},
    and compared coefficientwise with Q built from its product formula.
    """
    y = -Cyclo.zeta(N)
    yinv = y.inv()
    em = exp_x(N, prec_x, prec_q, -1)
    ep = exp_x(N, prec_x, prec_q, +1)
    one = XQSeries.one(N, prec_x, prec_q)

    def ch_lambda_dual(t: QSeries) -> XQSeries:
        return one + em * t

    def ch_lambda(t: QSeries) -> XQSeries:
        return one + ep * t

    def ch_sym(t: QSeries) -> XQSeries:
        return (one - ep * t).inv()

    def ch_sym_dual(t: QSeries) -> XQSeries:
        return (one - em * t).inv()

    y_const = QSeries.constant(N, prec_q, y)
    rhs = todd_series(N, prec_x, prec_q) * ch_lambda_dual(y_const)
    for n in range(1, prec_q):
        qn = _q_monomial(N, prec_q, n)
        rhs = rhs * ch_lambda_dual(qn * y)
        rhs = rhs * ch_lambda(qn * yinv)
        rhs = rhs * ch_sym(qn) * ch_sym_dual(qn)
    lhs = q_factor_Q(N, prec_x, prec_q)
    return lhs == rhs
