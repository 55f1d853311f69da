"""q-expansion bases of M_k(Gamma_1(N)).

Conventions follow Diamond--Shurman, "A First Course in Modular Forms":
the Eisenstein family E_k^{psi,phi,t} for pairs of primitive Dirichlet
characters with (mod psi)(mod phi) t | N and psi(-1) phi(-1) = (-1)^k,
coefficients sum_{d|n} psi(n/d) phi(d) d^{k-1}, constant term the
generalized Bernoulli value -B_{k,phi}/(2k) when psi is trivial; weight 2
with both characters trivial uses E_2(q) - t E_2(q^t); generalized
Bernoulli numbers B_{k,chi} = M^{k-1} sum_a chi(a) B_k(a/M).

Character values live in Q(zeta_L) with L = lcm(N, exponent of (Z/N)^*),
which contains the value fields of every character of modulus dividing N.
Bases are certified against the standard dimension formulas for the
torsion-free groups Gamma_1(N), N >= 4.
"""

from __future__ import annotations

import functools
import math
import threading
from fractions import Fraction
from math import comb, gcd

from .cyclo import Cyclo, euler_phi
from .errors import (
    BadLevelDivisibility,
    IncompatibleParity,
    PrecisionInsufficient,
    SpanFailure,
    UnsupportedLevel,
)
from .linalg import eliminate, rref
from .series import QSeries


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _prime_power_factors(n: int) -> list[tuple[int, int]]:
    out = []
    for p in _prime_factors(n):
        e = 0
        m = n
        while m % p == 0:
            m //= p
            e += 1
        out.append((p, e))
    return out


def _primitive_root(p: int, e: int) -> int:
    phi = p - 1
    factors = _prime_factors(phi)
    g = 2
    while True:
        if all(pow(g, phi // f, p) != 1 for f in factors):
            break
        g += 1
    if e == 1:
        return g
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


def unit_group_generators(M: int) -> list[tuple[int, int]]:
    """Generators (g, order) of (Z/M)^* via CRT on prime powers."""
    if M in (1, 2):
        return []
    gens = []
    for p, e in _prime_power_factors(M):
        pe = p**e
        rest = M // pe
        if p == 2:
            local = []
            if e == 2:
                local = [(3, 2)]
            elif e >= 3:
                local = [(pe - 1, 2), (5, 2 ** (e - 2))]
        else:
            g = _primitive_root(p, e)
            local = [(g, euler_phi(pe))]
        for g, order in local:
            if rest == 1:
                gens.append((g % M, order))
            else:
                # CRT lift: g mod p^e, 1 mod rest
                inv = pow(pe, -1, rest)
                lifted = (g * rest * pow(rest, -1, pe) + 1 * pe * inv) % M
                gens.append((lifted, order))
    return gens


def unit_group_exponent(M: int) -> int:
    result = 1
    for _, order in unit_group_generators(M):
        result = result * order // gcd(result, order)
    return result


def ambient_field_level(N: int) -> int:
    """L = lcm(N, exponent of (Z/N)^*): contains all character values."""
    e = unit_group_exponent(N)
    return N * e // gcd(N, e)


class DirichletCharacter:
    """A Dirichlet character mod M with values in Q(zeta_L).

    Stored as the exponent table a -> e with chi(a) = zeta_L^e on units.
    """

    __slots__ = ("modulus", "field_level", "exponents")

    def __init__(self, modulus: int, field_level: int, exponents: dict[int, int]):
        self.modulus = modulus
        self.field_level = field_level
        self.exponents = dict(exponents)

    @classmethod
    def trivial(cls, field_level: int) -> "DirichletCharacter":
        return cls(1, field_level, {0: 0})

    def value(self, n: int) -> Cyclo:
        if self.modulus == 1:
            return Cyclo.from_rational(self.field_level, 1)
        n %= self.modulus
        if gcd(n, self.modulus) != 1:
            return Cyclo.from_rational(self.field_level, 0)
        return Cyclo.zeta(self.field_level, self.exponents[n])

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents.values())

    def parity(self) -> int:
        """chi(-1), which is +1 or -1."""
        if self.modulus == 1:
            return 1
        e = self.exponents[self.modulus - 1]
        return 1 if e == 0 else -1

    def conductor(self) -> int:
        if self.modulus == 1:
            return 1
        for f in sorted(d for d in range(1, self.modulus + 1) if self.modulus % d == 0):
            if all(
                self.exponents[a % self.modulus] == 0
                for a in range(1, self.modulus + 1)
                if gcd(a, self.modulus) == 1 and a % f == 1 % f
            ):
                return f
        return self.modulus

    def is_primitive(self) -> bool:
        return self.conductor() == self.modulus

    def key(self) -> tuple:
        return (self.modulus, tuple(sorted(self.exponents.items())))

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.field_level == other.field_level and self.key() == other.key()

    def __hash__(self):
        return hash((self.field_level, self.key()))

    def __repr__(self):
        return f"DirichletCharacter(mod={self.modulus}, L={self.field_level})"


def all_characters(M: int, field_level: int) -> list[DirichletCharacter]:
    """All Dirichlet characters modulo M, values in Q(zeta_L)."""
    gens = unit_group_generators(M)
    if not gens:
        exps = {a % M: 0 for a in range(1, M + 1) if gcd(a, M) == 1} or {0: 0}
        return [DirichletCharacter(M, field_level, exps)]
    # express each unit as a product of generator powers by enumeration
    orders = [order for _, order in gens]
    unit_exp_vectors = {}
    from itertools import product as iproduct

    for vec in iproduct(*[range(o) for o in orders]):
        u = 1
        for (g, _), e in zip(gens, vec):
            u = u * pow(g, e, M) % M
        unit_exp_vectors.setdefault(u, vec)
    chars = []
    for choice in iproduct(*[range(o) for o in orders]):
        exps = {}
        for u, vec in unit_exp_vectors.items():
            e = sum(
                s * v * (field_level // o) for s, v, o in zip(choice, vec, orders)
            ) % field_level
            exps[u] = e
        chars.append(DirichletCharacter(M, field_level, exps))
    chars.sort(key=lambda c: c.key())
    return chars


def primitive_characters(M: int, field_level: int) -> list[DirichletCharacter]:
    return [c for c in all_characters(M, field_level) if c.is_primitive()]


@functools.lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n == 0:
        return Fraction(1)
    acc = Fraction(0)
    for j in range(n):
        acc += comb(n + 1, j) * bernoulli_number(j)
    return -acc / (n + 1)


def bernoulli_polynomial(k: int, x: Fraction) -> Fraction:
    """B_k(x) = sum_i binom(k, i) B_i x^(k-i)."""
    acc = Fraction(0)
    for i in range(k + 1):
        acc += comb(k, i) * bernoulli_number(i) * x ** (k - i)
    return acc


def gen_bernoulli(chi: DirichletCharacter, k: int) -> Cyclo:
    """Generalized Bernoulli number B_{k,chi}."""
    M = chi.modulus
    L = chi.field_level
    total = Cyclo.from_rational(L, 0)
    for a in range(1, M + 1):
        v = chi.value(a)
        if v:
            total = total + v * bernoulli_polynomial(k, Fraction(a, M))
    return total * Fraction(M) ** (k - 1)


def eisenstein(
    psi: DirichletCharacter,
    phi_char: DirichletCharacter,
    t: int,
    k: int,
    prec: int,
    N: int,
) -> QSeries:
    """The Eisenstein series E_k^{psi,phi,t} to the given q-precision."""
    if k < 1:
        raise ValueError("weight must be >= 1")
    L = psi.field_level
    if phi_char.field_level != L:
        raise BadLevelDivisibility("character field levels differ")
    if psi.modulus * phi_char.modulus * t % 1 != 0 or N % (
        psi.modulus * phi_char.modulus * t
    ) != 0:
        raise BadLevelDivisibility(
            f"{psi.modulus} * {phi_char.modulus} * {t} does not divide {N}"
        )
    if psi.parity() * phi_char.parity() != (-1) ** k:
        raise IncompatibleParity(f"character parity incompatible with weight {k}")

    both_trivial = psi.modulus == 1 and phi_char.modulus == 1
    if k == 2 and both_trivial:
        if t == 1:
            raise BadLevelDivisibility("E_2 itself is not modular; need t > 1")
        e2 = _weight2_level1(L, prec)
        return e2 - e2.shift(t) * t

    coeffs = [Cyclo.from_rational(L, 0)]
    if k >= 2:
        if psi.modulus == 1:
            coeffs[0] = -gen_bernoulli(phi_char, k) * Fraction(1, 2 * k)
    else:  # k == 1
        if psi.modulus == 1:
            coeffs[0] = -gen_bernoulli(phi_char, 1) * Fraction(1, 2)
        elif phi_char.modulus == 1:
            coeffs[0] = -gen_bernoulli(psi, 1) * Fraction(1, 2)
    for n in range(1, prec):
        acc = Cyclo.from_rational(L, 0)
        for d in range(1, n + 1):
            if n % d == 0:
                acc = acc + psi.value(n // d) * phi_char.value(d) * d ** (k - 1)
        coeffs.append(acc)
    return QSeries(L, prec, coeffs).shift(t) if t > 1 else QSeries(L, prec, coeffs)


def _weight2_level1(L: int, prec: int) -> QSeries:
    """E_2 = -1/24 + sum sigma_1(n) q^n (quasi-modular; used via t-twists)."""
    coeffs = [Cyclo.from_rational(L, Fraction(-1, 24))]
    for n in range(1, prec):
        coeffs.append(
            Cyclo.from_rational(L, sum(d for d in range(1, n + 1) if n % d == 0))
        )
    return QSeries(L, prec, coeffs)


def _gamma1_index(N: int) -> int:
    mu = N * N
    for p in _prime_factors(N):
        mu = mu // (p * p) * (p * p - 1)
    return mu


def _cusp_counts(N: int) -> tuple[int, int, int]:
    """(total, regular, irregular) cusps of Gamma_1(N), N >= 4."""
    if N == 4:
        return 3, 2, 1
    total = sum(euler_phi(d) * euler_phi(N // d) for d in range(1, N + 1) if N % d == 0)
    assert total % 2 == 0
    return total // 2, total // 2, 0


def _genus_X1(N: int) -> int:
    mu_bar = _gamma1_index(N) // 2
    total, _, _ = _cusp_counts(N)
    g = Fraction(1) + Fraction(mu_bar, 12) - Fraction(total, 2)
    assert g.denominator == 1
    return int(g)


def dim_Mk(N: int, k: int) -> int:
    """dim M_k(Gamma_1(N)) for N >= 4 (torsion-free, -I not in the group)."""
    if N < 4:
        raise UnsupportedLevel(f"level {N} < 4")
    if k < 0:
        return 0
    if k == 0:
        return 1
    g = _genus_X1(N)
    total, regular, irregular = _cusp_counts(N)
    if k == 1:
        if g != 0:
            raise UnsupportedLevel(
                "weight-1 dimension implemented only for genus-0 levels"
            )
        assert regular % 2 == 0
        return regular // 2
    if k % 2 == 0:
        return (k - 1) * (g - 1) + (k // 2) * total
    d = Fraction(k - 1) * (g - 1) + Fraction(k, 2) * regular + Fraction(k - 1, 2) * irregular
    assert d.denominator == 1
    return int(d)


def sturm_bound(N: int, k: int) -> int:
    """floor(k * mu / 12) + 1, mu the index of Gamma_1(N) in SL_2(Z)."""
    if N < 4:
        raise UnsupportedLevel(f"level {N} < 4")
    return k * _gamma1_index(N) // 12 + 1


class ModFormBasis:
    """Certified echelonized q-expansion basis of M_k(Gamma_1(N)).

    Elements are QSeries over the ambient field Q(zeta_L), in reduced row
    echelon form with pivots at the earliest q-exponents.
    """

    __slots__ = ("level", "weight", "prec", "field_level", "elements", "pivots", "certificate")

    def __init__(self, level, weight, prec, field_level, elements, pivots, certificate):
        self.level = level
        self.weight = weight
        self.prec = prec
        self.field_level = field_level
        self.elements = list(elements)
        self.pivots = list(pivots)
        self.certificate = dict(certificate)

    def serialize(self) -> dict:
        return {
            "level": self.level,
            "weight": self.weight,
            "prec": self.prec,
            "field_level": self.field_level,
            "sturm": self.certificate["sturm"],
            "elements": [e.serialize() for e in self.elements],
            "certificate": dict(self.certificate),
        }


def eisenstein_candidates(N: int, k: int, prec: int) -> list[QSeries]:
    """All admissible E_k^{psi,phi,t} at level N, weight k."""
    L = ambient_field_level(N)
    out = []
    divisors = [d for d in range(1, N + 1) if N % d == 0]
    prims = {d: primitive_characters(d, L) for d in divisors}
    for u in divisors:
        for v in divisors:
            if N % (u * v) != 0:
                continue
            for t in divisors:
                if N % (u * v * t) != 0:
                    continue
                for psi in prims[u]:
                    for phic in prims[v]:
                        if psi.parity() * phic.parity() != (-1) ** k:
                            continue
                        if k == 2 and u == 1 and v == 1 and t == 1:
                            continue
                        if k == 1 and (v, phic.key()) < (u, psi.key()):
                            continue  # E_1^{psi,phi} = E_1^{phi,psi}
                        out.append(eisenstein(psi, phic, t, k, prec, N))
    return out


_basis_lock = threading.Lock()


@functools.lru_cache(maxsize=None)
def _weight_basis_cached(N: int, k: int, prec: int) -> ModFormBasis:
    return _build_basis(N, k, prec, None)


def weight_basis(N: int, k: int, prec: int, candidates=None) -> ModFormBasis:
    """Certified basis of M_k(Gamma_1(N)) to q-precision prec.

    Candidates default to all admissible Eisenstein series plus products
    of lower-weight basis elements; passing an explicit candidate list
    overrides the pool (rank is still certified against the dimension).
    """
    sb = sturm_bound(N, k)
    if prec < sb:
        raise PrecisionInsufficient(f"prec {prec} < sturm bound {sb}")
    if candidates is not None:
        return _build_basis(N, k, prec, list(candidates))
    with _basis_lock:
        return _weight_basis_cached(N, k, prec)


def _build_basis(N: int, k: int, prec: int, candidates) -> ModFormBasis:
    L = ambient_field_level(N)
    sb = sturm_bound(N, k)
    dim = dim_Mk(N, k)
    if candidates is None:
        candidates = []
        if k == 0:
            candidates.append(QSeries.one(L, prec))
        else:
            candidates.extend(eisenstein_candidates(N, k, prec))
            for k1 in range(1, k // 2 + 1):
                k2 = k - k1
                b1 = _weight_basis_cached(N, k1, prec)
                b2 = _weight_basis_cached(N, k2, prec)
                for f in b1.elements:
                    for g in b2.elements:
                        candidates.append(f * g)
    rows = [list(c.coeffs) for c in candidates]
    pivots, reduced = rref(rows)
    rank = len(reduced)
    if rank < dim:
        raise SpanFailure(rank, dim)
    if rank > dim:
        raise AssertionError(
            f"rank {rank} exceeds dimension {dim}: dimension formula or "
            f"candidate construction is wrong"
        )
    elements = [QSeries(L, prec, r) for r in reduced]
    certificate = {"dimension": dim, "rank": rank, "sturm": sb}
    return ModFormBasis(N, k, prec, L, elements, pivots, certificate)


def is_in_span(s: QSeries, basis: ModFormBasis) -> tuple[bool, list[Cyclo]]:
    """Membership of s in the span of the basis, with coefficients.

    Agreement on prec >= sturm bound coefficients plus exact linear
    consistency certifies membership at the stated precision.
    """
    if s.prec < basis.prec:
        raise PrecisionInsufficient(
            f"series precision {s.prec} < basis precision {basis.prec}"
        )
    s = s.lift(basis.field_level).truncate(basis.prec)
    residual, coeffs = eliminate(
        list(s.coeffs), basis.pivots, [list(e.coeffs) for e in basis.elements]
    )
    return (not any(residual)), coeffs
