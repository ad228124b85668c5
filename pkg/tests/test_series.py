from fractions import Fraction as Q
from math import inf

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dnlift.series import (
    BiSeries,
    InsufficientPrecisionError,
    NotAntisymmetricError,
    PowerSeries,
    ZeroLeadingCoefficientError,
    divide_antisym_by_diff,
    substitute_power,
)

# independent eta-product oracle for Delta, multiplied out term by term
def delta_oracle(n_terms):
    coeffs = [Q(0)] * n_terms
    coeffs[0] = Q(1)
    for n in range(1, n_terms):
        # multiply by (1 - q^n)^24 term by term
        factor = [Q(1)]
        acc = [Q(1)]
        for _ in range(24):
            new = [Q(0)] * n_terms
            for i, c in enumerate(acc):
                if not c:
                    continue
                if i < n_terms:
                    new[i] += c
                if i + n < n_terms:
                    new[i + n] -= c
            acc = new
        out = [Q(0)] * n_terms
        for i, c in enumerate(coeffs):
            for j, d in enumerate(acc):
                if i + j < n_terms and c and d:
                    out[i + j] += c * d
        coeffs = out
    return {i + 1: c for i, c in enumerate(coeffs) if c}


def q_pow(e, c=1):
    return PowerSeries.monomial(e, c)


def test_polynomial_identities():
    one_plus = PowerSeries({0: 1, 1: 1})
    one_minus = PowerSeries({0: 1, 1: -1})
    prod = one_plus * one_minus
    assert prod.coeffs == {0: Q(1), 2: Q(-1)}
    assert (q_pow(-1) * q_pow(1)).coeffs == {0: Q(1)}


def test_truncated_geometric_inverse():
    geo = PowerSeries({i: 1 for i in range(4)}, 0, 4)  # 1/(1-q) truncated at 4
    one_minus = PowerSeries({0: 1, 1: -1})
    prod = geo * one_minus
    assert prod.truncation == 4
    assert prod.coeffs == {0: Q(1)}


def test_mul_truncation_rule():
    # Laurent rule N = min(N1 + v2, N2 + v1)
    a = PowerSeries({-1: 1}, -1, 3)
    b = PowerSeries({2: 5}, 2, 10)
    c = a * b
    assert c.valuation == 1 and c.truncation == min(3 + 2, 10 - 1)


def test_invert_unit_basic():
    inv = PowerSeries({0: 1, 1: -1}, 0, 6).invert_unit()
    assert inv.coeffs == {i: Q(1) for i in range(6)}
    assert PowerSeries.monomial(1).invert_unit().coeffs == {-1: Q(1)}
    with pytest.raises(ZeroLeadingCoefficientError):
        PowerSeries.zero(0, 5).invert_unit()


def test_invert_unit_against_delta_oracle():
    n = 8
    dd = delta_oracle(n)
    s = PowerSeries(dd, 1, n + 1)
    inv = s.invert_unit()
    assert inv.valuation == -1
    assert inv[-1] == 1 and inv[0] == 24 and inv[1] == 324 and inv[2] == 3200
    check = s * inv
    assert check.coeffs == {0: Q(1)}


def test_getitem_precision_guard():
    s = PowerSeries({0: 1}, 0, 3)
    assert s[2] == 0
    with pytest.raises(InsufficientPrecisionError):
        s[3]


def test_dilate_and_substitute_power():
    s = PowerSeries({0: 1, 1: 1})  # 1 + q
    assert s.dilate(2).coeffs == {0: Q(1), 2: Q(1)}
    assert PowerSeries.monomial(-1).dilate(3).coeffs == {-3: Q(1)}
    bs = substitute_power(s, 2, "q")
    assert bs.coeffs == {(0, 0): Q(1), (2, 0): Q(1)}
    bp = substitute_power(s, 2, "p")
    assert bp.coeffs == {(0, 0): Q(1), (0, 2): Q(1)}


def test_substitute_power_truncation_scaling():
    s = PowerSeries({1: 1, 2: -24}, 1, 3)
    bs = substitute_power(s, 2, "q")
    assert bs.coeffs == {(2, 0): Q(1), (4, 0): Q(-24)}
    assert bs.truncations[0] == 2 * (3 - 1) + 1
    assert bs.truncations[1] == inf


coeff_st = st.integers(-9, 9).map(Q)


@st.composite
def short_series(draw):
    v = draw(st.integers(-3, 2))
    n = v + draw(st.integers(1, 6))
    data = {}
    for e in range(v, n):
        c = draw(coeff_st)
        if c:
            data[e] = c
    return PowerSeries(data, v, n)


@settings(max_examples=60, deadline=None)
@given(short_series(), short_series(), short_series())
def test_ring_axioms_within_truncation(a, b, c):
    lhs = (a * b) * c
    rhs = a * (b * c)
    assert lhs.agrees_with(rhs)
    dist_l = a * (b + c)
    dist_r = a * b + a * c
    assert dist_l.agrees_with(dist_r)
    assert (a * b).agrees_with(b * a)


@settings(max_examples=40, deadline=None)
@given(short_series())
def test_invert_unit_two_sided(s):
    if not s.coeffs:
        return
    s = s.normalize()
    inv = s.invert_unit()
    left = s * inv
    v = s.valuation
    assert left.coeffs == {0: Q(1)}
    assert left.truncation == s.truncation - v
    right = inv * s
    assert right.coeffs == {0: Q(1)}


def test_invert_requires_nonzero_leading():
    s = PowerSeries({1: Q(1)}, 0, 3)
    with pytest.raises(ZeroLeadingCoefficientError):
        s.invert_unit()
    assert s.normalize().invert_unit().coeffs == {-1: Q(1)}


# --- bivariate ---------------------------------------------------------


def test_biseries_mul_box_rule():
    a = BiSeries({(1, 0): 1}, (1, 0), (5, 4))
    b = BiSeries({(0, 2): 1}, (0, 2), (3, 7))
    c = a * b
    assert c.valuations == (1, 2)
    assert c.truncations == (min(5 + 0, 3 + 1), min(4 + 2, 7 + 0))


def test_divide_antisym_simple():
    s = BiSeries.monomial(1, 0) - BiSeries.monomial(0, 1)  # q - p
    t = divide_antisym_by_diff(s)
    assert t.coeffs == {(0, 0): Q(1)}

    s2 = BiSeries.monomial(2, 0) - BiSeries.monomial(0, 2)  # q^2 - p^2
    t2 = divide_antisym_by_diff(s2)
    assert t2.coeffs == {(1, 0): Q(1), (0, 1): Q(1)}

    s3 = BiSeries.monomial(-1, 0) - BiSeries.monomial(0, -1)  # 1/q - 1/p
    t3 = divide_antisym_by_diff(s3)
    assert t3.coeffs == {(-1, -1): Q(-1)}


def test_divide_antisym_reproduces_input():
    import random

    rng = random.Random(7)
    for _ in range(25):
        terms = {}
        for _ in range(6):
            a = rng.randint(-2, 5)
            b = rng.randint(-2, 5)
            if a == b:
                continue
            c = Q(rng.randint(-5, 5))
            terms[(a, b)] = terms.get((a, b), Q(0)) + c
            terms[(b, a)] = terms.get((b, a), Q(0)) - c
        terms = {k: v for k, v in terms.items() if v}
        s = BiSeries(terms, (-2, -2), (inf, inf))
        t = divide_antisym_by_diff(s)
        qminusp = BiSeries.monomial(1, 0) - BiSeries.monomial(0, 1)
        back = t * qminusp
        assert back.agrees_with(s)
        assert {k: v for k, v in back.coeffs.items()} == terms


def test_divide_antisym_rejects_bad_input():
    s = BiSeries({(1, 0): Q(1)}, (0, 0), (3, 3))
    with pytest.raises(NotAntisymmetricError):
        divide_antisym_by_diff(s)
    diag = BiSeries({(1, 1): Q(2)}, (0, 0), (3, 3))
    with pytest.raises(NotAntisymmetricError):
        divide_antisym_by_diff(diag)


def test_symmetry_flags():
    s = BiSeries({(0, 1): 2, (1, 0): 2}, (0, 0), (3, 3))
    assert s.is_symmetric() and not s.is_antisymmetric()
    a = BiSeries({(0, 1): -2, (1, 0): 2}, (0, 0), (3, 3))
    assert a.is_antisymmetric() and not a.is_symmetric()


def test_json_roundtrip():
    s = PowerSeries({-1: Q(1, 3), 2: -4}, -1, 5)
    assert PowerSeries.from_json_obj(s.to_json_obj()) == s
    assert s.json_dumps() == s.json_dumps()
    b = BiSeries({(0, 1): Q(-7, 2)}, (0, 0), (4, 4))
    assert BiSeries.from_json_obj(b.to_json_obj()) == b
    exact = PowerSeries({0: 1})
    assert PowerSeries.from_json_obj(exact.to_json_obj()).truncation is inf
