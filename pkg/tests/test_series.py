"""Truncated power/Laurent series in x, twists, functional-equation audits,
Newton polygons, Cartier digits and the Moore determinant."""

import random
from fractions import Fraction

import pytest

from mahlerforge.fields import QQ, GF, rational_field
from mahlerforge.series import (TruncatedSeries, TwistSpec, verify_funceq,
                                newton_polygon, NewtonPolygon, cartier_digit,
                                moore_det, eval_product, parse_series,
                                sw_orbit_dimension)

CASES = 200


def rand_qq_series(rng, prec, low=0):
    coeffs = [Fraction(rng.randrange(-9, 10), rng.randrange(1, 9))
              for _ in range(prec - low)]
    return TruncatedSeries.from_coeffs(QQ, coeffs, var="x", prec=prec, low=low)


def naive_mul(f, g, prec):
    out = {}
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            e = f.low + i + g.low + j
            if e < prec:
                out[e] = out.get(e, Fraction(0)) + a * b
    return out


def test_product_against_naive_convolution():
    rng = random.Random(20)
    for _ in range(CASES):
        f = rand_qq_series(rng, 12, low=rng.randrange(-3, 3))
        g = rand_qq_series(rng, 12, low=rng.randrange(-3, 3))
        h = f * g
        oracle = naive_mul(f, g, h.prec)
        for e, c in oracle.items():
            assert h.coeff(e) == c


def test_inverse_and_division():
    rng = random.Random(21)
    for _ in range(60):
        f = rand_qq_series(rng, 14)
        if not f.coeff(0):
            continue
        g = f.inverse(14)
        assert (f * g).cap(14) == TruncatedSeries.one(QQ, "x", 14)


def test_compose_power():
    f = TruncatedSeries.from_coeffs(QQ, [Fraction(i) for i in range(5)],
                                    var="x", prec=5)
    g = f.compose_power(3)
    assert g.coeff(3) == 1 and g.coeff(6) == 2 and g.coeff(1) == 0


def test_twistspec_combines_coeff_map_and_substitution():
    K = rational_field(3)
    th = K.gen()
    f = TruncatedSeries.from_coeffs(K, [th, th + 1], var="x", prec=8)
    tw = TwistSpec(lambda c: c.frobenius(), 3)
    g = tw.apply(f)
    assert g.coeff(0) == th ** 3
    assert g.coeff(3) == (th + 1) ** 3


def test_verify_funceq_geometric():
    # f = 1/(1-x) satisfies f(x^2) = f(x) / (1 + x)
    prec = 32
    one = TruncatedSeries.one(QQ, "x", prec)
    f = TruncatedSeries.from_coeffs(QQ, [Fraction(1)] * prec, var="x",
                                    prec=prec)
    den = TruncatedSeries.from_coeffs(QQ, [Fraction(1), Fraction(1)],
                                      var="x", prec=prec)
    holds, checked = verify_funceq(f, TwistSpec(None, 2), (one, den),
                                   TruncatedSeries.zero(QQ, "x", prec))
    assert holds and checked >= prec


def test_verify_funceq_detects_failure():
    prec = 16
    f = TruncatedSeries.from_coeffs(QQ, [Fraction(1)] * prec, var="x",
                                    prec=prec)
    a = TruncatedSeries.one(QQ, "x", prec)
    holds, _ = verify_funceq(f, TwistSpec(None, 2), a,
                             TruncatedSeries.zero(QQ, "x", prec))
    assert not holds


def test_newton_polygon_known():
    K = rational_field(3)
    th = K.gen()
    # x^0*theta^2 + x^2*theta^0 + x^3*theta^3: valuations -2, 0, -3
    f = TruncatedSeries.from_coeffs(K, [th ** 2, K.zero(), K.one(), th ** 3],
                                    var="x", prec=4)
    npg = newton_polygon(f)
    assert npg.vertices[0] == (0, -2)
    assert npg.vertices[-1] == (3, -3)


def test_newton_polygon_minkowski_additivity():
    # NP(f*g) = NP(f) + NP(g) for polynomials over F_q(theta)
    rng = random.Random(22)
    K = rational_field(3)
    for _ in range(CASES):
        fc = [K.random(rng, deg=2) for _ in range(rng.randrange(2, 5))]
        gc = [K.random(rng, deg=2) for _ in range(rng.randrange(2, 5))]
        if not (any(fc) and any(gc)):
            continue
        f = TruncatedSeries.from_coeffs(K, fc, var="x")
        g = TruncatedSeries.from_coeffs(K, gc, var="x")
        h = f * g
        assert newton_polygon(h) == newton_polygon(f).minkowski_sum(
            newton_polygon(g))


def test_cartier_digit_reconstruction():
    # f = sum_r x^r E_r(f)(x^q) with the coefficients raised to the q
    rng = random.Random(23)
    for q in (2, 3):
        B = GF(q)
        prec = 27
        twist = TwistSpec(lambda c: c ** q, q)
        for _ in range(CASES // 2):
            coeffs = [B.random(rng) for _ in range(prec)]
            f = TruncatedSeries.from_coeffs(B, coeffs, var="x", prec=prec)
            total = TruncatedSeries.zero(B, "x", prec)
            for r in range(q):
                er = cartier_digit(f, r, q=q)
                xr = TruncatedSeries.from_coeffs(B, [B.one()], var="x",
                                                 prec=prec, low=r)
                total = total + (twist.apply(er) * xr).cap(prec)
            win = prec - q
            assert total.cap(win) == f.cap(win)


def test_moore_determinant_vs_brute_force_dependence():
    # det((theta^j)^(q^i)) = 0 iff 1, theta, ..., theta^(s-1) are
    # F_q-linearly dependent
    import itertools
    rng = random.Random(24)
    for q in (2, 3):
        K = rational_field(q)
        B = K.base
        consts = list(B.elements())
        for _ in range(CASES // 4):
            s = rng.randrange(2, 4)
            # mix honest random elements with constants to hit both branches
            theta = (K.coerce(B.random(rng)) if rng.random() < 0.5
                     else K.random(rng, deg=1))
            d, witness = moore_det(theta, s, field=K)
            powers = [theta ** j for j in range(s)]
            dependent = False
            for combo in itertools.product(consts, repeat=s):
                if not any(combo):
                    continue
                acc = K.zero()
                for c, v in zip(combo, powers):
                    acc = acc + K.coerce(c) * v
                if not acc:
                    dependent = True
                    break
            assert (not d) == dependent
            if not d:
                acc = K.zero()
                for c, v in zip(witness, powers):
                    acc = acc + K.coerce(c) * v
                assert not acc


def test_eval_product():
    facs = [TruncatedSeries.from_coeffs(QQ, [Fraction(1), Fraction(-1)],
                                        var="x", prec=10)] * 2
    out = eval_product(facs, 10, field=QQ, var="x")
    assert out.coeff(1) == -2 and out.coeff(2) == 1


def test_parse_series():
    f = parse_series("1 + 2*x^3", QQ)
    assert f.coeff(0) == 1 and f.coeff(3) == 2


def test_phantom_zero_coefficients_are_exact():
    # the constructor strips zero coefficients; coeff() then returns the
    # exact zero of the field
    f = TruncatedSeries.from_coeffs(QQ, [Fraction(1), Fraction(0)],
                                    var="x", prec=8)
    assert f.coeff(1) == 0
    assert f.coeff(5) == 0


def test_sw_orbit_dimension_rational_series():
    # 1/(1-x) is fixed by every digit operator: orbit dimension 1
    B = GF(3)
    prec = 81
    f = TruncatedSeries.from_coeffs(B, [B.one()] * prec, var="x", prec=prec)
    dim, saturated = sw_orbit_dimension(f, 3, prec)
    assert dim == 1 and saturated
