"""Truncated Laurent expansions at the infinite place and their precision
tracking."""

import random

from mahlerforge.fields import rational_field
from mahlerforge.laurent import laurent_field, parse_laurent

CASES = 200


def geom_oracle(F, prec):
    """1/(theta-1) = theta^-1 + theta^-2 + ... by hand."""
    out = F.zero(prec)
    for k in range(1, prec):
        out = out + F.monomial(-k)
    return out


def test_expansion_matches_geometric_series():
    F = laurent_field(3)
    K = rational_field(3)
    th = K.gen()
    x = K.one() / (th - 1)
    assert F.from_ratfunc(x, prec=20) == geom_oracle(F, 20)


def test_from_ratfunc_is_a_ring_map():
    rng = random.Random(10)
    for q in (2, 3, 5):
        K = rational_field(q)
        F = laurent_field(q)
        for _ in range(CASES // 3 + 1):
            a = K.random(rng, deg=3)
            b = K.random(rng, deg=3)
            fa, fb = F.from_ratfunc(a, 24), F.from_ratfunc(b, 24)
            assert fa + fb == F.from_ratfunc(a + b, 24)
            assert fa * fb == F.from_ratfunc(a * b, 24)


def test_valuation_and_cap():
    F = laurent_field(2)
    x = F.monomial(3) + F.monomial(-5)
    assert x.valuation() == -3
    y = x.cap(2)
    assert y.prec == 2
    assert y.digit(5) == F.base.zero()
    assert y.digit(-3) == F.base.one()


def test_product_precision_rule():
    # prec(a*b) = min(prec(a) + v(b), prec(b) + v(a))
    F = laurent_field(3)
    a = (F.monomial(-2) + F.monomial(-4)).cap(10)
    b = (F.monomial(-3) + F.monomial(-5)).cap(7)
    assert (a * b).prec == min(10 + 3, 7 + 2)


def test_sum_precision_rule():
    F = laurent_field(3)
    a = F.monomial(-2).cap(10)
    b = F.monomial(-3).cap(7)
    assert (a + b).prec == 7


def test_frobenius_and_q_root_scale_precision():
    rng = random.Random(11)
    for q in (2, 3, 4):
        F = laurent_field(q)
        for _ in range(40):
            x = F.random(rng, lo=-3, rel=8)
            y = x.frobenius()
            assert y == x ** q
            if x.prec is not None:
                assert y.prec == q * x.prec
            r = y.q_root()
            assert r == x.cap(r.prec) if r.prec is not None else r == x


def test_q_root_inverts_frobenius_exactly_on_digits():
    F = laurent_field(3)
    x = F.monomial(-1) + F.monomial(-4, F.base.from_int(2))
    assert x.frobenius().q_root() == x


def test_inverse():
    rng = random.Random(12)
    F = laurent_field(3)
    for _ in range(60):
        x = F.random(rng, lo=-3, rel=10)
        if not x.digits:
            continue
        y = x.inverse()
        prod = x * y
        assert prod.digit(0) == F.base.one()
        assert prod.valuation() == 0 or prod == F.one()


def test_zero_to_precision_is_falsy():
    F = laurent_field(3)
    z = F.zero(16)
    assert not z
    assert z.valuation() is None
    assert z.prec == 16


def test_parse_laurent_round_trip():
    F = laurent_field(3)
    x = parse_laurent("theta^2 + 2*theta^-1", F)
    assert x == F.monomial(2) + F.monomial(-1, F.base.from_int(2))


def test_shift():
    F = laurent_field(5)
    x = F.one() + F.monomial(-2)
    assert x.shift(3) == F.monomial(3) + F.monomial(1)
