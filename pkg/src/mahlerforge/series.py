"""Truncated formal power series with twists, products, Newton polygons,
Cartier digit operators and Moore determinants."""

from fractions import Fraction

from .fields import FqElem, RF
from . import linalg


def _inv(c):
    f = getattr(c, "inverse", None)
    return f() if f is not None else 1 / c


def _min_prec(p1, p2):
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    return min(p1, p2)


class TruncatedSeries:
    """Series sum_{i>=low} c_i var^i known mod O(var^prec).

    prec=None means the series is an exact (Laurent) polynomial.  A
    negative low carries a finite polar part.
    """

    __slots__ = ("field", "var", "low", "coeffs", "prec")

    def __init__(self, field, var, low, coeffs, prec):
        coeffs = list(coeffs)
        # strip leading zeros
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            low += 1
        # strip tail zeros (the upper bound is carried by prec)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if prec is not None and coeffs:
            if low + len(coeffs) > prec:
                coeffs = coeffs[:prec - low]
                while coeffs and not coeffs[-1]:
                    coeffs.pop()
        if not coeffs:
            low = prec if prec is not None else 0
        self.field = field
        self.var = var
        self.low = low
        self.coeffs = coeffs
        self.prec = prec

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field, var="x", prec=None):
        return cls(field, var, 0, [], prec)

    @classmethod
    def one(cls, field, var="x", prec=None):
        return cls(field, var, 0, [field.one()], prec)

    @classmethod
    def gen(cls, field, var="x", prec=None):
        return cls(field, var, 1, [field.one()], prec)

    @classmethod
    def constant(cls, field, c, var="x", prec=None):
        return cls(field, var, 0, [field.coerce(c)], prec)

    @classmethod
    def from_coeffs(cls, field, coeffs, var="x", prec=None, low=0):
        return cls(field, var, low, [field.coerce(c) for c in coeffs], prec)

    # -- inspection ---------------------------------------------------

    def coeff(self, i):
        if i < self.low or i >= self.low + len(self.coeffs):
            return self.field.zero()
        return self.coeffs[i - self.low]

    def is_zero(self):
        return not self.coeffs

    def order(self):
        """Exponent of the first nonzero stored coefficient, or None."""
        return self.low if self.coeffs else None

    def degree_bound(self):
        return self.low + len(self.coeffs) - 1 if self.coeffs else None

    def cap(self, prec):
        return TruncatedSeries(self.field, self.var, self.low,
                               self.coeffs, _min_prec(self.prec, prec))

    def map_coeffs(self, fn, field=None):
        return TruncatedSeries(field or self.field, self.var, self.low,
                               [fn(c) for c in self.coeffs], self.prec)

    # -- arithmetic ---------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        try:
            c = self.field.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return TruncatedSeries(self.field, self.var, 0, [c], None)

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        prec = _min_prec(self.prec, other.prec)
        if not self.coeffs:
            return other.cap(prec) if prec is not None else other
        if not other.coeffs:
            return self.cap(prec) if prec is not None else self
        low = min(self.low, other.low)
        hi = max(self.low + len(self.coeffs), other.low + len(other.coeffs))
        out = [self.coeff(i) + other.coeff(i) for i in range(low, hi)]
        return TruncatedSeries(self.field, self.var, low, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.field, self.var, self.low,
                               [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            precs = []
            if self.prec is not None:
                precs.append(self.prec + (other.low if other.coeffs else 0))
            if other.prec is not None:
                precs.append(other.prec + (self.low if self.coeffs else 0))
            prec = min(precs) if precs else None
            return TruncatedSeries(self.field, self.var, 0, [], prec)
        precs = []
        if self.prec is not None:
            precs.append(self.prec + other.low)
        if other.prec is not None:
            precs.append(other.prec + self.low)
        prec = min(precs) if precs else None
        low = self.low + other.low
        if prec is None:
            n = len(self.coeffs) + len(other.coeffs) - 1
        else:
            n = min(len(self.coeffs) + len(other.coeffs) - 1, prec - low)
        zero = self.field.zero()
        out = [zero] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            jmax = min(len(other.coeffs), n - i)
            for j in range(jmax):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.field, self.var, low, out, prec)

    __rmul__ = __mul__

    def inverse(self, prec=None):
        """Multiplicative inverse, to the propagated relative precision."""
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a zero series")
        v = self.low
        rel = None if self.prec is None else self.prec - v
        if prec is not None:
            rel = prec + v if rel is None else min(rel, prec + v)
        if rel is None:
            if len(self.coeffs) == 1:
                return TruncatedSeries(self.field, self.var, -v,
                                       [_inv(self.coeffs[0])], None)
            raise ValueError("inverting a non-monomial exact series needs "
                             "a precision bound")
        c0inv = _inv(self.coeffs[0])
        out = [self.field.zero()] * rel
        if rel > 0:
            out[0] = c0inv
        for n in range(1, rel):
            acc = self.field.zero()
            for k in range(1, min(n, len(self.coeffs) - 1) + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out[n] = -c0inv * acc
        return TruncatedSeries(self.field, self.var, -v, out, rel - v)

    def __truediv__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse(prec=None if self.prec is None and
                                    other.prec is None else
                                    _min_prec(self.prec, other.prec))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = TruncatedSeries(self.field, self.var, 0, [self.field.one()],
                              self.prec if n == 0 else None)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def compose_power(self, d):
        """Substitute var -> var^d."""
        if d < 1:
            raise ValueError("exponent multiplier must be >= 1")
        if d == 1:
            return self
        zero = self.field.zero()
        out = []
        for i, c in enumerate(self.coeffs):
            if i:
                out.extend([zero] * (d - 1))
            out.append(c)
        prec = None if self.prec is None else self.prec * d
        return TruncatedSeries(self.field, self.var, self.low * d, out, prec)

    def derive(self):
        p = self.field.char
        out = [((self.low + i) % p if p else self.low + i) * c
               for i, c in enumerate(self.coeffs)]
        prec = None if self.prec is None else self.prec - 1
        return TruncatedSeries(self.field, self.var, self.low - 1,
                               out, prec)

    def __eq__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        prec = _min_prec(self.prec, other.prec)
        lo = min(self.low, other.low)
        hi = max(self.low + len(self.coeffs), other.low + len(other.coeffs))
        if prec is not None:
            hi = min(hi, prec)
        return all(self.coeff(i) == other.coeff(i) for i in range(lo, hi))

    def __hash__(self):
        raise TypeError("truncated series are unhashable")

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            e = self.low + i
            cs = self.field.elem_str(c) if hasattr(self.field, "elem_str") else str(c)
            if any(op in cs for op in "+-") and e != 0 and cs not in ("-1",):
                cs = f"({cs})"
            if e == 0:
                terms.append(cs)
            else:
                head = self.var if cs == "1" else f"{cs}*{self.var}"
                terms.append(head if e == 1 else f"{head}^{e}")
        body = " + ".join(terms) if terms else "0"
        if self.prec is not None:
            body += f" + O({self.var}^{self.prec})"
        return body


class TwistSpec:
    """Coefficient endomorphism sigma together with var -> var^d."""

    __slots__ = ("sigma", "d")

    def __init__(self, sigma=None, d=1):
        if d < 1:
            raise ValueError("exponent multiplier must be >= 1")
        self.sigma = sigma
        self.d = d

    def apply(self, f):
        g = f if self.sigma is None else f.map_coeffs(self.sigma)
        return g.compose_power(self.d)

    def compose(self, other):
        """self after other."""
        if self.sigma is None:
            sig = other.sigma
        elif other.sigma is None:
            sig = self.sigma
        else:
            mine, theirs = self.sigma, other.sigma
            sig = lambda c: mine(theirs(c))
        return TwistSpec(sig, self.d * other.d)


def series_arith(f, op, g=None, d=None):
    """Dispatcher: op in {add, mul, invert, compose_power, derive}."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "invert":
        return f.inverse()
    if op == "compose_power":
        return f.compose_power(d)
    if op == "derive":
        return f.derive()
    raise ValueError(f"unknown series operation {op!r}")


def eval_product(factors, prec, field=None, var="x"):
    """Product of a stream of series factors, each congruent 1 + higher
    order terms, consumed until the remaining factors are 1 mod O(var^prec).

    `factors` is an iterable of TruncatedSeries.  Term orders must
    strictly increase so the product stabilizes.  `field` is only needed
    for an empty stream.
    """
    out = None
    last_order = 0
    for fac in factors:
        if field is None:
            field = fac.field
            var = fac.var
        dev = fac - 1
        o = dev.order()
        if o is None or o >= prec:
            break
        if o <= last_order and last_order > 0:
            raise ValueError("factor orders do not increase; "
                             "product cannot stabilize")
        last_order = o
        fac = fac.cap(prec)
        out = fac if out is None else (out * fac).cap(prec)
    if out is None:
        if field is None:
            raise ValueError("empty product needs an explicit field")
        return TruncatedSeries.one(field, var, prec)
    return out.cap(prec)


def verify_funceq(f, twist, a, b):
    """Check twist(f) = a*f + b to the available precision.

    a and b may be TruncatedSeries, or (num, den) pairs of series to be
    cleared against a denominator with a zero at the origin.  Returns
    (holds, checked_prec).
    """
    tf = twist.apply(f)

    def unpack(u):
        if isinstance(u, tuple):
            return u
        return (u, None)

    anum, aden = unpack(a)
    bnum, bden = unpack(b)
    lhs = tf
    rhs_f = anum * f
    rhs_b = bnum
    if aden is not None:
        lhs = lhs * aden
        rhs_b = rhs_b * aden
    if bden is not None:
        lhs = lhs * bden
        rhs_f = rhs_f * bden
    diff = lhs - rhs_f - rhs_b
    checked = diff.prec
    if checked is None:
        checked = (diff.degree_bound() or 0) + 1
    return (diff.is_zero(), checked)


def order_of_vanishing(f):
    """Smallest exponent with a nonzero coefficient, or '>= prec'."""
    o = f.order()
    if o is not None:
        return o
    return f">= {f.prec}" if f.prec is not None else 0


# ---------------------------------------------------------------------------
# Newton polygons

def _coeff_valuation(c):
    """Valuation of a coefficient at the infinite place of its field."""
    if isinstance(c, FqElem):
        return Fraction(0)
    if isinstance(c, RF):
        return Fraction(-c.degree())
    if hasattr(c, "valuation"):
        return Fraction(c.valuation())
    raise TypeError(f"no valuation available for {type(c).__name__}")


class NewtonPolygon:
    """Lower convex hull of the points (exponent, valuation)."""

    __slots__ = ("vertices",)

    def __init__(self, points):
        pts = sorted(points)
        hull = []
        for p in pts:
            while len(hull) >= 2:
                (x1, y1), (x2, y2) = hull[-2], hull[-1]
                # pop the middle point when p is on or below its line
                if (x2 - x1) * (p[1] - y1) > (p[0] - x1) * (y2 - y1):
                    break
                hull.pop()
            # keep only the lowest point per exponent
            if hull and hull[-1][0] == p[0]:
                if p[1] < hull[-1][1]:
                    hull[-1] = p
                continue
            hull.append(p)
        self.vertices = hull

    def slopes(self):
        """List of (slope, horizontal length) along the lower hull."""
        out = []
        for (x1, y1), (x2, y2) in zip(self.vertices, self.vertices[1:]):
            out.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
        return out

    def root_valuations(self):
        """Each slope -s of length l contributes l roots of valuation s."""
        return [(-s, l) for s, l in self.slopes()]

    def minkowski_sum(self, other):
        x0 = self.vertices[0][0] + other.vertices[0][0]
        y0 = self.vertices[0][1] + other.vertices[0][1]
        segs = sorted(self.slopes() + other.slopes())
        pts = [(x0, y0)]
        x, y = Fraction(x0), Fraction(y0)
        for s, l in segs:
            x, y = x + l, y + s * l
            pts.append((x, y))
        return NewtonPolygon(pts)

    def __eq__(self, other):
        if not isinstance(other, NewtonPolygon):
            return NotImplemented
        mine = [(Fraction(x), Fraction(y)) for x, y in self.vertices]
        theirs = [(Fraction(x), Fraction(y)) for x, y in other.vertices]
        return mine == theirs

    def __repr__(self):
        return f"NewtonPolygon({self.vertices!r})"


def newton_polygon(f, lo=None, hi=None):
    """Newton polygon of the stored coefficient range of f."""
    pts = []
    for i, c in enumerate(f.coeffs):
        e = f.low + i
        if lo is not None and e < lo:
            continue
        if hi is not None and e > hi:
            continue
        if c:
            pts.append((e, _coeff_valuation(c)))
    if not pts:
        raise ValueError("no nonzero coefficients in the requested range")
    return NewtonPolygon(pts)


# ---------------------------------------------------------------------------
# Cartier digit operators and the Sharif-Woodcock orbit

def _field_q(field):
    f = field
    while not hasattr(f, "q"):
        f = getattr(f, "base", None)
        if f is None:
            raise TypeError("cannot locate the finite base field")
    return f.q


def _q_root(c):
    if hasattr(c, "q_root"):
        return c.q_root()
    if isinstance(c, FqElem):
        return c  # x^q = x on F_q
    raise TypeError(f"coefficients of type {type(c).__name__} have no "
                    "q-th roots; use a perfect representation")


def cartier_digit(f, r, q=None):
    """Digit operator E_r with f = sum_{r<q} var^r E_r(f)^q."""
    if q is None:
        q = _field_q(f.field)
    if not 0 <= r < q:
        raise ValueError("digit index out of range")
    hi = f.low + len(f.coeffs)
    # first integer i with q*i + r >= f.low
    lo_i = -((f.low - r) // -q)
    out = []
    i = lo_i
    while q * i + r < hi:
        out.append(_q_root(f.coeff(q * i + r)))
        i += 1
    prec = None
    if f.prec is not None:
        prec = -((f.prec - r) // -q)  # ceil((prec - r)/q)
    return TruncatedSeries(f.field, f.var, lo_i, out, prec)


def _echelon_insert(basis, vec, zero):
    """Reduce vec against the echelon basis; insert if independent."""
    v = list(vec)
    for pivot, row in basis:
        c = v[pivot]
        if c:
            for j in range(pivot, len(v)):
                v[j] = v[j] - c * row[j]
    for j, c in enumerate(v):
        if c:
            inv = _inv(c)
            row = [zero] * j + [inv * x for x in v[j:]]
            basis.append((j, row))
            basis.sort(key=lambda t: t[0])
            return True
    return False


def sw_orbit_dimension(f, depth_bound, prec):
    """Dimension of the span of the digit-operator orbit of f.

    The orbit is explored to word length depth_bound on truncations at a
    working precision, so the returned dimension is a lower bound.
    Returns (dimension, saturated).
    """
    q = _field_q(f.field)
    work = max(prec // (q ** depth_bound), 1)
    zero = f.field.zero()

    def vec(g):
        return [g.coeff(i) for i in range(work)]

    basis = []
    f = f.cap(prec)
    if not _echelon_insert(basis, vec(f), zero):
        return (0, True)
    level = [f]
    saturated = False
    for _ in range(depth_bound):
        nxt = []
        for g in level:
            for r in range(q):
                h = cartier_digit(g, r, q)
                if _echelon_insert(basis, vec(h), zero):
                    nxt.append(h)
        if not nxt:
            saturated = True
            break
        level = nxt
    return (len(basis), saturated)


# ---------------------------------------------------------------------------
# Moore determinants

def _frob_iter(x, k, q):
    if hasattr(x, "frobenius"):
        return x.frobenius(k)
    return x ** (q ** k)


def moore_det(theta, s, field=None):
    """Moore determinant of 1, theta, ..., theta^(s-1).

    Returns (det, witness): the determinant of the matrix with entries
    (theta^j)^(q^i), and an F_q-linear dependence vector when it is zero.
    """
    if s < 1:
        raise ValueError("Moore matrix size must be >= 1")
    field = field or theta.field
    q = _field_q(field)
    powers = [field.one()]
    for _ in range(1, s):
        powers.append(powers[-1] * theta)
    rows = [[_frob_iter(pj, i, q) for pj in powers] for i in range(s)]
    d = linalg.det(field, rows)
    if d:
        return (d, None)
    ker = linalg.kernel_basis(field, rows, s)
    if ker:
        v = ker[0]
        piv = next(x for x in v if x)
        v = [_inv(piv) * x for x in v]
        if all(_frob_iter(x, 1, q) == x for x in v):
            return (d, v)
    # fall back to brute force over F_q combinations
    Fq_handle = field
    while not hasattr(Fq_handle, "elements"):
        Fq_handle = Fq_handle.base
    combos = [[]]
    for _ in range(s):
        combos = [c + [e] for c in combos for e in Fq_handle.elements()]
    for c in combos:
        if not any(c):
            continue
        acc = field.zero()
        for cj, pj in zip(c, powers):
            acc = acc + field.coerce(cj) * pj
        if not acc:
            return (d, [field.coerce(cj) for cj in c])
    raise ArithmeticError("zero Moore determinant without a dependence "
                          "vector; inconsistent arithmetic")


# ---------------------------------------------------------------------------
# parsing

def parse_series(text, field, var="x"):
    """Parse literals like '1 - x + x^3 + O(x^8)'."""
    import re as _re
    text = text.replace(" ", "")
    prec = None
    m = _re.search(rf"\+?O\({var}\^(-?\d+)\)$", text)
    if m:
        prec = int(m.group(1))
        text = text[:m.start()]
    text = text.rstrip("+")
    coeffs = {}
    if text and text not in ("0",):
        for term in _re.sub(r"(?<!\^)-", "+-", text).split("+"):
            if not term:
                continue
            neg = term.startswith("-")
            if neg:
                term = term[1:]
            if var in term:
                head, _, tail = term.partition(var)
                head = head.rstrip("*")
                e = int(tail[1:]) if tail.startswith("^") else 1
                c = field.one() if head == "" else field.coerce(int(head))
            else:
                e = 0
                c = field.coerce(int(term))
            if neg:
                c = -c
            coeffs[e] = coeffs.get(e, field.zero()) + c
    if not coeffs:
        return TruncatedSeries.zero(field, var, prec)
    lo, hi = min(coeffs), max(coeffs)
    return TruncatedSeries(field, var, lo,
                           [coeffs.get(i, field.zero())
                            for i in range(lo, hi + 1)], prec)
