"""Absolute logarithmic heights and Liouville lower bounds over Q and over
K = F_q(theta), with exact symbolic log values and a product-formula check."""

from fractions import Fraction
import math

from .fields import (RF, FqElem, factor_poly, poly_trim, poly_gcd,
                     poly_divmod, poly_deriv)
from .extensions import ExtElem, PerfElem
from .series import NewtonPolygon


class HeightValue:
    """Exact symbolic value sum_i r_i * log(n_i), r_i rational, n_i int > 0.

    Comparisons are carried out on exact integers by exponentiating both
    sides; the float approximation carries a stated error bound.
    """

    __slots__ = ("terms",)
    ERROR = Fraction(1, 2 ** 32)

    def __init__(self, terms=None):
        clean = {}
        for n, r in (terms or {}).items():
            n = int(n)
            r = Fraction(r)
            if n <= 0:
                raise ValueError("log of a non-positive integer")
            if n == 1 or r == 0:
                continue
            clean[n] = clean.get(n, Fraction(0)) + r
        self.terms = {n: r for n, r in clean.items() if r}

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def log(cls, n, r=1):
        return cls({n: Fraction(r)})

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, HeightValue):
            return NotImplemented
        t = dict(self.terms)
        for n, r in other.terms.items():
            t[n] = t.get(n, Fraction(0)) + r
        return HeightValue(t)

    __radd__ = __add__

    def __neg__(self):
        return HeightValue({n: -r for n, r in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, HeightValue):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return HeightValue({n: r * c for n, r in self.terms.items()})

    __rmul__ = __mul__

    def _sign(self):
        """Exact sign of the value, by integer comparison."""
        if not self.terms:
            return 0
        d = math.lcm(*(r.denominator for r in self.terms.values()))
        pos, neg = 1, 1
        for n, r in self.terms.items():
            a = int(r * d)
            if a > 0:
                pos *= n ** a
            else:
                neg *= n ** (-a)
        return (pos > neg) - (pos < neg)

    def is_zero(self):
        return not self.terms

    def _cmp_other(self, other):
        if isinstance(other, int) and other == 0:
            return HeightValue.zero()
        if isinstance(other, HeightValue):
            return other
        return None

    def __eq__(self, other):
        o = self._cmp_other(other)
        if o is None:
            return NotImplemented
        return (self - o)._sign() == 0

    def __le__(self, other):
        o = self._cmp_other(other)
        if o is None:
            return NotImplemented
        return (self - o)._sign() <= 0

    def __lt__(self, other):
        o = self._cmp_other(other)
        if o is None:
            return NotImplemented
        return (self - o)._sign() < 0

    def __ge__(self, other):
        o = self._cmp_other(other)
        if o is None:
            return NotImplemented
        return (self - o)._sign() >= 0

    def __gt__(self, other):
        o = self._cmp_other(other)
        if o is None:
            return NotImplemented
        return (self - o)._sign() > 0

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def numeric(self):
        return float(sum(float(r) * math.log(n) for n, r in self.terms.items()))

    def exact_str(self):
        if not self.terms:
            return "0"
        parts = []
        for n in sorted(self.terms):
            r = self.terms[n]
            parts.append(f"log({n})" if r == 1 else f"{r}*log({n})")
        return " + ".join(parts)

    def __repr__(self):
        return self.exact_str()


# ---------------------------------------------------------------------------
# heights over Q

def height_Q(point):
    """Absolute logarithmic height of a projective tuple of rationals.

    A single rational x is treated as the affine point (1 : x), so
    h(0) = 0 and h(p/q) = log max(|p|, |q|).
    """
    if not isinstance(point, (tuple, list)):
        point = (1, point)
    fracs = [Fraction(x) for x in point]
    if not any(fracs):
        raise ValueError("height of the zero tuple")
    d = math.lcm(*(f.denominator for f in fracs))
    ints = [abs(int(f * d)) for f in fracs]
    g = math.gcd(*ints)
    return HeightValue.log(max(ints) // g)


def length_Q(coeffs):
    """Length (sum of absolute coefficient values) of a Q-polynomial."""
    return sum(abs(Fraction(c)) for c in coeffs)


# ---------------------------------------------------------------------------
# heights over K = F_q(theta)

def _primitive_A_poly(coeffs):
    """Scale K-coefficients to coprime A-coefficients (lists over F_q)."""
    K = None
    for c in coeffs:
        if isinstance(c, RF):
            K = c.field
            break
    if K is None:
        raise TypeError("expected rational-function coefficients")
    B = K.base
    coeffs = [K.coerce(c) for c in coeffs]
    den = [B.one()]
    from .fields import poly_mul
    for c in coeffs:
        if len(c.den) > 1 or c.den[0] != B.one():
            g = poly_gcd(B, den, c.den)
            den = poly_mul(B, den, poly_divmod(B, c.den, g)[0])
    nums = []
    for c in coeffs:
        n = poly_mul(B, c.num, poly_divmod(B, den, c.den)[0])
        nums.append(poly_trim(n))
    content = []
    for n in nums:
        content = poly_gcd(B, content, n) if content else n
        if len(content) == 1:
            break
    if len(content) > 1:
        nums = [poly_divmod(B, n, content)[0] for n in nums]
    return nums


def _charpoly_height_data(coeffs, q):
    """(h(alpha), degree) from a power of the primitive minimal polynomial."""
    nums = _primitive_A_poly(coeffs)
    deg = len(nums) - 1
    lead_deg = len(nums[-1]) - 1
    pts = [(i, Fraction(-(len(n) - 1))) for i, n in enumerate(nums) if n]
    hull = NewtonPolygon(pts)
    total = Fraction(lead_deg)
    for s, l in hull.slopes():
        # slope s over length l gives l roots of valuation -s, |root| = q^s
        total += l * max(Fraction(0), s)
    return (HeightValue.log(q, Fraction(total, deg)), deg)


def height_K(alpha, minpoly=None):
    """Absolute logarithmic height over K, an exact multiple of log q."""
    if isinstance(alpha, FqElem):
        return HeightValue.zero()
    if isinstance(alpha, PerfElem):
        return height_K(alpha.base_elem) * Fraction(1, alpha.field.char ** alpha.k)
    if isinstance(alpha, RF):
        q = alpha.field.q
        if not alpha:
            return HeightValue.zero()
        return HeightValue.log(q, max(len(alpha.num), len(alpha.den)) - 1)
    if isinstance(alpha, ExtElem):
        q = alpha.field.base.q
        cp = alpha.charpoly()
        if minpoly is not None:
            d = len(minpoly) - 1
            D = len(cp) - 1
            if D % d:
                raise ValueError("supplied minimal polynomial has the wrong "
                                 "degree (reducible?)")
            # charpoly must be a power of the minimal polynomial
            K = alpha.field.base
            from .fields import poly_pow
            mono = [K.coerce(c) for c in minpoly]
            inv = mono[-1].inverse()
            mono = [inv * c for c in mono]
            if poly_pow(K, mono, D // d) != [K.coerce(c) for c in cp]:
                raise ValueError("supplied polynomial is not the minimal "
                                 "polynomial of the element (reducible or "
                                 "not vanishing)")
        h, _ = _charpoly_height_data(cp, q)
        return h
    raise TypeError(f"no height defined for {type(alpha).__name__}")


def separable_degree(coeffs, p):
    """Separable degree of the (power of the) minimal polynomial.

    Writes the polynomial as g(X^{p^s}) with maximal s, then strips
    repeated roots from g.  Coefficients over a field with poly_gcd
    support.
    """
    K = None
    for c in coeffs:
        if hasattr(c, "field"):
            K = c.field
            break
    coeffs = poly_trim(list(coeffs))
    while True:
        if all(not c for i, c in enumerate(coeffs) if i % p):
            coeffs = poly_trim([coeffs[i] for i in range(0, len(coeffs), p)])
        else:
            break
    d = poly_deriv(K, coeffs)
    if d:
        g = poly_gcd(K, coeffs, d)
        if len(g) > 1:
            coeffs = poly_divmod(K, coeffs, g)[0]
    return len(coeffs) - 1


def liouville_bound(beta, degree=None):
    """Lower bound for log|beta|: -(separable degree) * h(beta).

    Over Q pass degree=[L:Q]; over K the separable degree is computed
    from the element when not supplied.
    """
    if isinstance(beta, (int, Fraction)):
        if beta == 0:
            raise ZeroDivisionError("Liouville bound of zero")
        return -(degree or 1) * height_Q(beta)
    if isinstance(beta, PerfElem):
        # p-power roots are purely inseparable over the base element's field
        return liouville_bound(beta.base_elem, degree)
    if isinstance(beta, RF):
        if not beta:
            raise ZeroDivisionError("Liouville bound of zero")
        return -(degree or 1) * height_K(beta)
    if isinstance(beta, ExtElem):
        if not beta:
            raise ZeroDivisionError("Liouville bound of zero")
        if degree is None:
            cp = [beta.field.base.coerce(c) for c in beta.charpoly()]
            degree = separable_degree(cp, beta.field.char)
        return -degree * height_K(beta)
    raise TypeError(f"no Liouville bound for {type(beta).__name__}")


def height_poly_value_bound(h_P, degree_height_pairs):
    """Upper bound h(P) + sum_i deg_{X_i}(P) * h(alpha_i)."""
    out = h_P
    for d, h in degree_height_pairs:
        out = out + d * h
    return out


def coeff_height_K(coeffs):
    """Projective height of a tuple of K-elements (e.g. the coefficient
    vector of an auxiliary polynomial)."""
    nums = _primitive_A_poly(coeffs)
    q = None
    for c in coeffs:
        if isinstance(c, RF):
            q = c.field.q
    deg = max((len(n) - 1 for n in nums if n), default=0)
    return HeightValue.log(q, deg)


# ---------------------------------------------------------------------------
# the product formula over K

class PlaceDecomposition:
    """Local log-absolute-values of a K-element over all places."""

    __slots__ = ("places",)

    def __init__(self, places):
        self.places = list(places)  # (place id, local degree, HeightValue)

    def total(self):
        out = HeightValue.zero()
        for _, _, v in self.places:
            out = out + v
        return out

    def is_balanced(self):
        return self.total().is_zero()

    def __repr__(self):
        rows = ", ".join(f"{pid}: {v!r}" for pid, _, v in self.places)
        return f"PlaceDecomposition({rows})"


def verify_product_formula(alpha):
    """Decompose log|alpha| over every place of K; the sum must vanish."""
    if not isinstance(alpha, RF) or not alpha:
        raise (ZeroDivisionError if isinstance(alpha, RF) else TypeError)(
            "product formula needs a nonzero rational function")
    K = alpha.field
    B = K.base
    q = K.q
    places = [("infinity", 1, HeightValue.log(q, alpha.degree()))]
    orders = {}
    keys = {}
    for poly, sign in ((alpha.num, 1), (alpha.den, -1)):
        if len(poly_trim(list(poly))) == 1:
            continue
        _, facs = factor_poly(B, list(poly))
        for f, m in facs:
            kid = K.poly_str(f)
            keys[kid] = f
            orders[kid] = orders.get(kid, 0) + sign * m
    for kid, o in sorted(orders.items()):
        if o:
            d = len(keys[kid]) - 1
            places.append((f"({kid})", d, HeightValue.log(q, -o * d)))
    return PlaceDecomposition(places)
