"""Finite field extensions of K = F_q(theta) and of K_infinity, plus the
perfect closure wrapper giving p-power roots of exact elements.

An ExtField is base[X]/(m(X)) for a monic irreducible m; elements are
coefficient vectors in the power basis of the root.  The two extensions the
transcendence computations need are the Kummer extension K(zeta) with
zeta^(q-1) = -theta and the Artin-Schreier extension K(xi) with
xi^p - xi = theta; for both, the root has valuation -1/[E:K] at the
infinite place and the power basis has pairwise distinct valuations mod 1,
so valuations of elements can be read off coordinatewise.
"""

from fractions import Fraction
import functools

from .fields import (GF, RF, frac_field, poly_add, poly_divmod, poly_mul,
                     poly_neg, poly_sub, poly_trim, poly_stretch, poly_map)
from . import linalg


def _try_coerce(field, x):
    try:
        return field.coerce(x)
    except TypeError:
        return NotImplemented


class ExtElem:
    __slots__ = ("field", "vec")

    def __init__(self, field, vec):
        z = field.base.zero()
        vec = list(vec) + [z] * (field.degree - len(vec))
        self.field = field
        self.vec = vec

    def __add__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, [a + b for a, b in zip(self.vec, other.vec)])

    __radd__ = __add__

    def __neg__(self):
        return ExtElem(self.field, [-a for a in self.vec])

    def __sub__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        B = self.field.base
        prod = poly_mul(B, poly_trim(list(self.vec)), poly_trim(list(other.vec)))
        _, rem = poly_divmod(B, prod, self.field.modulus)
        return ExtElem(self.field, rem)

    __rmul__ = __mul__

    def inverse(self):
        B = self.field.base
        # extended euclid against the (irreducible) modulus
        r0, r1 = self.field.modulus, poly_trim(list(self.vec))
        if not r1:
            raise ZeroDivisionError("inverse of zero extension element")
        s0, s1 = [], [B.one()]
        while len(r1) > 1:
            q, r = poly_divmod(B, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_add(B, s0, poly_neg(poly_mul(B, q, s1)))
            if not r1:
                raise ZeroDivisionError("modulus not coprime with element")
        c = r1[0].inverse()
        return ExtElem(self.field, [c * x for x in s1])

    def __truediv__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return all(a == b for a, b in zip(self.vec, other.vec))

    def __bool__(self):
        return any(bool(a) for a in self.vec)

    def frobenius(self, k=1):
        """x -> x^(q^k) using additivity: root^(q^k) reduced mod the modulus."""
        B = self.field.base
        m = self.field.base_q ** k
        stretched = poly_stretch(B, poly_map(lambda c: c.frobenius(k),
                                             poly_trim(list(self.vec))), m)
        _, rem = poly_divmod(B, stretched, self.field.modulus)
        return ExtElem(self.field, rem)

    def valuation(self):
        """Valuation at infinity as a Fraction, None for (apparent) zero."""
        d = self.field.degree
        best = None
        for j, a in enumerate(self.vec):
            if not a:
                continue
            va = self.field._base_val(a) + Fraction(j, 1) * self.field.root_val
            if best is None or va < best:
                best = va
        return best

    def deg_theta(self):
        v = self.valuation()
        return None if v is None else -v

    def norm(self):
        """Field norm down to the base, via the multiplication matrix."""
        B = self.field.base
        d = self.field.degree
        cols = []
        basis = [ExtElem(self.field, [B.zero()] * j + [B.one()]) for j in range(d)]
        for b in basis:
            cols.append((self * b).vec)
        rows = [[cols[j][i] for j in range(d)] for i in range(d)]
        return linalg.det(_HandleShim(B), rows)

    def charpoly(self):
        """Characteristic polynomial of multiplication by self, as a monic
        coefficient list of length [E:base]+1 over the base field."""
        B = self.field.base
        d = self.field.degree
        basis = [ExtElem(self.field, [B.zero()] * j + [B.one()])
                 for j in range(d)]
        cols = [(self * b).vec for b in basis]
        # entry (i, j) of X*I - M, a linear polynomial in X over the base
        ent = [[poly_trim([-cols[j][i]] + ([B.one()] if i == j else []))
                for j in range(d)] for i in range(d)]

        def pdet(rows):
            n = len(rows)
            if n == 1:
                return rows[0][0]
            acc = []
            for i in range(n):
                if not rows[i][0]:
                    continue
                minor = [r[1:] for k, r in enumerate(rows) if k != i]
                term = poly_mul(B, rows[i][0], pdet(minor))
                acc = (poly_add(B, acc, term) if i % 2 == 0
                       else poly_sub(B, acc, term))
            return acc

        cp = pdet(ent)
        return list(cp) + [B.zero()] * (d + 1 - len(cp))

    def __repr__(self):
        name = self.field.name
        parts = []
        for j, a in enumerate(self.vec):
            if not a:
                continue
            s = repr(a)
            if ("+" in s or "-" in s[1:] or "/" in s) and j > 0:
                s = f"({s})"
            if j == 0:
                parts.append(s)
            else:
                head = name if j == 1 else f"{name}^{j}"
                parts.append(head if s == "1" else f"{s}*{head}")
        return " + ".join(parts) if parts else "0"


class _HandleShim:
    """Adapter so linalg helpers can treat any base handle uniformly."""

    def __init__(self, base):
        self._base = base

    def zero(self):
        return self._base.zero()

    def one(self):
        return self._base.one()


class ExtField:
    """base[X]/(modulus), with X printed as `name`."""

    def __init__(self, base, modulus, name, root_val):
        self.base = base
        self.modulus = list(modulus)       # monic, coefficients in base
        self.degree = len(modulus) - 1
        self.name = name
        self.root_val = root_val           # valuation of the root, a Fraction
        self.char = base.char
        self.base_q = getattr(base, "q", None)

    def _base_val(self, a):
        # works for RF over F_q(theta) (valuation = -degree) and TruncLaurent
        if hasattr(a, "deg_theta"):
            return Fraction(-a.deg_theta())
        d = a.degree()
        return Fraction(-d)

    def zero(self):
        return ExtElem(self, [])

    def one(self):
        return ExtElem(self, [self.base.one()])

    def gen(self):
        return ExtElem(self, [self.base.zero(), self.base.one()])

    def from_int(self, n):
        return ExtElem(self, [self.base.from_int(n)])

    def coerce(self, x):
        if isinstance(x, ExtElem):
            if x.field is not self:
                raise TypeError("element of a different extension")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        return ExtElem(self, [self.base.coerce(x)])

    def from_base(self, x):
        return ExtElem(self, [x])

    def random(self, rng, deg=2):
        return ExtElem(self, [self.base.random(rng, deg) for _ in range(self.degree)])

    def __repr__(self):
        return f"{self.base!r}({self.name})"


@functools.lru_cache(maxsize=None)
def kummer_extension(base_field):
    """K(zeta) or K_inf(zeta) with zeta^(q-1) = -theta."""
    B = base_field
    q = B.q
    theta = B.gen()
    mod = [theta] + [B.zero()] * (q - 2) + [B.one()]   # X^(q-1) + theta
    return ExtField(B, mod, "zeta", Fraction(-1, q - 1))


@functools.lru_cache(maxsize=None)
def artin_schreier_extension(base_field):
    """K(xi) with xi^p - xi = theta."""
    B = base_field
    p = B.char
    theta = B.gen()
    mod = [-theta, -B.one()] + [B.zero()] * (p - 2) + [B.one()]  # X^p - X - theta
    return ExtField(B, mod, "xi", Fraction(-1, p))


def ext_norm_abs(gamma):
    """log_q |gamma| = deg_theta(N(gamma)) / [E:K], as a Fraction.

    The valuation shortcut (distinct slopes on the power basis) gives the
    same answer; the norm route is kept as the primary definition.
    """
    n = gamma.norm()
    if hasattr(n, "deg_theta"):
        d = n.deg_theta()
    else:
        d = n.degree()
    if d is None:
        return None
    return Fraction(d, gamma.field.degree)


# ---------------------------------------------------------------------------
# perfect closure: formal p-power roots of exact elements

class PerfElem:
    """base_elem^(1/p^k), canonicalized so the depth k is minimal."""

    __slots__ = ("field", "base_elem", "k")

    def __init__(self, field, base_elem, k):
        while k > 0 and base_elem.is_p_power():
            base_elem = base_elem.p_root()
            k -= 1
        self.field = field
        self.base_elem = base_elem
        self.k = k

    def _lifted(self, k):
        p = self.field.char
        x = self.base_elem
        for _ in range(k - self.k):
            x = x ** p
        return x

    def __add__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        k = max(self.k, other.k)
        return PerfElem(self.field, self._lifted(k) + other._lifted(k), k)

    __radd__ = __add__

    def __neg__(self):
        return PerfElem(self.field, -self.base_elem, self.k)

    def __sub__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        k = max(self.k, other.k)
        return PerfElem(self.field, self._lifted(k) * other._lifted(k), k)

    __rmul__ = __mul__

    def inverse(self):
        return PerfElem(self.field, self.base_elem.inverse(), self.k)

    def __truediv__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return self.field.one()
        # powers by p just lower the root depth: with n = p^s * m, p not
        # dividing m, (a^(1/p^k))^n = (a^(p^(s-d) m))^(1/p^(k-d)) for
        # d = min(k, s); if the depth stays positive the exponent is then
        # coprime to p and the canonical form is preserved for free
        p = self.field.char
        s = 0
        m = n
        while m % p == 0:
            m //= p
            s += 1
        d = min(self.k, s)
        base = self.base_elem ** (m * p ** (s - d))
        if self.k - d > 0:
            out = PerfElem.__new__(PerfElem)
            out.field = self.field
            out.base_elem = base
            out.k = self.k - d
            return out
        return PerfElem(self.field, base, 0)

    def __eq__(self, other):
        try:
            other = self.field.coerce(other)
        except TypeError:
            return NotImplemented
        return self.k == other.k and self.base_elem == other.base_elem

    def __bool__(self):
        return bool(self.base_elem)

    def is_p_power(self):
        return True

    def p_root(self):
        return PerfElem(self.field, self.base_elem, self.k + 1)

    def q_root(self, steps=1):
        e = _base_e(self.field)
        return PerfElem(self.field, self.base_elem, self.k + e * steps)

    def frobenius(self, steps=1):
        if steps < 0:
            return self.q_root(-steps)
        e = _base_e(self.field)
        q = self.field.char ** e
        out = self
        for _ in range(steps):
            out = out ** q
        return out

    def in_base(self):
        return self.k == 0

    def map_base(self, fn):
        """Apply a field map of the base that commutes with p-th powers."""
        return PerfElem(self.field, fn(self.base_elem), self.k)

    def degree(self):
        """Degree (in the base variable) divided by p^k, as a Fraction."""
        d = self.base_elem.degree()
        if d is None:
            return None
        return Fraction(d, self.field.char ** self.k)

    def __repr__(self):
        if self.k == 0:
            return repr(self.base_elem)
        return f"({self.base_elem!r})^(1/{self.field.char ** self.k})"


def _base_e(perf):
    q = getattr(perf.base, "q", perf.char)
    e = 0
    while q > 1:
        q //= perf.char
        e += 1
    return max(e, 1)


class PerfClosure:
    """Handle for the perfect closure of an exact base field."""

    def __init__(self, base):
        self.base = base
        self.char = base.char

    def zero(self):
        return PerfElem(self, self.base.zero(), 0)

    def one(self):
        return PerfElem(self, self.base.one(), 0)

    def from_int(self, n):
        return PerfElem(self, self.base.from_int(n), 0)

    def from_base(self, x, k=0):
        return PerfElem(self, x, k)

    def coerce(self, x):
        if isinstance(x, PerfElem):
            if x.field is not self:
                raise TypeError("element of a different perfect closure")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        return PerfElem(self, self.base.coerce(x), 0)

    def random(self, rng, deg=2, maxk=2):
        return PerfElem(self, self.base.random(rng, deg), rng.randrange(maxk + 1))

    def __repr__(self):
        return f"Perf({self.base!r})"


@functools.lru_cache(maxsize=None)
def perfect_closure(base):
    return PerfClosure(base)
