"""Exact coefficient fields: F_q, and fraction fields F(var) built on top.

Elements carry a reference to their field handle and support the usual
operators.  Polynomials are plain python lists of field elements, lowest
degree first, with no trailing zeros (the zero polynomial is []).
"""

from fractions import Fraction
import functools
import random
import re

# ---------------------------------------------------------------------------
# prime-power finite fields

_BUILTIN_MODULI = {
    4: (1, 1, 1),            # z^2 + z + 1 over F_2
    8: (1, 1, 0, 1),         # z^3 + z + 1 over F_2
    9: (1, 0, 1),            # z^2 + 1 over F_3
    16: (1, 1, 0, 0, 1),     # z^4 + z + 1 over F_2
    25: (2, 0, 1),           # z^2 + 2 over F_5
    27: (1, 2, 0, 1),        # z^3 + 2z + 1 over F_3
}


def _factor_int(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out



def _try_coerce(field, x):
    try:
        return field.coerce(x)
    except TypeError:
        return NotImplemented


def _match_fields(a, b):
    """Coerce one operand into the other's field (towers nest upward)."""
    try:
        return a, a.field.coerce(b)
    except TypeError:
        pass
    if hasattr(b, "field"):
        try:
            return b.field.coerce(a), b
        except TypeError:
            pass
    return None

class FqElem:
    """Element of F_q, stored as a coefficient tuple over F_p."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    def __add__(self, other):
        other = _try_coerce(self.field, other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.rep, other.rep)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-a) % p for a in self.rep))

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
        return FqElem(self.field, self.field._mulrep(self.rep, other.rep))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self ** (self.field.q - 2)

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
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.field is other.field and self.rep == other.rep

    def __hash__(self):
        return hash((id(self.field), self.rep))

    def __bool__(self):
        return any(self.rep)

    def frobenius(self, k=1):
        """x -> x^(q^k); identity on F_q, kept for interface uniformity."""
        return self

    def p_root(self):
        """Unique p-th root (F_q is perfect): x^(1/p) = x^(p^(e-1))."""
        return self ** (self.field.p ** (self.field.e - 1))

    def is_p_power(self):
        return True

    def __repr__(self):
        return self.field.elem_str(self)


class Fq:
    """Handle for the finite field with q = p^e elements."""

    def __init__(self, p, e, modulus):
        self.p = p
        self.e = e
        self.q = p ** e
        self.char = p
        self.modulus = modulus  # tuple of e+1 ints over F_p, monic
        self._zero = FqElem(self, (0,) * e)
        self._one = FqElem(self, tuple([1] + [0] * (e - 1)))

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def gen(self):
        if self.e == 1:
            return self._one
        return FqElem(self, tuple([0, 1] + [0] * (self.e - 2)))

    def from_int(self, n):
        return FqElem(self, tuple([n % self.p] + [0] * (self.e - 1)))

    def coerce(self, x):
        if isinstance(x, FqElem):
            if x.field is not self:
                raise TypeError("element of a different field")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {x!r} into F_{self.q}")

    def _mulrep(self, a, b):
        p, e = self.p, self.e
        if e == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        # reduce by the monic modulus
        for i in range(2 * e - 2, e - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(e):
                    prod[i - e + j] = (prod[i - e + j] - c * self.modulus[j]) % p
        return tuple(prod[:e])

    def elements(self):
        """All q elements, in lexicographic order of coefficient tuples."""
        reps = [()]
        for _ in range(self.e):
            reps = [r + (c,) for r in reps for c in range(self.p)]
        return [FqElem(self, r) for r in reps]

    def random(self, rng):
        return FqElem(self, tuple(rng.randrange(self.p) for _ in range(self.e)))

    def elem_str(self, x):
        if self.e == 1:
            return str(x.rep[0])
        terms = []
        for i, c in enumerate(x.rep):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "z" if c == 1 else f"{c}*z"
                terms.append(head if i == 1 else f"{head}^{i}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"F_{self.q}"


def _is_irreducible(p, coeffs):
    """Irreducibility of a monic polynomial over F_p via x^(p^k) gcd tests."""
    e = len(coeffs) - 1
    F = GF(p)
    f = [F.from_int(c) for c in coeffs]
    x = [F.zero(), F.one()]
    xp = x
    for _ in range(e):
        xp = poly_powmod(F, xp, p, f)
    if poly_trim([a - b for a, b in zip_pad(F, xp, x)]):
        return False
    for ell in _factor_int(e):
        xq = x
        for _ in range(e // ell):
            xq = poly_powmod(F, xq, p, f)
        g = poly_gcd(F, poly_trim([a - b for a, b in zip_pad(F, xq, x)]), f)
        if len(g) > 1:
            return False
    return True


def _find_modulus(p, e):
    """Deterministic search for the lexicographically least irreducible monic."""
    def rec(prefix, k):
        if k == e:
            cand = prefix + [1]
            if _is_irreducible(p, cand):
                return cand
            return None
        for c in range(p):
            got = rec(prefix + [c], k + 1)
            if got is not None:
                return got
        return None

    return tuple(rec([], 0))


@functools.lru_cache(maxsize=None)
def _fq_cached(p, e, modulus):
    return Fq(p, e, modulus)


def GF(q=None, p=None, e=None, mod=None):
    """Field handle factory; GF(q) or GF(p=..., e=..., mod="z^2+1")."""
    if q is not None:
        fac = _factor_int(q)
        if len(fac) != 1:
            raise ValueError(f"{q} is not a prime power")
        (p, e), = fac.items()
    if e is None:
        e = 1
    qq = p ** e
    if mod is not None:
        if isinstance(mod, str):
            mod = _parse_int_poly(mod, p)
        mod = tuple(c % p for c in mod)
        if len(mod) != e + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not _is_irreducible(p, mod):
            raise ValueError("modulus is not irreducible")
    elif e == 1:
        mod = (0, 1)
    elif qq in _BUILTIN_MODULI:
        mod = _BUILTIN_MODULI[qq]
    else:
        mod = _find_modulus(p, e)
    return _fq_cached(p, e, tuple(mod))


def _parse_int_poly(text, p):
    """Parse "z^2+1" into a coefficient tuple over F_p, lowest degree first."""
    text = text.replace(" ", "").replace("-", "+-")
    coeffs = {}
    for term in text.split("+"):
        if not term:
            continue
        m = re.fullmatch(r"(-?\d*)\*?(z(\^(-?\d+))?)?", term)
        if not m:
            raise ValueError(f"bad term {term!r}")
        cs, var, _, exp = m.groups()
        c = int(cs) if cs not in ("", "-") else (-1 if cs == "-" else 1)
        k = 0 if var is None else (1 if exp is None else int(exp))
        coeffs[k] = (coeffs.get(k, 0) + c) % p
    deg = max(coeffs) if coeffs else 0
    return tuple(coeffs.get(i, 0) for i in range(deg + 1))


# ---------------------------------------------------------------------------
# generic dense polynomial helpers (lists over a field handle)

def poly_trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def zip_pad(F, a, b):
    n = max(len(a), len(b))
    z = F.zero()
    return zip(a + [z] * (n - len(a)), b + [z] * (n - len(b)))


def poly_add(F, a, b):
    return poly_trim([x + y for x, y in zip_pad(F, a, b)])


def poly_sub(F, a, b):
    return poly_trim([x - y for x, y in zip_pad(F, a, b)])


def poly_neg(a):
    return [-x for x in a]


def poly_scale(a, c):
    if not c:
        return []
    return poly_trim([c * x for x in a])


def poly_mul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero()] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return poly_trim(out)


def poly_divmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = b[-1].inverse()
    q = [F.zero()] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] * inv
        k = len(a) - len(b)
        if c:
            q[k] = c
            for i in range(len(b)):
                a[k + i] = a[k + i] - c * b[i]
        a.pop()
        poly_trim(a)
        if len(a) < len(b):
            break
        while a and not a[-1]:
            a.pop()
    return poly_trim(q), poly_trim(a)


def poly_gcd(F, a, b):
    if isinstance(F, FracField):
        return _poly_gcd_tower(F, a, b)
    a, b = list(a), list(b)
    while b:
        _, r = poly_divmod(F, a, b)
        a, b = b, r
    if a:
        inv = a[-1].inverse()
        a = [inv * x for x in a]
    return a


def _poly_gcd_tower(K, a, b):
    """gcd of polynomials with coefficients in a fraction field K = C(y).

    Plain Euclid explodes (Fibonacci-like growth of the inner rational
    functions), so clear denominators, strip contents, and run a pseudo
    remainder sequence whose coefficients stay polynomials over C.
    """
    C = K.base
    if not a:
        return _monic(K, list(b))
    if not b:
        return _monic(K, list(a))

    def to_prim(poly):
        den = [C.one()]
        for c in poly:
            if c:
                g = poly_gcd(C, den, c.den)
                den = poly_mul(C, poly_divmod(C, den, g)[0], c.den)
        nums = []
        for c in poly:
            if not c:
                nums.append([])
            else:
                extra = poly_divmod(C, den, c.den)[0]
                nums.append(poly_mul(C, c.num, extra))
        return _strip(nums)

    def _strip(nums):
        cont = []
        for n in nums:
            if n:
                cont = poly_gcd(C, cont, n) if cont else list(n)
            if len(cont) == 1:
                break
        if len(cont) > 1:
            nums = [poly_divmod(C, n, cont)[0] if n else n for n in nums]
        return nums

    def trim2(poly):
        while poly and not poly[-1]:
            poly.pop()
        return poly

    A, B = trim2(to_prim(a)), trim2(to_prim(b))
    if len(A) < len(B):
        A, B = B, A
    if len(B) == 1:
        return [K.one()]  # degree-0 divisor is a unit of K[x]
    # evaluation shortcut: a specialization with unit gcd certifies gcd = 1
    if _gcd_one_by_specialization(C, A, B):
        return [K.one()]
    while B:
        # pseudo-remainder of A by B, content-stripped at every step
        R = [list(c) for c in A]
        lb = B[-1]
        while len(R) >= len(B) and any(R):
            lr = R[-1]
            k = len(R) - len(B)
            g = poly_gcd(C, lr, lb)
            mr = poly_divmod(C, lb, g)[0]
            mb = poly_divmod(C, lr, g)[0]
            R = [poly_mul(C, mr, c) for c in R]
            for i in range(len(B)):
                R[k + i] = poly_sub(C, R[k + i], poly_mul(C, mb, B[i]))
            R.pop()
            trim2(R)
            R = _strip(R)
        A, B = B, _strip(trim2(R))
    return _monic(K, [RF(K, c, [C.one()]) for c in A])


def _gcd_one_by_specialization(C, A, B):
    """True if some evaluation of the inner variable proves gcd(A, B) = 1.

    Only usable for C = F_q (inner coefficients are FqElem); evaluation
    points where either leading coefficient vanishes are skipped.
    """
    if not isinstance(C, Fq):
        return False
    for pt in C.elements():
        la = poly_eval(C, A[-1], pt)
        lb = poly_eval(C, B[-1], pt)
        if not la or not lb:
            continue
        a = poly_trim([poly_eval(C, c, pt) for c in A])
        b = poly_trim([poly_eval(C, c, pt) for c in B])
        while b:
            _, r = _scalar_polydivmod(C, a, b)
            a, b = b, r
        if len(a) == 1:
            return True
    return False


def _scalar_polydivmod(C, a, b):
    return poly_divmod(C, a, b)


def _monic(K, poly):
    poly = poly_trim(poly)
    if poly and poly[-1] != K.one():
        inv = poly[-1].inverse()
        poly = [inv * c for c in poly]
    return poly


def poly_pow(F, a, n):
    out = [F.one()]
    base = a
    while n:
        if n & 1:
            out = poly_mul(F, out, base)
        base = poly_mul(F, base, base)
        n >>= 1
    return out


def poly_powmod(F, a, n, m):
    out = [F.one()]
    base = poly_divmod(F, a, m)[1]
    while n:
        if n & 1:
            out = poly_divmod(F, poly_mul(F, out, base), m)[1]
        base = poly_divmod(F, poly_mul(F, base, base), m)[1]
        n >>= 1
    return out


def poly_eval(F, a, x):
    out = F.zero()
    for c in reversed(a):
        out = out * x + c
    return out


def poly_deriv(F, a):
    p = F.char
    return poly_trim([(i % p) * a[i] for i in range(1, len(a))])


def poly_stretch(F, a, m):
    """a(var) -> a(var^m)."""
    if not a:
        return []
    out = [F.zero()] * ((len(a) - 1) * m + 1)
    for i, c in enumerate(a):
        out[i * m] = c
    return out


def poly_map(fn, a):
    return poly_trim([fn(c) for c in a])


def _monic_poly_is_ppow(p, a):
    return all((not c) or (i % p == 0 and c.is_p_power()) for i, c in enumerate(a))


def _monic_poly_proot(B, p, a):
    return [a[i * p].p_root() if a[i * p] else B.zero()
            for i in range((len(a) - 1) // p + 1)]


# ---------------------------------------------------------------------------
# factorization of univariate polynomials over F_q

def _poly_key(a):
    return (len(a), tuple(c.rep for c in a))


def _edf_split(F, f, d, rng):
    """Split a monic squarefree product of degree-d irreducibles over F_q."""
    if len(f) - 1 == d:
        return [f]
    q = F.q
    n = len(f) - 1
    while True:
        u = poly_trim([F.random(rng) for _ in range(n)])
        if len(u) <= 1:
            continue
        if F.p == 2:
            # trace map: sum of 2-power Frobenius iterates of u mod f
            v = poly_divmod(F, u, f)[1]
            acc = v
            for _ in range(d * F.e * 1 - 1):
                v = poly_divmod(F, poly_mul(F, v, v), f)[1]
                acc = poly_add(F, acc, v)
            g = poly_gcd(F, acc, f)
        else:
            w = poly_powmod(F, u, (q ** d - 1) // 2, f)
            g = poly_gcd(F, poly_sub(F, w, [F.one()]), f)
        if 0 < len(g) - 1 < n:
            rest = poly_divmod(F, f, g)[0]
            return _edf_split(F, g, d, rng) + _edf_split(F, rest, d, rng)


def _ddf(F, f, rng):
    """Distinct irreducible factors of a monic squarefree polynomial."""
    out = []
    r = f
    w = [F.zero(), F.one()]  # theta mod r
    d = 0
    while len(r) - 1 > 0 and 2 * (d + 1) <= len(r) - 1:
        d += 1
        w = poly_powmod(F, w, F.q, r)
        g = poly_gcd(F, poly_sub(F, w, [F.zero(), F.one()]), r)
        if len(g) - 1 > 0:
            out.extend(_edf_split(F, g, d, rng))
            r = poly_divmod(F, r, g)[0]
            w = poly_divmod(F, w, r)[1]
    if len(r) - 1 > 0:
        out.append(r)
    return out


def _distinct_irreducible_factors(F, a, rng):
    a = _monic(F, poly_trim(a))
    if len(a) <= 1:
        return []
    d = poly_deriv(F, a)
    if not d:
        # a = b^p; recurse on the p-th root
        b = _monic_poly_proot(F, F.p, a)
        return _distinct_irreducible_factors(F, b, rng)
    g = poly_gcd(F, a, d)
    found = _ddf(F, poly_divmod(F, a, g)[0], rng)
    if len(g) > 1:
        keys = {_poly_key(f) for f in found}
        for f in _distinct_irreducible_factors(F, g, rng):
            if _poly_key(f) not in keys:
                found.append(f)
                keys.add(_poly_key(f))
    return found


def factor_poly(F, a):
    """Factor a nonzero polynomial over F_q.

    Returns (unit, [(monic irreducible, multiplicity), ...]) with the
    factors sorted by degree then coefficients.  The probabilistic
    equal-degree split runs on a fixed seed so output is reproducible.
    """
    a = poly_trim(a)
    if not a:
        raise ZeroDivisionError("factor of the zero polynomial")
    unit = a[-1]
    work = _monic(F, a)
    rng = random.Random(0x1F2E3D)
    irr = sorted(_distinct_irreducible_factors(F, work, rng), key=_poly_key)
    out = []
    for f in irr:
        m = 0
        while True:
            quo, rem = poly_divmod(F, work, f)
            if rem:
                break
            work = quo
            m += 1
        out.append((f, m))
    return unit, out


# ---------------------------------------------------------------------------
# fraction fields F(var) over an arbitrary exact coefficient field

class RF:
    """Rational function num/den over a base field; den monic, gcd stripped."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den, reduce=True):
        if reduce:
            num, den = field._reduce(num, den)
        self.field = field
        self.num = num
        self.den = den

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        m = _match_fields(self, other)
        if m is None:
            return NotImplemented
        s, o = m
        if s is not self:
            return s + o
        other = o
        B = self.field.base
        if not self.num:
            return other
        if not other.num:
            return self
        d1, d2 = self.den, other.den
        if len(d1) == 1 and len(d2) == 1:
            return RF(self.field, poly_add(B, self.num, other.num),
                      [B.one()], reduce=False)
        g = poly_gcd(B, d1, d2) if (len(d1) > 1 and len(d2) > 1) else [B.one()]
        if len(g) == 1:
            num = poly_add(B, poly_mul(B, self.num, d2), poly_mul(B, other.num, d1))
            den = poly_mul(B, d1, d2)
            return self.field._normalized(num, den)
        d1g = poly_divmod(B, d1, g)[0]
        d2g = poly_divmod(B, d2, g)[0]
        t = poly_add(B, poly_mul(B, self.num, d2g), poly_mul(B, other.num, d1g))
        if not t:
            return self.field.zero()
        h = poly_gcd(B, t, g)
        if len(h) > 1:
            t = poly_divmod(B, t, h)[0]
            g = poly_divmod(B, g, h)[0]
        den = poly_mul(B, poly_mul(B, d1g, g), d2g)
        return self.field._normalized(t, den)

    __radd__ = __add__

    def __neg__(self):
        return RF(self.field, poly_neg(self.num), self.den, reduce=False)

    def __sub__(self, other):
        m = _match_fields(self, other)
        if m is None:
            return NotImplemented
        s, o = m
        return s + (-o)

    def __rsub__(self, other):
        m = _match_fields(self, other)
        if m is None:
            return NotImplemented
        s, o = m
        return o + (-s) if s is self else o - s

    def __mul__(self, other):
        m = _match_fields(self, other)
        if m is None:
            return NotImplemented
        s, o = m
        if s is not self:
            return s * o
        other = o
        B = self.field.base
        if not self.num or not other.num:
            return self.field.zero()
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if len(d2) > 1 and len(n1) > 1:
            g = poly_gcd(B, n1, d2)
            if len(g) > 1:
                n1 = poly_divmod(B, n1, g)[0]
                d2 = poly_divmod(B, d2, g)[0]
        if len(d1) > 1 and len(n2) > 1:
            g = poly_gcd(B, n2, d1)
            if len(g) > 1:
                n2 = poly_divmod(B, n2, g)[0]
                d1 = poly_divmod(B, d1, g)[0]
        return self.field._normalized(poly_mul(B, n1, n2), poly_mul(B, d1, d2))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return self.field._normalized(list(self.den), list(self.num))

    def __truediv__(self, other):
        m = _match_fields(self, other)
        if m is None:
            return NotImplemented
        s, o = m
        return s * o.inverse()

    def __rtruediv__(self, other):
        m = _match_fields(self, other)
        if m is None:
            return NotImplemented
        s, o = m
        return o * s.inverse() if s is self else o / s

    def __pow__(self, n):
        B = self.field.base
        if n < 0:
            return self.inverse() ** (-n)
        return RF(self.field, poly_pow(B, self.num, n), poly_pow(B, self.den, n), reduce=False)

    def __eq__(self, other):
        m = _match_fields(self, other)
        if m is None:
            return NotImplemented
        s, o = m
        if s is not self:
            return s == o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((id(self.field), tuple(self.num), tuple(self.den)))

    def __bool__(self):
        return bool(self.num)

    # -- structure ------------------------------------------------------
    def is_polynomial(self):
        return len(self.den) == 1

    def is_constant(self):
        return len(self.den) == 1 and len(self.num) <= 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0] if self.num else self.field.base.zero()

    def degree(self):
        """deg num - deg den; -inf is represented as None for the zero element."""
        if not self.num:
            return None
        return (len(self.num) - 1) - (len(self.den) - 1)

    def map_coeffs(self, fn):
        B = self.field.base
        return RF(self.field, poly_map(fn, self.num), poly_map(fn, self.den))

    def stretch(self, m):
        """Substitute var -> var^m, coefficients untouched."""
        B = self.field.base
        return RF(self.field, poly_stretch(B, self.num, m), poly_stretch(B, self.den, m))

    def eval(self, x):
        """Evaluate at a point of (an extension of) the base field."""
        B = self.field.base
        den = poly_eval(B, self.den, x) if len(self.den) > 1 else self.den[0]
        return poly_eval(B, self.num, x) / den

    def is_p_power(self):
        """Whether self lies in the subfield of p-th powers.

        A reduced fraction with monic denominator is a p-th power iff the
        lead coefficient, the monic numerator part, and the denominator are
        p-th powers separately (unique factorization in base[var]).
        """
        if not self.num:
            return True
        p = self.field.char
        lead = self.num[-1]
        if not lead.is_p_power():
            return False
        inv = lead.inverse()
        return (_monic_poly_is_ppow(p, [inv * c for c in self.num])
                and _monic_poly_is_ppow(p, self.den))

    def p_root(self):
        """The p-th root, when is_p_power() holds."""
        if not self.num:
            return self.field.zero()
        p = self.field.char
        lead = self.num[-1]
        inv = lead.inverse()
        croot = lead.p_root()
        num = [croot * c for c in _monic_poly_proot(self.field.base, p,
                                                    [inv * c for c in self.num])]
        den = _monic_poly_proot(self.field.base, p, self.den)
        return RF(self.field, num, den, reduce=False)

    def frobenius(self, k=1):
        """Full q-power Frobenius: coefficients^(q^k) and var -> var^(q^k)."""
        m = self.field.q ** k
        return RF(self.field,
                  poly_stretch(self.field.base, poly_map(lambda c: c.frobenius(k), self.num), m),
                  poly_stretch(self.field.base, poly_map(lambda c: c.frobenius(k), self.den), m),
                  reduce=False)

    def __repr__(self):
        return self.field.elem_str(self)


class FracField:
    """Handle for base(var), rational functions in one variable."""

    def __init__(self, base, var):
        self.base = base
        self.var = var
        self.char = base.char
        self.q = getattr(base, "q", None)
        self._zero = RF(self, [], [base.one()], reduce=False)
        self._one = RF(self, [base.one()], [base.one()], reduce=False)
        self._gen = RF(self, [base.zero(), base.one()], [base.one()], reduce=False)

    def _normalized(self, num, den):
        """Wrap an already-reduced pair, making the denominator monic."""
        B = self.base
        num, den = poly_trim(list(num)), poly_trim(list(den))
        if not num:
            return self._zero
        lead = den[-1]
        if lead != B.one():
            inv = lead.inverse()
            num = [inv * c for c in num]
            den = [inv * c for c in den]
        return RF(self, num, den, reduce=False)

    def _reduce(self, num, den):
        B = self.base
        num, den = poly_trim(list(num)), poly_trim(list(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return [], [B.one()]
        if len(den) == 1:
            if den[0] != B.one():
                inv = den[0].inverse()
                num = [inv * c for c in num]
            return num, [B.one()]
        g = poly_gcd(B, num, den)
        if len(g) > 1:
            num = poly_divmod(B, num, g)[0]
            den = poly_divmod(B, den, g)[0]
        lead = den[-1]
        if lead != B.one():
            inv = lead.inverse()
            num = [inv * c for c in num]
            den = [inv * c for c in den]
        return num, den

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def gen(self):
        return self._gen

    def from_int(self, n):
        c = self.base.from_int(n)
        return RF(self, [c] if c else [], [self.base.one()], reduce=False)

    def from_poly(self, coeffs):
        return RF(self, list(coeffs), [self.base.one()])

    def coerce(self, x):
        if isinstance(x, RF) and x.field is self:
            return x
        if isinstance(x, int):
            return self.from_int(x)
        try:
            c = self.base.coerce(x)
        except TypeError:
            raise TypeError(f"cannot coerce {x!r} into {self!r}")
        return RF(self, [c] if c else [], [self.base.one()], reduce=False)

    def random(self, rng, deg=2):
        num = [self.base.random(rng) for _ in range(rng.randrange(deg + 1) + 1)]
        den = []
        while not den:
            den = poly_trim([self.base.random(rng) for _ in range(rng.randrange(deg + 1) + 1)])
        if not poly_trim(list(num)):
            num = [self.base.one()]
        return RF(self, num, den)

    def poly_str(self, coeffs):
        terms = []
        for i, c in enumerate(coeffs):
            if not c:
                continue
            cs = repr(c)
            need_par = ("+" in cs or "-" in cs[1:]) and i > 0
            if need_par:
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
            elif cs == "1":
                terms.append(self.var if i == 1 else f"{self.var}^{i}")
            else:
                terms.append(f"{cs}*{self.var}" if i == 1 else f"{cs}*{self.var}^{i}")
        return " + ".join(terms) if terms else "0"

    def elem_str(self, x):
        if x.is_polynomial():
            return self.poly_str(x.num)
        return f"({self.poly_str(x.num)})/({self.poly_str(x.den)})"

    def __repr__(self):
        return f"{self.base!r}({self.var})"


@functools.lru_cache(maxsize=None)
def _frac_cached(base_key, var):
    base, = base_key
    return FracField(base, var)


def frac_field(base, var):
    return _frac_cached((base,), var)


def rational_field(q, var="theta"):
    """F_q(var), the base rational function field."""
    return frac_field(GF(q), var)


# ---------------------------------------------------------------------------
# parsing of element text syntax

def parse_field_spec(text):
    """Parse "q=9" or "p=3,e=2,mod=z^2+1" into an Fq handle."""
    parts = dict(kv.split("=", 1) for kv in text.replace(" ", "").split(","))
    if "q" in parts:
        return GF(int(parts["q"]))
    p = int(parts["p"])
    e = int(parts.get("e", 1))
    return GF(p=p, e=e, mod=parts.get("mod"))


def _tokenize_terms(text):
    text = text.replace(" ", "")
    text = re.sub(r"(?<!\^)-", "+-", text)
    if text.startswith("+"):
        text = text[1:]
    return [t for t in text.split("+") if t]


def parse_element(text, field):
    """Parse "theta^3+2*theta+1" (optionally "(..)/(..)" ) in a FracField."""
    text = text.strip()
    if text.startswith("(") and ")/(" in text and text.endswith(")"):
        ns, ds = text[1:-1].split(")/(", 1)
        return parse_element(ns, field) / parse_element(ds, field)
    if "/" in text and "(" not in text:
        ns, ds = text.split("/", 1)
        return parse_element(ns, field) / parse_element(ds, field)
    var = field.var
    B = field.base
    coeffs = {}
    for term in _tokenize_terms(text):
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        m = re.fullmatch(rf"(?:(\d+)\*?)?(?:{re.escape(var)}(?:\^(-?\d+))?)?", term)
        if not m or (m.group(1) is None and m.group(2) is None and var not in term):
            if not re.fullmatch(r"\d+", term):
                raise ValueError(f"bad term {term!r}")
        if re.fullmatch(r"\d+", term):
            c, k = B.from_int(int(term)), 0
        else:
            cs, es = m.groups()
            c = B.from_int(int(cs)) if cs else B.one()
            k = int(es) if es is not None else (1 if var in term else 0)
        if neg:
            c = -c
        if k < 0:
            raise ValueError("negative exponents belong to laurent syntax")
        coeffs[k] = coeffs.get(k, B.zero()) + c
    deg = max(coeffs) if coeffs else 0
    return field.from_poly([coeffs.get(i, B.zero()) for i in range(deg + 1)])


def parse_rational(text):
    """Parse an element of Q: integer, a/b, or decimal-free fraction."""
    return Fraction(text.replace(" ", ""))


# ---------------------------------------------------------------------------
# the rationals, wrapped in the same handle interface

class Rationals:
    """Field handle for Q with Fraction elements."""

    char = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def random(self, rng, bound=9):
        return Fraction(rng.randrange(-bound, bound + 1), rng.randrange(1, bound + 1))

    def elem_str(self, x):
        return str(x)

    def __repr__(self):
        return "Q"


QQ = Rationals()
