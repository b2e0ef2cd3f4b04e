"""Truncated Laurent series in 1/theta over F_q.

An element is sum_{i >= v} c_i * theta^(-i) known modulo O(theta^(-prec)):
digits are indexed by i from v (inclusive) to prec (exclusive).  prec=None
marks an exactly known Laurent polynomial.  The absolute value is
|x| = q^(-v) and deg_theta(x) = -v for the least index v with c_v != 0.
"""

import functools
import re

from .fields import GF, poly_trim


class TruncLaurent:
    __slots__ = ("field", "v", "digits", "prec")

    def __init__(self, field, v, digits, prec, normalize=True):
        if normalize:
            digits = list(digits)
            while digits and not digits[0]:
                digits.pop(0)
                v += 1
            if prec is not None:
                digits = digits[: max(0, prec - v)]
            while digits and not digits[-1]:
                digits.pop()
            if not digits:
                v = prec
        self.field = field
        self.v = v          # None only for the exact zero
        self.digits = digits
        self.prec = prec

    # -- helpers ---------------------------------------------------------
    def digit(self, i):
        if self.v is None or i < self.v or i - self.v >= len(self.digits):
            return self.field.base.zero()
        return self.digits[i - self.v]

    def known_to(self):
        return self.prec

    def valuation(self):
        """Least i with c_i nonzero, or None if zero to working precision."""
        return self.v if self.digits else None

    def deg_theta(self):
        val = self.valuation()
        if val is None:
            return None
        return -val

    def is_exact(self):
        return self.prec is None

    def __bool__(self):
        return bool(self.digits)

    def cap(self, prec):
        """Forget digits at indices >= prec."""
        if self.prec is not None and self.prec <= prec:
            return self
        v = self.v if self.v is not None else prec
        return TruncLaurent(self.field, v, self.digits, prec)

    # -- arithmetic -------------------------------------------------------
    def _coerced(self, other):
        try:
            return self.field.coerce(other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerced(other)
        if other is NotImplemented:
            return NotImplemented
        F = self.field
        prec = _minprec(self.prec, other.prec)
        if not self.digits:
            return other.cap(prec) if prec is not None else other
        if not other.digits:
            return self.cap(prec) if prec is not None else self
        v = min(self.v, other.v)
        top = max(self.v + len(self.digits), other.v + len(other.digits))
        if prec is not None:
            top = min(top, prec)
        digits = [self.digit(i) + other.digit(i) for i in range(v, top)]
        return TruncLaurent(F, v, digits, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncLaurent(self.field, self.v, [-c for c in self.digits], self.prec,
                            normalize=False)

    def __sub__(self, other):
        other = self._coerced(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerced(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerced(other)
        if other is NotImplemented:
            return NotImplemented
        F = self.field
        if (not self.digits and self.prec is None) or (not other.digits and other.prec is None):
            return TruncLaurent(F, None, [], None, normalize=False)
        sv = self.v if self.v is not None else self.prec
        ov = other.v if other.v is not None else other.prec
        prec = _minprec(None if self.prec is None else self.prec + ov,
                        None if other.prec is None else other.prec + sv)
        if not self.digits or not other.digits:
            return TruncLaurent(F, prec, [], prec)
        v = self.v + other.v
        n = len(self.digits) + len(other.digits) - 1
        if prec is not None:
            n = min(n, prec - v)
        out = [F.base.zero()] * n
        for i, a in enumerate(self.digits):
            if not a:
                continue
            jmax = min(len(other.digits), n - i)
            for j in range(jmax):
                b = other.digits[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncLaurent(F, v, out, prec)

    __rmul__ = __mul__

    def inverse(self, rel=None):
        if not self.digits:
            raise ZeroDivisionError("inverse of (apparent) zero laurent series")
        F = self.field
        if len(self.digits) == 1 and self.prec is None:
            return TruncLaurent(F, -self.v, [self.digits[0].inverse()], None)
        if rel is None:
            rel = (self.prec - self.v) if self.prec is not None else F.default_rel
        # invert the unit part 1 + u by power series division
        c0inv = self.digits[0].inverse()
        out = [F.base.zero()] * rel
        out[0] = c0inv
        for k in range(1, rel):
            acc = F.base.zero()
            for j in range(1, min(k, len(self.digits) - 1) + 1):
                acc = acc + self.digits[j] * out[k - j]
            out[k] = -c0inv * acc
        return TruncLaurent(F, -self.v, out, -self.v + rel)

    def __truediv__(self, other):
        other = self._coerced(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerced(other)
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
        try:
            other = self._coerced(other)
        except TypeError:
            return NotImplemented
        prec = _minprec(self.prec, other.prec)
        if prec is None:
            return self.v == other.v and self.digits == other.digits
        lo_cands = [x.v for x in (self, other) if x.v is not None]
        lo = min(lo_cands, default=prec)
        return all(self.digit(i) == other.digit(i) for i in range(lo, prec))

    def __hash__(self):
        raise TypeError("truncated laurent series are unhashable")

    # -- semilinear maps ---------------------------------------------------
    def shift(self, k):
        """Multiply by theta^k exactly."""
        return TruncLaurent(self.field, (self.v - k) if self.v is not None else None,
                            self.digits, None if self.prec is None else self.prec - k,
                            normalize=False)

    def frobenius(self, k=1):
        """x -> x^(q^k): digit indices scale by q^k (digits lie in F_q)."""
        if k < 0:
            return self.q_root(-k)
        m = self.field.base.q ** k
        if not self.digits:
            prec = None if self.prec is None else self.prec * m
            return TruncLaurent(self.field, prec, [], prec)
        n = (len(self.digits) - 1) * m + 1
        out = [self.field.base.zero()] * n
        for i, c in enumerate(self.digits):
            out[i * m] = c
        return TruncLaurent(self.field, self.v * m, out,
                            None if self.prec is None else self.prec * m)

    def q_root(self, k=1):
        """Inverse of frobenius; requires all digit indices divisible by q^k."""
        m = self.field.base.q ** k
        prec = None if self.prec is None else -(-self.prec // m)
        if not self.digits:
            return TruncLaurent(self.field, prec, [], prec)
        if self.v % m:
            raise ValueError("element has no q-th root at this precision")
        out = [self.field.base.zero()] * ((len(self.digits) - 1) // m + 1)
        for i, c in enumerate(self.digits):
            if i % m:
                if c:
                    raise ValueError("element has no q-th root at this precision")
            else:
                out[i // m] = c
        return TruncLaurent(self.field, self.v // m, out, prec)

    def __repr__(self):
        return self.field.elem_str(self)


def _minprec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LaurentField:
    """Handle for F_q((1/var)) with truncation bookkeeping."""

    def __init__(self, base, var="theta", default_rel=64):
        self.base = base          # an Fq handle
        self.var = var
        self.char = base.p
        self.q = base.q
        self.default_rel = default_rel

    def zero(self, prec=None):
        return TruncLaurent(self, prec, [], prec, normalize=False)

    def one(self):
        return TruncLaurent(self, 0, [self.base.one()], None, normalize=False)

    def gen(self):
        return TruncLaurent(self, -1, [self.base.one()], None, normalize=False)

    def monomial(self, k, c=None):
        """c * var^k, exact."""
        c = self.base.one() if c is None else c
        return TruncLaurent(self, -k, [c], None)

    def from_int(self, n):
        c = self.base.from_int(n)
        return TruncLaurent(self, 0, [c] if c else [], None)

    def coerce(self, x):
        if isinstance(x, TruncLaurent):
            if x.field is not self:
                raise TypeError("laurent series from a different field")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        try:
            c = self.base.coerce(x)
        except TypeError:
            if hasattr(x, "field") and getattr(x.field, "var", None) == self.var:
                return self.from_ratfunc(x)
            raise TypeError(f"cannot coerce {x!r} into {self!r}")
        return TruncLaurent(self, 0, [c] if c else [], None)

    def from_poly(self, coeffs, prec=None):
        """Polynomial in var (lowest degree first) as an exact element."""
        coeffs = poly_trim(list(coeffs))
        return TruncLaurent(self, -(len(coeffs) - 1) if coeffs else prec,
                            list(reversed(coeffs)), prec)

    def from_ratfunc(self, rf, prec=None):
        """Expand an element of F_q(var) at the infinite place."""
        num = self.from_poly(rf.num)
        den = self.from_poly(rf.den)
        if len(rf.den) == 1:
            out = num * TruncLaurent(self, 0, [rf.den[0].inverse()], None)
            return out.cap(prec) if prec is not None else out
        if not num.digits:
            return self.zero(prec)
        if prec is None:
            prec = self.default_rel
        rel = max(1, prec - num.v + den.v)  # so the product reaches abs prec
        return (num * den.inverse(rel=rel)).cap(prec)

    def random(self, rng, lo=-4, rel=8, prec=None):
        v = rng.randrange(lo, 2)
        digits = [self.base.random(rng) for _ in range(rel)]
        return TruncLaurent(self, v, digits, prec if prec is not None else v + rel)

    def elem_str(self, x):
        terms = []
        for i, c in enumerate(x.digits):
            if not c:
                continue
            k = -(x.v + i)
            cs = repr(c)
            if "+" in cs or "-" in cs[1:]:
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
            else:
                vs = self.var if k == 1 else f"{self.var}^{k}"
                terms.append(vs if cs == "1" else f"{cs}*{vs}")
        if x.prec is not None:
            terms.append(f"O({self.var}^{-x.prec})")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"F_{self.q}((1/{self.var}))"


@functools.lru_cache(maxsize=None)
def _laurent_cached(base, var):
    return LaurentField(base, var)


def laurent_field(q, var="theta"):
    base = q if hasattr(q, "p") else GF(q)
    return _laurent_cached(base, var)


def parse_laurent(text, field):
    """Parse "theta^-2 + theta^-5 + O(theta^-20)" syntax."""
    text = text.replace(" ", "")
    prec = None
    m = re.search(rf"\+?O\({re.escape(field.var)}\^(-?\d+)\)$", text)
    if m:
        prec = -int(m.group(1))
        text = text[: m.start()]
    out = field.zero(prec)
    text = re.sub(r"(?<!\^)-", "+-", text)
    for term in [t for t in text.split("+") if t]:
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        m = re.fullmatch(
            rf"(?:(\d+)\*?)?(?:{re.escape(field.var)}(?:\^(-?\d+))?)?", term)
        if not m or not term:
            raise ValueError(f"bad term {term!r}")
        cs, es = m.groups()
        c = field.base.from_int(int(cs)) if cs else field.base.one()
        if field.var in term:
            k = int(es) if es is not None else 1
        else:
            k = 0
        out = out + field.monomial(k, -c if neg else c)
    return out.cap(prec) if prec is not None else out
