"""Carlitz module arithmetic over F_q(theta).

Brackets and factorials, the Carlitz exponential and logarithm, zeta values,
the period pi_tilde, Bernoulli numbers, the Omega series over a Kummer
extension of F_q((1/theta)), polylogarithms, the deformation series attached
to them, and twisted-polynomial (Drinfeld) actions.
"""

import itertools
from fractions import Fraction

from .auxpoly import _binom_mod
from .extensions import ExtElem, artin_schreier_extension, ext_norm_abs, kummer_extension
from .fields import rational_field
from .laurent import laurent_field
from .series import TruncatedSeries, TwistSpec, eval_product


class SpecialValue:
    """A truncated value together with how it was produced."""

    __slots__ = ("value", "tag", "prec")

    def __init__(self, value, tag, prec):
        self.value = value
        self.tag = tag
        self.prec = prec

    def __repr__(self):
        return f"{self.tag} = {self.value!r}"


class CarlitzContext:
    """Cached brackets [i] = theta^(q^i) - theta and the derived factorials.

    D_i = [i] * D_(i-1)^q and L_i = [i] * L_(i-1), with D_0 = L_0 = 1.
    """

    def __init__(self, q):
        self.K = q if hasattr(q, "gen") else rational_field(q)
        self.q = self.K.q
        self.p = self.K.char
        self.laurent = laurent_field(self.K.base, self.K.var)
        self._brackets = [None]
        self._D = [self.K.one()]
        self._L = [self.K.one()]

    def bracket(self, i):
        if i < 1:
            raise ValueError("brackets are indexed from 1")
        B = self.K.base
        while len(self._brackets) <= i:
            n = len(self._brackets)
            coeffs = [B.zero(), -B.one()] + [B.zero()] * (self.q ** n - 2) + [B.one()]
            self._brackets.append(self.K.from_poly(coeffs))
        return self._brackets[i]

    def D(self, i):
        while len(self._D) <= i:
            n = len(self._D)
            self._D.append(self.bracket(n) * self._D[n - 1] ** self.q)
        return self._D[i]

    def L(self, i):
        while len(self._L) <= i:
            n = len(self._L)
            self._L.append(self.bracket(n) * self._L[n - 1])
        return self._L[i]

    def gamma(self, n):
        """Gamma(n) = prod D_i^(n_i) over the base-q digits n_i of n - 1."""
        if n < 1:
            raise ValueError("gamma is defined for n >= 1")
        out = self.K.one()
        m, i = n - 1, 0
        while m:
            m, r = divmod(m, self.q)
            if r:
                out = out * self.D(i) ** r
            i += 1
        return out

    def __repr__(self):
        return f"CarlitzContext(q={self.q})"


# ---------------------------------------------------------------------------
# exponential, logarithm, polylogarithms

def _value_valuation(z):
    """Valuation (as a Fraction) of a TruncLaurent or ExtElem value."""
    if hasattr(z, "valuation"):
        v = z.valuation()
        return None if v is None else Fraction(v)
    raise TypeError(f"cannot take the valuation of {z!r}")


def _qpow_sum(ctx, z, prec, coeff_of, sign_of):
    """sum_i sign_of(i) * z^(q^i) * coeff_of(i), stopping past the precision.

    coeff_of(i) must return an exact element of K whose expansion is used as
    a scalar; z is a TruncLaurent or an ExtElem over the Laurent field.
    """
    q = ctx.q
    vz = _value_valuation(z)
    if vz is None:
        return z
    out = None
    i = 0
    while True:
        c = coeff_of(i)
        vc = -c.degree()
        if q ** i * vz + vc >= prec:
            break
        pad = max(0, -(q ** i) * min(0, vz))
        scal = ctx.laurent.from_ratfunc(c, prec=prec + int(pad) + 1)
        term = z.frobenius(i) * scal
        if not sign_of(i):
            term = -term
        out = term if out is None else out + term
        i += 1
    if out is None:
        out = z - z
    return _cap_value(out, prec)


def _cap_value(z, prec):
    if isinstance(z, ExtElem):
        return ExtElem(z.field, [a.cap(prec) for a in z.vec])
    return z.cap(prec)


def _series_qpow_sum(ctx, f, prec, coeff_of, sign_of):
    q = ctx.q
    lo = f.order()
    if lo is None or lo < 1:
        raise ValueError("series argument must have positive order")
    out = TruncatedSeries.zero(f.field, var=f.var, prec=prec)
    i = 0
    while q ** i * lo < prec:
        term = (f ** (q ** i)).cap(prec) * coeff_of(i)
        if not sign_of(i):
            term = -term
        out = out + term
        i += 1
    return out


def carlitz_exp(ctx, z, prec):
    """e_Car(z) = sum_i z^(q^i) / D_i, truncated past the target precision."""
    coeff = lambda i: ctx.K.one() / ctx.D(i)
    if isinstance(z, TruncatedSeries):
        return _series_qpow_sum(ctx, z, prec, coeff, lambda i: True)
    val = _qpow_sum(ctx, z, prec, coeff, lambda i: True)
    return SpecialValue(val, "carlitz_exp", prec)


def carlitz_log(ctx, z, prec):
    """log_Car(z) = sum_i (-1)^i z^(q^i) / L_i; needs deg(z) < q/(q-1)."""
    coeff = lambda i: ctx.K.one() / ctx.L(i)
    sign = lambda i: i % 2 == 0
    if isinstance(z, TruncatedSeries):
        return _series_qpow_sum(ctx, z, prec, coeff, sign)
    v = _value_valuation(z)
    if v is not None and -v >= Fraction(ctx.q, ctx.q - 1):
        raise ValueError("log argument outside the convergence domain")
    val = _qpow_sum(ctx, z, prec, coeff, sign)
    return SpecialValue(val, "carlitz_log", prec)


def polylog(ctx, s, z, prec):
    """Li_s(z) = sum_i (-1)^(i s) z^(q^i) / L_i^s; needs deg(z) < sq/(q-1)."""
    if s < 1:
        raise ValueError("polylog index must be positive")
    v = _value_valuation(z)
    if v is not None and -v >= Fraction(s * ctx.q, ctx.q - 1):
        raise ValueError("polylog argument outside the convergence domain")
    coeff = lambda i: ctx.K.one() / ctx.L(i) ** s
    sign = lambda i: (i * s) % 2 == 0
    if isinstance(z, TruncatedSeries):
        return _series_qpow_sum(ctx, z, prec, coeff, sign)
    val = _qpow_sum(ctx, z, prec, coeff, sign)
    return SpecialValue(val, f"polylog({s})", prec)


# ---------------------------------------------------------------------------
# zeta values

def zeta(ctx, n, prec):
    """zeta(n) = sum over monic a of a^(-n), to O(theta^-prec).

    The degree-d block S_d(n) is computed by the recursion obtained from the
    bijection a = theta*g + c (g monic of degree d-1, c a constant):

        S_d(n) = -sum_{j>0, (q-1)|j} binom(-n, j) theta^(-n-j) S_(d-1)(n+j),

    which costs polynomially in prec instead of the q^d cost of enumeration.
    """
    if n < 1:
        raise ValueError("zeta is evaluated at positive integers")
    F = ctx.laurent
    q, p = ctx.q, ctx.p
    memo = {}

    def block(d, m):
        if d == 0:
            return F.one().cap(prec)
        key = (d, m)
        if key not in memo:
            acc = F.zero(prec)
            j = q - 1
            while d * (m + j) < prec:
                # binom(-m, j) = (-1)^j binom(m+j-1, j); overall minus sign
                c = _binom_mod(m + j - 1, j, p)
                if j % 2 == 0:
                    c = (p - c) % p
                if c:
                    term = F.monomial(-(m + j), F.base.from_int(c)) * block(d - 1, m + j)
                    acc = acc + term
                j += q - 1
            memo[key] = acc.cap(prec)
        return memo[key]

    total = F.one().cap(prec)
    d = 1
    while d * n < prec:
        total = total + block(d, n)
        d += 1
    return SpecialValue(total, f"zeta({n})", prec)


def zeta_monic_sum(ctx, n, dmax, prec=None):
    """Direct enumeration oracle: sum a^(-n) over monic a of degree <= dmax.

    Costs q^dmax; the degree-d block has valuation >= n*d.
    """
    F = ctx.laurent
    K = ctx.K
    if prec is None:
        prec = n * (dmax + 1)
    total = F.zero(prec)
    elems = list(ctx.K.base.elements())
    for d in range(dmax + 1):
        for tail in itertools.product(elems, repeat=d):
            a = K.from_poly(list(tail) + [K.base.one()])
            total = total + F.from_ratfunc(a ** (-n), prec=prec)
    return SpecialValue(total, f"zeta({n}) (enumeration)", prec)


# ---------------------------------------------------------------------------
# the period and Omega

def _complement_product(ctx, prec):
    """prod_{i>=1} (1 - theta^(1-q^i)) in K_inf, exact to O(theta^-prec)."""
    F = ctx.laurent
    q = ctx.q
    prod = F.one()
    i = 1
    while q ** i - 1 <= prec:
        prod = prod * (F.one() - F.monomial(1 - q ** i))
        i += 1
    return prod.cap(prec)


def pi_tilde(ctx, prec, representation="power"):
    """The Carlitz period, up to the usual F_q^x ambiguity.

    representation="power": pi_tilde^(q-1) = -theta^q * prod(1-theta^(1-q^i))^-(q-1)
    as an element of K_inf.  representation="kummer": pi_tilde itself, as a
    coordinate vector over the basis 1, zeta_theta, ..., zeta_theta^(q-2) of
    K_inf(zeta_theta) with zeta_theta^(q-1) = -theta.  For q = 2 the power
    representation already is pi_tilde = theta^2 * prod(1+theta^(1-2^i))^-1.
    """
    F = ctx.laurent
    q = ctx.q
    prod = _complement_product(ctx, prec + q + 1)
    if representation == "power":
        val = -(F.monomial(q) * prod.inverse(rel=prec + q) ** (q - 1))
        tag = "pi_tilde" if q == 2 else f"pi_tilde^{q - 1}"
        return SpecialValue(val.cap(prec), tag, prec)
    if representation == "kummer":
        E = kummer_extension(F)
        vec = [F.zero(prec)] * E.degree
        if E.degree == 1:
            # q = 2: zeta = -theta, so theta * zeta = theta^2 in characteristic 2
            vec[0] = (F.monomial(2) * prod.inverse(rel=prec + 2)).cap(prec)
        else:
            vec[1] = (F.monomial(1) * prod.inverse(rel=prec + 2)).cap(prec)
        return SpecialValue(ExtElem(E, vec), "pi_tilde", prec)
    raise ValueError(f"unknown representation {representation!r}")


def kummer_frobenius(x, k=1):
    return x.frobenius(k)


def kummer_q_root(x):
    """The q-th root in K_inf(zeta_theta): since zeta^q = -theta*zeta, the
    element sum b_j zeta^j has q-th power sum b_j^q (-theta)^j zeta^j."""
    E = x.field
    out = []
    for j, a in enumerate(x.vec):
        c = a.shift(-j)
        if j % 2:
            c = -c
        out.append(c.q_root())
    return ExtElem(E, out)


def omega(ctx, tprec, prec):
    """Omega(t) = zeta_theta^(-q) * prod_{i>=1}(1 - t/theta^(q^i)) as a
    series in t over the Kummer extension of K_inf."""
    F = ctx.laurent
    q = ctx.q
    E = kummer_extension(F)
    # zeta^(-q) = theta^(-2) * zeta^(q-2), from zeta^(2q-2) = theta^2
    pref = [F.zero(prec)] * E.degree
    pref[(q - 2) % E.degree] = F.monomial(-2).cap(prec)
    out = TruncatedSeries.constant(E, ExtElem(E, pref), var="t", prec=tprec)
    i = 1
    while q ** i <= prec:
        fac = TruncatedSeries.from_coeffs(
            E, [E.one(), -E.from_base(F.monomial(-(q ** i)))], var="t", prec=tprec)
        out = out * fac
        i += 1
    return out.map_coeffs(lambda c: _cap_value(c, prec))


def omega_at_theta(ctx, prec):
    """Omega evaluated at t = theta, as an element of K_inf(zeta_theta);
    satisfies Omega(theta) * pi_tilde = -1 for the normalizations used here."""
    F = ctx.laurent
    q = ctx.q
    E = kummer_extension(F)
    prod = _complement_product(ctx, prec + 2)
    vec = [F.zero(prec)] * E.degree
    vec[(q - 2) % E.degree] = (F.monomial(-2) * prod).cap(prec)
    return SpecialValue(ExtElem(E, vec), "omega(theta)", prec)


# ---------------------------------------------------------------------------
# Bernoulli numbers

def bernoulli_carlitz(ctx, n, cap=4096):
    """B_n from z/e_Car(z) = sum_n B_n z^n / Gamma(n+1), exact in K."""
    if n < 0:
        raise ValueError("negative index")
    if n >= cap:
        raise ValueError("index beyond the configured cap")
    K = ctx.K
    coeffs = [K.zero()] * (n + 1)
    i = 0
    while ctx.q ** i - 1 <= n:
        coeffs[ctx.q ** i - 1] = K.one() / ctx.D(i)
        i += 1
    f = TruncatedSeries.from_coeffs(K, coeffs, var="z", prec=n + 1)
    g = f.inverse(n + 1)
    return g.coeff(n) * ctx.gamma(n + 1)


# ---------------------------------------------------------------------------
# deformation series over K: the x-expansion family

def f_de(ctx, prec, var="x"):
    """prod_{n>=1} (1 - theta x^(q^n)), satisfying f(x^q) = f(x)/(1-theta*x^q)."""
    K, q = ctx.K, ctx.q
    theta = K.gen()
    facs = []
    n = 1
    while q ** n < prec:
        facs.append(TruncatedSeries.from_coeffs(
            K, [K.one()] + [K.zero()] * (q ** n - 1) + [-theta], var=var, prec=prec))
        n += 1
    return eval_product(facs, prec, field=K, var=var)


def f_de2(ctx, prec, var="x"):
    """prod_{n>=1} (1 - theta^(-1) x^(q^n))."""
    K, q = ctx.K, ctx.q
    c = -(K.one() / K.gen())
    facs = []
    n = 1
    while q ** n < prec:
        facs.append(TruncatedSeries.from_coeffs(
            K, [K.one()] + [K.zero()] * (q ** n - 1) + [c], var=var, prec=prec))
        n += 1
    return eval_product(facs, prec, field=K, var=var)


def x_lift(ctx, beta, prec, var="u"):
    """beta(theta) with theta replaced by x, expanded at x = infinity in the
    variable u = 1/x (exponent k of x becomes order -k)."""
    K = ctx.K
    beta = K.coerce(beta)
    num = TruncatedSeries.from_coeffs(
        K, [K.coerce(c) for c in reversed(beta.num)], var=var,
        prec=prec, low=-(len(beta.num) - 1))
    if len(beta.den) == 1:
        return num.cap(prec)
    den = TruncatedSeries.from_coeffs(
        K, [K.coerce(c) for c in reversed(beta.den)], var=var,
        prec=prec, low=-(len(beta.den) - 1))
    return (num * den.inverse(prec)).cap(prec)


def F_s_beta(ctx, s, beta, prec, var="u"):
    """F_(s,beta)(x) = beta~(x) + sum_i (-1)^(is) beta~(x)^(q^i) /
    ((x^q-theta)^s ... (x^(q^i)-theta)^s), as a series in u = 1/x over K.

    Substituting x = theta gives Li_s(beta); needs deg(beta) < sq/(q-1).
    The functional equation carries the sign of the denominators:
    F(x^q) = (-1)^s (x^q - theta)^s (F(x) - beta~(x)).
    """
    K, q = ctx.K, ctx.q
    beta = K.coerce(beta)
    dbeta = beta.degree()
    if dbeta is not None and dbeta >= Fraction(s * q, q - 1):
        raise ValueError("beta outside the convergence domain")
    theta = K.gen()
    imax = 1
    while s * (q * (q ** imax - 1) // (q - 1)) - q ** imax * (dbeta or 0) < prec:
        imax += 1
    wprec = prec + q ** imax * max(dbeta or 0, 0)
    out = x_lift(ctx, beta, wprec, var=var)
    deninv = TruncatedSeries.one(K, var=var, prec=wprec)
    for i in range(1, imax):
        # (x^(q^i) - theta)^(-s) = u^(s q^i) (1 - theta u^(q^i))^(-s)
        g = TruncatedSeries.from_coeffs(
            K, [K.one()] + [K.zero()] * (q ** i - 1) + [-theta], var=var, prec=wprec)
        shift = TruncatedSeries.from_coeffs(K, [K.one()], var=var,
                                            prec=wprec + s * q ** i, low=s * q ** i)
        deninv = (deninv * (g.inverse(wprec) ** s) * shift).cap(wprec)
        term = x_lift(ctx, beta.frobenius(i), wprec, var=var) * deninv
        if (i * s) % 2:
            term = -term
        out = out + term.cap(prec)
    return out.cap(prec)


def F_s_0(ctx, s, prec, var="u"):
    """The beta = 0 companion: F_(s,0)(x) = (-x)^(sq/(q-1)) *
    prod_{i>=1} (1 - theta/x^(q^i))^(-s).

    Returns (e, g) with e = sq/(q-1) as a Fraction and g the series in
    u = 1/x over K, so that F_(s,0)(x) = (-1)^e x^e g(1/x) whenever e is an
    integer; F_(s,0)(theta) = pi_tilde^s.
    """
    K, q = ctx.K, ctx.q
    theta = K.gen()
    out = TruncatedSeries.one(K, var=var, prec=prec)
    i = 1
    while q ** i < prec:
        g = TruncatedSeries.from_coeffs(
            K, [K.one()] + [K.zero()] * (q ** i - 1) + [-theta], var=var, prec=prec)
        out = (out * g.inverse(prec) ** s).cap(prec)
        i += 1
    return Fraction(s * q, q - 1), out


def F_s_0_at_theta(ctx, s, prec):
    """F_(s,0)(theta) in K_inf, defined when (q-1) | s; equals pi_tilde^s."""
    q = ctx.q
    if s % (q - 1):
        raise ValueError("theta-value lives in K_inf only when (q-1) | s")
    F = ctx.laurent
    e = s * q // (q - 1)
    prod = _complement_product(ctx, prec + e + 1)
    val = F.monomial(e) * prod.inverse(rel=prec + e) ** s
    if e % 2:
        val = -val
    return SpecialValue(val.cap(prec), f"F_{s},0(theta)", prec)


def F_tilde_beta(ctx, beta, prec, var="u"):
    """F~_beta(x) = beta~(x) + sum_n (-1)^n beta~(x^(q^n)) /
    prod_{j=1..n} (x^(q^(j+1)) - x^(q^j) - theta), as a series in u = 1/x.

    Satisfies F~_beta(x^q) = (theta - x^(q^2) + x^q)(F~_beta(x) - beta~(x)),
    and F~_beta(xi) = log_Car(beta(xi)) for xi with xi^p - xi = theta.
    """
    K, q = ctx.K, ctx.q
    beta = K.coerce(beta)
    dbeta = beta.degree() or 0
    theta = K.gen()
    bt = x_lift(ctx, beta, prec, var=var)
    out = bt
    deninv = TruncatedSeries.one(K, var=var, prec=prec)
    n = 1
    while True:
        lead = sum(q ** (j + 1) for j in range(1, n + 1)) - q ** n * dbeta
        if lead >= prec:
            break
        # (x^(q^(n+1)) - x^(q^n) - theta)^(-1)
        #   = u^(q^(n+1)) (1 - u^(q^(n+1)-q^n) - theta u^(q^(n+1)))^(-1)
        coeffs = [K.zero()] * (q ** (n + 1) + 1)
        coeffs[0] = K.one()
        coeffs[q ** (n + 1) - q ** n] = -K.one()
        coeffs[q ** (n + 1)] = -theta
        g = TruncatedSeries.from_coeffs(K, coeffs, var=var, prec=prec)
        shift = TruncatedSeries.from_coeffs(K, [K.one()], var=var,
                                            prec=prec + q ** (n + 1), low=q ** (n + 1))
        deninv = (deninv * g.inverse(prec) * shift).cap(prec + lead)
        term = bt.compose_power(q ** n).cap(prec) * deninv
        if n % 2:
            term = -term
        out = out + term.cap(prec)
        n += 1
    return out.cap(prec)


def L_beta(ctx, beta, tprec, prec):
    """L_beta(t) = beta + sum_i (-1)^i beta^(q^i) /
    ((theta^q - t)...(theta^(q^i) - t)), a series in t with K_inf coefficients.

    L_beta(theta) = log_Car(beta); needs deg(beta) < q/(q-1), i.e. <= 1.
    Satisfies L_beta(t) = beta + tau(L_beta)(t) / (t - theta^q) with tau the
    coefficientwise q-power.
    """
    F = ctx.laurent
    K, q = ctx.K, ctx.q
    beta = K.coerce(beta)
    dbeta = beta.degree()
    if dbeta is not None and dbeta >= Fraction(q, q - 1):
        raise ValueError("beta outside the convergence domain")
    out = TruncatedSeries.constant(F, F.from_ratfunc(beta, prec=prec), var="t",
                                   prec=tprec)
    deninv = TruncatedSeries.one(F, var="t", prec=tprec)
    i = 1
    while True:
        lead = q * (q ** i - 1) // (q - 1) - q ** i * (dbeta or 0)
        if lead >= prec:
            break
        # (theta^(q^i) - t)^(-1) = sum_k t^k theta^(-q^i (k+1))
        fac = TruncatedSeries.from_coeffs(
            F, [F.monomial(-(q ** i) * (k + 1)) for k in range(tprec)],
            var="t", prec=tprec)
        deninv = deninv * fac
        bi = F.from_ratfunc(beta.frobenius(i), prec=prec + q ** i * max(dbeta or 0, 0))
        term = deninv * bi
        if i % 2:
            term = -term
        out = out + term
        i += 1
    return out.map_coeffs(lambda c: c.cap(prec))


# ---------------------------------------------------------------------------
# the phi/psi pair of Anderson-twisted products

def phi_psi(vartheta, tau, prec, var="x"):
    """phi(x) = prod_{n>=0} (1 + tau^n(vartheta) x^(q^n)) and
    psi(x) = sum_k vartheta_0...vartheta_k x^(1+q+...+q^k), with
    vartheta_i = tau^i(vartheta), both truncated to x-order prec.

    phi satisfies (1 + vartheta*x) * T(phi) = phi for the twist T acting as
    tau on coefficients and x -> x^q.  psi collects the terms of phi whose
    exponents have a single block of base-q digits starting at 0; summing
    T^j(psi) therefore only recovers the single-block part of phi - 1 and
    misses x^(1+q^2) already.  The full decomposition sorts terms by
    lowest digit instead: phi - 1 = sum_j T^j(phi_shell) with
    phi_shell = vartheta * x * T(phi).
    """
    F = vartheta.field
    q = F.q
    facs = []
    th = vartheta
    n = 0
    while q ** n < prec:
        if n:
            th = tau(th)
        facs.append(TruncatedSeries.from_coeffs(
            F, [F.one()] + [F.zero()] * (q ** n - 1) + [th], var=var, prec=prec))
        n += 1
    phi = eval_product(facs, prec, field=F, var=var)
    return phi, _psi_series(vartheta, tau, prec, var=var)


def phi_shell(vartheta, tau, prec, var="x"):
    """vartheta * x * T(phi): the part of phi - 1 with lowest digit 0, so
    that phi - 1 = sum_{j>=0} T^j(phi_shell)."""
    phi, _ = phi_psi(vartheta, tau, prec, var=var)
    F = vartheta.field
    x = TruncatedSeries.from_coeffs(F, [F.one()], var=var, prec=prec, low=1)
    return (x * vartheta * TwistSpec(tau, F.q).apply(phi)).cap(prec)


def _psi_series(vartheta, tau, prec, var="x"):
    F = vartheta.field
    q = F.q
    psi = TruncatedSeries.zero(F, var=var, prec=prec)
    run = vartheta
    th = vartheta
    k = 0
    while (q ** (k + 1) - 1) // (q - 1) < prec:
        e = (q ** (k + 1) - 1) // (q - 1)
        psi = psi + TruncatedSeries.from_coeffs(F, [run], var=var, prec=prec, low=e)
        th = tau(th)
        run = run * th
        k += 1
    return psi


def phi_coeffs(vartheta, tau, prec):
    """Coefficient dictionary of phi: c_j = prod vartheta_i^(j_i) over the
    base-q digits j_i of j, zero when some digit exceeds 1."""
    F = vartheta.field
    q = F.q
    towers = [vartheta]
    out = {0: F.one()}
    for j in range(1, prec):
        digits = []
        m = j
        while m:
            m, r = divmod(m, q)
            digits.append(r)
        if any(d > 1 for d in digits):
            continue
        while len(towers) < len(digits):
            towers.append(tau(towers[-1]))
        c = F.one()
        for i, d in enumerate(digits):
            if d:
                c = c * towers[i]
        out[j] = c
    return out


# ---------------------------------------------------------------------------
# twisted polynomials and the Drinfeld action

class TauPoly:
    """sum c_i tau^i acting by c_0 x + c_1 x^q + ... (tau c = c^q tau)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = coeffs

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            x = self.coeffs[i] if i < len(self.coeffs) else None
            y = other.coeffs[i] if i < len(other.coeffs) else None
            out.append(y if x is None else (x if y is None else x + y))
        return TauPoly(out)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return TauPoly([])
        out = {}
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            for j, d in enumerate(other.coeffs):
                if not d:
                    continue
                term = c * d.frobenius(i)
                out[i + j] = out[i + j] + term if i + j in out else term
        n = max(out) + 1
        z = next(iter(out.values()))
        return TauPoly([out.get(i, z - z) for i in range(n)])

    def apply(self, target):
        """Apply sum c_i Frobenius^i; a TruncatedSeries target is twisted
        coefficientwise (the series variable is held fixed)."""
        out = None
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if isinstance(target, TruncatedSeries):
                term = target.map_coeffs(lambda a, k=i: a.frobenius(k)) * c
            else:
                term = target.frobenius(i) * c
            out = term if out is None else out + term
        if out is None:
            return target - target
        return out

    def __repr__(self):
        return " + ".join(f"({c!r})*tau^{i}" for i, c in enumerate(self.coeffs)
                          if c) or "0"


def carlitz_phi_theta(ctx, field):
    """The Carlitz action of theta: theta*tau^0 + tau^1 over `field`."""
    theta = field.coerce(ctx.laurent.gen()) if hasattr(field, "from_base") \
        else field.gen()
    return TauPoly([theta, field.one()])


def drinfeld_action(taupoly, target):
    return taupoly.apply(target)


def carlitz_torsion_series(ctx, prec, tprec, terms=None):
    """s_(Car,pi~)(t) = sum_n e_Car(pi~ / theta^(n+1)) t^n over K_inf(zeta),
    an eigenfunction: (theta*tau^0 + tau^1) s = t*s."""
    F = ctx.laurent
    E = kummer_extension(F)
    pit = pi_tilde(ctx, prec + tprec + ctx.q, representation="kummer").value
    coeffs = []
    for n in range(tprec):
        z = ExtElem(E, [a.shift(-(n + 1)) for a in pit.vec])
        coeffs.append(carlitz_exp(ctx, z, prec).value)
    return TruncatedSeries.from_coeffs(E, coeffs, var="t", prec=tprec)


# ---------------------------------------------------------------------------
# Artin-Schreier evaluations

def artin_schreier_eval(ctx, beta, M):
    """Partial sums of log_Car(beta(xi)) in K(xi), xi^p - xi = theta.

    Returns a list of (partial sum, |difference| as log_q, a Fraction); the
    difference sizes strictly decrease inside the convergence domain.
    """
    K, q = ctx.K, ctx.q
    beta = K.coerce(beta)
    E = artin_schreier_extension(K)
    xi = E.gen()
    z = beta.eval(xi) if not beta.is_constant() else E.coerce(beta.constant_value())
    if not z:
        return [(E.zero(), None)]
    if ext_norm_abs(z) >= Fraction(q, q - 1):
        raise ValueError("beta(xi) outside the convergence domain")
    out = []
    total = E.zero()
    for i in range(M + 1):
        term = z.frobenius(i) * E.coerce(K.one() / ctx.L(i))
        if i % 2:
            term = -term
        total = total + term
        out.append((total, ext_norm_abs(term)))
    return out
