"""Preset gallery of Mahler-type series with audited functional equations,
the four-step transcendence report (auxiliary polynomial, non-vanishing,
upper bound, lower bound) over Q and over K = F_q(theta), and the modular
j-invariant identity check."""

from fractions import Fraction
import math

from .fields import QQ, RF, rational_field, frac_field
from .series import TruncatedSeries, TwistSpec, verify_funceq, eval_product
from .heights import HeightValue, height_Q, height_K, length_Q, coeff_height_K
from .auxpoly import max_order_poly, evaluate_aux
from .carlitz import (CarlitzContext, f_de, f_de2, omega, kummer_q_root,
                      carlitz_torsion_series, L_beta, F_s_beta, F_s_0,
                      F_tilde_beta, phi_psi, x_lift, _cap_value)


def _flog(j, d):
    """floor(log_d(j)) + 1 for j >= 1, else 0."""
    out = 0
    while j >= d:
        j //= d
        out += 1
    return out + (1 if j >= 1 else 0)


def _geometric_inverse(field, e, prec, var="x", scale=None):
    """(1 - c*x^e)^(-1) = sum_k c^k x^(ek), truncated."""
    c = field.one() if scale is None else scale
    coeffs = [field.zero()] * prec
    run = field.one()
    k = 0
    while e * k < prec:
        coeffs[e * k] = run
        run = run * c
        k += 1
    return TruncatedSeries.from_coeffs(field, coeffs, var=var, prec=prec)


class GalleryPreset:
    """A named series with its functional-equation audit and base points.

    funceq(prec) returns (f, twist, a, b) in the shape verify_funceq
    expects; a and b may be (num, den) pairs.  coeff_deg_bound /
    coeff_abs_bound give tail bounds used by the report generator.
    """

    __slots__ = ("name", "base", "d", "build", "funceq", "base_points",
                 "domain", "a_factor", "coeff_deg_bound", "coeff_abs_bound")

    def __init__(self, name, base, d, build, funceq, base_points=(),
                 domain=None, a_factor=None, coeff_deg_bound=None,
                 coeff_abs_bound=None, audit_prec=32):
        self.name = name
        self.base = base
        self.d = d
        self.build = build
        self.funceq = funceq
        self.base_points = list(base_points)
        self.domain = domain or (lambda alpha: True)
        self.a_factor = a_factor
        self.coeff_deg_bound = coeff_deg_bound
        self.coeff_abs_bound = coeff_abs_bound
        holds, _ = self.verify(audit_prec)
        if not holds:
            raise ValueError(f"functional equation audit failed for {name}")

    def verify(self, prec):
        return verify_funceq(*self.funceq(prec))

    def __repr__(self):
        return f"GalleryPreset({self.name!r}, base={self.base!r}, d={self.d})"


def _qq_product(prec, scale, start=0):
    """prod_{n>=start} (1 - scale*x^(2^n)) over Q."""
    def factors():
        n = start
        while 2 ** n < prec:
            coeffs = [QQ.one()] + [QQ.zero()] * (2 ** n - 1) + [-Fraction(scale)]
            yield TruncatedSeries.from_coeffs(QQ, coeffs, var="x", prec=prec)
            n += 1
    return eval_product(factors(), prec, field=QQ, var="x")


def _preset_ftm():
    def build(prec):
        return _qq_product(prec, 1)

    def funceq(prec):
        f = build(prec)
        one = TruncatedSeries.one(QQ, "x", prec)
        den = TruncatedSeries.from_coeffs(QQ, [Fraction(1), Fraction(-1)],
                                          var="x", prec=prec)
        return f, TwistSpec(None, 2), (one, den), TruncatedSeries.zero(QQ, "x", prec)

    return GalleryPreset(
        "ftm", "Q", 2, build, funceq, base_points=[Fraction(1, 2)],
        domain=lambda a: 0 < abs(Fraction(a)) < 1,
        a_factor=lambda alpha, i: 1 - Fraction(alpha) ** (2 ** i),
        coeff_abs_bound=lambda j: Fraction(1))


def _preset_f12x():
    def build(prec):
        return _qq_product(prec, 2)

    def funceq(prec):
        f = build(prec)
        one = TruncatedSeries.one(QQ, "x", prec)
        den = TruncatedSeries.from_coeffs(QQ, [Fraction(1), Fraction(-2)],
                                          var="x", prec=prec)
        return f, TwistSpec(None, 2), (one, den), TruncatedSeries.zero(QQ, "x", prec)

    return GalleryPreset(
        "f12x", "Q", 2, build, funceq, base_points=[Fraction(1, 4)],
        domain=lambda a: 0 < abs(Fraction(a)) < 1,
        a_factor=lambda alpha, i: 1 - 2 * Fraction(alpha) ** (2 ** i),
        coeff_abs_bound=lambda j: Fraction(2) ** (_flog(max(j, 1), 2)))


def _preset_l0():
    def build(prec):
        return _qq_product(prec, 1).inverse(prec)

    def funceq(prec):
        f = build(prec)
        a = TruncatedSeries.from_coeffs(QQ, [Fraction(1), Fraction(-1)],
                                        var="x", prec=prec)
        return f, TwistSpec(None, 2), a, TruncatedSeries.zero(QQ, "x", prec)

    return GalleryPreset(
        "l0", "Q", 2, build, funceq, base_points=[Fraction(1, 2)],
        domain=lambda a: 0 < abs(Fraction(a)) < 1,
        coeff_abs_bound=lambda j: Fraction(2) ** max(j, 0))


def _preset_lr(r):
    if r < 1:
        raise ValueError("the family index must be >= 1")

    def build(prec):
        out = TruncatedSeries.zero(QQ, "x", prec)
        inv = TruncatedSeries.one(QQ, "x", prec)
        i = 0
        while 2 ** i * r < prec:
            if i:
                inv = (inv * _geometric_inverse(QQ, 2 ** (i - 1), prec)).cap(prec)
            term = TruncatedSeries.from_coeffs(QQ, [QQ.one()], var="x",
                                               prec=prec, low=2 ** i * r)
            out = out + (term * inv).cap(prec)
            i += 1
        return out

    def funceq(prec):
        f = build(prec)
        a = TruncatedSeries.from_coeffs(QQ, [Fraction(1), Fraction(-1)],
                                        var="x", prec=prec)
        xr = TruncatedSeries.from_coeffs(QQ, [QQ.one()], var="x",
                                         prec=prec, low=r)
        return f, TwistSpec(None, 2), a, -(a * xr).cap(prec)

    return GalleryPreset(
        f"lr({r})", "Q", 2, build, funceq, base_points=[Fraction(1, 2)],
        domain=lambda a: 0 < abs(Fraction(a)) < 1,
        coeff_abs_bound=lambda j: Fraction(2) ** max(j, 0))


def _preset_fde(q, second=False):
    ctx = CarlitzContext(q)
    K = ctx.K
    theta = K.gen()
    scale = theta.inverse() if second else theta
    name = "fde2" if second else "fde"

    def build(prec):
        return f_de2(ctx, prec) if second else f_de(ctx, prec)

    def funceq(prec):
        f = build(prec)
        one = TruncatedSeries.one(K, "x", prec)
        den = TruncatedSeries.from_coeffs(
            K, [K.one()] + [K.zero()] * (q - 1) + [-scale], var="x", prec=prec)
        return f, TwistSpec(None, q), (one, den), TruncatedSeries.zero(K, "x", prec)

    def a_factor(alpha, i):
        return K.one() - scale * K.coerce(alpha) ** (q ** (i + 1))

    def deg_bound(j):
        # coefficient of x^j is a signed power of theta (or its inverse)
        # with exponent at most the number of q-power parts of j
        return 0 if second else _flog(max(j, 1), q)

    return GalleryPreset(
        name, q, q, build, funceq, base_points=[theta.inverse()],
        domain=lambda a: K.coerce(a) and K.coerce(a).degree() < 0,
        a_factor=a_factor, coeff_deg_bound=deg_bound)


def _preset_phi(q):
    K = rational_field(q)
    Ft = frac_field(K, "t")
    t = Ft.gen()
    theta = Ft.coerce(K.gen())
    vartheta = -(t * (1 + t / theta)).inverse()

    def tau(r):
        return r.map_coeffs(lambda c: c.frobenius())

    def build(prec):
        return phi_psi(vartheta, tau, prec)[0]

    def funceq(prec):
        f = build(prec)
        one = TruncatedSeries.one(Ft, "x", prec)
        den = TruncatedSeries.from_coeffs(Ft, [Ft.one(), vartheta],
                                          var="x", prec=prec)
        return f, TwistSpec(tau, q), (one, den), TruncatedSeries.zero(Ft, "x", prec)

    return GalleryPreset("phi", q, q, build, funceq)


def _preset_omega(q):
    ctx = CarlitzContext(q)

    def build(prec):
        return omega(ctx, prec, 3 * prec + 20)

    def funceq(prec):
        thprec = 3 * prec + 20
        f = build(prec)
        E = f.field
        th = E.coerce(ctx.laurent.monomial(1))
        # the t^j coefficient has theta-valuation ~ q^(j+1), so only the
        # coefficients representable inside the theta-window take part
        jmax = 1
        while 2 + (q ** (jmax + 2) - q) // (q - 1) < thprec:
            jmax += 1
        tw = min(prec, jmax)
        a = TruncatedSeries.from_coeffs(E, [-th, E.one()], var="t", prec=tw)
        return (f.cap(tw), TwistSpec(kummer_q_root, 1), a,
                TruncatedSeries.zero(E, "t", tw))

    return GalleryPreset("omega", q, 1, build, funceq, audit_prec=12)


def _preset_s_lambda(q):
    ctx = CarlitzContext(q)

    def build(prec):
        return carlitz_torsion_series(ctx, 3 * prec + 20, prec)

    def funceq(prec):
        f = build(prec)
        E = f.field
        th = E.coerce(ctx.laurent.monomial(1))
        a = TruncatedSeries.from_coeffs(E, [-th, E.one()], var="t", prec=prec)
        return (f, TwistSpec(lambda c: c.frobenius(), 1), a,
                TruncatedSeries.zero(E, "t", prec))

    return GalleryPreset("s_lambda", q, 1, build, funceq, audit_prec=8)


def _preset_lbeta(q, beta):
    ctx = CarlitzContext(q)
    beta = ctx.K.coerce(beta)
    if not (Fraction(beta.degree() if beta else -1) < Fraction(q, q - 1)):
        raise ValueError("beta outside the logarithm's convergence domain")

    def build(prec):
        return L_beta(ctx, beta, prec, 3 * prec + 20)

    def funceq(prec):
        f = build(prec)
        F = f.field
        # coefficients whose valuation exceeds the theta precision are
        # stripped from f; audit only the stored window
        tw = min(prec, f.low + len(f.coeffs))
        thq = F.from_ratfunc(ctx.K.gen() ** q, 3 * prec + 20)
        a = TruncatedSeries.from_coeffs(F, [-thq, F.one()], var="t", prec=tw)
        bconst = F.from_ratfunc(beta, 3 * prec + 20)
        b = TruncatedSeries.from_coeffs(F, [bconst], var="t", prec=tw)
        # frobenius inflates digit precision; the right-hand side is only
        # known to thprec - q (the theta^q factor shifts), so cap there
        tau = lambda c: c.frobenius().cap(3 * prec + 20 - q)
        return f.cap(tw), TwistSpec(tau, 1), a, -(a * b).cap(tw)

    return GalleryPreset(f"lbeta({beta!r})", q, 1, build, funceq,
                         base_points=[ctx.K.gen()], audit_prec=16)


def _u_power(K, e, prec):
    return TruncatedSeries.from_coeffs(K, [K.one()], var="u", prec=prec, low=e)


def _preset_fsbeta(q, s, beta):
    ctx = CarlitzContext(q)
    K = ctx.K
    beta = K.coerce(beta)
    d = beta.degree()
    if not (Fraction(d if beta else -1) < Fraction(s * q, q - 1)):
        raise ValueError("beta outside the polylogarithm's convergence domain")

    def build(prec):
        return F_s_beta(ctx, s, beta, prec)

    def funceq(prec):
        f = build(prec)
        unit = TruncatedSeries.from_coeffs(
            K, [K.one()] + [K.zero()] * (q - 1) + [-K.gen()], var="u", prec=prec)
        sign = K.from_int((-1) ** s)
        anum = (unit ** s).cap(prec) * sign
        aden = _u_power(K, q * s, prec)
        bt = x_lift(ctx, beta, prec)
        return f, TwistSpec(None, q), (anum, aden), (-(anum * bt).cap(prec), aden)

    return GalleryPreset(f"fsbeta({s},{beta!r})", q, q, build, funceq,
                         audit_prec=max(2 * q * s + 2, 2 * q * max(d, 0) + 8))


def _preset_fs0(q, s):
    ctx = CarlitzContext(q)
    K = ctx.K

    def build(prec):
        return F_s_0(ctx, s, prec)[1]

    def funceq(prec):
        f = build(prec)
        unit = TruncatedSeries.from_coeffs(
            K, [K.one()] + [K.zero()] * (q - 1) + [-K.gen()], var="u", prec=prec)
        a = (unit ** s).cap(prec)
        return f, TwistSpec(None, q), a, TruncatedSeries.zero(K, "u", prec)

    return GalleryPreset(f"fs0({s})", q, q, build, funceq)


def _preset_ftilde(q, beta):
    ctx = CarlitzContext(q)
    K = ctx.K
    beta = K.coerce(beta)
    if not (Fraction(beta.degree() if beta else -1) < Fraction(q, q - 1)):
        raise ValueError("beta outside the convergence domain")

    def build(prec):
        return F_tilde_beta(ctx, beta, prec)

    def funceq(prec):
        f = build(prec)
        # theta - x^(q^2) + x^q, cleared against x^(q^2) = u^(-q^2)
        coeffs = [K.zero()] * (q * q + 1)
        coeffs[0] = -K.one()
        coeffs[q * q - q] = K.one()
        coeffs[q * q] = K.gen()
        anum = TruncatedSeries.from_coeffs(K, coeffs, var="u", prec=prec)
        aden = _u_power(K, q * q, prec)
        bt = x_lift(ctx, beta, prec)
        return f, TwistSpec(None, q), (anum, aden), (-(anum * bt).cap(prec), aden)

    return GalleryPreset(f"ftilde({beta!r})", q, q, build, funceq,
                         audit_prec=2 * q * q + 4)


def gallery(name, q=3, r=1, s=1, beta=1):
    """Named presets binding each series to its functional equation."""
    table = {
        "ftm": _preset_ftm,
        "f12x": _preset_f12x,
        "l0": _preset_l0,
        "lr": lambda: _preset_lr(r),
        "fde": lambda: _preset_fde(q),
        "fde2": lambda: _preset_fde(q, second=True),
        "phi": lambda: _preset_phi(q),
        "omega": lambda: _preset_omega(q),
        "s_lambda": lambda: _preset_s_lambda(q),
        "lbeta": lambda: _preset_lbeta(q, beta),
        "fsbeta": lambda: _preset_fsbeta(q, s, beta),
        "fs0": lambda: _preset_fs0(q, s),
        "ftilde": lambda: _preset_ftilde(q, beta),
    }
    if name not in table:
        raise ValueError(f"unknown preset {name!r}")
    return table[name]()


# ---------------------------------------------------------------------------
# the contradiction bound and the four-step report

def minimal_N(base, h_alpha, log_abs_alpha, degree=1, q=None):
    """Least N for which the four-step inequalities become contradictory.

    Over Q the threshold is N > 2*[L:Q]*h(alpha)/|log|alpha||; over K it
    is N > [L:K]_sep*(1 + q/(q-1))*h(alpha)/|log|alpha||.  Heights and
    log-magnitudes are HeightValue instances compared exactly.
    """
    if not (log_abs_alpha < 0):
        raise ValueError("the base point must satisfy |alpha| < 1")
    if base == "Q":
        factor = Fraction(2)
    elif base == "K":
        if q is None:
            raise ValueError("the K-side bound needs q")
        factor = 1 + Fraction(q, q - 1)
    else:
        raise ValueError(f"unknown base {base!r}")
    rhs = (degree * factor) * h_alpha
    N = 1
    while not (N * (-1 * log_abs_alpha) > rhs):
        N += 1
    return N


class TranscendenceReport:
    """Per-n audit of the four proof steps for one series and base point."""

    __slots__ = ("preset", "alpha", "N", "minimal_N", "aux", "n0", "rows",
                 "crossing")

    def __init__(self, preset, alpha, N, minimal_N, aux, n0, rows, crossing):
        self.preset = preset
        self.alpha = alpha
        self.N = N
        self.minimal_N = minimal_N
        self.aux = aux
        self.n0 = n0
        self.rows = rows
        self.crossing = crossing

    def to_dict(self):
        return {
            "preset": self.preset,
            "alpha": str(self.alpha),
            "N": self.N,
            "minimal_N": self.minimal_N,
            "nu": self.aux.nu,
            "c_nu": repr(self.aux.c_nu),
            "P": repr(self.aux),
            "n0": self.n0,
            "crossing": self.crossing,
            "rows": [dict(r) for r in self.rows],
        }

    def __repr__(self):
        head = (f"TranscendenceReport({self.preset}, alpha={self.alpha}, "
                f"N={self.N}, nu={self.aux.nu}, n0={self.n0})")
        return head


def _alpha_height(preset, alpha):
    if preset.base == "Q":
        return height_Q(Fraction(alpha))
    return height_K(alpha)


def _k_report_rows(preset, f, res, F, alpha, N, n_range, hypothetical):
    q = preset.base
    K = f.field
    alpha = K.coerce(alpha)
    dega = alpha.degree()
    logq = HeightValue.log(q)
    h_alpha = height_K(alpha)
    degree, h_val = hypothetical
    h_val = h_val or HeightValue.zero()
    hP = coeff_height_K(list(res.P.values()))
    # exact theta-degree of each computed coefficient of F = P(x, f(x))
    cdegs = {}
    for i, c in enumerate(F.coeffs):
        if c:
            cdegs[F.low + i] = c.degree()
    nu, dnu = res.nu, F.coeff(res.nu).degree()
    # conservative tail bound on deg of unseen coefficients
    maxPdeg = max((c.degree() or 0) for c in res.P.values())
    maxPden = max(len(K.coerce(c).den) - 1 for c in res.P.values())
    tail_deg = (maxPdeg + maxPden) + N * preset.coeff_deg_bound(F.prec)
    rows = []
    n0 = None
    crossing = None
    for n in n_range:
        m = q ** (n + 1)
        point = alpha ** m
        for i in range(n + 2):
            if preset.a_factor is not None and not preset.a_factor(alpha, i):
                raise ValueError(f"orbit point {i} hits a zero of the "
                                 "functional-equation denominator")
        dval = dnu + nu * m * dega
        exact = all(j == nu or cdegs[j] + j * m * dega < dval for j in cdegs) \
            and tail_deg + F.prec * m * dega < dval
        ub = (dnu + nu * m * dega) * logq
        telescoping = HeightValue.zero()
        if preset.a_factor is not None:
            for i in range(n + 1):
                telescoping = telescoping + height_K(preset.a_factor(alpha, i))
        lb = -degree * (hP + N * m * h_alpha + N * (h_val + telescoping))
        margin = ub - lb
        if exact and n0 is None:
            n0 = n
        if crossing is None and lb > ub:
            crossing = n
        rows.append({
            "n": n,
            "value_deg": dval if exact else None,
            "kind": "exact" if exact else "bounded",
            "ub": ub.exact_str(),
            "lb": lb.exact_str(),
            "margin": margin.exact_str(),
        })
    return rows, n0, crossing


def _q_report_rows(preset, f, res, F, alpha, N, n_range, hypothetical):
    alpha = Fraction(alpha)
    degree, h_val = hypothetical
    h_val = h_val or HeightValue.zero()
    h_alpha = height_Q(alpha)
    LP = length_Q(list(res.P.values()))
    logLP = HeightValue.log(max(LP.numerator, 1)) - HeightValue.log(LP.denominator)
    nu, cnu = res.nu, F.coeff(res.nu)
    rows = []
    n0 = None
    crossing = None
    cb = preset.coeff_abs_bound
    for n in n_range:
        m = 2 ** (n + 1)
        beta = alpha ** m
        # exact partial sum and a rigorous geometric tail bound
        S = Fraction(0)
        for i, c in enumerate(F.coeffs):
            S += Fraction(c) * beta ** (F.low + i)
        J = F.prec
        G = LP * Fraction(J + 1) ** N * cb(J) ** N
        ratio = abs(beta) * Fraction(J + 2, J + 1) ** N * 4 ** N
        certified = ratio < 1
        tail = G * abs(beta) ** J / (1 - ratio) if certified else None
        nonzero = certified and S != 0 and abs(S) > tail
        if nonzero and n0 is None:
            n0 = n
        ub = HeightValue.log(max(abs(cnu).numerator, 1)) \
            - HeightValue.log(abs(cnu).denominator) + nu * m * _log_frac(alpha)
        lb = -degree * (logLP + 2 * N * m * h_alpha + N * h_val
                        + (n + 1) * HeightValue.log(2))
        margin = ub - lb
        if crossing is None and lb > ub:
            crossing = n
        rows.append({
            "n": n,
            "value_log": _log_frac(S).exact_str() if nonzero else None,
            "nonzero_certified": bool(nonzero),
            "ub": ub.exact_str(),
            "lb": lb.exact_str(),
            "margin": margin.exact_str(),
        })
    return rows, n0, crossing


def _log_frac(x):
    """Exact symbolic log|x| of a nonzero rational."""
    x = abs(Fraction(x))
    if x == 0:
        raise ZeroDivisionError("log of zero")
    return HeightValue.log(x.numerator) - HeightValue.log(x.denominator)


def run_report(preset, alpha, N, n_range, hypothetical=(1, None), prec=50):
    """The four-step audit for a preset at a base point.

    hypothetical = (degree, height) models the algebraicity assumption the
    proof refutes; heights and magnitudes are exact symbolic logs.
    """
    if isinstance(preset, str):
        preset = gallery(preset)
    if not preset.domain(alpha):
        raise ValueError(f"{alpha!r} outside the domain of {preset.name}")
    f = preset.build(prec)
    res = max_order_poly(f, N, prec)
    F = evaluate_aux(res.P, [f], prec)
    if preset.base == "Q":
        h_alpha = height_Q(Fraction(alpha))
        loga = _log_frac(alpha)
        minN = minimal_N("Q", h_alpha, loga, degree=hypothetical[0])
        rows, n0, crossing = _q_report_rows(preset, f, res, F, alpha, N,
                                            n_range, hypothetical)
    else:
        q = preset.base
        K = f.field
        a = K.coerce(alpha)
        h_alpha = height_K(a)
        loga = HeightValue.log(q, a.degree())
        minN = minimal_N("K", h_alpha, loga, degree=hypothetical[0], q=q)
        rows, n0, crossing = _k_report_rows(preset, f, res, F, alpha, N,
                                            n_range, hypothetical)
    return TranscendenceReport(preset.name, alpha, N, minN, res, n0, rows,
                               crossing)


# ---------------------------------------------------------------------------
# the modular j-invariant and the degree-2 modular equation

PHI2 = {
    (3, 0): 1, (0, 3): 1, (2, 2): -1,
    (2, 1): 1488, (1, 2): 1488,
    (2, 0): -162000, (0, 2): -162000,
    (1, 1): 40773375,
    (1, 0): 8748000000, (0, 1): 8748000000,
    (0, 0): -157464000000000,
}


class JInvariantData:
    """q-expansions of E4, E6, Delta and J, plus the modular polynomial."""

    __slots__ = ("e4", "e6", "delta", "j", "phi2", "prec")

    def __init__(self, e4, e6, delta, j, prec):
        self.e4 = e4
        self.e6 = e6
        self.delta = delta
        self.j = j
        self.phi2 = dict(PHI2)
        self.prec = prec

    def __repr__(self):
        return f"JInvariantData(prec={self.prec})"


def _sigma(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def j_expansion(prec):
    """E4 = 1 + 240 sum sigma_3(n) x^n, E6 = 1 - 504 sum sigma_5(n) x^n,
    Delta = (E4^3 - E6^2)/1728 and J = E4^3/Delta, all to x-order prec."""
    if prec < 2:
        raise ValueError("precision must be at least 2")
    e4 = TruncatedSeries.from_coeffs(
        QQ, [Fraction(1)] + [Fraction(240 * _sigma(3, n)) for n in range(1, prec)],
        var="x", prec=prec)
    e6 = TruncatedSeries.from_coeffs(
        QQ, [Fraction(1)] + [Fraction(-504 * _sigma(5, n)) for n in range(1, prec)],
        var="x", prec=prec)
    e4c = (e4 * e4 * e4).cap(prec)
    delta = (e4c - e6 * e6).cap(prec) * Fraction(1, 1728)
    if delta.coeff(0) or delta.coeff(1) != 1:
        raise AssertionError("discriminant does not start at x")
    if any(c.denominator != 1 for c in delta.coeffs):
        raise AssertionError("discriminant has a non-integer coefficient")
    j = (e4c * delta.inverse(prec)).cap(prec - 1)
    return JInvariantData(e4, e6, delta, j, prec)


def verify_phi2(prec):
    """Check the degree-2 modular equation on J(x) and J(x^2)."""
    data = j_expansion(prec)
    j1 = data.j
    j2 = j1.compose_power(2)
    top = max(max(a, b) for a, b in PHI2)
    pows1 = [TruncatedSeries.one(QQ, "x", prec)]
    pows2 = [TruncatedSeries.one(QQ, "x", prec)]
    for _ in range(top):
        pows1.append(pows1[-1] * j1)
        pows2.append(pows2[-1] * j2)
    out = None
    for (a, b), c in sorted(PHI2.items()):
        term = pows1[a] * pows2[b] * Fraction(c)
        out = term if out is None else out + term
    return out.is_zero()
