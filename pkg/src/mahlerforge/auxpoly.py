"""Auxiliary-polynomial search, multiplicity bounds, the R_n recursion and
linear-relation finders: the kernel computations behind the first two proof
steps."""

import itertools

from .fields import FracField, poly_trim, poly_divmod
from . import linalg
from .series import TruncatedSeries, _inv


class AuxPolyResult:
    """A nonzero polynomial P with certified order of vanishing.

    P is a dict mapping exponent tuples (i, e_1..e_m) for the monomial
    x^i * f_1^{e_1} ... f_m^{e_m} to nonzero coefficients.
    """

    __slots__ = ("P", "nu", "c_nu", "N", "m", "prec")

    def __init__(self, P, nu, c_nu, N, m, prec):
        self.P = P
        self.nu = nu
        self.c_nu = c_nu
        self.N = N
        self.m = m
        self.prec = prec

    def monomials(self):
        return sorted(self.P)

    def __repr__(self):
        parts = []
        for e in sorted(self.P):
            names = ["x"] + ([f"X{k+1}" for k in range(self.m)]
                             if self.m > 1 else ["Y"])
            mono = "*".join(f"{n}^{ei}" if ei > 1 else n
                            for n, ei in zip(names, e) if ei)
            c = repr(self.P[e])
            if "+" in c or "-" in c[1:] or "/" in c:
                c = f"({c})"
            parts.append(f"{c}*{mono}" if mono else c)
        return " + ".join(parts)


class RelationCertificate:
    """A verified linear relation among series or values."""

    __slots__ = ("coeffs", "rational_part", "prec", "residual_order")

    def __init__(self, coeffs, rational_part, prec, residual_order):
        self.coeffs = coeffs
        self.rational_part = rational_part
        self.prec = prec
        self.residual_order = residual_order

    def __repr__(self):
        return (f"RelationCertificate(coeffs={self.coeffs!r}, "
                f"rational_part={self.rational_part!r}, "
                f"residual_order={self.residual_order!r})")


def _monomial_series(fs, N, prec, field):
    """All series x^i * prod f_k^{e_k}, partial degrees <= N, with keys."""
    powers = []
    for f in fs:
        row = [TruncatedSeries.one(field, f.var, prec)]
        for _ in range(N):
            row.append((row[-1] * f).cap(prec))
        powers.append(row)
    var = fs[0].var if fs else "x"
    out = []
    for exps in itertools.product(*([range(N + 1)] * (len(fs) + 1))):
        s = TruncatedSeries(field, var, exps[0], [field.one()], prec)
        for k, e in enumerate(exps[1:]):
            if e:
                s = (s * powers[k][e]).cap(prec)
        out.append((exps, s))
    return out


def evaluate_aux(P, fs, prec, field=None):
    """Substitute the series into the exponent-dict polynomial P."""
    field = field or fs[0].field
    var = fs[0].var if fs else "x"
    out = TruncatedSeries.zero(field, var, prec)
    powers = []
    for f in fs:
        deg = max(e[1 + len(powers)] for e in P) if P else 0
        row = [TruncatedSeries.one(field, var, prec)]
        for _ in range(deg):
            row.append((row[-1] * f).cap(prec))
        powers.append(row)
    for exps, c in P.items():
        s = TruncatedSeries(field, var, exps[0], [c], prec)
        for k, e in enumerate(exps[1:]):
            if e:
                s = (s * powers[k][e]).cap(prec)
        out = out + s
    return out.cap(prec)


def _normalize_poly(P):
    """Divide by the coefficient of the lexicographically least monomial."""
    lead = _inv(P[min(P)])
    return {e: lead * c for e, c in P.items()}


def _kernel(field, rows, ncols):
    if isinstance(field, FracField):
        return linalg.kernel_fraction_free(field, rows, ncols)
    return linalg.kernel_basis(field, rows, ncols)


def _result_from_vector(vec, keys, fs, N, prec, field):
    P = {e: c for e, c in zip(keys, vec) if c}
    P = _normalize_poly(P)
    F = evaluate_aux(P, fs, prec, field)
    nu = F.order()
    if nu is None:
        raise ArithmeticError(f"order of vanishing not resolved below "
                              f"precision {prec}; increase prec")
    return AuxPolyResult(P, nu, F.coeff(nu), N, len(fs), prec)


def find_aux_poly(fs, N, target, prec):
    """Nonzero P, all partial degrees <= N, with ord_x P(x, f...) >= target."""
    if not fs:
        raise ValueError("infeasible: no series given")
    if prec <= target:
        raise ValueError("precision must exceed the target order")
    field = fs[0].field
    monos = _monomial_series(fs, N, prec, field)
    keys = [e for e, _ in monos]
    rows = [[s.coeff(o) for _, s in monos] for o in range(target)]
    ker = _kernel(field, rows, len(monos))
    if not ker:
        raise ValueError(f"infeasible: no degree-{N} polynomial vanishes "
                         f"to order {target}")
    return _result_from_vector(ker[0], keys, fs, N, prec, field)


def max_order_poly(f, N, prec):
    """The degree-<=N polynomial whose series vanishes to maximal order.

    Constraints are added one order at a time until the kernel dies; a
    single linear condition can only cut the dimension by one, so the
    last surviving kernel is one-dimensional and P is unique up to
    scalar.
    """
    field = f.field
    monos = _monomial_series([f], N, prec, field)
    keys = [e for e, _ in monos]
    n = len(monos)
    one, zero = field.one(), field.zero()
    # kernel basis starts as the identity: every coefficient vector allowed
    kernel = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for o in range(prec):
        row = [s.coeff(o) for _, s in monos]
        pairs = []
        for v in kernel:
            s = zero
            for rv, vv in zip(row, v):
                if rv and vv:
                    s = s + rv * vv
            pairs.append((v, s))
        if all(not s for _, s in pairs):
            continue
        if len(kernel) == 1:
            # the single survivor fails this order: previous order is max
            break
        piv_i = next(i for i, (_, s) in enumerate(pairs) if s)
        pv, ps = pairs[piv_i]
        inv = _inv(ps)
        kernel = []
        for i, (v, s) in enumerate(pairs):
            if i == piv_i:
                continue
            if not s:
                kernel.append(v)
            else:
                t = s * inv
                kernel.append([a - t * b for a, b in zip(v, pv)])
    else:
        raise ArithmeticError(f"kernel still {len(kernel)}-dimensional at "
                              f"precision {prec}; maximizer not certified")
    if len(kernel) != 1:
        raise ArithmeticError(f"non-unique maximizer: kernel dimension "
                              f"{len(kernel)}")
    return _result_from_vector(kernel[0], keys, [f], N, prec, field)


def denis_multiplicity_bound(N, M, d, hX):
    """The bound N(2Md + N*hX) on the vanishing order."""
    return N * (2 * M * d + N * hX)


def check_multiplicity(result, N, M, d, hX):
    """Exact check that the achieved order respects the bound."""
    return result.nu <= denis_multiplicity_bound(N, M, d, hX)


# ---------------------------------------------------------------------------
# the R_n recursion

def _series_to_poly(s, field):
    """Exact series with low >= 0 -> coefficient list over the field."""
    if s.low < 0 or s.prec is not None:
        raise ValueError("expected an exact polynomial series")
    return poly_trim([s.coeff(i) for i in range(s.low + len(s.coeffs))])


def _poly_to_series(p, field, var, dil=1):
    p = poly_trim(list(p))
    if not p or dil == 1:
        return TruncatedSeries(field, var, 0, p, None)
    out = [field.zero()] * ((len(p) - 1) * dil + 1)
    for i, c in enumerate(p):
        out[i * dil] = c
    return TruncatedSeries(field, var, 0, out, None)


class RnAudit:
    __slots__ = ("R", "deg_x", "deg_X", "telescoping_order")

    def __init__(self, R, deg_x, deg_X, telescoping_order):
        self.R = R
        self.deg_x = deg_x
        self.deg_X = deg_X
        self.telescoping_order = telescoping_order


def iterate_Rn(P0, d, a_list, b_list, c, n, fs=None, prec=None, N=None):
    """R_n = c(x)^N R_{n-1}(x^d, a_1 X_1 + b_1, ..., a_m X_m + b_m).

    P0 is a dict {(i, e_1..e_m): scalar} like AuxPolyResult.P; a_i and
    b_i are series or (num, den) series pairs whose denominators must
    divide c; c is an exact polynomial series.  When fs/prec are given,
    the telescoping identity
    R_n(x, f(x)) = prod_{i<n} c(x^{d^i})^N * R_0(x^{d^n}, f(x^{d^n}))
    is audited to the precision.
    """
    from .fields import poly_mul, poly_add, poly_pow, poly_stretch
    field = c.field
    m = len(a_list)
    if N is None:
        N = max((sum(e[1:]) for e in P0), default=0)
    cpoly = _series_to_poly(c, field)

    def cleared(pair):
        """c * (num/den), checked to be a polynomial."""
        num, den = pair if isinstance(pair, tuple) else (pair, None)
        npoly = _series_to_poly(num, field)
        if den is None:
            return poly_mul(field, cpoly, npoly)
        dpoly = _series_to_poly(den, field)
        quo, rem = poly_divmod(field, poly_mul(field, cpoly, npoly), dpoly)
        if poly_trim(list(rem)):
            raise ValueError("denominators not cleared by c")
        return quo

    ca = [cleared(a) for a in a_list]
    cb = [cleared(b) for b in b_list]

    # internal form: X-exponent tuple -> x-polynomial coefficient
    R = {}
    for e, coef in P0.items():
        key = tuple(e[1:])
        poly = [field.zero()] * e[0] + [field.coerce(coef)]
        R[key] = poly_add(field, R.get(key, []), poly)

    for _ in range(n):
        new = {}
        for exps, p in R.items():
            total = sum(exps)
            if total > N:
                raise ValueError("total X-degree exceeds N")
            base = poly_mul(field, poly_stretch(field, p, d),
                            poly_pow(field, cpoly, N - total))
            parts = {(): base}
            for i in range(m):
                nxt = {}
                for key, poly in parts.items():
                    for k in range(exps[i] + 1):
                        mult = _binom_poly(field, ca[i], cb[i], exps[i], k)
                        if not mult:
                            continue
                        acc = poly_mul(field, poly, mult)
                        kk = key + (k,)
                        nxt[kk] = (poly_add(field, nxt[kk], acc)
                                   if kk in nxt else acc)
                parts = nxt
            for key, poly in parts.items():
                new[key] = poly_add(field, new.get(key, []), poly)
        R = {e: poly_trim(p) for e, p in new.items() if poly_trim(p)}

    deg_x = max((len(p) - 1 for p in R.values()), default=0)
    deg_X = [max((e[i] for e in R), default=0) for i in range(m)]
    tele = None
    if fs is not None and prec is not None:
        var = fs[0].var

        def eval_dict(terms, series_list, dil):
            out = TruncatedSeries.zero(field, var, prec)
            pows = []
            for i, f in enumerate(series_list):
                degi = max((e[i] for e in terms), default=0)
                row = [TruncatedSeries.one(field, var, prec)]
                for _ in range(degi):
                    row.append((row[-1] * f).cap(prec))
                pows.append(row)
            for e, p in terms.items():
                s = _poly_to_series(p, field, var, dil=dil)
                for i in range(m):
                    if e[i]:
                        s = (s * pows[i][e[i]]).cap(prec)
                out = out + s.cap(prec)
            return out

        lhs = eval_dict(R, fs, 1)
        rhs = TruncatedSeries.one(field, var, prec)
        for i in range(n):
            ci = _poly_to_series(cpoly, field, var, dil=d ** i)
            rhs = (rhs * ci ** N).cap(prec)
        dn = d ** n
        f_dn = [f.compose_power(dn).cap(prec) for f in fs]
        R0 = {}
        for e, coef in P0.items():
            key = tuple(e[1:])
            poly = [field.zero()] * e[0] + [field.coerce(coef)]
            from .fields import poly_add as _pa
            R0[key] = _pa(field, R0.get(key, []), poly)
        r0 = eval_dict(R0, f_dn, dn)
        diff = lhs - (rhs * r0).cap(prec)
        o = diff.order()
        tele = prec if o is None else o
    return RnAudit(R, deg_x, deg_X, tele)


def _binom_poly(field, ca, cb, e, k):
    """Coefficient of X^k in (ca*X + cb)^e, over a char-p field."""
    from .fields import poly_mul as _poly_mul, poly_pow as _poly_pow
    p = field.char
    bc = _binom_mod(e, k, p)
    if bc == 0:
        return []
    term = _poly_mul(field, _poly_pow(field, ca, k),
                     _poly_pow(field, cb, e - k))
    if bc == 1:
        return term
    c = field.from_int(bc) if hasattr(field, "from_int") else bc
    return [c * x for x in term]


def _binom_mod(n, k, p):
    """binom(n, k) mod p by Lucas's theorem (p=0 means plain binomial)."""
    import math
    if p == 0:
        return math.comb(n, k)
    out = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        out = out * (math.comb(a, b) % p) % p
        n //= p
        k //= p
    return out


# ---------------------------------------------------------------------------
# linear relation finders

def find_linear_relation_series(gs, r, prec):
    """Nonzero (c_1..c_k, polynomial part of degree <= r) with
    sum c_i g_i = rational part to the truncation, or None."""
    if not gs:
        return None
    field = gs[0].field
    var = gs[0].var
    k = len(gs)
    cols = []
    for g in gs:
        cols.append([g.coeff(i) for i in range(prec)])
    for j in range(r + 1):
        cols.append([field.one() if i == j else field.zero()
                     for i in range(prec)])
    rows = [[col[i] for col in cols] for i in range(prec)]
    ker = _kernel(field, rows, len(cols))
    if not ker:
        return None
    v = ker[0]
    lead = next(c for c in v if c)
    inv = _inv(lead)
    v = [inv * c for c in v]
    coeffs = v[:k]
    ratpart = v[k:]
    comb = TruncatedSeries.zero(field, var, prec)
    for c, g in zip(coeffs, gs):
        comb = comb + TruncatedSeries.constant(field, c, var) * g
    for j, c in enumerate(ratpart):
        if c:
            comb = comb + TruncatedSeries(field, var, j, [c], None)
    res = comb.cap(prec).order()
    return RelationCertificate(coeffs, [-c for c in ratpart], prec,
                               f">= {prec}" if res is None else res)


def find_A_relation_values(values, D):
    """Nonzero h_1..h_k in A = F_q[theta], deg <= D, with
    sum h_i v_i = O(theta^{-prec+D}) for TruncatedLaurent values v_i."""
    if not values:
        return None
    L = values[0].field
    F = L.base
    prec = min(v.prec for v in values)
    lo = min((v.v for v in values if v.digits), default=0) - D
    hi = prec - D
    cols = []
    for v in values:
        for j in range(D + 1):
            # digit of theta^j * v at index m is digit(v, m + j)
            cols.append([v.digit(m + j) for m in range(lo, hi)])
    rows = [[col[i] for col in cols] for i in range(hi - lo)]
    ker = linalg.kernel_basis(F, rows, len(cols))
    if not ker:
        return None
    v = ker[0]
    lead = next(c for c in v if c)
    inv = lead.inverse()
    v = [inv * c for c in v]
    hs = [poly_trim(v[i * (D + 1):(i + 1) * (D + 1)])
          for i in range(len(values))]
    comb = None
    for h, val in zip(hs, values):
        for j, c in enumerate(h):
            if not c:
                continue
            t = val.shift(j) * c
            comb = t if comb is None else comb + t
    res = comb.valuation()
    return RelationCertificate(hs, None, prec,
                               f">= {comb.prec}" if res is None else res)
