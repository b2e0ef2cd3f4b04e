"""Reduction of twisted-stable polynomial relations to linear form.

A TwistRing carries an endomorphism of U[X_1..X_N] sending P to
P^tau(D_1 X_1 + B_1, ..., D_N X_N + B_N), where tau is a coefficient
automorphism.  Polynomials P with twist(P) = Q*P for a scalar Q form a
semigroup; iterated partial derivatives and p-th root extractions reduce
any non-constant member to a linear one G = sum c_i X_i + B^p, which is
then normalized to the constant-term functional equation
c_0 = tau(c_0)/D + (1/D) sum c_i B_i.

Polynomials are dicts mapping exponent tuples to nonzero coefficients.
"""

import math

from .fields import frac_field, rational_field
from .extensions import perfect_closure


class TwistRing:
    """U[X_1..X_N] with the substitution endomorphism P -> P^tau(D*X + B)."""

    __slots__ = ("field", "tau", "Ds", "Bs", "N", "char")

    def __init__(self, field, tau, Ds, Bs):
        if len(Ds) != len(Bs):
            raise ValueError("Ds and Bs must have equal length")
        self.field = field
        self.tau = tau
        self.Ds = [field.coerce(d) for d in Ds]
        self.Bs = [field.coerce(b) for b in Bs]
        self.N = len(Ds)
        self.char = field.char
        for d in self.Ds:
            if not d:
                raise ValueError("the D_i must be invertible")

    def coerce_poly(self, P):
        out = {}
        for e, c in P.items():
            c = self.field.coerce(c)
            if c:
                e = tuple(e) + (0,) * (self.N - len(e))
                out[e] = c
        return out

    def _sub_table(self, i, maxdeg):
        """Coefficient dicts of (D_i X_i + B_i)^k for k = 0..maxdeg."""
        D, B = self.Ds[i], self.Bs[i]
        rows = [{0: self.field.one()}]
        for _ in range(maxdeg):
            prev = rows[-1]
            nxt = {}
            for j, c in prev.items():
                v = nxt.get(j + 1, self.field.zero()) + c * D
                if v:
                    nxt[j + 1] = v
                elif j + 1 in nxt:
                    del nxt[j + 1]
                if B:
                    w = nxt.get(j, self.field.zero()) + c * B
                    if w:
                        nxt[j] = w
                    elif j in nxt:
                        del nxt[j]
            rows.append(nxt)
        return rows

    def twist(self, P):
        """The image of P under X_i -> D_i X_i + B_i with tau on coefficients."""
        P = self.coerce_poly(P)
        maxdeg = [0] * self.N
        for e in P:
            for i, ei in enumerate(e):
                maxdeg[i] = max(maxdeg[i], ei)
        tables = [self._sub_table(i, maxdeg[i]) for i in range(self.N)]
        out = {}
        for e, c in P.items():
            acc = {(): self.tau(c)}
            for i, ei in enumerate(e):
                nxt = {}
                for pre, a in acc.items():
                    for j, b in tables[i][ei].items():
                        key = pre + (j,)
                        v = nxt.get(key, self.field.zero()) + a * b
                        if v:
                            nxt[key] = v
                        elif key in nxt:
                            del nxt[key]
                acc = nxt
            for key, v in acc.items():
                w = out.get(key, self.field.zero()) + v
                if w:
                    out[key] = w
                elif key in out:
                    del out[key]
        return out


class SemigroupWitness:
    """A polynomial P together with the scalar Q such that twist(P) = Q*P."""

    __slots__ = ("P", "Q")

    def __init__(self, P, Q):
        self.P = P
        self.Q = Q

    def __repr__(self):
        return f"SemigroupWitness(Q={self.Q!r})"


class SemigroupError(ValueError):
    """twist(P) is not a scalar multiple of P; carries the obstruction."""

    def __init__(self, monomial):
        self.monomial = monomial
        super().__init__(f"not semigroup-stable, obstruction at X^{monomial}")


def check_semigroup(P, ring):
    """Verify twist(P) = Q*P by exact division; return the witness.

    Raises SemigroupError with the first obstructing monomial when the
    quotient is not a scalar, and ValueError on P = 0.
    """
    P = ring.coerce_poly(P)
    if not P:
        raise ValueError("P must be nonzero")
    Pt = ring.twist(P)
    key = min(P)
    if key not in Pt:
        raise SemigroupError(key)
    Q = Pt[key] / P[key]
    for e in sorted(set(P) | set(Pt)):
        lhs = Pt.get(e, ring.field.zero())
        rhs = Q * P.get(e, ring.field.zero())
        if lhs != rhs:
            raise SemigroupError(e)
    return SemigroupWitness(P, Q)


def poly_derivative(ring, P, i):
    """Partial derivative with respect to X_i in characteristic p."""
    out = {}
    for e, c in P.items():
        if e[i] == 0:
            continue
        m = ring.field.from_int(e[i])
        if not m:
            continue
        key = e[:i] + (e[i] - 1,) + e[i + 1:]
        v = out.get(key, ring.field.zero()) + m * c
        if v:
            out[key] = v
        elif key in out:
            del out[key]
    return out


def poly_is_p_power(ring, P):
    p = ring.char
    return all(all(ei % p == 0 for ei in e) and c.is_p_power()
               for e, c in P.items())


def poly_p_root(ring, P):
    p = ring.char
    return {tuple(ei // p for ei in e): c.p_root() for e, c in P.items()}


def _residue(e, p):
    return tuple(ei % p for ei in e)


def _is_constant(P):
    return all(not any(e) for e in P)


def reduce_to_linear(P, ring):
    """Derive a linear semigroup member from a non-constant one.

    Returns (G, witness, trace) where G = sum c_i X_i + B^p has the same
    stability, the c_i in U are not all zero, and trace lists the
    derivative and p-th-root steps taken.  Raises SemigroupError if any
    intermediate polynomial falls out of the semigroup and ValueError on
    constant input.
    """
    p = ring.char
    cur = ring.coerce_poly(P)
    check_semigroup(cur, ring)
    if _is_constant(cur):
        raise ValueError("P must be non-constant")
    trace = []
    while True:
        while poly_is_p_power(ring, cur):
            cur = poly_p_root(ring, cur)
            trace.append(("p-root",))
        # group monomials by exponent residues mod p and take the top layer
        weights = {_residue(e, p): 0 for e in cur}
        M = max(sum(r) for r in weights)
        lam = max(r for r in weights if sum(r) == M)
        i = next(j for j, rj in enumerate(lam) if rj)
        beta = lam[:i] + (lam[i] - 1,) + lam[i + 1:]
        nxt = cur
        for j, bj in enumerate(beta):
            for _ in range(bj):
                nxt = poly_derivative(ring, nxt, j)
        if any(beta):
            trace.append(("derive", beta))
            check_semigroup(nxt, ring)
        # nxt = sum c'_i X_i + c'_0 with c'_i, c'_0 made of p-th powers;
        # done when every residue-degree-one part is the bare variable
        bad = None
        for j in range(ring.N):
            ej = tuple(int(k == j) for k in range(ring.N))
            for e in nxt:
                if _residue(e, p) == ej and e != ej:
                    bad = j
                    break
            if bad is not None:
                break
        if bad is None:
            G = nxt
            witness = check_semigroup(G, ring)
            if all(sum(e) != 1 for e in G):
                raise SemigroupError(min(G))
            return G, witness, trace
        cur = poly_derivative(ring, nxt, bad)
        trace.append(("derive-coefficient", bad))
        check_semigroup(cur, ring)


class NormalizedLinear:
    """The linear relation scaled by one coefficient, with its diagnostics."""

    __slots__ = ("index_set", "D", "coeffs", "c0", "c0_equation", "violations")

    def __init__(self, index_set, D, coeffs, c0, c0_equation, violations):
        self.index_set = index_set
        self.D = D
        self.coeffs = coeffs
        self.c0 = c0
        self.c0_equation = c0_equation
        self.violations = violations

    def ok(self):
        return self.c0_equation and not self.violations

    def __repr__(self):
        return (f"NormalizedLinear(index_set={self.index_set!r}, "
                f"c0_equation={self.c0_equation!r}, "
                f"violations={self.violations!r})")


def normalize_linear(G, ring):
    """Scale G = sum c_i X_i + c_0 and check the constant-term equation.

    Divides by the first nonzero c_j, verifies that the active scaled
    coefficients are tau-fixed, that the active D_i coincide, and that
    c_0 = tau(c_0)/D + (1/D) sum c_i B_i holds exactly.  Failures of the
    expected conclusions are reported in the violations list.
    """
    G = ring.coerce_poly(G)
    violations = []
    coeffs = {}
    c0 = ring.field.zero()
    for e, c in G.items():
        if sum(e) == 1:
            coeffs[e.index(1) + 1] = c
        elif not any(e):
            c0 = c
        else:
            violations.append(f"non-linear monomial X^{e}")
    if not coeffs:
        raise ValueError("G has no linear part")
    j = min(coeffs)
    inv = ring.field.one() / coeffs[j]
    coeffs = {i: inv * c for i, c in coeffs.items()}
    c0 = inv * c0
    for i, c in coeffs.items():
        if ring.tau(c) != c:
            violations.append(f"coefficient {i} is not tau-fixed")
    index_set = sorted(coeffs)
    D = ring.Ds[j - 1]
    for i in index_set:
        if ring.Ds[i - 1] != D:
            violations.append(f"D_{i} differs from D_{j}")
    rhs = ring.tau(c0) / D
    for i in index_set:
        rhs = rhs + coeffs[i] * ring.Bs[i - 1] / D
    return NormalizedLinear(index_set, D, coeffs, c0, c0 == rhs, violations)


def theta_to_x(outer, beta):
    """Lift an element of F_q(theta) to F_q(theta)(x) with theta -> x."""
    K = outer.base
    num = outer.from_poly([K.coerce(c) for c in beta.num])
    den = outer.from_poly([K.coerce(c) for c in beta.den])
    return num / den


def polylog_twist_ring(q, s, betas, var="x"):
    """The standard instantiation for families of polylogarithm series.

    U is the perfect closure of F_q(theta)(x), tau fixes F_q(theta) and
    sends x to x^q, D_i = (x^q - theta)^s and B_i is beta_i with theta
    replaced by x.
    """
    K = rational_field(q)
    outer = frac_field(K, var)
    U = perfect_closure(outer)
    x = outer.gen()
    theta = outer.coerce(K.gen())
    D = (x ** q - theta) ** s

    def tau(u):
        return U.coerce(u).map_base(lambda r: r.stretch(q))

    Ds = [U.coerce(D)] * len(betas)
    Bs = [U.coerce(theta_to_x(outer, K.coerce(b))) for b in betas]
    return TwistRing(U, tau, Ds, Bs)
