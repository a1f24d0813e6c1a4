"""Exact scalars: cyclotomic numbers extended by Laurent indeterminates.

A Scalar is a fraction num/den of sparse Laurent polynomials in named
variables with coefficients in Q(zeta_N).  Everything is canonicalized at
construction so == is structural and exact.  Fractional powers of a
variable are realized by substitution (t := s^k), never symbolically.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, ScalarParseError

# ---------------------------------------------------------------------------
# cyclotomic polynomials and power-basis reduction tables


@lru_cache(maxsize=None)
def _cyclotomic_poly(n):
    """Monic integer coefficient tuple (low->high) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    # x^n - 1 divided by the product of Phi_d for proper divisors d
    poly = [Fraction(0)] * (n + 1)
    poly[0], poly[n] = Fraction(-1), Fraction(1)
    for d in range(1, n):
        if n % d == 0:
            q = [Fraction(x) for x in _cyclotomic_poly(d)]
            poly = _poly_exact_div(poly, q)
    return tuple(int(c) for c in poly)


def _poly_exact_div(a, b):
    # dense univariate exact division, used only to build Phi_n
    a = list(a)
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = a[k + len(b) - 1] / b[-1]
        out[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    assert all(x == 0 for x in a[: len(b) - 1]), "non-exact division"
    return out


@lru_cache(maxsize=None)
def _phi(n):
    count = 0
    for k in range(1, n + 1):
        if math.gcd(k, n) == 1:
            count += 1
    return count


@lru_cache(maxsize=None)
def _reduction_table(n):
    """Coordinates of zeta_n^k over the power basis, for 0 <= k < max(n, 2*phi(n)-1)."""
    d = _phi(n)
    phi_n = _cyclotomic_poly(n)
    top = [Fraction(-c, phi_n[d]) for c in phi_n[:d]]  # zeta^d in the basis
    rows = []
    cur = [Fraction(0)] * d
    cur[0] = Fraction(1)
    for _ in range(max(n, 2 * d - 1)):
        rows.append(tuple(cur))
        # multiply by zeta
        carry = cur[d - 1]
        cur = [Fraction(0)] + cur[: d - 1]
        if carry:
            cur = [c + carry * t for c, t in zip(cur, top)]
    return tuple(rows)


class CyclotomicNumber:
    """Element of Q(zeta_N) in the power basis {zeta^k : k < phi(N)}.

    Rational values are always collapsed to order 1, so equal rationals
    are structurally identical regardless of how they were produced.
    """

    __slots__ = ("order", "coords")

    def __init__(self, order, coords):
        d = _phi(order)
        coords = tuple(coords)
        assert len(coords) == d
        if order > 1 and all(c == 0 for c in coords[1:]):
            order, coords = 1, (coords[0],)
        self.order = order
        self.coords = coords

    # -- constructors
    @staticmethod
    def from_rational(x):
        return CyclotomicNumber(1, (Fraction(x),))

    @staticmethod
    def root(n, k=1):
        """zeta_n^k."""
        n0 = n
        k %= n0
        g = math.gcd(k, n0) if k else n0
        n, k = n0 // g, k // g  # primitive order
        if n == 1:
            return CyclotomicNumber(1, (Fraction(1),))
        if n == 2:
            return CyclotomicNumber(1, (Fraction(-1),))
        return CyclotomicNumber(n, _reduction_table(n)[k])

    ZERO = None  # set below
    ONE = None

    # -- coercion
    def _to_order(self, m):
        if m == self.order:
            return self.coords
        step = m // self.order
        table = _reduction_table(m)
        d = _phi(m)
        out = [Fraction(0)] * d
        for k, c in enumerate(self.coords):
            if c:
                row = table[k * step]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)

    @staticmethod
    def _common(a, b):
        if a.order == b.order:
            return a.order, a.coords, b.coords
        m = a.order * b.order // math.gcd(a.order, b.order)
        return m, a._to_order(m), b._to_order(m)

    # -- predicates
    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_rational(self):
        return self.order == 1

    def as_rational(self):
        if self.order != 1:
            raise ValueError("not a rational number: %s" % (self,))
        return self.coords[0]

    # -- arithmetic
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other)
        if self.order == other.order == 1:
            return CyclotomicNumber(1, (self.coords[0] + other.coords[0],))
        m, a, b = CyclotomicNumber._common(self, other)
        return CyclotomicNumber(m, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, tuple(-c for c in self.coords))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return CyclotomicNumber(1, (Fraction(0),))
            return CyclotomicNumber(self.order, tuple(c * other for c in self.coords))
        if self.order == other.order == 1:
            return CyclotomicNumber(1, (self.coords[0] * other.coords[0],))
        m, a, b = CyclotomicNumber._common(self, other)
        d = _phi(m)
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        table = _reduction_table(m)
        out = list(conv[:d])
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                row = table[k]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return CyclotomicNumber(m, out)

    __rmul__ = __mul__

    def inverse(self):
        return _cyc_inverse(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("cyclotomic division by zero")
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = CyclotomicNumber.from_rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.order == 1 and self.coords[0] == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        if self.order == other.order:
            return self.coords == other.coords
        m, a, b = CyclotomicNumber._common(self, other)
        return a == b

    __hash__ = None  # mutable-free but intentionally unhashable; keys are exponent tuples

    def conj(self):
        """Complex conjugate (zeta -> zeta^-1)."""
        n = self.order
        if n == 1:
            return self
        table = _reduction_table(n)
        d = _phi(n)
        out = [Fraction(0)] * d
        for k, c in enumerate(self.coords):
            if c:
                row = table[(n - k) % n]
                for i in range(d):
                    out[i] += c * row[i]
        return CyclotomicNumber(n, out)

    def __complex__(self):
        z = complex(0)
        for k, c in enumerate(self.coords):
            if c:
                z += float(c) * complex(math.cos(2 * math.pi * k / self.order),
                                        math.sin(2 * math.pi * k / self.order))
        return z

    def __repr__(self):
        return "Cyc(%d, %s)" % (self.order, list(self.coords))


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a, b = _trim(a), _trim(b)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and any(r):
        r = _trim(r)
        if len(r) < len(b):
            break
        c = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] += c
        for j, bj in enumerate(b):
            r[k + j] -= c * bj
        r.pop()
    return _trim(q), _trim(r)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim([ (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n) ])


def _poly_mul_dense(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def _cyc_inverse(x):
    """Inverse in Q(zeta_N) via extended Euclid against Phi_N."""
    if x.is_zero():
        raise DivisionByZero("cyclotomic division by zero")
    if x.order == 1:
        return CyclotomicNumber(1, (1 / x.coords[0],))
    n, d = x.order, _phi(x.order)
    # xgcd(a, Phi_N): maintain s with s*a = r (mod Phi_N)
    r0, r1 = [Fraction(c) for c in _cyclotomic_poly(n)], _trim(list(x.coords))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while not (len(r1) == 1 and r1[0] == 0):
        if len(r1) == 1:
            break
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul_dense(q, s1))
    g, s = (r1, s1) if len(r1) == 1 and r1[0] != 0 else (r0, s0)
    assert len(g) == 1 and g[0] != 0, "element not invertible mod Phi_N?"
    inv = [c / g[0] for c in s]
    _, inv = _poly_divmod(inv, [Fraction(c) for c in _cyclotomic_poly(n)])
    inv = inv + [Fraction(0)] * (d - len(inv))
    return CyclotomicNumber(n, inv[:d])


CyclotomicNumber.ZERO = CyclotomicNumber(1, (Fraction(0),))
CyclotomicNumber.ONE = CyclotomicNumber(1, (Fraction(1),))


# ---------------------------------------------------------------------------
# sparse Laurent polynomials: dict[exponent tuple -> CyclotomicNumber]


def _p_add(a, b):
    out = dict(a)
    for e, c in b.items():
        if e in out:
            s = out[e] + c
            if s.is_zero():
                del out[e]
            else:
                out[e] = s
        else:
            out[e] = c
    return out


def _p_neg(a):
    return {e: -c for e, c in a.items()}


def _p_scale(a, c):
    if c.is_zero():
        return {}
    return {e: c * x for e, x in a.items()}


def _p_shift(a, s):
    if not any(s):
        return dict(a)
    return {tuple(e + d for e, d in zip(exp, s)): c for exp, c in a.items()}


def _p_mul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    if len(a) == 1:
        ((ea, ca),) = a.items()
        return {tuple(x + y for x, y in zip(ea, eb)): ca * cb for eb, cb in b.items()}
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if e in out:
                s = out[e] + ca * cb
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                c = ca * cb
                if not c.is_zero():
                    out[e] = c
    return out


def _p_min_exps(a, arity):
    mins = [0] * arity if not a else [min(e[i] for e in a) for i in range(arity)]
    return tuple(mins)


def _p_is_monomial(a):
    return len(a) == 1


def _lead_key(a):
    return max(a)


# -- multivariate gcd (inputs: true polynomials, min exponent >= 0) ----------


def _p_gcd(a, b, arity):
    """gcd up to units; returns a true polynomial dict."""
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    sa = _p_min_exps(a, arity)
    sb = _p_min_exps(b, arity)
    shift = tuple(min(x, y) for x, y in zip(sa, sb))
    a = _p_shift(a, tuple(-x for x in sa))
    b = _p_shift(b, tuple(-x for x in sb))
    if _p_is_monomial(a) or _p_is_monomial(b):
        return _p_shift({(0,) * arity: CyclotomicNumber.ONE}, shift)
    active = [i for i in range(arity) if any(e[i] for e in a) or any(e[i] for e in b)]
    if not active:
        return _p_shift({(0,) * arity: CyclotomicNumber.ONE}, shift)
    g = _p_gcd_rec(a, b, arity, active)
    return _p_shift(g, shift)


def _split_var(a, v):
    """View dict as polynomial in var v: {deg -> subpoly with v-slot zeroed}."""
    out = {}
    for e, c in a.items():
        d = e[v]
        sub = e[:v] + (0,) + e[v + 1:]
        out.setdefault(d, {})[sub] = c
    return out


def _join_var(parts, v):
    out = {}
    for d, sub in parts.items():
        for e, c in sub.items():
            out[e[:v] + (d,) + e[v + 1:]] = c
    return out


def _p_gcd_rec(a, b, arity, active):
    if len(active) == 1:
        return _uni_gcd(a, b, active[0], arity)
    v = active[-1]
    pa, pb = _split_var(a, v), _split_var(b, v)
    rest = active[:-1]
    conta = _list_gcd(list(pa.values()), arity, rest)
    contb = _list_gcd(list(pb.values()), arity, rest)
    cont = _p_gcd_rec(conta, contb, arity, rest) if rest else {(0,) * arity: CyclotomicNumber.ONE}
    ppa = {d: _p_exact_div(s, conta, arity) for d, s in pa.items()} if not _p_is_one(conta) else pa
    ppb = {d: _p_exact_div(s, contb, arity) for d, s in pb.items()} if not _p_is_one(contb) else pb
    g = _prs_gcd(ppa, ppb, v, arity, rest)
    return _p_mul(cont, g)


def _p_is_one(a):
    if len(a) != 1:
        return False
    ((e, c),) = a.items()
    return not any(e) and c == 1


def _list_gcd(polys, arity, active):
    if not active:
        return {(0,) * arity: CyclotomicNumber.ONE}
    g = {}
    for p in polys:
        g = _p_gcd_rec(g, p, arity, active) if g else dict(p)
        if _p_is_one(g):
            break
    return g if g else {(0,) * arity: CyclotomicNumber.ONE}


def _prs_gcd(pa, pb, v, arity, rest):
    """Primitive PRS on coefficient-wise polynomials in variable v."""
    def deg(p):
        return max(p) if p else -1

    def primitive(p):
        vals = list(p.values())
        cont = _list_gcd(vals, arity, rest) if rest else None
        if rest and not _p_is_one(cont):
            p = {d: _p_exact_div(s, cont, arity) for d, s in p.items()}
        return p

    A, B = primitive(dict(pa)), primitive(dict(pb))
    if deg(A) < deg(B):
        A, B = B, A
    while B:
        # pseudo-division: lc(B)^(dA-dB+1) * A = q*B + R
        dA, dB = deg(A), deg(B)
        lcB = B[dB]
        R = {d: dict(s) for d, s in A.items()}
        for _ in range(dA - dB + 1):
            dR = deg(R)
            if dR < dB:
                break
            lcR = R.pop(dR)
            # R = lcB*R' - lcR*B*x^(dR-dB)  (coefficient-level)
            newR = {}
            for d, s in R.items():
                newR[d] = _p_mul(s, lcB)
            for d, s in B.items():
                if d == dB:
                    continue
                dd = d + dR - dB
                term = _p_mul(s, lcR)
                newR[dd] = _p_add(newR.get(dd, {}), _p_neg(term))
            R = {d: s for d, s in newR.items() if s}
        A, B = B, primitive(R)
    # normalize: drop content in v=... and return with v-degrees reassembled
    g = _join_var(A, v)
    return g


def _uni_gcd(a, b, v, arity):
    """Monic Euclid in one variable over the cyclotomic field."""
    def to_dense(p):
        if not p:
            return [CyclotomicNumber.ZERO]
        d = max(e[v] for e in p)
        out = [CyclotomicNumber.ZERO] * (d + 1)
        for e, c in p.items():
            out[e[v]] = c
        return out

    def trim(p):
        while len(p) > 1 and p[-1].is_zero():
            p.pop()
        return p if p else [CyclotomicNumber.ZERO]

    A, B = trim(to_dense(a)), trim(to_dense(b))
    while not (len(B) == 1 and B[0].is_zero()):
        # remainder of A by B (monic steps)
        inv = B[-1].inverse()
        R = list(A)
        while len(R) >= len(B) and not (len(R) == 1 and R[0].is_zero()):
            c = R[-1] * inv
            k = len(R) - len(B)
            for j in range(len(B)):
                R[k + j] = R[k + j] - c * B[j]
            R.pop()
            R = trim(R)
        A, B = B, trim(R)
    if len(A) == 1:
        return {(0,) * arity: CyclotomicNumber.ONE}
    inv = A[-1].inverse()
    out = {}
    for d, c in enumerate(A):
        if not c.is_zero():
            e = [0] * arity
            e[v] = d
            out[tuple(e)] = c * inv
    return out


def _p_exact_div(a, b, arity):
    """Exact polynomial division a/b (raises if not divisible)."""
    if not a:
        return {}
    if _p_is_monomial(b):
        ((eb, cb),) = b.items()
        inv = cb.inverse()
        return {tuple(x - y for x, y in zip(e, eb)): c * inv for e, c in a.items()}
    rem = dict(a)
    out = {}
    lb = _lead_key(b)
    cb_inv = b[lb].inverse()
    while rem:
        la = _lead_key(rem)
        e = tuple(x - y for x, y in zip(la, lb))
        if any(x < 0 for x in e):
            raise ArithmeticError("non-exact polynomial division")
        c = rem[la] * cb_inv
        out[e] = c
        for eb, cbb in b.items():
            k = tuple(x + y for x, y in zip(e, eb))
            s = rem.get(k, CyclotomicNumber.ZERO) - c * cbb
            if s.is_zero():
                rem.pop(k, None)
            else:
                rem[k] = s
    return out


# ---------------------------------------------------------------------------


class Scalar:
    """Canonical fraction of Laurent polynomials over a cyclotomic field."""

    __slots__ = ("vars", "num", "den")

    def __init__(self, vars_, num, den, _canonical=False):
        if _canonical:
            self.vars, self.num, self.den = vars_, num, den
            return
        v, n, d = _canonicalize(vars_, num, den)
        self.vars, self.num, self.den = v, n, d

    # -- constructors
    @staticmethod
    def from_rational(x):
        c = CyclotomicNumber.from_rational(x)
        if c.is_zero():
            return Scalar((), {}, {(): CyclotomicNumber.ONE}, _canonical=True)
        return Scalar((), {(): c}, {(): CyclotomicNumber.ONE}, _canonical=True)

    @staticmethod
    def from_cyclotomic(c):
        if c.is_zero():
            return Scalar((), {}, {(): CyclotomicNumber.ONE}, _canonical=True)
        return Scalar((), {(): c}, {(): CyclotomicNumber.ONE}, _canonical=True)

    @staticmethod
    def _coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar.from_rational(x)
        if isinstance(x, CyclotomicNumber):
            return Scalar.from_cyclotomic(x)
        raise TypeError("cannot coerce %r to Scalar" % (x,))

    # -- variable alignment
    def _aligned(self, other):
        if self.vars == other.vars:
            return self.vars, self.num, self.den, other.num, other.den
        vs = tuple(sorted(set(self.vars) | set(other.vars)))
        return (vs, _remap(self.num, self.vars, vs), _remap(self.den, self.vars, vs),
                _remap(other.num, other.vars, vs), _remap(other.den, other.vars, vs))

    # -- predicates / views
    def is_zero(self):
        return not self.num

    def is_one(self):
        return self == ONE

    def is_rational(self):
        return not self.vars and (not self.num or (() in self.num and self.num[()].is_rational()))

    def as_rational(self):
        if self.vars:
            raise ValueError("not rational: %s" % self)
        if not self.num:
            return Fraction(0)
        return (self.num[()] / self.den[()]).as_rational()

    def as_cyclotomic(self):
        if self.vars:
            raise ValueError("not constant: %s" % self)
        if not self.num:
            return CyclotomicNumber.ZERO
        return self.num[()] / self.den[()]

    def is_constant(self):
        return not self.vars

    def is_monomial(self):
        """Single Laurent term with denominator 1."""
        return len(self.num) == 1 and self.den == {(0,) * len(self.vars): CyclotomicNumber.ONE}

    def monomial_parts(self):
        """(unit coefficient, {var: exponent}) for a monomial scalar."""
        if not self.is_monomial():
            raise ValueError("not a monomial: %s" % self)
        ((e, c),) = self.num.items()
        return c, {v: k for v, k in zip(self.vars, e) if k}

    # -- arithmetic
    def __add__(self, other):
        other = Scalar._coerce(other)
        vs, na, da, nb, db = self._aligned(other)
        if da == db:
            return Scalar(vs, _p_add(na, nb), da)
        return Scalar(vs, _p_add(_p_mul(na, db), _p_mul(nb, da)), _p_mul(da, db))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.vars, _p_neg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-Scalar._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = Scalar._coerce(other)
        vs, na, da, nb, db = self._aligned(other)
        return Scalar(vs, _p_mul(na, nb), _p_mul(da, db))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar._coerce(other)
        if other.is_zero():
            raise DivisionByZero("scalar division by zero")
        vs, na, da, nb, db = self._aligned(other)
        return Scalar(vs, _p_mul(na, db), _p_mul(da, nb))

    def __rtruediv__(self, other):
        return Scalar._coerce(other) / self

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("scalar division by zero")
        return Scalar(self.vars, self.den, self.num)

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("Scalar powers must be integers (use adjoin_formal_root)")
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            other = Scalar._coerce(other)
        except TypeError:
            return NotImplemented
        if self.vars != other.vars:
            vs, na, da, nb, db = self._aligned(other)
            return na == nb and da == db
        return self.num == other.num and self.den == other.den

    __hash__ = None  # see CyclotomicNumber

    # -- substitution / evaluation
    def substitute(self, mapping):
        """Replace variables by Scalars: mapping {name: Scalar}."""
        out_n = _p_eval(self.num, self.vars, mapping)
        out_d = _p_eval(self.den, self.vars, mapping)
        return out_n / out_d

    def complex_at(self, assignments=None):
        """Numeric embedding; assignments maps variable names to complex."""
        assignments = assignments or {}
        missing = [v for v in self.vars if v not in assignments]
        if missing:
            raise ValueError("unassigned variables: %s" % missing)
        def ev(p):
            z = complex(0)
            for e, c in p.items():
                term = complex(c)
                for v, k in zip(self.vars, e):
                    term *= assignments[v] ** k
                z += term
            return z
        return ev(self.num) / ev(self.den)

    # -- printing
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return "Scalar(%s)" % format_scalar(self)


def _remap(p, old_vars, new_vars):
    idx = [new_vars.index(v) for v in old_vars]
    out = {}
    for e, c in p.items():
        ne = [0] * len(new_vars)
        for i, x in zip(idx, e):
            ne[i] = x
        out[tuple(ne)] = c
    return out


def _p_eval(p, vars_, mapping):
    out = ZERO
    for e, c in p.items():
        term = Scalar.from_cyclotomic(c)
        for v, k in zip(vars_, e):
            if k:
                base = mapping.get(v, _var_scalar(v))
                term = term * base ** k
        out = out + term
    return out


def _canonicalize(vars_, num, den):
    num = {e: c for e, c in num.items() if not c.is_zero()}
    den = {e: c for e, c in den.items() if not c.is_zero()}
    if not den:
        raise DivisionByZero("zero denominator")
    arity = len(vars_)
    if not num:
        return (), {}, {(): CyclotomicNumber.ONE}
    # shift so den is a true polynomial with min exponent 0 per variable
    dshift = _p_min_exps(den, arity)
    if any(dshift):
        den = _p_shift(den, tuple(-x for x in dshift))
        num = _p_shift(num, tuple(-x for x in dshift))
    # cancel gcd (computed on the polynomial parts; num may be Laurent)
    if not _p_is_monomial(den):
        nshift = _p_min_exps(num, arity)
        npoly = _p_shift(num, tuple(-x for x in nshift))
        g = _p_gcd(npoly, den, arity)
        if not _p_is_one(g):
            npoly = _p_exact_div(npoly, g, arity)
            den = _p_exact_div(den, g, arity)
        num = _p_shift(npoly, nshift)
        # denominator may have turned into a monomial x^k: fold into num
        dshift2 = _p_min_exps(den, arity)
        if any(dshift2):
            den = _p_shift(den, tuple(-x for x in dshift2))
            num = _p_shift(num, tuple(-x for x in dshift2))
    if _p_is_monomial(den):
        ((e, c),) = den.items()
        if any(e):
            num = _p_shift(num, tuple(-x for x in e))
            den = {(0,) * arity: c}
    # normalize leading denominator coefficient to 1
    lc = den[_lead_key(den)]
    if not (lc == 1):
        inv = lc.inverse()
        num = _p_scale(num, inv)
        den = _p_scale(den, inv)
    # prune unused variables
    used = [i for i in range(arity) if any(e[i] for e in num) or any(e[i] for e in den)]
    if len(used) != arity:
        vs = tuple(vars_[i] for i in used)
        num = {tuple(e[i] for i in used): c for e, c in num.items()}
        den = {tuple(e[i] for i in used): c for e, c in den.items()}
        return vs, num, den
    return tuple(vars_), num, den


# -- public constructors ------------------------------------------------------

ZERO = Scalar.from_rational(0)
ONE = Scalar.from_rational(1)


@lru_cache(maxsize=None)
def _var_scalar(name):
    return Scalar((name,), {(1,): CyclotomicNumber.ONE}, {(0,): CyclotomicNumber.ONE},
                  _canonical=True)


def var(name):
    """The indeterminate `name` as a Scalar."""
    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) or name == "zeta":
        raise ValueError("bad variable name %r" % name)
    return _var_scalar(name)


def rational(x, y=None):
    return Scalar.from_rational(Fraction(x, y) if y is not None else Fraction(x))


def root_of_unity(n, k=1):
    """zeta_n^k as a Scalar."""
    if n < 1:
        raise ValueError("order must be positive")
    return Scalar.from_cyclotomic(CyclotomicNumber.root(n, k))


def imaginary_unit():
    return root_of_unity(4, 1)


def gauss_sqrt(m):
    """Exact square root of a positive integer, inside a cyclotomic field.

    sqrt(2) = zeta_8 + zeta_8^-1; for odd prime p the quadratic Gauss sum
    gives sqrt(p) (p = 1 mod 4) or i*sqrt(p) (p = 3 mod 4); composites
    multiply factor-wise.
    """
    if m < 0:
        raise ValueError("negative argument")
    if m == 0:
        return ZERO
    out = ONE
    # square part
    k = 2
    while k * k <= m:
        while m % (k * k) == 0:
            out = out * rational(k)
            m //= k * k
        k += 1
    # squarefree part, prime by prime
    p = 2
    while m > 1:
        if m % p == 0:
            out = out * _prime_sqrt(p)
            m //= p
        else:
            p += 1
    return out


def _prime_sqrt(p):
    if p == 2:
        return root_of_unity(8, 1) + root_of_unity(8, 7)
    g = ZERO  # quadratic Gauss sum sum_a (a|p) zeta_p^a
    for a in range(1, p):
        if pow(a, (p - 1) // 2, p) == 1:
            g = g + root_of_unity(p, a)
        else:
            g = g - root_of_unity(p, a)
    if p % 4 == 1:
        return g
    return root_of_unity(4, 3) * g  # g = i*sqrt(p) when p = 3 mod 4


# -- formal roots --------------------------------------------------------------


class RootContext:
    """Substitution context realizing var^(1/k) as a fresh indeterminate.

    After `ctx = adjoin_formal_root("t", 3)`, apply() rewrites t as s^3
    (s = ctx.root_name) and ctx.root(j) is t^(j/3), exactly.
    """

    def __init__(self, var_name, k, root_name=None):
        if k < 1:
            raise ValueError("root order must be >= 1")
        self.var_name = var_name
        self.k = k
        self.root_name = root_name or ("%s_rt%d" % (var_name, k))

    def apply(self, scalar):
        if self.var_name not in scalar.vars:
            return scalar
        return scalar.substitute({self.var_name: var(self.root_name) ** self.k})

    def root(self, j=1):
        """var^(j/k) as a Scalar."""
        return var(self.root_name) ** j

    def __repr__(self):
        return "RootContext(%s = %s^%d)" % (self.var_name, self.root_name, self.k)


def adjoin_formal_root(var_name, k, root_name=None):
    return RootContext(var_name, k, root_name)


# -- text grammar ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(zeta|[A-Za-z_][A-Za-z0-9_]*|\d+|\^|\*|/|\+|-|\(|\))")


def _tokenize(text):
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ScalarParseError("bad token at %r" % text[pos:pos + 10])
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        t = self.peek()
        if t is None or (expected is not None and t != expected):
            raise ScalarParseError("expected %r, got %r" % (expected, t))
        self.i += 1
        return t

    def expr(self):
        t = self.term()
        while self.peek() in ("+", "-"):
            if self.take() == "+":
                t = t + self.term()
            else:
                t = t - self.term()
        return t

    def term(self):
        t = self.unary()
        while self.peek() in ("*", "/"):
            if self.take() == "*":
                t = t * self.unary()
            else:
                t = t / self.unary()
        return t

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            k = self.take()
            if not k.isdigit():
                raise ScalarParseError("bad exponent %r" % k)
            return base ** (sign * int(k))
        return base

    def atom(self):
        t = self.peek()
        if t == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if t == "zeta":
            self.take()
            self.take("(")
            n = self.take()
            if not n.isdigit() or int(n) < 1:
                raise ScalarParseError("bad zeta order %r" % n)
            self.take(")")
            return root_of_unity(int(n))
        if t is not None and t.isdigit():
            self.take()
            return rational(int(t))
        if t is not None and re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", t):
            self.take()
            return var(t)
        raise ScalarParseError("unexpected token %r" % t)


def parse_scalar(text):
    """Parse the shared CLI/JSON scalar grammar, e.g. "zeta(8)^3 * t^-2 / (1 + q^2)"."""
    if isinstance(text, (int, Fraction)):
        return rational(text)
    p = _Parser(_tokenize(str(text)))
    out = p.expr()
    if p.peek() is not None:
        raise ScalarParseError("trailing input at %r" % p.toks[p.i:])
    return out


def _fmt_cyc(c):
    if c.is_rational():
        return str(c.coords[0])
    parts = []
    for k, x in enumerate(c.coords):
        if x == 0:
            continue
        if k == 0:
            parts.append(str(x))
        else:
            z = "zeta(%d)" % c.order + ("" if k == 1 else "^%d" % k)
            if x == 1:
                parts.append(z)
            elif x == -1:
                parts.append("-" + z)
            else:
                parts.append("%s*%s" % (x, z))
    s = parts[0]
    for p in parts[1:]:
        s += " - " + p[1:] if p.startswith("-") else " + " + p
    return s


def _fmt_poly(p, vars_):
    if not p:
        return "0"
    terms = []
    for e in sorted(p, reverse=True):
        c = p[e]
        factors = []
        for v, k in zip(vars_, e):
            if k == 1:
                factors.append(v)
            elif k:
                factors.append("%s^%d" % (v, k) if k > 0 else "%s^-%d" % (v, -k))
        cs = _fmt_cyc(c)
        simple = c.is_rational() or not factors
        if factors and c == 1:
            terms.append("*".join(factors))
        elif factors and c == -1:
            terms.append("-" + "*".join(factors))
        elif factors:
            coef = cs if simple else "(%s)" % cs
            terms.append(coef + "*" + "*".join(factors))
        else:
            terms.append(cs if simple else "(%s)" % cs)
    s = terms[0]
    for t in terms[1:]:
        s += " - " + t[1:] if t.startswith("-") else " + " + t
    return s


def format_scalar(s):
    num = _fmt_poly(s.num, s.vars)
    if s.den == {(0,) * len(s.vars): CyclotomicNumber.ONE}:
        return num
    den = _fmt_poly(s.den, s.vars)
    ns = "(%s)" % num if (len(s.num) > 1 or s.num and _needs_parens(num)) else num
    ds = "(%s)" % den if len(s.den) > 1 or _needs_parens(den) else den
    return "%s / %s" % (ns, ds)


def _needs_parens(text):
    return ("+" in text or " - " in text or "*" in text or "/" in text
            or text.startswith("-"))
