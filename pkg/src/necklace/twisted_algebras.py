"""Symbolic twisted group algebras in normal form: the q-commuting shift
algebra with a cyclic rotation adjoined, and the quaternionic analogue.
Provides the braid-generator images, conjugation monomiality reports, and
the exact matrix model on tensor powers.

Normal forms: t^a u_1^{a_1}..u_n^{a_n} (rotation exponent mod n, site
exponents mod m) and t^a u^eps v^nu (site exponents mod 2, signs absorbed
into coefficients).  Products are strictly normal-ordered by the defining
commutation rules, so equality of elements is equality of coefficient maps.
"""

from __future__ import annotations

from .errors import TagMismatch
from .linalg import ExactMatrix, LocalOperator, materialize
from .presentations import RepAssignment, necklace_relations_reduced, verify
from .scalar import ONE, ZERO, Scalar, gauss_sqrt, root_of_unity


def _coerce(x):
    return Scalar._coerce(x)


class AlgebraElement:
    """Element of a twisted algebra: coefficient map over normal-form
    monomials.  Immutable; zero coefficients are never stored."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    def _match(self, other):
        if not isinstance(other, AlgebraElement):
            return self.algebra.scalar(_coerce(other))
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise TagMismatch(
                "elements of %s and %s" % (self.algebra.tag_str, other.algebra.tag_str)
            )
        return other

    def __add__(self, other):
        other = self._match(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, ZERO) + c
        return AlgebraElement(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._match(other))

    def __rsub__(self, other):
        return (-self) + self._match(other)

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            c = _coerce(other)
            return AlgebraElement(
                self.algebra, {m: x * c for m, x in self.terms.items()}
            )
        other = self._match(other)
        out = {}
        mul = self.algebra._mul_monomials
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m, phase = mul(ma, mb)
                c = out.get(m, ZERO) + ca * cb * phase
                out[m] = c
        return AlgebraElement(self.algebra, out)

    def __rmul__(self, other):
        return self * other  # scalar coefficients are central

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.algebra.one()
        cur = self
        while k:
            if k & 1:
                out = out * cur
            cur = cur * cur
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            other = self._match(other)
        except TagMismatch:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def is_zero(self):
        return not self.terms

    def scalar_part(self):
        """Coefficient of the identity monomial."""
        return self.terms.get(self.algebra.unit_monomial, ZERO)

    def is_scalar(self):
        return all(m == self.algebra.unit_monomial for m in self.terms)

    def inverse(self):
        """Inverse via the minimal polynomial on the Krylov span of powers.

        The span lives inside the finite monomial basis, so the loop always
        terminates; a vanishing constant term means the element is singular.
        """
        key = self.algebra.monomial_key
        rows = {}  # pivot monomial -> (reduced vector, {power index: coeff})
        powers = [self.algebra.one()]
        while True:
            vec = dict(powers[-1].terms)
            combo = {len(powers) - 1: ONE}
            while vec:
                pivot = min(vec, key=key)
                c = vec.pop(pivot)
                if pivot not in rows:
                    inv = c.inverse()
                    rvec = {m: x * inv for m, x in vec.items()}
                    rvec[pivot] = ONE
                    rows[pivot] = (rvec, {k: x * inv for k, x in combo.items()})
                    break
                rvec, rcombo = rows[pivot]
                for m, x in rvec.items():
                    if m == pivot:
                        continue
                    y = vec.get(m, ZERO) - c * x
                    if y.is_zero():
                        vec.pop(m, None)
                    else:
                        vec[m] = y
                for k, x in rcombo.items():
                    y = combo.get(k, ZERO) - c * x
                    if y.is_zero():
                        combo.pop(k, None)
                    else:
                        combo[k] = y
            else:
                # linear dependence: sum_k combo[k] * e^k = 0
                c0 = combo.get(0, ZERO)
                if c0.is_zero():
                    raise ZeroDivisionError("element is not a unit")
                scale = -c0.inverse()
                out = self.algebra.zero()
                for k, x in combo.items():
                    if k:
                        out = out + powers[k - 1] * (x * scale)
                return out
            powers.append(powers[-1] * self)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=self.algebra.monomial_key):
            c = self.terms[m]
            mon = self.algebra.monomial_str(m)
            cs = str(c)
            if mon == "1":
                bits.append(cs)
            elif cs == "1":
                bits.append(mon)
            elif cs == "-1":
                bits.append("-" + mon)
            elif "+" in cs or "-" in cs[1:]:
                bits.append("(%s)*%s" % (cs, mon))
            else:
                bits.append("%s*%s" % (cs, mon))
        return " + ".join(bits).replace("+ -", "- ")

    __repr__ = __str__


def algebra_mul(a, b):
    return a * b


class NesAlgebra:
    """Twisted shift algebra on n sites with site order m.

    Generators t (rotation) and u_1..u_n (u_n derived, kept in the basis);
    adjacent sites q^2-commute cyclically, far sites commute, conjugation by
    t shifts indices mod n.  q is a primitive m-th or 2m-th root of unity
    according to the parity of m.
    """

    tag = "nes"

    def __init__(self, m, n):
        if m < 2 or n < 3:
            raise ValueError("need m >= 2 and n >= 3")
        self.m = m
        self.n = n
        self.q = root_of_unity(m if m % 2 else 2 * m, 1)
        self.unit_monomial = (0, (0,) * n)
        self.tag_str = "NES(%d,%d)" % (m, n)

    def __eq__(self, other):
        return (
            isinstance(other, NesAlgebra) and (self.m, self.n) == (other.m, other.n)
        )

    __hash__ = None

    # normal form: t^a u_1^{e_0} .. u_n^{e_{n-1}}
    def _mul_monomials(self, ma, mb):
        a, ea = ma
        b, eb = mb
        n, m = self.n, self.m
        shifted = tuple(ea[(j + b) % n] for j in range(n))
        phase = 0
        # conjugating by t^b rotates the factor sequence; re-sorting it costs
        # a swap at the adjacent boundary and one at the wrap boundary
        r = (-b) % n
        if r:
            phase -= 2 * shifted[r] * shifted[r - 1]
            phase += 2 * shifted[n - 1] * shifted[0]
        for i in range(n):
            if not shifted[i]:
                continue
            for j in range(i):
                if not eb[j]:
                    continue
                if i - j == 1:
                    phase -= 2 * shifted[i] * eb[j]
                elif i - j == n - 1:
                    phase += 2 * shifted[i] * eb[j]
        mon = ((a + b) % n, tuple((shifted[k] + eb[k]) % m for k in range(n)))
        return mon, self.q**phase

    def monomial_key(self, mon):
        return mon

    def monomial_str(self, mon):
        a, exps = mon
        bits = []
        if a:
            bits.append("t" if a == 1 else "t^%d" % a)
        for i, e in enumerate(exps, start=1):
            if e:
                bits.append("u%d" % i if e == 1 else "u%d^%d" % (i, e))
        return " ".join(bits) if bits else "1"

    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return AlgebraElement(self, {self.unit_monomial: ONE})

    def scalar(self, c):
        return AlgebraElement(self, {self.unit_monomial: _coerce(c)})

    def t(self, e=1):
        return AlgebraElement(self, {(e % self.n, (0,) * self.n): ONE})

    def u(self, i, e=1):
        if not 1 <= i <= self.n:
            raise ValueError("site index out of range")
        exps = [0] * self.n
        exps[i - 1] = e % self.m
        return AlgebraElement(self, {(0, tuple(exps)): ONE})


class QuatAlgebra:
    """Quaternionic analogue on n sites: u_i, v_i square to -1, a pair
    (u_i, v_j) anticommutes exactly when the indices are equal or cyclically
    adjacent, u's commute with u's, v's with v's, and conjugation by the
    rotation t shifts indices mod n."""

    tag = "quat"

    def __init__(self, n):
        if n < 3:
            raise ValueError("need n >= 3")
        self.n = n
        self.q = root_of_unity(6, 1)
        self.unit_monomial = (0, (0,) * n, (0,) * n)
        self.tag_str = "Q_%d" % n

    def __eq__(self, other):
        return isinstance(other, QuatAlgebra) and self.n == other.n

    __hash__ = None

    def _anticommute(self, ui, vj):
        return (ui - vj) % self.n in (0, 1, self.n - 1)

    # normal form: t^a u_1^{e_0}..u_n^{e_{n-1}} v_1^{f_0}..v_n^{f_{n-1}}
    def _mul_monomials(self, ma, mb):
        a, ea, fa = ma
        b, eb, fb = mb
        n = self.n
        sea = tuple(ea[(j + b) % n] for j in range(n))
        sfa = tuple(fa[(j + b) % n] for j in range(n))
        sign = 0
        for i in range(n):  # move u_{j+1} of eb left through v_{i+1} of sfa
            if not sfa[i]:
                continue
            for j in range(n):
                if eb[j] and self._anticommute(j + 1, i + 1):
                    sign += 1
        for k in range(n):  # u_k^2 = v_k^2 = -1
            sign += sea[k] * eb[k] + sfa[k] * fb[k]
        mon = (
            (a + b) % n,
            tuple((sea[k] + eb[k]) % 2 for k in range(n)),
            tuple((sfa[k] + fb[k]) % 2 for k in range(n)),
        )
        return mon, (ONE if sign % 2 == 0 else -ONE)

    def monomial_key(self, mon):
        return mon

    def monomial_str(self, mon):
        a, ue, ve = mon
        bits = []
        if a:
            bits.append("t" if a == 1 else "t^%d" % a)
        for i, e in enumerate(ue, start=1):
            if e:
                bits.append("u%d" % i)
        for i, e in enumerate(ve, start=1):
            if e:
                bits.append("v%d" % i)
        return " ".join(bits) if bits else "1"

    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return AlgebraElement(self, {self.unit_monomial: ONE})

    def scalar(self, c):
        return AlgebraElement(self, {self.unit_monomial: _coerce(c)})

    def t(self, e=1):
        return AlgebraElement(
            self, {(e % self.n, (0,) * self.n, (0,) * self.n): ONE}
        )

    def u(self, i):
        exps = [0] * self.n
        exps[(i - 1) % self.n] = 1
        return AlgebraElement(self, {(0, tuple(exps), (0,) * self.n): ONE})

    def v(self, i):
        exps = [0] * self.n
        exps[(i - 1) % self.n] = 1
        return AlgebraElement(self, {(0, (0,) * self.n, tuple(exps)): ONE})


def nes_algebra(m, n):
    return NesAlgebra(m, n)


def quat_algebra(n):
    return QuatAlgebra(n)


def nes_mod_n_closure_check(m, n):
    """The wrap-around consequences of adjoining u_n := t u_{n-1} t^{-1}:
    adjacent q^2-commutation at both seams, far commutation with u_{n-2}
    (vacuous below n=4), and the rotation power landing on u_n."""
    A = nes_algebra(m, n)
    q2 = A.q**2
    un = A.u(n)
    out = {
        "adjacent_seam": A.u(n - 1) * un == un * A.u(n - 1) * q2,
        "adjacent_wrap": un * A.u(1) == A.u(1) * un * q2,
        "rotation_power": A.t(n - 1) * A.u(1) * A.t(1 - n) == un,
    }
    if n >= 4:
        out["far_commute"] = un * A.u(n - 2) == A.u(n - 2) * un
    out["ok"] = all(out.values())
    return out


def _nes_sigma(A, i):
    norm = gauss_sqrt(A.m).inverse()
    out = A.zero()
    for j in range(A.m):
        out = out + A.u(i, j) * (A.q ** (j * j))
    return out * norm


def nes_braid_generator(m, n, i):
    """Normalized Gauss-sum braid image (1/sqrt(m)) sum_j q^(j^2) u_i^j."""
    return _nes_sigma(nes_algebra(m, n), i)


def nes_conjugation_identities(m, n, i):
    """Monomiality of conjugation by the braid image: the two displayed
    identities, with indices wrapping mod n."""
    A = nes_algebra(m, n)
    R = _nes_sigma(A, i)
    Rinv = R.inverse()
    up = i % n + 1
    down = (i - 2) % n + 1
    lhs_up = R * A.u(up) * Rinv
    rhs_up = A.u(i, m - 1) * A.u(up) * A.q
    lhs_down = R * A.u(down) * Rinv
    rhs_down = A.u(down) * A.u(i) * A.q**-1
    out = {
        "next_site": lhs_up == rhs_up,
        "previous_site": lhs_down == rhs_down,
        "ok": False,
    }
    out["ok"] = out["next_site"] and out["previous_site"]
    return out


def nes_assignment(m, n):
    """Necklace assignment inside the algebra: sigma_i -> Gauss-sum image,
    tau -> t.  Suitable for verify() against any relation set."""
    A = nes_algebra(m, n)
    images = {"sigma%d" % i: _nes_sigma(A, i) for i in range(1, n + 1)}
    images["tau"] = A.t()
    return RepAssignment("necklace", n, "algebra", images, one=A.one())


class NesMatrixModel:
    """Exact matrix model of the shift algebra on the n-fold tensor power of
    an m-dimensional site space: u_i acts as the localized clock-shift
    two-site operator, t as the cyclic factor rotation."""

    def __init__(self, m, n, budget=4096):
        A = nes_algebra(m, n)
        self.algebra = A
        q = A.q
        d = m * m

        def entry(r, c):
            i, j = divmod(c, m)
            ri, rj = (i + 1) % m, (j + 1) % m
            return q ** (j - i) if r == ri * m + rj else ZERO

        U = ExactMatrix.from_fn(d, entry)
        self.X = materialize(LocalOperator.shift(m, n), budget=budget)
        xinv = self.X.inverse()
        us = [
            materialize(LocalOperator.block(m, n, i, U), budget=budget)
            for i in range(1, n)
        ]
        us.append(self.X * us[-1] * xinv)
        self.U = tuple(us)

    def psi(self, elem):
        """Image of an AlgebraElement as an exact matrix."""
        if elem.algebra != self.algebra:
            raise TagMismatch("element of %s" % elem.algebra.tag_str)
        n = self.algebra.n
        dim = self.U[0].dim
        out = ExactMatrix.zeros(dim)
        xpow = {0: ExactMatrix.identity(dim)}
        for (a, exps), c in elem.terms.items():
            if a not in xpow:
                xpow[a] = self.X**a
            cur = xpow[a]
            for i, e in enumerate(exps):
                for _ in range(e):
                    cur = cur * self.U[i]
            out = out + cur.scale(c)
        return out

    def relations_report(self):
        m, n, q = self.algebra.m, self.algebra.n, self.algebra.q
        eye = ExactMatrix.identity(self.U[0].dim)
        xinv = self.X.inverse()
        out = {
            "site_order": all((u**m) == eye for u in self.U),
            "rotation_order": (self.X**n) == eye,
            "shift": all(
                self.X * self.U[i] * xinv == self.U[(i + 1) % n] for i in range(n)
            ),
            "adjacent": all(
                self.U[i] * self.U[(i + 1) % n]
                == (self.U[(i + 1) % n] * self.U[i]).scale(q**2)
                for i in range(n)
            ),
            "far": all(
                self.U[i] * self.U[j] == self.U[j] * self.U[i]
                for i in range(n)
                for j in range(i)
                if (i - j) % n not in (1, n - 1)
            ),
        }
        out["ok"] = all(out.values())
        return out


def nes_matrix_model(m, n, budget=4096):
    return NesMatrixModel(m, n, budget=budget)


def nes_local_assignment(m, n, budget=4096):
    """The composite local necklace representation: matrix images of the
    Gauss-sum braid generators and the factor rotation."""
    model = NesMatrixModel(m, n, budget=budget)
    A = model.algebra
    images = {"sigma%d" % i: model.psi(_nes_sigma(A, i)) for i in range(1, n + 1)}
    images["tau"] = model.X
    return RepAssignment("necklace", n, "matrix", images)


def quat_generator(n, i):
    """Braid image (-1/2q)(1 + u_i + v_i + u_i v_i) with q a primitive 6th
    root of unity; indices wrap mod n."""
    A = quat_algebra(n) if not isinstance(n, QuatAlgebra) else n
    return _quat_sigma(A, i)


def _quat_sigma(A, i):
    c = -(A.q * 2).inverse()
    return (A.one() + A.u(i) + A.v(i) + A.u(i) * A.v(i)) * c


def quat_assignment(n):
    A = quat_algebra(n)
    images = {"sigma%d" % i: _quat_sigma(A, i) for i in range(1, n + 1)}
    images["tau"] = A.t()
    return RepAssignment("necklace", n, "algebra", images, one=A.one())


def quat_hom_check(n):
    """Reduced necklace relation suite for the quaternionic images, plus the
    explicit inverse formula (-q/2)(1 - u_i - v_i - u_i v_i)."""
    assignment = quat_assignment(n)
    report = verify(assignment, necklace_relations_reduced(n))
    A = quat_algebra(n)
    xi = _quat_sigma(A, 1)
    explicit = (A.one() - A.u(1) - A.v(1) - A.u(1) * A.v(1)) * (-A.q / 2)
    out = {r["label"]: r["status"] == "pass" for r in report.results}
    out["inverse_formula"] = xi * explicit == A.one()
    out["ok"] = report.ok and out["inverse_formula"]
    return out


def quat_conjugation_table(n, i):
    """The four displayed conjugation-monomiality identities, with the
    neighbour cases at k = i-1 and k = i+1 (mod n)."""
    A = quat_algebra(n)
    xi = _quat_sigma(A, i)
    out = {
        "u_same": A.u(i) * xi == xi * A.u(i) * A.v(i),
        "v_same": A.v(i) * xi == xi * A.u(i),
    }
    for label, k in (("minus", i - 1), ("plus", i + 1)):
        out["u_%s" % label] = A.u(k) * xi == xi * A.u(k) * A.v(i)
        out["v_%s" % label] = A.v(k) * xi == xi * (-(A.u(i) * A.v(i) * A.v(k)))
    out["ok"] = all(out.values())
    return out
