"""Classical braid representations (standard, Burau, LKB), their rotation
extensions via commuting correction matrices, the explicit block and
low-strand extensions, and the dimension-2 catalog.

All constructions are exact.  Fractional parameter powers are realized by
substituting each base variable with a power of a fresh root variable, so a
value such as t^(-1/3) is an honest Laurent monomial in the adjoined root.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    NotDiagonalizable,
    ParameterDegenerate,
    RestrictionViolated,
)
from .linalg import (
    ExactMatrix,
    _nth_root_rational,
    burnside_irreducible,
    monomial_spectrum,
    spectral_projectors,
)
from .presentations import (
    RepAssignment,
    braid_relations,
    necklace_relations_full,
    verify,
)
from .scalar import (
    ONE,
    ZERO,
    CyclotomicNumber,
    RootContext,
    Scalar,
    imaginary_unit,
    rational,
    root_of_unity,
    var,
)


def _coerce(x):
    return Scalar._coerce(x)


def _jsonable(v):
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


class BraidRep:
    """Braid-group representation: exact images of sigma_1..sigma_{n-1}.

    The braid relations are verified at construction unless check=False.
    """

    def __init__(self, n, images, params=None, name="", check=True):
        self.n = n
        self.name = name
        self.images = dict(images)
        self.params = dict(params or {})
        self.degree = self.images["sigma1"].dim
        if check:
            report = verify(self.assignment(), braid_relations(n))
            if not report.ok:
                raise ValueError(
                    "%s is not a braid representation: %s fails"
                    % (name or "assignment", report.failures[0]["label"])
                )

    def sigma(self, i):
        return self.images["sigma%d" % i]

    def assignment(self):
        return RepAssignment("braid", self.n, "matrix", self.images)

    def substitute(self, mapping, check=False):
        return BraidRep(
            self.n,
            {k: m.substitute(mapping) for k, m in self.images.items()},
            params={k: _coerce(v).substitute(mapping) for k, v in self.params.items()},
            name=self.name,
            check=check,
        )


def twist(rep):
    """Product of the braid generator images in index order.

    Powers of the twist conjugate sigma_1 along the index range; that
    property is verified before returning.
    """
    g = rep.sigma(1)
    for i in range(2, rep.n):
        g = g * rep.sigma(i)
    power = ExactMatrix.identity(rep.degree)
    for k in range(1, rep.n - 1):
        power = g * power
        if not power * rep.sigma(1) == rep.sigma(k + 1) * power:
            raise ValueError("twist conjugation identity failed at k=%d" % k)
    return g


class NecklaceExtension:
    """A braid representation together with a rotation image.

    sigma_n is always tau * sigma_{n-1} * tau^{-1}; the full relation suite
    is evaluated at construction and kept as .report.  Relation failures are
    recorded, never raised: check .relations_ok.
    """

    def __init__(self, base, tau, kind, flags=None, D=None):
        self.base = base
        self.n = base.n
        self.tau = tau
        self.kind = kind
        self.flags = dict(flags or {})
        self.D = D
        images = dict(base.images)
        images["sigma%d" % self.n] = tau * base.sigma(self.n - 1) * tau.inverse()
        images["tau"] = tau
        self.images = images
        self.report = verify(self.assignment(), necklace_relations_full(self.n))
        self.flags["relations_ok"] = self.report.ok

    @property
    def sigma_n(self):
        return self.images["sigma%d" % self.n]

    @property
    def relations_ok(self):
        return self.report.ok

    def assignment(self):
        return RepAssignment("necklace", self.n, "matrix", self.images)

    def to_json(self):
        return {
            "kind": self.kind,
            "n": self.n,
            "degree": self.base.degree,
            "flags": _jsonable(self.flags),
            "relations": self.report.to_json(),
            "matrices": {k: m.to_json() for k, m in self.images.items()},
        }


# -- the representation zoo ----------------------------------------------------

def standard_rep(n, z):
    """Degree-n representation with adjacent 2x2 blocks ((0, z), (1, 0))."""
    z = _coerce(z)
    if z.is_zero() or z.is_one():
        raise ParameterDegenerate("need z outside {0, 1}")
    block = ExactMatrix([[ZERO, z], [ONE, ZERO]])
    images = {}
    for i in range(1, n):
        images["sigma%d" % i] = (
            ExactMatrix.identity(i - 1)
            .direct_sum(block)
            .direct_sum(ExactMatrix.identity(n - i - 1))
        )
    return BraidRep(n, images, params={"z": z}, name="standard")


def burau_reduced(n, t):
    """Reduced Burau representation, degree n-1."""
    t = _coerce(t)
    if t.is_zero():
        raise ParameterDegenerate("need t != 0")
    d = n - 1
    images = {}
    for i in range(1, n):
        m = [[ONE if r == c else ZERO for c in range(d)] for r in range(d)]
        r = i - 1  # the generator scales coordinate r and couples r-1, r+1
        m[r][r] = -t
        if r > 0:
            m[r - 1][r] = -t
        if r + 1 < d:
            m[r + 1][r] = -ONE
        images["sigma%d" % i] = ExactMatrix(m)
    return BraidRep(n, images, params={"t": t}, name="burau_reduced")


def burau_unreduced(n, t):
    """Unreduced Burau representation, degree n; fixes the all-ones covector."""
    t = _coerce(t)
    if t.is_zero():
        raise ParameterDegenerate("need t != 0")
    images = {}
    for i in range(1, n):
        m = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
        r = i - 1
        m[r][r] = ONE - t
        m[r][r + 1] = t
        m[r + 1][r] = ONE
        m[r + 1][r + 1] = ZERO
        images["sigma%d" % i] = ExactMatrix(m)
    return BraidRep(n, images, params={"t": t}, name="burau_unreduced")


def _lkb_pairs(n):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def lkb(n, q, t):
    """Lawrence-Krammer-Bigelow representation on unordered index pairs,
    basis sorted lexicographically; degree n(n-1)/2."""
    q, t = _coerce(q), _coerce(t)
    if q.is_zero() or t.is_zero():
        raise ParameterDegenerate("need q, t != 0")
    pairs = _lkb_pairs(n)
    idx = {p: k for k, p in enumerate(pairs)}
    d = len(pairs)
    images = {}
    for i in range(1, n):
        m = [[ZERO] * d for _ in range(d)]

        def add(target, col, val):
            m[idx[target]][col] = m[idx[target]][col] + val

        for (a, b) in pairs:
            col = idx[(a, b)]
            s = {a, b}
            if s == {i, i + 1}:
                add((i, i + 1), col, t * q * q)
            elif not (i in s or i + 1 in s):
                add((a, b), col, ONE)
            elif i + 1 in s and i not in s:
                target = tuple(sorted(x if x != i + 1 else i for x in s))
                add(target, col, ONE)
            elif a == i:  # (i, j) with j > i+1
                add((i, i + 1), col, t * q * (q - ONE))
                add((i, b), col, ONE - q)
                add((i + 1, b), col, q)
            else:  # (j, i) with j < i
                add((a, i), col, ONE - q)
                add((a, i + 1), col, q)
                add((i, i + 1), col, q * (q - ONE))
        images["sigma%d" % i] = ExactMatrix(m)
    return BraidRep(n, images, params={"q": q, "t": t}, name="lkb")


# -- standard extensions via commuting correction matrices ----------------------

def _as_unit_root(u):
    """(m, j) with u = zeta_m^j for a root-of-unity cyclotomic, else None."""
    if u.is_rational():
        r = u.as_rational()
        if r == 1:
            return 1, 0
        if r == -1:
            return 2, 1
        return None
    m = u.order
    for mm in (m, 2 * m):
        for j in range(mm):
            if u == CyclotomicNumber.root(mm, j):
                return mm, j
    return None


def _inverse_sqrt(s):
    """Exact 1/sqrt(s) for a positive rational whose squarefree part only
    involves 2 and 3 (sqrt 2 and sqrt 3 live in small cyclotomic fields)."""
    flipped = Fraction(1) / s
    m = flipped.numerator * flipped.denominator
    u, v = 1, 1
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            u *= p
            m //= p * p
        if m % p == 0:
            v *= p
            m //= p
        p += 1
    v *= m
    out = rational(Fraction(u, flipped.denominator))
    for prime, order in ((2, 8), (3, 12)):
        if v % prime == 0:
            out = out * (root_of_unity(order) + root_of_unity(order, order - 1))
            v //= prime
    return out if v == 1 else None


def _root_inverse(c, k, branch=0):
    """c^(-1/k) * zeta_k^branch for a monomial whose exponents are all
    divisible by k and whose unit part is a root of unity, optionally times
    a rational magnitude whose exact k-th root is rational or a quadratic
    surd over the primes 2 and 3."""
    unit, exps = c.monomial_parts()
    mag = ONE
    mj = _as_unit_root(unit)
    if mj is None and unit.is_rational():
        aval = abs(unit.as_rational())
        r = _nth_root_rational(aval, k)
        if r is not None:
            mag = rational(Fraction(1) / r)
        else:
            r2 = _nth_root_rational(aval * aval, k)
            mag = _inverse_sqrt(r2) if r2 is not None else None
        if mag is not None:
            mj = (1, 0) if unit.as_rational() > 0 else (2, 1)
    if mj is None:
        raise ValueError("eigenvalue unit part is not a root of unity: %s" % unit)
    m, j = mj
    out = mag * Scalar.from_cyclotomic(
        CyclotomicNumber.root(k * m, (-j) % (k * m))
    ) * root_of_unity(k, branch % k)
    for v, e in exps.items():
        if e % k:
            raise ValueError("exponent of %s is not divisible by %d" % (v, k))
        out = out * var(v) ** (-(e // k))
    if not out**k * c == ONE:
        raise ValueError("root extraction failed for %s" % c)
    return out


def projector_extension(rep, gamma, kind, branch=0, candidates=(), flags=None):
    """Extension with tau = D * gamma for a conjugator matrix gamma shifting
    sigma_i to sigma_{i+1}; D is built from the spectral projectors of
    gamma^(2n) with eigenvalue powers c^(-1/2n).

    Each base variable appearing in an eigenvalue is replaced by the minimal
    power of a fresh root variable that makes the fractional power exact.
    branch picks the global 2n-th root of unity multiplier on D.
    """
    n = rep.n
    k = 2 * n
    spectrum = monomial_spectrum(gamma**k, candidates)
    projs = spectral_projectors(gamma**k, spectrum)

    var_gcd = {}
    for c, _ in spectrum:
        if not c.is_monomial():
            raise NotDiagonalizable("eigenvalue is not a Laurent monomial: %s" % c)
        for v, e in c.monomial_parts()[1].items():
            var_gcd[v] = math.gcd(var_gcd.get(v, 0), abs(e))
    contexts = {}
    mapping = {}
    for v, g in var_gcd.items():
        r = k // math.gcd(k, g)
        if r > 1:
            ctx = RootContext(v, r)
            contexts[v] = ctx
            mapping[v] = ctx.root(r)

    base = rep.substitute(mapping) if mapping else rep
    gamma_s = gamma.substitute(mapping) if mapping else gamma
    D = ExactMatrix.zeros(rep.degree)
    lams = []
    for (c, _), P in zip(spectrum, projs):
        lam = _root_inverse(c.substitute(mapping) if mapping else c, k, branch)
        lams.append(lam)
        D = D + (P.substitute(mapping) if mapping else P).scale(lam)
    for i in range(1, n):
        gi = base.sigma(i)
        if not D * gi == gi * D:
            raise ValueError("correction matrix does not commute with generator %d" % i)
    tau = D * gamma_s
    merged = dict(flags or {})
    merged.update(
        {
            "branch": branch,
            "root_substitution": {
                v: (ctx.root_name, ctx.k) for v, ctx in contexts.items()
            },
            "d_scalar": str(lams[0]) if len(lams) == 1 else None,
        }
    )
    ext = NecklaceExtension(base, tau, kind, flags=merged, D=D)
    ext.contexts = contexts
    ext.lambdas = lams
    return ext


def standard_extension(rep, branch=0, candidates=()):
    """Extension with tau = D * twist(rep); see projector_extension."""
    return projector_extension(
        rep, twist(rep), "standard", branch, candidates, flags={"standard": True}
    )


def nonstandard_block_tau(n, z, t_param):
    """Extension of the standard representation by the weighted cyclic-shift
    block matrix; flags whether the parameter pair lands on a standard
    extension (rotation scalar a 2n-th root of the inverse twist scalar)."""
    if n < 3:
        raise ValueError("need n >= 3")
    t_param = _coerce(t_param)
    if t_param.is_zero():
        raise ParameterDegenerate("need t != 0")
    rep = standard_rep(n, z)
    z = rep.params["z"]
    rows = [[ZERO] * n for _ in range(n)]
    rows[0][n - 1] = t_param ** (-(n - 1))
    for i in range(1, n):
        rows[i][i - 1] = t_param
    tau = ExactMatrix(rows)
    flags = {
        "standard": t_param ** (2 * n) == z ** (-2 * (n - 1)),
        "tau_power_identity": (tau**n).is_identity(),
    }
    return NecklaceExtension(rep, tau, "block", flags=flags)


# -- the two-strand rotation catalog --------------------------------------------

def _n2_sqrt(z, sqrt_z):
    z = _coerce(z)
    if sqrt_z is not None:
        return z, _coerce(sqrt_z)
    if z.is_monomial():
        unit, exps = z.monomial_parts()
        if len(exps) == 1 and unit == CyclotomicNumber.ONE:
            ((v, e),) = exps.items()
            if e % 2 == 0:
                return z, var(v) ** (e // 2)
            ctx = RootContext(v, 2)
            return ctx.apply(z), ctx.root(e)
    raise ValueError("pass sqrt_z explicitly for z = %s" % z)


def n2_tau_list(z, sqrt_z=None, corrected=False):
    """Rotation candidates for the two-strand group over the standard
    representation.

    corrected=False returns the twelve commonly displayed matrices (two of
    which, the non-scalar diagonal pair, fail the defining conditions; see
    n2_tau_conditions).  corrected=True returns the sixteen matrices
    (1/2)*((u+v, (u-v)*s), ((u-v)/s, u+v)) for 4th roots of unity u, v and
    s^2 = z, which is the genuine solution set.

    When z is an odd power of a single variable the square root is adjoined
    automatically and the matrices live over the root variable.
    """
    z, s = _n2_sqrt(z, sqrt_z)
    i_ = imaginary_unit()
    half = rational(1, 2)
    out = []
    if corrected:
        units = [ONE, i_, -ONE, -i_]
        for u in units:
            for v in units:
                out.append(
                    ExactMatrix(
                        [
                            [(u + v) * half, (u - v) * half * s],
                            [(u - v) * half / s, (u + v) * half],
                        ]
                    )
                )
        return out
    out.append(ExactMatrix.identity(2))
    out.append(-ExactMatrix.identity(2))
    out.append(ExactMatrix.diagonal([ONE, i_ / z]))
    out.append(-ExactMatrix.diagonal([ONE, i_ / z]))
    for xi in (ONE, i_, -ONE, -i_):
        out.append(ExactMatrix([[ZERO, xi * s], [xi / s, ZERO]]))
    for sign in (ONE, -ONE):
        for u, v in ((ONE + i_, ONE - i_), (ONE - i_, ONE + i_)):
            out.append(
                ExactMatrix(
                    [
                        [sign * u * half, sign * v * half * s],
                        [sign * v * half / s, sign * u * half],
                    ]
                )
            )
    return out


def n2_tau_conditions(tau, z, sqrt_z=None):
    """Exact checks for an n=2 rotation candidate: commutation with the
    2x2 block, trivial fourth power, square central for conjugation, and
    the full two-strand relation suite."""
    z, _ = _n2_sqrt(z, sqrt_z)
    Z = ExactMatrix([[ZERO, z], [ONE, ZERO]])
    tau2 = tau * tau
    rep = BraidRep(2, {"sigma1": Z}, params={"z": z}, name="standard")
    return {
        "commutes": tau * Z == Z * tau,
        "fourth_power": (tau**4).is_identity(),
        "conj_squared": tau2 * Z == Z * tau2,
        "nb2_ok": NecklaceExtension(rep, tau, "catalog").relations_ok,
    }


# -- explicit low-strand LKB rotations -------------------------------------------

def _lkb_m3(q, t):
    p = q - ONE
    qi = q.inverse()
    return ExactMatrix(
        [
            [ZERO, (q * q - q + ONE) * qi * qi, -p * qi * qi],
            [ZERO, -p * qi, qi],
            [t * q * q, p * (t * q * q - q + ONE) * qi, p * qi],
        ]
    )


def _lkb_m4(q, t):
    p = q - ONE

    def e(num, qpow):
        return num / (q**qpow * t)

    return ExactMatrix(
        [
            [ZERO, ZERO, e(q**3 - q + ONE, 4), ZERO, e(-p, 4), e(-p, 4)],
            [ZERO, ZERO, e(-p, 3), ZERO, e(q * q - q + ONE, 3), e(-p, 3)],
            [ZERO, ZERO, e(-p, 2), ZERO, e(-p, 2), e(ONE, 2)],
            [
                q * q,
                ZERO,
                e(p * (q**3 * t - q + ONE), 3),
                ZERO,
                e(q**3 - 2 * q * q + 2 * q - ONE, 3),
                e(-p * p, 3),
            ],
            [
                ZERO,
                q * q,
                e(p * (q**3 * t - q + ONE), 2),
                ZERO,
                e(-p * p, 2),
                e(p, 2),
            ],
            [
                ZERO,
                ZERO,
                e(-p * p, 1),
                q * q,
                e(q**3 * t - q * q * (t + ONE) + 2 * q - ONE, 1),
                e(p, 1),
            ],
        ]
    )


def lkb_nonstandard_tau(n, q, t, branch=0):
    """Explicit low-strand rotation matrices over the LKB representation.

    n=3: tau = alpha * M with alpha a cube root of +-1/t; branch in 0..5
    picks alpha = zeta_6^branch * t^(-1/3).  Even branches give tau^3 = I,
    a rotation with non-faithful image on the rotation subgroup.
    n=4: tau = beta * M with branch in 0..7 picking beta = zeta_8^branch *
    t^(1/2); tau^4 = +-I according to branch parity.

    t must be a plain variable; its cube or square root is adjoined.
    """
    q, t = _coerce(q), _coerce(t)
    if n == 3:
        root_order, unit_order = 3, 6
    elif n == 4:
        root_order, unit_order = 2, 8
    else:
        raise ValueError("explicit rotation matrices exist for n in {3, 4}")
    unit, exps = t.monomial_parts() if t.is_monomial() else (None, {})
    if list(exps.values()) != [1] or not unit == CyclotomicNumber.ONE:
        raise ValueError("t must be a plain variable to adjoin its root")
    ((tname, _),) = exps.items()
    ctx = RootContext(tname, root_order)
    s = ctx.root(1)
    mapping = {tname: s**root_order}
    rep = lkb(n, q, t).substitute(mapping)
    zeta = root_of_unity(unit_order, branch % unit_order)
    if n == 3:
        tau = _lkb_m3(q, s**3).scale(zeta * s.inverse())
    else:
        tau = _lkb_m4(q, s**2).scale(zeta * s)
    tau_n_scalar = (tau**n).scalar_multiple_of_identity()
    flags = {
        "branch": branch,
        "root_substitution": {tname: (ctx.root_name, ctx.k)},
        "faithful_probe": not (tau**n).is_identity(),
        "tau_n_scalar": str(tau_n_scalar) if tau_n_scalar is not None else None,
        "standard": False,
    }
    ext = NecklaceExtension(rep, tau, "nonstandard", flags=flags)
    ext.context = ctx
    return ext


def unreduced_burau_extension(n, t, a):
    """Weighted-shift extension of the unreduced Burau representation plus
    an irreducibility report for the whole group and its braid restriction."""
    a = _coerce(a)
    if a.is_zero():
        raise ParameterDegenerate("need a != 0")
    rep = burau_unreduced(n, t)
    rep.params["a"] = a
    rows = [[ZERO] * n for _ in range(n)]
    rows[0][n - 1] = a ** (n - 1)
    for i in range(1, n):
        rows[i][i - 1] = a.inverse()
    tau = ExactMatrix(rows)
    ext = NecklaceExtension(rep, tau, "unreduced_burau", flags={"standard": False})
    nb_gens = [ext.images["sigma%d" % i] for i in range(1, n + 1)] + [tau]
    report = {
        "nb_irreducible": burnside_irreducible(nb_gens),
        "braid_restriction_irreducible": burnside_irreducible(
            [rep.sigma(i) for i in range(1, n)]
        ),
        "tau_power_identity": (tau**n).is_identity(),
    }
    ext.flags.update(report)
    return ext, report


# -- dimension-2 catalog ---------------------------------------------------------

def _dim2_tau_variants(row):
    i_ = imaginary_unit()
    z3 = Scalar.from_cyclotomic(CyclotomicNumber.root(3))
    z6 = Scalar.from_cyclotomic(CyclotomicNumber.root(6))
    if row == 2:
        base = [
            ExactMatrix.diagonal([ONE, i_]),
            ExactMatrix.diagonal([i_, ONE]),
        ]
    elif row == 3:
        base = [
            ExactMatrix.diagonal([z6, ONE]),
            ExactMatrix.diagonal([z6**5, ONE]),
            ExactMatrix.diagonal([ONE, z6]),
            ExactMatrix.diagonal([ONE, z6**5]),
            ExactMatrix.diagonal([z3, z6]),
            ExactMatrix.diagonal([z6, z3]),
        ]
    elif row == 4:
        base = [
            ExactMatrix.diagonal([ONE, z3]),
            ExactMatrix.diagonal([ONE, z3**2]),
            ExactMatrix.diagonal([z3, z3**2]),
            ExactMatrix.diagonal([z3**2, z3]),
        ]
    else:
        raise ValueError("row must be in 2..4")
    out = []
    for m in base:
        out.append(m)
        out.append(-m)
    return out


def _induced_braid_images(n, sigma1, tau):
    images = {"sigma1": sigma1}
    cur = sigma1
    tau_inv = tau.inverse()
    for i in range(2, n):
        cur = tau * cur * tau_inv
        images["sigma%d" % i] = cur
    return images


def dim2_family(n, row, params):
    """One member of the dimension-2 catalog; sigma_i are induced from
    sigma_1 by rotation conjugation, so the relation suite is decisive.

    row 1: sigma_1 = ((a,1),(a^2-a*d+d^2,d)), tau = diag(-t2, t2);
           needs a != d.
    row 2: lower-left entry negated; tau diagonal in 4th roots of unity
           (variant 0..3); stated for n = 2; needs a != d.
    row 3: lower-left entry -(a^2-a*d+d^2)/2; tau from 6th roots of unity
           (variant 0..11); stated for n = 3; needs a != d.
    row 4: sigma_1 = ((omega*d,1),(c,d)) with omega = zeta_3 as displayed
           (pass omega_order=6 for the variant that satisfies the braid
           relation; omega_conjugate=True picks the conjugate root);
           tau from 3rd roots of unity (variant 0..7); needs d != 0 and
           c != omega*d^2.

    Relation failures are reported, not raised: see .relations_ok and
    .report.  flags carry the Burnside irreducibility verdict.
    """
    params = dict(params)
    if row == 1:
        a, d, t2 = _coerce(params["a"]), _coerce(params["d"]), _coerce(params["t2"])
        if a == d:
            raise RestrictionViolated("row 1 needs a != d")
        sigma1 = ExactMatrix([[a, ONE], [a * a - a * d + d * d, d]])
        tau = ExactMatrix.diagonal([-t2, t2])
    elif row in (2, 3):
        a, d = _coerce(params["a"]), _coerce(params["d"])
        if a == d:
            raise RestrictionViolated("row %d needs a != d" % row)
        c = a * a - a * d + d * d
        c = -c if row == 2 else -c / 2
        sigma1 = ExactMatrix([[a, ONE], [c, d]])
        tau = _dim2_tau_variants(row)[params.get("variant", 0)]
    elif row == 4:
        d, c = _coerce(params["d"]), _coerce(params["c"])
        order = params.get("omega_order", 3)
        k = order - 1 if params.get("omega_conjugate") else 1
        omega = Scalar.from_cyclotomic(CyclotomicNumber.root(order, k))
        if d.is_zero():
            raise RestrictionViolated("row 4 needs d != 0")
        if c == omega * d * d:
            raise RestrictionViolated("row 4 needs c != omega*d^2 (singular sigma_1)")
        sigma1 = ExactMatrix([[omega * d, ONE], [c, d]])
        tau = _dim2_tau_variants(4)[params.get("variant", 0)]
    else:
        raise ValueError("row must be in 1..4")
    rep = BraidRep(
        n,
        _induced_braid_images(n, sigma1, tau),
        params=params,
        name="dim2_row%d" % row,
        check=False,
    )
    ext = NecklaceExtension(rep, tau, "dim2", flags={"row": row})
    gens = [ext.images["sigma%d" % i] for i in range(1, n + 1)] + [tau]
    ext.flags["irreducible"] = burnside_irreducible(gens)
    return ext
