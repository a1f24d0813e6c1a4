"""Exact dense matrices over Scalar, local operators on tensor powers, and
the spectral / closure machinery built on them.

Everything here is exact: no floating point enters any decision.  Numeric
embeddings are used only to *suggest* eigenvalue candidates, which are then
certified by exact synthetic division.
"""

from __future__ import annotations

import hashlib
import math
import os
import random
import time
import zlib
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import (
    CapExceeded,
    CorruptCheckpoint,
    DivisionByZero,
    NonCyclotomicEntries,
    NotDiagonalizable,
    SizeBudgetExceeded,
    SpectrumNotResolved,
)
from .scalar import (
    ONE,
    ZERO,
    CyclotomicNumber,
    Scalar,
    _phi,
    _reduction_table,
    format_scalar,
    parse_scalar,
    rational,
    root_of_unity,
)
from .scalar import var as _var

DEFAULT_SIZE_BUDGET = 4096


def _coerce(x):
    return Scalar._coerce(x)


class ExactMatrix:
    """Immutable square matrix with Scalar entries."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(_coerce(x) for x in row) for row in rows)
        d = len(rows)
        if any(len(row) != d for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors
    @staticmethod
    def identity(d):
        return ExactMatrix(
            tuple(tuple(ONE if i == j else ZERO for j in range(d)) for i in range(d))
        )

    @staticmethod
    def zeros(d):
        return ExactMatrix(tuple((ZERO,) * d for _ in range(d)))

    @staticmethod
    def diagonal(entries):
        entries = [_coerce(x) for x in entries]
        d = len(entries)
        return ExactMatrix(
            tuple(
                tuple(entries[i] if i == j else ZERO for j in range(d))
                for i in range(d)
            )
        )

    @staticmethod
    def from_fn(d, fn):
        return ExactMatrix(tuple(tuple(fn(i, j) for j in range(d)) for i in range(d)))

    # -- structure
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.dim == other.dim and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    __hash__ = None

    def __repr__(self):
        return "ExactMatrix(%d)[%s]" % (
            self.dim,
            "; ".join(
                ", ".join(format_scalar(x) for x in row) for row in self.rows
            ),
        )

    @property
    def variables(self):
        out = set()
        for row in self.rows:
            for x in row:
                out.update(x.vars)
        return sorted(out)

    def transpose(self):
        return ExactMatrix(tuple(zip(*self.rows)))

    def trace(self):
        t = ZERO
        for i in range(self.dim):
            t = t + self.rows[i][i]
        return t

    def is_zero(self):
        return all(x.is_zero() for row in self.rows for x in row)

    def is_identity(self):
        return all(
            (x.is_one() if i == j else x.is_zero())
            for i, row in enumerate(self.rows)
            for j, x in enumerate(row)
        )

    def scalar_multiple_of_identity(self):
        """The scalar c with self == c*I, or None."""
        c = self.rows[0][0]
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if i == j:
                    if not x == c:
                        return None
                elif not x.is_zero():
                    return None
        return c

    # -- arithmetic
    def __add__(self, other):
        self._check_dim(other)
        return ExactMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __sub__(self, other):
        self._check_dim(other)
        return ExactMatrix(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __neg__(self):
        return ExactMatrix(tuple(tuple(-a for a in row) for row in self.rows))

    def scale(self, c):
        c = _coerce(c)
        return ExactMatrix(tuple(tuple(c * a for a in row) for row in self.rows))

    def _check_dim(self, other):
        if not isinstance(other, ExactMatrix) or other.dim != self.dim:
            raise ValueError("dimension mismatch")

    def __mul__(self, other):
        if not isinstance(other, ExactMatrix):
            return self.scale(other)
        self._check_dim(other)
        d = self.dim
        bcols = other.rows
        out = []
        for i in range(d):
            sparse = [(k, a) for k, a in enumerate(self.rows[i]) if not a.is_zero()]
            acc = [ZERO] * d
            for k, a in sparse:
                rowk = bcols[k]
                for j in range(d):
                    b = rowk[j]
                    if not b.is_zero():
                        acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return ExactMatrix(tuple(out))

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("matrix powers must be integers")
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def inverse(self):
        d = self.dim
        work = [list(row) + [ONE if i == j else ZERO for j in range(d)]
                for i, row in enumerate(self.rows)]
        for col in range(d):
            piv = next(
                (r for r in range(col, d) if not work[r][col].is_zero()), None
            )
            if piv is None:
                raise DivisionByZero("matrix is singular")
            work[col], work[piv] = work[piv], work[col]
            inv = work[col][col].inverse()
            work[col] = [x * inv for x in work[col]]
            for r in range(d):
                if r != col and not work[r][col].is_zero():
                    f = work[r][col]
                    work[r] = [a - f * b for a, b in zip(work[r], work[col])]
        return ExactMatrix(tuple(tuple(row[d:]) for row in work))

    def det(self):
        d = self.dim
        work = [list(row) for row in self.rows]
        out = ONE
        for col in range(d):
            piv = next(
                (r for r in range(col, d) if not work[r][col].is_zero()), None
            )
            if piv is None:
                return ZERO
            if piv != col:
                work[col], work[piv] = work[piv], work[col]
                out = -out
            p = work[col][col]
            out = out * p
            inv = p.inverse()
            for r in range(col + 1, d):
                if not work[r][col].is_zero():
                    f = work[r][col] * inv
                    work[r] = [a - f * b for a, b in zip(work[r], work[col])]
        return out

    # -- tensor structure
    def kron(self, other):
        return kron(self, other)

    def direct_sum(self, other):
        d1, d2 = self.dim, other.dim
        rows = []
        for i in range(d1):
            rows.append(tuple(self.rows[i]) + (ZERO,) * d2)
        for i in range(d2):
            rows.append((ZERO,) * d1 + tuple(other.rows[i]))
        return ExactMatrix(tuple(rows))

    # -- entry transforms
    def map_entries(self, fn):
        return ExactMatrix(tuple(tuple(fn(x) for x in row) for row in self.rows))

    def substitute(self, mapping):
        return self.map_entries(lambda x: x.substitute(mapping))

    def complex_at(self, assignments=None):
        return np.array(
            [[x.complex_at(assignments) for x in row] for row in self.rows],
            dtype=complex,
        )

    # -- serialization
    def to_json(self):
        return {
            "dim": self.dim,
            "entries": [[format_scalar(x) for x in row] for row in self.rows],
        }

    @staticmethod
    def from_json(obj):
        if set(obj) - {"dim", "entries"} or "entries" not in obj:
            raise ValueError("bad matrix payload")
        rows = [[parse_scalar(s) for s in row] for row in obj["entries"]]
        m = ExactMatrix(rows)
        if "dim" in obj and obj["dim"] != m.dim:
            raise ValueError("dim field disagrees with entries")
        return m


def kron(a, b):
    """Kronecker product."""
    da, db = a.dim, b.dim
    rows = []
    for i in range(da):
        for k in range(db):
            row = []
            for j in range(da):
                aij = a.rows[i][j]
                if aij.is_zero():
                    row.extend([ZERO] * db)
                else:
                    row.extend(aij * b.rows[k][l] for l in range(db))
            rows.append(tuple(row))
    return ExactMatrix(tuple(rows))


class LocalOperator:
    """Operator on an n-fold tensor power of an m-dimensional site space.

    Kinds: ("block", i, mat) acting on adjacent sites i, i+1 (1-based,
    i <= n-1) as an m^2 x m^2 matrix; ("shift",) rotating the factors one
    step so site 1 receives the last factor; ("dense", mat) a full matrix.
    """

    __slots__ = ("site_dim", "sites", "kind", "position", "mat")

    def __init__(self, site_dim, sites, kind, position=None, mat=None):
        if kind not in ("block", "shift", "dense"):
            raise ValueError("unknown kind: %r" % (kind,))
        if kind == "block":
            if not 1 <= position <= sites - 1:
                raise ValueError("block position out of range")
            if mat.dim != site_dim * site_dim:
                raise ValueError("block matrix must be m^2 x m^2")
        if kind == "dense" and mat.dim != site_dim**sites:
            raise ValueError("dense matrix must be m^n x m^n")
        self.site_dim = site_dim
        self.sites = sites
        self.kind = kind
        self.position = position
        self.mat = mat

    @staticmethod
    def block(site_dim, sites, position, mat):
        return LocalOperator(site_dim, sites, "block", position, mat)

    @staticmethod
    def shift(site_dim, sites):
        return LocalOperator(site_dim, sites, "shift")

    @staticmethod
    def dense(site_dim, sites, mat):
        return LocalOperator(site_dim, sites, "dense", mat=mat)


def _digits(index, m, n):
    """Site digits of a basis index, site 1 most significant."""
    out = [0] * n
    for k in range(n - 1, -1, -1):
        out[k] = index % m
        index //= m
    return out


def _index(digits, m):
    out = 0
    for d in digits:
        out = out * m + d
    return out


def materialize(op, budget=DEFAULT_SIZE_BUDGET):
    """Dense matrix of a LocalOperator; raises SizeBudgetExceeded if m^n > budget."""
    m, n = op.site_dim, op.sites
    dim = m**n
    if dim > budget:
        raise SizeBudgetExceeded(
            "materializing %d^%d = %d exceeds budget %d" % (m, n, dim, budget)
        )
    if op.kind == "dense":
        return op.mat
    if op.kind == "shift":
        rows = [[ZERO] * dim for _ in range(dim)]
        for col in range(dim):
            dg = _digits(col, m, n)
            rows[_index([dg[-1]] + dg[:-1], m)][col] = ONE
        return ExactMatrix(tuple(tuple(r) for r in rows))
    # block at position i: columns map through the m^2 x m^2 matrix
    i = op.position
    R = op.mat
    rows = [[ZERO] * dim for _ in range(dim)]
    for col in range(dim):
        dg = _digits(col, m, n)
        sub = dg[i - 1] * m + dg[i]
        for r in range(m * m):
            c = R.rows[r][sub]
            if not c.is_zero():
                nd = list(dg)
                nd[i - 1], nd[i] = divmod(r, m)
                rows[_index(nd, m)][col] = c
    return ExactMatrix(tuple(tuple(r) for r in rows))


# -- characteristic polynomial (Berkowitz, division-free)

def char_poly(mat):
    """Coefficients of det(xI - M), lowest degree first, monic."""
    d = mat.dim
    rows = mat.rows
    v = [ONE]  # highest-degree-first coefficient vector
    for k in range(1, d + 1):
        a = rows[k - 1][k - 1]
        R = rows[k - 1][: k - 1]
        w = [rows[i][k - 1] for i in range(k - 1)]
        t = [ONE, -a]
        for step in range(k - 1):
            dot = ZERO
            for rj, wj in zip(R, w):
                if not rj.is_zero() and not wj.is_zero():
                    dot = dot + rj * wj
            t.append(-dot)
            if step < k - 2:
                w = [
                    sum(
                        (rows[i][j] * w[j] for j in range(k - 1) if not w[j].is_zero()),
                        ZERO,
                    )
                    for i in range(k - 1)
                ]
        new = []
        for i in range(k + 1):
            acc = ZERO
            for j in range(max(0, i - k), min(i, k - 1) + 1):
                acc = acc + t[i - j] * v[j]
            new.append(acc)
        v = new
    return list(reversed(v))


def poly_eval_matrix(coeffs, mat):
    """Evaluate a coefficient list (lowest first) at a matrix."""
    out = ExactMatrix.zeros(mat.dim)
    for c in reversed(coeffs):
        out = out * mat
        if not c.is_zero():
            out = out + ExactMatrix.identity(mat.dim).scale(c)
    return out


def _synthetic_divide(coeffs, c):
    """Divide a poly (lowest first) by (x - c). Returns (quotient, remainder)."""
    n = len(coeffs) - 1
    q = [ZERO] * n
    acc = coeffs[n]
    for i in range(n - 1, -1, -1):
        q[i] = acc
        acc = coeffs[i] + c * acc
    return q, acc


def _nth_root_rational(x, r):
    """Exact rational r-th root of a Fraction, or None."""
    if x < 0:
        if r % 2 == 0:
            return None
        y = _nth_root_rational(-x, r)
        return -y if y is not None else None
    if x == 0:
        return Fraction(0)

    def iroot(v):
        lo, hi = 0, max(1, int(round(v ** (1.0 / r))) + 2)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if mid**r <= v:
                lo = mid
            else:
                hi = mid - 1
        return lo if lo**r == v else None

    p, q = iroot(x.numerator), iroot(x.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def _recognize_complex(z, max_order=64, tol=1e-8):
    """Suggest an exact Scalar equal to z of the form rational * root of unity."""
    mag = abs(z)
    if mag < tol:
        return ZERO
    fr = Fraction(mag).limit_denominator(10**6)
    if abs(float(fr) - mag) > tol * max(1.0, mag):
        return None
    ang = math.atan2(z.imag, z.real) / (2 * math.pi)
    frac = Fraction(ang).limit_denominator(max_order)
    if abs(float(frac) - ang) > 1e-6:
        return None
    cand = rational(fr) * root_of_unity(frac.denominator, frac.numerator % frac.denominator)
    return cand


def _unit_roots(c, r, max_order=64):
    """Roots of unity u with u**r == c, for a cyclotomic c of finite order."""
    for m in range(1, max_order + 1):
        if (c**m) == CyclotomicNumber.ONE:
            out = []
            # solutions live among the (r*m)-th roots of unity
            for j in range(r * m):
                u = CyclotomicNumber.root(r * m, j)
                if u**r == c:
                    out.append(u)
            return out
    return []


def _augment_candidates(coeffs):
    """Monomial eigenvalue guesses read off the residual polynomial."""
    out = []
    deg = len(coeffs) - 1
    c0 = coeffs[0]
    if deg < 1 or c0.is_zero():
        out.append(ZERO)
        return out
    nonzero = [i for i, c in enumerate(coeffs) if not c.is_zero()]
    if nonzero == [0, deg]:
        # binomial: eigenvalues are r-th roots of -c0/lead
        target = -c0 / coeffs[deg]
        if target.is_monomial():
            unit, exps = target.monomial_parts()
            if all(e % deg == 0 for e in exps.values()):
                base = ONE
                for v, e in exps.items():
                    base = base * _var(v) ** (e // deg)
                for u in _unit_roots(unit, deg):
                    out.append(Scalar.from_cyclotomic(u) * base)
    if all(c.is_constant() for c in coeffs):
        cs = [complex(c.as_cyclotomic()) for c in coeffs]
        roots = np.roots(list(reversed(cs)))
        for z in roots:
            cand = _recognize_complex(complex(z))
            if cand is not None:
                out.append(cand)
    return out


def monomial_spectrum(mat, candidates=()):
    """Eigenvalues with multiplicity, provided every eigenvalue is one of the
    candidates or a monomial guess read off the characteristic polynomial.

    Returns a list of (Scalar, multiplicity) pairs sorted by multiplicity.
    Raises SpectrumNotResolved if the characteristic polynomial does not
    split over the candidate pool.
    """
    c = mat.scalar_multiple_of_identity()
    if c is not None:
        return [(c, mat.dim)]
    coeffs = char_poly(mat)
    pool = [_coerce(x) for x in candidates]
    found = {}
    order = []
    progress = True
    while len(coeffs) > 1 and progress:
        progress = False
        for cand in pool:
            while len(coeffs) > 1:
                q, rem = _synthetic_divide(coeffs, cand)
                if rem.is_zero():
                    key = format_scalar(cand)
                    if key not in found:
                        found[key] = [cand, 0]
                        order.append(key)
                    found[key][1] += 1
                    coeffs = q
                    progress = True
                else:
                    break
        if len(coeffs) > 1 and not progress:
            extra = _augment_candidates(coeffs)
            existing = {format_scalar(p) for p in pool}
            fresh = [e for e in extra if format_scalar(e) not in existing]
            if fresh:
                pool.extend(fresh)
                progress = True
    if len(coeffs) > 1:
        raise SpectrumNotResolved(
            "characteristic polynomial does not split over the candidates",
            residual=[format_scalar(c) for c in coeffs],
        )
    return [tuple(found[k]) for k in order]


def spectral_projectors(mat, spectrum):
    """Lagrange projectors P_j onto the eigenspaces of a diagonalizable matrix.

    spectrum is a list of (eigenvalue, multiplicity) pairs covering the whole
    space; the minimal polynomial is verified to be squarefree first.
    """
    eigs = [(_coerce(c), m) for c, m in spectrum]
    d = mat.dim
    if sum(m for _, m in eigs) != d:
        raise ValueError("spectrum multiplicities must sum to the dimension")
    ident = ExactMatrix.identity(d)
    ann = ident
    for c, _ in eigs:
        ann = ann * (mat - ident.scale(c))
    if not ann.is_zero():
        raise NotDiagonalizable("minimal polynomial has a repeated root")
    projectors = []
    for c_j, _ in eigs:
        P = ident
        for c_k, _ in eigs:
            if c_k == c_j:
                continue
            P = P * (mat - ident.scale(c_k)).scale((c_j - c_k).inverse())
        projectors.append(P)
    return projectors


def nilpotency_probe(mat):
    """(is_identity, k) where k is the smallest power with (M - I)^k = 0.

    k is None when M - I is not nilpotent; k = 0 exactly when M = I.
    """
    if mat.is_identity():
        return True, 0
    N = mat - ExactMatrix.identity(mat.dim)
    power = N
    for k in range(1, mat.dim + 1):
        if power.is_zero():
            return False, k
        power = power * N
    return False, None


# -- linear span tooling

class _Echelon:
    """Row-echelon accumulator for vectors of Scalars (dicts index -> Scalar)."""

    def __init__(self):
        self.pivots = {}  # pivot index -> reduced vector

    def reduce(self, vec):
        vec = dict(vec)
        for p in sorted(self.pivots):
            if p in vec:
                f = vec[p]
                if f.is_zero():
                    del vec[p]
                    continue
                row = self.pivots[p]
                for j, b in row.items():
                    nv = vec.get(j, ZERO) - f * b
                    if nv.is_zero():
                        vec.pop(j, None)
                    else:
                        vec[j] = nv
        return {k: v for k, v in vec.items() if not v.is_zero()}

    def insert(self, vec):
        vec = self.reduce(vec)
        if not vec:
            return False
        p = min(vec)
        inv = vec[p].inverse()
        self.pivots[p] = {k: v * inv for k, v in vec.items()}
        return True

    @property
    def rank(self):
        return len(self.pivots)


def _mat_to_vec(m):
    d = m.dim
    return {
        i * d + j: m.rows[i][j]
        for i in range(d)
        for j in range(d)
        if not m.rows[i][j].is_zero()
    }


def _sample_values(names, rng):
    out = {}
    for v in names:
        out[v] = rational(rng.randint(2, 23), rng.choice([1, 1, 1, 3, 5, 7]))
    return out


def burnside_irreducible(gens, samples=3, seed=7):
    """True iff the matrix algebra generated by gens is the full d x d algebra.

    The span of {I} is closed under left multiplication by the generators
    until it stabilizes; irreducibility is equivalent to reaching dimension
    d^2 (Burnside).  Matrices with free variables are decided by sampling
    random rational specializations: a specialization can only shrink the
    span, so any fully-spanning sample certifies the generic statement.
    """
    if not gens:
        raise ValueError("need at least one generator")
    names = set()
    for g in gens:
        names.update(g.variables)
    if names:
        rng = random.Random(seed)
        for _ in range(samples):
            vals = {v: _sample_values([v], rng)[v] for v in sorted(names)}
            try:
                spec = [g.substitute(vals) for g in gens]
            except DivisionByZero:
                continue
            if burnside_irreducible(spec):
                return True
        return False
    d = gens[0].dim
    ech = _Echelon()
    frontier = []
    for m in [ExactMatrix.identity(d)] + list(gens):
        if ech.insert(_mat_to_vec(m)):
            frontier.append(m)
    while frontier and ech.rank < d * d:
        nxt = []
        for m in frontier:
            for g in gens:
                p = g * m
                if ech.insert(_mat_to_vec(p)):
                    nxt.append(p)
                    if ech.rank == d * d:
                        return True
        frontier = nxt
    return ech.rank == d * d


def commutant_dimension(gens):
    """Dimension of {X : XG = GX for all G}; 1 means the gens act irreducibly
    in the sense of Schur (used as a cross-check on burnside_irreducible)."""
    if not gens:
        raise ValueError("need at least one generator")
    d = gens[0].dim
    ech = _Echelon()
    for g in gens:
        for i in range(d):
            for j in range(d):
                # row for constraint (XG - GX)[i][j] = 0 in unknowns X[a][b]
                row = {}
                for k in range(d):
                    c = g.rows[k][j]
                    if not c.is_zero():
                        key = i * d + k
                        row[key] = row.get(key, ZERO) + c
                    c2 = g.rows[i][k]
                    if not c2.is_zero():
                        key = k * d + j
                        row[key] = row.get(key, ZERO) - c2
                row = {k: v for k, v in row.items() if not v.is_zero()}
                if row:
                    ech.insert(row)
    return d * d - ech.rank


# -- finite matrix-group closure

class ClosureResult:
    """Order and canonical element set of a finite matrix-group closure."""

    __slots__ = ("order", "elements", "generations", "wall_time", "capped")

    def __init__(self, order, elements, generations, wall_time, capped=False):
        self.order = order
        self.elements = elements
        self.generations = generations
        self.wall_time = wall_time
        self.capped = capped

    def __iter__(self):
        yield self.order
        yield self.elements

    def __repr__(self):
        return "ClosureResult(order=%d, generations=%d)" % (
            self.order,
            self.generations,
        )


def _closure_encode(gens):
    """Convert constant matrices to int64 coordinate arrays over a common
    cyclotomic order.  Returns (arrays, dens, N, phi, RED)."""
    consts = []
    N = 1
    for g in gens:
        rows = []
        for row in g.rows:
            r = []
            for s in row:
                if not s.is_constant():
                    raise NonCyclotomicEntries(
                        "closure requires entries free of variables; got %s" % s
                    )
                c = s.as_cyclotomic()
                N = N * c.order // math.gcd(N, c.order)
                r.append(c)
            rows.append(r)
        consts.append(rows)
    phi = _phi(N)
    arrays = []
    dens = []
    for rows in consts:
        d = len(rows)
        den = 1
        coords = [[c._to_order(N) for c in row] for row in rows]
        for row in coords:
            for tup in row:
                for f in tup:
                    den = den * f.denominator // math.gcd(den, f.denominator)
        arr = np.zeros((d, d, phi), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                for k, f in enumerate(coords[i][j]):
                    arr[i, j, k] = f.numerator * (den // f.denominator)
        arr, den = _kernels.normalize(arr, den)
        arrays.append(arr)
        dens.append(den)
    table = _reduction_table(N)
    RED = np.array(
        [[int(f) for f in row] for row in table[: 2 * phi - 1]], dtype=np.int64
    )
    return arrays, dens, N, phi, RED


def _key_of(arr, den):
    return zlib.compress(arr.tobytes() + den.to_bytes(8, "little"), 1)


def _key_decode(key, d, phi):
    raw = zlib.decompress(key)
    arr = np.frombuffer(raw[:-8], dtype=np.int64).reshape(d, d, phi).copy()
    den = int.from_bytes(raw[-8:], "little")
    return arr, den


def _gen_fingerprint(gen_keys):
    h = hashlib.sha256()
    for k in sorted(gen_keys):
        h.update(k)
    return h.digest()


def _save_checkpoint(path, fingerprint, seen, frontier, generation):
    def pack(keys):
        lens = np.array([len(k) for k in keys], dtype=np.int64)
        blob = np.frombuffer(b"".join(keys), dtype=np.uint8)
        return lens, blob

    seen_lens, seen_blob = pack(sorted(seen))
    fr_lens, fr_blob = pack(frontier)
    tmp = path + ".tmp"
    np.savez_compressed(
        tmp,
        version=np.int64(1),
        fingerprint=np.frombuffer(fingerprint, dtype=np.uint8),
        generation=np.int64(generation),
        seen_lens=seen_lens,
        seen_blob=seen_blob,
        frontier_lens=fr_lens,
        frontier_blob=fr_blob,
    )
    os.replace(tmp + ".npz", path)  # savez appends .npz


def _load_checkpoint(path, fingerprint):
    try:
        data = np.load(path)
        if int(data["version"]) != 1:
            raise CorruptCheckpoint("unknown checkpoint version")
        if bytes(data["fingerprint"].tobytes()) != fingerprint:
            raise CorruptCheckpoint("checkpoint was written for different generators")

        def unpack(lens, blob):
            out = []
            raw = blob.tobytes()
            pos = 0
            for n in lens:
                out.append(raw[pos : pos + int(n)])
                pos += int(n)
            if pos != len(raw):
                raise CorruptCheckpoint("checkpoint blob length mismatch")
            return out

        seen = set(unpack(data["seen_lens"], data["seen_blob"]))
        frontier = unpack(data["frontier_lens"], data["frontier_blob"])
        generation = int(data["generation"])
        return seen, frontier, generation
    except CorruptCheckpoint:
        raise
    except Exception as exc:
        raise CorruptCheckpoint("unreadable checkpoint: %s" % exc) from exc


def group_closure(
    gens,
    cap=2_000_000,
    checkpoint=None,
    resume=False,
    progress=None,
    checkpoint_every=1,
):
    """Breadth-first closure of a finite matrix group.

    Entries must be variable-free cyclotomics.  Elements are canonicalized to
    reduced integer coordinate arrays and kept as losslessly compressed byte
    keys, so equality is exact.  Returns a ClosureResult; raises CapExceeded
    when more than `cap` elements appear.

    With `checkpoint` set, the BFS state is written after each generation and
    `resume=True` continues from a saved state (validated against the
    generators).
    """
    if not gens:
        raise ValueError("need at least one generator")
    t0 = time.time()
    arrays, dens, N, phi, RED = _closure_encode(gens)
    d = gens[0].dim
    for g in gens:
        if g.dim != d:
            raise ValueError("generators must share a dimension")
        if g.det().is_zero():
            raise ValueError("generators must be invertible")
    gen_pairs = list(zip(arrays, dens))
    gen_keys = [_key_of(a, dn) for a, dn in gen_pairs]
    fingerprint = _gen_fingerprint(gen_keys)

    ident = np.zeros((d, d, phi), dtype=np.int64)
    for i in range(d):
        ident[i, i, 0] = 1
    ident_key = _key_of(ident, 1)

    generation = 0
    if resume:
        if not checkpoint:
            raise ValueError("resume requires a checkpoint path")
        seen, frontier, generation = _load_checkpoint(checkpoint, fingerprint)
    else:
        seen = {ident_key}
        frontier = []
        for k in gen_keys:
            if k not in seen:
                seen.add(k)
                frontier.append(k)

    while frontier:
        generation += 1
        nxt = []
        for key in frontier:
            arr, den = _key_decode(key, d, phi)
            for ga, gd in gen_pairs:
                prod = _kernels.cyc_matmul(arr, ga, RED)
                pk = _key_of(*_kernels.normalize(prod, den * gd))
                if pk not in seen:
                    seen.add(pk)
                    nxt.append(pk)
                    if len(seen) > cap:
                        raise CapExceeded(
                            "closure exceeded cap of %d" % cap,
                            partial_count=len(seen),
                        )
        frontier = nxt
        if progress:
            progress(generation, len(seen), len(frontier))
        if checkpoint and (generation % checkpoint_every == 0 or not frontier):
            _save_checkpoint(checkpoint, fingerprint, seen, frontier, generation)

    return ClosureResult(
        order=len(seen),
        elements=frozenset(seen),
        generations=generation,
        wall_time=time.time() - t0,
    )
