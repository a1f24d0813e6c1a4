"""Generator words, relation sets, and the relation-verification engine.

Relation sets cover four groups: the necklace braid group (strands around a
circle plus a rotation of finite order), its infinite-order-rotation variant
(circular), the classical braid group, and the loop braid group.  The verify
engine evaluates both sides of every relation in any concrete target --
matrices, algebra units, or free-group automorphisms -- and reports exact
witnesses on failure.
"""

from __future__ import annotations

from .errors import AlphabetMismatch, TagMismatch
from .linalg import ExactMatrix

ALPHABETS = ("necklace", "braid", "loop", "circular")


def _alphabet_ids(tag, n):
    if tag in ("necklace", "circular"):
        return tuple("sigma%d" % i for i in range(1, n + 1)) + ("tau",)
    if tag == "braid":
        return tuple("sigma%d" % i for i in range(1, n))
    if tag == "loop":
        return tuple("g%d" % i for i in range(1, n)) + tuple(
            "s%d" % i for i in range(1, n)
        )
    raise ValueError("unknown alphabet tag: %r" % (tag,))


class GenWord:
    """Freely reduced word over a tagged generator alphabet."""

    __slots__ = ("tag", "n", "letters")

    def __init__(self, tag, n, letters=()):
        if tag not in ALPHABETS:
            raise ValueError("unknown alphabet tag: %r" % (tag,))
        ids = set(_alphabet_ids(tag, n))
        reduced = []
        for gid, e in letters:
            if gid not in ids:
                raise AlphabetMismatch("%r is not a generator of %s_%d" % (gid, tag, n))
            if e not in (1, -1):
                raise ValueError("letter exponents must be +-1")
            if reduced and reduced[-1][0] == gid and reduced[-1][1] == -e:
                reduced.pop()
            else:
                reduced.append((gid, e))
        self.tag = tag
        self.n = n
        self.letters = tuple(reduced)

    def _check(self, other):
        if self.tag != other.tag or self.n != other.n:
            raise TagMismatch("cannot combine %s_%d and %s_%d words"
                              % (self.tag, self.n, other.tag, other.n))

    def __mul__(self, other):
        self._check(other)
        return GenWord(self.tag, self.n, self.letters + other.letters)

    def inverse(self):
        return GenWord(
            self.tag, self.n, tuple((g, -e) for g, e in reversed(self.letters))
        )

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = GenWord(self.tag, self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, GenWord)
            and self.tag == other.tag
            and self.n == other.n
            and self.letters == other.letters
        )

    def __hash__(self):
        return hash((self.tag, self.n, self.letters))

    def __str__(self):
        if not self.letters:
            return "1"
        runs = []
        for g, e in self.letters:
            if runs and runs[-1][0] == g and runs[-1][1] * e > 0:
                runs[-1][1] += e
            else:
                runs.append([g, e])
        return "*".join(g if e == 1 else "%s^%d" % (g, e) for g, e in runs)

    __repr__ = __str__


def _gen(tag, n, gid, e=1):
    return GenWord(tag, n, ((gid, e),))


class RelationSet:
    """Named list of word pairs asserted equal, with bookkeeping notes."""

    def __init__(self, name, tag, n, relations, notes=None):
        self.name = name
        self.tag = tag
        self.n = n
        self.relations = tuple(relations)  # (label, lhs, rhs)
        self.notes = dict(notes or {})

    def __len__(self):
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    def labels(self):
        return [lab for lab, _, _ in self.relations]

    def generator_ids(self):
        return _alphabet_ids(self.tag, self.n)

    def to_json(self):
        return {
            "name": self.name,
            "alphabet": self.tag,
            "n": self.n,
            "notes": self.notes,
            "pairs": [
                {"label": lab, "lhs": str(l), "rhs": str(r)}
                for lab, l, r in self.relations
            ],
        }


def _sigma(n, i, tag="necklace"):
    # indices wrap: sigma_{n+1} = sigma_1, sigma_0 = sigma_n
    i = ((i - 1) % n) + 1
    return _gen(tag, n, "sigma%d" % i)


def _necklace_core(n, tag):
    """(B1), (B2), (N1) with the wrap-around index convention."""
    rels = []
    seen_pairs = set()
    for i in range(1, n + 1):
        a, b = _sigma(n, i, tag), _sigma(n, i + 1, tag)
        key = frozenset([str(a), str(b)])
        if key in seen_pairs:
            continue  # for n=2 both instances assert the same unordered pair
        seen_pairs.add(key)
        rels.append(("B1[%d]" % i, a * b * a, b * a * b))
    b2_pairs = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if (j - i) % n not in (1, n - 1):
                b2_pairs.append((i, j))
                a, b = _sigma(n, i, tag), _sigma(n, j, tag)
                rels.append(("B2[%d,%d]" % (i, j), a * b, b * a))
    tau = _gen(tag, n, "tau")
    for i in range(1, n + 1):
        rels.append(
            (
                "N1[%d]" % i,
                tau * _sigma(n, i, tag) * tau.inverse(),
                _sigma(n, i + 1, tag),
            )
        )
    notes = {
        "B2_included_pairs": b2_pairs,
        "B2_convention": "pairs i<j with (j-i) mod n not in {1, n-1}",
    }
    return rels, notes


def necklace_relations_full(n):
    """Full relation set for the necklace braid group on n strands.

    Relation count is n(n+1)/2 + 1 (the two B1 instances coincide at n=2).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    rels, notes = _necklace_core(n, "necklace")
    tau = _gen("necklace", n, "tau")
    rels.append(("N2", tau ** (2 * n), GenWord("necklace", n)))
    return RelationSet("necklace_full", "necklace", n, rels, notes)


def necklace_relations_reduced(n):
    """The 2n-1 relations that already imply the full set: the rotation
    order, all rotation conjugations, one adjacent braid relation, and the
    far commutations involving the first generator."""
    if n < 3:
        raise ValueError("need n >= 3")
    tag = "necklace"
    tau = _gen(tag, n, "tau")
    rels = [("N2", tau ** (2 * n), GenWord(tag, n))]
    for i in range(1, n + 1):
        rels.append(
            ("N1[%d]" % i, tau * _sigma(n, i) * tau.inverse(), _sigma(n, i + 1))
        )
    s1, s2 = _sigma(n, 1), _sigma(n, 2)
    rels.append(("B1[1]", s1 * s2 * s1, s2 * s1 * s2))
    for j in range(3, n):
        sj = _sigma(n, j)
        rels.append(("B2[1,%d]" % j, s1 * sj, sj * s1))
    return RelationSet("necklace_reduced", tag, n, rels)


def circular_relations(n):
    """Necklace relations without the rotation-order relation (the rotation
    generator has infinite order)."""
    if n < 2:
        raise ValueError("need n >= 2")
    rels, notes = _necklace_core(n, "circular")
    return RelationSet("circular", "circular", n, rels, notes)


def braid_relations(n):
    """Classical braid group relations on n strands (no wrap-around)."""
    if n < 2:
        raise ValueError("need n >= 2")
    tag = "braid"
    rels = []
    for i in range(1, n - 1):
        a, b = _gen(tag, n, "sigma%d" % i), _gen(tag, n, "sigma%d" % (i + 1))
        rels.append(("B1[%d]" % i, a * b * a, b * a * b))
    for i in range(1, n):
        for j in range(i + 2, n):
            a, b = _gen(tag, n, "sigma%d" % i), _gen(tag, n, "sigma%d" % j)
            rels.append(("B2[%d,%d]" % (i, j), a * b, b * a))
    return RelationSet("braid", tag, n, rels)


def loop_braid_relations(n):
    """The eight relation families of the loop braid group: braid and far
    commutation for the g's, symmetric-group relations for the s's, and the
    three mixed families."""
    if n < 2:
        raise ValueError("need n >= 2")
    tag = "loop"
    g = lambda i: _gen(tag, n, "g%d" % i)
    s = lambda i: _gen(tag, n, "s%d" % i)
    rels = []
    for i in range(1, n - 1):
        rels.append(("Gbraid[%d]" % i, g(i) * g(i + 1) * g(i), g(i + 1) * g(i) * g(i + 1)))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append(("Gfar[%d,%d]" % (i, j), g(i) * g(j), g(j) * g(i)))
    for i in range(1, n):
        rels.append(("Sinv[%d]" % i, s(i) * s(i), GenWord(tag, n)))
    for i in range(1, n - 1):
        rels.append(("Sbraid[%d]" % i, s(i) * s(i + 1) * s(i), s(i + 1) * s(i) * s(i + 1)))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append(("Sfar[%d,%d]" % (i, j), s(i) * s(j), s(j) * s(i)))
    for i in range(1, n - 1):
        rels.append(("Mix1[%d]" % i, s(i) * s(i + 1) * g(i), g(i + 1) * s(i) * s(i + 1)))
        rels.append(("Mix2[%d]" % i, g(i) * g(i + 1) * s(i), s(i + 1) * g(i) * g(i + 1)))
    for i in range(1, n):
        for j in range(1, n):
            if abs(i - j) > 1:
                rels.append(("MixFar[%d,%d]" % (i, j), g(i) * s(j), s(j) * g(i)))
    return RelationSet("loop_braid", tag, n, rels)


class RepAssignment:
    """Map from a generator alphabet into a multiplicative target.

    kind is "matrix" (ExactMatrix), "algebra" (units of an associative
    algebra with __mul__/inverse/__eq__), or "automorphism" (free-group
    automorphisms).  Every image is checked to have an exact two-sided
    inverse at construction.
    """

    def __init__(self, tag, n, kind, images, one=None):
        if kind not in ("matrix", "algebra", "automorphism"):
            raise ValueError("unknown target kind: %r" % (kind,))
        ids = _alphabet_ids(tag, n)
        missing = [g for g in ids if g not in images]
        if missing:
            raise AlphabetMismatch("missing images for %s" % ", ".join(missing))
        self.tag = tag
        self.n = n
        self.kind = kind
        self.images = dict(images)
        if one is None:
            if kind != "matrix":
                raise ValueError("non-matrix targets need an explicit identity")
            dim = next(iter(self.images.values())).dim
            one = ExactMatrix.identity(dim)
        self.one = one
        self._inverses = {}
        for gid in ids:
            img = self.images[gid]
            inv = img.inverse()
            if not (img * inv == one and inv * img == one):
                raise ValueError("image of %s has no two-sided inverse" % gid)
            self._inverses[gid] = inv

    def image(self, gid, e=1):
        return self.images[gid] if e == 1 else self._inverses[gid]

    def evaluate(self, word):
        if word.tag != self.tag or word.n != self.n:
            raise AlphabetMismatch(
                "word over %s_%d evaluated in %s_%d assignment"
                % (word.tag, word.n, self.tag, self.n)
            )
        cur = self.one
        for gid, e in word.letters:
            cur = cur * self.image(gid, e)
        return cur

    def restrict_to_braid(self):
        """Forget tau and the wrap-around generator: images of sigma_1..sigma_{n-1}."""
        if self.tag not in ("necklace", "circular"):
            raise TagMismatch("braid restriction needs a necklace-type assignment")
        images = {
            "sigma%d" % i: self.images["sigma%d" % i] for i in range(1, self.n)
        }
        return RepAssignment("braid", self.n, self.kind, images, one=self.one)


def _matrix_witness(lhs, rhs):
    for j in range(lhs.dim):
        for i in range(lhs.dim):
            if not lhs.rows[i][j] == rhs.rows[i][j]:
                return {
                    "basis_index": j,
                    "row": i,
                    "lhs_entry": str(lhs.rows[i][j]),
                    "rhs_entry": str(rhs.rows[i][j]),
                }
    return None


def _witness(kind, lhs, rhs):
    if kind == "matrix":
        return _matrix_witness(lhs, rhs)
    if kind == "automorphism":
        for k, (a, b) in enumerate(zip(lhs.images, rhs.images)):
            if a != b:
                return {"generator": k + 1, "lhs": str(a), "rhs": str(b)}
        return None
    return {"lhs": str(lhs), "rhs": str(rhs)}


class VerifyReport:
    def __init__(self, name, results):
        self.name = name
        self.results = results

    @property
    def ok(self):
        return all(r["status"] == "pass" for r in self.results)

    @property
    def failures(self):
        return [r for r in self.results if r["status"] != "pass"]

    def to_json(self):
        return {"name": self.name, "ok": self.ok, "pairs": self.results}

    def __repr__(self):
        bad = len(self.failures)
        return "VerifyReport(%s: %d relations, %d failing)" % (
            self.name,
            len(self.results),
            bad,
        )


def verify(assignment, rels):
    """Evaluate every relation of rels under the assignment.

    Returns a VerifyReport with per-relation status and, for failures, an
    exact witness: the first differing matrix column (a basis vector), the
    first differing free generator image, or both algebra elements.
    """
    results = []
    for label, lhs_w, rhs_w in rels:
        lhs = assignment.evaluate(lhs_w)
        rhs = assignment.evaluate(rhs_w)
        if lhs == rhs:
            results.append(
                {"label": label, "lhs": str(lhs_w), "rhs": str(rhs_w), "status": "pass"}
            )
        else:
            results.append(
                {
                    "label": label,
                    "lhs": str(lhs_w),
                    "rhs": str(rhs_w),
                    "status": "fail",
                    "witness": _witness(assignment.kind, lhs, rhs),
                }
            )
    return VerifyReport(rels.name, results)


def induced_from_first(tag, n, kind, sigma1, tau, one=None):
    """Assignment generated by sigma_1 and tau via sigma_i = tau^{i-1} sigma_1 tau^{1-i}."""
    images = {"tau": tau, "sigma1": sigma1}
    cur = sigma1
    tau_inv = tau.inverse()
    for i in range(2, n + 1):
        cur = tau * cur * tau_inv
        images["sigma%d" % i] = cur
    return RepAssignment(tag, n, kind, images, one=one)


def reduced_set_sufficiency_check(assignment):
    """Empirical confirmation that the reduced relation set suffices: the
    assignment must be generated by sigma_1 and tau (the remaining images are
    recomputed by conjugation), and then the reduced set passes iff the full
    set passes.  Returns True when both pass."""
    n = assignment.n
    induced = induced_from_first(
        assignment.tag,
        n,
        assignment.kind,
        assignment.images["sigma1"],
        assignment.images["tau"],
        one=assignment.one,
    )
    red = verify(induced, necklace_relations_reduced(n))
    full = verify(induced, necklace_relations_full(n))
    return red.ok and full.ok


def symmetric_group_assignment(n):
    """sigma_i -> transposition (i, i+1 mod n), tau -> n-cycle, as 0/1 matrices."""
    from .scalar import ONE, ZERO

    def mat(p):  # p maps position -> image, 0-based
        return ExactMatrix(
            tuple(
                tuple(ONE if p[j] == i else ZERO for j in range(n)) for i in range(n)
            )
        )

    images = {}
    for i in range(1, n + 1):
        p = list(range(n))
        a, b = i - 1, i % n
        p[a], p[b] = p[b], p[a]
        images["sigma%d" % i] = mat(p)
    cyc = [(k + 1) % n for k in range(n)]
    images["tau"] = mat(cyc)
    return RepAssignment("necklace", n, "matrix", images)
