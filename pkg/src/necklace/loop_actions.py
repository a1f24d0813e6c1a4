"""Free-group automorphisms realizing the motion-group generators.

The strand swap s_i permutes two adjacent free generators; the braid
action g_i sends x_i through the loop x_{i+1} and picks up a conjugation.
Together they generate the loop braid action on F_n, and composing with
the cyclic rotation gives an action of the whole necklace group whose
rotation image has order n.  The full rotation power therefore acts
trivially on F_n while staying central (and often nontrivial) in the
matrix models.
"""

from .presentations import RepAssignment
from .scalar import var

# Hard ceiling on image words; substitution past this raises instead of
# silently eating memory on an exponentially growing composition.
WORD_LIMIT = 10_000


def _reduce(letters):
    out = []
    for idx, exp in letters:
        if out and out[-1][0] == idx and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((idx, exp))
    return tuple(out)


class FreeWord:
    """Freely reduced word in the generators x_1 .. x_n of a free group.

    Letters are (index, exponent) pairs with exponent +1 or -1; the
    constructor cancels adjacent inverse pairs.
    """

    __slots__ = ("n", "letters")

    def __init__(self, n, letters=()):
        if n < 1:
            raise ValueError("free group rank must be at least 1")
        letters = tuple(letters)
        for idx, exp in letters:
            if not 1 <= idx <= n:
                raise ValueError("letter index %d outside 1..%d" % (idx, n))
            if exp not in (1, -1):
                raise ValueError("letter exponents must be +1 or -1")
        self.n = n
        self.letters = _reduce(letters)

    @staticmethod
    def generator(n, i, exp=1):
        if exp == 0:
            return FreeWord(n)
        sign = 1 if exp > 0 else -1
        return FreeWord(n, ((i, sign),) * abs(exp))

    @staticmethod
    def identity(n):
        return FreeWord(n)

    def _match(self, other):
        if not isinstance(other, FreeWord):
            raise TypeError("expected a FreeWord")
        if self.n != other.n:
            raise ValueError("mixed free-group ranks %d and %d" % (self.n, other.n))

    def __mul__(self, other):
        self._match(other)
        return FreeWord(self.n, self.letters + other.letters)

    def inverse(self):
        return FreeWord(self.n, tuple((i, -e) for i, e in reversed(self.letters)))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = FreeWord(self.n)
        for _ in range(e):
            out = out * self
        return out

    def is_identity(self):
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return (
            isinstance(other, FreeWord)
            and self.n == other.n
            and self.letters == other.letters
        )

    def __hash__(self):
        return hash((self.n, self.letters))

    def __str__(self):
        if not self.letters:
            return "1"
        parts = []
        run_idx, run_exp = self.letters[0]
        count = run_exp
        for idx, exp in self.letters[1:]:
            if idx == run_idx and (exp > 0) == (count > 0):
                count += exp
            else:
                parts.append((run_idx, count))
                run_idx, count = idx, exp
        parts.append((run_idx, count))
        return " ".join(
            "x%d" % i if e == 1 else "x%d^%d" % (i, e) for i, e in parts
        )

    def __repr__(self):
        return "FreeWord(%d, %s)" % (self.n, str(self))


def _substitute(images, word, limit=WORD_LIMIT):
    # Stack-based substitution with on-the-fly cancellation, so the guard
    # bounds the reduced length of the image.
    out = []
    for idx, exp in word.letters:
        seq = images[idx - 1].letters
        if exp == -1:
            seq = tuple((j, -e) for j, e in reversed(seq))
        for let in seq:
            if out and out[-1][0] == let[0] and out[-1][1] == -let[1]:
                out.pop()
            else:
                out.append(let)
                if len(out) > limit:
                    raise ValueError(
                        "substituted word exceeds %d letters" % limit
                    )
    return FreeWord(word.n, out)


class FreeAut:
    """Automorphism of the free group F_n, given by its generator images.

    An explicit inverse assignment travels with the automorphism so that
    compositions stay invertible without any search; when supplied it is
    verified by composing back to the identity on every generator.

    Multiplication reads left to right, (f * g)(w) = g(f(w)): a product of
    generators acts on the free group in word order.  The swap and braid
    relations below hold in exactly this convention.  Function-style
    composition is aut_compose.
    """

    __slots__ = ("n", "images", "inverse_images")

    def __init__(self, n, images, inverse_images=None, check=True):
        images = tuple(images)
        if len(images) != n:
            raise ValueError("expected %d generator images, got %d" % (n, len(images)))
        for w in images:
            if not isinstance(w, FreeWord) or w.n != n:
                raise ValueError("generator images must be rank-%d words" % n)
        self.n = n
        self.images = images
        if inverse_images is not None:
            inverse_images = tuple(inverse_images)
            if len(inverse_images) != n:
                raise ValueError("expected %d inverse images" % n)
            if check:
                for i in range(1, n + 1):
                    gen = FreeWord.generator(n, i)
                    if _substitute(images, inverse_images[i - 1]) != gen:
                        raise ValueError("inverse assignment fails on x%d" % i)
                    if _substitute(inverse_images, images[i - 1]) != gen:
                        raise ValueError("inverse assignment fails on x%d" % i)
        self.inverse_images = inverse_images

    @staticmethod
    def identity(n):
        gens = tuple(FreeWord.generator(n, i) for i in range(1, n + 1))
        return FreeAut(n, gens, inverse_images=gens, check=False)

    def apply(self, word):
        if not isinstance(word, FreeWord) or word.n != self.n:
            raise ValueError("can only apply to rank-%d words" % self.n)
        return _substitute(self.images, word)

    def __call__(self, word):
        return self.apply(word)

    def __mul__(self, other):
        if not isinstance(other, FreeAut):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("mixed free-group ranks %d and %d" % (self.n, other.n))
        images = tuple(_substitute(other.images, w) for w in self.images)
        inv = None
        if self.inverse_images is not None and other.inverse_images is not None:
            inv = tuple(
                _substitute(self.inverse_images, w) for w in other.inverse_images
            )
        return FreeAut(self.n, images, inverse_images=inv, check=False)

    def inverse(self):
        if self.inverse_images is None:
            raise ValueError("no inverse assignment recorded for this automorphism")
        return FreeAut(
            self.n, self.inverse_images, inverse_images=self.images, check=False
        )

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = FreeAut.identity(self.n)
        for _ in range(e):
            out = out * self
        return out

    def is_identity(self):
        return self == FreeAut.identity(self.n)

    def __eq__(self, other):
        return (
            isinstance(other, FreeAut)
            and self.n == other.n
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.n, self.images))

    def __str__(self):
        return "\n".join(
            "x%d -> %s" % (i + 1, w) for i, w in enumerate(self.images)
        )

    def __repr__(self):
        return "FreeAut(%d, [%s])" % (
            self.n,
            "; ".join("x%d -> %s" % (i + 1, w) for i, w in enumerate(self.images)),
        )


def aut_compose(f, g):
    """Function-style composition: apply g first, then f."""
    return g * f


def swap_action(n, i):
    """The strand swap: exchanges x_i and x_{i+1}, fixes the rest."""
    if not 1 <= i <= n - 1:
        raise ValueError("swap index %d outside 1..%d" % (i, n - 1))
    images = list(FreeAut.identity(n).images)
    images[i - 1], images[i] = images[i], images[i - 1]
    return FreeAut(n, images, inverse_images=tuple(images), check=False)


def braid_action(n, i):
    """The braid move on adjacent strands:

        x_i -> x_{i+1},   x_{i+1} -> x_{i+1}^-1 x_i x_{i+1},

    all other generators fixed.  Its inverse sends x_i to the conjugate
    x_i x_{i+1} x_i^-1 and x_{i+1} back to x_i.
    """
    if not 1 <= i <= n - 1:
        raise ValueError("braid index %d outside 1..%d" % (i, n - 1))
    xi = FreeWord.generator(n, i)
    xj = FreeWord.generator(n, i + 1)
    images = list(FreeAut.identity(n).images)
    images[i - 1] = xj
    images[i] = xj.inverse() * xi * xj
    inv = list(FreeAut.identity(n).images)
    inv[i - 1] = xi * xj * xi.inverse()
    inv[i] = xi
    return FreeAut(n, images, inverse_images=inv)


def lb_generators(n):
    """Assignment of the loop braid alphabet g_1..g_{n-1}, s_1..s_{n-1}
    to automorphisms of F_n."""
    if n < 2:
        raise ValueError("need n >= 2")
    images = {}
    for i in range(1, n):
        images["g%d" % i] = braid_action(n, i)
        images["s%d" % i] = swap_action(n, i)
    return RepAssignment("loop", n, "automorphism", images, one=FreeAut.identity(n))


def rotation_action(n):
    """The cyclic rotation s_1 s_2 ... s_{n-1} (word order): sends x_j to
    x_{j-1} for j >= 2 and x_1 around to x_n."""
    p = FreeAut.identity(n)
    for i in range(1, n):
        p = p * swap_action(n, i)
    return p


def zeta(n):
    """The necklace action on F_n: sigma_i acts as the braid move g_i,
    tau as the cyclic rotation, and sigma_n as the rotated copy of g_{n-1}.

    For n >= 3 the full necklace relation suite holds.  At n = 2 the wrap
    braid relation fails in the free model (the swap/braid mixed relations
    need a third strand), and verify() reports the witness; the assignment
    is still returned so the failure can be inspected.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    p = rotation_action(n)
    images = {"tau": p}
    for i in range(1, n):
        images["sigma%d" % i] = braid_action(n, i)
    images["sigma%d" % n] = p * braid_action(n, n - 1) * p.inverse()
    return RepAssignment("necklace", n, "automorphism", images, one=FreeAut.identity(n))


def conjugating_permutation(aut):
    """If every generator image is a conjugate w^-1 x_j w, return the tuple
    of target indices j; otherwise return None."""
    targets = []
    for w in aut.images:
        letters = w.letters
        if len(letters) % 2 == 0:
            return None
        k = len(letters) // 2
        idx, exp = letters[k]
        if exp != 1:
            return None
        for a, b in zip(letters[:k], reversed(letters[k + 1 :])):
            if a != (b[0], -b[1]):
                return None
        targets.append(idx)
    return tuple(targets)


def is_conjugating(aut):
    return conjugating_permutation(aut) is not None


def _builtin_matrix_reps(n):
    """Small exact matrix models of the necklace group used as kernel
    witnesses: name -> (tau image, list of sigma images)."""
    from .classical_reps import (
        nonstandard_block_tau,
        standard_extension,
        standard_rep,
        unreduced_burau_extension,
    )

    reps = {}
    z = var("z")
    ext = standard_extension(standard_rep(n, z))
    reps["standard_extension"] = ext
    if n >= 3:
        reps["block_shift"] = nonstandard_block_tau(n, z, var("t"))
    reps["weighted_burau"] = unreduced_burau_extension(n, 3, 2)[0]
    if 3 <= n <= 5:
        from .local_reps import ising, local_necklace_rep

        reps["ising_local"] = local_necklace_rep(ising(), n)
    out = {}
    for name, rep in reps.items():
        images = rep.images
        tau = images["tau"]
        sigmas = [images["sigma%d" % i] for i in range(1, n + 1)]
        out[name] = (tau, sigmas)
    return out


def zeta_kernel_check(n):
    """Evidence that the rotation power tau^n generates the kernel of the
    free-group action: it acts trivially on F_n, while in the built-in
    matrix models its image is central (and is the identity exactly for
    the models that factor through the action)."""
    za = zeta(n)
    p = za.image("tau")
    report = {
        "n": n,
        "tau_n_trivial": (p**n).is_identity(),
        "tau_image_order": None,
        "conjugating": all(is_conjugating(za.image(g)) for g in za.images),
        "matrix_reps": {},
    }
    power = FreeAut.identity(n)
    for k in range(1, n + 1):
        power = power * p
        if power.is_identity():
            report["tau_image_order"] = k
            break
    for name, (tau, sigmas) in _builtin_matrix_reps(n).items():
        t_n = tau**n
        report["matrix_reps"][name] = {
            "tau_n_identity": t_n.is_identity(),
            "tau_n_central": all(t_n * m == m * t_n for m in sigmas),
        }
    report["ok"] = report["tau_n_trivial"] and all(
        r["tau_n_central"] for r in report["matrix_reps"].values()
    )
    return report
