"""Local representations on tensor powers: braided vector spaces, the
Yang-Baxter check, the cyclic-shift rotation extension, the two-strand
symmetric-solution probe, and the finite-image ratio harness.
"""

from __future__ import annotations

import math
import os

from .linalg import (
    ExactMatrix,
    LocalOperator,
    group_closure,
    kron,
    materialize,
)
from .presentations import RepAssignment, _matrix_witness, necklace_relations_full, verify
from .scalar import ONE, ZERO, parse_scalar, root_of_unity


def flip_matrix(m):
    """The factor swap on an m^2-dimensional two-site space."""
    d = m * m

    def entry(r, c):
        i, j = divmod(c, m)
        return ONE if r == j * m + i else ZERO

    return ExactMatrix.from_fn(d, entry)


def ybe_check(R):
    """Exact braid-form Yang-Baxter check on the three-site space.

    Returns (True, None) or (False, witness) where the witness points at the
    first differing basis image of the two side-by-side products.
    """
    m = math.isqrt(R.dim)
    if m * m != R.dim:
        raise ValueError("matrix dimension is not a perfect square")
    eye = ExactMatrix.identity(m)
    L = kron(R, eye)
    Rt = kron(eye, R)
    lhs = L * Rt * L
    rhs = Rt * L * Rt
    if lhs == rhs:
        return True, None
    return False, _matrix_witness(lhs, rhs)


def shift_conjugation_identity(R):
    """Conjugating a left-localized solution by the two-step shift lands on
    the right-localized copy on the three-site space."""
    m = math.isqrt(R.dim)
    eye = ExactMatrix.identity(m)
    P = flip_matrix(m)
    shift = kron(P, eye) * kron(eye, P)
    return shift * kron(R, eye) * shift.inverse() == kron(eye, R)


class BVS:
    """Braided vector space: site dimension m and an invertible solution R
    of the Yang-Baxter equation on the two-site space.  Both properties are
    verified at construction."""

    def __init__(self, m, R, name=""):
        if R.dim != m * m:
            raise ValueError("R must act on the two-site space")
        R.inverse()  # raises DivisionByZero when singular
        ok, witness = ybe_check(R)
        if not ok:
            raise ValueError("not a Yang-Baxter solution: %r" % (witness,))
        self.m = m
        self.R = R
        self.name = name

    def to_json(self):
        return {
            "name": self.name,
            "m": self.m,
            "R": [[str(self.R[(i, j)]) for j in range(self.R.dim)] for i in range(self.R.dim)],
        }

    @staticmethod
    def from_json(d):
        rows = [[parse_scalar(x) for x in row] for row in d["R"]]
        return BVS(d["m"], ExactMatrix(rows), name=d.get("name", ""))


def ising():
    """The 4x4 solution with entries in the 8th cyclotomic field whose braid
    image closures are finite; 1/sqrt(2) is realized exactly."""
    h = (root_of_unity(8, 1) - root_of_unity(8, 3)) / 2  # 1/sqrt(2)
    o, z = ONE, ZERO
    rows = [
        [o, z, z, o],
        [z, o, -o, z],
        [z, o, o, z],
        [-o, z, z, o],
    ]
    return BVS(2, ExactMatrix([[h * x for x in row] for row in rows]), name="ising")


def flip_bvs(m=2):
    return BVS(m, flip_matrix(m), name="flip%d" % m)


def bvs_catalog():
    return {"ising": ising, "flip2": flip_bvs, "flip3": lambda: flip_bvs(3)}


def _local_images(bvs, n, budget):
    m, R = bvs.m, bvs.R
    images = {}
    for i in range(1, n):
        images["sigma%d" % i] = materialize(
            LocalOperator.block(m, n, i, R), budget=budget
        )
    X = materialize(LocalOperator.shift(m, n), budget=budget)
    images["tau"] = X
    images["sigma%d" % n] = X * images["sigma%d" % (n - 1)] * X.inverse()
    return images


def local_necklace_rep(bvs, n, budget=4096):
    """Necklace assignment on the n-fold tensor power: generators act as the
    localized solution, the rotation as the cyclic factor shift, and the
    wrapping generator as its shift conjugate.

    The rotation image has multiplicative order exactly n; that is checked
    and stored as .tau_order on the returned assignment.
    """
    if n < 3:
        raise ValueError("need n >= 3 (the two-strand case needs a symmetric R)")
    images = _local_images(bvs, n, budget)
    assignment = RepAssignment("necklace", n, "matrix", images)
    X = images["tau"]
    power = X
    order = 1
    while not power.is_identity():
        power = power * X
        order += 1
        if order > n:
            raise ValueError("rotation image order exceeds the factor count")
    if order != n:
        raise ValueError("rotation image has order %d, expected %d" % (order, n))
    assignment.tau_order = order
    return assignment


def n2_symmetric_extension(R):
    """Two-strand extension attempt with the factor swap as rotation.

    Returns (assignment, report).  The extension stands exactly when the
    swap conjugates the solution to itself; otherwise the report carries the
    failing relation and a basis-image witness.
    """
    m = math.isqrt(R.dim)
    if m * m != R.dim:
        raise ValueError("matrix dimension is not a perfect square")
    P = flip_matrix(m)
    images = {"sigma1": R, "tau": P, "sigma2": P * R * P.inverse()}
    assignment = RepAssignment("necklace", 2, "matrix", images)
    report = verify(assignment, necklace_relations_full(2))
    return assignment, report


def conjecture_ratio(
    bvs,
    n,
    cap=2_000_000,
    budget=4096,
    checkpoint=None,
    resume=False,
    progress=None,
):
    """Closure orders of the three nested images (plain braid, wrapped braid,
    full necklace) and the ratio verdict order_NB = n * order_affine =
    n * 2^n * order_B.

    With a checkpoint prefix, each of the three runs checkpoints separately
    and can resume.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    images = _local_images(bvs, n, budget)
    sigmas = [images["sigma%d" % i] for i in range(1, n + 1)]
    runs = [
        ("b", sigmas[: n - 1]),
        ("affine", sigmas),
        ("nb", sigmas + [images["tau"]]),
    ]
    orders = {}
    for label, gens in runs:
        path = ("%s-%s.npz" % (checkpoint, label)) if checkpoint else None
        if progress:
            progress("closure %s: %d generators" % (label, len(gens)))
        result = group_closure(
            gens,
            cap=cap,
            checkpoint=path,
            # a run whose state never reached disk starts over
            resume=resume and path is not None and os.path.exists(path),
            progress=progress,
        )
        orders[label] = result.order
    out = {
        "order_B": orders["b"],
        "order_affine": orders["affine"],
        "order_NB": orders["nb"],
        "ratios": {
            "nb_over_b": orders["nb"] / orders["b"],
            "nb_over_affine": orders["nb"] / orders["affine"],
        },
        "expected": {"nb_over_b": n * 2**n, "nb_over_affine": n},
    }
    out["verdict"] = (
        orders["nb"] == n * 2**n * orders["b"] and orders["nb"] == n * orders["affine"]
    )
    return out
