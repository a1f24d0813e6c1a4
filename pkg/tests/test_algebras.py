"""Twisted group algebras: the q-shift family and the quaternionic family."""

import random

import pytest

from necklace.errors import TagMismatch
from necklace.presentations import necklace_relations_full, verify
from necklace.scalar import gauss_sqrt, imaginary_unit, root_of_unity
from necklace.twisted_algebras import (
    AlgebraElement,
    algebra_mul,
    nes_algebra,
    nes_assignment,
    nes_braid_generator,
    nes_conjugation_identities,
    nes_local_assignment,
    nes_matrix_model,
    nes_mod_n_closure_check,
    quat_algebra,
    quat_assignment,
    quat_conjugation_table,
    quat_generator,
    quat_hom_check,
)


def slow_nes_normal(word, m, n):
    # independent oracle: one-step rewriting with u_i t = t u_{i-1} and
    # sorted transpositions collecting q^(+-2) phases, iterated to a fixpoint
    qord = m if m % 2 else 2 * m
    syms = []
    for s in word:
        if s[0] == "t":
            syms.extend([("t", 1)] * (s[1] % n))
        else:
            _, i, e = s
            syms.extend([("u", i)] * (e % m))
    phase = 0
    changed = True
    while changed:
        changed = False
        for k in range(len(syms) - 1):
            a, b = syms[k], syms[k + 1]
            if a[0] == "u" and b[0] == "t":
                syms[k] = ("t", 1)
                syms[k + 1] = ("u", (a[1] - 2) % n + 1)
                changed = True
                break
            if a[0] == "u" and b[0] == "u" and a[1] > b[1]:
                i, j = a[1], b[1]
                if (i - j) % n == 1:
                    phase -= 2
                elif (j - i) % n == 1:
                    phase += 2
                syms[k], syms[k + 1] = b, a
                changed = True
                break
    t_exp = sum(1 for s in syms if s[0] == "t") % n
    u_exps = [0] * n
    for s in syms:
        if s[0] == "u":
            u_exps[s[1] - 1] += 1
    return t_exp, tuple(e % m for e in u_exps), phase % qord


@pytest.mark.parametrize("m,n", [(2, 3), (3, 4), (4, 5)])
def test_normal_form_against_slow_rewriter(m, n):
    rng = random.Random(11)
    alg = nes_algebra(m, n)
    qord = m if m % 2 else 2 * m
    for _ in range(40):
        word = []
        for _ in range(rng.randint(1, 8)):
            if rng.random() < 0.3:
                word.append(("t", rng.choice([1, 2, n - 1])))
            else:
                word.append(("u", rng.randint(1, n), rng.randint(1, m)))
        elem = alg.one()
        for s in word:
            elem = elem * (alg.t(s[1]) if s[0] == "t" else alg.u(s[1], s[2]))
        te, ue, ph = slow_nes_normal(word, m, n)
        assert elem == AlgebraElement(alg, {(te, ue): root_of_unity(qord, ph)})


def test_defining_relations():
    alg = nes_algebra(3, 4)
    q = alg.q
    assert q == root_of_unity(3, 1)
    assert nes_algebra(2, 3).q == root_of_unity(4, 1)
    assert (alg.u(1) * alg.u(2) - alg.u(2) * alg.u(1) * q**2).is_zero()
    assert alg.t() * alg.u(3) * alg.t(-1) == alg.u(4)
    assert alg.u(1) ** 3 == alg.one()
    assert alg.t() ** 4 == alg.one()
    assert alg.u(1) * alg.u(3) == alg.u(3) * alg.u(1)
    assert str(alg.t(2) * alg.u(1) * alg.u(3, 2)) == "t^2 u1 u3^2"


def test_cross_algebra_guard():
    with pytest.raises(TagMismatch):
        nes_algebra(3, 4).u(1) * quat_algebra(4).u(1)


def test_braid_generator_invertible():
    alg = nes_algebra(3, 4)
    r = nes_braid_generator(3, 4, 1)
    assert r * r.inverse() == alg.one()
    assert alg.t().inverse() == alg.t(-1)
    with pytest.raises(ZeroDivisionError):
        (alg.u(1) - alg.u(1)).inverse()


def test_braid_generator_closed_form_m2():
    # m=2: the generator collapses to (1 + i u)/sqrt(2)
    alg = nes_algebra(2, 3)
    expected = (alg.one() + alg.u(1) * imaginary_unit()) * gauss_sqrt(2).inverse()
    assert nes_braid_generator(2, 3, 1) == expected


@pytest.mark.parametrize("m", [2, 3, 4, 5])
@pytest.mark.parametrize("n", [3, 4, 5])
def test_mod_n_closure_identities(m, n):
    assert nes_mod_n_closure_check(m, n)["ok"]


def test_mod_n_closure_small_n_has_no_far_pairs():
    assert "far_commute" not in nes_mod_n_closure_check(2, 3)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
@pytest.mark.parametrize("n", [3, 4, 5])
def test_conjugation_monomial_identities(m, n):
    for i in range(1, n + 1):
        assert nes_conjugation_identities(m, n, i)["ok"], (m, n, i)


def test_algebra_valued_necklace_suite():
    assert verify(nes_assignment(3, 4), necklace_relations_full(4)).ok


def _rand_elem(alg, rng, size=3):
    out = alg.zero()
    for _ in range(size):
        e = alg.t(rng.randint(0, alg.n - 1))
        for _ in range(2):
            e = e * alg.u(rng.randint(1, alg.n), rng.randint(0, alg.m - 1))
        out = out + e * rng.randint(1, 5)
    return out


def test_ring_axioms_spot_checks():
    rng = random.Random(5)
    alg = nes_algebra(3, 4)
    for _ in range(10):
        x, y, z = (_rand_elem(alg, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
    x, y = _rand_elem(alg, rng), _rand_elem(alg, rng)
    assert algebra_mul(x, y) == x * y


@pytest.mark.parametrize("m", [2, 3, 4, 5])
@pytest.mark.parametrize("n", [3, 4, 5])
def test_matrix_model_relations(m, n):
    # U_i^m = I, X U_i X^-1 = U_{i+1}, U_1 U_2 = q^2 U_2 U_1
    model = nes_matrix_model(m, n)
    assert model.relations_report()["ok"]


def test_matrix_model_details():
    model = nes_matrix_model(2, 3)
    assert (model.U[0] ** 2).is_identity()
    model33 = nes_matrix_model(3, 3)
    assert model33.X * model33.U[0] * model33.X.inverse() == model33.U[1]
    rng = random.Random(3)
    alg = model33.algebra
    for _ in range(5):
        x, y = _rand_elem(alg, rng, 2), _rand_elem(alg, rng, 2)
        assert model33.psi(x * y) == model33.psi(x) * model33.psi(y)


@pytest.mark.parametrize("m,n", [(2, 3), (3, 3), (2, 4), (3, 4)])
def test_composed_local_suite(m, n):
    assert verify(nes_local_assignment(m, n), necklace_relations_full(n)).ok


def test_quaternionic_relations():
    alg = quat_algebra(4)
    one = alg.one()
    assert alg.u(2) ** 2 == -one
    assert alg.v(3) ** 2 == -one
    assert alg.u(1) * alg.v(1) == -(alg.v(1) * alg.u(1))
    assert alg.u(1) * alg.v(2) == -(alg.v(2) * alg.u(1))
    assert alg.u(1) * alg.v(4) == -(alg.v(4) * alg.u(1))
    assert alg.u(1) * alg.v(3) == alg.v(3) * alg.u(1)
    assert alg.u(1) * alg.u(3) == alg.u(3) * alg.u(1)
    assert alg.t() * alg.u(1) * alg.t(-1) == alg.u(2)
    assert alg.t() * alg.v(4) * alg.t(-1) == alg.v(1)
    comm = alg.u(1) * alg.v(1) * alg.u(1).inverse() * alg.v(1).inverse()
    assert comm == -one


def test_quaternionic_generator_unit():
    alg = quat_algebra(4)
    xi = quat_generator(4, 2)
    assert xi * xi.inverse() == alg.one()


@pytest.mark.parametrize("n", [3, 4, 5])
def test_quaternionic_hom_and_table(n):
    assert quat_hom_check(n)["ok"]
    for i in range(1, n + 1):
        assert quat_conjugation_table(n, i)["ok"], (n, i)


def test_quaternionic_necklace_suite():
    assert verify(quat_assignment(3), necklace_relations_full(3)).ok
