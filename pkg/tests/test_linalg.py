"""Exact linear algebra: characteristic polynomials, spectra, projectors,
local operators, and finite closures."""

from fractions import Fraction
from itertools import permutations

from hypothesis import given
from hypothesis import strategies as st
import pytest

from necklace.errors import (
    CapExceeded,
    CorruptCheckpoint,
    NotDiagonalizable,
    SizeBudgetExceeded,
    SpectrumNotResolved,
)
from necklace.linalg import (
    ExactMatrix,
    LocalOperator,
    burnside_irreducible,
    char_poly,
    group_closure,
    kron,
    materialize,
    monomial_spectrum,
    nilpotency_probe,
    spectral_projectors,
)
from necklace.scalar import ONE, ZERO, rational, root_of_unity, var

rat = st.fractions(
    min_value=-4, max_value=4, max_denominator=3
).map(rational)


def mat(rows):
    return ExactMatrix([[rational(x) if isinstance(x, (int, Fraction)) else x for x in row] for row in rows])


def rand_matrix(draw_vals, d):
    return ExactMatrix([[draw_vals[i * d + j] for j in range(d)] for i in range(d)])


@given(st.lists(rat, min_size=9, max_size=9))
def test_char_poly_matches_leibniz_expansion(vals):
    # oracle: det(xI - M) expanded by the permutation sum on 3x3
    m = rand_matrix(vals, 3)
    x = var("x")
    entries = [[(x if i == j else ZERO) - m.rows[i][j] for j in range(3)] for i in range(3)]
    det = ZERO
    for perm in permutations(range(3)):
        sign = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if perm[i] > perm[j]:
                    sign = -sign
        term = rational(sign)
        for i in range(3):
            term = term * entries[i][perm[i]]
        det = det + term
    coeffs = char_poly(m)  # lowest-degree first, monic
    built = sum((coeffs[k] * x**k for k in range(4)), ZERO)
    assert coeffs[3] == ONE
    assert built == det


@given(st.lists(rat, min_size=4, max_size=4), st.lists(rat, min_size=4, max_size=4))
def test_kron_mixed_product(a_vals, b_vals):
    a, b = rand_matrix(a_vals, 2), rand_matrix(b_vals, 2)
    c, d = a * b, b * a
    assert kron(a, b) * kron(b, a) == kron(c, d)


def test_kron_identity_and_dims():
    a = mat([[1, 2], [3, 4]])
    assert kron(a, ExactMatrix.identity(3)).dim == 6
    assert kron(ExactMatrix.identity(1), a) == a


def test_cayley_hamilton():
    m = mat([[1, 2, 0], [0, 3, 1], [5, 0, 1]])
    coeffs = char_poly(m)
    acc = ExactMatrix.zeros(3)
    power = ExactMatrix.identity(3)
    for c in coeffs:
        acc = acc + power.scale(c)
        power = power * m
    assert acc.is_zero()


def test_monomial_spectrum_diagonal_and_symbolic():
    t = var("t")
    m = ExactMatrix(
        [[t**2, ZERO, ZERO], [ZERO, t**2, ZERO], [ZERO, ZERO, rational(3)]]
    )
    spec = monomial_spectrum(m, candidates=(t**2, rational(3)))
    assert sorted((str(c), k) for c, k in spec) == [("3", 1), ("t^2", 2)]


def test_monomial_spectrum_numeric_recognition():
    m = mat([[Fraction(1, 4), 0], [1, -2]])
    spec = {str(c): k for c, k in monomial_spectrum(m)}
    assert spec == {"1/4": 1, "-2": 1}


def test_monomial_spectrum_unresolved():
    t = var("t")
    m = ExactMatrix([[t, ONE], [ONE, ZERO]])  # eigenvalues irrational in t
    with pytest.raises(SpectrumNotResolved):
        monomial_spectrum(m)


def test_spectral_projectors_complete_orthogonal_idempotent():
    m = mat([[2, 1], [0, 3]])
    spec = monomial_spectrum(m)
    projs = spectral_projectors(m, spec)
    total = ExactMatrix.zeros(2)
    rebuilt = ExactMatrix.zeros(2)
    for (c, _), p in zip(spec, projs):
        assert p * p == p
        total = total + p
        rebuilt = rebuilt + p.scale(c)
    assert total.is_identity()
    assert rebuilt == m
    for i, p in enumerate(projs):
        for j, p2 in enumerate(projs):
            if i != j:
                assert (p * p2).is_zero()


def test_spectral_projector_rejects_defective():
    m = mat([[1, 1], [0, 1]])
    with pytest.raises(NotDiagonalizable):
        spectral_projectors(m, [(ONE, 2)])


def test_nilpotency_probe():
    assert nilpotency_probe(ExactMatrix.identity(3)) == (True, 0)
    jordan = mat([[1, 1], [0, 1]])
    assert nilpotency_probe(jordan) == (False, 2)
    assert nilpotency_probe(mat([[2, 0], [0, 1]])) == (False, None)


def test_local_operator_block_and_shift():
    u = mat([[0, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 0]])
    # position*1 on 3 sites: u (x) I
    b1 = materialize(LocalOperator.block(2, 3, 1, u))
    assert b1 == kron(u, ExactMatrix.identity(2))
    b2 = materialize(LocalOperator.block(2, 3, 2, u))
    assert b2 == kron(ExactMatrix.identity(2), u)
    shift = materialize(LocalOperator.shift(2, 3))
    assert (shift**3).is_identity()
    assert shift * b1 * shift.inverse() == b2


def test_materialize_budget():
    with pytest.raises(SizeBudgetExceeded):
        materialize(LocalOperator.shift(2, 13), budget=4096)


def _perm_matrix(perm):
    d = len(perm)
    rows = [[ZERO] * d for _ in range(d)]
    for i, j in enumerate(perm):
        rows[j][i] = ONE
    return ExactMatrix(rows)


def test_group_closure_symmetric_group():
    gens = [_perm_matrix((1, 0, 2, 3)), _perm_matrix((1, 2, 3, 0))]
    result = group_closure(gens)
    assert result.order == 24


def test_group_closure_idempotent_under_generator_growth():
    gens = [_perm_matrix((1, 0, 2)), _perm_matrix((1, 2, 0))]
    base = group_closure(gens)
    # adding any already-reachable element must not change the group
    extra = gens[1] * gens[0]
    again = group_closure(gens + [extra])
    assert again.order == base.order == 6
    assert again.elements == base.elements


def test_group_closure_cap():
    gens = [_perm_matrix((1, 2, 3, 0))]
    with pytest.raises(CapExceeded):
        group_closure(gens, cap=2)


def test_group_closure_cyclotomic_entries():
    z = root_of_unity(8)
    m = ExactMatrix([[z, ZERO], [ZERO, z.inverse()]])
    assert group_closure([m]).order == 8


def test_checkpoint_roundtrip_and_fingerprint(tmp_path):
    gens = [_perm_matrix((1, 0, 2, 3)), _perm_matrix((1, 2, 3, 0))]
    path = str(tmp_path / "state.npz")
    full = group_closure(gens, checkpoint=path)
    resumed = group_closure(gens, checkpoint=path, resume=True)
    assert resumed.order == full.order == 24
    other = [_perm_matrix((1, 0, 2, 3))]
    with pytest.raises(CorruptCheckpoint):
        group_closure(other, checkpoint=path, resume=True)


def test_burnside_irreducible():
    z = var("z")
    full = [mat([[0, 1], [1, 0]]), ExactMatrix([[ONE, ONE], [ZERO, ONE]])]
    assert burnside_irreducible(full)
    diag = [ExactMatrix([[z, ZERO], [ZERO, z**2]])]
    assert not burnside_irreducible(diag)


def test_trace_det_inverse():
    m = mat([[1, 2], [3, 4]])
    assert m.trace() == rational(5)
    assert m.det() == rational(-2)
    assert m * m.inverse() == ExactMatrix.identity(2)
