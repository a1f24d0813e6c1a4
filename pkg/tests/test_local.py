"""Local (tensor-power) representations from Yang-Baxter solutions."""

import pytest

from necklace.errors import CapExceeded
from necklace.linalg import ExactMatrix, group_closure
from necklace.local_reps import (
    BVS,
    bvs_catalog,
    conjecture_ratio,
    flip_bvs,
    flip_matrix,
    ising,
    local_necklace_rep,
    n2_symmetric_extension,
    shift_conjugation_identity,
    ybe_check,
)
from necklace.presentations import GenWord, necklace_relations_full, verify
from necklace.scalar import ONE, ZERO, rational


def test_ybe_basics():
    assert ybe_check(ExactMatrix.identity(4))[0]
    p = flip_matrix(2)
    assert ybe_check(p)[0]
    assert (p * p).is_identity()
    assert ybe_check(ising().R)[0]


def test_ybe_failure_witness():
    m = ExactMatrix(
        [
            [ONE, ONE, ZERO, ZERO],
            [ZERO, ONE, ZERO, ZERO],
            [ZERO, ZERO, ONE, ZERO],
            [ZERO, ZERO, ZERO, ONE],
        ]
    )
    ok, wit = ybe_check(m)
    assert not ok
    assert "basis_index" in wit


def test_shift_conjugation_identity():
    assert shift_conjugation_identity(ising().R)
    assert shift_conjugation_identity(flip_matrix(2))


def test_bvs_guards_and_json():
    bad = ExactMatrix(
        [
            [ONE, ONE, ZERO, ZERO],
            [ZERO, ONE, ZERO, ZERO],
            [ZERO, ZERO, ONE, ZERO],
            [ZERO, ZERO, ZERO, ONE],
        ]
    )
    with pytest.raises(ValueError):
        BVS(2, bad)
    js = ising().to_json()
    assert BVS.from_json(js).R == ising().R


def test_catalog_entries_are_solutions():
    cat = bvs_catalog()
    assert {"ising", "flip2", "flip3"} <= set(cat)
    for name, make in cat.items():
        assert ybe_check(make().R)[0], name


@pytest.mark.parametrize("n", [3, 4])
def test_ising_local_suite(n):
    a = local_necklace_rep(ising(), n)
    assert verify(a, necklace_relations_full(n)).ok
    assert a.tau_order == n


def test_flip_local_suite():
    a = local_necklace_rep(flip_bvs(2), 4)
    assert verify(a, necklace_relations_full(4)).ok


def test_local_rep_needs_three_sites():
    with pytest.raises(ValueError):
        local_necklace_rep(ising(), 2)


def test_local_blocks_commute_and_shift():
    a = local_necklace_rep(ising(), 4)
    im = a.images
    assert im["sigma1"] * im["sigma3"] == im["sigma3"] * im["sigma1"]
    x = im["tau"]
    assert x * im["sigma1"] * x.inverse() == im["sigma2"]
    assert (x**4).is_identity()


def test_two_strand_swap_extensions():
    assert n2_symmetric_extension(flip_matrix(2))[1].ok
    diag = ExactMatrix.diagonal([ONE, rational(2), rational(2), rational(3)])
    assert n2_symmetric_extension(diag)[1].ok


def test_two_strand_ising_counterexample_vectors():
    a, rep = n2_symmetric_extension(ising().R)
    assert not rep.ok
    fail = rep.failures[0]
    assert fail["label"].startswith("B1")
    s1 = GenWord("necklace", 2, (("sigma1", 1),))
    s2 = GenWord("necklace", 2, (("sigma2", 1),))
    lhs = a.evaluate(s1 * s2 * s1)
    rhs = a.evaluate(s2 * s1 * s2)
    assert any(lhs[(r, 2)] != rhs[(r, 2)] for r in range(4))


def test_conjecture_ratio_ising_n3():
    out = conjecture_ratio(ising(), 3, cap=5000)
    assert out["order_B"] == 48
    assert out["order_affine"] == 384
    assert out["order_NB"] == 1152
    assert out["verdict"] is True
    assert out["expected"] == {"nb_over_b": 24, "nb_over_affine": 3}


def test_conjecture_ratio_flip_fails():
    out = conjecture_ratio(flip_bvs(2), 3, cap=5000)
    assert out["order_B"] == 6 and out["order_NB"] == 6
    assert out["verdict"] is False


def test_conjecture_ratio_cap():
    with pytest.raises(CapExceeded) as exc:
        conjecture_ratio(ising(), 3, cap=10)
    assert exc.value.partial_count > 0


def test_conjecture_checkpoint_resume(tmp_path):
    prefix = str(tmp_path / "ising3")
    with pytest.raises(CapExceeded):
        conjecture_ratio(ising(), 3, cap=100, checkpoint=prefix)
    out = conjecture_ratio(ising(), 3, cap=5000, checkpoint=prefix, resume=True)
    assert out["order_NB"] == 1152 and out["verdict"] is True
