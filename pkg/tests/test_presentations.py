"""Presentations, words, relation generators, and the verifier."""

import pytest

from necklace.errors import AlphabetMismatch, TagMismatch
from necklace.linalg import ExactMatrix
from necklace.local_reps import ising, n2_symmetric_extension
from necklace.presentations import (
    GenWord,
    RepAssignment,
    braid_relations,
    circular_relations,
    induced_from_first,
    loop_braid_relations,
    necklace_relations_full,
    necklace_relations_reduced,
    reduced_set_sufficiency_check,
    symmetric_group_assignment,
    verify,
)
from necklace.scalar import ONE, ZERO, rational


def test_word_algebra():
    n = 4
    s1 = GenWord("necklace", n, (("sigma1", 1),))
    s2 = GenWord("necklace", n, (("sigma2", 1),))
    w = s1 * s2 * s2.inverse()
    assert w == s1
    assert (s1 * s1.inverse()) == GenWord("necklace", n)
    assert str(s1**-2) == "sigma1^-2"
    assert (s1 * s2).inverse() == s2.inverse() * s1.inverse()
    assert s1**0 == GenWord("necklace", n)


def test_word_cross_alphabet_guard():
    a = GenWord("necklace", 3, (("sigma1", 1),))
    b = GenWord("loop", 3, (("g1", 1),))
    with pytest.raises(TagMismatch):
        a * b


def test_relation_counts():
    # wrap-around braid pairs: n of them; far pairs: n(n-3)/2; conjugation: n; order: 1
    for n in range(3, 9):
        full = necklace_relations_full(n)
        assert len(full) == n + n * (n - 3) // 2 + n + 1 == n * (n + 1) // 2 + 1
        assert len(circular_relations(n)) == len(full) - 1
        reduced = necklace_relations_reduced(n)
        assert len(reduced) < len(full)
    assert len(circular_relations(3)) == 6
    assert len(braid_relations(3)) == 1
    assert len(braid_relations(5)) == 3 + 3


def test_relation_counts_small_n():
    # n=2: the two wrap braid relations coincide and are deduplicated
    full2 = necklace_relations_full(2)
    b1 = [lab for lab, _, _ in full2 if lab.startswith("B1")]
    assert len(b1) == 1
    # no far pairs below n=4 on the circle
    assert not [lab for lab, _, _ in necklace_relations_full(3) if lab.startswith("B2")]
    assert not [lab for lab, _, _ in loop_braid_relations(2) if "far" in lab]


def test_loop_relation_families():
    rels = loop_braid_relations(4)
    families = {lab.split("[")[0] for lab, _, _ in rels}
    assert families == {
        "Gbraid",
        "Gfar",
        "Sbraid",
        "Sfar",
        "Sinv",
        "MixFar",
        "Mix1",
        "Mix2",
    }


def test_symmetric_assignment_passes():
    for n in (2, 3, 4):
        rep = verify(symmetric_group_assignment(n), necklace_relations_full(n))
        assert rep.ok, rep.failures


def test_constant_jordan_assignment_passes():
    # every generator a single unipotent Jordan block, rotation trivial
    j = ExactMatrix([[ONE, ONE], [ZERO, ONE]])
    eye = ExactMatrix.identity(2)
    n = 4
    images = {"sigma%d" % i: j for i in range(1, n + 1)}
    images["tau"] = eye
    rep = verify(RepAssignment("necklace", n, "matrix", images), necklace_relations_full(n))
    assert rep.ok


def test_ising_two_strand_counterexample():
    # the factor swap fails to extend the 2-strand Ising solution: the two
    # sides of the wrap braid relation disagree on the e2 (x) e1 input
    assignment, rep = n2_symmetric_extension(ising().R)
    assert not rep.ok
    fails = rep.failures
    assert [f["label"] for f in fails] == ["B1[1]"]
    assert fails[0]["witness"]["basis_index"] == 1
    lhs = assignment.evaluate(
        GenWord("necklace", 2, (("sigma1", 1), ("sigma2", 1), ("sigma1", 1)))
    )
    rhs = assignment.evaluate(
        GenWord("necklace", 2, (("sigma2", 1), ("sigma1", 1), ("sigma2", 1)))
    )
    col = 2  # e2 (x) e1
    lv = [str(lhs.rows[r][col]) for r in range(4)]
    rv = [str(rhs.rows[r][col]) for r in range(4)]
    h = "1/2*zeta(8) - 1/2*zeta(8)^3"  # 1/sqrt(2)
    assert lv == ["0", "-1/2*zeta(8) + 1/2*zeta(8)^3", h, "0"]
    assert rv == ["0", h, h, "0"]
    assert lv != rv


def test_verify_alphabet_guard():
    a = symmetric_group_assignment(3)
    with pytest.raises(AlphabetMismatch):
        verify(a, loop_braid_relations(3))


def test_restriction_to_braid_subgroup():
    a = symmetric_group_assignment(5)
    rep = verify(a.restrict_to_braid(), braid_relations(5))
    assert rep.ok


def test_reduced_sufficiency_symmetric():
    assert reduced_set_sufficiency_check(symmetric_group_assignment(5))


def test_reduced_sufficiency_violation():
    # sigma1 unipotent, tau the swap: the induced sigma2 breaks the braid identity
    s = ExactMatrix([[ONE, ONE], [ZERO, ONE]])
    p = ExactMatrix([[ZERO, ONE], [ONE, ZERO]])
    a = induced_from_first("necklace", 3, "matrix", s, p)
    assert not reduced_set_sufficiency_check(a)
    red = verify(a, necklace_relations_reduced(3))
    assert any(f["label"].startswith("B1") for f in red.failures)


def test_induced_matches_direct():
    sym = symmetric_group_assignment(4)
    ind = induced_from_first(
        "necklace", 4, "matrix", sym.images["sigma1"], sym.images["tau"]
    )
    for name, img in sym.images.items():
        assert ind.images[name] == img


def test_report_json_shape():
    rep = verify(symmetric_group_assignment(3), necklace_relations_full(3))
    d = rep.to_json()
    assert d["ok"] is True
    assert {r["status"] for r in d["pairs"]} == {"pass"}
    assert len(d["pairs"]) == len(necklace_relations_full(3))
    assert d["pairs"][-1]["lhs"] == "tau^6"
