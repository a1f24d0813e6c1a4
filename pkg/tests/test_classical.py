"""Classical braid representations and their rotation extensions."""

import pytest

from necklace.classical_reps import (
    BraidRep,
    NecklaceExtension,
    burau_reduced,
    burau_unreduced,
    dim2_family,
    lkb,
    lkb_nonstandard_tau,
    n2_tau_conditions,
    n2_tau_list,
    nonstandard_block_tau,
    standard_extension,
    standard_rep,
    twist,
    unreduced_burau_extension,
)
from necklace.errors import (
    NotDiagonalizable,
    ParameterDegenerate,
    RestrictionViolated,
)
from necklace.linalg import ExactMatrix
from necklace.scalar import ONE, ZERO, Scalar, root_of_unity, var

z = var("z")
t = var("t")
q = var("q")


def test_constructors_and_twist_scalars():
    rep = standard_rep(4, z)
    assert rep.degree == 4
    assert (twist(rep) ** 8).scalar_multiple_of_identity() == z**6
    rb = burau_reduced(4, t)
    assert rb.degree == 3
    assert (twist(rb) ** 4).scalar_multiple_of_identity() == t**4
    assert burau_unreduced(4, t).degree == 4


@pytest.mark.parametrize("n", [3, 4, 5])
def test_lkb_central_twist_scalar(n):
    # gamma^n acts by t^2 q^(2n): each index pair wraps past the last strand
    # twice per full cycle, once for each member of the pair
    g = twist(lkb(n, q, t))
    assert (g**n).scalar_multiple_of_identity() == t**2 * q ** (2 * n)


def test_braid_constructor_rejects_nonrepresentation():
    with pytest.raises(ValueError, match="B1"):
        BraidRep(
            3,
            {
                "sigma1": ExactMatrix([[ONE, ONE], [ZERO, ONE]]),
                "sigma2": ExactMatrix.identity(2),
            },
        )


@pytest.mark.parametrize("n", [3, 4, 5])
def test_standard_extension_scalar_identity(n):
    # lambda^(2n) = z^(-2(n-1)) after replacing z by an n-th root w
    ext = standard_extension(standard_rep(n, z))
    assert ext.relations_ok
    w = var("z_rt%d" % n)
    assert ext.flags["root_substitution"] == {"z": ("z_rt%d" % n, n)}
    lam = ext.lambdas[0]
    assert lam == w ** (-(n - 1))
    assert lam ** (2 * n) == (w**n) ** (-2 * (n - 1))
    assert (ext.tau ** (2 * n)).is_identity()


def test_standard_extension_branches():
    ext = standard_extension(standard_rep(3, z), branch=2)
    assert ext.relations_ok
    assert ext.lambdas[0] == var("z_rt3") ** -2 * root_of_unity(6, 2)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_burau_reduced_extension_scalar_identity(n):
    # lambda = t^(-1) directly, no root adjunction
    ext = standard_extension(burau_reduced(n, t))
    assert ext.relations_ok
    assert ext.flags["root_substitution"] == {}
    assert ext.lambdas[0] == t**-1
    assert ext.lambdas[0] ** (2 * n) == t ** (-2 * n)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_lkb_extension_scalar(n):
    # honest scalar: lambda = t^(-2/n) q^(-2), the fractional power reduced
    # before a root gets adjoined, so lambda^(2n) = t^(-4) q^(-4n)
    ext = standard_extension(lkb(n, q, t))
    assert ext.relations_ok
    if n % 2:
        k, e = n, 2
    else:
        k, e = n // 2, 1
    w = var("t_rt%d" % k)
    assert ext.flags["root_substitution"] == {"t": ("t_rt%d" % k, k)}
    assert ext.lambdas[0] == w**-e * q**-2
    assert ext.lambdas[0] ** (2 * n) == (w**k) ** -4 * q ** (-4 * n)


def test_unreduced_burau_multi_eigenvalue_extension():
    ext = standard_extension(
        burau_unreduced(3, t), candidates=(Scalar.from_rational(1), t**6)
    )
    assert ext.relations_ok
    assert len(ext.lambdas) == 2
    assert (ext.tau**6).is_identity()


def test_extension_rejects_defective_twist():
    j = BraidRep(2, {"sigma1": ExactMatrix([[ONE, ONE], [ZERO, ONE]])})
    assert NecklaceExtension(j, ExactMatrix.identity(2), "manual").relations_ok
    with pytest.raises(NotDiagonalizable):
        standard_extension(j)


def test_block_rotation_standard_locus():
    blk = nonstandard_block_tau(3, z, Scalar.from_rational(2))
    assert blk.relations_ok
    assert blk.flags["tau_power_identity"]
    assert blk.flags["standard"] is False
    # t^(2n) = z^(-2(n-1)) along z = w^-3, t = w^2
    w = var("w")
    blk2 = nonstandard_block_tau(3, w**-3, w**2)
    assert blk2.relations_ok
    assert blk2.flags["standard"] is True


def test_two_strand_rotation_catalog():
    taus = n2_tau_list(z)
    assert len(taus) == 12
    verdicts = [n2_tau_conditions(m, z)["nb2_ok"] for m in taus]
    assert verdicts.count(True) == 10
    assert verdicts[2] is False and verdicts[3] is False


def test_two_strand_corrected_catalog():
    taus = n2_tau_list(z, corrected=True)
    assert len(taus) == 16
    assert all(n2_tau_conditions(m, z)["nb2_ok"] for m in taus)
    scalars = [m for m in taus if m.scalar_multiple_of_identity() is not None]
    assert len(scalars) == 4


def test_lkb_nonstandard_three_strands():
    # branch 0 takes the cube root of t^(-1): rotation cubes to the identity,
    # so the extension cannot be faithful
    e = lkb_nonstandard_tau(3, q, t, branch=0)
    assert e.relations_ok
    assert (e.tau**3).is_identity()
    assert e.flags["tau_n_scalar"] == "1"
    assert e.flags["faithful_probe"] is False
    # branch 1 cubes to -1 and keeps the probe alive
    e1 = lkb_nonstandard_tau(3, q, t, branch=1)
    assert e1.relations_ok
    assert e1.flags["tau_n_scalar"] == "-1"
    assert e1.flags["faithful_probe"] is True


@pytest.mark.parametrize("branch,scalar", [(0, "1"), (1, "-1")])
def test_lkb_nonstandard_four_strands(branch, scalar):
    e = lkb_nonstandard_tau(4, q, t, branch=branch)
    assert e.relations_ok
    assert e.flags["tau_n_scalar"] == scalar
    if branch == 0:
        assert (e.tau**4).is_identity()


def test_unreduced_burau_weighted_shift():
    ext, rpt = unreduced_burau_extension(
        4, Scalar.from_rational(3), Scalar.from_rational(2)
    )
    assert ext.relations_ok
    assert rpt["tau_power_identity"]
    assert rpt["nb_irreducible"] is True
    assert rpt["braid_restriction_irreducible"] is False


def test_dim2_catalog_truth_table():
    i4 = root_of_unity(4, 1)
    assert dim2_family(2, 1, {"a": 2, "d": 1, "t2": i4}).relations_ok
    assert dim2_family(4, 1, {"a": 2, "d": 1, "t2": root_of_unity(8, 1)}).relations_ok
    # the first family needs tau^(2n) = 1 through t2; a 12th root breaks n=3
    d = dim2_family(3, 1, {"a": 2, "d": 1, "t2": root_of_unity(12, 1)})
    assert not d.relations_ok
    labels = {r["label"] for r in d.report.failures}
    assert any("N1" in x for x in labels) and any("N2" in x for x in labels)
    assert all(
        not dim2_family(2, 2, {"a": 2, "d": 1, "variant": v}).relations_ok
        for v in range(4)
    )
    assert not dim2_family(3, 3, {"a": 2, "d": 1, "variant": 0}).relations_ok


def test_dim2_fourth_family_sixth_root_locus():
    # as displayed (omega a 4th root) the family fails; a primitive 6th root works
    assert not dim2_family(3, 4, {"d": 2, "c": 3, "variant": 0}).relations_ok
    assert dim2_family(3, 4, {"d": 2, "c": 3, "variant": 0, "omega_order": 6}).relations_ok
    assert all(
        dim2_family(3, 4, {"d": 2, "c": c, "variant": v, "omega_order": 6}).relations_ok
        for c in (1, 5) for v in range(8)
    )
    assert dim2_family(
        3, 4, {"d": 2, "c": 3, "variant": 2, "omega_order": 6, "omega_conjugate": True}
    ).relations_ok


def test_parameter_restrictions():
    with pytest.raises(RestrictionViolated):
        dim2_family(2, 1, {"a": 1, "d": 1, "t2": root_of_unity(4, 1)})
    with pytest.raises(RestrictionViolated):
        dim2_family(3, 4, {"d": 2, "c": root_of_unity(6, 1) * 4, "omega_order": 6})
    with pytest.raises(ParameterDegenerate):
        standard_rep(3, Scalar.from_rational(1))


def test_extension_json_shape():
    js = lkb_nonstandard_tau(3, q, t, branch=0).to_json()
    assert set(js) == {"kind", "n", "degree", "flags", "relations", "matrices"}
    import json

    json.dumps(js)
