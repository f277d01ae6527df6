import json

import pytest

from ado.catalog import catalog_algebra
from ado.errors import FaithfulnessError
from ado.lie import LieAlgebra
from ado.linalg import (
    Matrix,
    minimal_polynomial,
    squarefree_part,
    unit_vector,
)
from ado.pipeline import (
    ado_representation,
    reductive_representation,
    verify_representation,
)

from helpers import sl2_plus_solv2, sl2_semidirect_plane


FILIFORM = {(0, 1): {2: 1}, (0, 2): {3: 1}}


@pytest.mark.parametrize(
    "name, dim_v, blocks",
    [
        ("solv2", 15, [("enveloping", 15)]),
        ("heisenberg", 34, [("enveloping", 34)]),
        ("heisenberg5", 166, [("enveloping", 166)]),
        ("sl2", 4, [("reductive", 4)]),
        ("gl2", 9, [("enveloping", 5), ("reductive", 4)]),
        ("rot3", 35, [("enveloping", 35)]),
        ("jordan3", 34, [("enveloping", 34)]),
        ("abelian:2", 15, [("enveloping", 15)]),
    ],
)
def test_catalog_dimensions(name, dim_v, blocks):
    res = ado_representation(catalog_algebra(name))
    assert res.dim_v == dim_v
    assert [(b["kind"], b["dimension"]) for b in res.provenance["blocks"]] == blocks
    assert res.verification.verified
    assert res.verification.kernel_dimension == 0
    assert res.verification.residual_pairs == ()
    assert len(res.matrices) == res.algebra.dim
    assert all(m.nrows == m.ncols == dim_v for m in res.matrices)


def test_t3_full_tower():
    res = ado_representation(catalog_algebra("t3"))
    assert res.dim_v == 317
    env, red = res.provenance["blocks"]
    assert env["kind"] == "enveloping"
    assert env["dimension"] == 314
    assert env["cut_ideal_dimension"] == 148
    assert env["ambient_monomials"] == 8008
    assert env["truncation"] == 5
    assert env["nilpotency_index"] == 3
    assert env["acting_dimension"] == 2
    assert env["nilpotent_dimension"] == 6
    assert env["short_products"] == {
        "span_dimension": 28,
        "intersection_dimension": 0,
    }
    assert red == {"kind": "reductive", "dimension": 3, "adjoint_dimension": 1}
    assert res.verification.verified


def test_mixed_semisimple_and_solvable_summands():
    res = ado_representation(sl2_plus_solv2())
    assert res.dim_v == 19
    kinds = [b["kind"] for b in res.provenance["blocks"]]
    assert kinds == ["enveloping", "reductive"]
    assert res.verification.verified


@pytest.mark.parametrize(
    "m, order",
    [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 4)],
)
def test_abelian_dimension_formula(m, order):
    from math import comb

    res = ado_representation(catalog_algebra(f"abelian:{m}"), truncation=order)
    assert res.dim_v == comb(m + order, order)
    assert res.verification.verified


def test_zero_algebra():
    res = ado_representation(catalog_algebra("abelian:0"))
    assert res.dim_v == 1
    assert res.matrices == ()
    assert res.verification.verified


def test_solv2_scaling_spectrum():
    res = ado_representation(catalog_algebra("solv2"))
    reduced = squarefree_part(minimal_polynomial(res.matrices[0]))
    # eigenvalues 0..4: one for each power of e2 the module retains
    assert reduced.coeffs == (0, 24, -50, 35, -10, 1)
    step = res.matrices[1]
    assert step.power(5) == Matrix.zeros(15, 15)
    assert step.power(4) != Matrix.zeros(15, 15)


def test_provenance_is_json_serializable():
    res = ado_representation(catalog_algebra("gl2"))
    text = json.dumps(res.provenance, sort_keys=True)
    assert json.loads(text) == res.provenance
    assert res.provenance["retried"] is False
    assert res.provenance["saturation"][0]["stage"] == "initial"


def test_forced_truncation_trips_then_retry_recovers():
    fil = LieAlgebra.from_sparse(4, FILIFORM)
    with pytest.raises(FaithfulnessError):
        ado_representation(fil, truncation=2, retry=False)
    res = ado_representation(fil, truncation=2)
    assert res.provenance["retried"] is True
    assert res.provenance["blocks"][0]["truncation"] == 3
    assert res.dim_v == 14
    assert res.verification.verified
    default = ado_representation(fil)
    assert default.provenance["blocks"][0]["truncation"] == 6
    assert default.dim_v == 64
    assert default.provenance["retried"] is False


def test_adjoint_of_heisenberg_is_not_faithful():
    g = catalog_algebra("heisenberg")
    ads = tuple(g.ad(unit_vector(3, i)) for i in range(3))
    report = verify_representation(g, ads)
    assert report.homomorphism
    assert report.residual_pairs == ()
    assert report.kernel_dimension == 1
    assert not report.faithful
    assert not report.verified


def test_tampered_matrix_fails_verification():
    res = ado_representation(catalog_algebra("gl2"))
    rows = [list(row) for row in res.matrices[0].rows]
    rows[0][1] += 1
    tampered = (Matrix(rows),) + res.matrices[1:]
    report = verify_representation(res.algebra, tampered)
    assert not report.verified
    assert report.residual_pairs != ()


def test_verify_rejects_ragged_input():
    g = catalog_algebra("abelian:2")
    with pytest.raises(ValueError):
        verify_representation(g, (Matrix.zeros(2, 2),))
    with pytest.raises(ValueError):
        verify_representation(g, (Matrix.zeros(2, 2), Matrix.zeros(3, 3)))


def test_reductive_representation_of_sl2():
    mats = reductive_representation(catalog_algebra("sl2"))
    assert [m.nrows for m in mats] == [4, 4, 4]
    diag = [mats[0].rows[i][i] for i in range(4)]
    assert diag == [0, 2, -2, 0]
    report = verify_representation(catalog_algebra("sl2"), mats)
    assert report.verified


def test_reductive_representation_of_abelian_algebra():
    g = catalog_algebra("abelian:2")
    mats = reductive_representation(g)
    assert [m.nrows for m in mats] == [5, 5]
    # translation column carries each central coordinate
    assert mats[0].column(2) == (0, 0, 0, 1, 0)
    assert mats[1].column(2) == (0, 0, 0, 0, 1)
    report = verify_representation(g, mats)
    assert report.verified


def test_reductive_representation_rejects_non_reductive_input():
    with pytest.raises(ValueError, match="not reductive"):
        reductive_representation(catalog_algebra("heisenberg"))
    # perfect and centreless, yet solvable directions make Killing degenerate
    with pytest.raises(ValueError, match="not reductive"):
        reductive_representation(sl2_semidirect_plane())
