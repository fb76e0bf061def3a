import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihom3 import catalog
from bihom3.algebra import (
    AXIOMS,
    Algebra3BH,
    FieldMismatch,
    is_abelian_subspace,
    is_ideal,
    is_nijenhuis,
    is_regular,
    is_subalgebra,
    subalgebra_failure,
    verify_axioms,
)
from bihom3.linalg import DimensionMismatch, Matrix, Subspace
from bihom3.scalars import Field, I

from helpers import oracle_axiom_failures, random_algebra, singular_variant


@pytest.mark.parametrize("name", ["ex_3_18", "ex_3_19_bihom", "ex_4_22", "abelian_1", "abelian_4"])
def test_valid_fixtures_pass_all_axioms(name):
    report = verify_axioms(catalog.BUILDERS[name]())
    assert report.ok
    assert set(report.verdicts) == set(AXIOMS)


def test_total_skew_completion_fails_with_witnesses():
    # frozen from the dense einsum oracle in helpers.oracle_axiom_failures
    report = verify_axioms(catalog.example_3_19())
    assert not report.ok
    assert report.failures["bihom_skewsymmetry"] == 16
    assert report.failures["bihom_jacobi"] == 64
    assert report.verdicts["alpha_multiplicative"] and report.verdicts["beta_multiplicative"]
    assert report.witnesses["bihom_skewsymmetry"].indices == (0, 1, 2)
    assert report.witnesses["bihom_jacobi"].indices == (0, 1, 0, 2, 1)


@pytest.mark.parametrize("name", catalog.FIXTURE_NAMES)
def test_axiom_failure_counts_match_oracle(name):
    A = catalog.BUILDERS[name]()
    assert verify_axioms(A).failures == oracle_axiom_failures(A)


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_perturbed_random_algebras_match_oracle(seed):
    import random

    A = random_algebra(seed, dim=3)
    rng = random.Random(seed)
    br = {k: list(v) for k, v in A.bracket.items()}
    key = tuple(rng.randrange(3) for _ in range(3))
    vec = br.get(key, [0, 0, 0])
    vec[rng.randrange(3)] += rng.choice((-1, 1))
    br[key] = vec
    B = A.with_bracket(br)
    assert verify_axioms(B).failures == oracle_axiom_failures(B)


def test_non_commuting_twists_are_reported():
    A = Algebra3BH("t", 2, Field.RATIONAL, {}, Matrix([[1, 1], [0, 1]]), Matrix.diag([1, 2]))
    report = verify_axioms(A)
    assert not report.verdicts["alpha_beta_commute"]


def test_regularity():
    assert is_regular(catalog.example_3_18())
    assert not is_regular(singular_variant(catalog.example_3_18()))


def test_singular_variant_is_valid():
    assert verify_axioms(singular_variant(catalog.example_4_22())).ok


def test_bracket_eval_is_trilinear():
    A = catalog.example_3_18()
    x, y, z = (1, 2, 0), (0, 1, 1), (3, 0, -1)
    v = A.bracket_eval(x, y, z)
    # [x,y,z] expanded by hand from the basis brackets
    expected = [0, 0, 0]
    for (i, j, k), val in A.bracket.items():
        c = x[i] * y[j] * z[k]
        expected = [a + c * b for a, b in zip(expected, val)]
    assert list(v) == expected


def test_construction_errors():
    with pytest.raises(IndexError):
        Algebra3BH("bad", 2, Field.RATIONAL, {(0, 1, 2): [1, 0]}, Matrix.identity(2), Matrix.identity(2))
    with pytest.raises(DimensionMismatch):
        Algebra3BH("bad", 2, Field.RATIONAL, {(0, 1, 1): [1, 0, 0]}, Matrix.identity(2), Matrix.identity(2))
    with pytest.raises(DimensionMismatch):
        Algebra3BH("bad", 3, Field.RATIONAL, {}, Matrix.identity(2), Matrix.identity(3))
    with pytest.raises(FieldMismatch):
        Algebra3BH("bad", 1, Field.RATIONAL, {(0, 0, 0): [I]}, Matrix.identity(1), Matrix.identity(1))
    with pytest.raises(ValueError):
        Algebra3BH("bad", 0, Field.RATIONAL, {}, [], [])


def test_zero_entries_are_dropped():
    A = Algebra3BH("z", 3, Field.RATIONAL, {(0, 1, 2): [0, 0, 0]}, Matrix.identity(3), Matrix.identity(3))
    assert A.is_abelian


def test_subalgebra_and_ideal_on_3_18():
    A = catalog.example_3_18()
    e = Subspace.span_of_basis_vectors
    # span{e1, e2} is twist-invariant and all brackets in it vanish
    assert is_subalgebra(A, e(3, [0, 1]))
    assert is_abelian_subspace(A, e(3, [0, 1]))
    # span{e2} absorbs every bracket
    assert is_ideal(A, e(3, [1]))
    assert subalgebra_failure(A, e(3, [0]), ideal=True) == "absorption"
    assert subalgebra_failure(A, Subspace(3, [[1, 1, 0]])) == "beta-invariance"


def test_subalgebra_closure_failure():
    A = catalog.example_4_22()
    # span{e1,e2,e3} is invariant under both twists but [e1,e2,e3] = e4
    assert subalgebra_failure(A, Subspace.span_of_basis_vectors(4, [0, 1, 2])) == "closure"


def test_nijenhuis_identity_and_scalar_operators():
    A = catalog.example_4_22()
    assert is_nijenhuis(A, Matrix.identity(4))
    assert is_nijenhuis(A, Matrix.zeros(4))
    res = is_nijenhuis(A, Matrix([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]))
    assert not res and not res.commutes_alpha
    assert res.witness is not None


def test_product_structures_are_nijenhuis():
    A = catalog.example_4_22()
    for E in catalog.EX_4_22_E.values():
        assert is_nijenhuis(A, E)


def test_complex_structures_are_nijenhuis():
    A = catalog.example_4_22()
    for J in catalog.EX_4_22_J.values():
        assert is_nijenhuis(A, J)


def test_with_bracket_and_same_structure():
    A = catalog.example_3_18()
    B = A.with_bracket(dict(A.bracket), name="copy")
    assert A.same_structure(B)
    assert not A.same_structure(catalog.abelian(3))
