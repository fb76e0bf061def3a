"""The compiled and pure-Python kernels must agree exactly."""

import itertools
import random

import pytest

from bihom3 import _accel, _kernels_py, catalog
from bihom3.algebra import jacobi_tables, verify_axioms
from bihom3.search import commutant_basis

from helpers import random_algebra

needs_compiled = pytest.mark.skipif(not _accel.compiled_available(), reason="compiled kernels not built")


def _flat_box(par, bound, sign, backend):
    return _accel.box_square_search(
        par.n, bound, list(par.free_pos), list(par.dep_pos), [list(r) for r in par.dep_num], par.denom, sign,
        backend=backend,
    )  # fmt: skip


@needs_compiled
@pytest.mark.parametrize("name", ["ex_3_18", "ex_3_19", "ex_3_19_bihom", "ex_4_22", "abelian_3"])
def test_jacobi_scan_parity_on_fixtures(name):
    A = catalog.BUILDERS[name]()
    outer, inner = jacobi_tables(A)
    assert _accel.jacobi_scan(outer, inner, A.dim, "compiled") == _accel.jacobi_scan(outer, inner, A.dim, "python")


@needs_compiled
@pytest.mark.parametrize("seed", range(12))
def test_jacobi_scan_parity_on_perturbed_algebras(seed):
    rng = random.Random(seed)
    A = random_algebra(seed)
    br = {k: list(v) for k, v in A.bracket.items()}
    for _ in range(2):
        key = tuple(rng.randrange(A.dim) for _ in range(3))
        v = br.setdefault(key, [0] * A.dim)
        v[rng.randrange(A.dim)] += rng.choice((-2, -1, 1, 2))
    B = A.with_bracket(br)
    outer, inner = jacobi_tables(B)
    assert _accel.jacobi_scan(outer, inner, B.dim, "compiled") == _accel.jacobi_scan(outer, inner, B.dim, "python")


@needs_compiled
@pytest.mark.parametrize("name, bound, sign", [("ex_3_18", 1, 1), ("ex_3_18", 2, -1), ("ex_4_22", 1, -1), ("abelian_2", 2, 1)])
def test_box_search_parity(name, bound, sign):
    A = catalog.BUILDERS[name]()
    par = commutant_basis(A.alpha, A.beta)
    assert _flat_box(par, bound, sign, "compiled") == _flat_box(par, bound, sign, "python")


def test_python_box_search_matches_brute_force():
    # all 3^4 integer 2x2 matrices with entries in [-1, 1] squaring to -Id
    expected = []
    for m in itertools.product(range(-1, 2), repeat=4):
        a, b, c, d = m
        if (a * a + b * c, a * b + b * d, c * a + d * c, c * b + d * d) == (-1, 0, 0, -1):
            expected.append(m)
    par = commutant_basis(*(catalog.abelian(2).alpha,) * 2)
    assert _flat_box(par, 1, -1, "python") == expected


def test_rational_commutant_coefficients():
    from bihom3.linalg import Matrix

    alpha = Matrix([[1, 1], [0, 2]])
    par = commutant_basis(alpha, Matrix.identity(2))
    flats = _flat_box(par, 2, 1, "python")
    for f in flats:
        M = Matrix([f[:2], f[2:]])
        assert M @ M == Matrix.identity(2) and M.commutes_with(alpha)


def test_unknown_backend():
    with pytest.raises(ValueError):
        _accel.jacobi_scan([], [], 0, "gpu")


def test_verify_axioms_same_on_both_backends(monkeypatch):
    A = catalog.example_3_19()
    ref = verify_axioms(A)
    monkeypatch.setattr(_accel, "DEFAULT_BACKEND", "python")
    assert verify_axioms(A) == ref
