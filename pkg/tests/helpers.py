"""Test-only constructions and an independent dense oracle.

The oracle evaluates brackets by contracting a dense object-dtype numpy
tensor, sharing no code with the sparse evaluator in the package.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from bihom3 import catalog
from bihom3.algebra import Algebra3BH
from bihom3.linalg import Matrix, Subspace
from bihom3.scalars import Field
from bihom3.search import GenerationRefused, generate_random_algebra

# dense oracle


def dense(A: Algebra3BH):
    n = A.dim
    T = np.empty((n, n, n, n), dtype=object)
    T[...] = Fraction(0)
    for key, vec in A.bracket.items():
        T[key] = np.array(vec, dtype=object)
    return T


def mat(m: Matrix):
    return np.array([list(r) for r in m.rows], dtype=object)


def obracket(T, x, y, z):
    t = np.tensordot(x, T, axes=1)
    t = np.tensordot(y, t, axes=1)
    return np.tensordot(z, t, axes=1)


def oracle_axiom_failures(A: Algebra3BH) -> dict[str, int]:
    """Failure counts per axiom, computed from first principles."""
    n = A.dim
    T = dense(A)
    a, b = mat(A.alpha), mat(A.beta)
    e = [np.array([Fraction(int(i == j)) for j in range(n)], dtype=object) for i in range(n)]
    f = dict.fromkeys(("alpha_beta_commute", "alpha_multiplicative", "beta_multiplicative", "bihom_skewsymmetry", "bihom_jacobi"), 0)
    f["alpha_beta_commute"] = int((a.dot(b) != b.dot(a)).any())
    for x, y, z in itertools.product(range(n), repeat=3):
        X, Y, Z = e[x], e[y], e[z]
        v = obracket(T, X, Y, Z)
        f["alpha_multiplicative"] += int((a.dot(v) != obracket(T, a.dot(X), a.dot(Y), a.dot(Z))).any())
        f["beta_multiplicative"] += int((b.dot(v) != obracket(T, b.dot(X), b.dot(Y), b.dot(Z))).any())
        lhs = obracket(T, b.dot(X), b.dot(Y), a.dot(Z))
        bad = (lhs != -obracket(T, b.dot(Y), b.dot(X), a.dot(Z))).any() or (
            lhs != -obracket(T, b.dot(X), b.dot(Z), a.dot(Y))
        ).any()
        f["bihom_skewsymmetry"] += int(bad)
    b2 = b.dot(b)
    inner = {
        (p, q, r): obracket(T, b.dot(e[p]), b.dot(e[q]), a.dot(e[r])) for p, q, r in itertools.product(range(n), repeat=3)
    }
    # outer[u, v] contracted with w gives [b2 e_u, b2 e_v, w]
    outer = {
        (u, v): np.tensordot(b2.dot(e[v]), np.tensordot(b2.dot(e[u]), T, axes=1), axes=1)
        for u, v in itertools.product(range(n), repeat=2)
    }

    def ob(u, v, w):
        return np.tensordot(w, outer[u, v], axes=1)

    for u, v, x, y, z in itertools.product(range(n), repeat=5):
        lhs = ob(u, v, inner[x, y, z])
        rhs = ob(y, z, inner[u, v, x]) - ob(x, z, inner[u, v, y]) + ob(x, y, inner[u, v, z])
        f["bihom_jacobi"] += int((lhs != rhs).any())
    return f


def oracle_product_identity(A: Algebra3BH, E: Matrix) -> bool:
    T, Em = dense(A), mat(E)
    n = A.dim
    e = np.eye(n, dtype=object)
    for x, y, z in itertools.product(range(n), repeat=3):
        X, Y, Z = e[x], e[y], e[z]
        EX, EY, EZ = Em.dot(X), Em.dot(Y), Em.dot(Z)
        lhs = Em.dot(obracket(T, X, Y, Z))
        rhs = (
            obracket(T, EX, EY, EZ) + obracket(T, EX, Y, Z) + obracket(T, X, EY, Z) + obracket(T, X, Y, EZ)
            - Em.dot(obracket(T, EX, EY, Z) + obracket(T, X, EY, EZ) + obracket(T, EX, Y, EZ))
        )  # fmt: skip
        if (lhs != rhs).any():
            return False
    return True


def oracle_subalgebra(A: Algebra3BH, S: Subspace) -> bool:
    """Invariance and closure via sympy rank comparisons."""
    import sympy

    basis = [list(v) for v in S.basis]
    if not basis:
        return True
    B = sympy.Matrix(basis)
    r = B.rank()
    T = dense(A)

    def inside(v):
        return sympy.Matrix(basis + [list(v)]).rank() == r

    vecs = [np.array(v, dtype=object) for v in S.basis]
    a, b = mat(A.alpha), mat(A.beta)
    for v in vecs:
        if not inside(a.dot(v)) or not inside(b.dot(v)):
            return False
    return all(inside(obracket(T, x, y, z)) for x, y, z in itertools.product(vecs, repeat=3))


# constructions


def singular_variant(A: Algebra3BH) -> Algebra3BH:
    """Same bracket with alpha = 0 and beta = Id; every axiom then holds trivially."""
    n = A.dim
    return Algebra3BH(f"{A.name}_sing", n, A.field, A.bracket, Matrix.zeros(n, n, A.field), Matrix.identity(n, A.field))


def direct_sum(A: Algebra3BH, B: Algebra3BH) -> Algebra3BH:
    n, m = A.dim, B.dim
    br = {}
    for k, v in A.bracket.items():
        br[k] = list(v) + [0] * m
    for (i, j, k), v in B.bracket.items():
        br[(i + n, j + n, k + n)] = [0] * n + list(v)

    def block(P, Q):
        rows = [list(r) + [0] * m for r in P.rows] + [[0] * n + list(r) for r in Q.rows]
        return Matrix(rows)

    return Algebra3BH(f"{A.name}+{B.name}", n + m, Field.RATIONAL, br, block(A.alpha, B.alpha), block(A.beta, B.beta))


def realify(A: Algebra3BH) -> tuple[Algebra3BH, Matrix]:
    """The complexification of ``A`` viewed as a real algebra of twice the dimension.

    Coordinates are (x, y) for x + iy.  Multiplication by i is then a strict
    complex structure.
    """
    n = A.dim
    br: dict = {}

    def add(key, vec):
        cur = br.setdefault(key, [Fraction(0)] * (2 * n))
        for l, c in enumerate(vec):
            cur[l] += c

    for (i, j, k), v in A.bracket.items():
        # expand [x1 + i y1, x2 + i y2, x3 + i y3] on basis parts
        for parts in itertools.product((0, 1), repeat=3):
            k_imag = sum(parts)
            unit = [1, 0, -1, 0][k_imag % 4], [0, 1, 0, -1][k_imag % 4]
            key = (i + n * parts[0], j + n * parts[1], k + n * parts[2])
            vec = [unit[0] * c for c in v] + [unit[1] * c for c in v]
            add(key, vec)

    def dbl(P):
        return Matrix([list(r) + [0] * n for r in P.rows] + [[0] * n + list(r) for r in P.rows])

    R = Algebra3BH(f"{A.name}_R", 2 * n, Field.RATIONAL, br, dbl(A.alpha), dbl(A.beta))
    J = Matrix([[0] * n + [-int(i == j) for j in range(n)] for i in range(n)] + [[int(i == j) for j in range(n)] + [0] * n for i in range(n)])
    return R, J


def joint_eigenblocks(A: Algebra3BH) -> list[list[int]]:
    """Index groups sharing the same (alpha, beta) diagonal entries; twists must be diagonal."""
    groups: dict = {}
    for i in range(A.dim):
        groups.setdefault((A.alpha[i, i], A.beta[i, i]), []).append(i)
    return list(groups.values())


def is_diagonal(m: Matrix) -> bool:
    return all(not m[i, j] for i in range(m.nrows) for j in range(m.ncols) if i != j)


def random_invertible(rng: random.Random, k: int) -> list[list[int]]:
    while True:
        M = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(k)]
        if Matrix(M).is_invertible():
            return M


def random_splitting(A: Algebra3BH, rng: random.Random) -> tuple[Subspace, Subspace] | None:
    """Random complementary pair of twist-invariant subspaces, both nonzero."""
    plus, minus = [], []
    for block in joint_eigenblocks(A):
        k = len(block)
        B = random_invertible(rng, k)
        cut = rng.randint(0, k)
        for c in range(k):
            v = [0] * A.dim
            for r, idx in enumerate(block):
                v[idx] = B[r][c]
            (plus if c < cut else minus).append(v)
    if not plus or not minus:
        return None
    return Subspace(A.dim, plus), Subspace(A.dim, minus)


def random_anti_involution(A: Algebra3BH, rng: random.Random) -> Matrix | None:
    """Random J with J^2 = -Id commuting with diagonal twists, or None if a block is odd."""
    n = A.dim
    J = [[0] * n for _ in range(n)]
    for block in joint_eigenblocks(A):
        if len(block) % 2:
            return None
        k = len(block)
        B = Matrix(random_invertible(rng, k))
        J0 = Matrix([[0] * (k // 2) + [-int(i == j) for j in range(k // 2)] for i in range(k // 2)] + [[int(i == j) for j in range(k // 2)] + [0] * (k // 2) for i in range(k // 2)])
        Jb = B @ J0 @ B.inverse()
        for r, ri in enumerate(block):
            for c, ci in enumerate(block):
                J[ri][ci] = Jb[r, c]
    return Matrix(J)


def random_algebra(seed: int, dim: int | None = None, sparsity: int | None = None) -> Algebra3BH:
    rng = random.Random(seed)
    dim = dim or rng.randint(3, 5)
    sparsity = rng.randint(1, 3) if sparsity is None else sparsity
    try:
        return generate_random_algebra(dim, sparsity, (-2, 2), seed, max_attempts=60)
    except GenerationRefused:
        return generate_random_algebra(dim, 0, (-2, 2), seed)


VALID_FIXTURES = ("ex_3_18", "ex_3_19_bihom", "ex_4_22", "abelian_2", "abelian_3", "abelian_4")


def fixture_algebras() -> list[Algebra3BH]:
    return [catalog.BUILDERS[name]() for name in VALID_FIXTURES]


# every structure the searches and constructions above can reach, for the implication suites


def discovered_structures() -> list[tuple[str, Algebra3BH, str, Matrix]]:
    """(label, algebra, kind, operator) over regular and singular algebras.

    Products come from the diagonal and bounded searches, complex structures
    from the bounded search, realifications and random anti-involutions.
    Almost structures that fail the main identity are kept too, so the
    refinement implications are tested on operators that could break them.
    """
    from bihom3.search import SearchConfig, SearchMode, search_complex, search_product

    bounded = SearchConfig(SearchMode.BOUNDED_INTEGER, bound=1)
    rng = random.Random(2024)
    out = []
    strict_sum = direct_sum(catalog.example_3_18(), catalog.abelian(1))
    bases = fixture_algebras() + [random_algebra(s) for s in range(8)] + [strict_sum]
    for A in bases + [singular_variant(B) for B in bases]:
        out += [(A.name, A, "product", E) for E, _ in search_product(A)]
        for _ in range(4):
            split = random_splitting(A, rng)
            if split is not None:
                P = Matrix.from_columns(list(split[0].basis) + list(split[1].basis))
                E = P @ Matrix.diag([1] * split[0].dim + [-1] * split[1].dim) @ P.inverse()
                out.append((A.name + "_split", A, "product", E))
    for A in (catalog.example_3_18(), catalog.example_4_22()):
        out += [(A.name + "_box", A, "product", E) for E, _ in search_product(A, bounded)]
    B = catalog.example_4_22()
    Js = [J for J, _ in search_complex(B, bounded)]
    # the singular variant commutes with every matrix, so reuse the regular search
    out += [(A.name, A, "complex", J) for A in (B, singular_variant(B)) for J in Js]
    out += [("abelian_2", catalog.abelian(2), "complex", J) for J, _ in search_complex(catalog.abelian(2), bounded)]
    for base in (catalog.example_3_18(), random_algebra(3, dim=3), random_algebra(8, dim=3)):
        R, J = realify(base)
        for A in (R, singular_variant(R)):
            out.append((A.name, A, "complex", J))
            for _ in range(3):
                K = random_anti_involution(A, rng)
                if K is not None:
                    out.append((A.name + "_rand", A, "complex", K))
    return out
