"""Built-in algebras and operators.

The worked examples are shipped both as Python builders (used by the tests)
and as JSON documents under ``bihom3/fixtures`` (used by the CLI).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from importlib import resources
from typing import Mapping, Sequence

from .algebra import Algebra3BH
from .linalg import Matrix
from .scalars import Field

__all__ = [
    "FIXTURE_NAMES",
    "abelian",
    "bihom_orbit",
    "example_3_18",
    "example_3_19",
    "example_3_19_bihom",
    "example_4_22",
    "fixture_path",
    "load_fixture",
    "perm_sign",
    "total_skew_completion",
]

SKEW_COMPLETION_NOTE = (
    "brackets completed by total skew-symmetry from the four listed generators "
    "[e1,e2,e3]=e4, [e2,e3,e4]=e1, [e1,e3,e4]=e2, [e1,e2,e4]=e3"
)
BIHOM_COMPLETION_NOTE = (
    "alternative completion: the four listed generators kept verbatim, remaining "
    "permutations filled by the sign rule forced by Bihom-skewsymmetry"
)


def perm_sign(p: Sequence[int]) -> int:
    s = 1
    for a, b in itertools.combinations(range(len(p)), 2):
        if p[a] > p[b]:
            s = -s
    return s


def _unit(n: int, i: int, c=1) -> list:
    v = [0] * n
    v[i] = c
    return v


def total_skew_completion(n: int, generators: Mapping[tuple[int, int, int], Sequence]) -> dict:
    """Fill all permutations of each generator triple with the permutation sign."""
    out: dict = {}
    for key, vec in generators.items():
        for p in itertools.permutations(range(3)):
            s = perm_sign(p)
            out[tuple(key[q] for q in p)] = [s * Fraction(x) for x in vec]
    return out


def bihom_orbit(key: tuple[int, int, int], vec: Sequence, alpha_diag: Sequence, beta_diag: Sequence) -> dict:
    """The six brackets determined by one generator under Bihom-skewsymmetry.

    For diagonal twists with ``r_l = alpha_l / beta_l`` the skewsymmetry
    conditions force ``[e_p] = sgn(p) * r_k / r_last(p) * [e_i, e_j, e_k]``
    for every permutation ``p`` of ``(i, j, k)``.  The indices must be
    distinct.
    """
    i, j, k = key
    if len({i, j, k}) != 3:
        raise ValueError("generator indices must be distinct")
    r = [Fraction(a) / Fraction(b) for a, b in zip(alpha_diag, beta_diag)]
    out = {}
    for p in itertools.permutations(range(3)):
        t = tuple(key[q] for q in p)
        f = perm_sign(p) * r[k] / r[t[2]]
        out[t] = [f * Fraction(x) for x in vec]
    return out


def example_3_18() -> Algebra3BH:
    n = 3
    e2 = _unit(n, 1)
    m2 = _unit(n, 1, -1)
    bracket = {
        (0, 1, 2): e2, (0, 2, 1): e2, (1, 2, 0): e2,
        (1, 0, 2): m2, (2, 0, 1): m2, (2, 1, 0): m2,
    }  # fmt: skip
    return Algebra3BH("ex_3_18", n, Field.RATIONAL, bracket, Matrix.identity(n), Matrix.diag([-1, 1, -1]))


_EX319_GENERATORS = {
    (0, 1, 2): _unit(4, 3),
    (1, 2, 3): _unit(4, 0),
    (0, 2, 3): _unit(4, 1),
    (0, 1, 3): _unit(4, 2),
}
_EX319_ALPHA = [-1, 1, 1, -1]
_EX319_BETA = [-1, -1, 1, 1]


def example_3_19() -> Algebra3BH:
    """The 4-dimensional example completed by total skew-symmetry."""
    return Algebra3BH(
        "ex_3_19",
        4,
        Field.RATIONAL,
        total_skew_completion(4, _EX319_GENERATORS),
        Matrix.diag(_EX319_ALPHA),
        Matrix.diag(_EX319_BETA),
        notes=(SKEW_COMPLETION_NOTE,),
    )


def example_3_19_bihom() -> Algebra3BH:
    """Same generators and twists, completed by the Bihom sign rule instead."""
    bracket: dict = {}
    for key, vec in _EX319_GENERATORS.items():
        bracket.update(bihom_orbit(key, vec, _EX319_ALPHA, _EX319_BETA))
    return Algebra3BH(
        "ex_3_19_bihom",
        4,
        Field.RATIONAL,
        bracket,
        Matrix.diag(_EX319_ALPHA),
        Matrix.diag(_EX319_BETA),
        notes=(BIHOM_COMPLETION_NOTE,),
    )


def example_4_22() -> Algebra3BH:
    n = 4
    rows = [
        # (value basis index, coefficient, triples) with 1-based triples as printed
        (3, 1, [(1, 2, 3), (1, 3, 2), (2, 3, 1)]),
        (3, -1, [(2, 1, 3), (3, 1, 2), (3, 2, 1)]),
        (2, 1, [(1, 4, 2), (2, 1, 4), (2, 4, 1)]),
        (2, -1, [(1, 2, 4), (4, 1, 2), (4, 2, 1)]),
        (1, 1, [(3, 1, 4), (3, 4, 1), (4, 1, 3)]),
        (1, -1, [(1, 3, 4), (1, 4, 3), (4, 3, 1)]),
        (0, 1, [(3, 2, 4), (4, 2, 3), (4, 3, 2)]),
        (0, -1, [(2, 3, 4), (2, 4, 3), (3, 4, 2)]),
    ]
    bracket = {}
    for target, coeff, triples in rows:
        for t in triples:
            bracket[tuple(x - 1 for x in t)] = _unit(n, target, coeff)
    return Algebra3BH("ex_4_22", n, Field.RATIONAL, bracket, Matrix.diag([1, -1, 1, -1]), Matrix.identity(n))


def abelian(n: int, alpha=None, beta=None, field: Field = Field.RATIONAL) -> Algebra3BH:
    alpha = Matrix.identity(n, field) if alpha is None else alpha
    beta = Matrix.identity(n, field) if beta is None else beta
    return Algebra3BH(f"abelian_{n}", n, field, {}, alpha, beta)


# named operators from the worked examples

EX_3_18_OPERATORS = {
    "E_-1_1_-1": Matrix.diag([-1, 1, -1]),
    "E_-1_1_1": Matrix.diag([-1, 1, 1]),
    "E_1_1_-1": Matrix.diag([1, 1, -1]),
}

EX_3_19_OPERATORS = {
    "E_-1_-1_1_1": Matrix.diag([-1, -1, 1, 1]),
    "E_-1_1_1_-1": Matrix.diag([-1, 1, 1, -1]),
    "E_-1_1_-1_1": Matrix.diag([-1, 1, -1, 1]),
}

EX_4_22_J = {
    "J1": Matrix([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]),
    "J2": Matrix([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]),
    "J3": Matrix([[1, 0, 1, 0], [0, 1, 0, 1], [-2, 0, -1, 0], [0, -2, 0, -1]]),
    "J4": Matrix([[1, 0, -1, 0], [0, -1, 0, 2], [2, 0, -1, 0], [0, -1, 0, 1]]),
    "J5": Matrix([[-1, 0, -1, 0], [0, 1, 0, 2], [2, 0, 1, 0], [0, -1, 0, -1]]),
}

EX_4_22_E = {
    "E1": Matrix.diag([1, 1, -1, -1]),
    "E2": Matrix.diag([1, -1, 1, -1]),
    "E3": Matrix.diag([1, -1, -1, 1]),
}

EX_4_22_PAIRS = (("J1", "E1"), ("J2", "E1"), ("J1", "E3"), ("J2", "E3"))

BUILDERS = {
    "ex_3_18": example_3_18,
    "ex_3_19": example_3_19,
    "ex_3_19_bihom": example_3_19_bihom,
    "ex_4_22": example_4_22,
    "abelian_1": lambda: abelian(1),
    "abelian_2": lambda: abelian(2),
    "abelian_3": lambda: abelian(3),
    "abelian_4": lambda: abelian(4),
}

FIXTURE_NAMES = tuple(BUILDERS)


def fixture_path(name: str):
    return resources.files("bihom3") / "fixtures" / f"{name}.json"


def load_fixture(name: str) -> Algebra3BH:
    from .documents import algebra_from_json, load_document

    with resources.as_file(fixture_path(name)) as p:
        return algebra_from_json(load_document(p))
