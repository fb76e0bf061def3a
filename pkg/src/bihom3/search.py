"""Exhaustive search for structures inside the commutant, and random algebras.

Candidates are restricted to the commutant of the twist maps first (a
linear solve), then to E^2 = Id or J^2 = -Id (by the enumeration kernel),
and only then checked against the bracket identity.  Every reported
structure is re-checked through the public classification API.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import _accel
from .algebra import Algebra3BH, PreconditionError, verify_axioms
from .catalog import abelian, bihom_orbit
from .complex_structures import ComplexClassification, try_classify_complex, is_complex_product_pair
from .linalg import DimensionMismatch, Matrix, nullspace_basis
from .product import FLAGS, ProductClassification, try_classify_product
from .scalars import Field, GaussianRational

__all__ = [
    "CommutantParametrization",
    "GenerationRefused",
    "SearchBudgetExceeded",
    "SearchConfig",
    "SearchMode",
    "commutant_basis",
    "generate_random_algebra",
    "search_complex",
    "search_pairs",
    "search_product",
]

DEFAULT_BUDGET = 5_000_000


class SearchMode(enum.Enum):
    DIAGONAL_SIGNS = "diagonal"
    BOUNDED_INTEGER = "bounded"


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"search space has {count} candidates, exceeding the budget of {budget}")
        self.count = count
        self.budget = budget


class GenerationRefused(RuntimeError):
    def __init__(self, attempts: int):
        super().__init__(f"no axiom-valid algebra found in {attempts} attempts")
        self.attempts = attempts


@dataclass(frozen=True)
class SearchConfig:
    """Search space and output controls.

    ``require`` keeps only structures whose refinement flags include all of
    the given names.  ``limit`` truncates the sorted result list; the search
    itself always runs to completion.
    """

    mode: SearchMode = SearchMode.DIAGONAL_SIGNS
    bound: int = 2
    limit: int | None = None
    budget: int = DEFAULT_BUDGET
    require: frozenset = field(default_factory=frozenset)
    trusted: bool = False
    backend: str | None = None

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("bound must be at least 1")
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be at least 1")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        unknown = set(self.require) - set(FLAGS)
        if unknown:
            raise ValueError(f"unknown refinement flags: {sorted(unknown)}")


@dataclass(frozen=True)
class CommutantParametrization:
    """Matrices commuting with alpha and beta, by their free entries.

    Positions are row-major indices into the flattened n x n matrix.  The
    entry at ``dep_pos[d]`` equals ``sum(dep_num[d][f] * free[f]) / denom``.
    """

    n: int
    free_pos: tuple[int, ...]
    dep_pos: tuple[int, ...]
    dep_num: tuple[tuple[int, ...], ...]
    denom: int
    basis: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.free_pos)

    def point(self, values) -> Matrix:
        if len(values) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} free values, got {len(values)}")
        flat = [Fraction(0)] * (self.n * self.n)
        for p, v in zip(self.free_pos, values):
            flat[p] = Fraction(v)
        for p, row in zip(self.dep_pos, self.dep_num):
            flat[p] = Fraction(sum(c * Fraction(v) for c, v in zip(row, values)), self.denom)
        return Matrix([flat[i * self.n : (i + 1) * self.n] for i in range(self.n)])

    def box_size(self, bound: int) -> int:
        return (2 * bound + 1) ** self.dim


def _rational(x) -> Fraction:
    if isinstance(x, GaussianRational):
        if x.im:
            raise ValueError("commutant has non-real coefficients; bounded search needs a real parametrization")
        return x.re
    return Fraction(x)


def commutant_basis(alpha: Matrix, beta: Matrix) -> CommutantParametrization:
    if not (alpha.is_square and beta.is_square) or alpha.shape != beta.shape:
        raise DimensionMismatch(f"twist maps must be square of equal size, got {alpha.shape} and {beta.shape}")
    n = alpha.nrows
    rows = []
    for t in (alpha, beta):
        for i, j in itertools.product(range(n), repeat=2):
            r = [0] * (n * n)
            for k in range(n):
                r[i * n + k] += t[k, j]
                r[k * n + j] -= t[i, k]
            rows.append(r)
    free, vecs = nullspace_basis(Matrix(rows))
    coeffs = [[_rational(x) for x in v] for v in vecs]
    denom = 1
    for v in coeffs:
        for x in v:
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
    fset = set(free)
    dep = [p for p in range(n * n) if p not in fset]
    dep_num = tuple(tuple(int(coeffs[f][p] * denom) for f in range(len(free))) for p in dep)
    basis = tuple(Matrix([v[i * n : (i + 1) * n] for i in range(n)]) for v in vecs)
    return CommutantParametrization(n, tuple(free), tuple(dep), dep_num, denom, basis)


def _require_valid(A: Algebra3BH, cfg: SearchConfig):
    if not cfg.trusted:
        report = verify_axioms(A)
        if not report.ok:
            failed = [k for k, v in report.verdicts.items() if not v]
            raise PreconditionError(f"algebra fails axioms: {', '.join(failed)}")


def _check_budget(count: int, cfg: SearchConfig):
    if count > cfg.budget:
        raise SearchBudgetExceeded(count, cfg.budget)


def _box_candidates(A: Algebra3BH, cfg: SearchConfig, sign: int) -> list[Matrix]:
    par = commutant_basis(A.alpha, A.beta)
    _check_budget(par.box_size(cfg.bound), cfg)
    flats = _accel.box_square_search(
        par.n, cfg.bound, list(par.free_pos), list(par.dep_pos), [list(r) for r in par.dep_num], par.denom, sign,
        backend=cfg.backend,
    )  # fmt: skip
    n = par.n
    return [Matrix([f[i * n : (i + 1) * n] for i in range(n)]) for f in flats]


def _finish(results: list, cfg: SearchConfig) -> list:
    results = [r for r in results if all(r[1].flags.get(f) for f in cfg.require)]
    results.sort(key=lambda r: r[0].sort_key())
    return results[: cfg.limit] if cfg.limit else results


def _product_candidates(A: Algebra3BH, cfg: SearchConfig) -> list[Matrix]:
    n = A.dim
    if cfg.mode is SearchMode.DIAGONAL_SIGNS:
        _check_budget(2**n, cfg)
        out = []
        for signs in itertools.product((1, -1), repeat=n):
            if len(set(signs)) < 2:
                continue
            E = Matrix.diag(signs, A.field)
            if E.commutes_with(A.alpha) and E.commutes_with(A.beta):
                out.append(E)
        return out
    return [E for E in _box_candidates(A, cfg, 1) if not (E.is_identity() or (-E).is_identity())]


def search_product(A: Algebra3BH, cfg: SearchConfig = SearchConfig()) -> list[tuple[Matrix, ProductClassification]]:
    """All product structures in the configured candidate space, sorted by entries."""
    _require_valid(A, cfg)
    results = []
    for E in _product_candidates(A, cfg):
        E = A.check_operator(E, "E")
        cls = try_classify_product(A, E)
        if cls.is_product:
            results.append((E, cls))
    return _finish(results, cfg)


def search_complex(A: Algebra3BH, cfg: SearchConfig = SearchConfig()) -> list[tuple[Matrix, ComplexClassification]]:
    """All complex structures with integer entries in [-bound, bound] in the commutant.

    A real J with J^2 = -Id cannot be diagonal, so this search always uses
    the bounded integer box regardless of ``cfg.mode``.
    """
    if A.field is not Field.RATIONAL:
        raise PreconditionError("complex structure search needs an algebra over Q")
    _require_valid(A, cfg)
    results = []
    if A.dim % 2 == 0:
        for J in _box_candidates(A, cfg, -1):
            J = A.check_operator(J, "J")
            cls = try_classify_complex(A, J)
            if cls.is_complex:
                results.append((J, cls))
    return _finish(results, cfg)


def search_pairs(A: Algebra3BH, cfg: SearchConfig = SearchConfig()) -> list[tuple[Matrix, Matrix]]:
    """Complex product pairs: J from the integer box, E from the configured mode."""
    _require_valid(A, cfg)
    inner = SearchConfig(cfg.mode, cfg.bound, None, cfg.budget, frozenset(), True, cfg.backend)
    Js = [J for J, _ in search_complex(A, inner)]
    Es = [E for E, _ in search_product(A, inner)]
    pairs = []
    for J, E in itertools.product(Js, Es):
        if J @ E == -(E @ J) and is_complex_product_pair(A, J, E):
            pairs.append((J, E))
    pairs.sort(key=lambda p: (p[0].sort_key(), p[1].sort_key()))
    return pairs[: cfg.limit] if cfg.limit else pairs


def _random_draw(rng: random.Random, dim: int, sparsity: int, coeff_range: tuple[int, int]):
    alpha = [rng.choice((1, -1)) for _ in range(dim)]
    beta = [rng.choice((1, -1)) for _ in range(dim)]
    coeffs = [c for c in range(coeff_range[0], coeff_range[1] + 1) if c]
    bracket: dict = {}
    for _ in range(sparsity):
        if dim < 3 or not coeffs:
            return None
        key = tuple(rng.sample(range(dim), 3))
        a = alpha[key[0]] * alpha[key[1]] * alpha[key[2]]
        b = beta[key[0]] * beta[key[1]] * beta[key[2]]
        targets = [m for m in range(dim) if alpha[m] == a and beta[m] == b]
        if not targets:
            return None
        vec = [0] * dim
        vec[rng.choice(targets)] = rng.choice(coeffs)
        for t, v in bihom_orbit(key, vec, alpha, beta).items():
            old = bracket.get(t, [0] * dim)
            bracket[t] = [x + y for x, y in zip(old, v)]
    return alpha, beta, bracket


def generate_random_algebra(
    dim: int,
    sparsity: int = 1,
    coeff_range: tuple[int, int] = (-2, 2),
    seed: int | None = 0,
    max_attempts: int = 200,
    fallback: bool = False,
) -> Algebra3BH:
    """Draw a random algebra with diagonal +-1 twists and ``sparsity`` bracket orbits.

    Each orbit picks a distinct index triple and a target basis vector whose
    twist eigenvalues make the bracket multiplicative, then fills the six
    permutations by the skewsymmetry sign rule.  Draws are rejected until
    :func:`verify_axioms` accepts one.  Raises :class:`GenerationRefused`
    after ``max_attempts`` unless ``fallback`` asks for an abelian algebra.
    """
    if not 1 <= dim <= 6:
        raise ValueError("dimension must be between 1 and 6")
    if sparsity < 0:
        raise ValueError("sparsity must be non-negative")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        draw = _random_draw(rng, dim, sparsity, coeff_range)
        if draw is None:
            continue
        alpha, beta, bracket = draw
        A = Algebra3BH(f"random_d{dim}_s{seed}", dim, Field.RATIONAL, bracket, Matrix.diag(alpha), Matrix.diag(beta))
        if verify_axioms(A).ok:
            return A
    if fallback:
        alpha = [rng.choice((1, -1)) for _ in range(dim)]
        beta = [rng.choice((1, -1)) for _ in range(dim)]
        return abelian(dim, Matrix.diag(alpha), Matrix.diag(beta))
    raise GenerationRefused(max_attempts)
