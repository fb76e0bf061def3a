"""3-Bihom-Lie algebras given by structure constants.

An :class:`Algebra3BH` stores a sparse trilinear bracket on basis triples
together with the twist maps ``alpha`` and ``beta``.  No symmetry is imposed
on the stored triples; :func:`verify_axioms` decides whether the data
actually satisfies the axioms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence

from . import _accel
from .linalg import DimensionMismatch, Matrix, Subspace, vec_add, vec_sub
from .scalars import Field, GaussianRational, format_scalar

__all__ = [
    "AXIOMS",
    "Algebra3BH",
    "AxiomReport",
    "FieldMismatch",
    "IdentityResult",
    "OperatorBrackets",
    "PreconditionError",
    "Witness",
    "is_abelian_subspace",
    "is_ideal",
    "is_nijenhuis",
    "is_regular",
    "is_subalgebra",
    "subalgebra_failure",
    "verify_axioms",
]

AXIOMS = (
    "alpha_beta_commute",
    "alpha_multiplicative",
    "beta_multiplicative",
    "bihom_skewsymmetry",
    "bihom_jacobi",
)

_ZERO = Fraction(0)


class FieldMismatch(ValueError):
    pass


class PreconditionError(ValueError):
    """A structure query was made on an input that fails its precondition."""


def basis_name(i: int) -> str:
    return f"e{i + 1}"


@dataclass(frozen=True)
class Witness:
    """A basis tuple on which an identity fails, with both sides."""

    indices: tuple[int, ...]
    lhs: tuple
    rhs: tuple
    label: str = ""

    def describe(self) -> str:
        args = ", ".join(basis_name(i) for i in self.indices)
        lhs = _format_vector(self.lhs)
        rhs = _format_vector(self.rhs)
        tag = f"{self.label}: " if self.label else ""
        return f"{tag}({args}) gives {lhs} != {rhs}"

    def to_json(self) -> dict:
        d = {
            "indices": list(self.indices),
            "lhs": [format_scalar(x) for x in self.lhs],
            "rhs": [format_scalar(x) for x in self.rhs],
        }
        if self.label:
            d["label"] = self.label
        return d


def _format_vector(v: Sequence) -> str:
    terms = []
    for i, c in enumerate(v):
        if not c:
            continue
        s = format_scalar(c)
        if s == "1":
            terms.append(basis_name(i))
        elif s == "-1":
            terms.append(f"-{basis_name(i)}")
        elif isinstance(c, GaussianRational) and c.im and c.re:
            terms.append(f"({s}){basis_name(i)}")
        else:
            terms.append(f"{s}{basis_name(i)}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


@dataclass(frozen=True)
class IdentityResult:
    """Outcome of checking one identity over all basis tuples."""

    holds: bool
    failures: int = 0
    witness: Witness | None = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        d: dict = {"holds": self.holds, "failures": self.failures}
        if self.witness is not None:
            d["witness"] = self.witness.to_json()
        return d


class Algebra3BH:
    """Finite-dimensional 3-Bihom-Lie algebra data (not necessarily valid).

    ``bracket`` maps ordered index triples ``(i, j, k)`` to coefficient
    vectors of length ``dim``.  Missing triples are zero.
    """

    __slots__ = ("name", "dim", "field", "bracket", "alpha", "beta", "notes", "_terms")

    def __init__(
        self,
        name: str,
        dim: int,
        field: Field,
        bracket: Mapping[tuple[int, int, int], Sequence],
        alpha: Matrix | Sequence[Sequence],
        beta: Matrix | Sequence[Sequence],
        notes: Iterable[str] = (),
    ):
        if not isinstance(dim, int) or dim < 1:
            raise ValueError(f"dimension must be a positive integer, got {dim!r}")
        self.name = name
        self.dim = dim
        self.field = field
        clean = {}
        for key, vec in bracket.items():
            key = tuple(key)
            if len(key) != 3 or not all(isinstance(i, int) and 0 <= i < dim for i in key):
                raise IndexError(f"bracket key {key!r} out of range for dimension {dim}")
            if len(vec) != dim:
                raise DimensionMismatch(f"bracket value for {key} has length {len(vec)}, expected {dim}")
            vec = tuple(self._coerce(x) for x in vec)
            if any(vec):
                clean[key] = vec
        self.bracket = MappingProxyType(dict(sorted(clean.items())))
        self.alpha = self._coerce_matrix(alpha, "alpha")
        self.beta = self._coerce_matrix(beta, "beta")
        self.notes = tuple(notes)
        # (i, j, k, ((l, c), ...)) for fast trilinear evaluation
        self._terms = tuple(
            (i, j, k, tuple((l, c) for l, c in enumerate(v) if c)) for (i, j, k), v in self.bracket.items()
        )

    def _coerce(self, x):
        try:
            return self.field.coerce(x)
        except (TypeError, ValueError) as exc:
            raise FieldMismatch(str(exc)) from None

    def _coerce_matrix(self, m, label: str) -> Matrix:
        if not isinstance(m, Matrix):
            m = Matrix(m)
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"{label} has shape {m.shape}, expected {(self.dim, self.dim)}")
        try:
            return m.coerce(self.field)
        except (TypeError, ValueError) as exc:
            raise FieldMismatch(f"{label}: {exc}") from None

    # helpers

    def check_vector(self, v: Sequence) -> tuple:
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} for algebra of dimension {self.dim}")
        return tuple(self._coerce(x) for x in v)

    def check_operator(self, m: Matrix | Sequence[Sequence], label: str = "operator") -> Matrix:
        return self._coerce_matrix(m, label)

    def basis_vector(self, i: int) -> tuple:
        z, o = self.field.zero, self.field.one
        return tuple(o if j == i else z for j in range(self.dim))

    def identity(self) -> Matrix:
        return Matrix.identity(self.dim, self.field)

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dim

    @property
    def is_abelian(self) -> bool:
        return not self.bracket

    def bracket_eval(self, x: Sequence, y: Sequence, z: Sequence) -> tuple:
        """Trilinear extension of the stored bracket."""
        n = self.dim
        if len(x) != n or len(y) != n or len(z) != n:
            raise DimensionMismatch(f"bracket arguments must have length {n}")
        acc = [_ZERO] * n
        for i, j, k, vals in self._terms:
            c = x[i]
            if not c:
                continue
            c = c * y[j]
            if not c:
                continue
            c = c * z[k]
            if not c:
                continue
            for l, v in vals:
                acc[l] += c * v
        return tuple(acc)

    def with_bracket(self, bracket: Mapping, name: str | None = None, notes: Iterable[str] | None = None):
        return Algebra3BH(
            name if name is not None else self.name,
            self.dim,
            self.field,
            bracket,
            self.alpha,
            self.beta,
            self.notes if notes is None else notes,
        )

    def same_structure(self, other: Algebra3BH) -> bool:
        """Equality of dimension, bracket tensor and twist maps (names ignored)."""
        return (
            self.dim == other.dim
            and dict(self.bracket) == dict(other.bracket)
            and self.alpha == other.alpha
            and self.beta == other.beta
        )

    def __repr__(self):
        return f"Algebra3BH({self.name!r}, dim={self.dim}, field={self.field.value}, {len(self.bracket)} brackets)"


class OperatorBrackets:
    """Memoized brackets of basis vectors and their images under ``m``.

    ``get(fa, fb, fc, a, b, c)`` is ``[m^fa e_a, m^fb e_b, m^fc e_c]`` with
    each exponent in {0, 1}.  Every structure identity below is a linear
    combination of these eight families, so one classification pass reuses
    them across all identities.
    """

    def __init__(self, algebra: Algebra3BH, m: Matrix):
        self.algebra = algebra
        self.m = m
        n = algebra.dim
        self._images = ([algebra.basis_vector(i) for i in range(n)], m.columns())
        self._cache: dict = {}

    def get(self, fa: int, fb: int, fc: int, a: int, b: int, c: int) -> tuple:
        key = (fa, fb, fc, a, b, c)
        v = self._cache.get(key)
        if v is None:
            im = self._images
            v = self.algebra.bracket_eval(im[fa][a], im[fb][b], im[fc][c])
            self._cache[key] = v
        return v

    def apply(self, v: tuple, power: int = 1) -> tuple:
        for _ in range(power):
            v = self.m @ v
        return v


def check_triples(
    n: int,
    identity: Callable[[int, int, int], tuple[tuple, tuple]],
    label: str = "",
    stop_early: bool = False,
) -> IdentityResult:
    """Evaluate ``identity`` on all ordered basis triples."""
    failures = 0
    witness = None
    for a, b, c in itertools.product(range(n), repeat=3):
        lhs, rhs = identity(a, b, c)
        if lhs != rhs:
            failures += 1
            if witness is None:
                witness = Witness((a, b, c), tuple(lhs), tuple(rhs), label)
                if stop_early:
                    break
    return IdentityResult(failures == 0, failures, witness)


@dataclass(frozen=True)
class AxiomReport:
    verdicts: Mapping[str, bool]
    failures: Mapping[str, int]
    witnesses: Mapping[str, Witness] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "axioms": {
                name: {
                    "holds": self.verdicts[name],
                    "failures": self.failures[name],
                    **({"witness": self.witnesses[name].to_json()} if name in self.witnesses else {}),
                }
                for name in AXIOMS
            },
        }


def _multiplicativity(A: Algebra3BH, m: Matrix, label: str) -> IdentityResult:
    cols = m.columns()
    n = A.dim

    def ident(a, b, c):
        return m @ A.bracket_eval(A.basis_vector(a), A.basis_vector(b), A.basis_vector(c)), A.bracket_eval(
            cols[a], cols[b], cols[c]
        )

    return check_triples(n, ident, label)


def _skewsymmetry(A: Algebra3BH) -> IdentityResult:
    # [bx, by, az] = -[by, bx, az]  and  [bx, by, az] = -[bx, bz, ay]
    bc = A.beta.columns()
    ac = A.alpha.columns()
    n = A.dim
    failures = 0
    witness = None
    for x, y, z in itertools.product(range(n), repeat=3):
        lhs = A.bracket_eval(bc[x], bc[y], ac[z])
        r1 = tuple(-t for t in A.bracket_eval(bc[y], bc[x], ac[z]))
        r2 = tuple(-t for t in A.bracket_eval(bc[x], bc[z], ac[y]))
        bad = None
        if lhs != r1:
            bad = Witness((x, y, z), lhs, r1, "[b(x),b(y),a(z)] = -[b(y),b(x),a(z)]")
        if lhs != r2:
            bad = bad or Witness((x, y, z), lhs, r2, "[b(x),b(y),a(z)] = -[b(x),b(z),a(y)]")
        if bad is not None:
            failures += 1
            if witness is None:
                witness = bad
    return IdentityResult(failures == 0, failures, witness)


def jacobi_tables(A: Algebra3BH):
    """Tables for the 3-BiHom-Jacobi check.

    ``outer[u][v]`` is the matrix of ``w -> [b^2 e_u, b^2 e_v, w]`` (rows
    are output coordinates) and ``inner[x][y][z] = [b e_x, b e_y, a e_z]``.
    """
    n = A.dim
    b2 = A.beta @ A.beta
    b2c = b2.columns()
    bc = A.beta.columns()
    ac = A.alpha.columns()
    basis = [A.basis_vector(i) for i in range(n)]
    outer = []
    for u in range(n):
        row = []
        for v in range(n):
            cols = [A.bracket_eval(b2c[u], b2c[v], basis[w]) for w in range(n)]
            row.append([list(r) for r in zip(*cols)])
        outer.append(row)
    inner = [[[list(A.bracket_eval(bc[x], bc[y], ac[z])) for z in range(n)] for y in range(n)] for x in range(n)]
    return outer, inner


def _jacobi_sides(outer, inner, u, v, x, y, z):
    def mv(m, w):
        return tuple(sum((p * q for p, q in zip(r, w) if p and q), _ZERO) for r in m)

    lhs = mv(outer[u][v], inner[x][y][z])
    rhs = vec_add(
        vec_sub(mv(outer[y][z], inner[u][v][x]), mv(outer[x][z], inner[u][v][y])),
        mv(outer[x][y], inner[u][v][z]),
    )
    return lhs, rhs


def _jacobi(A: Algebra3BH) -> IdentityResult:
    outer, inner = jacobi_tables(A)
    count, first = _accel.jacobi_scan(outer, inner, A.dim)
    if count == 0:
        return IdentityResult(True)
    lhs, rhs = _jacobi_sides(outer, inner, *first)
    return IdentityResult(False, count, Witness(tuple(first), lhs, rhs, "3-BiHom-Jacobi"))


def verify_axioms(A: Algebra3BH) -> AxiomReport:
    """Check every axiom of a 3-Bihom-Lie algebra on basis tuples."""
    verdicts: dict[str, bool] = {}
    failures: dict[str, int] = {}
    witnesses: dict[str, Witness] = {}

    ab = A.alpha @ A.beta
    ba = A.beta @ A.alpha
    bad_cols = [j for j in range(A.dim) if ab.column(j) != ba.column(j)]
    verdicts["alpha_beta_commute"] = not bad_cols
    failures["alpha_beta_commute"] = len(bad_cols)
    if bad_cols:
        j = bad_cols[0]
        witnesses["alpha_beta_commute"] = Witness((j,), ab.column(j), ba.column(j), "alpha beta = beta alpha")

    results = {
        "alpha_multiplicative": _multiplicativity(A, A.alpha, "alpha[x,y,z] = [a(x),a(y),a(z)]"),
        "beta_multiplicative": _multiplicativity(A, A.beta, "beta[x,y,z] = [b(x),b(y),b(z)]"),
        "bihom_skewsymmetry": _skewsymmetry(A),
        "bihom_jacobi": _jacobi(A),
    }
    for name, res in results.items():
        verdicts[name] = res.holds
        failures[name] = res.failures
        if res.witness is not None:
            witnesses[name] = res.witness
    return AxiomReport(verdicts, failures, witnesses)


def is_regular(A: Algebra3BH) -> bool:
    """Both twist maps invertible (multiplicativity is an axiom already)."""
    return A.alpha.is_invertible() and A.beta.is_invertible()


def _check_subspace(A: Algebra3BH, S: Subspace):
    if S.ambient != A.dim:
        raise DimensionMismatch(f"subspace lives in dimension {S.ambient}, algebra has dimension {A.dim}")


def subalgebra_failure(A: Algebra3BH, S: Subspace, ideal: bool = False) -> str | None:
    """Name the first violated subalgebra (or ideal) condition, or None."""
    _check_subspace(A, S)
    if not S.is_invariant_under(A.alpha):
        return "alpha-invariance"
    if not S.is_invariant_under(A.beta):
        return "beta-invariance"
    if ideal:
        full = [A.basis_vector(i) for i in range(A.dim)]
        triples = itertools.product(S.basis, full, full)
    else:
        triples = itertools.product(S.basis, repeat=3)
    for x, y, z in triples:
        if not S.contains(A.bracket_eval(x, y, z)):
            return "absorption" if ideal else "closure"
    return None


def is_subalgebra(A: Algebra3BH, S: Subspace) -> bool:
    return subalgebra_failure(A, S) is None


def is_ideal(A: Algebra3BH, S: Subspace) -> bool:
    return subalgebra_failure(A, S, ideal=True) is None


def is_abelian_subspace(A: Algebra3BH, S: Subspace) -> bool:
    _check_subspace(A, S)
    return all(not any(A.bracket_eval(x, y, z)) for x, y, z in itertools.product(S.basis, repeat=3))


@dataclass(frozen=True)
class NijenhuisResult:
    holds: bool
    commutes_alpha: bool
    commutes_beta: bool
    identity: IdentityResult | None

    def __bool__(self):
        return self.holds

    @property
    def witness(self) -> Witness | None:
        return self.identity.witness if self.identity is not None else None


def nijenhuis_identity(A: Algebra3BH, N: Matrix, ob: OperatorBrackets | None = None) -> IdentityResult:
    ob = ob or OperatorBrackets(A, N)
    g = ob.get

    def ident(a, b, c):
        lhs = g(1, 1, 1, a, b, c)
        once = vec_add(vec_add(g(1, 1, 0, a, b, c), g(1, 0, 1, a, b, c)), g(0, 1, 1, a, b, c))
        twice = vec_add(vec_add(g(1, 0, 0, a, b, c), g(0, 1, 0, a, b, c)), g(0, 0, 1, a, b, c))
        rhs = vec_add(vec_sub(ob.apply(once), ob.apply(twice, 2)), ob.apply(g(0, 0, 0, a, b, c), 3))
        return lhs, rhs

    return check_triples(A.dim, ident, "Nijenhuis identity")


def is_nijenhuis(A: Algebra3BH, N) -> NijenhuisResult:
    """Commutation with both twists and the Nijenhuis identity on basis triples."""
    N = A.check_operator(N, "N")
    ca = N.commutes_with(A.alpha)
    cb = N.commutes_with(A.beta)
    if not (ca and cb):
        # witness: first column where the commutator is nonzero
        m = A.alpha if not ca else A.beta
        lhs, rhs = N @ m, m @ N
        j = next(j for j in range(A.dim) if lhs.column(j) != rhs.column(j))
        label = "N alpha = alpha N" if not ca else "N beta = beta N"
        res = IdentityResult(False, 1, Witness((j,), lhs.column(j), rhs.column(j), label))
        return NijenhuisResult(False, ca, cb, res)
    ident = nijenhuis_identity(A, N)
    return NijenhuisResult(ident.holds, ca, cb, ident)
