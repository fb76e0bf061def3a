"""Complex structures, complexification and complex product pairs.

An almost complex structure J is an operator with J^2 = -Id commuting with
both twists.  On the complexified algebra its i and -i eigenspaces play the
role that the +1 and -1 eigenspaces of a product structure play, and the
containment checks of :mod:`bihom3.product` are reused with ``+`` standing
for the i-eigenspace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import (
    Algebra3BH,
    AxiomReport,
    IdentityResult,
    OperatorBrackets,
    PreconditionError,
    check_triples,
    is_regular,
    subalgebra_failure,
    verify_axioms,
)
from .linalg import Matrix, Subspace, is_direct_sum, kernel, vec_add, vec_scale, vec_sub
from .product import (
    FLAGS,
    ConstructionError,
    Containment,
    CorollaryCheck,
    Verdict,
    almost_product_failure,
    containment_profile,
    corollary_checks,
    is_product,
    pattern_key,
)
from .scalars import I, Field

__all__ = [
    "Complexification",
    "ComplexClassification",
    "Correspondence",
    "PairResult",
    "almost_complex_failure",
    "check_complex_corollaries",
    "classify_complex",
    "complex_from_Q",
    "complex_identities",
    "complexify",
    "ie_correspondence",
    "is_almost_complex",
    "is_complex",
    "is_complex_product_pair",
    "phi_isomorphism_check",
    "twisted_bracket",
]

EIGENSPACE_NOTE = "second complex summand taken as the (-i)-eigenspace of the complexified operator"


@dataclass(frozen=True)
class Complexification:
    base: Algebra3BH
    complexified: Algebra3BH
    axioms: AxiomReport

    @staticmethod
    def sigma(v) -> tuple:
        """Complex conjugation with respect to the real form."""
        return tuple(x.conjugate() for x in v)

    @staticmethod
    def sigma_subspace(S: Subspace) -> Subspace:
        return S.conjugate()

    def extend(self, m: Matrix) -> Matrix:
        return self.base.check_operator(m).coerce(Field.GAUSSIAN)


def complexify(A: Algebra3BH) -> Complexification:
    """Extend scalars of a rational algebra to Q(i) and re-check the axioms."""
    if A.field is not Field.RATIONAL:
        raise PreconditionError("only algebras over Q can be complexified")
    C = _extend_scalars(A)
    return Complexification(A, C, verify_axioms(C))


def _extend_scalars(A: Algebra3BH) -> Algebra3BH:
    G = Field.GAUSSIAN
    return Algebra3BH(f"{A.name}_C", A.dim, G, A.bracket, A.alpha.coerce(G), A.beta.coerce(G), A.notes)


def almost_complex_failure(A: Algebra3BH, J) -> str | None:
    J = A.check_operator(J, "J")
    if J @ J != -A.identity():
        return "J^2 != -Id"
    if not J.commutes_with(A.alpha):
        return "J alpha != alpha J"
    if not J.commutes_with(A.beta):
        return "J beta != beta J"
    return None


def is_almost_complex(A: Algebra3BH, J) -> bool:
    return almost_complex_failure(A, J) is None


def _require_almost(A: Algebra3BH, J) -> Matrix:
    J = A.check_operator(J, "J")
    reason = almost_complex_failure(A, J)
    if reason is not None:
        raise PreconditionError(f"not an almost complex structure: {reason}")
    return J


def _main_identity(ob: OperatorBrackets):
    g, Jv = ob.get, ob.apply

    def main(a, b, c):
        lhs = Jv(g(0, 0, 0, a, b, c))
        one = vec_add(vec_add(g(1, 0, 0, a, b, c), g(0, 1, 0, a, b, c)), g(0, 0, 1, a, b, c))
        two = vec_add(vec_add(g(1, 1, 0, a, b, c), g(0, 1, 1, a, b, c)), g(1, 0, 1, a, b, c))
        return lhs, vec_add(vec_sub(one, g(1, 1, 1, a, b, c)), Jv(two))

    return main


def complex_identities(A: Algebra3BH, J: Matrix, ob: OperatorBrackets | None = None) -> dict[str, IdentityResult]:
    """The complex-structure identity and its four refinements on basis triples."""
    ob = ob or OperatorBrackets(A, J)
    g, Jv = ob.get, ob.apply
    n = A.dim
    main = _main_identity(ob)

    def strict(a, b, c):
        return Jv(g(0, 0, 0, a, b, c)), g(1, 0, 0, a, b, c)

    def abelian(a, b, c):
        s = vec_add(vec_add(g(0, 1, 1, a, b, c), g(1, 0, 1, a, b, c)), g(1, 1, 0, a, b, c))
        return g(0, 0, 0, a, b, c), s

    def strong(a, b, c):
        s = vec_add(vec_add(g(1, 0, 0, a, b, c), g(0, 1, 0, a, b, c)), g(0, 0, 1, a, b, c))
        return g(0, 0, 0, a, b, c), tuple(-x for x in Jv(s))

    def perfect(a, b, c):
        return Jv(g(0, 0, 0, a, b, c)), tuple(-x for x in g(1, 1, 1, a, b, c))

    return {
        "complex": check_triples(n, main, "complex identity"),
        "strict": check_triples(n, strict, "J[x,y,z] = [Jx,y,z]"),
        "abelian": check_triples(n, abelian, "[x,y,z] = [x,Jy,Jz]+[Jx,y,Jz]+[Jx,Jy,z]"),
        "strong_abelian": check_triples(n, strong, "[x,y,z] = -J[Jx,y,z]-J[x,Jy,z]-J[x,y,Jz]"),
        "perfect": check_triples(n, perfect, "J[x,y,z] = -[Jx,Jy,Jz]"),
    }


def is_complex(A: Algebra3BH, J) -> IdentityResult:
    """The complex identity on all basis triples; raises if J is not almost complex."""
    J = _require_almost(A, J)
    return check_triples(A.dim, _main_identity(OperatorBrackets(A, J)), "complex identity")


def _gaussian_algebra(A: Algebra3BH) -> Algebra3BH:
    return _extend_scalars(A) if A.field is Field.RATIONAL else A


def complex_eigenspaces(A: Algebra3BH, J: Matrix) -> tuple[Subspace, Subspace]:
    """The i and -i eigenspaces of J extended to Q(i)."""
    G = Field.GAUSSIAN
    Jc = J.coerce(G)
    Id = Matrix.identity(A.dim, G)
    return kernel(Jc - Id * I), kernel(Jc + Id * I)


@dataclass(frozen=True)
class ComplexClassification:
    is_almost: bool
    is_complex: bool
    flags: Mapping[str, bool]
    eigenspaces: tuple[Subspace, Subspace] | None
    containment_profile: Mapping[tuple, Containment] = field(default_factory=dict)
    identities: Mapping[str, IdentityResult] = field(default_factory=dict)
    almost_failure: str | None = None
    notes: tuple[str, ...] = ()

    def true_flags(self) -> list[str]:
        return [f for f in FLAGS if self.flags.get(f)]

    def to_json(self) -> dict:
        d: dict = {"is_almost": self.is_almost, "is_complex": self.is_complex}
        if self.almost_failure:
            d["almost_failure"] = self.almost_failure
        d["flags"] = {f: self.flags.get(f, False) for f in FLAGS}
        if self.eigenspaces is not None:
            d["eigenspaces"] = {"i": self.eigenspaces[0].tolist(), "minus_i": self.eigenspaces[1].tolist()}
            d["containment_profile"] = {
                pattern_key(p).replace("+", "i").replace("-", "j"): c.value
                for p, c in self.containment_profile.items()
            }
            d["containment_legend"] = "i: i-eigenspace, j: (-i)-eigenspace, IN_PLUS/IN_MINUS likewise"
        if self.identities:
            d["identities"] = {k: v.to_json() for k, v in self.identities.items()}
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def classify_complex(A: Algebra3BH, J) -> ComplexClassification:
    J = _require_almost(A, J)
    ids = complex_identities(A, J)
    Li, Lmi = complex_eigenspaces(A, J)
    G = _gaussian_algebra(A)
    return ComplexClassification(
        is_almost=True,
        is_complex=ids["complex"].holds,
        flags={f: ids[f].holds for f in FLAGS},
        eigenspaces=(Li, Lmi),
        containment_profile=containment_profile(G, Li, Lmi),
        identities=ids,
        notes=(EIGENSPACE_NOTE,),
    )


def try_classify_complex(A: Algebra3BH, J) -> ComplexClassification:
    J = A.check_operator(J, "J")
    reason = almost_complex_failure(A, J)
    if reason is not None:
        return ComplexClassification(False, False, {f: False for f in FLAGS}, None, almost_failure=reason)
    return classify_complex(A, J)


def check_complex_corollaries(A: Algebra3BH, J, classification: ComplexClassification | None = None) -> list[CorollaryCheck]:
    """Containments implied by each true flag, plus conjugation symmetry of the eigenspaces.

    The strict and abelian consequences need surjective twist maps and are
    NOT-APPLICABLE otherwise.
    """
    cls = classification or classify_complex(A, J)
    regular = is_regular(A)
    out = []
    Li, Lmi = cls.eigenspaces
    out.append(
        CorollaryCheck(
            "eigenspaces are conjugate",
            Verdict.PASS if Li.conjugate() == Lmi else Verdict.FAIL,
        )
    )
    out.extend(corollary_checks(cls.containment_profile, cls.flags, cls.is_complex, regular, abelian_needs_regular=True))
    if cls.flags.get("strict") and regular:
        out.append(
            CorollaryCheck("strict implies perfect", Verdict.PASS if cls.flags.get("perfect") else Verdict.FAIL)
        )
    return out


def complex_from_Q(C: Complexification, Q: Subspace) -> Matrix:
    """The real complex structure whose i-eigenspace is ``Q``.

    ``Q`` must be a Bihom subalgebra of the complexification with
    ``Q + sigma(Q)`` a direct sum decomposition.
    """
    A = C.complexified
    if Q.ambient != A.dim:
        raise ConstructionError("subspace does not live in the algebra's dimension")
    P = Q.conjugate()
    if not is_direct_sum(Q, P):
        raise ConstructionError("Q and its conjugate do not form a direct sum decomposition")
    for label, S in (("Q", Q), ("conjugate of Q", P)):
        why = subalgebra_failure(A, S)
        if why is not None:
            raise ConstructionError(f"{label} is not a Bihom subalgebra: {why} fails")
    B = Matrix.from_columns(list(Q.basis) + list(P.basis))
    D = Matrix.diag([I] * Q.dim + [-I] * P.dim, Field.GAUSSIAN)
    Jc = B @ D @ B.inverse()
    if not Jc.is_real():
        raise ConstructionError("resulting operator is not real")
    return Jc.coerce(Field.RATIONAL)


def twisted_bracket(A: Algebra3BH, J) -> Algebra3BH:
    """The bracket ``1/4([x,y,z] - [x,Jy,Jz] - [Jx,y,Jz] - [Jx,Jy,z])`` with the same twists."""
    J = A.check_operator(J, "J")
    ob = OperatorBrackets(A, J)
    g = ob.get
    quarter = Fraction(1, 4)
    bracket = {}
    for a, b, c in itertools.product(range(A.dim), repeat=3):
        s = vec_add(vec_add(g(0, 1, 1, a, b, c), g(1, 0, 1, a, b, c)), g(1, 1, 0, a, b, c))
        v = vec_scale(quarter, vec_sub(g(0, 0, 0, a, b, c), s))
        if any(v):
            bracket[(a, b, c)] = v
    return Algebra3BH(f"{A.name}_J", A.dim, A.field, bracket, A.alpha, A.beta, A.notes)


@dataclass(frozen=True)
class IsomorphismCheck:
    verdict: Verdict
    detail: str = ""

    def to_json(self) -> dict:
        d = {"verdict": self.verdict.value}
        if self.detail:
            d["detail"] = self.detail
        return d


def phi_isomorphism_check(A: Algebra3BH, J) -> IsomorphismCheck:
    """Check that x -> (x - iJx)/2 maps the twisted algebra onto the i-eigenspace.

    Also checks the conjugate map onto the (-i)-eigenspace.  Both maps must
    intertwine the twists and carry the twisted bracket to the complexified
    bracket on basis triples.  NOT-APPLICABLE on non-regular algebras.
    """
    if not is_regular(A):
        return IsomorphismCheck(Verdict.NOT_APPLICABLE, "requires invertible alpha and beta")
    J = _require_almost(A, J)
    if not is_complex(A, J):
        raise PreconditionError("not a complex structure")
    C = complexify(A)
    G = C.complexified
    Jc = J.coerce(Field.GAUSSIAN)
    T = twisted_bracket(G, Jc)
    half = Fraction(1, 2)
    Id = Matrix.identity(A.dim, Field.GAUSSIAN)
    phi = (Id - Jc * I) * half
    psi = phi.conjugate()
    Li, Lmi = complex_eigenspaces(A, J)
    for name, m, target in (("phi", phi, Li), ("psi", psi, Lmi)):
        if Subspace(A.dim, m.columns()) != target:
            return IsomorphismCheck(Verdict.FAIL, f"image of {name} is not the expected eigenspace")
        if not (m @ G.alpha == G.alpha @ m and m @ G.beta == G.beta @ m):
            return IsomorphismCheck(Verdict.FAIL, f"{name} does not intertwine the twists")
        cols = m.columns()
        for a, b, c in itertools.product(range(A.dim), repeat=3):
            lhs = m @ T.bracket_eval(G.basis_vector(a), G.basis_vector(b), G.basis_vector(c))
            rhs = G.bracket_eval(cols[a], cols[b], cols[c])
            if lhs != rhs:
                return IsomorphismCheck(Verdict.FAIL, f"{name} is not a homomorphism at (e{a + 1}, e{b + 1}, e{c + 1})")
    return IsomorphismCheck(Verdict.PASS)


@dataclass(frozen=True)
class Correspondence:
    direction: str
    source_ok: bool
    target: Matrix
    target_ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        d = {
            "direction": self.direction,
            "source_ok": self.source_ok,
            "target": self.target.tolist(),
            "target_ok": self.target_ok,
        }
        if self.detail:
            d["detail"] = self.detail
        return d


def _holds(check, A, M) -> tuple[bool, str]:
    try:
        r = check(A, M)
    except PreconditionError as exc:
        return False, str(exc)
    return r.holds, "" if r.holds else r.witness.describe()


def ie_correspondence(A: Algebra3BH, M, direction: str = "forward") -> Correspondence:
    """Pass between product and complex structures on an algebra over Q(i).

    ``forward`` sends a product structure E to J = iE, ``backward`` sends a
    complex structure J to E = -iJ.  Rational algebras are complexified first.
    """
    G = _gaussian_algebra(A)
    M = G.check_operator(M)
    if direction == "forward":
        src_ok, src_why = _holds(is_product, G, M)
        target = M * I
        tgt_ok, tgt_why = _holds(is_complex, G, target)
    elif direction == "backward":
        src_ok, src_why = _holds(is_complex, G, M)
        target = M * -I
        tgt_ok, tgt_why = _holds(is_product, G, target)
    else:
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    return Correspondence(direction, src_ok, target, tgt_ok, src_why or tgt_why)


@dataclass(frozen=True)
class PairResult:
    holds: bool
    complex: bool
    product: bool
    anticommute: bool
    maps_plus_onto_minus: bool | None
    detail: str = ""

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        d = {
            "holds": self.holds,
            "complex": self.complex,
            "product": self.product,
            "anticommute": self.anticommute,
            "maps_plus_onto_minus": self.maps_plus_onto_minus,
        }
        if self.detail:
            d["detail"] = self.detail
        return d


def is_complex_product_pair(A: Algebra3BH, J, E) -> PairResult:
    """J complex, E product and JE = -EJ; also reports whether J maps L+ onto L-."""
    J = A.check_operator(J, "J")
    E = A.check_operator(E, "E")
    c_ok, c_why = _holds(is_complex, A, J)
    p_ok, p_why = _holds(is_product, A, E)
    anti = J @ E == -(E @ J)
    onto = None
    if almost_product_failure(A, E) is None:
        plus, minus = kernel(E - A.identity()), kernel(E + A.identity())
        onto = plus.image(J) == minus
    detail = "; ".join(x for x in (c_why, p_why, "" if anti else "JE != -EJ") if x)
    return PairResult(c_ok and p_ok and anti, c_ok, p_ok, anti, onto, detail)
