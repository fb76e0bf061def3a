"""Product structures: involutions commuting with the twists whose
eigenspaces are Bihom subalgebras.

Every identity is evaluated literally on all basis triples; the refinement
flags (strict, abelian, strong abelian, perfect) are computed independently
of each other and of the main identity, so the implications between them
can be tested rather than assumed.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .algebra import (
    Algebra3BH,
    IdentityResult,
    OperatorBrackets,
    PreconditionError,
    Witness,
    check_triples,
    is_regular,
    subalgebra_failure,
)
from .linalg import Matrix, Subspace, is_direct_sum, kernel, vec_add, vec_sub

__all__ = [
    "FLAGS",
    "SIGN_PATTERNS",
    "ConsistencyError",
    "ConstructionError",
    "Containment",
    "CorollaryCheck",
    "ProductClassification",
    "Verdict",
    "almost_product_failure",
    "check_special_corollaries",
    "classify_product",
    "containment_profile",
    "decompose",
    "is_almost_product",
    "is_product",
    "product_from_decomposition",
    "product_identities",
]

FLAGS = ("strict", "abelian", "strong_abelian", "perfect")
SIGN_PATTERNS = tuple(itertools.product("+-", repeat=3))

EQ_READING_NOTE = "left-hand side of the product-structure identity read as E[x,y,z]"


class ConstructionError(ValueError):
    """A decomposition cannot be turned into a structure."""


class ConsistencyError(AssertionError):
    """A guaranteed property failed to hold; carries a witness."""

    def __init__(self, message: str, witness: Witness | None = None):
        super().__init__(message)
        self.witness = witness


class Containment(enum.Enum):
    ZERO = "ZERO"
    IN_PLUS = "IN_PLUS"
    IN_MINUS = "IN_MINUS"
    MIXED = "MIXED"


class Verdict(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    NOT_APPLICABLE = "NOT-APPLICABLE"


def pattern_key(p) -> str:
    return "".join(p)


def containment_profile(A: Algebra3BH, plus: Subspace, minus: Subspace) -> dict[tuple, Containment]:
    """Where brackets of summand bases land, for all eight sign patterns."""
    spaces = {"+": plus, "-": minus}
    out = {}
    for p in SIGN_PATTERNS:
        vals = [A.bracket_eval(x, y, z) for x, y, z in itertools.product(*(spaces[s].basis for s in p))]
        vals = [v for v in vals if any(v)]
        if not vals:
            out[p] = Containment.ZERO
        elif all(plus.contains(v) for v in vals):
            out[p] = Containment.IN_PLUS
        elif all(minus.contains(v) for v in vals):
            out[p] = Containment.IN_MINUS
        else:
            out[p] = Containment.MIXED
    return out


def almost_product_failure(A: Algebra3BH, E: Matrix) -> str | None:
    E = A.check_operator(E, "E")
    if E @ E != A.identity():
        return "E^2 != Id"
    if E.is_identity() or (-E).is_identity():
        return "E = +-Id"
    if not E.commutes_with(A.alpha):
        return "E alpha != alpha E"
    if not E.commutes_with(A.beta):
        return "E beta != beta E"
    return None


def is_almost_product(A: Algebra3BH, E) -> bool:
    return almost_product_failure(A, E) is None


def _require_almost(A: Algebra3BH, E) -> Matrix:
    E = A.check_operator(E, "E")
    reason = almost_product_failure(A, E)
    if reason is not None:
        raise PreconditionError(f"not an almost product structure: {reason}")
    return E


def _main_identity(ob: OperatorBrackets):
    g, Ev = ob.get, ob.apply

    def main(a, b, c):
        lhs = Ev(g(0, 0, 0, a, b, c))
        rhs = vec_add(
            vec_add(g(1, 1, 1, a, b, c), g(1, 0, 0, a, b, c)),
            vec_add(g(0, 1, 0, a, b, c), g(0, 0, 1, a, b, c)),
        )
        twisted = vec_add(vec_add(g(1, 1, 0, a, b, c), g(0, 1, 1, a, b, c)), g(1, 0, 1, a, b, c))
        return lhs, vec_sub(rhs, Ev(twisted))

    return main


def product_identities(A: Algebra3BH, E: Matrix, ob: OperatorBrackets | None = None) -> dict[str, IdentityResult]:
    """The main product identity and its four refinements on basis triples."""
    ob = ob or OperatorBrackets(A, E)
    g, Ev = ob.get, ob.apply
    n = A.dim

    main = _main_identity(ob)

    def strict(a, b, c):
        return Ev(g(0, 0, 0, a, b, c)), g(1, 0, 0, a, b, c)

    def abelian(a, b, c):
        s = vec_add(vec_add(g(0, 1, 1, a, b, c), g(1, 0, 1, a, b, c)), g(1, 1, 0, a, b, c))
        return g(0, 0, 0, a, b, c), tuple(-x for x in s)

    def strong(a, b, c):
        s = vec_add(vec_add(g(1, 0, 0, a, b, c), g(0, 1, 0, a, b, c)), g(0, 0, 1, a, b, c))
        return g(0, 0, 0, a, b, c), Ev(s)

    def perfect(a, b, c):
        return Ev(g(0, 0, 0, a, b, c)), g(1, 1, 1, a, b, c)

    return {
        "product": check_triples(n, main, "product identity"),
        "strict": check_triples(n, strict, "E[x,y,z] = [Ex,y,z]"),
        "abelian": check_triples(n, abelian, "[x,y,z] = -[x,Ey,Ez]-[Ex,y,Ez]-[Ex,Ey,z]"),
        "strong_abelian": check_triples(n, strong, "[x,y,z] = E[Ex,y,z]+E[x,Ey,z]+E[x,y,Ez]"),
        "perfect": check_triples(n, perfect, "E[x,y,z] = [Ex,Ey,Ez]"),
    }


def is_product(A: Algebra3BH, E) -> IdentityResult:
    """The product identity on all basis triples; raises if E is not almost product."""
    E = _require_almost(A, E)
    main = _main_identity(OperatorBrackets(A, E))
    return check_triples(A.dim, main, "product identity")


@dataclass(frozen=True)
class ProductClassification:
    is_almost: bool
    is_product: bool
    flags: Mapping[str, bool]
    eigenspaces: tuple[Subspace, Subspace] | None
    containment_profile: Mapping[tuple, Containment] = field(default_factory=dict)
    identities: Mapping[str, IdentityResult] = field(default_factory=dict)
    almost_failure: str | None = None
    notes: tuple[str, ...] = ()

    def true_flags(self) -> list[str]:
        return [f for f in FLAGS if self.flags.get(f)]

    def to_json(self) -> dict:
        d: dict = {"is_almost": self.is_almost, "is_product": self.is_product}
        if self.almost_failure:
            d["almost_failure"] = self.almost_failure
        d["flags"] = {f: self.flags.get(f, False) for f in FLAGS}
        if self.eigenspaces is not None:
            d["eigenspaces"] = {"plus": self.eigenspaces[0].tolist(), "minus": self.eigenspaces[1].tolist()}
            d["containment_profile"] = {pattern_key(p): c.value for p, c in self.containment_profile.items()}
        if self.identities:
            d["identities"] = {k: v.to_json() for k, v in self.identities.items()}
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def eigenspaces(A: Algebra3BH, E: Matrix) -> tuple[Subspace, Subspace]:
    I = A.identity()
    return kernel(E - I), kernel(E + I)


def classify_product(A: Algebra3BH, E) -> ProductClassification:
    E = A.check_operator(E, "E")
    reason = almost_product_failure(A, E)
    if reason is not None:
        raise PreconditionError(f"not an almost product structure: {reason}")
    ids = product_identities(A, E)
    plus, minus = eigenspaces(A, E)
    return ProductClassification(
        is_almost=True,
        is_product=ids["product"].holds,
        flags={f: ids[f].holds for f in FLAGS},
        eigenspaces=(plus, minus),
        containment_profile=containment_profile(A, plus, minus),
        identities=ids,
        notes=(EQ_READING_NOTE,),
    )


def try_classify_product(A: Algebra3BH, E) -> ProductClassification:
    """Like :func:`classify_product` but reports non-almost inputs instead of raising."""
    E = A.check_operator(E, "E")
    reason = almost_product_failure(A, E)
    if reason is not None:
        return ProductClassification(False, False, {f: False for f in FLAGS}, None, almost_failure=reason)
    return classify_product(A, E)


@dataclass(frozen=True)
class Decomposition:
    plus: Subspace
    minus: Subspace


def decompose(A: Algebra3BH, E) -> Decomposition:
    """Eigenspaces of a product structure, both checked to be Bihom subalgebras."""
    E = _require_almost(A, E)
    res = is_product(A, E)
    if not res:
        raise PreconditionError(f"not a product structure: {res.witness.describe()}")
    plus, minus = eigenspaces(A, E)
    if not is_direct_sum(plus, minus):
        raise ConsistencyError("eigenspaces of an involution do not span the algebra")
    for label, S in (("plus", plus), ("minus", minus)):
        why = subalgebra_failure(A, S)
        if why is not None:
            raise ConsistencyError(f"{label} eigenspace fails subalgebra test ({why})")
    return Decomposition(plus, minus)


def product_from_decomposition(A: Algebra3BH, plus: Subspace, minus: Subspace) -> Matrix:
    """The involution acting as +1 on ``plus`` and -1 on ``minus``."""
    if plus.ambient != A.dim or minus.ambient != A.dim:
        raise ConstructionError("subspaces do not live in the algebra's dimension")
    if not plus.dim or not minus.dim:
        raise ConstructionError("a summand is zero, which would force E = +-Id")
    if not is_direct_sum(plus, minus):
        raise ConstructionError("subspaces do not form a direct sum decomposition")
    for label, S in (("plus", plus), ("minus", minus)):
        why = subalgebra_failure(A, S)
        if why is not None:
            raise ConstructionError(f"{label} summand is not a Bihom subalgebra: {why} fails")
    B = Matrix.from_columns(list(plus.basis) + list(minus.basis))
    D = Matrix.diag([1] * plus.dim + [-1] * minus.dim, A.field)
    return (B @ D @ B.inverse()).coerce(A.field)


@dataclass(frozen=True)
class CorollaryCheck:
    name: str
    verdict: Verdict
    detail: str = ""

    def to_json(self) -> dict:
        d = {"name": self.name, "verdict": self.verdict.value}
        if self.detail:
            d["detail"] = self.detail
        return d


def _expect(profile, patterns, allowed, name: str, gated: bool = False) -> CorollaryCheck:
    if gated:
        return CorollaryCheck(name, Verdict.NOT_APPLICABLE, "requires surjective alpha and beta")
    bad = [pattern_key(p) + "=" + profile[p].value for p in patterns if profile[p] not in allowed]
    if bad:
        return CorollaryCheck(name, Verdict.FAIL, ", ".join(bad))
    return CorollaryCheck(name, Verdict.PASS)


_ALL_SAME = (("+", "+", "+"), ("-", "-", "-"))
_TWO_PLUS = (("+", "+", "-"), ("+", "-", "+"), ("-", "+", "+"))
_TWO_MINUS = (("-", "-", "+"), ("-", "+", "-"), ("+", "-", "-"))
_MIXED = _TWO_PLUS + _TWO_MINUS

Z, P, M = Containment.ZERO, Containment.IN_PLUS, Containment.IN_MINUS


def corollary_checks(
    profile, flags: Mapping[str, bool], is_structure: bool, regular: bool, abelian_needs_regular: bool = False
) -> list[CorollaryCheck]:
    """Containment consequences of each true flag, shared by product and complex structures.

    In the complex case ``+`` stands for the i-eigenspace and ``-`` for the
    (-i)-eigenspace of the complexified operator.
    """
    out = []
    if is_structure:
        out.append(_expect(profile, _ALL_SAME[:1], (Z, P), "plus summand is closed"))
        out.append(_expect(profile, _ALL_SAME[1:], (Z, M), "minus summand is closed"))
    if flags.get("strict"):
        out.append(_expect(profile, _MIXED, (Z,), "strict: all mixed brackets vanish", gated=not regular))
    if flags.get("abelian"):
        out.append(_expect(profile, _ALL_SAME, (Z,), "abelian: both summands abelian", gated=abelian_needs_regular and not regular))
    if flags.get("strong_abelian"):
        out.append(_expect(profile, _ALL_SAME, (Z,), "strong abelian: both summands abelian"))
        out.append(_expect(profile, _TWO_PLUS, (Z, P), "strong abelian: two plus arguments land in plus"))
        out.append(_expect(profile, _TWO_MINUS, (Z, M), "strong abelian: two minus arguments land in minus"))
    if flags.get("perfect"):
        out.append(_expect(profile, _TWO_PLUS, (Z, M), "perfect: two plus arguments land in minus"))
        out.append(_expect(profile, _TWO_MINUS, (Z, P), "perfect: two minus arguments land in plus"))
    return out


def check_special_corollaries(A: Algebra3BH, E, classification: ProductClassification | None = None) -> list[CorollaryCheck]:
    """Verify the decomposition properties implied by each true flag.

    Properties that need surjective twist maps are NOT-APPLICABLE when
    alpha or beta is singular.
    """
    cls = classification or classify_product(A, E)
    regular = is_regular(A)
    checks = corollary_checks(cls.containment_profile, cls.flags, cls.is_product, regular)
    if cls.flags.get("strict") and regular:
        # strict also implies perfect on regular algebras
        checks.append(
            CorollaryCheck(
                "strict implies perfect",
                Verdict.PASS if cls.flags.get("perfect") else Verdict.FAIL,
            )
        )
    return checks
