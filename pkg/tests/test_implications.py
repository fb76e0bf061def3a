"""Refinement flags imply the main identity, and each true flag forces its containments."""

import functools
from dataclasses import dataclass

import pytest

from bihom3.algebra import is_regular
from bihom3.complex_structures import check_complex_corollaries, complex_identities, try_classify_complex
from bihom3.product import Verdict, check_special_corollaries, product_identities, try_classify_product

from helpers import discovered_structures

REFINEMENTS = ("strict", "abelian", "strong_abelian", "perfect")
# checks that need surjective twist maps, per structure kind
GATED = {
    "product": {"strict: all mixed brackets vanish"},
    "complex": {"strict: all mixed brackets vanish", "abelian: both summands abelian"},
}
API = {
    "product": (product_identities, try_classify_product, check_special_corollaries),
    "complex": (complex_identities, try_classify_complex, check_complex_corollaries),
}


@dataclass
class Record:
    label: str
    kind: str
    regular: bool
    identities: dict
    flags: dict
    is_structure: bool
    corollaries: list


@functools.cache
def records() -> list[Record]:
    out = []
    for label, A, kind, M in discovered_structures():
        identities, classify, corollaries = API[kind]
        cls = classify(A, M)
        ok = cls.is_product if kind == "product" else cls.is_complex
        out.append(
            Record(label, kind, is_regular(A), identities(A, M), cls.flags, ok, corollaries(A, M, cls) if ok else [])
        )
    return out


def of_kind(kind):
    return [r for r in records() if r.kind == kind]


def test_pool_covers_every_case():
    assert len(records()) > 200
    seen = set()
    for r in records():
        seen.add((r.kind, r.regular, r.is_structure))
        seen.update((r.kind, r.regular, f) for f, v in r.flags.items() if v)
    for kind in ("product", "complex"):
        for regular in (True, False):
            assert {(kind, regular, True), (kind, regular, "strict"), (kind, regular, "abelian")} <= seen
    assert ("product", True, False) in seen and ("complex", True, False) in seen


@pytest.mark.parametrize("kind", ["product", "complex"])
def test_refinements_imply_main_identity(kind):
    checked = 0
    for r in of_kind(kind):
        main = r.identities[kind]
        for name in REFINEMENTS:
            if r.identities[name].holds:
                checked += 1
                assert main.holds, f"{r.label}: {name} holds but the main identity fails"
    assert checked > 0


@pytest.mark.parametrize("kind", ["product", "complex"])
def test_strict_implies_perfect_on_regular(kind):
    hits = [r for r in of_kind(kind) if r.regular and r.flags.get("strict")]
    assert hits
    assert all(r.flags["perfect"] for r in hits)


@pytest.mark.parametrize("kind", ["product", "complex"])
def test_corollaries_hold_or_are_gated(kind):
    gated_seen = 0
    for r in of_kind(kind):
        for c in r.corollaries:
            if c.name in GATED[kind] and not r.regular:
                gated_seen += 1
                assert c.verdict is Verdict.NOT_APPLICABLE, f"{r.label}: {c.name}"
            else:
                assert c.verdict is Verdict.PASS, f"{r.label}: {c.name} {c.detail}"
    assert gated_seen > 0
