"""Command-line interface.

Exit status: 0 when every check passes (or a search completes), 1 when a
mathematical check fails, 2 for unreadable or invalid input and for refused
requests (search budget or generation attempts exhausted).
"""

from __future__ import annotations

import argparse
import sys
from typing import Any

from . import __version__
from .algebra import Algebra3BH, PreconditionError, Witness, is_nijenhuis, verify_axioms
from .complex_structures import (
    EIGENSPACE_NOTE,
    check_complex_corollaries,
    complexify,
    is_complex,
    is_complex_product_pair,
    try_classify_complex,
    twisted_bracket,
)
from .documents import (
    DocumentError,
    algebra_from_json,
    algebra_to_json,
    dumps,
    load_document,
    operator_from_json,
    operator_to_json,
    pair_from_json,
)
from .linalg import DimensionMismatch
from .product import EQ_READING_NOTE, check_special_corollaries, decompose, try_classify_product
from .scalars import parse_scalar
from .search import (
    GenerationRefused,
    SearchBudgetExceeded,
    SearchConfig,
    SearchMode,
    generate_random_algebra,
    search_complex,
    search_pairs,
    search_product,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load_algebra(path: str) -> Algebra3BH:
    return algebra_from_json(load_document(path))


def _report(command: str, A: Algebra3BH | None = None, notes=()) -> dict[str, Any]:
    r: dict[str, Any] = {"tool": "bihom3", "version": __version__, "command": command}
    if A is not None:
        r["algebra"] = A.name
    all_notes = list(A.notes if A is not None else ()) + [n for n in notes if n]
    if all_notes:
        r["notes"] = all_notes
    return r


def _axioms(A: Algebra3BH, trusted: bool, report: dict) -> bool:
    if trusted:
        report["axioms"] = "skipped (trusted)"
        return True
    ax = verify_axioms(A)
    report["axioms"] = ax.to_json()["axioms"]
    return ax.ok


def _load_operator(path: str, A: Algebra3BH):
    kind, m = operator_from_json(load_document(path), A)
    return kind, m


# commands


def cmd_verify(args) -> tuple[dict, int]:
    A = _load_algebra(args.algebra)
    rep = _report("verify", A)
    ok = _axioms(A, False, rep)
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_FAIL


def _classify(A: Algebra3BH, kind: str, M) -> tuple[dict, bool, list[str]]:
    if kind == "product":
        cls = try_classify_product(A, M)
        body = cls.to_json()
        if cls.is_almost:
            body["corollaries"] = [c.to_json() for c in check_special_corollaries(A, M, cls)]
        return body, cls.is_product, [EQ_READING_NOTE]
    if kind == "complex":
        cls = try_classify_complex(A, M)
        body = cls.to_json()
        if cls.is_almost:
            body["corollaries"] = [c.to_json() for c in check_complex_corollaries(A, M, cls)]
        return body, cls.is_complex, [EIGENSPACE_NOTE]
    res = is_nijenhuis(A, M)
    body = {
        "is_nijenhuis": res.holds,
        "commutes_alpha": res.commutes_alpha,
        "commutes_beta": res.commutes_beta,
        "identity": res.identity.to_json() if res.identity else None,
    }
    return body, res.holds, []


def cmd_classify(args) -> tuple[dict, int]:
    A = _load_algebra(args.algebra)
    doc_kind, M = _load_operator(args.operator, A)
    kind = args.kind or doc_kind
    body, holds, notes = _classify(A, kind, M)
    rep = _report("classify", A, notes)
    axioms_ok = _axioms(A, args.trusted, rep)
    rep["kind"] = kind
    rep["operator"] = M.tolist()
    rep["classification"] = body
    rep["ok"] = holds and axioms_ok
    return rep, EXIT_OK if rep["ok"] else EXIT_FAIL


def cmd_decompose(args) -> tuple[dict, int]:
    A = _load_algebra(args.algebra)
    doc_kind, M = _load_operator(args.operator, A)
    kind = args.kind or doc_kind
    if kind == "product":
        rep = _report("decompose", A, [EQ_READING_NOTE])
        axioms_ok = _axioms(A, args.trusted, rep)
        try:
            d = decompose(A, M)
        except PreconditionError as exc:
            rep.update(ok=False, error=str(exc))
            return rep, EXIT_FAIL
        rep["summands"] = {"plus": d.plus.tolist(), "minus": d.minus.tolist()}
    elif kind == "complex":
        rep = _report("decompose", A, [EIGENSPACE_NOTE])
        axioms_ok = _axioms(A, args.trusted, rep)
        cls = try_classify_complex(A, M)
        if not cls.is_complex:
            why = cls.almost_failure or cls.identities["complex"].witness.describe()
            rep.update(ok=False, error=f"not a complex structure: {why}")
            return rep, EXIT_FAIL
        Li, Lmi = cls.eigenspaces
        rep["summands"] = {"i": Li.tolist(), "minus_i": Lmi.tolist()}
        rep["conjugate_summands"] = Li.conjugate() == Lmi
    else:
        raise InputError(f"cannot decompose along a {kind} operator")
    rep["ok"] = axioms_ok
    return rep, EXIT_OK if axioms_ok else EXIT_FAIL


def cmd_complexify(args) -> tuple[dict, int]:
    A = _load_algebra(args.algebra)
    try:
        C = complexify(A)
    except PreconditionError as exc:
        raise InputError(str(exc)) from None
    rep = _report("complexify", A)
    rep["complexified"] = algebra_to_json(C.complexified)
    rep["axioms"] = C.axioms.to_json()["axioms"]
    rep["ok"] = C.axioms.ok
    return rep, EXIT_OK if rep["ok"] else EXIT_FAIL


def cmd_twist(args) -> tuple[dict, int]:
    A = _load_algebra(args.algebra)
    _, J = _load_operator(args.operator, A)
    rep = _report("twist", A, [EIGENSPACE_NOTE])
    axioms_ok = _axioms(A, args.trusted, rep)
    try:
        complex_ok = is_complex(A, J).holds
    except PreconditionError as exc:
        rep.update(ok=False, error=str(exc))
        return rep, EXIT_FAIL
    T = twisted_bracket(A, J)
    tax = verify_axioms(T)
    strict = try_classify_complex(T, J)
    rep["complex"] = complex_ok
    rep["twisted"] = algebra_to_json(T)
    rep["twisted_axioms"] = tax.to_json()["axioms"]
    rep["strict_on_twisted"] = strict.flags.get("strict", False)
    rep["ok"] = axioms_ok and complex_ok and tax.ok and rep["strict_on_twisted"]
    return rep, EXIT_OK if rep["ok"] else EXIT_FAIL


def cmd_pair_check(args) -> tuple[dict, int]:
    A = _load_algebra(args.algebra)
    J, E = pair_from_json(load_document(args.pair), A)
    rep = _report("pair-check", A, [EQ_READING_NOTE])
    axioms_ok = _axioms(A, args.trusted, rep)
    res = is_complex_product_pair(A, J, E)
    rep["J"] = J.tolist()
    rep["E"] = E.tolist()
    rep["pair"] = res.to_json()
    rep["ok"] = axioms_ok and res.holds
    return rep, EXIT_OK if rep["ok"] else EXIT_FAIL


def _config(args) -> SearchConfig:
    try:
        return SearchConfig(
            mode=SearchMode(args.mode),
            bound=args.bound,
            limit=args.limit,
            budget=args.budget,
            require=frozenset(args.require or ()),
            trusted=args.trusted,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_search(args) -> tuple[dict, int]:
    A = _load_algebra(args.algebra)
    cfg = _config(args)
    rep = _report("search", A, [EQ_READING_NOTE if args.kind != "complex" else "", EIGENSPACE_NOTE if args.kind != "product" else ""])
    rep["config"] = {
        "kind": args.kind,
        "mode": cfg.mode.value if args.kind != "complex" else SearchMode.BOUNDED_INTEGER.value,
        "bound": cfg.bound,
        "budget": cfg.budget,
        "limit": cfg.limit,
        "require": sorted(cfg.require),
    }
    if args.kind == "pairs":
        rep["config"]["complex_mode"] = SearchMode.BOUNDED_INTEGER.value
    try:
        if args.kind == "product":
            found = search_product(A, cfg)
            rep["results"] = [{**operator_to_json("product", E), "classification": c.to_json()} for E, c in found]
        elif args.kind == "complex":
            found = search_complex(A, cfg)
            rep["results"] = [{**operator_to_json("complex", J), "classification": c.to_json()} for J, c in found]
        else:
            pairs = search_pairs(A, cfg)
            rep["results"] = [
                {"kind": "pair", "J": J.tolist(), "E": E.tolist(), "check": is_complex_product_pair(A, J, E).to_json()}
                for J, E in pairs
            ]
    except PreconditionError as exc:
        raise InputError(str(exc)) from None
    rep["count"] = len(rep["results"])
    rep["ok"] = True
    return rep, EXIT_OK


def cmd_generate(args) -> tuple[dict, int]:
    try:
        A = generate_random_algebra(
            args.dim,
            args.sparsity,
            (args.coeff_min, args.coeff_max),
            args.seed,
            args.max_attempts,
            args.fallback,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return algebra_to_json(A), EXIT_OK


# text rendering


def _is_witness(d) -> bool:
    return isinstance(d, dict) and {"indices", "lhs", "rhs"} <= d.keys()


def _witness_text(d: dict) -> str:
    w = Witness(
        tuple(d["indices"]),
        tuple(parse_scalar(x) for x in d["lhs"]),
        tuple(parse_scalar(x) for x in d["rhs"]),
        d.get("label", ""),
    )
    return w.describe()


def _is_matrix(v) -> bool:
    return isinstance(v, list) and v and all(isinstance(r, list) and all(isinstance(x, str) for x in r) for r in v)


def _matrix_text(rows: list, indent: str) -> list[str]:
    width = max(len(x) for r in rows for x in r)
    return [indent + "[ " + "  ".join(x.rjust(width) for x in r) + " ]" for r in rows]


def render_text(obj: Any, indent: str = "") -> list[str]:
    lines: list[str] = []
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k, v in obj.items():
            label = f"{indent}{str(k).ljust(width)} :"
            if _is_witness(v):
                lines.append(f"{label} {_witness_text(v)}")
            elif _is_matrix(v):
                lines.append(label)
                lines.extend(_matrix_text(v, indent + "    "))
            elif isinstance(v, (dict, list)) and v:
                lines.append(label)
                lines.extend(render_text(v, indent + "    "))
            else:
                lines.append(f"{label} {_scalar_text(v)}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}- [{i}]")
                lines.extend(render_text(v, indent + "    "))
            else:
                lines.append(f"{indent}- {_scalar_text(v)}")
    else:
        lines.append(indent + _scalar_text(obj))
    return lines


def _scalar_text(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (dict, list)):
        return "none"
    return str(v)


# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json", help="report format")
    common.add_argument("--trusted", action="store_true", help="skip axiom re-verification")

    p = argparse.ArgumentParser(prog="bihom3", description="Exact checks for 3-Bihom-Lie algebras and their structures.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check the five axioms")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_verify)

    for name, func, helptext in (
        ("classify", cmd_classify, "classify an operator"),
        ("decompose", cmd_decompose, "eigenspace decomposition of a structure"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("algebra")
        s.add_argument("operator")
        s.add_argument("--kind", choices=("product", "complex", "nijenhuis"), help="override the operator document kind")
        s.set_defaults(func=func)

    s = sub.add_parser("complexify", parents=[common], help="extend scalars to Q(i)")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_complexify)

    s = sub.add_parser("twist", parents=[common], help="twisted bracket of a complex structure")
    s.add_argument("algebra")
    s.add_argument("operator")
    s.set_defaults(func=cmd_twist)

    s = sub.add_parser("pair-check", parents=[common], help="check a complex product pair")
    s.add_argument("algebra")
    s.add_argument("pair")
    s.set_defaults(func=cmd_pair_check)

    s = sub.add_parser("search", parents=[common], help="enumerate structures")
    s.add_argument("algebra")
    s.add_argument("--kind", choices=("product", "complex", "pairs"), default="product")
    s.add_argument("--mode", choices=("diagonal", "bounded"), default="diagonal")
    s.add_argument("--bound", type=int, default=2)
    s.add_argument("--budget", type=int, default=SearchConfig.budget)
    s.add_argument("--limit", type=int)
    s.add_argument("--require", action="append", choices=("strict", "abelian", "strong_abelian", "perfect"))
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("generate", parents=[common], help="random axiom-valid algebra")
    s.add_argument("--dim", type=int, default=3)
    s.add_argument("--sparsity", type=int, default=1)
    s.add_argument("--coeff-min", type=int, default=-2)
    s.add_argument("--coeff-max", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-attempts", type=int, default=200)
    s.add_argument("--fallback", action="store_true", help="return an abelian algebra instead of refusing")
    s.set_defaults(func=cmd_generate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format
    try:
        report, code = args.func(args)
    except DocumentError as exc:
        report, code = _error(args.command, exc.message, exc.location), EXIT_INPUT
    except (InputError, DimensionMismatch) as exc:
        report, code = _error(args.command, str(exc)), EXIT_INPUT
    except SearchBudgetExceeded as exc:
        report = _error(args.command, str(exc))
        report["candidates"] = exc.count
        code = EXIT_INPUT
    except GenerationRefused as exc:
        report = _error(args.command, str(exc))
        report["attempts"] = exc.attempts
        code = EXIT_INPUT
    out = sys.stdout if code != EXIT_INPUT else sys.stderr
    if fmt == "json":
        out.write(dumps(report))
    else:
        out.write("\n".join(render_text(report)) + "\n")
    return code


def _error(command: str, message: str, location: str | None = None) -> dict:
    r = {"tool": "bihom3", "version": __version__, "command": command, "ok": False, "error": message}
    if location is not None:
        r["location"] = location
    return r


if __name__ == "__main__":
    sys.exit(main())
