"""Regenerate the JSON fixtures under src/bihom3/fixtures from the catalog builders."""

from pathlib import Path

from bihom3 import catalog
from bihom3.documents import algebra_to_json, dumps, operator_to_json, pair_to_json

OUT = Path(__file__).resolve().parent.parent / "src" / "bihom3" / "fixtures"


def write(name, doc):
    (OUT / f"{name}.json").write_text(dumps(doc), encoding="utf-8")


def main():
    OUT.mkdir(exist_ok=True)
    for name, build in catalog.BUILDERS.items():
        write(name, algebra_to_json(build()))
    for key, m in catalog.EX_3_18_OPERATORS.items():
        write(f"op_ex_3_18_{key}", operator_to_json("product", m))
    for key, m in catalog.EX_3_19_OPERATORS.items():
        write(f"op_ex_3_19_{key}", operator_to_json("product", m))
    for key, m in catalog.EX_4_22_J.items():
        write(f"op_ex_4_22_{key}", operator_to_json("complex", m))
    for key, m in catalog.EX_4_22_E.items():
        write(f"op_ex_4_22_{key}", operator_to_json("product", m))
    for j, e in catalog.EX_4_22_PAIRS:
        write(f"pair_ex_4_22_{j}_{e}", pair_to_json(catalog.EX_4_22_J[j], catalog.EX_4_22_E[e]))


if __name__ == "__main__":
    main()
