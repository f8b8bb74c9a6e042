"""Command-line front-end for batch classification and verification.

Exit codes: 0 on success, 1 on validation errors (bad JSON, schema
violations, out-of-range fields, unclassifiable input), 2 on internal
cross-check mismatches.  `--json` suppresses prose and prints one JSON
document; default output is human-readable with the JSON appended where it
is the payload.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bform import BilinearForm
from .classify import (
    CanonicalClass,
    InternalCheckError,
    canonicalize,
    classify,
    form_invariant,
    good_pairs,
)
from .divided import QuadraticForm, classify_quadratic, gamma2
from .field import make_field
from .verobj import VerObject, check_r_matrix_axioms, hexagons_hold, random_equivariant_automorphism
from .witt import direct_sum, emit_tables, tensor_product
from . import oracle as oracle_mod


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from exc


def _load_form(path: str) -> BilinearForm:
    return BilinearForm.from_json(_load_json(path))


def _load_quadratic(path: str) -> QuadraticForm:
    return QuadraticForm.from_json(_load_json(path))


def _emit(payload: dict, args, prose: str | None = None):
    if args.json or prose is None:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(prose)


def _require_classifiable_field(k: int):
    if k < 2:
        raise ValueError("classification requires GF(2^k) with k >= 2; got k = 1")


def _cmd_classify(args) -> int:
    beta = _load_form(args.file)
    _require_classifiable_field(beta.field.k)
    cls = classify(beta)
    _emit(cls.to_json(), args, cls.label())
    return 0


def _cmd_canonicalize(args) -> int:
    beta = _load_form(args.file)
    _require_classifiable_field(beta.field.k)
    transform, canon = canonicalize(beta)
    payload = {
        "class": classify(beta).to_json(),
        "transform": transform.matrix.tolist(),
        "canonical_gram": canon.gram.tolist(),
    }
    _emit(payload, args)
    return 0


def _cmd_invariants(args) -> int:
    beta = _load_form(args.file)
    symmetric = beta.is_symmetric()
    payload: dict = {
        "symmetric": symmetric,
        "nondegenerate": beta.is_nondegenerate(),
        "radical_rank": beta.radical().dim,
    }
    if symmetric:
        alt = beta.is_alternating()
        payload.update(
            {
                "alternating": alt,
                "oscillating": beta.is_oscillating(),
                "super_alternating": beta.is_super_alternating(),
                "good_pairs": good_pairs(beta).to_json(),
                "form_invariant": form_invariant(beta)
                if alt and payload["nondegenerate"]
                else None,
            }
        )
    _emit(payload, args)
    return 0


def _binary_op(args, op) -> int:
    b1 = _load_form(args.file1)
    b2 = _load_form(args.file2)
    result = op(b1, b2)
    payload = {"form": result.to_json()}
    if result.field.k >= 2 and result.is_symmetric() and result.is_nondegenerate():
        payload["class"] = classify(result).to_json()
    else:
        payload["class"] = None
    _emit(payload, args)
    return 0


def _cmd_quad_classify(args) -> int:
    q = _load_quadratic(args.file)
    _require_classifiable_field(q.field.k)
    h, cls = classify_quadratic(q)
    payload = {"hyperbolic_multiplicity": h, "np_class": cls.to_json()}
    _emit(payload, args, f"{h} hyperbolic plane(s) + {cls.label()}")
    return 0


def _cmd_gamma2_basis(args) -> int:
    F = make_field(args.k)
    obj = VerObject(F, args.m, args.n)
    basis = gamma2(obj)
    lines = []
    for line in basis.lines:
        lines.append(
            {
                "family": line.family,
                "indices": list(line.indices),
                "generator": line.describe(obj),
                "dim": line.dim,
            }
        )
    payload = {
        "object": obj.to_json(),
        "dim": basis.dim,
        "num_lines": basis.num_lines,
        "lines": lines,
    }
    prose = "\n".join(
        f"[family {ln['family']}] {ln['generator']}"
        + ("  (with its t-image)" if ln["dim"] == 2 else "")
        for ln in lines
    ) or "(empty)"
    _emit(payload, args, prose)
    return 0


def _cmd_tables(args) -> int:
    F = make_field(args.k)
    _require_classifiable_field(F.k)
    params = None
    if F.order > 8:
        params = sorted(set(range(min(F.order, 4))) | {F.order - 1})
    sum_rep, prod_rep = emit_tables(F, max_size=args.max_size, params=params)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "sum_table.md").write_text(sum_rep.to_markdown(), encoding="utf-8")
    (outdir / "sum_table.csv").write_text(sum_rep.to_csv(), encoding="utf-8")
    (outdir / "product_table.md").write_text(prod_rep.to_markdown(), encoding="utf-8")
    (outdir / "product_table.csv").write_text(prod_rep.to_csv(), encoding="utf-8")
    payload = {
        "sum": {"cells": sum_rep.cells, "mismatches": sum_rep.mismatches,
                "coincidences": len(sum_rep.coincidences)},
        "product": {"cells": prod_rep.cells, "mismatches": prod_rep.mismatches,
                    "coincidences": len(prod_rep.coincidences)},
        "out": str(outdir),
    }
    _emit(
        payload,
        args,
        f"sum table: {sum_rep.cells} cells, {len(sum_rep.mismatches)} mismatches\n"
        f"product table: {prod_rep.cells} cells, {len(prod_rep.mismatches)} mismatches\n"
        f"files written to {outdir}",
    )
    return 0 if sum_rep.ok and prod_rep.ok else 2


def _cmd_oracle(args) -> int:
    F = make_field(args.k)
    _require_classifiable_field(F.k)
    report = oracle_mod.orbit_classes(args.m, args.n, F, budget_bits=args.budget)
    _emit(report.to_json(), args, report.summary())
    return 0


def _cmd_selfcheck(args) -> int:
    rng = np.random.default_rng(args.seed)
    failures: list[str] = []

    def check(name: str, ok: bool):
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
        if not ok:
            failures.append(name)

    F2, F4, F8 = make_field(1), make_field(2), make_field(3)
    for F in (F2, F4):
        report = check_r_matrix_axioms(F)
        check(f"triangular structure axioms over {F!r}", all(report.values()))
    # field axioms on random triples
    ok = True
    for F in (F4, F8, make_field(8)):
        for _ in range(args.trials):
            a, b, c = (int(x) for x in rng.integers(0, F.order, 3))
            ok = ok and F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            ok = ok and F.mul(F.sqrt(a), F.sqrt(a)) == a
            if a:
                ok = ok and F.mul(a, F.inv(a)) == 1
    check("field axioms on random triples", ok)
    # braiding involution and hexagons on small objects
    objs = [VerObject(F4, m, n) for m, n in ((1, 0), (0, 1), (1, 1), (2, 1))]
    ok = True
    from .verobj import braiding

    for a in objs:
        for b in objs:
            cab, cba = braiding(a, b).matrix, braiding(b, a).matrix
            from .linalg import eye, mat_mul

            ok = ok and np.array_equal(mat_mul(F4, cba, cab), eye(a.dim * b.dim))
    check("braiding squares to the identity", ok)
    ok = all(all(hexagons_hold(x, y, z)) for x in objs[:2] for y in objs[:2] for z in objs[:2])
    check("hexagon identities", ok)
    # gamma2 dimensions
    from .divided import gamma2_dim_formula

    ok = True
    for m in range(4):
        for n in range(3):
            obj = VerObject(F4, m, n)
            ok = ok and gamma2(obj).dim == gamma2_dim_formula(m, n)
    check("second divided power dimensions", ok)
    # classification stability on random congruences
    from .classify import canonical_rep
    from .linalg import congruence

    classes = [
        CanonicalClass("A", 2, 2),
        CanonicalClass("B", 1, 1),
        CanonicalClass("C", 2, 2),
        CanonicalClass("D", 0, 2),
        CanonicalClass("E", 0, 2, 2),
        CanonicalClass("F", 0, 3, 1),
    ]
    ok = True
    for cls in classes:
        rep = canonical_rep(cls, F4)
        for _ in range(args.trials // 4 + 1):
            phi = random_equivariant_automorphism(rep.obj, rng)
            scr = BilinearForm(rep.obj, congruence(F4, phi.matrix, rep.gram))
            ok = ok and classify(scr) == cls
            transform, canon = canonicalize(scr)
            ok = ok and np.array_equal(canon.gram, rep.gram)
    check("classification stable under random equivariant congruence", ok)
    # witt table sample
    sum_rep, prod_rep = emit_tables(F4, max_size=2)
    check("witt sum table sample", sum_rep.ok)
    check("witt product table sample", prod_rep.ok)
    # oracle smallest case
    rep = oracle_mod.orbit_classes(0, 1, F4)
    check("oracle (0,1) orbit census", rep.orbit_count == 4)
    if failures:
        print(f"{len(failures)} check(s) failed")
        return 2
    print("all checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ver4forms",
        description="Classify bilinear and quadratic forms on K[t]/(t^2)-modules "
        "with the twisted braiding, over GF(2^k).",
    )
    ap.add_argument("--json", action="store_true", help="machine-readable output only")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="canonical class of a form document")
    p.add_argument("file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("canonicalize", help="equivariant congruence to the canonical Gram")
    p.add_argument("file")
    p.set_defaults(func=_cmd_canonicalize)

    p = sub.add_parser("invariants", help="good pairs, predicate flags, form invariant")
    p.add_argument("file")
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("sum", help="direct sum of two form documents")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=lambda a: _binary_op(a, direct_sum))

    p = sub.add_parser("product", help="braided tensor product of two form documents")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=lambda a: _binary_op(a, tensor_product))

    p = sub.add_parser("quad-classify", help="classify a quadratic form document")
    p.add_argument("file")
    p.set_defaults(func=_cmd_quad_classify)

    p = sub.add_parser("gamma2-basis", help="generator list of the second divided power")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.set_defaults(func=_cmd_gamma2_basis)

    p = sub.add_parser("tables", help="compute and verify both semi-ring tables")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--out", default="witt_tables")
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("oracle", help="brute-force orbit census on a tiny object")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=oracle_mod.DEFAULT_BUDGET_BITS)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("selfcheck", help="run the module invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.set_defaults(func=_cmd_selfcheck)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InternalCheckError as exc:
        print(f"internal mismatch: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
