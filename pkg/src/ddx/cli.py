"""Command-line interface.

One action per invocation; identical inputs yield byte-identical output.
Exit codes: 0 success, 1 domain error (bad input data, invalid complex),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cohomology as coh
from . import formulas, models, serialize, zigzags
from .complexes import (
    MixedRealStructure,
    NotInjective,
    MalformedShape,
    direct_sum,
    quotient_by_injection,
    shift_diag,
    tensor,
)
from .linalg import AmbientMismatch
from .polynomials import IndexOutOfRange, InvalidRank, build_family, inversion_sum
from .serialize import FormatError

DOMAIN_ERRORS = (
    FormatError,
    AmbientMismatch,
    InvalidRank,
    IndexOutOfRange,
    MixedRealStructure,
    NotInjective,
    MalformedShape,
    coh.NoRealStructure,
    models.NotIntegrable,
    models.UnknownModel,
    OSError,
    json.JSONDecodeError,
)

TABLE_KEYS = {
    "bc": ("bott_chern", coh.bott_chern),
    "a": ("aeppli", coh.aeppli),
    "dol": ("dolbeault", coh.dolbeault),
    "dolc": ("conjugate_dolbeault", coh.conjugate_dolbeault),
    "dr": ("de_rham", coh.de_rham),
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args) or 0
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ddx",
        description="Exact cohomology, spectral sequences and zigzag "
        "decompositions of bounded double complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p, repeatable=False):
        if repeatable:
            p.add_argument("--model", action="append", default=[],
                           help="built-in model name (repeatable)")
            p.add_argument("--file", action="append", default=[],
                           help="double-complex JSON file (repeatable)")
        else:
            g = p.add_mutually_exclusive_group(required=True)
            g.add_argument("--model", help="built-in model name")
            g.add_argument("--file", help="double-complex JSON file")

    p = sub.add_parser("validate", help="check the structural identities")
    add_input(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cohomology", help="print cohomology tables")
    add_input(p)
    p.add_argument("--table", default="all",
                   choices=sorted(TABLE_KEYS) + ["all"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("froelicher", help="spectral-sequence pages and filtration")
    add_input(p)
    p.add_argument("--pages", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_froelicher)

    p = sub.add_parser("zigzag", help="decompose into squares and zigzags")
    add_input(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_zigzag)

    p = sub.add_parser("check-ddbar", help="decide the ddbar property")
    add_input(p)
    p.add_argument("--method", default="all",
                   choices=["zigzag", "bc-iso", "hodge", "all"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_ddbar)

    p = sub.add_parser("e1-equiv", help="compare zigzag multisets of two complexes")
    add_input(p, repeatable=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_e1_equiv)

    p = sub.add_parser("op", help="constructors: sum, shift, tensor, quotient")
    op_sub = p.add_subparsers(dest="op", required=True)

    ps = op_sub.add_parser("sum")
    add_input(ps, repeatable=True)
    ps.add_argument("--out")
    ps.set_defaults(func=cmd_op_sum)

    ps = op_sub.add_parser("shift")
    add_input(ps)
    ps.add_argument("--offset", type=int, required=True)
    ps.add_argument("--out")
    ps.set_defaults(func=cmd_op_shift)

    ps = op_sub.add_parser("tensor")
    add_input(ps, repeatable=True)
    ps.add_argument("--out")
    ps.set_defaults(func=cmd_op_tensor)

    ps = op_sub.add_parser("quotient")
    ps.add_argument("--file", required=True, help="morphism JSON file")
    ps.add_argument("--out")
    ps.set_defaults(func=cmd_op_quotient)

    p = sub.add_parser("model", help="built-in models")
    m_sub = p.add_subparsers(dest="model_cmd", required=True)
    ps = m_sub.add_parser("list")
    ps.set_defaults(func=cmd_model_list)
    ps = m_sub.add_parser("emit")
    ps.add_argument("name")
    ps.add_argument("--out")
    ps.set_defaults(func=cmd_model_emit)

    p = sub.add_parser("lie", help="expand a Lie model file into a complex")
    p.add_argument("--file", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lie)

    p = sub.add_parser("poly", help="the inversion coefficient family")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("formula", help="verify the inverse-isomorphism formulas")
    f_sub = p.add_subparsers(dest="formula_cmd", required=True)
    for which in ("projbundle", "blowup"):
        ps = f_sub.add_parser(which)
        ps.add_argument("--rank", type=int, required=True)
        ps.add_argument("--trace", action="store_true")
        ps.add_argument("--json", action="store_true")
        if which == "blowup":
            ps.add_argument("--adjunction", default="standard",
                            choices=sorted(formulas.ADJUNCTION_RULES))
        ps.set_defaults(func=cmd_formula, which=which)

    return parser


# ----------------------------------------------------------------------
# input helpers
# ----------------------------------------------------------------------

def _load_one(model=None, path=None):
    if model is not None:
        return models.builtin(model)
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return serialize.complex_from_obj(obj)


def load_complex(args, validate=True):
    k = _load_one(args.model, args.file)
    if validate:
        _require_valid(k)
    return k


def load_many(args, count=None):
    out = [("model", m) for m in args.model] + [("file", f) for f in args.file]
    if count is not None and len(out) != count:
        raise FormatError(f"expected {count} inputs, got {len(out)}")
    if count is None and not out:
        raise FormatError("expected at least one --model or --file")
    ks = []
    for kind, val in out:
        k = _load_one(val, None) if kind == "model" else _load_one(None, val)
        _require_valid(k)
        ks.append(k)
    return ks


def _require_valid(k):
    report = k.validate()
    if not report.ok:
        raise FormatError(
            "invalid complex: "
            + "; ".join(f"{v.kind} at {v.bidegree}" for v in report.violations)
        )


def emit(args, obj, text=None):
    payload = serialize.dumps(obj)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
        print(f"wrote {out}")
    elif text is not None and not getattr(args, "json", False):
        print(text)
    else:
        sys.stdout.write(payload)


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def cmd_validate(args):
    k = load_complex(args, validate=False)
    report = k.validate()
    if args.json:
        obj = {
            "ok": report.ok,
            "violations": [
                {"kind": v.kind, "p": v.bidegree[0], "q": v.bidegree[1],
                 "detail": v.detail}
                for v in report.violations
            ],
        }
        sys.stdout.write(serialize.dumps(obj))
    else:
        if report.ok:
            print("valid")
        else:
            for v in report.violations:
                print(f"violation: {v.kind} at {v.bidegree}: {v.detail}")
    return 0 if report.ok else 1


def cmd_cohomology(args):
    k = load_complex(args)
    keys = sorted(TABLE_KEYS) if args.table == "all" else [args.table]
    tables = [TABLE_KEYS[key][1](k) for key in keys]
    if args.json:
        sys.stdout.write(
            serialize.dumps({"tables": [serialize.table_to_obj(t) for t in tables]})
        )
    else:
        print("\n\n".join(serialize.render_table(t) for t in tables))


def cmd_froelicher(args):
    k = load_complex(args)
    ss = coh.froelicher(k, r_max=args.pages)
    last = len(ss.pages) - 1 if args.pages is None else min(args.pages, len(ss.pages) - 1)
    if args.json:
        obj = {
            "degenerates_at_e1": ss.degenerates_at_e1,
            "stable_page": ss.stable_page,
            "pages": [
                {
                    "r": r,
                    "dims": [
                        {"p": p, "q": q, "dim": d}
                        for (p, q), d in sorted(ss.pages[r].items())
                    ],
                }
                for r in range(1, last + 1)
            ],
            "hodge_filtration": [
                {"k": kk, "p": p, "dim": d}
                for (kk, p), d in sorted(ss.hodge_filtration.items())
            ],
        }
        if ss.v_spaces is not None:
            obj["v_dims"] = [
                {"p": p, "q": q, "dim": d}
                for (p, q), d in sorted(ss.v_spaces.items())
            ]
        sys.stdout.write(serialize.dumps(obj))
    else:
        blocks = []
        for r in range(1, last + 1):
            blocks.append(serialize.render_bigraded(ss.pages[r], f"page {r}"))
        blocks.append(
            "degenerates at page 1: " + ("YES" if ss.degenerates_at_e1 else "NO")
        )
        print("\n\n".join(blocks))


def cmd_zigzag(args):
    k = load_complex(args)
    dec = zigzags.decompose(k)
    if args.json:
        sys.stdout.write(serialize.dumps(serialize.decomposition_to_obj(dec)))
    else:
        lines = []
        for (p, q), n in sorted(dec.square_count.items()):
            lines.append(f"square at ({p},{q}) x {n}")
        for s, n in sorted(
            dec.zigzag_mults.items(), key=lambda sn: (sn[0].spots, sn[0].arrows)
        ):
            lines.append(f"{s.render()} x {n}")
        if not lines:
            lines.append("(empty complex)")
        print("\n".join(lines))


def cmd_check_ddbar(args):
    k = load_complex(args)
    method = args.method.replace("-", "_")
    verdict = zigzags.is_ddbar(k, method)
    order = {"zigzag": 0, "bc_iso": 1, "hodge": 2}
    names = [
        m.replace("_", "-")
        for m in sorted(verdict.by_method, key=lambda m: order.get(m, 9))
    ]
    if args.json:
        sys.stdout.write(
            serialize.dumps(
                {
                    "ddbar": verdict.value,
                    "methods": {m.replace("_", "-"): v
                                for m, v in verdict.by_method.items()},
                }
            )
        )
    else:
        tail = f"({', '.join(names)} agree)" if len(names) > 1 else f"({names[0]})"
        print(f"ddbar: {'YES' if verdict.value else 'NO'} {tail}")


def cmd_e1_equiv(args):
    a, b = load_many(args, count=2)
    same = zigzags.e1_equivalent(a, b)
    if args.json:
        sys.stdout.write(serialize.dumps({"e1_equivalent": same}))
    else:
        print("e1-equivalent: " + ("YES" if same else "NO"))


def cmd_op_sum(args):
    ks = load_many(args)
    result = direct_sum(ks)
    emit_complex(args, result)


def cmd_op_shift(args):
    k = load_complex(args)
    emit_complex(args, shift_diag(k, args.offset))


def cmd_op_tensor(args):
    a, b = load_many(args, count=2)
    emit_complex(args, tensor(a, b))


def cmd_op_quotient(args):
    with open(args.file, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    f = serialize.morphism_from_obj(obj)
    report = f.validate()
    if not report.ok:
        raise FormatError("morphism does not commute with the differentials")
    emit_complex(args, quotient_by_injection(f))


def emit_complex(args, k):
    payload = serialize.dumps(serialize.complex_to_obj(k))
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
        print(f"wrote {out}")
    else:
        sys.stdout.write(payload)


def cmd_model_list(args):
    for name in models.BUILTIN_NAMES:
        print(name)


def cmd_model_emit(args):
    k = models.builtin(args.name)
    emit_complex(args, k)


def cmd_lie(args):
    with open(args.file, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    model = serialize.lie_model_from_obj(obj)
    emit_complex(args, models.from_lie_model(model))


def cmd_poly(args):
    fam = build_family(args.rank)
    ok = all(
        (str(inversion_sum(fam, k)) == "1") == (k == 0)
        and (inversion_sum(fam, k).is_zero() == (k >= 1))
        for k in range(args.rank)
    )
    if args.json:
        obj = {
            "rank": args.rank,
            "polys": {f"P_{i}": str(p) for i, p in enumerate(fam.polys)},
            "h_identity": ok,
        }
        sys.stdout.write(serialize.dumps(obj))
    else:
        for i in range(args.rank - 1, -1, -1):
            print(f"P_{i} = {fam.polys[i]}")
        print("H-identity: " + ("OK" if ok else "FAILED"))
    return 0 if ok else 1


def cmd_formula(args):
    which = args.which
    if which == "projbundle":
        ok = formulas.verify_projbundle_inverse(args.rank)
        status = "identity" if ok else "fails"
    else:
        status = formulas.blowup_inverse_status(args.rank, args.adjunction)
        ok = status == "identity"
    lines = []
    if args.trace:
        try:
            steps = formulas.expansion_trace(args.rank, which)
        except InvalidRank:
            steps = []
        for i, step in enumerate(steps, 1):
            lines.append(f"step {i} [{step.title}]: {step.detail}")
    if status == "identity":
        lines.append(f"{which} inverse formula at rank {args.rank}: IDENTITY")
    elif status == "blocked":
        lines.append(
            f"{which} inverse formula at rank {args.rank}: BLOCKED "
            "(expansion needs the adjunction rule)"
        )
    else:
        lines.append(f"{which} inverse formula at rank {args.rank}: FAILS")
    if args.json:
        obj = {"which": which, "rank": args.rank, "status": status}
        if args.trace:
            obj["trace"] = [
                {"title": s.title, "detail": s.detail}
                for s in formulas.expansion_trace(args.rank, which)
            ]
        sys.stdout.write(serialize.dumps(obj))
    else:
        print("\n".join(lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
