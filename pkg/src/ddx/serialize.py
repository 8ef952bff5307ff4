"""JSON (de)serialization and deterministic text rendering.

File formats:

* double complex: ``{"spaces": [{"p","q","dim"}], "d1": [{"p","q","matrix"}],
  "d2": [...], "sigma": [...]}`` with row-major matrices of coefficient
  strings; omitted maps are zero.
* morphism: ``{"source": <complex>, "target": <complex>,
  "components": [{"p","q","matrix"}]}``.
* Lie model: ``{"dim": n, "d": {"k": {"20": [{"i","j","c"}],
  "11": [{"i","j","c"}]}}}``; omitted generators are closed.
* tables: ``{"theory": ..., "dims": [{"p","q","dim"}]}`` (bigraded) or
  ``{"theory": "de_rham", "dims": [{"k","dim"}]}``.
"""

from __future__ import annotations

import json

from .gaussrat import parse_gaussrat
from .linalg import ExactMatrix
from .complexes import ComplexMorphism, DoubleComplex
from .models import LieModel
from .zigzags import ZigzagShape


class FormatError(Exception):
    pass


# ----------------------------------------------------------------------
# complexes
# ----------------------------------------------------------------------

def matrix_to_obj(m):
    return [[str(m.entry(i, j)) for j in range(m.cols)] for i in range(m.rows)]


def matrix_from_obj(obj, rows, cols):
    if len(obj) != rows or any(len(r) != cols for r in obj):
        raise FormatError(f"matrix must be {rows}x{cols}")
    try:
        return ExactMatrix.from_rows(
            [[parse_gaussrat(str(v)) for v in row] for row in obj], cols
        )
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def complex_to_obj(k):
    obj = {
        "spaces": [
            {"p": p, "q": q, "dim": n} for (p, q), n in sorted(k.spaces.items())
        ]
    }
    for name, maps, delta in (("d1", k.d1, (1, 0)), ("d2", k.d2, (0, 1))):
        entries = []
        for (p, q), m in sorted(maps.items()):
            entries.append({"p": p, "q": q, "matrix": matrix_to_obj(m)})
        if entries:
            obj[name] = entries
    if k.sigma is not None:
        entries = []
        for (p, q), m in sorted(k.sigma.items()):
            entries.append({"p": p, "q": q, "matrix": matrix_to_obj(m)})
        obj["sigma"] = entries
    return obj


def complex_from_obj(obj):
    if not isinstance(obj, dict) or "spaces" not in obj:
        raise FormatError("complex object needs a 'spaces' list")
    spaces = {}
    for ent in obj["spaces"]:
        try:
            p, q, n = int(ent["p"]), int(ent["q"]), int(ent["dim"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad space entry {ent!r}") from exc
        if n < 0:
            raise FormatError("negative dimension")
        if n:
            spaces[(p, q)] = n

    def read_maps(name, delta):
        out = {}
        for ent in obj.get(name, []):
            try:
                p, q = int(ent["p"]), int(ent["q"])
            except (KeyError, TypeError, ValueError) as exc:
                raise FormatError(f"bad {name} entry {ent!r}") from exc
            src = spaces.get((p, q), 0)
            tgt = spaces.get((p + delta[0], q + delta[1]), 0)
            if src == 0 or tgt == 0:
                raise FormatError(f"{name} at ({p},{q}) references a zero space")
            out[(p, q)] = matrix_from_obj(ent.get("matrix", []), tgt, src)
        return out

    d1 = read_maps("d1", (1, 0))
    d2 = read_maps("d2", (0, 1))
    sigma = None
    if "sigma" in obj:
        sigma = {}
        for ent in obj["sigma"]:
            p, q = int(ent["p"]), int(ent["q"])
            src = spaces.get((p, q), 0)
            tgt = spaces.get((q, p), 0)
            if src == 0:
                raise FormatError(f"sigma at ({p},{q}) references a zero space")
            sigma[(p, q)] = matrix_from_obj(ent.get("matrix", []), tgt, src)
    return DoubleComplex(spaces, d1, d2, sigma)


def morphism_from_obj(obj):
    if not isinstance(obj, dict) or "source" not in obj or "target" not in obj:
        raise FormatError("morphism object needs 'source' and 'target'")
    src = complex_from_obj(obj["source"])
    tgt = complex_from_obj(obj["target"])
    comps = {}
    for ent in obj.get("components", []):
        p, q = int(ent["p"]), int(ent["q"])
        comps[(p, q)] = matrix_from_obj(
            ent.get("matrix", []), tgt.dim(p, q), src.dim(p, q)
        )
    return ComplexMorphism(src, tgt, comps)


# ----------------------------------------------------------------------
# Lie models
# ----------------------------------------------------------------------

def lie_model_from_obj(obj):
    if not isinstance(obj, dict) or "dim" not in obj:
        raise FormatError("lie model object needs 'dim'")
    n = int(obj["dim"])
    d20 = {}
    d11 = {}
    for key, ent in (obj.get("d") or {}).items():
        k = int(key)
        terms20 = []
        for t in ent.get("20", []):
            terms20.append((int(t["i"]), int(t["j"]), parse_gaussrat(str(t["c"]))))
        terms11 = []
        for t in ent.get("11", []):
            terms11.append((int(t["i"]), int(t["j"]), parse_gaussrat(str(t["c"]))))
        if terms20:
            d20[k] = terms20
        if terms11:
            d11[k] = terms11
    try:
        return LieModel(n, d20, d11)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def lie_model_to_obj(model):
    d = {}
    for k in sorted(set(model.d20) | set(model.d11)):
        ent = {}
        if k in model.d20:
            ent["20"] = [
                {"i": i, "j": j, "c": str(c)} for i, j, c in model.d20[k]
            ]
        if k in model.d11:
            ent["11"] = [
                {"i": i, "j": j, "c": str(c)} for i, j, c in model.d11[k]
            ]
        d[str(k)] = ent
    return {"dim": model.n, "d": d}


# ----------------------------------------------------------------------
# tables, decompositions, reports
# ----------------------------------------------------------------------

def table_to_obj(table):
    if table.theory == "de_rham":
        dims = [{"k": k, "dim": d} for k, d in sorted(table.dims.items())]
    else:
        dims = [
            {"p": p, "q": q, "dim": d} for (p, q), d in sorted(table.dims.items())
        ]
    return {"theory": table.theory, "dims": dims}


def render_bigraded(dims, title):
    """Aligned text grid over the support rectangle (q rows descending)."""
    if not dims:
        return f"{title}: all zero"
    ps = sorted({p for p, _ in dims})
    qs = sorted({q for _, q in dims})
    pmin, pmax = ps[0], ps[-1]
    qmin, qmax = qs[0], qs[-1]
    cells = {}
    width = 1
    for p in range(pmin, pmax + 1):
        for q in range(qmin, qmax + 1):
            s = str(dims.get((p, q), 0))
            cells[(p, q)] = s
            width = max(width, len(s))
    head_w = max(len(str(q)) for q in (qmin, qmax))
    width = max(width, *(len(str(p)) for p in range(pmin, pmax + 1)))
    lines = [title]
    header = " " * head_w + " |" + "".join(
        f" {str(p).rjust(width)}" for p in range(pmin, pmax + 1)
    )
    lines.append(header)
    lines.append("-" * len(header))
    for q in range(qmax, qmin - 1, -1):
        row = str(q).rjust(head_w) + " |" + "".join(
            f" {cells[(p, q)].rjust(width)}" for p in range(pmin, pmax + 1)
        )
        lines.append(row)
    return "\n".join(lines)


def render_table(table):
    if table.theory == "de_rham":
        lines = ["de_rham (by total degree)"]
        for k, d in sorted(table.dims.items()):
            lines.append(f"  H^{k}: {d}")
        if len(lines) == 1:
            lines.append("  (zero)")
        return "\n".join(lines)
    return render_bigraded(table.dims, table.theory)


def shape_to_obj(shape):
    return {
        "spots": [[p, q] for p, q in shape.spots],
        "arrows": [[i, d] for i, d in shape.arrows],
    }


def shape_from_obj(obj):
    try:
        spots = [(int(p), int(q)) for p, q in obj["spots"]]
        arrows = [(int(i), str(d)) for i, d in obj.get("arrows", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad shape object {obj!r}") from exc
    shape = ZigzagShape(spots, arrows)
    shape.check()
    return shape


def decomposition_to_obj(dec):
    return {
        "squares": [
            {"p": p, "q": q, "count": n}
            for (p, q), n in sorted(dec.square_count.items())
        ],
        "zigzags": [
            {"shape": shape_to_obj(s), "mult": n, "render": s.render()}
            for s, n in sorted(
                dec.zigzag_mults.items(), key=lambda sn: (sn[0].spots, sn[0].arrows)
            )
        ],
        "total_dim": dec.total_dim,
    }


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
