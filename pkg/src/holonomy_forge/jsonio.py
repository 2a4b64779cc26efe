"""Canonical JSON encoding of every artifact.

Rationals are "p" / "p/q" strings, exponent vectors integer arrays,
matrices row-major arrays of strings, wedge vectors maps keyed "a^b"
with a < b.  Dumps sort keys, so identical inputs give byte-identical
output.
"""

import json

from .rationals import qof, qstr
from .poly import MultiPoly
from .linalg import Matrix
from .ambient import ValidationError, matrix_to_seven_tuple
from .metrics import MetricModel


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def q_to_json(x):
    return qstr(qof(x))


def matrix_to_json(m):
    return [[qstr(x) for x in row] for row in m.rows]


def matrix_from_json(data):
    return Matrix([[qof(x) for x in row] for row in data])


def poly_to_json(p):
    terms = []
    for e in sorted(p.terms):
        terms.append([list(e), qstr(p.terms[e])])
    return {"dim": p.dim, "terms": terms}


def poly_from_json(data):
    p = MultiPoly(data["dim"])
    for e, c in data["terms"]:
        p.terms[tuple(e)] = qof(c)
    return p


def seven_tuple_to_json(t):
    return {
        "a1": qstr(t.a1),
        "a2": qstr(t.a2),
        "B": matrix_to_json(t.B),
        "C": matrix_to_json(t.C),
        "z1": [qstr(x) for x in t.z1],
        "z2": [qstr(x) for x in t.z2],
        "c": qstr(t.c),
    }


def algebra_to_json(alg):
    basis = []
    for b in alg.basis:
        t = matrix_to_seven_tuple(b, alg.n)
        basis.append({
            "matrix": matrix_to_json(b),
            "seven_tuple": seven_tuple_to_json(t) if t is not None else None,
        })
    out = {"n": alg.n, "dim": alg.dim, "basis": basis}
    if alg.tag:
        out["family"] = alg.tag
    return out


def algebra_from_json(data):
    from .liealg import LieAlgebra

    if "n" not in data or "basis" not in data:
        raise ValidationError("algebra JSON must have 'n' and 'basis'")
    n = data["n"]
    mats = []
    for entry in data["basis"]:
        raw = entry["matrix"] if isinstance(entry, dict) else entry
        mats.append(matrix_from_json(raw))
    return LieAlgebra(n, mats, tag=data.get("family"))


def subspace_to_json(s):
    return {"ambient": s.ambient, "dim": s.dim,
            "basis": [[qstr(x) for x in row] for row in s.basis]}


def wedge_vector_to_json(coords, pairs):
    out = {}
    for (a, b), c in zip(pairs, coords):
        c = qof(c)
        if c != 0:
            out["%d^%d" % (a, b)] = qstr(c)
    return out


def metric_to_json(model):
    from .families import spec_to_json

    D = model.D
    gmap = {}
    for a in range(D):
        for b in range(a, D):
            p = model.g[a][b]
            if p:
                gmap["%d,%d" % (a + 1, b + 1)] = poly_to_json(p)
    out = {
        "n": model.n,
        "f1": poly_to_json(model.f1),
        "f2": poly_to_json(model.f2),
        "f3": poly_to_json(model.f3),
        "u": {str(i): poly_to_json(p) for i, p in sorted(model.u.items()) if p},
        "g": gmap,
    }
    if model.spec is not None:
        out["family_spec"] = spec_to_json(model.spec)
    return out


def metric_from_json(data):
    from .families import spec_from_json

    n = data["n"]
    D = 2 * n + 4
    zero = MultiPoly.zero(D)
    g = [[zero for _ in range(D)] for _ in range(D)]
    for key, pj in data["g"].items():
        a, b = (int(x) for x in key.split(","))
        p = poly_from_json(pj)
        g[a - 1][b - 1] = p
        if a != b:
            g[b - 1][a - 1] = p
    spec = spec_from_json(data["family_spec"]) if "family_spec" in data else None
    model = MetricModel(
        n=n,
        f1=poly_from_json(data["f1"]),
        f2=poly_from_json(data["f2"]),
        f3=poly_from_json(data["f3"]),
        u={int(i): poly_from_json(p) for i, p in data.get("u", {}).items()},
        g=g,
        spec=spec,
    )
    return model


def verdict_to_json(v):
    out = {"status": v.status, "log": v.log}
    if v.witness is not None:
        out["witness"] = subspace_to_json(v.witness)
    if v.certificate is not None:
        out["certificate"] = v.certificate
    return out


def curvature_map_to_json(cm):
    from .ambient import wedge_calculus

    pairs = wedge_calculus(cm.algebra.n).pairs
    out = {}
    for (a, b), coeffs in zip(pairs, cm.values):
        if any(x != 0 for x in coeffs):
            out["%d^%d" % (a, b)] = [qstr(x) for x in coeffs]
    return out


def berger_report_to_json(rep):
    return {
        "dim_R": rep["dim_R"],
        "dim_L": rep["dim_L"],
        "dim_g": rep["dim_g"],
        "berger": rep["berger"],
        "defect": [matrix_to_json(m) for m in rep["defect"]],
        "curvature_basis": [curvature_map_to_json(cm) for cm in rep["maps"]],
    }


def holonomy_report_to_json(rep):
    out = {
        "n": rep.n,
        "dim": rep.dim,
        "orders_used": rep.orders_used,
        "stabilized": rep.stabilized,
        "cap": rep.cap,
        "dims_per_order": rep.dims_per_order,
        "new_generators_per_order": rep.new_generators_per_order,
        "basis": [[qstr(x) for x in row] for row in rep.span.basis],
        "generators": [
            {"order": order, "frame_indices": list(suffix), "matrix": matrix_to_json(M)}
            for order, suffix, M in rep.generators
        ],
    }
    if rep.verdict is not None:
        out["verdict"] = comparison_to_json(rep.verdict)
    return out


def comparison_to_json(v):
    return {
        "relation": v["relation"],
        "dim_computed": v["dim_computed"],
        "dim_target": v["dim_target"],
        "defect_in_target_only": [matrix_to_json(m) for m in v["defect_in_target_only"]],
        "defect_in_computed_only": [matrix_to_json(m) for m in v["defect_in_computed_only"]],
    }
