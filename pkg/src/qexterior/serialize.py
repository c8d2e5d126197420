"""JSON (and LaTeX) encoding of engine objects.

Wire formats:

* scalars: rationals as "p/q" strings, Gaussian rationals as
  {"re": "p/q", "im": "r/s"}; h-polynomials as [[exponent, scalar], ...];
* forms: [{"indices": [i1 < .. < ik], "h": j, "coeff": <scalar|coeff>}, ...];
* coefficient functions: {"poly": [[[e1..em], scalar], ...]} or
  {"fourier": [[[k1..km], scalar], ...]};
* models: {"space": "torus"|"affine", "dim": m,
  "bivector": [[i, j, coeff], ...], "symplectic": "darboux"|matrix,
  "complex": bool};
* actions: {"generators": [[c1..cm], ...]};
* connections: {"rank": r, "theta": [[form, ...], ...]};
* tables: per degree {"rank": r, "torsion": [...], "reps": [form-like]}.

Every report embeds the convention block and the PRNG name, making output
bytes a pure function of (command, config, seed).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .coeffs import FourierCoeff, PolyCoeff, coeff_from_json, coeff_to_json
from .forms import Bivector, HForm, mask_indices
from .hpoly import HLaurent, hpoly_to_json
from .models import AFFINE, TORUS, PoissonModel, darboux_matrix
from .sampling import PRNG_NAME

CONVENTIONS = {
    "product_normalization": "e^i ^_w e^j = e^i ^ e^j + w^ij",
    "bivector_contraction": "w |- a = sum_{i<j} w^ij a(e_i, e_j, ...)",
    "koszul_delta": "delta = d o (w |-) - (w |-) o d",
    "quantum_differential": "d_h = d - h*delta",
    "symplectic_star": "b ^ *a = Lambda^k(w)(b, a) omega^n/n! with the "
                       "dual bivector -Omega^{-1}; *h = h^{-1}",
    "lefschetz_calibration": "L_h uses W = Omega^{-1} (M_h acts by +n on "
                             "degree-1 elements)",
    "torus_volume": "1",
    "prng": PRNG_NAME,
}


def form_to_json(a: HForm):
    out = []
    for (j, mask) in sorted(a.terms, key=lambda k: (k[1].bit_count(), k[1], k[0])):
        out.append({"indices": mask_indices(mask), "h": j,
                    "coeff": coeff_to_json(a.terms[(j, mask)])})
    return out


def form_from_json(obj, model: PoissonModel, laurent: bool = False) -> HForm:
    terms = {}
    for item in obj:
        mask = 0
        for i in item["indices"]:
            mask |= 1 << (int(i) - 1)
        coeff = coeff_from_json(item["coeff"], model.dim)
        if not hasattr(coeff, "partial"):
            coeff = model.coeff_const(coeff)
        key = (int(item.get("h", 0)), mask)
        terms[key] = terms.get(key, 0) + coeff
    return HForm(model.dim, terms, laurent)


def model_to_json(model: PoissonModel):
    biv = [[i, j, coeff_to_json(w)] for (i, j), w in
           sorted(model.w.entries.items())]
    out = {"space": model.kind, "dim": model.dim, "bivector": biv,
           "complex": model.complex_structure}
    if model.omega is not None:
        out["symplectic"] = [[str(x) for x in row] for row in model.omega]
    return out


def model_from_json(obj) -> PoissonModel:
    kind = obj.get("space")
    if kind not in (AFFINE, TORUS):
        raise ValueError(f"unknown space {kind!r}")
    dim = int(obj["dim"])
    entries = {}
    for item in obj.get("bivector", []):
        i, j, coeff = int(item[0]), int(item[1]), item[2]
        c = coeff_from_json(coeff, dim)
        cls = PolyCoeff if kind == AFFINE else FourierCoeff
        if not hasattr(c, "partial"):
            c = cls.const(dim, c)
        elif not isinstance(c, cls):
            raise ValueError("bivector coefficient class does not match "
                             "the space kind")
        entries[(i, j)] = c
    symp = obj.get("symplectic")
    if symp == "darboux":
        if dim % 2:
            raise ValueError("darboux needs even dimension")
        symp = darboux_matrix(dim // 2)
        if not entries:
            from .forms import matrix_inverse
            dual = matrix_inverse(symp)
            cls = PolyCoeff if kind == AFFINE else FourierCoeff
            entries = {(i + 1, j + 1): cls.const(dim, dual[i][j])
                       for i in range(dim) for j in range(i + 1, dim)
                       if dual[i][j]}
    elif symp is not None:
        symp = [[Fraction(x) for x in row] for row in symp]
    w = Bivector(dim, entries)
    return PoissonModel(kind, dim, w, symplectic=symp,
                        complex_structure=bool(obj.get("complex", False)))


def action_from_json(obj, model: PoissonModel):
    from .equivariant import GroupAction
    gens = []
    for row in obj.get("generators", []):
        gens.append([coeff_from_json(c, model.dim) for c in row])
    return GroupAction(model, gens)


def connection_from_json(obj, model: PoissonModel):
    from .chern import QConnection
    rank = int(obj["rank"])
    theta = obj["theta"]
    if len(theta) != rank:
        raise ValueError("theta does not match rank")
    mat = [[form_from_json(cell, model) for cell in row] for row in theta]
    return QConnection(model, mat)


def _ring_name(ring):
    return "laurent" if ring is HLaurent else "polynomial"


def _rep_to_jsonable(labels, vec):
    out = []
    for lab, coeff in zip(labels, vec):
        if coeff.is_zero():
            continue
        if isinstance(lab, int):
            label = {"indices": mask_indices(lab)}
        elif isinstance(lab, tuple) and len(lab) == 2 and isinstance(lab[0], int):
            label = {"h": lab[0], "indices": mask_indices(lab[1])}
        elif isinstance(lab, tuple) and len(lab) == 3:
            label = {"theta": list(lab[0]), "h": lab[1],
                     "indices": mask_indices(lab[2])}
        elif isinstance(lab, tuple) and len(lab) == 2:
            label = {"mode": list(lab[0]), "label": str(lab[1])}
        else:
            label = {"label": str(lab)}
        out.append({"basis": label, "coeff": hpoly_to_json(coeff)})
    return out


def table_to_json(table):
    degrees = []
    for deg in table.degrees():
        e = table.entries[deg]
        degrees.append({
            "degree": list(deg) if isinstance(deg, tuple) else deg,
            "rank": e.free_rank,
            "torsion": [str(t) for t in e.torsion],
            "reps": [_rep_to_jsonable(e.labels, vec)
                     for vec in e.representatives],
        })
    meta = {}
    for k, v in table.meta.items():
        if k == "anomalous_modes":
            meta[k] = [{"mode": list(d["mode"]), **{kk: vv for kk, vv in d.items()
                                                    if kk != "mode"}}
                       for d in v]
        elif k == "modes":
            meta[k] = [list(m) for m in v]
        elif k == "graded_dims":
            meta[k] = {str(kk): vv for kk, vv in v.items()}
        else:
            meta[k] = v
    return {"table": degrees, "meta": meta, "conventions": CONVENTIONS}


def table_to_latex(table) -> str:
    lines = [r"\begin{tabular}{lll}",
             r"degree & rank & torsion \\ \hline"]
    for deg in table.degrees():
        e = table.entries[deg]
        tor = ", ".join(str(t) for t in e.torsion) or "--"
        lines.append(f"{deg} & {e.free_rank} & {tor} " + r"\\")
    lines.append(r"\end{tabular}")
    return "\n".join(lines)


def spectrum_to_json(report, conformance=None):
    poly = report.charpoly
    out = {
        "size": report.size,
        "charpoly": [[j, str(poly.coeffs[j])] for j in sorted(poly.coeffs)],
        "factors": {
            "rational_roots": {str(r): m for r, m in
                               sorted(report.factorization.rational_roots.items())},
            "quadratics": [{"b": str(b), "c": str(c), "multiplicity": m}
                           for (b, c), m in
                           sorted(report.factorization.quadratics.items())],
            "unfactored": str(report.factorization.remainder),
        },
        "eigenspaces": report.eigen_summary(),
        "diagonalizable": report.diagonalizable,
        "det": str(report.det),
        "invertible": report.invertible,
    }
    if conformance is not None:
        out["paper_conformance"] = conformance["status"]
        out["conformance_issues"] = conformance["issues"]
    return out


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
