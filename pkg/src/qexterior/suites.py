"""Named randomized property suites driven by the CLI ``check`` command.

Each suite runs ``trials`` seeded random cases of one family of exact
identities and reports the first failing witness, if any.  All suites are
exact: a single mismatching coefficient is a failure.
"""

from __future__ import annotations

from fractions import Fraction

from .calculus import (dolbeault_operators, exterior_d, frame_formula_d,
                       koszul_delta, quantum_d, stokes_check)
from .chern import (QConnection, char_form, covariant_square_check,
                    quantum_curvature)
from .coeffs import FourierCoeff
from .equivariant import (EquivariantElement, GroupAction,
                          anticommutator_check, cartan_d)
from .forms import HForm
from .lefschetz import commutator_check, lefschetz_d_commutators
from .models import PoissonModel, TORUS
from .quantum import qwedge, wwedge
from .sampling import Sampler


class SuiteResult:
    def __init__(self, name: str, trials: int):
        self.name = name
        self.trials = trials
        self.checked = 0
        self.failures = []

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, witness: dict):
        self.failures.append(witness)

    def to_json(self):
        return {"suite": self.name, "trials": self.checked,
                "status": "pass" if self.ok else "fail",
                "failures": self.failures[:5]}


def _product_triple(model, s: Sampler, dim):
    w = s.antisymmetric_bivector(dim)
    forms = [s.ext_form(dim, degree=s.rng.randint(0, dim), h_max=1)
             for _ in range(3)]
    return w, forms


def suite_associativity(model, trials, s: Sampler) -> SuiteResult:
    res = SuiteResult("associativity", trials)
    for t in range(trials):
        dim = (model.dim if model is not None else s.rng.randint(2, 8))
        w, (a, b, c) = _product_triple(model, s, dim)
        lhs = qwedge(qwedge(a, b, w), c, w)
        rhs = qwedge(a, qwedge(b, c, w), w)
        res.checked += 1
        if lhs != rhs:
            res.fail({"trial": t, "dim": dim, "a": str(a), "b": str(b),
                      "c": str(c), "w": str(w.entries)})
    return res


def suite_supercommutativity(model, trials, s: Sampler) -> SuiteResult:
    res = SuiteResult("supercommutativity", trials)
    for t in range(trials):
        dim = (model.dim if model is not None else s.rng.randint(2, 8))
        w = s.antisymmetric_bivector(dim)
        da, db = s.rng.randint(0, dim), s.rng.randint(0, dim)
        a = s.ext_form(dim, degree=da, h_max=1)
        b = s.ext_form(dim, degree=db, h_max=1)
        lhs = qwedge(a, b, w)
        rhs = qwedge(b, a, w)
        if (da * db) % 2:
            rhs = -rhs
        res.checked += 1
        if lhs != rhs:
            res.fail({"trial": t, "dim": dim, "a": str(a), "b": str(b)})
    return res


def suite_normalization(model, trials, s: Sampler) -> SuiteResult:
    """e^i ^_w e^j == e^i ^ e^j + w^ij for all pairs, dims <= 6."""
    res = SuiteResult("normalization", trials)
    for dim in range(2, 7):
        w = s.antisymmetric_bivector(dim)
        for i in range(1, dim + 1):
            for j in range(1, dim + 1):
                ei, ej = HForm.basis(dim, i), HForm.basis(dim, j)
                got = wwedge(ei, ej, w)
                expect = (ei ^ ej) + HForm.scalar(dim, w.entry(i, j)) \
                    if w.entry(i, j) else (ei ^ ej)
                res.checked += 1
                if got != expect:
                    res.fail({"dim": dim, "i": i, "j": j, "got": str(got)})
    return res


def _koszul_models(s: Sampler):
    return [s.jacobi_model("constant"), s.jacobi_model("so3"),
            s.jacobi_model("decomposable")]


def suite_koszul(model, trials, s: Sampler) -> SuiteResult:
    res = SuiteResult("koszul", trials)
    models = [model] if model is not None else _koszul_models(s)
    t = 0
    while t < trials:
        for m in models:
            a = s.model_form(m)
            dd = koszul_delta(koszul_delta(a, m), m)
            anti = exterior_d(koszul_delta(a, m)) + koszul_delta(exterior_d(a), m)
            res.checked += 1
            if dd or anti:
                res.fail({"trial": t, "model": repr(m), "form": str(a)})
            t += 1
            if t >= trials:
                break
    return res


def suite_leibniz(model, trials, s: Sampler) -> SuiteResult:
    res = SuiteResult("leibniz", trials)
    models = [model] if model is not None else \
        [s.jacobi_model("constant"), s.jacobi_model("so3")]
    t = 0
    while t < trials:
        for m in models:
            da = s.rng.randint(0, m.dim)
            a = s.model_form(m, degree=da)
            b = s.model_form(m, degree=s.rng.randint(0, m.dim))
            lhs = quantum_d(qwedge(a, b, m.w), m)
            sign = Fraction(-1 if da % 2 else 1)
            rhs = qwedge(quantum_d(a, m), b, m.w) + \
                qwedge(a, quantum_d(b, m), m.w) * sign
            d2 = quantum_d(quantum_d(a, m), m)
            res.checked += 1
            if lhs != rhs or d2:
                res.fail({"trial": t, "model": repr(m), "a": str(a), "b": str(b)})
            t += 1
            if t >= trials:
                break
    return res


def suite_frame(model, trials, s: Sampler) -> SuiteResult:
    res = SuiteResult("frame", trials)
    m = model if model is not None else PoissonModel.darboux_torus(2)
    if not m.is_constant_w():
        raise ValueError("frame suite needs a constant bivector")
    for t in range(trials):
        a = s.model_form(m)
        res.checked += 1
        if frame_formula_d(a, m) != quantum_d(a, m):
            res.fail({"trial": t, "form": str(a)})
    return res


def suite_stokes(model, trials, s: Sampler) -> SuiteResult:
    res = SuiteResult("stokes", trials)
    models = [model] if model is not None else \
        [PoissonModel.darboux_torus(1), PoissonModel.darboux_torus(2)]
    t = 0
    while t < trials:
        for m in models:
            a = s.model_form(m)
            res.checked += 1
            if not stokes_check(a, m):
                res.fail({"trial": t, "model": repr(m), "form": str(a)})
            t += 1
            if t >= trials:
                break
    return res


def suite_dolbeault(model, trials, s: Sampler) -> SuiteResult:
    res = SuiteResult("dolbeault", trials)
    m = model if model is not None else \
        PoissonModel.darboux_torus(1, complex_structure=True)
    if not m.complex_structure:
        raise ValueError("dolbeault suite needs a complex structure")
    for t in range(trials):
        a = s.complexified_model_form(m)
        ops = dolbeault_operators(a, m)
        ok = not dolbeault_operators(ops.holo_h, m).holo_h
        ok = ok and not dolbeault_operators(ops.antiholo_h, m).antiholo_h
        mixed = dolbeault_operators(ops.holo_h, m).antiholo_h + \
            dolbeault_operators(ops.antiholo_h, m).holo_h
        ok = ok and not mixed
        rebuilt = ops.holo_h + ops.antiholo_h
        ok = ok and rebuilt == ops.holo + ops.antiholo - \
            (ops.delta_0m1 + ops.delta_m10).h_shift(1)
        res.checked += 1
        if not ok:
            res.fail({"trial": t, "form": str(a)})
    return res


def suite_frobenius(model, trials, s: Sampler) -> SuiteResult:
    res = SuiteResult("frobenius", trials)
    from .linalg import det as _det
    from .quantum import frobenius_pairing, gram_matrix
    for t in range(trials):
        dim = s.rng.randint(2, 6)
        w = s.antisymmetric_bivector(dim)
        a = s.ext_form(dim, degree=s.rng.randint(0, dim))
        b = s.ext_form(dim, degree=s.rng.randint(0, dim))
        c = s.ext_form(dim, degree=s.rng.randint(0, dim))
        lhs = frobenius_pairing(wwedge(a, b, w), c, w)
        rhs = frobenius_pairing(a, wwedge(b, c, w), w)
        res.checked += 1
        if lhs != rhs:
            res.fail({"trial": t, "dim": dim})
    for dim in range(2, 5):
        g = gram_matrix(s.antisymmetric_bivector(dim))
        res.checked += 1
        if not _det([[Fraction(x) for x in row] for row in g]):
            res.fail({"gram_dim": dim})
    return res


def suite_lefschetz(model, trials, s: Sampler) -> SuiteResult:
    res = SuiteResult("lefschetz", trials)
    for n in (1, 2):
        rep = commutator_check(n)
        res.checked += 1
        if not rep.ok:
            res.fail({"n": n, "identities": [k for k, v in rep.results.items()
                                             if not v]})
    m = model if model is not None and model.omega is not None \
        else PoissonModel.darboux_torus(1)
    forms = [s.model_form(m, laurent=True) for _ in range(max(1, trials // 2))]
    rep = lefschetz_d_commutators(m, forms)
    res.checked += len(forms)
    if not rep.ok:
        res.fail({"identities": [k for k, v in rep.results.items() if not v]})
    return res


def suite_chern(model, trials, s: Sampler) -> SuiteResult:
    res = SuiteResult("chern", trials)
    m = model if model is not None else PoissonModel.darboux_torus(1)
    if m.kind != TORUS:
        raise ValueError("chern suite runs on torus models")
    for t in range(trials):
        rank = s.rng.randint(1, 3)
        theta = [[s.model_form(m, degree=1, h_max=0) for _ in range(rank)]
                 for _ in range(rank)]
        conn = QConnection(m, theta)
        phi = [s.model_form(m, degree=s.rng.randint(0, 2), h_max=0)
               for _ in range(rank)]
        ok = covariant_square_check(phi, conn)
        F = quantum_curvature(conn)
        for k in (1, 2):
            ok = ok and not quantum_d(char_form(F, k, m), m)
        res.checked += 1
        if not ok:
            res.fail({"trial": t, "rank": rank})
    return res


def suite_equivariant(model, trials, s: Sampler) -> SuiteResult:
    res = SuiteResult("equivariant", trials)
    m = model if model is not None else PoissonModel.darboux_torus(1)
    action = GroupAction(m, [[Fraction(1)] + [Fraction(0)] * (m.dim - 1)])
    forms = [s.model_form(m) for _ in range(max(1, trials // 2))]
    rep = anticommutator_check(action, forms)
    res.checked += len(forms)
    if not rep.ok:
        res.fail({"anticommutator_failures": len(rep.failures)})
    for t in range(max(1, trials // 4)):
        c = s.fourier_coeff(m.dim, span=1)
        invariant_part = {k: v for k, v in c.terms.items() if k[0] == 0}
        cinv = FourierCoeff(m.dim, invariant_part)
        form = HForm(m.dim, {(s.rng.randint(0, 1),
                              s.mask(m.dim, s.rng.randint(0, m.dim))): cinv}) \
            if cinv else m.form_scalar(1)
        elem = EquivariantElement(m, 1, {(s.rng.randint(0, 2),): form})
        res.checked += 1
        if cartan_d(cartan_d(elem, action), action):
            res.fail({"trial": t, "D2": "nonzero"})
    return res


SUITES = {
    "associativity": suite_associativity,
    "supercommutativity": suite_supercommutativity,
    "normalization": suite_normalization,
    "koszul": suite_koszul,
    "leibniz": suite_leibniz,
    "frame": suite_frame,
    "stokes": suite_stokes,
    "dolbeault": suite_dolbeault,
    "frobenius": suite_frobenius,
    "lefschetz": suite_lefschetz,
    "chern": suite_chern,
    "equivariant": suite_equivariant,
}


def suite_negative_control(model, trials, s: Sampler) -> SuiteResult:
    """Deliberately broken product (sign flipped on the h-correction);
    exists to demonstrate witness reporting.  Not listed in SUITES."""
    res = SuiteResult("negative-control", trials)
    for t in range(trials):
        dim = s.rng.randint(2, 4)
        w = s.antisymmetric_bivector(dim)
        w.entries[(1, 2)] = s.nonzero_fraction()
        a = HForm.basis(dim, 1) * s.nonzero_fraction()
        b = HForm.basis(dim, 2) * s.nonzero_fraction()
        good = qwedge(a, b, w)
        corrupted = (a ^ b) - (good - (a ^ b))
        res.checked += 1
        if corrupted != good:
            res.fail({"trial": t, "dim": dim, "witness": str(corrupted - good)})
    return res


def run_suite(name: str, model, trials: int, seed: int):
    s = Sampler(seed)
    if name == "negative-control":
        return suite_negative_control(model, trials, s)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](model, trials, s)
