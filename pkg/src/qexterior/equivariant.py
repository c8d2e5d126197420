"""Quantum Cartan model for compact torus actions preserving the bivector.

Actions are generated by commuting vector fields X_a = sum_j c_a^j d_j
(constant coefficients for torus translations, linear coefficients for
rotations on affine models) that preserve w: L_{X_a} w = 0, checked
symbolically.  Dual generators Theta^a carry degree 2; the differential is

    D = d_h + Theta^a iota_a

on invariant elements of S(g*) (x) Omega(M)[h], and D^2 = 0 follows from
delta iota_a + iota_a delta = -iota_{L_a w} = 0 (sign-robust, verified by
:func:`anticommutator_check` on arbitrary forms when w is preserved).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .calculus import koszul_delta, lie_derivative, quantum_d
from .coeffs import FourierCoeff
from .complexes import CohomologyTable, DegreeHomology, FiniteComplex, complex_homology
from .forms import HForm, contract_front
from .hpoly import HPoly
from .models import PoissonModel, TORUS


class GroupAction:
    """Commuting generators acting on a model and preserving its bivector."""

    def __init__(self, model: PoissonModel, generators, check: bool = True):
        self.model = model
        self.generators = []
        for gen in generators:
            if len(gen) != model.dim:
                raise ValueError("generator has wrong number of components")
            comps = []
            for c in gen:
                if not hasattr(c, "partial"):
                    c = model.coeff_const(c)
                comps.append(c)
            self.generators.append(comps)
        if check:
            self._check_commuting()
            self._check_preserves_w()

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def _check_commuting(self):
        for a in range(self.n_generators):
            for b in range(a + 1, self.n_generators):
                X, Y = self.generators[a], self.generators[b]
                for j in range(self.model.dim):
                    bracket = 0
                    for i in range(self.model.dim):
                        t1 = X[i] * Y[j].partial(i + 1)
                        t2 = Y[i] * X[j].partial(i + 1)
                        bracket = bracket + t1 - t2
                    if bracket:
                        raise ValueError(f"generators {a} and {b} do not commute")

    def _check_preserves_w(self):
        for a, X in enumerate(self.generators):
            res = lie_bivector(X, self.model)
            if res:
                raise ValueError(f"generator {a} does not preserve w: "
                                 f"residual at {res}")

    def is_translation(self) -> bool:
        return self.model.kind == TORUS and all(
            c.is_constant() for gen in self.generators for c in gen)

    def translation_vector(self, a: int):
        return [c.constant_value() for c in self.generators[a]]

    def is_invariant_form(self, x: HForm) -> bool:
        return all(not lie_derivative(gen, x) for gen in self.generators)


def lie_bivector(X, model: PoissonModel):
    """First nonzero component of L_X w, or None if preserved.

    (L_X w)^{ij} = X(w^{ij}) - (d_k X^i) w^{kj} - (d_k X^j) w^{ik}.
    """
    m = model.dim
    w = model.w
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            res = 0
            for k in range(1, m + 1):
                wij = w.entry(i, j)
                if wij:
                    res = res + X[k - 1] * wij.partial(k)
                wkj = w.entry(k, j)
                if wkj:
                    res = res - X[i - 1].partial(k) * wkj
                wik = w.entry(i, k)
                if wik:
                    res = res - X[j - 1].partial(k) * wik
            if res:
                return (i, j, res)
    return None


def contract_generator(a: int, x: HForm, action: GroupAction) -> HForm:
    """iota_a: contraction by the generating vector field X_a."""
    if not 0 <= a < action.n_generators:
        raise IndexError(f"generator index {a} out of range")
    out = HForm.zero(x.dim, x.laurent)
    for j, c in enumerate(action.generators[a], start=1):
        if c:
            out = out + contract_front(j, x) * c
    return out


class EquivariantElement:
    """Map from Theta-monomials to model forms; Theta^a has degree 2."""

    def __init__(self, model: PoissonModel, n_generators: int, terms=None):
        self.model = model
        self.n_generators = n_generators
        data = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, form in items:
                key = tuple(int(e) for e in key)
                if len(key) != n_generators or any(e < 0 for e in key):
                    raise ValueError(f"bad Theta exponent {key}")
                if form:
                    if key in data:
                        data[key] = data[key] + form
                        if not data[key]:
                            del data[key]
                    else:
                        data[key] = form
        self.terms = data

    @classmethod
    def from_form(cls, model, n_generators, form: HForm):
        return cls(model, n_generators, {(0,) * n_generators: form})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, EquivariantElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for key, form in other.terms.items():
            s = out.get(key)
            s = form if s is None else s + form
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return EquivariantElement(self.model, self.n_generators, out)

    def __neg__(self):
        return EquivariantElement(self.model, self.n_generators,
                                  {k: -f for k, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def total_degrees(self):
        degs = set()
        for key, form in self.terms.items():
            base = 2 * sum(key)
            for (j, mask) in form.terms:
                degs.add(base + 2 * j + mask.bit_count())
        return degs

    def is_invariant(self, action: GroupAction) -> bool:
        return all(action.is_invariant_form(f) for f in self.terms.values())

    def __repr__(self):
        bits = [f"T^{key}*({form})" for key, form in sorted(self.terms.items())]
        return " + ".join(bits) if bits else "0"


def cartan_d(x: EquivariantElement, action: GroupAction,
             require_invariant: bool = True) -> EquivariantElement:
    """D x = Theta^A (x) d_h x_A + Theta^{A+e_a} (x) iota_a x_A."""
    model = action.model
    if require_invariant and not x.is_invariant(action):
        raise ValueError("element is not invariant under the action")
    out = {}

    def add(key, form):
        if not form:
            return
        s = out.get(key)
        s = form if s is None else s + form
        if s:
            out[key] = s
        else:
            out.pop(key, None)

    for key, form in x.terms.items():
        add(key, quantum_d(form, model))
        for a in range(action.n_generators):
            bumped = key[:a] + (key[a] + 1,) + key[a + 1:]
            add(bumped, contract_generator(a, form, action))
    return EquivariantElement(model, action.n_generators, out)


class AnticommutatorReport:
    def __init__(self):
        self.ok = True
        self.failures = []

    def __bool__(self):
        return self.ok


def anticommutator_check(action: GroupAction, forms) -> AnticommutatorReport:
    """(delta iota_a + iota_a delta) x = 0 on the given sample forms.

    Holds for arbitrary forms (invariant or not) whenever L_a w = 0
    globally; a bivector that is not preserved leaves a nonzero residual.
    """
    model = action.model
    rep = AnticommutatorReport()
    for x in forms:
        for a in range(action.n_generators):
            res = koszul_delta(contract_generator(a, x, action), model) + \
                contract_generator(a, koszul_delta(x, model), action)
            if res:
                rep.ok = False
                rep.failures.append((a, x, res))
    return rep


# -- equivariant cohomology -------------------------------------------------------


def _theta_monomials(d: int, max_total: int):
    if d == 0:
        yield ()
        return
    for total in range(max_total + 1):
        for cuts in itertools.combinations(range(total + d - 1), d - 1):
            parts = []
            prev = -1
            for c in cuts:
                parts.append(c - prev - 1)
                prev = c
            parts.append(total + d - 2 - prev)
            yield tuple(parts)


def _equivariant_basis(model, d, total, laurent=False):
    out = []
    for A in _theta_monomials(d, total // 2):
        rem = total - 2 * sum(A)
        if rem < 0:
            continue
        for mask in range(1 << model.dim):
            c = mask.bit_count()
            if c > rem or (rem - c) % 2:
                continue
            j = (rem - c) // 2
            out.append((A, j, mask))
    out.sort()
    return out


def _equivariant_matrix(model, action, k, src, dst, ring):
    dst_index = {lab: i for i, lab in enumerate(dst)}
    rows = [[ring.zero() for _ in src] for _ in dst]
    d = action.n_generators
    for col, (A, j, mask) in enumerate(src):
        form = HForm(model.dim, {(j, mask): FourierCoeff.character(model.dim, k)})
        elem = EquivariantElement(model, d, {A: form})
        image = cartan_d(elem, action, require_invariant=False)
        for A2, f2 in image.terms.items():
            for (j2, m2), c in f2.terms.items():
                amp = c.mode_amplitude(k)
                if not amp:
                    continue
                lab = (A2, j2, m2)
                if lab not in dst_index:
                    raise AssertionError("Cartan differential left the "
                                         "expected total degree")
                rows[dst_index[lab]][col] = rows[dst_index[lab]][col] + \
                    ring.from_scalar(amp)
    return rows


def invariant_modes(action: GroupAction, mode_box: int):
    """Fourier modes orthogonal to all translation generators."""
    model = action.model
    vecs = [action.translation_vector(a) for a in range(action.n_generators)]
    for k in itertools.product(range(-mode_box, mode_box + 1),
                               repeat=model.dim):
        if all(sum(Fraction(ki) * ci for ki, ci in zip(k, v)) == 0
               for v in vecs):
            yield k


def equivariant_cohomology_table(model: PoissonModel, action: GroupAction,
                                 cutoff: int, mode_box: int = 1,
                                 ring=HPoly) -> CohomologyTable:
    """Quantum equivariant cohomology of a torus translation action,
    truncated by total degree.

    Assembles, per invariant Fourier mode, the finite Cartan complex in
    each total degree <= cutoff + 1 and reports homology for degrees
    0..cutoff; the cutoff is recorded so omitted degrees are explicit.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    if model.kind != TORUS or not model.is_constant_w():
        raise ValueError("equivariant tables need a torus with constant w")
    if not action.is_translation():
        raise ValueError("equivariant tables cover translation actions")
    d = action.n_generators
    degrees = list(range(cutoff + 2))
    merged = {n: {"rank": 0, "torsion": [], "reps": [], "labels": []}
              for n in range(cutoff + 1)}
    modes = list(invariant_modes(action, mode_box))
    for k in modes:
        bases = [_equivariant_basis(model, d, n) for n in degrees]
        mats = [_equivariant_matrix(model, action, k, bases[i], bases[i + 1], ring)
                for i in range(len(degrees) - 1)]
        cx = FiniteComplex(degrees, bases, mats, ring=ring,
                           meta={"kind": "equivariant", "mode": k})
        tab = complex_homology(cx)
        for n in range(cutoff + 1):
            e = tab.entries.get(n)
            if e is None:
                continue
            merged[n]["rank"] += e.free_rank
            merged[n]["torsion"].extend(e.torsion)
            offset = len(merged[n]["labels"])
            merged[n]["labels"].extend((k, lab) for lab in e.labels)
            for vec in e.representatives:
                merged[n]["reps"].append([ring.zero()] * offset + list(vec))
    entries = []
    for n in range(cutoff + 1):
        data = merged[n]
        width = len(data["labels"])
        reps = [vec + [ring.zero()] * (width - len(vec)) for vec in data["reps"]]
        entries.append(DegreeHomology(n, data["rank"], data["torsion"], reps,
                                      data["labels"]))
    table = CohomologyTable(ring, entries)
    table.meta.update({"kind": "equivariant", "cutoff": cutoff,
                       "mode_box": mode_box, "modes": modes,
                       "generators": d})
    return table
