"""Quantum Chern-Weil theory on trivial bundles over model spaces.

Connections are r x r matrices of honest 1-forms; the quantum curvature is
F_h = d_h theta + theta ^_h theta (matrix product under the quantum
wedge), an even matrix of graded-degree-2 entries.  Characteristic forms
are the trace powers tr(F^{^_h k}), which are d_h-closed; elementary
symmetric (Chern) combinations follow from Newton's identities inside the
commutative even-degree subalgebra and are not needed separately here.

Because the Koszul operator is not function-linear, the behaviour of F_h
under non-constant gauge transformations is recorded by a diagnostic
comparison, never asserted.
"""

from __future__ import annotations

from fractions import Fraction

from .calculus import exterior_d, quantum_d
from .forms import HForm
from .models import PoissonModel, TORUS
from .quantum import qwedge
from .snf import solve_linear


class QConnection:
    """Connection matrix theta on a trivial rank-r bundle."""

    def __init__(self, model: PoissonModel, theta):
        self.model = model
        self.rank = len(theta)
        for row in theta:
            if len(row) != self.rank:
                raise ValueError("connection matrix must be square")
            for entry in row:
                if entry.dim != model.dim:
                    raise ValueError("connection entry dimension mismatch")
                for (j, mask) in entry.terms:
                    if j != 0 or mask.bit_count() != 1:
                        raise ValueError("connection entries must be "
                                         "h-free 1-forms")
        self.theta = [list(row) for row in theta]

    @classmethod
    def zero(cls, model: PoissonModel, rank: int):
        z = HForm.zero(model.dim)
        return cls(model, [[z for _ in range(rank)] for _ in range(rank)])


def _mat_qwedge(A, B, model):
    rank = len(A)
    dim = model.dim
    out = [[HForm.zero(dim) for _ in range(rank)] for _ in range(rank)]
    for i in range(rank):
        for j in range(rank):
            acc = HForm.zero(dim)
            for l in range(rank):
                if A[i][l] and B[l][j]:
                    acc = acc + qwedge(A[i][l], B[l][j], model.w)
            out[i][j] = acc
    return out


def quantum_curvature(conn: QConnection):
    """F_h = d_h theta + theta ^_h theta, entrywise."""
    model = conn.model
    F = _mat_qwedge(conn.theta, conn.theta, model)
    for i in range(conn.rank):
        for j in range(conn.rank):
            F[i][j] = F[i][j] + quantum_d(conn.theta[i][j], model)
    return F


def quantum_covariant_d(phi, conn: QConnection):
    """Columns of h-forms: (d_h^nabla phi)^k = theta^k_j ^_h phi^j + d_h phi^k."""
    model = conn.model
    if len(phi) != conn.rank:
        raise ValueError("section has wrong rank")
    out = []
    for k in range(conn.rank):
        acc = quantum_d(phi[k], model)
        for j in range(conn.rank):
            if conn.theta[k][j] and phi[j]:
                acc = acc + qwedge(conn.theta[k][j], phi[j], model.w)
        out.append(acc)
    return out


def covariant_square_check(phi, conn: QConnection) -> bool:
    """(d_h^nabla)^2 phi == F_h applied to phi (even entries commute)."""
    model = conn.model
    lhs = quantum_covariant_d(quantum_covariant_d(phi, conn), conn)
    F = quantum_curvature(conn)
    for k in range(conn.rank):
        acc = HForm.zero(model.dim, lhs[k].laurent)
        for j in range(conn.rank):
            if F[k][j] and phi[j]:
                acc = acc + qwedge(F[k][j], phi[j], model.w)
        if lhs[k] != acc:
            return False
    return True


def char_form(F, k: int, model: PoissonModel) -> HForm:
    """tr(F^{^_h k}); d_h-closed by the quantum Bianchi identity."""
    if k < 1:
        raise ValueError("power must be >= 1")
    power = F
    for _ in range(k - 1):
        power = _mat_qwedge(power, F, model)
    out = HForm.zero(model.dim)
    for i in range(len(F)):
        out = out + power[i][i]
    return out


def char_form_certificate(F, k: int, model: PoissonModel):
    """The characteristic form together with its expanded d_h evaluation."""
    form = char_form(F, k, model)
    return form, quantum_d(form, model)


def gauge_transform(conn: QConnection, g_matrix, g_inverse=None) -> QConnection:
    """theta -> G^{-1} theta G + G^{-1} dG.

    ``g_matrix`` has entries that are degree-0 forms (functions).  For a
    constant G pass plain scalar entries; for function-valued G supply
    ``g_inverse`` explicitly (exactness is the caller's concern; the pair
    is validated by multiplying out).
    """
    model = conn.model
    rank = conn.rank
    G = [[_as_function_form(x, model) for x in row] for row in g_matrix]
    if g_inverse is None:
        Ginv = _constant_inverse(g_matrix, model)
    else:
        Ginv = [[_as_function_form(x, model) for x in row] for row in g_inverse]
    prod = _mat_qwedge(Ginv, G, model)
    for i in range(rank):
        for j in range(rank):
            expect = model.form_scalar(1) if i == j else HForm.zero(model.dim)
            if prod[i][j] != expect:
                raise ValueError("g_inverse is not the inverse of g_matrix")
    dG = [[exterior_d(x) for x in row] for row in G]
    new_theta = _mat_qwedge(Ginv, _mat_qwedge(conn.theta, G, model), model)
    correction = _mat_qwedge(Ginv, dG, model)
    for i in range(rank):
        for j in range(rank):
            new_theta[i][j] = new_theta[i][j] + correction[i][j]
    return QConnection(model, new_theta)


def _as_function_form(x, model):
    if isinstance(x, HForm):
        return x
    return model.form_scalar(x)


def _constant_inverse(g_matrix, model):
    from .forms import matrix_inverse
    scalars = []
    for row in g_matrix:
        r = []
        for x in row:
            if isinstance(x, HForm):
                c = x.coeff()
                if hasattr(c, "constant_value"):
                    if not c.is_constant():
                        raise ValueError("non-constant gauge needs an "
                                         "explicit inverse")
                    c = c.constant_value()
                r.append(Fraction(c) if not hasattr(c, "re") else c)
            else:
                r.append(Fraction(x))
        scalars.append(r)
    inv = matrix_inverse(scalars)
    return [[model.form_scalar(x) for x in row] for row in inv]


def gauge_char_diagnostic(conn: QConnection, g_matrix, k: int,
                          g_inverse=None) -> dict:
    """Compare tr(F^k) before and after a gauge transformation.

    Recorded, not asserted: constant gauges must agree; the non-constant
    case is the open transformation-law question and the diagnostic simply
    reports whether the two sides agree.
    """
    before = char_form(quantum_curvature(conn), k, conn.model)
    after_conn = gauge_transform(conn, g_matrix, g_inverse)
    after = char_form(quantum_curvature(after_conn), k, conn.model)
    return {"agree": before == after, "difference": before - after}


# -- transgression ----------------------------------------------------------------


class TransgressionResult:
    def __init__(self, ok, eta=None, obstruction_mode=None):
        self.ok = ok
        self.eta = eta
        self.obstruction_mode = obstruction_mode

    def __bool__(self):
        return self.ok


def solve_dh_primitive(model: PoissonModel, delta: HForm,
                       ring=None) -> TransgressionResult:
    """Solve d_h eta = delta mode by mode in the finite torus complexes.

    Returns eta on success; an unsolvable mode is reported as the
    obstruction (a genuine cohomology class in the target).
    """
    from .hpoly import HLaurent
    from .coeffs import FourierCoeff
    from .cohomology import _matrix_of_dh
    if model.kind != TORUS:
        raise ValueError("the d_h solve requires a torus model")
    if not model.is_constant_w():
        raise ValueError("the d_h solve requires constant w")
    ring = ring or HLaurent
    if not delta:
        return TransgressionResult(True, HForm.zero(model.dim))
    m = model.dim
    even = [mask for mask in range(1 << m) if mask.bit_count() % 2 == 0]
    odd = [mask for mask in range(1 << m) if mask.bit_count() % 2 == 1]
    target_parity = 0 if all(mask.bit_count() % 2 == 0
                             for (_j, mask) in delta.terms) else 1
    dst, src = (even, odd) if target_parity == 0 else (odd, even)
    dst_pos = {mask: i for i, mask in enumerate(dst)}
    by_mode = {}
    for (j, mask), c in delta.terms.items():
        if mask.bit_count() % 2 != target_parity:
            raise ValueError("target form has mixed parity")
        for mode, amp in c.terms.items():
            key = tuple(mode)
            vec = by_mode.setdefault(key, [ring.zero() for _ in dst])
            vec[dst_pos[mask]] = vec[dst_pos[mask]] + ring({j: amp})
    eta = HForm.zero(m, ring is HLaurent)
    for mode, target in sorted(by_mode.items()):
        D = _matrix_of_dh(model, mode, src, dst, ring)
        x = solve_linear(D, target, ring)
        if x is None:
            return TransgressionResult(False, None, obstruction_mode=mode)
        for col, coeff in enumerate(x):
            if coeff.is_zero():
                continue
            for j, amp in coeff.coeffs.items():
                eta = eta + HForm(m, {(j, src[col]):
                                      FourierCoeff.character(m, mode, amp)},
                                  ring is HLaurent)
    return TransgressionResult(True, eta)


def transgression_check(conn0: QConnection, conn1: QConnection, k: int,
                        ring=None) -> TransgressionResult:
    """Solve d_h eta = tr(F_1^k) - tr(F_0^k) mode by mode on a torus.

    Pass returns eta; an unsolvable mode is reported as the obstruction (a
    genuine cohomology difference).
    """
    model = conn0.model
    delta = char_form(quantum_curvature(conn1), k, model) - \
        char_form(quantum_curvature(conn0), k, model)
    return solve_dh_primitive(model, delta, ring)
