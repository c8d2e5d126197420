"""The quantum exterior product and its bigraded complexification.

The product deforms the wedge by iterated contraction against an
antisymmetric bivector w:

    a ^_h b = sum_n (h^n / n!) w^{i1 j1} .. w^{in jn}
              (a -| e_{i1} -| .. -| e_{in}) ^ (e_{jn} |- .. |- e_{j1} |- b)

summed over all ordered index tuples, with the normalization
``e^i ^_w e^j = e^i ^ e^j + w^{ij}``.  Setting h = 0 recovers the classical
wedge; h carries degree 2, so the product respects the total grading.

The complexified picture uses the frame f^1..f^n = dz^1..dz^n,
f^{n+1}..f^{2n} = dzbar^1..dzbar^n with z_k = x_{2k-1} + i x_{2k}; a term
h^j dz^A dzbar^B has bidegree (|A| + j, |B| + j).
"""

from __future__ import annotations

from fractions import Fraction

from . import _kernels as K
from .forms import Bivector, HForm, berezin_integral, wedge
from .scalars import GRat, I


def qwedge(a: HForm, b: HForm, w: Bivector) -> HForm:
    """Quantum exterior product a ^_{h,w} b."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch {a.dim} != {b.dim}")
    if w.dim != a.dim:
        raise ValueError(f"bivector dimension mismatch {w.dim} != {a.dim}")
    return HForm(a.dim, K.qwedge_terms(a.terms, b.terms, w.pairs0()),
                 a.laurent or b.laurent)


def wwedge(a: HForm, b: HForm, w: Bivector) -> HForm:
    """The w-product a ^_w b = (a ^_h b) at h = 1."""
    return qwedge(a, b, w).at_h(1)


def frobenius_pairing(a: HForm, b: HForm, w: Bivector):
    """<a, b> = Berezin integral of a ^_w b."""
    return berezin_integral(wwedge(a, b, w))


def gram_matrix(w: Bivector):
    """Gram matrix of the Frobenius pairing on the 2^m monomial basis."""
    dim = w.dim
    basis = [HForm(dim, {(0, mask): Fraction(1)}) for mask in range(1 << dim)]
    return [[frobenius_pairing(x, y, w) for y in basis] for x in basis]


# -- complexification ---------------------------------------------------------


def standard_j_matrix(dim: int):
    """Matrix of the standard complex structure J on vectors.

    J e_{2k-1} = e_{2k}, J e_{2k} = -e_{2k-1}; entry [i][j] is the e_i
    component of J e_j (0-based storage).
    """
    if dim % 2:
        raise ValueError("complex structure needs even dimension")
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for k in range(dim // 2):
        rows[2 * k + 1][2 * k] = Fraction(1)
        rows[2 * k][2 * k + 1] = Fraction(-1)
    return rows


def j_preserves(w: Bivector) -> bool:
    """Check Lambda^2 J (w) = w for the standard complex structure."""
    if w.dim % 2:
        return False
    jm = standard_j_matrix(w.dim)
    wm = w.matrix()
    dim = w.dim
    for a in range(dim):
        for b in range(dim):
            val = 0
            for i in range(dim):
                if not jm[a][i]:
                    continue
                for j in range(dim):
                    if jm[b][j] and wm[i][j]:
                        val = val + jm[a][i] * jm[b][j] * wm[i][j]
            lhs, rhs = val, wm[a][b]
            if not lhs and not rhs:
                continue
            if lhs != rhs:
                return False
    return True


def change_frame(a: HForm, rows) -> HForm:
    """Substitute e^i -> sum_a rows[i][a] f^a and expand the wedges."""
    dim = a.dim
    out = HForm.zero(dim, a.laurent)
    images = []
    for i in range(dim):
        img = HForm.zero(dim, a.laurent)
        for col, c in enumerate(rows[i]):
            if c:
                img = img + HForm(dim, {(0, 1 << col): c}, a.laurent)
        images.append(img)
    for (j, mask), c in a.terms.items():
        term = HForm(dim, {(j, 0): c}, a.laurent)
        i = 0
        mm = mask
        while mm:
            if mm & 1:
                term = wedge(term, images[i])
            mm >>= 1
            i += 1
        out = out + term
    return out


def real_to_complex_rows(dim: int):
    """e^i expressed in the complex frame (dz first, dzbar second)."""
    n = dim // 2
    half = Fraction(1, 2)
    rows = [[GRat(0)] * dim for _ in range(dim)]
    for k in range(n):
        # e^{2k-1} = (dz^k + dzbar^k)/2 ; e^{2k} = -i(dz^k - dzbar^k)/2
        rows[2 * k][k] = GRat(half)
        rows[2 * k][n + k] = GRat(half)
        rows[2 * k + 1][k] = GRat(0, -half)
        rows[2 * k + 1][n + k] = GRat(0, half)
    return rows


def complex_to_real_rows(dim: int):
    """dz^k / dzbar^k expressed in the real frame."""
    n = dim // 2
    rows = [[GRat(0)] * dim for _ in range(dim)]
    for k in range(n):
        rows[k][2 * k] = GRat(1)
        rows[k][2 * k + 1] = I
        rows[n + k][2 * k] = GRat(1)
        rows[n + k][2 * k + 1] = -I
    return rows


def to_complex_frame(a: HForm) -> HForm:
    """Rewrite a real-frame form in the dz/dzbar frame (GRat coefficients)."""
    return change_frame(a, real_to_complex_rows(a.dim))


def to_real_frame(a: HForm) -> HForm:
    return change_frame(a, complex_to_real_rows(a.dim))


def transform_bivector(w: Bivector, rows) -> Bivector:
    """Bivector in the new frame: W' = S W S^T for covector rows f^a = S e."""
    dim = w.dim
    wm = w.matrix()
    ent = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            val = 0
            for i in range(dim):
                if not rows[a][i]:
                    continue
                for j in range(dim):
                    if rows[b][j] and wm[i][j]:
                        val = val + rows[a][i] * rows[b][j] * wm[i][j]
            if val:
                ent[(a + 1, b + 1)] = val
    return Bivector(dim, ent)


def complex_frame_bivector(w: Bivector) -> Bivector:
    """The bivector as seen by the complex frame contraction formula.

    Uses the rows expressing dz/dzbar in the real covector basis, since
    components transform by W_c = S W S^T with f^a = S e.
    """
    if not j_preserves(w):
        raise ValueError("complex structure does not preserve the bivector")
    return transform_bivector(w, complex_to_real_rows(w.dim))


def complex_bidegree(a: HForm):
    """Bidegree (|A| + j, |B| + j) of a complex-frame form; None if mixed."""
    if a.dim % 2:
        raise ValueError("complex frame needs even dimension")
    n = a.dim // 2
    lo = (1 << n) - 1
    degs = set()
    for (j, mask) in a.terms:
        p = (mask & lo).bit_count() + j
        q = (mask >> n).bit_count() + j
        degs.add((p, q))
    if len(degs) == 1:
        return degs.pop()
    return None


def bidegree_components(a: HForm) -> dict:
    """Split a complex-frame form into its (p, q) pieces."""
    n = a.dim // 2
    lo = (1 << n) - 1
    out = {}
    for (j, mask), c in a.terms.items():
        p = (mask & lo).bit_count() + j
        q = (mask >> n).bit_count() + j
        out.setdefault((p, q), {})[(j, mask)] = c
    return {pq: HForm(a.dim, t, a.laurent) for pq, t in sorted(out.items())}
