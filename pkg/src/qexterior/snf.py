"""Smith normal form and linear algebra over the Euclidean rings k[h] and
k[h, h^-1].

Matrices are lists of rows whose entries are HPoly/HLaurent (plain scalars
are promoted).  The decomposition returns unimodular U, V with
U A V = D, the diagonal of invariant factors in canonical unit-normalized
form (monic for k[h]; monic with nonzero constant term for Laurent), and
their tracked inverses, so every result can be certified by exact
re-multiplication.
"""

from __future__ import annotations

from .hpoly import HLaurent, HPoly, poly_gcd


def promote(x, ring):
    if isinstance(x, HPoly):
        if ring is HLaurent and not isinstance(x, HLaurent):
            return HLaurent(dict(x.coeffs))
        return x
    return ring.from_scalar(x) if x else ring.zero()


def mat_promote(A, ring):
    return [[promote(x, ring) for x in row] for row in A]


def mat_identity(n, ring):
    return [[ring.one() if i == j else ring.zero() for j in range(n)]
            for i in range(n)]


def mat_mul(A, B, ring):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = [[ring.zero() for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        Ai = A[i]
        for k in range(inner):
            a = Ai[k]
            if a.is_zero():
                continue
            Bk = B[k]
            oi = out[i]
            for j in range(cols):
                if not Bk[j].is_zero():
                    oi[j] = oi[j] + a * Bk[j]
    return out


def mat_is_zero(A) -> bool:
    return all(x.is_zero() for row in A for x in row)


def mat_eq(A, B) -> bool:
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
        for ra, rb in zip(A, B))


class SNFResult:
    """U A V = D with unimodular U, V and tracked inverses."""

    def __init__(self, diag, U, V, Uinv, Vinv, rank, ring, shape):
        self.diag = diag
        self.U = U
        self.V = V
        self.Uinv = Uinv
        self.Vinv = Vinv
        self.rank = rank
        self.ring = ring
        self.shape = shape

    def d_matrix(self):
        rows, cols = self.shape
        D = [[self.ring.zero() for _ in range(cols)] for _ in range(rows)]
        for t, d in enumerate(self.diag):
            D[t][t] = d
        return D

    def invariant_factors(self):
        return [d for d in self.diag if not d.is_zero()]

    def torsion_factors(self):
        return [d for d in self.diag if not d.is_zero() and not d.is_unit()]


def smith_normal_form(A, ring=None) -> SNFResult:
    """Smith normal form over k[h] or k[h,h^-1].

    Total function on rectangular matrices; entries may be ring elements
    or plain scalars.  Pivots are chosen by minimal Euclidean size and the
    invariant factors are unit-normalized, giving a canonical diagonal
    with d_1 | d_2 | ...
    """
    if ring is None:
        ring = _infer_ring(A)
    rows = len(A)
    cols = len(A[0]) if rows and A[0] else 0
    B = mat_promote(A, ring) if rows and cols else []
    U = mat_identity(rows, ring)
    Uinv = mat_identity(rows, ring)
    V = mat_identity(cols, ring)
    Vinv = mat_identity(cols, ring)

    def swap_rows(i, j):
        B[i], B[j] = B[j], B[i]
        U[i], U[j] = U[j], U[i]
        for r in range(rows):
            Uinv[r][i], Uinv[r][j] = Uinv[r][j], Uinv[r][i]

    def swap_cols(i, j):
        for r in range(rows):
            B[r][i], B[r][j] = B[r][j], B[r][i]
        for r in range(cols):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def addmul_row(dst, src, q):
        # row_dst -= q * row_src ; inverse gets column update
        for c in range(cols):
            B[dst][c] = B[dst][c] - q * B[src][c]
        for c in range(rows):
            U[dst][c] = U[dst][c] - q * U[src][c]
        for r in range(rows):
            Uinv[r][src] = Uinv[r][src] + q * Uinv[r][dst]

    def addmul_col(dst, src, q):
        for r in range(rows):
            B[r][dst] = B[r][dst] - q * B[r][src]
        for r in range(cols):
            V[r][dst] = V[r][dst] - q * V[r][src]
        for c in range(cols):
            Vinv[src][c] = Vinv[src][c] + q * Vinv[dst][c]

    def scale_row(i, unit_inv, unit):
        for c in range(cols):
            B[i][c] = unit_inv * B[i][c]
        for c in range(rows):
            U[i][c] = unit_inv * U[i][c]
        for r in range(rows):
            Uinv[r][i] = Uinv[r][i] * unit

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # pivot of minimal Euclidean size in the trailing block
        piv = None
        best = None
        for r in range(t, rows):
            for c in range(t, cols):
                if not B[r][c].is_zero():
                    size = B[r][c].euclid_size()
                    if best is None or size < best:
                        best = size
                        piv = (r, c)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # canonical pivot scale (monic; valuation 0 in the Laurent
            # ring) keeps the rational coefficients from swelling
            u = B[t][t].unit_part()
            if not u == ring.one():
                scale_row(t, u.inv_unit(), u)
            # clear column t
            dirty = False
            for r in range(t + 1, rows):
                if B[r][t].is_zero():
                    continue
                q, rem = divmod(B[r][t], B[t][t])
                addmul_row(r, t, q)
                if not rem.is_zero():
                    swap_rows(t, r)
                    dirty = True
            if dirty:
                continue
            # clear row t
            for c in range(t + 1, cols):
                if B[t][c].is_zero():
                    continue
                q, rem = divmod(B[t][c], B[t][t])
                addmul_col(c, t, q)
                if not rem.is_zero():
                    swap_cols(t, c)
                    dirty = True
            if dirty:
                continue
            # enforce divisibility of the trailing block by the pivot
            offender = None
            for r in range(t + 1, rows):
                for c in range(t + 1, cols):
                    if not divmod(B[r][c], B[t][t])[1].is_zero():
                        offender = r
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # add the offending row; the gcd loop shrinks the pivot
            addmul_row(t, offender, -ring.one())
        t += 1

    diag = []
    for i in range(limit):
        d = B[i][i] if i < rows and i < cols else ring.zero()
        if not d.is_zero() and not d == d.normalized():
            u = d.unit_part()
            scale_row(i, u.inv_unit(), u)
            d = B[i][i]
        diag.append(d)
    rank = sum(1 for d in diag if not d.is_zero())
    return SNFResult(diag, U, V, Uinv, Vinv, rank, ring, (rows, cols))


def _infer_ring(A):
    for row in A:
        for x in row:
            if isinstance(x, HLaurent):
                return HLaurent
            if isinstance(x, HPoly):
                return HPoly
    return HPoly


def solve_linear(A, b, ring=None):
    """Solve A x = b over the ring; returns x or None when unsolvable.

    Uses U A V = D: x = V y with y_i = (U b)_i / d_i, requiring exact
    division and zero residual beyond the rank.
    """
    if ring is None:
        ring = _infer_ring(A)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    snf = smith_normal_form(A, ring)
    ub = [sum((snf.U[i][k] * promote(b[k], ring) for k in range(rows)),
              start=ring.zero()) for i in range(rows)]
    y = [ring.zero()] * cols
    for i in range(rows):
        if i < len(snf.diag) and not snf.diag[i].is_zero():
            q, rem = divmod(ub[i], snf.diag[i])
            if not rem.is_zero():
                return None
            y[i] = q
        elif not ub[i].is_zero():
            return None
    return [sum((snf.V[r][k] * y[k] for k in range(cols)), start=ring.zero())
            for r in range(cols)]


# -- independent fraction-field rank oracle ------------------------------------


class _RatFn:
    """Fraction num/den of polynomials, for the Gaussian rank oracle."""

    __slots__ = ("num", "den")

    def __init__(self, num: HPoly, den: HPoly):
        if den.is_zero():
            raise ZeroDivisionError
        if num.is_zero():
            den = HPoly.one()
        else:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            # monic denominator for a canonical representative
            lead = den.leading()
            num = HPoly({j: c / lead for j, c in num.coeffs.items()})
            den = HPoly({j: c / lead for j, c in den.coeffs.items()})
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def __sub__(self, other):
        return _RatFn(self.num * other.den - other.num * self.den,
                      self.den * other.den)

    def __mul__(self, other):
        return _RatFn(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDivisionError
        return _RatFn(self.num * other.den, self.den * other.num)


def rank_fraction_field(A) -> int:
    """Rank of a matrix of h-polynomials over the fraction field k(h).

    Independent Gaussian elimination; Laurent entries are shifted into
    k[h] first (unit scaling does not change rank).
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if not rows or not cols:
        return 0
    M = []
    for row in A:
        entries = []
        for x in row:
            if not isinstance(x, HPoly):
                x = HPoly.from_scalar(x) if x else HPoly.zero()
            entries.append(x)
        # clear negative exponents by one unit scaling of the whole row
        shift = -min((x.valuation() for x in entries if not x.is_zero()),
                     default=0)
        shift = max(shift, 0)
        rr = []
        for x in entries:
            p = HPoly({j + shift: c for j, c in x.coeffs.items()})
            rr.append(_RatFn(p, HPoly.one()))
        M.append(rr)
    rank = 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not M[i][c].is_zero()), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pival = M[r][c]
        for i in range(r + 1, rows):
            if not M[i][c].is_zero():
                f = M[i][c] / pival
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank
