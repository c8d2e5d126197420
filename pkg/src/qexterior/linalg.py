"""Exact linear algebra over the base field (Fraction / GRat).

Characteristic polynomials are computed by evaluation of exact
determinants at integer points followed by Lagrange interpolation, and
factored by rational root search plus quadratic trial divisors of the
shape x^2 - 2a x + (a^2 - 5/4) (the only quadratics the Lefschetz spectra
can produce; anything else is reported unfactored).
"""

from __future__ import annotations

from fractions import Fraction

from .hpoly import HPoly


def det(rows):
    """Exact determinant by Gaussian elimination over a field."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in rows]
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0) * out
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out = out * m[c][c]
        inv = m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / inv
                for k in range(c + 1, n):
                    m[r][k] = m[r][k] - f * m[c][k]
                m[r][c] = 0
    return out


def rank(rows) -> int:
    """Rank over the base field."""
    if not rows or not rows[0]:
        return 0
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        for i in range(r + 1, nrows):
            if m[i][c]:
                f = m[i][c] / inv
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return r


def mat_sub_scalar(rows, s):
    """rows - s * I."""
    n = len(rows)
    return [[rows[i][j] - s if i == j else rows[i][j] for j in range(n)]
            for i in range(n)]


def charpoly(rows) -> HPoly:
    """det(x I - A) as a monic HPoly in the indeterminate."""
    n = len(rows)
    if n == 0:
        return HPoly.one()
    xs = [Fraction(t) for t in range(n + 1)]
    ys = [det([[ (x if i == j else 0) - rows[i][j] for j in range(n)]
               for i in range(n)]) for x in xs]
    return _interpolate(xs, ys)


def _interpolate(xs, ys) -> HPoly:
    out = HPoly.zero()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        num = HPoly.from_scalar(yi)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = num * HPoly({1: Fraction(1), 0: -xj})
            denom *= xi - xj
        out = out + num * (Fraction(1) / denom)
    return out


def poly_shift(p: HPoly, a) -> HPoly:
    """p(x + a)."""
    x_plus_a = HPoly({1: Fraction(1), 0: Fraction(a)})
    out = HPoly.zero()
    power = HPoly.one()
    for j in range(0, p.degree() + 1):
        c = p.coeffs.get(j)
        if c:
            out = out + power * c
        power = power * x_plus_a
    return out


class CharFactorization:
    """Exact factorization data of a characteristic polynomial."""

    def __init__(self, rational_roots, quadratics, remainder):
        self.rational_roots = rational_roots    # {Fraction root: multiplicity}
        self.quadratics = quadratics            # {(b, c) of x^2+bx+c: mult}
        self.remainder = remainder              # unfactored monic HPoly

    def eigenvalue_descriptions(self):
        out = [(str(r), m) for r, m in sorted(self.rational_roots.items())]
        for (b, c), m in sorted(self.quadratics.items()):
            disc = b * b - 4 * c
            out.append((f"(-({b}) ± sqrt({disc}))/2", m))
        return out


def _rational_roots(p: HPoly):
    """All rational roots with multiplicity (clears denominators first)."""
    roots = {}
    work = p
    while work.degree() >= 1:
        root = _find_rational_root(work)
        if root is None:
            break
        divisor = HPoly({1: Fraction(1), 0: -root})
        work = work.exact_div(divisor)
        roots[root] = roots.get(root, 0) + 1
    return roots, work


def _find_rational_root(p: HPoly):
    if not p.coeffs.get(0, Fraction(0)):
        return Fraction(0)
    den = 1
    for c in p.coeffs.values():
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = {j: int(c * den) for j, c in p.coeffs.items()}
    a0 = abs(ints.get(0, 0))
    an = abs(ints[p.degree()])
    for q in _divisors(an):
        for pnum in _divisors(a0):
            for sign in (1, -1):
                cand = Fraction(sign * pnum, q)
                if not p.evaluate(cand):
                    return cand
    return None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a) or 1


def _divisors(n):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def factor_charpoly(p: HPoly, quad_centers=None) -> CharFactorization:
    """Rational roots, then trial division by x^2 - 2a x + a^2 - 5/4."""
    roots, rem = _rational_roots(p)
    quads = {}
    if quad_centers is None:
        quad_centers = []
    centers = {Fraction(a) for a in quad_centers}
    deg = rem.degree()
    if deg >= 2:
        centers |= {Fraction(k, 2) for k in range(-4 * deg, 4 * deg + 1)}
    for a in sorted(centers):
        divisor = HPoly({2: Fraction(1), 1: -2 * a, 0: a * a - Fraction(5, 4)})
        while rem.degree() >= 2:
            q, r = divmod(rem, divisor)
            if r.is_zero():
                key = (-2 * a, a * a - Fraction(5, 4))
                quads[key] = quads.get(key, 0) + 1
                rem = q
            else:
                break
    return CharFactorization(roots, quads, rem if rem.degree() >= 1 else HPoly.one())


def geometric_multiplicity(rows, factor_poly: HPoly) -> int:
    """dim ker f(A) for a monic factor f (evaluates the matrix polynomial)."""
    n = len(rows)
    acc = [[Fraction(0)] * n for _ in range(n)]
    power = [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
             for i in range(n)]
    for j in range(0, factor_poly.degree() + 1):
        c = factor_poly.coeffs.get(j)
        if c:
            for r in range(n):
                for s in range(n):
                    acc[r][s] = acc[r][s] + c * power[r][s]
        if j < factor_poly.degree():
            power = [[sum(power[r][k] * rows[k][s] for k in range(n))
                      for s in range(n)] for r in range(n)]
    return n - rank(acc)
