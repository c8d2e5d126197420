# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term kernels; mirrors _kernels_py exactly.

Masks and signs are C integers; coefficients stay Python objects, so the
speedup comes from the loop and bit machinery, not the arithmetic.
"""

from fractions import Fraction

BACKEND = "cython"

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define QEXT_POPCOUNT(x) __builtin_popcountll((unsigned long long)(x))
    #else
    static int QEXT_POPCOUNT(unsigned long long x) {
        int n = 0;
        while (x) { x &= x - 1; ++n; }
        return n;
    }
    #endif
    """
    int QEXT_POPCOUNT(unsigned long long x) nogil


cdef inline int _popcount(unsigned long long x) nogil:
    return QEXT_POPCOUNT(x)


def wedge_sign(a, b):
    """Sign of e^a ^ e^b for disjoint masks a, b."""
    cdef unsigned long long aa = a, bb = b, low
    cdef int s = 0
    while bb:
        low = bb & (~bb + 1)
        s += _popcount(aa >> (_bit_length(low)))
        bb ^= low
    return -1 if s & 1 else 1


cdef inline int _bit_length(unsigned long long x) nogil:
    cdef int n = 0
    while x:
        x >>= 1
        n += 1
    return n


def front_sign(mask, i):
    """Sign of the front contraction by e_i on a monomial containing bit i."""
    cdef unsigned long long m = mask
    cdef int ii = i
    return -1 if _popcount(m & ((<unsigned long long>1 << ii) - 1)) & 1 else 1


def back_sign(mask, i):
    """Sign of the back contraction by e_i on a monomial containing bit i."""
    cdef unsigned long long m = mask
    cdef int ii = i
    return -1 if _popcount(m >> (ii + 1)) & 1 else 1


cdef inline int _wedge_sign_c(unsigned long long a, unsigned long long b) nogil:
    cdef int s = 0
    cdef unsigned long long low
    while b:
        low = b & (~b + 1)
        s += _popcount(a >> (_bit_length(low)))
        b ^= low
    return -1 if s & 1 else 1


def wedge_terms(dict A, dict B):
    """Classical wedge on (h, mask)-keyed term dicts."""
    cdef dict out = {}
    cdef unsigned long long ma, mb
    cdef long long ja, jb
    for (ja, ma), ca in A.items():
        for (jb, mb), cb in B.items():
            if ma & mb:
                continue
            c = ca * cb
            if _wedge_sign_c(ma, mb) < 0:
                c = -c
            key = (ja + jb, ma | mb)
            s = out.get(key)
            s = c if s is None else s + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def contract_front_terms(dict terms, i):
    """e_i |- form on a term dict (0-based index i)."""
    cdef int ii = i
    cdef unsigned long long bit = <unsigned long long>1 << ii
    cdef unsigned long long m
    cdef long long j
    cdef dict out = {}
    for (j, m), c in terms.items():
        if m & bit:
            if _popcount(m & (bit - 1)) & 1:
                c = -c
            key = (j, m ^ bit)
            s = out.get(key)
            s = c if s is None else s + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def contract_back_terms(dict terms, i):
    """form -| e_i on a term dict (0-based index i)."""
    cdef int ii = i
    cdef unsigned long long bit = <unsigned long long>1 << ii
    cdef unsigned long long m
    cdef long long j
    cdef dict out = {}
    for (j, m), c in terms.items():
        if m & bit:
            if _popcount(m >> (ii + 1)) & 1:
                c = -c
            key = (j, m ^ bit)
            s = out.get(key)
            s = c if s is None else s + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def qwedge_terms(dict A, dict B, list wpairs):
    """Quantum exterior product of two term dicts (see the pure twin)."""
    cdef dict pairs = {}
    cdef dict out = {}
    cdef dict nxt
    cdef unsigned long long ma, mb, bi, bj
    cdef long long ja, jb, j
    cdef int level = 0
    cdef int i, jj
    cdef bint scale

    for (ja, ma), ca in A.items():
        for (jb, mb), cb in B.items():
            key = (ja + jb, ma, mb)
            c = ca * cb
            s = pairs.get(key)
            s = c if s is None else s + c
            if s:
                pairs[key] = s
            else:
                pairs.pop(key, None)

    factor = Fraction(1)
    while pairs:
        if level:
            factor = Fraction(1, level) * factor
        scale = factor != 1
        for (j, ma, mb), c in pairs.items():
            if ma & mb:
                continue
            cc = c * factor if scale else c
            if _wedge_sign_c(ma, mb) < 0:
                cc = -cc
            key = (j + level, ma | mb)
            s = out.get(key)
            s = cc if s is None else s + cc
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        nxt = {}
        for (j, ma, mb), c in pairs.items():
            if not (ma and mb):
                continue
            for i, jj, wij in wpairs:
                bi = <unsigned long long>1 << i
                bj = <unsigned long long>1 << jj
                if not (ma & bi and mb & bj):
                    continue
                cc = wij * c
                if (_popcount(ma >> (i + 1)) + _popcount(mb & (bj - 1))) & 1:
                    cc = -cc
                key = (j, ma ^ bi, mb ^ bj)
                s = nxt.get(key)
                s = cc if s is None else s + cc
                if s:
                    nxt[key] = s
                else:
                    nxt.pop(key, None)
        pairs = nxt
        level += 1
    return out
