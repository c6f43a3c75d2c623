# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.

Every function here has a pure-Python twin in ``_kernels_py`` with the same
signature and return convention; ``crossext.kernels`` picks one at import.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

ctypedef cnp.int64_t i64


def assoc_witness(const i64[:, ::1] mul):
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t a, b, c
    cdef i64 ab
    for a in range(n):
        for b in range(n):
            ab = mul[a, b]
            for c in range(n):
                if mul[ab, c] != mul[a, mul[b, c]]:
                    return (a, b, c)
    return None


def matched_witnesses(const i64[:, ::1] gmul, const i64[:, ::1] smul,
                      const i64[:, ::1] rhd, const i64[:, ::1] lhd,
                      i64 ge, i64 se, Py_ssize_t limit):
    cdef Py_ssize_t ng = gmul.shape[0]
    cdef Py_ssize_t ns = smul.shape[0]
    cdef Py_ssize_t s, t, g, h
    cdef i64 lhs, rhs
    cdef Py_ssize_t count[6]
    out = []
    for s in range(6):
        count[s] = 0

    # family 0: left action, (st)>g = s>(t>g) and e>g = g
    for g in range(ng):
        if rhd[se, g] != g and count[0] < limit:
            out.append((0, se, -1, g, -1)); count[0] += 1
    for s in range(ns):
        for t in range(ns):
            for g in range(ng):
                if rhd[smul[s, t], g] != rhd[s, rhd[t, g]] and count[0] < limit:
                    out.append((0, s, t, g, -1)); count[0] += 1
    # family 1: right action, s<(gh) = (s<g)<h and s<e = s
    for s in range(ns):
        if lhd[s, ge] != s and count[1] < limit:
            out.append((1, s, -1, ge, -1)); count[1] += 1
        for g in range(ng):
            for h in range(ng):
                if lhd[s, gmul[g, h]] != lhd[lhd[s, g], h] and count[1] < limit:
                    out.append((1, s, -1, g, h)); count[1] += 1
    # family 2: s>e = e ; family 3: e<g = e
    for s in range(ns):
        if rhd[s, ge] != ge and count[2] < limit:
            out.append((2, s, -1, ge, -1)); count[2] += 1
    for g in range(ng):
        if lhd[se, g] != se and count[3] < limit:
            out.append((3, se, -1, g, -1)); count[3] += 1
    # family 4: s>(gh) = (s>g)((s<g)>h)
    for s in range(ns):
        for g in range(ng):
            for h in range(ng):
                lhs = rhd[s, gmul[g, h]]
                rhs = gmul[rhd[s, g], rhd[lhd[s, g], h]]
                if lhs != rhs and count[4] < limit:
                    out.append((4, s, -1, g, h)); count[4] += 1
    # family 5: (st)<g = (s<(t>g))(t<g)
    for s in range(ns):
        for t in range(ns):
            for g in range(ng):
                lhs = lhd[smul[s, t], g]
                rhs = smul[lhd[s, rhd[t, g]], lhd[t, g]]
                if lhs != rhs and count[5] < limit:
                    out.append((5, s, t, g, -1)); count[5] += 1
    return out


def fusion_assoc_witness(const i64[:, :, ::1] N):
    cdef Py_ssize_t n = N.shape[0]
    cdef Py_ssize_t x, y, z, v, w
    cdef i64 lhs, rhs, a
    for x in range(n):
        for y in range(n):
            for z in range(n):
                for v in range(n):
                    lhs = 0
                    rhs = 0
                    for w in range(n):
                        a = N[x, y, w]
                        if a:
                            lhs += a * N[w, z, v]
                        a = N[y, z, w]
                        if a:
                            rhs += a * N[x, w, v]
                    if lhs != rhs:
                        return (x, y, z, v)
    return None


def eliminate(cnp.ndarray A_in, double eps):
    """Complete-pivot Gaussian elimination to reduced row echelon form.

    Rows are scaled to unit max-norm first. Returns
    ``(R, pivot_cols, accepted, rejected)`` where ``R`` holds the ``rank``
    reduced rows, ``accepted`` the pivot magnitudes taken and ``rejected``
    the largest remaining magnitude when elimination stopped (0.0 if none).
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] A = np.array(A_in, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t m = A.shape[0]
    cdef Py_ssize_t n = A.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] colperm = np.arange(n, dtype=np.int64)
    cdef double mag, best, rowmax, den, rejected = 0.0
    cdef Py_ssize_t i, j, r, bi, bj
    cdef double complex piv, f, tmp
    cdef i64 ti
    accepted = []

    for i in range(m):
        rowmax = 0.0
        for j in range(n):
            mag = abs(A[i, j])
            if mag > rowmax:
                rowmax = mag
        if rowmax > 0.0:
            for j in range(n):
                A[i, j] = A[i, j].real / rowmax + 1j * (A[i, j].imag / rowmax)

    r = 0
    while r < m and r < n:
        best = -1.0
        bi = r
        bj = r
        for i in range(r, m):
            for j in range(r, n):
                mag = A[i, j].real * A[i, j].real + A[i, j].imag * A[i, j].imag
                if mag > best:
                    best = mag
                    bi = i
                    bj = j
        best = sqrt(best)
        if best <= eps:
            rejected = best
            break
        accepted.append(best)
        if bi != r:
            for j in range(n):
                tmp = A[r, j]; A[r, j] = A[bi, j]; A[bi, j] = tmp
        if bj != r:
            for i in range(m):
                tmp = A[i, r]; A[i, r] = A[i, bj]; A[i, bj] = tmp
            ti = colperm[r]; colperm[r] = colperm[bj]; colperm[bj] = ti
        # explicit reciprocal so both backends round identically
        den = A[r, r].real * A[r, r].real + A[r, r].imag * A[r, r].imag
        piv = A[r, r].real / den - 1j * (A[r, r].imag / den)
        for j in range(r, n):
            A[r, j] = A[r, j] * piv
        for i in range(m):
            if i == r:
                continue
            f = A[i, r]
            if f.real == 0.0 and f.imag == 0.0:
                continue
            for j in range(r, n):
                A[i, j] = A[i, j] - f * A[r, j]
        r += 1

    R = np.zeros((r, n), dtype=np.complex128)
    for i in range(r):
        for j in range(n):
            R[i, colperm[j]] = A[i, j]
    piv_cols = [int(colperm[i]) for i in range(r)]
    return R, piv_cols, accepted, rejected


def hopf_violation(Py_ssize_t d,
                   const i64[::1] m_ptr, const i64[::1] m_idx, const i64[::1] m_val, i64 m_den,
                   const i64[::1] u, i64 u_den,
                   const i64[::1] dl_ptr, const i64[::1] dl_p, const i64[::1] dl_q, const i64[::1] dl_val, i64 dl_den,
                   const i64[::1] eps, i64 eps_den,
                   const i64[::1] s_ptr, const i64[::1] s_idx, const i64[::1] s_val, i64 s_den):
    """First violated Hopf identity as ``(family, i, j, k)`` or ``None``.

    ``m`` is CSR over the flattened pair index ``i*d + j``; ``dl`` is CSR over
    ``i`` with column pairs ``(p, q)``; ``s`` is CSR over ``i`` (the image
    ``S(b_i)``). Families: 1 assoc, 2 unit, 3 coassoc, 4 counit,
    5 bialgebra, 6 antipode.
    """
    cdef Py_ssize_t i, j, k, a, b, c, e, p, q, l, t1, t2, t3, t4, side
    cdef bint bad
    cdef i64 coef, coef2, lhs_scale
    cdef cnp.ndarray[cnp.int64_t, ndim=1] vec = np.zeros(d, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] mat = np.zeros(d * d, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] cube = np.zeros(d * d * d, dtype=np.int64)

    # 1. associativity: (b_i b_j) b_k = b_i (b_j b_k)
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for t1 in range(m_ptr[i * d + j], m_ptr[i * d + j + 1]):
                    l = m_idx[t1]
                    for t2 in range(m_ptr[l * d + k], m_ptr[l * d + k + 1]):
                        vec[m_idx[t2]] += m_val[t1] * m_val[t2]
                for t1 in range(m_ptr[j * d + k], m_ptr[j * d + k + 1]):
                    l = m_idx[t1]
                    for t2 in range(m_ptr[i * d + l], m_ptr[i * d + l + 1]):
                        vec[m_idx[t2]] -= m_val[t1] * m_val[t2]
                for p in range(d):
                    if vec[p] != 0:
                        return (1, i, j, k)

    # 2. unit: u b_j = b_j = b_j u
    for j in range(d):
        for side in range(2):
            for p in range(d):
                vec[p] = 0
            vec[j] = -m_den * u_den
            for i in range(d):
                if u[i] == 0:
                    continue
                if side == 0:
                    a = i * d + j
                else:
                    a = j * d + i
                for t1 in range(m_ptr[a], m_ptr[a + 1]):
                    vec[m_idx[t1]] += u[i] * m_val[t1]
            for p in range(d):
                if vec[p] != 0:
                    return (2, j, side, -1)

    # 3. coassociativity
    for i in range(d):
        for t1 in range(dl_ptr[i], dl_ptr[i + 1]):
            a = dl_p[t1]; b = dl_q[t1]
            for t2 in range(dl_ptr[a], dl_ptr[a + 1]):
                cube[(dl_p[t2] * d + dl_q[t2]) * d + b] += dl_val[t1] * dl_val[t2]
            for t2 in range(dl_ptr[b], dl_ptr[b + 1]):
                cube[(a * d + dl_p[t2]) * d + dl_q[t2]] -= dl_val[t1] * dl_val[t2]
        bad = False
        for t1 in range(dl_ptr[i], dl_ptr[i + 1]):
            a = dl_p[t1]; b = dl_q[t1]
            for t2 in range(dl_ptr[a], dl_ptr[a + 1]):
                k = (dl_p[t2] * d + dl_q[t2]) * d + b
                if cube[k] != 0:
                    bad = True
                cube[k] = 0
            for t2 in range(dl_ptr[b], dl_ptr[b + 1]):
                k = (a * d + dl_p[t2]) * d + dl_q[t2]
                if cube[k] != 0:
                    bad = True
                cube[k] = 0
        if bad:
            return (3, i, -1, -1)

    # 4. counit
    for i in range(d):
        for side in range(2):
            for p in range(d):
                vec[p] = 0
            vec[i] = -dl_den * eps_den
            for t1 in range(dl_ptr[i], dl_ptr[i + 1]):
                if side == 0:
                    vec[dl_q[t1]] += eps[dl_p[t1]] * dl_val[t1]
                else:
                    vec[dl_p[t1]] += eps[dl_q[t1]] * dl_val[t1]
            for p in range(d):
                if vec[p] != 0:
                    return (4, i, side, -1)

    # 5. bialgebra: Delta(xy) = Delta(x)Delta(y), Delta(1) = 1 (x) 1, eps(xy) = eps(x)eps(y), eps(1) = 1
    lhs_scale = dl_den * m_den
    for i in range(d):
        for j in range(d):
            # rhs carries den dl^2 m^2, lhs den dl m
            for t1 in range(m_ptr[i * d + j], m_ptr[i * d + j + 1]):
                k = m_idx[t1]
                for t2 in range(dl_ptr[k], dl_ptr[k + 1]):
                    mat[dl_p[t2] * d + dl_q[t2]] += m_val[t1] * dl_val[t2] * lhs_scale
            for t1 in range(dl_ptr[i], dl_ptr[i + 1]):
                a = dl_p[t1]; b = dl_q[t1]
                for t2 in range(dl_ptr[j], dl_ptr[j + 1]):
                    c = dl_p[t2]; e = dl_q[t2]
                    coef = dl_val[t1] * dl_val[t2]
                    for t3 in range(m_ptr[a * d + c], m_ptr[a * d + c + 1]):
                        coef2 = coef * m_val[t3]
                        p = m_idx[t3]
                        for t4 in range(m_ptr[b * d + e], m_ptr[b * d + e + 1]):
                            mat[p * d + m_idx[t4]] -= coef2 * m_val[t4]
            for p in range(d * d):
                if mat[p] != 0:
                    return (5, i, j, -1)
            # eps(xy) = eps(x) eps(y): lhs den eps*m, rhs den eps^2
            coef = 0
            for t1 in range(m_ptr[i * d + j], m_ptr[i * d + j + 1]):
                coef += eps[m_idx[t1]] * m_val[t1]
            if coef * eps_den != eps[i] * eps[j] * m_den:
                return (5, i, j, -2)
    # Delta(1) = 1 (x) 1
    for i in range(d):
        if u[i] == 0:
            continue
        for t1 in range(dl_ptr[i], dl_ptr[i + 1]):
            mat[dl_p[t1] * d + dl_q[t1]] += u[i] * dl_val[t1] * u_den
    for p in range(d):
        for q in range(d):
            mat[p * d + q] -= u[p] * u[q] * dl_den
    for p in range(d * d):
        if mat[p] != 0:
            return (5, -1, -1, -3)
    coef = 0
    for i in range(d):
        coef += eps[i] * u[i]
    if coef != eps_den * u_den:
        return (5, -1, -1, -4)

    # 6. antipode: m(S (x) id)Delta = u eps = m(id (x) S)Delta
    for i in range(d):
        for side in range(2):
            for p in range(d):
                vec[p] = -u[p] * eps[i] * m_den * s_den * dl_den
            for t1 in range(dl_ptr[i], dl_ptr[i + 1]):
                a = dl_p[t1]; b = dl_q[t1]
                if side == 0:
                    for t2 in range(s_ptr[a], s_ptr[a + 1]):
                        c = s_idx[t2]
                        for t3 in range(m_ptr[c * d + b], m_ptr[c * d + b + 1]):
                            vec[m_idx[t3]] += dl_val[t1] * s_val[t2] * m_val[t3] * u_den * eps_den
                else:
                    for t2 in range(s_ptr[b], s_ptr[b + 1]):
                        c = s_idx[t2]
                        for t3 in range(m_ptr[a * d + c], m_ptr[a * d + c + 1]):
                            vec[m_idx[t3]] += dl_val[t1] * s_val[t2] * m_val[t3] * u_den * eps_den
            for p in range(d):
                if vec[p] != 0:
                    return (6, i, side, -1)
    return None
