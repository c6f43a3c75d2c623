"""Pure-Python (numpy/scipy) versions of the compiled kernels.

Signatures and witness ordering match ``_kernels.pyx`` so callers cannot tell
the backends apart except by speed.
"""

import numpy as np
import scipy.sparse as sp


def _first(mask):
    idx = np.flatnonzero(mask.ravel())
    if idx.size == 0:
        return None
    return tuple(int(v) for v in np.unravel_index(idx[0], mask.shape))


def assoc_witness(mul):
    mul = np.asarray(mul)
    left = mul[mul][:, :, :]  # left[a, b, c] = mul[mul[a, b], c]
    right = mul[:, mul]  # right[a, b, c] = mul[a, mul[b, c]]
    return _first(left != right)


def matched_witnesses(gmul, smul, rhd, lhd, ge, se, limit):
    gmul, smul, rhd, lhd = (np.asarray(t) for t in (gmul, smul, rhd, lhd))
    ng, ns = gmul.shape[0], smul.shape[0]
    out = []

    def take(fam, rows):
        out.extend((fam,) + tuple(int(v) for v in r) for r in rows[:limit])

    g_all = np.arange(ng)
    s_all = np.arange(ns)

    rows = [(se, -1, g, -1) for g in np.flatnonzero(rhd[se] != g_all)]
    bad = rhd[smul][:, :, :] != rhd[:, rhd]  # [s, t, g]
    rows += [(s, t, g, -1) for s, t, g in zip(*np.nonzero(bad))]
    take(0, rows)

    rows = []
    gh_bad = lhd[:, gmul] != lhd[lhd][:, :, :]  # [s, g, h]: s<(gh) vs (s<g)<h
    for s in range(ns):
        if lhd[s, ge] != s:
            rows.append((s, -1, ge, -1))
        rows += [(s, -1, g, h) for g, h in zip(*np.nonzero(gh_bad[s]))]
    take(1, rows)

    take(2, [(s, -1, ge, -1) for s in np.flatnonzero(rhd[:, ge] != ge)])
    take(3, [(se, -1, g, -1) for g in np.flatnonzero(lhd[se] != se)])

    lhs = rhd[:, gmul]  # [s, g, h]
    rhs = gmul[rhd[:, :, None], rhd[lhd][:, :, :]]  # gmul[s>g, (s<g)>h]
    take(4, [(s, -1, g, h) for s, g, h in zip(*np.nonzero(lhs != rhs))])

    lhs = lhd[smul]  # [s, t, g]
    rhs = smul[lhd[s_all[:, None, None], rhd[None, :, :]], lhd[None, :, :]]
    take(5, [(s, t, g, -1) for s, t, g in zip(*np.nonzero(lhs != rhs))])
    return out


def fusion_assoc_witness(N):
    N = np.asarray(N)
    n = N.shape[0]
    lhs = (N.reshape(n * n, n) @ N.reshape(n, n * n)).reshape(n, n, n, n)
    rhs = np.einsum("yzw,xwv->xyzv", N, N)
    return _first(lhs != rhs)


def eliminate(A_in, eps):
    A = np.array(A_in, dtype=np.complex128, copy=True)
    m, n = A.shape
    rowmax = np.abs(A).max(axis=1) if n else np.zeros(m)
    nz = rowmax > 0
    A[nz] = A[nz].real / rowmax[nz, None] + 1j * (A[nz].imag / rowmax[nz, None])
    colperm = np.arange(n)
    accepted = []
    rejected = 0.0
    r = 0
    while r < m and r < n:
        sub = A[r:, r:]
        mags = sub.real ** 2 + sub.imag ** 2
        k = int(np.argmax(mags))
        bi, bj = divmod(k, sub.shape[1])
        best = float(np.sqrt(mags.flat[k]))
        if best <= eps:
            rejected = best
            break
        accepted.append(best)
        bi += r
        bj += r
        if bi != r:
            A[[r, bi]] = A[[bi, r]]
        if bj != r:
            A[:, [r, bj]] = A[:, [bj, r]]
            colperm[[r, bj]] = colperm[[bj, r]]
        p = A[r, r]
        den = p.real * p.real + p.imag * p.imag
        A[r, r:] *= complex(p.real / den, -(p.imag / den))
        f = A[:, r].copy()
        f[r] = 0
        rows = np.flatnonzero(f)
        if rows.size:
            A[rows, r:] -= np.outer(f[rows], A[r, r:])
        r += 1
    R = np.zeros((r, n), dtype=np.complex128)
    R[:, colperm] = A[:r]
    return R, [int(c) for c in colperm[:r]], accepted, rejected


def _dense(d, ptr, idx, val, shape):
    out = np.zeros(shape, dtype=np.int64)
    flat = out.reshape(len(ptr) - 1, -1)
    for r in range(len(ptr) - 1):
        for t in range(ptr[r], ptr[r + 1]):
            flat[r, idx[t]] += val[t]
    return out


def _unpack(d, m_ptr, m_idx, m_val, dl_ptr, dl_p, dl_q, dl_val, s_ptr, s_idx, s_val):
    m_rows = np.repeat(np.arange(d * d), np.diff(m_ptr))
    dl_rows = np.repeat(np.arange(d), np.diff(dl_ptr))
    s_rows = np.repeat(np.arange(d), np.diff(s_ptr))
    return (m_rows, np.asarray(m_idx), np.asarray(m_val),
            dl_rows, np.asarray(dl_p), np.asarray(dl_q), np.asarray(dl_val),
            s_rows, np.asarray(s_idx), np.asarray(s_val))


def hopf_violation(d, m_ptr, m_idx, m_val, m_den, u, u_den,
                   dl_ptr, dl_p, dl_q, dl_val, dl_den, eps, eps_den,
                   s_ptr, s_idx, s_val, s_den):
    (m_rows, m_idx, m_val, dl_rows, dl_p, dl_q, dl_val,
     s_rows, s_idx, s_val) = _unpack(d, m_ptr, m_idx, m_val, dl_ptr, dl_p, dl_q, dl_val,
                                     s_ptr, s_idx, s_val)
    u = np.asarray(u, dtype=np.int64)
    eps = np.asarray(eps, dtype=np.int64)
    if d <= 12:
        return _hopf_dense(d, m_rows, m_idx, m_val, m_den, u, u_den, dl_rows, dl_p, dl_q, dl_val,
                           dl_den, eps, eps_den, s_rows, s_idx, s_val, s_den)
    return _hopf_sparse(d, m_rows, m_idx, m_val, m_den, u, u_den, dl_rows, dl_p, dl_q, dl_val,
                        dl_den, eps, eps_den, s_rows, s_idx, s_val, s_den)


def _hopf_dense(d, m_rows, m_idx, m_val, m_den, u, u_den, dl_rows, dl_p, dl_q, dl_val,
                dl_den, eps, eps_den, s_rows, s_idx, s_val, s_den):
    m = np.zeros((d, d, d), dtype=np.int64)
    np.add.at(m, (m_rows // d, m_rows % d, m_idx), m_val)
    D = np.zeros((d, d, d), dtype=np.int64)
    np.add.at(D, (dl_rows, dl_p, dl_q), dl_val)
    S = np.zeros((d, d), dtype=np.int64)
    np.add.at(S, (s_rows, s_idx), s_val)
    eye = np.eye(d, dtype=np.int64)

    w = _first((np.einsum("ijl,lkn->ijkn", m, m) != np.einsum("jkl,iln->ijkn", m, m)).any(axis=3))
    if w:
        return (1,) + w
    u0 = np.einsum("i,ijk->jk", u, m) - eye * (u_den * m_den)
    u1 = np.einsum("i,jik->jk", u, m) - eye * (u_den * m_den)
    bad = np.stack([u0.any(axis=1), u1.any(axis=1)], axis=1)
    w = _first(bad)
    if w:
        return (2, w[0], w[1], -1)
    c1 = np.einsum("ipc,pab->iabc", D, D)
    c2 = np.einsum("iap,pbc->iabc", D, D)
    w = _first((c1 != c2).reshape(d, -1).any(axis=1))
    if w:
        return (3, w[0], -1, -1)
    e0 = np.einsum("p,ipq->iq", eps, D) - eye * (dl_den * eps_den)
    e1 = np.einsum("q,ipq->ip", eps, D) - eye * (dl_den * eps_den)
    w = _first(np.stack([e0.any(axis=1), e1.any(axis=1)], axis=1))
    if w:
        return (4, w[0], w[1], -1)
    lhs = np.einsum("ijk,kpq->ijpq", m, D) * (dl_den * m_den)
    rhs = np.einsum("iab,jce,acp,beq->ijpq", D, D, m, m, optimize=True)
    bad_delta = (lhs != rhs).reshape(d, d, -1).any(axis=2)
    bad_eps = (np.einsum("ijk,k->ij", m, eps) * eps_den) != np.outer(eps, eps) * m_den
    w = _first(bad_delta | bad_eps)
    if w:
        return (5, w[0], w[1], -1 if bad_delta[w] else -2)
    if (np.einsum("i,ipq->pq", u, D) * u_den != np.outer(u, u) * dl_den).any():
        return (5, -1, -1, -3)
    if int(eps @ u) != eps_den * u_den:
        return (5, -1, -1, -4)
    target = np.outer(eps, u) * (m_den * s_den * dl_den)
    a0 = np.einsum("iab,ac,cbk->ik", D, S, m) * (u_den * eps_den) - target
    a1 = np.einsum("iab,bc,ack->ik", D, S, m) * (u_den * eps_den) - target
    w = _first(np.stack([a0.any(axis=1), a1.any(axis=1)], axis=1))
    if w:
        return (6, w[0], w[1], -1)
    return None


def _coo(rows, cols, vals, shape):
    return sp.coo_matrix((np.asarray(vals, dtype=np.int64), (rows, cols)), shape=shape).tocsr()


def _nonzero_cols(A):
    A = A.tocsc()
    A.eliminate_zeros()
    return np.flatnonzero(np.diff(A.indptr))


def _hopf_sparse(d, m_rows, m_idx, m_val, m_den, u, u_den, dl_rows, dl_p, dl_q, dl_val,
                 dl_den, eps, eps_den, s_rows, s_idx, s_val, s_den):
    # linear maps act on column vectors: M: H(x)H -> H, D: H -> H(x)H
    M = _coo(m_idx, m_rows, m_val, (d, d * d))
    D = _coo(dl_p * d + dl_q, dl_rows, dl_val, (d * d, d))
    S = _coo(s_idx, s_rows, s_val, (d, d))
    I = sp.identity(d, dtype=np.int64, format="csr")
    ucol = sp.csr_matrix(u.reshape(d, 1))
    erow = sp.csr_matrix(eps.reshape(1, d))

    diff = M @ sp.kron(M, I) - M @ sp.kron(I, M)
    cols = _nonzero_cols(diff)
    if cols.size:
        i, rest = divmod(int(cols[0]), d * d)
        return (1, i, rest // d, rest % d)

    u0 = M @ sp.kron(ucol, I) - I * (u_den * m_den)
    u1 = M @ sp.kron(I, ucol) - I * (u_den * m_den)
    bad0 = np.zeros(d, bool)
    bad1 = np.zeros(d, bool)
    bad0[_nonzero_cols(u0)] = True
    bad1[_nonzero_cols(u1)] = True
    w = _first(np.stack([bad0, bad1], axis=1))
    if w:
        return (2, w[0], w[1], -1)

    diff = sp.kron(D, I) @ D - sp.kron(I, D) @ D
    cols = _nonzero_cols(diff)
    if cols.size:
        return (3, int(cols[0]), -1, -1)

    e0 = sp.kron(erow, I) @ D - I * (dl_den * eps_den)
    e1 = sp.kron(I, erow) @ D - I * (dl_den * eps_den)
    bad0 = np.zeros(d, bool)
    bad1 = np.zeros(d, bool)
    bad0[_nonzero_cols(e0)] = True
    bad1[_nonzero_cols(e1)] = True
    w = _first(np.stack([bad0, bad1], axis=1))
    if w:
        return (4, w[0], w[1], -1)

    lhs = (D @ M) * (dl_den * m_den)
    # (m (x) m)(id (x) swap (x) id)(D (x) D) by joining coordinates
    DD = sp.kron(D, D).tocoo()
    r = DD.row
    a, rest = np.divmod(r, d ** 3)
    b, rest = np.divmod(rest, d * d)
    c, e = np.divmod(rest, d)
    Mc = M.tocsc()
    ac, be = a * d + c, b * d + e
    cnt1 = np.diff(Mc.indptr)[ac]
    sel1 = np.repeat(np.arange(r.size), cnt1)
    off1 = np.arange(sel1.size) - np.repeat(np.cumsum(cnt1) - cnt1, cnt1)
    pos1 = Mc.indptr[ac[sel1]] + off1
    p, w1 = Mc.indices[pos1], Mc.data[pos1]
    be1 = be[sel1]
    cnt2 = np.diff(Mc.indptr)[be1]
    sel2 = np.repeat(np.arange(sel1.size), cnt2)
    off2 = np.arange(sel2.size) - np.repeat(np.cumsum(cnt2) - cnt2, cnt2)
    pos2 = Mc.indptr[be1[sel2]] + off2
    q, w2 = Mc.indices[pos2], Mc.data[pos2]
    vals = DD.data[sel1][sel2] * w1[sel2] * w2
    rhs = _coo(p[sel2] * d + q, DD.col[sel1][sel2], vals, (d * d, d * d))
    bad_delta = np.zeros(d * d, bool)
    bad_delta[_nonzero_cols(lhs - rhs)] = True
    em = np.asarray((erow @ M).todense()).ravel() * eps_den
    bad_eps = em != np.outer(eps, eps).ravel() * m_den
    bad = bad_delta | bad_eps
    if bad.any():
        k = int(np.flatnonzero(bad)[0])
        return (5, k // d, k % d, -1 if bad_delta[k] else -2)
    if ((D @ ucol) * u_den - sp.csr_matrix(np.outer(u, u).reshape(-1, 1)) * dl_den).count_nonzero():
        return (5, -1, -1, -3)
    if int(eps @ u) != eps_den * u_den:
        return (5, -1, -1, -4)

    target = sp.csr_matrix(np.outer(u, eps)) * (m_den * s_den * dl_den)
    a0 = (M @ sp.kron(S, I) @ D) * (u_den * eps_den) - target
    a1 = (M @ sp.kron(I, S) @ D) * (u_den * eps_den) - target
    bad0 = np.zeros(d, bool)
    bad1 = np.zeros(d, bool)
    bad0[_nonzero_cols(a0)] = True
    bad1[_nonzero_cols(a1)] = True
    w = _first(np.stack([bad0, bad1], axis=1))
    if w:
        return (6, w[0], w[1], -1)
    return None
