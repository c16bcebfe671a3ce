"""Hot loops of the walk summation.

All polynomials here are dense int64 arrays indexed ``[q, v0, v1]`` with fixed
offsets chosen by the caller.  The walk tree is traversed leaf by leaf in
depth-first order (crossing before fold); consecutive leaves share the prefix
above their highest differing bit, so only the changed levels are recomputed.

Set ``MACWALK_DISABLE_JIT=1`` to run the same source as plain numpy.
"""

import os

import numpy as np

JIT_DISABLED = os.environ.get("MACWALK_DISABLE_JIT", "").strip() not in ("", "0")

if JIT_DISABLED:
    JIT_ACTIVE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f

else:
    from numba import njit

    JIT_ACTIVE = True


@njit(cache=True, nogil=True)
def _first_changed_level(idx, length):
    if idx == 0:
        return 0
    x = idx ^ (idx - 1)
    bits = 0
    while x:
        bits += 1
        x >>= 1
    return length - bits


@njit(cache=True, nogil=True)
def walk_ends(mu0, w0, word, right_mult, shift):
    """End translation and end finite part of every walk, in depth-first leaf order."""
    length = word.shape[0]
    n = mu0.shape[0]
    total = 1 << length
    end_mu = np.empty((total, n), dtype=np.int64)
    end_w = np.empty(total, dtype=np.int64)
    mus = np.empty((length + 1, n), dtype=np.int64)
    ws = np.empty(length + 1, dtype=np.int64)
    mus[0] = mu0
    ws[0] = w0
    for idx in range(total):
        for k in range(_first_changed_level(idx, length), length):
            j = word[k]
            if (idx >> (length - 1 - k)) & 1:
                mus[k + 1] = mus[k]
                ws[k + 1] = ws[k]
            else:
                mus[k + 1] = mus[k] + shift[ws[k], j]
                ws[k + 1] = right_mult[ws[k], j]
        end_mu[idx] = mus[length]
        end_w[idx] = ws[length]
    return end_mu, end_w


@njit(cache=True, nogil=True)
def add_box(dst, src, lo, hi, dq, d0, d1, sign, nlo, nhi):
    """``dst += sign * shift(src)`` over the live box ``[lo, hi)`` of ``src``; widens ``[nlo, nhi)``."""
    nq, na, nb = src.shape
    q0, q1 = max(lo[0] + dq, 0), min(hi[0] + dq, nq)
    a0, a1 = max(lo[1] + d0, 0), min(hi[1] + d0, na)
    b0, b1 = max(lo[2] + d1, 0), min(hi[2] + d1, nb)
    if q0 >= q1 or a0 >= a1 or b0 >= b1:
        return
    dst[q0:q1, a0:a1, b0:b1] += sign * src[q0 - dq:q1 - dq, a0 - d0:a1 - d0, b0 - d1:b1 - d1]
    nlo[0], nlo[1], nlo[2] = min(nlo[0], q0), min(nlo[1], a0), min(nlo[2], b0)
    nhi[0], nhi[1], nhi[2] = max(nhi[0], q1), max(nhi[1], a1), max(nhi[2], b1)


@njit(cache=True, nogil=True)
def walk_numerators(w0, word, right_mult, side, yq, yv, var, tl, pref, bins, nbins, shape, offset):
    """Sum the numerators of all walk terms over the common denominator ``prod (1 - Y_k)``.

    Crossing at step ``k`` multiplies by ``1 - Y_k``; a fold multiplies by
    ``v^{-1} (1 - v^2)`` in its own variable, times ``Y_k`` when negative.
    At a leaf the product is shifted by ``t_half`` of the end finite part and
    by the start prefactor ``pref`` and added into its bin.  Each level keeps
    the bounding box of its nonzero entries so work scales with the support.
    """
    length = word.shape[0]
    total = 1 << length
    nq, na, nb = shape[0], shape[1], shape[2]
    out = np.zeros((nbins, nq, na, nb), dtype=np.int64)
    polys = np.zeros((length + 1, nq, na, nb), dtype=np.int64)
    lo = np.zeros((length + 1, 3), dtype=np.int64)
    hi = np.zeros((length + 1, 3), dtype=np.int64)
    polys[0, 0, offset[0], offset[1]] = 1
    lo[0, 0], lo[0, 1], lo[0, 2] = 0, offset[0], offset[1]
    hi[0, 0], hi[0, 1], hi[0, 2] = 1, offset[0] + 1, offset[1] + 1
    ws = np.empty(length + 1, dtype=np.int64)
    ws[0] = w0
    big = np.int64(1) << 40
    for idx in range(total):
        for k in range(_first_changed_level(idx, length), length):
            j = word[k]
            src = polys[k]
            dst = polys[k + 1]
            dst[lo[k + 1, 0]:hi[k + 1, 0], lo[k + 1, 1]:hi[k + 1, 1], lo[k + 1, 2]:hi[k + 1, 2]] = 0
            nlo = lo[k + 1]
            nhi = hi[k + 1]
            nlo[:] = big
            nhi[:] = -big
            if (idx >> (length - 1 - k)) & 1:
                ws[k + 1] = ws[k]
                eq, e0, e1 = 0, 0, 0
                if side[ws[k], j] < 0:
                    eq, e0, e1 = yq[k], yv[k, 0], yv[k, 1]
                if var[k] == 0:
                    add_box(dst, src, lo[k], hi[k], eq, e0 - 1, e1, 1, nlo, nhi)
                    add_box(dst, src, lo[k], hi[k], eq, e0 + 1, e1, -1, nlo, nhi)
                else:
                    add_box(dst, src, lo[k], hi[k], eq, e0, e1 - 1, 1, nlo, nhi)
                    add_box(dst, src, lo[k], hi[k], eq, e0, e1 + 1, -1, nlo, nhi)
            else:
                ws[k + 1] = right_mult[ws[k], j]
                add_box(dst, src, lo[k], hi[k], 0, 0, 0, 1, nlo, nhi)
                add_box(dst, src, lo[k], hi[k], yq[k], yv[k, 0], yv[k, 1], -1, nlo, nhi)
            if nlo[0] >= nhi[0]:
                nlo[:] = 0
                nhi[:] = 0
        w = ws[length]
        scratch_lo = np.zeros(3, dtype=np.int64)
        scratch_hi = np.zeros(3, dtype=np.int64)
        add_box(out[bins[idx]], polys[length], lo[length], hi[length], 0, tl[w, 0] + pref[0], tl[w, 1] + pref[1], 1, scratch_lo, scratch_hi)
    return out


@njit(cache=True, nogil=True)
def divide_atom(p, j, e0, e1):
    """``p / (1 - q^j v0^e0 v1^e1)`` if exact, with a success flag."""
    nq, na, nb = p.shape
    quot = p.copy()
    for qi in range(j, nq):
        for a in range(na):
            for b in range(nb):
                c = quot[qi - j, a, b]
                if c == 0:
                    continue
                ta, tb = a + e0, b + e1
                if ta < 0 or ta >= na or tb < 0 or tb >= nb:
                    return quot, False
                quot[qi, ta, tb] += c
    for qi in range(max(nq - j, 0), nq):
        for a in range(na):
            for b in range(nb):
                if quot[qi, a, b] != 0:
                    return quot, False
    return quot, True
