"""Compiled inner loops.

Everything random is drawn outside these kernels (Philox, in numpy) and
passed in as arrays, so the kernels are deterministic functions of their
inputs.
"""
import math

import numpy as np
from numba import njit

HALF_PI = 0.5 * math.pi
TWO_PI = 2.0 * math.pi


@njit(cache=True, nogil=True)
def null_vector(A, lam, pivcol, rel_tol):
    """Nonzero ``lam`` with ``A @ lam == 0`` for a wide matrix ``A``.

    Gauss-Jordan elimination with partial pivoting, in place on ``A``. The
    first free column gets weight 1, other free columns 0. Returns the rank.
    """
    rows, cols = A.shape
    scale = 0.0
    for i in range(rows):
        for j in range(cols):
            a = abs(A[i, j])
            if a > scale:
                scale = a
    tol = rel_tol * max(scale, 1.0)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r
        best = abs(A[r, c])
        for i in range(r + 1, rows):
            a = abs(A[i, c])
            if a > best:
                best = a
                p = i
        if best <= tol:
            continue
        if p != r:
            for j in range(cols):
                tmp = A[r, j]
                A[r, j] = A[p, j]
                A[p, j] = tmp
        piv = A[r, c]
        for j in range(cols):
            A[r, j] /= piv
        for i in range(rows):
            if i != r:
                f = A[i, c]
                if f != 0.0:
                    for j in range(cols):
                        A[i, j] -= f * A[r, j]
        pivcol[r] = c
        r += 1
    rank = r
    free = -1
    k = 0
    for c in range(cols):
        if k < rank and pivcol[k] == c:
            k += 1
        else:
            free = c
            break
    for j in range(cols):
        lam[j] = 0.0
    if free < 0:
        return rank
    lam[free] = 1.0
    for i in range(rank):
        lam[pivcol[i]] = -A[i, free]
    return rank


@njit(cache=True, nogil=True)
def radon_combine(pts, lam, zero_tol, out):
    """Radon point of ``pts`` from a null vector; writes into ``out``.

    Returns False if ``lam`` has no strictly negative entry (degenerate).
    """
    m, d = pts.shape
    big = 0.0
    for i in range(m):
        if abs(lam[i]) > big:
            big = abs(lam[i])
    z = zero_tol * big
    s1 = 0.0
    s2 = 0.0
    for i in range(m):
        if lam[i] > z:
            s1 += lam[i]
        elif lam[i] < -z:
            s2 -= lam[i]
    if s1 <= 0.0 or s2 <= 0.0:
        return False
    for k in range(d):
        a = 0.0
        b = 0.0
        for i in range(m):
            if lam[i] > z:
                a += lam[i] * pts[i, k]
            elif lam[i] < -z:
                b -= lam[i] * pts[i, k]
        out[k] = 0.5 * (a / s1 + b / s2)
    return True


@njit(cache=True, nogil=True)
def radon_iterate(Q, draws, rel_tol, zero_tol):
    """Run ``len(draws)`` rounds of Radon replacement on ``Q`` in place.

    ``draws[j, :d+2]`` are the sampled indices and ``draws[j, d+2]`` the index
    that is overwritten. Returns the number of rounds whose Radon solve failed
    (those rounds leave ``Q`` untouched).
    """
    s, d = Q.shape
    m = d + 2
    pts = np.empty((m, d))
    A = np.empty((d + 1, m))
    lam = np.empty(m)
    pivcol = np.empty(d + 1, dtype=np.int64)
    out = np.empty(d)
    failures = 0
    for j in range(draws.shape[0]):
        for i in range(m):
            idx = draws[j, i]
            for k in range(d):
                v = Q[idx, k]
                pts[i, k] = v
                A[k, i] = v
            A[d, i] = 1.0
        null_vector(A, lam, pivcol, rel_tol)
        if radon_combine(pts, lam, zero_tol, out):
            dst = draws[j, m]
            for k in range(d):
                Q[dst, k] = out[k]
        else:
            failures += 1
    return failures


@njit(cache=True, nogil=True)
def urn_chunk(r, n, t, rcap, marks, samples, dwell, visits, budget):
    """Play urn rounds until absorption, ``budget`` rounds, or chunk end.

    Returns (red, rounds_played, effective_rounds, max_red, stopped).
    """
    played = 0
    effective = 0
    max_red = r
    stopped = False
    for j in range(marks.shape[0]):
        if r == 0 or r >= rcap or played >= budget:
            stopped = True
            break
        dwell[r] += 1
        reds = 0
        for i in range(t):
            if samples[j, i] < r:
                reds += 1
        new_red = 1 if reds >= 2 else 0
        deleted_red = 1 if marks[j] < r else 0
        played += 1
        nr = r + new_red - deleted_red
        if nr != r:
            effective += 1
            r = nr
            visits[r] += 1
            if r > max_red:
                max_red = r
    if r == 0 or r >= rcap:
        stopped = True
    return r, played, effective, max_red, stopped


@njit(cache=True, nogil=True)
def walk_chunk(y, top, p_down, u, visits, budget):
    """Advance a +-1 walk over uniforms ``u``; absorbing at 0 and ``top``.

    Stops early if the walk would leave ``visits``. Returns (y, steps).
    """
    steps = 0
    cap = visits.shape[0] - 1
    for j in range(u.shape[0]):
        if y <= 0 or y >= top or steps >= budget:
            break
        if u[j] < p_down:
            ny = y - 1
        else:
            ny = y + 1
        if ny > cap:
            break
        y = ny
        visits[y] += 1
        steps += 1
    return y, steps


@njit(cache=True, nogil=True)
def _semicircle_count(theta, lo):
    # points of sorted ``theta`` (in [-pi, pi]) with angle in the closed arc [lo, lo+pi]
    hi = lo + math.pi
    cnt = np.searchsorted(theta, hi, side="right") - np.searchsorted(theta, lo, side="left")
    if hi > math.pi:
        cnt += np.searchsorted(theta, hi - TWO_PI, side="right")
    if lo < -math.pi:
        cnt += theta.shape[0] - np.searchsorted(theta, lo + TWO_PI, side="left")
    return cnt


@njit(cache=True, nogil=True)
def depth2d(px, py, qx, qy, merge_tol, upper):
    """Closed-halfplane Tukey depth of (qx, qy) by angular sweep.

    Evaluates every open arc between consecutive distinct critical directions
    at its midpoint. Stops as soon as the running minimum drops to ``upper``
    or below. Returns (depth, normal_x, normal_y) where the normal is the
    inward normal of a minimising halfplane through q.
    """
    n = px.shape[0]
    theta = np.empty(n)
    z = 0
    m = 0
    for i in range(n):
        vx = px[i] - qx
        vy = py[i] - qy
        if vx == 0.0 and vy == 0.0:
            z += 1
        else:
            theta[m] = math.atan2(vy, vx)
            m += 1
    if m == 0:
        return z, 1.0, 0.0
    theta = np.sort(theta[:m])
    crit = np.empty(2 * m)
    for i in range(m):
        a = theta[i] + HALF_PI
        if a >= math.pi:
            a -= TWO_PI
        b = theta[i] - HALF_PI
        if b < -math.pi:
            b += TWO_PI
        crit[2 * i] = a
        crit[2 * i + 1] = b
    crit = np.sort(crit)
    # collapse critical directions closer than merge_tol (cyclically)
    uniq = np.empty(2 * m)
    k = 0
    for i in range(2 * m):
        if k == 0 or crit[i] - uniq[k - 1] > merge_tol:
            uniq[k] = crit[i]
            k += 1
    if k > 1 and uniq[0] + TWO_PI - uniq[k - 1] <= merge_tol:
        k -= 1
    best = m + 1
    bx = 1.0
    by = 0.0
    for i in range(k):
        a = uniq[i]
        if i + 1 < k:
            b = uniq[i + 1]
        else:
            b = uniq[0] + TWO_PI
        phi = 0.5 * (a + b)
        if k == 1:
            phi = a + math.pi
        lo = phi - HALF_PI
        while lo >= math.pi:
            lo -= TWO_PI
        while lo < -math.pi:
            lo += TWO_PI
        c = _semicircle_count(theta, lo)
        if c < best:
            best = c
            bx = math.cos(phi)
            by = math.sin(phi)
            if best + z <= upper:
                break
    return best + z, bx, by


_PROBE = np.array([[math.cos(k * math.pi / 4.0), math.sin(k * math.pi / 4.0)] for k in range(8)])


@njit(cache=True, nogil=True)
def argmax_depth2d(px, py, cand, merge_tol, probe):
    """Index and depth of the first candidate of maximum Tukey depth.

    Candidates are screened with a cheap upper bound (closed counts along
    the fixed ``probe`` directions) before the full sweep.
    """
    n = px.shape[0]
    best = -1
    best_i = -1
    for c in range(cand.shape[0]):
        qx = cand[c, 0]
        qy = cand[c, 1]
        ub = n
        for k in range(probe.shape[0]):
            ux = probe[k, 0]
            uy = probe[k, 1]
            off = ux * qx + uy * qy
            cnt = 0
            for i in range(n):
                if ux * px[i] + uy * py[i] >= off:
                    cnt += 1
            if cnt < ub:
                ub = cnt
            if ub <= best:
                break
        if ub <= best:
            continue
        dep, _, _ = depth2d(px, py, qx, qy, merge_tol, best)
        if dep > best:
            best = dep
            best_i = c
    return best_i, best


@njit(cache=True, nogil=True)
def in_convex_polygon(X, V, out):
    """out[i] = X[i] is left of (or on) every edge of the ccw polygon V."""
    m = V.shape[0]
    for i in range(X.shape[0]):
        x = X[i, 0]
        y = X[i, 1]
        inside = True
        for k in range(m):
            j = k + 1 if k + 1 < m else 0
            ex = V[j, 0] - V[k, 0]
            ey = V[j, 1] - V[k, 1]
            if ex * (y - V[k, 1]) - ey * (x - V[k, 0]) < 0.0:
                inside = False
                break
        out[i] = inside
