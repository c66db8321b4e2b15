"""Compiled version of the exhaustive sphere-map search.

Same search as :func:`atoroidal.enumeration.iter_sphere_maps`, written as an
explicit-stack loop so numba can compile it.
"""

import numpy as np
from numba import njit

_ENTER, _NEXT, _RESUME = 0, 1, 2


@njit(cache=True)
def _face(mate, d, other):
    # (length of the closed face through d or 0, whether `other` is on it)
    x = d
    k = 0
    hit = False
    while True:
        m = mate[x]
        if m < 0:
            return 0, False
        x = (m & ~3) | ((m + 1) & 3)
        k += 1
        if x == other:
            hit = True
        if x == d:
            return k, hit


@njit(cache=True)
def _beaten(mate, count, nsteps, label, entry, order):
    nd = 4 * count
    for si in range(nsteps):
        step = 1 if si == 0 else -1
        for root in range(nd):
            if step == 1 and root == 0:
                continue
            for i in range(count):
                label[i] = -1
            r = root >> 2
            label[r] = 0
            entry[r] = root
            order[0] = r
            n_order = 1
            pos = 0
            i = 0
            verdict = 0
            while i < n_order and verdict == 0:
                v = order[i]
                base = entry[v]
                for k in range(4):
                    d = (base & ~3) | ((base + step * k) & 3)
                    m = mate[d]
                    ours = mate[pos] if pos < nd else -1
                    if m < 0 or ours < 0:
                        verdict = 2
                        break
                    w = m >> 2
                    if label[w] < 0:
                        label[w] = n_order
                        entry[w] = m
                        order[n_order] = w
                        n_order += 1
                    word = 4 * label[w] + ((step * ((m & 3) - (entry[w] & 3))) & 3)
                    if word != ours:
                        verdict = 1 if word < ours else 2
                        break
                    pos += 1
                i += 1
            if verdict == 1:
                return True
    return False


@njit(cache=True)
def search(nv, small_ok, orderly, nsteps, out):
    """Fill ``out`` with mate tables; return the count, or -1 if ``out`` is full."""
    nd = 4 * nv
    mate = np.full(nd, -1, np.int64)
    target = nv + 2
    min_open = 1 if small_ok else 3
    depth_cap = 2 * nv + 2
    f_d = np.zeros(depth_cap, np.int64)
    f_cur = np.zeros(depth_cap, np.int64)
    f_count = np.zeros(depth_cap, np.int64)
    f_closed = np.zeros(depth_cap, np.int64)
    f_used = np.zeros(depth_cap, np.int64)
    f_x = np.full(depth_cap, -1, np.int64)
    label = np.zeros(nv, np.int64)
    entry = np.zeros(nv, np.int64)
    order = np.zeros(nv, np.int64)
    nout = 0
    depth = 0
    f_count[0] = 1
    state = _ENTER
    while depth >= 0:
        if state == _ENTER:
            d = f_d[depth]
            count = f_count[depth]
            while d < 4 * count and mate[d] >= 0:
                d += 1
            f_d[depth] = d
            if d == 4 * count:
                if count == nv and f_closed[depth] == target:
                    if nout >= out.shape[0]:
                        return -1
                    out[nout, :] = mate
                    nout += 1
                depth -= 1
                state = _RESUME
                continue
            unmatched = 4 * (nv - count)
            for x in range(4 * count):
                if mate[x] < 0:
                    unmatched += 1
            closed = f_closed[depth]
            if closed + unmatched < target or nd - f_used[depth] < min_open * (target - closed):
                depth -= 1
                state = _RESUME
                continue
            f_cur[depth] = -1 if count < nv else d + 1
            f_x[depth] = -1
            state = _NEXT
        elif state == _RESUME:
            x = f_x[depth]
            d = f_d[depth]
            mate[d] = -1
            mate[x] = -1
            f_x[depth] = -1
            state = _NEXT
        else:
            d = f_d[depth]
            count = f_count[depth]
            cur = f_cur[depth]
            if cur == -1:
                x = 4 * count
                c2 = count + 1
                f_cur[depth] = d + 1
            else:
                x = cur
                while x < 4 * count and mate[x] >= 0:
                    x += 1
                if x >= 4 * count:
                    depth -= 1
                    state = _RESUME
                    continue
                c2 = count
                f_cur[depth] = x + 1
            mate[d] = x
            mate[x] = d
            new = 0
            size = 0
            ok = True
            k1, hit = _face(mate, d, x)
            if k1 > 0:
                new += 1
                size += k1
                if k1 <= 2 and not small_ok:
                    ok = False
            if not hit:
                k2, _ = _face(mate, x, d)
                if k2 > 0:
                    new += 1
                    size += k2
                    if k2 <= 2 and not small_ok:
                        ok = False
            if ok and orderly and _beaten(mate, c2, nsteps, label, entry, order):
                ok = False
            if ok:
                f_x[depth] = x
                closed = f_closed[depth]
                used = f_used[depth]
                depth += 1
                f_d[depth] = d + 1
                f_count[depth] = c2
                f_closed[depth] = closed + new
                f_used[depth] = used + size
                state = _ENTER
            else:
                mate[d] = -1
                mate[x] = -1
    return nout
