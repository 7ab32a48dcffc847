# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; same contract as ``_kernels_py``.

``best_assignment`` runs on C ``long long`` when every partial sum is
guaranteed to fit, and on Python integers otherwise, so results stay exact.
"""

from libc.stdlib cimport malloc, free


def descending(bids):
    return sorted(range(len(bids)), key=lambda i: (-bids[i], i))


def wtp(bids):
    cdef Py_ssize_t i, n
    ordered = sorted(bids, reverse=True)
    n = len(ordered)
    best = ordered[0]
    for i in range(1, n):
        v = (i + 1) * ordered[i]
        if v > best:
            best = v
    return best


def winners_count(bids, p):
    cdef Py_ssize_t i, n, t = 0
    ordered = sorted(bids, reverse=True)
    n = len(ordered)
    for i in range(n):
        if (i + 1) * ordered[i] >= p:
            t = i + 1
    return t


cdef long long _LIMIT = 1LL << 62


def best_assignment(scores, int k, int m, int excluded=-1):
    cdef Py_ssize_t nmask = 1 << m
    top = 0
    for row in scores:
        top += max(row)
    if top < _LIMIT and all(min(row) >= 0 for row in scores):
        return _best_c(scores, k, m, excluded, nmask)
    return _best_obj(scores, k, m, excluded)


cdef tuple _best_c(scores, int k, int m, int excluded, Py_ssize_t nmask):
    cdef long long *table = <long long *> malloc(k * nmask * sizeof(long long))
    cdef int *vec = <int *> malloc(m * sizeof(int))
    cdef int *best = <int *> malloc(m * sizeof(int))
    cdef long long *masks = <long long *> malloc((k + 1) * sizeof(long long))
    cdef int *choice = <int *> malloc((k + 1) * sizeof(int))
    cdef int nchoice = 0, a, j, l, pos
    cdef long long total, best_val = -1
    cdef Py_ssize_t s
    if not table or not vec or not best or not masks or not choice:
        free(table); free(vec); free(best); free(masks); free(choice)
        raise MemoryError()
    try:
        for j in range(k):
            row = scores[j]
            for s in range(nmask):
                table[j * nmask + s] = row[s]
        for a in range(k + 1):
            if excluded < 0 or a != excluded + 1:
                choice[nchoice] = a
                nchoice += 1
        for l in range(m):
            vec[l] = 0
        while True:
            for j in range(k + 1):
                masks[j] = 0
            for l in range(m):
                masks[choice[vec[l]]] |= (1LL << l)
            total = 0
            for j in range(k):
                if masks[j + 1]:
                    total += table[j * nmask + masks[j + 1]]
            if total > best_val:
                best_val = total
                for l in range(m):
                    best[l] = choice[vec[l]]
            # odometer, last item varies fastest
            pos = m - 1
            while pos >= 0:
                vec[pos] += 1
                if vec[pos] < nchoice:
                    break
                vec[pos] = 0
                pos -= 1
            if pos < 0:
                break
        return best_val, tuple([best[l] for l in range(m)])
    finally:
        free(table); free(vec); free(best); free(masks); free(choice)


cdef tuple _best_obj(scores, int k, int m, int excluded):
    from itertools import product
    cdef int j, l, a
    best_val = None
    best_vec = None
    choices = [a for a in range(k + 1) if excluded < 0 or a != excluded + 1]
    for vec in product(choices, repeat=m):
        masks = [0] * (k + 1)
        for l in range(m):
            masks[vec[l]] |= 1 << l
        total = 0
        for j in range(k):
            if masks[j + 1]:
                total += scores[j][masks[j + 1]]
        if best_val is None or total > best_val:
            best_val = total
            best_vec = vec
    return best_val, tuple(best_vec)


cdef void _sort_desc(long long *vals, int *idx, int n) noexcept:
    # insertion sort by value descending, index ascending; groups are small
    cdef int a, b, ti
    cdef long long tv
    for a in range(1, n):
        tv = vals[a]
        ti = idx[a]
        b = a - 1
        while b >= 0 and vals[b] < tv:
            vals[b + 1] = vals[b]
            idx[b + 1] = idx[b]
            b -= 1
        vals[b + 1] = tv
        idx[b + 1] = ti


def single_item(columns):
    cdef Py_ssize_t total = 0, n_max = 0
    top = 0
    for bids in columns:
        total += len(bids)
        if len(bids) > n_max:
            n_max = len(bids)
        for b in bids:
            if b < 0:
                return _single_item_obj(columns)
            if b > top:
                top = b
    if top * n_max >= _LIMIT:
        return _single_item_obj(columns)
    return _single_item_c(columns, total)


cdef tuple _single_item_c(columns, Py_ssize_t total):
    cdef int k = len(columns)
    cdef long long *vals = <long long *> malloc(max(total, 1) * sizeof(long long))
    cdef int *idx = <int *> malloc(max(total, 1) * sizeof(int))
    cdef int *start = <int *> malloc((k + 1) * sizeof(int))
    cdef long long *wtp_c = <long long *> malloc(k * sizeof(long long))
    cdef int j, i, n, off, winner, t
    cdef long long best, v, price
    if not vals or not idx or not start or not wtp_c:
        free(vals); free(idx); free(start); free(wtp_c)
        raise MemoryError()
    try:
        off = 0
        for j in range(k):
            bids = columns[j]
            n = len(bids)
            start[j] = off
            for i in range(n):
                vals[off + i] = bids[i]
                idx[off + i] = i
            _sort_desc(vals + off, idx + off, n)
            best = 0
            for i in range(n):
                v = (i + 1) * vals[off + i]
                if v > best:
                    best = v
            wtp_c[j] = best
            off += n
        start[k] = off
        winner = 0
        for j in range(1, k):
            if wtp_c[j] > wtp_c[winner]:
                winner = j
        price = 0
        for j in range(k):
            if j != winner and wtp_c[j] > price:
                price = wtp_c[j]
        off = start[winner]
        n = start[winner + 1] - off
        t = 0
        for i in range(n):
            if (i + 1) * vals[off + i] >= price:
                t = i + 1
        return ([wtp_c[j] for j in range(k)], winner, price, t,
                tuple([idx[off + i] for i in range(t)]))
    finally:
        free(vals); free(idx); free(start); free(wtp_c)


cdef tuple _single_item_obj(columns):
    wtps = []
    orders = []
    for bids in columns:
        order = sorted(range(len(bids)), key=lambda i: (-bids[i], i))
        best = 0
        for r in range(len(order)):
            v = (r + 1) * bids[order[r]]
            if v > best:
                best = v
        wtps.append(best)
        orders.append(order)
    winner = 0
    for j in range(1, len(wtps)):
        if wtps[j] > wtps[winner]:
            winner = j
    price = 0
    for j in range(len(wtps)):
        if j != winner and wtps[j] > price:
            price = wtps[j]
    bids = columns[winner]
    order = orders[winner]
    t = 0
    for r in range(len(order)):
        if (r + 1) * bids[order[r]] >= price:
            t = r + 1
    return wtps, winner, price, t, tuple(order[:t])


def subset_dp(scores, int k, int m):
    top = 0
    for row in scores:
        top += max(row)
    if top < _LIMIT and all(min(row) >= 0 for row in scores):
        return _subset_dp_c(scores, k, m)
    from twolevel._kernels_py import subset_dp as slow
    return slow(scores, k, m)


cdef tuple _subset_dp_c(scores, int k, int m):
    cdef Py_ssize_t size = 1 << m
    cdef Py_ssize_t full = size - 1
    cdef long long *sc = <long long *> malloc(k * size * sizeof(long long))
    cdef long long *best = <long long *> malloc((k + 1) * size * sizeof(long long))
    cdef Py_ssize_t *pick = <Py_ssize_t *> malloc(k * size * sizeof(Py_ssize_t))
    cdef Py_ssize_t avail, sub, choice, s
    cdef long long v, top_v
    cdef int j, l
    if not sc or not best or not pick:
        free(sc); free(best); free(pick)
        raise MemoryError()
    try:
        for j in range(k):
            row = scores[j]
            for s in range(size):
                sc[j * size + s] = row[s]
        for s in range(size):
            best[k * size + s] = 0
        for j in range(k - 1, -1, -1):
            for avail in range(size):
                top_v = best[(j + 1) * size + avail]
                choice = 0
                sub = avail
                while sub:
                    v = sc[j * size + sub] + best[(j + 1) * size + (avail ^ sub)]
                    if v > top_v:
                        top_v = v
                        choice = sub
                    sub = (sub - 1) & avail
                best[j * size + avail] = top_v
                pick[j * size + avail] = choice
        vec = [0] * m
        avail = full
        for j in range(k):
            s = pick[j * size + avail]
            for l in range(m):
                if (s >> l) & 1:
                    vec[l] = j + 1
            avail ^= s
        return best[full], tuple(vec)
    finally:
        free(sc); free(best); free(pick)
