"""Pure-Python hot kernels. Reference path and fallback for ``_kernels``.

Values are any exactly ordered numbers (``Fraction`` or ``int``); the
kernels never convert to floating point.
"""

from itertools import product


def descending(bids):
    """Indices of ``bids`` sorted by bid descending, ties by lower index."""
    return sorted(range(len(bids)), key=lambda i: (-bids[i], i))


def wtp(bids):
    ordered = sorted(bids, reverse=True)
    best = ordered[0]
    for i, b in enumerate(ordered, 1):
        v = i * b
        if v > best:
            best = v
    return best


def winners_count(bids, p):
    """Largest i with i times the i-th largest bid >= p, or 0 if none."""
    ordered = sorted(bids, reverse=True)
    t = 0
    for i, b in enumerate(ordered, 1):
        if i * b >= p:
            t = i
    return t


def best_assignment(scores, k, m, excluded=-1):
    """Exhaustive search over item-to-group assignments.

    ``scores[j][mask]`` is the integer value of group ``j`` for the item set
    encoded by ``mask``. An assignment is a length-``m`` vector with entry 0
    for an unassigned item and ``j + 1`` for group ``j``. Returns the best
    total and the lexicographically smallest vector reaching it; group
    ``excluded`` is never assigned anything.
    """
    best_val = None
    best_vec = None
    choices = [a for a in range(k + 1) if a != excluded + 1 or excluded < 0]
    for vec in product(choices, repeat=m):
        masks = [0] * (k + 1)
        for l, a in enumerate(vec):
            masks[a] |= 1 << l
        total = 0
        for j in range(k):
            if masks[j + 1]:
                total += scores[j][masks[j + 1]]
        if best_val is None or total > best_val:
            best_val = total
            best_vec = vec
    return best_val, tuple(best_vec)


def single_item(columns):
    """Fused single-item round on integer bids, one list per group.

    Returns ``(group_wtps, winner, price, t, access)``: the winner is the
    lowest-index group with the highest willingness to pay, ``price`` the
    highest other group's, ``t`` the winners count at that price and
    ``access`` the indices of the ``t`` highest bidders of the winner.
    """
    wtps = []
    orders = []
    for bids in columns:
        order = sorted(range(len(bids)), key=lambda i: (-bids[i], i))
        best = 0
        for r, i in enumerate(order, 1):
            v = r * bids[i]
            if v > best:
                best = v
        wtps.append(best)
        orders.append(order)
    winner = 0
    for j in range(1, len(wtps)):
        if wtps[j] > wtps[winner]:
            winner = j
    price = 0
    for j, w in enumerate(wtps):
        if j != winner and w > price:
            price = w
    bids = columns[winner]
    order = orders[winner]
    t = 0
    for r, i in enumerate(order, 1):
        if r * bids[i] >= price:
            t = r
    return wtps, winner, price, t, tuple(order[:t])


def subset_dp(scores, k, m):
    """Best total of ``scores`` over disjoint item sets, one per group.

    Runs in ``k * 3**m`` steps: ``best[j][avail]`` is the most groups
    ``j..k-1`` can get from the items in ``avail``. Returns the optimum and
    an assignment vector in the ``best_assignment`` encoding.
    """
    full = (1 << m) - 1
    best = [[0] * (full + 1) for _ in range(k + 1)]
    pick = [[0] * (full + 1) for _ in range(k)]
    for j in range(k - 1, -1, -1):
        row, nxt, sc, pk = best[j], best[j + 1], scores[j], pick[j]
        for avail in range(full + 1):
            top = nxt[avail]
            choice = 0
            sub = avail
            while sub:
                v = sc[sub] + nxt[avail ^ sub]
                if v > top:
                    top = v
                    choice = sub
                sub = (sub - 1) & avail
            row[avail] = top
            pk[avail] = choice
    vec = [0] * m
    avail = full
    for j in range(k):
        s = pick[j][avail]
        for l in range(m):
            if s >> l & 1:
                vec[l] = j + 1
        avail ^= s
    return best[0][full], tuple(vec)
