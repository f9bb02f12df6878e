"""Pure-Python adjacency kernel for the double description step.

Supports are Python ints used as bitsets.  This module and the compiled
``_kernel`` extension expose the same function with the same semantics.
"""


def violates_quad(mask, groups):
    for a, b, c in groups:
        n = (mask >> a & 1) + (mask >> b & 1) + (mask >> c & 1)
        if n > 1:
            return True
    return False


def adjacent_pairs(masks, pos, neg, max_card, groups, use_filter):
    """Pairs ``(i, j)``, ``i`` in ``pos`` and ``j`` in ``neg``, whose rays are adjacent.

    Two extreme rays are adjacent when no third ray's support is contained in
    the union of theirs.  ``max_card`` is an upper bound on the support size
    of an adjacent pair's union (a rank condition); pairs above it are
    skipped without the full test.  With ``use_filter``, pairs whose union
    breaks the quad condition are skipped too.
    """
    out = []
    order = sorted(range(len(masks)), key=lambda k: masks[k].bit_count())
    cards = [masks[k].bit_count() for k in order]
    for i in pos:
        mi = masks[i]
        for j in neg:
            u = mi | masks[j]
            card = u.bit_count()
            if card > max_card:
                continue
            if use_filter and violates_quad(u, groups):
                continue
            adjacent = True
            for pos_k, k in enumerate(order):
                if cards[pos_k] > card:
                    break
                if k != i and k != j and masks[k] & ~u == 0:
                    adjacent = False
                    break
            if adjacent:
                out.append((i, j))
    return out
