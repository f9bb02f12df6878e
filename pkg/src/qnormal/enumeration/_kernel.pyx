# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled adjacency kernel; same contract as ``_kernel_py.adjacent_pairs``."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

cdef enum:
    WORD = 64
cdef uint64_t LOW = 0xFFFFFFFFFFFFFFFF


cdef inline int popcount_row(const uint64_t* row, Py_ssize_t W) nogil:
    cdef int total = 0
    cdef Py_ssize_t w
    for w in range(W):
        total += __builtin_popcountll(row[w])
    return total


def adjacent_pairs(masks, pos, neg, int max_card, groups, bint use_filter):
    cdef Py_ssize_t R = len(masks)
    cdef Py_ssize_t P = len(pos)
    cdef Py_ssize_t N = len(neg)
    if R == 0 or P == 0 or N == 0:
        return []
    cdef int bits = max(m.bit_length() for m in masks)
    cdef Py_ssize_t W = (bits + WORD - 1) // WORD
    if W == 0:
        W = 1
    cdef Py_ssize_t G = len(groups)

    cdef uint64_t* M = <uint64_t*>malloc(R * W * sizeof(uint64_t))
    cdef uint64_t* U = <uint64_t*>malloc(W * sizeof(uint64_t))
    cdef int* order = <int*>malloc(R * sizeof(int))
    cdef int* card = <int*>malloc(R * sizeof(int))
    cdef int* pidx = <int*>malloc(P * sizeof(int))
    cdef int* nidx = <int*>malloc(N * sizeof(int))
    cdef int* gword = <int*>malloc((3 * G + 1) * sizeof(int))
    cdef uint64_t* gbit = <uint64_t*>malloc((3 * G + 1) * sizeof(uint64_t))
    if not (M and U and order and card and pidx and nidx and gword and gbit):
        free(M); free(U); free(order); free(card); free(pidx); free(nidx); free(gword); free(gbit)
        raise MemoryError()

    cdef Py_ssize_t r, w, a, b, k, g
    cdef int c, ucard, hits
    cdef bint adjacent, inside
    out = []
    try:
        for r in range(R):
            m = masks[r]
            for w in range(W):
                M[r * W + w] = <uint64_t>((m >> (WORD * w)) & LOW)
        sorted_rows = sorted(range(R), key=lambda i: masks[i].bit_count())
        for k in range(R):
            order[k] = sorted_rows[k]
            card[k] = popcount_row(&M[order[k] * W], W)
        for a in range(P):
            pidx[a] = pos[a]
        for b in range(N):
            nidx[b] = neg[b]
        for g in range(G):
            for k in range(3):
                c = groups[g][k]
                gword[3 * g + k] = c // WORD
                gbit[3 * g + k] = (<uint64_t>1) << (c % WORD)

        with nogil:
            for a in range(P):
                for b in range(N):
                    ucard = 0
                    for w in range(W):
                        U[w] = M[pidx[a] * W + w] | M[nidx[b] * W + w]
                        ucard += __builtin_popcountll(U[w])
                    if ucard > max_card:
                        continue
                    if use_filter:
                        adjacent = True
                        for g in range(G):
                            hits = 0
                            for k in range(3):
                                if U[gword[3 * g + k]] & gbit[3 * g + k]:
                                    hits += 1
                            if hits > 1:
                                adjacent = False
                                break
                        if not adjacent:
                            continue
                    adjacent = True
                    for k in range(R):
                        if card[k] > ucard:
                            break
                        r = order[k]
                        if r == pidx[a] or r == nidx[b]:
                            continue
                        inside = True
                        for w in range(W):
                            if M[r * W + w] & ~U[w]:
                                inside = False
                                break
                        if inside:
                            adjacent = False
                            break
                    if adjacent:
                        with gil:
                            out.append((pidx[a], nidx[b]))
    finally:
        free(M); free(U); free(order); free(card); free(pidx); free(nidx); free(gword); free(gbit)
    return out
