# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled group-table kernels (hot loops of the table/orbit machinery).

Must stay behaviourally identical to _kernels_py.py; tests/test_kernels.py
compares the two whenever this extension is importable.
"""

import numpy as np

BACKEND = "c"


def dc_mult_table(int n, int m):
    cdef int ni = 1 << (n - 2)
    cdef int nk = 1 << m
    cdef int half = 1 << (m - 1)
    cdef int xord = 1 << (n - 1)
    cdef int size = ni * 2 * nk
    table = np.empty((size, size), dtype=np.int32)
    cdef int[:, ::1] t = table
    cdef int a, b, i1, j1, k1, i2, j2, k2, i, j, k
    for a in range(size):
        i1 = a // (2 * nk)
        j1 = (a // nk) % 2
        k1 = a % nk
        for b in range(size):
            i2 = b // (2 * nk)
            j2 = (b // nk) % 2
            k2 = b % nk
            if j1:
                i = (i1 - i2) % xord
                if i < 0:
                    i += xord
            else:
                i = (i1 + i2) % xord
            j = (j1 + j2) & 1
            k = (k1 + k2) % nk
            if i >= ni:
                i -= ni
                k = (k + half) % nk
            t[a, b] = (i * 2 + j) * nk + k
    return table


def inverse_map(table):
    cdef int[:, ::1] t = table
    cdef int size = t.shape[0]
    inv = np.empty(size, dtype=np.int32)
    cdef int[::1] iv = inv
    cdef int a, b
    for a in range(size):
        for b in range(size):
            if t[a, b] == 0:
                iv[a] = b
                break
    return inv


def conjugacy_classes(table, inv):
    cdef int[:, ::1] t = table
    cdef int[::1] iv = inv
    cdef int size = t.shape[0]
    cid_arr = np.full(size, -1, dtype=np.int32)
    cdef int[::1] cid = cid_arr
    reps = []
    cdef int a, g, c
    for a in range(size):
        if cid[a] >= 0:
            continue
        c = len(reps)
        reps.append(a)
        for g in range(size):
            cid[t[t[g, a], iv[g]]] = c
    return cid_arr, reps


def centralizer_of(table, int e):
    cdef int[:, ::1] t = table
    cdef int size = t.shape[0]
    cdef int a
    out = []
    for a in range(size):
        if t[a, e] == t[e, a]:
            out.append(a)
    return out


def closure(table, gens):
    cdef int[:, ::1] t = table
    cdef int size = t.shape[0]
    seen_arr = np.zeros(size, dtype=np.int32)
    cdef int[::1] seen = seen_arr
    queue_arr = np.empty(size, dtype=np.int32)
    cdef int[::1] queue = queue_arr
    gens_arr = np.asarray(gens, dtype=np.int32)
    cdef int[::1] gv = gens_arr
    cdef int ngens = gv.shape[0]
    cdef int head = 0, tail = 0, a, b, gi
    seen[0] = 1
    queue[tail] = 0
    tail += 1
    for gi in range(ngens):
        if not seen[gv[gi]]:
            seen[gv[gi]] = 1
            queue[tail] = gv[gi]
            tail += 1
    while head < tail:
        a = queue[head]
        head += 1
        for gi in range(ngens):
            b = t[a, gv[gi]]
            if not seen[b]:
                seen[b] = 1
                queue[tail] = b
                tail += 1
    return sorted(queue_arr[:tail].tolist())


def orbit_partition(table, inv, extra_maps):
    cdef int[:, ::1] t = table
    cdef int[::1] iv = inv
    cdef int size = t.shape[0]
    oid_arr = np.full(size, -1, dtype=np.int32)
    cdef int[::1] oid = oid_arr
    queue_arr = np.empty(size, dtype=np.int32)
    cdef int[::1] queue = queue_arr
    cdef int nmaps = len(extra_maps)
    maps_arr = (
        np.stack([np.asarray(one_map, dtype=np.int32) for one_map in extra_maps])
        if nmaps
        else np.empty((0, size), dtype=np.int32)
    )
    cdef int[:, ::1] mp = maps_arr
    reps = []
    cdef int a, u, v, g, c, head, tail, im
    for a in range(size):
        if oid[a] >= 0:
            continue
        c = len(reps)
        reps.append(a)
        oid[a] = c
        head = 0
        tail = 0
        queue[tail] = a
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            for g in range(size):
                v = t[t[g, u], iv[g]]
                if oid[v] < 0:
                    oid[v] = c
                    queue[tail] = v
                    tail += 1
            for im in range(nmaps):
                v = mp[im, u]
                if v >= 0 and oid[v] < 0:
                    oid[v] = c
                    queue[tail] = v
                    tail += 1
    return oid_arr, reps


def structure_constants(table, inv, cid, reps):
    cdef int[:, ::1] t = table
    cdef int[::1] iv = inv
    cdef int[::1] ci = cid
    cdef int size = t.shape[0]
    cdef int k = len(reps)
    reps_arr = np.asarray(reps, dtype=np.int32)
    cdef int[::1] rv = reps_arr
    a_arr = np.zeros((k, k, k), dtype=np.int64)
    cdef long long[:, :, ::1] a = a_arr
    cdef int l, u
    for l in range(k):
        for u in range(size):
            a[ci[u], ci[t[iv[u], rv[l]]], l] += 1
    return a_arr


def commutators(table, inv):
    cdef int[:, ::1] t = table
    cdef int[::1] iv = inv
    cdef int size = t.shape[0]
    seen_arr = np.zeros(size, dtype=np.int32)
    cdef int[::1] seen = seen_arr
    cdef int a, b, ia
    for a in range(size):
        ia = iv[a]
        for b in range(size):
            seen[t[t[t[ia, iv[b]], a], b]] = 1
    return [a for a in range(size) if seen[a]]


def normalizer_of(table, inv, subset):
    cdef int[:, ::1] t = table
    cdef int[::1] iv = inv
    cdef int size = t.shape[0]
    sub_arr = np.asarray(subset, dtype=np.int32)
    cdef int[::1] sub = sub_arr
    cdef int nsub = sub.shape[0]
    member_arr = np.zeros(size, dtype=np.int32)
    cdef int[::1] member = member_arr
    cdef int g, ig, si, ok
    for si in range(nsub):
        member[sub[si]] = 1
    out = []
    for g in range(size):
        ig = iv[g]
        ok = 1
        for si in range(nsub):
            if not member[t[t[g, sub[si]], ig]]:
                ok = 0
                break
        if ok:
            out.append(g)
    return out
