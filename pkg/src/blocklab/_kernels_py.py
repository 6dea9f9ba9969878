"""Pure-Python group-table kernels (fallback twin of _ckernels.pyx).

All functions take/return numpy int32 arrays so the two implementations are
interchangeable; internally plain lists are used, which is what CPython
iterates fastest.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def dc_mult_table(n: int, m: int) -> np.ndarray:
    """Cayley table of D(n,m) over the normal-form index (i*2 + j)*2^m + k."""
    ni = 1 << (n - 2)
    nk = 1 << m
    half = 1 << (m - 1)
    xord = 1 << (n - 1)
    size = ni * 2 * nk
    table = np.empty((size, size), dtype=np.int32)
    row = [0] * size
    for a in range(size):
        i1, j1, k1 = a // (2 * nk), (a // nk) % 2, a % nk
        for b in range(size):
            i2, j2, k2 = b // (2 * nk), (b // nk) % 2, b % nk
            i = (i1 - i2) % xord if j1 else (i1 + i2) % xord
            j = (j1 + j2) & 1
            k = (k1 + k2) % nk
            if i >= ni:
                i -= ni
                k = (k + half) % nk
            row[b] = (i * 2 + j) * nk + k
        table[a] = row
    return table


def inverse_map(table: np.ndarray) -> np.ndarray:
    """Index of the inverse of every element (identity must sit at index 0)."""
    t = table.tolist()
    size = len(t)
    inv = np.empty(size, dtype=np.int32)
    for a in range(size):
        row = t[a]
        for b in range(size):
            if row[b] == 0:
                inv[a] = b
                break
    return inv


def conjugacy_classes(table: np.ndarray, inv: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Partition under conjugation; representatives are minimal element indices."""
    t = table.tolist()
    iv = inv.tolist()
    size = len(t)
    cid = [-1] * size
    reps: list[int] = []
    for a in range(size):
        if cid[a] >= 0:
            continue
        c = len(reps)
        reps.append(a)
        for g in range(size):
            cid[t[t[g][a]][iv[g]]] = c
    return np.array(cid, dtype=np.int32), reps


def centralizer_of(table: np.ndarray, e: int) -> list[int]:
    t = table.tolist()
    return [a for a in range(len(t)) if t[a][e] == t[e][a]]


def closure(table: np.ndarray, gens: list[int]) -> list[int]:
    """Sorted element set of the subgroup generated by `gens`."""
    t = table.tolist()
    seen = {0}
    queue = [0]
    for g in gens:
        if g not in seen:
            seen.add(g)
            queue.append(g)
    head = 0
    while head < len(queue):
        a = queue[head]
        head += 1
        row = t[a]
        for g in gens:
            b = row[g]
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return sorted(seen)


def orbit_partition(
    table: np.ndarray, inv: np.ndarray, extra_maps: list[np.ndarray]
) -> tuple[np.ndarray, list[int]]:
    """Orbits under conjugation by all elements plus partial maps (-1 = undefined)."""
    t = table.tolist()
    iv = inv.tolist()
    maps = [m.tolist() for m in extra_maps]
    size = len(t)
    oid = [-1] * size
    reps: list[int] = []
    for a in range(size):
        if oid[a] >= 0:
            continue
        c = len(reps)
        reps.append(a)
        oid[a] = c
        queue = [a]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for g in range(size):
                v = t[t[g][u]][iv[g]]
                if oid[v] < 0:
                    oid[v] = c
                    queue.append(v)
            for mp in maps:
                v = mp[u]
                if v >= 0 and oid[v] < 0:
                    oid[v] = c
                    queue.append(v)
    return np.array(oid, dtype=np.int32), reps


def structure_constants(
    table: np.ndarray, inv: np.ndarray, cid: np.ndarray, reps: list[int]
) -> np.ndarray:
    """Class-sum constants a[i][j][l] = #{u in K_i : u^{-1} g_l in K_j}."""
    t = table.tolist()
    iv = inv.tolist()
    ci = cid.tolist()
    size = len(t)
    k = len(reps)
    a = np.zeros((k, k, k), dtype=np.int64)
    for l, gl in enumerate(reps):
        for u in range(size):
            a[ci[u], ci[t[iv[u]][gl]], l] += 1
    return a


def commutators(table: np.ndarray, inv: np.ndarray) -> list[int]:
    """Sorted set of commutators a^{-1} b^{-1} a b."""
    t = table.tolist()
    iv = inv.tolist()
    size = len(t)
    out = set()
    for a in range(size):
        ia = iv[a]
        for b in range(size):
            out.add(t[t[t[ia][iv[b]]][a]][b])
    return sorted(out)


def normalizer_of(table: np.ndarray, inv: np.ndarray, subset: list[int]) -> list[int]:
    """Elements g with g S g^{-1} = S."""
    t = table.tolist()
    iv = inv.tolist()
    sset = set(subset)
    out = []
    for g in range(len(t)):
        ig = iv[g]
        row = t[g]
        if all(t[row[s]][ig] in sset for s in subset):
            out.append(g)
    return out
