# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled implementation of the search hot loop.

Mirrors _kernels_pure.closure_propagate exactly: same arguments, same
return value, same statistics counters.
"""

import numpy as np

KERNEL_KIND = "compiled"


cdef inline int _compose(const short[:, :] E, dict index, dict comp_cache,
                         Py_ssize_t e, Py_ssize_t f, Py_ssize_t n,
                         Py_ssize_t n_endos, short[::1] scratch):
    cdef object key = e * n_endos + f
    cdef object hit = comp_cache.get(key)
    cdef Py_ssize_t i
    if hit is not None:
        return <int> hit
    for i in range(n):
        scratch[i] = E[e, E[f, i]]
    cdef bytes blob = (<char*> &scratch[0])[:n * sizeof(short)]
    cdef int rid = <int> index[blob]
    comp_cache[key] = rid
    return rid


def closure_propagate(object endos, dict index, dict comp_cache, object assign_arr,
                      list trail, list cand_sets, int slot, int eid, dict stats):
    """Assign lam_slot = eid and close the assignment under composition.

    See the pure kernel for the contract; this version runs the composition
    and queue walk in C.
    """
    cdef const short[:, :] E = endos
    cdef long long[::1] assign = assign_arr
    cdef Py_ssize_t n = E.shape[1]
    cdef Py_ssize_t n_endos = E.shape[0]
    scratch_np = np.empty(n, dtype=np.int16)
    cdef short[::1] scratch = scratch_np
    cdef list queue = [(slot, eid)]
    cdef Py_ssize_t qi = 0
    cdef Py_ssize_t s, e, f, t, target, ti
    cdef int req
    cdef long long cur
    cdef tuple item
    while qi < len(queue):
        item = <tuple> queue[qi]
        qi += 1
        s = <Py_ssize_t> item[0]
        e = <Py_ssize_t> item[1]
        cur = assign[s]
        if cur != -1:
            if cur != e:
                stats["closure_conflicts"] += 1
                return False
            continue
        if e not in cand_sets[s]:
            stats["forced_outside_candidates"] += 1
            return False
        assign[s] = e
        trail.append(s)
        stats["propagated"] += 1
        for ti in range(len(trail)):
            t = <Py_ssize_t> trail[ti]
            f = <Py_ssize_t> assign[t]
            # lam_s . lam_t pins the row at s*t = lam_s(t)
            target = E[e, t]
            req = _compose(E, index, comp_cache, e, f, n, n_endos, scratch)
            cur = assign[target]
            if cur == -1:
                queue.append((target, req))
            elif cur != req:
                stats["closure_conflicts"] += 1
                return False
            if t != s:
                # lam_t . lam_s pins the row at t*s = lam_t(s)
                target = E[f, s]
                req = _compose(E, index, comp_cache, f, e, n, n_endos, scratch)
                cur = assign[target]
                if cur == -1:
                    queue.append((target, req))
                elif cur != req:
                    stats["closure_conflicts"] += 1
                    return False
    return True
