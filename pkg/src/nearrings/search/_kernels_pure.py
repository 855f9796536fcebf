"""Reference implementation of the search hot loop.

The compiled extension mirrors this module exactly; both are selected at
import time in the package __init__.
"""

KERNEL_KIND = "pure"


def closure_propagate(endos, index, comp_cache, assign, trail, cand_sets,
                      slot, eid, stats):
    """Assign lam_slot = eid and close the assignment under composition.

    endos is the (N, n) extension matrix, index maps row bytes to row ids,
    comp_cache memoizes composition ids keyed e * N + f.  New assignments are
    appended to trail; on contradiction returns False and the caller unwinds
    the trail.  Forced assignments must stay inside their slot's candidate
    set (cand_sets), which encodes the locality prunings.
    """
    n_endos = len(endos)
    queue = [(slot, eid)]
    qi = 0
    while qi < len(queue):
        s, e = queue[qi]
        qi += 1
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
        arr_e = endos[e]
        for t in trail:
            f = int(assign[t])
            # lam_s . lam_t pins the row at s*t = lam_s(t)
            target = int(arr_e[t])
            key = e * n_endos + f
            req = comp_cache.get(key)
            if req is None:
                req = index[endos[e][endos[f]].tobytes()]
                comp_cache[key] = req
            cur2 = assign[target]
            if cur2 == -1:
                queue.append((target, req))
            elif cur2 != req:
                stats["closure_conflicts"] += 1
                return False
            if t != s:
                # lam_t . lam_s pins the row at t*s = lam_t(s)
                target = int(endos[f][s])
                key = f * n_endos + e
                req = comp_cache.get(key)
                if req is None:
                    req = index[endos[f][endos[e]].tobytes()]
                    comp_cache[key] = req
                cur2 = assign[target]
                if cur2 == -1:
                    queue.append((target, req))
                elif cur2 != req:
                    stats["closure_conflicts"] += 1
                    return False
    return True
