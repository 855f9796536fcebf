"""Backtracking enumeration of nearrings with identity via additive row maps.

A multiplication with two-sided identity i0 on a finite group G assigns to
every element x the additive endomorphism lam_x = (y -> x*y): left
distributivity makes each row such a map, associativity is the closure law
lam_{lam_x(y)} = lam_x . lam_y, and the identity pins lam_x(i0) = x with
lam_{i0} = id.  The search assigns rows depth-first in a fixed order with
eager closure propagation.  Local-only runs additionally stratify by the
candidate subgroup L of non-invertible elements and prune with structure
facts that hold in every local nearring: the identity and all invertible
elements have maximal additive order, rows of invertible elements are
automorphisms preserving L, and rows of elements of L map into L.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..nearring import Nearring, locality_report
from ..pgroup import (
    GroupSpec,
    add_table,
    catalog,
    derived_subgroup,
    exponent,
    hom_extend,
    neg_table,
    order_table,
    subgroup_closure,
)

ENDO_CAP = 256
SEARCH_CAP = 81

CHECKPOINT_VERSION = 1


class BudgetExhausted(Exception):
    """Raised internally when the decision budget runs out mid-search."""


@dataclass(frozen=True)
class EndoMap:
    """An additive endomorphism given by its generator images."""

    images: tuple
    domain_group: GroupSpec

    def extension(self) -> np.ndarray:
        return hom_extend(self.domain_group, self.domain_group, self.images)


@dataclass
class SearchConfig:
    local_only: bool = False
    zero_sym_only: bool = False
    node_budget: int | None = None
    checkpoint_path: str | None = None
    warm_start: Nearring | None = None
    threads: int = 1
    # internal: restrict first-level decisions to indices == offset (mod stride)
    first_level_slice: tuple | None = None


@dataclass
class SearchReport:
    group: str
    prime: int
    identity_orbits_tried: int = 0
    candidates_found: int = 0
    local_count: int = 0
    iso_class_count: int = 0
    representatives: list = field(default_factory=list)
    pruning_stats: dict = field(default_factory=dict)
    elapsed: float = 0.0
    complete: bool = True

    def __post_init__(self):
        # iso_class_count counts the classes that are local (the headline
        # number); representatives may additionally carry non-local classes.
        assert self.iso_class_count <= self.local_count <= self.candidates_found

    def to_dict(self, include_tables: bool = True) -> dict:
        out = {
            "group": self.group,
            "prime": self.prime,
            "identity_orbits_tried": self.identity_orbits_tried,
            "candidates_found": self.candidates_found,
            "local_count": self.local_count,
            "iso_class_count": self.iso_class_count,
            "pruning_stats": dict(self.pruning_stats),
            "elapsed": self.elapsed,
            "complete": self.complete,
        }
        if include_tables:
            out["representatives"] = [json.loads(nr.to_json()) for nr in self.representatives]
        return out


# ---------------------------------------------------------------------------
# endomorphism tables

def _comm_table(g: GroupSpec) -> np.ndarray:
    """comm[x, y] = index of -x - y + x + y."""
    T = add_table(g)
    N = neg_table(g)
    n = g.order
    ar = np.arange(n)
    out = np.empty((n, n), dtype=T.dtype)
    for x in range(n):
        out[x] = T[T[T[N[x], N], x], ar]
    return out


def _scal_table(g: GroupSpec) -> np.ndarray:
    """scal[k, x] = index of the k-fold sum x + ... + x, for k up to max order."""
    T = add_table(g)
    n = g.order
    hi = max(g.gen_orders)
    out = np.zeros((hi + 1, n), dtype=np.int64)
    for k in range(hi):
        out[k + 1] = T[out[k], np.arange(n)]
    return out


def _word_rank(g: GroupSpec, word) -> tuple:
    """(support, value) of a single-coordinate word, or None for the zero word."""
    for s, v in enumerate(word):
        if v:
            return s, int(v)
    return None


@lru_cache(maxsize=None)
def _endo_tables(g: GroupSpec):
    """All additive endomorphisms of g.

    Returns (images, arrays, index, aut_ids): the generator-image tuples in
    lexicographic order, the full extension matrix (one row per map), a dict
    from row bytes to row id, and ids of the bijective maps.
    """
    n = g.order
    if n > ENDO_CAP:
        raise ValueError(f"endomorphism enumeration capped at order {ENDO_CAP}")
    m = g.ngens
    ordt = order_table(g)
    comm = _comm_table(g)
    scal = _scal_table(g)
    words = {(j, i): _word_rank(g, g.relation_word(j, i))
             for j in range(1, m) for i in range(j)}
    powers = [_word_rank(g, g.power_words[j]) for j in range(m)]
    # With no power word the image order must divide the coefficient bound;
    # otherwise only the exact power condition (checked below) constrains it.
    base = [np.where(g.gen_orders[j] % ordt == 0)[0] if powers[j] is None
            else np.arange(n) for j in range(m)]

    found = []

    def descend(j, imgs):
        if j == m:
            found.append(tuple(imgs))
            return
        cand = base[j]
        mask = np.ones(len(cand), dtype=bool)
        # relations whose check becomes possible once generator j is chosen
        for (jj, ii), w in words.items():
            depth = max(jj, w[0]) if w else jj
            if depth != j:
                continue
            if jj == j:
                lhs = comm[imgs[ii], cand]
            else:
                lhs = np.full(len(cand), comm[imgs[ii], imgs[jj]])
            if w is None:
                rhs = 0
            elif w[0] == j:
                rhs = scal[w[1], cand]
            else:
                rhs = scal[w[1], imgs[w[0]]]
            mask &= lhs == rhs
        pw = powers[j]
        rhs = 0 if pw is None else scal[pw[1], imgs[pw[0]]]
        mask &= scal[g.gen_orders[j], cand] == rhs
        for z in cand[mask]:
            imgs.append(int(z))
            descend(j + 1, imgs)
            imgs.pop()

    descend(0, [])
    arrays = np.empty((len(found), n), dtype=np.int16)
    for k, imgs in enumerate(found):
        arrays[k] = hom_extend(g, g, [g.element_at(i) for i in imgs])
    arrays.setflags(write=False)
    index = {arrays[k].tobytes(): k for k in range(len(found))}
    sorted_rows = np.sort(arrays.astype(np.int64), axis=1)
    bij = (sorted_rows == np.arange(n)).all(axis=1)
    aut_ids = tuple(int(k) for k in np.where(bij)[0])
    return tuple(found), arrays, index, aut_ids


def all_endomorphisms(g: GroupSpec) -> list:
    images, _, _, _ = _endo_tables(g)
    return [EndoMap(images=tuple(g.element_at(i) for i in im), domain_group=g)
            for im in images]


def additive_automorphism_arrays(g: GroupSpec) -> np.ndarray:
    _, arrays, _, aut_ids = _endo_tables(g)
    return arrays[list(aut_ids)]


@lru_cache(maxsize=None)
def _identity_orbit_reps(g: GroupSpec) -> tuple:
    """One maximal-additive-order element per automorphism orbit, ascending."""
    auts = additive_automorphism_arrays(g)
    exp = exponent(g)
    ordt = order_table(g)
    max_elems = [x for x in range(g.order) if ordt[x] == exp]
    reps, seen = [], set()
    for x in max_elems:
        if x in seen:
            continue
        reps.append(x)
        seen.update(int(v) for v in auts[:, x])
    return tuple(reps)


@lru_cache(maxsize=None)
def _strata(g: GroupSpec, i0: int) -> tuple:
    """Candidate subgroups L for a local table with identity i0.

    Every L must contain all elements of non-maximal additive order and the
    derived subgroup, exclude i0, and satisfy |L|^2 >= |G| unless L = {0}.
    """
    n = g.order
    exp = exponent(g)
    ordt = order_table(g)
    seed = [x for x in range(n) if ordt[x] < exp]
    seed.extend(derived_subgroup(g))
    base = tuple(subgroup_closure(g, sorted(set(seed))))
    if i0 in base or len(base) == n:
        return ()
    out = set()
    frontier = {base}
    seen = {base}
    while frontier:
        nxt = set()
        for S in frontier:
            if len(S) == 1 or len(S) * len(S) >= n:
                out.add(S)
            inS = set(S)
            for z in range(n):
                if z in inS or z == i0:
                    continue
                T = tuple(subgroup_closure(g, S + (z,)))
                if i0 in T or len(T) == n or T in seen:
                    continue
                seen.add(T)
                nxt.add(T)
        frontier = nxt
    return tuple(sorted(out, key=lambda S: (len(S), S)))


# ---------------------------------------------------------------------------
# the backtracking tree

class _Tree:
    """One DFS over row assignments for a fixed identity (and stratum)."""

    def __init__(self, g, i0, stratum, cfg, stats, kernels):
        self.g = g
        self.n = g.order
        self.i0 = i0
        self.stratum = stratum  # tuple of element indices or None
        self.cfg = cfg
        self.stats = stats
        self.kernels = kernels
        _, self.endos, self.index, aut_ids = _endo_tables(g)
        self.assign = np.full(self.n, -1, dtype=np.int64)
        self.trail = []
        self.comp_cache = {}
        self._build_slots(aut_ids)

    def _build_slots(self, aut_ids):
        g, n, i0 = self.g, self.n, self.i0
        endos = self.endos
        col_i0 = endos[:, i0].astype(np.int64)
        if self.stratum is None:
            by_slot = [np.where(col_i0 == x)[0] for x in range(n)]
            order = [x for x in range(n) if x != i0]
        else:
            inS = np.zeros(n, dtype=bool)
            inS[list(self.stratum)] = True
            into_S = inS[endos].all(axis=1)
            aut_mask = np.zeros(len(endos), dtype=bool)
            aut_mask[list(aut_ids)] = True
            keeps_S = np.zeros(len(endos), dtype=bool)
            keeps_S[list(aut_ids)] = inS[endos[list(aut_ids)][:, list(self.stratum)]].all(axis=1)
            by_slot = []
            for x in range(n):
                if inS[x]:
                    ok = (col_i0 == x) & into_S
                else:
                    ok = (col_i0 == x) & aut_mask & keeps_S
                by_slot.append(np.where(ok)[0])
            order = [x for x in range(n) if not inS[x] and x != i0]
            order += [x for x in range(n) if inS[x]]
        if self.cfg.zero_sym_only:
            zero_id = self.index[np.zeros(n, dtype=np.int16).tobytes()]
            by_slot[0] = by_slot[0][by_slot[0] == zero_id]
        self.cands = [tuple(int(v) for v in ids) for ids in by_slot]
        self.cand_sets = [frozenset(c) for c in self.cands]
        self.slot_order = order

    # -- assignment machinery ------------------------------------------------

    def _set(self, slot, eid) -> bool:
        """Assign lam_slot = eid, propagate closure; False on contradiction."""
        ok = self.kernels.closure_propagate(
            self.endos, self.index, self.comp_cache, self.assign,
            self.trail, self.cand_sets, slot, eid, self.stats)
        return ok

    def _undo(self, mark):
        for s in self.trail[mark:]:
            self.assign[s] = -1
        del self.trail[mark:]

    def _next_slot(self):
        for s in self.slot_order:
            if self.assign[s] == -1:
                return s
        return None

    # -- search --------------------------------------------------------------

    def preassign(self, count: bool = True) -> bool:
        """Pin the identity row to the identity map; counts as one node."""
        if count:
            self.stats["decisions"] += 1
        ident = self.index[np.arange(self.n, dtype=np.int16).tobytes()]
        return self._set(self.i0, ident)

    def run(self, leaf_fn, replay=None, budget_fn=None):
        """DFS; calls leaf_fn on every full assignment.

        `replay` fast-forwards to a checkpointed position: all stack entries
        but the last are re-assigned without counting decisions, the last one
        marks the candidate index the interrupted run was about to try.
        `budget_fn` returns the remaining decision budget (None = unbounded);
        hitting 0 raises BudgetExhausted carrying the current stack.
        """
        frames = []
        descend = True
        replay = list(replay or [])
        if replay:
            for slot, idx in replay[:-1]:
                if self._next_slot() != slot or idx >= len(self.cands[slot]):
                    raise ValueError("checkpoint does not match this search")
                frames.append([slot, idx, len(self.trail)])
                if not self._set(slot, self.cands[slot][idx]):
                    raise ValueError("checkpoint replays an inconsistent position")
            slot, idx = replay[-1]
            if self._next_slot() != slot:
                raise ValueError("checkpoint does not match this search")
            frames.append([slot, idx, len(self.trail)])
            descend = False
        while True:
            if descend:
                slot = self._next_slot()
                if slot is None:
                    leaf_fn(self)
                    if not frames:
                        return
                    _, top_idx, top_mark = frames[-1]
                    self._undo(top_mark)
                    frames[-1][1] = top_idx + 1
                    descend = False
                    continue
                frames.append([slot, 0, len(self.trail)])
            # try candidates on the top frame from its stored index onward
            progressed = False
            while frames:
                slot, idx, mark = frames[-1]
                cands = self.cands[slot]
                ok = False
                while idx < len(cands):
                    frames[-1][1] = idx
                    if self.cfg.first_level_slice and len(frames) == 1:
                        off, stride = self.cfg.first_level_slice
                        if idx % stride != off:
                            idx += 1
                            continue
                    if budget_fn is not None and budget_fn() <= 0:
                        raise BudgetExhausted([(f[0], f[1]) for f in frames])
                    self.stats["decisions"] += 1
                    if self._set(slot, cands[idx]):
                        ok = True
                        break
                    self._undo(mark)
                    idx += 1
                if ok:
                    progressed = True
                    break
                frames.pop()
                if frames:
                    _, pidx, pmark = frames[-1]
                    self._undo(pmark)
                    frames[-1][1] = pidx + 1
            if not progressed:
                return
            descend = True

    def table(self) -> np.ndarray:
        return self.endos[self.assign].astype(np.int32)


# ---------------------------------------------------------------------------
# isomorphism reduction

@lru_cache(maxsize=None)
def _stabilizer_transports(g: GroupSpec, i0: int):
    """(F, F^-1) index arrays for every additive automorphism fixing i0."""
    auts = additive_automorphism_arrays(g)
    keep = auts[auts[:, i0] == i0].astype(np.int64)
    inverses = np.argsort(keep, axis=1)
    return keep, inverses

def canonical_form(g: GroupSpec, i0: int, mul: np.ndarray) -> bytes:
    """Lexicographically minimal transport of the table over Stab_Aut(i0)."""
    F, Finv = _stabilizer_transports(g, i0)
    mul = np.asarray(mul, dtype=np.int64)
    best = None
    for k in range(len(F)):
        moved = F[k][mul[Finv[k][:, None], Finv[k][None, :]]]
        cur = moved.astype(np.int16).tobytes()
        if best is None or cur < best:
            best = cur
    return best


# ---------------------------------------------------------------------------
# public drivers

def _fresh_stats():
    return {
        "decisions": 0, "propagated": 0, "closure_conflicts": 0,
        "forced_outside_candidates": 0, "leaves": 0, "stratum_mismatch": 0,
    }


class _Collector:
    """Accumulates leaves, locality checks, and canonical classes."""

    def __init__(self, g, cfg):
        self.g = g
        self.cfg = cfg
        self.classes = {}  # canonical bytes -> Nearring
        self.candidates = 0
        self.local = 0

    def leaf(self, tree: _Tree):
        tree.stats["leaves"] += 1
        mul = tree.table()
        nr = Nearring(self.g, mul, identity=tree.i0)
        rep = locality_report(nr)
        assert rep.axioms_ok, "search emitted a non-nearring table"
        if tree.stratum is not None:
            if not (rep.is_local and rep.L == tree.stratum):
                tree.stats["stratum_mismatch"] += 1
                return
        self.candidates += 1
        if rep.is_local:
            self.local += 1
        if self.cfg.local_only and not rep.is_local:
            return
        key = canonical_form(self.g, tree.i0, mul)
        if key not in self.classes:
            self.classes[key] = nr


def _checkpoint_payload(g, cfg, pos, stats, coll, complete):
    return {
        "version": CHECKPOINT_VERSION,
        "kind": "nearrings-search-checkpoint",
        "group": g.name,
        "prime": g.prime,
        "local_only": cfg.local_only,
        "zero_sym_only": cfg.zero_sym_only,
        "complete": complete,
        "position": pos,
        "stats": stats,
        "candidates_found": coll.candidates,
        "local_count": coll.local,
        "classes": {k.hex(): json.loads(nr.to_json()) for k, nr in coll.classes.items()},
    }


def _write_checkpoint(path, payload):
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)


def _load_checkpoint(path, g, cfg):
    with open(path) as fh:
        data = json.load(fh)
    if data.get("version") != CHECKPOINT_VERSION or data.get("kind") != "nearrings-search-checkpoint":
        raise ValueError(f"{path} is not a recognized search checkpoint")
    if data["group"] != g.name or data["prime"] != g.prime \
            or data["local_only"] != cfg.local_only or data["zero_sym_only"] != cfg.zero_sym_only:
        raise ValueError("checkpoint was written for a different search")
    return data


def _run_single(g, cfg, kernels) -> SearchReport:
    t0 = time.monotonic()
    reps = _identity_orbit_reps(g)
    stats = _fresh_stats()
    coll = _Collector(g, cfg)
    start_identity = 0
    start_stratum = 0
    replay = None
    resumed = None
    if cfg.checkpoint_path and os.path.exists(cfg.checkpoint_path):
        resumed = _load_checkpoint(cfg.checkpoint_path, g, cfg)
        stats.update(resumed["stats"])
        coll.candidates = resumed["candidates_found"]
        coll.local = resumed["local_count"]
        for key_hex, obj in resumed["classes"].items():
            coll.classes[bytes.fromhex(key_hex)] = Nearring.from_json(json.dumps(obj))
        if resumed["complete"]:
            return _report_from(g, cfg, reps, stats, coll, t0, complete=True)
        start_identity = resumed["position"]["identity_index"]
        start_stratum = resumed["position"]["stratum_index"]
        replay = [tuple(p) for p in resumed["position"]["stack"]]

    budget = cfg.node_budget

    def budget_left():
        return None if budget is None else budget - stats["decisions"]

    complete = True
    try:
        for id_idx in range(start_identity, len(reps)):
            i0 = reps[id_idx]
            strata = _strata(g, i0) if cfg.local_only else (None,)
            first = start_stratum if id_idx == start_identity else 0
            for st_idx in range(first, len(strata)):
                S = strata[st_idx]
                this_replay = replay
                replay = None
                # the identity preassignment is itself a budgeted node, but a
                # resumed tree already paid for it in the restored stats
                if budget is not None and not this_replay \
                        and stats["decisions"] >= budget:
                    complete = False
                    if cfg.checkpoint_path:
                        pos = {"identity_index": id_idx, "stratum_index": st_idx,
                               "stack": []}
                        _write_checkpoint(cfg.checkpoint_path,
                                          _checkpoint_payload(g, cfg, pos, stats, coll, False))
                    raise BudgetExhausted(())
                tree = _Tree(g, i0, S, cfg, stats, kernels)
                if not tree.preassign(count=not this_replay):
                    continue
                try:
                    tree.run(coll.leaf, replay=this_replay,
                             budget_fn=budget_left if budget is not None else None)
                except BudgetExhausted as exc:
                    complete = False
                    if cfg.checkpoint_path:
                        pos = {"identity_index": id_idx, "stratum_index": st_idx,
                               "stack": [list(p) for p in exc.args[0]]}
                        _write_checkpoint(cfg.checkpoint_path,
                                          _checkpoint_payload(g, cfg, pos, stats, coll, False))
                    raise
    except BudgetExhausted:
        pass
    if complete and cfg.checkpoint_path:
        pos = {"identity_index": len(reps), "stratum_index": 0, "stack": []}
        _write_checkpoint(cfg.checkpoint_path,
                          _checkpoint_payload(g, cfg, pos, stats, coll, True))
    return _report_from(g, cfg, reps, stats, coll, t0, complete)


def _report_from(g, cfg, reps, stats, coll, t0, complete):
    nrs = list(coll.classes.values())
    n_local = sum(1 for nr in nrs if locality_report(nr).is_local)
    return SearchReport(
        group=g.name,
        prime=g.prime,
        identity_orbits_tried=len(reps),
        candidates_found=coll.candidates,
        local_count=coll.local,
        iso_class_count=n_local,
        representatives=nrs,
        pruning_stats=dict(stats),
        elapsed=time.monotonic() - t0,
        complete=complete,
    )


def _run_warm_start(g, cfg, kernels) -> SearchReport:
    t0 = time.monotonic()
    nr = cfg.warm_start
    if nr.group != g:
        raise ValueError("warm-start table lives on a different group")
    if nr.identity is None:
        raise ValueError("warm-start table has no identity")
    rep = locality_report(nr)
    stratum = rep.L if (cfg.local_only and rep.is_local) else None
    if cfg.local_only and not rep.is_local:
        raise ValueError("local-only warm start needs a local table")
    stats = _fresh_stats()
    coll = _Collector(g, cfg)
    tree = _Tree(g, nr.identity, stratum, cfg, stats, kernels)
    if not tree.preassign():
        raise AssertionError("identity row rejected on warm start")
    mul = np.asarray(nr.mul)
    for x in range(g.order):
        if tree.assign[x] != -1:
            continue
        eid = tree.index.get(mul[x].astype(np.int16).tobytes())
        if eid is None:
            raise ValueError(f"row {x} of the warm-start table is not an endomorphism")
        if eid not in tree.cand_sets[x]:
            raise AssertionError(f"warm-start row {x} violates the search prunings")
        if not tree._set(x, eid):
            raise AssertionError("warm-start table fails closure propagation")
    coll.leaf(tree)
    return _report_from(g, cfg, (nr.identity,), stats, coll, t0, complete=True)


def enumerate_unital_nearrings(g: GroupSpec, limits: SearchConfig | None = None) -> SearchReport:
    """Enumerate multiplication tables with a two-sided identity on g.

    With local_only, only tables whose non-invertible elements form a
    subgroup are retained (searched per candidate subgroup).  The report
    carries one representative per isomorphism class.
    """
    cfg = limits or SearchConfig()
    if g.order > SEARCH_CAP:
        raise ValueError(f"search capped at order {SEARCH_CAP}, got {g.order}")
    from . import kernels
    if cfg.warm_start is not None:
        return _run_warm_start(g, cfg, kernels)
    if cfg.threads > 1:
        return _run_parallel(g, cfg)
    return _run_single(g, cfg, kernels)


def _worker(args):
    g_json, cfg_fields, offset = args
    g = GroupSpec.from_json(g_json)
    cfg = SearchConfig(**cfg_fields)
    cfg.first_level_slice = (offset, cfg_fields["threads"])
    cfg.threads = 1
    from . import kernels
    return _run_single(g, cfg, kernels)


def _run_parallel(g: GroupSpec, cfg: SearchConfig) -> SearchReport:
    if cfg.node_budget is not None or cfg.checkpoint_path:
        raise ValueError("budget/checkpoint runs are single-threaded")
    from concurrent.futures import ProcessPoolExecutor
    t0 = time.monotonic()
    fields = {"local_only": cfg.local_only, "zero_sym_only": cfg.zero_sym_only,
              "threads": cfg.threads}
    jobs = [(g.to_json(), fields, w) for w in range(cfg.threads)]
    with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
        parts = list(pool.map(_worker, jobs))
    merged = SearchReport(group=g.name, prime=g.prime,
                          identity_orbits_tried=parts[0].identity_orbits_tried)
    seen = {}
    stats = _fresh_stats()
    for part in parts:
        merged.candidates_found += part.candidates_found
        merged.local_count += part.local_count
        for k in stats:
            stats[k] += part.pruning_stats.get(k, 0)
        for nr in part.representatives:
            key = canonical_form(g, nr.identity, nr.mul)
            seen.setdefault(key, nr)
    merged.iso_class_count = sum(1 for nr in seen.values()
                                 if locality_report(nr).is_local)
    merged.representatives = list(seen.values())
    merged.pruning_stats = stats
    merged.elapsed = time.monotonic() - t0
    return merged


def filter_local(report: SearchReport) -> SearchReport:
    """Keep only representatives whose tables are local; recount classes."""
    if not report.complete:
        raise ValueError("cannot filter an incomplete report")
    kept = [nr for nr in report.representatives if locality_report(nr).is_local]
    return SearchReport(
        group=report.group,
        prime=report.prime,
        identity_orbits_tried=report.identity_orbits_tried,
        candidates_found=report.candidates_found,
        local_count=report.local_count,
        iso_class_count=len(kept),
        representatives=kept,
        pruning_stats=dict(report.pruning_stats),
        elapsed=report.elapsed,
        complete=True,
    )


def conjecture1_check(p: int = 3, limits: SearchConfig | None = None) -> SearchReport:
    """Exhaustive local-only search on the order-p^4 group with mixed center.

    Expected outcome is local_count = 0; any representative in the report
    would be a counterexample table worth printing verbatim.
    """
    if p != 3:
        raise ValueError("the exhaustive check is supported at p=3 only")
    cfg = limits or SearchConfig()
    cfg.local_only = True
    return enumerate_unital_nearrings(catalog("G6", p), cfg)
