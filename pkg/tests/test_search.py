"""Tests for the row-map enumeration of nearrings with identity."""

import itertools
import json
import os

import numpy as np
import pytest

from nearrings.pgroup import GroupSpec, add_table, catalog, hom_extend, hom_respects_relations
from nearrings.nearring import are_isomorphic, locality_report, verify_axioms
from nearrings.search import (
    ENDO_CAP,
    SEARCH_CAP,
    EndoMap,
    KERNEL,
    SearchConfig,
    all_endomorphisms,
    additive_automorphism_arrays,
    canonical_form,
    conjecture1_check,
    enumerate_unital_nearrings,
    filter_local,
)
from nearrings.search import _kernels_pure
from nearrings.search import _engine


def cyclic(m):
    return GroupSpec(f"C{m}", m, (m,), ())


def brute_endo_count(g):
    """Independent oracle: every generator-image tuple, validated against the
    full addition table."""
    T = add_table(g)
    n = g.order
    count = 0
    for imgs in itertools.product(range(n), repeat=g.ngens):
        vecs = [g.element_at(i) for i in imgs]
        if not hom_respects_relations(g, g, vecs):
            continue
        f = hom_extend(g, g, vecs)
        if all(f[T[x, y]] == T[f[x], f[y]] for x in range(n) for y in range(n)):
            count += 1
    return count


# ---------------------------------------------------------------------------
# endomorphism enumeration


def test_endomorphisms_c3():
    endos = all_endomorphisms(cyclic(3))
    assert len(endos) == 3  # x -> kx for k = 0, 1, 2
    tables = sorted(tuple(e.extension()) for e in endos)
    assert tables == [(0, 0, 0), (0, 1, 2), (0, 2, 1)]


def test_endomorphisms_c3c3():
    g = catalog("Cp2_elem_abelian", 3)
    endos = all_endomorphisms(g)
    assert len(endos) == 81  # 2x2 matrices over the 3-element field
    exts = {tuple(e.extension()) for e in endos}
    assert tuple(range(9)) in exts  # identity map
    assert (0,) * 9 in exts  # zero map
    assert len(exts) == 81


def test_endomorphisms_match_brute_oracle():
    for name, p in [("Cp2_cyclic", 3), ("D8", 2), ("Q8", 2), ("16-4", 2)]:
        g = catalog(name, p)
        assert len(all_endomorphisms(g)) == brute_endo_count(g)


def test_d8_endomorphisms_match_permutation_oracle():
    # D8 as permutations of the square's corners: r = rotation, s = flip
    def compose(p, q):
        return tuple(p[q[i]] for i in range(4))

    r, s = (1, 2, 3, 0), (3, 2, 1, 0)
    e = (0, 1, 2, 3)
    elems = {e}
    frontier = [e]
    while frontier:
        x = frontier.pop()
        for ggen in (r, s):
            y = compose(x, ggen)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    assert len(elems) == 8
    inv = {x: next(y for y in elems if compose(x, y) == e) for x in elems}
    count = 0
    for ir, js in itertools.product(elems, repeat=2):
        # images must satisfy r^4 = e, s^2 = e, s r s^-1 = r^-1
        if compose(compose(ir, ir), compose(ir, ir)) != e:
            continue
        if compose(js, js) != e:
            continue
        if compose(compose(js, ir), inv[js]) != inv[ir]:
            continue
        count += 1
    assert count == len(all_endomorphisms(catalog("D8", 2))) == 36


def test_q8_has_28_endomorphisms():
    # 24 automorphisms plus the 4 maps through the centre
    g = catalog("Q8", 2)
    endos = all_endomorphisms(g)
    assert len(endos) == 28
    _, _, _, aut_ids = _engine._endo_tables(g)
    assert len(aut_ids) == 24


def test_automorphism_array_counts():
    assert len(additive_automorphism_arrays(cyclic(9))) == 6
    assert len(additive_automorphism_arrays(catalog("Cp2_elem_abelian", 3))) == 48
    assert len(additive_automorphism_arrays(catalog("D8", 2))) == 8


def test_endomorphism_cap():
    with pytest.raises(ValueError):
        all_endomorphisms(catalog("G1", 5))  # order 625 > 256


# ---------------------------------------------------------------------------
# enumeration on calibration groups


def test_c9_local_unique():
    g = catalog("Cp2_cyclic", 3)
    rep = enumerate_unital_nearrings(g, SearchConfig(local_only=True))
    assert rep.complete
    assert rep.iso_class_count == 1
    nr = rep.representatives[0]
    mul = np.fromfunction(lambda i, j: (i * j) % 9, (9, 9), dtype=np.int64)
    from nearrings.nearring import Nearring
    iso, _ = are_isomorphic(nr, Nearring.from_mul_table(g, mul))
    assert iso  # the ring Z/9


def test_c3c3_local_classes():
    g = catalog("Cp2_elem_abelian", 3)
    rep = enumerate_unital_nearrings(g, SearchConfig(local_only=True))
    assert rep.complete
    reports = [locality_report(nr) for nr in rep.representatives]
    nearfields = [r for r in reports if r.is_nearfield]
    small_l = [i for i, r in enumerate(reports) if len(r.L) == 3]
    # the field GF(9) and the twisted nearfield of order 9
    assert len(nearfields) == 2
    # non-nearfield local classes with |L| = 3: three, two zero-symmetric
    assert len(small_l) == 3
    assert sum(reports[i].is_zero_symmetric for i in small_l) == 2
    assert rep.iso_class_count == 5
    # the two zero-symmetric ones are non-isomorphic (already classes, check
    # the pruned isomorphism test agrees)
    zs = [rep.representatives[i] for i in small_l if reports[i].is_zero_symmetric]
    iso, _ = are_isomorphic(zs[0], zs[1])
    assert not iso


def test_d8_admits_no_local_nearring():
    rep = enumerate_unital_nearrings(catalog("D8", 2), SearchConfig(local_only=True))
    assert rep.complete and rep.iso_class_count == 0 and rep.candidates_found == 0


def test_d8_unital_but_never_local():
    rep = enumerate_unital_nearrings(catalog("D8", 2), SearchConfig())
    assert rep.complete
    assert rep.candidates_found > 0  # unital nearrings do exist on D8
    assert rep.local_count == 0
    filtered = filter_local(rep)
    assert filtered.iso_class_count == 0 and filtered.representatives == []


def test_q8_admits_no_unital_nearring():
    rep = enumerate_unital_nearrings(catalog("Q8", 2), SearchConfig())
    assert rep.complete and rep.candidates_found == 0


def test_c3_survivors_are_nearfields():
    rep = enumerate_unital_nearrings(cyclic(3), SearchConfig(local_only=True))
    filtered = filter_local(rep)
    assert filtered.iso_class_count == 1
    flags = locality_report(filtered.representatives[0])
    assert flags.is_nearfield and flags.L == (0,)


def test_search_cap():
    with pytest.raises(ValueError):
        enumerate_unital_nearrings(catalog("G1", 5), SearchConfig())


# ---------------------------------------------------------------------------
# order-16 classification


ORDER16_LOCAL_CLASSES = {
    "16-3": 37,
    "16-4": 24,
    "16-6": 33,
    "16-11": 0,
    "16-12": 2,
    "16-13": 0,
}


@pytest.mark.parametrize("name,count", sorted(ORDER16_LOCAL_CLASSES.items()))
def test_order16_local_class_counts(name, count):
    rep = enumerate_unital_nearrings(catalog(name, 2), SearchConfig(local_only=True))
    assert rep.complete
    assert rep.iso_class_count == count


def test_order16_12_via_filter_local():
    rep = enumerate_unital_nearrings(catalog("16-12", 2), SearchConfig(local_only=True))
    filtered = filter_local(rep)
    assert filtered.iso_class_count == 2
    for nr in filtered.representatives:
        assert locality_report(nr).is_local


# ---------------------------------------------------------------------------
# report structure and invariants


def test_report_invariant_and_serialization():
    rep = enumerate_unital_nearrings(catalog("16-6", 2), SearchConfig(local_only=True))
    assert rep.iso_class_count <= rep.local_count <= rep.candidates_found
    d = rep.to_dict()
    assert d["group"] == "16-6" and d["complete"] is True
    assert len(d["representatives"]) == rep.iso_class_count
    slim = rep.to_dict(include_tables=False)
    assert "representatives" not in slim
    json.dumps(d)  # serializable


def test_emitted_tables_are_sound():
    g = catalog("16-4", 2)
    _, arrays, index, _ = _engine._endo_tables(g)
    rep = enumerate_unital_nearrings(g, SearchConfig(local_only=True))
    for nr in rep.representatives:
        flags = verify_axioms(nr)
        assert flags.is_unital and flags.is_associative and flags.is_left_distributive
        # row-map soundness: every row is an endomorphism and composition
        # closes: lam_{x*y} = lam_x . lam_y
        rows = nr.mul
        n = g.order
        ids = [index[rows[x].astype(np.int16).tobytes()] for x in range(n)]
        for x in range(n):
            for y in range(n):
                lhs = arrays[ids[rows[x, y]]]
                rhs = arrays[ids[x]][arrays[ids[y]]]
                assert (lhs == rhs).all()


def test_determinism():
    g = catalog("16-3", 2)
    a = enumerate_unital_nearrings(g, SearchConfig(local_only=True))
    b = enumerate_unital_nearrings(g, SearchConfig(local_only=True))
    assert a.candidates_found == b.candidates_found
    assert a.pruning_stats == b.pruning_stats
    assert len(a.representatives) == len(b.representatives)
    for x, y in zip(a.representatives, b.representatives):
        assert (x.mul == y.mul).all()


def test_zero_symmetric_restriction():
    g = catalog("16-3", 2)
    full = enumerate_unital_nearrings(g, SearchConfig(local_only=True))
    zs = enumerate_unital_nearrings(g, SearchConfig(local_only=True, zero_sym_only=True))
    assert all(locality_report(nr).is_zero_symmetric for nr in zs.representatives)
    want = sum(locality_report(nr).is_zero_symmetric for nr in full.representatives)
    assert zs.iso_class_count == want


def test_identity_orbits_counted():
    rep = enumerate_unital_nearrings(catalog("Cp2_cyclic", 3), SearchConfig())
    assert rep.identity_orbits_tried == 1  # Aut(C9) is transitive on order-9 elements


# ---------------------------------------------------------------------------
# structural pruning soundness: warm starts from closed-form tables


@pytest.mark.parametrize("ident", ["g3-metacyclic", "g4-pow-i", "g5-ind", "g4-const"])
def test_warm_start_accepts_known_tables(ident):
    from nearrings.constructions import build_by_id
    nr = build_by_id(ident, 3, i=1)
    rep = enumerate_unital_nearrings(nr.group, SearchConfig(local_only=True, warm_start=nr))
    assert rep.candidates_found >= 1
    assert rep.local_count == 1
    iso, _ = are_isomorphic(rep.representatives[0], nr)
    assert iso


def test_warm_start_rejects_foreign_group():
    from nearrings.constructions import build_by_id
    nr = build_by_id("g4-const", 3)
    with pytest.raises(ValueError):
        enumerate_unital_nearrings(catalog("G5", 3), SearchConfig(warm_start=nr))


# ---------------------------------------------------------------------------
# budget, checkpoint, resume


def test_budget_exhaustion_is_flagged(tmp_path):
    path = str(tmp_path / "cp.json")
    rep = enumerate_unital_nearrings(
        catalog("16-3", 2),
        SearchConfig(local_only=True, node_budget=1, checkpoint_path=path))
    assert not rep.complete
    assert os.path.exists(path)
    with open(path) as fh:
        payload = json.load(fh)
    assert payload["kind"] == "nearrings-search-checkpoint"
    assert payload["complete"] is False
    assert payload["group"] == "16-3"


def test_resume_reaches_full_answer(tmp_path):
    g = catalog("16-4", 2)
    full = enumerate_unital_nearrings(g, SearchConfig(local_only=True))
    path = str(tmp_path / "cp.json")
    budget = 40
    rep = enumerate_unital_nearrings(
        g, SearchConfig(local_only=True, node_budget=budget, checkpoint_path=path))
    rounds = 1
    while not rep.complete:
        budget += 40
        rep = enumerate_unital_nearrings(
            g, SearchConfig(local_only=True, node_budget=budget, checkpoint_path=path))
        rounds += 1
        assert rounds < 100
    assert rounds > 1  # the budget actually interrupted the run
    assert rep.candidates_found == full.candidates_found
    assert rep.iso_class_count == full.iso_class_count
    a = sorted(canonical_form(g, nr.identity, nr.mul) for nr in rep.representatives)
    b = sorted(canonical_form(g, nr.identity, nr.mul) for nr in full.representatives)
    assert a == b


def test_checkpoint_group_mismatch(tmp_path):
    path = str(tmp_path / "cp.json")
    enumerate_unital_nearrings(
        catalog("16-3", 2),
        SearchConfig(local_only=True, node_budget=1, checkpoint_path=path))
    with pytest.raises(ValueError):
        enumerate_unital_nearrings(
            catalog("16-4", 2),
            SearchConfig(local_only=True, node_budget=10, checkpoint_path=path))


def test_finished_checkpoint_short_circuits(tmp_path):
    g = catalog("16-6", 2)
    path = str(tmp_path / "cp.json")
    rep = enumerate_unital_nearrings(
        g, SearchConfig(local_only=True, node_budget=10**9, checkpoint_path=path))
    assert rep.complete
    again = enumerate_unital_nearrings(
        g, SearchConfig(local_only=True, node_budget=1, checkpoint_path=path))
    assert again.complete
    assert again.iso_class_count == rep.iso_class_count


# ---------------------------------------------------------------------------
# parallel mode


def test_parallel_matches_single_threaded():
    g = catalog("16-3", 2)
    one = enumerate_unital_nearrings(g, SearchConfig(local_only=True))
    two = enumerate_unital_nearrings(g, SearchConfig(local_only=True, threads=2))
    assert two.complete
    assert (one.candidates_found, one.local_count, one.iso_class_count) == \
        (two.candidates_found, two.local_count, two.iso_class_count)
    a = sorted(canonical_form(g, nr.identity, nr.mul) for nr in one.representatives)
    b = sorted(canonical_form(g, nr.identity, nr.mul) for nr in two.representatives)
    assert a == b


def test_parallel_rejects_budget_and_checkpoint(tmp_path):
    with pytest.raises(ValueError):
        enumerate_unital_nearrings(
            catalog("16-3", 2), SearchConfig(threads=2, node_budget=10))
    with pytest.raises(ValueError):
        enumerate_unital_nearrings(
            catalog("16-3", 2),
            SearchConfig(threads=2, checkpoint_path=str(tmp_path / "x.json")))


# ---------------------------------------------------------------------------
# conjecture check (order 81)


def test_conjecture1_completes_with_no_local_nearring():
    rep = conjecture1_check(3)
    assert rep.complete
    assert rep.local_count == 0 and rep.iso_class_count == 0
    assert rep.identity_orbits_tried == 2


def test_conjecture1_budget_exhaustion_is_inconclusive(tmp_path):
    path = str(tmp_path / "cp.json")
    rep = conjecture1_check(3, SearchConfig(node_budget=0, checkpoint_path=path))
    assert not rep.complete


def test_conjecture1_requires_p3():
    with pytest.raises(ValueError):
        conjecture1_check(5)


# ---------------------------------------------------------------------------
# kernels


def test_kernel_selected_and_consistent():
    assert KERNEL in ("pure", "compiled")
    assert _kernels_pure.KERNEL_KIND == "pure"


def test_kernels_agree_step_by_step():
    speedups = pytest.importorskip("nearrings.search._speedups")
    g = catalog("Cp2_elem_abelian", 3)
    _, arrays, index, _ = _engine._endo_tables(g)
    n = g.order
    ident = index[np.arange(n, dtype=np.int16).tobytes()]
    every = frozenset(range(len(arrays)))
    results = []
    for kern in (_kernels_pure, speedups):
        assign = np.full(n, -1, dtype=np.int64)
        trail = []
        stats = {k: 0 for k in ("propagated", "closure_conflicts",
                                "forced_outside_candidates")}
        ok = kern.closure_propagate(arrays, index, {}, assign, trail,
                                    [every] * n, 1, ident, stats)
        results.append((ok, assign.tolist(), list(trail), dict(stats)))
    assert results[0] == results[1]


def test_filter_local_requires_complete_report(tmp_path):
    rep = enumerate_unital_nearrings(
        catalog("16-3", 2),
        SearchConfig(local_only=True, node_budget=1,
                     checkpoint_path=str(tmp_path / "cp.json")))
    with pytest.raises(ValueError):
        filter_local(rep)


def test_endomap_extension_roundtrip():
    g = catalog("16-4", 2)
    for e in all_endomorphisms(g):
        ext = e.extension()
        assert len(ext) == 16
        assert ext[0] == 0  # endomorphisms fix the neutral element
        for s in range(g.ngens):
            assert ext[g.index_of(g.generator(s))] == g.index_of(e.images[s])
