"""Complete preorders: lattice, Galois round trip, realisability, quotients."""

from functools import reduce

import pytest
from hypothesis import given, strategies as st

from infolat import (CapExceededError, ValidationError, all_rel, cp,
                     enumerate_loci, enumerate_loi, er,
                     find_monotone_postprocessor, flow_check, get_example,
                     identity_rel, intersect, is_complete_preorder,
                     is_realisable, iter_equivalences, kernel, loci_join,
                     loci_leq, loci_meet, loci_pullback, loci_pushforward, loi_leq,
                     order_rel, ordered_kernel, ordered_knowledge_set,
                     phi_realisability, quotient_map, rel_from_pairs)
from infolat.loci import is_complete_preorder_exhaustive
from helpers import (BELL, BOOLBOT, CHAIN2, CHAIN3, CHAIN4, DIAMOND, DISC2,
                     DISC3, FAMILY, VEE, all_preorder_pair_sets,
                     complete_preorders, equivalences, fn_between_family,
                     idx_pairs, monotone_fns, preorders, set_partitions)

LOCI_VEE = enumerate_loci(VEE)
LOI_VEE = enumerate_loi(VEE)


class TestCompleteness:
    @given(preorders(VEE))
    def test_fast_path_matches_directed_suprema(self, q):
        assert is_complete_preorder(q) == is_complete_preorder_exhaustive(q)

    @given(complete_preorders(DIAMOND))
    def test_generated_complete_preorders_accepted(self, q):
        assert is_complete_preorder(q)
        assert is_complete_preorder_exhaustive(q)

    def test_identity_incomplete_unless_discrete(self):
        assert not is_complete_preorder(identity_rel(VEE))
        assert is_complete_preorder(identity_rel(DISC3))

    def test_non_preorder_rejected(self):
        assert not is_complete_preorder(rel_from_pairs(VEE, [("a", "b")]))


class TestLattice:
    def test_extremes(self):
        for q in LOCI_VEE:
            assert loci_leq(all_rel(VEE), q)
            assert loci_leq(q, order_rel(VEE))

    @given(complete_preorders(VEE), complete_preorders(VEE))
    def test_join_is_least_upper_bound(self, p, q):
        j = loci_join(p, q)
        assert is_complete_preorder(j)
        assert loci_leq(p, j) and loci_leq(q, j)
        for r in LOCI_VEE:
            if loci_leq(p, r) and loci_leq(q, r):
                assert loci_leq(j, r)

    @given(complete_preorders(VEE), complete_preorders(VEE))
    def test_meet_is_greatest_lower_bound(self, p, q):
        m = loci_meet(p, q)
        assert is_complete_preorder(m)
        assert loci_leq(m, p) and loci_leq(m, q)
        for r in LOCI_VEE:
            if loci_leq(r, p) and loci_leq(r, q):
                assert loci_leq(r, m)

    def test_arguments_must_be_complete(self):
        with pytest.raises(ValidationError):
            loci_join(identity_rel(VEE), order_rel(VEE))


class TestEnumeration:
    @pytest.mark.parametrize("carrier", FAMILY,
                             ids=lambda p: "-".join(p.elements[:2]))
    def test_loci_matches_brute_force(self, carrier):
        n = len(carrier.elements)
        got = {frozenset(idx_pairs(q)) for q in enumerate_loci(carrier)}
        want = {frozenset(s) for s in all_preorder_pair_sets(
            n, must_contain=frozenset(idx_pairs(order_rel(carrier))))}
        assert got == want

    def test_pinned_counts(self):
        assert len(LOCI_VEE) == 14
        assert len(enumerate_loci(DISC3)) == 29
        assert [len(enumerate_loci(chain))
                for chain in (CHAIN2, CHAIN3, CHAIN4)] == [2, 4, 8]

    def test_loi_counts_follow_bell(self):
        for carrier in FAMILY:
            n = len(carrier.elements)
            assert len(enumerate_loi(carrier)) == BELL[n]

    def test_partitions_match_oracle(self):
        got = {frozenset(idx_pairs(q)) for q in iter_equivalences(CHAIN4)}
        want = {frozenset((a, b) for blk in part for a in blk for b in blk)
                for part in set_partitions(range(4))}
        assert got == want

    def test_enumeration_order_canonical(self):
        keys = [q.bit_tuple() for q in LOCI_VEE]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    def test_first_equivalence_is_all_last_is_identity(self):
        rels = list(iter_equivalences(VEE))
        assert rels[0] == all_rel(VEE)
        assert rels[-1] == identity_rel(VEE)

    def test_cap_enforced(self):
        from infolat import discrete
        big = discrete(tuple(f"e{i}" for i in range(7)))
        with pytest.raises(CapExceededError):
            enumerate_loci(big)
        with pytest.raises(CapExceededError):
            enumerate_loi(big)

    def test_oracle_sanity_on_discrete_four(self):
        # labelled preorders on four points
        assert sum(1 for _ in all_preorder_pair_sets(4)) == 355


class TestGaloisRoundTrip:
    def test_cp_is_intersection_of_completions(self):
        # defining form: intersect every complete preorder containing p
        for p in LOI_VEE:
            containing = [q for q in LOCI_VEE if p.subset_of(q)]
            assert cp(p) == reduce(intersect, containing)

    def test_adjunction(self):
        # er below p exactly when q below cp: er is the lower adjoint
        for p in LOI_VEE:
            for q in LOCI_VEE:
                assert loci_leq(q, cp(p)) == loi_leq(er(q), p)

    def test_cp_after_er_stays_inside(self):
        for q in LOCI_VEE:
            e = er(q)
            assert e.is_equivalence
            assert cp(e).subset_of(q)

    @given(preorders(VEE))
    def test_er_keeps_mutual_pairs(self, p):
        e = er(p)
        for i in range(4):
            for j in range(4):
                assert e.holds_idx(i, j) == (
                    p.holds_idx(i, j) and p.holds_idx(j, i))

    def test_er_rejects_raw(self):
        with pytest.raises(ValidationError):
            er(rel_from_pairs(VEE, [("a", "b")]))

    def test_cp_rejects_preorder(self):
        with pytest.raises(ValidationError):
            cp(order_rel(VEE))


class TestRealisability:
    @pytest.mark.parametrize("carrier", (CHAIN3, VEE, DIAMOND, BOOLBOT),
                             ids=lambda p: "-".join(p.elements[:2]))
    def test_phi_agrees_with_galois_test(self, carrier):
        for r in iter_equivalences(carrier):
            assert phi_realisability(r).realisable == is_realisable(r)

    @pytest.mark.parametrize("carrier", (CHAIN3, VEE, DIAMOND, BOOLBOT),
                             ids=lambda p: "-".join(p.elements[:2]))
    def test_witness_realises(self, carrier):
        for r in iter_equivalences(carrier):
            res = phi_realisability(r)
            if res.realisable:
                assert res.witness_fn.is_monotone
                assert kernel(res.witness_fn) == r
                assert ordered_kernel(res.witness_fn) == cp(r)

    def test_cycle_is_honest(self):
        for r in iter_equivalences(VEE):
            res = phi_realisability(r)
            if not res.realisable:
                cyc = res.cycle
                assert len(cyc) >= 2
                assert len(set(cyc)) == len(cyc)
                for k, block in enumerate(cyc):
                    nxt = cyc[(k + 1) % len(cyc)]
                    assert any(VEE.leq(x, y) for x in block for y in nxt)

    def test_vee_collapses(self):
        # identifying the two maximal points is fine; identifying a
        # maximal point with the bottom loops around the middle
        from infolat.relation import equivalence_from_blocks
        ok = equivalence_from_blocks(VEE, [["⊥"], ["c"], ["a", "b"]])
        assert is_realisable(ok)
        bad = equivalence_from_blocks(VEE, [["⊥", "a"], ["c"], ["b"]])
        assert not is_realisable(bad)
        cyc = phi_realisability(bad).cycle
        assert set(map(frozenset, cyc)) == {frozenset({"⊥", "a"}),
                                            frozenset({"c"})}

    def test_realisable_count_on_vee(self):
        assert sum(1 for r in iter_equivalences(VEE)
                   if is_realisable(r)) == 10


class TestQuotient:
    def test_every_complete_preorder_is_an_ordered_kernel(self):
        for q in LOCI_VEE:
            f = quotient_map(q)
            assert f.is_monotone
            assert ordered_kernel(f) == q
            assert kernel(f) == er(q)

    def test_quotient_requires_completeness(self):
        with pytest.raises(ValidationError):
            quotient_map(identity_rel(VEE))


class TestOrderedKernel:
    @given(fn_between_family())
    def test_definition(self, f):
        k = ordered_kernel(f)
        for x in f.dom.elements:
            for y in f.dom.elements:
                assert k.holds(x, y) == f.cod.leq(f(x), f(y))
        assert is_complete_preorder(k)
        assert er(k) == kernel(f)

    @given(fn_between_family())
    def test_ordered_knowledge_set(self, f):
        for a in f.dom.elements:
            want = {x for x in f.dom.elements if f.cod.leq(f(a), f(x))}
            assert ordered_knowledge_set(f, a) == want


@st.composite
def ordered_flow_instances(draw):
    f = draw(fn_between_family())
    return f, draw(complete_preorders(f.dom)), draw(complete_preorders(f.cod))


class TestOrderedFlow:
    @given(ordered_flow_instances())
    def test_flow_iff_pullback_below_pre(self, inst):
        f, p, q = inst
        holds = flow_check(f, p, q) is None
        assert holds == loci_leq(loci_pullback(f, q), p)

    @given(ordered_flow_instances())
    def test_flow_iff_post_below_pushforward(self, inst):
        f, p, q = inst
        holds = flow_check(f, p, q) is None
        assert holds == loci_leq(q, loci_pushforward(f, p))

    @given(ordered_flow_instances())
    def test_pullback_and_pushforward_stay_complete(self, inst):
        f, p, q = inst
        assert is_complete_preorder(loci_pullback(f, q))
        assert is_complete_preorder(loci_pushforward(f, p))

    @given(ordered_flow_instances())
    def test_pushforward_is_least(self, inst):
        f, p, _ = inst
        push = loci_pushforward(f, p)
        assert flow_check(f, p, push) is None
        for q in enumerate_loci(f.cod):
            if flow_check(f, p, q) is None:
                assert loci_leq(q, push)

    def test_order_as_flow_is_monotonicity(self):
        # every monotone table carries the domain order to the codomain order
        for f in (get_example("V").functions.values()):
            assert flow_check(f, order_rel(f.dom), order_rel(f.cod)) is None


class TestMonotonePostprocessor:
    @given(monotone_fns(VEE, CHAIN3), monotone_fns(CHAIN3, DISC2))
    def test_composition_recoverable(self, f, h):
        g = f.then(h)
        p = find_monotone_postprocessor(g, f)
        assert p is not None
        assert p.is_monotone
        assert f.then(p).images == g.images

    @given(monotone_fns(CHAIN3, VEE), monotone_fns(CHAIN3, DIAMOND))
    def test_found_iff_search_space_has_one(self, f, g):
        from infolat import iter_monotone_tables
        p = find_monotone_postprocessor(f, g)
        brute = [t for t in iter_monotone_tables(g.cod, f.cod)
                 if g.then(t).images == f.images]
        assert (p is not None) == bool(brute)
        if p is not None:
            assert g.then(p).images == f.images

    def test_bound_enforced(self):
        f = get_example("parity", n=4).functions["f1"]
        with pytest.raises(CapExceededError):
            find_monotone_postprocessor(f, f, bound=1)
