"""Shared carriers, brute-force oracles, and hypothesis strategies.

The oracle functions recompute everything from plain pair sets with
naive fixpoint loops, independent of the bitmask machinery under test.
"""

from functools import lru_cache

from hypothesis import strategies as st

from infolat import (FnTable, Poset, Rel, build_poset, chain, close,
                     discrete, iter_monotone_tables, lift, order_rel,
                     rel_from_pairs, union)
from infolat.relation import equivalence_from_blocks

# --- fixed carriers ---------------------------------------------------

ONE = discrete(("x",))
CHAIN2 = chain(("0", "1"))
CHAIN3 = chain(("0", "1", "2"))
CHAIN4 = chain(("0", "1", "2", "3"))
DISC2 = discrete(("p", "q"))
DISC3 = discrete(("p", "q", "r"))
VEE = build_poset(("⊥", "c", "a", "b"),
                  (("⊥", "c"), ("c", "a"), ("c", "b")))
DIAMOND = build_poset(("0", "a", "b", "1"),
                      (("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")))
BOOLBOT = lift(discrete(("T", "F")))

FAMILY = (ONE, CHAIN2, CHAIN3, CHAIN4, DISC2, DISC3, VEE, DIAMOND, BOOLBOT)

BELL = (1, 1, 2, 5, 15, 52, 203, 877, 4140)

# --- pair-set oracles -------------------------------------------------


def idx_pairs(rel: Rel) -> set[tuple[int, int]]:
    n = len(rel.carrier.elements)
    return {(i, j) for i in range(n) for j in range(n)
            if rel.holds_idx(i, j)}


def oracle_close(pairs, n, symmetric=False):
    """Reflexive(-symmetric)-transitive closure by repeated scanning."""
    s = set(pairs) | {(i, i) for i in range(n)}
    if symmetric:
        s |= {(b, a) for a, b in s}
    changed = True
    while changed:
        changed = False
        for a, b in list(s):
            for c, d in list(s):
                if b == c and (a, d) not in s:
                    s.add((a, d))
                    changed = True
                    if symmetric and (d, a) not in s:
                        s.add((d, a))
    return s


def oracle_compose(r, s, n):
    return {(a, d) for a, b in r for c, d in s if b == c}


def set_partitions(items):
    """Every partition of a sequence, as lists of lists."""
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]
        yield [[head]] + part


def all_equivalence_pair_sets(n):
    for part in set_partitions(range(n)):
        yield {(a, b) for block in part for a in block for b in block}


def all_preorder_pair_sets(n, must_contain=frozenset()):
    """Brute force over every subset of the square; n <= 4 only."""
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    base = {(i, i) for i in range(n)}
    for mask in range(1 << len(cells)):
        s = base | {cells[k] for k in range(len(cells)) if (mask >> k) & 1}
        if not must_contain <= s:
            continue
        if all((a, d) in s for a, b in s for c, d in s if b == c):
            yield s


def rel_of_pairs(carrier: Poset, pairs) -> Rel:
    els = carrier.elements
    return rel_from_pairs(carrier, [(els[i], els[j]) for i, j in pairs])


# --- strategies -------------------------------------------------------


@st.composite
def posets(draw, max_size=5):
    """Random poset: upper-triangular covers, so acyclic by construction."""
    n = draw(st.integers(1, max_size))
    names = tuple(f"e{i}" for i in range(n))
    covers = [(names[i], names[j])
              for j in range(n) for i in range(j) if draw(st.booleans())]
    return build_poset(names, covers)


@st.composite
def equivalences(draw, carrier: Poset):
    n = len(carrier.elements)
    blocks_of = []
    nblocks = 0
    for _ in range(n):
        b = draw(st.integers(0, nblocks))
        blocks_of.append(b)
        nblocks = max(nblocks, b + 1)
    blocks = [[] for _ in range(nblocks)]
    for i, b in enumerate(blocks_of):
        blocks[b].append(carrier.elements[i])
    return equivalence_from_blocks(carrier, blocks)


@st.composite
def preorders(draw, carrier: Poset):
    """Arbitrary preorder, not necessarily containing the carrier order."""
    n = len(carrier.elements)
    extra = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
        max_size=2 * n))
    return close(rel_of_pairs(carrier, extra), "refl_trans")


@st.composite
def complete_preorders(draw, carrier: Poset):
    return close(union(draw(preorders(carrier)), order_rel(carrier)),
                 "refl_trans")


@lru_cache(maxsize=None)
def _monotone_cache(dom: Poset, cod: Poset) -> tuple[FnTable, ...]:
    return tuple(iter_monotone_tables(dom, cod))


@st.composite
def monotone_fns(draw, dom: Poset, cod: Poset):
    return draw(st.sampled_from(_monotone_cache(dom, cod)))


@st.composite
def fn_between_family(draw, max_size=4):
    dom = draw(st.sampled_from([p for p in FAMILY
                                if len(p.elements) <= max_size]))
    cod = draw(st.sampled_from([p for p in FAMILY
                                if len(p.elements) <= max_size]))
    return draw(monotone_fns(dom, cod))
