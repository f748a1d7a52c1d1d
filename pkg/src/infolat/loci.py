"""Complete preorders on a poset: the order-aware information lattice.

A complete preorder respects the carrier's suprema of directed subsets;
on a finite poset that is the same as containing the carrier order, and
that fast test is the production path (`is_complete_preorder`), with the
directed-suprema definition kept alongside as a cross-check.  The
lattice is ordered by reverse inclusion with the carrier order itself at
the top.  This module also houses the round trip to the equivalence
world: underlying equivalence (`er`), completion (`cp`), realisability,
and the quotient construction witnessing that complete preorders are
exactly the ordered kernels of monotone tables.
"""

from dataclasses import dataclass
from typing import Iterator

from .errors import CapExceededError, ValidationError
from .loi import pullback
from .poset import FnTable, Poset, bits, close_rows
from .relation import (Rel, close, intersect, invert, order_rel,
                       rel_from_pairs, to_ordered_partition, union)

DEFAULT_ENUMERATION_CAP = 6
DEFAULT_SEARCH_BOUND = 10_000_000


def _require_on(r: Rel, carrier: Poset, what: str) -> None:
    if r.carrier != carrier:
        raise ValidationError(f"{what} lives on the wrong carrier")


def _require_complete(q: Rel, what: str) -> None:
    if not is_complete_preorder(q):
        raise ValidationError(f"{what} must be a complete preorder")


def is_complete_preorder(q: Rel) -> bool:
    """Fast path: a preorder containing the carrier order.

    On finite posets this coincides with the directed-suprema
    definition; `is_complete_preorder_exhaustive` checks that
    definition literally and the two are asserted to agree in tests.
    """
    return q.is_preorder and order_rel(q.carrier).subset_of(q)


def is_complete_preorder_exhaustive(q: Rel) -> bool:
    """Directed-suprema definition, checked subset by subset.

    For every directed subset X with supremum s: every member of X is
    below s in q, and any q-upper bound of all of X is above s in q.
    Exponential; intended for small carriers and as a test oracle.
    """
    if not q.is_preorder:
        return False
    n = len(q.carrier.elements)
    for mask, top in q.carrier.directed_subsets():
        for x in bits(mask):
            if not q.holds_idx(x, top):
                return False
        for a in range(n):
            if all(q.holds_idx(x, a) for x in bits(mask)):
                if not q.holds_idx(top, a):
                    return False
    return True


def loci_leq(p: Rel, q: Rel) -> bool:
    """p below q (q more revealing): q contained in p."""
    _require_complete(p, "left argument")
    _require_complete(q, "right argument")
    return q.subset_of(p)


def loci_join(p: Rel, q: Rel) -> Rel:
    """Least upper bound: the intersection."""
    _require_complete(p, "left argument")
    _require_complete(q, "right argument")
    return intersect(p, q)


def loci_meet(p: Rel, q: Rel) -> Rel:
    """Greatest lower bound: reflexive-transitive closure of the union.

    The closure already contains the carrier order, so it is complete.
    """
    _require_complete(p, "left argument")
    _require_complete(q, "right argument")
    return close(union(p, q), "refl_trans")


def ordered_kernel(f: FnTable) -> Rel:
    """Relates x to y when f(x) is below f(y) in the codomain order.

    The order-aware analogue of the kernel; always a complete preorder
    for monotone f.
    """
    return pullback(f, order_rel(f.cod))


def ordered_knowledge_set(f: FnTable, a: str) -> frozenset[str]:
    """Inputs whose observation under f refines what ``a`` shows."""
    v = f.images[f.dom.index(a)]
    return frozenset(x for x, w in zip(f.dom.elements, f.images)
                     if f.cod.leq_idx(v, w))


def loci_pullback(f: FnTable, q: Rel) -> Rel:
    """Inverse image of a complete preorder; again complete for monotone f."""
    _require_complete(q, "relation")
    _require_on(q, f.cod, "relation")
    return pullback(f, q)


def loci_pushforward(f: FnTable, p: Rel) -> Rel:
    """Least complete preorder on the codomain the outputs land in.

    Closure of the image pairs together with the codomain order.
    """
    _require_complete(p, "precondition")
    _require_on(p, f.dom, "precondition")
    image_pairs = rel_from_pairs(
        f.cod,
        ((f.cod.elements[f.images[i]], f.cod.elements[f.images[j]])
         for i, row in enumerate(p.rows) for j in bits(row)))
    return close(union(image_pairs, order_rel(f.cod)), "refl_trans")


def er(p: Rel) -> Rel:
    """Underlying equivalence of a preorder: the mutually related pairs."""
    if not p.is_preorder:
        raise ValidationError("argument must be a preorder")
    return intersect(p, invert(p))


def cp(r: Rel) -> Rel:
    """Completion: least complete preorder containing the equivalence.

    Computed as the reflexive-transitive closure of the union with the
    carrier order; tests cross-check this against the defining
    intersection of all complete preorders containing r.
    """
    if not r.is_equivalence:
        raise ValidationError("argument must be an equivalence relation")
    return close(union(r, order_rel(r.carrier)), "refl_trans")


def is_realisable(r: Rel) -> bool:
    """Is r the underlying equivalence of its own completion?"""
    return er(cp(r)) == r


@dataclass(frozen=True)
class RealisabilityResult:
    """Either a witness (quotient poset and map whose kernel is r) or a
    non-trivial cycle of blocks obstructing realisability."""

    realisable: bool
    witness_poset: Poset | None = None
    witness_fn: FnTable | None = None
    cycle: tuple[tuple[str, ...], ...] | None = None


def _block_name(block: tuple[str, ...]) -> str:
    return "+".join(block)


def _phi_path(phi: list[int], start: int, goal: int) -> list[int]:
    # BFS over the one-step block relation
    parents = {start: start}
    frontier = [start]
    while frontier:
        nxt = []
        for b in frontier:
            for b2 in bits(phi[b]):
                if b2 not in parents:
                    parents[b2] = b
                    nxt.append(b2)
        if goal in parents:
            break
        frontier = nxt
    path = [goal]
    while path[-1] != start:
        path.append(parents[path[-1]])
    path.reverse()
    return path


def phi_realisability(r: Rel) -> RealisabilityResult:
    """Cycle test on blocks.

    One block steps to another when some member of the first is below
    some member of the second in the carrier.  If the transitive
    closure of that step relation is antisymmetric, the quotient map
    onto the closed block order realises r; otherwise any non-trivial
    cycle is returned as the obstruction.
    """
    if not r.is_equivalence:
        raise ValidationError("argument must be an equivalence relation")
    op = to_ordered_partition(r)
    blocks = op.blocks
    k = len(blocks)
    carrier = r.carrier
    block_masks = []
    for block in blocks:
        mask = 0
        for name in block:
            mask |= 1 << carrier.index(name)
        block_masks.append(mask)
    phi = []
    for b1 in range(k):
        row = 0
        for b2 in range(k):
            if any(carrier.up_mask(x) & block_masks[b2]
                   for x in bits(block_masks[b1])):
                row |= 1 << b2
        phi.append(row)
    closed = close_rows(phi)
    for b1 in range(k):
        for b2 in bits(closed[b1]):
            if b2 != b1 and (closed[b2] >> b1) & 1:
                forward = _phi_path(phi, b1, b2)
                back = _phi_path(phi, b2, b1)
                cycle = forward + back[1:-1]
                return RealisabilityResult(
                    False, cycle=tuple(blocks[b] for b in cycle))
    witness = Poset(tuple(_block_name(b) for b in blocks), tuple(closed))
    images = [0] * len(carrier.elements)
    for b, mask in enumerate(block_masks):
        for i in bits(mask):
            images[i] = b
    return RealisabilityResult(True, witness_poset=witness,
                               witness_fn=FnTable(carrier, witness, tuple(images)))


def quotient_map(q: Rel) -> FnTable:
    """Monotone map collapsing each mutual class of a complete preorder.

    The codomain is the block order; the ordered kernel of the result
    is q itself.
    """
    _require_complete(q, "argument")
    op = to_ordered_partition(q)
    target = Poset(tuple(_block_name(b) for b in op.blocks), op.block_rows)
    images = [0] * len(q.carrier.elements)
    for b, block in enumerate(op.blocks):
        for name in block:
            images[q.carrier.index(name)] = b
    return FnTable(q.carrier, target, tuple(images))


def iter_equivalences(carrier: Poset) -> Iterator[Rel]:
    """Every equivalence relation on the carrier, restricted-growth order.

    This enumeration order is the canonical partition order used by
    searches; counts follow the Bell numbers.
    """
    n = len(carrier.elements)
    assignment = [0] * n

    def rec(i: int, nblocks: int) -> Iterator[Rel]:
        if i == n:
            masks = [0] * nblocks
            for x, b in enumerate(assignment):
                masks[b] |= 1 << x
            yield Rel(carrier, tuple(masks[b] for b in assignment))
            return
        for b in range(nblocks + 1):
            assignment[i] = b
            yield from rec(i + 1, max(nblocks, b + 1))

    return rec(0, 0)


def enumerate_loi(carrier: Poset, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Rel]:
    """All equivalence relations, sorted by canonical matrix bits."""
    if len(carrier.elements) > cap:
        raise CapExceededError(
            f"carrier has {len(carrier.elements)} elements, cap is {cap}")
    return sorted(iter_equivalences(carrier), key=Rel.bit_tuple)


def enumerate_loci(a: Poset, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Rel]:
    """All complete preorders on the poset, sorted by canonical matrix bits.

    Backtracks over candidate pairs above the carrier order, closing as
    it goes and pruning branches whose closure hits an excluded pair;
    each closed superset is produced exactly once.
    """
    n = len(a.elements)
    if n > cap:
        raise CapExceededError(f"carrier has {n} elements, cap is {cap}")
    base = a.rows
    candidates = [(i, j) for i in range(n) for j in range(n)
                  if not (base[i] >> j) & 1]
    found: list[tuple[int, ...]] = []

    def pair_bit(i: int, j: int) -> int:
        return 1 << (i * n + j)

    def rec(rows: tuple[int, ...], k: int, forbidden: int) -> None:
        while k < len(candidates):
            i, j = candidates[k]
            if not (rows[i] >> j) & 1:
                break
            k += 1
        else:
            found.append(rows)
            return
        i, j = candidates[k]
        rec(rows, k + 1, forbidden | pair_bit(i, j))
        grown = list(rows)
        grown[i] |= 1 << j
        closed = tuple(close_rows(grown))
        closed_bits = 0
        for x, row in enumerate(closed):
            closed_bits |= row << (x * n)
        if not closed_bits & forbidden:
            rec(closed, k + 1, forbidden)

    rec(base, 0, 0)
    return sorted((Rel(a, rows) for rows in found), key=Rel.bit_tuple)


def find_monotone_postprocessor(f: FnTable, g: FnTable,
                                bound: int = DEFAULT_SEARCH_BOUND) -> FnTable | None:
    """First monotone p (lexicographic on image tuples) with f = p after g.

    Exhausts the candidate space cod(g) -> cod(f) depth-first, pruning
    partial assignments that break monotonicity or the composition
    constraint.  Raises when the candidate space exceeds ``bound``.
    """
    if f.dom != g.dom:
        raise ValidationError("tables must share a domain")
    m = len(g.cod.elements)
    k = len(f.cod.elements)
    if k ** m > bound:
        raise CapExceededError(
            f"search space {k}**{m} exceeds bound {bound}")
    required: list[int | None] = [None] * m
    for i in range(len(f.dom.elements)):
        j, v = g.images[i], f.images[i]
        if required[j] is None:
            required[j] = v
        elif required[j] != v:
            return None
    images: list[int] = []

    def feasible(pos: int, candidate: int) -> bool:
        for prev in range(pos):
            if g.cod.leq_idx(prev, pos) and not f.cod.leq_idx(images[prev], candidate):
                return False
            if g.cod.leq_idx(pos, prev) and not f.cod.leq_idx(candidate, images[prev]):
                return False
        return True

    def rec(pos: int) -> bool:
        if pos == m:
            return True
        want = required[pos]
        for candidate in range(k) if want is None else (want,):
            if feasible(pos, candidate):
                images.append(candidate)
                if rec(pos + 1):
                    return True
                images.pop()
        return False

    if rec(0):
        return FnTable(g.cod, f.cod, tuple(images))
    return None
