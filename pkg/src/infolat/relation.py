"""Binary relations over a poset carrier.

Provides closure operators, boolean relation algebra, classification
predicates, and the two-way translation between preorders and ordered
partitions (blocks of mutually related elements plus a partial order on
the blocks).
"""

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ValidationError
from .poset import Poset, bits, close_rows


@dataclass(frozen=True)
class Rel:
    """A binary relation on a carrier, one bitmask row per element.

    The carrier's partial order is available but not implied: a Rel can
    hold any relation, and classification is computed on demand.
    """

    carrier: Poset
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.carrier.elements)
        if len(self.rows) != n:
            raise ValidationError("relation matrix does not match carrier size")
        full = (1 << n) - 1
        for row in self.rows:
            if row & ~full:
                raise ValidationError("relation row mentions an unknown index")

    def holds(self, x: str, y: str) -> bool:
        return bool((self.rows[self.carrier.index(x)] >> self.carrier.index(y)) & 1)

    def holds_idx(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def pairs(self) -> Iterator[tuple[str, str]]:
        """Related pairs in row-major canonical order."""
        names = self.carrier.elements
        for i, row in enumerate(self.rows):
            for j in bits(row):
                yield names[i], names[j]

    def pair_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def bit_tuple(self) -> tuple[int, ...]:
        """Row-major matrix bits; the canonical sort key for relations."""
        n = len(self.rows)
        return tuple((row >> j) & 1 for row in self.rows for j in range(n))

    @property
    def is_reflexive(self) -> bool:
        return all((row >> i) & 1 for i, row in enumerate(self.rows))

    @property
    def is_symmetric(self) -> bool:
        return all(self.holds_idx(j, i)
                   for i, row in enumerate(self.rows) for j in bits(row))

    @property
    def is_transitive(self) -> bool:
        return all(self.rows[i] | self.rows[j] == self.rows[i]
                   for i in range(len(self.rows)) for j in bits(self.rows[i]))

    @property
    def is_antisymmetric(self) -> bool:
        return all(i == j or not self.holds_idx(j, i)
                   for i, row in enumerate(self.rows) for j in bits(row))

    @property
    def is_preorder(self) -> bool:
        return self.is_reflexive and self.is_transitive

    @property
    def is_equivalence(self) -> bool:
        return self.is_preorder and self.is_symmetric

    def subset_of(self, other: "Rel") -> bool:
        _same_carrier(self, other)
        return all(r | o == o for r, o in zip(self.rows, other.rows))


def _same_carrier(r: Rel, s: Rel) -> None:
    if r.carrier != s.carrier:
        raise ValidationError("relations live on different carriers")


def rel_from_pairs(carrier: Poset, pairs: Iterable[tuple[str, str]]) -> Rel:
    rows = [0] * len(carrier.elements)
    for a, b in pairs:
        rows[carrier.index(a)] |= 1 << carrier.index(b)
    return Rel(carrier, tuple(rows))


def identity_rel(carrier: Poset) -> Rel:
    return Rel(carrier, tuple(1 << i for i in range(len(carrier.elements))))


def all_rel(carrier: Poset) -> Rel:
    full = (1 << len(carrier.elements)) - 1
    return Rel(carrier, (full,) * len(carrier.elements))


def order_rel(carrier: Poset) -> Rel:
    """The carrier's own partial order, as a relation value."""
    return Rel(carrier, carrier.rows)


CLOSURE_KINDS = ("refl_trans", "equivalence")


def close(r: Rel, kind: str) -> Rel:
    """Reflexive-transitive or full equivalence closure."""
    if kind not in CLOSURE_KINDS:
        raise ValidationError(f"unknown closure kind {kind!r}")
    rows = list(r.rows)
    if kind == "equivalence":
        n = len(rows)
        for i in range(n):
            for j in bits(rows[i]):
                rows[j] |= 1 << i
    return Rel(r.carrier, tuple(close_rows(rows)))


def intersect(r: Rel, s: Rel) -> Rel:
    _same_carrier(r, s)
    return Rel(r.carrier, tuple(a & b for a, b in zip(r.rows, s.rows)))


def union(r: Rel, s: Rel) -> Rel:
    _same_carrier(r, s)
    return Rel(r.carrier, tuple(a | b for a, b in zip(r.rows, s.rows)))


def invert(r: Rel) -> Rel:
    n = len(r.rows)
    rows = [0] * n
    for i, row in enumerate(r.rows):
        for j in bits(row):
            rows[j] |= 1 << i
    return Rel(r.carrier, tuple(rows))


def compose(r: Rel, s: Rel) -> Rel:
    """Relational composition: x (r;s) z iff some y has x r y and y s z."""
    _same_carrier(r, s)
    rows = []
    for row in r.rows:
        acc = 0
        for j in bits(row):
            acc |= s.rows[j]
        rows.append(acc)
    return Rel(r.carrier, tuple(rows))


def rel_algebra(op: str, r: Rel, s: Rel | None = None) -> Rel:
    """Dispatch on 'intersect' | 'union' | 'invert' | 'compose'."""
    if op == "invert":
        return invert(r)
    if s is None:
        raise ValidationError(f"operation {op!r} needs two relations")
    table = {"intersect": intersect, "union": union, "compose": compose}
    if op not in table:
        raise ValidationError(f"unknown relation operation {op!r}")
    return table[op](r, s)


def restrict_rel(r: Rel, target: Poset) -> Rel:
    """Restrict to a sub-carrier, matched up by element name."""
    src = [r.carrier.index(name) for name in target.elements]
    rows = []
    for i in src:
        row = 0
        for jt, js in enumerate(src):
            if r.holds_idx(i, js):
                row |= 1 << jt
        rows.append(row)
    return Rel(target, tuple(rows))


@dataclass(frozen=True)
class OrderedPartition:
    """Blocks covering the carrier plus a partial order on block indices."""

    carrier: Poset
    blocks: tuple[tuple[str, ...], ...]
    block_rows: tuple[int, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for block in self.blocks:
            if not block:
                raise ValidationError("empty block in ordered partition")
            for name in block:
                self.carrier.index(name)
                if name in seen:
                    raise ValidationError(f"element {name!r} in two blocks")
                seen.add(name)
        if len(seen) != len(self.carrier.elements):
            raise ValidationError("blocks do not cover the carrier")
        # the block order must itself be a poset on block indices
        Poset(tuple(str(i) for i in range(len(self.blocks))), self.block_rows)

    def block_of(self, name: str) -> int:
        for b, block in enumerate(self.blocks):
            if name in block:
                return b
        raise ValidationError(f"unknown element {name!r}")

    def block_leq(self, b1: int, b2: int) -> bool:
        return bool((self.block_rows[b1] >> b2) & 1)


def to_ordered_partition(q: Rel) -> OrderedPartition:
    """Split a preorder into mutually-related blocks plus a block order.

    Blocks come out in order of least member index; members keep
    declaration order.
    """
    if not q.is_preorder:
        raise ValidationError("only a preorder has an ordered partition")
    n = len(q.carrier.elements)
    names = q.carrier.elements
    block_index = [-1] * n
    block_masks: list[int] = []
    blocks: list[tuple[str, ...]] = []
    for i in range(n):
        if block_index[i] >= 0:
            continue
        # mutual class of i: every j with i q j and j q i
        mask = 0
        for j in bits(q.rows[i]):
            if q.holds_idx(j, i):
                mask |= 1 << j
        b = len(blocks)
        for j in bits(mask):
            block_index[j] = b
        block_masks.append(mask)
        blocks.append(tuple(names[j] for j in bits(mask)))
    reps = [next(bits(mask)) for mask in block_masks]
    block_rows = []
    for b1, r1 in enumerate(reps):
        row = 0
        for b2, r2 in enumerate(reps):
            if q.holds_idx(r1, r2):
                row |= 1 << b2
        block_rows.append(row)
    return OrderedPartition(q.carrier, tuple(blocks), tuple(block_rows))


def from_ordered_partition(op: OrderedPartition) -> Rel:
    """Expand block structure back into a preorder on the carrier."""
    n = len(op.carrier.elements)
    block_of = [0] * n
    for b, block in enumerate(op.blocks):
        for name in block:
            block_of[op.carrier.index(name)] = b
    block_masks = [0] * len(op.blocks)
    for i, b in enumerate(block_of):
        block_masks[b] |= 1 << i
    rows = []
    for i in range(n):
        row = 0
        for b2 in bits(op.block_rows[block_of[i]]):
            row |= block_masks[b2]
        rows.append(row)
    return Rel(op.carrier, tuple(rows))


def equivalence_from_blocks(carrier: Poset, blocks: Iterable[Iterable[str]]) -> Rel:
    """Equivalence relation with the given blocks (no order between them)."""
    blocks = tuple(tuple(b) for b in blocks)
    op = OrderedPartition(carrier, blocks,
                          tuple(1 << i for i in range(len(blocks))))
    return from_ordered_partition(op)


def preorder_from_blocks(carrier: Poset, blocks: Iterable[Iterable[str]],
                         covers: Iterable[tuple[int, int]]) -> Rel:
    """Preorder with the given blocks and block order generated by covers."""
    blocks = tuple(tuple(b) for b in blocks)
    rows = [0] * len(blocks)
    for b1, b2 in covers:
        rows[b1] |= 1 << b2
    op = OrderedPartition(carrier, blocks, tuple(close_rows(rows)))
    return from_ordered_partition(op)


def block_label(block: tuple[str, ...]) -> str:
    return "{" + " ".join(block) + "}"


def format_relation(rel: Rel) -> str:
    """One-line rendering.

    Preorders render as their ordered partition: plain blocks for an
    equivalence, ``<=``-joined blocks for a chain, and blocks plus cover
    pairs otherwise.  Anything else falls back to a pair list.
    """
    if not rel.is_preorder:
        return "pairs: " + " ".join(f"({a},{b})" for a, b in rel.pairs())
    op = to_ordered_partition(rel)
    labels = [block_label(b) for b in op.blocks]
    k = len(op.blocks)
    if all(op.block_rows[b] == 1 << b for b in range(k)):
        return " ".join(labels)
    total = all(op.block_leq(b1, b2) or op.block_leq(b2, b1)
                for b1 in range(k) for b2 in range(k))
    if total:
        # in a chain the number of blocks weakly above strictly decreases upward
        by_height = sorted(range(k), key=lambda b: -op.block_rows[b].bit_count())
        return " <= ".join(labels[b] for b in by_height)
    block_poset = Poset(tuple(str(i) for i in range(k)), op.block_rows)
    covers = ", ".join(f"{labels[i]} <= {labels[j]}"
                       for i, j in block_poset.covers())
    return " ".join(labels) + " ord: " + covers
