"""Finite convex (Plotkin) powerdomains.

Elements are non-empty convex subsets of a base poset, ordered by the
Egli-Milner extension of the base order; the extension of an arbitrary
relation to subsets is exposed separately so order-aware relations can
be lifted alongside.  Union-then-convex-closure gives the binary
nondeterministic choice, and the Kleisli extension/composition wire
set-valued tables together.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import CapExceededError, ValidationError
from .loci import is_complete_preorder
from .poset import FnTable, Poset, bits
from .relation import Rel, order_rel

DEFAULT_POWERDOMAIN_CAP = 5


def _mask_of(base: Poset, members: Iterable[str]) -> int:
    mask = 0
    for name in members:
        mask |= 1 << base.index(name)
    return mask


def _names_of(base: Poset, mask: int) -> tuple[str, ...]:
    return tuple(base.elements[i] for i in bits(mask))


def subset_name(base: Poset, mask: int) -> str:
    """Canonical name of a subset: members joined with '+'."""
    return "+".join(_names_of(base, mask))


def _convex_mask(base: Poset, mask: int) -> int:
    out = 0
    for b in range(len(base.elements)):
        if base.down_mask(b) & mask and base.up_mask(b) & mask:
            out |= 1 << b
    return out


def convex_closure(members: Iterable[str], base: Poset) -> frozenset[str]:
    """Everything between two members: {b | a <= b <= c for a, c in X}."""
    mask = _mask_of(base, members)
    return frozenset(_names_of(base, _convex_mask(base, mask)))


def _subset_key(n: int, mask: int) -> tuple[int, ...]:
    # lexicographic on the membership bitset, first element most significant
    return tuple((mask >> i) & 1 for i in range(n))


def _all_subset_masks(base: Poset) -> list[int]:
    n = len(base.elements)
    return sorted(range(1, 1 << n), key=lambda m: _subset_key(n, m))


@dataclass(frozen=True)
class PdElement:
    """A non-empty convex subset of a base poset."""

    base: Poset
    mask: int

    def __post_init__(self) -> None:
        if not self.mask:
            raise ValidationError("powerdomain elements are non-empty")
        if self.mask >> len(self.base.elements):
            raise ValidationError("membership mask outside the base carrier")
        if _convex_mask(self.base, self.mask) != self.mask:
            raise ValidationError(
                f"{{{' '.join(_names_of(self.base, self.mask))}}} is not convex")

    @property
    def members(self) -> tuple[str, ...]:
        return _names_of(self.base, self.mask)

    @property
    def name(self) -> str:
        return subset_name(self.base, self.mask)


def pd_element(base: Poset, members: Iterable[str]) -> PdElement:
    return PdElement(base, _mask_of(base, members))


def pd_union(x: PdElement, y: PdElement) -> PdElement:
    """Nondeterministic choice: convex closure of the plain union."""
    if x.base != y.base:
        raise ValidationError("elements live over different bases")
    return PdElement(x.base, _convex_mask(x.base, x.mask | y.mask))


def _em_rows(r: Rel, masks: list[int] | tuple[int, ...]) -> tuple[int, ...]:
    """Egli-Milner extension of r, restricted to the given subset masks."""
    n = len(r.carrier.elements)
    cols = [0] * n
    for i, row in enumerate(r.rows):
        for j in bits(row):
            cols[j] |= 1 << i
    rows = []
    for xm in masks:
        row = 0
        for t, ym in enumerate(masks):
            if all(r.rows[x] & ym for x in bits(xm)) and \
               all(cols[y] & xm for y in bits(ym)):
                row |= 1 << t
        rows.append(row)
    return tuple(rows)


def subset_space(base: Poset) -> Poset:
    """Discrete carrier of every non-empty subset, canonical order."""
    masks = _all_subset_masks(base)
    names = tuple(subset_name(base, m) for m in masks)
    return Poset(names, tuple(1 << i for i in range(len(names))))


def em_extension(r: Rel) -> Rel:
    """Egli-Milner extension of a relation, over all non-empty subsets.

    Both clauses at once: every member of the left set reaches into the
    right set, and every member of the right set is reached from the
    left set.
    """
    masks = _all_subset_masks(r.carrier)
    return Rel(subset_space(r.carrier), _em_rows(r, masks))


@dataclass(frozen=True, repr=False)
class PlotkinPoset(Poset):
    """Powerdomain carrier: convex subsets under the Egli-Milner order.

    Keeps the base poset and each element's membership mask so that
    set-level operations can recover the underlying subsets.
    """

    base: Poset
    masks: tuple[int, ...]

    @cached_property
    def mask_index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.masks)}


def plotkin(base: Poset, cap: int = DEFAULT_POWERDOMAIN_CAP) -> PlotkinPoset:
    """The convex powerdomain of a base poset of at most ``cap`` elements."""
    n = len(base.elements)
    if n > cap:
        raise CapExceededError(f"base carrier has {n} elements, cap is {cap}")
    masks = [m for m in _all_subset_masks(base) if _convex_mask(base, m) == m]
    names = tuple(subset_name(base, m) for m in masks)
    rows = _em_rows(order_rel(base), masks)
    return PlotkinPoset(names, rows, base, tuple(masks))


def pd_unit(base: Poset, cap: int = DEFAULT_POWERDOMAIN_CAP) -> FnTable:
    """Singleton embedding of the base into its powerdomain."""
    target = plotkin(base, cap)
    images = tuple(target.mask_index[1 << i] for i in range(len(base.elements)))
    return FnTable(base, target, images)


def kleisli_extend(f: FnTable, cap: int = DEFAULT_POWERDOMAIN_CAP) -> FnTable:
    """Extend a set-valued table to whole sets.

    For f from A into plotkin(B), the extension maps a convex X over A
    to the convex closure of the union of the f-images of its members.
    """
    target = f.cod
    if not isinstance(target, PlotkinPoset):
        raise ValidationError("codomain is not a powerdomain carrier")
    source = plotkin(f.dom, cap)
    images = []
    for xm in source.masks:
        acc = 0
        for x in bits(xm):
            acc |= target.masks[f.images[x]]
        images.append(target.mask_index[_convex_mask(target.base, acc)])
    return FnTable(source, target, tuple(images))


def kleisli_compose(f: FnTable, g: FnTable,
                    cap: int = DEFAULT_POWERDOMAIN_CAP) -> FnTable:
    """Sequence two set-valued tables: run f, then g on every outcome."""
    if not isinstance(f.cod, PlotkinPoset) or f.cod.base != g.dom:
        raise ValidationError(
            "left codomain must be the powerdomain of the right domain")
    return f.then(kleisli_extend(g, cap))


def pd_lift_relation(p: Rel, cap: int = DEFAULT_POWERDOMAIN_CAP) -> Rel:
    """Egli-Milner extension of a complete preorder, on the powerdomain carrier."""
    if not is_complete_preorder(p):
        raise ValidationError("argument must be a complete preorder")
    carrier = plotkin(p.carrier, cap)
    return Rel(carrier, _em_rows(p, list(carrier.masks)))
