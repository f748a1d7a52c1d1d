"""Termination-insensitive flow checking.

The compatible extension of a preorder relates two elements when they
share an upper bound under it; checking a flow property against the
compatible extensions of both sides ignores leaks that only manifest
through (non-)termination.  The flat-observer encoding recovers a
restricted form of this on the equivalence side, and the exhaustive
observer search shows where that encoding runs out.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceededError, ValidationError
from .loci import is_complete_preorder, iter_equivalences
from .loi import FnTable, Violation, flow_check, loi_join, pullback
from .poset import Poset
from .relation import Rel, equivalence_from_blocks


def compatible_extension(q: Rel) -> Rel:
    """Relates x, y when some z has x q z and y q z.

    Contains q, is reflexive and symmetric, and in general is not
    transitive.
    """
    if not q.is_preorder:
        raise ValidationError("argument must be a preorder")
    rows = tuple(
        sum(1 << j for j in range(len(q.rows)) if q.rows[i] & q.rows[j])
        for i in range(len(q.rows)))
    return Rel(q.carrier, rows)


def ti_flow_check(f: FnTable, pre: Rel, post: Rel) -> Violation | None:
    """Flow check between the compatible extensions of two complete preorders."""
    if not is_complete_preorder(pre):
        raise ValidationError("precondition must be a complete preorder")
    if not is_complete_preorder(post):
        raise ValidationError("postcondition must be a complete preorder")
    return flow_check(f, compatible_extension(pre), compatible_extension(post))


def flat_termination_observer(b: Poset) -> Rel:
    """The divergence observer on a lifted flat poset.

    Requires a unique bottom with a discrete layer above it; the result
    relates the bottom only to itself and all defined values to each
    other.
    """
    n = len(b.elements)
    bot = b.minimum()
    if n < 2 or bot is None:
        raise ValidationError("carrier is not a lifted flat poset")
    for i, row in enumerate(b.rows):
        if i != bot and row != 1 << i:
            raise ValidationError("carrier is not a lifted flat poset")
    rest = [name for i, name in enumerate(b.elements) if i != bot]
    return equivalence_from_blocks(b, [[b.elements[bot]], rest])


def ti_via_observer(f: FnTable, pre: Rel, post: Rel, t: Rel) -> Violation | None:
    """Equivalence-side encoding: strengthen the precondition with the
    pulled-back termination observer, then flow check."""
    for r, what in ((pre, "precondition"), (post, "postcondition"),
                    (t, "termination observer")):
        if not r.is_equivalence:
            raise ValidationError(f"{what} must be an equivalence relation")
    return flow_check(f, loi_join(pre, pullback(f, t)), post)


@dataclass(frozen=True)
class ObserverSearch:
    """Outcome of the exhaustive observer search.

    ``separating`` is the first observer (canonical partition order)
    that accepts the good function and rejects every bad one, or None
    when no observer does; ``checked`` counts the candidates examined.
    """

    separating: Rel | None
    checked: int


def observer_impossibility_search(
        f_ok: FnTable, g_bad: FnTable | Iterable[FnTable],
        pre: Rel, post: Rel, cap: int = 8) -> ObserverSearch:
    """Search every equivalence on the shared codomain for a separator.

    A separating observer T makes the encoded check pass for ``f_ok``
    and fail for each bad table.  Passing several bad tables demands a
    T that defeats all of them at once; this is how symmetric variants
    of a leak are covered.
    """
    bads: Sequence[FnTable] = (g_bad,) if isinstance(g_bad, FnTable) else tuple(g_bad)
    if not bads:
        raise ValidationError("need at least one bad function")
    cod = f_ok.cod
    for g in bads:
        if g.cod != cod:
            raise ValidationError("functions must share a codomain")
    if len(cod.elements) > cap:
        raise CapExceededError(
            f"codomain has {len(cod.elements)} elements, cap is {cap}")
    checked = 0
    for t in iter_equivalences(cod):
        checked += 1
        if ti_via_observer(f_ok, pre, post, t) is not None:
            continue
        if all(ti_via_observer(g, pre, post, t) is not None for g in bads):
            return ObserverSearch(t, checked)
    return ObserverSearch(None, checked)
