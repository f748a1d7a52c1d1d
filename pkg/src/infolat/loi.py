"""The lattice of equivalence relations on a carrier.

Ordering is reverse inclusion: P below Q means Q is contained in P, so
the identity relation is the top (full knowledge) and the all-relation
is the bottom (no knowledge).  Join is intersection; meet closes the
union.  Kernels, knowledge sets, flow checking and the two image maps
(pullback and pushforward) connect function tables to the lattice.
"""

from dataclasses import dataclass

from .errors import ValidationError
from .poset import FnTable, Poset, bits
from .relation import (Rel, close, identity_rel, intersect, rel_from_pairs,
                       union)


def _require_equivalence(r: Rel, what: str) -> None:
    if not r.is_equivalence:
        raise ValidationError(f"{what} must be an equivalence relation")


def _require_on(r: Rel, carrier: Poset, what: str) -> None:
    if r.carrier != carrier:
        raise ValidationError(f"{what} lives on the wrong carrier")


def loi_leq(p: Rel, q: Rel) -> bool:
    """p below q (q reveals at least as much): q is a subset of p."""
    _require_equivalence(p, "left argument")
    _require_equivalence(q, "right argument")
    return q.subset_of(p)


def loi_join(p: Rel, q: Rel) -> Rel:
    """Least upper bound: the intersection."""
    _require_equivalence(p, "left argument")
    _require_equivalence(q, "right argument")
    return intersect(p, q)


def loi_meet(p: Rel, q: Rel) -> Rel:
    """Greatest lower bound: equivalence closure of the union."""
    _require_equivalence(p, "left argument")
    _require_equivalence(q, "right argument")
    return close(union(p, q), "equivalence")


def kernel(f: FnTable) -> Rel:
    """Indistinguishability under f: relates x, y with f(x) = f(y)."""
    groups: dict[int, int] = {}
    for i, v in enumerate(f.images):
        groups[v] = groups.get(v, 0) | (1 << i)
    return Rel(f.dom, tuple(groups[v] for v in f.images))


def knowledge_set(f: FnTable, a: str) -> frozenset[str]:
    """Inputs an observer of f cannot tell apart from ``a``."""
    v = f.images[f.dom.index(a)]
    return frozenset(x for x, w in zip(f.dom.elements, f.images) if w == v)


@dataclass(frozen=True)
class Violation:
    """Witness that a flow property fails: a related input pair whose
    outputs are unrelated."""

    a: str
    a_prime: str
    fa: str
    fa_prime: str

    def __str__(self) -> str:
        return (f"VIOLATION: a={self.a} a'={self.a_prime} "
                f"f(a)={self.fa} f(a')={self.fa_prime}")


def flow_check(f: FnTable, pre: Rel, post: Rel) -> Violation | None:
    """Does every pre-related input pair map to a post-related pair?

    Returns None when the property holds, otherwise the first violating
    pair in row-major canonical order.  Works for arbitrary relations.
    """
    _require_on(pre, f.dom, "precondition")
    _require_on(post, f.cod, "postcondition")
    names = f.dom.elements
    for i, row in enumerate(pre.rows):
        for j in bits(row):
            if not post.holds_idx(f.images[i], f.images[j]):
                return Violation(names[i], names[j],
                                 f.cod.elements[f.images[i]],
                                 f.cod.elements[f.images[j]])
    return None


def pullback(f: FnTable, r: Rel) -> Rel:
    """Inverse image: relates x, y exactly when f(x) r f(y).

    Preserves reflexivity, transitivity and symmetry; the kernel of f
    is the pullback of the identity relation.
    """
    _require_on(r, f.cod, "relation")
    rows = []
    for i in range(len(f.dom.elements)):
        row = 0
        src = r.rows[f.images[i]]
        for j, v in enumerate(f.images):
            if (src >> v) & 1:
                row |= 1 << j
        rows.append(row)
    return Rel(f.dom, tuple(rows))


def pushforward(f: FnTable, p: Rel) -> Rel:
    """Direct image: the least equivalence the outputs are forced into.

    Equivalence closure over the codomain of the image pairs of p; the
    least Q (most revealing) with f carrying p to Q.
    """
    _require_equivalence(p, "precondition")
    _require_on(p, f.dom, "precondition")
    image_pairs = rel_from_pairs(
        f.cod,
        ((f.cod.elements[f.images[i]], f.cod.elements[f.images[j]])
         for i, row in enumerate(p.rows) for j in bits(row)))
    return close(union(image_pairs, identity_rel(f.cod)), "equivalence")


def find_postprocessor(f: FnTable, g: FnTable) -> FnTable | None:
    """A table p with f = p after g, when g reveals at least as much.

    Exists exactly when kernel(f) is below kernel(g).  The returned
    table is built in the unordered setting and is deliberately not
    monotonicity-checked; unconstrained values go to the first codomain
    element.
    """
    if f.dom != g.dom:
        raise ValidationError("tables must share a domain")
    if not loi_leq(kernel(f), kernel(g)):
        return None
    images = []
    for j in range(len(g.cod.elements)):
        pre = next((i for i, v in enumerate(g.images) if v == j), None)
        images.append(0 if pre is None else f.images[pre])
    return FnTable(g.cod, f.cod, tuple(images))
