"""Deliberately naive reference computations, kept independent of GroupTable.

They work on frozensets of image tuples and are only meant for small groups.
"""

from __future__ import annotations

from itertools import combinations

from grouptk.errors import GuardExceeded
from grouptk.perm import PermGroup, _mul


def naive_elements(G: PermGroup, cap: int = 5000) -> frozenset:
    """Closure of the generators under multiplication, by plain BFS."""
    ident = tuple(range(G.degree))
    seen = {ident}
    frontier = [ident]
    gens = [g.images for g in G.generators]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise GuardExceeded(f"naive enumeration capped at {cap}")
        frontier = nxt
    return frozenset(seen)


def _generated(gens: list, ident: tuple) -> frozenset:
    """Subgroup generated by ``gens``: BFS from the identity by right multiplication."""
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def naive_subgroups(G: PermGroup, cap_order: int = 64) -> set[frozenset]:
    """All subgroups, by joining cyclic subgroups one at a time until nothing new appears."""
    if G.order() > cap_order:
        raise GuardExceeded(f"naive subgroup oracle limited to order {cap_order}")
    elems = naive_elements(G)
    ident = tuple(range(G.degree))
    cyclic: dict[frozenset, tuple] = {}
    for g in sorted(elems):
        c = _generated([g], ident)
        cyclic.setdefault(c, g)
    subs: dict[frozenset, list] = {c: [g] for c, g in cyclic.items()}
    layer = dict(subs)
    while layer:
        new: dict[frozenset, list] = {}
        for A, gens in layer.items():
            for C, c in cyclic.items():
                if C <= A:
                    continue
                J = _generated(gens + [c], ident)
                if J not in subs and J not in new:
                    new[J] = gens + [c]
        subs.update(new)
        layer = new
    return set(subs)


def naive_intersections_closed(subs: set[frozenset], pairs: int = 200) -> bool:
    """Spot check that the intersection of two subgroups is again listed."""
    ordered = sorted(subs, key=lambda s: (len(s), sorted(s)))
    for k, (A, B) in enumerate(combinations(ordered, 2)):
        if k >= pairs:
            break
        if (A & B) not in subs:
            return False
    return True
