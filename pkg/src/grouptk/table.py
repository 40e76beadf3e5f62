"""Multiplication-table view of a small permutation group.

Elements are indexed ``0..n-1`` with the identity at index 0.  Subgroups are
Python ints used as bitmasks over element indices, which makes intersection,
containment and hashing cheap.  Every structural scan in the package runs on
this representation.
"""

from __future__ import annotations

import math
from functools import cached_property
from typing import Iterable, Iterator

from grouptk.errors import GuardExceeded
from grouptk.perm import PermGroup, Permutation, _mul

Mask = int


def bits(mask: Mask) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, k) with n == p**k, k >= 1; None otherwise (including n == 1)."""
    ps = prime_factors(n)
    if len(ps) != 1:
        return None
    p = ps[0]
    return p, round(math.log(n, p))


class GroupTable:
    def __init__(self, G: PermGroup):
        if G.order() > G.guards.max_lattice_order:
            raise GuardExceeded(
                f"order {G.order()} exceeds table guard {G.guards.max_lattice_order}"
            )
        self.group = G
        ident = tuple(range(G.degree))
        gens = [g.images for g in G.generators]
        elems = [ident]
        index = {ident: 0}
        parent = [(-1, -1)]
        right: list[list[int]] = []
        for x in elems:
            row = []
            for k, s in enumerate(gens):
                y = _mul(x, s)
                j = index.get(y)
                if j is None:
                    j = len(elems)
                    index[y] = j
                    elems.append(y)
                    parent.append((index[x], k))
                row.append(j)
            right.append(row)
        n = len(elems)
        # mult[i][j] = e_i * e_j built through the BFS word tree of e_j
        mult = []
        for i in range(n):
            row = [0] * n
            row[0] = i
            for j in range(1, n):
                pj, k = parent[j]
                row[j] = right[row[pj]][k]
            mult.append(row)
        self.n = n
        self.elements = elems
        self.index = index
        self.mult = mult
        self.gen_indices = [index[g] for g in gens]
        self.inv = [row.index(0) for row in mult]
        self.full: Mask = (1 << n) - 1

    # -- element level ---------------------------------------------------------

    def perm(self, i: int) -> Permutation:
        return Permutation(self.elements[i])

    def index_of(self, g: Permutation) -> int:
        return self.index[g.images]

    @cached_property
    def element_orders(self) -> list[int]:
        out = []
        m = self.mult
        for i in range(self.n):
            k, x = 1, i
            while x:
                x = m[x][i]
                k += 1
            out.append(k)
        return out

    def power(self, x: int, k: int) -> int:
        m = self.mult
        result, base = 0, x
        k %= self.element_orders[x]
        while k:
            if k & 1:
                result = m[result][base]
            base = m[base][base]
            k >>= 1
        return result

    def conj(self, x: int, g: int) -> int:
        """g^-1 x g"""
        m = self.mult
        return m[m[self.inv[g]][x]][g]

    def comm(self, x: int, y: int) -> int:
        """x^-1 y^-1 x y"""
        m, inv = self.mult, self.inv
        return m[m[inv[x]][inv[y]]][m[x][y]]

    # -- subgroup level -----------------------------------------------------------

    @staticmethod
    def order(mask: Mask) -> int:
        return mask.bit_count()

    @staticmethod
    def contains(mask: Mask, x: int) -> bool:
        return (mask >> x) & 1 == 1

    def closure(self, gens: Iterable[int]) -> Mask:
        mask = 1
        out = [0]
        for g in gens:
            if not (mask >> g) & 1:
                mask, out = self.join_element(mask, out, g)
        return mask

    def join_element(self, mask: Mask, elems: list[int], x: int) -> tuple[Mask, list[int]]:
        """<S, x> for a subgroup S given as (mask, element list).

        The result is grown one left coset yS at a time, so it stays a union of
        cosets of S and only right multiplication by x needs checking.
        """
        if (mask >> x) & 1:
            return mask, elems
        m = self.mult
        out = list(elems)
        res = mask
        i = 0
        while i < len(out):
            y = m[out[i]][x]
            i += 1
            if not (res >> y) & 1:
                row = m[y]
                for s in elems:
                    z = row[s]
                    res |= 1 << z
                    out.append(z)
        return res, out

    def members(self, mask: Mask) -> list[int]:
        return list(bits(mask))

    def generators_of(self, mask: Mask) -> list[int]:
        """A small (greedy, not minimal) generating set of a subgroup."""
        gens: list[int] = []
        cur, elems = 1, [0]
        for x in bits(mask):
            if not (cur >> x) & 1:
                cur, elems = self.join_element(cur, elems, x)
                gens.append(x)
            if cur == mask:
                break
        return gens

    def to_perm_group(self, mask: Mask, name: str | None = None, gens: list[int] | None = None) -> PermGroup:
        G = self.group
        gens = self.generators_of(mask) if gens is None else gens
        return PermGroup(G.degree, [self.perm(g) for g in gens], name=name, guards=G.guards)

    def mask_of(self, H: PermGroup) -> Mask:
        """Bitmask of a subgroup H (given by generators inside this group)."""
        return self.closure(self.index[g.images] for g in H.generators)

    def is_abelian(self, mask: Mask, gens: list[int] | None = None) -> bool:
        gens = self.generators_of(mask) if gens is None else gens
        m = self.mult
        return all(m[a][b] == m[b][a] for i, a in enumerate(gens) for b in gens[i + 1:])

    def centralizer(self, mask: Mask, within: Mask | None = None, gens: list[int] | None = None) -> Mask:
        gens = self.generators_of(mask) if gens is None else gens
        within = self.full if within is None else within
        m = self.mult
        out = 0
        for x in bits(within):
            row = m[x]
            if all(row[g] == m[g][x] for g in gens):
                out |= 1 << x
        return out

    def center(self, mask: Mask) -> Mask:
        return self.centralizer(mask, within=mask)

    def normalizer(self, mask: Mask, within: Mask | None = None) -> Mask:
        gens = self.generators_of(mask)
        within = self.full if within is None else within
        out = 0
        for x in bits(within):
            if all((mask >> self.conj(g, x)) & 1 for g in gens):
                out |= 1 << x
        return out

    def is_normal(self, sub: Mask, sup: Mask, sub_gens: list[int] | None = None,
                  sup_gens: list[int] | None = None) -> bool:
        sub_gens = self.generators_of(sub) if sub_gens is None else sub_gens
        sup_gens = self.generators_of(sup) if sup_gens is None else sup_gens
        return all((sub >> self.conj(n, g)) & 1 for g in sup_gens for n in sub_gens)

    def normal_closure(self, mask: Mask, within: Mask) -> Mask:
        w_gens = self.generators_of(within)
        elems = self.members(mask)
        queue = list(self.generators_of(mask))
        cur = mask
        while queue:
            x = queue.pop()
            for g in w_gens:
                y = self.conj(x, g)
                if not (cur >> y) & 1:
                    cur, elems = self.join_element(cur, elems, y)
                    queue.append(y)
        return cur

    def commutator(self, a: Mask, b: Mask) -> Mask:
        """[A, B] for subgroups A, B normalizing each other."""
        ga, gb = self.generators_of(a), self.generators_of(b)
        seed = self.closure(self.comm(x, y) for x in ga for y in gb)
        return self.normal_closure(seed, self.closure(ga + gb))

    def derived(self, mask: Mask) -> Mask:
        return self.commutator(mask, mask)

    def lower_central_series(self, mask: Mask) -> list[Mask]:
        series = [mask]
        while True:
            nxt = self.commutator(series[-1], mask)
            if nxt == series[-1]:
                return series
            series.append(nxt)

    def derived_series(self, mask: Mask) -> list[Mask]:
        series = [mask]
        while True:
            nxt = self.derived(series[-1])
            if nxt == series[-1]:
                return series
            series.append(nxt)

    def is_nilpotent(self, mask: Mask) -> bool:
        return self.lower_central_series(mask)[-1] == 1

    def nilpotency_class(self, mask: Mask) -> int | None:
        lcs = self.lower_central_series(mask)
        return len(lcs) - 1 if lcs[-1] == 1 else None

    def is_solvable(self, mask: Mask) -> bool:
        return self.derived_series(mask)[-1] == 1

    def exponent(self, mask: Mask) -> int:
        eo = self.element_orders
        return math.lcm(1, *(eo[x] for x in bits(mask)))

    def is_elementary_abelian(self, mask: Mask) -> bool:
        if mask == 1:
            return True
        pp = prime_power(self.order(mask))
        return pp is not None and self.is_abelian(mask) and self.exponent(mask) == pp[0]

    def sylow(self, p: int, within: Mask | None = None) -> Mask:
        """A Sylow p-subgroup, grown inside successive normalizers."""
        within = self.full if within is None else within
        target = p_part(self.order(within), p)
        eo = self.element_orders
        p_elems = [x for x in bits(within) if prime_power(eo[x]) and prime_power(eo[x])[0] == p]
        P, elems = 1, [0]
        while self.order(P) < target:
            N = self.normalizer(P, within)
            for x in p_elems:
                if (N >> x) & 1 and not (P >> x) & 1:
                    P, elems = self.join_element(P, elems, x)
                    break
            else:  # pragma: no cover - Sylow's theorem
                raise AssertionError("no p-element in N(P) \\ P")
        return P

    def core(self, mask: Mask, within: Mask | None = None) -> Mask:
        """Intersection of all conjugates of a subgroup."""
        within = self.full if within is None else within
        out = mask
        for g in bits(within):
            conj = 0
            for x in bits(mask):
                conj |= 1 << self.conj(x, g)
            out &= conj
        return out

    def p_core(self, p: int, within: Mask | None = None) -> Mask:
        return self.core(self.sylow(p, within), within)

    def fitting(self, within: Mask | None = None) -> Mask:
        within = self.full if within is None else within
        out = 1
        elems = [0]
        for p in prime_factors(self.order(within)):
            for x in bits(self.p_core(p, within)):
                out, elems = self.join_element(out, elems, x)
        return out

    def frattini_p_group(self, mask: Mask, p: int) -> Mask:
        """Φ(P) = P' P^p, valid for p-groups."""
        pw = [self.power(x, p) for x in self.generators_of(mask)]
        der = self.derived(mask)
        res, elems = der, self.members(der)
        for x in pw:
            res, elems = self.join_element(res, elems, x)
        return self.normal_closure(res, mask)

    def is_special_p_group(self, mask: Mask) -> tuple[bool, str]:
        """(flag, branch) where branch is 'elementary_abelian', 'phi=z=derived' or a reason."""
        if mask == 1:
            return True, "elementary_abelian"
        pp = prime_power(self.order(mask))
        if pp is None:
            raise ValueError("not a p-group")
        p = pp[0]
        if self.is_elementary_abelian(mask):
            return True, "elementary_abelian"
        phi = self.frattini_p_group(mask, p)
        z = self.center(mask)
        d = self.derived(mask)
        if not (phi == z == d):
            return False, "phi, center and derived subgroup differ"
        if not self.is_elementary_abelian(d):
            return False, "derived subgroup not elementary abelian"
        return True, "phi=z=derived"

    def quotient_order(self, x: int, normal: Mask, cap: int) -> int | None:
        """Order of xN in H/N, or None when it exceeds cap."""
        m = self.mult
        y, k = x, 1
        while not (normal >> y) & 1:
            y = m[y][x]
            k += 1
            if k > cap:
                return None
        return k
