"""Subgroup lattices and structural invariants of small permutation groups."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Iterator

from grouptk.errors import GuardExceeded, InternalConsistencyError, NotAPGroup
from grouptk.perm import PermGroup, quotient_group
from grouptk.table import GroupTable, Mask, bits, prime_factors, prime_power


def table_of(G: PermGroup) -> GroupTable:
    t = G._cache.get("table")
    if t is None:
        t = G._cache["table"] = GroupTable(G)
    return t


@dataclass
class SubgroupRecord:
    mask: Mask
    order: int
    generators: tuple[int, ...]
    min_generators: int
    is_normal: bool = False
    is_abelian: bool = False
    is_elementary_abelian: bool = False
    nilpotency_class: int | None = None
    is_solvable: bool = False

    @property
    def is_nilpotent(self) -> bool:
        return self.nilpotency_class is not None


class SubgroupSet:
    """Every subgroup of a group, found by joining cyclic subgroups level by level.

    Level k holds the subgroups first reached as a join of k cyclic
    subgroups, so the level of a subgroup is its minimal number of generators.
    """

    def __init__(self, G: PermGroup):
        guards = G.guards
        if G.order() > guards.max_lattice_order:
            raise GuardExceeded(
                f"order {G.order()} exceeds subgroup-enumeration guard {guards.max_lattice_order}"
            )
        self.parent = G
        self.table = t = table_of(G)

        cyclic: dict[Mask, int] = {}
        for x in range(t.n):
            m = t.closure([x])
            cyclic.setdefault(m, x)
        self.cyclic = sorted(cyclic.items(), key=lambda kv: (kv[0].bit_count(), kv[1]))

        found: dict[Mask, tuple[tuple[int, ...], int]] = {1: ((), 0)}
        frontier: list[Mask] = [1]
        level = 0
        while frontier:
            nxt = []
            for S in frontier:
                gens = found[S][0]
                elems = t.members(S)
                for _, c in self.cyclic:
                    if (S >> c) & 1:
                        continue
                    J, _ = t.join_element(S, elems, c)
                    if J not in found:
                        found[J] = (gens + (c,), level + 1)
                        nxt.append(J)
                        if len(found) > guards.max_subgroups:
                            raise GuardExceeded(f"more than {guards.max_subgroups} subgroups")
            frontier = nxt
            level += 1

        full_gens = t.gen_indices
        records = []
        for mask, (gens, lvl) in found.items():
            g = list(gens)
            rec = SubgroupRecord(mask=mask, order=mask.bit_count(), generators=gens, min_generators=lvl)
            rec.is_normal = t.is_normal(mask, t.full, g, full_gens)
            rec.is_abelian = t.is_abelian(mask, g)
            rec.is_elementary_abelian = t.is_elementary_abelian(mask)
            rec.nilpotency_class = t.nilpotency_class(mask)
            rec.is_solvable = rec.is_nilpotent or t.is_solvable(mask)
            records.append(rec)
        records.sort(key=lambda r: (r.order, r.min_generators, r.mask))
        self.records = records
        self.by_mask = {r.mask: r for r in records}

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[SubgroupRecord]:
        return iter(self.records)

    def __getitem__(self, mask: Mask) -> SubgroupRecord:
        return self.by_mask[mask]

    def perm_group(self, rec: SubgroupRecord | Mask, name: str | None = None) -> PermGroup:
        if not isinstance(rec, SubgroupRecord):
            rec = self.by_mask[rec]
        return self.table.to_perm_group(rec.mask, name=name, gens=list(rec.generators))

    def contained_in(self, mask: Mask) -> list[SubgroupRecord]:
        return [r for r in self.records if r.mask & mask == r.mask]

    def maximal_subgroups(self) -> list[SubgroupRecord]:
        cached = getattr(self, "_maximal", None)
        if cached is not None:
            return cached
        full = self.table.full
        proper = [r for r in self.records if r.mask != full]
        out = []
        for i, r in enumerate(proper):
            if not any(k.order > r.order and k.mask & r.mask == r.mask for k in proper[i + 1:]):
                out.append(r)
        self._maximal = out
        return out


def all_subgroups(G: PermGroup) -> SubgroupSet:
    lat = G._cache.get("lattice")
    if lat is None:
        lat = G._cache["lattice"] = SubgroupSet(G)
    return lat


def _as_group(G: PermGroup, mask: Mask, name: str | None = None) -> PermGroup:
    return table_of(G).to_perm_group(mask, name=name)


def center(G: PermGroup) -> PermGroup:
    t = table_of(G)
    return _as_group(G, t.center(t.full), "Z(G)")


def derived_subgroup(G: PermGroup) -> PermGroup:
    t = table_of(G)
    return _as_group(G, t.derived(t.full), "G'")


def lower_central_series(G: PermGroup) -> list[PermGroup]:
    t = table_of(G)
    return [_as_group(G, m) for m in t.lower_central_series(t.full)]


def derived_series(G: PermGroup) -> list[PermGroup]:
    t = table_of(G)
    return [_as_group(G, m) for m in t.derived_series(t.full)]


def is_nilpotent(G: PermGroup) -> bool:
    t = table_of(G)
    return t.is_nilpotent(t.full)


def nilpotency_class(G: PermGroup) -> int | None:
    t = table_of(G)
    return t.nilpotency_class(t.full)


def is_solvable(G: PermGroup) -> bool:
    t = table_of(G)
    return t.is_solvable(t.full)


def fitting_subgroup(G: PermGroup) -> PermGroup:
    """Product of the p-cores O_p(G)."""
    t = table_of(G)
    return _as_group(G, t.fitting(), "F(G)")


def sylow_subgroup(G: PermGroup, p: int) -> PermGroup:
    t = table_of(G)
    return _as_group(G, t.sylow(p), f"Syl_{p}")


def frattini_mask(G: PermGroup) -> Mask:
    lat = all_subgroups(G)
    t = lat.table
    out = t.full
    for r in lat.maximal_subgroups():
        out &= r.mask
    if not t.is_nilpotent(out):
        raise InternalConsistencyError("Frattini subgroup is not nilpotent")
    return out


def frattini_subgroup(G: PermGroup) -> PermGroup:
    """Intersection of all maximal subgroups (checked to be nilpotent)."""
    return _as_group(G, frattini_mask(G), "Phi(G)")


def min_generators(G: PermGroup) -> int:
    """Smallest size of a generating set; 0 for the trivial group.

    p-groups use the Burnside basis theorem, d(P) = dim P/Φ(P); other groups
    read the level of G in the cyclic-join lattice.
    """
    if G.order() == 1:
        return 0
    t = table_of(G)
    pp = prime_power(G.order())
    if pp is not None:
        p = pp[0]
        return round(math.log(G.order() // t.frattini_p_group(t.full, p).bit_count(), p))
    return all_subgroups(G)[t.full].min_generators


def rank(G: PermGroup) -> int:
    """Smallest r such that every subgroup is r-generated."""
    return max(r.min_generators for r in all_subgroups(G))


def is_special_p_group(P: PermGroup) -> tuple[bool, dict]:
    """Special p-group test using the lattice Frattini subgroup.

    Returns (flag, witness) where the witness names the branch and the orders
    of Φ(P), Z(P) and P'.
    """
    n = P.order()
    pp = prime_power(n)
    if n != 1 and pp is None:
        raise NotAPGroup(f"order {n} is not a prime power")
    t = table_of(P)
    if t.is_elementary_abelian(t.full):
        return True, {"branch": "elementary_abelian", "p": pp[0] if pp else None, "order": n}
    phi = frattini_mask(P)
    z = t.center(t.full)
    d = t.derived(t.full)
    wit = {
        "p": pp[0],
        "order": n,
        "frattini_order": phi.bit_count(),
        "center_order": z.bit_count(),
        "derived_order": d.bit_count(),
    }
    if phi == z == d and t.is_elementary_abelian(d):
        wit["branch"] = "phi=z=derived"
        return True, wit
    wit["branch"] = "none"
    return False, wit


def chermak_delgado_mask(G: PermGroup) -> tuple[Mask, int]:
    """Least member of the Chermak-Delgado lattice and the maximal measure."""
    lat = all_subgroups(G)
    t = lat.table
    measures = []
    for r in lat:
        c = t.centralizer(r.mask, gens=list(r.generators))
        measures.append(r.order * c.bit_count())
    best = max(measures)
    out = t.full
    for r, m in zip(lat, measures):
        if m == best:
            out &= r.mask
    if out not in lat.by_mask:
        raise InternalConsistencyError("Chermak-Delgado members not closed under intersection")
    return out, best


def chermak_delgado_subgroup(G: PermGroup) -> PermGroup:
    """Abelian normal N ⊇ Z(G) with |G:N| <= |G:A|^2 for every abelian A.

    The postconditions are checked exhaustively before returning.
    """
    N, _ = chermak_delgado_mask(G)
    violations = chermak_delgado_violations(G, N)
    if violations:
        raise InternalConsistencyError(f"Chermak-Delgado postconditions failed: {violations}")
    return _as_group(G, N, "CD(G)")


def chermak_delgado_violations(G: PermGroup, N: Mask) -> list[str]:
    lat = all_subgroups(G)
    t = lat.table
    out = []
    if not t.is_abelian(N):
        out.append("not abelian")
    if not t.is_normal(N, t.full):
        out.append("not normal")
    z = t.center(t.full)
    if z & N != z:
        out.append("does not contain Z(G)")
    n, idx = G.order(), G.order() // N.bit_count()
    for r in lat:
        if r.is_abelian and idx > (n // r.order) ** 2:
            out.append(f"|G:N|={idx} > |G:A|^2 for abelian A of order {r.order}")
            break
    return out


def min_abelian_normal_index(G: PermGroup, within: Mask | None = None) -> tuple[int, Mask]:
    """Smallest index of an abelian normal subgroup of ``within`` (default G)."""
    lat = all_subgroups(G)
    t = lat.table
    H = t.full if within is None else within
    h_gens = t.generators_of(H)
    best = None
    for r in lat:
        if r.mask & H != r.mask or not r.is_abelian:
            continue
        idx = H.bit_count() // r.order
        if best is not None and idx >= best[0]:
            continue
        if t.is_normal(r.mask, H, list(r.generators), h_gens):
            best = (idx, r.mask)
    return best


# -- classical p-group oracles ---------------------------------------------------


def _max_abelian_normal(G: PermGroup) -> int:
    return max(r.order for r in all_subgroups(G) if r.is_abelian and r.is_normal)


def burnside_miller_check(P: PermGroup) -> dict:
    """Burnside-Miller bounds on a p-group, direct and quotient form.

    Direct: with b the largest order of an abelian normal subgroup and
    beta = log_p b, |P| <= p^(beta(beta+1)/2), and hence also the weaker
    |P| <= b p^(beta(beta+1)/2).  Quotient: with A an abelian
    normal subgroup of maximal order, the same bound for P/A, and
    p^(beta(beta+1)/2) <= b^(log2 b).
    """
    n = P.order()
    pp = prime_power(n)
    if n == 1:
        return {"ok": True, "order": 1}
    if pp is None:
        raise NotAPGroup(f"order {n} is not a prime power")
    p = pp[0]
    lat = all_subgroups(P)
    b = _max_abelian_normal(P)
    beta = round(math.log(b, p))
    direct = n <= p ** (beta * (beta + 1) // 2)
    weak = n <= b * p ** (beta * (beta + 1) // 2)
    A = next(r for r in reversed(lat.records) if r.is_abelian and r.is_normal and r.order == b)
    Q = quotient_group(P, lat.perm_group(A))
    qb = _max_abelian_normal(Q) if Q.order() > 1 else 1
    qbeta = round(math.log(qb, p)) if qb > 1 else 0
    q_bound = p ** (qbeta * (qbeta + 1) // 2)
    quotient_ok = Q.order() <= q_bound
    log_ok = q_bound <= qb ** math.ceil(math.log2(qb)) if qb > 1 else q_bound == 1
    return {
        "ok": direct and weak and quotient_ok and log_ok,
        "order": n,
        "p": p,
        "max_abelian_normal": b,
        "direct_bound": p ** (beta * (beta + 1) // 2),
        "quotient_order": Q.order(),
        "quotient_max_abelian_normal": qb,
        "quotient_bound": q_bound,
    }


def is_metabelian(G: PermGroup) -> bool:
    t = table_of(G)
    return t.is_abelian(t.derived(t.full))


def gillam_check(P: PermGroup) -> dict:
    """A metabelian group has an abelian normal subgroup of the maximal abelian order."""
    lat = all_subgroups(P)
    max_abelian = max(r.order for r in lat if r.is_abelian)
    max_normal = max(r.order for r in lat if r.is_abelian and r.is_normal)
    return {
        "ok": max_abelian == max_normal,
        "metabelian": is_metabelian(P),
        "max_abelian": max_abelian,
        "max_abelian_normal": max_normal,
    }


# -- report --------------------------------------------------------------------------


@dataclass
class StructureReport:
    order: int
    center_order: int
    derived_length: int | None
    nilpotency_class: int | None
    fitting_order: int
    frattini_order: int
    socle_center_order: int | None
    rank: int
    min_generators: int
    solvable: bool
    primes: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def structure_report(G: PermGroup) -> StructureReport:
    t = table_of(G)
    full = t.full
    ds = t.derived_series(full)
    solvable = ds[-1] == 1
    z = t.center(full)
    socle = None
    pp = prime_power(G.order())
    if pp is not None:
        p = pp[0]
        socle = sum(1 for x in bits(z) if t.power(x, p) == 0)
    elif G.order() == 1:
        socle = 1
    return StructureReport(
        order=G.order(),
        center_order=z.bit_count(),
        derived_length=len(ds) - 1 if solvable else None,
        nilpotency_class=t.nilpotency_class(full),
        fitting_order=t.fitting().bit_count(),
        frattini_order=frattini_mask(G).bit_count(),
        socle_center_order=socle,
        rank=rank(G),
        min_generators=min_generators(G),
        solvable=solvable,
        primes=prime_factors(G.order()),
    )
