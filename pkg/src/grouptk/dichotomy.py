"""Verifiers for the nilpotent-or-special-by-cyclic dichotomy and its relatives.

Everything here is an exhaustive scan over the subgroup lattice of a small
group.  Reports carry witnesses that can be re-checked independently.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from grouptk import fp
from grouptk.errors import CoprimalityViolation, FormatError, InternalConsistencyError
from grouptk.perm import PermGroup, quotient_group
from grouptk.structure import (
    SubgroupSet,
    all_subgroups,
    min_abelian_normal_index,
    rank,
    sylow_subgroup,
)
from grouptk.table import GroupTable, Mask, bits, prime_factors, prime_power


def _pk(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _p_elements(t: GroupTable, within: Mask, normal: Mask, pa: int) -> Mask:
    """Elements h of ``within`` with h^pa in ``normal``."""
    out = 0
    for h in bits(within):
        if (normal >> t.power(h, pa)) & 1:
            out |= 1 << h
    return out


# -- affine cyclic sections ----------------------------------------------------------


@dataclass
class AffineCyclicSection:
    """A section H/N isomorphic to E ⋊ C with E elementary abelian, C cyclic, faithful."""

    table: GroupTable = field(repr=False)
    host: Mask
    kernel: Mask
    sylow: Mask  # preimage of E in H
    complement_generator: int
    p: int
    q: int | None
    e_order: int
    c_order: int
    faithful: bool = True

    def host_group(self) -> PermGroup:
        return self.table.to_perm_group(self.host)

    def kernel_group(self) -> PermGroup:
        return self.table.to_perm_group(self.kernel)

    def to_dict(self) -> dict:
        t = self.table
        return {
            "host_order": self.host.bit_count(),
            "kernel_order": self.kernel.bit_count(),
            "host_generators": [t.perm(g).to_cycles() for g in t.generators_of(self.host)],
            "kernel_generators": [t.perm(g).to_cycles() for g in t.generators_of(self.kernel)],
            "p": self.p,
            "q": self.q,
            "E_order": self.e_order,
            "C_order": self.c_order,
            "complement_generator": t.perm(self.complement_generator).to_cycles(),
            "faithful": self.faithful,
        }

    def reverify(self) -> list[str]:
        """Independent re-check of the defining properties; returns problems found."""
        t = self.table
        H, N, K, c = self.host, self.kernel, self.sylow, self.complement_generator
        out = []
        if N & H != N or not t.is_normal(N, H):
            out.append("kernel not normal in host")
        if not t.is_normal(K, H):
            out.append("E not normal")
        if K.bit_count() != N.bit_count() * self.e_order:
            out.append("|E| mismatch")
        for x in t.generators_of(K):
            if not (N >> t.power(x, self.p)) & 1:
                out.append("E has exponent > p")
            for y in t.generators_of(K):
                if not (N >> t.comm(x, y)) & 1:
                    out.append("E not abelian")
        if self.c_order > 1:
            if t.quotient_order(c, N, self.c_order) != self.c_order:
                out.append("complement order mismatch")
            if math.gcd(self.e_order, self.c_order) != 1:
                out.append("|E| and |C| not coprime")
            if H.bit_count() != N.bit_count() * self.e_order * self.c_order:
                out.append("|H/N| != |E||C|")
            z = t.power(c, self.c_order // self.q)
            if all((N >> t.comm(z, k)) & 1 for k in t.generators_of(K)):
                out.append("C does not act faithfully on E")
        return out


def _classify_section(lat: SubgroupSet, H: Mask, N: Mask, min_c: int) -> AffineCyclicSection | None:
    t = lat.table
    q_order = H.bit_count() // N.bit_count()
    primes = prime_factors(q_order)
    if len(primes) == 1 or q_order == 1:
        if min_c > 1:
            return None
        p = primes[0] if primes else 1
        if q_order > 1:
            gens = t.generators_of(H)
            if not all((N >> t.power(x, p)) & 1 for x in gens):
                return None
            if not all((N >> t.comm(x, y)) & 1 for x in gens for y in gens):
                return None
        return AffineCyclicSection(t, H, N, H, 0, p, None, q_order, 1)
    if len(primes) != 2:
        return None
    for p, q in (primes, primes[::-1]):
        pa = q_order // (q ** _pk(q_order, q))
        qt = q_order // pa
        if qt < min_c:
            continue
        K = _p_elements(t, H, N, pa)
        if K.bit_count() != N.bit_count() * pa:
            continue  # Sylow p of H/N is not normal
        kg = t.generators_of(K)
        if not all((N >> t.power(x, p)) & 1 for x in kg):
            continue
        if not all((N >> t.comm(x, y)) & 1 for x in kg for y in kg):
            continue
        c = None
        for h in bits(H & ~K):
            if t.quotient_order(h, N, qt) == qt:
                c = h
                break
        if c is None:
            # H/K cyclic would force a complement (Schur-Zassenhaus)
            if any(t.quotient_order(h, K, qt) == qt for h in bits(H)):
                raise InternalConsistencyError("H/E is cyclic but no complement of order |C| found")
            continue
        z = t.power(c, qt // q)
        faithful = any(not (N >> t.comm(z, k)) & 1 for k in kg)
        if not faithful:
            continue
        return AffineCyclicSection(t, H, N, K, c, p, q, pa, qt, True)
    return None


def affine_cyclic_sections(G: PermGroup, min_C: int = 2) -> list[AffineCyclicSection]:
    """All sections H/N of affine cyclic type with |C| >= min_C.

    An empty list certifies that none exist.  For min_C >= 2 nilpotent hosts are
    skipped: a quotient of a nilpotent group is nilpotent, and a nilpotent
    E ⋊ C with coprime orders has C acting trivially.
    """
    lat = all_subgroups(G)
    t = lat.table
    out = []
    for Hr in lat:
        if min_C > 1 and (Hr.is_nilpotent or len(prime_factors(Hr.order)) < 2):
            continue
        H = Hr.mask
        hg = list(Hr.generators)
        for Nr in lat:
            if Nr.order > Hr.order or Hr.order % Nr.order or Nr.mask & H != Nr.mask:
                continue
            if not t.is_normal(Nr.mask, H, list(Nr.generators), hg):
                continue
            sec = _classify_section(lat, H, Nr.mask, min_C)
            if sec is not None:
                out.append(sec)
    return out


def max_section_c(G: PermGroup) -> tuple[int, AffineCyclicSection | None]:
    cached = G._cache.get("max_section_c")
    if cached is None:
        secs = affine_cyclic_sections(G, 2)
        best = max(secs, key=lambda s: s.c_order, default=None)
        cached = G._cache["max_section_c"] = ((best.c_order if best else 1), best)
    return cached


# -- special-by-cyclic subgroups --------------------------------------------------------


@dataclass
class SpecialByCyclicWitness:
    """A subgroup S = P ⋊ C, P a special p-group, C a cyclic q-group."""

    table: GroupTable = field(repr=False)
    subgroup: Mask
    p_part: Mask
    complement_generator: int
    p: int
    q: int
    p_order: int
    c_order: int
    aut_image_order: int
    special_branch: str

    def groups(self) -> tuple[PermGroup, PermGroup, PermGroup]:
        t = self.table
        return (t.to_perm_group(self.subgroup), t.to_perm_group(self.p_part),
                t.to_perm_group(t.closure([self.complement_generator])))

    def to_dict(self) -> dict:
        t = self.table
        return {
            "subgroup_order": self.subgroup.bit_count(),
            "subgroup_generators": [t.perm(g).to_cycles() for g in t.generators_of(self.subgroup)],
            "P_order": self.p_order,
            "P_generators": [t.perm(g).to_cycles() for g in t.generators_of(self.p_part)],
            "C_generator": t.perm(self.complement_generator).to_cycles(),
            "p": self.p,
            "q": self.q,
            "C_order": self.c_order,
            "aut_image_order": self.aut_image_order,
            "special_branch": self.special_branch,
        }

    def reverify(self) -> list[str]:
        """Re-check through quotient groups and Sylow subgroups of S as a PermGroup."""
        from grouptk.structure import is_special_p_group

        out = []
        S, P, C = self.groups()
        syl = sylow_subgroup(S, self.p)
        if syl.order() != self.p_order:
            out.append("P is not a Sylow subgroup of S")
        try:
            Q = quotient_group(S, P)
        except Exception as exc:  # NotNormal
            return out + [f"P not normal in S: {exc}"]
        pq = prime_power(Q.order())
        if Q.order() > 1 and (pq is None or pq[0] != self.q):
            out.append("S/P is not a q-group")
        if not any(g.order() == Q.order() for g in Q.elements()):
            out.append("S/P is not cyclic")
        if not is_special_p_group(P)[0]:
            out.append("P is not special")
        c = C.generators[0] if C.generators else S.identity()
        ci = c.inverse()
        k = 1
        while not all(ci**k * x * c**k == x for x in P.generators):
            k *= self.q
        if k != self.aut_image_order:
            out.append(f"aut image order {k} != reported {self.aut_image_order}")
        return out


def _special_witnesses(G: PermGroup, elementary_only: bool = False) -> list[SpecialByCyclicWitness]:
    key = "special_witnesses_eab" if elementary_only else "special_witnesses"
    if key in G._cache:
        return G._cache[key]
    lat = all_subgroups(G)
    t = lat.table
    out = []
    for Sr in lat:
        primes = prime_factors(Sr.order)
        if len(primes) != 2:
            continue
        S = Sr.mask
        for p, q in (primes, primes[::-1]):
            pa = p ** _pk(Sr.order, p)
            qb = Sr.order // pa
            P = _p_elements(t, S, 1, pa)
            if P.bit_count() != pa:
                continue
            c = next((h for h in bits(S) if t.element_orders[h] == qb), None)
            if c is None:
                continue
            if elementary_only:
                ok, branch = t.is_elementary_abelian(P), "elementary_abelian"
            else:
                ok, branch = t.is_special_p_group(P)
            if not ok:
                continue
            pg = t.generators_of(P)
            image, z = 1, c
            while not all(t.comm(z, x) == 0 for x in pg):
                image *= q
                z = t.power(c, image)
            out.append(SpecialByCyclicWitness(t, S, P, c, p, q, pa, qb, image, branch))
    out.sort(key=lambda w: (-w.aut_image_order, -w.p_order, -w.subgroup.bit_count()))
    G._cache[key] = out
    return out


def special_by_cyclic_witness(G: PermGroup, T: int) -> SpecialByCyclicWitness | None:
    """Best S = P ⋊ C <= G with image of C in Aut(P) of order >= T, or None.

    Preference: largest image, then largest P, then largest S.
    """
    for w in _special_witnesses(G):
        if w.aut_image_order >= T:
            return w
    return None


def max_special_image(G: PermGroup) -> int:
    ws = _special_witnesses(G)
    return ws[0].aut_image_order if ws else 1


# -- nilpotent normal subgroups ---------------------------------------------------------------


def min_index_nilpotent_normal(G: PermGroup) -> int:
    """Minimum of |G:N| over nilpotent normal N, by brute force over the lattice."""
    lat = all_subgroups(G)
    return min(G.order() // r.order for r in lat if r.is_normal and r.is_nilpotent)


@dataclass
class DichotomyReport:
    group: str
    order: int
    T: int
    rank: int
    nilpotent_index: int
    max_section_C: int
    max_special_image: int
    branch_a: bool
    branch_b: bool
    best_special_witness: dict | None
    section_witness: dict | None
    checks: dict[str, bool]
    flags: list[str]

    @property
    def branch_satisfied(self) -> str:
        if self.branch_a and self.branch_b:
            return "both"
        if self.branch_a:
            return "a"
        if self.branch_b:
            return "b"
        return "none"

    @property
    def consistent(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "T": self.T,
            "rank": self.rank,
            "nilpotent_index": self.nilpotent_index,
            "max_section_C": self.max_section_C,
            "max_special_image": self.max_special_image,
            "branch_satisfied": self.branch_satisfied,
            "branch_a": self.branch_a,
            "branch_b": self.branch_b,
            "best_special_witness": self.best_special_witness,
            "section_witness": self.section_witness,
            "checks": self.checks,
            "flags": self.flags,
            "consistent": self.consistent,
        }


def verify_reduction_theorem(G: PermGroup, T: int) -> DichotomyReport:
    """Evaluate both branches of the dichotomy on G.

    Branch (a) is certified when G has no affine-cyclic section with |C| > T
    (the hypothesis under which a nilpotent normal subgroup of bounded index
    exists); its witness is F(G) and the report records |G:F(G)|.  Branch (b)
    needs a special-by-cyclic subgroup whose cyclic part induces automorphisms
    of order >= T.
    """
    from grouptk.structure import table_of

    t = table_of(G)
    lat = all_subgroups(G)
    r = rank(G)
    fit_index = G.order() // t.fitting().bit_count()
    brute_index = min_index_nilpotent_normal(G)
    sec_c, sec = max_section_c(G)
    image = max_special_image(G)
    wit = special_by_cyclic_witness(G, T)
    branch_a = sec_c <= T
    branch_b = wit is not None

    checks = {
        "fitting_index_matches_brute_force": fit_index == brute_index,
        "section_C_at_most_nilpotent_index": sec_c <= fit_index,
        "special_image_at_most_nilpotent_index": image <= fit_index,
        # a large section forces a special-by-cyclic subgroup of at least that image, and back
        "section_C_equals_special_image": sec_c == image,
        "some_branch_holds": branch_a or branch_b,
    }
    flags = []
    if wit is not None:
        problems = wit.reverify()
        checks["witness_reverified"] = not problems
        flags.extend(problems)
        if wit.p_order > wit.p ** (2 * r):
            flags.append(f"|P|={wit.p_order} exceeds p^(2r)={wit.p ** (2 * r)}")
    if sec is not None:
        problems = sec.reverify()
        checks["section_reverified"] = not problems
        flags.extend(problems)
    return DichotomyReport(
        group=G.name or "G",
        order=G.order(),
        T=T,
        rank=r,
        nilpotent_index=fit_index,
        max_section_C=sec_c,
        max_special_image=image,
        branch_a=branch_a,
        branch_b=branch_b,
        best_special_witness=wit.to_dict() if wit else None,
        section_witness=sec.to_dict() if sec else None,
        checks=checks,
        flags=flags,
    )


# -- abelian / affine / abelian-by-cyclic trichotomy ------------------------------------------------


def _abelian_by_cyclic_p_subgroups(G: PermGroup) -> list[tuple[Mask, int]]:
    """Non-abelian abelian-by-cyclic p-subgroups with their min abelian normal index."""
    lat = all_subgroups(G)
    t = lat.table
    out = []
    for Pr in lat:
        if Pr.is_abelian or prime_power(Pr.order) is None:
            continue
        P = Pr.mask
        pg = list(Pr.generators)
        inside = [r for r in lat if r.is_abelian and r.mask & P == r.mask and r.order < Pr.order]
        normal = [r for r in inside if t.is_normal(r.mask, P, list(r.generators), pg)]
        if not normal:
            continue
        is_abc = any(
            any(t.quotient_order(h, A.mask, Pr.order // A.order) == Pr.order // A.order for h in bits(P))
            for A in normal
        )
        if is_abc:
            out.append((P, Pr.order // max(A.order for A in normal)))
    return out


@dataclass
class TrichotomyReport:
    group: str
    order: int
    T: int
    rank: int
    min_abelian_normal_index: int
    branch_a: bool
    branch_b: bool
    branch_c: bool
    witnesses: dict
    checks: dict[str, bool]

    @property
    def satisfied(self) -> list[str]:
        return [k for k, v in (("a", self.branch_a), ("b", self.branch_b), ("c", self.branch_c)) if v]

    @property
    def consistent(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "T": self.T,
            "rank": self.rank,
            "min_abelian_normal_index": self.min_abelian_normal_index,
            "branches_satisfied": self.satisfied,
            "witnesses": self.witnesses,
            "checks": self.checks,
            "consistent": self.consistent,
        }


def _log2_ceil(x: int) -> int:
    return 0 if x <= 1 else math.ceil(math.log2(x))


def verify_jordan_trichotomy(G: PermGroup, T: int) -> TrichotomyReport:
    """Evaluate the abelian / affine-cyclic / abelian-by-cyclic trichotomy.

    (a) reports the smallest abelian normal index; it is marked satisfied
        when that index is <= T, or when (b) and (c) both fail, in which case
        the bounded-index conclusion is backed by the intermediate bounds below.
    (b) E ⋊ C with E elementary abelian and C of image order >= T in Aut(E).
    (c) an abelian-by-cyclic p-subgroup with no abelian normal subgroup of index <= T.

    When (b) and (c) fail, the report checks: every p-subgroup is abelian for
    p > T, elementary abelian P admit images below T while other special P
    satisfy image <= |P| <= T^(2r), and each
    Sylow subgroup of F(G) has an abelian normal subgroup of index at most
    T^(16 r^2 ceil(log2 T)).
    """
    from grouptk.structure import table_of

    lat = all_subgroups(G)
    t = table_of(G)
    r = rank(G)
    idx, A = min_abelian_normal_index(G)
    eab = _special_witnesses(G, elementary_only=True)
    b_wit = next((w for w in eab if w.aut_image_order >= T and w.c_order > 1), None)
    abc = _abelian_by_cyclic_p_subgroups(G)
    c_list = [(P, i) for P, i in abc if i > T]
    c_wit = max(c_list, key=lambda pi: (pi[1], pi[0].bit_count()), default=None)
    branch_b = b_wit is not None
    branch_c = c_wit is not None
    branch_a = idx <= T or not (branch_b or branch_c)

    witnesses: dict = {
        "a": {"index": idx, "generators": [t.perm(g).to_cycles() for g in t.generators_of(A)]},
        "b": b_wit.to_dict() if b_wit else None,
        "c": ({"P_order": c_wit[0].bit_count(), "min_abelian_normal_index": c_wit[1],
               "generators": [t.perm(g).to_cycles() for g in t.generators_of(c_wit[0])]}
              if c_wit else None),
    }
    checks = {"some_branch_holds": branch_a or branch_b or branch_c}
    if b_wit is not None:
        checks["b_witness_reverified"] = not b_wit.reverify()
    if c_wit is not None:
        P, i = c_wit
        sub = all_subgroups(G)
        recomputed = min(
            (P.bit_count() // rr.order for rr in sub
             if rr.is_abelian and rr.mask & P == rr.mask and t.is_normal(rr.mask, P)),
        )
        checks["c_witness_reverified"] = recomputed == i and i > T
    if not (branch_b or branch_c):
        big_p_abelian = all(
            rr.is_abelian for rr in lat
            if (pp := prime_power(rr.order)) is not None and pp[0] > T
        )
        checks["p_subgroups_abelian_for_p_gt_T"] = big_p_abelian
        checks["special_images_bounded"] = all(
            w.aut_image_order < T if w.special_branch == "elementary_abelian"
            else w.aut_image_order <= w.p_order <= T ** (2 * r)
            for w in _special_witnesses(G)
        )
        bound = T ** (16 * r * r * _log2_ceil(T))
        fit = t.fitting()
        ok = True
        for p in prime_factors(G.order()):
            syl = t.p_core(p)
            if syl & fit != syl or syl == 1:
                continue
            i, _ = min_abelian_normal_index(G, within=syl)
            ok = ok and i <= bound
        checks["fitting_sylows_abelian_by_bounded"] = ok
    return TrichotomyReport(
        group=G.name or "G",
        order=G.order(),
        T=T,
        rank=r,
        min_abelian_normal_index=idx,
        branch_a=branch_a,
        branch_b=branch_b,
        branch_c=branch_c,
        witnesses=witnesses,
        checks=checks,
    )


# -- Maschke decomposition over F_p ---------------------------------------------------------


@dataclass
class FpHModule:
    """F_p^r with an action of a p'-group H given by generator matrices.

    ``relations`` names the presentation to check: "cyclic" (one generator g
    with g^h = 1), "klein" (two commuting involutions, h = 4) or "none" (only
    that the generated matrix group has order dividing h).
    """

    p: int
    generators: list[np.ndarray]
    group_order: int
    relations: str = "none"

    def __post_init__(self):
        self.generators = [fp.as_fp(g, self.p) for g in self.generators]
        if not self.generators:
            raise FormatError("need at least one generator matrix")
        r = self.generators[0].shape[0]
        for g in self.generators:
            if g.shape != (r, r):
                raise FormatError("generator matrices must be square of equal size")
        if self.group_order % self.p == 0:
            raise CoprimalityViolation(f"p={self.p} divides |H|={self.group_order}")
        for g in self.generators:
            if not fp.is_invertible(g, self.p):
                raise FormatError("generator matrix not invertible mod p")
        eye = np.eye(r, dtype=np.int64)
        if self.relations == "cyclic":
            if len(self.generators) != 1 or not (fp.matpow(self.generators[0], self.group_order, self.p) == eye).all():
                raise FormatError("cyclic relation g^h = 1 fails")
        elif self.relations == "klein":
            a, b = self.generators
            if self.group_order != 4 or not (
                (fp.matmul(a, a, self.p) == eye).all()
                and (fp.matmul(b, b, self.p) == eye).all()
                and (fp.matmul(a, b, self.p) == fp.matmul(b, a, self.p)).all()
            ):
                raise FormatError("Klein four relations fail")
        if self.group_order % len(self.group_elements()):
            raise FormatError("generated matrix group order does not divide |H|")

    @property
    def dimension(self) -> int:
        return self.generators[0].shape[0]

    def group_elements(self) -> list[np.ndarray]:
        cached = getattr(self, "_elements", None)
        if cached is not None:
            return cached
        r = self.dimension
        eye = np.eye(r, dtype=np.int64)
        seen = {eye.tobytes(): eye}
        queue = [eye]
        for x in queue:
            for g in self.generators:
                y = fp.matmul(x, g, self.p)
                key = y.tobytes()
                if key not in seen:
                    if len(seen) >= self.group_order:
                        raise FormatError("generated matrix group larger than |H|")
                    seen[key] = y
                    queue.append(y)
        self._elements = queue
        return queue


@dataclass
class MaschkeDecomposition:
    module: FpHModule
    fixed: np.ndarray  # basis rows of A'
    complement: np.ndarray  # basis rows of A''
    projector: np.ndarray  # averaging projector e (acting on column vectors)

    def verify(self) -> dict[str, bool]:
        M, p = self.module, self.module.p
        r = M.dimension
        both = np.vstack([self.fixed, self.complement]) if r else np.zeros((0, 0), dtype=np.int64)
        e = self.projector
        out = {
            "dimensions_add_up": self.fixed.shape[0] + self.complement.shape[0] == r,
            "direct_sum": fp.rank(both, p) == r if r else True,
            "projector_idempotent": bool((fp.matmul(e, e, p) == e).all()),
            "fixed_is_fixed": all(
                bool((fp.matmul(g, self.fixed.T, p) == self.fixed.T % p).all()) for g in M.generators
            ),
        }
        inv = True
        for g in M.generators:
            img = fp.matmul(g, self.complement.T, p).T
            if self.complement.shape[0] and fp.solve_rows(self.complement, img, p) is None:
                inv = False
        out["complement_invariant"] = inv
        # fixed vectors inside A'': solve sum_i c_i (g - 1) b_i = 0 for all g
        k = self.complement.shape[0]
        if k:
            eye = np.eye(r, dtype=np.int64)
            blocks = [fp.matmul(g - eye, self.complement.T, p) for g in M.generators]
            out["complement_has_no_fixed_vectors"] = fp.nullspace(np.vstack(blocks), p).shape[0] == 0
        else:
            out["complement_has_no_fixed_vectors"] = True
        return out


def maschke_decomposition(M: FpHModule) -> MaschkeDecomposition:
    """A = A' ⊕ A'' with A' the common fixed space and A'' = image of (1 - e)."""
    p, r = M.p, M.dimension
    if M.group_order % p == 0:
        raise CoprimalityViolation(f"p={p} divides |H|")
    eye = np.eye(r, dtype=np.int64)
    fixed = fp.nullspace(np.vstack([g - eye for g in M.generators]), p)
    elems = M.group_elements()
    total = sum(elems) % p
    e = (total * pow(len(elems), -1, p)) % p
    complement = fp.column_basis((eye - e) % p, p)
    return MaschkeDecomposition(M, fixed, complement, e)


def _matrix_order(A: np.ndarray, p: int, cap: int = 10**6) -> int:
    eye = np.eye(A.shape[0], dtype=np.int64)
    X, k = A % p, 1
    while not (X == eye).all():
        X = fp.matmul(X, A, p)
        k += 1
        if k > cap:  # pragma: no cover - |GL(r, p)| bounds element orders
            raise InternalConsistencyError("matrix order exceeds cap")
    return k


def _random_invertible(rng, p: int, r: int) -> np.ndarray:
    while True:
        A = np.array([[rng.randrange(p) for _ in range(r)] for _ in range(r)], dtype=np.int64)
        if fp.is_invertible(A, p):
            return A


def random_fp_module(rng, p: int, r: int, kind: str = "cyclic") -> FpHModule:
    """Random F_p[H]-module of dimension r with p not dividing |H|.

    "cyclic": the p'-part of a random invertible matrix.  "klein": two commuting
    involutions, simultaneously diagonal in a random basis (needs p odd).
    """
    if kind == "cyclic":
        A = _random_invertible(rng, p, r)
        m = _matrix_order(A, p)
        pa = 1
        while m % p == 0:
            m //= p
            pa *= p
        return FpHModule(p, [fp.matpow(A, pa, p)], m, "cyclic")
    if kind == "klein":
        if p == 2:
            raise CoprimalityViolation("Z_2 x Z_2 needs an odd prime")
        S = _random_invertible(rng, p, r)
        Si = fp.inverse(S, p)
        gens = []
        for _ in range(2):
            D = np.diag([rng.choice([1, p - 1]) for _ in range(r)]).astype(np.int64)
            gens.append(fp.matmul(fp.matmul(S, D, p), Si, p))
        return FpHModule(p, gens, 4, "klein")
    raise FormatError(f"unknown module kind {kind!r}")
