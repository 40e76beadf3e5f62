"""Permutation groups with a deterministic Schreier-Sims stabilizer chain.

Permutations act on ``{0, ..., degree-1}`` and compose left to right:
``(p * q)(x) == q(p(x))``.  Cycle strings in the external format are
1-based, e.g. ``"(1 2 3)(4 5)"``.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence

from grouptk.config import Guards, default_guards
from grouptk.errors import (
    FormatError,
    GuardExceeded,
    NotAnAutomorphism,
    NotNormal,
    NotSubgroup,
    RangeError,
)

Raw = tuple[int, ...]


def _mul(p: Raw, q: Raw) -> Raw:
    return tuple(map(q.__getitem__, p))


def _inv(p: Raw) -> Raw:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _first_moved(p: Raw) -> int:
    for i, j in enumerate(p):
        if i != j:
            return i
    raise ValueError("identity moves no point")


@dataclass(frozen=True)
class Permutation:
    images: Raw

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise FormatError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Permutation:
        """Parse 1-based cycle notation such as ``"(1 2 3)(4 5)"``."""
        images = list(range(degree))
        s = text.strip()
        if s in ("", "()"):
            return cls(tuple(images))
        if not re.fullmatch(r"(\(\s*\d+(\s*[ ,]\s*\d+)*\s*\)\s*)+", s):
            raise FormatError(f"bad cycle syntax: {text!r}")
        seen: set[int] = set()
        for body in re.findall(r"\(([^)]*)\)", s):
            pts = [int(t) - 1 for t in re.split(r"[\s,]+", body.strip()) if t]
            for x in pts:
                if not 0 <= x < degree:
                    raise FormatError(f"point {x + 1} out of range 1..{degree} in {text!r}")
                if x in seen:
                    raise FormatError(f"point {x + 1} repeated in {text!r}")
                seen.add(x)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(_mul(self.images, other.images))

    def inverse(self) -> Permutation:
        return Permutation(_inv(self.images))

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(self.degree)
        for _ in range(abs(k) % self.order()):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def to_cycles(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self.to_cycles()}, degree={self.degree})"


class _Chain:
    """Base and strong generating set built by deterministic Schreier-Sims."""

    def __init__(self, degree: int, gens: Sequence[Raw]):
        self.degree = degree
        self.ident: Raw = tuple(range(degree))
        self.base: list[int] = []
        self.strong: list[Raw] = []
        for g in gens:
            if g == self.ident:
                continue
            if all(g[b] == b for b in self.base):
                self.base.append(_first_moved(g))
            self.strong.append(g)
        self._trans: list[dict[int, tuple[Raw, Raw]] | None] = [None] * len(self.base)
        self._run()

    def level_gens(self, i: int) -> list[Raw]:
        head = self.base[:i]
        return [s for s in self.strong if all(s[b] == b for b in head)]

    def transversal(self, i: int) -> dict[int, tuple[Raw, Raw]]:
        t = self._trans[i]
        if t is None:
            gens = self.level_gens(i)
            b = self.base[i]
            t = {b: (self.ident, self.ident)}
            queue = [b]
            for gamma in queue:
                u = t[gamma][0]
                for s in gens:
                    delta = s[gamma]
                    if delta not in t:
                        w = _mul(u, s)
                        t[delta] = (w, _inv(w))
                        queue.append(delta)
            self._trans[i] = t
        return t

    def sift(self, g: Raw, start: int = 0) -> tuple[Raw, int]:
        for level in range(start, len(self.base)):
            t = self.transversal(level)
            beta = g[self.base[level]]
            if beta not in t:
                return g, level
            g = _mul(g, t[beta][1])
        return g, len(self.base)

    def _run(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            t = self.transversal(i)
            gens = self.level_gens(i)
            extended = False
            for gamma, (u, _) in list(t.items()):
                for s in gens:
                    sch = _mul(_mul(u, s), t[s[gamma]][1])
                    if sch == self.ident:
                        continue
                    h, j = self.sift(sch, i + 1)
                    if h == self.ident:
                        continue
                    if j == len(self.base):
                        self.base.append(_first_moved(h))
                        self._trans.append(None)
                    self.strong.append(h)
                    for level in range(j + 1):
                        self._trans[level] = None
                    i = j
                    extended = True
                    break
                if extended:
                    break
            if not extended:
                i -= 1

    def orbit_lengths(self) -> list[int]:
        return [len(self.transversal(i)) for i in range(len(self.base))]


class PermGroup:
    """Immutable permutation group given by generators.

    The stabilizer chain and the order are computed at construction time.
    Structural data computed elsewhere (multiplication table, subgroup lattice)
    is memoised in ``_cache``.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable[Permutation],
        name: str | None = None,
        guards: Guards | None = None,
    ):
        self.guards = guards or default_guards()
        if degree < 0:
            raise RangeError("degree must be non-negative")
        if degree > self.guards.max_degree:
            raise GuardExceeded(f"degree {degree} exceeds guard {self.guards.max_degree}")
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise FormatError(f"generator {g} does not have degree {degree}")
        self._degree = degree
        self._gens = gens
        self.name = name
        self._chain = _Chain(degree, [g.images for g in gens])
        self._order = math.prod(self._chain.orbit_lengths())
        if self._order > self.guards.max_order:
            raise GuardExceeded(f"group order {self._order} exceeds guard {self.guards.max_order}")
        self._cache: dict[str, Any] = {}

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self._gens

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(self._chain.base)

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        return tuple(Permutation(s) for s in self._chain.strong)

    def order(self) -> int:
        return self._order

    def identity(self) -> Permutation:
        return Permutation.identity(self._degree)

    def is_trivial(self) -> bool:
        return self._order == 1

    def contains(self, g: Permutation) -> bool:
        if g.degree != self._degree:
            return False
        h, j = self._chain.sift(g.images)
        return j == len(self._chain.base) and h == self._chain.ident

    __contains__ = contains

    def is_abelian(self) -> bool:
        gs = self._gens
        return all(a * b == b * a for a, b in itertools.combinations(gs, 2))

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self._degree == other.degree and all(g in other for g in self._gens)

    def subgroup(self, generators: Iterable[Permutation], name: str | None = None) -> PermGroup:
        gens = list(generators)
        for g in gens:
            if g not in self:
                raise NotSubgroup(f"{g} is not an element of the group")
        return PermGroup(self._degree, gens, name=name, guards=self.guards)

    def elements(self) -> Iterator[Permutation]:
        """Yield every element once, sorted lexicographically by base images."""
        if self._order > self.guards.max_order:
            raise GuardExceeded("group too large to enumerate")
        ch = self._chain
        levels = [[u for u, _ in ch.transversal(i).values()] for i in range(len(ch.base))]
        raw: list[Raw] = [ch.ident]
        # g = u_{k-1} * ... * u_0
        for reps in levels:
            raw = [_mul(u, g) for g in raw for u in reps]
        raw.sort(key=lambda g: tuple(g[b] for b in ch.base))
        for g in raw:
            yield Permutation(g)

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label}: order {self._order}, degree {self._degree}>"


# -- constructors -----------------------------------------------------------


def _cycle(points: Sequence[int], degree: int) -> Permutation:
    images = list(range(degree))
    for a, b in zip(points, list(points[1:]) + [points[0]]):
        images[a] = b
    return Permutation(tuple(images))


def trivial_group(degree: int = 1, guards: Guards | None = None) -> PermGroup:
    return PermGroup(degree, [], name="trivial", guards=guards)


def cyclic(n: int, guards: Guards | None = None) -> PermGroup:
    if n < 1:
        raise RangeError("cyclic:n needs n >= 1")
    gens = [_cycle(range(n), n)] if n > 1 else []
    return PermGroup(n, gens, name=f"cyclic:{n}", guards=guards)


def elementary_abelian(p: int, r: int, guards: Guards | None = None) -> PermGroup:
    """``(Z_p)^r`` as ``r`` disjoint ``p``-cycles."""
    if not _is_prime(p) or r < 0:
        raise RangeError("elem_abelian:p:r needs prime p and r >= 0")
    deg = max(p * r, 1)
    gens = [_cycle(range(i * p, (i + 1) * p), deg) for i in range(r)]
    return PermGroup(deg, gens, name=f"elem_abelian:{p}:{r}", guards=guards)


def dihedral(n: int, guards: Guards | None = None) -> PermGroup:
    """Symmetries of the regular n-gon, order 2n."""
    if n < 3:
        raise RangeError("dihedral:n needs n >= 3")
    rot = _cycle(range(n), n)
    ref = Permutation(tuple((-i) % n for i in range(n)))
    return PermGroup(n, [rot, ref], name=f"dihedral:{n}", guards=guards)


def symmetric(n: int, guards: Guards | None = None) -> PermGroup:
    if n < 1:
        raise RangeError("sym:n needs n >= 1")
    gens = [] if n == 1 else [_cycle([0, 1], n), _cycle(range(n), n)]
    return PermGroup(n, gens, name=f"sym:{n}", guards=guards)


def alternating(n: int, guards: Guards | None = None) -> PermGroup:
    if n < 1:
        raise RangeError("alt:n needs n >= 1")
    gens = [_cycle([0, 1, k], n) for k in range(2, n)]
    return PermGroup(n, gens, name=f"alt:{n}", guards=guards)


def regular_representation(
    elements: Sequence[Hashable],
    mul: Callable[[Any, Any], Any],
    generators: Sequence[Hashable],
    name: str | None = None,
    guards: Guards | None = None,
) -> PermGroup:
    """Right regular action ``x -> x * g`` on an explicit element list."""
    index = {x: i for i, x in enumerate(elements)}
    perms = []
    for g in generators:
        perms.append(Permutation(tuple(index[mul(x, g)] for x in elements)))
    return PermGroup(len(elements), perms, name=name, guards=guards)


def direct_product(*groups: PermGroup, guards: Guards | None = None) -> PermGroup:
    """Direct product acting on the disjoint union of the point sets."""
    deg = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            images = list(range(deg))
            for i, j in enumerate(g.images):
                images[offset + i] = offset + j
            gens.append(Permutation(tuple(images)))
        offset += G.degree
    name = " x ".join(G.name or "?" for G in groups)
    return PermGroup(deg, gens, name=name, guards=guards or groups[0].guards)


def _element_words(G: PermGroup) -> tuple[list[Raw], dict[Raw, int], list[tuple[int, int]]]:
    """BFS over G from the identity by right multiplication with generators.

    Returns (elements, index, tree) where ``tree[j] = (parent, gen)`` and
    ``elements[j] = elements[parent] * gens[gen]``.
    """
    ident = tuple(range(G.degree))
    gens = [g.images for g in G.generators]
    elems = [ident]
    index = {ident: 0}
    tree = [(-1, -1)]
    for x in elems:
        for k, s in enumerate(gens):
            y = _mul(x, s)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                tree.append((index[x], k))
    return elems, index, tree


def _extend_hom(
    src: PermGroup, images: Sequence[Any], mul: Callable[[Any, Any], Any], identity: Any
) -> dict[Raw, Any] | None:
    """Extend generator images to a map on all of ``src``.

    Returns None when the assignment is not a well-defined homomorphism.
    """
    elems, index, _ = _element_words(src)
    gens = [g.images for g in src.generators]
    phi: dict[Raw, Any] = {elems[0]: identity}
    for x in elems:
        fx = phi[x]
        for s, img in zip(gens, images):
            y = _mul(x, s)
            fy = mul(fx, img)
            if y in phi:
                if phi[y] != fy:
                    return None
            else:
                phi[y] = fy
    return phi


def semidirect_product(
    N: PermGroup,
    H: PermGroup,
    action: Sequence[Sequence[Permutation]] | str,
    guards: Guards | None = None,
    name: str | None = None,
) -> PermGroup:
    """``N ⋊ H`` where ``h n h^-1 = action(h)(n)``.

    ``action[i]`` lists the images of N's generators under the automorphism
    attached to H's i-th generator; ``"trivial"`` and ``"inversion"`` are
    accepted shorthands.  The result acts regularly on the pairs ``N x H``.
    """
    guards = guards or N.guards
    size = N.order() * H.order()
    if size > guards.max_degree:
        raise GuardExceeded(f"semidirect product of order {size} exceeds degree guard")
    if isinstance(action, str):
        if action == "trivial":
            action = [list(N.generators) for _ in H.generators]
        elif action == "inversion":
            action = [[g.inverse() for g in N.generators] for _ in H.generators]
        else:
            raise FormatError(f"unknown action shorthand {action!r}")
    if len(action) != len(H.generators):
        raise FormatError("need one automorphism per generator of H")

    n_elems, n_index, _ = _element_words(N)
    h_elems, h_index, _ = _element_words(H)
    auts: list[tuple[int, ...]] = []
    for imgs in action:
        imgs = list(imgs)
        if len(imgs) != len(N.generators) or not all(g in N for g in imgs):
            raise NotAnAutomorphism("automorphism images must be elements of N, one per generator")
        phi = _extend_hom(N, [g.images for g in imgs], _mul, n_elems[0])
        if phi is None or len(set(phi.values())) != len(n_elems):
            raise NotAnAutomorphism("generator images do not define an automorphism of N")
        auts.append(tuple(n_index[phi[x]] for x in n_elems))

    # action of every element of H as a permutation of N's element indices
    compose = lambda a, b: tuple(a[i] for i in b)  # noqa: E731  (apply b then a)
    ident_aut = tuple(range(len(n_elems)))
    act = _extend_hom(H, auts, compose, ident_aut)
    if act is None:
        raise NotAnAutomorphism("action is not a homomorphism H -> Aut(N)")
    h_act = [act[h] for h in h_elems]

    nm = [[n_index[_mul(a, b)] for b in n_elems] for a in n_elems]
    hm = [[h_index[_mul(a, b)] for b in h_elems] for a in h_elems]
    nh = len(h_elems)

    def pair_perm(n2: int, h2: int) -> Permutation:
        # (n, h) * (n2, h2) = (n * h(n2), h h2)
        images = []
        for n1 in range(len(n_elems)):
            for h1 in range(nh):
                images.append(nm[n1][h_act[h1][n2]] * nh + hm[h1][h2])
        return Permutation(tuple(images))

    gens = [pair_perm(n_index[g.images], 0) for g in N.generators]
    gens += [pair_perm(0, h_index[g.images]) for g in H.generators]
    label = name or f"({N.name}) ⋊ ({H.name})"
    return PermGroup(size, gens, name=label, guards=guards)


def check_normal_subgroup(G: PermGroup, N: PermGroup) -> None:
    if N.degree != G.degree or not all(g in G for g in N.generators):
        raise NotSubgroup("N is not a subgroup of G")
    for g in G.generators:
        gi = g.inverse()
        for n in N.generators:
            if gi * n * g not in N:
                raise NotNormal("N is not normal in G")


def quotient_group(G: PermGroup, N: PermGroup, name: str | None = None) -> PermGroup:
    """G/N acting faithfully on the right cosets of N."""
    check_normal_subgroup(G, N)
    elems, index, _ = _element_words(G)
    n_elems = [x.images for x in N.elements()]
    coset_of = [-1] * len(elems)
    reps: list[Raw] = []
    for i, x in enumerate(elems):
        if coset_of[i] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        for n in n_elems:
            coset_of[index[_mul(n, x)]] = c
    gens = []
    for g in G.generators:
        gens.append(Permutation(tuple(coset_of[index[_mul(r, g.images)]] for r in reps)))
    deg = len(reps)
    if deg == 1:
        gens = []
    return PermGroup(deg, gens, name=name or f"{G.name}/N", guards=G.guards)


# -- GroupSpec parsing ---------------------------------------------------------


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def _ints(parts: list[str], spec: str) -> list[int]:
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise FormatError(f"bad constructor parameters in {spec!r}") from None


def _named(spec: str, guards: Guards | None) -> PermGroup:
    kind, *rest = spec.strip().split(":")
    args = _ints(rest, spec)
    table: dict[str, tuple[int, Callable[..., PermGroup]]] = {
        "cyclic": (1, cyclic),
        "elem_abelian": (2, elementary_abelian),
        "dihedral": (1, dihedral),
        "sym": (1, symmetric),
        "alt": (1, alternating),
    }
    if kind == "heisenberg":
        if len(args) != 1:
            raise FormatError(f"heisenberg:n takes one parameter, got {spec!r}")
        from grouptk.heisenberg import heisenberg_group

        return heisenberg_group(args[0], guards=guards).perm_group
    if kind == "trivial":
        return trivial_group(guards=guards)
    if kind not in table:
        raise FormatError(f"unknown constructor {kind!r}")
    arity, fn = table[kind]
    if len(args) != arity:
        raise FormatError(f"{kind} takes {arity} parameter(s), got {spec!r}")
    return fn(*args, guards=guards)


def _action_from_spec(raw: Any, N: PermGroup, H: PermGroup) -> Sequence[Sequence[Permutation]] | str:
    if isinstance(raw, str):
        return raw
    if not isinstance(raw, list):
        raise FormatError("action must be a list or a shorthand string")
    out = []
    for entry in raw:
        if isinstance(entry, dict) and "power" in entry:
            k = entry["power"]
            if not isinstance(k, int):
                raise FormatError("'power' must be an integer")
            out.append([g**k for g in N.generators])
        elif isinstance(entry, dict) and "words" in entry:
            out.append([_word(w, N) for w in entry["words"]])
        elif isinstance(entry, list) and all(isinstance(c, str) for c in entry):
            out.append([Permutation.from_cycles(c, N.degree) for c in entry])
        else:
            raise FormatError("action entry must be a list of cycle strings, {'power': k} or {'words': [...]}")
    return out


def _word(word: Any, N: PermGroup) -> Permutation:
    """Evaluate [[i, e], ...] as the product of N.generators[i]**e, left to right."""
    if not isinstance(word, list):
        raise FormatError("a word is a list of [generator index, exponent] pairs")
    out = N.identity()
    for pair in word:
        if (not isinstance(pair, list) or len(pair) != 2 or not all(isinstance(v, int) for v in pair)
                or not 0 <= pair[0] < len(N.generators)):
            raise FormatError(f"bad word letter {pair!r}")
        out = out * N.generators[pair[0]] ** pair[1]
    return out


def group_from_spec(spec: str | dict, guards: Guards | None = None) -> PermGroup:
    """Build a group from a named constructor string or a JSON-style dict.

    Accepted forms::

        "cyclic:6"                       named constructor
        '{"degree": 4, ...}'             JSON text of either dict form
        {"name": "Q8", "degree": 8, "generators": ["(1 2 4 7)(3 6 8 5)", ...]}
        {"construct": "sym:4"}
        {"construct": "semidirect", "N": spec, "H": spec, "action": [...]}
        {"construct": "direct", "factors": [spec, ...]}
    """
    guards = guards or default_guards()
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("{"):
            try:
                spec = json.loads(s)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON group spec: {exc}") from None
        else:
            return _named(s, guards)
    if not isinstance(spec, dict):
        raise FormatError("group spec must be a string or an object")

    if "semidirect" in spec and isinstance(spec["semidirect"], dict):
        spec = {"construct": "semidirect", "name": spec.get("name"), **spec["semidirect"]}

    if "construct" in spec:
        kind = spec["construct"]
        if kind == "semidirect":
            try:
                N = group_from_spec(spec["N"], guards)
                H = group_from_spec(spec["H"], guards)
                raw_action = spec.get("action", "trivial")
            except KeyError as exc:
                raise FormatError(f"semidirect spec missing {exc}") from None
            action = _action_from_spec(raw_action, N, H)
            return semidirect_product(N, H, action, guards=guards, name=spec.get("name"))
        if kind == "direct":
            factors = spec.get("factors")
            if not isinstance(factors, list) or not factors:
                raise FormatError("direct spec needs a non-empty 'factors' list")
            G = direct_product(*(group_from_spec(f, guards) for f in factors), guards=guards)
            if spec.get("name"):
                G.name = spec["name"]
            return G
        if not isinstance(kind, str):
            raise FormatError("'construct' must be a string")
        G = _named(kind, guards)
        if spec.get("name"):
            G.name = spec["name"]
        return G

    if "degree" not in spec or "generators" not in spec:
        raise FormatError("explicit spec needs 'degree' and 'generators'")
    degree = spec["degree"]
    if not isinstance(degree, int) or degree < 1:
        raise FormatError("degree must be a positive integer")
    gens_raw = spec["generators"]
    if not isinstance(gens_raw, list) or not all(isinstance(c, str) for c in gens_raw):
        raise FormatError("generators must be a list of cycle strings")
    gens = [Permutation.from_cycles(c, degree) for c in gens_raw]
    return PermGroup(degree, gens, name=spec.get("name"), guards=guards)
