"""Heisenberg-type groups G_n and their actions on circle bundles over the torus.

G_n is Z_n x Z_n x Z_n with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').

Points of the bundle E_n are Z^2-orbits of triples (x, y, θ) where the fibre
coordinate z = exp(2πiθ) is stored as θ in Q/Z.  The lattice acts by

    (k, l) . (x, y, θ) = (x + k, y + l, θ + k n y)

and every point has a unique representative with x, y in [0, 1).  G_n acts by

    (k, l, m) . <x, y, θ> = <x + k/n, y + l/n, θ + k y + m/n>.

All arithmetic uses Fraction; nothing is floating point.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from grouptk.config import Guards, default_guards
from grouptk.errors import GuardExceeded, RangeError
from grouptk.perm import PermGroup, Permutation, regular_representation

MAX_SAMPLES = 10_000


@dataclass(frozen=True, order=True)
class HeisenbergElement:
    n: int
    a: int
    b: int
    c: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.n)
        object.__setattr__(self, "b", self.b % self.n)
        object.__setattr__(self, "c", self.c % self.n)

    @classmethod
    def identity(cls, n: int) -> HeisenbergElement:
        return cls(n, 0, 0, 0)

    def __mul__(self, other: HeisenbergElement) -> HeisenbergElement:
        if other.n != self.n:
            raise ValueError("elements of different groups")
        return HeisenbergElement(
            self.n, self.a + other.a, self.b + other.b, self.c + other.c + self.a * other.b
        )

    def inverse(self) -> HeisenbergElement:
        return HeisenbergElement(self.n, -self.a, -self.b, -self.c + self.a * self.b)

    def __pow__(self, k: int) -> HeisenbergElement:
        out = HeisenbergElement.identity(self.n)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self.a == self.b == self.c == 0

    def as_tuple(self) -> tuple[int, int, int]:
        return self.a, self.b, self.c


class HeisenbergGroup:
    """G_n with both the triple arithmetic and its regular permutation representation."""

    def __init__(self, n: int, guards: Guards | None = None):
        if not isinstance(n, int) or n < 2:
            raise RangeError("heisenberg:n needs an integer n >= 2")
        self.n = n
        self.elements = [HeisenbergElement(n, a, b, c) for a, b, c in itertools.product(range(n), repeat=3)]
        self.index = {g: i for i, g in enumerate(self.elements)}
        gens = [HeisenbergElement(n, 1, 0, 0), HeisenbergElement(n, 0, 1, 0)]
        self.perm_group = regular_representation(
            self.elements, HeisenbergElement.__mul__, gens, name=f"heisenberg:{n}", guards=guards
        )
        self.perm_group._cache["heisenberg"] = self

    def order(self) -> int:
        return self.n**3

    def element(self, a: int, b: int, c: int) -> HeisenbergElement:
        return HeisenbergElement(self.n, a, b, c)

    def to_perm(self, g: HeisenbergElement) -> Permutation:
        """Right multiplication by g on the element list."""
        return Permutation(tuple(self.index[x * g] for x in self.elements))

    def from_perm(self, p: Permutation) -> HeisenbergElement:
        # the identity sits at index 0, so p(0) is the index of g itself
        return self.elements[p.images[0]]


def heisenberg_group(n: int, guards: Guards | None = None) -> HeisenbergGroup:
    return HeisenbergGroup(n, guards=guards)


# -- abelian subgroups -------------------------------------------------------------


@dataclass
class AbelianIndexResult:
    n: int
    min_index: int
    witness: list[tuple[int, int, int]]
    abelian_subgroups: int
    ok: bool

    def to_dict(self) -> dict:
        return {
            "check": "abelian-index",
            "n": self.n,
            "min_index": self.min_index,
            "lower_bound": self.n,
            "witness_order": len(self.witness),
            "witness": [list(w) for w in self.witness],
            "abelian_subgroups": self.abelian_subgroups,
            "status": "pass" if self.ok else "fail",
        }


def min_abelian_index(n: int, max_n: int = 6, guards: Guards | None = None) -> AbelianIndexResult:
    """Exact minimum of |G_n : A| over abelian subgroups A, by exhaustive scan."""
    from grouptk.structure import all_subgroups

    if n > max_n:
        raise GuardExceeded(f"abelian-index scan limited to n <= {max_n}")
    H = heisenberg_group(n, guards)
    lat = all_subgroups(H.perm_group)
    t = lat.table
    order = H.order()
    best = None
    count = 0
    for r in lat:
        if not r.is_abelian:
            continue
        count += 1
        if order % r.order or (order // r.order) * r.order != order:
            raise AssertionError("subgroup order does not divide |G_n|")
        if best is None or r.order > best.order:
            best = r
    wit = sorted(H.from_perm(t.perm(i)).as_tuple() for i in t.members(best.mask))
    idx = order // best.order
    return AbelianIndexResult(n, idx, wit, count, idx >= n)


# -- bundle points ---------------------------------------------------------------------


def _frac(q) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(q)


@dataclass(frozen=True)
class BundlePoint:
    """Canonical representative <x, y, θ>_n with x, y, θ in [0, 1)."""

    x: Fraction
    y: Fraction
    theta: Fraction
    n: int

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.x, self.y, self.theta

    def to_json(self) -> list[str]:
        return [str(self.x), str(self.y), str(self.theta)]


def phi_action(n: int, k: int, l: int, raw: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    """Lattice action on raw triples; θ is reduced mod 1."""
    x, y, th = (_frac(v) for v in raw)
    return x + k, y + l, (th + k * n * y) % 1


def canonical(n: int, raw: Sequence) -> BundlePoint:
    x, y, th = (_frac(v) for v in raw)
    k, l = -math.floor(x), -math.floor(y)
    x2, y2, th2 = phi_action(n, k, l, (x, y, th))
    return BundlePoint(x2, y2, th2, n)


def psi_raw(n: int, g: HeisenbergElement | Sequence[int], raw: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    k, l, m = g.as_tuple() if isinstance(g, HeisenbergElement) else g
    x, y, th = (_frac(v) for v in raw)
    return x + Fraction(k, n), y + Fraction(l, n), th + k * y + Fraction(m, n)


def psi_action(n: int, g: HeisenbergElement | Sequence[int], pt: BundlePoint | Sequence) -> BundlePoint:
    """Action of (k, l, m) in G_n on E_n, canonicalised after application."""
    raw = pt.as_tuple() if isinstance(pt, BundlePoint) else pt
    return canonical(n, psi_raw(n, g, raw))


def _scaled(n: int, raw: Sequence) -> tuple[int, tuple[int, int, int]]:
    """Common denominator D (a multiple of n) and the integer numerators of a point."""
    x, y, th = (_frac(v) for v in raw)
    D = math.lcm(n, x.denominator, y.denominator, th.denominator)
    return D, (int(x * D), int(y * D), int(th * D))


def _psi_scaled(n: int, D: int, g: tuple[int, int, int], pt: tuple[int, int, int]) -> tuple[int, int, int]:
    """psi_action on numerators over D, canonicalised."""
    k, l, m = g
    X, Y, TH = pt
    step = D // n
    X, TH, Y = X + k * step, TH + k * Y + m * step, Y + l * step
    a, b = X // D, Y // D
    return X - a * D, Y - b * D, (TH - a * n * Y) % D


def _unscale(D: int, pt: tuple[int, int, int]) -> tuple[Fraction, Fraction, Fraction]:
    return tuple(Fraction(v, D) for v in pt)


def sample_points(n: int, seed: int = 0, extra: int = 16, max_den: int = 64) -> list[BundlePoint]:
    """Deterministic sample: the 7x7 grid in (x, y) with θ cycling through j/11,
    plus ``extra`` seeded random rationals with denominators at most ``max_den``."""
    pts = []
    for i in range(7):
        for j in range(7):
            pts.append(canonical(n, (Fraction(i, 7), Fraction(j, 7), Fraction((7 * i + j) % 11, 11))))
    rng = random.Random(seed)
    for _ in range(extra):
        coords = []
        for _ in range(3):
            d = rng.randint(1, max_den)
            coords.append(Fraction(rng.randrange(d), d))
        pts.append(canonical(n, coords))
    return pts


def _grow_samples(n: int, seed: int, have: int) -> Iterable[BundlePoint]:
    rng = random.Random(seed + 1)
    while have < MAX_SAMPLES:
        coords = []
        for _ in range(3):
            d = rng.randint(1, 997)
            coords.append(Fraction(rng.randrange(d), d))
        have += 1
        yield canonical(n, coords)


def _report(check: str, n: int, samples: int, violations: list, extra: dict | None = None,
            inconclusive: bool = False) -> dict:
    status = "fail" if violations else ("inconclusive" if inconclusive else "pass")
    out = {"check": check, "n": n, "samples": samples, "violations": violations, "status": status}
    if extra:
        out.update(extra)
    return out


def verify_phi_action(n: int, samples: Sequence[BundlePoint | Sequence], window: int = 3) -> dict:
    """Composition law and freeness of the lattice action on every sample."""
    raws = [s.as_tuple() if isinstance(s, BundlePoint) else tuple(_frac(v) for v in s) for s in samples]
    rng = range(-window, window + 1)
    violations = []
    for raw in raws:
        if phi_action(n, 0, 0, raw) != (raw[0], raw[1], raw[2] % 1):
            violations.append({"kind": "identity", "point": [str(v) for v in raw]})
        for k, l in itertools.product(rng, rng):
            once = phi_action(n, k, l, raw)
            if (k, l) != (0, 0) and once == (raw[0], raw[1], raw[2] % 1):
                violations.append({"kind": "fixed", "g": [k, l], "point": [str(v) for v in raw]})
            for k2, l2 in itertools.product(rng, rng):
                two = phi_action(n, k, l, phi_action(n, k2, l2, raw))
                if two != phi_action(n, k + k2, l + l2, raw):
                    violations.append({"kind": "composition", "g": [k, l], "h": [k2, l2],
                                       "point": [str(v) for v in raw]})
    return _report("phi-action", n, len(raws), violations, {"window": window})


def verify_psi_is_effective_action(n: int, samples: Sequence[BundlePoint] | None = None,
                                   seed: int = 0) -> dict:
    """Well-definedness, homomorphism property and effectiveness of the G_n action.

    The homomorphism check runs over the full g x g' grid on every sample.
    Effectiveness needs a moved sample for each g != e; the sample set is grown
    deterministically up to MAX_SAMPLES before declaring "inconclusive".
    """
    H = heisenberg_group(n)
    pts = list(samples) if samples is not None else sample_points(n, seed)
    G = H.elements
    violations: list[dict] = []

    # (i) well-definedness: raw lattice translates of a point have equal images
    shifts = [(1, 0), (0, 1), (-1, 2), (2, -1)]
    for pt in pts:
        for k, l in shifts:
            other = phi_action(n, k, l, pt.as_tuple())
            for g in G:
                if psi_action(n, g, pt) != psi_action(n, g, other):
                    violations.append({"kind": "well-defined", "g": list(g.as_tuple()),
                                       "point": pt.to_json(), "shift": [k, l]})
        # integer representatives of residues must not matter
        for g in G:
            alt = (g.a + n, g.b - n, g.c + 2 * n)
            if psi_action(n, g, pt) != psi_action(n, alt, pt):
                violations.append({"kind": "representative", "g": list(g.as_tuple()), "point": pt.to_json()})

    # (ii) homomorphism: Ψ(g, Ψ(g', x)) == Ψ(g g', x).  The |G|^2 inner loop runs on
    # the integer-scaled copy, which is first checked against the Fraction path.
    image = {(g, i): psi_action(n, g, pt) for g in G for i, pt in enumerate(pts)}
    triples = [g.as_tuple() for g in G]
    prod = [[H.index[g1 * g2] for g2 in G] for g1 in G]
    for i, pt in enumerate(pts):
        D, start = _scaled(n, pt.as_tuple())
        imgs = [_psi_scaled(n, D, t, start) for t in triples]
        for j, g in enumerate(G):
            if _unscale(D, imgs[j]) != image[(g, i)].as_tuple():
                violations.append({"kind": "scaled-mismatch", "g": list(g.as_tuple()), "point": pt.to_json()})
        for j2, mid in enumerate(imgs):
            for j1, t in enumerate(triples):
                if _psi_scaled(n, D, t, mid) != imgs[prod[j1][j2]]:
                    violations.append({"kind": "homomorphism", "g": list(t),
                                       "h": list(triples[j2]), "point": pt.to_json()})

    # (iii) effectiveness
    missing = []
    for g in G:
        if g.is_identity():
            continue
        if not any(image[(g, i)] != pt for i, pt in enumerate(pts)):
            missing.append(g)
    total = len(pts)
    if missing:
        for pt in _grow_samples(n, seed, total):
            total += 1
            missing = [g for g in missing if psi_action(n, g, pt) == pt]
            if not missing:
                break
    return _report("psi-action", n, total, violations,
                   {"seed": seed, "pairs": len(G) ** 2,
                    "unwitnessed": [list(g.as_tuple()) for g in missing]},
                   inconclusive=bool(missing))


# -- T^2 x S^3 model -------------------------------------------------------------------


@dataclass(frozen=True)
class S3ModelPoint:
    """Point <x, y, u> of T^2 x S^3 with u in the normaliser of the circle.

    u = exp(2πi·angle) · j^marker as a unit quaternion; left multiplication by
    a circle element e^{2πiα} adds α to the angle in both cosets, since
    e^{iα}(e^{iβ} j) = e^{i(α+β)} j.
    """

    x: Fraction
    y: Fraction
    angle: Fraction
    marker: int
    n: int


def s3_canonical(n: int, x, y, angle, marker: int) -> S3ModelPoint:
    x, y, angle = _frac(x), _frac(y), _frac(angle)
    k, l = -math.floor(x), -math.floor(y)
    return S3ModelPoint(x + k, y + l, (angle + k * n * y) % 1, marker % 2, n)


def s3_action(n: int, g: HeisenbergElement, pt: S3ModelPoint) -> S3ModelPoint:
    k, l, m = g.as_tuple()
    return s3_canonical(n, pt.x + Fraction(k, n), pt.y + Fraction(l, n),
                        pt.angle + k * pt.y + Fraction(m, n), pt.marker)


def _quat_mul(u: tuple[Fraction, int], v: tuple[Fraction, int]) -> tuple[Fraction, int]:
    """Product in the circle normaliser {e^{2πiα} j^ε} of S^3, using j e^{iβ} = e^{-iβ} j, j^2 = -1."""
    (a, e), (b, f) = u, v
    if e == 0:
        return (a + b) % 1, f
    if f == 0:
        return (a - b) % 1, 1
    return (a - b + Fraction(1, 2)) % 1, 0


def _left_translation_is_free(alpha: Fraction, n: int) -> bool:
    """True iff u -> e^{2πiα} u has no fixed point on the dicyclic group of order 4n.

    That finite subgroup of S^3 contains every fibre element the G_n action
    produces, so the check is exhaustive for the equation q'u = u.
    """
    q = (alpha % 1, 0)
    group = [(Fraction(k, 2 * n), e) for k in range(2 * n) for e in (0, 1)]
    return not any(_quat_mul(q, u) == u for u in group)


def verify_free_action_s3_model(n: int, max_n: int = 64, samples: int = 24, seed: int = 0) -> dict:
    """Derive, for each g != e, that the fixed-point equations have no solution.

    Coordinates: x + k/n ≡ x (mod 1) needs k/n ∈ Z, likewise for l; once both
    shifts are the integers (a, b) the lattice correction cancels the k·y term,
    leaving e^{2πi m/n} u = u on the S^3 factor, which left-translation freeness
    reduces to m/n ∈ Z.  A sampled brute-force check runs alongside.
    """
    if n < 2:
        raise RangeError("n must be >= 2")
    if n > max_n:
        raise GuardExceeded(f"n={n} exceeds guard {max_n}")
    H = heisenberg_group(n)
    rng = random.Random(seed)
    pts = []
    for i in range(samples):
        d = rng.randint(1, 64)
        pts.append(s3_canonical(n, Fraction(rng.randrange(d), d), Fraction(rng.randrange(d), d),
                                Fraction(rng.randrange(d), d), i % 2))
    violations = []
    derivations = {}
    for g in H.elements:
        if g.is_identity():
            continue
        k, l, m = g.as_tuple()
        sx, sy = Fraction(k, n), Fraction(l, n)
        if sx.denominator != 1:
            step = f"x-shift {sx} is not an integer"
        elif sy.denominator != 1:
            step = f"y-shift {sy} is not an integer"
        else:
            a = int(sx)
            # residual fibre angle after undoing the lattice shift (a, b): (k - a n) y + m/n
            y_coeff = k - a * n
            const = Fraction(m, n) % 1
            if y_coeff != 0:
                violations.append({"g": [k, l, m], "reason": "fibre angle depends on y"})
                continue
            if const == 0:
                violations.append({"g": [k, l, m], "reason": "fibre equation trivially solvable"})
                continue
            if not _left_translation_is_free(const, n):
                violations.append({"g": [k, l, m], "reason": "left translation has a fixed point"})
                continue
            step = f"S^3 factor multiplied by e^(2πi·{const}) != 1"
        derivations[f"{k},{l},{m}"] = step
        for pt in pts:
            if s3_action(n, g, pt) == pt:
                violations.append({"g": [k, l, m], "reason": "sampled fixed point",
                                   "point": [str(pt.x), str(pt.y), str(pt.angle), pt.marker]})
    return _report("free-action-s3", n, len(pts), violations,
                   {"elements_checked": len(H.elements) - 1, "derivations": derivations})
