"""Mod-p cohomology with trivial coefficients, computed from explicit resolutions.

Two independent routes:

* free F_p[G]-resolutions given by matrices (the periodic resolution of a
  cyclic group is built in), turned into cochains via G-invariant functionals;
* the normalized bar complex, usable only for tiny groups and degrees.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from grouptk import fp
from grouptk.config import Guards, default_guards
from grouptk.errors import GuardExceeded, InternalConsistencyError, RangeError
from grouptk.perm import PermGroup
from grouptk.table import GroupTable, prime_factors

BAR_MAX_ORDER = 12
BAR_MAX_DEGREE = 4
BAR_MAX_ENTRIES = 4_000_000


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or prime_factors(p) != [p]:
        raise RangeError(f"{p!r} is not a prime")


@dataclass
class FpCochainComplex:
    """C^0 -> C^1 -> ... with ``differentials[i]`` the matrix of C^i -> C^(i+1).

    Matrices act on column coordinate vectors, so ``differentials[i]`` has shape
    (dim C^(i+1), dim C^i).  Cohomology is available in degrees 0..max_degree,
    which needs differentials 0..max_degree.
    """

    p: int
    differentials: list[np.ndarray]
    max_degree: int = field(default=-1)

    def __post_init__(self):
        _check_prime(self.p)
        self.differentials = [fp.as_fp(d, self.p) for d in self.differentials]
        if self.max_degree < 0:
            self.max_degree = len(self.differentials) - 1
        if len(self.differentials) < self.max_degree + 1:
            raise RangeError("not enough differentials for the requested degree")
        for i in range(len(self.differentials) - 1):
            a, b = self.differentials[i], self.differentials[i + 1]
            if a.shape[0] != b.shape[1]:
                raise InternalConsistencyError(f"shape mismatch between d{i} and d{i + 1}")
            if (fp.matmul(b, a, self.p)).any():
                raise InternalConsistencyError(f"d{i + 1} d{i} != 0")

    def dims(self) -> list[int]:
        out = []
        prev_rank = 0
        for i in range(self.max_degree + 1):
            d = self.differentials[i]
            kernel = d.shape[1] - fp.rank(d, self.p)
            out.append(kernel - prev_rank)
            prev_rank = fp.rank(d, self.p)
        return out


# -- resolutions ------------------------------------------------------------------------


def _cyclic_shift(m: int) -> np.ndarray:
    """Matrix of multiplication by the generator t on F_p[Z_m] (basis 1, t, ..., t^(m-1))."""
    S = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        S[(i + 1) % m, i] = 1
    return S


def cyclic_resolution(m: int, p: int, length: int) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Periodic free resolution of F_p over F_p[Z_m].

    Returns (action, boundaries): ``action[i]`` is the generator's matrix on
    F_i = F_p[Z_m] and ``boundaries[i]`` is F_(i+1) -> F_i, alternating t - 1
    and the norm element.
    """
    t = _cyclic_shift(m)
    eye = np.eye(m, dtype=np.int64)
    minus = (t - eye) % p
    norm = sum(np.linalg.matrix_power(t, k) for k in range(m)) % p
    boundaries = [minus if i % 2 == 0 else norm for i in range(length)]
    return [t] * (length + 1), boundaries


def check_exact(boundaries: list[np.ndarray], p: int, augmentation: np.ndarray) -> bool:
    """rank bookkeeping for exactness of ... -> F_1 -> F_0 -> F_p -> 0."""
    maps = [augmentation] + list(boundaries)
    if fp.rank(augmentation, p) != augmentation.shape[0]:
        return False
    for a, b in zip(maps, maps[1:]):
        if fp.matmul(a, b, p).any():
            return False
        if a.shape[1] - fp.rank(a, p) != fp.rank(b, p):
            return False
    return True


def cochains_from_resolution(p: int, action: list[list[np.ndarray]],
                             boundaries: list[np.ndarray]) -> FpCochainComplex:
    """Hom_G(F_*, F_p) for a resolution given by generator matrices per degree.

    Hom_G(F_i, F_p) is the space of row vectors f with f g = f for every
    generator matrix g; the coboundary sends f to f ∂.
    """
    bases = []
    for gens in action:
        dim = gens[0].shape[0]
        stacked = np.hstack([(g - np.eye(dim, dtype=np.int64)) % p for g in gens])
        # f (g - 1) = 0  <=>  (g - 1)^T f^T = 0
        bases.append(fp.nullspace(stacked.T, p))
    diffs = []
    for i, bd in enumerate(boundaries):
        src, dst = bases[i], bases[i + 1]
        pulled = fp.matmul(src, bd, p) if src.shape[0] else np.zeros((0, bd.shape[1]), dtype=np.int64)
        X = fp.solve_rows(dst, pulled, p)
        if X is None:
            raise InternalConsistencyError("coboundary leaves the invariant functionals")
        diffs.append(X.T.reshape(dst.shape[0], src.shape[0]))
    return FpCochainComplex(p, diffs, max_degree=len(boundaries) - 1)


def cyclic_cohomology_dims(m: int, p: int, max_deg: int, guards: Guards | None = None) -> list[int]:
    """dim H^i(Z_m; F_p) for 0 <= i <= max_deg, from the periodic resolution."""
    guards = guards or default_guards()
    _check_prime(p)
    if not isinstance(m, int) or m < 1:
        raise RangeError("m must be a positive integer")
    if max_deg < 0:
        raise RangeError("max_deg must be non-negative")
    if max_deg > guards.max_cohomology_degree:
        raise GuardExceeded(f"degree {max_deg} exceeds guard {guards.max_cohomology_degree}")
    if m > guards.max_degree:
        raise GuardExceeded(f"group order {m} exceeds degree guard")
    action, boundaries = cyclic_resolution(m, p, max_deg + 1)
    cx = cochains_from_resolution(p, [[a] for a in action], boundaries)
    return cx.dims()


# -- product resolution of (Z_p)^r -------------------------------------------------------------


@dataclass
class ProductResolution:
    """Tensor product of r periodic resolutions, a free resolution of F_p over F_p[(Z_p)^r].

    The basis of F_d is the set of compositions (a_1, ..., a_r) of d.  Entries
    of a boundary are group ring elements stored sparsely as
    {exponent vector: coefficient}.  ``boundaries[d]`` maps F_(d+1) -> F_d and is
    a dict {(row, col): element} with row indexing F_d and col indexing F_(d+1).
    """

    p: int
    r: int
    bases: list[list[tuple[int, ...]]]
    boundaries: list[dict[tuple[int, int], dict[tuple[int, ...], int]]]

    @property
    def group_order(self) -> int:
        return self.p**self.r

    def ranks(self) -> list[int]:
        return [len(b) for b in self.bases]

    def augmented_complex(self) -> FpCochainComplex:
        """Hom_G(F_*, F_p): each free summand contributes one functional, and the
        coboundary entries are the augmentations of the boundary entries."""
        diffs = []
        for d, bd in enumerate(self.boundaries):
            M = np.zeros((len(self.bases[d + 1]), len(self.bases[d])), dtype=np.int64)
            for (row, col), elt in bd.items():
                M[col, row] = (M[col, row] + sum(elt.values())) % self.p
            diffs.append(M)
        return FpCochainComplex(self.p, diffs, max_degree=len(self.boundaries) - 1)

    def _regular(self, elt: dict[tuple[int, ...], int]) -> np.ndarray:
        n = self.group_order
        M = np.zeros((n, n), dtype=np.int64)
        shifts = [_cyclic_shift(self.p)] * self.r
        for exps, c in elt.items():
            block = np.eye(1, dtype=np.int64)
            for sh, e in zip(shifts, exps):
                block = np.kron(block, np.linalg.matrix_power(sh, e))
            M = M + c * block
        return M % self.p

    def dense_boundary(self, d: int) -> np.ndarray:
        """F_(d+1) -> F_d as an F_p matrix on the underlying vector spaces."""
        n = self.group_order
        M = np.zeros((len(self.bases[d]) * n, len(self.bases[d + 1]) * n), dtype=np.int64)
        for (row, col), elt in self.boundaries[d].items():
            M[row * n:(row + 1) * n, col * n:(col + 1) * n] = self._regular(elt)
        return M

    def augmentation(self) -> np.ndarray:
        return np.ones((1, self.group_order), dtype=np.int64)

    def check_exact(self, max_dim: int = 1200) -> int:
        """Verify exactness of F_k -> ... -> F_0 -> F_p -> 0 in every degree whose
        modules have dimension at most ``max_dim``; returns how many boundaries were used."""
        n = self.group_order
        used = []
        for d in range(len(self.boundaries)):
            if max(len(self.bases[d]), len(self.bases[d + 1])) * n > max_dim:
                break
            used.append(self.dense_boundary(d))
        if not check_exact(used, self.p, self.augmentation()):
            raise InternalConsistencyError("product resolution is not exact")
        return len(used)


def _compositions(d: int, r: int) -> list[tuple[int, ...]]:
    if r == 0:
        return [()] if d == 0 else []
    return [(a,) + rest for a in range(d + 1) for rest in _compositions(d - a, r - 1)]


def product_resolution(p: int, r: int, length: int) -> ProductResolution:
    """F_0 <- F_1 <- ... <- F_length for (Z_p)^r.

    On a basis vector a = (a_1, ..., a_r), the boundary is
    sum_i (-1)^(a_1 + ... + a_(i-1)) delta_i(a_i) (a - e_i), where delta_i is
    t_i - 1 for odd a_i and the norm of the i-th factor for even a_i > 0.
    """
    _check_prime(p)
    if r < 0 or length < 0:
        raise RangeError("r and length must be non-negative")
    bases = [_compositions(d, r) for d in range(length + 1)]
    index = [{a: i for i, a in enumerate(b)} for b in bases]
    zero = (0,) * r
    boundaries = []
    for d in range(length):
        bd: dict[tuple[int, int], dict[tuple[int, ...], int]] = {}
        for col, a in enumerate(bases[d + 1]):
            sign_exp = 0
            for i, ai in enumerate(a):
                if ai:
                    sign = -1 if sign_exp % 2 else 1
                    e_i = tuple(1 if j == i else 0 for j in range(r))
                    if ai % 2:
                        elt = {e_i: sign % p, zero: (-sign) % p}
                    else:
                        elt = {tuple(k if j == i else 0 for j in range(r)): sign % p for k in range(p)}
                    row = index[d][a[:i] + (ai - 1,) + a[i + 1:]]
                    bd[(row, col)] = elt
                sign_exp += ai
        boundaries.append(bd)
    return ProductResolution(p, r, bases, boundaries)


def elementary_abelian_dims_by_resolution(p: int, r: int, max_deg: int,
                                          guards: Guards | None = None) -> list[int]:
    """dim H^d((Z_p)^r; F_p) for d <= max_deg from the product resolution."""
    guards = guards or default_guards()
    if max_deg < 0:
        raise RangeError("max_deg must be non-negative")
    if max_deg > guards.max_cohomology_degree:
        raise GuardExceeded(f"degree {max_deg} exceeds guard {guards.max_cohomology_degree}")
    return product_resolution(p, r, max_deg + 1).augmented_complex().dims()


# -- bar resolution oracle ----------------------------------------------------------------------


def bar_complex(G: PermGroup, p: int, max_deg: int) -> FpCochainComplex:
    """Normalized inhomogeneous cochains of G with trivial F_p coefficients."""
    _check_prime(p)
    if G.order() > BAR_MAX_ORDER or max_deg > BAR_MAX_DEGREE:
        raise GuardExceeded(f"bar complex limited to |G| <= {BAR_MAX_ORDER}, degree <= {BAR_MAX_DEGREE}")
    t = GroupTable(G)
    k = t.n - 1  # non-identity elements 1..n-1
    if k ** (max_deg + 1) * k**max_deg > BAR_MAX_ENTRIES:
        raise GuardExceeded("bar complex matrices too large")
    diffs = []
    for n in range(max_deg + 1):
        rows = k ** (n + 1)
        D = np.zeros((rows, k**n), dtype=np.int64)
        col_of = lambda tup: sum((x - 1) * k ** (len(tup) - 1 - j) for j, x in enumerate(tup))  # noqa: E731
        for r, g in enumerate(itertools.product(range(1, t.n), repeat=n + 1)):
            D[r, col_of(g[1:])] += 1
            for i in range(n):
                h = t.mult[g[i]][g[i + 1]]
                if h:
                    D[r, col_of(g[:i] + (h,) + g[i + 2:])] += (-1) ** (i + 1)
            D[r, col_of(g[:-1])] += (-1) ** (n + 1)
        diffs.append(D % p)
    return FpCochainComplex(p, diffs, max_degree=max_deg)


def bar_cohomology_dims(G: PermGroup, p: int, max_deg: int) -> list[int]:
    return bar_complex(G, p, max_deg).dims()


# -- closed forms ---------------------------------------------------------------------------


def kunneth_dims(dimsA: list[int], dimsB: list[int]) -> list[int]:
    """Graded convolution, truncated to the degrees known for both factors."""
    n = min(len(dimsA), len(dimsB))
    return [sum(dimsA[i] * dimsB[d - i] for i in range(d + 1)) for d in range(n)]


def elementary_abelian_cohomology_dim(p: int, r: int, d: int) -> int:
    """dim H^d((Z_p)^r; F_p) = C(d + r - 1, d)."""
    _check_prime(p)
    if r < 0 or d < 0:
        raise RangeError("r and d must be non-negative")
    if r == 0:
        return 1 if d == 0 else 0
    return math.comb(d + r - 1, d)


def elementary_abelian_dims_by_kunneth(p: int, r: int, max_deg: int) -> list[int]:
    """r-fold Künneth product of the resolution-computed dims of Z_p."""
    out = [1] + [0] * max_deg
    base = cyclic_cohomology_dims(p, p, max_deg)
    for _ in range(r):
        out = kunneth_dims(out, base)
    return out
