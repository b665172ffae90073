"""Minimal free resolutions of F_2 over F_2[G] for a finite 2-group G.

Free modules are left modules ``P_n = F_2[G]^{b_n}``.  An element is an F_2
vector of length ``b_n * |G|`` with entry ``i * |G| + g`` the coefficient of
``g e_i``.  A module map is given by the images of the basis vectors
(``gens``, one row per source generator) and acts by right multiplication
with its F_2 realization, whose row ``i * |G| + g`` is ``g * gens[i]``.

Cohomology of the minimal model is ``H^n = F_2^{b_n}`` (all differentials of
Hom(P, F_2) vanish), so a class is just a coefficient vector.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bar import Cochain, CochainError, is_cocycle
from .config import check_size, get_config
from .f2 import BitMatrix, f2_matmul, pack_rows, rref, unpack_rows
from .pcgroups import PcGroup

log = logging.getLogger(__name__)

FORMAT_VERSION = 1


class ResolutionError(RuntimeError):
    pass


# -- group algebra -----------------------------------------------------------


@dataclass(frozen=True)
class GroupAlgebraElement:
    """An element of F_2[G] as a 0/1 vector over element indices."""

    group: PcGroup
    bits: tuple

    @classmethod
    def of(cls, G: PcGroup, support) -> "GroupAlgebraElement":
        v = np.zeros(G.order, dtype=np.uint8)
        for g in support:
            v[g.index if hasattr(g, "index") else int(g)] ^= 1
        return cls(G, tuple(int(x) for x in v))

    def augmentation(self) -> int:
        return sum(self.bits) & 1

    def __add__(self, other):
        return GroupAlgebraElement(self.group, tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __mul__(self, other):
        out = np.zeros(self.group.order, dtype=np.uint8)
        tab = self.group.table
        for g, a in enumerate(self.bits):
            if a:
                out[tab[g][np.flatnonzero(other.bits)]] ^= 1
        return GroupAlgebraElement(self.group, tuple(int(x) for x in out))


def realize(G: PcGroup, gens: np.ndarray) -> np.ndarray:
    """F_2 matrix of the module map with generator images ``gens`` (r x s|G|)."""
    N = G.order
    gens = np.asarray(gens, dtype=np.uint8)
    r, cols = gens.shape
    s = cols // N
    check_size(r * N * cols, f"{r * N}x{cols} module map realization")
    blocks = gens.reshape(r, s, N)
    idx = G.table[G.inverse]  # idx[g, m] = g^-1 * m
    out = blocks[:, :, idx]  # (r, s, g, m)
    return np.ascontiguousarray(out.transpose(0, 2, 1, 3).reshape(r * N, s * N))


def left_translates(G: PcGroup, v: np.ndarray) -> np.ndarray:
    """All ``g * v`` for a single module element, one row per g."""
    return realize(G, np.asarray(v, dtype=np.uint8)[None, :])


def augment(G: PcGroup, v: np.ndarray) -> np.ndarray:
    """Apply the augmentation to each coordinate of module elements (last axis)."""
    v = np.asarray(v, dtype=np.uint8)
    return (v.reshape(*v.shape[:-1], -1, G.order).sum(axis=-1) & 1).astype(np.uint8)


@dataclass
class FreeModuleMap:
    """A map F_2[G]^r -> F_2[G]^s given by the images of the r basis vectors."""

    group: PcGroup
    source_rank: int
    target_rank: int
    gens: np.ndarray

    def __post_init__(self):
        self.gens = np.asarray(self.gens, dtype=np.uint8)
        if self.gens.shape != (self.source_rank, self.target_rank * self.group.order):
            raise ValueError("generator images have the wrong shape")

    def entry(self, i: int, j: int) -> GroupAlgebraElement:
        N = self.group.order
        row = self.gens[i, j * N : (j + 1) * N]
        return GroupAlgebraElement(self.group, tuple(int(x) for x in row))

    def matrix(self) -> np.ndarray:
        return realize(self.group, self.gens)

    def __call__(self, v) -> np.ndarray:
        return f2_matmul(np.atleast_2d(v), self.matrix())

    def entry_augmentations(self) -> np.ndarray:
        return augment(self.group, self.gens)


# -- the resolution ------------------------------------------------------------


@dataclass(frozen=True)
class MinClass:
    """A cohomology class in the minimal model."""

    degree: int
    coeffs: tuple

    @classmethod
    def of(cls, degree: int, coeffs) -> "MinClass":
        return cls(degree, tuple(int(x) & 1 for x in np.asarray(coeffs).ravel()))

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.uint8)

    def __add__(self, other: "MinClass") -> "MinClass":
        if other.degree != self.degree:
            raise ValueError("cannot add classes of different degree")
        return MinClass(self.degree, tuple(a ^ b for a, b in zip(self.coeffs, other.coeffs)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        return f"H^{self.degree}[{''.join(map(str, self.coeffs))}]"


@dataclass
class MinimalResolution:
    group: PcGroup
    betti: list
    # boundary[n] for n >= 1: b_n x (b_{n-1}|G|) generator images of d_n
    boundary: list
    _real: dict = field(default_factory=dict, repr=False)
    _solvers: dict = field(default_factory=dict, repr=False)
    _bar: dict = field(default_factory=dict, repr=False)
    _lifts: dict = field(default_factory=dict, repr=False)

    @property
    def length(self) -> int:
        return len(self.betti) - 1

    def d(self, n: int) -> FreeModuleMap:
        if not 1 <= n <= self.length:
            raise ResolutionError(f"d_{n} not computed (length {self.length})")
        return FreeModuleMap(self.group, self.betti[n], self.betti[n - 1], self.boundary[n])

    def matrix(self, n: int) -> np.ndarray:
        """F_2 realization of d_n (n >= 1) or of the augmentation (n = 0)."""
        if n not in self._real:
            if n == 0:
                self._real[0] = np.ones((self.group.order, 1), dtype=np.uint8)
            else:
                self._real[n] = realize(self.group, self.boundary[n])
        return self._real[n]

    def solver(self, n: int):
        if n not in self._solvers:
            self._solvers[n] = rref(BitMatrix.from_dense(self.matrix(n)), track=True).solver()
        return self._solvers[n]

    def check(self) -> None:
        """d o d = 0, exactness by dimension count, and minimality."""
        N = self.group.order
        ranks = [int(bool(N))] + [rref(BitMatrix.from_dense(self.matrix(n))).rank
                                  for n in range(1, self.length + 1)]
        for n in range(1, self.length + 1):
            if augment(self.group, self.boundary[n]).any():
                raise ResolutionError(f"d_{n} has an entry outside the augmentation ideal")
            prev = self.matrix(n - 1)
            if f2_matmul(self.boundary[n], prev).any():
                raise ResolutionError(f"d_{n - 1} o d_{n} != 0")
        for n in range(0, self.length):
            if ranks[n] + ranks[n + 1] != N * self.betti[n]:
                raise ResolutionError(f"not exact at P_{n}")

    # -- persistence ---------------------------------------------------------

    def to_json(self) -> dict:
        mats = []
        for n in range(1, self.length + 1):
            packed = pack_rows(self.boundary[n])
            mats.append({"rows": int(self.boundary[n].shape[0]), "cols": int(self.boundary[n].shape[1]),
                         "hex": BitMatrix(packed.shape[0], self.boundary[n].shape[1], packed).hexdump()})
        return {
            "group": self.group.name,
            "digest": self.group.digest(),
            "N": self.length,
            "betti": list(self.betti),
            "version": FORMAT_VERSION,
            "boundaries": mats,
        }

    @classmethod
    def from_json(cls, doc: dict, G: PcGroup) -> "MinimalResolution":
        if doc.get("version") != FORMAT_VERSION or doc.get("digest") != G.digest():
            raise ResolutionError("cache entry does not match this group or format")
        boundary = [None]
        for m in doc["boundaries"]:
            rows, cols = m["rows"], m["cols"]
            lines = m["hex"].split("\n") if rows else []
            words = np.array(
                [[int(line[i : i + 16], 16) for i in range(0, len(line), 16)] for line in lines],
                dtype=np.uint64,
            ).reshape(rows, -1)
            boundary.append(unpack_rows(words, cols).astype(np.uint8))
        return cls(G, list(doc["betti"]), boundary)


def _cache_path(G: PcGroup, N: int, cache_dir: Path) -> Path:
    return Path(cache_dir) / f"{G.name}-{G.digest()[:16]}-N{N}-v{FORMAT_VERSION}.json"


def _load_cached(G: PcGroup, N: int, cache_dir: Path):
    cache_dir = Path(cache_dir)
    if not cache_dir.is_dir():
        return None
    prefix = f"{G.name}-{G.digest()[:16]}-N"
    best = None
    for p in cache_dir.glob(f"{prefix}*-v{FORMAT_VERSION}.json"):
        try:
            n = int(p.name[len(prefix):].split("-v")[0])
        except ValueError:
            continue
        if n >= N and (best is None or n < best[0]):
            best = (n, p)
    if best is None:
        return None
    try:
        R = MinimalResolution.from_json(json.loads(best[1].read_text()), G)
    except (OSError, ValueError, KeyError, ResolutionError) as exc:
        log.warning("ignoring unreadable resolution cache %s: %s", best[1], exc)
        return None
    return truncate(R, N)


def _store(R: MinimalResolution, cache_dir: Path) -> None:
    cache_dir = Path(cache_dir)
    try:
        cache_dir.mkdir(parents=True, exist_ok=True)
        path = _cache_path(R.group, R.length, cache_dir)
        fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(R.to_json(), fh)
        os.replace(tmp, path)
    except OSError as exc:
        log.warning("could not write resolution cache: %s", exc)


def truncate(R: MinimalResolution, N: int) -> MinimalResolution:
    if N > R.length:
        raise ResolutionError("cannot truncate to a longer resolution")
    return MinimalResolution(R.group, R.betti[: N + 1], R.boundary[: N + 1])


def _minimal_generators(G: PcGroup, kernel: np.ndarray) -> np.ndarray:
    """Rows spanning ``kernel`` modulo J * kernel, in reduced echelon form."""
    if kernel.shape[0] == 0:
        return kernel
    K = rref(BitMatrix.from_dense(kernel))
    basis = unpack_rows(K.reduced[: K.rank], kernel.shape[1])
    # J K is spanned by (s - 1) k for pc generators s and k in a basis of K
    parts = []
    for i in range(1, G.k + 1):
        s = G.gen(i).index
        parts.append(realize(G, basis)[np.arange(basis.shape[0]) * G.order + s] ^ basis)
    jk = np.vstack(parts)
    JK = rref(BitMatrix.from_dense(jk))
    piv = np.asarray(JK.pivots, dtype=np.int64)
    if piv.size:
        R = unpack_rows(JK.reduced[: JK.rank], kernel.shape[1])
        basis = basis ^ f2_matmul(basis[:, piv], R)
    Q = rref(BitMatrix.from_dense(basis))
    gens = unpack_rows(Q.reduced[: Q.rank], kernel.shape[1])
    if Q.rank != K.rank - JK.rank:
        raise ResolutionError("J*K is not contained in K")
    return gens


def extend_resolution(G: PcGroup, N: int, cache: bool | Path = True, progress=None) -> MinimalResolution:
    """Minimal resolution of the trivial module through P_N.

    ``cache`` may be ``False``, ``True`` (configured cache directory) or a
    directory.  ``progress`` is called with ``(n, b_n)`` after each degree.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    cache_dir = None
    if cache:
        cache_dir = get_config().cache_dir if cache is True else Path(cache)
        R = _load_cached(G, N, cache_dir)
        if R is not None:
            return R
    order = G.order
    betti = [1]
    boundary: list = [None]
    aug = np.ones((order, 1), dtype=np.uint8)
    prev = aug
    for n in range(1, N + 1):
        red = rref(BitMatrix.from_dense(prev), track=True)
        kernel = np.array(red.left_kernel(), dtype=np.uint8).reshape(-1, prev.shape[0])
        gens = _minimal_generators(G, kernel)
        betti.append(gens.shape[0])
        boundary.append(gens)
        if progress:
            progress(n, gens.shape[0])
        prev = realize(G, gens) if gens.shape[0] else np.zeros((0, 0), dtype=np.uint8)
        if gens.shape[0] == 0:
            betti.extend([0] * (N - n))
            boundary.extend(np.zeros((0, 0), dtype=np.uint8) for _ in range(N - n))
            break
    R = MinimalResolution(G, betti, boundary)
    if cache_dir is not None:
        _store(R, cache_dir)
    return R


def betti_numbers(G: PcGroup, N: int, cache: bool | Path = True) -> list:
    return list(extend_resolution(G, N, cache=cache).betti)


# -- comparison with the bar resolution ---------------------------------------


def _bar_images(R: MinimalResolution, n: int) -> np.ndarray:
    """Rows T_j: the comparison map sends e_j in P_n to sum_t T_j[t] [t].

    Built with the contracting homotopy [g0|t] <- g0[t] of the bar resolution:
    T_j[(g, t)] = sum_i d_n(e_j)_i[g] T_i[t].
    """
    if n in R._bar:
        return R._bar[n]
    N = R.group.order
    if n == 0:
        T = np.ones((1, 1), dtype=np.uint8)
    else:
        prev = _bar_images(R, n - 1)
        b, bp = R.betti[n], R.betti[n - 1]
        check_size(b * N**n, f"comparison map in degree {n} over {R.group.name}")
        D = R.boundary[n].reshape(b, bp, N).transpose(0, 2, 1).reshape(b * N, bp)
        T = f2_matmul(D, prev).reshape(b, N**n)
    R._bar[n] = T
    return T


def transfer_from_bar(R: MinimalResolution, c: Cochain, check: bool = True) -> MinClass:
    """Class of the bar cocycle ``c`` in the minimal model."""
    if c.group != R.group:
        raise CochainError("cochain lives over a different group")
    if c.degree > R.length:
        raise ResolutionError(f"degree {c.degree} exceeds the resolution length {R.length}")
    if check and not is_cocycle(c):
        raise CochainError("transfer needs a cocycle")
    T = _bar_images(R, c.degree)
    vals = c.values.reshape(-1).astype(np.uint8)
    return MinClass.of(c.degree, f2_matmul(T, vals[:, None])[:, 0])


# -- products ----------------------------------------------------------------------


def lift_chain(R: MinimalResolution, a: MinClass, k: int) -> list:
    """Generator images of a chain map F_m: P_{p+m} -> P_m, m = 0..k, lifting ``a``."""
    p = a.degree
    if len(a.coeffs) != R.betti[p]:
        raise ValueError("class has the wrong length for this resolution")
    if p + k > R.length:
        raise ResolutionError(f"lifting a degree-{p} class {k} steps needs length {p + k}")
    key = (p, a.coeffs)
    chain = R._lifts.get(key)
    if chain is None:
        F0 = np.zeros((R.betti[p], R.group.order), dtype=np.uint8)
        F0[:, 0] = a.vector
        chain = [F0]
        R._lifts[key] = chain
    while len(chain) <= k:
        m = len(chain)
        rhs = f2_matmul(R.boundary[p + m], realize(R.group, chain[m - 1])) if R.betti[p + m] else \
            np.zeros((0, R.betti[m - 1] * R.group.order), dtype=np.uint8)
        if rhs.shape[0] == 0 or R.betti[m] == 0:
            if rhs.any():
                raise ResolutionError("lift has no solution")
            chain.append(np.zeros((R.betti[p + m], R.betti[m] * R.group.order), dtype=np.uint8))
            continue
        try:
            chain.append(R.solver(m).solve(rhs))
        except ArithmeticError as exc:
            raise ResolutionError(f"lift of {a} fails at stage {m}") from exc
    return chain[: k + 1]


def lift_class(R: MinimalResolution, a: MinClass, k: int) -> FreeModuleMap:
    """The stage-k component P_{p+k} -> P_k of the lifted chain map."""
    F = lift_chain(R, a, k)[k]
    return FreeModuleMap(R.group, R.betti[a.degree + k], R.betti[k], F)


def product(R: MinimalResolution, a: MinClass, b: MinClass) -> MinClass:
    """Cup product a * b (commutative: coefficients of F_2)."""
    q = b.degree
    F = lift_chain(R, a, q)[q]
    if F.shape[0] == 0:
        return MinClass.of(a.degree + q, [])
    coef = f2_matmul(augment(R.group, F), b.vector[:, None])[:, 0]
    return MinClass.of(a.degree + q, coef)


def unit(R: MinimalResolution) -> MinClass:
    return MinClass.of(0, [1])


def basis_class(R: MinimalResolution, n: int, j: int) -> MinClass:
    v = np.zeros(R.betti[n], dtype=np.uint8)
    v[j] = 1
    return MinClass.of(n, v)


@dataclass
class RingTables:
    """Structure constants of H^{<= maxdeg} in a chosen basis.

    ``table[(p, q)][i, j]`` holds the coordinates of ``e_i^p * e_j^q``;
    ``bases[n]`` has the chosen degree-n basis vectors as rows (standard
    coordinates of the minimal model).
    """

    betti: list
    maxdeg: int
    bases: dict
    table: dict

    def coords(self, c: MinClass) -> np.ndarray:
        """Coordinates of ``c`` in the chosen basis."""
        B = self.bases[c.degree]
        if B.shape[0] == 0:
            return np.zeros(0, dtype=np.uint8)
        inv = _inverse(B)
        return f2_matmul(c.vector[None, :], inv)[0]

    def element(self, degree: int, coords) -> MinClass:
        B = self.bases[degree]
        coords = np.asarray(coords, dtype=np.uint8)
        if B.shape[0] == 0:
            return MinClass.of(degree, [])
        return MinClass.of(degree, f2_matmul(coords[None, :], B)[0])

    def mul(self, a: MinClass, b: MinClass) -> MinClass:
        p, q = a.degree, b.degree
        if p + q > self.maxdeg:
            raise ValueError(f"product lands in degree {p + q} > {self.maxdeg}")
        T = self.table[(p, q)]
        x, y = self.coords(a), self.coords(b)
        if T.size == 0:
            return MinClass.of(p + q, np.zeros(self.betti[p + q], dtype=np.uint8))
        c = (np.einsum("i,j,ijk->k", x.astype(np.int64), y.astype(np.int64), T.astype(np.int64)) & 1)
        return self.element(p + q, c)

    def is_commutative(self) -> bool:
        for (p, q), T in self.table.items():
            if not np.array_equal(T, self.table[(q, p)].transpose(1, 0, 2)):
                return False
        return True


def _inverse(B: np.ndarray) -> np.ndarray:
    n = B.shape[0]
    red = rref(BitMatrix.from_dense(B), track=True)
    if red.rank != n:
        raise ValueError("basis matrix is singular")
    # transform @ B = I (the reduced form of an invertible matrix)
    return unpack_rows(red.transform, n)


def complete_basis(vectors, dim: int) -> np.ndarray:
    """Rows: the given independent vectors, then unit vectors in index order."""
    rows = [np.asarray(v, dtype=np.uint8) for v in vectors]
    if rows and rref(BitMatrix.from_dense(np.array(rows))).rank != len(rows):
        raise ValueError("given classes are linearly dependent")
    for j in range(dim):
        if len(rows) == dim:
            break
        e = np.zeros(dim, dtype=np.uint8)
        e[j] = 1
        trial = np.array(rows + [e])
        if rref(BitMatrix.from_dense(trial)).rank == len(rows) + 1:
            rows.append(e)
    return np.array(rows, dtype=np.uint8).reshape(dim, dim)


def ring_tables(R: MinimalResolution, maxdeg: int, preferred: dict | None = None) -> RingTables:
    """Pairwise products of basis classes in degrees p + q <= maxdeg.

    ``preferred`` maps a degree to classes placed first in that degree's basis;
    the basis is completed by unit vectors in index order.
    """
    if maxdeg > R.length:
        raise ResolutionError(f"tables to degree {maxdeg} need a resolution of that length")
    preferred = preferred or {}
    bases = {}
    for n in range(maxdeg + 1):
        vecs = [c.vector for c in preferred.get(n, [])]
        bases[n] = complete_basis(vecs, R.betti[n])
    table = {}
    for p in range(maxdeg + 1):
        for i in range(R.betti[p]):
            a = MinClass.of(p, bases[p][i])
            chain = lift_chain(R, a, maxdeg - p)
            for q in range(maxdeg - p + 1):
                T = table.setdefault((p, q), np.zeros((R.betti[p], R.betti[q], R.betti[p + q]), np.uint8))
                if R.betti[p + q] == 0 or R.betti[q] == 0:
                    continue
                aug = augment(R.group, chain[q])  # b_{p+q} x b_q
                # product with every basis class of degree q, in standard coordinates
                prods = f2_matmul(bases[q], aug.T)  # b_q x b_{p+q}
                T[i] = f2_matmul(prods, _inverse(bases[p + q]))
    return RingTables(list(R.betti[: maxdeg + 1]), maxdeg, bases, table)
