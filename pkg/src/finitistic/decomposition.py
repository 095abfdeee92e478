"""
Krull-Schmidt decomposition, isomorphism testing of indecomposables and
the registry of isomorphism classes.

Splitting works on the endomorphism ring: the radical of ``End(M)`` is the
kernel of the trace form ``(f, g) -> tr(f g)`` (valid since ``dim M < p``).
If the semisimple quotient is not one-dimensional, a random endomorphism
whose minimal polynomial has coprime factors gives exact idempotents by
the Chinese remainder theorem, so no lifting iteration is needed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .algebra import FieldTooSmall
from .linalg import Subspace, kernel, matmul, span
from .modules import (
    AlgebraMismatch,
    Module,
    ModuleMap,
    direct_sum,
    hom_space,
    projective_cover,
    radical_layers,
    split_idempotent,
    syzygy,
)

__all__ = [
    "EndRing",
    "end_ring",
    "Summand",
    "Decomposition",
    "is_indecomposable",
    "decompose",
    "are_isomorphic",
    "modules_isomorphic",
    "IsoClassRegistry",
]


@dataclass
class EndRing:
    module: Module
    basis: np.ndarray  # (k, n, n)
    radical: Subspace  # in coefficient coordinates

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def table(self) -> np.ndarray:
        """Multiplication table: ``table[i, j]`` = coordinates of ``basis[i] @ basis[j]``."""
        hs = hom_space(self.module, self.module)
        p = self.module.p
        k = self.dim
        out = np.zeros((k, k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                out[i, j] = hs.coordinates(matmul(self.basis[i], self.basis[j], p))
        return out


def end_ring(m: Module) -> EndRing:
    if "end" in m._cache:
        return m._cache["end"]
    p = m.p
    if m.dim >= p:
        raise FieldTooSmall("module dimension must be below p for the trace criterion")
    basis = hom_space(m, m).basis
    k = basis.shape[0]
    flat = basis.reshape(k, -1)
    flat_t = basis.transpose(0, 2, 1).reshape(k, -1)
    gram = (flat @ flat_t.T) % p  # tr(F_i F_j)
    er = EndRing(m, basis, kernel(gram, p) if k else Subspace.zero(0, p))
    m._cache["end"] = er
    return er


def _split(m: Module, rng):
    er = end_ring(m)
    p = m.p
    unit = np.eye(m.dim, dtype=np.int64)
    return split_idempotent(er.basis, er.radical.dim, unit, lambda x, y: matmul(x, y, p), p, rng)


def is_indecomposable(m: Module, seed: int = 0):
    """``(verdict, certificate)``.

    The certificate is ``("local", degree)`` for an indecomposable module
    (``End/rad`` is a field of that degree) or ``("idempotent", e)`` with a
    nontrivial idempotent endomorphism.
    """
    if m.dim == 0:
        raise ValueError("the zero module is neither decomposable nor indecomposable")
    res = _split(m, np.random.default_rng(seed))
    if res[0] == "local":
        return True, res
    return False, ("idempotent", res[1][0])


@dataclass
class Summand:
    module: Module
    inclusion: np.ndarray  # n x m
    projection: np.ndarray  # m x n
    certificate: tuple


@dataclass
class Decomposition:
    source: Module
    summands: list = field(default_factory=list)

    def modules(self) -> list:
        return [s.module for s in self.summands]

    def check(self) -> bool:
        """Inclusions after projections sum to the identity and are module maps."""
        n, p = self.source.dim, self.source.p
        total = np.zeros((n, n), dtype=np.int64)
        for s in self.summands:
            if not ModuleMap(s.module, self.source, s.inclusion, check=False).is_homomorphism():
                return False
            if not np.array_equal(matmul(s.projection, s.inclusion, p), np.eye(s.module.dim, dtype=np.int64)):
                return False
            total = (total + s.inclusion @ s.projection) % p
        return bool(np.array_equal(total, np.eye(n, dtype=np.int64)))


def _image_piece(m: Module, e: np.ndarray):
    p = m.p
    u = span(e.T, p, m.dim)
    piv = list(u.pivots)
    inc = u.basis.T
    prj = e[piv, :]
    act = np.einsum("ij,kjl,lm->kim", prj, m.action, inc) % p
    return Module(m.algebra, act, check=False), inc, prj


def decompose(m: Module, seed: int = 0) -> Decomposition:
    """Split ``m`` into indecomposables, keeping inclusion/projection witnesses."""
    rng = np.random.default_rng(seed)
    p = m.p
    out = Decomposition(m)
    if m.dim == 0:
        return out
    stack = [(m, np.eye(m.dim, dtype=np.int64), np.eye(m.dim, dtype=np.int64))]
    while stack:
        x, inc, prj = stack.pop()
        res = _split(x, rng)
        if res[0] == "local":
            out.summands.append(Summand(x, inc, prj, res))
            continue
        for e in reversed(res[1]):
            y, i2, p2 = _image_piece(x, e)
            stack.append((y, matmul(inc, i2, p), matmul(p2, prj, p)))
    out.summands.sort(key=lambda s: (s.module.dim, _first_pivot(s.inclusion)))
    return out


def _first_pivot(inc: np.ndarray) -> int:
    nz = np.flatnonzero(inc.any(axis=1))
    return int(nz[0]) if nz.size else -1


def _nilpotent(z: np.ndarray, p: int) -> bool:
    n = z.shape[0]
    k = 1
    while k < n:
        z = matmul(z, z, p)
        if not z.any():
            return True
        k *= 2
    return not z.any()


def are_isomorphic(m: Module, n: Module) -> bool:
    """Isomorphism test for indecomposable modules.

    ``m`` is isomorphic to ``n`` iff the dimensions agree and some composite
    ``g f`` (``f: m -> n``, ``g: n -> m`` from hom bases) is not nilpotent,
    i.e. lies outside ``rad End(m)``.
    """
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("modules over different algebras")
    if m.dim != n.dim:
        return False
    if m.dim == 0:
        return True
    if m.block_dims != n.block_dims:
        return False
    hf = hom_space(m, n).basis
    if hf.shape[0] == 0:
        return False
    hg = hom_space(n, m).basis
    p = m.p
    for g in hg:
        gf = np.einsum("ij,kjl->kil", g, hf) % p
        for z in gf:
            if not _nilpotent(z, p):
                return True
    return False


@dataclass
class ClassEntry:
    cid: int
    module: Module
    projective: bool
    key: tuple
    omega: Counter | None = None  # nonprojective classes of the syzygy
    omega_projective: Counter | None = None


class IsoClassRegistry:
    """Isomorphism classes of indecomposable modules over one algebra.

    Single-threaded: insertion mutates the registry.  Class ids are
    assigned in insertion order, so a fixed sequence of calls with a fixed
    seed yields the same ids.
    """

    def __init__(self, algebra, seed: int = 0):
        self.algebra = algebra
        self.seed = seed
        self.entries: list[ClassEntry] = []
        self._by_key: dict = {}
        self._calls = 0
        self.log: list = []

    def __len__(self):
        return len(self.entries)

    def _next_seed(self) -> int:
        self._calls += 1
        return self.seed * 1_000_003 + self._calls

    @staticmethod
    def key(m: Module) -> tuple:
        return (m.dim, m.block_dims, radical_layers(m))

    def find(self, m: Module):
        for cid in self._by_key.get(self.key(m), []):
            if are_isomorphic(self.entries[cid].module, m):
                return cid
        return None

    def insert(self, m: Module) -> int:
        """Class id of an indecomposable module, registering it if new."""
        if m.algebra is not self.algebra:
            raise AlgebraMismatch("module is over a different algebra")
        k = self.key(m)
        cid = self.find(m)
        if cid is not None:
            return cid
        cid = len(self.entries)
        proj = projective_cover(m).projective.dim == m.dim
        self.entries.append(ClassEntry(cid, m, proj, k))
        self._by_key.setdefault(k, []).append(cid)
        self.log.append(("new", cid, m.dim, proj))
        return cid

    def is_projective(self, cid: int) -> bool:
        return self.entries[cid].projective

    def full_class_vector(self, m: Module, seed: int | None = None) -> Counter:
        """Multiset of class ids of all indecomposable summands (projectives kept)."""
        dec = decompose(m, self._next_seed() if seed is None else seed)
        return Counter(self.insert(s.module) for s in dec.summands)

    def class_vector(self, m: Module, seed: int | None = None) -> Counter:
        """The image of ``m`` in K(A): projective classes dropped."""
        full = self.full_class_vector(m, seed)
        return Counter({c: k for c, k in full.items() if not self.entries[c].projective})

    def omega(self, cid: int) -> Counter:
        """Nonprojective classes of the syzygy of a class representative (memoized)."""
        e = self.entries[cid]
        if e.omega is None:
            if e.projective:
                e.omega, e.omega_projective = Counter(), Counter()
            else:
                om, _ = syzygy(e.module)
                full = self.full_class_vector(om)
                e.omega = Counter({c: k for c, k in full.items() if not self.entries[c].projective})
                e.omega_projective = Counter({c: k for c, k in full.items() if self.entries[c].projective})
        return e.omega

    def representative_sum(self, vector: Counter) -> Module:
        mods = [self.entries[c].module for c, k in sorted(vector.items()) for _ in range(k)]
        if not mods:
            from .modules import zero_module

            return zero_module(self.algebra)
        return direct_sum(*mods)

    def export(self) -> list:
        return [
            {
                "class_id": e.cid,
                "dim": e.module.dim,
                "radical_layers": list(e.key[2]),
                "projective": e.projective,
            }
            for e in self.entries
        ]


def modules_isomorphic(m: Module, n: Module, registry: IsoClassRegistry | None = None) -> bool:
    """Isomorphism of arbitrary modules via their indecomposable summands."""
    if m.dim != n.dim:
        return False
    reg = registry or IsoClassRegistry(m.algebra)
    return reg.full_class_vector(m) == reg.full_class_vector(n)
