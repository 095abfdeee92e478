"""
Bound quiver presentations and the algebras they define.

Path convention: ``a*b`` means "traverse a, then b", so the target of ``a``
must be the source of ``b``.  With this convention the vertex idempotents
satisfy ``e_s * a = a = a * e_t`` for an arrow ``a: s -> t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraError, FieldTooSmall, FiniteDimAlgebra
from .linalg import check_prime, rref

__all__ = [
    "Arrow",
    "Quiver",
    "BoundQuiverPresentation",
    "NotAdmissible",
    "NonComposablePath",
    "UnknownSymbol",
    "build_algebra",
    "PathData",
]


class NotAdmissible(AlgebraError):
    pass


class NonComposablePath(ValueError):
    pass


class UnknownSymbol(KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown symbol"


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex identifiers must be distinct")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be distinct")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise UnknownSymbol(f"arrow {a.name} has an endpoint that is not a vertex")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise UnknownSymbol(f"unknown arrow {name!r}")

    def path_endpoints(self, path) -> tuple[str, str]:
        """Source and target of a nonempty arrow sequence, checking composability."""
        arrows = [self.arrow(n) for n in path]
        for x, y in zip(arrows, arrows[1:]):
            if x.target != y.source:
                raise NonComposablePath(
                    f"{'*'.join(path)}: {x.name} ends at {x.target} but {y.name} starts at {y.source}"
                )
        return arrows[0].source, arrows[-1].target


@dataclass(frozen=True)
class BoundQuiverPresentation:
    """Quiver with relations; every path of length >= ``nilpotency`` is zero.

    A relation is a tuple of ``(coefficient, path)`` with ``path`` a tuple of
    arrow names.
    """

    quiver: Quiver
    relations: tuple = ()
    nilpotency: int = 2
    name: str = ""

    def __post_init__(self):
        rels = tuple(tuple((int(c), tuple(path)) for c, path in r) for r in self.relations)
        object.__setattr__(self, "relations", rels)
        if self.nilpotency < 2:
            raise ValueError("nilpotency bound must be at least 2")
        for r in rels:
            ends = {self.quiver.path_endpoints(path) for _, path in r if path}
            if len(ends) > 1:
                raise NonComposablePath("relation mixes paths that are not parallel")


# A path is (source_vertex, target_vertex, arrows) ; trivial paths have no arrows.


def _enumerate_paths(q: Quiver, max_len: int):
    out = [(v, v, ()) for v in q.vertices]
    frontier = [(a.source, a.target, (a.name,)) for a in q.arrows]
    length = 1
    while frontier and length <= max_len:
        out.extend(frontier)
        nxt = []
        if length < max_len:
            for s, t, arr in frontier:
                for a in q.arrows:
                    if a.source == t:
                        nxt.append((s, a.target, arr + (a.name,)))
        frontier = nxt
        length += 1
    return out


def _path_label(path) -> str:
    s, _, arrows = path
    return "*".join(arrows) if arrows else f"e{s}"


@dataclass
class PathData:
    """Reduction of path monomials to the chosen basis of a bound quiver algebra."""

    quiver: Quiver
    nilpotency: int
    p: int
    paths: list
    index: dict
    reducer: np.ndarray
    basis_paths: list = field(default_factory=list)

    def monomial(self, s: str, t: str, arrows) -> np.ndarray:
        """Coordinates of a path (zero if it is too long)."""
        arrows = tuple(arrows)
        if len(arrows) >= self.nilpotency:
            return np.zeros(self.reducer.shape[1], dtype=np.int64)
        return self.reducer[self.index[(s, t, arrows)]].copy()

    def path(self, arrows) -> np.ndarray:
        arrows = tuple(arrows)
        if not arrows:
            raise ValueError("use idempotent() for trivial paths")
        s, t = self.quiver.path_endpoints(arrows)
        return self.monomial(s, t, arrows)

    def idempotent(self, v: str) -> np.ndarray:
        if v not in self.quiver.vertices:
            raise UnknownSymbol(f"unknown vertex {v!r}")
        return self.monomial(v, v, ())

    def arrow(self, name: str) -> np.ndarray:
        return self.path((name,))


def build_algebra(pres: BoundQuiverPresentation, p: int, name: str | None = None) -> FiniteDimAlgebra:
    """Path algebra modulo relations and all paths of length >= nilpotency."""
    p = check_prime(p)
    q, t = pres.quiver, pres.nilpotency
    for r in pres.relations:
        for _, path in r:
            if len(path) < 2:
                raise NotAdmissible(f"relation term {'*'.join(path) or '(trivial)'} has length < 2")
    paths = _enumerate_paths(q, t - 1)
    index = {pth: i for i, pth in enumerate(paths)}
    n = len(paths)
    by_end_target = {}
    by_start_source = {}
    for pth in paths:
        by_end_target.setdefault(pth[1], []).append(pth)
        by_start_source.setdefault(pth[0], []).append(pth)

    rows = []
    for r in pres.relations:
        src, tgt = q.path_endpoints(r[0][1])
        shortest = min(len(path) for _, path in r)
        for x in by_end_target.get(src, []):
            room = t - 1 - shortest - len(x[2])
            if room < 0:
                continue
            for y in by_start_source.get(tgt, []):
                if len(y[2]) > room:
                    continue
                v = np.zeros(n, dtype=np.int64)
                for c, path in r:
                    full = x[2] + tuple(path) + y[2]
                    if len(full) < t:
                        v[index[(x[0], y[1], full)]] += c
                v %= p
                if v.any():
                    rows.append(v)

    # eliminate late monomials first: columns reversed, so pivots land on the
    # longest paths and the shortest ones survive as basis elements
    if rows:
        rel = np.array(rows, dtype=np.int64)[:, ::-1]
        R, rk, piv = rref(rel, p)
        R = R[:rk, ::-1]
        pivots = [n - 1 - c for c in piv]
    else:
        R = np.zeros((0, n), dtype=np.int64)
        pivots = []
    pivset = set(pivots)
    keep = [i for i in range(n) if i not in pivset]
    d = len(keep)
    if d >= p:
        raise FieldTooSmall(f"algebra has dim {d} >= p = {p}")

    # reducer[i] = coordinates (in kept monomials) of the normal form of path i
    reducer = np.zeros((n, d), dtype=np.int64)
    pos = {k: j for j, k in enumerate(keep)}
    for k in keep:
        reducer[k, pos[k]] = 1
    for row, pc in zip(R, pivots):
        # path_pc = -(sum of other terms in the row)
        reducer[pc] = (-row[keep]) % p

    struct = np.zeros((d, d, d), dtype=np.int64)
    for i, ki in enumerate(keep):
        s1, t1, a1 = paths[ki]
        for j, kj in enumerate(keep):
            s2, t2, a2 = paths[kj]
            if t1 != s2:
                continue
            full = a1 + a2
            if len(full) >= t:
                continue
            if not a1:
                full_key = paths[kj]
            elif not a2:
                full_key = paths[ki]
            else:
                full_key = (s1, t2, full)
            struct[i, j] = reducer[index[full_key]]
    unit = np.zeros(d, dtype=np.int64)
    for v in q.vertices:
        unit[pos[index[(v, v, ())]]] = 1
    labels = [_path_label(paths[k]) for k in keep]
    pdata = PathData(q, t, p, paths, index, reducer, [paths[k] for k in keep])
    idem = np.array([pdata.idempotent(v) for v in q.vertices], dtype=np.int64)
    extra = {
        "path_data": pdata,
        "presentation": pres,
        "vertex_idempotents": idem,
        "arrow_elements": np.array([pdata.arrow(a.name) for a in q.arrows], dtype=np.int64).reshape(
            len(q.arrows), d
        ),
    }
    return FiniteDimAlgebra(p, struct, unit, labels=labels, name=name or pres.name, check=True, extra=extra)
