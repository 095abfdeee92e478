"""
Homological computations on top of covers and the class registry:
projective dimension with recurrence certificates, literal syzygy chains,
torsionless tests, the horseshoe construction, resolutions and the
alternating-sum (Schanuel) comparison, and Nakayama enumeration.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteDimAlgebra, opposite, radical
from .decomposition import IsoClassRegistry, modules_isomorphic
from .linalg import Subspace, matmul, rank, solve, span
from .modules import (
    Module,
    ModuleMap,
    NotExact,
    ShortExactSequence,
    _column_space,
    direct_sum,
    hom_space,
    ideal_times,
    indecomposable_projective,
    kernel_module,
    projective_cover,
    quotient_module,
    regular_module,
    rep_data,
    simples_and_projectives,
    submodule,
    syzygy,
    zero_module,
)

__all__ = [
    "CutoffExceeded",
    "NotAResolution",
    "LengthMismatch",
    "PdResult",
    "class_pd",
    "proj_dim",
    "SyzygyChain",
    "syzygy_chain",
    "TorsionlessResult",
    "is_torsionless",
    "horseshoe",
    "iterated_horseshoe",
    "Resolution",
    "minimal_resolution",
    "padded_resolution",
    "alternating_sums",
    "schanuel_check",
    "NakayamaData",
    "nakayama_data",
    "registry_for",
]

DEFAULT_CUTOFF = 64


class CutoffExceeded(RuntimeError):
    pass


class NotAResolution(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


def registry_for(a: FiniteDimAlgebra, seed: int = 0) -> IsoClassRegistry:
    """The shared per-algebra registry (one session per algebra object and seed)."""
    key = ("registry", seed)
    if key not in a._cache:
        a._cache[key] = IsoClassRegistry(a, seed=seed)
    return a._cache[key]


# ------------------------------------------------------- projective dimension


@dataclass
class PdResult:
    """``status`` is ``finite``, ``infinite-periodic`` or ``unknown``."""

    status: str
    value: int | None = None
    certificate: dict = field(default_factory=dict)
    cutoff: int = DEFAULT_CUTOFF

    @property
    def is_finite(self) -> bool:
        return self.status == "finite"

    @property
    def is_infinite(self) -> bool:
        return self.status == "infinite-periodic"

    def __str__(self):
        if self.is_finite:
            return str(self.value)
        if self.is_infinite:
            return "infinite-periodic"
        return f"unknown(>={self.cutoff})"

    def to_json(self):
        out = {"status": self.status, "value": self.value}
        if self.certificate:
            out["certificate"] = self.certificate
        return out


def _explore(reg: IsoClassRegistry, roots, cutoff: int):
    """Breadth-first walk of the syzygy class graph; returns (depths, complete)."""
    depth = {c: 0 for c in roots}
    queue = deque(roots)
    complete = True
    while queue:
        c = queue.popleft()
        if depth[c] >= cutoff:
            complete = False
            continue
        for d in reg.omega(c):
            if d not in depth:
                depth[d] = depth[c] + 1
                queue.append(d)
    return depth, complete


def _expanded(reg: IsoClassRegistry, c: int) -> bool:
    return reg.entries[c].omega is not None


def _cycle_through(reg: IsoClassRegistry, start: int):
    """Shortest cycle start -> ... -> start in the expanded graph, or None."""
    prev = {start: None}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        if not _expanded(reg, c):
            continue
        for d in sorted(reg.entries[c].omega):
            if d == start:
                path = [c]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return path[::-1] + [start]
            if d not in prev:
                prev[d] = c
                queue.append(d)
    return None


def _path(reg: IsoClassRegistry, src: int, dst: int):
    prev = {src: None}
    queue = deque([src])
    while queue:
        c = queue.popleft()
        if c == dst:
            path = [c]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        if not _expanded(reg, c):
            continue
        for d in sorted(reg.entries[c].omega):
            if d not in prev:
                prev[d] = c
                queue.append(d)
    return None


def class_pd(reg: IsoClassRegistry, cid: int, cutoff: int = DEFAULT_CUTOFF) -> PdResult:
    """Projective dimension of a registered indecomposable class.

    Infinite is reported only with a recurrence certificate: a class ``d``
    that is a summand of both ``Omega^i`` and ``Omega^j`` (``i < j``) of the
    input, found as a path into a cycle of the syzygy class graph.  If
    ``X`` is a nonprojective summand of ``Omega^k(X)`` then ``pd X`` cannot
    be finite.
    """
    if reg.is_projective(cid):
        return PdResult("finite", 0, cutoff=cutoff)
    depth, complete = _explore(reg, [cid], cutoff)
    # finite values and cycle detection by iterative DFS
    state: dict[int, int] = {}
    pd: dict[int, int | None] = {}
    cyclic = None
    stack = [(cid, iter(sorted(reg.entries[cid].omega)) if _expanded(reg, cid) else iter(()))]
    state[cid] = 1
    unknown = set()
    while stack:
        c, it = stack[-1]
        advanced = False
        for d in it:
            if state.get(d) == 1:
                cyclic = d
                break
            if d not in state:
                state[d] = 1
                stack.append((d, iter(sorted(reg.entries[d].omega)) if _expanded(reg, d) else iter(())))
                advanced = True
                break
        if cyclic is not None:
            break
        if advanced:
            continue
        stack.pop()
        state[c] = 2
        if not _expanded(reg, c):
            unknown.add(c)
            pd[c] = None
            continue
        kids = reg.entries[c].omega
        vals = [pd[d] for d in kids]
        pd[c] = None if any(v is None for v in vals) else 1 + max(vals, default=0)
    if cyclic is not None:
        cyc = _cycle_through(reg, cyclic)
        lead = _path(reg, cid, cyclic)
        i = len(lead) - 1
        j = i + len(cyc) - 1
        return PdResult(
            "infinite-periodic",
            None,
            {"recurring_class": cyclic, "path": lead, "cycle": cyc, "levels": [i, j]},
            cutoff,
        )
    if pd.get(cid) is None:
        return PdResult("unknown", None, {"explored": len(depth)}, cutoff)
    return PdResult("finite", pd[cid], cutoff=cutoff)


def proj_dim(m: Module, cutoff: int = DEFAULT_CUTOFF, registry: IsoClassRegistry | None = None) -> PdResult:
    """``pd(M)`` as the maximum over its indecomposable summands."""
    reg = registry or registry_for(m.algebra)
    vec = reg.class_vector(m)
    if not vec:
        return PdResult("finite", 0, {"classes": {}}, cutoff)
    results = {c: class_pd(reg, c, cutoff) for c in sorted(vec)}
    for c, r in results.items():
        if r.is_infinite:
            cert = dict(r.certificate)
            cert["summand_class"] = c
            return PdResult("infinite-periodic", None, cert, cutoff)
    if any(r.status == "unknown" for r in results.values()):
        return PdResult("unknown", None, {}, cutoff)
    return PdResult("finite", max(r.value for r in results.values()), cutoff=cutoff)


# ------------------------------------------------------------ syzygy chains


@dataclass
class SyzygyChain:
    base: Module
    terms: list  # Omega^0 = base, Omega^1, ...
    covers: list
    class_vectors: list
    status: str  # terminated | periodic | cutoff
    levels: tuple | None = None  # (k,) for terminated, (i, j) for periodic

    @property
    def pd(self):
        if self.status == "terminated":
            return self.levels[0]
        return None


def syzygy_chain(
    m: Module,
    cutoff: int = DEFAULT_CUTOFF,
    registry: IsoClassRegistry | None = None,
    max_dim: int = 600,
) -> SyzygyChain:
    """Literal iterated syzygies ``Omega^i(M)``.

    Stops when some ``Omega^k`` is projective (``pd = k``), when the class
    vector of ``Omega^j`` repeats an earlier one (periodic, ``pd`` infinite),
    or at the cutoff (also when the terms outgrow ``max_dim``).
    """
    reg = registry or registry_for(m.algebra)
    terms, covers, vecs = [m], [], []
    for k in range(cutoff + 1):
        v = reg.class_vector(terms[k])
        vecs.append(v)
        if not v:
            return SyzygyChain(m, terms, covers, vecs, "terminated", (k,))
        for i in range(k):
            if vecs[i] == v:
                return SyzygyChain(m, terms, covers, vecs, "periodic", (i, k))
        if k == cutoff or terms[k].dim > max_dim:
            break
        covers.append(projective_cover(terms[k]))
        terms.append(syzygy(terms[k])[0])
    return SyzygyChain(m, terms, covers, vecs, "cutoff", (len(terms) - 1,))


# --------------------------------------------------------------- torsionless


@dataclass
class TorsionlessResult:
    verdict: bool
    embedding_rank: int
    evaluation_rank: int
    dual_dim: int

    def __bool__(self):
        return self.verdict


def _opposite(a: FiniteDimAlgebra) -> FiniteDimAlgebra:
    if "opposite" not in a._cache:
        a._cache["opposite"] = opposite(a)
    return a._cache["opposite"]


def is_torsionless(m: Module) -> TorsionlessResult:
    """Torsionless test computed two ways, with agreement asserted.

    (1) the common kernel of all maps ``M -> A`` is zero (``M`` embeds in a
    free module); (2) the evaluation map ``M -> M**`` is injective, where
    ``M* = Hom_A(M, A)`` is a left module over the opposite algebra.
    """
    a, p, n = m.algebra, m.p, m.dim
    if n == 0:
        return TorsionlessResult(True, 0, 0, 0)
    reg = regular_module(a)
    hs = hom_space(m, reg)
    k = hs.dim
    stacked = hs.basis.reshape(k * a.dim, n) if k else np.zeros((0, n), dtype=np.int64)
    emb_rank = rank(stacked, p) if k else 0
    route1 = emb_rank == n

    if k == 0:
        ev_rank = 0
    else:
        aop = _opposite(a)
        act = np.zeros((a.dim, k, k), dtype=np.int64)
        for b in range(a.dim):
            rb = a.right_mults[b]
            for i in range(k):
                act[b, :, i] = hs.coordinates(matmul(rb, hs.basis[i], p))
        mstar = Module(aop, act, name="M*", check=False)
        dual2 = hom_space(mstar, regular_module(aop))
        cols = []
        for j in range(n):
            ev = hs.basis[:, :, j].T  # d x k, column i = F_i(e_j)
            c = dual2.coordinates(ev)
            if not np.array_equal(dual2.combine(c), ev % p):
                raise AssertionError("evaluation map is not an A^op-homomorphism")
            cols.append(c)
        ev_rank = rank(np.array(cols, dtype=np.int64), p) if dual2.dim else 0
    route2 = ev_rank == n
    if route1 != route2:
        raise AssertionError("torsionless routes disagree")
    return TorsionlessResult(route1, emb_rank, ev_rank, k)


# ------------------------------------------------------------------ horseshoe


@dataclass
class HorseshoeResult:
    ses: ShortExactSequence  # 0 -> Omega(X) -> K -> Omega(Z) -> 0
    middle_projective: Module  # P(X) + P(Z)
    middle_map: ModuleMap  # P(X) + P(Z) -> Y


def _lift_cover(q: ModuleMap, cover) -> np.ndarray:
    """A map ``P(Z) -> Y`` lifting the cover of ``Z`` through ``q: Y -> Z``."""
    y, p = q.source, q.source.p
    a = y.algebra
    rd = rep_data(a)
    blocks = []
    pz = cover.projective
    o = 0
    for t in cover.summand_types:
        pt = indecomposable_projective(a, t)
        gen = np.zeros(pz.dim, dtype=np.int64)
        gen[o : o + pt.dim] = pt._cache["generator"]
        z = matmul(cover.cover.matrix, gen, p)
        e = y.act(rd.idempotents[rd.type_reps[t]])
        sol = solve(matmul(q.matrix, e, p).T, z, p)
        if sol is None:
            raise NotExact("cannot lift through a non-surjective map")
        v = matmul(e, sol, p)
        av = np.einsum("kij,j->ki", y.action, v) % p
        blocks.append((pt._cache["space"].basis @ av % p).T)
        o += pt.dim
    return np.hstack(blocks) if blocks else np.zeros((y.dim, 0), dtype=np.int64)


def horseshoe(ses: ShortExactSequence) -> HorseshoeResult:
    """``0 -> Omega(X) -> K -> Omega(Z) -> 0`` with ``K`` the kernel of ``P(X)+P(Z) -> Y``.

    The end terms are literally the modules returned by :func:`syzygy`.
    """
    x, y, z = ses.left, ses.middle, ses.right
    p = y.p
    cx, cz = projective_cover(x), projective_cover(z)
    px, pz = cx.projective, cz.projective
    lift = _lift_cover(ses.q, cz)
    phi_mat = np.hstack([matmul(ses.i.matrix, cx.cover.matrix, p), lift])
    mid = direct_sum(px, pz) if px.dim + pz.dim else zero_module(y.algebra)
    phi = ModuleMap(mid, y, phi_mat, check=False)
    if not phi.is_surjective():
        raise NotExact("horseshoe map is not surjective")
    k, k_inc = kernel_module(phi, name="K")
    ox, ox_inc = syzygy(x)
    oz, oz_inc = syzygy(z)
    # Omega(X) -> K : u -> (u, 0)
    emb = np.vstack([ox_inc.matrix, np.zeros((pz.dim, ox.dim), dtype=np.int64)])
    kspace = phi.kernel_space()
    left = kspace.coordinates(emb.T).T if ox.dim else np.zeros((k.dim, 0), dtype=np.int64)
    # K -> Omega(Z) : (u, w) -> w, expressed in Omega(Z) coordinates
    w = k_inc.matrix[px.dim :, :]
    ozspace = cz.cover.kernel_space()
    right = ozspace.coordinates(w.T).T if oz.dim else np.zeros((0, k.dim), dtype=np.int64)
    i_map = ModuleMap(ox, k, left, check=False)
    q_map = ModuleMap(k, oz, right, check=False)
    out = ShortExactSequence(i_map, q_map)
    return HorseshoeResult(out, mid, phi)


def iterated_horseshoe(ses: ShortExactSequence, n: int) -> list:
    """The sequences ``0 -> Omega^k(X) -> K_k -> Omega^k(Z) -> 0`` for ``k = 1..n``."""
    out = []
    cur = ses
    for _ in range(n):
        h = horseshoe(cur)
        out.append(h)
        cur = h.ses
    return out


# ------------------------------------------------------------- resolutions


@dataclass
class Resolution:
    """``... -> C_1 -> C_0 -> X -> 0`` with ``maps[0]: C_0 -> X``, ``maps[i]: C_i -> C_{i-1}``."""

    base: Module
    terms: list
    maps: list
    kind: str = "projective"

    @property
    def length(self) -> int:
        return len(self.terms)

    def kernel(self, n: int) -> Module:
        """``ker(maps[n-1])`` (``n >= 1``), the n-th kernel of the resolution."""
        if n < 1 or n > len(self.maps):
            raise LengthMismatch(f"resolution has {len(self.maps)} maps, kernel {n} requested")
        return kernel_module(self.maps[n - 1])[0]

    def check(self) -> bool:
        if not self.maps:
            return True
        if not self.maps[0].is_surjective():
            return False
        for i in range(1, len(self.maps)):
            f, g = self.maps[i], self.maps[i - 1]
            if f.target is not g.source or (g @ f).matrix.any():
                return False
            if f.image_space() != g.kernel_space():
                return False
        return True


def minimal_resolution(x: Module, length: int) -> Resolution:
    terms, maps = [], []
    cur, cur_inc = x, None
    for i in range(length):
        cov = projective_cover(cur)
        p0 = cov.projective
        d = cov.cover if cur_inc is None else ModuleMap(p0, cur_inc.target, matmul(cur_inc.matrix, cov.cover.matrix, x.p), check=False)
        terms.append(p0)
        maps.append(d)
        cur, cur_inc = kernel_module(cov.cover)
    return Resolution(x, terms, maps)


def padded_resolution(res: Resolution, step: int, extra: Module) -> Resolution:
    """Add ``extra`` to terms ``step`` and ``step + 1`` with the identity between the copies."""
    if step + 1 >= res.length:
        raise LengthMismatch("padding needs two consecutive terms")
    p = res.base.p
    terms = list(res.terms)
    maps = list(res.maps)
    a_old, b_old = terms[step], terms[step + 1]
    a_new = direct_sum(a_old, extra)
    b_new = direct_sum(b_old, extra)
    terms[step], terms[step + 1] = a_new, b_new
    q = extra.dim
    # maps[step]: C_step + Q -> C_{step-1} (or X) as (d, 0)
    d = maps[step]
    maps[step] = ModuleMap(a_new, d.target, np.hstack([d.matrix, np.zeros((d.target.dim, q), dtype=np.int64)]), check=False)
    # maps[step+1]: C_{step+1} + Q -> C_step + Q as d (+) id
    d1 = maps[step + 1]
    top = np.hstack([d1.matrix, np.zeros((a_old.dim, q), dtype=np.int64)])
    bot = np.hstack([np.zeros((q, b_old.dim), dtype=np.int64), np.eye(q, dtype=np.int64)])
    maps[step + 1] = ModuleMap(b_new, a_new, np.vstack([top, bot]), check=False)
    if step + 2 < len(maps):
        d2 = maps[step + 2]
        maps[step + 2] = ModuleMap(d2.source, b_new, np.vstack([d2.matrix, np.zeros((q, d2.source.dim), dtype=np.int64)]), check=False)
    return Resolution(res.base, terms, maps, res.kind)


def alternating_sums(res1: Resolution, res2: Resolution, n: int):
    """The two sides ``M + Q_{n-1} + P_{n-2} + ...`` and ``N + P_{n-1} + Q_{n-2} + ...``."""
    if res1.length < n or res2.length < n:
        raise LengthMismatch(f"both resolutions need at least {n} terms")
    left = [res1.kernel(n)]
    right = [res2.kernel(n)]
    for i in range(n):
        if (n - 1 - i) % 2 == 0:
            left.append(res2.terms[i])
            right.append(res1.terms[i])
        else:
            left.append(res1.terms[i])
            right.append(res2.terms[i])
    return left, right


def schanuel_check(res1: Resolution, res2: Resolution, n: int, registry: IsoClassRegistry | None = None) -> bool:
    """Decide whether the two alternating direct sums are isomorphic.

    Both sides are compared through the multisets of indecomposable
    summand classes, which by Krull-Schmidt decides isomorphism of the sums.
    """
    reg = registry or registry_for(res1.base.algebra)
    if res1.base is not res2.base and not modules_isomorphic(res1.base, res2.base, reg):
        raise NotAResolution("the resolutions resolve different modules")
    for r in (res1, res2):
        if not r.check():
            raise NotAResolution("sequence is not exact")
    left, right = alternating_sums(res1, res2, n)
    vl, vr = Counter(), Counter()
    for mod in left:
        vl.update(reg.full_class_vector(mod))
    for mod in right:
        vr.update(reg.full_class_vector(mod))
    return vl == vr


# ------------------------------------------------------------------- Nakayama


@dataclass
class NakayamaData:
    indecomposables: list
    certificate: dict


def _layer_vectors(m: Module) -> list:
    """Per radical layer, the multiplicity of each simple type."""
    a = m.algebra
    rd = rep_data(a)
    rad = radical(a)
    cur = Subspace.full(m.dim, m.p)
    spaces = [cur]
    while cur.dim:
        cur = ideal_times(rad, m, cur)
        spaces.append(cur)

    def eps_dim(e, s: Subspace) -> int:
        if s.dim == 0:
            return 0
        return _column_space([m.act(e) @ s.basis.T], m.dim, m.p).dim

    out = []
    for top_s, low in zip(spaces, spaces[1:]):
        out.append([eps_dim(rd.idempotents[r], top_s) - eps_dim(rd.idempotents[r], low) for r in rd.type_reps])
    return out


def _uniserial_projectives(a: FiniteDimAlgebra):
    layers = []
    _, projs = simples_and_projectives(a)
    for pm, t in projs:
        lv = _layer_vectors(pm)
        layers.append(lv)
        if any(sum(v) != 1 for v in lv):
            return None, layers
    return projs, layers


def nakayama_data(a: FiniteDimAlgebra, registry: IsoClassRegistry | None = None):
    """All indecomposables of a Nakayama algebra, or ``None`` if it is not Nakayama.

    Every indecomposable projective of ``a`` and of its opposite must be
    uniserial; the indecomposables are then the nonzero ``P / rad^j P``.
    """
    projs, layers = _uniserial_projectives(a)
    if projs is None:
        return None
    projs_op, layers_op = _uniserial_projectives(_opposite(a))
    if projs_op is None:
        return None
    reg = registry or registry_for(a)
    rad = radical(a)
    mods = []
    for pm, t in projs:
        cur = Subspace.full(pm.dim, pm.p)
        for j in range(1, len(layers[t]) + 1):
            cur = ideal_times(rad, pm, cur)
            q, _ = quotient_module(pm, cur, name=f"P{t}/rad^{j}", check=False)
            mods.append(q)
    ids = [reg.insert(mm) for mm in mods]
    if len(set(ids)) != len(ids):
        raise AssertionError("radical quotients of projectives are not pairwise distinct")
    cert = {
        "projective_layers": [[list(map(int, v)) for v in lv] for lv in layers],
        "opposite_layers": [[list(map(int, v)) for v in lv] for lv in layers_op],
        "count": len(mods),
    }
    return NakayamaData(mods, cert)
