"""
Finite-dimensional left modules, module maps, hom spaces, projective
covers and syzygies.

A module over an algebra ``A`` of dimension ``d`` is stored as an array
``action`` of shape ``(d, n, n)``: ``action[k]`` is the matrix of the basis
element ``b_k`` acting on column vectors, so ``x . v = act(x) @ v`` and
``act(x * y) = act(x) @ act(y)``.  A module map ``M -> N`` is an
``N.dim x M.dim`` matrix.

Everything that needs a splitting of the algebra (projectives, covers,
homomorphisms) goes through :func:`rep_data`, which finds a complete set
of primitive orthogonal idempotents once per algebra and caches it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .algebra import FiniteDimAlgebra, IdealOrSubspace, ideal_power, radical
from .linalg import (
    Subspace,
    factor,
    matmul,
    min_poly_generic,
    nullspace,
    poly_eval_matrix,
    poly_gcdex,
    poly_mul,
    poly_pow,
    poly_quo,
    poly_rem,
    rank,
    span,
)

__all__ = [
    "AlgebraMismatch",
    "UnsupportedField",
    "BudgetExhausted",
    "InvalidModule",
    "NotExact",
    "Module",
    "ModuleMap",
    "ShortExactSequence",
    "ProjectiveCover",
    "RepData",
    "rep_data",
    "split_idempotent",
    "module_from_arrows",
    "module_from_basis_action",
    "regular_module",
    "zero_module",
    "submodule",
    "quotient_module",
    "kernel_module",
    "image_module",
    "direct_sum",
    "ideal_times",
    "radical_of_module",
    "radical_layers",
    "top",
    "restrict_along",
    "hom_space",
    "HomSpace",
    "simples_and_projectives",
    "indecomposable_projective",
    "projective_cover",
    "syzygy",
    "is_projective",
]


class AlgebraMismatch(ValueError):
    pass


class UnsupportedField(ValueError):
    """A simple module whose endomorphism ring is bigger than GF(p)."""


class BudgetExhausted(RuntimeError):
    """No splitting element was found within the search budget."""


class InvalidModule(ValueError):
    pass


class NotExact(ValueError):
    pass


# ----------------------------------------------------------------- helpers


def _column_space(mats, n: int, p: int) -> Subspace:
    """Span of all columns of the given ``n x *`` matrices."""
    if n == 0:
        return Subspace.zero(0, p)
    cols = [np.asarray(m, dtype=np.int64).reshape(n, -1).T for m in mats]
    cols = [c for c in cols if c.size]
    if not cols:
        return Subspace.zero(n, p)
    return span(np.vstack(cols), p, n)


def _generating_set(a: FiniteDimAlgebra) -> np.ndarray:
    """Basis elements spanning a complement of ``rad^2``; they generate ``a``.

    If ``V + J^2 = A`` for a nilpotent ideal ``J`` then ``J^k`` lies in the
    subalgebra generated by ``V`` plus ``J^(k+1)`` for every k, so ``V``
    generates.
    """
    if "generating_set" not in a._cache:
        r2 = ideal_power(radical(a), 2).space
        keep = r2.complement()
        a._cache["generating_set"] = np.eye(a.dim, dtype=np.int64)[keep]
    return a._cache["generating_set"]


def _eAf(a: FiniteDimAlgebra, e, f) -> Subspace:
    left = a.products(np.asarray(e)[None, :], np.eye(a.dim, dtype=np.int64))
    return span(a.products(left, np.asarray(f)[None, :]), a.p, a.dim)


def _sandwich(a: FiniteDimAlgebra, e, space: Subspace, f) -> Subspace:
    if space.dim == 0:
        return Subspace.zero(a.dim, a.p)
    left = a.products(np.asarray(e)[None, :], space.basis)
    return span(a.products(left, np.asarray(f)[None, :]), a.p, a.dim)


# ------------------------------------------------------ idempotent splitting


def split_idempotent(basis, rad_dim: int, unit, mul, p: int, rng, budget: int = 24):
    """Look for a nontrivial idempotent decomposition of ``unit`` in a ring.

    ``basis`` spans the ring (elements are arrays of any fixed shape),
    ``rad_dim`` is the dimension of its radical and ``mul(x, y)`` the
    product.  Returns ``("local", degree)`` when the ring is local (its
    semisimple quotient is a field of that degree over GF(p)) or
    ``("split", [e_1, ..., e_r])`` with ``r >= 2`` nonzero orthogonal
    idempotents summing to ``unit``.

    Random elements are tried first; a deterministic pass over basis
    elements and pairwise sums follows, then :class:`BudgetExhausted`.
    """
    basis = np.asarray(basis, dtype=np.int64)
    k = basis.shape[0]
    semis = k - rad_dim
    if semis == 1:
        return ("local", 1)

    def attempt(x):
        mu = min_poly_generic(unit, lambda y: mul(y, x), p)
        facs = factor(mu, p)
        if len(facs) >= 2:
            return ("split", _crt_idempotents(mu, facs, x, unit, mul, p))
        if len(facs) == 1 and len(facs[0][0]) - 1 == semis:
            return ("local", semis)
        return None

    flat = basis.reshape(k, -1)
    shape = basis.shape[1:]
    for _ in range(budget):
        c = rng.integers(0, p, size=k)
        res = attempt(((c @ flat) % p).reshape(shape))
        if res is not None:
            return res
    candidates = [basis[i] for i in range(k)]
    candidates += [(basis[i] + basis[j]) % p for i in range(k) for j in range(i + 1, k)]
    for x in candidates:
        res = attempt(x)
        if res is not None:
            return res
    raise BudgetExhausted(f"no splitting element among {budget} random and {len(candidates)} fixed candidates")


def _poly_at(f, x, unit, mul, p):
    acc = np.zeros_like(unit)
    for c in reversed(f):
        acc = (mul(acc, x) + c * unit) % p
    return acc


def _crt_idempotents(mu, facs, x, unit, mul, p):
    out = []
    for f, m in facs:
        q = poly_pow(f, m, p)
        g = poly_quo(mu, q, p)
        s, t, h = poly_gcdex(q, g, p)
        assert h == (1,), "coprime factors must have gcd 1"
        poly = poly_rem(poly_mul(t, g, p), mu, p)
        e = _poly_at(poly, x, unit, mul, p)
        assert np.array_equal(mul(e, e), e) and e.any(), "CRT element is not a nonzero idempotent"
        out.append(e)
    return out


# -------------------------------------------------------- representation data


@dataclass
class RepData:
    """Splitting data of an algebra.

    ``idempotents`` are primitive, orthogonal and sum to 1.  Idempotents
    with isomorphic projectives share a ``type``; ``type_reps[t]`` is the
    index of the idempotent used for type ``t``.  ``generators`` lists
    ``(i, j, g)`` with ``g`` in ``e_i A e_j``; together with the idempotents
    they generate the algebra.
    """

    algebra: FiniteDimAlgebra
    idempotents: np.ndarray
    types: list
    type_reps: list
    generators: list
    split: list  # per type: True when the simple has End = GF(p)
    local_degree: list = field(default_factory=list)

    @property
    def n_types(self) -> int:
        return len(self.type_reps)


def _primitive_split(a: FiniteDimAlgebra, rad: Subspace, e, rng):
    R = _eAf(a, e, e)
    rad_e = _sandwich(a, e, rad, e)
    return split_idempotent(R.basis, rad_e.dim, e, a.mul, a.p, rng)


def rep_data(a: FiniteDimAlgebra, seed: int = 0) -> RepData:
    """Primitive idempotents, projective types and homogeneous generators (cached)."""
    if "rep" in a._cache:
        return a._cache["rep"]
    rng = np.random.default_rng(seed)
    rad = radical(a).space
    idem = []
    degrees = []
    if "vertex_idempotents" in a.extra:
        stack = [np.asarray(v, dtype=np.int64) for v in a.extra["vertex_idempotents"]][::-1]
    else:
        stack = [a.unit.copy()]
    while stack:
        e = stack.pop()
        res = _primitive_split(a, rad, e, rng)
        if res[0] == "local":
            idem.append(e)
            degrees.append(res[1])
        else:
            stack.extend(res[1][::-1])
    idem = np.array(idem, dtype=np.int64).reshape(-1, a.dim)
    if not np.array_equal(idem.sum(axis=0) % a.p, a.unit):
        raise AssertionError("primitive idempotents do not sum to the unit")

    types: list[int] = []
    reps: list[int] = []
    for i, e in enumerate(idem):
        for t, r in enumerate(reps):
            f = idem[r]
            # A e ~ A f  iff  f (A e / rad e) != 0
            if _eAf(a, f, e).dim > _sandwich(a, f, rad, e).dim:
                types.append(t)
                break
        else:
            types.append(len(reps))
            reps.append(i)
    split = [degrees[r] == 1 for r in reps]

    gens = []
    r = len(idem)
    if "arrow_elements" in a.extra and "vertex_idempotents" in a.extra and r == len(a.extra["vertex_idempotents"]):
        for g in a.extra["arrow_elements"]:
            for i in range(r):
                gi = a.mul(idem[i], g)
                if not gi.any():
                    continue
                for j in range(r):
                    gij = a.mul(gi, idem[j])
                    if gij.any():
                        gens.append((i, j, gij))
    else:
        r2 = ideal_power(radical(a), 2).space
        for i in range(r):
            for j in range(r):
                block = _eAf(a, idem[i], idem[j])
                if block.dim == 0:
                    continue
                inner = _sandwich(a, idem[i], r2, idem[j])
                cur = inner
                for v in block.basis:
                    if not cur.contains(v):
                        gens.append((i, j, v.copy()))
                        cur = span(np.vstack([cur.basis, v[None, :]]), a.p, a.dim)
    data = RepData(a, idem, types, reps, gens, split, degrees)
    a._cache["rep"] = data
    return data


# ------------------------------------------------------------------ modules


class Module:
    """A left module given by one action matrix per basis element of its algebra."""

    def __init__(self, algebra: FiniteDimAlgebra, action, name: str = "", check: bool = True):
        p = algebra.p
        act = np.asarray(action, dtype=np.int64) % p
        if act.ndim != 3 or act.shape[0] != algebra.dim or act.shape[1] != act.shape[2]:
            raise InvalidModule(f"action must have shape ({algebra.dim}, n, n), got {act.shape}")
        if act.shape[1] >= p:
            raise InvalidModule("module dimension must stay below p")
        act.setflags(write=False)
        self.algebra = algebra
        self.action = act
        self.dim = act.shape[1]
        self.p = p
        self.name = name
        self._cache: dict = {}
        if check:
            self.verify()

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"Module({label}dim={self.dim} over {self.algebra.name or '?'})"

    def verify(self):
        a, p, n = self.algebra, self.p, self.dim
        if not np.array_equal(self.act(a.unit), np.eye(n, dtype=np.int64)):
            raise InvalidModule("the unit does not act as the identity")
        if n == 0:
            return
        gens = _generating_set(a)
        for g in gens:
            rg = self.act(g)
            lhs = np.einsum("ij,kjl->kil", rg, self.action) % p
            prods = a.products(g[None, :], np.eye(a.dim, dtype=np.int64))
            rhs = np.tensordot(prods, self.action, axes=1) % p
            if not np.array_equal(lhs, rhs):
                raise InvalidModule("action is not multiplicative (a relation is violated)")

    def act(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return np.tensordot(x, self.action, axes=1) % self.p

    @property
    def identity(self) -> "ModuleMap":
        return ModuleMap(self, self, np.eye(self.dim, dtype=np.int64), check=False)

    def is_zero(self) -> bool:
        return self.dim == 0

    @cached_property
    def blocks(self):
        """Per primitive idempotent: (subspace e_i M, projection pi_i, inclusion iota_i)."""
        rd = rep_data(self.algebra)
        out = []
        for e in rd.idempotents:
            E = self.act(e)
            U = span(E.T, self.p, self.dim)
            piv = list(U.pivots)
            out.append((U, E[piv, :] if piv else np.zeros((0, self.dim), dtype=np.int64), U.basis.T))
        return out

    @cached_property
    def block_dims(self) -> tuple:
        return tuple(b[0].dim for b in self.blocks)

    def top_multiplicities(self) -> list:
        """Multiplicity of each simple (by projective type) in the top."""
        rd = rep_data(self.algebra)
        radm = radical_of_module(self)
        out = []
        for r in rd.type_reps:
            E = self.act(rd.idempotents[r])
            inner = _column_space([E @ radm.basis.T], self.dim, self.p) if radm.dim else Subspace.zero(self.dim, self.p)
            out.append(self.blocks[r][0].dim - inner.dim)
        return out


def zero_module(a: FiniteDimAlgebra) -> Module:
    return Module(a, np.zeros((a.dim, 0, 0), dtype=np.int64), name="0", check=False)


def regular_module(a: FiniteDimAlgebra) -> Module:
    if "regular" not in a._cache:
        a._cache["regular"] = Module(a, a.left_mults, name=f"{a.name or 'A'}_reg", check=False)
    return a._cache["regular"]


def module_from_basis_action(a: FiniteDimAlgebra, dim: int, acts: dict, name: str = "") -> Module:
    """Module from ``{basis label: matrix}``; unlisted labels act by zero."""
    action = np.zeros((a.dim, dim, dim), dtype=np.int64)
    for lab, m in acts.items():
        if lab not in a.labels:
            from .quiver import UnknownSymbol

            raise UnknownSymbol(f"unknown basis label {lab!r}")
        m = np.array(m, dtype=np.int64).reshape(dim, dim) if dim else np.zeros((0, 0), dtype=np.int64)
        action[a.labels.index(lab)] = m
    return Module(a, action, name=name)


def module_from_arrows(a: FiniteDimAlgebra, vertexdims, acts: dict, name: str = "") -> Module:
    """Representation of a bound quiver algebra from one matrix per arrow.

    For ``a: s -> t`` the matrix has shape ``(dims[s], dims[t])``: it maps
    the block of ``t`` to the block of ``s`` (because ``a = e_s a e_t``).
    Unlisted arrows act by zero.  Relations are checked.
    """
    from .quiver import UnknownSymbol

    pdata = a.extra.get("path_data")
    if pdata is None:
        raise InvalidModule(f"algebra {a.name} has no quiver presentation")
    q = pdata.quiver
    dims = [int(x) for x in vertexdims]
    if len(dims) != len(q.vertices):
        raise InvalidModule(f"expected {len(q.vertices)} vertex dimensions, got {len(dims)}")
    offs = dict(zip(q.vertices, np.concatenate([[0], np.cumsum(dims)])[:-1].astype(int)))
    dv = dict(zip(q.vertices, dims))
    n = sum(dims)
    p = a.p
    arrow_mats = {}
    names = {ar.name for ar in q.arrows}
    for key in acts:
        if key not in names:
            raise UnknownSymbol(f"unknown arrow {key!r}")
    for ar in q.arrows:
        full = np.zeros((n, n), dtype=np.int64)
        if ar.name in acts and dv[ar.source] and dv[ar.target]:
            m = np.array(acts[ar.name], dtype=np.int64)
            if m.shape != (dv[ar.source], dv[ar.target]):
                raise InvalidModule(
                    f"arrow {ar.name}: expected a {dv[ar.source]}x{dv[ar.target]} matrix, got shape {m.shape}"
                )
            s0, t0 = offs[ar.source], offs[ar.target]
            full[s0 : s0 + m.shape[0], t0 : t0 + m.shape[1]] = m % p
        arrow_mats[ar.name] = full
    action = np.zeros((a.dim, n, n), dtype=np.int64)
    for k, (s, t, arrows) in enumerate(pdata.basis_paths):
        if not arrows:
            o = offs[s]
            action[k, o : o + dv[s], o : o + dv[s]] = np.eye(dv[s], dtype=np.int64)
            continue
        m = arrow_mats[arrows[0]]
        for nm in arrows[1:]:
            m = matmul(m, arrow_mats[nm], p)
        action[k] = m
    return Module(a, action, name=name)


# --------------------------------------------------------------- module maps


class ModuleMap:
    """An intertwiner ``source -> target`` stored as a ``target.dim x source.dim`` matrix."""

    def __init__(self, source: Module, target: Module, matrix, check: bool = True):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("module map between modules over different algebras")
        m = np.asarray(matrix, dtype=np.int64).reshape(target.dim, source.dim) % source.p
        m.setflags(write=False)
        self.source = source
        self.target = target
        self.matrix = m
        if check and not self.is_homomorphism():
            raise InvalidModule("matrix does not intertwine the actions")

    def __repr__(self):
        return f"ModuleMap({self.source.dim} -> {self.target.dim}, rank={self.rank})"

    def is_homomorphism(self) -> bool:
        p = self.source.p
        for g in _generating_set(self.source.algebra):
            lhs = matmul(self.target.act(g), self.matrix, p)
            rhs = matmul(self.matrix, self.source.act(g), p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def __call__(self, v) -> np.ndarray:
        return matmul(self.matrix, np.asarray(v, dtype=np.int64), self.source.p)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self`` after ``other``."""
        if other.target is not self.source:
            raise AlgebraMismatch("maps are not composable")
        return ModuleMap(other.source, self.target, matmul(self.matrix, other.matrix, self.source.p), check=False)

    def __matmul__(self, other):
        return self.compose(other)

    @cached_property
    def rank(self) -> int:
        return rank(self.matrix, self.source.p) if self.matrix.size else 0

    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def kernel_space(self) -> Subspace:
        if self.source.dim == 0:
            return Subspace.zero(0, self.source.p)
        if self.target.dim == 0:
            return Subspace.full(self.source.dim, self.source.p)
        return Subspace(nullspace(self.matrix, self.source.p), self.source.p, self.source.dim)

    def image_space(self) -> Subspace:
        return _column_space([self.matrix], self.target.dim, self.source.p)


def _restricted_action(m: Module, space: Subspace) -> np.ndarray:
    piv = list(space.pivots)
    if space.dim == 0:
        return np.zeros((m.algebra.dim, 0, 0), dtype=np.int64)
    img = np.einsum("kij,lj->kil", m.action, space.basis) % m.p
    return img[:, piv, :]


def submodule(m: Module, space: Subspace, name: str = "", check: bool = True):
    """Submodule on an invariant subspace, with its inclusion map."""
    if check and space.dim:
        stacked = np.einsum("kij,lj->kli", m.action, space.basis).reshape(-1, m.dim) % m.p
        if not space.contains_space(span(stacked, m.p, m.dim)):
            raise InvalidModule("subspace is not invariant under the action")
    sub = Module(m.algebra, _restricted_action(m, space), name=name, check=False)
    return sub, ModuleMap(sub, m, space.basis.T, check=False)


def quotient_module(m: Module, space: Subspace, name: str = "", check: bool = True):
    """Quotient by an invariant subspace, on the canonical complement, with the projection."""
    if check and space.dim:
        submodule(m, space, check=True)
    keep = space.complement()
    proj = space.reduce(np.eye(m.dim, dtype=np.int64))[:, keep].T  # |keep| x n
    act = np.einsum("ij,kjl->kil", proj, m.action[:, :, keep]) % m.p
    q = Module(m.algebra, act, name=name, check=False)
    return q, ModuleMap(m, q, proj, check=False)


def kernel_module(f: ModuleMap, name: str = ""):
    return submodule(f.source, f.kernel_space(), name=name, check=False)


def image_module(f: ModuleMap, name: str = ""):
    return submodule(f.target, f.image_space(), name=name, check=False)


def direct_sum(*modules: Module, name: str = ""):
    """Direct sum with its canonical injections and projections."""
    if not modules:
        raise ValueError("direct_sum needs at least one module (use zero_module)")
    a = modules[0].algebra
    if any(x.algebra is not a for x in modules):
        raise AlgebraMismatch("summands live over different algebras")
    n = sum(x.dim for x in modules)
    action = np.zeros((a.dim, n, n), dtype=np.int64)
    o = 0
    offs = []
    for x in modules:
        action[:, o : o + x.dim, o : o + x.dim] = x.action
        offs.append(o)
        o += x.dim
    s = Module(a, action, name=name, check=False)
    inj, prj = [], []
    for x, o in zip(modules, offs):
        e = np.zeros((n, x.dim), dtype=np.int64)
        e[o : o + x.dim, :] = np.eye(x.dim, dtype=np.int64)
        inj.append(ModuleMap(x, s, e, check=False))
        prj.append(ModuleMap(s, x, e.T, check=False))
    s._cache["summands"] = (list(modules), inj, prj)
    return s


def injections(s: Module):
    return s._cache["summands"][1]


def projections(s: Module):
    return s._cache["summands"][2]


def ideal_times(ideal, m: Module, within: Subspace | None = None) -> Subspace:
    """``I . U`` as a subspace of ``m`` (``U`` defaults to all of ``m``)."""
    basis = ideal.basis if isinstance(ideal, IdealOrSubspace) else np.asarray(ideal, dtype=np.int64)
    if m.dim == 0 or basis.shape[0] == 0:
        return Subspace.zero(m.dim, m.p)
    mats = np.tensordot(basis, m.action, axes=1) % m.p
    if within is not None:
        if within.dim == 0:
            return Subspace.zero(m.dim, m.p)
        mats = np.einsum("kij,lj->kil", mats, within.basis) % m.p
    return _column_space(list(mats), m.dim, m.p)


def radical_of_module(m: Module) -> Subspace:
    if "rad" not in m._cache:
        m._cache["rad"] = ideal_times(radical(m.algebra), m)
    return m._cache["rad"]


def radical_layers(m: Module) -> tuple:
    """Dimensions of ``rad^i M`` for i = 0, 1, ... down to zero."""
    if "layers" not in m._cache:
        rad = radical(m.algebra)
        cur = Subspace.full(m.dim, m.p)
        dims = [cur.dim]
        while cur.dim:
            cur = ideal_times(rad, m, cur)
            dims.append(cur.dim)
        m._cache["layers"] = tuple(dims)
    return m._cache["layers"]


def top(m: Module):
    return quotient_module(m, radical_of_module(m), name=f"top({m.name})", check=False)


def restrict_along(m: Module, f) -> Module:
    """Restriction along an algebra morphism ``B -> A``; the space is unchanged."""
    if f.target is not m.algebra:
        raise AlgebraMismatch("morphism does not land in the module's algebra")
    act = np.tensordot(f.matrix, m.action, axes=1) % m.p
    return Module(f.source, act, name=m.name, check=False)


# ------------------------------------------------------------------- hom spaces


class HomSpace:
    """Basis of ``Hom_A(M, N)`` with coordinates for arbitrary homomorphisms."""

    def __init__(self, source: Module, target: Module):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("hom between modules over different algebras")
        self.source = source
        self.target = target
        p = source.p
        rd = rep_data(source.algebra)
        bm, bn = source.blocks, target.blocks
        sizes = [(bn[i][0].dim, bm[i][0].dim) for i in range(len(bm))]
        offs = np.concatenate([[0], np.cumsum([a * b for a, b in sizes])]).astype(int)
        nvar = int(offs[-1])
        rows = []
        for i, j, g in rd.generators:
            ni, mi = sizes[i]
            nj, mj = sizes[j]
            if ni * mj == 0:
                continue
            gm = matmul(matmul(bm[i][1], source.act(g), p), bm[j][2], p)  # mi x mj
            gn = matmul(matmul(bn[i][1], target.act(g), p), bn[j][2], p)  # ni x nj
            blk = np.zeros((ni * mj, nvar), dtype=np.int64)
            if mi:
                blk[:, offs[i] : offs[i + 1]] += np.kron(np.eye(ni, dtype=np.int64), gm.T)
            if nj:
                blk[:, offs[j] : offs[j + 1]] -= np.kron(gn, np.eye(mj, dtype=np.int64))
            rows.append(blk % p)
        system = np.vstack(rows) if rows else np.zeros((0, nvar), dtype=np.int64)
        sol = nullspace(system, p) if nvar else np.zeros((0, 0), dtype=np.int64)
        self._sizes, self._offs = sizes, offs
        self.space = Subspace(sol, p, nvar)
        mats = []
        for x in self.space.basis:
            mats.append(self._assemble(x))
        self.basis = (
            np.array(mats, dtype=np.int64).reshape(len(mats), target.dim, source.dim)
            if mats
            else np.zeros((0, target.dim, source.dim), dtype=np.int64)
        )

    def _assemble(self, x) -> np.ndarray:
        p = self.source.p
        f = np.zeros((self.target.dim, self.source.dim), dtype=np.int64)
        for i, (ni, mi) in enumerate(self._sizes):
            if ni * mi == 0:
                continue
            xi = x[self._offs[i] : self._offs[i + 1]].reshape(ni, mi)
            f += self.target.blocks[i][2] @ xi @ self.source.blocks[i][1]
        return f % p

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def unknowns(self, f) -> np.ndarray:
        p = self.source.p
        parts = []
        for i, (ni, mi) in enumerate(self._sizes):
            if ni * mi == 0:
                continue
            parts.append((self.target.blocks[i][1] @ f @ self.source.blocks[i][2] % p).reshape(-1))
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def coordinates(self, f) -> np.ndarray:
        """Coordinates of a homomorphism in :attr:`basis`."""
        return self.space.coordinates(self.unknowns(np.asarray(f, dtype=np.int64)))

    def maps(self) -> list:
        return [ModuleMap(self.source, self.target, b, check=False) for b in self.basis]

    def combine(self, coeffs) -> np.ndarray:
        return np.tensordot(np.asarray(coeffs, dtype=np.int64), self.basis, axes=1) % self.source.p


def hom_space(m: Module, n: Module) -> HomSpace:
    return HomSpace(m, n)


# ---------------------------------------------------- projectives and covers


def indecomposable_projective(a: FiniteDimAlgebra, t: int) -> Module:
    """``A e_t`` for the representative idempotent of type ``t`` (cached)."""
    key = ("proj", t)
    if key not in a._cache:
        rd = rep_data(a)
        e = rd.idempotents[rd.type_reps[t]]
        space = span(a.products(np.eye(a.dim, dtype=np.int64), e[None, :]), a.p, a.dim)
        pm, _ = submodule(regular_module(a), space, name=f"P{t}", check=False)
        pm._cache["generator"] = space.coordinates(e)
        pm._cache["space"] = space
        pm._cache["projective_type"] = t
        a._cache[key] = pm
    return a._cache[key]


def simples_and_projectives(a: FiniteDimAlgebra):
    """Simple modules and the matching indecomposable projectives, one per type."""
    rd = rep_data(a)
    for t, ok in enumerate(rd.split):
        if not ok:
            raise UnsupportedField(
                f"simple of type {t} has endomorphism ring of dimension {rd.local_degree[rd.type_reps[t]]}"
            )
    projs = [indecomposable_projective(a, t) for t in range(rd.n_types)]
    simples = [top(pm)[0] for pm in projs]
    for t, s in enumerate(simples):
        s.name = f"S{t}"
    return simples, [(pm, t) for t, pm in enumerate(projs)]


@dataclass
class ProjectiveCover:
    """Minimal epimorphism ``P(M) -> M`` with ``P(M)`` a sum of indecomposable projectives."""

    cover: ModuleMap
    multiplicities: list  # (type, count)
    summand_types: list  # type of each direct summand of P(M), in order

    @property
    def projective(self) -> Module:
        return self.cover.source


def _projective_sum(a: FiniteDimAlgebra, types) -> Module:
    if not types:
        return zero_module(a)
    return direct_sum(*[indecomposable_projective(a, t) for t in types])


def _radical_of_projective_sum(a: FiniteDimAlgebra, types) -> Subspace:
    n = sum(indecomposable_projective(a, t).dim for t in types)
    rows = []
    o = 0
    for t in types:
        pm = indecomposable_projective(a, t)
        r = radical_of_module(pm)
        if r.dim:
            blk = np.zeros((r.dim, n), dtype=np.int64)
            blk[:, o : o + pm.dim] = r.basis
            rows.append(blk)
        o += pm.dim
    if not rows:
        return Subspace.zero(n, a.p)
    return Subspace(np.vstack(rows), a.p, n)


def projective_cover(m: Module) -> ProjectiveCover:
    """Projective cover with lifts of a top basis chosen inside ``e_t M`` in pivot order."""
    if "cover" in m._cache:
        return m._cache["cover"]
    a, p = m.algebra, m.p
    rd = rep_data(a)
    radm = radical_of_module(m)
    types, lifts = [], []
    for t, r in enumerate(rd.type_reps):
        E = m.act(rd.idempotents[r])
        block = m.blocks[r][0]
        inner = _column_space([E @ radm.basis.T], m.dim, p) if radm.dim else Subspace.zero(m.dim, p)
        if block.dim == inner.dim:
            continue
        if not rd.split[t]:
            raise UnsupportedField(f"simple of type {t} is not split over GF({p})")
        cur = inner
        for v in block.basis:
            if not cur.contains(v):
                types.append(t)
                lifts.append(v.copy())
                cur = span(np.vstack([cur.basis, v[None, :]]), p, m.dim)
    pm = _projective_sum(a, types)
    cols = []
    for t, v in zip(types, lifts):
        pt = indecomposable_projective(a, t)
        av = np.einsum("kij,j->ki", m.action, v) % p  # av[k] = b_k . v
        cols.append((pt._cache["space"].basis @ av % p).T)
    mat = np.hstack(cols) if cols else np.zeros((m.dim, 0), dtype=np.int64)
    cov = ModuleMap(pm, m, mat, check=False)
    if not cov.is_surjective():
        raise AssertionError("projective cover is not surjective")
    counts = Counter(types)
    res = ProjectiveCover(cov, sorted(counts.items()), types)
    if types:
        ker = cov.kernel_space()
        if not _radical_of_projective_sum(a, types).contains_space(ker):
            raise AssertionError("cover kernel is not inside rad P")
    m._cache["cover"] = res
    return res


def syzygy(m: Module, name: str = ""):
    """``Omega(M)`` as the kernel of the projective cover, with its inclusion into ``P(M)``."""
    cov = projective_cover(m)
    return kernel_module(cov.cover, name=name or f"Omega({m.name})")


def is_projective(m: Module) -> bool:
    return projective_cover(m).projective.dim == m.dim


# ------------------------------------------------------------- exact sequences


class ShortExactSequence:
    """``0 -> X -i-> Y -q-> Z -> 0``; exactness is verified on construction."""

    def __init__(self, i: ModuleMap, q: ModuleMap):
        if i.target is not q.source:
            raise NotExact("middle terms do not match")
        self.i, self.q = i, q
        if not i.is_injective():
            raise NotExact("first map is not injective")
        if not q.is_surjective():
            raise NotExact("second map is not surjective")
        if (q @ i).matrix.any():
            raise NotExact("composite is not zero")
        if i.source.dim + q.target.dim != i.target.dim:
            raise NotExact("dimensions do not add up")

    @property
    def left(self) -> Module:
        return self.i.source

    @property
    def middle(self) -> Module:
        return self.i.target

    @property
    def right(self) -> Module:
        return self.q.target

    @classmethod
    def from_submodule(cls, y: Module, space: Subspace):
        x, inc = submodule(y, space, name="X")
        z, prj = quotient_module(y, space, name="Z", check=False)
        return cls(inc, prj)
