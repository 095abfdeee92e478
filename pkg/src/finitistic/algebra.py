"""
Finite-dimensional associative algebras over GF(p) given by structure
constants, together with ideals, quotients, subalgebras and morphisms.

Elements are coordinate vectors (row vectors).  ``struct[i, j]`` holds the
coordinates of ``b_i * b_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .linalg import Subspace, check_prime, matmul, rref, solve, span

__all__ = [
    "AlgebraError",
    "FieldTooSmall",
    "NotTwoSided",
    "ImproperIdeal",
    "ParentMismatch",
    "UnitNotContained",
    "FiniteDimAlgebra",
    "IdealOrSubspace",
    "AlgebraMorphism",
    "radical",
    "ideal_generated",
    "left_ideal_generated",
    "ideal_product",
    "ideal_power",
    "quotient_algebra",
    "subalgebra_generated",
    "is_left_ideal_of",
    "opposite",
    "check_morphism",
    "identity_morphism",
    "ground_field_algebra",
    "unit_morphism",
    "product_space",
]


class AlgebraError(ValueError):
    pass


class FieldTooSmall(AlgebraError):
    pass


class NotTwoSided(AlgebraError):
    pass


class ImproperIdeal(AlgebraError):
    pass


class ParentMismatch(AlgebraError):
    pass


class UnitNotContained(AlgebraError):
    pass


class FiniteDimAlgebra:
    """An associative unital algebra with basis ``b_0 .. b_{d-1}``.

    Construction verifies associativity on all basis triples and the unit
    law; both can be skipped with ``check=False`` for algebras whose
    structure constants come from a trusted construction.
    """

    def __init__(self, p, struct, unit, labels=None, name="", check=True, extra=None):
        self.p = check_prime(p)
        s = np.asarray(struct, dtype=np.int64) % self.p
        d = s.shape[0]
        if s.shape != (d, d, d):
            raise AlgebraError(f"structure constants must have shape (d, d, d), got {s.shape}")
        self.struct = s
        self.struct.setflags(write=False)
        self.unit = np.asarray(unit, dtype=np.int64).reshape(d) % self.p
        self.unit.setflags(write=False)
        self.dim = d
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(d)]
        self.name = name
        # free-form construction data (quiver idempotents, path reduction, ...)
        self.extra = dict(extra or {})
        self._cache: dict = {}
        if d >= self.p:
            raise FieldTooSmall(f"dim {d} >= p = {self.p}; the trace-form radical needs dim < p")
        if check:
            self.verify()

    def __repr__(self):
        return f"FiniteDimAlgebra({self.name or '?'}, dim={self.dim}, p={self.p})"

    def verify(self):
        d, p, c = self.dim, self.p, self.struct
        if d == 0:
            raise AlgebraError("the zero algebra is not allowed")
        left = np.einsum("ijm,mkl->ijkl", c, c) % p
        right = np.einsum("jkm,iml->ijkl", c, c) % p
        if not np.array_equal(left, right):
            raise AlgebraError("structure constants are not associative")
        eye = np.eye(d, dtype=np.int64)
        ul = np.einsum("i,ijk->jk", self.unit, c) % p
        ur = np.einsum("j,ijk->ik", self.unit, c) % p
        if not (np.array_equal(ul, eye) and np.array_equal(ur, eye)):
            raise AlgebraError("unit is not a two-sided identity")

    # -- arithmetic --------------------------------------------------------

    @cached_property
    def _flat(self):
        return self.struct.reshape(self.dim, self.dim * self.dim)

    def mul(self, x, y) -> np.ndarray:
        """Product of two elements (or of two stacks of elements, row-wise)."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        t = (x @ self._flat % self.p).reshape(x.shape[:-1] + (self.dim, self.dim))
        if x.ndim == 1:
            return (y @ t) % self.p
        return np.einsum("nj,njk->nk", y, t) % self.p

    def products(self, xs, ys) -> np.ndarray:
        """All products ``x*y`` for rows x of ``xs`` and rows y of ``ys``, stacked."""
        xs = np.asarray(xs, dtype=np.int64).reshape(-1, self.dim)
        ys = np.asarray(ys, dtype=np.int64).reshape(-1, self.dim)
        if xs.shape[0] == 0 or ys.shape[0] == 0:
            return np.zeros((0, self.dim), dtype=np.int64)
        t = (xs @ self._flat % self.p).reshape(-1, self.dim, self.dim)
        out = np.einsum("sj,rjk->rsk", ys, t) % self.p
        return out.reshape(-1, self.dim)

    @cached_property
    def left_mults(self) -> np.ndarray:
        """``left_mults[i]`` is left multiplication by ``b_i`` acting on column vectors."""
        m = self.struct.transpose(0, 2, 1).copy()
        m.setflags(write=False)
        return m

    @cached_property
    def right_mults(self) -> np.ndarray:
        """``right_mults[j]`` is right multiplication by ``b_j`` acting on column vectors."""
        m = self.struct.transpose(1, 2, 0).copy()
        m.setflags(write=False)
        return m

    def left_mult(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=np.int64), self.left_mults, axes=1) % self.p

    def right_mult(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=np.int64), self.right_mults, axes=1) % self.p

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def element(self, coeffs: dict) -> np.ndarray:
        """Element from a ``{label: coefficient}`` mapping."""
        v = np.zeros(self.dim, dtype=np.int64)
        for lab, c in coeffs.items():
            v[self.labels.index(lab)] += c
        return v % self.p

    def format(self, x) -> str:
        x = np.asarray(x, dtype=np.int64) % self.p
        parts = []
        for i in np.flatnonzero(x):
            c = int(x[i])
            parts.append(self.labels[i] if c == 1 else f"{c}*{self.labels[i]}")
        return " + ".join(parts) if parts else "0"

    @cached_property
    def whole(self) -> "IdealOrSubspace":
        return IdealOrSubspace(self, Subspace.full(self.dim, self.p), "two-sided-ideal", check=False)

    @cached_property
    def zero_ideal(self) -> "IdealOrSubspace":
        return IdealOrSubspace(self, Subspace.zero(self.dim, self.p), "two-sided-ideal", check=False)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.struct, self.struct.transpose(1, 0, 2)))


_KINDS = ("two-sided-ideal", "left-ideal", "right-ideal", "subalgebra", "plain-subspace")


class IdealOrSubspace:
    """A subspace of an algebra flagged with the closure property it satisfies."""

    def __init__(self, parent: FiniteDimAlgebra, space: Subspace, kind: str, check=True):
        if kind not in _KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        if space.ambient_dim != parent.dim:
            raise AlgebraError("subspace does not live in the parent algebra")
        self.parent = parent
        self.space = space
        self.kind = kind
        if check and not _has_closure(parent, space, kind):
            raise AlgebraError(f"subspace is not a {kind}")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> np.ndarray:
        return self.space.basis

    def is_zero(self) -> bool:
        return self.space.dim == 0

    def __eq__(self, other):
        if not isinstance(other, IdealOrSubspace):
            return NotImplemented
        return self.parent is other.parent and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def __repr__(self):
        return f"IdealOrSubspace({self.kind}, dim={self.dim} in {self.parent!r})"

    def contains(self, other: "IdealOrSubspace") -> bool:
        return self.space.contains_space(other.space)


def product_space(a: FiniteDimAlgebra, u, v) -> Subspace:
    """Span of all products ``x*y`` with x in ``u`` and y in ``v`` (bases or subspaces)."""
    ub = u.basis if isinstance(u, Subspace) else np.asarray(u)
    vb = v.basis if isinstance(v, Subspace) else np.asarray(v)
    return span(a.products(ub, vb), a.p, a.dim)


def _has_closure(a: FiniteDimAlgebra, s: Subspace, kind: str) -> bool:
    if kind == "plain-subspace" or s.dim == 0:
        return kind != "subalgebra" or s.dim == 0
    eye = np.eye(a.dim, dtype=np.int64)
    if kind in ("two-sided-ideal", "left-ideal") and not s.contains_space(product_space(a, eye, s)):
        return False
    if kind in ("two-sided-ideal", "right-ideal") and not s.contains_space(product_space(a, s, eye)):
        return False
    if kind == "subalgebra" and not s.contains_space(product_space(a, s, s)):
        return False
    return True


def radical(a: FiniteDimAlgebra) -> IdealOrSubspace:
    """Jacobson radical as the kernel of the trace form ``(x, y) -> tr(L_{xy})``.

    Valid because ``dim a < p`` (Newton identities can then be inverted, so
    an element whose powers all have zero trace is nilpotent).
    """
    if "radical" in a._cache:
        return a._cache["radical"]
    if a.dim >= a.p:
        raise FieldTooSmall("trace criterion needs dim < p")
    traces = np.einsum("kjj->k", a.struct) % a.p  # tr(L_{b_k}) = sum_j c_{kj}^j
    gram = (a.struct.reshape(a.dim * a.dim, a.dim) @ traces % a.p).reshape(a.dim, a.dim)
    from .linalg import kernel

    rad = IdealOrSubspace(a, kernel(gram, a.p), "two-sided-ideal", check=False)
    a._cache["radical"] = rad
    return rad


def _closure(a: FiniteDimAlgebra, start: Subspace, left: bool, right: bool, selfmul: bool = False) -> Subspace:
    eye = np.eye(a.dim, dtype=np.int64)
    s = start
    while True:
        parts = [s.basis]
        if s.dim:
            if left:
                parts.append(a.products(eye, s.basis))
            if right:
                parts.append(a.products(s.basis, eye))
            if selfmul:
                parts.append(a.products(s.basis, s.basis))
        t = span(np.vstack(parts), a.p, a.dim)
        if t.dim == s.dim:
            return s
        s = t


def ideal_generated(a: FiniteDimAlgebra, generators) -> IdealOrSubspace:
    s = _closure(a, span(generators, a.p, a.dim), True, True)
    return IdealOrSubspace(a, s, "two-sided-ideal", check=False)


def left_ideal_generated(a: FiniteDimAlgebra, generators) -> IdealOrSubspace:
    s = _closure(a, span(generators, a.p, a.dim), True, False)
    return IdealOrSubspace(a, s, "left-ideal", check=False)


def ideal_product(i: IdealOrSubspace, j: IdealOrSubspace) -> IdealOrSubspace:
    """``I*J`` as the span of pairwise products of basis elements."""
    if i.parent is not j.parent:
        raise ParentMismatch("ideals live in different algebras")
    a = i.parent
    s = product_space(a, i.space, j.space)
    lefty = i.kind in ("two-sided-ideal", "left-ideal")
    righty = j.kind in ("two-sided-ideal", "right-ideal")
    if lefty and righty:
        kind = "two-sided-ideal"
    elif lefty:
        kind = "left-ideal"
    elif righty:
        kind = "right-ideal"
    else:
        kind = "plain-subspace"
    return IdealOrSubspace(a, s, kind, check=False)


def ideal_power(i: IdealOrSubspace, n: int) -> IdealOrSubspace:
    if n < 0:
        raise ValueError("negative power")
    if n == 0:
        return i.parent.whole
    out = i
    for _ in range(n - 1):
        out = ideal_product(out, i)
    return out


@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    """Linear map between algebras: target coordinates = source coordinates @ matrix."""

    source: FiniteDimAlgebra
    target: FiniteDimAlgebra
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.int64) % self.target.p
        if m.shape != (self.source.dim, self.target.dim):
            raise AlgebraError(f"morphism matrix has shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __call__(self, x) -> np.ndarray:
        return matmul(np.asarray(x, dtype=np.int64), self.matrix, self.target.p)

    def image(self) -> Subspace:
        return span(self.matrix, self.target.p, self.target.dim)

    def compose(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """``self`` after ``other``."""
        if other.target is not self.source:
            raise ParentMismatch("cannot compose: algebras do not match")
        return AlgebraMorphism(other.source, self.target, matmul(other.matrix, self.matrix, self.target.p))


def check_morphism(f: AlgebraMorphism) -> bool:
    """True iff ``f`` preserves the unit and is multiplicative on basis pairs."""
    s, t = f.source, f.target
    if s.p != t.p:
        return False
    if not np.array_equal(f(s.unit), t.unit):
        return False
    lhs = f(s.struct.reshape(-1, s.dim)).reshape(s.dim, s.dim, t.dim)
    img = f.matrix
    rhs = t.products(img, img).reshape(s.dim, s.dim, t.dim)
    return bool(np.array_equal(lhs, rhs))


def identity_morphism(a: FiniteDimAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(a, a, np.eye(a.dim, dtype=np.int64))


def ground_field_algebra(p: int) -> FiniteDimAlgebra:
    return FiniteDimAlgebra(p, np.ones((1, 1, 1), dtype=np.int64), [1], labels=["1"], name="k")


def unit_morphism(a: FiniteDimAlgebra) -> AlgebraMorphism:
    """The structure map GF(p) -> a."""
    k = ground_field_algebra(a.p)
    return AlgebraMorphism(k, a, a.unit.reshape(1, -1))


def _recoordinatize(a: FiniteDimAlgebra, s: Subspace, name: str, labels=None, check=True) -> FiniteDimAlgebra:
    """The algebra structure on a multiplicatively closed subspace, in echelon coordinates."""
    basis = s.basis
    prods = a.products(basis, basis)
    struct = s.coordinates(prods).reshape(s.dim, s.dim, s.dim)
    unit = s.coordinates(a.unit)
    if labels is None:
        labels = [a.format(row) for row in basis]
    return FiniteDimAlgebra(a.p, struct, unit, labels=labels, name=name, check=check)


def quotient_algebra(a: FiniteDimAlgebra, i: IdealOrSubspace, name=None):
    """``a / i`` on the canonical complement of ``i``, plus the projection morphism."""
    if i.parent is not a:
        raise ParentMismatch("ideal belongs to another algebra")
    if i.kind != "two-sided-ideal" and not _has_closure(a, i.space, "two-sided-ideal"):
        raise NotTwoSided("quotient needs a two-sided ideal")
    if i.dim == a.dim:
        raise ImproperIdeal("quotient by the whole algebra")
    keep = i.space.complement()
    # projection: coordinates of the reduced vector on the kept unit vectors
    proj = i.space.reduce(np.eye(a.dim, dtype=np.int64))[:, keep]
    sub = a.struct[np.ix_(keep, keep)].reshape(-1, a.dim)
    struct = matmul(sub, proj, a.p).reshape(len(keep), len(keep), len(keep))
    unit = matmul(a.unit, proj, a.p)
    labels = [a.labels[k] for k in keep]
    q = FiniteDimAlgebra(a.p, struct, unit, labels=labels, name=name or f"{a.name}/I", check=True)
    return q, AlgebraMorphism(a, q, proj)


def subalgebra_generated(a: FiniteDimAlgebra, generators, name=None, include_unit=False):
    """Subalgebra spanned by all products of the generators, re-coordinatized.

    The unit of ``a`` must lie in the closure (subalgebras share the
    identity); pass ``include_unit=True`` to adjoin it explicitly.
    """
    gens = np.asarray(generators, dtype=np.int64).reshape(-1, a.dim) % a.p
    if include_unit:
        gens = np.vstack([gens, a.unit[None, :]])
    s = span(gens, a.p, a.dim)
    while True:
        t = span(np.vstack([s.basis, a.products(s.basis, s.basis)]), a.p, a.dim) if s.dim else s
        if t.dim == s.dim:
            break
        s = t
    if not s.contains(a.unit):
        raise UnitNotContained("the unit of the parent is not in the generated subalgebra")
    sub = _recoordinatize(a, s, name or f"sub({a.name})")
    sub.extra["ambient_space"] = s
    incl = AlgebraMorphism(sub, a, s.basis)
    return sub, incl


def is_left_ideal_of(sub, bigger: FiniteDimAlgebra) -> bool:
    """True iff ``bigger * sub`` lies in ``sub`` (checked on basis pairs)."""
    s = sub.space if isinstance(sub, IdealOrSubspace) else sub
    if s.dim == 0:
        return True
    eye = np.eye(bigger.dim, dtype=np.int64)
    return s.contains_space(product_space(bigger, eye, s))


def opposite(a: FiniteDimAlgebra) -> FiniteDimAlgebra:
    """Same basis with ``b_i o b_j = b_j * b_i``.

    Vertex idempotents and arrow elements of a quiver algebra stay
    homogeneous in the opposite algebra, so they are carried over.
    """
    struct = a.struct.transpose(1, 0, 2)
    extra = {k: a.extra[k] for k in ("vertex_idempotents", "arrow_elements") if k in a.extra}
    return FiniteDimAlgebra(a.p, struct, a.unit, labels=a.labels, name=f"{a.name}^op", check=False, extra=extra)
