"""
Dense exact linear algebra and univariate polynomials over GF(p).

Matrices are numpy int64 arrays with entries in [0, p).  Products stay
below 2**63 as long as p < 2**31 and the inner dimension is moderate,
which covers every size this package deals with.

Vectors are rows: ``kernel(m)`` is the left null space ``{v : v @ m = 0}``
and ``solve(m, t)`` looks for ``x`` with ``x @ m = t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys import galoistools as gt

__all__ = [
    "AmbientMismatch",
    "ZeroPolynomial",
    "check_prime",
    "inv",
    "mat",
    "matmul",
    "rref",
    "rank",
    "kernel",
    "nullspace",
    "solve",
    "Subspace",
    "span",
    "min_poly",
    "factor",
    "poly_eval_matrix",
    "is_irreducible",
    "poly_mul",
    "poly_trim",
    "poly_rem",
    "poly_quo",
    "poly_gcdex",
    "poly_pow",
    "min_poly_generic",
]


class AmbientMismatch(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


def check_prime(p: int) -> int:
    p = int(p)
    if p < 3 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not an odd prime")
    if p >= 2**31:
        raise ValueError("characteristic must be below 2**31")
    return p


def inv(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(a, p - 2, p)


def mat(entries, p: int, shape=None) -> np.ndarray:
    """Coerce ``entries`` into a reduced int64 array."""
    a = np.array(entries, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    return a % p


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def rref(m: np.ndarray, p: int):
    """Reduced row echelon form of ``m`` over GF(p).

    Returns ``(R, rank, pivot_cols)``; ``R`` has the same shape as ``m``
    with zero rows at the bottom.
    """
    a = np.array(m, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = (a[r] * inv(piv, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, r, pivots


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return rref(m, p)[1]


def _nullspace_from_rref(R: np.ndarray, rk: int, pivots, ncols: int, p: int) -> np.ndarray:
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for j, pc in enumerate(pivots):
            basis[i, pc] = (-R[j, f]) % p
    return basis


def nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning ``{x : m @ x = 0}`` (column convention), canonical form."""
    m = np.asarray(m, dtype=np.int64)
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, rk, piv = rref(m, p)
    basis = _nullspace_from_rref(R, rk, piv, ncols, p)
    if basis.shape[0] == 0:
        return basis
    return rref(basis, p)[0]


def kernel(m: np.ndarray, p: int) -> "Subspace":
    """Left kernel ``{v : v @ m = 0}`` as a canonical subspace."""
    m = np.asarray(m, dtype=np.int64)
    return Subspace(nullspace(m.T, p), p, ambient_dim=m.shape[0])


def solve(m: np.ndarray, target, p: int):
    """Some ``x`` with ``x @ m = target``, or ``None``.

    Free variables are set to zero, so the answer is deterministic.
    """
    m = np.asarray(m, dtype=np.int64) % p
    t = np.asarray(target, dtype=np.int64).reshape(-1) % p
    nrows, ncols = m.shape
    if t.shape[0] != ncols:
        raise ValueError("target length does not match the number of columns")
    if nrows == 0:
        return np.zeros(0, dtype=np.int64) if not t.any() else None
    # x @ m = t  <=>  m.T @ x = t ; row reduce the augmented system
    aug = np.concatenate([m.T, t[:, None]], axis=1)
    R, rk, piv = rref(aug, p)
    if nrows in piv:
        return None
    x = np.zeros(nrows, dtype=np.int64)
    for j, pc in enumerate(piv):
        x[pc] = R[j, nrows]
    return x


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of GF(p)^n held by its reduced row echelon basis."""

    basis: np.ndarray
    p: int
    ambient_dim: int = -1
    pivots: tuple = field(default=(), compare=False)

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.int64)
        n = self.ambient_dim if self.ambient_dim >= 0 else (b.shape[1] if b.ndim == 2 else 0)
        if b.size == 0:
            b = np.zeros((0, n), dtype=np.int64)
        else:
            b = b.reshape(-1, n)
            R, rk, piv = rref(b, self.p)
            b = R[:rk]
            object.__setattr__(self, "pivots", tuple(piv))
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)
        object.__setattr__(self, "ambient_dim", n)

    @classmethod
    def zero(cls, n: int, p: int) -> "Subspace":
        return cls(np.zeros((0, n), dtype=np.int64), p, n)

    @classmethod
    def full(cls, n: int, p: int) -> "Subspace":
        return cls(np.eye(n, dtype=np.int64), p, n)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim or self.p != other.p:
            raise AmbientMismatch(
                f"ambient {self.ambient_dim} (p={self.p}) vs {other.ambient_dim} (p={other.p})"
            )

    def reduce(self, v) -> np.ndarray:
        """Remainder of ``v`` (rows allowed) after clearing pivot columns."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim == 0:
            return v
        piv = list(self.pivots)
        return (v - v[..., piv] @ self.basis) % self.p

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        return other.dim == 0 or not self.reduce(other.basis).any()

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the echelon basis; ``v`` must lie in the span."""
        v = np.asarray(v, dtype=np.int64) % self.p
        return v[..., list(self.pivots)]

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        stacked = np.vstack([self.basis, (-other.basis) % self.p])
        k = kernel(stacked, self.p)
        return Subspace(matmul(k.basis[:, : self.dim], self.basis, self.p), self.p, self.ambient_dim)

    def complement(self) -> list[int]:
        """Coordinate indices whose unit vectors extend the basis to the whole space."""
        piv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in piv]

    def __add__(self, other):
        return self.sum(other)

    def __and__(self, other):
        return self.intersection(other)

    def __contains__(self, v):
        return self.contains(v)


def span(vectors, p: int, n: int) -> Subspace:
    vs = np.asarray(vectors, dtype=np.int64)
    if vs.size == 0:
        return Subspace.zero(n, p)
    return Subspace(vs.reshape(-1, n), p, n)


# ---------------------------------------------------------------- polynomials
#
# A polynomial is a tuple of ints, lowest degree first, with no trailing zeros.
# The zero polynomial is ().


def poly_trim(c) -> tuple:
    c = list(int(x) for x in c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _to_gt(f) -> list:
    return [ZZ(int(x)) for x in reversed(f)]


def _from_gt(g, p) -> tuple:
    return poly_trim(int(x) % p for x in reversed(g))


def poly_mul(f, g, p: int) -> tuple:
    return _from_gt(gt.gf_mul(_to_gt(f), _to_gt(g), p, ZZ), p)


def poly_gcdex(f, g, p: int):
    s, t, h = gt.gf_gcdex(_to_gt(f), _to_gt(g), p, ZZ)
    return _from_gt(s, p), _from_gt(t, p), _from_gt(h, p)


def poly_rem(f, g, p: int) -> tuple:
    return _from_gt(gt.gf_rem(_to_gt(f), _to_gt(g), p, ZZ), p)


def poly_quo(f, g, p: int) -> tuple:
    return _from_gt(gt.gf_quo(_to_gt(f), _to_gt(g), p, ZZ), p)


def poly_pow(f, k: int, p: int) -> tuple:
    return _from_gt(gt.gf_pow(_to_gt(f), k, p, ZZ), p)


def is_irreducible(f, p: int) -> bool:
    f = poly_trim(x % p for x in f)
    if len(f) <= 1:
        return False
    if len(f) == 2:
        return True
    if len(f) <= 4:
        # degree 2 or 3: irreducible iff no root
        return not any(_eval_scalar(f, a, p) == 0 for a in range(p))
    return bool(gt.gf_irred_p_ben_or(gt.gf_monic(_to_gt(f), p, ZZ)[1], p, ZZ))


def _eval_scalar(f, a, p) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * a + c) % p
    return acc


def min_poly(m: np.ndarray, p: int) -> tuple:
    """Monic minimal polynomial of a square matrix."""
    m = np.asarray(m, dtype=np.int64) % p
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("min_poly needs a square matrix")
    return min_poly_generic(np.eye(n, dtype=np.int64), lambda x: matmul(x, m, p), p)


def min_poly_generic(unit, times_x, p: int, max_degree: int | None = None) -> tuple:
    """Minimal polynomial of ``x`` from successive powers ``unit, x, x^2, ...``.

    ``times_x(y)`` must return ``y * x``.  Works for matrices and for
    elements of an abstract algebra alike.  The powers are kept in reduced
    echelon form together with the combinations that produced them, so
    each new power costs one reduction.
    """
    cur = np.asarray(unit, dtype=np.int64) % p
    flat_len = cur.size
    basis = np.zeros((0, flat_len), dtype=np.int64)
    combos = np.zeros((0, 0), dtype=np.int64)
    pivots: list[int] = []
    k = 0
    while True:
        v = cur.reshape(-1) % p
        comb = np.zeros(k + 1, dtype=np.int64)
        comb[k] = 1
        if pivots:
            coef = v[pivots]
            v = (v - coef @ basis) % p
            comb[:k] = (comb[:k] - coef @ combos) % p
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return poly_trim(comb)
        c = int(nz[0])
        s = inv(v[c], p)
        v = (v * s) % p
        comb = (comb * s) % p
        if pivots:
            col = basis[:, c].copy()
            basis = (basis - np.outer(col, v)) % p
            combos = np.concatenate([combos, np.zeros((k, 1), dtype=np.int64)], axis=1)
            combos = (combos - np.outer(col, comb)) % p
        else:
            combos = np.zeros((0, 1), dtype=np.int64)
        basis = np.vstack([basis, v[None, :]])
        combos = np.vstack([combos, comb[None, :]])
        pivots.append(c)
        k += 1
        if max_degree is not None and k > max_degree:
            raise ArithmeticError("minimal polynomial degree bound exceeded")
        cur = times_x(cur)


def poly_eval_matrix(f, m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(f):
        acc = (matmul(acc, m, p) + c * eye) % p
    return acc


def factor(f, p: int) -> list[tuple[tuple, int]]:
    """Irreducible factorization of ``f`` up to its leading unit.

    Factors are monic, sorted by degree and then coefficients.
    """
    f = poly_trim(int(x) % p for x in f)
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if len(f) == 1:
        return []
    _, facs = gt.gf_factor(_to_gt(f), p, ZZ)
    out = [(_from_gt(g, p), int(k)) for g, k in facs]
    out.sort(key=lambda fk: (len(fk[0]), fk[0][::-1]))
    return out
