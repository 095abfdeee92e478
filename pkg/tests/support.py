"""Shared fixtures-as-functions for the test suite: small documents, oracles, generators."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from finitistic.algebra import FiniteDimAlgebra
from finitistic.harness import EXAMPLE1_DOCUMENT
from finitistic.linalg import span
from finitistic.parser import Workspace, parse_document

SMALL_DOC = """\
algebra L
vertex 1
arrow a : 1 -> 1
rel a*a = 0
nilpotency 3

algebra T
vertex 1 2
arrow x : 1 -> 2
nilpotency 2

algebra K
vertex 1 2
arrow u : 1 -> 2
arrow v : 1 -> 2
nilpotency 2

algebra N3
vertex 1 2 3
arrow x : 1 -> 2
arrow y : 2 -> 3
nilpotency 3
"""


@lru_cache(maxsize=None)
def small_workspace() -> Workspace:
    return Workspace(parse_document(SMALL_DOC))


@lru_cache(maxsize=None)
def example1_workspace() -> Workspace:
    return Workspace(parse_document(EXAMPLE1_DOCUMENT))


def loop():
    return small_workspace().algebra("L")


def a2():
    return small_workspace().algebra("T")


def kronecker():
    return small_workspace().algebra("K")


def a3():
    return small_workspace().algebra("N3")


def example_a():
    return example1_workspace().algebra("A")


# ------------------------------------------------------------ GF(5) algebras


def _matrix_subalgebra(gens, p):
    """Span of all words in ``gens`` (with the identity), as flattened matrices."""
    n = gens[0].shape[0]
    eye = np.eye(n, dtype=np.int64)
    s = span(np.array([eye.reshape(-1)] + [g.reshape(-1) for g in gens]), p, n * n)
    while True:
        mats = [b.reshape(n, n) for b in s.basis]
        prods = [(x @ y % p).reshape(-1) for x in mats for y in mats]
        t = span(np.vstack([s.basis, np.array(prods)]), p, n * n)
        if t.dim == s.dim:
            return s
        s = t


def random_small_algebra(seed: int, p: int = 5, max_dim: int = 4) -> FiniteDimAlgebra:
    """A subalgebra of ``M_n(GF(p))`` (``n <= 3``) generated by random matrices, of dim <= max_dim.

    Generators are sometimes forced nilpotent or triangular so that the
    sample contains algebras with a nonzero radical.
    """
    rng = np.random.default_rng(seed)
    for attempt in range(200):
        n = int(rng.integers(1, 4))
        gens = []
        for _ in range(int(rng.integers(1, 3))):
            g = rng.integers(0, p, size=(n, n))
            mode = rng.integers(0, 3)
            if mode == 1:
                g = np.triu(g, 1)  # nilpotent
            elif mode == 2:
                g = np.triu(g)
            gens.append(g % p)
        s = _matrix_subalgebra(gens, p)
        if s.dim <= max_dim:
            break
    mats = [b.reshape(n, n) for b in s.basis]
    d = len(mats)
    struct = np.zeros((d, d, d), dtype=np.int64)
    for i, x in enumerate(mats):
        for j, y in enumerate(mats):
            struct[i, j] = s.coordinates((x @ y % p).reshape(-1))
    unit = s.coordinates(np.eye(n, dtype=np.int64).reshape(-1))
    return FiniteDimAlgebra(p, struct, unit, name=f"rand{seed}")


def exhaustive_radical(a: FiniteDimAlgebra):
    """``{x : 1 - y x is invertible for every y}`` by enumerating all elements."""
    p, d = a.p, a.dim
    elems = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64)
    lm = a.left_mults  # (d, d, d): left multiplication matrices
    unit_l = np.tensordot(a.unit, lm, axes=1) % p
    out = []
    for x in elems:
        yx = (elems @ np.tensordot(x, a.right_mults, axes=1).T) % p
        # left multiplication matrix of 1 - y x for every y at once
        mats = (unit_l[None] - np.tensordot(yx, lm, axes=1)) % p
        dets = np.rint(np.linalg.det(mats.astype(float))).astype(np.int64) % p
        if np.all(dets != 0):
            out.append(x)
    return span(np.array(out).reshape(-1, d), p, d), len(out)
