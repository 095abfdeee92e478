import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from finitistic.decomposition import (
    IsoClassRegistry,
    are_isomorphic,
    decompose,
    is_indecomposable,
    modules_isomorphic,
)
from finitistic.harness import random_module
from finitistic.modules import ModuleMap, direct_sum, regular_module, simples_and_projectives

from support import a3, example_a, kronecker, loop


def test_regular_module_splits_into_projectives():
    a = example_a()
    dec = decompose(regular_module(a))
    assert dec.check()
    assert len(dec.summands) == 6
    assert sorted(s.module.dim for s in dec.summands) == sorted(pm.dim for pm, _ in simples_and_projectives(a)[1])


def test_indecomposability_certificates():
    a = loop()
    s, projs = simples_and_projectives(a)
    ok, cert = is_indecomposable(projs[0][0])
    assert ok and cert[0] == "local"
    ok, cert = is_indecomposable(direct_sum(s[0], s[0]))
    assert not ok and cert[0] == "idempotent"


def test_isomorphism_is_invariant_under_base_change():
    a = kronecker()
    m = random_module(a, np.random.default_rng(3))
    rng = np.random.default_rng(9)
    while True:
        g = rng.integers(0, a.p, size=(m.dim, m.dim))
        if round(abs(np.linalg.det(g.astype(float)))) % a.p and np.linalg.matrix_rank(g.astype(float)) == m.dim:
            break
    from sympy import Matrix

    ginv = np.array(Matrix(g.tolist()).inv_mod(a.p).tolist(), dtype=np.int64)
    from finitistic.modules import Module

    conj = Module(a, np.einsum("ij,kjl,lm->kim", g, m.action, ginv) % a.p)
    assert modules_isomorphic(m, conj)


def test_nonisomorphic_simples():
    simples, _ = simples_and_projectives(a3())
    for i, s in enumerate(simples):
        for j, t in enumerate(simples):
            assert are_isomorphic(s, t) == (i == j)


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10_000))
def test_decomposition_witnesses_and_class_vector_stability(seed):
    a = example_a()
    rng = np.random.default_rng(seed)
    m = direct_sum(random_module(a, rng), random_module(a, rng))
    dec = decompose(m, seed)
    assert dec.check()
    reg = IsoClassRegistry(a)
    vectors = {tuple(sorted(reg.full_class_vector(m, seed=s).items())) for s in range(3)}
    assert len(vectors) == 1
    # the inclusions assemble into an isomorphism onto the direct sum of summands
    total = direct_sum(*dec.modules())
    iso = np.hstack([s.inclusion for s in dec.summands])
    assert ModuleMap(total, m, iso).is_injective()


def test_registry_ids_follow_insertion_order():
    a = a3()
    reg = IsoClassRegistry(a)
    simples, projs = simples_and_projectives(a)
    ids = [reg.insert(s) for s in simples]
    assert ids == [0, 1, 2]
    assert reg.insert(simples[1]) == 1
    assert [e["class_id"] for e in reg.export()] == [0, 1, 2]
