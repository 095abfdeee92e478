import numpy as np
import pytest

from finitistic.algebra import AlgebraMorphism, identity_morphism, unit_morphism
from finitistic.harness import random_module
from finitistic.homology import proj_dim, registry_for
from finitistic.modules import AlgebraMismatch, is_projective, simples_and_projectives
from finitistic.relative import (
    Extension,
    NotAnExtension,
    adjunction_dims,
    check_schanuel_relative,
    enumerate_rel_projectives,
    fd_phi_sample,
    induce,
    is_rel_projective,
    rel_proj_dim,
    restrict,
    standard_relative_resolution,
)

from support import a2, example1_workspace, example_a, kronecker, loop


def _probes(a, seed=0, n=4):
    rng = np.random.default_rng(seed)
    s, ps = simples_and_projectives(a)
    return s + [pm for pm, _ in ps] + [random_module(a, rng, 6) for _ in range(n)]


def test_induction_along_the_unit_is_free():
    a = kronecker()
    e = Extension(unit_morphism(a))
    for m in _probes(a):
        x = restrict(e, m)
        ind = induce(e, x)
        assert ind.module.dim == a.dim * x.dim
        assert is_projective(ind.module)


def test_induction_along_the_identity_is_trivial():
    a = a2()
    e = Extension(identity_morphism(a))
    for m in _probes(a):
        assert induce(e, restrict(e, m)).module.dim == m.dim


def test_unit_extension_relative_projective_means_projective():
    for a in (loop(), a2(), kronecker()):
        e = Extension(unit_morphism(a))
        reg = registry_for(a)
        for m in _probes(a, seed=1):
            assert bool(is_rel_projective(e, m)) == is_projective(m)
            pd, rpd = proj_dim(m, registry=reg), rel_proj_dim(e, m, registry=reg)
            if pd.is_finite:
                assert rpd.is_finite and rpd.value == pd.value
            else:
                assert rpd.status == "infinite-periodic"


def test_identity_extension_makes_everything_relatively_projective():
    a = example_a()
    e = Extension(identity_morphism(a))
    for m in _probes(a, seed=2, n=2):
        assert is_rel_projective(e, m)
        assert rel_proj_dim(e, m).value == 0


def test_section_splits_the_multiplication_map():
    a = a2()
    e = Extension(unit_morphism(a))
    for pm, _ in simples_and_projectives(a)[1]:
        v = is_rel_projective(e, pm)
        assert v.verdict and v.section is not None


def test_standard_resolution_splittings():
    a = a2()
    e = Extension(unit_morphism(a))
    for m in _probes(a, seed=3):
        res = standard_relative_resolution(e, m)
        assert res.check_splittings()
        assert res.as_resolution().check()
        if not is_projective(m):
            assert res.status == "terminated" and res.length == proj_dim(m).value


def test_standard_resolution_of_periodic_module():
    a = loop()
    e = Extension(unit_morphism(a))
    s = simples_and_projectives(a)[0][0]
    res = standard_relative_resolution(e, s, min_length=2)
    assert res.status == "periodic"
    assert len(res.terms) >= 2 and res.check_splittings()


def test_relative_schanuel_on_small_algebras():
    for a in (loop(), a2()):
        e = Extension(unit_morphism(a))
        for m in simples_and_projectives(a)[0]:
            for n in (1, 2):
                assert check_schanuel_relative(e, m, n)


def test_adjunction_on_three_extensions():
    ws = example1_workspace()
    exts = [
        Extension(unit_morphism(a2())),
        Extension(identity_morphism(kronecker())),
        Extension(ws.inclusion("B", "A"), is_inclusion=True),
    ]
    rng = np.random.default_rng(5)
    for e in exts:
        for _ in range(3):
            x = restrict(e, random_module(e.big, rng, 6))
            y = random_module(e.big, rng, 6)
            left, right = adjunction_dims(e, x, y)
            assert left == right


def test_relative_projectives_of_the_unit_extension_are_projectives():
    a = a2()
    e = Extension(unit_morphism(a))
    k = e.small
    one = simples_and_projectives(k)[0]
    lst = enumerate_rel_projectives(e, one)
    assert all(is_projective(m) for m in lst.modules())
    assert len(lst.classes) == 2


def test_fd_phi_sample_rows():
    a = loop()
    e = Extension(unit_morphism(a))
    sample = fd_phi_sample(e, _probes(a, n=1))
    assert sample.fd_observed == 0
    assert sample.gd_observed is None  # the simple has infinite relative dimension
    assert {"dim", "pd", "rpd"} <= set(sample.per_probe[0])


def test_misuse_is_rejected():
    a = a2()
    e = Extension(unit_morphism(a))
    with pytest.raises(AlgebraMismatch):
        induce(e, simples_and_projectives(a)[0][0])
    with pytest.raises(AlgebraMismatch):
        rel_proj_dim(e, restrict(e, simples_and_projectives(a)[0][0]))
    good = unit_morphism(a)
    bad = AlgebraMorphism(good.source, good.target, np.zeros_like(good.matrix))
    with pytest.raises(NotAnExtension):
        Extension(bad)
