import numpy as np
import pytest

from finitistic.algebra import identity_morphism, radical, unit_morphism
from finitistic.harness import (
    EXAMPLE1_DOCUMENT,
    ChainSpec,
    HypothesisFailed,
    check_lemma51_52,
    default_probes,
    example1_scenario,
    generate_random_instance,
    omega_vector,
    pipeline_corollaries4,
    pipeline_prop1,
    pipeline_thm1,
    pipeline_thm2,
    quotient_family,
    to_json,
)
from finitistic.homology import nakayama_data, proj_dim, registry_for
from finitistic.modules import simples_and_projectives
from finitistic.parser import Workspace, named_ideal, parse_document
from finitistic.relative import Extension

from support import a2, a3, example1_workspace, kronecker, loop


def test_thm2_on_the_loop_gives_three():
    a = loop()
    cert = pipeline_thm2(a, radical(a), radical(a), a.whole, default_probes(a, 2))
    assert cert.bound == 3 and cert.verdict == "bound"
    assert cert.lint() == []
    assert all(h.verdict == "pass" for h in cert.hypotheses)
    for row in cert.probes:
        assert row["Y_covered"] and row["Z_covered"] and row["horseshoe_middle_matches"]


def test_thm2_refuses_when_the_product_is_nonzero():
    a = a3()
    with pytest.raises(HypothesisFailed) as exc:
        pipeline_thm2(a, a.whole, a.whole, a.whole, [])
    cert = exc.value.certificate
    assert cert.bound is None and cert.verdict == "hypothesis-failed"
    assert [h.name for h in cert.failed()] == ["IJK = 0"]


def test_thm2_needs_k_to_contain_the_radical():
    a = a2()
    with pytest.raises(HypothesisFailed, match="K contains rad"):
        pipeline_thm2(a, radical(a), radical(a), named_ideal(a, "zero"), [])


@pytest.mark.parametrize(
    "corollary,kwargs",
    [
        ("4.2", {"both": True}),
        ("4.3", {"both": True}),
        ("4.4", {"power": 1}),
        ("4.5", {"single": True, "variant": 1}),
        ("4.5", {"single": True, "variant": 2}),
        ("4.5", {"single": True, "variant": 3}),
    ],
)
def test_corollaries_reduce_to_the_general_bound(corollary, kwargs):
    a = loop()
    r = radical(a)
    args = {}
    if kwargs.get("both"):
        args.update(ideal_i=r, ideal_j=r)
    if kwargs.get("single"):
        args.update(ideal_i=r, variant=kwargs["variant"])
    if "power" in kwargs:
        args["power"] = kwargs["power"]
    cert = pipeline_corollaries4(a, corollary, default_probes(a, 1), **args)
    assert cert.theorem.startswith(f"cor{corollary}")
    assert cert.bound == 3 and cert.verdict == "bound"


def test_corollary_with_a_false_identity_fails():
    a = a3()
    with pytest.raises(HypothesisFailed):
        pipeline_corollaries4(a, "4.2", [], ideal_i=radical(a), ideal_j=radical(a))
    with pytest.raises(ValueError):
        pipeline_corollaries4(a, "4.7", [])


def test_quotient_families_are_tagged():
    a = a3()
    fam, comp, kind = quotient_family(a, radical(a))
    assert comp == "certified" and kind == "semisimple quotient" and len(fam) == 3
    assert quotient_family(a, a.whole) == ([], "certified", "quotient is zero")
    k = kronecker()
    _, comp, _ = quotient_family(k, named_ideal(k, "zero"))
    assert comp == "partial"


def test_thm1_identity_extension():
    a = loop()
    e = Extension(identity_morphism(a))
    s, ps = simples_and_projectives(a)
    cert = pipeline_thm1(e, s + [ps[0][0]], default_probes(a, 2))
    assert cert.bound == 1 and cert.verdict == "bound"


def test_thm1_unit_extension_is_conditional():
    a = a2()
    e = Extension(unit_morphism(a))
    cert = pipeline_thm1(e, simples_and_projectives(e.small)[0], default_probes(a, 2))
    assert cert.bound == 1
    assert cert.verdict == "conditional-bound" and cert.lint() == []


def test_thm1_part2_needs_a_declared_dimension():
    a = a2()
    e = Extension(unit_morphism(a))
    with pytest.raises(ValueError):
        pipeline_thm1(e, simples_and_projectives(e.small)[0], [], variant="part2")
    cert = pipeline_thm1(e, simples_and_projectives(e.small)[0], default_probes(a, 1), variant="part2", declared_n=2)
    assert cert.bound == 2 and "fd(phi) declared" in cert.conditional


def test_prop1_on_trivial_and_power_chains():
    for seed in range(3):
        inst = generate_random_instance("chain", seed, vertices=3, s=1)
        cert = pipeline_prop1(inst.chain, "lemma54", default_probes(inst.chain.algebras[0], 1))
        assert cert.verdict == "bound" and cert.bound is not None
        inst = generate_random_instance("chain", seed, vertices=3, s=2)
        cert = pipeline_prop1(inst.chain, "lemma53", default_probes(inst.chain.algebras[0], 1))
        assert cert.verdict == "bound"
        for row in cert.probes:
            if row["pd"].isdigit():
                assert int(row["pd"]) <= cert.bound


def test_prop1_names_the_broken_link():
    ws = Workspace(parse_document(EXAMPLE1_DOCUMENT + "chain Y : C <= A\n"))
    with pytest.raises(HypothesisFailed) as exc:
        pipeline_prop1(ChainSpec.from_workspace(ws, "Y"))
    assert "rad(C) is a left ideal of A" in str(exc.value)
    assert exc.value.certificate.bound is None


def test_chain_needs_a_link():
    with pytest.raises(ValueError):
        ChainSpec([loop()], [])


def test_torsionless_lifting_on_a_projective_probe():
    ws = example1_workspace()
    chain = ChainSpec.from_workspace(ws, "X")
    c = chain.algebras[0]
    pm = simples_and_projectives(c)[1][0][0]
    row = check_lemma51_52(chain, [pm])[0]
    assert row["omega2_torsionless"] and row["I0_omega_torsionless"]
    assert row["omega2_decomposition"]["found"]


def test_worked_example_is_deterministic():
    first = example1_scenario(seed=0)
    second = example1_scenario(seed=0)
    assert to_json(first) == to_json(second)
    assert first["verdict"] == "bound" and first["bound"] == 5
    checks = first["checks"]
    assert (checks["dim_A"], checks["dim_B"], checks["dim_C"]) == (20, 16, 15)
    assert checks["rad3_nonzero"] and not checks["rad_C_left_ideal_of_A"]
    assert checks["presentation_dims_match"]


def test_random_generators_are_reproducible():
    for kind in ("rad-square-zero", "monomial-nakayama", "chain"):
        one = generate_random_instance(kind, 4)
        two = generate_random_instance(kind, 4)
        assert one.document == two.document
        assert np.array_equal(one.algebra.struct, two.algebra.struct)
    for seed in range(5):
        a = generate_random_instance("monomial-nakayama", seed, vertices=4).algebra
        assert nakayama_data(a) is not None
        r = generate_random_instance("rad-square-zero", seed).algebra
        from finitistic.algebra import ideal_power

        assert ideal_power(radical(r), 2).is_zero()
    with pytest.raises(ValueError):
        generate_random_instance("rad-square-zero", 0, vertices=9)


def test_omega_vector_follows_the_syzygy():
    a = a2()
    reg = registry_for(a)
    s = next(x for x in simples_and_projectives(a)[0] if proj_dim(x).value == 1)
    vec = reg.class_vector(s)
    assert sum(omega_vector(reg, vec, 1).values()) == 0  # the syzygy is projective
    assert omega_vector(reg, vec, 0) == vec
