"""Acceptance criteria 1-10, each logged as one PASS/FAIL line."""

import json
import time
from collections import Counter

import numpy as np

from finitistic.algebra import identity_morphism, radical, unit_morphism
from finitistic.cli import main
from finitistic.decomposition import IsoClassRegistry, decompose, modules_isomorphic
from finitistic.harness import (
    EXAMPLE1_DOCUMENT,
    generate_random_instance,
    pipeline_thm2,
    random_module,
    random_ses,
)
from finitistic.homology import minimal_resolution, padded_resolution, proj_dim, registry_for, schanuel_check
from finitistic.igusa_todorov import check_lemma21, psi
from finitistic.modules import direct_sum, is_projective, simples_and_projectives
from finitistic.relative import Extension, adjunction_dims, check_schanuel_relative, is_rel_projective, rel_proj_dim, restrict

from support import a2, a3, example1_workspace, example_a, exhaustive_radical, kronecker, loop, random_small_algebra


def _nonprojective_simple(a):
    return next(s for s in simples_and_projectives(a)[0] if not is_projective(s))


def test_criterion_1_worked_example(tmp_path, capsys, acceptance_log):
    out = tmp_path / "example1.json"
    t0 = time.perf_counter()
    code = main(["example1", "--format", "json", "--out", str(out)])
    elapsed = time.perf_counter() - t0
    capsys.readouterr()
    rep = json.loads(out.read_text())
    checks = rep["checks"]
    ok = (
        code == 0
        and checks["dim_A"] == 20
        and checks["A_nakayama"]
        and checks["A_indecomposables"] == 20
        and checks["rad_C_left_ideal_of_B"]
        and checks["rad_B_left_ideal_of_A"]
        and checks["rad3_nonzero"]
        and isinstance(rep["bound"], int)
        and rep["verdict"] == "bound"
        and elapsed < 60
    )
    acceptance_log(1, ok, f"bound {rep['bound']}, {elapsed:.1f}s")
    assert ok


def test_criterion_2_igusa_todorov_inequalities(acceptance_log):
    t0 = time.perf_counter()
    algebras = [loop(), a2()] + [generate_random_instance("rad-square-zero", s).algebra for s in range(20)] + [example_a()]
    tally = Counter()
    sequences = 0
    for idx, a in enumerate(algebras):
        reg = registry_for(a)
        rng = np.random.default_rng(1000 + idx)
        for _ in range(9):
            rep = check_lemma21(random_ses(a, rng), reg)
            tally.update(rep.clauses.values())
            sequences += 1
    elapsed = time.perf_counter() - t0
    ok = sequences >= 200 and tally["violated"] == 0 and elapsed < 300
    acceptance_log(2, ok, f"{sequences} sequences, holds {tally['holds']}, vacuous {tally['vacuous']}, violated {tally['violated']}, {elapsed:.1f}s")
    assert ok


def test_criterion_3_schanuel(acceptance_log):
    t0 = time.perf_counter()
    verdicts = []
    ordinary = [a2(), kronecker(), a3(), example_a(), loop()]
    rng = np.random.default_rng(33)
    for i in range(25):
        a = ordinary[i % len(ordinary)]
        reg = registry_for(a)
        n = 1 + i % 3
        x = random_module(a, rng, 6)
        res = minimal_resolution(x, n + 1)
        projs = simples_and_projectives(a)[1]
        extra = projs[int(rng.integers(len(projs)))][0]
        step = int(rng.integers(0, n))
        verdicts.append(schanuel_check(res, padded_resolution(res, step, extra), n, reg))
    relative = [Extension(unit_morphism(loop())), Extension(unit_morphism(a2())), Extension(identity_morphism(a2())), Extension(unit_morphism(kronecker()))]
    for i in range(25):
        e = relative[i % len(relative)]
        n = 1 + i % 3
        x = random_module(e.big, rng, 3)
        verdicts.append(check_schanuel_relative(e, x, n, pad_step=int(rng.integers(0, n))))
    elapsed = time.perf_counter() - t0
    ok = len(verdicts) == 50 and all(verdicts) and elapsed < 180
    acceptance_log(3, ok, f"{sum(verdicts)}/{len(verdicts)} isomorphic, {elapsed:.1f}s")
    assert ok


def test_criterion_4_radical_oracle(acceptance_log):
    agree = 0
    shapes = Counter()
    for seed in range(100):
        a = random_small_algebra(seed)
        oracle, _ = exhaustive_radical(a)
        r = radical(a)
        agree += r.space == oracle
        shapes[(a.dim, r.dim)] += 1
    ok = agree == 100
    acceptance_log(4, ok, f"{agree}/100 agree, (dim, rad dim) shapes {sorted(shapes)}")
    assert ok


def test_criterion_5_krull_schmidt_determinism(acceptance_log):
    algebras = [example_a(), kronecker(), a3(), a2()]
    rng = np.random.default_rng(55)
    stable = reassembled = 0
    for i in range(50):
        a = algebras[i % len(algebras)]
        m = random_module(a, rng, 8)
        reg = IsoClassRegistry(a)
        vectors = {tuple(sorted(reg.full_class_vector(m, seed=s).items())) for s in range(5)}
        stable += len(vectors) == 1
        dec = decompose(m, seed=i)
        reassembled += bool(dec.check()) and modules_isomorphic(direct_sum(*dec.modules()), m)
    ok = stable == 50 and reassembled == 50
    acceptance_log(5, ok, f"stable {stable}/50, reassembled {reassembled}/50")
    assert ok


def test_criterion_6_infinite_pd_detection(acceptance_log):
    s = simples_and_projectives(loop())[0][0]
    r = proj_dim(s)
    t = _nonprojective_simple(a2())
    rt = proj_dim(t)
    ok = (
        r.status == "infinite-periodic"
        and r.certificate["levels"] == [0, 1]
        and psi(s).psi == 0
        and rt.is_finite
        and rt.value == 1
        and psi(t).psi == 1
    )
    acceptance_log(6, ok, f"loop simple {r}, A2 simple pd {rt}")
    assert ok


def test_criterion_7_relative_absolute_coherence(acceptance_log):
    rng = np.random.default_rng(77)
    probes_checked = agree = 0
    for a in (loop(), a2(), kronecker(), a3()):
        e = Extension(unit_morphism(a))
        reg = registry_for(a)
        s, ps = simples_and_projectives(a)
        for m in s + [pm for pm, _ in ps] + [random_module(a, rng, 6) for _ in range(6)]:
            probes_checked += 1
            pd = proj_dim(m, registry=reg)
            rpd = rel_proj_dim(e, m, registry=reg)
            same_proj = bool(is_rel_projective(e, m)) == (pd.is_finite and pd.value == 0)
            same_dim = (rpd.is_finite and pd.is_finite and rpd.value == pd.value) or (
                not pd.is_finite and rpd.status == "infinite-periodic" and pd.status == "infinite-periodic"
            )
            agree += same_proj and same_dim
    identity_zero = identity_total = 0
    for a in (loop(), a2(), kronecker(), a3(), example_a()):
        e = Extension(identity_morphism(a))
        for m in simples_and_projectives(a)[0] + [random_module(a, rng, 6) for _ in range(2)]:
            identity_total += 1
            r = rel_proj_dim(e, m)
            identity_zero += r.is_finite and r.value == 0
    ok = probes_checked >= 30 and agree == probes_checked and identity_zero == identity_total
    acceptance_log(7, ok, f"unit extension {agree}/{probes_checked}, identity rpd 0 on {identity_zero}/{identity_total}")
    assert ok


def test_criterion_8_adjunction(acceptance_log):
    ws = example1_workspace()
    exts = [
        Extension(unit_morphism(a2())),
        Extension(identity_morphism(example_a())),
        Extension(ws.inclusion("B", "A"), is_inclusion=True),
    ]
    rng = np.random.default_rng(88)
    equal = 0
    for i in range(50):
        e = exts[i % 3]
        x = restrict(e, random_module(e.big, rng, 5))
        y = random_module(e.big, rng, 6)
        left, right = adjunction_dims(e, x, y)
        equal += left == right
    ok = equal == 50
    acceptance_log(8, ok, f"{equal}/50 equal")
    assert ok


def test_criterion_9_general_bound_at_desk_scale(acceptance_log):
    t0 = time.perf_counter()
    checked = violations = hyp_fail = 0
    bounds = []
    for seed in range(20):
        a = generate_random_instance("rad-square-zero", seed, vertices=3).algebra
        r = radical(a)
        rng = np.random.default_rng(900 + seed)
        probes = simples_and_projectives(a)[0] + [random_module(a, rng) for _ in range(10)]
        cert = pipeline_thm2(a, r, r, a.whole, probes)
        hyp_fail += bool(cert.failed())
        bounds.append(cert.bound)
        for row in cert.probes:
            if row["pd"].isdigit():
                checked += 1
                violations += int(row["pd"]) > cert.bound
    elapsed = time.perf_counter() - t0
    ok = hyp_fail == 0 and violations == 0 and elapsed < 600
    acceptance_log(9, ok, f"{checked} finite-pd probes, violations {violations}, bounds {min(bounds)}..{max(bounds)}, {elapsed:.1f}s")
    assert ok


def test_criterion_10_negative_controls(tmp_path, capsys, acceptance_log):
    doc = tmp_path / "broken.txt"
    doc.write_text(EXAMPLE1_DOCUMENT + "chain Y : C <= A\n")
    code_chain = main(["theorem", "prop1", str(doc), "--chain", "Y"])
    out = capsys.readouterr()
    rep_chain = json.loads(out.out)
    code_thm2 = main(["theorem", "thm2", str(doc), "--algebra", "A", "--I", "whole", "--J", "whole", "--K", "whole"])
    rep_thm2 = json.loads(capsys.readouterr().out)
    ok = (
        code_chain == 1
        and rep_chain["bound"] is None
        and "rad(C) is a left ideal of A" in rep_chain["error"]
        and code_thm2 == 1
        and rep_thm2["bound"] is None
        and rep_thm2["verdict"] == "hypothesis-failed"
    )
    acceptance_log(10, ok, f"chain exit {code_chain}, thm2 exit {code_thm2}")
    assert ok
