"""
Command line front end.

Every command writes one report (JSON or plain text) to stdout or to
``--out``.  Exit codes: 0 success, 1 a checked hypothesis fails, 2 the
input is malformed, 3 the result is indeterminate within the cutoffs.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

import numpy as np

from .algebra import AlgebraError, ideal_power, radical
from .harness import (
    ChainSpec,
    HypothesisFailed,
    NotNakayama,
    _plain,
    default_probes,
    example1_scenario,
    generate_random_instance,
    pipeline_corollaries4,
    pipeline_prop1,
    pipeline_thm1,
    pipeline_thm2,
    random_ses,
    to_json,
)
from .homology import DEFAULT_CUTOFF, CutoffExceeded, nakayama_data, proj_dim, registry_for, syzygy_chain
from .igusa_todorov import PsiIndeterminate, check_lemma21, psi
from .modules import InvalidModule, UnsupportedField, rep_data, simples_and_projectives
from .parser import InputSyntaxError, Workspace, named_ideal, parse_document
from .quiver import NonComposablePath, UnknownSymbol
from .relative import NotAnExtension, enumerate_rel_projectives, is_rel_projective, rel_proj_dim

EXIT_OK, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_INDETERMINATE = 0, 1, 2, 3

INPUT_ERRORS = (InputSyntaxError, UnknownSymbol, NonComposablePath, AlgebraError, InvalidModule, NotAnExtension, UnsupportedField, OSError, ValueError)


class Indeterminate(RuntimeError):
    pass


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--prime", type=int, default=None, help="field characteristic (default 32003, or the document's)")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--syzygy-cutoff", type=int, default=DEFAULT_CUTOFF)
    c.add_argument("--pd-cutoff", type=int, default=None, help="defaults to the syzygy cutoff")
    c.add_argument("--out", default=None, help="write the report here instead of stdout")
    c.add_argument("--format", choices=("json", "text"), default="json")
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = _Parser(prog="finitistic", description="Finitistic dimension bounds with checkable certificates.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", parents=[common], help="parse a document and list its objects")
    p.add_argument("file")

    p = sub.add_parser("algebra-info", parents=[common], help="basic invariants of an algebra")
    p.add_argument("file")
    p.add_argument("--algebra", default=None)

    p = sub.add_parser("module", parents=[common], help="pd, Psi or syzygies of a module")
    p.add_argument("action", choices=("pd", "psi", "syzygy"))
    p.add_argument("file")
    p.add_argument("--module", required=True)

    p = sub.add_parser("extension", parents=[common], help="relative homological data of an extension")
    p.add_argument("action", choices=("rpd", "relproj"))
    p.add_argument("file")
    p.add_argument("--extension", required=True)
    p.add_argument("--module", default=None)

    p = sub.add_parser("theorem", parents=[common], help="run a bound pipeline")
    p.add_argument("which", choices=("thm1", "thm2", "cor4", "prop1"))
    p.add_argument("file")
    p.add_argument("--algebra", default=None)
    p.add_argument("--extension", default=None)
    p.add_argument("--chain", default=None)
    p.add_argument("--I", dest="ideal_i", default=None, help="ideal name or rad, rad^n, whole, zero")
    p.add_argument("--J", dest="ideal_j", default=None)
    p.add_argument("--K", dest="ideal_k", default=None)
    p.add_argument("--corollary", choices=("4.2", "4.3", "4.4", "4.5"), default=None)
    p.add_argument("--power", type=int, default=None)
    p.add_argument("--variant", default=None, help="part1|part2, lemma53|lemma54, or 1|2|3")
    p.add_argument("--n", type=int, default=None, help="declared fd(phi) for thm1 part2")
    p.add_argument("--probes", type=int, default=4, help="number of random probes besides simples and projectives")

    sub.add_parser("example1", parents=[common], help="the worked chain example end to end")

    p = sub.add_parser("fuzz", parents=[common], help="Igusa-Todorov inequalities on random sequences")
    p.add_argument("--kind", choices=("rad-square-zero", "monomial-nakayama", "chain"), default="rad-square-zero")
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--vertices", type=int, default=3)
    p.add_argument("--sequences", type=int, default=5)
    return top


# ----------------------------------------------------------------- helpers


def _workspace(args) -> Workspace:
    with open(args.file, encoding="utf-8") as fh:
        doc = parse_document(fh.read())
    if args.prime is not None:
        doc.prime = args.prime
    return Workspace(doc)


def _prime(args) -> int:
    return args.prime if args.prime is not None else 32003


def _cutoffs(args) -> dict:
    return {"syzygy": args.syzygy_cutoff, "pd": args.pd_cutoff}


def _base(args, command: str) -> dict:
    return {"command": command, "prime": _prime(args), "seed": args.seed, "cutoffs": _cutoffs(args)}


def _ideal(ws: Workspace, alg_name: str, spec: str | None):
    if spec is None:
        return None
    if spec in ws.doc.ideals:
        alg, _, _ = ws.doc.ideals[spec]
        if alg != alg_name:
            raise ValueError(f"ideal {spec} belongs to {alg}, not {alg_name}")
        return ws.ideal(spec)
    return named_ideal(ws.algebra(alg_name), spec)


def _render_text(report: dict) -> str:
    lines = []
    for key in sorted(report):
        val = report[key]
        if key == "hypotheses":
            for h in val:
                lines.append(f"hypothesis: {h['name']}: {h['verdict']}")
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{key}: {len(val)} entries")
        elif key == "psi_transcript":
            lines.append(f"{key}: {'present' if val else 'none'}")
        elif isinstance(val, dict):
            for k2 in sorted(val):
                lines.append(f"{key}.{k2}: {_plain(val[k2])}")
        else:
            lines.append(f"{key}: {_plain(val)}")
    return "\n".join(lines) + "\n"


def _emit(args, report: dict) -> None:
    text = to_json(report) + "\n" if args.format == "json" else _render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands


def cmd_parse(args) -> dict:
    ws = _workspace(args)
    rep = _base(args, "parse")
    rep["algebras"] = {n: {"dim": a.dim, "prime": a.p} for n, a in ws.algebras.items()}
    rep["ideals"] = sorted(ws.doc.ideals)
    rep["chains"] = {n: links for n, (links, _) in ws.doc.chains.items()}
    rep["extensions"] = sorted(ws.doc.extensions)
    rep["modules"] = {n: ws.module(n).dim for n in ws.doc.modules}
    rep["verdict"] = "ok"
    return rep


def cmd_algebra_info(args) -> dict:
    ws = _workspace(args)
    names = [args.algebra] if args.algebra else list(ws.algebras)
    rep = _base(args, "algebra-info")
    pd_cut = args.pd_cutoff or args.syzygy_cutoff
    info = {}
    for name in names:
        a = ws.algebra(name)
        rad = radical(a)
        powers, k = [], 1
        while True:
            r = ideal_power(rad, k)
            powers.append(r.dim)
            if r.dim == 0:
                break
            k += 1
        reg = registry_for(a)
        simples, _ = simples_and_projectives(a)
        nd = nakayama_data(a, reg)
        info[name] = {
            "dim": a.dim,
            "radical_dim": rad.dim,
            "radical_power_dims": powers,
            "loewy_length": len(powers),
            "simple_types": rep_data(a).n_types,
            "commutative": a.is_commutative(),
            "nakayama": nd is not None,
            "indecomposables": nd.certificate["count"] if nd is not None else None,
            "simple_pd": [str(proj_dim(s, pd_cut, reg)) for s in simples],
        }
    rep["algebras"] = info
    rep["verdict"] = "ok"
    return rep


def cmd_module(args) -> dict:
    ws = _workspace(args)
    m = ws.module(args.module)
    reg = registry_for(m.algebra)
    rep = _base(args, f"module {args.action}")
    rep["module"] = {"name": args.module, "dim": m.dim, "algebra": m.algebra.name}
    pd_cut = args.pd_cutoff or args.syzygy_cutoff
    if args.action == "pd":
        r = proj_dim(m, pd_cut, reg)
        rep["pd"] = r.to_json()
        rep["result"] = str(r)
        if r.status == "unknown":
            raise Indeterminate(f"projective dimension undetermined within {pd_cut} steps", rep)
    elif args.action == "psi":
        comp = psi(m, reg, args.syzygy_cutoff)
        rep["psi_transcript"] = comp.to_json()
        rep["result"] = {"phi": comp.phi, "psi": comp.psi}
    else:
        ch = syzygy_chain(m, args.syzygy_cutoff, reg)
        rep["syzygies"] = [
            {"level": i, "dim": t.dim, "classes": {str(c): k for c, k in sorted(v.items())}}
            for i, (t, v) in enumerate(zip(ch.terms, ch.class_vectors))
        ]
        rep["result"] = {"status": ch.status, "levels": list(ch.levels) if ch.levels else None}
        if ch.status == "cutoff":
            raise Indeterminate("syzygy chain reached the cutoff", rep)
    rep["registry_snapshot"] = reg.export()
    rep["verdict"] = "ok"
    return rep


def _family_of(b):
    """Indecomposables of ``b`` when certifiable, else simples and projectives."""
    nd = nakayama_data(b)
    if nd is not None:
        return nd.indecomposables, True
    if radical(b).dim == 0:
        return simples_and_projectives(b)[0], True
    s, ps = simples_and_projectives(b)
    return s + [pm for pm, _ in ps], False


def cmd_extension(args) -> dict:
    ws = _workspace(args)
    e = ws.extension(args.extension)
    a = e.big
    reg = registry_for(a)
    rep = _base(args, f"extension {args.action}")
    rep["extension"] = {"name": args.extension, "small_dim": e.small.dim, "big_dim": a.dim}
    mods = [ws.module(args.module)] if args.module else default_probes(a, 0)
    if args.module and mods[0].algebra is not a:
        raise ValueError(f"module {args.module} is not over {a.name}")
    pd_cut = args.pd_cutoff or args.syzygy_cutoff
    if args.action == "rpd":
        rows = []
        for x in mods:
            r = rel_proj_dim(e, x, pd_cut, reg)
            rows.append({"dim": x.dim, "rpd": str(r), "pd": str(proj_dim(x, pd_cut, reg))})
        rep["results"] = rows
        if any(r["rpd"].startswith("unknown") for r in rows):
            raise Indeterminate("relative projective dimension undetermined", rep)
    else:
        rep["results"] = [{"dim": x.dim, "relative_projective": bool(is_rel_projective(e, x))} for x in mods]
        fam, complete = _family_of(e.small)
        lst = enumerate_rel_projectives(e, fam, complete, reg)
        rep["relative_projective_classes"] = lst.classes
        rep["complete"] = complete
        rep["registry_snapshot"] = reg.export()
    rep["verdict"] = "ok"
    return rep


def cmd_theorem(args) -> dict:
    ws = _workspace(args)
    pd_cut = args.pd_cutoff or args.syzygy_cutoff
    cut = args.syzygy_cutoff
    if args.which == "thm1":
        if not args.extension:
            raise ValueError("thm1 needs --extension")
        e = ws.extension(args.extension)
        fam, complete = _family_of(e.small)
        probes = default_probes(e.big, args.probes, args.seed)
        cert = pipeline_thm1(e, fam, probes, args.variant or "part1", args.n, complete, cut)
    elif args.which in ("thm2", "cor4"):
        if not args.algebra:
            raise ValueError(f"{args.which} needs --algebra")
        a = ws.algebra(args.algebra)
        probes = default_probes(a, args.probes, args.seed)
        ii, jj = _ideal(ws, args.algebra, args.ideal_i), _ideal(ws, args.algebra, args.ideal_j)
        if args.which == "thm2":
            kk = _ideal(ws, args.algebra, args.ideal_k)
            if ii is None or jj is None or kk is None:
                raise ValueError("thm2 needs --I, --J and --K")
            cert = pipeline_thm2(a, ii, jj, kk, probes, cutoff=cut)
        else:
            if not args.corollary:
                raise ValueError("cor4 needs --corollary")
            variant = int(args.variant) if args.variant else None
            cert = pipeline_corollaries4(a, args.corollary, probes, ii, jj, args.power, variant, cut)
    else:
        if not args.chain:
            raise ValueError("prop1 needs --chain")
        chain = ChainSpec.from_workspace(ws, args.chain)
        probes = default_probes(chain.algebras[0], args.probes, args.seed)
        cert = pipeline_prop1(chain, args.variant or "lemma54", probes, cutoff=cut)
    rep = cert.report(f"theorem {args.which}", _prime(args), args.seed, {"syzygy": cut, "pd": pd_cut})
    return rep


def cmd_example1(args) -> dict:
    return example1_scenario(_prime(args), args.seed, args.syzygy_cutoff)


def cmd_fuzz(args) -> dict:
    rep = _base(args, "fuzz")
    rows = []
    tally = Counter()
    for i in range(args.count):
        inst = generate_random_instance(args.kind, args.seed + i, vertices=args.vertices, prime=_prime(args))
        a = inst.algebra
        reg = registry_for(a)
        rng = np.random.default_rng(args.seed * 7919 + i)
        for _ in range(args.sequences):
            ses = random_ses(a, rng)
            r = check_lemma21(ses, reg, args.syzygy_cutoff)
            tally.update(r.clauses.values())
            rows.append({"instance": i, "dims": [ses.left.dim, ses.middle.dim, ses.right.dim], "clauses": r.clauses})
    rep["instances"] = args.count
    rep["results"] = rows
    rep["tally"] = dict(tally)
    bad = [r for r in rows if "violated" in r["clauses"].values()]
    rep["verdict"] = "violations" if bad else "ok"
    if bad:
        raise HypothesisFailed(f"{len(bad)} sequences violate an inequality", rep)
    return rep


COMMANDS = {
    "parse": cmd_parse,
    "algebra-info": cmd_algebra_info,
    "module": cmd_module,
    "extension": cmd_extension,
    "theorem": cmd_theorem,
    "example1": cmd_example1,
    "fuzz": cmd_fuzz,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(str(exc))
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.pd_cutoff is None:
        args.pd_cutoff = args.syzygy_cutoff
    try:
        report = COMMANDS[args.command](args)
    except HypothesisFailed as exc:
        cert = exc.certificate
        if isinstance(cert, dict):
            report = cert
        elif cert is not None:
            report = cert.report(_command_name(args), _prime(args), args.seed, _cutoffs(args))
        else:
            report = _base(args, _command_name(args))
            report["verdict"] = "hypothesis-failed"
        report["bound"] = None
        report["error"] = str(exc)
        _emit(args, report)
        sys.stderr.write(f"hypothesis failed: {exc}\n")
        return EXIT_HYPOTHESIS
    except NotNakayama as exc:
        report = _base(args, _command_name(args))
        report.update({"bound": None, "verdict": "hypothesis-failed", "error": str(exc)})
        _emit(args, report)
        sys.stderr.write(f"hypothesis failed: {exc}\n")
        return EXIT_HYPOTHESIS
    except (Indeterminate, CutoffExceeded, PsiIndeterminate) as exc:
        report = exc.args[1] if isinstance(exc, Indeterminate) and len(exc.args) > 1 else _base(args, _command_name(args))
        report["verdict"] = "indeterminate"
        report["error"] = str(exc.args[0])
        _emit(args, report)
        sys.stderr.write(f"indeterminate: {exc.args[0]}\n")
        return EXIT_INDETERMINATE
    except INPUT_ERRORS as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    _emit(args, report)
    return EXIT_OK


def _command_name(args) -> str:
    extra = getattr(args, "action", None) or getattr(args, "which", None)
    return f"{args.command} {extra}" if extra else args.command


cli_main = main

if __name__ == "__main__":
    sys.exit(main())
