"""
The Igusa-Todorov function on the computable part of K(A).

For a module ``M`` let ``R`` be the set of nonprojective indecomposable
classes reachable from the summands of ``M`` under the syzygy, and let
``L`` be the integer matrix of the syzygy on the free group ``Z^R``.  The
subgroup generated by the summands of ``M`` is ``V_0``; its images are
``V_t = L^t V_0``.  Ranks of ``V_t`` never increase and are constant from
the Fitting index of ``L`` on (the power from which ``L`` is injective on
its image).  ``phi(M)`` is the first level whose rank equals the stable
one, and ``psi(M) = phi(M) + sup{pd Y : Y a summand of Omega^phi(M), pd Y < inf}``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np
import sympy

from .decomposition import IsoClassRegistry
from .homology import DEFAULT_CUTOFF, CutoffExceeded, PdResult, _explore, class_pd, proj_dim, registry_for
from .modules import Module, ShortExactSequence, direct_sum, syzygy, zero_module

__all__ = [
    "PsiIndeterminate",
    "PsiComputation",
    "phi",
    "psi",
    "psi_of_sum",
    "psi_of_vector",
    "Lemma21Report",
    "check_lemma21",
]


class PsiIndeterminate(RuntimeError):
    """A projective dimension needed by Psi could not be certified."""


@dataclass
class PsiComputation:
    classes: list  # the reachable nonprojective classes, in order
    levels: list  # dicts: level, class multiset, rank, distinct
    fitting_index: int
    phi: int
    psi: int
    pd_evidence: dict = field(default_factory=dict)  # class id -> PdResult
    first_equality: int | None = None  # first t with distinct(t) == distinct(t + 1)

    def to_json(self):
        return {
            "classes": self.classes,
            "levels": [
                {
                    "level": lv["level"],
                    "classes": {str(k): v for k, v in sorted(lv["classes"].items())},
                    "rank": lv["rank"],
                    "distinct": lv["distinct"],
                }
                for lv in self.levels
            ],
            "fitting_index": self.fitting_index,
            "phi": self.phi,
            "psi": self.psi,
            "first_equality": self.first_equality,
            "pd_evidence": {str(k): str(v) for k, v in sorted(self.pd_evidence.items())},
        }


def _rank_q(rows) -> int:
    if not rows or not rows[0]:
        return 0
    return int(sympy.Matrix(rows).rank())


def psi_of_vector(vec: Counter, reg: IsoClassRegistry, cutoff: int = DEFAULT_CUTOFF) -> PsiComputation:
    """Psi of the module whose nonprojective class vector is ``vec``."""
    vec = Counter({c: k for c, k in vec.items() if k})
    if not vec:
        return PsiComputation([], [{"level": 0, "classes": Counter(), "rank": 0, "distinct": 0}], 0, 0, 0, {}, 0)
    roots = sorted(vec)
    depth, complete = _explore(reg, roots, cutoff)
    if not complete:
        raise CutoffExceeded(f"syzygy class graph not closed within {cutoff} steps")
    classes = sorted(depth)
    pos = {c: i for i, c in enumerate(classes)}
    r = len(classes)
    L = np.zeros((r, r), dtype=object)  # row c = class vector of Omega(c)
    for c in classes:
        for d, k in reg.omega(c).items():
            L[pos[c], pos[d]] = k
    Lm = sympy.Matrix(L.tolist())

    # Fitting index of L: first f with rank L^f = rank L^(f+1)
    ranks_full = [r]
    power = sympy.eye(r)
    f = 0
    while True:
        power = power * Lm
        rk = int(power.rank())
        if rk == ranks_full[-1]:
            break
        ranks_full.append(rk)
        f += 1

    # levels 0 .. f + 1: V_t spanned by rows e_c L^t for c in the support
    levels = []
    rows = [[1 if j == pos[c] else 0 for j in range(r)] for c in roots]
    cur_vec = [0] * r
    for c, k in vec.items():
        cur_vec[pos[c]] = k
    cur_rows = sympy.Matrix(rows)
    cur_m = sympy.Matrix([cur_vec])
    for t in range(f + 2):
        ms = Counter({classes[j]: int(cur_m[0, j]) for j in range(r) if cur_m[0, j]})
        levels.append({"level": t, "classes": ms, "rank": int(cur_rows.rank()), "distinct": len(ms)})
        cur_rows = cur_rows * Lm
        cur_m = cur_m * Lm
    stable = levels[f]["rank"]
    ph = next(t for t in range(f + 1) if levels[t]["rank"] == stable)
    first_eq = next(
        (t for t in range(len(levels) - 1) if levels[t]["distinct"] == levels[t + 1]["distinct"]),
        None,
    )
    evidence = {}
    best = 0
    for c in sorted(levels[ph]["classes"]):
        res = class_pd(reg, c, cutoff)
        evidence[c] = res
        if res.status == "unknown":
            raise PsiIndeterminate(f"projective dimension of class {c} is undetermined")
        if res.is_finite:
            best = max(best, res.value)
    return PsiComputation(classes, levels, f, ph, ph + best, evidence, first_eq)


def psi(m: Module, registry: IsoClassRegistry | None = None, cutoff: int = DEFAULT_CUTOFF) -> PsiComputation:
    reg = registry or registry_for(m.algebra)
    return psi_of_vector(reg.class_vector(m), reg, cutoff)


def phi(m: Module, registry: IsoClassRegistry | None = None, cutoff: int = DEFAULT_CUTOFF) -> int:
    return psi(m, registry, cutoff).phi


def psi_of_sum(modules, registry: IsoClassRegistry | None = None, cutoff: int = DEFAULT_CUTOFF) -> PsiComputation:
    """Psi of a direct sum, computed from the summed class vectors."""
    modules = list(modules)
    if not modules:
        return psi_of_vector(Counter(), registry or IsoClassRegistry(None), cutoff)
    reg = registry or registry_for(modules[0].algebra)
    total = Counter()
    for m in modules:
        total.update(reg.class_vector(m))
    return psi_of_vector(total, reg, cutoff)


# ------------------------------------------------ Igusa-Todorov inequalities


@dataclass
class Lemma21Report:
    clauses: dict  # name -> "holds" | "vacuous" | "violated"
    details: dict

    @property
    def violated(self) -> list:
        return [k for k, v in self.clauses.items() if v == "violated"]


def _omega(m: Module) -> Module:
    return syzygy(m)[0]


def check_lemma21(ses: ShortExactSequence, registry: IsoClassRegistry | None = None, cutoff: int = DEFAULT_CUTOFF) -> Lemma21Report:
    """The four Igusa-Todorov inequalities for ``0 -> X -> Y -> Z -> 0``.

    (1) pd M finite implies psi M = pd M (checked for X, Y and Z);
    (2) pd Z finite implies pd Z <= psi(X + Y) + 1;
    (3) pd Y finite implies pd Y <= psi(Omega X + Omega^2 Z) + 2;
    (4) pd X finite implies pd X <= psi(Omega(Y + Z)) + 1.
    A needed projective dimension that stays unknown raises PsiIndeterminate.
    """
    x, y, z = ses.left, ses.middle, ses.right
    reg = registry or registry_for(y.algebra)
    pds = {}
    for name, mod in (("X", x), ("Y", y), ("Z", z)):
        r = proj_dim(mod, cutoff, reg)
        if r.status == "unknown":
            raise PsiIndeterminate(f"pd({name}) undetermined")
        pds[name] = r
    clauses, details = {}, {}

    ok = True
    vac = True
    for name, mod in (("X", x), ("Y", y), ("Z", z)):
        if pds[name].is_finite:
            vac = False
            val = psi(mod, reg, cutoff).psi
            details[f"psi({name})"] = val
            ok &= val == pds[name].value
    clauses["1"] = "vacuous" if vac else ("holds" if ok else "violated")

    def clause(key, pd_name, mods, shift):
        if not pds[pd_name].is_finite:
            clauses[key] = "vacuous"
            return
        bound = psi_of_sum(mods, reg, cutoff).psi + shift
        details[key] = (pds[pd_name].value, bound)
        clauses[key] = "holds" if pds[pd_name].value <= bound else "violated"

    clause("2", "Z", [x, y], 1)
    clause("3", "Y", [_omega(x), _omega(_omega(z))], 2)
    clause("4", "X", [_omega(y), _omega(z)], 1)
    details["pd"] = {k: str(v) for k, v in pds.items()}
    return Lemma21Report(clauses, details)
