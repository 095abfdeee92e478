"""
Line-oriented input language for algebras, subalgebras, ideals, chains,
extensions and modules.

    # comments run to end of line
    field gfp 32003                 (document default, or per algebra)
    algebra A
    vertex 1 2 3
    arrow a : 1 -> 2
    rel 1*a*b - 2*c*d = 0
    nilpotency 4
    subalgebra C of A generated by e1, e2+e3, a*b
    ideal I of A generated by a, b        (also: rad, rad^n, whole, zero)
    chain X : C <= B <= A
    extension f : C -> A inclusion        (also: identity, unit)
    module M over A
    vertexdims 1 1 1
    act a = [[1]]
    dim 3                                 (with per-basis-label act lines)

Paths follow the convention ``a*b`` = "a, then b".  For a module given by
arrow matrices, ``act a = [[...]]`` for ``a: s -> t`` is the matrix of the
action of ``a`` from the block of vertex ``t`` to the block of vertex ``s``
(column vectors; rows index the basis of vertex ``s``).
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteDimAlgebra
from .quiver import Arrow, BoundQuiverPresentation, NonComposablePath, Quiver, UnknownSymbol, build_algebra

__all__ = [
    "InputSyntaxError",
    "NonComposablePath",
    "UnknownSymbol",
    "Document",
    "parse_presentation",
    "parse_document",
    "parse_expression",
]

DEFAULT_PRIME = 32003


class InputSyntaxError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


_IDENT = r"[^\s:*+\-=,<>#\[\]]+"


@dataclass
class AlgebraBlock:
    name: str
    line: int
    prime: int | None = None
    vertices: list = field(default_factory=list)
    arrows: list = field(default_factory=list)
    relations: list = field(default_factory=list)
    nilpotency: int | None = None

    def presentation(self) -> BoundQuiverPresentation:
        q = Quiver(tuple(self.vertices), tuple(self.arrows))
        if self.nilpotency is None:
            raise InputSyntaxError(self.line, f"algebra {self.name} has no nilpotency line")
        return BoundQuiverPresentation(q, tuple(self.relations), self.nilpotency, self.name)


@dataclass
class ModuleBlock:
    name: str
    algebra: str
    line: int
    dim: int | None = None
    vertexdims: list | None = None
    acts: dict = field(default_factory=dict)


@dataclass
class Document:
    prime: int | None = None
    algebras: dict = field(default_factory=dict)
    subalgebras: dict = field(default_factory=dict)  # name -> (parent, [expr terms], line)
    ideals: dict = field(default_factory=dict)  # name -> (algebra, spec, line)
    chains: dict = field(default_factory=dict)  # name -> ([algebra names], line)
    extensions: dict = field(default_factory=dict)  # name -> (B, A, kind, line)
    modules: dict = field(default_factory=dict)
    order: list = field(default_factory=list)


def _split_terms(expr: str, line: int):
    expr = expr.replace(" ", "")
    if not expr:
        raise InputSyntaxError(line, "empty expression")
    terms = re.findall(r"[+-]?[^+-]+", expr)
    if "".join(terms) != expr:
        raise InputSyntaxError(line, f"cannot parse expression {expr!r}")
    out = []
    for t in terms:
        sign = -1 if t.startswith("-") else 1
        t = t.lstrip("+-")
        factors = t.split("*")
        if any(f == "" for f in factors):
            raise InputSyntaxError(line, f"dangling '*' in {t!r}")
        coef = 1
        while factors and re.fullmatch(r"\d+", factors[0]):
            coef *= int(factors.pop(0))
        out.append((sign * coef, tuple(factors)))
    return out


def parse_expression(expr: str, line: int = 0):
    """Linear combination of products: list of ``(coefficient, factors)``."""
    return _split_terms(expr, line)


def _parse_relation(rest: str, line: int, q: Quiver):
    if "=" not in rest:
        raise InputSyntaxError(line, "relation must end with '= 0'")
    lhs, rhs = rest.rsplit("=", 1)
    if rhs.strip() != "0":
        raise InputSyntaxError(line, "relation right-hand side must be 0")
    terms = _split_terms(lhs, line)
    out = []
    for c, path in terms:
        if not path:
            raise InputSyntaxError(line, "relation term without a path")
        for a in path:
            q.arrow(a)  # raises UnknownSymbol
        q.path_endpoints(path)  # raises NonComposablePath
        out.append((c, path))
    return out


def parse_document(text: str) -> Document:
    doc = Document()
    cur = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            cur = _dispatch(doc, cur, head, rest, lineno)
        except (UnknownSymbol, NonComposablePath, InputSyntaxError):
            raise
        except ValueError as exc:
            raise InputSyntaxError(lineno, str(exc)) from exc
    return doc


def _need_block(cur, kind, head, lineno):
    if not isinstance(cur, kind):
        raise InputSyntaxError(lineno, f"'{head}' outside of a matching block")
    return cur


def _dispatch(doc: Document, cur, head: str, rest: str, lineno: int):
    if head == "algebra":
        if not re.fullmatch(_IDENT, rest):
            raise InputSyntaxError(lineno, f"bad algebra name {rest!r}")
        blk = AlgebraBlock(rest, lineno)
        doc.algebras[rest] = blk
        doc.order.append(("algebra", rest))
        return blk
    if head == "field":
        m = re.fullmatch(r"gfp\s+(\d+)", rest)
        if not m:
            raise InputSyntaxError(lineno, "expected 'field gfp <p>'")
        if isinstance(cur, AlgebraBlock):
            cur.prime = int(m.group(1))
        else:
            doc.prime = int(m.group(1))
        return cur
    if head == "vertex":
        blk = _need_block(cur, AlgebraBlock, head, lineno)
        if not rest:
            raise InputSyntaxError(lineno, "vertex line without identifiers")
        blk.vertices.extend(rest.split())
        return blk
    if head == "arrow":
        blk = _need_block(cur, AlgebraBlock, head, lineno)
        m = re.fullmatch(rf"({_IDENT})\s*:\s*({_IDENT})\s*->\s*({_IDENT})", rest)
        if not m:
            raise InputSyntaxError(lineno, "expected 'arrow <name> : <src> -> <tgt>'")
        name, s, t = m.groups()
        for v in (s, t):
            if v not in blk.vertices:
                raise UnknownSymbol(f"line {lineno}: unknown vertex {v!r}")
        blk.arrows.append(Arrow(name, s, t))
        return blk
    if head == "rel":
        blk = _need_block(cur, AlgebraBlock, head, lineno)
        q = Quiver(tuple(blk.vertices), tuple(blk.arrows))
        try:
            blk.relations.append(_parse_relation(rest, lineno, q))
        except UnknownSymbol as exc:
            raise UnknownSymbol(f"line {lineno}: {exc}") from exc
        except NonComposablePath as exc:
            raise NonComposablePath(f"line {lineno}: {exc}") from exc
        return blk
    if head == "nilpotency":
        blk = _need_block(cur, AlgebraBlock, head, lineno)
        if not re.fullmatch(r"\d+", rest):
            raise InputSyntaxError(lineno, "nilpotency needs an integer")
        blk.nilpotency = int(rest)
        return blk
    if head == "subalgebra":
        m = re.fullmatch(rf"({_IDENT})\s+of\s+({_IDENT})\s+generated\s+by\s+(.+)", rest)
        if not m:
            raise InputSyntaxError(lineno, "expected 'subalgebra <name> of <parent> generated by ...'")
        name, parent, gens = m.groups()
        exprs = [_split_terms(g, lineno) for g in gens.split(",")]
        doc.subalgebras[name] = (parent, exprs, lineno)
        doc.order.append(("subalgebra", name))
        return None
    if head == "ideal":
        m = re.fullmatch(rf"({_IDENT})\s+of\s+({_IDENT})\s+generated\s+by\s+(.+)", rest)
        m2 = re.fullmatch(rf"({_IDENT})\s+of\s+({_IDENT})\s*=\s*(rad(\^\d+)?|whole|zero)", rest)
        if m:
            name, alg, gens = m.groups()
            spec = ("generated", [_split_terms(g, lineno) for g in gens.split(",")])
        elif m2:
            name, alg, word = m2.group(1), m2.group(2), m2.group(3)
            spec = ("named", word)
        else:
            raise InputSyntaxError(lineno, "expected 'ideal <name> of <alg> generated by ...' or '= rad^n'")
        doc.ideals[name] = (alg, spec, lineno)
        return None
    if head == "chain":
        m = re.fullmatch(rf"({_IDENT})\s*:\s*(.+)", rest)
        if not m:
            raise InputSyntaxError(lineno, "expected 'chain <name> : A0 <= A1 <= ...'")
        links = [s.strip() for s in m.group(2).split("<=")]
        if any(not re.fullmatch(_IDENT, s) for s in links):
            raise InputSyntaxError(lineno, "bad chain member")
        doc.chains[m.group(1)] = (links, lineno)
        return None
    if head == "extension":
        m = re.fullmatch(rf"({_IDENT})\s*:\s*({_IDENT})\s*->\s*({_IDENT})\s+(inclusion|identity|unit)", rest)
        if not m:
            raise InputSyntaxError(lineno, "expected 'extension <name> : <B> -> <A> inclusion|identity|unit'")
        name, b, a, kind = m.groups()
        doc.extensions[name] = (b, a, kind, lineno)
        return None
    if head == "module":
        m = re.fullmatch(rf"({_IDENT})\s+over\s+({_IDENT})", rest)
        if not m:
            raise InputSyntaxError(lineno, "expected 'module <name> over <algebra>'")
        blk = ModuleBlock(m.group(1), m.group(2), lineno)
        doc.modules[blk.name] = blk
        return blk
    if head == "dim":
        blk = _need_block(cur, ModuleBlock, head, lineno)
        if not re.fullmatch(r"\d+", rest):
            raise InputSyntaxError(lineno, "dim needs an integer")
        blk.dim = int(rest)
        return blk
    if head == "vertexdims":
        blk = _need_block(cur, ModuleBlock, head, lineno)
        try:
            blk.vertexdims = [int(x) for x in rest.split()]
        except ValueError:
            raise InputSyntaxError(lineno, "vertexdims needs integers") from None
        return blk
    if head == "act":
        blk = _need_block(cur, ModuleBlock, head, lineno)
        m = re.fullmatch(r"(\S+)\s*=\s*(\[.*\])", rest)
        if not m:
            raise InputSyntaxError(lineno, "expected 'act <symbol> = [[...]]'")
        try:
            value = ast.literal_eval(m.group(2))
        except (ValueError, SyntaxError):
            raise InputSyntaxError(lineno, "matrix literal does not parse") from None
        blk.acts[m.group(1)] = value
        return blk
    raise InputSyntaxError(lineno, f"unknown keyword {head!r}")


def parse_presentation(text: str, name: str | None = None) -> BoundQuiverPresentation:
    """Presentation of the (named or only) algebra block of a document."""
    doc = parse_document(text)
    if not doc.algebras:
        raise InputSyntaxError(1, "no algebra block")
    blk = doc.algebras[name] if name else next(iter(doc.algebras.values()))
    return blk.presentation()


def element_from_terms(alg: FiniteDimAlgebra, terms, line: int = 0) -> np.ndarray:
    """Evaluate ``[(coef, factors), ...]`` in a quiver algebra.

    A factor is either an arrow name or ``e<vertex>``; factors are multiplied
    left to right.
    """
    pdata = alg.extra.get("path_data")
    if pdata is None:
        raise InputSyntaxError(line, f"algebra {alg.name} has no quiver presentation")
    total = np.zeros(alg.dim, dtype=np.int64)
    arrow_names = {a.name for a in pdata.quiver.arrows}
    for coef, factors in terms:
        val = None
        for f in factors:
            if f in arrow_names:
                x = pdata.arrow(f)
            elif f.startswith("e") and f[1:] in pdata.quiver.vertices:
                x = pdata.idempotent(f[1:])
            elif f == "1":
                x = alg.unit.copy()
            else:
                raise UnknownSymbol(f"line {line}: unknown symbol {f!r}")
            val = x if val is None else alg.mul(val, x)
        if val is None:
            val = alg.unit.copy()
        total = (total + coef * val) % alg.p
    return total


class Workspace:
    """Built objects of a document: algebras, subalgebras, ideals, extensions, modules."""

    def __init__(self, doc: Document, default_prime: int = DEFAULT_PRIME):
        from . import algebra as alg_mod

        self.doc = doc
        self.algebras: dict[str, FiniteDimAlgebra] = {}
        self.inclusions: dict = {}  # subalgebra name -> morphism into its quiver parent
        prime = doc.prime or default_prime
        for kind, name in doc.order:
            if kind == "algebra":
                blk = doc.algebras[name]
                self.algebras[name] = build_algebra(blk.presentation(), blk.prime or prime, name=name)
            else:
                parent, exprs, line = doc.subalgebras[name]
                if parent not in self.algebras:
                    raise UnknownSymbol(f"line {line}: unknown algebra {parent!r}")
                par = self.algebras[parent]
                gens = [element_from_terms(par, e, line) for e in exprs]
                sub, incl = alg_mod.subalgebra_generated(par, gens, name=name)
                self.algebras[name] = sub
                self.inclusions[name] = incl

    def algebra(self, name: str) -> FiniteDimAlgebra:
        if name not in self.algebras:
            raise UnknownSymbol(f"unknown algebra {name!r}")
        return self.algebras[name]

    def ambient(self, name: str):
        """(quiver algebra, morphism from ``name`` into it)."""
        from .algebra import identity_morphism

        if name in self.inclusions:
            incl = self.inclusions[name]
            return incl.target, incl
        a = self.algebra(name)
        return a, identity_morphism(a)

    def inclusion(self, small: str, big: str):
        """Inclusion morphism ``small -> big`` when both sit in a common quiver algebra."""
        from .algebra import AlgebraMorphism
        from .linalg import solve

        amb_s, fs = self.ambient(small)
        amb_b, fb = self.ambient(big)
        if amb_s is not amb_b:
            raise UnknownSymbol(f"{small} and {big} do not share an ambient algebra")
        rows = []
        for row in fs.matrix:
            x = solve(fb.matrix, row, amb_s.p)
            if x is None:
                raise ValueError(f"{small} is not contained in {big}")
            rows.append(x)
        return AlgebraMorphism(self.algebra(small), self.algebra(big), np.array(rows, dtype=np.int64))

    def ideal(self, name: str):
        from . import algebra as alg_mod

        if name not in self.doc.ideals:
            raise UnknownSymbol(f"unknown ideal {name!r}")
        alg_name, spec, line = self.doc.ideals[name]
        return self.ideal_from_spec(alg_name, spec, line)

    def ideal_from_spec(self, alg_name: str, spec, line: int = 0):
        from . import algebra as alg_mod

        a = self.algebra(alg_name)
        kind, data = spec
        if kind == "generated":
            gens = [element_from_terms(a, e, line) for e in data]
            return alg_mod.ideal_generated(a, gens)
        return named_ideal(a, data)

    def module(self, name: str):
        from .modules import module_from_arrows, module_from_basis_action

        if name not in self.doc.modules:
            raise UnknownSymbol(f"unknown module {name!r}")
        blk = self.doc.modules[name]
        a = self.algebra(blk.algebra)
        if blk.vertexdims is not None:
            return module_from_arrows(a, blk.vertexdims, blk.acts, name=name)
        if blk.dim is None:
            raise InputSyntaxError(blk.line, f"module {name} needs 'dim' or 'vertexdims'")
        return module_from_basis_action(a, blk.dim, blk.acts, name=name)

    def extension(self, name: str):
        from .algebra import identity_morphism, unit_morphism
        from .relative import Extension

        if name not in self.doc.extensions:
            raise UnknownSymbol(f"unknown extension {name!r}")
        b, a, kind, line = self.doc.extensions[name]
        if kind == "identity":
            return Extension(identity_morphism(self.algebra(a)))
        if kind == "unit":
            return Extension(unit_morphism(self.algebra(a)))
        return Extension(self.inclusion(b, a), is_inclusion=True)


def named_ideal(a: FiniteDimAlgebra, word: str):
    from . import algebra as alg_mod

    if word == "whole":
        return a.whole
    if word == "zero":
        return a.zero_ideal
    m = re.fullmatch(r"rad(?:\^(\d+))?", word)
    if not m:
        raise UnknownSymbol(f"unknown ideal word {word!r}")
    n = int(m.group(1) or 1)
    return alg_mod.ideal_power(alg_mod.radical(a), n)
