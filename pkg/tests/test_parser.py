import numpy as np
import pytest

from finitistic.algebra import radical
from finitistic.parser import InputSyntaxError, Workspace, named_ideal, parse_document
from finitistic.quiver import NonComposablePath, NotAdmissible, UnknownSymbol

DOC = """\
# the A3 linear quiver with a module and some ideals
field gfp 101
algebra A
vertex 1 2 3
arrow x : 1 -> 2
arrow y : 2 -> 3
rel x*y = 0
nilpotency 3
ideal R of A = rad
ideal X of A generated by x
subalgebra S of A generated by e1, e2 + e3, y
chain C : S <= A
extension inc : S -> A inclusion
extension u : A -> A unit
module M over A
vertexdims 1 1 0
act x = [[1]]
"""


def test_document_builds_every_object():
    ws = Workspace(parse_document(DOC))
    a = ws.algebra("A")
    assert a.p == 101
    assert a.dim == 5  # three vertices, two arrows, x*y killed
    assert ws.ideal("R") == radical(a)
    assert ws.ideal("X").dim == 1
    assert ws.algebra("S").dim == 3
    assert ws.doc.chains["C"][0] == ["S", "A"]
    assert ws.extension("inc").small is ws.algebra("S")
    assert ws.extension("u").small.dim == 1
    m = ws.module("M")
    assert m.dim == 2


def test_module_from_arrow_matrices_is_a_module():
    ws = Workspace(parse_document(DOC))
    m = ws.module("M")
    x = ws.algebra("A").element({"x": 1})
    # x maps the vertex-2 part into the vertex-1 part (column convention)
    assert np.array_equal(m.act(x), [[0, 1], [0, 0]])


def test_relations_may_have_coefficients():
    text = """\
algebra Q
vertex 1 2 3
arrow a : 1 -> 2
arrow b : 2 -> 3
arrow c : 1 -> 2
arrow d : 2 -> 3
rel 1*a*b - 2*c*d = 0
nilpotency 3
"""
    a = Workspace(parse_document(text)).algebra("Q")
    # four length-2 paths minus one relation
    assert a.dim == 3 + 4 + 3


def test_unknown_keyword_reports_line():
    with pytest.raises(InputSyntaxError) as exc:
        parse_document("algebra A\nvertex 1\nfrobnicate\n")
    assert exc.value.line == 3


def test_unknown_vertex():
    with pytest.raises(UnknownSymbol):
        parse_document("algebra A\nvertex 1\narrow a : 1 -> 2\n")


def test_non_parallel_relation():
    with pytest.raises(NonComposablePath):
        parse_document("algebra A\nvertex 1 2\narrow a : 1 -> 2\narrow b : 1 -> 2\nrel a*b = 0\nnilpotency 3\n")


def test_relation_of_length_one_is_not_admissible():
    with pytest.raises(NotAdmissible):
        Workspace(parse_document("algebra A\nvertex 1 2\narrow a : 1 -> 2\nrel a = 0\nnilpotency 2\n"))


def test_named_ideals():
    a = Workspace(parse_document(DOC)).algebra("A")
    assert named_ideal(a, "whole").dim == a.dim
    assert named_ideal(a, "zero").dim == 0
    assert named_ideal(a, "rad").dim == 2
    assert named_ideal(a, "rad^2").dim == 0
    with pytest.raises(UnknownSymbol):
        named_ideal(a, "socle")


def test_subalgebra_without_unit_is_rejected():
    from finitistic.algebra import UnitNotContained

    text = "algebra A\nvertex 1 2\narrow x : 1 -> 2\nnilpotency 2\nsubalgebra S of A generated by x\n"
    with pytest.raises(UnitNotContained):
        Workspace(parse_document(text))
