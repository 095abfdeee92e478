"""
Projective dimension and the Igusa-Todorov function on tiny algebras
====================================================================

Two algebras small enough to check by hand: the loop ``k[a]/(a^2)`` and the
path algebra of ``1 -> 2``.  Run with ``python3 demos/01_small_algebras.py``.
"""

from finitistic.homology import proj_dim, syzygy_chain
from finitistic.igusa_todorov import psi
from finitistic.modules import simples_and_projectives
from finitistic.parser import Workspace, parse_document

DOC = """
algebra L
vertex 1
arrow a : 1 -> 1
nilpotency 2

algebra T
vertex 1 2
arrow x : 1 -> 2
nilpotency 2
"""
ws = Workspace(parse_document(DOC))

# %% the loop: the simple module is its own syzygy
loop = ws.algebra("L")
s = simples_and_projectives(loop)[0][0]
chain = syzygy_chain(s)
print("loop algebra, dim", loop.dim)
print("  syzygy chain of the simple:", chain.status, "with recurrence", chain.levels)
print("  pd:", proj_dim(s), " psi:", psi(s).psi)

# %% A2: one simple is projective, the other has a projective syzygy
t = ws.algebra("T")
for i, simple in enumerate(simples_and_projectives(t)[0]):
    comp = psi(simple)
    print(f"A2 simple {i}: pd {proj_dim(simple)}, phi {comp.phi}, psi {comp.psi}")

# psi agrees with pd whenever pd is finite, and stays finite when it is not
