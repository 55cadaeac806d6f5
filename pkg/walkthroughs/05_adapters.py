"""
Other structures as amsts
=========================

Quivers, consequence relations and object-free categories each turn into an
amst and back.  Malformed inputs are rejected with a label naming the broken
axiom.
"""

import numpy as np

from amst import adapters
from amst.consequence import LogicalStructure

rng = np.random.default_rng(7)

q = adapters.random_quiver(rng)
back = adapters.amst_to_quiver(adapters.quiver_to_amst(q), q.vertices)
print("quiver round trip:", back == q)

ls = LogicalStructure.from_closure("pq", lambda g: g if g != 0b01 else 0b11)
print("logic round trip:", adapters.amst_to_logical_structure(adapters.logical_structure_to_amst(ls)) == ls)

c = adapters.poset_category({(0, 0), (1, 1), (0, 1)})
amst = adapters.category_to_amst(c)
print("category conditions:", {k: bool(v) for k, v in adapters.validate_category_amst(amst).items()})

# each broken fixture must raise with the label of the axiom it breaks
for name, build, expected in adapters.broken_fixtures():
    try:
        build()
    except adapters.AxiomViolation as exc:
        print(f"{name:34} rejected: {exc.label} (expected {expected})")
