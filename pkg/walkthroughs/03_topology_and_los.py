"""
Topologies on models and ultralimits
====================================

On a finite index set every ultrafilter is principal, so an ultralimit of a
sequence of models is determined by the model at the chosen index.  The
library computes limits several ways and they have to coincide.
"""

from amst import topology, ultra
from amst.core import FiniteAmst

a = FiniteAmst.normal(["a", "b", "bot"], ["m0", "m1", "m2"], [[1, 0, 0], [0, 1, 0], [1, 1, 0]])

tn, subbase = topology.tau_N(a)
tc, base = topology.tau_C(a)
print("tau_N subbase:", subbase, "opens:", sorted(tn.opens))
print("tau_C base:", base, "opens:", sorted(tc.opens))
print(topology.compactness_equivalence_check(a).status)

print("ultrafilters on 3 points:", [u.sorted_members() for u in ultra.enumerate_ultrafilters(3)])

seq = [0, 2, 1]
for i in range(3):
    u = ultra.principal(3, i)
    print(
        f"U_{i}: ultramodels={ultra.ultramodels(a, seq, u):03b}",
        f"los_models={ultra.los_models(a, seq, u):03b}",
        "mismatches:", ultra.los_instance_check(a, seq, u),
    )

# the specialisation order agrees with maximal satisfiable sets
print(ultra.order_maxsat_check(a).status)
