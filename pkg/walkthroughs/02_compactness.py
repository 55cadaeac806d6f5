"""
Nine ways to say "compact"
==========================

For a normal amst in which L is not finitely satisfiable, nine conditions
are equivalent.  On finite tables they all come out true, which makes the
injected checker bugs easy to spot.
"""

from amst import compactness
from amst.core import FiniteAmst

# append an always-false sentence "bot" so that L is unsatisfiable
a = FiniteAmst.normal(["a", "b", "bot"], ["m0", "m1"], [[1, 0, 0], [0, 1, 0]])

report = compactness.characterization_report(a)
print("hypothesis:", report.hypothesis_ok)
for k, value in sorted(report.values.items()):
    print(f"  condition {k}: {value}")
print("agree:", report.agree)

# each mutant is a plausible but wrong checker; the diagonal table trips them
diag = FiniteAmst.normal("ab", ["m0", "m1"], [[1, 0], [0, 1]])
for name in compactness.MUTANTS:
    verdict = compactness.characterization_verdict(diag, mutants=(name,))
    print(f"{name:26} -> {verdict.status}")
