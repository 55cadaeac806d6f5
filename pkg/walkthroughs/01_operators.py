"""
Models, sentences and the two operators
=======================================

A finite amst is a boolean table: rows are models, columns are sentences.
Sets of either are bitmasks, so {a, b} over L = (a, b) is 0b11.
"""

from amst.bits import bits
from amst.core import FiniteAmst, galois_check, is_compact, is_normal, mod_of, th_of

# three models; m2 satisfies both sentences
a = FiniteAmst.normal("ab", ["m0", "m1", "m2"], [[1, 0], [0, 1], [1, 1]])


def names(labels, mask):
    return "{" + ", ".join(labels[i] for i in bits(mask)) + "}"


for gamma in range(1 << a.n_sentences):
    print("Mod", names(a.sentence_labels, gamma), "=", names(a.model_labels, mod_of(a, gamma)))

# Th goes the other way and the pair forms an antitone Galois connection
print("Th{m0, m1} =", names(a.sentence_labels, th_of(a, 0b011)))
print(galois_check(a).status)

# a general table lists satisfaction for every subset, so conjunction can fail:
# here m0 satisfies {a} and {b} but not {a, b}
g = FiniteAmst.general("ab", ["m0"], [[1, 1, 1, 0]])
check = is_normal(g)
print("normal:", bool(check), "witness:", check.witness)

# every finite amst is compact
print("compact:", bool(is_compact(a)), bool(is_compact(g)))
