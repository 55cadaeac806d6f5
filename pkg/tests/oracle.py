"""Definition-level brute force used as the test oracle.

Everything here works on Python ``frozenset``s and reads the raw satisfaction
matrix directly, so it shares no code path with the bitmask implementation
under test.  Conversions to and from bitmasks happen only at the edges.
"""

from itertools import chain, combinations, product


def powerset(items):
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))]


def to_set(mask):
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def to_mask(items):
    return sum(1 << i for i in items)


class Amst:
    """Satisfaction as an explicit predicate on (model, frozenset of sentences)."""

    def __init__(self, amst):
        self.models = range(amst.n_models)
        self.sentences = frozenset(range(amst.n_sentences))
        self.kind = amst.kind
        self.matrix = [[bool(x) for x in row] for row in amst.matrix.tolist()]

    def sat(self, m, gamma):
        if self.kind == "normal":
            return all(self.matrix[m][a] for a in gamma)
        return self.matrix[m][to_mask(gamma)]

    def mod(self, gamma):
        return frozenset(m for m in self.models if self.sat(m, gamma))

    def th(self, xs):
        return frozenset(a for a in self.sentences if all(self.sat(m, {a}) for m in xs))

    def satisfiable(self, gamma):
        return bool(self.mod(gamma))

    def finsat(self, gamma):
        return all(self.satisfiable(sub) for sub in powerset(gamma))

    def entails(self, gamma, a):
        return self.mod(gamma) <= self.mod({a})

    def closure(self, gamma):
        return frozenset(a for a in self.sentences if self.entails(gamma, a))

    def is_normal(self):
        return all(
            self.sat(m, g) == all(self.sat(m, {a}) for a in g) for m in self.models for g in powerset(self.sentences)
        )

    def maximal_satisfiable(self):
        sat = [g for g in powerset(self.sentences) if self.satisfiable(g)]
        return [g for g in sat if not any(g < h for h in sat)]

    def maximal_finsat(self):
        fs = [g for g in powerset(self.sentences) if self.finsat(g)]
        return [g for g in fs if not any(g < h for h in fs)]

    def complete(self, gamma):
        mods = self.mod(gamma)
        return bool(mods) and all(mods <= self.mod({a}) or not (mods & self.mod({a})) for a in self.sentences)


def closure_of_table(turnstile, gamma):
    return frozenset(a for a in range(turnstile.shape[1]) if turnstile[to_mask(gamma), a])


def is_tarski(turnstile):
    n = turnstile.shape[1]
    subsets = powerset(range(n))

    def c(g):
        return closure_of_table(turnstile, g)

    reflexive = all(g <= c(g) for g in subsets)
    monotone = all(c(g) <= c(h) for g in subsets for h in subsets if g <= h)
    transitive = all(c(c(g)) <= c(g) for g in subsets)
    return reflexive and monotone and transitive


def opens_from_subbase(n, subbase):
    """A set is open iff each of its points has a finite intersection of subbase members inside it."""
    ground = frozenset(range(n))
    members = [frozenset(s) for s in subbase]
    meets = [ground]
    for combo in powerset(range(len(members))):
        if combo:
            meets.append(frozenset.intersection(*(members[i] for i in combo)))
    return {u for u in powerset(ground) if all(any(x in b and b <= u for b in meets) for x in u)}


def is_filter(n, fam):
    fam = set(fam)
    subsets = powerset(range(n))
    return all(a & b in fam for a in fam for b in fam) and all(b in fam for a in fam for b in subsets if a <= b)


def is_ultrafilter(n, fam):
    ground = frozenset(range(n))
    return (
        is_filter(n, fam)
        and frozenset() not in fam
        and all((a in fam) != ((ground - a) in fam) for a in powerset(ground))
    )


def all_families(n):
    subsets = powerset(range(n))
    for code in range(1 << len(subsets)):
        yield frozenset(s for k, s in enumerate(subsets) if code >> k & 1)


def ultralimits(n_points, opens, seq, u):
    """Points every open neighbourhood of which captures a ``u``-large set of indices."""
    return frozenset(
        x
        for x in range(n_points)
        if all(frozenset(i for i, m in enumerate(seq) if m in v) in u for v in opens if x in v)
    )


def large(a, seq, u, gamma):
    return frozenset(i for i, m in enumerate(seq) if a.sat(m, gamma)) in u


def los_le(a, seq, u):
    subsets = powerset(a.sentences)
    return frozenset(l for l in a.models if all(a.sat(l, g) for g in subsets if large(a, seq, u, g)))


def los_ge(a, seq, u):
    subsets = powerset(a.sentences)
    return frozenset(l for l in a.models if all(large(a, seq, u, g) for g in subsets if a.sat(l, g)))


def los(a, seq, u):
    subsets = powerset(a.sentences)
    return frozenset(l for l in a.models if all(a.sat(l, g) == large(a, seq, u, g) for g in subsets))


def principal(n, i):
    return frozenset(s for s in powerset(range(n)) if i in s)


def sequences(n_models, length):
    return product(range(n_models), repeat=length)
