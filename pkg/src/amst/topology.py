"""Finite topological spaces on model sets, and the two amst topologies.

Points are bit positions and every subset is a bitmask, so a topology is just
a set of ints.  Generation from a subbase goes through the literal
intersection/union closures; an independent route through minimal
neighbourhoods is provided for cross-checking.
"""

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .bits import bits, full_mask, is_subset, submasks
from .core import FiniteAmst, is_compact, is_normal, mod_of, th_of
from .errors import ArgumentError, BaseAxiomError, InvariantError, SubbaseError, TauCError, TauNError
from .report import Check, Verdict, VACUOUS, verdict

MAX_POINTS = 16
EXHAUSTIVE_OPENS = 12
SAMPLED_COVERS = 256


@dataclass(frozen=True)
class FiniteTopology:
    n: int
    opens: frozenset

    def __post_init__(self):
        if not 0 <= self.n <= MAX_POINTS:
            raise ArgumentError(f"ground size must be in [0, {MAX_POINTS}]")
        object.__setattr__(self, "opens", frozenset(int(u) for u in self.opens))
        problem = self.invariant_violation()
        if problem is not None:
            raise InvariantError(problem)

    @property
    def ground(self) -> int:
        return full_mask(self.n)

    def invariant_violation(self) -> Optional[str]:
        ground = self.ground
        if 0 not in self.opens or ground not in self.opens:
            return "empty set and ground must be open"
        for u in self.opens:
            if not is_subset(u, ground):
                return f"open set {u:#x} leaves the ground set"
        for u in self.opens:
            for v in self.opens:
                if u | v not in self.opens or u & v not in self.opens:
                    return f"not closed under union/intersection at ({u:#x}, {v:#x})"
        return None

    def sorted_opens(self) -> list:
        return sorted(self.opens)

    def is_open(self, x: int) -> bool:
        return x in self.opens

    def is_closed(self, x: int) -> bool:
        return (self.ground & ~x) in self.opens

    def to_dict(self) -> dict:
        return {"ground_size": self.n, "opens": self.sorted_opens()}


def _validate_family(n: int, family: Iterable[int]) -> list:
    ground = full_mask(n)
    out = []
    for s in family:
        s = int(s)
        if s < 0 or not is_subset(s, ground):
            raise ArgumentError(f"set {s:#x} is not a subset of the ground set")
        out.append(s)
    return out


def _covers(family, ground) -> bool:
    union = 0
    for s in family:
        union |= s
    return is_subset(ground, union)


def intersection_closure(n: int, sigma: Iterable[int]) -> frozenset:
    """All finite intersections of members of ``sigma`` (the empty one is the ground set)."""
    out = {full_mask(n)}
    for s in sigma:
        out |= {x & s for x in out}
    return frozenset(out)


def union_closure(beta: Iterable[int]) -> frozenset:
    """All unions of subfamilies of ``beta`` (the empty union is ∅)."""
    out = {0}
    for b in beta:
        out |= {x | b for x in out}
    return frozenset(out)


def base_axiom_witness(beta: Sequence[int]) -> Optional[tuple]:
    """First ``(U, V)`` with a point of ``U ∩ V`` not inside any member ``W ⊆ U ∩ V``."""
    beta = sorted(set(beta))
    for i, u in enumerate(beta):
        for v in beta[i:]:
            meet = u & v
            covered = 0
            for w in beta:
                if is_subset(w, meet):
                    covered |= w
            if covered != meet:
                return (u, v)
    return None


def generate_from_subbase(n: int, sigma: Iterable[int]) -> FiniteTopology:
    sigma = _validate_family(n, sigma)
    if not _covers(sigma, full_mask(n)):
        raise SubbaseError("the subbase does not cover the ground set")
    return FiniteTopology(n, union_closure(intersection_closure(n, sigma)))


def generate_from_base(n: int, beta: Iterable[int]) -> FiniteTopology:
    beta = _validate_family(n, beta)
    if not _covers(beta, full_mask(n)):
        raise BaseAxiomError("the base does not cover the ground set", None)
    witness = base_axiom_witness(beta)
    if witness is not None:
        u, v = witness
        raise BaseAxiomError(f"no base members fill {u:#x} ∩ {v:#x}", witness)
    return FiniteTopology(n, union_closure(beta))


def opens_via_neighbourhoods(n: int, beta: Iterable[int]) -> frozenset:
    """Open sets of the topology with base ``beta``, computed from minimal neighbourhoods.

    ``U_x`` is the intersection of the members containing ``x``; a set is
    open iff it contains ``U_x`` for each of its points.  This avoids the
    union closure entirely and serves as an independent oracle.
    """
    beta = list(beta)
    ground = full_mask(n)
    nbhd = []
    for x in range(n):
        u = ground
        for b in beta:
            if b >> x & 1:
                u &= b
        nbhd.append(u)
    return frozenset(s for s in range(1 << n) if all(is_subset(nbhd[x], s) for x in bits(s)))


def smallest_subcover(cover: Sequence[int], ground: int) -> Optional[tuple]:
    """A smallest subfamily of ``cover`` whose union contains ``ground``.

    Breadth-first over reachable unions, so level ``k`` holds every union
    obtainable from ``k`` members; the first level reaching the ground set
    gives the answer.
    """
    cover = list(dict.fromkeys(cover))
    if ground == 0:
        return ()
    parent = {0: None}
    frontier = [0]
    while frontier:
        nxt = []
        for state in frontier:
            for i, c in enumerate(cover):
                new = state | c
                if new not in parent:
                    parent[new] = (state, i)
                    if is_subset(ground, new):
                        picks = []
                        cur = new
                        while parent[cur] is not None:
                            cur, j = parent[cur]
                            picks.append(cover[j])
                        return tuple(sorted(picks))
                    nxt.append(new)
        frontier = nxt
    return None


def _cover_candidates(family: Sequence[int], ground: int, rng, exhaustive: bool):
    family = list(family)
    if exhaustive:
        for code in range(1 << len(family)):
            sub = [family[i] for i in bits(code)]
            if _covers(sub, ground):
                yield sub
        return
    for _ in range(SAMPLED_COVERS):
        keep = rng.random(len(family)) < 0.5
        sub = [f for f, k in zip(family, keep) if k]
        for idx in rng.permutation(len(family)):
            if _covers(sub, ground):
                break
            sub.append(family[int(idx)])
        yield sub


def is_compact_space(top: FiniteTopology, seed: int = 0) -> Check:
    """Every open cover has a finite subcover; witness is a cover without one.

    Open covers are enumerated exhaustively when there are at most
    ``EXHAUSTIVE_OPENS`` open sets, otherwise a seeded sample is searched.
    """
    opens = top.sorted_opens()
    rng = np.random.default_rng(seed)
    for cover in _cover_candidates(opens, top.ground, rng, len(opens) <= EXHAUSTIVE_OPENS):
        if smallest_subcover(cover, top.ground) is None:
            return Check(False, tuple(cover))
    return Check(True)


def alexander_check(top: FiniteTopology, sigma: Iterable[int]) -> Check:
    """Every cover drawn from the subbase ``sigma`` has a finite subcover."""
    sigma = sorted(set(_validate_family(top.n, sigma)))
    if len(sigma) > MAX_POINTS:
        raise ArgumentError(f"subbase too large ({len(sigma)} > {MAX_POINTS})")
    try:
        generated = generate_from_subbase(top.n, sigma)
    except SubbaseError as exc:
        raise ArgumentError(str(exc)) from None
    if generated != top:
        raise ArgumentError("sigma does not generate this topology")
    for cover in _cover_candidates(sigma, top.ground, None, True):
        if smallest_subcover(cover, top.ground) is None:
            return Check(False, tuple(cover))
    return Check(True)


def tau_n_subbase(amst: FiniteAmst) -> list:
    return [amst.all_models & ~mod for mod in amst.single_mods]


def tau_N(amst: FiniteAmst):
    """Topology on M with subbase ``{M ∖ Mod({α})}``; returns ``(topology, subbase)``."""
    if not is_normal(amst):
        raise TauNError("tau_N needs a normal amst")
    if mod_of(amst, amst.all_sentences):
        raise TauNError("tau_N needs L to be unsatisfiable")
    subbase = tau_n_subbase(amst)
    return generate_from_subbase(amst.n_models, subbase), subbase


def tau_C(amst: FiniteAmst):
    """Topology on M with base ``{Mod(Γ)}``; returns ``(topology, base)``."""
    if not is_normal(amst):
        raise TauCError("tau_C needs a normal amst")
    base = sorted(set(amst.mod_table))
    return generate_from_base(amst.n_models, base), base


def tau_n_eligible(amst: FiniteAmst) -> Optional[str]:
    """Reason the τ_N hypotheses fail, or ``None``."""
    if not is_normal(amst):
        return "amst not normal"
    if mod_of(amst, amst.all_sentences):
        return "L satisfiable"
    return None


def _mod_th(amst: FiniteAmst, x: int) -> int:
    return mod_of(amst, th_of(amst, x))


def closed_sets_check(amst: FiniteAmst) -> Verdict:
    """Model classes are τ_N-closed and fixed by ``Mod∘Th``; ``Mod∘Th`` is a closure operator."""
    name = "tarski_top"
    reason = tau_n_eligible(amst)
    if reason:
        return Verdict(name, VACUOUS, detail="hypothesis failed: " + reason)
    top, _ = tau_N(amst)
    violations = []
    for g in range(1 << amst.n_sentences):
        z = mod_of(amst, g)
        if not top.is_closed(z):
            violations.append(("mod_closed", g))
        if _mod_th(amst, z) != z:
            violations.append(("modth_fixed", g))
    everything = amst.all_models
    cl = [_mod_th(amst, x) for x in range(everything + 1)]
    for x in range(everything + 1):
        if not is_subset(x, cl[x]):
            violations.append(("extensive", x))
        if cl[cl[x]] != cl[x]:
            violations.append(("idempotent", x))
        for y in submasks(everything & ~x):
            if not is_subset(cl[x], cl[x | y]):
                violations.append(("monotone", (x, x | y)))
    return verdict(name, violations, counts={"sentence_sets": 1 << amst.n_sentences, "model_sets": everything + 1})


def compactness_equivalence_check(amst: FiniteAmst) -> Verdict:
    """The amst is compact iff ``(M, τ_N)`` is a compact space."""
    name = "compact_normal_II"
    reason = tau_n_eligible(amst)
    if reason:
        return Verdict(name, VACUOUS, detail="hypothesis failed: " + reason)
    top, subbase = tau_N(amst)
    logical = bool(is_compact(amst))
    spatial = bool(is_compact_space(top))
    subbasic = bool(alexander_check(top, subbase))
    violations = [] if logical == spatial == subbasic else [
        {"amst_compact": logical, "space_compact": spatial, "subbasic_compact": subbasic}
    ]
    return verdict(name, violations)


def random_subbase(n: int, rng: np.random.Generator, size: Optional[int] = None) -> list:
    """A random covering family of subsets of an ``n``-point ground set."""
    ground = full_mask(n)
    size = size if size is not None else int(rng.integers(1, n + 2))
    sigma = [int(rng.integers(1 << n)) for _ in range(size)]
    missing = ground
    for s in sigma:
        missing &= ~s
    if missing:
        sigma.append(missing)
    return sigma
