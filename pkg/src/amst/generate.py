"""Seeded random instances and exhaustive enumerations of small amsts."""

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product
from typing import Iterator

import numpy as np

from .core import GENERAL, GENERAL_MAX_SENTENCES, NORMAL, TABLE_MAX_SENTENCES, FiniteAmst, induced_consequence
from .errors import ArgumentError, CapacityError

DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class GenParams:
    seed: int = DEFAULT_SEED
    max_models: int = 4
    max_sentences: int = 4
    kind: str = NORMAL
    density: float = 0.5
    min_models: int = 1
    min_sentences: int = 1

    def __post_init__(self):
        if self.kind not in (NORMAL, GENERAL):
            raise ArgumentError(f"unknown kind {self.kind!r}")
        if not 0.0 <= self.density <= 1.0:
            raise ArgumentError("density must lie in [0, 1]")
        if not 0 <= self.min_models <= self.max_models or not 0 <= self.min_sentences <= self.max_sentences:
            raise ArgumentError("size bounds are inconsistent")
        cap = GENERAL_MAX_SENTENCES if self.kind == NORMAL else TABLE_MAX_SENTENCES
        if self.max_sentences > cap:
            raise CapacityError(f"{self.kind} amsts allow at most {cap} sentences here")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def labels(prefix: str, n: int) -> list:
    return [f"{prefix}{i}" for i in range(n)]


def random_amst(p: GenParams, rng: np.random.Generator = None) -> FiniteAmst:
    """Random amst with sizes drawn uniformly within the bounds of ``p``.

    With no ``rng`` the generator is seeded from ``p.seed``, so the result is a
    function of ``p`` alone.
    """
    rng = rng if rng is not None else p.rng()
    k = int(rng.integers(p.min_models, p.max_models + 1))
    n = int(rng.integers(p.min_sentences, p.max_sentences + 1))
    if p.kind == NORMAL:
        matrix = rng.random((k, n)) < p.density
        return FiniteAmst.normal(labels("s", n), labels("m", k), matrix)
    table = rng.random((k, 1 << n)) < p.density
    return FiniteAmst.general(labels("s", n), labels("m", k), table)


def random_tarski(p: GenParams, rng: np.random.Generator = None):
    """A Tarski-type logical structure: the consequence relation of a random normal amst."""
    if p.max_sentences > TABLE_MAX_SENTENCES:
        raise CapacityError(f"consequence tables need |L| <= {TABLE_MAX_SENTENCES}")
    normal = GenParams(p.seed, p.max_models, p.max_sentences, NORMAL, p.density, p.min_models, p.min_sentences)
    return induced_consequence(random_amst(normal, rng))


def all_normal_amsts(n_models: int, n_sentences: int) -> Iterator[FiniteAmst]:
    """Every ``n_models x n_sentences`` satisfaction matrix, in binary counting order."""
    cells = n_models * n_sentences
    for code in range(1 << cells):
        matrix = np.array([(code >> i) & 1 for i in range(cells)], dtype=bool).reshape(n_models, n_sentences)
        yield FiniteAmst.normal(labels("s", n_sentences), labels("m", n_models), matrix)


def canonical_normal_matrices(n_models: int, n_sentences: int) -> list:
    """One matrix per orbit under permuting rows and columns, as sorted row-mask tuples.

    Rows are bitmasks over sentences; repeated rows are kept, since distinct
    models with equal theories matter for every order-theoretic check.
    """
    perms = list(permutations(range(n_sentences)))
    out = set()
    for rows in combinations_with_replacement(range(1 << n_sentences), n_models):
        best = None
        for perm in perms:
            image = tuple(sorted(sum(1 << perm[a] for a in range(n_sentences) if r >> a & 1) for r in rows))
            if best is None or image < best:
                best = image
        out.add(best)
    return sorted(out)


def amst_from_rows(rows, n_sentences: int) -> FiniteAmst:
    matrix = np.array([[bool(r >> a & 1) for a in range(n_sentences)] for r in rows], dtype=bool)
    matrix = matrix.reshape(len(rows), n_sentences)
    return FiniteAmst.normal(labels("s", n_sentences), labels("m", len(rows)), matrix)


def small_grid(max_models: int, max_sentences: int) -> Iterator[FiniteAmst]:
    """Canonical normal amsts of every shape up to the given bounds (at least one model)."""
    for k, n in product(range(1, max_models + 1), range(max_sentences + 1)):
        for rows in canonical_normal_matrices(k, n):
            yield amst_from_rows(rows, n)
