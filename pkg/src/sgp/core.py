"""Numerical semigroups given by generators.

Everything here is driven by the Apéry table with respect to a chosen element
``a``: the least element of the semigroup in each residue class modulo ``a``.
Membership, the Frobenius number, the genus and symmetry all fall out of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidInput, NotMember, NotMinimal, NotNumerical


def residue_table(generators: Sequence[int], modulus: int) -> list[int | None]:
    """Least combination of ``generators`` in each residue class mod ``modulus``.

    Round-robin shortest paths: for each generator g the residues split into
    gcd(g, modulus) cycles under r -> r + g; one walk around each cycle,
    started at its current minimum, relaxes every edge of that generator.
    Unreachable classes stay ``None``. Works for any generator set, including
    ones whose gcd is not 1.
    """
    if modulus <= 0:
        raise InvalidInput(f"modulus must be positive, got {modulus}")
    dist: list[int | None] = [None] * modulus
    dist[0] = 0
    for g in generators:
        step = g % modulus
        if step == 0:
            continue
        cycles = math.gcd(step, modulus)
        length = modulus // cycles
        for start in range(cycles):
            best = None
            r = start
            for _ in range(length):
                if dist[r] is not None and (best is None or dist[r] < dist[best]):
                    best = r
                r = (r + step) % modulus
            if best is None:
                continue
            r = best
            for _ in range(length - 1):
                nxt = (r + step) % modulus
                cand = dist[r] + g
                if dist[nxt] is None or cand < dist[nxt]:
                    dist[nxt] = cand
                r = nxt
    return dist


def _representable(x: int, table: list[int | None]) -> bool:
    w = table[x % len(table)]
    return w is not None and x >= w


def minimal_generators(candidates: Iterable[int]) -> list[int]:
    """Return the minimal system of generators of the semigroup spanned by ``candidates``.

    >>> minimal_generators([5, 9, 10, 14])
    [5, 9]
    """
    values = sorted(set(int(c) for c in candidates))
    if not values:
        raise InvalidInput("generator list is empty")
    if values[0] <= 0:
        raise InvalidInput(f"generators must be positive, got {values[0]}")
    if math.gcd(*values) != 1:
        raise NotNumerical(f"gcd of {values} is {math.gcd(*values)}, not 1")
    # Scanning upward, a candidate is redundant iff the smaller kept ones reach it.
    kept = [values[0]]
    table = residue_table(kept, kept[0])
    for c in values[1:]:
        if not _representable(c, table):
            kept.append(c)
            table = residue_table(kept, kept[0])
    return kept


@dataclass(frozen=True)
class AperyTable:
    """Least semigroup element per residue class; ``entries[r] ≡ r (mod modulus)``."""

    modulus: int
    entries: tuple[int, ...]

    def as_set(self) -> frozenset[int]:
        return frozenset(self.entries)

    @property
    def maximum(self) -> int:
        return max(self.entries)


@dataclass(frozen=True)
class SemigroupProfile:
    frobenius: int
    genus: int
    symmetric: bool


@dataclass(frozen=True)
class SemigroupSpec:
    """A numerical semigroup by its minimal generators, strictly increasing.

    The constructor rejects redundant lists; use :meth:`from_candidates` to
    reduce first.
    """

    generators: tuple[int, ...]

    def __post_init__(self) -> None:
        gens = tuple(int(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise InvalidInput("generator list is empty")
        if any(g <= 0 for g in gens):
            raise InvalidInput(f"generators must be positive: {list(gens)}")
        if any(a >= b for a, b in zip(gens, gens[1:])):
            raise InvalidInput(f"generators must be strictly increasing: {list(gens)}")
        if math.gcd(*gens) != 1:
            raise NotNumerical(f"gcd of {list(gens)} is {math.gcd(*gens)}, not 1")
        reduced = minimal_generators(gens)
        if tuple(reduced) != gens:
            raise NotMinimal(gens, reduced)

    @classmethod
    def from_candidates(cls, candidates: Iterable[int]) -> SemigroupSpec:
        return cls(tuple(minimal_generators(candidates)))

    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    @property
    def embedding_dimension(self) -> int:
        return len(self.generators)

    @cached_property
    def _apery_m(self) -> AperyTable:
        table = residue_table(self.generators, self.multiplicity)
        return AperyTable(self.multiplicity, tuple(table))  # type: ignore[arg-type]

    def __contains__(self, x: int) -> bool:
        return contains(self, x)


def contains(S: SemigroupSpec, x: int) -> bool:
    if x < 0:
        raise InvalidInput(f"membership is defined for x >= 0, got {x}")
    table = S._apery_m.entries
    return x >= table[x % S.multiplicity]


def apery(S: SemigroupSpec, a: int) -> AperyTable:
    """Apéry table of ``S`` with respect to the nonzero element ``a``."""
    if a <= 0:
        raise InvalidInput(f"Apéry modulus must be positive, got {a}")
    if not contains(S, a):
        raise NotMember(f"{a} is not in the semigroup {list(S.generators)}")
    if a == S.multiplicity:
        return S._apery_m
    table = residue_table(S.generators, a)
    return AperyTable(a, tuple(table))  # type: ignore[arg-type]


def frobenius(S: SemigroupSpec) -> int:
    """Largest integer outside ``S``; -1 when ``S`` is all of ℕ."""
    return S._apery_m.maximum - S.multiplicity


def gaps(S: SemigroupSpec) -> list[int]:
    return [x for x in range(1, frobenius(S) + 1) if not contains(S, x)]


def genus(S: SemigroupSpec) -> int:
    """Number of gaps, via the Apéry sum and checked against direct enumeration."""
    m = S.multiplicity
    twice = 2 * sum(S._apery_m.entries) - m * (m - 1)
    if twice % (2 * m):
        raise AssertionError(f"Apéry sum formula is not integral for {S.generators}")
    by_formula = twice // (2 * m)
    by_count = len(gaps(S))
    if by_formula != by_count:
        raise AssertionError(
            f"genus mismatch for {S.generators}: Apéry sum {by_formula}, count {by_count}"
        )
    return by_formula


def is_symmetric(S: SemigroupSpec) -> bool:
    """F odd and genus == (F+1)/2. ℕ itself (multiplicity 1) counts as not symmetric."""
    F = frobenius(S)
    if F < 0:
        return False
    result = F % 2 == 1 and genus(S) == (F + 1) // 2
    direct = F % 2 == 1 and all(contains(S, F - x) for x in gaps(S))
    if result != direct:
        raise AssertionError(f"symmetry criteria disagree for {S.generators}")
    return result


def profile(S: SemigroupSpec) -> SemigroupProfile:
    return SemigroupProfile(frobenius=frobenius(S), genus=genus(S), symmetric=is_symmetric(S))
