"""Factorizations, Betti elements and minimal presentations.

A factorization of ``s`` is an exponent vector ``x`` with ``Σ x_i n_i = s``.
Relations are pairs of factorizations of the same element. Connectivity
questions on a fiber are answered with a small union-find.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import SemigroupSpec, contains, frobenius
from .errors import BudgetExceeded, InvalidInput, InvalidRelation
from .polynomials import SparsePolynomial

Factorization = tuple[int, ...]

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    """Fiber-size limit, overridable through ``SGP_BUDGET``."""
    raw = os.environ.get("SGP_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInput(f"SGP_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise InvalidInput(f"SGP_BUDGET must be positive, got {value}")
    return value


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size
        self.count = size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        self.count -= 1


def nu(S: SemigroupSpec, f: Sequence[int]) -> int:
    if len(f) != S.embedding_dimension:
        raise InvalidInput(
            f"factorization {tuple(f)} has length {len(f)}, expected {S.embedding_dimension}"
        )
    if any(a < 0 for a in f):
        raise InvalidInput(f"factorization {tuple(f)} has a negative entry")
    return sum(a * n for a, n in zip(f, S.generators))


def factorizations(
    S: SemigroupSpec, s: int, budget: int | None = None
) -> list[Factorization]:
    """All factorizations of ``s``, in lexicographic descent from the last generator.

    Exponent i is bounded by the remainder over n_i; a branch is cut as soon
    as the remainder is not a multiple of gcd(n_0, ..., n_{i-1}).
    """
    if s < 0:
        raise InvalidInput(f"cannot factor negative element {s}")
    if budget is None:
        budget = default_budget()
    gens = S.generators
    k = len(gens)
    prefix_gcd = [0] * k
    g = 0
    for i, n in enumerate(gens):
        g = math.gcd(g, n)
        prefix_gcd[i] = g
    out: list[Factorization] = []
    cur = [0] * k

    def descend(i: int, rem: int) -> None:
        if i == 0:
            if rem % gens[0] == 0:
                cur[0] = rem // gens[0]
                out.append(tuple(cur))
                if len(out) > budget:
                    raise BudgetExceeded(s, budget)
                cur[0] = 0
            return
        n = gens[i]
        below = prefix_gcd[i - 1]
        for a in range(rem // n, -1, -1):
            r = rem - a * n
            if r % below:
                continue
            cur[i] = a
            descend(i - 1, r)
        cur[i] = 0

    descend(k - 1, s)
    return out


def factorization_graph_components(
    fiber: Iterable[Sequence[int]], S: SemigroupSpec | None = None
) -> list[list[Factorization]]:
    """Split a fiber into classes of the shared-support graph.

    Two factorizations are adjacent when some coordinate is positive in both.
    Passing ``S`` enables a check that every member has the same degree.
    """
    members = [tuple(f) for f in fiber]
    if not members:
        raise InvalidInput("empty fiber")
    if S is not None:
        degrees = {nu(S, f) for f in members}
        if len(degrees) > 1:
            raise InvalidInput(f"fiber mixes elements {sorted(degrees)}")
    width = len(members[0])
    if any(len(f) != width for f in members):
        raise InvalidInput("fiber members have different lengths")
    uf = UnionFind(len(members))
    for i in range(width):
        first = None
        for j, f in enumerate(members):
            if f[i] > 0:
                if first is None:
                    first = j
                else:
                    uf.union(first, j)
    classes: dict[int, list[Factorization]] = {}
    for j, f in enumerate(members):
        classes.setdefault(uf.find(j), []).append(f)
    return list(classes.values())


@dataclass(frozen=True, order=True)
class BinomialRelation:
    """A pair of distinct factorizations of one element, larger side first.

    ``name`` is a display label (``"g1"``, ``"f_3"``) and takes no part in
    equality or ordering.
    """

    lhs: Factorization
    rhs: Factorization
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        lhs, rhs = tuple(self.lhs), tuple(self.rhs)
        if len(lhs) != len(rhs):
            raise InvalidRelation(lhs, rhs, f"sides have different lengths: {lhs}, {rhs}")
        if lhs == rhs:
            raise InvalidRelation(lhs, rhs, f"trivial relation {lhs} = {rhs}")
        if lhs < rhs:
            lhs, rhs = rhs, lhs
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)

    @classmethod
    def checked(
        cls, S: SemigroupSpec, lhs: Sequence[int], rhs: Sequence[int], name: str = ""
    ) -> BinomialRelation:
        rel = cls(tuple(lhs), tuple(rhs), name)
        validate_relation(S, rel)
        return rel

    def polynomial(self) -> SparsePolynomial:
        return SparsePolynomial.binomial(self.lhs, self.rhs)

    def label(self) -> str:
        return self.name or f"{self.lhs}~{self.rhs}"


def validate_relation(S: SemigroupSpec, rel: BinomialRelation) -> int:
    """Return the common degree of both sides, or raise :class:`InvalidRelation`."""
    if len(rel.lhs) != S.embedding_dimension:
        raise InvalidRelation(rel.lhs, rel.rhs, f"relation {rel.label()} has the wrong length")
    a, b = nu(S, rel.lhs), nu(S, rel.rhs)
    if a != b:
        raise InvalidRelation(
            rel.lhs, rel.rhs, f"relation {rel.label()} is unbalanced: {a} != {b}"
        )
    return a


@dataclass(frozen=True)
class BettiData:
    element: int
    component_count: int
    witness: tuple[Factorization, ...]


def search_bound(S: SemigroupSpec) -> int:
    """Every Betti element is at most F + 2·n_max.

    If x, y are factorizations of s in different classes, pick n_i in the
    support of x and n_j in that of y; when s - n_i - n_j > F it has some
    factorization z, and z + e_i + e_j shares support with both x and y.
    """
    return frobenius(S) + 2 * S.generators[-1]


def _fiber_candidates(S: SemigroupSpec, bound: int) -> Iterable[int]:
    """Elements up to ``bound`` reachable from at least two distinct generators."""
    gens = S.generators
    for s in range(1, bound + 1):
        hits = 0
        for n in gens:
            if n <= s and contains(S, s - n):
                hits += 1
                if hits == 2:
                    yield s
                    break


def betti_elements(S: SemigroupSpec, budget: int | None = None) -> list[BettiData]:
    if budget is None:
        budget = default_budget()
    found = []
    # A fiber with a single usable generator is connected, so skip it early.
    for s in _fiber_candidates(S, search_bound(S)):
        fiber = factorizations(S, s, budget)
        if len(fiber) < 2:
            continue
        classes = factorization_graph_components(fiber)
        if len(classes) >= 2:
            found.append(BettiData(s, len(classes), tuple(c[0] for c in classes)))
    return found


def minimal_presentation_cardinality(S: SemigroupSpec, budget: int | None = None) -> int:
    return sum(b.component_count - 1 for b in betti_elements(S, budget))


@dataclass(frozen=True)
class GenerationResult:
    generates: bool
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.generates


@dataclass(frozen=True)
class MinimalityResult:
    minimal: bool
    redundant: tuple[BinomialRelation, ...] = ()

    @property
    def witness(self) -> BinomialRelation | None:
        return self.redundant[0] if self.redundant else None

    def __bool__(self) -> bool:
        return self.minimal


class FiberCache:
    """Fibers of every element up to a bound that have at least two factorizations."""

    def __init__(self, S: SemigroupSpec, bound: int, budget: int | None = None):
        self.S = S
        self.bound = bound
        self.fibers: dict[int, list[Factorization]] = {}
        for s in _fiber_candidates(S, bound):
            fiber = factorizations(S, s, budget)
            if len(fiber) >= 2:
                self.fibers[s] = fiber


def _moves(relations: Sequence[BinomialRelation]) -> list[tuple[Factorization, Factorization]]:
    out = []
    for r in relations:
        out.append((r.lhs, r.rhs))
        out.append((r.rhs, r.lhs))
    return out


def _fiber_connected(fiber: list[Factorization], moves) -> bool:
    index = {f: i for i, f in enumerate(fiber)}
    uf = UnionFind(len(fiber))
    for i, x in enumerate(fiber):
        for a, b in moves:
            if all(xi >= ai for xi, ai in zip(x, a)):
                y = tuple(xi - ai + bi for xi, ai, bi in zip(x, a, b))
                uf.union(i, index[y])
                if uf.count == 1:
                    return True
    return uf.count == 1


def _check_bound(S: SemigroupSpec, bound: int | None) -> int:
    least = search_bound(S)
    if bound is None:
        return least
    if bound < least:
        raise InvalidInput(f"bound {bound} is below F + 2*n_max = {least}")
    return bound


def relations_generate_up_to(
    S: SemigroupSpec,
    relations: Iterable[BinomialRelation],
    bound: int | None = None,
    *,
    cache: FiberCache | None = None,
    budget: int | None = None,
) -> GenerationResult:
    """Whether the relation moves connect every fiber up to ``bound``.

    The move x -> x - a + b applies when x >= a componentwise, in either
    orientation of each relation. Returns the smallest disconnected element
    as witness on failure.
    """
    relations = list(relations)
    for r in relations:
        validate_relation(S, r)
    bound = _check_bound(S, bound)
    if cache is None or cache.bound < bound or cache.S != S:
        cache = FiberCache(S, bound, budget)
    moves = _moves(relations)
    for s in sorted(cache.fibers):
        if s > bound:
            break
        if not _fiber_connected(cache.fibers[s], moves):
            return GenerationResult(False, s)
    return GenerationResult(True)


def relations_minimal(
    S: SemigroupSpec,
    relations: Iterable[BinomialRelation],
    bound: int | None = None,
    *,
    budget: int | None = None,
) -> MinimalityResult:
    """Drop-one test: minimal iff removing any single relation breaks generation.

    All redundant relations are reported, in the order given.
    """
    relations = list(relations)
    bound = _check_bound(S, bound)
    cache = FiberCache(S, bound, budget)
    if not relations_generate_up_to(S, relations, bound, cache=cache):
        raise InvalidInput("relations do not generate; minimality is undefined")
    redundant = []
    for i, r in enumerate(relations):
        rest = relations[:i] + relations[i + 1 :]
        if relations_generate_up_to(S, rest, bound, cache=cache):
            redundant.append(r)
    return MinimalityResult(not redundant, tuple(redundant))
