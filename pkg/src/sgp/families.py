"""Parametric families built by concatenating two arithmetic sequences.

Four families are covered:

* the unbounded concatenation ``⟨m_0, ..., m_{e-1}⟩`` with
  ``m_i = n² + (e-2)n + q + i`` for ``i <= e-3`` and the last two shifted by n,
* the symmetric family built on ``S = {m, m+d, (q+1)m + (q+i)d : 2 <= i <= e-1}``,
* the symmetric family built on ``T`` (even ``e``, even ``q``, odd ``d``),
* Bresinsky's four-generator curves indexed by an even ``q2 >= 4``.

Each family has a constructor, closed forms where they exist, and a verifier
that replays every closed-form claim through the brute-force machinery in
:mod:`sgp.core` and :mod:`sgp.presentations`.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Sequence

from .core import SemigroupSpec, apery, frobenius, genus, is_symmetric, minimal_generators
from .errors import BudgetExceeded, FamilyContractViolation, InvalidInput
from .polynomials import (
    MonomialIdeal,
    SparsePolynomial,
    monomial_colength,
    poly_identity_zero,
    specialize_binomials_at_zero,
)
from .presentations import (
    BinomialRelation,
    factorizations,
    minimal_presentation_cardinality,
    nu,
    relations_generate_up_to,
    relations_minimal,
    search_bound,
)


# --------------------------------------------------------------------------
# Parameter records


@dataclass(frozen=True)
class UnboundedParams:
    n: int
    e: int
    q: int

    def __post_init__(self) -> None:
        if self.n < 5 or self.e < 4 or self.q < 0:
            raise InvalidInput(f"need n >= 5, e >= 4, q >= 0; got n={self.n}, e={self.e}, q={self.q}")


@dataclass(frozen=True)
class SymSParams:
    e: int
    q: int
    d: int

    def __post_init__(self) -> None:
        if self.e < 4 or self.q < 1 or self.d < 1:
            raise InvalidInput(f"need e >= 4, q >= 1, d >= 1; got e={self.e}, q={self.q}, d={self.d}")
        if math.gcd(self.m, self.d) != 1:
            raise InvalidInput(f"gcd(m, d) = gcd({self.m}, {self.d}) must be 1")

    @property
    def m(self) -> int:
        return self.e + 2 * self.q + 1


@dataclass(frozen=True)
class SymTParams:
    e: int
    q: int
    d: int

    def __post_init__(self) -> None:
        e, q, d = self.e, self.q, self.d
        if e < 4 or e % 2:
            raise InvalidInput(f"e must be even and >= 4, got {e}")
        if q % 2 or q < max(2, e - 4):
            raise InvalidInput(f"q must be even and >= max(2, e-4) = {max(2, e - 4)}, got {q}")
        if d < 1 or d % 2 == 0:
            raise InvalidInput(f"d must be an odd positive integer, got {d}")
        if math.gcd(self.m, d) != 1:
            raise InvalidInput(f"gcd(m, d) = gcd({self.m}, {d}) must be 1")

    @property
    def m(self) -> int:
        return self.e + 2 * self.q


@dataclass(frozen=True)
class BresinskyParams:
    q2: int

    def __post_init__(self) -> None:
        if self.q2 < 4 or self.q2 % 2:
            raise InvalidInput(f"q2 must be even and >= 4, got {self.q2}")

    @property
    def q1(self) -> int:
        return self.q2 + 1

    @property
    def d1(self) -> int:
        return self.q2 - 1


# --------------------------------------------------------------------------
# Reports


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    family: str
    params: dict[str, int]
    checks: list[Check] = field(default_factory=list)
    values: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: Any = None) -> bool:
        self.checks.append(Check(name, bool(passed), None if passed else witness))
        return bool(passed)


def _as_semigroup(raw: Sequence[int], what: str) -> SemigroupSpec:
    reduced = minimal_generators(raw)
    if reduced != sorted(raw) or len(set(raw)) != len(raw):
        raise FamilyContractViolation(f"{what}: {sorted(raw)} is not minimal, reduces to {reduced}")
    return SemigroupSpec(tuple(reduced))


# --------------------------------------------------------------------------
# Unbounded concatenation


def unbounded_raw(p: UnboundedParams) -> list[int]:
    n, e, q = p.n, p.e, p.q
    base = n * n + (e - 2) * n + q
    gens = [base + i for i in range(e - 2)]
    top = n * n + (e - 1) * n + q
    gens += [top + e - 3, top + e - 2]
    return gens


def unbounded_generators(p: UnboundedParams) -> SemigroupSpec:
    return _as_semigroup(unbounded_raw(p), f"unbounded family {p}")


def h_binomials(p: UnboundedParams) -> dict[str, tuple[tuple[int, ...], tuple[int, ...]]]:
    """``x0^i x1^(n+2-i) - x_{e-2}^i x_{e-1}^(n+1-i)`` for ``0 <= i <= n+1``."""
    n, e = p.n, p.e
    out = {}
    for i in range(n + 2):
        lhs = [0] * e
        rhs = [0] * e
        lhs[0], lhs[1] = i, n + 2 - i
        rhs[e - 2], rhs[e - 1] = i, n + 1 - i
        out[f"hh_{i}"] = (tuple(lhs), tuple(rhs))
    return out


def h_relations(p: UnboundedParams) -> list[BinomialRelation]:
    if p.q != p.e - 4:
        raise InvalidInput(f"h-relations need q = e - 4, got q={p.q}, e={p.e}")
    S = unbounded_generators(p)
    out = []
    for name, (lhs, rhs) in h_binomials(p).items():
        if nu(S, lhs) != nu(S, rhs):
            raise FamilyContractViolation(f"{name} is unbalanced: {nu(S, lhs)} != {nu(S, rhs)}")
        out.append(BinomialRelation(lhs, rhs, name))
    return out


def ed4_binomials(n: int) -> dict[str, tuple[tuple[int, ...], tuple[int, ...]]]:
    """The binomials f_μ, h_t, g1, g2 of the e = 4, q = 0 member, as (lhs, rhs) pairs.

    Sides follow the printed orientation: each polynomial is x^lhs - x^rhs.
    """
    if n < 5:
        raise InvalidInput(f"n must be >= 5, got {n}")
    out: dict[str, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    for mu in range(n + 2):
        out[f"f_{mu}"] = ((0, 0, n + 1 - mu, mu), (n + 1 - mu, mu + 1, 0, 0))
    for t in range(n + 1):
        out[f"h_{t}"] = ((0, n + 1 - t, 0, t), (n - t, 0, t + 1, 0))
    out["g1"] = ((n + 1, 0, 0, 0), (0, 0, 0, n))
    out["g2"] = ((0, 1, 1, 0), (1, 0, 0, 1))
    return out


def ed4_polynomials(n: int) -> dict[str, SparsePolynomial]:
    return {k: SparsePolynomial.binomial(a, b) for k, (a, b) in ed4_binomials(n).items()}


def ed4_names(n: int, reduced: bool) -> list[str]:
    f_range = range(1, n) if reduced else range(n + 2)
    return [f"f_{mu}" for mu in f_range] + [f"h_{t}" for t in range(n + 1)] + ["g1", "g2"]


def ed4_generating_set(n: int, reduced: bool) -> list[BinomialRelation]:
    S = unbounded_generators(UnboundedParams(n, 4, 0))
    binomials = ed4_binomials(n)
    out = []
    for name in ed4_names(n, reduced):
        lhs, rhs = binomials[name]
        if nu(S, lhs) != nu(S, rhs):
            raise FamilyContractViolation(f"{name} is unbalanced at n={n}")
        out.append(BinomialRelation(lhs, rhs, name))
    return out


def reduction_identities(
    n: int, polys: dict[str, SparsePolynomial] | None = None
) -> dict[str, tuple[list[tuple[SparsePolynomial, SparsePolynomial]], SparsePolynomial]]:
    """The three ways f_{n+1}, f_n, f_0 fall into the ideal of the others.

    Each entry is ``(terms, target)`` with ``target + Σ mult·factor == 0``.
    """
    P = polys if polys is not None else ed4_polynomials(n)

    def x(i: int, power: int = 1) -> SparsePolynomial:
        return SparsePolynomial.variable(4, i, power)

    return {
        f"f_{n + 1}": (
            [(x(3), P["g1"]), (x(0, n), P["g2"]), (x(1), P["h_0"])],
            P[f"f_{n + 1}"],
        ),
        f"f_{n}": ([(x(2), P["g1"]), (x(0), P["h_0"])], P[f"f_{n}"]),
        "f_0": ([(x(1), P["g1"]), (x(0, 0), P[f"h_{n}"])], P["f_0"]),
    }


def verify_reduction_identities(n: int, polys: dict[str, SparsePolynomial] | None = None) -> bool:
    return all(
        poly_identity_zero(terms, target)
        for terms, target in reduction_identities(n, polys).values()
    )


def eto_specialization(n: int, drop: Iterable[str] = ()) -> MonomialIdeal:
    polys = ed4_polynomials(n)
    skip = set(drop)
    chosen = [polys[k] for k in ed4_names(n, reduced=False) if k not in skip]
    return specialize_binomials_at_zero(chosen, 0)


def eto_colength(n: int, drop: Iterable[str] = ()) -> int | float:
    return monomial_colength(eto_specialization(n, drop))


def eto_colength_check(n: int, drop: Iterable[str] = ()) -> bool:
    """Colength of ``J + <x0>`` equals ``n² + 2n``, the multiplicity."""
    return eto_colength(n, drop) == n * n + 2 * n


def verify_unbounded(
    p: UnboundedParams, ideal: bool = False, budget: int | None = None
) -> VerificationReport:
    report = VerificationReport("unbounded", {"n": p.n, "e": p.e, "q": p.q})
    raw = unbounded_raw(p)
    reduced = minimal_generators(raw)
    report.add("generators_minimal", reduced == sorted(raw), {"reduced": reduced})
    S = SemigroupSpec(tuple(reduced))
    report.values.update(generators=list(S.generators), frobenius=frobenius(S), genus=genus(S))

    if p.q == p.e - 4:
        hs = h_binomials(p)
        bad = [k for k, (a, b) in hs.items() if nu(S, a) != nu(S, b)]
        report.add("h_relations_balanced", not bad, bad)
        distinct = len({BinomialRelation(a, b) for a, b in hs.values()}) == p.n + 2
        report.add("h_relations_distinct", distinct, len(hs))
        if not bad:
            missing = [
                k for k, (a, b) in hs.items()
                if not {a, b} <= set(factorizations(S, nu(S, a), budget))
            ]
            report.add("h_relations_in_fibers", not missing, missing)

    mu = minimal_presentation_cardinality(S, budget)
    report.values["mu"] = mu
    if p.e == 4 and p.q == 0:
        report.add("mu_equals_2(n+1)", mu == 2 * (p.n + 1), {"mu": mu, "expected": 2 * (p.n + 1)})
    elif p.q == p.e - 4:
        report.add("mu_at_least_n+2", mu >= p.n + 2, {"mu": mu, "n+2": p.n + 2})

    if ideal:
        if not (p.e == 4 and p.q == 0):
            raise InvalidInput("the ideal certificate is only defined for e = 4, q = 0")
        _ideal_checks(report, p.n, S, budget)
    return report


def _ideal_checks(report: VerificationReport, n: int, S: SemigroupSpec, budget: int | None) -> None:
    bound = search_bound(S)
    short = ed4_generating_set(n, reduced=True)
    full = ed4_generating_set(n, reduced=False)
    gen = relations_generate_up_to(S, short, bound, budget=budget)
    report.add("reduced_set_generates", gen.generates, {"first_failure": gen.witness})
    if gen.generates:
        mini = relations_minimal(S, short, bound, budget=budget)
        report.add("reduced_set_minimal", mini.minimal, [r.label() for r in mini.redundant])
    mu = report.values.get("mu")
    report.add("reduced_size_equals_mu", len(short) == mu, {"size": len(short), "mu": mu})
    gen_full = relations_generate_up_to(S, full, bound, budget=budget)
    report.add("full_set_generates", gen_full.generates, {"first_failure": gen_full.witness})
    if gen_full.generates:
        mini_full = relations_minimal(S, full, bound, budget=budget)
        redundant = [r.label() for r in mini_full.redundant]
        report.values["full_set_redundant"] = redundant
        allowed = {"f_0", f"f_{n}", f"f_{n + 1}"}
        ok = not mini_full.minimal and mini_full.witness.label() in allowed
        report.add("full_set_not_minimal", ok, redundant)
    report.add("reduction_identities", verify_reduction_identities(n))
    colength = eto_colength(n)
    report.values["colength"] = colength
    report.add("colength_equals_n^2+2n", colength == n * n + 2 * n,
               {"colength": colength, "expected": n * n + 2 * n})


# --------------------------------------------------------------------------
# Symmetric families


def gamma_s_raw(p: SymSParams) -> list[int]:
    m, q, d, e = p.m, p.q, p.d, p.e
    return [m, m + d] + [(q + 1) * m + (q + i) * d for i in range(2, e)]


def gamma_t_raw(p: SymTParams) -> list[int]:
    m, q, d, e = p.m, p.q, p.d, p.e
    shift = q - (e - 4) // 2
    return [m, m + d] + [q * (m + 1) + (shift + k) * d + e // 2 for k in range(e - 2)]


def gamma_s_generators(p: SymSParams) -> SemigroupSpec:
    return _as_semigroup(gamma_s_raw(p), f"family S {p}")


def gamma_t_generators(p: SymTParams) -> SemigroupSpec:
    return _as_semigroup(gamma_t_raw(p), f"family T {p}")


def _residue_system(values: list[int], m: int, what: str) -> frozenset[int]:
    if len(set(values)) != m or len({v % m for v in values}) != m:
        raise FamilyContractViolation(f"{what} is not a complete residue system mod {m}")
    return frozenset(values)


def apery_parts_s(p: SymSParams) -> dict[str, list[int]]:
    m, q, d, e = p.m, p.q, p.d, p.e
    top = (q + 1) * m + (q + e - 1) * d
    return {
        "beta1": [k * (m + d) for k in range(q + 2)],
        "beta2": [k * (m + d) + top for k in range(q + 2)],
        "beta3": [(q + 1) * m + (q + i) * d for i in range(2, e - 1)],
    }


def apery_parts_t(p: SymTParams) -> dict[str, list[int]]:
    return {
        "gamma1": gamma_t_raw(p)[2:],
        "gamma2": [k * (p.m + p.d) for k in range(2 * p.q + 2)],
    }


def apery_closed_form_s(p: SymSParams) -> frozenset[int]:
    parts = apery_parts_s(p)
    return _residue_system(sum(parts.values(), []), p.m, f"closed-form Apéry set of S {p}")


def apery_closed_form_t(p: SymTParams) -> frozenset[int]:
    parts = apery_parts_t(p)
    return _residue_system(sum(parts.values(), []), p.m, f"closed-form Apéry set of T {p}")


def frobenius_closed_form(p: SymSParams | SymTParams) -> int:
    e, q, d = p.e, p.q, p.d
    if isinstance(p, SymSParams):
        return 4 * q * q + (2 * e + 2 * d + 4) * q + e * (d + 1) + 1
    return (e + 2 * q + d) * 2 * q + d


def _no_sum_witness(p: SymSParams | SymTParams, ap: Iterable[int]) -> tuple[int, int, int] | None:
    """First (apery element, middle generator, k) hitting a forbidden sum, if any."""
    m, q, d, e = p.m, p.q, p.d, p.e
    if isinstance(p, SymSParams):
        middle = [(q + 1) * m + (q + i) * d for i in range(2, e - 1)]
        top = (q + 1) * m + (q + e - 1) * d
        targets = {k * (m + d) + top: k for k in range(1, q + 1)}
    else:
        middle = gamma_t_raw(p)[2:]
        targets = {k * (m + d): k for k in range(2, 2 * q + 1)}
    for a in sorted(ap):
        if a == 0:
            continue
        for n_i in middle:
            if a + n_i in targets:
                return (a, n_i, targets[a + n_i])
    return None


def verify_symmetric_family(
    p: SymSParams | SymTParams, budget: int | None = None
) -> VerificationReport:
    is_s = isinstance(p, SymSParams)
    report = VerificationReport("sym-s" if is_s else "sym-t", {"e": p.e, "q": p.q, "d": p.d})
    raw = gamma_s_raw(p) if is_s else gamma_t_raw(p)
    reduced = minimal_generators(raw)
    report.add("generators_minimal", reduced == sorted(raw) and len(raw) == p.e,
               {"reduced": reduced})
    S = SemigroupSpec(tuple(reduced))
    report.values["generators"] = list(S.generators)

    ap = apery(S, p.m).as_set()
    try:
        closed = apery_closed_form_s(p) if is_s else apery_closed_form_t(p)
    except FamilyContractViolation as exc:
        report.add("apery_equals_closed_form", False, str(exc))
    else:
        report.add("apery_equals_closed_form", ap == closed,
                   {"only_brute_force": sorted(ap - closed), "only_closed_form": sorted(closed - ap)})

    F = frobenius(S)
    report.values["frobenius"] = F
    report.add("frobenius_equals_closed_form", F == frobenius_closed_form(p),
               {"brute_force": F, "closed_form": frobenius_closed_form(p)})
    report.values["genus"] = genus(S)
    report.add("symmetric", is_symmetric(S) and F % 2 == 1, {"frobenius": F})

    top = max(ap)
    counts = {w: len(factorizations(S, w, budget)) for w in sorted(ap)}
    not_unique = [w for w, c in counts.items() if w != top and c != 1]
    report.add("unique_expression", not not_unique and counts[top] >= 1, not_unique)

    hit = _no_sum_witness(p, ap)
    report.add("no_sum_property", hit is None, hit)

    mu = minimal_presentation_cardinality(S, budget)
    expected = p.e * (p.e - 1) // 2 - 1
    report.values["mu"] = mu
    report.add("presentation_equals_e(e-1)/2-1", mu == expected, {"mu": mu, "expected": expected})
    return report


# --------------------------------------------------------------------------
# Bresinsky


def bresinsky_raw(p: BresinskyParams) -> list[int]:
    q1, q2, d1 = p.q1, p.q2, p.d1
    return [q1 * q2, q1 * d1, q1 * q2 + d1, q2 * d1]


def bresinsky_generators(p: BresinskyParams) -> SemigroupSpec:
    raw = bresinsky_raw(p)
    if math.gcd(*raw) != 1:
        raise FamilyContractViolation(f"Bresinsky generators {raw} have gcd {math.gcd(*raw)}")
    return _as_semigroup(raw, f"Bresinsky family {p}")


def is_concatenation(gens: Sequence[int], d: int, first_block: int) -> bool:
    """Whether sorted ``gens`` split into two arithmetic runs of difference ``d``."""
    g = sorted(gens)
    a, b = g[:first_block], g[first_block:]
    return all(y - x == d for blk in (a, b) for x, y in zip(blk, blk[1:]))


def verify_bresinsky(p: BresinskyParams, budget: int | None = None) -> VerificationReport:
    report = VerificationReport("bresinsky", {"q2": p.q2})
    raw = bresinsky_raw(p)
    report.add("gcd_one", math.gcd(*raw) == 1, math.gcd(*raw))
    reduced = minimal_generators(raw)
    report.add("generators_minimal", reduced == sorted(raw), {"reduced": reduced})
    report.add("is_concatenation", is_concatenation(raw, p.d1, 2), sorted(raw))
    S = SemigroupSpec(tuple(reduced))
    report.values.update(
        generators=list(S.generators),
        frobenius=frobenius(S),
        genus=genus(S),
        mu=minimal_presentation_cardinality(S, budget),
    )
    return report


# --------------------------------------------------------------------------
# Grid scans


@dataclass(frozen=True)
class ScanRow:
    n: int | None
    e: int | None
    q: int | None
    d: int | None
    mu: int | None
    frobenius: int | None
    genus: int | None
    symmetric: bool | None
    status: str

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


SCAN_FIELDS = ("n", "e", "q", "d", "mu", "frobenius", "genus", "symmetric", "status")


def family_semigroup(family: str, params: dict[str, int]) -> SemigroupSpec:
    if family == "unbounded":
        return unbounded_generators(UnboundedParams(params["n"], params["e"], params["q"]))
    if family == "sym-s":
        return gamma_s_generators(SymSParams(params["e"], params["q"], params["d"]))
    if family == "sym-t":
        return gamma_t_generators(SymTParams(params["e"], params["q"], params["d"]))
    if family == "bresinsky":
        return bresinsky_generators(BresinskyParams(params["q2"]))
    raise InvalidInput(f"unknown family {family!r}")


def scan_cell(family: str, params: dict[str, int], budget: int | None = None) -> ScanRow:
    """Evaluate one grid point; invalid parameters and budget overruns become statuses."""
    key = {k: params.get(k) for k in ("n", "e", "q", "d")}
    if family == "bresinsky":
        key["q"] = params.get("q2")
    try:
        S = family_semigroup(family, params)
    except InvalidInput:
        return ScanRow(**key, mu=None, frobenius=None, genus=None, symmetric=None, status="invalid")
    try:
        mu = minimal_presentation_cardinality(S, budget)
    except BudgetExceeded:
        return ScanRow(**key, mu=None, frobenius=frobenius(S), genus=genus(S),
                       symmetric=is_symmetric(S), status="budget_exceeded")
    return ScanRow(**key, mu=mu, frobenius=frobenius(S), genus=genus(S),
                   symmetric=is_symmetric(S), status="ok")


def _scan_star(args: tuple[str, dict[str, int], int | None]) -> ScanRow:
    return scan_cell(*args)


def scan(
    family: str,
    grid: Iterable[dict[str, int]],
    budget: int | None = None,
    jobs: int = 1,
) -> list[ScanRow]:
    """Evaluate ``grid`` in the given order; ``jobs > 1`` only changes wall time."""
    tasks = [(family, dict(params), budget) for params in grid]
    if jobs <= 1 or len(tasks) <= 1:
        return [_scan_star(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_scan_star, tasks))


def conjecture_scan(
    n_range: Iterable[int],
    e_range: Iterable[int],
    budget: int | None = None,
    jobs: int = 1,
) -> list[tuple[int, int, int | None, bool | None, str]]:
    """Rows ``(n, e, mu, mu >= n+2, status)`` for the members with q = e - 4.

    Evidence only: a row says nothing about parameters outside the grid.
    """
    grid = [{"n": n, "e": e, "q": e - 4} for n in sorted(n_range) for e in sorted(e_range)]
    rows = scan("unbounded", grid, budget, jobs)
    out = []
    for row in rows:
        flag = None if row.mu is None else row.mu >= row.n + 2
        out.append((row.n, row.e, row.mu, flag, row.status))
    return out
