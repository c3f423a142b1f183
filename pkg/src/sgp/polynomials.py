"""Exact sparse integer polynomials and monomial ideals.

A monomial is an exponent tuple with one entry per variable. Polynomials map
monomials to nonzero ``int`` coefficients; the zero polynomial is empty.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Mapping, Sequence

from .errors import InvalidInput, NotMonomialAfterSpecialization

Monomial = tuple[int, ...]

INFINITE = math.inf


class SparsePolynomial:
    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Mapping[Monomial, int] | None = None):
        self.num_vars = num_vars
        clean: dict[Monomial, int] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != num_vars:
                raise InvalidInput(f"monomial {mono} does not have {num_vars} exponents")
            if any(e < 0 for e in mono):
                raise InvalidInput(f"negative exponent in {mono}")
            if coeff:
                clean[mono] = clean.get(mono, 0) + int(coeff)
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: int = 1) -> SparsePolynomial:
        return cls(len(exponents), {tuple(exponents): coeff})

    @classmethod
    def variable(cls, num_vars: int, index: int, power: int = 1) -> SparsePolynomial:
        if not 0 <= index < num_vars:
            raise InvalidInput(f"variable index {index} out of range for {num_vars} variables")
        exps = [0] * num_vars
        exps[index] = power
        return cls.monomial(exps)

    @classmethod
    def binomial(cls, lhs: Sequence[int], rhs: Sequence[int]) -> SparsePolynomial:
        """``x^lhs - x^rhs``."""
        if len(lhs) != len(rhs):
            raise InvalidInput("binomial sides have different variable counts")
        return cls(len(lhs), {tuple(lhs): 1}) - cls(len(rhs), {tuple(rhs): 1})

    def _check(self, other: SparsePolynomial) -> None:
        if self.num_vars != other.num_vars:
            raise InvalidInput(
                f"variable count mismatch: {self.num_vars} vs {other.num_vars}"
            )

    def __add__(self, other: SparsePolynomial) -> SparsePolynomial:
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SparsePolynomial(self.num_vars, out)

    def __neg__(self) -> SparsePolynomial:
        return SparsePolynomial(self.num_vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: SparsePolynomial) -> SparsePolynomial:
        return self + (-other)

    def __mul__(self, other: SparsePolynomial | int) -> SparsePolynomial:
        if isinstance(other, int):
            return SparsePolynomial(self.num_vars, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        out: dict[Monomial, int] = {}
        for (ma, ca), (mb, cb) in itertools.product(self.terms.items(), other.terms.items()):
            m = tuple(a + b for a, b in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
        return SparsePolynomial(self.num_vars, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(), reverse=True):
            body = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(mono) if e
            )
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_identity_zero(
    terms: Iterable[tuple[SparsePolynomial, SparsePolynomial]],
    target: SparsePolynomial,
) -> bool:
    """True iff ``target + Σ multiplier·factor`` is exactly zero."""
    total = target
    for multiplier, factor in terms:
        total = total + multiplier * factor
    return total.is_zero()


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


class MonomialIdeal:
    """A monomial ideal kept in interreduced form (no generator divides another)."""

    def __init__(self, num_vars: int, generators: Iterable[Sequence[int]]):
        self.num_vars = num_vars
        gens = set()
        for g in generators:
            g = tuple(int(e) for e in g)
            if len(g) != num_vars:
                raise InvalidInput(f"monomial {g} does not have {num_vars} exponents")
            gens.add(g)
        # Sorting by degree means a divisor is always seen before its multiples.
        kept: list[Monomial] = []
        for g in sorted(gens, key=lambda m: (sum(m), m)):
            if not any(divides(k, g) for k in kept):
                kept.append(g)
        self.generators = frozenset(kept)

    def contains(self, mono: Sequence[int]) -> bool:
        return any(divides(g, tuple(mono)) for g in self.generators)

    def pure_powers(self) -> list[int | None]:
        """Least exponent p with x_i^p in the ideal, per variable."""
        out: list[int | None] = [None] * self.num_vars
        for g in self.generators:
            support = [i for i, e in enumerate(g) if e]
            if len(support) == 1:
                i = support[0]
                if out[i] is None or g[i] < out[i]:
                    out[i] = g[i]
            elif not support:
                return [0] * self.num_vars
        return out

    def standard_monomials(self) -> list[Monomial]:
        box = self.pure_powers()
        if any(p is None for p in box):
            raise InvalidInput("ideal has infinite colength")
        return [
            m
            for m in itertools.product(*(range(p) for p in box))  # type: ignore[arg-type]
            if not self.contains(m)
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.num_vars == other.num_vars and self.generators == other.generators

    def __repr__(self) -> str:
        return f"MonomialIdeal({self.num_vars}, {sorted(self.generators)})"


def monomial_colength(ideal: MonomialIdeal) -> int | float:
    """Number of standard monomials; ``INFINITE`` if some variable has no pure power."""
    if any(p is None for p in ideal.pure_powers()):
        return INFINITE
    return len(ideal.standard_monomials())


def specialize_binomials_at_zero(
    binomials: Iterable[SparsePolynomial], var_index: int
) -> MonomialIdeal:
    """The ideal ``<binomials> + <x_var>`` as a monomial ideal.

    A binomial that loses a term to the substitution contributes the surviving
    monomial. A binomial that keeps both terms is still absorbed when one of
    its terms already lies in the monomial ideal built so far (then the other
    term does too); this is iterated to a fixed point. Anything left over
    means the ideal is not monomial and raises
    :class:`NotMonomialAfterSpecialization`.
    """
    binomials = list(binomials)
    if not binomials:
        raise InvalidInput("no binomials given")
    num_vars = binomials[0].num_vars
    if not 0 <= var_index < num_vars:
        raise InvalidInput(f"variable index {var_index} out of range")
    var = tuple(1 if i == var_index else 0 for i in range(num_vars))
    monos: list[Monomial] = [var]
    pending: list[tuple[Monomial, Monomial]] = []
    for b in binomials:
        if b.num_vars != num_vars:
            raise InvalidInput("binomials have different variable counts")
        if len(b.terms) != 2 or sorted(b.terms.values()) != [-1, 1]:
            raise InvalidInput(f"not a pure binomial: {b}")
        survivors = [m for m in b.terms if m[var_index] == 0]
        if len(survivors) == 2:
            pending.append((survivors[0], survivors[1]))
        else:
            monos.extend(survivors)
    ideal = MonomialIdeal(num_vars, monos)
    while pending:
        progress = False
        remaining = []
        for u, v in pending:
            if ideal.contains(u) or ideal.contains(v):
                monos.extend((u, v))
                progress = True
            else:
                remaining.append((u, v))
        if not progress:
            u, v = remaining[0]
            raise NotMonomialAfterSpecialization(
                f"binomial {SparsePolynomial.binomial(u, v)} survives setting x{var_index} = 0"
            )
        ideal = MonomialIdeal(num_vars, monos)
        pending = remaining
    return ideal
