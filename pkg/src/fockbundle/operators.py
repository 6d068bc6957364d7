"""Weighted-shift operator algebra over the bosonic number basis.

A FockOperator is a finite sum of shift terms (d, c): the term acts on a
basis state |n> as c(n)|n+d>, and as 0 whenever n+d < 0.  Every operator
built from the ladder operators and functions of the number operator is
closed under composition, adjoint and linear combination in this form,
so operator identities can be checked on arbitrarily large basis grids
without any truncation error: the only cutoff lives in the verification
grid, never in the operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Set, Tuple

from .report import CheckResult
from .symbols import (
    DEFAULT_SIGMA_TOL,
    DiagonalSymbol,
    SingularPoint,
    const,
    guarded_div,
    guarded_pow,
    guarded_sqrt,
    number,
)

Scalar = (int, float, complex)


class DomainError(Exception):
    """An operator was applied to basis states where a coefficient is singular.

    ``states`` is the set of offending basis indices; for matrix-valued
    operators the raiser wraps this with the affected component slot.
    """

    def __init__(self, states: Iterable[int], message: str = "singular basis states"):
        self.states = set(states)
        super().__init__(f"{message}: {sorted(self.states)}")


class FockVector:
    """Finite-support complex coefficient map over the number basis."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, complex] | None = None):
        self.coeffs = {n: complex(c) for n, c in (coeffs or {}).items() if c != 0}
        if any(n < 0 for n in self.coeffs):
            raise ValueError("basis indices must be nonnegative")

    @staticmethod
    def basis(n: int) -> "FockVector":
        return FockVector({n: 1.0})

    def norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self.coeffs.values()))

    def inner(self, other: "FockVector") -> complex:
        return sum(self.coeffs[n].conjugate() * c for n, c in other.coeffs.items() if n in self.coeffs)

    def add(self, other: "FockVector") -> "FockVector":
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, 0.0) + c
        return FockVector(out)

    def scale(self, z: complex) -> "FockVector":
        return FockVector({n: z * c for n, c in self.coeffs.items()})

    def __getitem__(self, n: int) -> complex:
        return self.coeffs.get(n, 0.0)

    def support(self) -> Set[int]:
        return set(self.coeffs)

    def __repr__(self) -> str:
        body = " + ".join(f"({c:.6g})|{n}>" for n, c in sorted(self.coeffs.items()))
        return body or "0"


def _composed(ca: DiagonalSymbol, db: int, cb: DiagonalSymbol) -> DiagonalSymbol:
    # B acts first: guard the intermediate index n+db, and evaluate cb
    # before ca so singularities of the first-applied factor win.
    def fn(n, ca=ca.fn, db=db, cb=cb.fn):
        right = cb(n)
        if n + db < 0:
            return 0.0
        # ca is evaluated even when right == 0: a vanishing numerator does
        # not repair a vanishing divisor, the state is still on the string
        return ca(n + db) * right

    return DiagonalSymbol(fn)


@dataclass(frozen=True)
class FockOperator:
    """Normal-form finite sum of shift terms, at most one per shift degree."""

    terms: Tuple[Tuple[int, DiagonalSymbol], ...]

    @staticmethod
    def from_terms(mapping: Mapping[int, DiagonalSymbol]) -> "FockOperator":
        return FockOperator(tuple(sorted(mapping.items())))

    @staticmethod
    def zero() -> "FockOperator":
        return FockOperator(())

    @staticmethod
    def diagonal(sym: DiagonalSymbol) -> "FockOperator":
        return FockOperator.from_terms({0: sym})

    @staticmethod
    def scalar(value: complex) -> "FockOperator":
        return FockOperator.diagonal(const(value))

    @staticmethod
    def identity() -> "FockOperator":
        return FockOperator.scalar(1.0)

    @staticmethod
    def annihilation() -> "FockOperator":
        return FockOperator.from_terms({-1: DiagonalSymbol(lambda n: math.sqrt(n))})

    @staticmethod
    def creation() -> "FockOperator":
        return FockOperator.from_terms({1: DiagonalSymbol(lambda n: math.sqrt(n + 1))})

    @staticmethod
    def number_op() -> "FockOperator":
        return FockOperator.diagonal(number())

    # -- algebra ----------------------------------------------------------

    def __add__(self, other: "FockOperator") -> "FockOperator":
        out: Dict[int, DiagonalSymbol] = dict(self.terms)
        for d, c in other.terms:
            out[d] = out[d] + c if d in out else c
        return FockOperator.from_terms(out)

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        return self + (-1.0) * other

    def __neg__(self) -> "FockOperator":
        return (-1.0) * self

    def scale(self, z: complex) -> "FockOperator":
        if z == 0:
            return FockOperator.zero()
        return FockOperator.from_terms({d: const(z) * c for d, c in self.terms})

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        out: Dict[int, DiagonalSymbol] = {}
        for da, ca in self.terms:
            for db, cb in other.terms:
                sym = _composed(ca, db, cb)
                d = da + db
                out[d] = out[d] + sym if d in out else sym
        return FockOperator.from_terms(out)

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def dagger(self) -> "FockOperator":
        out: Dict[int, DiagonalSymbol] = {}
        for d, c in self.terms:
            # the adjoint coefficient at n pairs with <n-d|, which does not
            # exist below the vacuum: return 0 there instead of evaluating
            out[-d] = DiagonalSymbol(
                lambda n, d=d, c=c.fn: complex(c(n - d)).conjugate() if n - d >= 0 else 0.0
            )
        return FockOperator.from_terms(out)

    def inverse(self, tol: float = DEFAULT_SIGMA_TOL) -> "FockOperator":
        return FockOperator.diagonal(guarded_div(1.0, self._diagonal_symbol("inverse"), tol))

    def sqrt(self, tol: float = DEFAULT_SIGMA_TOL) -> "FockOperator":
        return FockOperator.diagonal(guarded_sqrt(self._diagonal_symbol("sqrt"), tol))

    def power(self, exponent: float, tol: float = DEFAULT_SIGMA_TOL) -> "FockOperator":
        """Pointwise real power; only defined for pure functions of N."""
        return FockOperator.diagonal(guarded_pow(self._diagonal_symbol("power"), exponent, tol))

    def _diagonal_symbol(self, what: str) -> DiagonalSymbol:
        if any(d != 0 for d, _ in self.terms):
            raise ValueError(f"{what} is only defined for shift-degree-0 operators")
        return self.terms[0][1] if self.terms else const(0.0)

    # -- action and evaluation --------------------------------------------

    def apply(self, v: FockVector) -> FockVector:
        out: Dict[int, complex] = {}
        singular: Set[int] = set()
        for d, c in self.terms:
            for n, amp in v.coeffs.items():
                try:
                    val = c(n)
                except SingularPoint:
                    singular.add(n)
                    continue
                if n + d >= 0 and val != 0:
                    out[n + d] = out.get(n + d, 0.0) + val * amp
        if singular:
            raise DomainError(singular)
        return FockVector(out)

    def matrix_element(self, m: int, n: int) -> complex:
        """<m|op|n>; zero when m-n matches no term degree."""
        if m < 0 or n < 0:
            return 0.0
        for d, c in self.terms:
            if d == m - n:
                try:
                    return c(n)
                except SingularPoint:
                    raise DomainError({n})
        return 0.0

    def singular_support(self, n_max: int) -> Set[int]:
        """Basis indices n <= n_max at which any coefficient evaluation is singular."""
        out: Set[int] = set()
        for d, c in self.terms:
            for n in range(n_max + 1):
                try:
                    c(n)
                except SingularPoint:
                    out.add(n)
        return out


def op_equal(a: FockOperator, b: FockOperator, n_max: int, tol: float, name: str = "op_equal") -> CheckResult:
    """Max |<m|A-B|n>| over the non-singular grid m, n <= n_max.

    Singular points of either side are excluded from the scan and listed
    in the result (slot 1 by convention for scalar operators).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    diff = a - b
    max_dev = 0.0
    where = ""
    excluded: Set[int] = set()
    for n in range(n_max + 1):
        try:
            for d, c in diff.terms:
                if n + d > n_max:
                    continue
                v = abs(c(n))  # evaluated below the vacuum too: singularities count
                if n + d >= 0 and v > max_dev:
                    max_dev = v
                    where = f"(m={n + d}, n={n})"
        except SingularPoint:
            excluded.add(n)
    passed = max_dev <= tol
    return CheckResult(
        name=name,
        max_deviation=max_dev,
        tol=tol,
        passed=passed,
        excluded={1: sorted(excluded)} if excluded else {},
        detail=f"max at {where}" if where else "",
    )
