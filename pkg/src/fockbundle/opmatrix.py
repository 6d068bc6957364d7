"""Matrices with FockOperator entries and grid-based identity checks.

Multiplication uses ordered entry products (left factor composed on the
left), so operator ordering inside every product is observable.  Grid
checks run over all basis states (slot, |n>) with n <= n_max; states on
which some coefficient is singular are excluded from the scan and
reported per slot -- the exclusion sets are the Dirac strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Set, Tuple

import numpy as np

from .operators import DomainError, FockOperator, FockVector
from .report import CheckResult, merge_excluded
from .symbols import SingularPoint


class SlotDomainError(Exception):
    """Matrix application hit singular basis states, resolved per slot (1-based)."""

    def __init__(self, slot_states: Dict[int, Set[int]]):
        self.slot_states = {s: set(v) for s, v in slot_states.items() if v}
        body = "; ".join(f"slot {s}: {sorted(v)}" for s, v in sorted(self.slot_states.items()))
        super().__init__(f"singular states: {body}")


@dataclass
class StackedState:
    """Element of C^k (x) F: one FockVector per matrix slot."""

    components: List[FockVector]

    @staticmethod
    def basis(k: int, slot: int, n: int) -> "StackedState":
        comps = [FockVector() for _ in range(k)]
        comps[slot - 1] = FockVector.basis(n)
        return StackedState(comps)

    def norm(self) -> float:
        return float(np.sqrt(sum(v.norm() ** 2 for v in self.components)))

    def add(self, other: "StackedState") -> "StackedState":
        return StackedState([a.add(b) for a, b in zip(self.components, other.components)])


@dataclass(frozen=True)
class OpMatrix:
    entries: Tuple[Tuple[FockOperator, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix must be nonempty")
        cols = len(self.entries[0])
        if any(len(row) != cols for row in self.entries):
            raise ValueError("ragged rows")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @staticmethod
    def build(rows: Sequence[Sequence[FockOperator]]) -> "OpMatrix":
        return OpMatrix(tuple(tuple(row) for row in rows))

    @staticmethod
    def identity(k: int) -> "OpMatrix":
        return OpMatrix.build(
            [[FockOperator.identity() if i == j else FockOperator.zero() for j in range(k)] for i in range(k)]
        )

    @staticmethod
    def zero(rows: int, cols: int) -> "OpMatrix":
        return OpMatrix.build([[FockOperator.zero()] * cols for _ in range(rows)])

    @staticmethod
    def diag(*ops: FockOperator) -> "OpMatrix":
        k = len(ops)
        return OpMatrix.build(
            [[ops[i] if i == j else FockOperator.zero() for j in range(k)] for i in range(k)]
        )

    @staticmethod
    def from_scalars(values: np.ndarray) -> "OpMatrix":
        """Numeric (classical) matrix, embedded as constant operators."""
        arr = np.atleast_2d(np.asarray(values, dtype=complex))
        return OpMatrix.build([[FockOperator.scalar(v) for v in row] for row in arr])

    def entry(self, i: int, j: int) -> FockOperator:
        return self.entries[i][j]

    # -- algebra ----------------------------------------------------------

    def __matmul__(self, other: "OpMatrix") -> "OpMatrix":
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch: {self.cols} vs {other.rows}")
        rows = []
        for i in range(self.rows):
            row = []
            for k in range(other.cols):
                acc = FockOperator.zero()
                for j in range(self.cols):
                    acc = acc + self.entries[i][j] * other.entries[j][k]
                row.append(acc)
            rows.append(row)
        return OpMatrix.build(rows)

    def __add__(self, other: "OpMatrix") -> "OpMatrix":
        return OpMatrix.build(
            [[self.entries[i][j] + other.entries[i][j] for j in range(self.cols)] for i in range(self.rows)]
        )

    def __sub__(self, other: "OpMatrix") -> "OpMatrix":
        return OpMatrix.build(
            [[self.entries[i][j] - other.entries[i][j] for j in range(self.cols)] for i in range(self.rows)]
        )

    def scale(self, z: complex) -> "OpMatrix":
        return OpMatrix.build([[e.scale(z) for e in row] for row in self.entries])

    def dagger(self) -> "OpMatrix":
        return OpMatrix.build(
            [[self.entries[j][i].dagger() for j in range(self.rows)] for i in range(self.cols)]
        )

    def kron(self, other: "OpMatrix") -> "OpMatrix":
        """(A kron B)[(i,k)][(j,l)] = A[i][j] composed left of B[k][l]."""
        rows = []
        for i in range(self.rows):
            for k in range(other.rows):
                row = []
                for j in range(self.cols):
                    for l in range(other.cols):
                        row.append(self.entries[i][j] * other.entries[k][l])
                rows.append(row)
        return OpMatrix.build(rows)

    # -- action -----------------------------------------------------------

    def apply(self, s: StackedState) -> StackedState:
        if len(s.components) != self.cols:
            raise ValueError("component count mismatch")
        out = [FockVector() for _ in range(self.rows)]
        bad: Dict[int, Set[int]] = {}
        for i in range(self.rows):
            for j in range(self.cols):
                try:
                    out[i] = out[i].add(self.entries[i][j].apply(s.components[j]))
                except DomainError as err:
                    bad.setdefault(j + 1, set()).update(err.states)
        if bad:
            raise SlotDomainError(bad)
        return StackedState(out)

    def matrix_element(self, slot_m: int, m: int, slot_n: int, n: int) -> complex:
        return self.entries[slot_m - 1][slot_n - 1].matrix_element(m, n)

    def column_singular_map(self, n_max: int) -> Dict[int, Set[int]]:
        """Per input slot, the basis states on which some column entry is singular."""
        out: Dict[int, Set[int]] = {}
        for j in range(self.cols):
            states: Set[int] = set()
            for i in range(self.rows):
                states |= self.entries[i][j].singular_support(n_max)
            if states:
                out[j + 1] = states
        return out


def matrix_grid_deviation(
    diff: OpMatrix, n_max: int, skip: Dict[int, Set[int]] | None = None
) -> Tuple[float, str, Dict[int, Set[int]]]:
    """Max |coefficient| of ``diff`` over non-excluded grid states.

    Returns (max deviation, location string, exclusion map); states in
    ``skip`` and states found singular during the scan are excluded.
    """
    skip = {k: set(v) for k, v in (skip or {}).items()}
    max_dev, where = 0.0, ""
    excluded: Dict[int, Set[int]] = {k: set(v) for k, v in skip.items()}
    for j in range(diff.cols):
        for n in range(n_max + 1):
            if n in skip.get(j + 1, ()):
                continue
            try:
                for i in range(diff.rows):
                    for d, c in diff.entries[i][j].terms:
                        if n + d > n_max:
                            continue
                        v = abs(c(n))  # below-vacuum evaluations still flag singularities
                        if n + d >= 0 and v > max_dev:
                            max_dev = v
                            where = f"(slot{i + 1},{n + d} | slot{j + 1},{n})"
            except SingularPoint:
                excluded.setdefault(j + 1, set()).add(n)
    return max_dev, where, {k: v for k, v in excluded.items() if v}


def matrix_equal(a: OpMatrix, b: OpMatrix, n_max: int, tol: float, name: str = "matrix_equal") -> CheckResult:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ValueError("shape mismatch")
    max_dev, where, excl = matrix_grid_deviation(a - b, n_max)
    return CheckResult(
        name=name,
        max_deviation=max_dev,
        tol=tol,
        passed=max_dev <= tol,
        excluded=merge_excluded(excl),
        detail=f"max at {where}" if where else "",
    )


def check_unitary(m: OpMatrix, n_max: int, tol: float, name: str = "unitary") -> CheckResult:
    """Deviation of M†M and MM† from the identity on the non-singular grid.

    The grid excludes states where M or M† itself is singular, even when
    the products happen to smooth the singularity out: the operator
    being checked is undefined there.
    """
    if m.rows != m.cols:
        raise ValueError("unitarity check needs a square matrix")
    base = merge_excluded(m.column_singular_map(n_max), m.dagger().column_singular_map(n_max))
    skip = {k: set(v) for k, v in base.items()}
    ident = OpMatrix.identity(m.rows)
    dev1, w1, e1 = matrix_grid_deviation(m.dagger() @ m - ident, n_max, skip)
    dev2, w2, e2 = matrix_grid_deviation(m @ m.dagger() - ident, n_max, skip)
    max_dev = max(dev1, dev2)
    return CheckResult(
        name=name,
        max_deviation=max_dev,
        tol=tol,
        passed=max_dev <= tol,
        excluded=merge_excluded(e1, e2),
        detail=f"max at {w1 if dev1 >= dev2 else w2}",
    )


def check_idempotent_hermitian(m: OpMatrix, n_max: int, tol: float, name: str = "projector") -> CheckResult:
    """Deviations of M@M - M and M† - M on the non-singular grid."""
    if m.rows != m.cols:
        raise ValueError("projector check needs a square matrix")
    base = merge_excluded(m.column_singular_map(n_max), m.dagger().column_singular_map(n_max))
    skip = {k: set(v) for k, v in base.items()}
    dev1, w1, e1 = matrix_grid_deviation(m @ m - m, n_max, skip)
    dev2, w2, e2 = matrix_grid_deviation(m.dagger() - m, n_max, skip)
    max_dev = max(dev1, dev2)
    return CheckResult(
        name=name,
        max_deviation=max_dev,
        tol=tol,
        passed=max_dev <= tol,
        excluded=merge_excluded(e1, e2),
        detail=f"max at {w1 if dev1 >= dev2 else w2}",
    )
