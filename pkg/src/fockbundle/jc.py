"""The detuned Jaynes-Cummings Hamiltonian as an operator-valued 2x2 matrix.

Provides its exact factorization into shift times classical times shift,
the two chart unitaries with their Dirac-string domains, the transition
operator gluing them, the rank-1 projector, the closed-form propagator
with an independent block oracle, and the local complex coordinate with
its classical limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Set, Tuple

import numpy as np

from .opmatrix import OpMatrix, check_idempotent_hermitian, matrix_equal, matrix_grid_deviation
from .operators import DomainError, FockOperator
from .report import CheckResult, merge_excluded
from .symbols import DiagonalSymbol, const, guarded_div, guarded_sqrt, number, sigma_tol, sinc


@dataclass(frozen=True)
class JCParams:
    """Detuning theta = (delta - omega)/(2 g); omega/delta optional."""

    theta: float
    g: float = 1.0
    t: float = 0.0
    omega: float | None = None
    delta: float | None = None

    def __post_init__(self):
        if self.omega is not None and self.delta is not None:
            implied = (self.delta - self.omega) / (2.0 * self.g)
            if abs(implied - self.theta) > 1e-12:
                raise ValueError(f"theta={self.theta} inconsistent with (delta-omega)/2g={implied}")

    @staticmethod
    def from_frequencies(omega: float, delta: float, g: float, t: float = 0.0) -> "JCParams":
        return JCParams(theta=(delta - omega) / (2.0 * g), g=g, t=t, omega=omega, delta=delta)


def r_symbol(theta: float, offset: int = 0) -> DiagonalSymbol:
    """sqrt(N + offset + theta^2) as a diagonal symbol."""
    return guarded_sqrt(
        DiagonalSymbol(lambda n, k=offset, t2=theta * theta: complex(n + k + t2)), sigma_tol(theta)
    )


def r_operator(theta: float, offset: int = 0) -> FockOperator:
    return FockOperator.diagonal(r_symbol(theta, offset))


def _prefactor(theta: float, sign: int, offset: int) -> DiagonalSymbol:
    """1 / sqrt(2 R(N+offset) (R(N+offset) + sign*theta))."""
    tol = sigma_tol(theta)
    r = r_symbol(theta, offset)
    return guarded_div(1.0, guarded_sqrt(const(2.0) * r * (r + sign * theta), tol), tol)


def build_h_jc(theta: float) -> OpMatrix:
    a = FockOperator.annihilation()
    adag = FockOperator.creation()
    return OpMatrix.build(
        [
            [FockOperator.scalar(theta), a],
            [adag, FockOperator.scalar(-theta)],
        ]
    )


def qdm_factorization(theta: float) -> Tuple[OpMatrix, OpMatrix, OpMatrix]:
    """The shift / classical / shift triple whose ordered product is H_JC."""
    a = FockOperator.annihilation()
    adag = FockOperator.creation()
    inv_sqrt_np1 = FockOperator.diagonal(guarded_div(1.0, guarded_sqrt(number() + 1.0)))
    sqrt_np1 = FockOperator.diagonal(guarded_sqrt(number() + 1.0))
    left = OpMatrix.diag(FockOperator.identity(), adag * inv_sqrt_np1)
    middle = OpMatrix.build(
        [
            [FockOperator.scalar(theta), sqrt_np1],
            [sqrt_np1, FockOperator.scalar(-theta)],
        ]
    )
    right = OpMatrix.diag(FockOperator.identity(), inv_sqrt_np1 * a)
    return left, middle, right


def qdm_reconstruction_check(theta: float, n_max: int, tol: float) -> CheckResult:
    """left @ middle @ right against H, away from the uncoupled state.

    The right factor (1/sqrt(N+1)) a annihilates (slot2, |0>), while H
    acts on it as -theta; equivalently its alternate writing a (1/sqrt(N))
    is singular there.  That state is the factorization's string and is
    excluded and reported.
    """
    left, middle, right = qdm_factorization(theta)
    diff = (left @ middle @ right) - build_h_jc(theta)
    dev, where, excluded = matrix_grid_deviation(diff, n_max, skip={2: {0}})
    return CheckResult(
        name="qdm_factorization",
        max_deviation=dev,
        tol=tol,
        passed=dev <= tol,
        excluded=merge_excluded(excluded),
        detail=f"max at {where}" if where else "",
    )


def chart_core(theta: float, label: str) -> OpMatrix:
    a = FockOperator.annihilation()
    adag = FockOperator.creation()
    r0 = r_operator(theta, 0)
    r1 = r_operator(theta, 1)
    if label == "I":
        return OpMatrix.build(
            [
                [r1 + FockOperator.scalar(theta), -a],
                [adag, r0 + FockOperator.scalar(theta)],
            ]
        )
    if label == "II":
        return OpMatrix.build(
            [
                [a, FockOperator.scalar(theta) - r1],
                [r0 - FockOperator.scalar(theta), adag],
            ]
        )
    raise ValueError(f"unknown chart label {label!r}")


def chart_unitary(theta: float, label: str, ordering: str = "left") -> OpMatrix:
    """V_I or V_II, with the scalar prefactors composed on the requested side."""
    sign = +1 if label == "I" else -1
    p_upper = FockOperator.diagonal(_prefactor(theta, sign, 1))
    p_lower = FockOperator.diagonal(_prefactor(theta, sign, 0))
    core = chart_core(theta, label)
    if ordering == "left":
        return OpMatrix.diag(p_upper, p_lower) @ core
    if ordering == "right":
        if label == "I":
            return core @ OpMatrix.diag(p_upper, p_lower)
        return core @ OpMatrix.diag(p_lower, p_upper)
    raise ValueError(f"unknown ordering {ordering!r}")


def chart_diagonal(theta: float, label: str) -> OpMatrix:
    r0 = r_operator(theta, 0)
    r1 = r_operator(theta, 1)
    if label == "I":
        return OpMatrix.diag(r1, -r0)
    return OpMatrix.diag(r0, -r1)


@dataclass(frozen=True)
class BundleChart:
    label: str
    unitary: OpMatrix
    unitary_alt: OpMatrix
    diagonal: OpMatrix
    theta: float

    def claimed_strings(self) -> Dict[int, Set[int]]:
        """Ground-state exclusion sets claimed for this chart's domain."""
        if self.label == "I":
            return {2: {0}} if self.theta <= 0 else {}
        return {1: {0}, 2: {0}} if self.theta >= 0 else {}


def build_chart(theta: float, label: str) -> BundleChart:
    return BundleChart(
        label=label,
        unitary=chart_unitary(theta, label, "left"),
        unitary_alt=chart_unitary(theta, label, "right"),
        diagonal=chart_diagonal(theta, label),
        theta=theta,
    )


@dataclass
class DiracStringReport:
    label: str
    theta: float
    computed: Dict[int, List[int]]
    claimed: Dict[int, List[int]]

    @property
    def matches(self) -> bool:
        return self.computed == self.claimed


def dirac_string_map(theta: float, label: str, n_max: int) -> DiracStringReport:
    """Computed singular supports of a chart against the claimed domain.

    A chart state is on the string if any displayed form of the unitary
    or its adjoint has a singular coefficient there: the chart map uses
    V together with V†, so the union is the honest undefined set.
    """
    chart = build_chart(theta, label)
    computed = merge_excluded(
        chart.unitary.column_singular_map(n_max),
        chart.unitary_alt.column_singular_map(n_max),
        chart.unitary.dagger().column_singular_map(n_max),
    )
    claimed = {slot: sorted(v) for slot, v in chart.claimed_strings().items()}
    return DiracStringReport(label=label, theta=theta, computed=computed, claimed=claimed)


def transition_operator(form: str = "ground") -> OpMatrix:
    """The diagonal gluing operator between the two charts.

    ``ground`` uses the 1/sqrt(N) writing (singular on slot 1, |0>);
    ``shifted`` uses the equivalent 1/sqrt(N+1) writing.
    """
    a = FockOperator.annihilation()
    adag = FockOperator.creation()
    if form == "ground":
        inv_sqrt_n = FockOperator.diagonal(guarded_div(1.0, guarded_sqrt(number())))
        return OpMatrix.diag(a * inv_sqrt_n, inv_sqrt_n * adag)
    if form == "shifted":
        inv_sqrt_np1 = FockOperator.diagonal(guarded_div(1.0, guarded_sqrt(number() + 1.0)))
        return OpMatrix.diag(inv_sqrt_np1 * a, adag * inv_sqrt_np1)
    raise ValueError(f"unknown form {form!r}")


def projector_pjc(theta: float, ordering: str = "left") -> OpMatrix:
    a = FockOperator.annihilation()
    adag = FockOperator.creation()
    r0 = r_operator(theta, 0)
    r1 = r_operator(theta, 1)
    tol = sigma_tol(theta)
    half_inv_r1 = FockOperator.diagonal(guarded_div(1.0, 2.0 * r_symbol(theta, 1), tol))
    half_inv_r0 = FockOperator.diagonal(guarded_div(1.0, 2.0 * r_symbol(theta, 0), tol))
    core = OpMatrix.build(
        [
            [r1 + FockOperator.scalar(theta), a],
            [adag, r0 - FockOperator.scalar(theta)],
        ]
    )
    pre = OpMatrix.diag(half_inv_r1, half_inv_r0)
    if ordering == "left":
        return pre @ core
    if ordering == "right":
        return core @ pre
    raise ValueError(f"unknown ordering {ordering!r}")


def projector_singular_map(theta: float, n_max: int) -> Dict[int, List[int]]:
    p = projector_pjc(theta, "left")
    return merge_excluded(
        p.column_singular_map(n_max),
        projector_pjc(theta, "right").column_singular_map(n_max),
        p.dagger().column_singular_map(n_max),
    )


def transition_singular_map(n_max: int) -> Dict[int, List[int]]:
    """Singular support of the gluing operator in its defining form."""
    return merge_excluded(transition_operator("ground").column_singular_map(n_max))


def string_report_check(name: str, computed: Dict[int, List[int]], claimed: Dict[int, List[int]]) -> CheckResult:
    """Compare a computed singular support against the claimed domain."""
    mismatch = 0
    slots = set(computed) | set(claimed)
    for s in slots:
        mismatch += len(set(computed.get(s, [])) ^ set(claimed.get(s, [])))
    return CheckResult(
        name=name,
        max_deviation=float(mismatch),
        tol=0.0,
        passed=mismatch == 0,
        excluded={s: sorted(v) for s, v in computed.items()},
        detail=f"claimed {claimed!r}",
    )


def spectral_decomposition_check(theta: float, n_max: int, tol: float) -> CheckResult:
    """H_JC against diag(R(N+1), R(N)) (2 P - 1)."""
    p = projector_pjc(theta)
    d = OpMatrix.diag(r_operator(theta, 1), r_operator(theta, 0))
    rebuilt = (d @ p) - (d @ (OpMatrix.identity(2) - p))
    return matrix_equal(build_h_jc(theta), rebuilt, n_max, tol, name="spectral_decomposition")


# -- propagator -----------------------------------------------------------


def propagator_closed_form(theta: float, g: float, t: float) -> OpMatrix:
    """exp(-i g t H_JC) written with cos/sin of R(N), sinc-regularized at R=0."""
    a = FockOperator.annihilation()
    adag = FockOperator.creation()
    gt = g * t

    def rho(m: int) -> float:
        return math.sqrt(m + theta * theta)

    e11 = FockOperator.diagonal(
        DiagonalSymbol(lambda n: math.cos(gt * rho(n + 1)) - 1j * theta * gt * sinc(gt * rho(n + 1)))
    )
    e22 = FockOperator.diagonal(
        DiagonalSymbol(lambda n: math.cos(gt * rho(n)) + 1j * theta * gt * sinc(gt * rho(n)))
    )
    f_upper = FockOperator.diagonal(DiagonalSymbol(lambda n: -1j * gt * sinc(gt * rho(n + 1))))
    f_lower = FockOperator.diagonal(DiagonalSymbol(lambda n: -1j * gt * sinc(gt * rho(n))))
    return OpMatrix.build([[e11, f_upper * a], [f_lower * adag, e22]])


def propagator_block_oracle(theta: float, g: float, t: float, n_max: int) -> Dict[Tuple[int, int, int, int], complex]:
    """Exact propagator elements from the invariant two-dimensional subspaces.

    The Hamiltonian couples only (slot1,|n>) with (slot2,|n+1>), plus the
    uncoupled (slot2,|0>).  Each 2x2 block is exponentiated through its
    numpy eigendecomposition, which is independent of the closed form.
    """
    out: Dict[Tuple[int, int, int, int], complex] = {}
    out[(2, 0, 2, 0)] = complex(np.exp(1j * g * t * theta))
    for n in range(n_max + 1):
        h = np.array([[theta, math.sqrt(n + 1)], [math.sqrt(n + 1), -theta]], dtype=complex)
        w, v = np.linalg.eigh(h)
        u = v @ np.diag(np.exp(-1j * g * t * w)) @ v.conj().T
        out[(1, n, 1, n)] = complex(u[0, 0])
        out[(1, n, 2, n + 1)] = complex(u[0, 1])
        out[(2, n + 1, 1, n)] = complex(u[1, 0])
        out[(2, n + 1, 2, n + 1)] = complex(u[1, 1])
    return out


def propagator_oracle_check(theta: float, g: float, t: float, n_max: int, tol: float) -> CheckResult:
    closed = propagator_closed_form(theta, g, t)
    oracle = propagator_block_oracle(theta, g, t, n_max)
    max_dev, where = 0.0, ""
    for si in (1, 2):
        for sj in (1, 2):
            for n in range(n_max + 1):
                for m in (n - 1, n, n + 1):
                    if not (0 <= m <= n_max):
                        continue
                    lhs = closed.matrix_element(si, m, sj, n)
                    rhs = oracle.get((si, m, sj, n), 0.0)
                    v = abs(lhs - rhs)
                    if v > max_dev:
                        max_dev = v
                        where = f"(slot{si},{m} | slot{sj},{n})"
    return CheckResult(
        name="propagator_vs_block_oracle",
        max_deviation=max_dev,
        tol=tol,
        passed=max_dev <= tol,
        detail=f"theta={theta}, gt={g * t}; max at {where}",
    )


def propagator_unitarity_check(theta: float, g: float, t: float, n_max: int, tol: float) -> CheckResult:
    from .opmatrix import check_unitary

    u = propagator_closed_form(theta, g, t)
    res = check_unitary(u, n_max, tol, name="propagator_unitary")
    return CheckResult(
        name=res.name,
        max_deviation=res.max_deviation,
        tol=res.tol,
        passed=res.passed,
        excluded=res.excluded,
        detail=f"theta={theta}, gt={g * t}",
    )


def propagator_semigroup_check(theta: float, g: float, t1: float, t2: float, n_max: int, tol: float) -> CheckResult:
    """U(t1) U(t2) against U(t1 + t2)."""
    prod = propagator_closed_form(theta, g, t1) @ propagator_closed_form(theta, g, t2)
    whole = propagator_closed_form(theta, g, t1 + t2)
    res = matrix_equal(prod, whole, n_max, tol, name="propagator_semigroup")
    return CheckResult(
        name=res.name,
        max_deviation=res.max_deviation,
        tol=res.tol,
        passed=res.passed,
        excluded=res.excluded,
        detail=f"theta={theta}, g={g}, t1={t1}, t2={t2}",
    )


def full_evolution(p: JCParams, order: str = "free_first") -> OpMatrix:
    """exp(-i t H) as the product of the free part and the coupling part.

    The free part contributes the diagonal phases exp(-i t (omega n +/- omega/2));
    the two factors commute, which ``order`` lets callers verify.
    """
    if p.omega is None or p.delta is None:
        raise ValueError("full evolution needs omega and delta")
    omega, t = p.omega, p.t
    up = FockOperator.diagonal(DiagonalSymbol(lambda n: np.exp(-1j * t * (omega * n + omega / 2.0))))
    down = FockOperator.diagonal(DiagonalSymbol(lambda n: np.exp(-1j * t * (omega * n - omega / 2.0))))
    free = OpMatrix.diag(up, down)
    coupling = propagator_closed_form(p.theta, p.g, p.t)
    if order == "free_first":
        return free @ coupling
    if order == "coupling_first":
        return coupling @ free
    raise ValueError(f"unknown order {order!r}")


# -- local coordinate and classical limit ---------------------------------


def local_coordinate_z(theta: float, form: str = "prefactor_left") -> FockOperator:
    """The off-diagonal chart coordinate (1/(R(N)+theta)) a-dagger."""
    adag = FockOperator.creation()
    tol = sigma_tol(theta)
    if form == "prefactor_left":
        pre = FockOperator.diagonal(guarded_div(1.0, r_symbol(theta, 0) + theta, tol))
        return pre * adag
    if form == "prefactor_right":
        post = FockOperator.diagonal(guarded_div(1.0, r_symbol(theta, 1) + theta, tol))
        return adag * post
    raise ValueError(f"unknown form {form!r}")


def z_identity_check(theta: float, n_max: int, tol: float) -> CheckResult:
    """1 + Z†Z against 2 R(N+1) / (R(N+1)+theta)."""
    z = local_coordinate_z(theta)
    lhs = FockOperator.identity() + z.dagger() * z
    rhs = FockOperator.diagonal(
        guarded_div(2.0 * r_symbol(theta, 1), r_symbol(theta, 1) + theta, sigma_tol(theta))
    )
    from .operators import op_equal

    return op_equal(lhs, rhs, n_max, tol, name="z_coordinate_identity")


def coherent_support(alpha: complex, cutoff: float = 1e-16) -> int:
    """Largest n whose coherent amplitude |alpha|^n e^{-|alpha|^2/2}/sqrt(n!) exceeds the cutoff."""
    a2 = abs(alpha) ** 2
    log_cut = math.log(cutoff)
    log_amp = -a2 / 2.0
    n, n_top = 0, 0
    while n < 100000:
        if log_amp > log_cut:
            n_top = n
        elif n > a2:
            break
        n += 1
        log_amp += math.log(abs(alpha)) - 0.5 * math.log(n)
    return n_top


def coherent_expectation_z(theta: float, alpha: complex) -> complex:
    """<alpha| Z |alpha> with the coherent tail cut below 1e-16 amplitude.

    Reduces to conj(alpha) * sum_n p_n / (R(n+1)+theta) over Poisson
    weights p_n.
    """
    if theta < 0:
        raise DomainError({0}, "coordinate chart undefined for theta < 0 (string at the ground state)")
    a2 = abs(alpha) ** 2
    n_top = coherent_support(alpha)
    total = 0.0
    log_p = -a2  # log of the Poisson weight e^{-|a|^2} |a|^{2n} / n!
    for n in range(n_top + 1):
        total += math.exp(log_p) / (math.sqrt(n + 1 + theta * theta) + theta)
        log_p += math.log(a2) - math.log(n + 1)
    return complex(np.conj(alpha)) * total


def classical_z(alpha: complex, theta: float) -> complex:
    """Classical stereographic target: conj(alpha)/(r + theta), r^2 = |alpha|^2 + theta^2."""
    r = math.sqrt(abs(alpha) ** 2 + theta * theta)
    return complex(np.conj(alpha)) / (r + theta)


def classical_limit_errors(theta: float, alphas=(2.0, 4.0, 8.0)) -> List[float]:
    """Relative error of <alpha|Z|alpha> against the classical coordinate."""
    errs = []
    for alpha in alphas:
        expect = coherent_expectation_z(theta, alpha)
        target = classical_z(alpha, theta)
        errs.append(abs(expect - target) / abs(target))
    return errs


def classical_limit_check(theta: float, alphas=(2.0, 4.0, 8.0)) -> CheckResult:
    errs = classical_limit_errors(theta, alphas)
    monotone = all(b < a for a, b in zip(errs, errs[1:]))
    return CheckResult(
        name="z_classical_limit_decay",
        max_deviation=errs[-1],
        tol=errs[0] if errs else 0.0,
        passed=monotone,
        detail="relative errors " + ", ".join(f"|a|={a}: {e:.3e}" for a, e in zip(alphas, errs)),
    )
