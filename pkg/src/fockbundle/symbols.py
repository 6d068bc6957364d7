"""Pointwise coefficient functions of the photon-number index.

A DiagonalSymbol is a scalar function n -> complex backed by a closure.
Divisions and square roots are built through the guarded constructors
below so that a vanishing divisor (or a square root of a negative real)
raises SingularPoint instead of silently producing NaN/Inf.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Union

DEFAULT_SIGMA_TOL = 1e-12

Scalar = Union[int, float, complex]


def sigma_tol(theta: float = 0.0) -> float:
    """Singularity threshold for divisors built at detuning ``theta``.

    Exact zeros such as R(0)+theta at theta < 0 only come out as ~1e-17
    in floating point, so anything below this threshold inside a divisor
    is declared singular.
    """
    return 1e-12 * (1.0 + abs(theta))


class SingularPoint(Exception):
    """A coefficient evaluation hit a vanishing divisor or sqrt of a negative."""

    def __init__(self, n: int, reason: str):
        super().__init__(f"singular coefficient at basis index {n}: {reason}")
        self.n = n
        self.reason = reason


@dataclass(frozen=True)
class DiagonalSymbol:
    """An exactly evaluable scalar function of the number operator.

    Evaluation is deterministic (same n, same parameters -> identical
    result) and side-effect free.
    """

    fn: Callable[[int], complex]

    def __call__(self, n: int) -> complex:
        return complex(self.fn(n))

    def __add__(self, other) -> "DiagonalSymbol":
        other = _coerce(other)
        return DiagonalSymbol(lambda n, a=self.fn, b=other.fn: a(n) + b(n))

    __radd__ = __add__

    def __sub__(self, other) -> "DiagonalSymbol":
        other = _coerce(other)
        return DiagonalSymbol(lambda n, a=self.fn, b=other.fn: a(n) - b(n))

    def __rsub__(self, other) -> "DiagonalSymbol":
        other = _coerce(other)
        return DiagonalSymbol(lambda n, a=other.fn, b=self.fn: a(n) - b(n))

    def __mul__(self, other) -> "DiagonalSymbol":
        other = _coerce(other)
        return DiagonalSymbol(lambda n, a=self.fn, b=other.fn: a(n) * b(n))

    __rmul__ = __mul__

    def __neg__(self) -> "DiagonalSymbol":
        return DiagonalSymbol(lambda n, a=self.fn: -a(n))

    def shifted(self, d: int) -> "DiagonalSymbol":
        """The symbol n -> self(n + d)."""
        return DiagonalSymbol(lambda n, a=self.fn, d=d: a(n + d))

    def conjugate(self) -> "DiagonalSymbol":
        return DiagonalSymbol(lambda n, a=self.fn: complex(a(n)).conjugate())


def _coerce(value) -> DiagonalSymbol:
    if isinstance(value, DiagonalSymbol):
        return value
    if isinstance(value, (int, float, complex)):
        return const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a diagonal symbol")


def const(value: Scalar) -> DiagonalSymbol:
    return DiagonalSymbol(lambda n, v=complex(value): v)


def number() -> DiagonalSymbol:
    """The number operator itself, n -> n."""
    return DiagonalSymbol(lambda n: complex(n))


def guarded_div(num, den, tol: float = DEFAULT_SIGMA_TOL) -> DiagonalSymbol:
    """num / den, singular where |den| < tol."""
    num, den = _coerce(num), _coerce(den)

    def fn(n, a=num.fn, b=den.fn, tol=tol):
        d = complex(b(n))
        if abs(d) < tol:
            raise SingularPoint(n, f"division by {d!r}")
        return complex(a(n)) / d

    return DiagonalSymbol(fn)


def guarded_sqrt(arg, tol: float = DEFAULT_SIGMA_TOL) -> DiagonalSymbol:
    """sqrt(arg), singular where arg is a real value below -tol.

    Real values in [-tol, 0) are float noise around an exact zero and are
    clamped to 0.
    """
    arg = _coerce(arg)

    def fn(n, a=arg.fn, tol=tol):
        v = complex(a(n))
        if abs(v.imag) < tol:
            x = v.real
            if x < -tol:
                raise SingularPoint(n, f"sqrt of negative value {x!r}")
            return math.sqrt(max(x, 0.0))
        return cmath.sqrt(v)

    return DiagonalSymbol(fn)


def guarded_pow(arg, exponent: float, tol: float = DEFAULT_SIGMA_TOL) -> DiagonalSymbol:
    """arg ** exponent for real exponents, with sqrt/division guards.

    Negative real bases are singular for non-integer exponents; bases
    with magnitude below tol are singular for negative exponents.
    """
    arg = _coerce(arg)
    integral = float(exponent).is_integer()

    def fn(n, a=arg.fn, p=float(exponent), tol=tol, integral=integral):
        v = complex(a(n))
        if abs(v) < tol and p < 0:
            raise SingularPoint(n, f"negative power of {v!r}")
        if abs(v.imag) < tol:
            x = v.real
            if x < -tol and not integral:
                raise SingularPoint(n, f"fractional power of negative value {x!r}")
            if not integral:
                x = max(x, 0.0)
            return complex(x**p)
        return v**p

    return DiagonalSymbol(fn)


def sinc(x: float) -> float:
    """sin(x)/x, finite at x = 0 via a 7-term Taylor series for |x| < 1e-2."""
    if abs(x) >= 1e-2:
        return math.sin(x) / x
    x2 = x * x
    term = 1.0
    total = 1.0
    for k in range(1, 7):
        term *= -x2 / ((2 * k) * (2 * k + 1))
        total += term
    return total
