"""Configurable-precision complex arithmetic shared by all diagram backends.

Amplitudes are plain ``complex`` values at the default 53-bit precision and
``mpmath.mpc`` values when a simulation asks for more mantissa bits.  All
arithmetic on amplitudes goes through a :class:`ComplexArithmetic` instance so
that the precision in effect is always the one configured for the simulation,
never a process-wide global.

Angle convention: every phase parameter in this package is expressed in
half-turns, i.e. ``phase_halfturns(t)`` returns ``exp(i*pi*t)``.  So ``t=1``
is a Z-type phase, ``t=0.5`` an S-type phase and ``t=0.25`` a T-type phase.
This is the single place where the unit is interpreted.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

#: Any value usable as an amplitude: ``complex`` at 53 bits, ``mpmath.mpc``
#: above.  Kept as a loose alias on purpose; the two types share the operator
#: surface the backends need.
Amplitude = object


@dataclass(frozen=True)
class PrecisionConfig:
    """Precision knobs for one simulation.

    ``leaf_epsilon`` controls how aggressively near-equal amplitudes coalesce
    inside the diagrams.  When raising ``mantissa_bits`` the epsilon must
    shrink with it, otherwise tiny distinct values still collapse together;
    the default scales as ``2**(12 - mantissa_bits)``.
    """

    mantissa_bits: int = 53
    leaf_epsilon: float | None = None

    def __post_init__(self):
        if self.mantissa_bits < 2:
            raise ValueError("mantissa_bits must be >= 2")
        if self.leaf_epsilon is None:
            if self.mantissa_bits == 53:
                eps = 1e-12
            else:
                eps = 2.0 ** (12 - self.mantissa_bits)
            object.__setattr__(self, "leaf_epsilon", eps)
        if not self.leaf_epsilon > 0:
            raise ValueError("leaf_epsilon must be positive")
        if self.leaf_epsilon < 2.0 ** (1 - self.mantissa_bits):
            raise ValueError(
                "leaf_epsilon below machine epsilon at %d mantissa bits"
                % self.mantissa_bits
            )


def _mpf_fraction(x) -> Fraction:
    """Exact rational value of an mpmath float."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if x == 0:
            return Fraction(0)
        raise ValueError("non-finite value has no rational form")
    frac = Fraction(int(man)) * Fraction(2) ** exp
    return -frac if sign else frac


class ComplexArithmetic:
    """Amplitude arithmetic bound to one :class:`PrecisionConfig`.

    At 53 mantissa bits this is a thin veneer over the native ``complex``
    type; above that it delegates to a private mpmath context so different
    simulations can run at different precisions concurrently.
    """

    def __init__(self, precision: PrecisionConfig | None = None):
        self.precision = precision or PrecisionConfig()
        self._native = self.precision.mantissa_bits == 53
        if self._native:
            self._ctx = None
            self.zero = complex(0.0, 0.0)
            self.one = complex(1.0, 0.0)
            self._eps = float(self.precision.leaf_epsilon)
        else:
            ctx = mpmath.mp.clone()
            ctx.prec = self.precision.mantissa_bits
            self._ctx = ctx
            self.zero = ctx.mpc(0, 0)
            self.one = ctx.mpc(1, 0)
            self._eps = ctx.mpf(self.precision.leaf_epsilon)

    # -- construction -----------------------------------------------------

    def make(self, re, im=0) -> Amplitude:
        if self._native:
            value = complex(float(re), float(im))
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise ValueError("amplitude components must be finite")
            return value
        value = self._ctx.mpc(re, im)
        if not (self._ctx.isfinite(value.real) and self._ctx.isfinite(value.imag)):
            raise ValueError("amplitude components must be finite")
        return value

    def sqrt_half(self) -> Amplitude:
        """1/sqrt(2) at the configured precision, computed fresh."""
        if self._native:
            return complex(math.sqrt(0.5), 0.0)
        return self._ctx.mpc(self._ctx.sqrt(self._ctx.mpf(2)) / 2, 0)

    def phase_halfturns(self, t) -> Amplitude:
        """exp(i*pi*t); the one place angle units are interpreted."""
        if self._native:
            return cmath.exp(1j * math.pi * float(t))
        return self._ctx.expjpi(self._ctx.mpf(t))

    # -- arithmetic --------------------------------------------------------

    def add(self, a: Amplitude, b: Amplitude) -> Amplitude:
        return a + b

    def mul(self, a: Amplitude, b: Amplitude) -> Amplitude:
        return a * b

    def div(self, a: Amplitude, b: Amplitude) -> Amplitude:
        return a / b

    def neg(self, a: Amplitude) -> Amplitude:
        return -a

    def is_zero(self, a: Amplitude) -> bool:
        return a == 0

    # -- comparison and bucketing -------------------------------------------

    def approx_eq(self, a: Amplitude, b: Amplitude, eps) -> bool:
        if eps < 0:
            raise ValueError("eps must be non-negative")
        if eps == 0:
            return a.real == b.real and a.imag == b.imag
        return abs(a.real - b.real) <= eps and abs(a.imag - b.imag) <= eps

    def bucket_key(self, a: Amplitude) -> tuple[int, int]:
        """Quantize to the leaf-epsilon grid; equal keys coalesce.

        Cells are half-open intervals of width leaf_epsilon centred on
        integer multiples of it, so anything within eps/2 of zero lands in
        the zero cell deterministically.
        """
        if self._native:
            return (
                math.floor(a.real / self._eps + 0.5),
                math.floor(a.imag / self._eps + 0.5),
            )
        ctx = self._ctx
        half = ctx.mpf(1) / 2
        return (
            int(ctx.floor(a.real / self._eps + half)),
            int(ctx.floor(a.imag / self._eps + half)),
        )

    def abs2(self, a: Amplitude) -> Fraction:
        """Exact squared magnitude as a rational number."""
        if self._native:
            return Fraction(a.real) ** 2 + Fraction(a.imag) ** 2
        return _mpf_fraction(a.real) ** 2 + _mpf_fraction(a.imag) ** 2

    def to_complex(self, a: Amplitude) -> complex:
        return complex(float(a.real), float(a.imag))


def amp_add(a: Amplitude, b: Amplitude, arith: ComplexArithmetic) -> Amplitude:
    return arith.add(a, b)


def amp_mul(a: Amplitude, b: Amplitude, arith: ComplexArithmetic) -> Amplitude:
    return arith.mul(a, b)


def amp_approx_eq(a: Amplitude, b: Amplitude, eps) -> bool:
    if eps < 0:
        raise ValueError("eps must be non-negative")
    if eps == 0:
        return a.real == b.real and a.imag == b.imag
    return abs(a.real - b.real) <= eps and abs(a.imag - b.imag) <= eps
