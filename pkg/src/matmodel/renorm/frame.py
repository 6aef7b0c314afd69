"""Renormalized I-coordinates built from the t-couplings.

I_0 is the formal solution of the fixed point x = sum_n t_n x^n / n!, and

    I_k = sum_{n >= 0} t_{n+k} I_0^n / n!   (k >= 1),
    q_n = I_{n+1} (1 - I_1)^{-(n+2)/2}      (n >= 1).

``build_frame`` constructs I_0 twice - by the explicit weighted sum over
compositions (Lagrange form) and by fixed-point iteration - and insists the
two agree exactly through the truncation weight.  ``invert_frame`` checks
the inverse change of coordinates t_k = sum_n (-1)^n I_0^n I_{n+k} / n!.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from ..exactmath import TruncatedSeries, series_log, series_pow
from ..verify import VerificationError, VerificationReport

__all__ = ["ICoordinateFrame", "build_frame", "invert_frame"]


class ICoordinateFrame:
    """Lazy, cached access to the I- and q-coordinate series at weight D."""

    __slots__ = ("_truncation", "_i", "_ipow", "_halfpow", "_q", "_log")

    def __init__(self, truncation: int, i0: TruncatedSeries):
        self._truncation = truncation
        self._i: dict[int, TruncatedSeries] = {0: i0}
        self._ipow: dict[tuple[int, int], TruncatedSeries] = {}
        self._halfpow: dict[int, TruncatedSeries] = {}
        self._q: dict[int, TruncatedSeries] = {}
        self._log: TruncatedSeries | None = None

    @property
    def truncation(self) -> int:
        return self._truncation

    def I(self, k: int) -> TruncatedSeries:  # noqa: E743  (I is the point)
        """The coordinate I_k as a series in the t-couplings."""
        if k < 0:
            raise ValueError("I_k is defined for k >= 0")
        cached = self._i.get(k)
        if cached is not None:
            return cached
        D = self._truncation
        total = TruncatedSeries.zero(D)
        n = 0
        while n + (n + k + 1) <= D:
            term = TruncatedSeries.symbol(D, f"t_{n + k}") * self.I_power(0, n)
            total = total + term.scale(Fraction(1, factorial(n)))
            n += 1
        self._i[k] = total
        return total

    def I_power(self, k: int, exponent: int) -> TruncatedSeries:
        """I_k^exponent, cached."""
        if exponent == 0:
            return TruncatedSeries.one(self._truncation)
        cached = self._ipow.get((k, exponent))
        if cached is not None:
            return cached
        value = self.I_power(k, exponent - 1) * self.I(k)
        self._ipow[(k, exponent)] = value
        return value

    def one_minus_I1_pow(self, half: int) -> TruncatedSeries:
        """(1 - I_1)^(half/2) for any integer ``half`` (possibly odd/negative)."""
        cached = self._halfpow.get(half)
        if cached is not None:
            return cached
        base = TruncatedSeries.one(self._truncation) - self.I(1)
        value = series_pow(base, Fraction(half, 2))
        self._halfpow[half] = value
        return value

    def log_inv_one_minus_I1(self) -> TruncatedSeries:
        """log(1/(1 - I_1))."""
        if self._log is None:
            base = TruncatedSeries.one(self._truncation) - self.I(1)
            self._log = -series_log(base)
        return self._log

    def q(self, n: int) -> TruncatedSeries:
        """The square-root-free coordinate q_n = I_{n+1}(1-I_1)^{-(n+2)/2}."""
        if n < 1:
            raise ValueError("q_n is defined for n >= 1")
        cached = self._q.get(n)
        if cached is not None:
            return cached
        value = self.I(n + 1) * self.one_minus_I1_pow(-(n + 2))
        self._q[n] = value
        return value


def _i0_fixed_point(truncation: int) -> TruncatedSeries:
    """Solve x = sum_n t_n x^n / n! by iteration (one weight gained per pass)."""
    D = truncation
    x = TruncatedSeries.zero(D)
    for _ in range(D + 2):
        powers = TruncatedSeries.one(D)
        total = TruncatedSeries.symbol(D, "t_0")
        low = x.min_weight()
        for n in range(1, D):
            if low is not None and n * low + n + 1 > D:
                break
            powers = powers * x
            if powers.is_zero:
                break
            term = TruncatedSeries.symbol(D, f"t_{n}") * powers
            total = total + term.scale(Fraction(1, factorial(n)))
        if total == x:
            return x
        x = total
    raise VerificationError("I_0 fixed point failed to stabilize")


def _i0_lagrange(truncation: int) -> TruncatedSeries:
    """I_0 = sum_{k>=1} (1/k) sum_{p_1+...+p_k = k-1} prod_i t_{p_i}/p_i!.

    The inner sum is the x^{k-1} layer of (sum_p t_p x^p / p!)^k, extracted
    with an auxiliary grading by the power of x.
    """
    D = truncation
    k_max = (D + 1) // 2
    base: dict[int, TruncatedSeries] = {}
    for p in range(0, D):
        base[p] = TruncatedSeries.symbol(D, f"t_{p}").scale(
            Fraction(1, factorial(p))
        )
    total = TruncatedSeries.zero(D)
    power: dict[int, TruncatedSeries] = {0: TruncatedSeries.one(D)}
    for k in range(1, k_max + 1):
        new_power: dict[int, TruncatedSeries] = {}
        for d1, s1 in power.items():
            for d2, s2 in base.items():
                degree = d1 + d2
                if degree > k_max - 1:
                    continue
                piece = s1 * s2
                if piece.is_zero:
                    continue
                if degree in new_power:
                    new_power[degree] = new_power[degree] + piece
                else:
                    new_power[degree] = piece
        power = {d: s for d, s in new_power.items() if not s.is_zero}
        layer = power.get(k - 1)
        if layer is not None:
            total = total + layer.scale(Fraction(1, k))
    return total


def build_frame(truncation: int) -> ICoordinateFrame:
    """Construct the I-coordinate frame, cross-checking both I_0 routes."""
    fixed = _i0_fixed_point(truncation)
    lagrange = _i0_lagrange(truncation)
    if fixed != lagrange:
        raise VerificationError(
            "I_0 constructions disagree: fixed point vs Lagrange sum"
        )
    return ICoordinateFrame(truncation, fixed)


def invert_frame(frame: ICoordinateFrame) -> VerificationReport:
    """Verify t_k = sum_n (-1)^n I_0^n I_{n+k} / n! for every t_k in range."""
    report = VerificationReport("invert_frame")
    D = frame.truncation
    for k in range(0, D):
        total = TruncatedSeries.zero(D)
        n = 0
        while n + (n + k + 1) <= D:
            term = frame.I_power(0, n) * frame.I(n + k)
            total = total + term.scale(Fraction((-1) ** n, factorial(n)))
            n += 1
        expected = TruncatedSeries.symbol(D, f"t_{k}")
        report.record(
            total == expected,
            f"t_{k} reconstruction differs from t_{k}",
        )
    return report
