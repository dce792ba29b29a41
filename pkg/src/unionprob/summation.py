"""Compensated floating-point summation.

The alternating series handled by this package can have individual terms
thousands of times larger than the final sum (at 100 events with mean
probability 0.1 the largest term is ~1.9e3 while the sum is ~0.99997), so
naive accumulation loses several digits of the answer. The accumulator
below keeps an error term alongside the running total, which recovers the
sum to within one final rounding for inputs of this kind.
"""

from __future__ import annotations

__all__ = ["NeumaierSum"]


class NeumaierSum:
    """Running compensated sum (the Kahan-Babuska / Neumaier variant).

    Unlike plain Kahan summation this stays accurate when an incoming
    value is larger in magnitude than the running total, which is the
    normal situation for the leading terms of an alternating series.
    """

    __slots__ = ("_total", "_compensation")

    def __init__(self) -> None:
        self._total = 0.0
        self._compensation = 0.0

    def add(self, value: float) -> None:
        new_total = self._total + value
        # The branch picks whichever operand survived the rounding so the
        # lost low-order bits can be recovered exactly.
        if abs(self._total) >= abs(value):
            self._compensation += (self._total - new_total) + value
        else:
            self._compensation += (value - new_total) + self._total
        self._total = new_total

    @property
    def value(self) -> float:
        """Best available estimate of the sum of everything added so far."""
        return self._total + self._compensation
