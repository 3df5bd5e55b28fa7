"""Towers of exponentials: E(m) = 2^2^...^2 (m twos), E(0) = 1.

Values whose bit length fits under ``cap`` are kept as exact ints.  Larger
ones are stored symbolically as ``exp2^height(top)``, normalized so that
``top`` is exact and ``2**top`` would not fit; with that normalization the
order on values reduces to comparing (kind, height, top).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering

DEFAULT_CAP = 1 << 20


@total_ordering
@dataclass(frozen=True)
class TowerValue:
    exact: int | None = None
    height: int = 0
    top: int = 0
    cap: int = DEFAULT_CAP

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def _key(self):
        if self.exact is not None:
            return (0, 0, self.exact)
        return (1, self.height, self.top)

    def __eq__(self, other):
        if not isinstance(other, TowerValue):
            return NotImplemented
        _same_cap(self, other)
        return self._key() == other._key()

    def __lt__(self, other):
        if not isinstance(other, TowerValue):
            return NotImplemented
        _same_cap(self, other)
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        if self.exact is not None:
            return str(self.exact)
        return f"2↑↑{self.height} (top={self.top})"

    def bit_length(self) -> int | None:
        return self.exact.bit_length() if self.exact is not None else None


def _same_cap(a: TowerValue, b: TowerValue) -> None:
    if a.cap != b.cap:
        raise ValueError(f"cannot compare tower values with different caps ({a.cap}, {b.cap})")


def make(value: int, cap: int = DEFAULT_CAP) -> TowerValue:
    if value < 0:
        raise ValueError("tower values are non-negative")
    if value.bit_length() > cap:
        raise OverflowError(f"{value.bit_length()}-bit value exceeds cap of {cap} bits")
    return TowerValue(exact=value, cap=cap)


def exp2(a: TowerValue) -> TowerValue:
    """2**a, going symbolic once the result would exceed the cap."""
    if a.exact is not None:
        if a.exact + 1 <= a.cap:
            return TowerValue(exact=1 << a.exact, cap=a.cap)
        return TowerValue(height=1, top=a.exact, cap=a.cap)
    return TowerValue(height=a.height + 1, top=a.top, cap=a.cap)


def E(m: int, cap: int = DEFAULT_CAP) -> TowerValue:
    if m < 0:
        raise ValueError("m must be non-negative")
    v = TowerValue(exact=1, cap=cap)
    for _ in range(m):
        v = exp2(v)
    return v


def compare(a: TowerValue, b: TowerValue) -> int:
    """-1, 0 or 1."""
    if a == b:
        return 0
    return -1 if a < b else 1


def floor_log2(a: TowerValue) -> TowerValue:
    if a.exact is not None:
        if a.exact == 0:
            raise ValueError("log2 of 0 is undefined")
        return TowerValue(exact=a.exact.bit_length() - 1, cap=a.cap)
    if a.height == 1:
        return TowerValue(exact=a.top, cap=a.cap)
    return TowerValue(height=a.height - 1, top=a.top, cap=a.cap)


def exp_m(m: int, x: float) -> float:
    """Natural-exponential tower exp(exp(...exp(x))); inf on overflow."""
    for _ in range(m):
        try:
            x = math.exp(x)
        except OverflowError:
            return math.inf
    return x
