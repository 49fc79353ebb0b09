"""Exact integer sequences: Catalan, Motzkin, and top meandric-system counts."""

from __future__ import annotations

import threading
from fractions import Fraction

__all__ = ["catalan", "motzkin", "meandric_top_counts"]

_lock = threading.Lock()
_catalan = [1]
_motzkin = [1, 1]


def catalan(n: int) -> int:
    """C_n from the convolution C_{j+1} = sum_l C_{j-l} C_l, memoized.

    >>> [catalan(k) for k in range(6)]
    [1, 1, 2, 5, 14, 42]
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    with _lock:
        while len(_catalan) <= n:
            j = len(_catalan) - 1
            _catalan.append(sum(_catalan[j - l] * _catalan[l] for l in range(j + 1)))
        return _catalan[n]


def motzkin(n: int) -> int:
    """Mot(n) from m_n = m_{n-1} + sum_{p=0}^{n-2} m_p m_{n-2-p}, m_0 = m_1 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    with _lock:
        while len(_motzkin) <= n:
            k = len(_motzkin)
            _motzkin.append(
                _motzkin[k - 1] + sum(_motzkin[p] * _motzkin[k - 2 - p] for p in range(k - 1))
            )
        return _motzkin[n]


def _exact(value: Fraction) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"closed form gave a non-integer {value}")
    return value.numerator


def meandric_top_counts(n: int) -> tuple[int, int, int | None]:
    """Closed forms for (M_n^(n), M_n^(n-1), M_n^(n-2)).

    The third entry is ``None`` for n < 3.
    """
    if n < 1:
        raise ValueError("n must be positive")
    c = catalan
    top = c(n)
    second = n * (c(n + 1) - 2 * c(n))
    third = None
    if n >= 3:
        bracket = (
            c(n + 3)
            + Fraction(3 * n - 35, 6) * c(n + 2)
            - Fraction(6 * n - 25, 3) * c(n + 1)
            + 2 * (n - 1) * c(n)
        )
        third = _exact(n * bracket)
    return top, second, third
