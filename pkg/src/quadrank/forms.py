"""Composition of binary quadratic forms, shared by both signatures."""

from __future__ import annotations

from .arith import xgcd


def compose_coeffs(f: tuple[int, int, int], g: tuple[int, int, int], D: int) -> tuple[int, int, int]:
    """Dirichlet composition of two primitive forms of discriminant D.

    Follows Shanks' arrangement (Cohen, Algorithm 5.4.7) without the final
    reduction.  Leading coefficients may be negative (indefinite forms).
    """
    a1, b1, c1 = f
    a2, b2, c2 = g
    if abs(a1) > abs(a2):
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    d, y1, _ = xgcd(a2, a1)
    d1, x2, y2 = xgcd(s, d)
    y2 = -y2
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (b3 * b3 - D) // (4 * a3)
    return a3, b3, c3


def square_coeffs(f: tuple[int, int, int], D: int) -> tuple[int, int, int]:
    return compose_coeffs(f, f, D)
