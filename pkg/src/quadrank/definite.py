"""Positive-definite binary quadratic forms and the form class group.

Forms are kept in the canonical reduced shape |B| <= A <= C, with B >= 0
whenever |B| == A or A == C, so two forms are in the same class exactly
when their reduced representatives are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .abelian import AbelianStructure, structure_from_orders
from .arith import factorize, isqrt
from .errors import BudgetError, DomainError
from .forms import compose_coeffs

DEFAULT_DISC_CEILING = 10**8


@dataclass(frozen=True, order=True)
class DefiniteForm:
    A: int
    B: int
    C: int

    def __post_init__(self):
        if self.A <= 0 or self.disc >= 0:
            raise DomainError(f"{self.coeffs} is not positive definite")

    @property
    def disc(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    @property
    def coeffs(self) -> tuple[int, int, int]:
        return (self.A, self.B, self.C)

    def is_primitive(self) -> bool:
        return math.gcd(self.A, self.B, self.C) == 1

    def is_reduced(self) -> bool:
        A, B, C = self.coeffs
        if not (abs(B) <= A <= C):
            return False
        return B >= 0 or (abs(B) != A and A != C)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"DefiniteForm({self.A}, {self.B}, {self.C})"

    def __mul__(self, other: "DefiniteForm") -> "DefiniteForm":
        return compose(self, other)

    def __pow__(self, k: int) -> "DefiniteForm":
        return power(self, k)


def _check_disc(D: int) -> None:
    if D >= 0:
        raise DomainError(f"definite forms need D < 0, got {D}")
    if D % 4 not in (0, 1):
        raise DomainError(f"discriminant {D} is not 0 or 1 mod 4")


def principal_form(D: int) -> DefiniteForm:
    _check_disc(D)
    k = D % 2
    return DefiniteForm(1, k, (k - D) // 4)


def _reduce_coeffs(a: int, b: int, c: int) -> tuple[int, int, int]:
    if not -a < b <= a:
        r = (a - b) // (2 * a)
        b, c = b + 2 * r * a, a * r * r + b * r + c
    while a > c or (a == c and b < 0):
        s = (c + b) // (2 * c)
        a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
    return a, b, c


def reduce(f: DefiniteForm) -> DefiniteForm:
    return DefiniteForm(*_reduce_coeffs(*f.coeffs))


def is_principal(f: DefiniteForm) -> bool:
    g = reduce(f)
    return g.A == 1


def compose(f: DefiniteForm, g: DefiniteForm) -> DefiniteForm:
    D = f.disc
    if g.disc != D:
        raise DomainError(f"discriminants differ: {D} vs {g.disc}")
    return DefiniteForm(*_reduce_coeffs(*compose_coeffs(f.coeffs, g.coeffs, D)))


def inverse(f: DefiniteForm) -> DefiniteForm:
    return reduce(DefiniteForm(f.A, -f.B, f.C))


def power(f: DefiniteForm, k: int) -> DefiniteForm:
    """f composed with itself k times (k >= 0), reduced."""
    if k < 0:
        return power(inverse(f), -k)
    D = f.disc
    result = principal_form(D).coeffs
    base = _reduce_coeffs(*f.coeffs)
    while k:
        if k & 1:
            result = _reduce_coeffs(*compose_coeffs(result, base, D))
        k >>= 1
        if k:
            base = _reduce_coeffs(*compose_coeffs(base, base, D))
    return DefiniteForm(*result)


def order_of(f: DefiniteForm, multiple: int | None = None, limit: int = 10**7) -> int:
    """Order of the class of f.

    With `multiple` (any known exponent that kills f, e.g. n or h) the order
    is found by stripping prime factors; otherwise f is stepped until it
    hits the identity, at most `limit` times.
    """
    if multiple is not None:
        if not is_principal(power(f, multiple)):
            raise DomainError(f"{f} ** {multiple} is not principal")
        m = multiple
        for p, _ in factorize(multiple).factors:
            while m % p == 0 and is_principal(power(f, m // p)):
                m //= p
        return m
    D = f.disc
    g = reduce(f)
    one = principal_form(D)
    x = g
    for k in range(1, limit + 1):
        if x == one:
            return k
        x = compose(x, g)
    raise BudgetError(f"order of {f} exceeds {limit}")


def enumerate_reduced(D: int, ceiling: int = DEFAULT_DISC_CEILING) -> list[DefiniteForm]:
    """All primitive reduced forms of discriminant D, sorted by (A, B)."""
    _check_disc(D)
    if -D > ceiling:
        raise BudgetError(f"|D| = {-D} exceeds enumeration ceiling {ceiling}")
    out = []
    N = -D
    for A in range(1, isqrt(N // 3) + 1):
        for B in range(-A + 1, A + 1):
            if (B - D) % 2:
                continue
            num = B * B - D
            if num % (4 * A):
                continue
            C = num // (4 * A)
            if C < A or (C == A and B < 0):
                continue
            if math.gcd(A, B, C) != 1:
                continue
            out.append(DefiniteForm(A, B, C))
    return out


def class_number(D: int, ceiling: int = DEFAULT_DISC_CEILING) -> int:
    return len(enumerate_reduced(D, ceiling))


def class_group_structure(D: int, ceiling: int = DEFAULT_DISC_CEILING) -> AbelianStructure:
    """Invariant factors of the form class group of discriminant D.

    For non-fundamental D this is the class group of primitive forms of
    that discriminant (the ring class group of the order).
    """
    forms = enumerate_reduced(D, ceiling)
    h = len(forms)
    return structure_from_orders(order_of(f, h) for f in forms)


def span(f: DefiniteForm, g: DefiniteForm) -> AbelianStructure:
    """Structure of the subgroup generated by the classes of f and g."""
    if f.disc != g.disc:
        raise DomainError(f"discriminants differ: {f.disc} vs {g.disc}")
    elements = span_elements(f, g)
    e = math.lcm(order_of(f), order_of(g))
    return structure_from_orders(order_of(x, e) for x in elements)


def span_elements(f: DefiniteForm, g: DefiniteForm, of: int | None = None, og: int | None = None) -> set[DefiniteForm]:
    of = of or order_of(f)
    og = og or order_of(g)
    rows = []
    x = principal_form(f.disc)
    for _ in range(of):
        rows.append(x)
        x = compose(x, f)
    out = set()
    g = reduce(g)
    for x in rows:
        for _ in range(og):
            out.add(x)
            x = compose(x, g)
    return out
