"""Indefinite binary quadratic forms, narrow class groups and units.

A proper equivalence class of indefinite forms contains finitely many
reduced forms, and the reduction operator `rho_step` permutes them in a
single cycle.  Classes are therefore identified by the least member of
their cycle.  All arithmetic is on integers; sqrt(D) only enters through
isqrt and D is never a square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .abelian import AbelianStructure, structure_from_orders
from .arith import factorize, isqrt, is_square
from .errors import BudgetError, DomainError
from .forms import compose_coeffs

DEFAULT_DISC_CEILING = 10**8
DEFAULT_CYCLE_LIMIT = 10**6


@dataclass(frozen=True, order=True)
class IndefiniteForm:
    A: int
    B: int
    C: int

    def __post_init__(self):
        if self.A == 0:
            raise DomainError(f"{self.coeffs}: leading coefficient must be nonzero")
        D = self.disc
        if D <= 0 or is_square(D):
            raise DomainError(f"{self.coeffs}: discriminant {D} must be positive and non-square")

    @property
    def disc(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    @property
    def coeffs(self) -> tuple[int, int, int]:
        return (self.A, self.B, self.C)

    def is_primitive(self) -> bool:
        return math.gcd(self.A, self.B, self.C) == 1

    def is_reduced(self) -> bool:
        return _is_reduced(self.A, self.B, isqrt(self.disc))

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"IndefiniteForm({self.A}, {self.B}, {self.C})"


@dataclass(frozen=True)
class Cycle:
    forms: tuple[IndefiniteForm, ...]

    @property
    def disc(self) -> int:
        return self.forms[0].disc

    def __len__(self):
        return len(self.forms)

    def __contains__(self, f):
        return f in self.forms


@dataclass(frozen=True)
class UnitInfo:
    """Fundamental unit (t + u*sqrt(D))/2 of the order of discriminant D."""

    t: int
    u: int
    norm: int
    period: int


def _check_disc(D: int) -> None:
    if D <= 0 or is_square(D):
        raise DomainError(f"indefinite discriminant must be positive and non-square, got {D}")
    if D % 4 not in (0, 1):
        raise DomainError(f"discriminant {D} is not 0 or 1 mod 4")


def _is_reduced(A: int, B: int, s: int) -> bool:
    # 0 < B < sqrt(D) and sqrt(D) - B < 2|A| < sqrt(D) + B, with s = isqrt(D)
    a2 = 2 * abs(A)
    return 0 < B <= s and a2 + B > s and a2 - B <= s


def _rho(a: int, b: int, c: int, D: int, s: int) -> tuple[int, int, int]:
    m = 2 * abs(c)
    if abs(c) <= s:
        lo = s - m + 1  # r in (sqrt(D) - 2|c|, sqrt(D))
    else:
        lo = -abs(c) + 1  # r in (-|c|, |c|]
    r = lo + (-b - lo) % m
    return c, r, (r * r - D) // (4 * c)


def principal_form(D: int) -> IndefiniteForm:
    _check_disc(D)
    k = D % 2
    return IndefiniteForm(1, k, (k - D) // 4)


def rho_step(f: IndefiniteForm) -> IndefiniteForm:
    D = f.disc
    return IndefiniteForm(*_rho(*f.coeffs, D, isqrt(D)))


def _reduce_coeffs(a: int, b: int, c: int, D: int, s: int) -> tuple[int, int, int]:
    # each step at least halves |a| until it drops below sqrt(D), then a
    # couple more steps land on the cycle
    limit = 2 * max(abs(a), abs(c)).bit_length() + 8
    for _ in range(limit):
        if _is_reduced(a, b, s):
            return a, b, c
        a, b, c = _rho(a, b, c, D, s)
    if _is_reduced(a, b, s):
        return a, b, c
    raise AssertionError(f"reduction of {(a, b, c)} did not terminate in {limit} steps")


def reduce_any(f: IndefiniteForm) -> IndefiniteForm:
    """Some reduced form equivalent to f (not canonical)."""
    D = f.disc
    return IndefiniteForm(*_reduce_coeffs(*f.coeffs, D, isqrt(D)))


def _cycle_coeffs(a: int, b: int, c: int, D: int, s: int, limit: int = DEFAULT_CYCLE_LIMIT) -> list[tuple[int, int, int]]:
    start = _reduce_coeffs(a, b, c, D, s)
    out = [start]
    x = _rho(*start, D, s)
    while x != start:
        out.append(x)
        if len(out) > limit:
            raise BudgetError(f"cycle of discriminant {D} is longer than {limit}")
        x = _rho(*x, D, s)
    return out


def cycle_of(f: IndefiniteForm) -> Cycle:
    D = f.disc
    cyc = _cycle_coeffs(*f.coeffs, D, isqrt(D))
    i = cyc.index(min(cyc))
    cyc = cyc[i:] + cyc[:i]
    return Cycle(tuple(IndefiniteForm(*x) for x in cyc))


def canonical(f: IndefiniteForm) -> IndefiniteForm:
    """Least member of the cycle of f; equal iff properly equivalent."""
    D = f.disc
    return IndefiniteForm(*min(_cycle_coeffs(*f.coeffs, D, isqrt(D))))


def equivalent(f: IndefiniteForm, g: IndefiniteForm) -> bool:
    if f.disc != g.disc:
        raise DomainError(f"discriminants differ: {f.disc} vs {g.disc}")
    return canonical(f) == canonical(g)


@lru_cache(maxsize=64)
def _principal_cycle(D: int) -> frozenset:
    s = isqrt(D)
    return frozenset(_cycle_coeffs(*principal_form(D).coeffs, D, s))


def is_principal(f: IndefiniteForm) -> bool:
    """True when f lies in the narrow principal class."""
    D = f.disc
    return _reduce_coeffs(*f.coeffs, D, isqrt(D)) in _principal_cycle(D)


def compose(f: IndefiniteForm, g: IndefiniteForm) -> IndefiniteForm:
    """Composition followed by reduction to some reduced form of the class."""
    D = f.disc
    if g.disc != D:
        raise DomainError(f"discriminants differ: {D} vs {g.disc}")
    s = isqrt(D)
    return IndefiniteForm(*_reduce_coeffs(*compose_coeffs(f.coeffs, g.coeffs, D), D, s))


def inverse(f: IndefiniteForm) -> IndefiniteForm:
    return IndefiniteForm(f.A, -f.B, f.C)


def power(f: IndefiniteForm, k: int) -> IndefiniteForm:
    if k < 0:
        return power(inverse(f), -k)
    D = f.disc
    s = isqrt(D)
    result = _reduce_coeffs(*principal_form(D).coeffs, D, s)
    base = _reduce_coeffs(*f.coeffs, D, s)
    while k:
        if k & 1:
            result = _reduce_coeffs(*compose_coeffs(result, base, D), D, s)
        k >>= 1
        if k:
            base = _reduce_coeffs(*compose_coeffs(base, base, D), D, s)
    return IndefiniteForm(*result)


def order_of(f: IndefiniteForm, multiple: int | None = None, limit: int = 10**6) -> int:
    """Order of the narrow class of f (see definite.order_of)."""
    if multiple is not None:
        if not is_principal(power(f, multiple)):
            raise DomainError(f"{f} ** {multiple} is not narrowly principal")
        m = multiple
        for p, _ in factorize(multiple).factors:
            while m % p == 0 and is_principal(power(f, m // p)):
                m //= p
        return m
    x = f
    for k in range(1, limit + 1):
        if is_principal(x):
            return k
        x = compose(x, f)
    raise BudgetError(f"order of {f} exceeds {limit}")


def reduced_forms(D: int, ceiling: int = DEFAULT_DISC_CEILING) -> list[IndefiniteForm]:
    """All primitive reduced forms of discriminant D, sorted."""
    _check_disc(D)
    if D > ceiling:
        raise BudgetError(f"D = {D} exceeds enumeration ceiling {ceiling}")
    s = isqrt(D)
    out = []
    for B in range(1, s + 1):
        if (B - D) % 2:
            continue
        m = (D - B * B) // 4  # = -A*C > 0
        # sqrt(D) - B < 2|A| < sqrt(D) + B
        for a in range((s - B) // 2 + 1, (s + B) // 2 + 1):
            if m % a:
                continue
            for A in (a, -a):
                C = -m // A
                if _is_reduced(A, B, s) and math.gcd(A, B, C) == 1:
                    out.append(IndefiniteForm(A, B, C))
    return sorted(out)


def cycles(D: int, ceiling: int = DEFAULT_DISC_CEILING) -> list[Cycle]:
    """Partition of the reduced forms of discriminant D into rho-cycles."""
    s = isqrt(D)
    remaining = {f.coeffs for f in reduced_forms(D, ceiling)}
    out = []
    while remaining:
        start = min(remaining)
        cyc = [start]
        x = _rho(*start, D, s)
        while x != start:
            cyc.append(x)
            x = _rho(*x, D, s)
        remaining.difference_update(cyc)
        out.append(Cycle(tuple(IndefiniteForm(*x) for x in cyc)))
    return out


@dataclass
class NarrowClassGroup:
    """Cl+(D) with classes labelled by the least form of their cycle."""

    D: int
    reps: list[IndefiniteForm]
    index: dict[tuple[int, int, int], int]

    @classmethod
    def build(cls, D: int, ceiling: int = DEFAULT_DISC_CEILING) -> "NarrowClassGroup":
        cyc = cycles(D, ceiling)
        reps = [c.forms[0] for c in cyc]
        index = {f.coeffs: i for i, c in enumerate(cyc) for f in c.forms}
        return cls(D, reps, index)

    @property
    def h_plus(self) -> int:
        return len(self.reps)

    def label(self, f: IndefiniteForm) -> int:
        s = isqrt(self.D)
        return self.index[_reduce_coeffs(*f.coeffs, self.D, s)]

    def mul(self, i: int, j: int) -> int:
        return self.label(compose(self.reps[i], self.reps[j]))

    def identity(self) -> int:
        return self.label(principal_form(self.D))

    def order(self, i: int) -> int:
        one = self.identity()
        x, k = i, 1
        while x != one:
            x = self.mul(x, i)
            k += 1
        return k

    def structure(self) -> AbelianStructure:
        return structure_from_orders(self.order(i) for i in range(self.h_plus))


def narrow_class_group(D: int, ceiling: int = DEFAULT_DISC_CEILING) -> tuple[int, AbelianStructure]:
    G = NarrowClassGroup.build(D, ceiling)
    return G.h_plus, G.structure()


def fundamental_unit(D: int, limit: int = DEFAULT_CYCLE_LIMIT) -> UnitInfo:
    """Least unit (t + u sqrt(D))/2 > 1, via the continued fraction of
    (b0 + sqrt(D))/2 with b0 = D mod 2, in exact (P + sqrt(D))/Q state."""
    _check_disc(D)
    s = isqrt(D)
    P, Q = D % 2, 2
    # convergent recurrences: G_i^2 - D*B_i^2 = (-1)^(i+1) * Q_{i+1} * Q_0
    G_prev2, G_prev = -P, Q
    B_prev2, B_prev = 1, 0
    i = 0
    while True:
        a = (P + s) // Q
        G = a * G_prev + G_prev2
        Bc = a * B_prev + B_prev2
        P = a * Q - P
        Q = (D - P * P) // Q
        if Q == 2:
            norm = 1 if i % 2 else -1
            return UnitInfo(G, Bc, norm, i + 1)
        G_prev2, G_prev = G_prev, G
        B_prev2, B_prev = B_prev, Bc
        i += 1
        if i > limit:
            raise BudgetError(f"continued fraction period of {D} exceeds {limit}")


def negated_principal_form(D: int) -> IndefiniteForm:
    f = principal_form(D)
    return IndefiniteForm(-f.A, -f.B, -f.C)


def wide_class_structure(D: int, ceiling: int = DEFAULT_DISC_CEILING) -> AbelianStructure:
    """Class group in the wide sense: Cl+(D) modulo the class of -x^2 - ...,
    which is trivial exactly when the fundamental unit has norm -1."""
    G = NarrowClassGroup.build(D, ceiling)
    j = G.label(negated_principal_form(D))
    one = G.identity()
    if j == one:
        return G.structure()
    cosets = {}
    for i in range(G.h_plus):
        key = min(i, G.mul(i, j))
        cosets[key] = None
    orders = []
    for i in cosets:
        x, k = i, 1
        while x not in (one, j):
            x = G.mul(x, i)
            k += 1
        orders.append(k)
    return structure_from_orders(orders)
