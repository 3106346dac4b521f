"""Finite abelian groups described by invariant factors."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from math import prod

from .arith import factorize
from .errors import DomainError


@dataclass(frozen=True)
class AbelianStructure:
    """Z/d1 x Z/d2 x ... x Z/dk with d1 | d2 | ... | dk, every di >= 2."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if any(d < 2 for d in fs):
            raise DomainError(f"invariant factors must be >= 2: {fs}")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise DomainError(f"invariant factors do not form a divisor chain: {fs}")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def n_rank(self, n: int) -> int:
        return n_rank(self, n)

    def to_list(self) -> list[int]:
        return list(self.invariant_factors)

    def __iter__(self):
        return iter(self.invariant_factors)

    def __len__(self):
        return len(self.invariant_factors)


def n_rank(G: AbelianStructure, n: int) -> int:
    """Largest r such that (Z/n)^r embeds in G."""
    if n < 2:
        raise DomainError(f"n-rank needs n >= 2, got {n}")
    return sum(1 for d in G.invariant_factors if d % n == 0)


def from_prime_powers(exponents: dict[int, list[int]]) -> AbelianStructure:
    """Assemble invariant factors from the cyclic p-power decomposition.

    `exponents` maps p to the list of exponents e with Z/p^e a summand.
    """
    cols: list[list[int]] = []
    for p, es in exponents.items():
        for i, e in enumerate(sorted(es, reverse=True)):
            if len(cols) <= i:
                cols.append([])
            cols[i].append(p**e)
    return AbelianStructure(tuple(sorted(prod(c) for c in cols)))


def structure_from_orders(orders: Iterable[int]) -> AbelianStructure:
    """Recover the structure of a finite abelian group from the multiset of
    its element orders.

    For each prime p, the number of x with v_p(ord x) <= k equals
    |G[p^k]| * |G_p'|; the jumps of |G[p^k]| give the number of cyclic
    p-power factors of exponent >= k.
    """
    orders = list(orders)
    h = len(orders)
    if h == 0:
        raise DomainError("empty group")
    exps: dict[int, list[int]] = {}
    for p, e in factorize(h).factors:
        vals = []
        for o in orders:
            v = 0
            while o % p == 0:
                o //= p
                v += 1
            vals.append(v)
        other = h // p**e
        torsion = [sum(1 for v in vals if v <= k) // other for k in range(e + 1)]
        ranks = []
        for k in range(1, e + 1):
            ratio = torsion[k] // torsion[k - 1]
            r = 0
            while ratio > 1:
                if ratio % p:
                    raise DomainError("element orders are not those of an abelian group")
                ratio //= p
                r += 1
            ranks.append(r)
        # ranks[k-1] = number of cyclic factors of exponent >= k
        ranks.append(0)
        es = []
        for k in range(1, e + 1):
            es += [k] * (ranks[k - 1] - ranks[k])
        if sum(es) != e:
            raise DomainError("element orders are not those of an abelian group")
        exps[p] = es
    return from_prime_powers(exps)
