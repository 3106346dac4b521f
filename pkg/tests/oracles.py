"""Independent reference computations used only by the tests.

None of these share code paths with the package beyond plain integer
arithmetic: composition goes through ideal multiplication in Z[w], class
numbers through the analytic class number formula, group structure
through a max-order-element quotient, units through a direct scan.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

from sympy.functions.combinatorial.numbers import kronecker_symbol
from sympy.solvers.diophantine.diophantine import diop_DN


def trial_factor(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def is_prime_naive(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, math.isqrt(n) + 1))


def is_fundamental(D: int) -> bool:
    def sqfree(m):
        return all(e == 1 for _, e in trial_factor(abs(m)))

    if D % 4 == 1:
        return D != 1 and sqfree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and sqfree(m)
    return False


def fundamental_discriminants(lo: int, hi: int) -> list[int]:
    return [D for D in range(lo, hi + 1) if D not in (0, 1) and is_fundamental(D)]


# -- forms by brute force ------------------------------------------------------


def reduce_definite(a, b, c):
    """Textbook reduction by explicit S and T moves."""
    while True:
        if b > a or b <= -a:
            # translate: b -> b + 2ka into (-a, a]
            k = math.floor(Fraction(a - b, 2 * a))
            c = a * k * k + b * k + c
            b = b + 2 * a * k
        elif a > c or (a == c and b < 0):
            a, b, c = c, -b, a
        else:
            return a, b, c


def reduced_forms_bruteforce(D: int) -> list[tuple[int, int, int]]:
    """Scan every (a, b) with a <= sqrt(|D|/3); no shortcuts."""
    out = []
    N = -D
    a = 1
    while 3 * a * a <= N:
        for b in range(-a, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if math.gcd(a, b, c) == 1 and reduce_definite(a, b, c) == (a, b, c):
                out.append((a, b, c))
        a += 1
    return sorted(out)


def _hnf_2d(vectors):
    """Hermite basis {(g, 0), (t, m)} of the Z-span of 2-vectors (x, y)."""
    vecs = [list(v) for v in vectors if v != (0, 0)]
    # Euclid on the second coordinate
    while sum(1 for v in vecs if v[1] != 0) > 1:
        nz = sorted((v for v in vecs if v[1] != 0), key=lambda v: abs(v[1]))
        pivot = nz[0]
        for v in nz[1:]:
            q = v[1] // pivot[1]
            v[0] -= q * pivot[0]
            v[1] -= q * pivot[1]
    pivot = next(v for v in vecs if v[1] != 0)
    if pivot[1] < 0:
        pivot = [-pivot[0], -pivot[1]]
    g = 0
    for v in vecs:
        if v[1] == 0:
            g = math.gcd(g, v[0])
    return g, pivot[0] % g, pivot[1]


def compose_via_ideals(f, g, D):
    """Multiply the ideals [a, (-b + sqrt D)/2] of two definite forms."""
    delta = D % 2
    k = (D - delta) // 4  # w^2 = delta*w + k

    def gens(form):
        a, b, _ = form
        return [(a, 0), ((-b - delta) // 2, 1)]

    def mul(u, v):
        x1, y1 = u
        x2, y2 = v
        return (x1 * x2 + y1 * y2 * k, x1 * y2 + x2 * y1 + delta * y1 * y2)

    prods = [mul(u, v) for u in gens(f) for v in gens(g)]
    G, t, m = _hnf_2d(prods)
    a3 = G // m
    # t + m*w = m * ((-b3 - delta)/2 + w)
    b3 = -2 * (t // m) - delta
    b3 %= 2 * a3
    c3 = (b3 * b3 - D) // (4 * a3)
    return reduce_definite(a3, b3, c3)


def composition_table(elements, mul):
    idx = {e: i for i, e in enumerate(elements)}
    return [[idx[mul(x, y)] for y in elements] for x in elements]


def structure_by_quotients(table, identity: int) -> list[int]:
    """Invariant factors by repeatedly splitting off a cyclic subgroup
    generated by an element of maximal order.  Such a subgroup is a direct
    summand, so its order is the largest remaining invariant factor.
    """
    n = len(table)
    factors = []
    # cosets of the subgroup generated so far
    subgroup = {identity}
    while len(subgroup) < n:
        # order of x in G / subgroup
        best, best_x = 0, None
        for x in range(n):
            k, y = 1, x
            while y not in subgroup:
                y = table[y][x]
                k += 1
            if k > best:
                best, best_x = k, x
        factors.append(best)
        new = set()
        y = identity
        for _ in range(best):
            for s in subgroup:
                new.add(table[y][s])
            y = table[y][best_x]
        subgroup = new
    return sorted(factors)


def group_laws_hold(table, identity: int) -> bool:
    n = len(table)
    r = range(n)
    if any(table[identity][x] != x for x in r):
        return False
    if any(table[x][y] != table[y][x] for x in r for y in r):
        return False
    if any(identity not in table[x] for x in r):
        return False
    return all(table[table[x][y]][z] == table[x][table[y][z]] for x, y, z in product(r, r, r))


# -- analytic class numbers ----------------------------------------------------


def class_number_imaginary(D: int) -> int:
    w = {-3: 6, -4: 4}.get(D, 2)
    s = sum(kronecker_symbol(D, a) * a for a in range(1, -D))
    return (w * -s) // (2 * -D)


def class_number_real(D: int, log_eps: float) -> int:
    s = sum(kronecker_symbol(D, a) * math.log(math.sin(math.pi * a / D)) for a in range(1, D))
    return round(-s / (2 * log_eps))


# -- units ---------------------------------------------------------------------


def unit_by_scan(D: int, limit: int | None = None) -> tuple[int, int, int] | None:
    """Least (t, u) with t^2 - D u^2 = +-4, scanning u = 1, 2, ...

    Returns None if nothing turns up with u <= limit.
    """
    u = 1
    while limit is None or u <= limit:
        for norm in (-1, 1):
            t2 = D * u * u + 4 * norm
            if t2 > 0 and math.isqrt(t2) ** 2 == t2:
                return math.isqrt(t2), u, norm
        u += 1
    return None


def unit_by_pell_solver(D: int) -> tuple[int, int, int]:
    """Least positive solution of t^2 - D u^2 = +-4 from sympy's Pell solver."""
    best = None
    for norm in (-1, 1):
        for t, u in diop_DN(D, 4 * norm):
            t, u = abs(int(t)), abs(int(u))
            if u and (best is None or u < best[1]):
                best = (t, u, norm)
    return best
