"""Integer arithmetic: square roots, primality, budgeted factorization.

Everything here works on Python ints and is exact.  Factorization is
deterministic for a given budget so that search output is reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import BudgetError, DomainError

TRIAL_LIMIT = 10_000
DEFAULT_FACTOR_BUDGET = 200_000

# Miller-Rabin with the first 13 primes as bases is deterministic for
# n < 3317044064679887385961981 (Sorenson & Webster 2015).
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
# each extra random round has error <= 1/4, 40 rounds give < 2^-80
MR_EXTRA_ROUNDS = 40


def _sieve(limit: int) -> list[int]:
    bs = bytearray(b"\x01") * (limit + 1)
    bs[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if bs[p]:
            bs[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, v in enumerate(bs) if v]


SMALL_PRIMES = _sieve(TRIAL_LIMIT)


def isqrt(x: int) -> int:
    if x < 0:
        raise DomainError(f"isqrt of negative number {x}")
    return math.isqrt(x)


def is_square(x: int) -> bool:
    return x >= 0 and math.isqrt(x) ** 2 == x


def iroot(x: int, k: int) -> int:
    """Largest r >= 0 with r**k <= x."""
    if x < 0:
        raise DomainError("iroot of negative number")
    if x < 2 or k == 1:
        return x
    r = 1 << -(-x.bit_length() // k)  # over-estimate, then Newton down
    while True:
        s = ((k - 1) * r + x // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def perfect_power(x: int) -> tuple[int, int] | None:
    """Return (root, k) with root**k == x and k >= 2 maximal, or None."""
    if x < 4:
        return None
    best = None
    for k in range(2, x.bit_length() + 1):
        if k > 2 and k not in _PRIME_SET:
            continue
        r = iroot(x, k)
        if r < 2:
            break
        if r**k == x:
            best = (r, k)
    if best is None:
        return None
    # collapse nested powers such as (r**2)**3
    r, k = best
    inner = perfect_power(r)
    if inner is not None:
        return inner[0], inner[1] * k
    return best


_PRIME_SET = frozenset(SMALL_PRIMES)


def _miller_rabin(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(x: int) -> bool:
    """Miller-Rabin test.

    Exact for x < 3.3e24 (fixed base set); beyond that, 40 further rounds
    with bases drawn from a generator seeded by x bound the error by 2^-80.
    """
    if x < 2:
        return False
    if x <= TRIAL_LIMIT:
        return x in _PRIME_SET
    for p in SMALL_PRIMES[:50]:
        if x % p == 0:
            return False
    d, s = x - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_miller_rabin(x, d, s, a) for a in MR_BASES):
        return False
    if x < MR_DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(x)
    return all(_miller_rabin(x, d, s, rng.randrange(2, x - 1)) for _ in range(MR_EXTRA_ROUNDS))


@dataclass(frozen=True)
class Factorization:
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1
    status: str = "complete"

    def value(self) -> int:
        v = self.cofactor
        for p, e in self.factors:
            v *= p**e
        return v

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __str__(self) -> str:
        lines = [f"{p}^{e}" for p, e in self.factors]
        if self.cofactor != 1:
            lines.append(f"{self.cofactor}^1 (unfactored)")
        lines.append(f"status: {self.status}")
        return "\n".join(lines)


@dataclass
class _Budget:
    remaining: int


def _pollard_brent(n: int, c: int, budget: _Budget) -> int | None:
    """One Brent-rho attempt with polynomial x^2 + c; returns a factor or None."""
    y, m, g, r, q = 2, 128, 1, 1, 1
    x = ys = 2
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            steps = min(m, r - k)
            if budget.remaining < steps:
                return None
            budget.remaining -= steps
            for _ in range(steps):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        # batch overshot; walk back one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split(n: int, budget: _Budget) -> int | None:
    for c in range(1, 64):
        if budget.remaining <= 0:
            return None
        g = _pollard_brent(n, c, budget)
        if g is not None:
            return g
    return None


def factorize(x: int, budget: int = DEFAULT_FACTOR_BUDGET) -> Factorization:
    """Factor x by trial division, perfect-power detection, Miller-Rabin and
    Brent's rho.  `budget` caps the total number of rho iterations; whatever
    is left unsplit ends up in `cofactor` with status "partial".
    """
    if x < 1:
        raise DomainError(f"factorize needs a positive integer, got {x}")
    counts: dict[int, int] = {}
    n = x
    for p in SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            counts[p] = e
    if 1 < n <= TRIAL_LIMIT**2:
        counts[n] = counts.get(n, 0) + 1
        n = 1

    state = _Budget(budget)
    leftover = 1
    stack = [(n, 1)] if n > 1 else []
    while stack:
        m, mult = stack.pop()
        if is_probable_prime(m):
            counts[m] = counts.get(m, 0) + mult
            continue
        pp = perfect_power(m)
        if pp is not None:
            stack.append((pp[0], mult * pp[1]))
            continue
        g = _split(m, state)
        if g is None:
            leftover *= m**mult
            continue
        stack.append((g, mult))
        stack.append((m // g, mult))

    factors = tuple(sorted(counts.items()))
    return Factorization(factors, leftover, "complete" if leftover == 1 else "partial")


def squarefree_status(x: int, budget: int = DEFAULT_FACTOR_BUDGET) -> str:
    """'yes', 'no' or 'unknown' (budget ran out on a cofactor)."""
    if x < 1:
        raise DomainError(f"squarefree_status needs a positive integer, got {x}")
    fac = factorize(x, budget)
    if any(e > 1 for _, e in fac.factors):
        return "no"
    if fac.status == "complete":
        return "yes"
    c = fac.cofactor
    if perfect_power(c) is not None or any(c % p == 0 for p in fac.primes):
        return "no"
    return "unknown"


def largest_prime_divisor(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> int:
    if n < 2:
        raise DomainError(f"largest_prime_divisor needs n >= 2, got {n}")
    fac = factorize(n, budget)
    if fac.status != "complete":
        raise BudgetError(f"could not factor {n} within budget {budget}")
    return fac.factors[-1][0]


def prime_divisors(n: int) -> list[int]:
    return factorize(n, DEFAULT_FACTOR_BUDGET).primes


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with u*a + v*b == g == gcd(a, b) >= 0."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if a < 0:
        return -a, -u0, -v0
    return a, u0, v0


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return squarefree_status(abs(D)) == "yes"
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and squarefree_status(abs(m)) == "yes"
    return False
