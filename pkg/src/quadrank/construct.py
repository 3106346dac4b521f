"""Parameterized discriminants and the hypothesis checks attached to them.

For positive integers a, b, c and n >= 2 put S = a^(n-1) + a^(n-2) b + ... + b^(n-1),
y1 = ac, y2 = bc, x1 = S + (a - b) c^n, x2 = S + (b - a) c^n.  Then

    imaginary:  d = 2 (a^n + b^n) c^n - S^2 - (a - b)^2 c^(2n),  x_i^2 - 4 y_i^n = -d
    real:       D = S^2 + (a - b)^2 c^(2n) - 2 (a^n + b^n) c^n,  x_i^2 - 4 y_i^n = D

so (x_i + sqrt(-d))/2 has norm y_i^n, which is where the n-torsion classes
come from.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import gcd

from .arith import DEFAULT_FACTOR_BUDGET, is_probable_prime, largest_prime_divisor, squarefree_status
from .errors import DomainError

IMAGINARY = "imaginary"
REAL = "real"

STRICT = "strict"
RELAXED_PRIME = "relaxed_prime"
COROLLARY = "corollary"
PROOF_BOUND = "proof_bound"
ANY = "any"
POLICIES = (STRICT, RELAXED_PRIME, COROLLARY, PROOF_BOUND, ANY)

# never admissible: -3 has extra units and -1 is not a discriminant
EXCLUDED_D = (1, 3)


@dataclass(frozen=True)
class Construction:
    mode: str
    a: int
    b: int
    c: int
    n: int
    S: int
    disc_val: int
    x1: int
    y1: int
    x2: int
    y2: int

    @property
    def form_disc(self) -> int:
        """Discriminant of the attached forms: -d or D."""
        return -self.disc_val if self.mode == IMAGINARY else self.disc_val

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class HypothesisReport:
    positive: bool
    squarefree: str
    ell: int
    bound_required: int
    bound_ok: bool
    policy: str
    distinct_ab: bool
    n_mod4_ok: bool | None
    admissible: bool
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        d = asdict(self)
        d["notes"] = list(self.notes)
        return d


def power_sum(a: int, b: int, n: int) -> int:
    if min(a, b, n) < 1:
        raise DomainError("power_sum needs a, b, n >= 1")
    if a == b:
        return n * a ** (n - 1)
    return (a**n - b**n) // (a - b)


def _validate(a: int, b: int, c: int, n: int) -> None:
    if min(a, b, c) < 1:
        raise DomainError(f"a, b, c must be positive, got {(a, b, c)}")
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")


def _build(mode: str, a: int, b: int, c: int, n: int) -> Construction:
    _validate(a, b, c, n)
    S = power_sum(a, b, n)
    cn = c**n
    x1 = S + (a - b) * cn
    x2 = S + (b - a) * cn
    y1, y2 = a * c, b * c
    core = 2 * (a**n + b**n) * cn - S * S - (a - b) ** 2 * cn * cn
    disc_val = core if mode == IMAGINARY else -core
    return Construction(mode, a, b, c, n, S, disc_val, x1, y1, x2, y2)


def build_imaginary(a: int, b: int, c: int, n: int) -> Construction:
    return _build(IMAGINARY, a, b, c, n)


def build_real(a: int, b: int, c: int, n: int) -> Construction:
    return _build(REAL, a, b, c, n)


def build_corollary(c: int, n: int) -> Construction:
    """a = b = 1, giving d = 4 c^n - n^2."""
    return build_imaginary(1, 1, c, n)


def build(mode: str, a: int, b: int, c: int, n: int) -> Construction:
    if mode not in (IMAGINARY, REAL):
        raise DomainError(f"unknown mode {mode!r}")
    return _build(mode, a, b, c, n)


def check_policy(mode: str, policy: str, n: int | None = None, a: int | None = None, b: int | None = None) -> None:
    if policy not in POLICIES:
        raise DomainError(f"unknown policy {policy!r}")
    if mode == REAL and policy not in (STRICT, ANY):
        raise DomainError(f"policy {policy!r} is not available in real mode")
    if policy == RELAXED_PRIME and n is not None and not is_probable_prime(n):
        raise DomainError(f"relaxed_prime policy needs prime n, got {n}")
    if policy == COROLLARY and a is not None and (a, b) != (1, 1):
        raise DomainError("corollary policy needs a = b = 1")


def required_bound(cons: Construction, policy: str, ell: int) -> int:
    """Least value of the discriminant that satisfies the size hypothesis."""
    a, b, c = cons.a, cons.b, cons.c
    m = a * b * c * c
    if cons.mode == REAL:
        return 16 * m ** (2 * ell)
    if policy == RELAXED_PRIME:
        return 4 * m + 1  # d > 4abc^2
    if policy == COROLLARY:
        return c**ell + 1  # 4c^n - n^2 > c^ell
    if policy == PROOF_BOUND:
        return (4 * m) ** ell
    return 4 * m**ell  # strict and any: d >= 4 (abc^2)^ell


def check_hypotheses(cons: Construction, policy: str = STRICT, budget: int = DEFAULT_FACTOR_BUDGET) -> HypothesisReport:
    """Evaluate every hypothesis of the relevant theorem for `cons`.

    `any` reports against the strict bound; it differs from `strict` only in
    which instances a search goes on to verify.
    """
    check_policy(cons.mode, policy, cons.n, cons.a, cons.b)
    v = cons.disc_val
    positive = v > 0
    sf = squarefree_status(v, budget) if positive else "no"
    ell = largest_prime_divisor(cons.n)
    bound = required_bound(cons, policy, ell)
    bound_ok = v >= bound
    distinct_ab = cons.a != cons.b
    notes = []
    if cons.mode == REAL:
        n_mod4_ok = cons.n % 4 == 0
        pairwise = len({cons.a, cons.b, cons.c}) == 3
        side = n_mod4_ok and pairwise
        if not pairwise:
            notes.append("a, b, c not pairwise distinct")
        if not n_mod4_ok:
            notes.append("n not divisible by 4")
    else:
        n_mod4_ok = None
        side = distinct_ab if policy != COROLLARY else True
        if v in EXCLUDED_D:
            side = False
            notes.append(f"d = {v} excluded (extra units)")
        if not distinct_ab and policy != COROLLARY:
            notes.append("a = b: rank-2 theorem does not apply")
    if not positive:
        notes.append("discriminant not positive")
    admissible = positive and sf == "yes" and bound_ok and side
    return HypothesisReport(positive, sf, ell, bound, bound_ok, policy, distinct_ab, n_mod4_ok, admissible, tuple(notes))


def coprime_parts(cons: Construction) -> bool:
    return gcd(cons.x1, cons.y1) == 1 and gcd(cons.x2, cons.y2) == 1
