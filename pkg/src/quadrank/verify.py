"""Instance-level check of the n-rank >= 2 claim.

The ideal of norm y above (x + sqrt(disc))/2 corresponds to the form
(y, x, y^(n-1)), whose n-th power is principal.  Two such forms with
classes of exact order n spanning a subgroup of order n^2 certify that the
class group has n-rank at least 2 for that instance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from . import definite, indefinite
from .abelian import AbelianStructure, structure_from_orders
from .arith import DEFAULT_FACTOR_BUDGET, factorize
from .construct import COROLLARY, IMAGINARY, REAL, STRICT, Construction, HypothesisReport, check_hypotheses
from .errors import BudgetError, DomainError

DEFAULT_GROUP_CEILING = 10**8

RANK2_CONFIRMED = "RANK2_CONFIRMED"
RANK1_CONFIRMED = "RANK1_CONFIRMED"
ORDER_DEFECT = "ORDER_DEFECT"
SPAN_DEFECT = "SPAN_DEFECT"
INADMISSIBLE = "INADMISSIBLE"
UNKNOWN_SQUAREFREE = "UNKNOWN_SQUAREFREE"
CODES = (RANK2_CONFIRMED, RANK1_CONFIRMED, ORDER_DEFECT, SPAN_DEFECT, INADMISSIBLE, UNKNOWN_SQUAREFREE)

COUNTEREXAMPLE = "THEOREM_COUNTEREXAMPLE"


@dataclass(frozen=True)
class Verdict:
    code: str
    hypothesis: HypothesisReport
    ord_f1: int | None = None
    ord_f2: int | None = None
    span: AbelianStructure | None = None
    full_group: AbelianStructure | None = None
    class_number: int | None = None
    wide: dict | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def counterexample(self) -> bool:
        return any(note.startswith(COUNTEREXAMPLE) for note in self.notes)

    def as_dict(self) -> dict:
        return {
            "code": self.code,
            "ord_f1": self.ord_f1,
            "ord_f2": self.ord_f2,
            "span": None if self.span is None else self.span.to_list(),
            "full_group": None if self.full_group is None else self.full_group.to_list(),
            "h": self.class_number,
            "wide": self.wide,
            "hypothesis": self.hypothesis.as_dict(),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), separators=(",", ":"))


def forms_from_construction(cons: Construction):
    """The forms (y1, x1, y1^(n-1)) and (y2, x2, y2^(n-1))."""
    D = cons.form_disc
    if cons.disc_val <= 0:
        raise DomainError(f"discriminant value {cons.disc_val} is not positive")
    if D % 4 not in (0, 1):
        raise DomainError(f"form discriminant {D} is not 0 or 1 mod 4")
    if math.gcd(cons.x1, cons.y1) != 1 or math.gcd(cons.x2, cons.y2) != 1:
        raise DomainError("x_i and y_i are not coprime; discriminant cannot be square-free")
    cls = definite.DefiniteForm if cons.mode == IMAGINARY else indefinite.IndefiniteForm
    out = []
    for x, y in ((cons.x1, cons.y1), (cons.x2, cons.y2)):
        C = y ** (cons.n - 1)
        assert x * x - 4 * y * C == D
        out.append(cls(y, x, C))
    return tuple(out)


def _classify(cons: Construction, ord1: int, ord2: int, span: AbelianStructure) -> str:
    n = cons.n
    if ord1 != n or ord2 != n:
        return ORDER_DEFECT
    if cons.a == cons.b:
        # f1 == f2, nothing beyond rank 1 can be read off
        return RANK1_CONFIRMED
    if span.invariant_factors == (n, n):
        return RANK2_CONFIRMED
    return SPAN_DEFECT


def _expected_code(policy: str) -> str:
    return RANK1_CONFIRMED if policy == COROLLARY else RANK2_CONFIRMED


def _gate(cons: Construction, hyp: HypothesisReport) -> Verdict | None:
    if not hyp.positive:
        return Verdict(INADMISSIBLE, hyp, notes=("discriminant not positive",))
    if hyp.squarefree == "unknown":
        return Verdict(UNKNOWN_SQUAREFREE, hyp, notes=("factoring budget exhausted",))
    if hyp.squarefree == "no":
        return Verdict(INADMISSIBLE, hyp, notes=("discriminant not square-free",))
    return None


def verify_imaginary(
    cons: Construction,
    policy: str = STRICT,
    budget: int = DEFAULT_FACTOR_BUDGET,
    full_group: bool = False,
    group_ceiling: int = DEFAULT_GROUP_CEILING,
    hypothesis: HypothesisReport | None = None,
) -> Verdict:
    if cons.mode != IMAGINARY:
        raise DomainError("verify_imaginary needs an imaginary construction")
    hyp = hypothesis or check_hypotheses(cons, policy, budget)
    gated = _gate(cons, hyp)
    if gated is not None:
        return gated
    n = cons.n
    f1, f2 = forms_from_construction(cons)
    ord1 = definite.order_of(f1, n)
    ord2 = definite.order_of(f2, n)
    elements = definite.span_elements(f1, f2, ord1, ord2)
    e = math.lcm(ord1, ord2)
    span = structure_from_orders(definite.order_of(x, e) for x in elements)
    code = _classify(cons, ord1, ord2, span)

    notes = []
    group = h = None
    if full_group:
        try:
            group = definite.class_group_structure(cons.form_disc, group_ceiling)
            h = group.order
        except BudgetError as exc:
            notes.append(f"full group skipped: {exc}")
    if hyp.admissible and code != _expected_code(policy):
        notes.append(f"{COUNTEREXAMPLE}: hypotheses hold but verdict is {code}")
    return Verdict(code, hyp, ord1, ord2, span, group, h, None, tuple(notes))


def _wide_order(f, n: int, j) -> int:
    """Order of the class of f in Cl+ / <j>."""

    def trivial(g) -> bool:
        return indefinite.is_principal(g) or indefinite.equivalent(g, j)

    if not trivial(indefinite.power(f, n)):
        raise DomainError(f"{f} ** {n} is not trivial in the wide group")
    m = n
    for p, _ in factorize(n).factors:
        while m % p == 0 and trivial(indefinite.power(f, m // p)):
            m //= p
    return m


def _wide_summary(cons: Construction, F1, F2, ord1: int, ord2: int, elements, narrow_span: AbelianStructure) -> dict:
    D = cons.disc_val
    unit = indefinite.fundamental_unit(D)
    if unit.norm == -1:
        wide_ord = (ord1, ord2)
        span = narrow_span
    else:
        j = indefinite.negated_principal_form(D)
        wide_ord = (_wide_order(F1, cons.n, j), _wide_order(F2, cons.n, j))
        cosets = {min(x, indefinite.canonical(indefinite.compose(x, j))) for x in elements}
        e = math.lcm(*wide_ord)
        span = structure_from_orders(_wide_order(x, e, j) for x in cosets)
    return {
        "unit_norm": unit.norm,
        "ord_f1": wide_ord[0],
        "ord_f2": wide_ord[1],
        "span": span.to_list(),
        "span_n_rank": span.n_rank(cons.n),
    }


def verify_real(
    cons: Construction,
    policy: str = STRICT,
    budget: int = DEFAULT_FACTOR_BUDGET,
    full_group: bool = False,
    group_ceiling: int = DEFAULT_GROUP_CEILING,
    hypothesis: HypothesisReport | None = None,
) -> Verdict:
    """Narrow class group verdict, with the wide-group picture in `wide`."""
    if cons.mode != REAL:
        raise DomainError("verify_real needs a real construction")
    hyp = hypothesis or check_hypotheses(cons, policy, budget)
    gated = _gate(cons, hyp)
    if gated is not None:
        return gated
    if policy == STRICT and not hyp.n_mod4_ok:
        return Verdict(INADMISSIBLE, hyp, notes=("n not divisible by 4",))
    if cons.disc_val == 1:
        return Verdict(INADMISSIBLE, hyp, notes=("discriminant is a square",))
    n = cons.n
    F1, F2 = forms_from_construction(cons)
    ord1 = indefinite.order_of(F1, n)
    ord2 = indefinite.order_of(F2, n)
    rows = []
    x = indefinite.principal_form(cons.disc_val)
    for _ in range(ord1):
        rows.append(x)
        x = indefinite.compose(x, F1)
    elements = set()
    for x in rows:
        for _ in range(ord2):
            elements.add(indefinite.canonical(x))
            x = indefinite.compose(x, F2)
    e = math.lcm(ord1, ord2)
    span = structure_from_orders(indefinite.order_of(x, e) for x in elements)
    code = _classify(cons, ord1, ord2, span)

    notes = ["class group computed in the narrow sense; see 'wide' for the quotient by the norm -1 class"]
    wide = None
    group = h = None
    try:
        wide = _wide_summary(cons, F1, F2, ord1, ord2, elements, span)
    except BudgetError as exc:
        notes.append(f"wide-group data skipped: {exc}")
    if full_group:
        try:
            h, group = indefinite.narrow_class_group(cons.disc_val, group_ceiling)
            if wide is not None:
                wide["full_group"] = indefinite.wide_class_structure(cons.disc_val, group_ceiling).to_list()
        except BudgetError as exc:
            notes.append(f"full group skipped: {exc}")
    if hyp.admissible and code != RANK2_CONFIRMED:
        notes.append(f"{COUNTEREXAMPLE} (narrow): hypotheses hold but verdict is {code}")
    if hyp.admissible and wide is not None and wide["span_n_rank"] < 2:
        notes.append(f"{COUNTEREXAMPLE} (wide): span n-rank is {wide['span_n_rank']}")
    return Verdict(code, hyp, ord1, ord2, span, group, h, wide, tuple(notes))


def verify(cons: Construction, policy: str = STRICT, budget: int = DEFAULT_FACTOR_BUDGET, **kw) -> Verdict:
    if cons.mode == IMAGINARY:
        return verify_imaginary(cons, policy, budget, **kw)
    return verify_real(cons, policy, budget, **kw)
