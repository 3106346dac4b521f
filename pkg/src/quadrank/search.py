"""Deterministic, resumable sweeps over (a, b, c, n) boxes.

Every lattice point of the box yields exactly one JSON line, in
lexicographic (n, a, b, c) order.  Keys are written in a fixed order and
nothing time-dependent is recorded unless `timings=True`, so two runs of
the same box produce identical bytes, whatever the number of workers.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import islice, product

from . import __version__
from .arith import DEFAULT_FACTOR_BUDGET, is_probable_prime
from .construct import ANY, COROLLARY, IMAGINARY, POLICIES, RELAXED_PRIME, REAL, build, check_hypotheses, check_policy
from .errors import BudgetError, DomainError
from .verify import DEFAULT_GROUP_CEILING, verify

TOOL_VERSION = f"quadrank {__version__}"

SKIPPED_NONPOSITIVE = "SKIPPED_NONPOSITIVE"
NOT_SQUAREFREE = "NOT_SQUAREFREE"
FILTERED = "FILTERED"
BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"

RECORD_KEYS = (
    "a", "b", "c", "n", "mode", "S", "disc", "x1", "y1", "x2", "y2",
    "status", "hypothesis", "verdict", "tool_version",
)


@dataclass(frozen=True)
class SearchBox:
    a_range: tuple[int, int]
    b_range: tuple[int, int]
    c_range: tuple[int, int]
    n_set: tuple[int, ...]
    mode: str = IMAGINARY

    def __post_init__(self):
        for name in ("a_range", "b_range", "c_range"):
            lo, hi = getattr(self, name)
            if lo < 1 or hi < lo:
                raise DomainError(f"{name} must be a nonempty interval of positive integers, got {(lo, hi)}")
            object.__setattr__(self, name, (int(lo), int(hi)))
        ns = tuple(sorted(set(int(n) for n in self.n_set)))
        if any(n < 2 for n in ns):
            raise DomainError(f"every n must be >= 2, got {ns}")
        object.__setattr__(self, "n_set", ns)
        if self.mode not in (IMAGINARY, REAL):
            raise DomainError(f"unknown mode {self.mode!r}")

    def __len__(self):
        size = len(self.n_set)
        for lo, hi in (self.a_range, self.b_range, self.c_range):
            size *= hi - lo + 1
        return size

    def points(self, start: int = 0):
        """Lattice points (n, a, b, c) in lexicographic order, from index `start`."""
        it = product(
            self.n_set,
            range(self.a_range[0], self.a_range[1] + 1),
            range(self.b_range[0], self.b_range[1] + 1),
            range(self.c_range[0], self.c_range[1] + 1),
        )
        return islice(it, start, None)

    def as_dict(self) -> dict:
        d = asdict(self)
        return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}

    @classmethod
    def from_dict(cls, d: dict) -> "SearchBox":
        return cls(tuple(d["a_range"]), tuple(d["b_range"]), tuple(d["c_range"]), tuple(d["n_set"]), d["mode"])


@dataclass(frozen=True)
class Budgets:
    factor: int = DEFAULT_FACTOR_BUDGET
    group: int = DEFAULT_GROUP_CEILING
    full_group: bool = False


def check_box_policy(box: SearchBox, policy: str) -> None:
    check_policy(box.mode, policy)
    if policy == RELAXED_PRIME:
        bad = [n for n in box.n_set if not is_probable_prime(n)]
        if bad:
            raise DomainError(f"relaxed_prime policy needs prime n, got {bad}")
    if policy == COROLLARY and (box.a_range, box.b_range) != ((1, 1), (1, 1)):
        raise DomainError("corollary policy needs a = b = 1")


def evaluate_point(point: tuple[int, int, int, int], mode: str, policy: str, budgets: Budgets, timings: bool = False) -> tuple[str, str]:
    """Classify one lattice point; returns (summary category, JSON line)."""
    n, a, b, c = point
    clock = {}
    t0 = time.perf_counter()
    cons = build(mode, a, b, c, n)
    rec = {
        "a": a, "b": b, "c": c, "n": n, "mode": mode,
        "S": cons.S, "disc": cons.disc_val,
        "x1": cons.x1, "y1": cons.y1, "x2": cons.x2, "y2": cons.y2,
        "status": None, "hypothesis": None, "verdict": None,
    }
    if cons.disc_val <= 0:
        category = SKIPPED_NONPOSITIVE
        rec["status"] = "skipped"
    else:
        hyp = check_hypotheses(cons, policy, budgets.factor)
        t1 = time.perf_counter()
        clock["hypothesis"] = t1 - t0
        rec["hypothesis"] = hyp.as_dict()
        if hyp.squarefree == "no":
            category = NOT_SQUAREFREE
            rec["status"] = "not_squarefree"
        elif hyp.squarefree == "yes" and policy != ANY and not hyp.admissible:
            category = FILTERED
            rec["status"] = "filtered"
        else:
            try:
                v = verify(cons, policy, budgets.factor, full_group=budgets.full_group,
                           group_ceiling=budgets.group, hypothesis=hyp)
                category = v.code
                rec["status"] = "verified"
                rec["verdict"] = v.as_dict()
                rec["verdict"].pop("hypothesis")
            except BudgetError as exc:
                category = BUDGET_EXHAUSTED
                rec["status"] = "budget_exhausted"
                rec["verdict"] = {"code": None, "notes": [str(exc)]}
            clock["verify"] = time.perf_counter() - t1
    if timings:
        rec["timing_ms"] = {k: round(v * 1000, 3) for k, v in clock.items()}
    rec["tool_version"] = TOOL_VERSION
    return category, json.dumps(rec, separators=(",", ":"), ensure_ascii=False)


def _evaluate_packed(args):
    return evaluate_point(*args)


def is_counterexample(line: str) -> bool:
    rec = json.loads(line)
    v = rec.get("verdict") or {}
    return any(str(note).startswith("THEOREM_COUNTEREXAMPLE") for note in v.get("notes", []))


@dataclass
class Summary:
    counts: Counter = field(default_factory=Counter)
    points: int = 0
    admissible: int = 0
    counterexamples: list = field(default_factory=list)

    def add(self, category: str, line: str) -> None:
        self.counts[category] += 1
        self.points += 1
        if '"admissible":true' in line:
            self.admissible += 1
            if is_counterexample(line):
                rec = json.loads(line)
                self.counterexamples.append([rec["a"], rec["b"], rec["c"], rec["n"]])

    def as_dict(self) -> dict:
        return {
            "points": self.points,
            "admissible": self.admissible,
            "counterexamples": self.counterexamples,
            "counts": dict(sorted(self.counts.items())),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Summary":
        return cls(Counter(d["counts"]), d["points"], d["admissible"], list(d["counterexamples"]))


def scan(box: SearchBox, policy: str, sink=None, budgets: Budgets = Budgets(), *, jobs: int = 1,
         start: int = 0, stop: int | None = None, timings: bool = False, on_record=None) -> Summary:
    """Evaluate box points [start, stop) and write their lines to `sink`.

    `on_record(index, category, line)` is called after each line is written,
    in order.
    """
    if policy not in POLICIES:
        raise DomainError(f"unknown policy {policy!r}")
    check_box_policy(box, policy)
    stop = len(box) if stop is None else min(stop, len(box))
    pts = islice(box.points(start), max(0, stop - start))
    tasks = ((p, box.mode, policy, budgets, timings) for p in pts)
    summary = Summary()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_evaluate_packed, tasks, chunksize=16)
            _drain(results, start, sink, summary, on_record)
    else:
        _drain(map(_evaluate_packed, tasks), start, sink, summary, on_record)
    return summary


def _drain(results, start, sink, summary, on_record):
    for i, (category, line) in enumerate(results, start):
        if sink is not None:
            sink.write(line + "\n")
        summary.add(category, line)
        if on_record is not None:
            on_record(i, category, line)


# -- checkpointed runs -------------------------------------------------------


@dataclass
class Checkpoint:
    box: dict
    policy: str
    budgets: dict
    cursor: int
    records_emitted: int
    output_bytes: int
    output_sha256: str
    summary: dict
    tool_version: str = TOOL_VERSION

    def matches(self, box: SearchBox, policy: str, budgets: Budgets) -> bool:
        return self.box == box.as_dict() and self.policy == policy and self.budgets == asdict(budgets)


def checkpoint_save(ckpt: Checkpoint, path: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(asdict(ckpt), fh, indent=1)
    os.replace(tmp, path)


def checkpoint_load(path: str) -> Checkpoint:
    with open(path, encoding="utf-8") as fh:
        try:
            return Checkpoint(**json.load(fh))
        except (TypeError, json.JSONDecodeError) as exc:
            raise DomainError(f"corrupt checkpoint {path}: {exc}") from exc


def _prefix_sha256(path: str, nbytes: int) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        left = nbytes
        while left:
            chunk = fh.read(min(left, 1 << 20))
            if not chunk:
                break
            h.update(chunk)
            left -= len(chunk)
    return h.hexdigest()


def run_search(box: SearchBox, policy: str, out_path: str, budgets: Budgets = Budgets(), *,
               checkpoint_path: str | None = None, resume: bool = False, jobs: int = 1,
               checkpoint_every: int = 100, stop: int | None = None, timings: bool = False) -> Summary:
    """Run `scan` into `out_path`, optionally checkpointing and resuming.

    `stop` ends the run early after that many lattice points (counted from
    the start of the box), leaving a checkpoint to resume from.
    """
    check_box_policy(box, policy)
    start = 0
    prior = Summary()
    hasher = hashlib.sha256()
    nbytes = 0
    if resume:
        if checkpoint_path is None or not os.path.exists(checkpoint_path):
            raise DomainError("resume requested without an existing checkpoint")
        ckpt = checkpoint_load(checkpoint_path)
        if not ckpt.matches(box, policy, budgets):
            raise DomainError("checkpoint was written for a different box, policy or budget")
        if not os.path.exists(out_path) or os.path.getsize(out_path) < ckpt.output_bytes:
            raise DomainError(f"output {out_path} is shorter than the checkpoint records")
        if _prefix_sha256(out_path, ckpt.output_bytes) != ckpt.output_sha256:
            raise DomainError(f"output {out_path} does not match the checkpoint hash")
        with open(out_path, "rb") as fh:
            prefix = fh.read(ckpt.output_bytes)
        hasher.update(prefix)
        nbytes = ckpt.output_bytes
        start = ckpt.cursor
        prior = Summary.from_dict(ckpt.summary)
        with open(out_path, "r+b") as fh:
            fh.truncate(nbytes)
    summary = prior

    def save(cursor: int, out) -> None:
        if checkpoint_path is None:
            return
        out.flush()
        checkpoint_save(Checkpoint(box.as_dict(), policy, asdict(budgets), cursor, summary.points,
                                   nbytes, hasher.hexdigest(), summary.as_dict()), checkpoint_path)

    with open(out_path, "a" if resume else "w", encoding="utf-8", newline="\n") as out:

        def on_record(i: int, category: str, line: str) -> None:
            nonlocal nbytes
            summary.add(category, line)
            data = (line + "\n").encode("utf-8")
            hasher.update(data)
            nbytes += len(data)
            if (i + 1) % checkpoint_every == 0:
                save(i + 1, out)

        part = scan(box, policy, out, budgets, jobs=jobs, start=start, stop=stop, timings=timings,
                    on_record=on_record)
        save(start + part.points, out)
    return summary
