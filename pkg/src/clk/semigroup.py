"""Bounded rewriting search in the graph semigroup.

The semigroup lives on the nonzero count vectors: two vectors are
equivalent when one can be rewritten into the other by repeatedly
replacing an embedded relation side with the opposite side.  Viewed
geometrically, the vectors are lattice points and each rewrite crosses a
translated copy of a relation segment; equivalence classes are the path
components of that picture.

There is no terminating decision procedure for equivalence in general, so
every search here is budgeted and every non-"unknown" answer carries a
machine-checkable certificate:

* ``Equivalent`` holds a step-by-step witness that replays exactly;
* ``Inequivalent`` holds either a K0 obstruction (the difference vector
  has no integer solution against the relation matrix, which equivalence
  would force) or a fully enumerated class that omits the other element.

Searches are deterministic: breadth-first, layer by layer, each layer in
lexicographic order, so witnesses are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import zspan_solve
from .presentation import (
    Presentation,
    Relation,
    Vec,
    is_zero,
    relation_matrix,
    vec_add,
    vec_leq,
    vec_scale,
    vec_sub,
)


@dataclass(frozen=True)
class Budget:
    """Search limits: BFS node expansions, and the largest multiple k*a
    probed by the torsion and closure searches."""

    max_states: int = 100_000
    max_multiple: int = 64

    def __post_init__(self):
        if self.max_states < 1 or self.max_multiple < 1:
            raise ValueError("budget fields must be positive")


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class Step:
    """One rewrite: apply ``relation`` forward (lhs -> rhs) or backward,
    landing on ``result``."""

    relation: str
    forward: bool
    result: Vec


@dataclass(frozen=True)
class Equivalent:
    witness: tuple[Step, ...]


@dataclass(frozen=True)
class Inequivalent:
    certificate: str  # "k0-mismatch" | "complete-class-excludes"
    complete_side: str | None = None
    class_size: int | None = None


@dataclass(frozen=True)
class Unknown:
    visited: int


EqOutcome = Equivalent | Inequivalent | Unknown


@dataclass(frozen=True)
class ClassEnumeration:
    complete: bool
    members: tuple[Vec, ...]
    visited: int


@dataclass(frozen=True)
class Torsion:
    """n*a ~ m*a; the witness replays from n*a down to m*a.

    (m, n) is minimal in probe order among *resolved* probes; it is the
    true minimal type exactly when ``prior_unknown_probes`` is empty.
    """

    m: int
    n: int
    witness: tuple[Step, ...]
    prior_unknown_probes: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class NoTorsionUpTo:
    """No multiple collapse found.  ``bound`` is the largest n probed, or
    None when the absence of torsion is certified outright (infinite
    order shown without search)."""

    bound: int | None
    certified: bool
    unknown_probes: tuple[tuple[int, int], ...] = ()
    certificate: str | None = None


TorsionType = Torsion | NoTorsionUpTo


@dataclass(frozen=True)
class ClosureOutcome:
    """Tri-state answer to "is y below some multiple of a?".

    "yes" carries the witness pair: y is dominated by ``dominating``,
    a member of the class of ``multiple * a``.
    """

    status: str  # "yes" | "no-up-to-bound" | "unknown"
    multiple: int | None = None
    dominating: Vec | None = None
    bound: int | None = None


@dataclass(frozen=True)
class ProgeneratorReport:
    status: str  # "yes" | "no-up-to-bound" | "unknown"
    per_generator: tuple[tuple[str, ClosureOutcome], ...]


def _check_element(p: Presentation, v) -> Vec:
    v = tuple(v)
    if len(v) != p.dim:
        raise ValueError(f"vector has {len(v)} entries, expected {p.dim}")
    if any(a < 0 for a in v):
        raise ValueError(f"semigroup elements need nonnegative counts: {v}")
    if is_zero(v):
        raise ValueError("the zero vector is not a semigroup element")
    return v


def applicable_steps(p: Presentation, x) -> list[tuple[Relation, bool, Vec]]:
    """All single rewrites at x: forward where lhs fits under x, backward
    where rhs does.  Results are automatically nonzero."""
    x = _check_element(p, x)
    steps = []
    for rel in p.relations:
        if vec_leq(rel.lhs, x):
            steps.append((rel, True, vec_add(vec_sub(x, rel.lhs), rel.rhs)))
    for rel in p.relations:
        if vec_leq(rel.rhs, x):
            steps.append((rel, False, vec_add(vec_sub(x, rel.rhs), rel.lhs)))
    return steps


def replay_witness(p: Presentation, start, witness) -> Vec:
    """Re-apply a witness step by step with exact applicability checks.

    Raises ValueError if any step does not apply or lands elsewhere than
    recorded; returns the final vector.
    """
    by_name = {rel.name: rel for rel in p.relations}
    cur = _check_element(p, start)
    for step in witness:
        rel = by_name.get(step.relation)
        if rel is None:
            raise ValueError(f"witness uses unknown relation {step.relation!r}")
        src, dst = (rel.lhs, rel.rhs) if step.forward else (rel.rhs, rel.lhs)
        if not vec_leq(src, cur):
            raise ValueError(f"step {step} does not apply at {cur}")
        cur = vec_add(vec_sub(cur, src), dst)
        if cur != step.result:
            raise ValueError(f"step {step} lands on {cur}, not {step.result}")
    return cur


def class_enumerate(p: Presentation, x, budget: Budget | None = None) -> ClassEnumeration:
    """Breadth-first closure of x under rewrites in both directions.

    Complete iff the frontier empties before the node budget runs out;
    otherwise the members seen so far are returned as a partial class.
    """
    budget = budget or DEFAULT_BUDGET
    x = _check_element(p, x)
    seen = {x}
    frontier = [x]
    expanded = 0
    while frontier:
        layer = sorted(frontier)
        frontier = []
        for state in layer:
            if expanded >= budget.max_states:
                return ClassEnumeration(False, tuple(sorted(seen)), expanded)
            expanded += 1
            for _, _, res in applicable_steps(p, state):
                if res not in seen:
                    seen.add(res)
                    frontier.append(res)
    return ClassEnumeration(True, tuple(sorted(seen)), expanded)


class _Search:
    """One side of the bidirectional search: parent links for witnesses."""

    __slots__ = ("seed", "parents", "frontier")

    def __init__(self, seed: Vec):
        self.seed = seed
        self.parents: dict[Vec, tuple[Vec, Step] | None] = {seed: None}
        self.frontier: list[Vec] = [seed]

    def chain(self, state: Vec) -> list[tuple[Vec, Step]]:
        items = []
        while True:
            link = self.parents[state]
            if link is None:
                break
            items.append(link)
            state = link[0]
        items.reverse()
        return items


def _join_witness(left: _Search, right: _Search, meet: Vec) -> tuple[Step, ...]:
    forward_part = [step for _, step in left.chain(meet)]
    back_part = [
        Step(step.relation, not step.forward, prev)
        for prev, step in reversed(right.chain(meet))
    ]
    return tuple(forward_part + back_part)


def equivalent(p: Presentation, x, y, budget: Budget | None = None) -> EqOutcome:
    """Decide x ~ y within budget.

    The K0 test runs first: equivalence forces x - y into the integer row
    span of the relation matrix, so an unsolvable difference is a sound
    inequivalence certificate.  Then both ends are searched breadth-first;
    meeting yields a replayable witness, and a side whose class closes
    without meeting certifies inequivalence.
    """
    budget = budget or DEFAULT_BUDGET
    x = _check_element(p, x)
    y = _check_element(p, y)
    if x == y:
        return Equivalent(())
    if zspan_solve(relation_matrix(p), vec_sub(x, y)) is None:
        return Inequivalent("k0-mismatch")

    left, right = _Search(x), _Search(y)
    expanded = 0
    while True:
        if not left.frontier:
            return Inequivalent(
                "complete-class-excludes", "left", len(left.parents)
            )
        if not right.frontier:
            return Inequivalent(
                "complete-class-excludes", "right", len(right.parents)
            )
        side, other = (
            (left, right)
            if len(left.frontier) <= len(right.frontier)
            else (right, left)
        )
        layer = sorted(side.frontier)
        side.frontier = []
        for i, state in enumerate(layer):
            if expanded >= budget.max_states:
                side.frontier = layer[i:] + side.frontier
                return Unknown(expanded)
            expanded += 1
            for rel, fwd, res in applicable_steps(p, state):
                if res in side.parents:
                    continue
                side.parents[res] = (state, Step(rel.name, fwd, res))
                side.frontier.append(res)
                if res in other.parents:
                    witness = _join_witness(left, right, res)
                    assert replay_witness(p, x, witness) == y
                    return Equivalent(witness)


def torsion_type(p: Presentation, a, budget: Budget | None = None) -> TorsionType:
    """Least n with n*a ~ m*a for some m < n, probing n then m upward.

    Probes that certify inequivalence are conclusive; if any probe came
    back unknown the NoTorsionUpTo result says so.
    """
    budget = budget or DEFAULT_BUDGET
    a = _check_element(p, a)
    unknowns: list[tuple[int, int]] = []
    for n in range(2, budget.max_multiple + 1):
        na = vec_scale(n, a)
        for m in range(1, n):
            out = equivalent(p, na, vec_scale(m, a), budget)
            if isinstance(out, Equivalent):
                return Torsion(m, n, out.witness, tuple(unknowns))
            if isinstance(out, Unknown):
                unknowns.append((n, m))
    return NoTorsionUpTo(
        bound=budget.max_multiple,
        certified=not unknowns,
        unknown_probes=tuple(unknowns),
    )


def closure_contains(p: Presentation, a, y, budget: Budget | None = None) -> ClosureOutcome:
    """Is y dominated by some multiple of a (y + z ~ k*a, z >= 0)?

    Searches k = 1..max_multiple; within each k the class of k*a is
    enumerated breadth-first looking for a member >= y componentwise.
    "no-up-to-bound" requires every one of those classes to have been
    enumerated completely.
    """
    budget = budget or DEFAULT_BUDGET
    a = _check_element(p, a)
    y = _check_element(p, y)
    all_complete = True
    for k in range(1, budget.max_multiple + 1):
        target = vec_scale(k, a)
        if vec_leq(y, target):
            return ClosureOutcome("yes", multiple=k, dominating=target)
        seen = {target}
        frontier = [target]
        expanded = 0
        complete = True
        while frontier:
            layer = sorted(frontier)
            frontier = []
            for state in layer:
                if expanded >= budget.max_states:
                    complete = False
                    frontier = []
                    break
                expanded += 1
                for _, _, res in applicable_steps(p, state):
                    if res in seen:
                        continue
                    if vec_leq(y, res):
                        return ClosureOutcome("yes", multiple=k, dominating=res)
                    seen.add(res)
                    frontier.append(res)
            if not complete:
                break
        if not complete:
            all_complete = False
    if all_complete:
        return ClosureOutcome("no-up-to-bound", bound=budget.max_multiple)
    return ClosureOutcome("unknown", bound=budget.max_multiple)


def is_progenerator(p: Presentation, a, budget: Budget | None = None) -> ProgeneratorReport:
    """Does every generator fall below some multiple of a?

    Sums of dominated generators are dominated by sums of multiples, so
    generator domination suffices for the whole semigroup.  A certified
    "no" for any generator makes the overall answer "no-up-to-bound";
    otherwise any unresolved generator makes it "unknown".
    """
    budget = budget or DEFAULT_BUDGET
    a = _check_element(p, a)
    results = []
    for g in p.generators:
        results.append((g, closure_contains(p, a, p.unit(g), budget)))
    statuses = {outcome.status for _, outcome in results}
    if statuses == {"yes"}:
        overall = "yes"
    elif "no-up-to-bound" in statuses:
        overall = "no-up-to-bound"
    else:
        overall = "unknown"
    return ProgeneratorReport(overall, tuple(results))


def isolated_support(p: Presentation, vertices) -> bool:
    """True when no relation side fits inside the given vertex support.

    Then no rewrite ever applies to any multiple of the corresponding
    unit sum: each such class is a singleton and the element has infinite
    order in the semigroup.
    """
    idx = {p.index(v) for v in vertices}
    for rel in p.relations:
        lhs_support = {i for i, c in enumerate(rel.lhs) if c}
        rhs_support = {i for i, c in enumerate(rel.rhs) if c}
        if lhs_support <= idx or rhs_support <= idx:
            return False
    return True


def step_to_data(step: Step) -> dict:
    return {
        "relation": step.relation,
        "direction": "forward" if step.forward else "backward",
        "to": list(step.result),
    }


def eq_outcome_to_data(out: EqOutcome) -> dict:
    if isinstance(out, Equivalent):
        return {
            "status": "equivalent",
            "witness": [step_to_data(s) for s in out.witness],
        }
    if isinstance(out, Inequivalent):
        data = {"status": "inequivalent", "certificate": out.certificate}
        if out.complete_side is not None:
            data["complete_side"] = out.complete_side
            data["class_size"] = out.class_size
        return data
    return {"status": "unknown", "visited": out.visited}


def torsion_to_data(t: TorsionType) -> dict:
    if isinstance(t, Torsion):
        return {
            "kind": "torsion",
            "m": t.m,
            "n": t.n,
            "witness": [step_to_data(s) for s in t.witness],
            "prior_unknown_probes": [list(pair) for pair in t.prior_unknown_probes],
        }
    return {
        "kind": "no-torsion",
        "bound": t.bound,
        "certified": t.certified,
        "unknown_probes": [list(pair) for pair in t.unknown_probes],
        "certificate": t.certificate,
    }


def closure_to_data(out: ClosureOutcome) -> dict:
    data: dict = {"status": out.status}
    if out.status == "yes":
        data["multiple"] = out.multiple
        data["dominating"] = list(out.dominating)
    else:
        data["bound"] = out.bound
    return data
