"""Class rewriting modulo AC: one-step reduct enumeration and
strategy-driven normalization for the built-in vector systems and their
unions with a scalar system.

Rewriting acts on AC equivalence classes: a rule whose left side is
headed by an AC symbol matches any sub-multiset of a flattened argument
list, the unmatched remainder is re-attached to the instantiated right
side.  This is what lets `u + u` fire inside `x + (y + x)`.
"""

from __future__ import annotations


import random
from dataclasses import dataclass

from vecnorm import terms
from vecnorm._backend import kernel as _k
from vecnorm.terms import (
    DEFAULT_SIG,
    FuelError,
    Signature,
    Sort,
    SortError,
    app,
    free_vars,
    lit,
    var,
    zero,
)


@dataclass(frozen=True)
class Rule:
    id: str
    lhs: tuple
    rhs: tuple


@dataclass(frozen=True)
class RewriteSystem:
    name: str
    rules: tuple[Rule, ...]
    ac: frozenset[str]


def make_rule(rule_id: str, lhs, rhs, sig: Signature = DEFAULT_SIG) -> Rule:
    """Validated rule: both sides well-sorted and of the same sort, left
    side not a variable, right-side variables bound on the left."""
    lsort = terms.well_sorted(lhs, sig)
    rsort = terms.well_sorted(rhs, sig)
    if lsort != rsort:
        raise SortError(f"rule {rule_id}: sides have sorts {lsort.name} / {rsort.name}")
    if terms.is_var(lhs):
        raise SortError(f"rule {rule_id}: left side is a bare variable")
    extra = free_vars(rhs) - free_vars(lhs)
    if extra:
        names = ", ".join(sorted(v[2] for v in extra))
        raise SortError(f"rule {rule_id}: free right-hand variables {names}")
    return Rule(rule_id, lhs, rhs)


# ---------------------------------------------------------------------------
# built-in systems


def _copy_rules(s: Sort) -> list[Rule]:
    n = s.name
    u, v = var("u", s), var("v", s)
    l, m = var("l", Sort.K), var("m", Sort.K)
    plus, dot, z = f"+{n}", f".{n}", zero(s)
    one = lit(1)
    return [
        make_rule(f"{n}.add-zero", app(plus, (u, z)), u),
        make_rule(f"{n}.coeff-zero", app(dot, (lit(0), u)), z),
        make_rule(f"{n}.coeff-one", app(dot, (one, u)), u),
        make_rule(f"{n}.scale-zero", app(dot, (l, z)), z),
        make_rule(
            f"{n}.scale-scale",
            app(dot, (l, app(dot, (m, u)))),
            app(dot, (app("*K", (l, m)), u)),
        ),
        make_rule(
            f"{n}.collect",
            app(plus, (app(dot, (l, u)), app(dot, (m, u)))),
            app(dot, (app("+K", (l, m)), u)),
        ),
        make_rule(
            f"{n}.collect-one",
            app(plus, (app(dot, (l, u)), u)),
            app(dot, (app("+K", (l, one)), u)),
        ),
        make_rule(
            f"{n}.collect-pair",
            app(plus, (u, u)),
            app(dot, (app("+K", (one, one)), u)),
        ),
        make_rule(
            f"{n}.distribute",
            app(dot, (l, app(plus, (u, v)))),
            app(plus, (app(dot, (l, u)), app(dot, (l, v)))),
        ),
    ]


def _tensor_rules() -> list[Rule]:
    ue, ve = var("u", Sort.E), var("v", Sort.E)
    uf, vf, wf = var("u", Sort.F), var("v", Sort.F), var("w", Sort.F)
    l = var("l", Sort.K)
    t = lambda a, b: app("@", (a, b))
    return [
        make_rule(
            "tensor-sum-left", t(app("+E", (ue, ve)), wf), app("+G", (t(ue, wf), t(ve, wf)))
        ),
        make_rule(
            "tensor-scale-left", t(app(".E", (l, ue)), vf), app(".G", (l, t(ue, vf)))
        ),
        make_rule(
            "tensor-sum-right", t(ue, app("+F", (vf, wf))), app("+G", (t(ue, vf), t(ue, wf)))
        ),
        make_rule(
            "tensor-scale-right", t(ue, app(".F", (l, vf))), app(".G", (l, t(ue, vf)))
        ),
        make_rule("tensor-zero-left", t(zero(Sort.E), uf), zero(Sort.G)),
        make_rule("tensor-zero-right", t(ue, zero(Sort.F)), zero(Sort.G)),
    ]


def vector_system(name: str) -> RewriteSystem:
    """'r': the 9-rule linear-combination system on sort E.
    'rprime': its three sort copies plus the 6 bilinear rules (33 rules).
    """
    if name == "r":
        return RewriteSystem(
            "r", tuple(_copy_rules(Sort.E)), frozenset({"+E", "+K", "*K"})
        )
    if name == "rprime":
        rules = []
        for s in (Sort.E, Sort.F, Sort.G):
            rules.extend(_copy_rules(s))
        rules.extend(_tensor_rules())
        return RewriteSystem(
            "rprime", tuple(rules), frozenset({"+E", "+F", "+G", "+K", "*K"})
        )
    raise ValueError(f"unknown vector system {name!r} (expected 'r' or 'rprime')")


# ---------------------------------------------------------------------------
# matching and one-step reduction


def match_ac(pattern, subject, ac: frozenset):
    """All AC matches of a rule left side against a subject term.

    Returns a list of (substitution, remainder) pairs; the remainder is
    the untouched sub-multiset of the subject's arguments (empty tuple
    when the pattern consumed the whole term, None for non-AC heads).
    """
    out = []
    if terms.is_app(pattern) and pattern[2] in ac:
        if terms.is_app(subject, pattern[2]):
            for sigma, rem in _k.match_ac(
                pattern[4], subject[4], subject[0], pattern[2], ac, {}
            ):
                out.append((sigma, rem))
    else:
        for sigma in _k.match(pattern, subject, ac):
            out.append((sigma, None))
    return out


def rule_applications(rule: Rule, subject, ac: frozenset):
    """Yield (result, substitution, matched) for every way rule applies
    at the root of subject, where matched is the consumed argument
    sub-multiset under an AC head (None otherwise)."""
    lhs = rule.lhs
    if lhs[1] == terms.APP and lhs[2] in ac:
        if subject[1] != terms.APP or subject[2] != lhs[2]:
            return
        for sigma, rem in _k.match_ac(lhs[4], subject[4], subject[0], lhs[2], ac, {}):
            inst = _k.subst(rule.rhs, sigma, ac)
            if rem:
                result = _k.rebuild(subject, (inst,) + rem, ac)
                matched = _multiset_minus(subject[4], rem)
            else:
                result = inst
                matched = subject[4]
            yield result, sigma, matched
    else:
        for sigma in _k.match(lhs, subject, ac):
            yield _k.subst(rule.rhs, sigma, ac), sigma, None


_RULE_INDEX_CACHE: dict = {}


def _rules_by_head(sys: RewriteSystem) -> dict:
    """Rules grouped by the head symbol of their left side; matching can
    only succeed where heads agree, so reduct enumeration skips the
    rest.  Keyed by identity: systems are few and long-lived."""
    got = _RULE_INDEX_CACHE.get(id(sys))
    if got is not None and got[0] is sys:
        return got[1]
    out: dict = {}
    for rule in sys.rules:
        key = rule.lhs[2] if rule.lhs[1] == terms.APP else None
        out.setdefault(key, []).append(rule)
    if len(_RULE_INDEX_CACHE) > 256:
        _RULE_INDEX_CACHE.clear()
    _RULE_INDEX_CACHE[id(sys)] = (sys, out)
    return out


def _candidate_rules(sys: RewriteSystem, subject) -> list:
    by_head = _rules_by_head(sys)
    if subject[1] == terms.APP:
        return by_head.get(subject[2], _NO_RULES)
    if subject[1] == terms.LIT:
        return by_head.get(None, _NO_RULES)
    return _NO_RULES


_NO_RULES: list = []


def _multiset_minus(whole: tuple, part: tuple) -> tuple:
    counts = {}
    for e in part:
        counts[e] = counts.get(e, 0) + 1
    out = []
    for e in whole:
        if counts.get(e, 0) > 0:
            counts[e] -= 1
        else:
            out.append(e)
    return tuple(out)


def positions(t):
    """Yield (path, subterm, parent_sort) in leftmost-outermost order."""
    stack = [((), t, None)]
    while stack:
        path, sub, psort = stack.pop()
        yield path, sub, psort
        if sub[1] == terms.APP:
            for i in range(len(sub[4]) - 1, -1, -1):
                stack.append((path + (i,), sub[4][i], sub[0]))


def splice(t, path: tuple, new, ac: frozenset):
    """Replace the subterm at path with `new`, re-canonicalizing every
    node on the way back up (the new child may splice into an AC head)."""
    if not path:
        return new
    i = path[0]
    args = list(t[4])
    args[i] = splice(args[i], path[1:], new, ac)
    return _k.rebuild(t, args, ac)


@dataclass(frozen=True)
class Step:
    """One reduction step; replaying it from `source` yields `target`."""

    kind: str  # "R" for a system rule, "S" for a scalar-system step
    label: str  # rule id, or the scalar system name
    path: tuple
    subst: tuple  # sorted (variable, term) pairs
    matched: tuple | None  # consumed argument sub-multiset under an AC head
    source: tuple
    target: tuple


@dataclass(frozen=True)
class Trace:
    initial: tuple
    steps: tuple[Step, ...]
    final: tuple


_REDUCTS_CACHE: dict = {}


def reducts(sys: RewriteSystem, S, t):
    """The complete set of one-step reducts of t under sys modulo AC,
    plus one-step reducts of the scalar system S at maximal scalar
    positions.  Deduplicated modulo AC; sorted by the term order.

    Results are memoized per (system, scalar system, term); callers must
    not mutate the returned list.
    """
    key = (id(sys), id(S), t)
    got = _REDUCTS_CACHE.get(key)
    if got is not None and got[0] is sys and got[1] is S:
        return got[2]
    found: dict = {}
    for path, sub, psort in positions(t):
        for rule in _candidate_rules(sys, sub):
            for result, sigma, matched in rule_applications(rule, sub, sys.ac):
                new = splice(t, path, result, sys.ac)
                if new not in found:
                    found[new] = Step(
                        "R", rule.id, path, _freeze(sigma), matched, t, new
                    )
        if S is not None and sub[0] == Sort.K and psort != Sort.K:
            for red in sorted(S.step(sub)):
                new = splice(t, path, red, sys.ac)
                if new not in found:
                    found[new] = Step("S", S.name, path, (), None, t, new)
    out = sorted(found.items())
    if len(_REDUCTS_CACHE) > 20000:
        _REDUCTS_CACHE.clear()
    _REDUCTS_CACHE[key] = (sys, S, out)
    return out


def _freeze(sigma: dict) -> tuple:
    return tuple(sorted(sigma.items()))


def replay_step(step: Step, sys: RewriteSystem, S=None):
    """Recompute the step's target from its source and metadata; used to
    check that traces replay."""
    sub = step.source
    for i in step.path:
        sub = sub[4][i]
    if step.kind == "S":
        if S is None:
            return step.target
        reachable = {splice(step.source, step.path, r, sys.ac) for r in S.step(sub)}
        if step.target not in reachable:
            raise ValueError(f"scalar step by {step.label} does not replay")
        return step.target
    rule = next(r for r in sys.rules if r.id == step.label)
    sigma = dict(step.subst)
    inst = _k.subst(rule.rhs, sigma, sys.ac)
    if step.matched is not None and len(step.matched) < len(sub[4]):
        rem = _multiset_minus(sub[4], step.matched)
        inst = _k.rebuild(sub, (inst,) + rem, sys.ac)
    return splice(step.source, step.path, inst, sys.ac)


# ---------------------------------------------------------------------------
# normalization strategies


def auto_fuel(t) -> int:
    """Step budget derived from the termination measures: enough for any
    built-in system on generator-sized terms."""
    from vecnorm.lab import measure_s0, measure_vec

    if t[0] == Sort.K:
        return measure_s0(t) + 8
    scalars = sum(1 for _, sub, _ in positions(t) if sub[0] == Sort.K)
    return measure_vec(t) + 4 * scalars + 8


def normalize(sys: RewriteSystem, S, t, strategy: str = "li", fuel: int | None = None, seed: int = 0):
    """Reduce t to a normal form, returning (normal form, trace).

    strategy 'li' is deterministic leftmost-innermost, so scalar redexes
    fold before the rules enclosing them fire; 'random' picks uniformly
    among all one-step reducts, seeded.  Raises FuelError when the step
    budget runs out, which for the built-in systems signals a bug: they
    terminate within auto_fuel.
    """
    t = _k.canon(t, sys.ac)
    if fuel is None:
        fuel = auto_fuel(t)
    if fuel < 1:
        raise FuelError("fuel must be at least 1")
    steps: list[Step] = []
    cur = t
    if strategy == "li":
        for _ in range(fuel):
            got = _li_step(sys, S, cur)
            if got is None:
                return cur, Trace(t, tuple(steps), cur)
            cur, step = got
            steps.append(step)
    elif strategy == "random":
        rng = random.Random(seed)
        for _ in range(fuel):
            rs = reducts(sys, S, cur)
            if not rs:
                return cur, Trace(t, tuple(steps), cur)
            cur, step = rs[rng.randrange(len(rs))]
            steps.append(step)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    raise FuelError(f"no normal form within {fuel} steps under {sys.name}")


def _li_step(sys: RewriteSystem, S, t):
    got = _li_find(sys, S, t, ())
    if got is None:
        return None
    path, result, kind, label, sigma, matched = got
    new = splice(t, path, result, sys.ac)
    return new, Step(kind, label, path, _freeze(sigma), matched, t, new)


def _li_find(sys: RewriteSystem, S, t, path):
    if t[1] == terms.VAR:
        return None
    if t[1] == terms.APP:
        for i, a in enumerate(t[4]):
            got = _li_find(sys, S, a, path + (i,))
            if got is not None:
                return got
    for rule in _candidate_rules(sys, t):
        # first match only: enumeration is deterministic, and forcing the
        # full match set is exponential on wide AC nodes
        for result, sigma, matched in rule_applications(rule, t, sys.ac):
            return path, result, "R", rule.id, sigma, matched
    if S is not None and t[0] == Sort.K:
        nxt = S.first_root_step(t)
        if nxt is not None:
            return path, nxt, "S", S.name, {}, None
    return None


# ---------------------------------------------------------------------------
# trace serialization (one step per line: rule id, position, substitution)


def trace_lines(trace: Trace) -> list[str]:
    from vecnorm.syntax import print_term

    out = []
    for step in trace.steps:
        pos = ".".join(str(i) for i in step.path) or "root"
        binds = " ".join(f"{v[2]}={print_term(val)}" for v, val in step.subst)
        out.append(f"{step.label}\t{pos}\t{binds}")
    return out
