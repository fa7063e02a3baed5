"""Executable verification lab.

Termination measures and their per-trace verdicts, one-step peak
joinability, commutation of the vector rules with scalar chains,
subsumption between scalar systems, strategy independence, the combined
modular-confluence (key lemma) harness, and the seeded term generator
that feeds all of them.

Reports are plain data: pass/fail plus counterexample witnesses, with a
line-oriented rendering and a one-line machine summary for CI.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from vecnorm import engine, terms
from vecnorm.engine import RewriteSystem, Trace, normalize, reducts, vector_system
from vecnorm.scalars import (
    ScalarSystem,
    builtin_scalar,
    s0_rules,
    scalar_requirements_check,
    s_normalize,
)
from vecnorm.terms import DEFAULT_SIG, Signature, Sort, SortError, app, lit, var, zero


# ---------------------------------------------------------------------------
# termination measures


def measure_vec(t) -> int:
    """Interpretation that every rule of the vector systems strictly
    decreases and every scalar step preserves: |u + v| = 2 + |u| + |v|
    (pairwise over the flattened multiset), |l.u| = 1 + 2|u|, |0| = 0,
    |u @ v| = (3|u| + 2)(3|v| + 2), variables and free constants 0."""
    if t[0] == Sort.K:
        raise SortError("measure_vec expects a vector-sorted term")
    if t[1] != terms.APP:
        return 0
    sym = t[2]
    if sym.startswith("+"):
        return 2 * (len(t[4]) - 1) + sum(measure_vec(a) for a in t[4])
    if sym.startswith("."):
        return 1 + 2 * measure_vec(t[4][1])
    if sym == "@":
        return (3 * measure_vec(t[4][0]) + 2) * (3 * measure_vec(t[4][1]) + 2)
    return 0  # vector zeros and free constants


def measure_s0(t) -> int:
    """Interpretation strictly decreased by every s0 step: ||l + m|| =
    ||l|| + ||m|| + 1, ||l * m|| = ||l|| ||m||, and every leaf (0, 1,
    other literals, variables) worth 2."""
    if t[0] != Sort.K:
        raise SortError("measure_s0 expects a scalar term")
    if t[1] != terms.APP:
        return 2
    if t[2] == "+K":
        return sum(measure_s0(a) for a in t[4]) + len(t[4]) - 1
    prod = 1
    for a in t[4]:
        prod *= measure_s0(a)
    return prod


@dataclass(frozen=True)
class MeasureVerdict:
    """Per-step measure comparison along a trace: rule steps must
    strictly decrease, scalar steps must preserve (scalar-sorted traces:
    every step strictly decreases measure_s0)."""

    trace: Trace
    entries: tuple  # (kind, before, after, ok) per step
    passed: bool


def check_trace_measures(trace: Trace) -> MeasureVerdict:
    scalar = trace.initial[0] == Sort.K
    mu = measure_s0 if scalar else measure_vec
    entries = []
    ok = True
    for step in trace.steps:
        before, after = mu(step.source), mu(step.target)
        if scalar:
            good = after < before
        elif step.kind == "R":
            good = after < before
        else:
            good = after == before
        entries.append((step.kind, before, after, good))
        ok = ok and good
    return MeasureVerdict(trace, tuple(entries), ok)


# ---------------------------------------------------------------------------
# reports


@dataclass
class LabReport:
    name: str
    samples: int = 0
    seed: int = 0
    failures: list[str] = field(default_factory=list)
    sections: list["LabReport"] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and all(s.passed for s in self.sections)

    def add_failure(self, witness: str):
        self.failures.append(witness)

    def merge(self, other: "LabReport") -> "LabReport":
        return LabReport(
            self.name,
            self.samples + other.samples,
            self.seed,
            self.failures + other.failures,
            self.sections + other.sections,
        )

    def summary_line(self) -> str:
        return f"{self.name}\t{'pass' if self.passed else 'fail'}\t{self.samples}\t{self.seed}"

    def lines(self) -> list[str]:
        out = [
            f"check {self.name}: {'PASS' if self.passed else 'FAIL'}"
            f" (samples={self.samples}, seed={self.seed})"
        ]
        for f in self.failures[:10]:
            out.append(f"  witness: {f}")
        if len(self.failures) > 10:
            out.append(f"  ... {len(self.failures) - 10} more")
        for s in self.sections:
            out.extend("  " + line for line in s.lines())
        return out


def _pt(t) -> str:
    from vecnorm.syntax import print_term

    return print_term(t)


# ---------------------------------------------------------------------------
# single-term checks


def local_confluence_check(sys: RewriteSystem, S, t, fuel: int | None = None) -> LabReport:
    """Every pair of distinct one-step reducts of t must rejoin; since
    the unions at hand terminate, joinability is checked by comparing
    normal forms."""
    rep = LabReport(f"peak({sys.name})", samples=1)
    nfs = {}
    for u, _ in reducts(sys, S, t):
        nfs[u] = normalize(sys, S, u, fuel=fuel)[0]
    distinct = sorted(set(nfs.values()))
    if len(distinct) > 1:
        rep.add_failure(
            f"{_pt(t)} has reducts with distinct normal forms "
            + " / ".join(_pt(n) for n in distinct)
        )
    return rep


def scalar_one_steps(sys: RewriteSystem, S, t) -> list:
    """One-step scalar reducts of t (at maximal scalar positions)."""
    return [u for u, step in reducts(sys, S, t) if step.kind == "S"]


def rule_one_steps(sys: RewriteSystem, t) -> list:
    return [u for u, _ in reducts(sys, None, t)]


def commutation_check(sys: RewriteSystem, S, t, fuel: int = 32) -> LabReport:
    """For each rule reduct u1 and scalar reduct u2 of t, search for a
    term w with u1 S* w (chains capped by fuel) and u2 -> w in one rule
    step.  Vacuously passes when t has no scalar redex."""
    rep = LabReport(f"commutation({sys.name},{S.name})", samples=1)
    r_reds = rule_one_steps(sys, t)
    s_reds = scalar_one_steps(sys, S, t)
    for u2 in s_reds:
        targets = set(rule_one_steps(sys, u2))
        for u1 in r_reds:
            if not _s_star_reaches(sys, S, u1, targets, fuel):
                rep.add_failure(
                    f"peak at {_pt(t)}: rule reduct {_pt(u1)} and scalar reduct "
                    f"{_pt(u2)} do not commute"
                )
    return rep


def _s_star_reaches(sys: RewriteSystem, S, start, targets: set, fuel: int) -> bool:
    seen = {start}
    frontier = [start]
    for _ in range(fuel):
        if seen & targets:
            return True
        nxt = []
        for u in frontier:
            for v in scalar_one_steps(sys, S, u):
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        if not nxt:
            break
        frontier = nxt
    return bool(seen & targets)


def subsumption_check(S: ScalarSystem, s0sys: RewriteSystem, t) -> LabReport:
    """Every one-step s0 reduct of the closed scalar term t must have
    the same S-normal form as t."""
    if terms.free_vars(t):
        raise SortError("subsumption_check expects a closed term")
    rep = LabReport(f"subsumption({S.name},{s0sys.name})", samples=1)
    nf = s_normalize(S, t)
    for u, _ in reducts(s0sys, None, t):
        if s_normalize(S, u) != nf:
            rep.add_failure(
                f"{_pt(t)} -s0-> {_pt(u)} changes the {S.name}-normal form"
            )
    return rep


def unique_nf_check(sys: RewriteSystem, S, t, k: int = 10, seed: int = 0) -> LabReport:
    """k random-strategy normal forms plus the leftmost-innermost one
    must be pairwise identical modulo AC (semi-open t)."""
    rep = LabReport(f"unique-nf({sys.name},{S.name})", samples=1, seed=seed)
    base = normalize(sys, S, t)[0]
    for i in range(k):
        got = normalize(sys, S, t, strategy="random", seed=seed + i)[0]
        if got != base:
            rep.add_failure(
                f"{_pt(t)}: strategy seed {seed + i} gives {_pt(got)}, "
                f"leftmost-innermost gives {_pt(base)}"
            )
    return rep


# ---------------------------------------------------------------------------
# seeded term generator


GEN_EVARS = tuple(var(f"x{i}", Sort.E) for i in range(1, 5))
GEN_FVARS = tuple(var(f"y{i}", Sort.F) for i in range(1, 5))
GEN_KVARS = tuple(var(v, Sort.K) for v in "lmn")

#: Free vector constants (base vectors) for the extended-language runs.
GEN_CONSTANTS = {"a": Sort.E, "b": Sort.E, "c": Sort.F, "d": Sort.F}
CONST_SIG = DEFAULT_SIG.with_constants(GEN_CONSTANTS)

_DEFAULT_LITS = builtin_scalar("q").lits


@dataclass(frozen=True)
class GenOptions:
    semi_open: bool = True
    allow_constants: bool = False
    lits: tuple = _DEFAULT_LITS
    evars: tuple = GEN_EVARS
    fvars: tuple = GEN_FVARS


def gen_term(
    sig: Signature,
    sort: Sort,
    size: int,
    seed: int,
    *,
    semi_open: bool = True,
    allow_constants: bool = False,
    lits: tuple = _DEFAULT_LITS,
    evars: tuple = GEN_EVARS,
    fvars: tuple = GEN_FVARS,
    rng: random.Random | None = None,
):
    """Deterministic random well-sorted term with at most `size` nodes.

    semi_open suppresses scalar variables; allow_constants draws the
    free vector constants of CONST_SIG (pass CONST_SIG as sig); lits is
    the scalar vocabulary (restrict to a scalar system's literals when
    normalizing under it); evars/fvars are the variable pools.  Terms of
    sort G use only E- and F-sorted variables, matching the tensor
    fragment whose normal forms are classified.
    """
    if rng is None:
        rng = random.Random(seed)
    opts = GenOptions(
        semi_open, allow_constants, tuple(Fraction(v) for v in lits), tuple(evars), tuple(fvars)
    )
    return _gen(sig, sort, max(size, 1), rng, opts)


def _gen(sig, sort, n, rng, o: GenOptions):
    if sort == Sort.K:
        if n > 2 and rng.random() >= 0.35:
            sym = rng.choice(("+K", "*K"))
            return _gen_nary(sig, sym, Sort.K, n, rng, o)
        if not o.semi_open and rng.random() < 0.4:
            return rng.choice(GEN_KVARS)
        return lit(rng.choice(o.lits))

    if sort == Sort.G:
        if n >= 3 and rng.random() < 0.97:
            r = rng.random()
            if r < 0.45:
                return app(
                    "@",
                    (
                        _gen(sig, Sort.E, max(1, (n - 1) // 2), rng, o),
                        _gen(sig, Sort.F, max(1, (n - 1) // 2), rng, o),
                    ),
                    sig,
                )
            if r < 0.75:
                return _gen_nary(sig, "+G", Sort.G, n, rng, o)
            return app(
                ".G",
                (
                    _gen(sig, Sort.K, max(1, (n - 1) // 3), rng, o),
                    _gen(sig, Sort.G, max(1, 2 * (n - 1) // 3), rng, o),
                ),
                sig,
            )
        return zero(Sort.G)

    # sorts E and F (compound nodes need at least 3 nodes of budget)
    if n <= 2 or rng.random() < 0.22:
        if rng.random() < 0.12:
            return zero(sort)
        choices = list(o.evars if sort == Sort.E else o.fvars)
        if o.allow_constants:
            choices += [app(name, (), sig) for name, cs in GEN_CONSTANTS.items() if cs == sort]
        return rng.choice(choices)
    if rng.random() < 0.55:
        return _gen_nary(sig, f"+{sort.name}", sort, n, rng, o)
    return app(
        f".{sort.name}",
        (
            _gen(sig, Sort.K, max(1, (n - 1) // 3), rng, o),
            _gen(sig, sort, max(1, 2 * (n - 1) // 3), rng, o),
        ),
        sig,
    )


def _gen_nary(sig, sym, argsort, n, rng, o: GenOptions):
    k = rng.randint(2, 3) if n >= 7 else 2
    budget = n - 1
    parts = []
    for i in range(k, 0, -1):
        take = max(1, budget // i) if i > 1 else max(1, budget)
        take = rng.randint(max(1, take // 2), take) if i > 1 else take
        parts.append(take)
        budget -= take
    return app(sym, tuple(_gen(sig, argsort, p, rng, o) for p in parts), sig)


# ---------------------------------------------------------------------------
# the key-lemma harness


@dataclass(frozen=True)
class KeyLemmaConfig:
    samples: int = 300
    seed: int = 42
    max_size: int = 10


def key_lemma_report(
    sys: RewriteSystem, S: ScalarSystem, s0sys: RewriteSystem, config: KeyLemmaConfig
) -> LabReport:
    """Sampled evidence for the hypotheses of the modular-confluence
    lemma: S terminating + confluent with the scalar axioms (the
    requirements check), termination of the union via the measures,
    confluence of the union with s0 via peak joinability, subsumption of
    s0 by S, and commutation of the rules with S-chains."""
    rng = random.Random(config.seed)
    gsort = Sort.G if any(r.id == "tensor-zero-left" for r in sys.rules) else Sort.E
    n = config.samples

    req = scalar_requirements_check(S, samples=min(n, 200), seed=config.seed)
    req_rep = LabReport(f"requirements({S.name})", samples=req.samples, seed=req.seed)
    if not req.passed:
        req_rep.failures.extend(req.failures or ["requirements check failed"])

    term_rep = LabReport(f"termination({sys.name},{S.name})", samples=n, seed=config.seed)
    s0 = builtin_scalar("s0")
    conf_rep = LabReport(f"peaks({sys.name},s0)", samples=n, seed=config.seed)
    comm_rep = LabReport(f"commutation({sys.name},{S.name})", samples=n, seed=config.seed)
    sub_rep = LabReport(f"subsumption({S.name},s0)", samples=n, seed=config.seed)

    from vecnorm.scalars import gen_closed_scalar

    for i in range(n):
        sort = gsort if i % 3 == 0 else Sort.E
        t = gen_term(DEFAULT_SIG, sort, rng.randint(3, config.max_size), 0, lits=S.lits, rng=rng)
        try:
            nf, trace = normalize(sys, S, t)
            verdict = check_trace_measures(trace)
            if not verdict.passed:
                term_rep.add_failure(f"measure violated along trace of {_pt(t)}")
        except terms.FuelError:
            term_rep.add_failure(f"fuel exhausted on {_pt(t)}")
        conf_rep = conf_rep.merge(local_confluence_check(sys, s0, t))
        open_t = gen_term(
            DEFAULT_SIG, sort, rng.randint(3, config.max_size), 0,
            semi_open=False, lits=S.lits, rng=rng,
        )
        comm_rep = comm_rep.merge(commutation_check(sys, S, open_t))
        closed = gen_closed_scalar(rng, S.lits, rng.randint(1, 9))
        sub_rep = sub_rep.merge(subsumption_check(S, s0sys, closed))

    for rep in (term_rep, conf_rep, comm_rep, sub_rep):
        rep.samples = n
    out = LabReport(f"keylemma({sys.name},{S.name})", samples=n, seed=config.seed)
    out.sections = [req_rep, term_rep, conf_rep, sub_rep, comm_rep]
    return out


# ---------------------------------------------------------------------------
# named suites (shared by the CLI `check` command and the acceptance run)


def suite_rules(samples: int = 200, seed: int = 1) -> LabReport:
    """Every rule of r and rprime and the AC axioms denote equalities:
    in Q^3, in the 2x3 tensor model, and (for the two distribution
    rules) in the two-point min/max model, exhaustively."""
    from vecnorm import models

    out = LabReport("rules", samples=samples, seed=seed)
    out.sections = [
        models.model_validity_check(vector_system("r"), models.q_model(3), samples, seed),
        models.model_validity_check(
            vector_system("rprime"), models.tensor_model(2, 3), samples, seed
        ),
        models.model_validity_check(
            models.distribution_example_system(),
            models.scalar_model(models.min_max_carrier()),
            samples,
            seed,
        ),
    ]
    return out


def suite_measures(samples: int = 1000, seed: int = 0) -> LabReport:
    """Generated terms normalize without fuel exhaustion and every trace
    obeys the measures: rule steps strictly decrease measure_vec, scalar
    steps preserve it, and s0-only scalar traces strictly decrease
    measure_s0."""
    rng = random.Random(seed)
    q = builtin_scalar("q")
    r, rp = vector_system("r"), vector_system("rprime")
    s0sys = s0_rules()
    out = LabReport("measures", samples=samples, seed=seed)
    for i in range(samples):
        kind = i % 5
        if kind == 3:
            sys_, S, sort = rp, q, Sort.G
        elif kind == 4:
            sys_, S, sort = s0sys, None, Sort.K
        else:
            sys_, S, sort = r, q, Sort.E
        t = gen_term(
            DEFAULT_SIG, sort, rng.randint(2, 30), 0,
            semi_open=(sort != Sort.K), rng=rng,
        )
        try:
            _, trace = normalize(sys_, S, t)
        except terms.FuelError:
            out.add_failure(f"fuel exhausted on {_pt(t)} under {sys_.name}")
            continue
        verdict = check_trace_measures(trace)
        if not verdict.passed:
            out.add_failure(f"measure violated along trace of {_pt(t)} under {sys_.name}")
    return out


def suite_confluence(samples: int = 300, seed: int = 0, strategies: int = 10) -> LabReport:
    """One-step peaks of r/rprime joined with q and with s0 all rejoin,
    and `strategies` random strategies agree modulo AC with
    leftmost-innermost; includes runs over the signature extended with
    free vector constants."""
    rng = random.Random(seed)
    q = builtin_scalar("q")
    s0 = builtin_scalar("s0")
    r, rp = vector_system("r"), vector_system("rprime")
    peaks_q = LabReport("peaks-q", seed=seed)
    peaks_s0 = LabReport("peaks-s0", seed=seed)
    nfs = LabReport("strategy-independence", seed=seed)
    for i in range(samples):
        sort = Sort.G if i % 2 else Sort.E
        sys_ = rp if sort == Sort.G else r
        consts = i % 5 == 0
        t = gen_term(
            CONST_SIG if consts else DEFAULT_SIG,
            sort,
            rng.randint(7, 20 if sort == Sort.E else 16),
            0,
            allow_constants=consts,
            rng=rng,
        )
        peaks_q = peaks_q.merge(local_confluence_check(sys_, q, t))
        if i % 4 == 3:
            # the union with s0 is confluent on all terms, so exercise it
            # on open scalars too
            t_s0 = gen_term(
                DEFAULT_SIG, sort, rng.randint(5, 12), 0, semi_open=False, rng=rng
            )
            peaks_s0 = peaks_s0.merge(local_confluence_check(sys_, s0, t_s0))
        else:
            peaks_s0 = peaks_s0.merge(local_confluence_check(sys_, s0, t))
        nfs = nfs.merge(unique_nf_check(sys_, q, t, k=strategies, seed=seed + i))
    out = LabReport("confluence", samples=samples, seed=seed)
    out.sections = [peaks_q, peaks_s0, nfs]
    return out


def suite_keylemma(samples: int = 300, seed: int = 42) -> LabReport:
    """The key-lemma hypotheses for r and rprime with scalars q, the
    requirements check for q and f2, and rejection of the deliberately
    broken scalar system 1*l -> 0."""
    from vecnorm.engine import make_rule
    from vecnorm.scalars import from_rules

    half = max(1, samples // 2)
    cfg = KeyLemmaConfig(samples=half, seed=seed)
    out = LabReport("keylemma", samples=samples, seed=seed)
    out.sections = [
        key_lemma_report(vector_system("r"), builtin_scalar("q"), s0_rules(), cfg),
        key_lemma_report(vector_system("rprime"), builtin_scalar("q"), s0_rules(), cfg),
    ]

    f2 = builtin_scalar("f2")
    f2_req = scalar_requirements_check(f2, samples=min(samples, 200), seed=seed)
    f2_rep = LabReport("requirements(f2)", samples=f2_req.samples, seed=seed)
    if not f2_req.passed:
        f2_rep.failures.extend(f2_req.failures or ["requirements check failed"])
    sub_f2 = LabReport("subsumption(f2,s0)", seed=seed)
    rng = random.Random(seed)
    from vecnorm.scalars import gen_closed_scalar

    for _ in range(min(samples, 200)):
        closed = gen_closed_scalar(rng, f2.lits, rng.randint(1, 9))
        sub_f2 = sub_f2.merge(subsumption_check(f2, s0_rules(), closed))
    out.sections.extend([f2_rep, sub_f2])

    broken = from_rules(
        RewriteSystem(
            "broken",
            (make_rule("broken.1", app("*K", (lit(1), var("l", Sort.K))), lit(0)),),
            frozenset({"+K", "*K"}),
        )
    )
    broken_req = scalar_requirements_check(broken, samples=min(samples, 60), seed=seed)
    neg = LabReport("broken-scalar-rejected", samples=broken_req.samples, seed=seed)
    if broken_req.passed:
        neg.add_failure("the broken system 1*l -> 0 passed the requirements check")
    out.sections.append(neg)
    return out


def _equiv_variant(t, sort: Sort, rng: random.Random, sys, S):
    """A term denotationally equal to t: forward rule steps and identity
    expansions (1.v, v + 0)."""
    from vecnorm.terms import app as mk

    for _ in range(rng.randint(1, 3)):
        kind = rng.random()
        if kind < 0.4:
            rs = reducts(sys, S, t)
            if rs:
                t = rs[rng.randrange(len(rs))][0]
        elif kind < 0.7:
            t = mk(f".{sort.name}", (lit(1), t))
        else:
            t = mk(f"+{sort.name}", (t, zero(sort)))
    return t


def classification_report(samples: int = 500, seed: int = 0) -> LabReport:
    """Normalized semi-open terms land in the classified shape: zero, or
    a sum of distinct atoms with literal coefficients that are neither 0
    nor 1 (variable pairs under the bilinear symbol for sort G)."""
    from vecnorm import models

    rng = random.Random(seed)
    q = builtin_scalar("q")
    r, rp = vector_system("r"), vector_system("rprime")
    classify = LabReport("classification", samples=samples, seed=seed)
    for i in range(samples):
        sort = Sort.G if i * 5 >= samples * 3 else Sort.E  # 3/5 E, 2/5 G
        sys_ = rp if sort == Sort.G else r
        t = gen_term(DEFAULT_SIG, sort, rng.randint(2, 14), 0, rng=rng)
        nf = normalize(sys_, q, t)[0]
        if not models.classify_nf(nf):
            classify.add_failure(f"normal form {_pt(nf)} of {_pt(t)} is unclassified")
    return classify


def triangle_report(samples: int = 500, seed: int = 0) -> LabReport:
    """The universality triangle: equality of normal forms modulo AC,
    equality of denotations under the canonical assignment, and equality
    of decompositions agree on every generated pair; decompositions
    equal the evaluated coordinates."""
    from vecnorm import models

    rng = random.Random(seed)
    q = builtin_scalar("q")
    r, rp = vector_system("r"), vector_system("rprime")

    triangle = LabReport("universality-triangle", samples=samples, seed=seed)
    for i in range(samples):
        tensor = i % 2 == 1
        if tensor:
            evars, fvars = GEN_EVARS[:2], GEN_FVARS[:2]
            sort, sys_ = Sort.G, rp
            M = models.tensor_model(2, 2)
        else:
            n = rng.randint(1, 4)
            evars, fvars = GEN_EVARS[:n], ()
            sort, sys_ = Sort.E, r
            M = models.q_model(n)
        t = gen_term(DEFAULT_SIG, sort, rng.randint(2, 10), 0, evars=evars, fvars=fvars, rng=rng)
        if rng.random() < 0.5:
            u = _equiv_variant(t, sort, rng, sys_, q)
        else:
            u = gen_term(DEFAULT_SIG, sort, rng.randint(2, 10), 0, evars=evars, fvars=fvars, rng=rng)
        verdict = models.universality_check(t, u, evars, fvars, M, sys_, q)
        if not verdict.coherent:
            triangle.add_failure(
                f"triangle disagrees on {_pt(t)} vs {_pt(u)}: nf={verdict.nf_equal} "
                f"denot={verdict.denot_equal} decomp={verdict.decomp_equal}"
            )
        nf = normalize(sys_, q, t)[0]
        phi = models.canonical_assignment(evars, fvars, M)
        if models.decompose(nf, evars, fvars) != models.eval_term(t, phi, M):
            triangle.add_failure(f"decomposition of {_pt(nf)} differs from its coordinates")
    return triangle


def suite_universality(samples: int = 500, seed: int = 0) -> LabReport:
    """Classification plus the universality triangle."""
    out = LabReport("universality", samples=samples, seed=seed)
    out.sections = [classification_report(samples, seed), triangle_report(samples, seed)]
    return out


SUITES = {
    "rules": suite_rules,
    "measures": suite_measures,
    "confluence": suite_confluence,
    "keylemma": suite_keylemma,
    "universality": suite_universality,
}

SUITE_DEFAULTS = {
    "rules": (200, 1),
    "measures": (1000, 0),
    "confluence": (300, 0),
    "keylemma": (300, 42),
    "universality": (500, 0),
}


def run_suite(name: str, samples: int | None = None, seed: int | None = None) -> list[LabReport]:
    """Run one named suite, or all of them; returns one report per suite."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        if n not in SUITES:
            raise ValueError(f"unknown suite {n!r} (expected {', '.join(SUITES)} or all)")
        d_samples, d_seed = SUITE_DEFAULTS[n]
        out.append(SUITES[n](samples if samples is not None else d_samples,
                             seed if seed is not None else d_seed))
    return out
