"""Built-in and user-defined scalar rewrite systems.

A scalar system rewrites closed sort-K terms and is expected to be
terminating and ground confluent with 0 and 1 normal, and to identify
the eight field-like normal-form pairs (unit, annihilator, unit of
multiplication, distribution, associativity and commutativity of + and
*).  None of that is assumed: scalar_requirements_check probes every
condition on seeded samples, and the CLI refuses unchecked user systems.

Built-ins:
  q   constant folding of exact rationals; one step folds one pair of
      literals inside one + or * node
  s0  the four-rule kernel (0+l -> l, 0*l -> 0, 1*l -> l, distribution)
      with + and * AC
  f2  the two-element field: 0+l -> l, 1+1 -> 0, 0*l -> 0, 1*l -> l
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from vecnorm import engine, terms
from vecnorm._backend import kernel as _k
from vecnorm.engine import RewriteSystem, make_rule, rule_applications
from vecnorm.terms import FuelError, Sort, VecnormError, app, lit, var

AC_K = frozenset({"+K", "*K"})


class OpenTermError(VecnormError):
    """s_normalize needs a closed term."""


@dataclass(frozen=True)
class ScalarSystem:
    """A named scalar rewrite system.

    root_stepper enumerates one-step reducts at the root of a node;
    step() extends it to every position of a scalar term.  lits is the
    literal vocabulary the system speaks (used by generators; q speaks
    all rationals, f2 only 0 and 1).
    """

    name: str
    ac: frozenset[str]
    root_stepper: Callable
    lits: tuple[Fraction, ...] = (Fraction(0), Fraction(1))

    def root_steps(self, t) -> list:
        return sorted(set(self.root_stepper(t)))

    def first_root_step(self, t):
        """First reduct in enumeration order, or None.  Lazy: forcing the
        complete match set is exponential on wide AC nodes."""
        for r in self.root_stepper(t):
            return r
        return None

    def step(self, t) -> set:
        """All one-step reducts of the scalar term t, at any position."""
        out = set()
        for path, sub, _ in engine.positions(t):
            for red in self.root_steps(sub):
                out.add(engine.splice(t, path, red, self.ac))
        return out


def _q_fold(t):
    if t[1] != terms.APP:
        return
    sym = t[2]
    if sym == "+K":
        op = Fraction.__add__
    elif sym == "*K":
        op = Fraction.__mul__
    else:
        return
    args = t[4]
    lits = [a for a in args if a[1] == terms.LIT]
    if len(lits) < 2:
        return
    seen = set()
    for i in range(len(lits)):
        for j in range(i + 1, len(lits)):
            pair = (lits[i][2], lits[j][2])
            if pair in seen:
                continue
            seen.add(pair)
            rest = list(args)
            rest.remove(lits[i])
            rest.remove(lits[j])
            rest.append(lit(op(pair[0], pair[1])))
            yield _k.rebuild(t, rest, AC_K)


def _rule_stepper(rules: tuple, ac: frozenset) -> Callable:
    def root(t):
        for rule in rules:
            for result, _, _ in rule_applications(rule, t, ac):
                yield result

    return root


def s0_rules() -> RewriteSystem:
    l, m, n = (var(v, Sort.K) for v in "lmn")
    zero, one = lit(0), lit(1)
    rules = (
        make_rule("s0.add-zero", app("+K", (zero, l)), l),
        make_rule("s0.mul-zero", app("*K", (zero, l)), zero),
        make_rule("s0.mul-one", app("*K", (one, l)), l),
        make_rule(
            "s0.distribute",
            app("*K", (l, app("+K", (m, n)))),
            app("+K", (app("*K", (l, m)), app("*K", (l, n)))),
        ),
    )
    return RewriteSystem("s0", rules, AC_K)


def f2_rules() -> RewriteSystem:
    l = var("l", Sort.K)
    zero, one = lit(0), lit(1)
    rules = (
        make_rule("f2.add-zero", app("+K", (zero, l)), l),
        make_rule("f2.one-one", app("+K", (one, one)), zero),
        make_rule("f2.mul-zero", app("*K", (zero, l)), zero),
        make_rule("f2.mul-one", app("*K", (one, l)), l),
    )
    return RewriteSystem("f2", rules, AC_K)


_Q_LITS = tuple(
    Fraction(v) for v in (0, 1, -1, 2, 3, 4, 5, "1/2", "3/4", "-2/3", "5/2")
)


def from_rules(rs: RewriteSystem, lits: tuple = (Fraction(0), Fraction(1))) -> ScalarSystem:
    """Wrap a sort-K rewrite system (typically parsed from a rule file)
    as a scalar system.  Satisfying the scalar requirements is not
    assumed; run scalar_requirements_check before trusting it."""
    for rule in rs.rules:
        if rule.lhs[0] != Sort.K:
            raise terms.SortError(f"rule {rule.id} is not scalar-sorted")
    return ScalarSystem(rs.name, rs.ac | AC_K, _rule_stepper(rs.rules, rs.ac | AC_K), lits)


def builtin_scalar(name: str) -> ScalarSystem:
    if name == "q":
        return ScalarSystem("q", AC_K, _q_fold, _Q_LITS)
    if name == "s0":
        return from_rules(s0_rules())
    if name == "f2":
        return from_rules(f2_rules())
    raise ValueError(f"unknown scalar system {name!r} (expected q, s0 or f2)")


def s_normalize(S: ScalarSystem, t, fuel: int | None = None):
    """The S-normal form of a closed scalar term, by leftmost-innermost
    iteration of S's step relation.  Unique for systems that pass the
    requirements check.  Raises FuelError when the budget runs out,
    which signals a non-terminating user system."""
    if t[0] != Sort.K:
        raise terms.SortError("s_normalize expects a scalar term")
    if terms.free_vars(t):
        raise OpenTermError("s_normalize expects a closed term")
    return _s_reduce(S, t, fuel)


def _s_reduce(S: ScalarSystem, t, fuel: int | None):
    if fuel is None:
        from vecnorm.lab import measure_s0

        fuel = measure_s0(t) + 64
    cur = _k.canon(t, S.ac)
    for _ in range(fuel):
        nxt = _s_first_step(S, cur)
        if nxt is None:
            return cur
        cur = nxt
    raise FuelError(f"no {S.name}-normal form within {fuel} steps")


def _s_first_step(S: ScalarSystem, t):
    if t[1] == terms.VAR:
        return None
    if t[1] == terms.APP:
        for i, a in enumerate(t[4]):
            b = _s_first_step(S, a)
            if b is not None:
                return _k.rebuild(t, t[4][:i] + (b,) + t[4][i + 1 :], S.ac)
    return S.first_root_step(t)


# ---------------------------------------------------------------------------
# the requirements check


_PAIR_NAMES = (
    "0+l = l",
    "0*l = 0",
    "1*l = l",
    "l*(m+n) = (l*m)+(l*n)",
    "(l+m)+n = l+(m+n)",
    "l+m = m+l",
    "(l*m)*n = l*(m*n)",
    "l*m = m*l",
)


def _pair_templates():
    l, m, n = (var(v, Sort.K) for v in "lmn")
    A = lambda sym, *args: app(sym, args)
    return (
        (A("+K", lit(0), l), l),
        (A("*K", lit(0), l), lit(0)),
        (A("*K", lit(1), l), l),
        (A("*K", l, A("+K", m, n)), A("+K", A("*K", l, m), A("*K", l, n))),
        (A("+K", A("+K", l, m), n), A("+K", l, A("+K", m, n))),
        (A("+K", l, m), A("+K", m, l)),
        (A("*K", A("*K", l, m), n), A("*K", l, A("*K", m, n))),
        (A("*K", l, m), A("*K", m, l)),
    )


@dataclass
class RequirementsReport:
    """Verdicts for the scalar-system requirements: the eight
    normal-form pairs, normality of 0 and 1, sampled termination and
    sampled ground confluence."""

    system: str
    samples: int
    seed: int
    pair_verdicts: dict[str, bool] = field(default_factory=dict)
    zero_one_normal: bool = True
    termination: bool = True
    ground_confluence: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            all(self.pair_verdicts.values())
            and self.zero_one_normal
            and self.termination
            and self.ground_confluence
        )

    def lines(self) -> list[str]:
        out = [f"scalar requirements for {self.system}: samples={self.samples} seed={self.seed}"]
        for name in _PAIR_NAMES:
            ok = self.pair_verdicts.get(name, False)
            out.append(f"  pair {name}: {'ok' if ok else 'FAIL'}")
        out.append(f"  0 and 1 normal: {'ok' if self.zero_one_normal else 'FAIL'}")
        out.append(f"  termination (sampled): {'ok' if self.termination else 'FAIL'}")
        out.append(f"  ground confluence (sampled): {'ok' if self.ground_confluence else 'FAIL'}")
        for f in self.failures[:10]:
            out.append(f"  witness: {f}")
        out.append(f"  overall: {'PASS' if self.passed else 'FAIL'}")
        return out


def gen_closed_scalar(rng: random.Random, lits: tuple, size: int):
    """Random closed scalar term over +, * and the given literals."""
    if size <= 1:
        return lit(rng.choice(lits))
    sym = rng.choice(("+K", "*K"))
    k = rng.randint(2, 3) if size >= 3 else 2
    cut = max(1, (size - 1) // k)
    return app(sym, tuple(gen_closed_scalar(rng, lits, cut) for _ in range(k)))


def scalar_requirements_check(S: ScalarSystem, samples: int = 200, seed: int = 0) -> RequirementsReport:
    """Probe the scalar-system requirements on `samples` random triples
    of closed terms.  Failures never raise; they land in the report."""
    rng = random.Random(seed)
    rep = RequirementsReport(S.name, samples, seed)
    rep.pair_verdicts = {name: True for name in _PAIR_NAMES}

    for c in (lit(0), lit(1)):
        if S.root_steps(c):
            rep.zero_one_normal = False
            rep.failures.append(f"{c[2]} is not normal")

    templates = _pair_templates()
    lvar, mvar, nvar = (var(v, Sort.K) for v in "lmn")
    for _ in range(samples):
        sigma = {
            lvar: gen_closed_scalar(rng, S.lits, rng.randint(1, 5)),
            mvar: gen_closed_scalar(rng, S.lits, rng.randint(1, 5)),
            nvar: gen_closed_scalar(rng, S.lits, rng.randint(1, 5)),
        }
        for name, (a, b) in zip(_PAIR_NAMES, templates):
            try:
                na = s_normalize(S, terms.substitute(a, sigma, S.ac))
                nb = s_normalize(S, terms.substitute(b, sigma, S.ac))
            except FuelError:
                rep.termination = False
                rep.failures.append(f"fuel exhausted on pair {name}")
                continue
            if na != nb:
                if rep.pair_verdicts[name]:
                    from vecnorm.syntax import print_term

                    rep.failures.append(
                        f"pair {name} with l={print_term(sigma[lvar])}"
                        f" m={print_term(sigma[mvar])} n={print_term(sigma[nvar])}"
                    )
                rep.pair_verdicts[name] = False

        t = gen_closed_scalar(rng, S.lits, rng.randint(1, 7))
        try:
            nf = s_normalize(S, t)
            for red in S.step(t):
                if s_normalize(S, red) != nf:
                    rep.ground_confluence = False
                    from vecnorm.syntax import print_term

                    rep.failures.append(f"peak at {print_term(t)} does not rejoin")
        except FuelError:
            rep.termination = False

    return rep
