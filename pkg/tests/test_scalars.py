"""Scalar systems: folding, the s0 kernel, F2, the requirements check."""

import random
from fractions import Fraction

import pytest

from vecnorm.scalars import (
    OpenTermError,
    builtin_scalar,
    f2_rules,
    from_rules,
    gen_closed_scalar,
    s0_rules,
    s_normalize,
    scalar_requirements_check,
)
from vecnorm.syntax import parse_system, parse_term
from vecnorm.terms import FuelError, Sort, app, lit, var

Q = builtin_scalar("q")
S0 = builtin_scalar("s0")
F2 = builtin_scalar("f2")
lam = var("l", Sort.K)


def rational_value(t):
    """Independent oracle: bottom-up exact evaluation of a closed scalar
    term over the rationals."""
    if t[1] == 1:  # literal
        return t[2]
    vals = [rational_value(a) for a in t[4]]
    out = vals[0]
    for v in vals[1:]:
        out = out + v if t[2] == "+K" else out * v
    return out


def test_q_step_folds_a_pair():
    assert Q.step(app("+K", (lit(2), lit(3)))) == {lit(5)}


def test_q_step_folds_inside_wider_nodes():
    t = app("+K", (lit(2), lit(3), lam))
    assert Q.step(t) == {app("+K", (lam, lit(5)))}


def test_q_normalize_equals_rational_evaluation():
    t = app("*K", (lit(2), app("+K", (lit(3), lit(4)))))
    assert s_normalize(Q, t) == lit(14)
    rng = random.Random(17)
    for _ in range(200):
        t = gen_closed_scalar(rng, Q.lits, rng.randint(1, 9))
        assert s_normalize(Q, t) == lit(rational_value(t))


def test_s0_rules_fire():
    assert lam in S0.step(app("*K", (lit(1), lam)))
    assert s_normalize(S0, app("+K", (lit(0), lit(1)))) == lit(1)


def test_s0_distribution():
    t = app("*K", (lam, app("+K", (var("m", Sort.K), var("n", Sort.K)))))
    m, n = var("m", Sort.K), var("n", Sort.K)
    want = app("+K", (app("*K", (lam, m)), app("*K", (lam, n))))
    assert want in S0.step(t)


def test_f2_normalizes_three_ones_to_one():
    t = app("+K", (lit(1), lit(1), lit(1)))
    assert s_normalize(F2, t) == lit(1)


def test_f2_matches_gf2_arithmetic_oracle():
    def f2_value(t):
        if t[1] == 1:
            return int(t[2]) % 2
        vals = [f2_value(a) for a in t[4]]
        out = vals[0]
        for v in vals[1:]:
            out = (out + v) % 2 if t[2] == "+K" else (out * v) % 2
        return out

    rng = random.Random(23)
    for _ in range(200):
        t = gen_closed_scalar(rng, F2.lits, rng.randint(1, 9))
        assert s_normalize(F2, t) == lit(f2_value(t))


def test_zero_and_one_are_normal_for_every_builtin():
    for S in (Q, S0, F2):
        assert S.root_steps(lit(0)) == []
        assert S.root_steps(lit(1)) == []
        assert S.step(lit(0)) == set()


def test_step_preserves_closedness():
    rng = random.Random(31)
    from vecnorm.terms import free_vars

    for _ in range(100):
        t = gen_closed_scalar(rng, Q.lits, rng.randint(2, 8))
        for u in Q.step(t):
            assert not free_vars(u)


def test_s_normalize_rejects_open_terms():
    with pytest.raises(OpenTermError):
        s_normalize(Q, app("+K", (lam, lit(1))))


def test_requirements_pass_for_builtins():
    for S in (Q, F2, S0):
        rep = scalar_requirements_check(S, samples=120, seed=7)
        assert rep.passed, rep.lines()


def test_requirements_reject_broken_system():
    broken = from_rules(parse_system("vars l: K\nac + *\nrule 1 * l -> 0\n", name="broken"))
    rep = scalar_requirements_check(broken, samples=60, seed=7)
    assert not rep.passed
    assert not rep.pair_verdicts["1*l = l"]


def test_requirements_reject_nonterminating_system():
    swap = from_rules(
        parse_system("vars l m: K\nrule l + m -> m + l\n", name="swap")
    )
    rep = scalar_requirements_check(swap, samples=10, seed=7)
    assert not rep.passed
    assert not rep.termination


def test_user_system_from_file_format_roundtrip():
    text = "vars l: K\nac + *\nrule 0 + l -> l\nrule 1 + 1 -> 0\nrule 0 * l -> 0\nrule 1 * l -> l\n"
    S = from_rules(parse_system(text, name="userf2"))
    assert s_normalize(S, app("+K", (lit(1), lit(1)))) == lit(0)
    rep = scalar_requirements_check(S, samples=80, seed=3)
    assert rep.passed


def test_builtin_scalar_unknown_name():
    with pytest.raises(ValueError):
        builtin_scalar("gf3")


def test_fuel_error_mentions_budget():
    loop = from_rules(parse_system("vars l m: K\nrule l + m -> m + l\n", name="loop"))
    with pytest.raises(FuelError):
        s_normalize(loop, app("+K", (lit(2), lit(3))), fuel=5)
