"""Measures, trace verdicts, the lab checks and the term generator."""

import random

import pytest

from vecnorm import terms
from vecnorm.engine import Step, Trace, normalize, reducts, vector_system
from vecnorm.lab import (
    CONST_SIG,
    KeyLemmaConfig,
    LabReport,
    check_trace_measures,
    commutation_check,
    gen_term,
    key_lemma_report,
    local_confluence_check,
    measure_s0,
    measure_vec,
    subsumption_check,
    unique_nf_check,
)
from vecnorm.scalars import builtin_scalar, from_rules, s0_rules
from vecnorm.syntax import parse_system, parse_term
from vecnorm.terms import DEFAULT_SIG, Sort, SortError, app, lit, var, zero

R = vector_system("r")
RP = vector_system("rprime")
Q = builtin_scalar("q")
x, y = var("x", Sort.E), var("y", Sort.E)
lam = var("l", Sort.K)


# ---------------------------------------------------------------------------
# measures


def test_measure_vec_examples():
    assert measure_vec(zero(Sort.E)) == 0
    t = app("+E", (app(".E", (lit(2), x)), app(".E", (lit(3), x))))
    assert measure_vec(t) == 4
    assert measure_vec(app("@", (x, var("y", Sort.F)))) == 4
    assert measure_vec(x) == 0


def test_measure_vec_flattened_sums_match_pairwise_application():
    # 2(k-1) + sum of parts, however the binary tree is arranged
    t3 = app("+E", (x, y, var("z", Sort.E)))
    assert measure_vec(t3) == 4


def test_measure_vec_rejects_scalars():
    with pytest.raises(SortError):
        measure_vec(lit(2))


def test_measure_s0_examples():
    assert measure_s0(lit(0)) == 2
    assert measure_s0(app("+K", (lit(0), lit(1)))) == 5
    assert measure_s0(app("*K", (lit(1), lam))) == 4
    with pytest.raises(SortError):
        measure_s0(x)


def test_every_rule_strictly_decreases_measure_vec():
    # rule-by-rule check with variables weighed 0: lhs > rhs must hold
    # for all instances, sampled here over generated substitutions
    rng = random.Random(1)
    for sys_ in (R, RP):
        for rule in sys_.rules:
            for i in range(25):
                sigma = {}
                for v in terms.free_vars(rule.lhs):
                    s = Sort(v[0])
                    if s == Sort.K:
                        sigma[v] = gen_term(DEFAULT_SIG, Sort.K, rng.randint(1, 4), 0, rng=rng)
                    else:
                        sigma[v] = gen_term(DEFAULT_SIG, s, rng.randint(1, 5), 0, rng=rng)
                lhs = terms.substitute(rule.lhs, sigma, sys_.ac)
                rhs = terms.substitute(rule.rhs, sigma, sys_.ac)
                assert measure_vec(lhs) > measure_vec(rhs), rule.id


def test_trace_measures_pass_on_worked_example():
    t = parse_term("vars x y: E; (3.x + 4.y) + 2.x")
    _, trace = normalize(R, Q, t)
    verdict = check_trace_measures(trace)
    assert verdict.passed
    assert any(kind == "R" for kind, *_ in verdict.entries)
    assert any(kind == "S" for kind, *_ in verdict.entries)


def test_empty_trace_passes():
    t = terms.canonicalize(x)
    verdict = check_trace_measures(Trace(t, (), t))
    assert verdict.passed


def test_fake_measure_increasing_step_is_flagged():
    small = app(".E", (lit(5), x))
    big = app("+E", (small, zero(Sort.E)))
    fake = Step("R", "E.add-zero", (), (), None, small, big)
    verdict = check_trace_measures(Trace(small, (fake,), big))
    assert not verdict.passed


# ---------------------------------------------------------------------------
# confluence / commutation / subsumption / unique NF


def test_local_confluence_worked_examples():
    t = app(".E", (lit(1), app("+E", (x, zero(Sort.E)))))
    assert local_confluence_check(R, Q, t).passed
    u = app(".E", (lit(3), app(".E", (lit(5), app("+E", (x, x))))))
    assert local_confluence_check(R, Q, u).passed
    assert local_confluence_check(R, Q, x).passed  # no reducts: vacuous


def test_peaks_need_not_rejoin_outside_semi_open_terms():
    # with scalar *variables* the guarantee genuinely fails: folding acts
    # on literals only, so (l*(m+m)).x and (l*m*2).x stay apart
    u = app(".E", (lam, app(".E", (var("m", Sort.K), app("+E", (x, x))))))
    assert not local_confluence_check(R, Q, u).passed
    # under the s0 kernel the same peak rejoins: distribution applies to
    # open scalars, and the union with s0 is confluent on all terms
    assert local_confluence_check(R, builtin_scalar("s0"), u).passed


def test_commutation_worked_example():
    two = app("+K", (lit(1), lit(1)))
    t = app(".E", (two, app("+E", (x, y))))
    rep = commutation_check(R, Q, t)
    assert rep.passed
    # the peak is real: there is a rule reduct and a scalar reduct
    kinds = {step.kind for _, step in reducts(R, Q, t)}
    assert kinds == {"R", "S"}


def test_commutation_scale_zero_example():
    t = app(".E", (app("+K", (lit(1), lit(1))), zero(Sort.E)))
    assert commutation_check(R, Q, t).passed


def test_commutation_vacuous_without_scalar_redex():
    assert commutation_check(R, Q, app("+E", (x, y))).passed


def test_subsumption_examples():
    s0sys = s0_rules()
    assert subsumption_check(Q, s0sys, app("+K", (lit(0), lit(3)))).passed
    assert subsumption_check(Q, s0sys, app("*K", (lit(2), app("+K", (lit(3), lit(4)))))).passed
    f2 = builtin_scalar("f2")
    assert subsumption_check(f2, s0sys, app("*K", (lit(1), lit(1)))).passed
    with pytest.raises(SortError):
        subsumption_check(Q, s0sys, app("+K", (lam, lit(1))))


def test_unique_nf_on_worked_example():
    t = parse_term("vars x y: E; (3.x + 4.y) + 2.x")
    rep = unique_nf_check(R, Q, t, k=10, seed=3)
    assert rep.passed


def test_unique_nf_tensor_example():
    t = parse_term("vars x1 x2: E y1: F; (x1 + x2) @ (2.y1)")
    assert unique_nf_check(RP, Q, t, k=10, seed=3).passed


# ---------------------------------------------------------------------------
# key lemma harness


def test_key_lemma_all_pass_for_q():
    rep = key_lemma_report(R, Q, s0_rules(), KeyLemmaConfig(samples=60, seed=42))
    assert rep.passed, "\n".join(rep.lines())
    names = [s.name for s in rep.sections]
    assert names == [
        "requirements(q)",
        "termination(r,q)",
        "peaks(r,s0)",
        "subsumption(q,s0)",
        "commutation(r,q)",
    ]


def test_key_lemma_tensor_variant():
    rep = key_lemma_report(RP, Q, s0_rules(), KeyLemmaConfig(samples=40, seed=42))
    assert rep.passed, "\n".join(rep.lines())


def test_key_lemma_flags_broken_scalar():
    broken = from_rules(parse_system("vars l: K\nac + *\nrule 1 * l -> 0\n", name="broken"))
    rep = key_lemma_report(R, broken, s0_rules(), KeyLemmaConfig(samples=25, seed=1))
    assert not rep.passed
    req = rep.sections[0]
    sub = rep.sections[3]
    assert not req.passed or not sub.passed


# ---------------------------------------------------------------------------
# generator


def test_gen_zero_size_gives_leaf():
    for seed in range(10):
        t = gen_term(DEFAULT_SIG, Sort.E, 0, seed)
        assert terms.is_var(t) or t == zero(Sort.E)


def test_gen_deterministic_per_seed():
    for seed in (0, 7, 123):
        a = gen_term(DEFAULT_SIG, Sort.G, 12, seed)
        b = gen_term(DEFAULT_SIG, Sort.G, 12, seed)
        assert a == b


def test_gen_respects_size_bound_and_sort():
    rng = random.Random(0)
    for i in range(200):
        sort = rng.choice(list(Sort))
        size = rng.randint(1, 25)
        t = gen_term(DEFAULT_SIG, sort, size, seed=i)
        assert terms.node_count(t) <= size or size == 0
        assert terms.well_sorted(t, DEFAULT_SIG) == sort


def test_gen_semi_open_has_no_scalar_variables():
    for i in range(100):
        t = gen_term(DEFAULT_SIG, Sort.E, 14, seed=i, semi_open=True)
        assert terms.is_semi_open(t)


def test_gen_scalar_variables_when_not_semi_open():
    found = False
    for i in range(60):
        t = gen_term(DEFAULT_SIG, Sort.E, 14, seed=i, semi_open=False)
        if not terms.is_semi_open(t):
            found = True
            break
    assert found


def test_gen_constants_only_when_enabled():
    const_names = {"a", "b", "c", "d"}

    def uses_const(t):
        if terms.is_app(t):
            return t[2] in const_names or any(uses_const(a) for a in t[4])
        return False

    assert not any(
        uses_const(gen_term(DEFAULT_SIG, Sort.E, 14, seed=i)) for i in range(60)
    )
    assert any(
        uses_const(gen_term(CONST_SIG, Sort.E, 14, seed=i, allow_constants=True))
        for i in range(60)
    )
    for i in range(40):
        t = gen_term(CONST_SIG, Sort.G, 12, seed=i, allow_constants=True)
        assert terms.well_sorted(t, CONST_SIG) == Sort.G


def test_gen_tensor_terms_use_the_bilinear_symbol():
    assert any(
        "@" in str(gen_term(DEFAULT_SIG, Sort.G, 12, seed=i)) for i in range(20)
    )


def test_gen_restricted_vocabulary():
    f2 = builtin_scalar("f2")
    for i in range(50):
        t = gen_term(DEFAULT_SIG, Sort.E, 14, seed=i, lits=f2.lits)

        def lits_of(u):
            if terms.is_lit(u):
                yield u[2]
            elif terms.is_app(u):
                for a in u[4]:
                    yield from lits_of(a)

        assert set(lits_of(t)) <= {0, 1}


# ---------------------------------------------------------------------------
# reports


def test_report_merge_and_summary_format():
    a = LabReport("demo", samples=2, seed=1)
    b = LabReport("demo", samples=3, seed=1, failures=["bad"])
    c = a.merge(b)
    assert c.samples == 5 and not c.passed
    assert a.summary_line() == "demo\tpass\t2\t1"
    assert c.summary_line() == "demo\tfail\t5\t1"
