"""Term core: canonical forms, AC equality, substitution, sorting."""

import random
from fractions import Fraction

import pytest

from vecnorm import terms
from vecnorm.terms import (
    DEFAULT_AC,
    DEFAULT_SIG,
    Sort,
    SortError,
    ac_equal,
    app,
    canonicalize,
    lit,
    substitute,
    var,
    well_sorted,
    zero,
)

x = var("x", Sort.E)
y = var("y", Sort.E)
z = var("z", Sort.E)
lam = var("l", Sort.K)


def vsum(*args):
    return app("+E", args)


def scale(k, v):
    return app(".E", (k, v))


def rand_term(rng, sort, depth):
    """Small test-local generator, independent of the package one."""
    if depth == 0:
        if sort == Sort.K:
            return rng.choice([lit(0), lit(1), lit(rng.randint(-3, 5)), var("a", Sort.K)])
        return rng.choice([var(rng.choice("xyz"), sort), zero(sort)])
    if sort == Sort.K:
        sym = rng.choice(["+K", "*K"])
        n = rng.randint(2, 3)
        return app(sym, [rand_term(rng, Sort.K, depth - 1) for _ in range(n)])
    choice = rng.random()
    if choice < 0.5:
        n = rng.randint(2, 3)
        return app(f"+{sort.name}", [rand_term(rng, sort, depth - 1) for _ in range(n)])
    if choice < 0.8:
        return app(
            f".{sort.name}",
            (rand_term(rng, Sort.K, depth - 1), rand_term(rng, sort, depth - 1)),
        )
    if sort == Sort.G:
        return app("@", (rand_term(rng, Sort.E, depth - 1), rand_term(rng, Sort.F, depth - 1)))
    return rand_term(rng, sort, 0)


def test_flattening_collects_nested_sums():
    t = app("+E", (x, app("+E", (y, x))))
    assert t == (Sort.E, terms.APP, "+E", 3, (x, x, y))


def test_canonicalize_no_ac_head_is_identity():
    t = scale(lit(2), x)
    assert canonicalize(t) == t


def test_scalar_sum_sorted_by_term_order():
    t = app("+K", (lit(1), lam))
    # variables order before literals
    assert terms.args_of(t) == (lam, lit(1))


def test_canonicalize_idempotent_on_generated_terms():
    rng = random.Random(7)
    for _ in range(300):
        t = rand_term(rng, rng.choice(list(Sort)), rng.randint(0, 4))
        c = canonicalize(t)
        assert canonicalize(c) == c


def test_ac_equal_commutativity_and_associativity():
    assert ac_equal(vsum(x, y), vsum(y, x))
    assert ac_equal(app("+E", (vsum(x, y), z)), app("+E", (x, vsum(y, z))))
    assert not ac_equal(scale(lit(2), x), scale(lit(3), x))


def test_ac_equal_requires_same_sort():
    with pytest.raises(SortError):
        ac_equal(x, lit(2))


def test_ac_equal_is_congruence_on_generated_terms():
    rng = random.Random(11)
    for _ in range(200):
        t = rand_term(rng, Sort.E, rng.randint(0, 3))
        u = rand_term(rng, Sort.E, rng.randint(0, 3))
        if ac_equal(t, u):
            for ctx in (lambda s: vsum(s, z), lambda s: scale(lit(2), s)):
                assert ac_equal(ctx(t), ctx(u))
        # reflexive / symmetric
        assert ac_equal(t, t)
        assert ac_equal(u, t) == ac_equal(t, u)


def test_ac_axioms_hold_for_every_declared_ac_symbol():
    rng = random.Random(3)
    for sym, info in DEFAULT_SIG.symbols.items():
        if not info.ac:
            continue
        for _ in range(20):
            a = rand_term(rng, info.result, rng.randint(0, 2))
            b = rand_term(rng, info.result, rng.randint(0, 2))
            c = rand_term(rng, info.result, rng.randint(0, 2))
            assert ac_equal(app(sym, (a, app(sym, (b, c)))), app(sym, (app(sym, (a, b)), c)))
            assert ac_equal(app(sym, (a, b)), app(sym, (b, a)))


def test_substitute_examples():
    u = var("u", Sort.E)
    t = scale(lam, u)
    got = substitute(t, {lam: lit(2), u: vsum(x, y)})
    assert got == scale(lit(2), vsum(x, y))

    got = substitute(app("+E", (u, u)), {u: x})
    assert got == (Sort.E, terms.APP, "+E", 2, (x, x))

    assert substitute(u, {}) == u


def test_substitute_flattens_at_ac_heads():
    u = var("u", Sort.E)
    t = vsum(u, y)
    got = substitute(t, {u: vsum(x, z)})
    assert terms.args_of(got) == (x, y, z)


def test_substitute_rejects_ill_sorted_binding():
    u = var("u", Sort.E)
    with pytest.raises(SortError):
        substitute(u, {u: lit(1)})


def test_well_sorted_examples():
    assert well_sorted(scale(lit(2), x)) == Sort.E
    assert well_sorted(app("@", (x, var("y1", Sort.F)))) == Sort.G
    bad = (Sort.E, terms.APP, "+E", 2, (x, lit(2)))
    with pytest.raises(SortError):
        well_sorted(bad)
    with pytest.raises(SortError):
        well_sorted((Sort.E, terms.APP, "bogus", 1, (x,)))


def test_app_checks_sorts_at_construction():
    with pytest.raises(SortError):
        app("+E", (x, lit(2)))
    with pytest.raises(SortError):
        app(".E", (x, x))
    with pytest.raises(SortError):
        app("@", (x, y))  # y has sort E, @ wants F on the right


def test_literal_uniqueness():
    assert lit(Fraction(5, 1)) == lit(5)
    assert lit("3/4")[2] == Fraction(3, 4)


def test_semi_open_and_closed():
    assert terms.is_semi_open(vsum(x, y))
    assert not terms.is_semi_open(scale(lam, x))
    assert terms.is_closed(scale(lit(2), zero(Sort.E)))
