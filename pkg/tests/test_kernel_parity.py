"""The compiled kernel and the interpreted fallback must be observably
identical; the build is allowed to swap them freely."""

import random

import pytest

from vecnorm import _backend
from vecnorm.engine import vector_system
from vecnorm.lab import gen_term
from vecnorm.terms import DEFAULT_SIG, Sort, var

compiled = _backend.load_kernel()
pure = _backend.load_pure()

needs_ext = pytest.mark.skipif(
    not _backend.is_compiled(compiled),
    reason="extension not built; both kernels are the interpreted module",
)


def workload():
    rng = random.Random(42)
    rules = vector_system("rprime").rules
    ac = vector_system("rprime").ac
    for i in range(150):
        sort = (Sort.E, Sort.G, Sort.K)[i % 3]
        t = gen_term(DEFAULT_SIG, sort, rng.randint(2, 12), 0, semi_open=bool(i % 2), rng=rng)
        rule = rules[rng.randrange(len(rules))]
        yield t, rule, ac


@needs_ext
def test_kernels_loaded_from_different_files():
    assert compiled.__file__ != pure.__file__


@needs_ext
def test_canon_and_subst_parity():
    u = gen_term(DEFAULT_SIG, Sort.E, 10, 7)
    for t, _, ac in workload():
        assert compiled.canon(t, ac) == pure.canon(t, ac)
        if t[0] == Sort.E:
            sigma = {var("x1", Sort.E): t}
            assert compiled.subst(u, sigma, ac) == pure.subst(u, sigma, ac)


@needs_ext
def test_match_enumeration_parity():
    for t, rule, ac in workload():
        got_c = sorted(
            (sorted(s.items()), r)
            for s, r in _ac_matches(compiled, rule.lhs, t, ac)
        )
        got_p = sorted(
            (sorted(s.items()), r)
            for s, r in _ac_matches(pure, rule.lhs, t, ac)
        )
        assert got_c == got_p


def _ac_matches(kernel, lhs, subject, ac):
    if lhs[1] == 2 and lhs[2] in ac:
        if subject[1] == 2 and subject[2] == lhs[2]:
            yield from kernel.match_ac(lhs[4], subject[4], subject[0], lhs[2], ac, {})
    else:
        for sigma in kernel.match(lhs, subject, ac):
            yield sigma, ()
