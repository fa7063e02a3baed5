"""Semantic oracle: evaluation in concrete algebras, model validity,
normal-form classification, decomposition, and the universality
equivalences tying them together.

All arithmetic is exact: rational carriers use fractions.Fraction,
finite carriers use explicit operation tables checked exhaustively.
There are no tolerances anywhere because the identities are exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from vecnorm import terms
from vecnorm.engine import RewriteSystem, normalize, vector_system
from vecnorm.terms import Sort, SortError, VecnormError, free_vars


class EvalError(VecnormError):
    """Unbound variable, uninterpreted symbol or dimension mismatch."""


@dataclass(frozen=True)
class ScalarCarrier:
    """Scalar domain: exact rationals, or a finite set with tables."""

    name: str
    add: Callable
    mul: Callable
    zero: object
    one: object
    elements: tuple | None = None  # None: the rationals

    def from_literal(self, value: Fraction):
        if self.elements is None:
            return value
        if value == 0:
            return self.zero
        if value == 1:
            return self.one
        raise EvalError(f"literal {value} has no meaning in carrier {self.name}")


def rationals() -> ScalarCarrier:
    return ScalarCarrier("Q", lambda a, b: a + b, lambda a, b: a * b, Fraction(0), Fraction(1))


def min_max_carrier() -> ScalarCarrier:
    """The two-point lattice with + as min and * as max."""
    return ScalarCarrier("minmax", min, max, 0, 1, elements=(0, 1))


def f2_carrier() -> ScalarCarrier:
    return ScalarCarrier(
        "F2", lambda a, b: (a + b) % 2, lambda a, b: a * b, 0, 1, elements=(0, 1)
    )


@dataclass(frozen=True)
class Model:
    """Interpretation of the signature: a scalar carrier, one dimension
    per vector sort in play, and coordinate-vector semantics for the
    vector symbols.  The bilinear symbol maps basis pairs by
    e_i (x) e'_j = e''_{p(i-1)+j}, which on coordinates is the outer
    product flattened row-major.  `overrides` swaps in alternative
    interpretations (used by negative controls)."""

    carrier: ScalarCarrier = field(default_factory=rationals)
    dims: dict[Sort, int] = field(default_factory=dict)
    overrides: dict[str, Callable] = field(default_factory=dict)

    def zero_vec(self, sort: Sort) -> tuple:
        return (self.carrier.zero,) * self._dim(sort)

    def basis(self, sort: Sort, i: int) -> tuple:
        n = self._dim(sort)
        if not 1 <= i <= n:
            raise EvalError(f"basis index {i} out of range for dimension {n}")
        return tuple(
            self.carrier.one if j == i - 1 else self.carrier.zero for j in range(n)
        )

    def _dim(self, sort: Sort) -> int:
        if sort not in self.dims:
            raise EvalError(f"no dimension configured for sort {sort.name}")
        return self.dims[sort]

    def describe(self) -> str:
        if Sort.G in self.dims:
            return f"{self.carrier.name}^{self.dims[Sort.E]}x{self.dims[Sort.F]}"
        if self.dims:
            dim = self.dims.get(Sort.E, self.dims.get(Sort.F, 0))
            return f"{self.carrier.name}^{dim}"
        return self.carrier.name


def q_model(n: int) -> Model:
    """Q^n with the standard vector-space structure on sort E."""
    return Model(rationals(), {Sort.E: n})


def tensor_model(n: int, p: int, carrier: ScalarCarrier | None = None) -> Model:
    """K^n, K^p and their tensor product K^(n*p)."""
    return Model(carrier or rationals(), {Sort.E: n, Sort.F: p, Sort.G: n * p})


def scalar_model(carrier: ScalarCarrier) -> Model:
    return Model(carrier, {})


def distribution_example_system() -> RewriteSystem:
    """The two scalar distribution rules as a plain (non-AC) system; the
    two-point min/max algebra is a model of it."""
    from vecnorm.engine import make_rule

    l, m, n = (terms.var(v, Sort.K) for v in "lmn")
    none = frozenset()
    A = lambda sym, a, b: terms.app(sym, (a, b), ac=none)
    rules = (
        make_rule(
            "dist-right", A("*K", A("+K", l, m), n), A("+K", A("*K", l, n), A("*K", m, n))
        ),
        make_rule(
            "dist-left", A("*K", l, A("+K", m, n)), A("+K", A("*K", l, m), A("*K", l, n))
        ),
    )
    return RewriteSystem("distribution", rules, none)


def _vec_add(a: tuple, b: tuple, carrier: ScalarCarrier) -> tuple:
    if len(a) != len(b):
        raise EvalError(f"vector dimensions {len(a)} and {len(b)} differ")
    return tuple(carrier.add(x, y) for x, y in zip(a, b))


def eval_term(t, phi: dict, M: Model):
    """Compositional denotation of t under the assignment phi."""
    kind = t[1]
    if kind == terms.VAR:
        try:
            return phi[t]
        except KeyError:
            raise EvalError(f"unbound variable {t[2]}") from None
    if kind == terms.LIT:
        return M.carrier.from_literal(t[2])
    sym = t[2]
    args = [eval_term(a, phi, M) for a in t[4]]
    if sym in M.overrides:
        return M.overrides[sym](*args)
    if sym == "+K":
        out = args[0]
        for a in args[1:]:
            out = M.carrier.add(out, a)
        return out
    if sym == "*K":
        out = args[0]
        for a in args[1:]:
            out = M.carrier.mul(out, a)
        return out
    if sym.startswith("+"):
        out = args[0]
        for a in args[1:]:
            out = _vec_add(out, a, M.carrier)
        return out
    if sym.startswith("."):
        k, v = args
        return tuple(M.carrier.mul(k, c) for c in v)
    if sym.startswith("0"):
        return M.zero_vec(Sort[sym[1]])
    if sym == "@":
        u, v = args
        return tuple(M.carrier.mul(a, b) for a in u for b in v)
    raise EvalError(f"uninterpreted symbol {sym}")


def canonical_assignment(evars, fvars, M: Model) -> dict:
    """x_i -> e_i (and y_j -> e'_j), the canonical bases of the model."""
    if len(set(evars)) != len(evars) or len(set(fvars)) != len(fvars):
        raise EvalError("duplicate variables in canonical assignment")
    if evars and len(evars) != M._dim(Sort.E):
        raise EvalError("variable count does not match the E dimension")
    if fvars and len(fvars) != M._dim(Sort.F):
        raise EvalError("variable count does not match the F dimension")
    phi = {}
    for i, v in enumerate(evars, start=1):
        phi[v] = M.basis(Sort.E, i)
    for j, v in enumerate(fvars, start=1):
        phi[v] = M.basis(Sort.F, j)
    return phi


# ---------------------------------------------------------------------------
# normal-form classification and decomposition


def _atom(t, tensor: bool):
    """(key, coefficient) when t is an admissible normal-form summand,
    else None.  Keys are variables (vector case) or variable pairs
    (tensor case)."""
    coeff = None
    body = t
    if terms.is_app(t) and t[2].startswith("."):
        coeff, body = t[4]
        if not terms.is_lit(coeff) or coeff[2] in (0, 1):
            return None
    if tensor:
        if not (terms.is_app(body, "@") and terms.is_var(body[4][0]) and terms.is_var(body[4][1])):
            return None
        key = (body[4][0], body[4][1])
    else:
        if not terms.is_var(body):
            return None
        key = body
    return key, (coeff[2] if coeff is not None else Fraction(1))


def classify_nf(t) -> bool:
    """True iff t has the shape every semi-open normal form takes: the
    zero vector, or a sum of atoms over pairwise-distinct variables
    (variable pairs for the tensor sort) whose explicit coefficients are
    literals that are neither 0 nor 1."""
    if t[0] == Sort.K:
        return False
    if terms.is_app(t) and t[2].startswith("0"):
        return True
    tensor = t[0] == Sort.G
    summands = t[4] if terms.is_app(t) and t[2].startswith("+") else (t,)
    seen = set()
    for s in summands:
        got = _atom(s, tensor)
        if got is None:
            return False
        key, _ = got
        if key in seen:
            return False
        seen.add(key)
    return True


class DecompositionError(VecnormError):
    pass


def decompose(nf, evars, fvars=()) -> tuple:
    """Coordinates of a classified normal form along the ordered
    variable list(s): alpha_i = l where l.x_i occurs, 1 where bare x_i
    occurs, 0 otherwise; the tensor case fills slot p(i-1)+j from
    x_i (x) y_j summands.  Exact rationals, printed order = declared
    order."""
    if not classify_nf(nf):
        raise DecompositionError("term is not in classified normal shape")
    tensor = nf[0] == Sort.G
    if tensor:
        n, p = len(evars), len(fvars)
        out = [Fraction(0)] * (n * p)
        index = {
            (e, f): p * i + j
            for i, e in enumerate(evars)
            for j, f in enumerate(fvars)
        }
    else:
        out = [Fraction(0)] * len(evars)
        index = {v: i for i, v in enumerate(evars)}
    if terms.is_app(nf) and nf[2].startswith("0"):
        return tuple(out)
    summands = nf[4] if terms.is_app(nf) and nf[2].startswith("+") else (nf,)
    for s in summands:
        key, coeff = _atom(s, tensor)
        if key not in index:
            name = key[2] if not tensor else f"{key[0][2]} @ {key[1][2]}"
            raise DecompositionError(f"{name} is not among the declared variables")
        out[index[key]] = coeff
    return tuple(out)


# ---------------------------------------------------------------------------
# model validity and universality


def _rule_assignments(variables, M: Model, samples: int, seed: int):
    """Assignments for the given variables: exhaustive over finite
    carriers, seeded random otherwise."""
    variables = sorted(variables)
    if M.carrier.elements is not None:
        domains = []
        for v in variables:
            if v[0] == Sort.K:
                domains.append(list(M.carrier.elements))
            else:
                n = M._dim(Sort(v[0]))
                domains.append(
                    [tuple(vals) for vals in itertools.product(M.carrier.elements, repeat=n)]
                )
        for combo in itertools.product(*domains):
            yield dict(zip(variables, combo))
        return
    rng = random.Random(seed)
    span = [Fraction(k, d) for k in range(-6, 7) for d in (1, 2, 3)]
    for _ in range(samples):
        phi = {}
        for v in variables:
            if v[0] == Sort.K:
                phi[v] = rng.choice(span)
            else:
                n = M._dim(Sort(v[0]))
                phi[v] = tuple(rng.choice(span) for _ in range(n))
        yield phi


def model_validity_check(sys: RewriteSystem, M: Model, samples: int = 200, seed: int = 0):
    """Check that every rule of sys and both AC axioms of every AC
    symbol denote equalities in M; exact comparison, exhaustive when the
    carrier is finite.  Returns a lab report."""
    from vecnorm.lab import LabReport

    rep = LabReport(f"model({sys.name},{M.describe()})", samples=samples, seed=seed)
    for rule in sys.rules:
        for phi in _rule_assignments(free_vars(rule.lhs), M, samples, seed):
            if eval_term(rule.lhs, phi, M) != eval_term(rule.rhs, phi, M):
                rep.add_failure(f"rule {rule.id} fails under {_show_phi(phi)}")
                break
    for sym in sorted(sys.ac):
        info = terms.DEFAULT_SIG.symbols[sym]
        a, b, c = (terms.var(n, info.result) for n in ("ac_a", "ac_b", "ac_c"))
        assoc_l = (info.result, terms.APP, sym, 2, (a, (info.result, terms.APP, sym, 2, (b, c))))
        assoc_r = (info.result, terms.APP, sym, 2, ((info.result, terms.APP, sym, 2, (a, b)), c))
        comm_l = (info.result, terms.APP, sym, 2, (a, b))
        comm_r = (info.result, terms.APP, sym, 2, (b, a))
        for phi in _rule_assignments({a, b, c}, M, samples, seed + 1):
            if eval_term(assoc_l, phi, M) != eval_term(assoc_r, phi, M):
                rep.add_failure(f"associativity of {sym} fails")
                break
            if eval_term(comm_l, phi, M) != eval_term(comm_r, phi, M):
                rep.add_failure(f"commutativity of {sym} fails")
                break
    return rep


def _show_phi(phi: dict) -> str:
    parts = []
    for v in sorted(phi):
        parts.append(f"{v[2]}={phi[v]}")
    return ", ".join(parts)


@dataclass(frozen=True)
class UniversalityVerdict:
    """The three faces of the universality equivalence for a pair of
    terms: identity of normal forms modulo AC, equality of denotations
    under the canonical assignment, equality of decompositions.  The
    theorem says they agree; `coherent` records whether they did."""

    nf_equal: bool
    denot_equal: bool
    decomp_equal: bool

    @property
    def equivalent(self) -> bool:
        return self.nf_equal

    @property
    def coherent(self) -> bool:
        return self.nf_equal == self.denot_equal == self.decomp_equal


def universality_check(t, u, evars, fvars=(), M: Model | None = None, sys=None, S=None) -> UniversalityVerdict:
    """Compare t and u by normal form, by denotation in the canonical
    model, and by decomposition."""
    from vecnorm.scalars import builtin_scalar

    tensor = bool(fvars) or t[0] == Sort.G
    if M is None:
        M = tensor_model(len(evars), len(fvars)) if tensor else q_model(len(evars))
    if sys is None:
        sys = vector_system("rprime" if tensor else "r")
    if S is None:
        S = builtin_scalar("q")
    nf_t = normalize(sys, S, t)[0]
    nf_u = normalize(sys, S, u)[0]
    phi = canonical_assignment(evars, fvars, M)
    denot_t = eval_term(t, phi, M)
    denot_u = eval_term(u, phi, M)
    try:
        d_t = decompose(nf_t, evars, fvars)
        d_u = decompose(nf_u, evars, fvars)
        decomp_equal = d_t == d_u
    except DecompositionError:
        decomp_equal = False
    return UniversalityVerdict(nf_t == nf_u, denot_t == denot_u, decomp_equal)
