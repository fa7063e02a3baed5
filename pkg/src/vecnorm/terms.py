"""Sorted terms in AC-canonical form.

Four sorts: the scalar sort K and three vector sorts E, F, G.  Terms are
the immutable tuples documented in vecnorm._kernel; this module adds the
signature, sort-checked constructors and the public operations
(canonicalize, ac_equal, substitute, well_sorted).

Canonical invariants: an application headed by an AC symbol stores a
flattened argument tuple of length >= 2 sorted by the total term order
(sort, node kind with variable < literal < application, name/value,
arity, children); no AC child shares its parent's head; the scalar
literals 0 and 1 are the unique representations of those constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction

from vecnorm._backend import kernel as _k

VAR, LIT, APP = _k.VAR, _k.LIT, _k.APP


class Sort(IntEnum):
    K = 0
    E = 1
    F = 2
    G = 3


VECTOR_SORTS = (Sort.E, Sort.F, Sort.G)


class VecnormError(Exception):
    """Base class for all errors raised by vecnorm."""


class SortError(VecnormError):
    """Ill-sorted term, rule or binding."""


class FuelError(VecnormError):
    """A normalization did not finish within its fuel bound."""


@dataclass(frozen=True)
class SymbolInfo:
    args: tuple[Sort, ...]
    result: Sort
    ac: bool = False


@dataclass(frozen=True)
class Signature:
    """Finite symbol table.  AC symbols are binary with both argument
    sorts equal to the result sort; their applications are stored
    flattened and may carry any arity >= 2."""

    symbols: dict[str, SymbolInfo] = field(default_factory=dict)

    def __post_init__(self):
        for name, info in self.symbols.items():
            if info.ac and (
                len(info.args) != 2
                or info.args[0] != info.result
                or info.args[1] != info.result
            ):
                raise SortError(f"AC symbol {name} must be binary and homogeneous")

    def ac_symbols(self) -> frozenset[str]:
        return frozenset(n for n, i in self.symbols.items() if i.ac)

    def with_constants(self, names: dict[str, Sort]) -> Signature:
        """Extended signature with extra free constants (base vectors)."""
        table = dict(self.symbols)
        for name, sort in names.items():
            if name in table:
                raise SortError(f"symbol {name} already declared")
            table[name] = SymbolInfo((), sort)
        return Signature(table)


def _default_symbols() -> dict[str, SymbolInfo]:
    table = {
        "+K": SymbolInfo((Sort.K, Sort.K), Sort.K, ac=True),
        "*K": SymbolInfo((Sort.K, Sort.K), Sort.K, ac=True),
        "@": SymbolInfo((Sort.E, Sort.F), Sort.G),
    }
    for s in VECTOR_SORTS:
        table[f"+{s.name}"] = SymbolInfo((s, s), s, ac=True)
        table[f".{s.name}"] = SymbolInfo((Sort.K, s), s)
        table[f"0{s.name}"] = SymbolInfo((), s)
    return table


#: Scalars, the three vector sorts with their sums, scalar actions and
#: zeros, and the bilinear symbol @ of rank <E, F, G>.
DEFAULT_SIG = Signature(_default_symbols())

#: Default AC modulus: every vector sum plus scalar + and *.
DEFAULT_AC = DEFAULT_SIG.ac_symbols()


# ---------------------------------------------------------------------------
# constructors


def var(name: str, sort: Sort):
    return (sort, VAR, name)


class Rational(Fraction):
    """Fraction with a cached hash and direct comparisons.  Literal
    nodes sit inside term tuples that are hashed and ordered constantly
    (canonical-form dedup, argument sorting); Fraction recomputes a
    modular inverse per hash call and routes comparisons through ABC
    dispatch, both of which dominate profiles without this."""

    __slots__ = ("_vecnorm_hash",)

    def __hash__(self):
        try:
            return self._vecnorm_hash
        except AttributeError:
            h = super().__hash__()
            self._vecnorm_hash = h
            return h

    def __eq__(self, other):
        if isinstance(other, Fraction):
            return (
                self._numerator == other._numerator
                and self._denominator == other._denominator
            )
        return super().__eq__(other)

    def __lt__(self, other):
        if isinstance(other, Fraction):
            return self._numerator * other._denominator < other._numerator * self._denominator
        return super().__lt__(other)

    def __le__(self, other):
        if isinstance(other, Fraction):
            return self._numerator * other._denominator <= other._numerator * self._denominator
        return super().__le__(other)

    def __gt__(self, other):
        if isinstance(other, Fraction):
            return self._numerator * other._denominator > other._numerator * self._denominator
        return super().__gt__(other)

    def __ge__(self, other):
        if isinstance(other, Fraction):
            return self._numerator * other._denominator >= other._numerator * self._denominator
        return super().__ge__(other)


def lit(value) -> tuple:
    """Scalar literal; values are exact rationals."""
    return (Sort.K, LIT, Rational(value))


def app(sym: str, args, sig: Signature = DEFAULT_SIG, ac: frozenset | None = None):
    """Sort-checked, canonicalized application node."""
    info = sig.symbols.get(sym)
    if info is None:
        raise SortError(f"unknown symbol {sym}")
    args = tuple(args)
    if info.ac:
        if len(args) < 2:
            raise SortError(f"AC symbol {sym} needs at least 2 arguments")
        expected = (info.result,) * len(args)
    else:
        expected = info.args
        if len(args) != len(expected):
            raise SortError(f"{sym} expects {len(expected)} arguments, got {len(args)}")
    for a, want in zip(args, expected):
        if a[0] != want:
            raise SortError(f"argument of {sym} has sort {Sort(a[0]).name}, expected {want.name}")
    node = (info.result, APP, sym, len(args), args)
    return _k.canon(node, ac if ac is not None else sig.ac_symbols())


def zero(sort: Sort):
    return app(f"0{Sort(sort).name}", ())


# ---------------------------------------------------------------------------
# accessors


def sort_of(t) -> Sort:
    return Sort(t[0])


def is_var(t) -> bool:
    return t[1] == VAR


def is_lit(t) -> bool:
    return t[1] == LIT


def is_app(t, sym: str | None = None) -> bool:
    return t[1] == APP and (sym is None or t[2] == sym)


def args_of(t) -> tuple:
    return t[4]


def free_vars(t) -> frozenset:
    if t[1] == VAR:
        return frozenset((t,))
    if t[1] == LIT:
        return frozenset()
    out = frozenset()
    for a in t[4]:
        out |= free_vars(a)
    return out


def is_closed(t) -> bool:
    return not free_vars(t)


def is_semi_open(t) -> bool:
    """No variables of sort K; vector variables allowed."""
    return all(v[0] != Sort.K for v in free_vars(t))


def node_count(t) -> int:
    if t[1] != APP:
        return 1
    return 1 + sum(node_count(a) for a in t[4])


# ---------------------------------------------------------------------------
# operations


def canonicalize(t, ac: frozenset = DEFAULT_AC):
    return _k.canon(t, ac)


def ac_equal(t, u, ac: frozenset = DEFAULT_AC) -> bool:
    if t[0] != u[0]:
        raise SortError(
            f"ac_equal across sorts {Sort(t[0]).name} and {Sort(u[0]).name}"
        )
    return _k.canon(t, ac) == _k.canon(u, ac)


def substitute(t, sigma: dict, ac: frozenset = DEFAULT_AC):
    """Capture-free replacement of variables; result is canonical."""
    for v, val in sigma.items():
        if v[1] != VAR:
            raise SortError("substitution key is not a variable")
        if v[0] != val[0]:
            raise SortError(
                f"binding for {v[2]} has sort {Sort(val[0]).name}, "
                f"expected {Sort(v[0]).name}"
            )
    return _k.subst(t, sigma, ac)


def well_sorted(t, sig: Signature = DEFAULT_SIG) -> Sort:
    """Sort of t, recomputed against sig; raises SortError when t is not
    well-sorted (unknown symbol, arity or argument-sort mismatch)."""
    kind = t[1]
    if kind == VAR:
        return Sort(t[0])
    if kind == LIT:
        if t[0] != Sort.K or not isinstance(t[2], Fraction):
            raise SortError("malformed literal")
        return Sort.K
    sym = t[2]
    info = sig.symbols.get(sym)
    if info is None:
        raise SortError(f"unknown symbol {sym}")
    got = [well_sorted(a, sig) for a in t[4]]
    if info.ac:
        if len(got) < 2:
            raise SortError(f"AC symbol {sym} with arity {len(got)}")
        expected = [info.result] * len(got)
    else:
        if len(got) != len(info.args):
            raise SortError(f"{sym} applied to {len(got)} arguments")
        expected = list(info.args)
    for have, want in zip(got, expected):
        if have != want:
            raise SortError(
                f"argument of {sym} has sort {have.name}, expected {want.name}"
            )
    if t[0] != info.result or t[3] != len(t[4]):
        raise SortError(f"malformed application of {sym}")
    return info.result
