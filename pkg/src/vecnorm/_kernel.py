"""Hot-path kernels: canonical forms modulo AC, substitution, class matching.

A term is a nested tuple laid out so that Python's tuple order coincides
with the total term order (sort, node kind, name/value, arity, children):

    variable      (sort, 0, name)
    literal       (0, 1, value)             # value: fractions.Fraction
    application   (sort, 2, sym, nargs, args)

Sorts are small ints (scalar sort 0, vector sorts 1..3).  Applications
headed by an AC symbol keep a flattened, sorted argument tuple of length
>= 2, so structural equality of canonical terms is exactly equality
modulo AC, and terms can be hashed, compared and deduplicated natively.

This module must stay self-contained (stdlib only): the build compiles
it with Cython when possible, and vecnorm._backend loads the interpreted
copy of the same file as the fallback.
"""

VAR, LIT, APP = 0, 1, 2


def canon(t, ac):
    """Canonical representative of t modulo AC for the symbols in ac.

    Idempotent; flattens nested AC heads and sorts their arguments.  An
    AC node left with a single argument collapses to that argument.
    """
    if t[1] != APP:
        return t
    sym = t[2]
    args = [canon(a, ac) for a in t[4]]
    if sym in ac:
        flat = []
        for a in args:
            if a[1] == APP and a[2] == sym:
                flat.extend(a[4])
            else:
                flat.append(a)
        if len(flat) == 1:
            return flat[0]
        flat.sort()
        args = flat
    return (t[0], APP, sym, len(args), tuple(args))


def rebuild(t, args, ac):
    """Application t with its arguments replaced by canonical `args`.

    One-level re-canonicalization: same-symbol children are spliced into
    an AC head and the argument tuple re-sorted.  `args` must already be
    canonical.
    """
    sym = t[2]
    new = []
    if sym in ac:
        for a in args:
            if a[1] == APP and a[2] == sym:
                new.extend(a[4])
            else:
                new.append(a)
        if len(new) == 1:
            return new[0]
        new.sort()
    else:
        new.extend(args)
    return (t[0], APP, sym, len(new), tuple(new))


def subst(t, sigma, ac):
    """Apply a substitution (dict variable-node -> canonical term)."""
    if not sigma:
        return t
    return _subst(t, sigma, ac)


def _subst(t, sigma, ac):
    k = t[1]
    if k == VAR:
        return sigma.get(t, t)
    if k == LIT:
        return t
    changed = False
    out = []
    for a in t[4]:
        b = _subst(a, sigma, ac)
        if b is not a:
            changed = True
        out.append(b)
    if not changed:
        return t
    return rebuild(t, out, ac)


def match(pat, subj, ac, sigma=None):
    """Yield substitutions s extending sigma with s(pat) == subj.

    One-sided matching on canonical terms: variables of the subject are
    inert constants; equality of canonical terms is equality modulo AC.
    Under an AC head the pattern arguments must consume the whole
    argument multiset (no remainder).
    """
    return _match(pat, subj, ac, {} if sigma is None else sigma)


def _match(pat, subj, ac, sigma):
    k = pat[1]
    if k == VAR:
        bound = sigma.get(pat)
        if bound is not None:
            if bound == subj:
                yield sigma
        elif pat[0] == subj[0]:
            out = dict(sigma)
            out[pat] = subj
            yield out
        return
    if k == LIT:
        if pat == subj:
            yield sigma
        return
    if subj[1] != APP or subj[2] != pat[2]:
        return
    if pat[2] in ac:
        for out, rem in match_ac(pat[4], subj[4], subj[0], pat[2], ac, sigma):
            if not rem:
                yield out
    elif pat[3] == subj[3]:
        yield from _match_args(pat[4], subj[4], 0, ac, sigma)


def _match_args(pats, subjs, i, ac, sigma):
    if i == len(pats):
        yield sigma
        return
    for out in _match(pats[i], subjs[i], ac, sigma):
        yield from _match_args(pats, subjs, i + 1, ac, out)


def match_ac(pargs, sargs, vsort, sym, ac, sigma):
    """Match a pattern argument multiset against a flattened AC node.

    Yields (sigma, remainder) pairs.  Structured pattern arguments match
    individual subject arguments; a pattern variable directly under the
    head absorbs a non-empty sub-multiset (rebuilt as a sym-application
    when it has more than one element); the rest of the subject multiset
    is returned as a sorted remainder tuple.  Enumeration is exhaustive
    over sub-multisets, which is what makes rewriting act on AC classes,
    and deterministic, which keeps reduct sets reproducible.
    """
    if len(sargs) < len(pargs):
        return
    struct = []
    var_occ = {}
    for p in pargs:
        if p[1] == VAR:
            var_occ[p] = var_occ.get(p, 0) + 1
        else:
            struct.append(p)
    counts = {}
    for s in sargs:
        counts[s] = counts.get(s, 0) + 1
    groups = sorted(var_occ.items())
    yield from _match_structs(struct, 0, counts, groups, vsort, sym, ac, sigma)


def _match_structs(struct, i, counts, groups, vsort, sym, ac, sigma):
    if i == len(struct):
        yield from _match_groups(groups, 0, counts, vsort, sym, ac, sigma)
        return
    p = struct[i]
    for e in sorted(counts):
        if counts[e] <= 0:
            continue
        for out in _match(p, e, ac, sigma):
            counts[e] -= 1
            yield from _match_structs(struct, i + 1, counts, groups, vsort, sym, ac, out)
            counts[e] += 1


def _match_groups(groups, j, counts, vsort, sym, ac, sigma):
    if j == len(groups):
        rem = []
        for e in sorted(counts):
            c = counts[e]
            if c > 0:
                rem.extend([e] * c)
        yield sigma, tuple(rem)
        return
    v, mult = groups[j]
    bound = sigma.get(v)
    if bound is not None:
        # A variable bound earlier must consume mult copies of its value.
        if bound[1] == APP and bound[2] == sym:
            need = bound[4]
        else:
            need = (bound,)
        needc = {}
        for e in need:
            needc[e] = needc.get(e, 0) + 1
        for e, c in needc.items():
            if counts.get(e, 0) < c * mult:
                return
        for e, c in needc.items():
            counts[e] -= c * mult
        yield from _match_groups(groups, j + 1, counts, vsort, sym, ac, sigma)
        for e, c in needc.items():
            counts[e] += c * mult
        return
    if v[0] != vsort:
        return
    elems = sorted(e for e in counts if counts[e] > 0)
    caps = [counts[e] // mult for e in elems]
    for sel in _selections(elems, caps, 0):
        if not sel:
            continue
        total = 0
        for _, c in sel:
            total += c
        if total == 1:
            val = sel[0][0]
        else:
            ex = []
            for e, c in sel:
                ex.extend([e] * c)
            ex.sort()
            val = (vsort, APP, sym, total, tuple(ex))
        out = dict(sigma)
        out[v] = val
        for e, c in sel:
            counts[e] -= c * mult
        yield from _match_groups(groups, j + 1, counts, vsort, sym, ac, out)
        for e, c in sel:
            counts[e] += c * mult


def _selections(elems, caps, idx):
    """All (element, count) selections within caps, including the empty one."""
    if idx == len(elems):
        yield ()
        return
    e = elems[idx]
    cap = caps[idx]
    for rest in _selections(elems, caps, idx + 1):
        yield rest
        for c in range(1, cap + 1):
            yield ((e, c),) + rest
