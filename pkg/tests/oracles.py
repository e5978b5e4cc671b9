"""Reference implementations that share no code with the package.

Tables here are plain dicts of Python sets; vectors are tuples of Fractions.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def _ext(add, A, B):
    out = set()
    for a in A:
        for b in B:
            out |= add[a, b]
    return out


def hypergroup_zero(els, add):
    """The zero of a finite hypergroup table, or None when it is not one."""
    for a, b, c in itertools.product(els, repeat=3):
        if _ext(add, {a}, add[b, c]) != _ext(add, add[a, b], {c}):
            return None
    for z in els:
        neg = {}
        for a in els:
            inv = [b for b in els if z in add[a, b] and z in add[b, a]]
            if len(inv) != 1:
                break
            neg[a] = inv[0]
        else:
            if all(b in add[a, neg[c]]
                   for a, b, c in itertools.product(els, repeat=3) if a in add[b, c]):
                return z
    return None


def is_hypergroup(els, add) -> bool:
    return hypergroup_zero(els, add) is not None


def is_hyperfield(els, add, mul, zero, one) -> bool:
    if zero == one or hypergroup_zero(els, add) != zero:
        return False
    if any(add[a, b] != add[b, a] for a in els for b in els):
        return False
    for a, b, c in itertools.product(els, repeat=3):
        if mul[mul[a, b], c] != mul[a, mul[b, c]]:
            return False
        if {mul[a, x] for x in add[b, c]} != _ext(add, {mul[a, b]}, {mul[a, c]}):
            return False
    for a in els:
        if mul[a, zero] != zero or mul[zero, a] != zero or mul[a, one] != a:
            return False
        if a != zero and not any(mul[a, b] == one for b in els):
            return False
        if any(mul[a, b] != mul[b, a] for b in els):
            return False
    return True


def iso_classes(els, tables, fixed=()):
    """Number of relabeling classes among hypergroup tables; ``fixed`` points stay put."""
    movable = [e for e in els if e not in fixed]
    perms = []
    for p in itertools.permutations(movable):
        m = dict(zip(movable, p))
        m.update({f: f for f in fixed})
        perms.append(m)
    seen, classes = set(), 0
    for t in tables:
        frozen = frozenset((k, frozenset(v)) for k, v in t.items())
        if frozen in seen:
            continue
        classes += 1
        for m in perms:
            seen.add(frozenset(((m[a], m[b]), frozenset(m[x] for x in v))
                               for (a, b), v in t.items()))
    return classes


def all_commutative_hypergroups(n):
    els = list(range(n))
    subsets = [set(s) for r in range(1, n + 1) for s in itertools.combinations(els, r)]
    pairs = [(a, b) for a in els for b in els if a <= b]
    found = []
    for choice in itertools.product(subsets, repeat=len(pairs)):
        add = {}
        for (a, b), s in zip(pairs, choice):
            add[a, b] = add[b, a] = s
        if is_hypergroup(els, add):
            found.append(add)
    return found


# ---------------------------------------------------------------------------
# Classical linear algebra over Q


def dot(u, v):
    return sum((Fraction(x) * y for x, y in zip(u, v)), Fraction(0))


def classical_gram_schmidt(vectors):
    out = []
    for w in vectors:
        v = tuple(Fraction(c) for c in w)
        for u in out:
            c = dot(w, u) / dot(u, u)
            v = tuple(x - c * y for x, y in zip(v, u))
        out.append(v)
    return out


def rank(vectors):
    rows = [list(map(Fraction, v)) for v in vectors]
    r = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def solve(columns, target):
    """Coordinates of ``target`` in the basis ``columns`` (square, invertible)."""
    n = len(columns)
    m = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(n)]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return tuple(m[i][n] / m[i][i] for i in range(n))
