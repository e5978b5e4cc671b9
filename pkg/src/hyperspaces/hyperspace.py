"""Hypervector spaces: the external star operation, axiom checks, set-valued
linear combinations, (weak) linear independence and bounded basis checks.

Every existential search here is finitized by explicit bounds: a pool of
coefficients, a finite universe of vectors, or a list of probe vectors.
Verdicts carry those bounds so a caller can tell "independent" from
"independent relative to this pool".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .hyperstructures import (
    DEFAULT_MAX_VIOLATIONS,
    Hyperfield,
    Hypergroup,
    Violation,
    axiom,
    collect,
    elements_of,
    rational_hyperfield,
)
from .setalg import (
    BudgetExceededError,
    DomainError,
    FiniteSet,
    HyperOp,
    MalformedStructureError,
    PreconditionError,
    VectorCarrier,
    extend_set_set,
    format_element,
)

DEFAULT_MAX_UNIVERSE = 12


class StarOp:
    """External hyperoperation ``F x V -> P*(V)``."""

    def __init__(self, scalars, vectors, *, table: Mapping | None = None,
                 rule: Callable | None = None, name: str | None = None):
        if (table is None) == (rule is None):
            raise ValueError("give exactly one of table or rule")
        self.scalars = scalars
        self.vectors = vectors
        self.rule = rule
        self.name = name
        self.table = None
        if table is not None:
            self.table = {}
            for a in scalars:
                for v in vectors:
                    if (a, v) not in table:
                        raise MalformedStructureError(
                            f"missing star cell {format_element(a)} * {format_element(v)}")
                    self.table[a, v] = self._result(a, v, table[a, v])

    def _result(self, a, v, members) -> FiniteSet:
        out = []
        for m in members:
            if m not in self.vectors:
                raise MalformedStructureError(
                    f"{format_element(a)} * {format_element(v)} contains "
                    f"{format_element(m)}, which lies outside the vector carrier")
            out.append(self.vectors.normalize(m))
        if not out:
            raise MalformedStructureError(
                f"{format_element(a)} * {format_element(v)} is empty")
        return FiniteSet(out, self.vectors)

    def __call__(self, a, v) -> FiniteSet:
        if a not in self.scalars:
            raise DomainError(f"{a!r} is not a scalar")
        if v not in self.vectors:
            raise DomainError(f"{v!r} is not a vector")
        if self.table is not None:
            return self.table[a, v]
        return self._result(a, v, self.rule(a, v))


def _scale(a, v):
    return tuple(a * c for c in v)


def _vsum(u, v):
    return tuple(x + y for x, y in zip(u, v))


def _vneg(v):
    return tuple(-c for c in v)


STAR_RULES = {
    "scale": lambda a, v: (_scale(a, v),),
    "cone": lambda a, v: (_scale(a, v), (Fraction(0),) * len(v)),
    "echo": lambda a, v: (_scale(a, v), v),
}


@dataclass(frozen=True)
class HyperVectorSpace:
    scalars: Hyperfield
    vectors: Hypergroup
    star: StarOp
    name: str | None = field(default=None, compare=False)

    @property
    def theta(self):
        return self.vectors.zero

    @property
    def add(self) -> HyperOp:
        return self.vectors.add

    def neg_vector(self, v):
        return self.vectors.negate(v)


def rational_vectors(dim: int) -> Hypergroup:
    """``Q^dim`` with singleton addition ``u # v = {u + v}``."""
    V = VectorCarrier(dim)
    return Hypergroup(V, HyperOp(V, rule=lambda u, v: (_vsum(u, v),), name="sum"),
                      zero=V.zero, neg=_vneg, commutative=True)


def rational_space(dim: int, star: str = "scale") -> HyperVectorSpace:
    """A hyperspace over the rationals on ``Q^dim`` with a built-in star rule.

    ``scale`` is the trivial embedding ``a * v = {av}``; ``cone`` is
    ``{av, 0}``; ``echo`` is ``{av, v}`` (which is not a hyperspace).
    """
    if star not in STAR_RULES:
        raise DomainError(f"unknown star rule {star!r}")
    F = rational_hyperfield()
    V = rational_vectors(dim)
    return HyperVectorSpace(F, V, StarOp(F.carrier, V.carrier, rule=STAR_RULES[star], name=star),
                            name=f"{star}_q{dim}")


def trivial_space(dim: int = 2) -> HyperVectorSpace:
    return rational_space(dim, "scale")


def cone_space(dim: int = 2) -> HyperVectorSpace:
    return rational_space(dim, "cone")


def echo_space(dim: int = 2) -> HyperVectorSpace:
    return rational_space(dim, "echo")


# ---------------------------------------------------------------------------
# Axioms


def star_set(W: HyperVectorSpace, a, vectors: Iterable) -> FiniteSet:
    """``a * S``: union of ``a * v`` over ``v`` in ``S``."""
    members = set()
    for v in vectors:
        members.update(W.star(a, v))
    return FiniteSet(members, W.vectors.carrier)


@axiom("HVS.star_dist_vectors")
def _hvs_i(W, a, u, v):
    left = star_set(W, a, W.add(u, v))
    right = extend_set_set(W.add, W.star(a, u), W.star(a, v))
    return left <= right, left, right


@axiom("HVS.star_dist_scalars")
def _hvs_ii(W, a, b, v):
    left = FiniteSet(set().union(*(W.star(c, v) for c in W.scalars.add(a, b))),
                     W.vectors.carrier)
    right = extend_set_set(W.add, W.star(a, v), W.star(b, v))
    return left <= right, left, right


@axiom("HVS.star_assoc")
def _hvs_iii(W, a, b, v):
    left = W.star(W.scalars.mul(a, b), v)
    right = star_set(W, a, W.star(b, v))
    return left == right, left, right


@axiom("HVS.star_neg")
def _hvs_iv(W, a, v):
    left = W.star(W.scalars.negate(a), v)
    right = W.star(a, W.neg_vector(v))
    return left == right, left, right


@axiom("HVS.unit")
def _hvs_unit(W, v):
    left = W.star(W.scalars.one, v)
    return v in left, left, v


@axiom("HVS.zero_scalar")
def _hvs_zero_scalar(W, v):
    left = W.star(W.scalars.zero, v)
    return W.theta in left, left, W.theta


@axiom("HVS.zero_vector")
def _hvs_zero_vector(W):
    left = W.star(W.scalars.zero, W.theta)
    right = FiniteSet([W.theta], W.vectors.carrier)
    return left == right, left, right


@axiom("HVS.neg_unit")
def _hvs_neg_unit(W, v):
    left = W.star(W.scalars.negate(W.scalars.one), v)
    right = W.neg_vector(v)
    return right in left, left, right


def _require_negations(W: HyperVectorSpace):
    if W.vectors.neg is None or W.theta is None:
        raise PreconditionError("vector hypergroup needs a zero and a negation map")
    try:
        W.scalars.negate(W.scalars.one)
    except PreconditionError as exc:
        raise PreconditionError("scalar hyperfield needs a negation map") from exc


def check_hvs_axioms(W: HyperVectorSpace, scalars=None, vectors=None,
                     max_violations: int = DEFAULT_MAX_VIOLATIONS) -> list[Violation]:
    """Check the five hyperspace axioms on sampled scalars and vectors.

    Sample sets default to the full carriers when those are finite.
    """
    _require_negations(W)
    S = elements_of(W.scalars.carrier, scalars)
    V = elements_of(W.vectors.carrier, vectors)
    cap = max_violations
    found = collect(W, "HVS.star_dist_vectors", itertools.product(S, V, V), cap)
    found += collect(W, "HVS.star_dist_scalars", itertools.product(S, S, V), cap)
    found += collect(W, "HVS.star_assoc", itertools.product(S, S, V), cap)
    found += collect(W, "HVS.star_neg", itertools.product(S, V), cap)
    found += collect(W, "HVS.unit", ((v,) for v in V), cap)
    found += collect(W, "HVS.zero_scalar", ((v,) for v in V), cap)
    found += collect(W, "HVS.zero_vector", [()], cap)
    return found


def check_negation_in_minus_one_star(W: HyperVectorSpace, vectors=None,
                                     max_violations: int = DEFAULT_MAX_VIOLATIONS
                                     ) -> list[Violation]:
    """``-v`` lies in ``(-1) * v`` for every sampled ``v``."""
    _require_negations(W)
    V = elements_of(W.vectors.carrier, vectors)
    return collect(W, "HVS.neg_unit", ((v,) for v in V), max_violations)


# ---------------------------------------------------------------------------
# Linear combinations


def linear_combination(W: HyperVectorSpace, coeffs, vectors) -> FiniteSet:
    """``c1 * v1 # c2 * v2 # ... # cn * vn``, folded from the left."""
    coeffs, vectors = list(coeffs), list(vectors)
    if len(coeffs) != len(vectors):
        raise PreconditionError(
            f"{len(coeffs)} coefficients for {len(vectors)} vectors")
    if not vectors:
        raise PreconditionError("a linear combination needs at least one term")
    acc = W.star(coeffs[0], vectors[0])
    for c, v in zip(coeffs[1:], vectors[1:]):
        acc = extend_set_set(W.add, acc, W.star(c, v))
    return acc


def coefficient_pool(F: Hyperfield, values: Iterable = ()) -> tuple:
    """A deduplicated coefficient pool in canonical order, always holding 0, 1 and -1."""
    pool = {F.carrier.normalize(v) for v in values}
    pool.update([F.zero, F.one])
    try:
        pool.add(F.negate(F.one))
    except Exception:
        pass
    return tuple(sorted(pool, key=F.carrier.sort_key))


def _canonical(F: Hyperfield, pool) -> tuple:
    """Deduplicate a coefficient pool and put it in canonical order."""
    return tuple(sorted({F.carrier.normalize(c) for c in pool}, key=F.carrier.sort_key))


def vector_universe(W: HyperVectorSpace, vectors: Iterable = ()) -> tuple:
    """A deduplicated finite universe of vectors that always contains theta."""
    C = W.vectors.carrier
    found = {C.normalize(v) for v in vectors}
    found.add(W.theta)
    return tuple(sorted(found, key=C.sort_key))


def combinations(W: HyperVectorSpace, vectors, pool, sizes=None):
    """Enumerate pool-valued linear combinations over subsets of ``vectors``.

    Yields ``(support, coeffs, result_set)``.  Supports come by size and then
    lexicographically by index; coefficient tuples lexicographically in pool
    order.  Partial sums are shared between tuples with a common prefix.
    """
    vectors = list(vectors)
    n = len(vectors)
    cache = {}

    def term(c, i):
        key = (c, i)
        if key not in cache:
            cache[key] = W.star(c, vectors[i])
        return cache[key]

    def walk(support, pos, coeffs, acc):
        if pos == len(support):
            yield support, coeffs, acc
            return
        for c in pool:
            t = term(c, support[pos])
            nxt = t if acc is None else extend_set_set(W.add, acc, t)
            yield from walk(support, pos + 1, coeffs + (c,), nxt)

    for size in (range(1, n + 1) if sizes is None else sizes):
        for support in itertools.combinations(range(n), size):
            yield from walk(support, 0, (), None)


def _padded(W, n, support, coeffs):
    full = [W.scalars.zero] * n
    for i, c in zip(support, coeffs):
        full[i] = c
    return tuple(full)


@dataclass
class DependenceVerdict:
    """Outcome of a bounded dependence search.

    ``coefficients`` is aligned with the input vectors; positions outside
    ``support`` are reported as zero but were omitted from the combination.
    """

    dependent: bool
    support: tuple | None
    coefficients: tuple | None
    pool: tuple

    @property
    def relative_to(self) -> str:
        return "pool=[" + ", ".join(format_element(c) for c in self.pool) + "]"


def is_linearly_dependent(W: HyperVectorSpace, A, pool) -> DependenceVerdict:
    """Search for a not-all-zero pool combination over a subset of ``A``
    whose set contains theta.  ``False`` means independent relative to ``pool``."""
    A = list(A)
    if not A:
        raise PreconditionError("empty vector list")
    pool = _canonical(W.scalars, pool)
    zero = W.scalars.zero
    for support, coeffs, s in combinations(W, A, pool):
        if any(c != zero for c in coeffs) and W.theta in s:
            return DependenceVerdict(True, support, _padded(W, len(A), support, coeffs), pool)
    return DependenceVerdict(False, None, None, pool)


def zero_star_set(W: HyperVectorSpace, P: Iterable) -> FiniteSet:
    """``0 * P``: union of ``0 * p`` over ``p`` in ``P``."""
    return star_set(W, W.scalars.zero, P)


@dataclass
class WeakIndependenceVerdict:
    independent: bool
    support: tuple | None
    coefficients: tuple | None
    P: tuple | None
    pool: tuple
    universe: tuple


def is_weak_linearly_independent(W: HyperVectorSpace, A, pool, universe,
                                 max_universe: int = DEFAULT_MAX_UNIVERSE
                                 ) -> WeakIndependenceVerdict:
    """Look for coefficients, not all zero, and a non-empty ``P`` inside
    ``universe`` with ``0 * P`` equal to the combination set.

    All non-empty subsets of the universe are enumerated, so the universe is
    capped at ``max_universe`` elements.
    """
    A = list(A)
    pool = _canonical(W.scalars, pool)
    universe = tuple(universe)
    if len(universe) > max_universe:
        raise BudgetExceededError(
            f"universe of {len(universe)} vectors exceeds the cap of {max_universe}")
    zero_sets = {}
    for size in range(1, len(universe) + 1):
        for P in itertools.combinations(universe, size):
            zero_sets.setdefault(zero_star_set(W, P), P)
    zero = W.scalars.zero
    for support, coeffs, s in combinations(W, A, pool):
        if all(c == zero for c in coeffs):
            continue
        if s in zero_sets:
            return WeakIndependenceVerdict(False, support, _padded(W, len(A), support, coeffs),
                                           zero_sets[s], pool, universe)
    return WeakIndependenceVerdict(True, None, None, None, pool, universe)


def representation(W: HyperVectorSpace, A, target, pool):
    """First ``(support, coeffs)`` with ``target`` in the combination, or None."""
    for support, coeffs, s in combinations(W, A, _canonical(W.scalars, pool)):
        if target in s:
            return support, coeffs
    return None


@dataclass
class BasisVerdict:
    is_basis: bool
    independent: bool
    representations: dict
    unreached: tuple
    pool: tuple
    probes: tuple
    dependence: DependenceVerdict | None = None


def is_basis(W: HyperVectorSpace, A, probes, pool) -> BasisVerdict:
    """Independence plus pool-bounded representability of every probe."""
    A = list(A)
    pool = _canonical(W.scalars, pool)
    probes = tuple(probes)
    dep = is_linearly_dependent(W, A, pool)
    reps, unreached = {}, []
    for p in probes:
        r = representation(W, A, p, pool)
        if r is None:
            unreached.append(p)
        else:
            reps[p] = r
    ok = not dep.dependent and not unreached
    return BasisVerdict(ok, not dep.dependent, reps, tuple(unreached), pool, probes, dep)


def check_combination_makes_dependent(W: HyperVectorSpace, A, alpha, coeffs, pool
                                      ) -> DependenceVerdict:
    """If ``alpha`` lies in a combination of ``A``, then ``[alpha] + A`` is dependent.

    The search pool is widened with the negated coefficients and +-1.
    """
    A = list(A)
    if alpha not in linear_combination(W, coeffs, A):
        raise PreconditionError(
            f"{format_element(alpha)} is not in the combination of the given coefficients")
    F = W.scalars
    extra = list(pool) + [F.negate(c) for c in coeffs] + [F.one]
    wide = coefficient_pool(F, extra)
    return is_linearly_dependent(W, [alpha] + A, wide)
