"""Norms and inner products on hyperspaces, their consequences, and the
set-valued Gram-Schmidt process.

Every quantity is an exact rational.  A supremum over a hyperoperation
result is the maximum of a finite set (:class:`SupValue`).  The induced norm
``sqrt(<v, v>)`` is kept in squared form and every inequality involving it is
rearranged into a comparison of rationals.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .hyperspace import (
    HyperVectorSpace,
    WeakIndependenceVerdict,
    is_weak_linearly_independent,
    linear_combination,
    representation,
)
from .hyperstructures import (
    DEFAULT_MAX_VIOLATIONS,
    Violation,
    axiom,
    collect,
    elements_of,
)
from .setalg import (
    FiniteSet,
    PreconditionError,
    StructureError,
    extend_point_set,
    extend_set_set,
    format_element,
)


class LinearDependenceError(StructureError, ValueError):
    """Gram-Schmidt met a candidate set with no vector of non-zero length."""


class DegenerateVectorError(StructureError, ZeroDivisionError):
    """A vector of zero length where a non-zero one is required."""


class _ValueMap:
    def __init__(self, fn: Callable | None = None, *, table: Mapping | None = None,
                 name: str | None = None):
        if (fn is None) == (table is None):
            raise ValueError("give exactly one of fn or table")
        self.fn = fn
        self.table = dict(table) if table is not None else None
        self.name = name

    def _get(self, *key):
        if self.table is not None:
            try:
                value = self.table[key if len(key) > 1 else key[0]]
            except KeyError:
                raise PreconditionError(
                    f"no value for {', '.join(format_element(k) for k in key)}") from None
        else:
            value = self.fn(*key)
        return Fraction(value)


class InnerProduct(_ValueMap):
    """``<u, v>``: a rational-valued map on pairs of vectors."""

    def __call__(self, u, v) -> Fraction:
        return self._get(u, v)


class Norm(_ValueMap):
    """``||v||``: a rational-valued map on vectors."""

    def __call__(self, v) -> Fraction:
        return self._get(v)


def dot_product() -> InnerProduct:
    return InnerProduct(lambda u, v: sum((x * y for x, y in zip(u, v)), Fraction(0)),
                        name="dot")


def max_norm() -> Norm:
    return Norm(lambda v: max(abs(c) for c in v), name="max")


@dataclass(frozen=True)
class SupValue:
    """Exact maximum of a finite set of rationals and the element attaining it."""

    value: Fraction
    attained_by: object


def sup(pairs: Iterable) -> SupValue:
    """Maximum over ``(element, value)`` pairs; ties keep the first element."""
    best = None
    for element, value in pairs:
        if best is None or value > best.value:
            best = SupValue(value, element)
    if best is None:
        raise PreconditionError("supremum of an empty set")
    return best


def sup_inner_left(ip, S, beta) -> SupValue:
    """``sup <S, beta>`` over ``x`` in ``S``."""
    return sup((x, ip(x, beta)) for x in S)


def sup_inner_right(ip, alpha, S) -> SupValue:
    return sup((y, ip(alpha, y)) for y in S)


def sup_square(ip, S) -> SupValue:
    """``sup <x, x>`` over ``x`` in ``S``, i.e. the squared sup of the induced norm."""
    return sup((x, ip(x, x)) for x in S)


# ---------------------------------------------------------------------------
# Norm axioms


@axiom("N.nonneg")
def _n_nonneg(ctx, v):
    W, norm = ctx
    left = norm(v)
    return left >= 0, left, Fraction(0)


@axiom("N.definite")
def _n_definite(ctx, v):
    W, norm = ctx
    left = norm(v)
    return (left == 0) == (v == W.theta), left, v == W.theta


@axiom("N.triangle")
def _n_triangle(ctx, u, v):
    W, norm = ctx
    left = sup((x, norm(x)) for x in W.add(u, v)).value
    right = norm(u) + norm(v)
    return left <= right, left, right


@axiom("N.homogeneous")
def _n_homogeneous(ctx, a, v):
    W, norm = ctx
    left = sup((x, norm(x)) for x in W.star(a, v)).value
    right = W.scalars.absolute(a) * norm(v)
    return left <= right, left, right


def check_norm_axioms(W: HyperVectorSpace, norm: Norm, scalars=None, vectors=None,
                      max_violations: int = DEFAULT_MAX_VIOLATIONS) -> list[Violation]:
    if W.scalars.abs is None:
        raise PreconditionError("norm homogeneity needs an absolute value on the scalars")
    S = elements_of(W.scalars.carrier, scalars)
    V = elements_of(W.vectors.carrier, vectors)
    ctx, cap = (W, norm), max_violations
    found = collect(ctx, "N.nonneg", ((v,) for v in V), cap)
    found += collect(ctx, "N.definite", ((v,) for v in V), cap)
    found += collect(ctx, "N.triangle", itertools.product(V, V), cap)
    found += collect(ctx, "N.homogeneous", itertools.product(S, V), cap)
    return found


# ---------------------------------------------------------------------------
# Inner product axioms and first consequences


@axiom("IP.positive")
def _ip_positive(ctx, v):
    W, ip = ctx
    left = ip(v, v)
    return v == W.theta or left > 0, left, Fraction(0)


@axiom("IP.definite")
def _ip_definite(ctx, v):
    W, ip = ctx
    left = ip(v, v)
    return (left == 0) == (v == W.theta), left, v == W.theta


@axiom("IP.symmetric")
def _ip_symmetric(ctx, u, v):
    W, ip = ctx
    left, right = ip(u, v), ip(v, u)
    return left == right, left, right


@axiom("IP.additive")
def _ip_additive(ctx, u, v, w):
    W, ip = ctx
    left = sup_inner_left(ip, W.add(u, v), w).value
    right = ip(u, w) + ip(v, w)
    return left == right, left, right


@axiom("IP.homogeneous")
def _ip_homogeneous(ctx, a, u, v):
    W, ip = ctx
    left = sup_inner_left(ip, W.star(a, u), v).value
    right = a * ip(u, v)
    return left == right, left, right


@axiom("IP.additive_right")
def _ip_additive_right(ctx, u, v, w):
    W, ip = ctx
    left = sup_inner_right(ip, u, W.add(v, w)).value
    right = ip(u, v) + ip(u, w)
    return left == right, left, right


@axiom("IP.homogeneous_right")
def _ip_homogeneous_right(ctx, a, u, v):
    W, ip = ctx
    left = sup_inner_right(ip, u, W.star(a, v)).value
    right = a * ip(u, v)
    return left == right, left, right


@axiom("IP.theta")
def _ip_theta(ctx, v):
    W, ip = ctx
    left = (ip(v, W.theta), ip(W.theta, v))
    right = (Fraction(0), Fraction(0))
    return left == right, left, right


def check_inner_axioms(W: HyperVectorSpace, ip: InnerProduct, scalars=None, vectors=None,
                       max_violations: int = DEFAULT_MAX_VIOLATIONS) -> list[Violation]:
    """Positivity, definiteness, symmetry, and the two sup-linearity laws."""
    S = elements_of(W.scalars.carrier, scalars)
    V = elements_of(W.vectors.carrier, vectors)
    ctx, cap = (W, ip), max_violations
    found = collect(ctx, "IP.positive", ((v,) for v in V), cap)
    found += collect(ctx, "IP.definite", ((v,) for v in V), cap)
    found += collect(ctx, "IP.symmetric", itertools.product(V, V), cap)
    found += collect(ctx, "IP.additive", itertools.product(V, V, V), cap)
    found += collect(ctx, "IP.homogeneous", itertools.product(S, V, V), cap)
    return found


def check_second_argument_linearity(W: HyperVectorSpace, ip: InnerProduct, scalars=None,
                                    vectors=None, max_violations: int = DEFAULT_MAX_VIOLATIONS
                                    ) -> list[Violation]:
    """Sup-linearity in the second argument and ``<v, theta> = <theta, v> = 0``."""
    S = elements_of(W.scalars.carrier, scalars)
    V = elements_of(W.vectors.carrier, vectors)
    ctx, cap = (W, ip), max_violations
    found = collect(ctx, "IP.additive_right", itertools.product(V, V, V), cap)
    found += collect(ctx, "IP.homogeneous_right", itertools.product(S, V, V), cap)
    found += collect(ctx, "IP.theta", ((v,) for v in V), cap)
    return found


@dataclass(frozen=True)
class BilinearExpansion:
    enumerated: SupValue
    formula: Fraction

    @property
    def agrees(self) -> bool:
        return self.enumerated.value == self.formula


def bilinear_expand(W: HyperVectorSpace, ip: InnerProduct, alpha, a, beta, gamma, b, delta
                    ) -> BilinearExpansion:
    """``sup <alpha # a*beta, gamma # b*delta>`` by enumeration, next to
    ``<alpha,gamma> + a<beta,gamma> + b<alpha,delta> + ab<beta,delta>``."""
    left = extend_point_set(W.add, alpha, W.star(a, beta))
    right = extend_point_set(W.add, gamma, W.star(b, delta))
    enumerated = sup(((x, y), ip(x, y)) for x in left for y in right)
    formula = (ip(alpha, gamma) + a * ip(beta, gamma) + b * ip(alpha, delta)
               + a * b * ip(beta, delta))
    return BilinearExpansion(enumerated, formula)


@axiom("IP.bilinear")
def _ip_bilinear(ctx, alpha, a, beta, gamma, b, delta):
    W, ip = ctx
    e = bilinear_expand(W, ip, alpha, a, beta, gamma, b, delta)
    return e.agrees, e.enumerated.value, e.formula


# ---------------------------------------------------------------------------
# Induced norm


def _exact_sqrt(q: Fraction) -> Fraction | None:
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True, order=True)
class InducedNorm:
    """``sqrt(square)`` held exactly; ordering compares the squares."""

    square: Fraction

    def exact(self) -> Fraction | None:
        """The norm as a rational when ``square`` is a perfect square, else None."""
        return _exact_sqrt(self.square)

    def __float__(self) -> float:
        return math.sqrt(self.square)

    def __repr__(self) -> str:
        root = self.exact()
        if root is not None:
            return f"InducedNorm({format_element(root)})"
        return f"InducedNorm(sqrt({format_element(self.square)}))"


def induced_norm(ip: InnerProduct, v) -> InducedNorm:
    square = ip(v, v)
    if square < 0:
        raise StructureError(f"<v, v> = {square} is negative for v = {format_element(v)}")
    return InducedNorm(square)


def _le_sum_of_roots(s: Fraction, A: Fraction, B: Fraction) -> bool:
    """``s <= A + B + 2*sqrt(A*B)`` for ``A, B >= 0``, decided exactly."""
    d = s - A - B
    return d <= 0 or d * d <= 4 * A * B


@axiom("CS")
def _cauchy_schwarz(ctx, u, v):
    W, ip = ctx
    left = ip(u, v) ** 2
    right = ip(u, u) * ip(v, v)
    return left <= right, left, right


def check_cauchy_schwarz(W: HyperVectorSpace, ip: InnerProduct, pairs,
                         max_violations: int = DEFAULT_MAX_VIOLATIONS) -> list[Violation]:
    """``<u, v>^2 <= <u, u><v, v>`` on every pair."""
    return collect((W, ip), "CS", pairs, max_violations)


@axiom("IN.nonneg")
def _in_nonneg(ctx, v):
    W, ip = ctx
    left = ip(v, v)
    return left >= 0, left, Fraction(0)


@axiom("IN.definite")
def _in_definite(ctx, v):
    W, ip = ctx
    left = ip(v, v)
    return (left == 0) == (v == W.theta), left, v == W.theta


@axiom("IN.triangle")
def _in_triangle(ctx, u, v):
    W, ip = ctx
    s = sup_square(ip, W.add(u, v)).value
    A, B = ip(u, u), ip(v, v)
    return _le_sum_of_roots(s, A, B), s, (A, B)


@axiom("IN.homogeneous")
def _in_homogeneous(ctx, a, v):
    W, ip = ctx
    left = sup_square(ip, W.star(a, v)).value
    right = W.scalars.absolute(a) ** 2 * ip(v, v)
    return left <= right, left, right


def check_induced_norm(W: HyperVectorSpace, ip: InnerProduct, scalars=None, vectors=None,
                       max_violations: int = DEFAULT_MAX_VIOLATIONS) -> list[Violation]:
    """The four norm axioms for ``sqrt(<v, v>)``, all in squared form.

    The triangle law compares ``s = sup <x, x>`` over ``x`` in ``u # v``
    with ``(|u| + |v|)^2 = A + B + 2 sqrt(AB)``; the right side's witness is
    reported as the pair ``(A, B)``.
    """
    if W.scalars.abs is None:
        raise PreconditionError("norm homogeneity needs an absolute value on the scalars")
    S = elements_of(W.scalars.carrier, scalars)
    V = elements_of(W.vectors.carrier, vectors)
    ctx, cap = (W, ip), max_violations
    found = collect(ctx, "IN.nonneg", ((v,) for v in V), cap)
    found += collect(ctx, "IN.definite", ((v,) for v in V), cap)
    found += collect(ctx, "IN.triangle", itertools.product(V, V), cap)
    found += collect(ctx, "IN.homogeneous", itertools.product(S, V), cap)
    return found


def parallelogram_terms(W: HyperVectorSpace, ip: InnerProduct, u, v) -> tuple:
    """``(sup|u # v|^2 + sup|u # -v|^2, 2|u|^2 + 2|v|^2)``."""
    plus = sup_square(ip, W.add(u, v)).value
    minus = sup_square(ip, W.add(u, W.neg_vector(v))).value
    return plus + minus, 2 * ip(u, u) + 2 * ip(v, v)


@axiom("PAR")
def _parallelogram(ctx, u, v):
    W, ip = ctx
    left, right = parallelogram_terms(W, ip, u, v)
    return left <= right, left, right


def check_parallelogram(W: HyperVectorSpace, ip: InnerProduct, pairs,
                        max_violations: int = DEFAULT_MAX_VIOLATIONS) -> list[Violation]:
    return collect((W, ip), "PAR", pairs, max_violations)


# ---------------------------------------------------------------------------
# Orthogonality


@dataclass
class OrthogonalityVerdict:
    holds: bool
    witness: tuple | None = None
    value: Fraction | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_orthogonal_set(ip: InnerProduct, S) -> OrthogonalityVerdict:
    S = list(S)
    for i, j in itertools.combinations(range(len(S)), 2):
        if S[i] == S[j]:
            continue
        value = ip(S[i], S[j])
        if value != 0:
            return OrthogonalityVerdict(False, (S[i], S[j]), value)
    return OrthogonalityVerdict(True)


def is_orthonormal_set(ip: InnerProduct, S) -> OrthogonalityVerdict:
    S = list(S)
    verdict = is_orthogonal_set(ip, S)
    if not verdict:
        return verdict
    for v in S:
        value = ip(v, v)
        if value != 1:
            return OrthogonalityVerdict(False, (v,), value)
    return OrthogonalityVerdict(True)


def check_orthogonal_independence(W: HyperVectorSpace, ip: InnerProduct, S, pool, universe
                                  ) -> WeakIndependenceVerdict:
    """An orthogonal set of non-null vectors is weakly independent.

    A dependent verdict is a finding about the structure, not an error.
    """
    S = list(S)
    if any(v == W.theta or ip(v, v) == 0 for v in S):
        raise PreconditionError("the set must consist of non-null vectors")
    verdict = is_orthogonal_set(ip, S)
    if not verdict:
        raise PreconditionError(f"not an orthogonal set: {verdict.witness}")
    return is_weak_linearly_independent(W, S, pool, universe)


def fourier_coefficients(ip: InnerProduct, alpha, S) -> tuple:
    """``<alpha, s_i> / <s_i, s_i>`` for each ``s_i`` in ``S``."""
    out = []
    for s in S:
        square = ip(s, s)
        if square == 0:
            raise DegenerateVectorError(f"{format_element(s)} has zero length")
        out.append(ip(alpha, s) / square)
    return tuple(out)


def fourier_reconstructs(W: HyperVectorSpace, ip: InnerProduct, alpha, S) -> bool:
    """Whether ``alpha`` lies in the combination with its Fourier coefficients."""
    return alpha in linear_combination(W, fourier_coefficients(ip, alpha, S), S)


# ---------------------------------------------------------------------------
# Gram-Schmidt


@dataclass(frozen=True)
class GramSchmidtStep:
    index: int
    source: object
    coefficients: tuple
    correction: FiniteSet | None
    candidates: FiniteSet
    chosen: object


@dataclass
class GramSchmidtResult:
    vectors: tuple
    log: list = field(default_factory=list)


def gram_schmidt(W: HyperVectorSpace, ip: InnerProduct, S) -> GramSchmidtResult:
    """Orthogonalize ``S`` one vector at a time.

    For ``k >= 2`` the correction set ``T`` is the combination of the earlier
    outputs with coefficients ``<w_k, v_j> / <v_j, v_j>``; the candidates are
    ``{w_k} # (-T)`` and ``v_k`` is the canonically least candidate of
    non-zero length.
    """
    S = [W.vectors.carrier.normalize(w) for w in S]
    if not S:
        raise PreconditionError("nothing to orthogonalize")
    C = W.vectors.carrier
    first = S[0]
    if ip(first, first) == 0:
        raise LinearDependenceError(
            "input not linearly independent: the first vector has zero length")
    out = [first]
    log = [GramSchmidtStep(1, first, (), None, FiniteSet([first], C), first)]
    for k, w in enumerate(S[1:], start=2):
        coeffs = tuple(ip(w, v) / ip(v, v) for v in out)
        T = linear_combination(W, coeffs, out)
        negT = FiniteSet((W.neg_vector(x) for x in T), C)
        cands = extend_set_set(W.add, [w], negT)
        usable = [x for x in cands if ip(x, x) != 0]
        if not usable:
            raise LinearDependenceError(
                f"input not linearly independent: candidate set for vector {k} "
                f"is {cands!r}, which has no vector of non-zero length")
        chosen = usable[0]
        out.append(chosen)
        log.append(GramSchmidtStep(k, w, coeffs, T, cands, chosen))
    return GramSchmidtResult(tuple(out), log)


@dataclass
class SpanVerdict:
    agrees: bool
    rows: list
    pool: tuple
    probes: tuple


def check_span_preserved(W: HyperVectorSpace, ip: InnerProduct, S, S_prime, pool, probes
                         ) -> SpanVerdict:
    """Each probe is reachable from ``S`` exactly when it is reachable from
    ``S_prime``, with coefficients drawn from ``pool``."""
    pool, probes = tuple(pool), tuple(probes)
    rows = []
    agrees = True
    for p in probes:
        over_s = representation(W, S, p, pool)
        over_t = representation(W, S_prime, p, pool)
        same = (over_s is None) == (over_t is None)
        agrees = agrees and same
        rows.append((p, over_s, over_t, same))
    return SpanVerdict(agrees, rows, pool, probes)
