"""Hypergroups, hyperrings and hyperfields, with axiom checkers.

Every axiom is a named evaluator ``fn(structure, *witness) -> (holds, left,
right)`` registered in :data:`AXIOMS`.  Checkers enumerate witnesses and
collect a :class:`Violation` for each failing one; :func:`replay` re-runs the
evaluator on a recorded violation, so every reported witness can be
reproduced independently of the checker that found it.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping

from .setalg import (
    DomainError,
    FiniteCarrier,
    FiniteSet,
    HyperOp,
    PreconditionError,
    RationalCarrier,
    ScalarOp,
    extend_point_set,
    extend_set_point,
)

DEFAULT_MAX_VIOLATIONS = 16

AXIOMS: dict[str, Callable] = {}


def axiom(name: str):
    def register(fn):
        AXIOMS[name] = fn
        return fn
    return register


@dataclass(frozen=True)
class Violation:
    """A failing axiom instance: the axiom id, the witness, and both sides."""

    axiom: str
    witness: tuple
    left: object = None
    right: object = None


def evaluate(structure, axiom_id: str, *witness):
    """Evaluate one axiom instance; returns ``(holds, left, right)``."""
    return AXIOMS[axiom_id](structure, *witness)


def replay(structure, violation: Violation) -> bool:
    """True iff re-evaluating the witness reproduces the recorded failure."""
    holds, left, right = evaluate(structure, violation.axiom, *violation.witness)
    return not holds and left == violation.left and right == violation.right


def collect(structure, axiom_id: str, witnesses: Iterable, cap: int) -> list[Violation]:
    fn = AXIOMS[axiom_id]
    found = []
    for w in witnesses:
        holds, left, right = fn(structure, *w)
        if not holds:
            found.append(Violation(axiom_id, tuple(w), left, right))
            if len(found) >= cap:
                break
    return found


def lookup(mapping, x):
    """Apply a map given either as a mapping or as a callable."""
    if mapping is None:
        raise PreconditionError("map is not available on this structure")
    if callable(mapping):
        return mapping(x)
    return mapping[x]


def elements_of(carrier, elements=None) -> tuple:
    if elements is not None:
        return tuple(carrier.normalize(e) for e in elements)
    if not carrier.finite:
        raise PreconditionError("infinite carrier: pass explicit sample elements")
    return tuple(carrier)


# ---------------------------------------------------------------------------
# Hypergroups


@dataclass(frozen=True)
class Hypergroup:
    carrier: object
    add: HyperOp
    zero: object = None
    neg: Mapping | Callable | None = None
    commutative: bool = False

    def negate(self, x):
        return lookup(self.neg, x)


def _additive(structure) -> Hypergroup:
    return structure.additive if isinstance(structure, Hyperfield) else structure


@axiom("HG.assoc")
def _hg_assoc(H, a, b, c):
    H = _additive(H)
    left = extend_point_set(H.add, a, H.add(b, c))
    right = extend_set_point(H.add, H.add(a, b), c)
    return left == right, left, right


@axiom("HG.comm")
def _hg_comm(H, a, b):
    H = _additive(H)
    left, right = H.add(a, b), H.add(b, a)
    return left == right, left, right


def inverses(H: Hypergroup, zero, a, elements) -> FiniteSet:
    return FiniteSet((b for b in elements if zero in H.add(a, b) and zero in H.add(b, a)),
                     H.carrier)


@axiom("HG.inverse")
def _hg_inverse(H, zero, a, *elements):
    H = _additive(H)
    pool = list(elements or elements_of(H.carrier))
    if H.neg is not None and H.zero == zero and H.negate(a) not in pool:
        pool.append(H.negate(a))
    found = inverses(H, zero, a, pool)
    return len(found) == 1, found, 1


@axiom("HG.zero")
def _hg_zero(H, *elements):
    H = _additive(H)
    elements = elements or elements_of(H.carrier)
    found = FiniteSet(zero_candidates(H, elements), H.carrier)
    return len(found) > 0, found, None


def _negation_for(H, zero, c):
    """``-c`` relative to ``zero``: the stored map when it applies, else the
    unique inverse found in a finite carrier."""
    if H.neg is not None and H.zero == zero:
        return H.negate(c)
    found = inverses(H, zero, c, elements_of(H.carrier))
    if len(found) != 1:
        raise PreconditionError(f"no unique inverse of {c!r} for zero {zero!r}")
    return found.first()


@axiom("HG.reverse")
def _hg_reverse(H, zero, a, b, c):
    H = _additive(H)
    left = H.add(a, _negation_for(H, zero, c))
    if a not in H.add(b, c):
        return True, left, b
    return b in left, left, b


def _filled(H: Hypergroup) -> Hypergroup:
    """``H`` with zero and negation discovered when they are not stored."""
    if H.zero is not None and H.neg is not None:
        return H
    report = check_hypergroup(H)
    if not report.is_hypergroup:
        raise PreconditionError("not a hypergroup")
    return report.structure


@axiom("HG.double_neg")
def _hg_double_neg(H, a):
    H = _filled(_additive(H))
    left = H.negate(H.negate(a))
    return left == a, left, a


@axiom("HG.zero_absorb")
def _hg_zero_absorb(H, a):
    H = _filled(_additive(H))
    left = H.add(H.zero, a)
    right = FiniteSet([a], H.carrier)
    return left == right, left, right


@axiom("HG.zero_unique")
def _hg_zero_unique(H, z, *elements):
    H = _filled(_additive(H))
    elements = elements or elements_of(H.carrier)
    valid = z == H.zero or not _reversible_zero(H, z, elements)
    return valid, z, H.zero


def zero_candidates(H: Hypergroup, elements) -> list:
    """Elements ``z`` for which every element has a unique two-sided inverse."""
    return [z for z in elements
            if all(len(inverses(H, z, a, elements)) == 1 for a in elements)]


def _neg_map(H, zero, elements) -> dict:
    if H.neg is not None and H.zero == zero:
        return {a: H.negate(a) for a in elements}
    return {a: inverses(H, zero, a, elements).first() for a in elements}


def _reversible_zero(H, z, elements) -> bool:
    if any(len(inverses(H, z, a, elements)) != 1 for a in elements):
        return False
    filled = dataclasses.replace(H, zero=z, neg=_neg_map(H, z, elements))
    return not collect(filled, "HG.reverse",
                       ((z,) + t for t in itertools.product(elements, repeat=3)), 1)


def check_semihypergroup(H: Hypergroup, elements=None,
                         max_violations: int = DEFAULT_MAX_VIOLATIONS) -> list[Violation]:
    els = elements_of(H.carrier, elements)
    return collect(H, "HG.assoc", itertools.product(els, repeat=3), max_violations)


@dataclass
class HypergroupReport:
    is_hypergroup: bool
    zero: object
    neg_map: dict
    zero_candidates: tuple
    violations: list
    structure: Hypergroup
    contradiction: tuple = ()


def check_hypergroup(H: Hypergroup, elements=None,
                     max_violations: int = DEFAULT_MAX_VIOLATIONS) -> HypergroupReport:
    """Check associativity, a zero with unique inverses, and reversibility.

    When ``H.zero`` is unset every element is tried as a zero.  On success
    the returned report carries ``structure``, a copy of ``H`` with zero and
    negation filled in.
    """
    els = elements_of(H.carrier, elements)
    cap = max_violations
    violations = check_semihypergroup(H, els, cap)
    if H.commutative:
        violations += collect(H, "HG.comm", itertools.combinations(els, 2), cap)

    if H.zero is not None:
        if H.zero not in els:
            raise DomainError(f"designated zero {H.zero!r} is not an element")
        candidates = [H.zero]
        # on an infinite carrier the samples travel with the witness
        extra = () if H.carrier.finite else els
        inverse_failures = collect(H, "HG.inverse", ((H.zero, a) + extra for a in els), cap)
        if inverse_failures:
            violations += inverse_failures
            candidates = []
    else:
        candidates = zero_candidates(H, els)
        if not candidates:
            violations += collect(H, "HG.zero", [()], cap)

    valid = []
    first_failure = []
    for z in candidates:
        filled = dataclasses.replace(H, zero=z, neg=_neg_map(H, z, els))
        rev = collect(filled, "HG.reverse",
                      ((z,) + t for t in itertools.product(els, repeat=3)), cap)
        if rev:
            first_failure = first_failure or rev
        else:
            valid.append(z)
    if candidates and not valid:
        violations += first_failure

    contradiction = ()
    zero = valid[0] if valid else None
    neg_map = _neg_map(H, zero, els) if valid else {}
    keep = H.neg is not None and H.zero == zero and not H.carrier.finite
    structure = (dataclasses.replace(H, zero=zero, neg=H.neg if keep else neg_map)
                 if valid else H)
    if H.commutative and len(valid) > 1:
        # impossible for a genuine commutative hypergroup; reported, not hidden
        contradiction = tuple(valid)
        violations += [Violation("HG.zero_unique", (z,), z, zero) for z in valid[1:]]

    ok = not violations and bool(valid)
    return HypergroupReport(ok, zero, neg_map, tuple(candidates), violations,
                            structure, contradiction)


def check_hypergroup_consequences(H: Hypergroup, elements=None,
                                  max_violations: int = DEFAULT_MAX_VIOLATIONS) -> list[Violation]:
    """Double negation, ``0 # a = {a}`` and uniqueness of the zero.

    The last two only apply to commutative hypergroups.  If ``H`` lacks a
    zero or negation they are discovered through :func:`check_hypergroup`.
    """
    els = elements_of(H.carrier, elements)
    if H.zero is None or H.neg is None:
        report = check_hypergroup(H, els, max_violations)
        if not report.is_hypergroup:
            raise PreconditionError("not a hypergroup")
        H = report.structure
    found = collect(H, "HG.double_neg", ((a,) for a in els), max_violations)
    if H.commutative:
        found += collect(H, "HG.zero_absorb", ((a,) for a in els), max_violations)
        found += collect(H, "HG.zero_unique", ((z,) for z in els), max_violations)
    return found


# ---------------------------------------------------------------------------
# Hyperrings and hyperfields


@dataclass(frozen=True)
class Hyperfield:
    """Scalar structure: hyperaddition, multiplication and designated constants.

    ``neg``, ``inv`` and ``abs`` may be mappings or callables.  ``abs`` is
    only needed by norm checks.
    """

    carrier: object
    add: HyperOp
    mul: ScalarOp
    zero: object
    one: object = None
    neg: Mapping | Callable | None = None
    inv: Mapping | Callable | None = None
    abs: Mapping | Callable | None = None
    name: str | None = field(default=None, compare=False)

    @cached_property
    def additive(self) -> Hypergroup:
        return Hypergroup(self.carrier, self.add, self.zero, self.neg, commutative=True)

    def negate(self, x):
        if self.neg is None:
            report = check_hypergroup(self.additive)
            if not report.is_hypergroup:
                raise PreconditionError("additive structure has no negation")
            object.__setattr__(self, "neg", report.neg_map)
        return lookup(self.neg, x)

    def invert(self, x):
        return lookup(self.inv, x)

    def absolute(self, x):
        return lookup(self.abs, x)


@axiom("HF.mul.assoc")
def _hf_mul_assoc(F, a, b, c):
    left, right = F.mul(a, F.mul(b, c)), F.mul(F.mul(a, b), c)
    return left == right, left, right


@axiom("HF.mul.comm")
def _hf_mul_comm(F, a, b):
    left, right = F.mul(a, b), F.mul(b, a)
    return left == right, left, right


@axiom("HF.dist.left")
def _hf_dist_left(F, a, b, c):
    left = FiniteSet((F.mul(a, x) for x in F.add(b, c)), F.carrier)
    right = F.add(F.mul(a, b), F.mul(a, c))
    return left == right, left, right


@axiom("HF.dist.right")
def _hf_dist_right(F, a, b, c):
    left = FiniteSet((F.mul(x, a) for x in F.add(b, c)), F.carrier)
    right = F.add(F.mul(b, a), F.mul(c, a))
    return left == right, left, right


@axiom("HF.mul.zero")
def _hf_mul_zero(F, a):
    left = (F.mul(a, F.zero), F.mul(F.zero, a))
    right = (F.zero, F.zero)
    return left == right, left, right


@axiom("HF.one")
def _hf_one(F, a):
    left = F.mul(a, F.one)
    return left == a, left, a


@axiom("HF.nontrivial")
def _hf_nontrivial(F):
    return F.one != F.zero, F.one, F.zero


@axiom("HF.inverse")
def _hf_inverse(F, a, *elements):
    pool = list(elements or elements_of(F.carrier))
    if F.inv is not None:
        pool.append(F.invert(a))
    found = FiniteSet((b for b in pool if F.mul(a, b) == F.one), F.carrier)
    return len(found) > 0, found, F.one


@axiom("HF.abs.zero")
def _hf_abs_zero(F):
    left = F.absolute(F.zero)
    return left == 0, left, Fraction(0)


@axiom("HF.abs.pos")
def _hf_abs_pos(F, a):
    left = F.absolute(a)
    return left > 0, left, Fraction(0)


@axiom("HF.abs.mult")
def _hf_abs_mult(F, a, b):
    left = F.absolute(F.mul(a, b))
    right = F.absolute(a) * F.absolute(b)
    return left == right, left, right


def check_hyperring(R: Hyperfield, elements=None,
                    max_violations: int = DEFAULT_MAX_VIOLATIONS) -> list[Violation]:
    """Commutative hypergroup addition, semigroup multiplication,
    two-sided distributivity (as set equality) and an absorbing zero."""
    els = elements_of(R.carrier, elements)
    cap = max_violations
    report = check_hypergroup(R.additive, els, cap)
    violations = list(report.violations)
    if report.is_hypergroup and report.zero != R.zero:
        violations.append(Violation("HG.zero", (), report.zero, R.zero))
    triples = list(itertools.product(els, repeat=3))
    violations += collect(R, "HF.mul.assoc", triples, cap)
    violations += collect(R, "HF.dist.left", triples, cap)
    violations += collect(R, "HF.dist.right", triples, cap)
    violations += collect(R, "HF.mul.zero", ((a,) for a in els), cap)
    return violations


@dataclass
class HyperfieldReport:
    is_hyperfield: bool
    one: object
    inv: dict
    neg: dict
    violations: list
    structure: Hyperfield
    reason: str = ""


def check_hyperfield(F: Hyperfield, elements=None,
                     max_violations: int = DEFAULT_MAX_VIOLATIONS) -> HyperfieldReport:
    els = elements_of(F.carrier, elements)
    cap = max_violations
    violations = check_hyperring(F, els, cap)
    one = F.one
    if one is None:
        found = [e for e in els if all(F.mul(a, e) == a for a in els)]
        if not found:
            return HyperfieldReport(False, None, {}, {}, violations, F, "no identity")
        nonzero = [e for e in found if e != F.zero]
        one = (nonzero or found)[0]
    elif one not in els:
        raise DomainError(f"designated one {one!r} is not an element")
    G = dataclasses.replace(F, one=one)
    violations += collect(G, "HF.nontrivial", [()], cap)
    violations += collect(G, "HF.one", ((a,) for a in els), cap)
    nonzero = [a for a in els if a != G.zero]
    extra = () if G.carrier.finite else els
    violations += collect(G, "HF.inverse", ((a,) + extra for a in nonzero), cap)
    violations += collect(G, "HF.mul.comm", itertools.combinations(els, 2), cap)
    if G.abs is not None:
        violations += collect(G, "HF.abs.zero", [()], cap)
        violations += collect(G, "HF.abs.pos", ((a,) for a in nonzero), cap)
        violations += collect(G, "HF.abs.mult", itertools.product(els, repeat=2), cap)

    inv = {}
    for a in nonzero:
        for b in els:
            if G.mul(a, b) == one:
                inv[a] = b
                break
    add_report = check_hypergroup(G.additive, els, cap)
    neg = add_report.neg_map
    ok = not violations
    reason = "" if ok else "axiom violations"
    structure = dataclasses.replace(G, inv=G.inv if G.inv is not None else inv,
                                    neg=G.neg if G.neg is not None else (neg or None))
    return HyperfieldReport(ok, one, inv, neg, violations, structure, reason)


# ---------------------------------------------------------------------------
# Constructions


def field_as_trivial_hyperfield(elements, add: Callable, mul: Callable, zero, one,
                                neg=None, inv=None, abs=None, name=None) -> Hyperfield:
    """Embed a classical finite field: ``a (+) b = {a + b}``."""
    carrier = FiniteCarrier(elements)
    hadd = HyperOp(carrier, table={(a, b): (add(a, b),) for a in carrier for b in carrier},
                   name=name)
    hmul = ScalarOp(carrier, table={(a, b): mul(a, b) for a in carrier for b in carrier})
    return Hyperfield(carrier, hadd, hmul, zero, one, neg, inv, abs, name=name)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def prime_field(p: int) -> Hyperfield:
    """GF(p) as a trivial hyperfield on ``0..p-1``."""
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    return field_as_trivial_hyperfield(
        range(p), lambda a, b: (a + b) % p, lambda a, b: (a * b) % p, 0, 1,
        neg={a: (-a) % p for a in range(p)},
        inv={a: pow(a, -1, p) for a in range(1, p)},
        name=f"GF({p})")


def rational_hyperfield() -> Hyperfield:
    """The exact rationals with singleton hyperaddition."""
    Q = RationalCarrier()
    return Hyperfield(
        Q,
        HyperOp(Q, rule=lambda a, b: (a + b,), name="sum"),
        ScalarOp(Q, rule=lambda a, b: a * b, name="product"),
        Fraction(0), Fraction(1),
        neg=lambda a: -a, inv=lambda a: 1 / a, abs=lambda a: abs(a),
        name="Q")


def krasner_hyperfield() -> Hyperfield:
    """{0, 1} with 1 (+) 1 = {0, 1}."""
    carrier = FiniteCarrier([0, 1])
    add = HyperOp(carrier, table={(0, 0): (0,), (0, 1): (1,), (1, 0): (1,), (1, 1): (0, 1)})
    mul = ScalarOp(carrier, table={(a, b): a * b for a in (0, 1) for b in (0, 1)})
    return Hyperfield(carrier, add, mul, 0, 1, neg={0: 0, 1: 1}, inv={1: 1},
                      abs={0: Fraction(0), 1: Fraction(1)}, name="krasner")


def sign_hyperfield() -> Hyperfield:
    """{-1, 0, 1}: x (+) x = {x}, 1 (+) -1 = everything, sign multiplication."""
    carrier = FiniteCarrier([-1, 0, 1])
    table = {}
    for a in carrier:
        for b in carrier:
            if a == 0 or b == 0:
                table[a, b] = (a + b,)
            elif a == b:
                table[a, b] = (a,)
            else:
                table[a, b] = (-1, 0, 1)
    add = HyperOp(carrier, table=table)
    mul = ScalarOp(carrier, table={(a, b): a * b for a in carrier for b in carrier})
    return Hyperfield(carrier, add, mul, 0, 1, neg={a: -a for a in carrier},
                      inv={-1: -1, 1: 1}, abs={a: Fraction(abs(a)) for a in carrier},
                      name="sign")


def z2_hypergroup() -> Hypergroup:
    carrier = FiniteCarrier([0, 1])
    add = HyperOp(carrier, table={(0, 0): (0,), (0, 1): (1,), (1, 0): (1,), (1, 1): (0,)})
    return Hypergroup(carrier, add, commutative=True)


def krasner_quotient(F: Hyperfield, subgroup: Iterable) -> Hyperfield:
    """Quotient of a finite field by a multiplicative subgroup ``G``.

    The carrier is ``{0}`` plus one representative per coset ``aG`` (the
    canonically least member), and ``[a] (+) [b] = {[c] : c in aG + bG}``.
    """
    G = frozenset(subgroup)
    els = elements_of(F.carrier)
    nonzero = [a for a in els if a != F.zero]

    def plus(a, b):
        (c,) = F.add(a, b)
        return c

    if not G or not G <= set(nonzero) or F.one not in G:
        raise DomainError("subgroup must be a subset of the non-zero elements containing one")
    if any(F.mul(g, h) not in G for g in G for h in G):
        raise DomainError("subset is not closed under multiplication")

    def coset(a):
        return frozenset(F.mul(a, g) for g in G)

    rep = {F.zero: F.zero}
    for a in nonzero:
        c = coset(a)
        rep[a] = min(c, key=F.carrier.sort_key)
    reps = sorted(set(rep.values()), key=F.carrier.sort_key)
    carrier = FiniteCarrier(reps)
    table = {}
    for a in reps:
        for b in reps:
            left = coset(a) if a != F.zero else {F.zero}
            right = coset(b) if b != F.zero else {F.zero}
            table[a, b] = tuple({rep[plus(x, y)] for x in left for y in right})
    add = HyperOp(carrier, table=table)
    mul = ScalarOp(carrier, table={(a, b): rep[F.mul(a, b)] for a in reps for b in reps})
    return Hyperfield(carrier, add, mul, F.zero, rep[F.one],
                      name=f"{F.name}/G" if F.name else None)


def sign_quotient_of_rationals(samples: Iterable) -> dict:
    """Coset sums of the sign classes of Q, computed on sample representatives.

    Returns ``{(s, t): set of signs of a*g + b*h}`` where ``a, b`` range over
    the sign representatives -1, 0, 1 and ``g, h`` over the positive samples.
    """
    positives = [Fraction(g) for g in samples if g > 0]
    table = {}
    for s in (-1, 0, 1):
        for t in (-1, 0, 1):
            signs = set()
            for g in positives:
                for h in positives:
                    v = s * g + t * h
                    signs.add((v > 0) - (v < 0))
            table[s, t] = signs
    return table
