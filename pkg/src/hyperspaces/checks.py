"""Named checks over a parsed structure document.

Each check id maps to a runner that takes a :class:`StructureDocument` and a
violation cap and returns a :class:`CheckResult`.  The CLI ``verify``
command is a thin loop over these; the same runners are usable directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .fileformat import StructureDocument
from .hyperspace import (
    check_hvs_axioms,
    check_negation_in_minus_one_star,
    check_combination_makes_dependent,
    coefficient_pool,
    is_basis,
    is_linearly_dependent,
    representation,
    vector_universe,
)
from .hyperstructures import (
    Violation,
    collect,
    check_hyperfield,
    check_hypergroup,
    check_hyperring,
    check_hypergroup_consequences,
    check_semihypergroup,
)
from .inner import (
    check_cauchy_schwarz,
    check_induced_norm,
    check_inner_axioms,
    check_norm_axioms,
    check_parallelogram,
    check_second_argument_linearity,
    check_orthogonal_independence,
    check_span_preserved,
    fourier_coefficients,
    fourier_reconstructs,
    gram_schmidt,
    is_orthogonal_set,
    parallelogram_terms,
)
from .setalg import FiniteSet, PreconditionError, format_element


def show(x):
    """JSON-friendly text for an element, set, verdict or tuple of those."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, FiniteSet):
        return repr(x)
    if isinstance(x, tuple) and any(isinstance(c, (FiniteSet, tuple)) for c in x):
        return "(" + ", ".join(str(show(c)) for c in x) + ")"
    return format_element(x)


def violation_record(v: Violation) -> dict:
    return {"axiom": v.axiom, "witness": [show(w) for w in v.witness],
            "left": show(v.left), "right": show(v.right)}


@dataclass
class CheckResult:
    id: str
    passed: bool
    violations: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.id, "passed": self.passed,
                "violations": [violation_record(v) for v in self.violations],
                "bounds": self.bounds, "details": self.details}


def _listing(xs) -> list:
    return [show(x) for x in xs]


def _need(doc: StructureDocument, *attrs):
    for a in attrs:
        if getattr(doc, a) is None:
            raise PreconditionError(f"this check needs '{a}' in the structure file")


def scalar_samples(doc: StructureDocument) -> tuple:
    F = doc.field
    if doc.scalar_samples is not None:
        return doc.scalar_samples
    if F.carrier.finite:
        return tuple(F.carrier)
    if doc.pool is not None:
        return doc.pool
    raise PreconditionError("infinite scalar carrier: declare scalar_samples or pool")


def vector_samples(doc: StructureDocument) -> tuple:
    W = doc.space
    if doc.vector_samples is not None:
        return doc.vector_samples
    if W.vectors.carrier.finite:
        return tuple(W.vectors.carrier)
    found = []
    for group in (doc.universe, doc.probes, doc.basis, doc.orthogonal):
        for v in group or ():
            if v not in found:
                found.append(v)
    if not found:
        raise PreconditionError("infinite vector carrier: declare vector_samples")
    return tuple(found)


def pool_of(doc: StructureDocument) -> tuple:
    return coefficient_pool(doc.field, doc.pool or ())


def _sample_bounds(doc, scalars=True, vectors=True) -> dict:
    out = {}
    if scalars:
        out["scalar_samples"] = _listing(scalar_samples(doc))
    if vectors:
        out["vector_samples"] = _listing(vector_samples(doc))
    return out


def _result(cid, violations, bounds=None, details=None, passed=None) -> CheckResult:
    ok = not violations if passed is None else passed
    return CheckResult(cid, ok, list(violations), bounds or {}, details or {})


# ---------------------------------------------------------------------------
# Hyperstructure checks


def _group_target(doc):
    if doc.group is not None:
        return doc.group
    if doc.field is not None and doc.field.carrier.finite:
        return doc.field.additive
    raise PreconditionError("this check needs a [group] or a finite [field]")


def _hypergroup(doc, cap):
    H = _group_target(doc)
    r = check_hypergroup(H, max_violations=cap)
    details = {"zero": show(r.zero), "zero_candidates": _listing(r.zero_candidates),
               "negation": {show(a): show(b) for a, b in r.neg_map.items()}}
    if r.contradiction:
        details["contradiction"] = _listing(r.contradiction)
    return _result("hypergroup", r.violations, details=details, passed=r.is_hypergroup)


def _hypergroup_props(doc, cap):
    H = _group_target(doc)
    r = check_hypergroup(H, max_violations=cap)
    if not r.is_hypergroup:
        return _result("hypergroup.props", r.violations,
                       details={"reason": "not a hypergroup"}, passed=False)
    return _result("hypergroup.props",
                   check_hypergroup_consequences(r.structure, max_violations=cap),
                   details={"commutative": r.structure.commutative})


def _semihypergroup(doc, cap):
    return _result("semihypergroup", check_semihypergroup(_group_target(doc), max_violations=cap))


def _field_samples(doc):
    _need(doc, "field")
    F = doc.field
    if F.carrier.finite:
        return None, {}
    s = scalar_samples(doc)
    return s, {"scalar_samples": _listing(s)}


def _hyperring(doc, cap):
    els, bounds = _field_samples(doc)
    return _result("hyperring", check_hyperring(doc.field, els, cap), bounds)


def _hyperfield(doc, cap):
    els, bounds = _field_samples(doc)
    r = check_hyperfield(doc.field, els, cap)
    details = {"one": show(r.one), "reason": r.reason}
    if doc.field.carrier.finite:
        details["inverse"] = {show(a): show(b) for a, b in r.inv.items()}
        details["negation"] = {show(a): show(b) for a, b in r.neg.items()}
    return _result("hyperfield", r.violations, bounds, details, passed=r.is_hyperfield)


# ---------------------------------------------------------------------------
# Hyperspace checks


def _space_axioms(doc, cap):
    _need(doc, "space")
    S, V = scalar_samples(doc), vector_samples(doc)
    return _result("space.axioms", check_hvs_axioms(doc.space, S, V, cap),
                   _sample_bounds(doc))


def _space_negation(doc, cap):
    _need(doc, "space")
    V = vector_samples(doc)
    return _result("space.negation", check_negation_in_minus_one_star(doc.space, V, cap),
                   _sample_bounds(doc, scalars=False))


def _space_dependence(doc, cap):
    """A vector lying in a combination of the basis makes the enlarged list dependent."""
    _need(doc, "space", "basis", "probes")
    W, A, pool = doc.space, list(doc.basis), pool_of(doc)
    rows, failures = [], []
    for p in doc.probes:
        rep = representation(W, A, p, pool)
        if rep is None:
            rows.append({"vector": show(p), "represented": False})
            continue
        support, coeffs = rep
        full = [W.scalars.zero] * len(A)
        for i, c in zip(support, coeffs):
            full[i] = c
        verdict = check_combination_makes_dependent(W, A, p, full, pool)
        rows.append({"vector": show(p), "represented": True,
                     "coefficients": _listing(full), "dependent": verdict.dependent,
                     "relation": _listing(verdict.coefficients or ())})
        if not verdict.dependent:
            failures.append(Violation("SPACE.dependence", (p,), tuple(full), None))
    bounds = {"pool": _listing(pool), "probes": _listing(doc.probes)}
    own = is_linearly_dependent(W, A, pool)
    details = {"rows": rows, "basis_dependent": own.dependent}
    return _result("space.dependence", failures[:cap], bounds, details)


def _space_basis(doc, cap):
    _need(doc, "space", "basis", "probes")
    pool = pool_of(doc)
    v = is_basis(doc.space, doc.basis, doc.probes, pool)
    violations = []
    if not v.independent:
        violations.append(Violation("SPACE.independent", tuple(doc.basis),
                                    v.dependence.coefficients, None))
    violations += [Violation("SPACE.spans", (p,), None, None) for p in v.unreached]
    details = {"independent": v.independent,
               "representations": {show(p): {"support": list(s), "coefficients": _listing(c)}
                                   for p, (s, c) in v.representations.items()}}
    bounds = {"pool": _listing(pool), "probes": _listing(doc.probes)}
    return _result("space.basis", violations[:cap], bounds, details, passed=v.is_basis)


# ---------------------------------------------------------------------------
# Inner product checks


def _inner_ctx(doc):
    _need(doc, "space", "inner")
    return doc.space, doc.inner, scalar_samples(doc), vector_samples(doc)


def _inner_axioms(doc, cap):
    W, ip, S, V = _inner_ctx(doc)
    return _result("inner.axioms", check_inner_axioms(W, ip, S, V, cap), _sample_bounds(doc))


def _inner_consequences(doc, cap):
    """Second-argument linearity, products with theta, and the bilinear expansion."""
    W, ip, S, V = _inner_ctx(doc)
    found = check_second_argument_linearity(W, ip, S, V, cap)
    witnesses = ((al, a, be, ga, b, de)
                 for al, be, ga, de in itertools.product(V, repeat=4)
                 for a, b in itertools.product(S, repeat=2))
    found += collect((W, ip), "IP.bilinear", witnesses, cap)
    expansions = len(V) ** 4 * len(S) ** 2
    return _result("inner.consequences", found, _sample_bounds(doc),
                   {"bilinear_expansions": expansions})


def _cauchy_schwarz(doc, cap):
    W, ip, S, V = _inner_ctx(doc)
    return _result("inner.cauchy-schwarz",
                   check_cauchy_schwarz(W, ip, itertools.product(V, V), cap),
                   _sample_bounds(doc, scalars=False))


def _induced_norm(doc, cap):
    W, ip, S, V = _inner_ctx(doc)
    return _result("inner.induced-norm", check_induced_norm(W, ip, S, V, cap),
                   _sample_bounds(doc))


def _parallelogram(doc, cap):
    W, ip, S, V = _inner_ctx(doc)
    pairs = list(itertools.product(V, V))
    found = check_parallelogram(W, ip, pairs, cap)
    equal = sum(1 for u, v in pairs if len(set(parallelogram_terms(W, ip, u, v))) == 1)
    return _result("inner.parallelogram", found, _sample_bounds(doc, scalars=False),
                   {"pairs": len(pairs), "equalities": equal})


def _norm_axioms(doc, cap):
    _need(doc, "space", "norm")
    S, V = scalar_samples(doc), vector_samples(doc)
    return _result("norm.axioms", check_norm_axioms(doc.space, doc.norm, S, V, cap),
                   _sample_bounds(doc))


def _orthogonal(doc, cap):
    """The declared orthogonal set is orthogonal and weakly independent."""
    _need(doc, "space", "inner", "orthogonal")
    W, ip = doc.space, doc.inner
    S = list(doc.orthogonal)
    pool = pool_of(doc)
    universe = vector_universe(W, doc.universe or ())
    bounds = {"pool": _listing(pool), "universe": _listing(universe)}
    o = is_orthogonal_set(ip, S)
    if not o:
        return _result("inner.orthogonal",
                       [Violation("ORTH.pairwise", o.witness, o.value, 0)], bounds)
    v = check_orthogonal_independence(W, ip, S, pool, universe)
    found = []
    if not v.independent:
        found.append(Violation("ORTH.weak_independence", tuple(S), v.coefficients, v.P))
    return _result("inner.orthogonal", found, bounds,
                   {"weakly_independent": v.independent,
                    "scope": "subsets of the declared universe"})


def _fourier(doc, cap):
    """Every probe reachable from the orthogonal set is rebuilt by its Fourier coefficients."""
    _need(doc, "space", "inner", "orthogonal", "probes")
    W, ip, S = doc.space, doc.inner, list(doc.orthogonal)
    pool = pool_of(doc)
    rows, found = [], []
    for p in doc.probes:
        coeffs = fourier_coefficients(ip, p, S)
        reachable = representation(W, S, p, pool) is not None
        rebuilt = fourier_reconstructs(W, ip, p, S)
        rows.append({"vector": show(p), "coefficients": _listing(coeffs),
                     "reachable": reachable, "reconstructs": rebuilt})
        if reachable and not rebuilt and len(found) < cap:
            found.append(Violation("FOURIER.reconstruct", (p,), coeffs, None))
    return _result("inner.fourier", found,
                   {"pool": _listing(pool), "probes": _listing(doc.probes)}, {"rows": rows})


def gram_schmidt_check(doc, cap, vectors=None) -> CheckResult:
    W, ip = doc.space, doc.inner
    S = list(vectors if vectors is not None else doc.gram_schmidt)
    result = gram_schmidt(W, ip, S)
    log = [{"index": s.index, "source": show(s.source),
            "coefficients": _listing(s.coefficients),
            "correction": show(s.correction), "candidates": show(s.candidates),
            "chosen": show(s.chosen)} for s in result.log]
    found = []
    o = is_orthogonal_set(ip, result.vectors)
    if not o:
        found.append(Violation("ORTH.pairwise", o.witness, o.value, 0))
    details = {"input": _listing(S), "output": _listing(result.vectors), "log": log,
               "orthogonal": bool(o)}
    bounds = {}
    if doc.probes is not None:
        pool = pool_of(doc)
        span = check_span_preserved(W, ip, S, result.vectors, pool, doc.probes)
        bounds = {"pool": _listing(pool), "probes": _listing(doc.probes)}
        details["span_agrees"] = span.agrees
        for p, over_s, over_t, same in span.rows:
            if not same:
                found.append(Violation("GS.span", (p,), over_s is not None,
                                       over_t is not None))
    return _result("gram-schmidt", found[:cap], bounds, details)


def _gram_schmidt(doc, cap):
    _need(doc, "space", "inner", "gram_schmidt")
    return gram_schmidt_check(doc, cap)


CHECKS: dict[str, Callable] = {
    "semihypergroup": _semihypergroup,
    "hypergroup": _hypergroup,
    "hypergroup.props": _hypergroup_props,
    "hyperring": _hyperring,
    "hyperfield": _hyperfield,
    "space.axioms": _space_axioms,
    "space.negation": _space_negation,
    "space.dependence": _space_dependence,
    "space.basis": _space_basis,
    "inner.axioms": _inner_axioms,
    "inner.consequences": _inner_consequences,
    "inner.cauchy-schwarz": _cauchy_schwarz,
    "inner.induced-norm": _induced_norm,
    "inner.parallelogram": _parallelogram,
    "norm.axioms": _norm_axioms,
    "inner.orthogonal": _orthogonal,
    "inner.fourier": _fourier,
    "gram-schmidt": _gram_schmidt,
}


def applicable(doc: StructureDocument) -> list:
    """Check ids whose inputs the document declares."""
    ids = []
    finite_field = doc.field is not None and doc.field.carrier.finite
    if doc.group is not None or finite_field:
        ids += ["semihypergroup", "hypergroup", "hypergroup.props"]
    if finite_field or (doc.field is not None and doc.space is None
                        and (doc.scalar_samples or doc.pool)):
        ids += ["hyperring", "hyperfield"]
    if doc.space is not None:
        ids += ["space.axioms", "space.negation"]
        if doc.basis is not None and doc.probes is not None:
            ids += ["space.dependence", "space.basis"]
        if doc.inner is not None:
            ids += ["inner.axioms", "inner.consequences", "inner.cauchy-schwarz",
                    "inner.induced-norm", "inner.parallelogram"]
            if doc.orthogonal is not None:
                ids.append("inner.orthogonal")
                if doc.probes is not None:
                    ids.append("inner.fourier")
            if doc.gram_schmidt is not None:
                ids.append("gram-schmidt")
        if doc.norm is not None:
            ids.append("norm.axioms")
    return ids


def run_check(doc: StructureDocument, check_id: str, max_violations: int) -> CheckResult:
    if check_id not in CHECKS:
        raise PreconditionError(
            f"unknown check {check_id!r}; known: {', '.join(CHECKS)}")
    return CHECKS[check_id](doc, max_violations)
