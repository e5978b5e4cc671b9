"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines are
printed even when output capture is on.
"""

import contextlib
import json
import random
import time
from fractions import Fraction

import pytest
from click.testing import CliRunner

import oracles
from hyperspaces import report as rpt
from hyperspaces.cli import main
from hyperspaces.checks import pool_of
from hyperspaces.fileformat import parse_structure, serialize
from hyperspaces.fixtures import (
    CONE_WITNESS,
    ECHO_WITNESS,
    FIXTURES,
    MUTATIONS,
    ORTHOGONAL_FIXTURES,
    fixture,
    mutate,
    write_fixtures,
)
from hyperspaces.hyperspace import (
    check_hvs_axioms,
    is_weak_linearly_independent,
    trivial_space,
    vector_universe,
)
from hyperspaces.hyperstructures import (
    check_hyperfield,
    check_hypergroup_consequences,
    evaluate,
    krasner_hyperfield,
    prime_field,
    replay,
    sign_hyperfield,
)
from hyperspaces.inner import (
    LinearDependenceError,
    bilinear_expand,
    check_inner_axioms,
    check_orthogonal_independence,
    check_span_preserved,
    dot_product,
    fourier_reconstructs,
    gram_schmidt,
    is_orthogonal_set,
    parallelogram_terms,
)
from hyperspaces.search import SearchSpec, enumerate_hypergroups

SEED = 20240611
DOT = dot_product()


@pytest.fixture
def gate(capsys):
    @contextlib.contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        verdict, note = "FAIL", ""
        try:
            yield
            elapsed = time.perf_counter() - start
            note = f"{elapsed:.2f} s of {limit} s"
            assert elapsed < limit, f"criterion {number} took {elapsed:.2f} s (limit {limit} s)"
            verdict = "PASS"
        except AssertionError as exc:
            note = note or str(exc).splitlines()[0]
            raise
        finally:
            with capsys.disabled():
                print(f"\ncriterion {number:>2} {verdict}: {title} ({note})")
    return run


def rational(rng, span=9, den=6):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def vector(rng, dim):
    return tuple(rational(rng) for _ in range(dim))


def test_criterion_01_checker_soundness(gate):
    with gate(1, "shipped hyperfields pass, mutations fail with replayable witnesses", 1):
        for F in (krasner_hyperfield(), sign_hyperfield(), prime_field(2), prime_field(3)):
            assert check_hyperfield(F).is_hyperfield
        assert len(MUTATIONS) >= 10
        for m in MUTATIONS:
            F = mutate(m)
            r = check_hyperfield(F)
            assert not r.is_hyperfield and r.violations, m.label
            assert all(replay(F, v) for v in r.violations), m.label


def test_criterion_02_census_obeys_hypergroup_consequences(gate):
    with gate(2, "every commutative hypergroup of order <= 3 passes the consequence checks", 30):
        total = 0
        for n in (1, 2, 3):
            for e in enumerate_hypergroups(SearchSpec(n)).entries:
                assert check_hypergroup_consequences(e.structure()) == [], e.key
                total += 1
        assert total == 1 + 2 + 10


def test_criterion_03_hyperspace_fixtures(gate):
    with gate(3, "trivial and cone spaces pass; echo star fails scalar associativity", 5):
        for name in ("trivial_q2", "cone"):
            doc = fixture(name)
            assert check_hvs_axioms(doc.space, doc.scalar_samples, doc.vector_samples) == []
        doc = fixture("echo")
        holds, left, right = evaluate(doc.space, "HVS.star_assoc", *ECHO_WITNESS)
        assert not holds
        assert left == {(6, 0), (1, 0)}
        assert right == {(6, 0), (3, 0), (2, 0), (1, 0)}
        found = check_hvs_axioms(doc.space, doc.scalar_samples, doc.vector_samples,
                                 max_violations=64)
        assert any(v.axiom == "HVS.star_assoc" and v.witness == ECHO_WITNESS for v in found)


def test_criterion_04_inner_product_theorems(gate):
    with gate(4, "sup-form theorems hold exactly on 500 random rational tuples", 10):
        rng = random.Random(SEED)
        W = trivial_space(2)
        ctx = (W, DOT)
        for _ in range(500):
            alpha, beta, gamma, delta = (vector(rng, 2) for _ in range(4))
            a, b = rational(rng), rational(rng)
            e = bilinear_expand(W, DOT, alpha, a, beta, gamma, b, delta)
            assert e.enumerated.value == e.formula
            for axiom, args in (("IP.additive_right", (alpha, beta, gamma)),
                                ("IP.homogeneous_right", (a, alpha, beta)),
                                ("IP.theta", (alpha,)),
                                ("CS", (alpha, beta)),
                                ("IN.nonneg", (alpha,)),
                                ("IN.definite", (alpha,)),
                                ("IN.triangle", (alpha, beta)),
                                ("IN.homogeneous", (a, alpha)),
                                ("PAR", (alpha, beta))):
                assert evaluate(ctx, axiom, *args)[0], (axiom, args)
            left, right = parallelogram_terms(W, DOT, alpha, beta)
            assert left == right


def test_criterion_05_cone_is_not_an_inner_product_space(gate):
    with gate(5, "cone with the dot product fails homogeneity at the documented witness", 1):
        doc = fixture("cone")
        holds, left, right = evaluate((doc.space, doc.inner), "IP.homogeneous", *CONE_WITNESS)
        assert not holds and (left, right) == (0, -1)
        found = check_inner_axioms(doc.space, doc.inner, doc.scalar_samples, doc.vector_samples)
        assert any(v.axiom == "IP.homogeneous" and v.witness == CONE_WITNESS for v in found)


def _independent(rng, dim, k):
    while True:
        vs = [vector(rng, dim) for _ in range(k)]
        if oracles.rank(vs) == k:
            return vs


def _span_pool(S, S_prime):
    # coordinates of each list in terms of the other, from the oracle solver
    pool = {Fraction(0), Fraction(1)}
    for src, dst in ((S, S_prime), (S_prime, S)):
        for v in src:
            pool.update(oracles.solve(dst, v))
    return pool


def test_criterion_06_gram_schmidt_matches_classical(gate):
    with gate(6, "Gram-Schmidt equals the classical process on 100 random inputs", 10):
        rng = random.Random(SEED + 6)
        cases = [_independent(rng, 2, 2) for _ in range(50)]
        cases += [_independent(rng, 3, 3) for _ in range(50)]
        for S in cases:
            W = trivial_space(len(S[0]))
            out = gram_schmidt(W, DOT, S).vectors
            assert list(out) == oracles.classical_gram_schmidt(S)
            assert is_orthogonal_set(DOT, out)
            for v in S:
                assert fourier_reconstructs(W, DOT, v, out)
            probes = list(S) + list(out) + [W.theta]
            span = check_span_preserved(W, DOT, S, out, _span_pool(S, out), probes)
            assert span.agrees
            assert all(row[1] is not None for row in span.rows)


def test_criterion_07_dependent_input(gate):
    with gate(7, "dependent Gram-Schmidt input is rejected", 1):
        W = trivial_space(2)
        with pytest.raises(LinearDependenceError, match="input not linearly independent"):
            gram_schmidt(W, DOT, [(1, 0), (2, 0)])
        rng = random.Random(SEED + 7)
        for _ in range(50):
            with pytest.raises(LinearDependenceError, match="input not linearly independent"):
                gram_schmidt(W, DOT, [vector(rng, 2) for _ in range(3)])


def test_criterion_08_orthogonal_sets_are_weakly_independent(gate):
    with gate(8, "shipped orthogonal sets are weakly independent", 5):
        for name in ORTHOGONAL_FIXTURES:
            doc = fixture(name)
            W, S = doc.space, list(doc.orthogonal)
            pool, universe = pool_of(doc), vector_universe(W, doc.universe)
            assert is_weak_linearly_independent(W, S, pool, universe).independent, name
            assert check_orthogonal_independence(W, doc.inner, S, pool, universe).independent, name


def test_criterion_09_search_reproducibility(gate):
    with gate(9, "order-2 census has both known tables; workers and pruning agree", 60):
        keys = enumerate_hypergroups(SearchSpec(2)).keys
        assert {"hypergroup/2:1.2.2.1", "hypergroup/2:1.2.2.3"} <= keys
        for n in (2, 3):
            spec = SearchSpec(n)
            assert enumerate_hypergroups(spec, 1).keys == enumerate_hypergroups(spec, 4).keys
        assert keys == enumerate_hypergroups(SearchSpec(2, prune=False)).keys
        assert (enumerate_hypergroups(SearchSpec(2, commutative=False)).keys
                == enumerate_hypergroups(SearchSpec(2, commutative=False, prune=False)).keys)


def _cli(*args):
    result = CliRunner().invoke(main, [*map(str, args), "--json"])
    report = json.loads(result.output)
    rpt.validate(report)
    assert report["exit_code"] == result.exit_code
    return result.exit_code


def test_criterion_10_cli_contract(gate, tmp_path):
    with gate(10, "round-trip identity, exit codes 0/1/2/3, schema-valid reports", 5):
        for name in FIXTURES:
            doc = fixture(name)
            text = serialize(doc)
            assert serialize(parse_structure(text)) == text, name
        write_fixtures(tmp_path)
        bad = tmp_path / "bad.hyp"
        bad.write_text("[group]\ncarrier = 0, 1\nhyperadd:\n  0 + 0 = {}\n")
        assert _cli("verify", tmp_path / "krasner.hyp", "--all") == 0
        assert _cli("verify", tmp_path / "cone.hyp", "--check", "inner.axioms") == 1
        assert _cli("verify", bad, "--all") == 2
        assert _cli("search", "--order", 9) == 3
        assert _cli("search", "--order", 3, "--budget", 50) == 3


def test_acceptance_covers_every_criterion():
    numbers = sorted(int(name.split("_")[2]) for name in globals()
                     if name.startswith("test_criterion_"))
    assert numbers == list(range(1, 11))
