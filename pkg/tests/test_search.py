import itertools

import pytest

import oracles
from hyperspaces.hyperspace import trivial_space
from hyperspaces.hyperstructures import (
    check_hyperfield,
    check_hypergroup,
    krasner_hyperfield,
    prime_field,
    sign_hyperfield,
    z2_hypergroup,
)
from hyperspaces.inner import dot_product
from hyperspaces.search import (
    CapExceededError,
    SearchSpec,
    enumerate_hyperfields,
    enumerate_hypergroups,
    load_catalog,
    search_star_models,
    space_size,
    table_key,
    write_catalog,
)
from hyperspaces.setalg import PreconditionError

Z2_KEY = "hypergroup/2:1.2.2.1"
KRASNER_KEY = "hypergroup/2:1.2.2.3"
SIGN_KEY = "hyperfield/3:1.2.4.2.2.7.4.7.4|0.0.0.0.1.2.0.2.1"


@pytest.fixture(scope="module")
def census3():
    return enumerate_hypergroups(SearchSpec(3))


def test_keys_of_known_tables():
    assert table_key("hypergroup", z2_hypergroup()) == Z2_KEY
    assert table_key("hypergroup", krasner_hyperfield().additive) == KRASNER_KEY
    assert table_key("hyperfield", sign_hyperfield()) == SIGN_KEY


def test_order_one_is_trivial():
    c = enumerate_hypergroups(SearchSpec(1))
    assert len(c.entries) == 1
    assert c.entries[0].add == (((0,),),)


def test_order_two_census():
    c = enumerate_hypergroups(SearchSpec(2, zero=0))
    assert c.keys == {Z2_KEY, KRASNER_KEY}
    assert not c.partial


def test_missing_inverse_is_excluded():
    c = enumerate_hypergroups(SearchSpec(2, zero=0, fixed_add=(((1, 1), (1,)),)))
    assert c.entries == []


@pytest.mark.parametrize("n", [1, 2, 3])
def test_census_counts_match_brute_force(n, census3):
    c = census3 if n == 3 else enumerate_hypergroups(SearchSpec(n))
    expected = oracles.iso_classes(list(range(n)), oracles.all_commutative_hypergroups(n))
    assert len(c.entries) == expected


def test_entries_replay(census3):
    assert len(census3.entries) == 10
    for e in census3.entries:
        assert e.verify()
        assert table_key("hypergroup", e.structure()) == e.key


def test_workers_do_not_change_the_census():
    spec = SearchSpec(3)
    assert enumerate_hypergroups(spec, jobs=1).keys == enumerate_hypergroups(spec, jobs=4).keys


@pytest.mark.parametrize("commutative", [True, False])
def test_pruning_is_sound(commutative):
    on = enumerate_hypergroups(SearchSpec(2, commutative=commutative))
    off = enumerate_hypergroups(SearchSpec(2, commutative=commutative, prune=False))
    assert on.keys == off.keys
    assert on.examined <= off.examined


def test_noncommutative_order_two():
    keys = enumerate_hypergroups(SearchSpec(2, commutative=False)).keys
    assert {Z2_KEY, KRASNER_KEY} <= keys


def _brute_force_hyperfields(n):
    # 0 and 1 are fixed labels; 1 must act as identity, every other
    # product cell is free
    found = 0
    els = list(range(n))
    free = [(a, b) for a in els for b in els if a != 1 and b != 1]
    for add in oracles.all_commutative_hypergroups(n):
        if oracles.hypergroup_zero(els, add) != 0:
            continue
        for values in itertools.product(els, repeat=len(free)):
            mul = dict(zip(free, values))
            for a in els:
                mul[1, a] = mul[a, 1] = a
            found += oracles.is_hyperfield(els, add, mul, 0, 1)
    return found


@pytest.mark.parametrize("n", [2, 3])
def test_hyperfield_census_matches_brute_force(n):
    c = enumerate_hyperfields(SearchSpec(n, kind="hyperfield"))
    # with 0 and 1 pinned, n <= 3 leaves no relabeling to collapse
    assert len(c.entries) == _brute_force_hyperfields(n)
    assert all(e.verify() for e in c.entries)


def test_hyperfields_of_order_two_and_three():
    two = enumerate_hyperfields(SearchSpec(2, kind="hyperfield")).keys
    assert two == {table_key("hyperfield", krasner_hyperfield()),
                   table_key("hyperfield", prime_field(2))}
    three = enumerate_hyperfields(SearchSpec(3, kind="hyperfield", fixed_mul=(((2, 2), 1),)))
    assert SIGN_KEY in three.keys
    assert table_key("hyperfield", prime_field(3)) in three.keys


def test_hyperfield_needs_two_elements():
    with pytest.raises(PreconditionError):
        enumerate_hyperfields(SearchSpec(1, kind="hyperfield"))


def test_caps_and_budget():
    with pytest.raises(CapExceededError):
        SearchSpec(5)
    with pytest.raises(CapExceededError):
        SearchSpec(4, kind="hyperfield")
    with pytest.raises(PreconditionError):
        SearchSpec(2, budget=0)
    c = enumerate_hypergroups(SearchSpec(3, budget=100))
    assert c.partial and c.examined == 100


def test_space_size():
    assert space_size(SearchSpec(2)) == 3 ** 3
    assert space_size(SearchSpec(2, prune=False, commutative=False)) == 3 ** 4


def test_catalog_round_trip(tmp_path):
    c = enumerate_hypergroups(SearchSpec(2))
    index = tmp_path / "index.tsv"
    assert write_catalog(c.entries, tmp_path) == index
    rows = load_catalog(tmp_path)
    assert [r[2] for r in rows] == [e.key for e in c.entries]
    for kind, size, key, doc in rows:
        assert size == 2 and kind == "hypergroup"
        assert check_hypergroup(doc.group).is_hypergroup
        assert table_key("hypergroup", doc.group) == key


def test_hyperfield_catalog_reloads(tmp_path):
    c = enumerate_hyperfields(SearchSpec(3, kind="hyperfield"))
    write_catalog(c.entries, tmp_path)
    for _, _, key, doc in load_catalog(tmp_path):
        assert check_hyperfield(doc.field).is_hyperfield
        assert table_key("hyperfield", doc.field) == key


WINDOW = [(0, 0), (1, 0), (-1, 0)]


def test_star_search_on_the_trivial_window():
    s = search_star_models(trivial_space(2), dot_product(), [0, 1, -1], WINDOW)
    assert len(s.models) == 1
    assert s.non_singleton_models == 0
    assert all(len(S) == 1 for S in s.models[0].table.values())


def test_cone_cells_are_rejected():
    def cone(a, v):
        return [{tuple(a * x for x in v), (0, 0)}]
    s = search_star_models(trivial_space(2), dot_product(), [0, 1, -1], WINDOW, candidates=cone)
    assert s.models == []
    bad = s.rejections[1, (1, 0)][0][1]
    assert bad.axiom == "IP.homogeneous"
    assert bad.witness == (1, (1, 0), (-1, 0))
    assert (bad.left, bad.right) == (0, -1)


def test_star_search_budget():
    s = search_star_models(trivial_space(2), dot_product(), [0, 1], WINDOW, budget=1)
    assert s.examined <= 1
