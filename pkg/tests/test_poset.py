import pytest
from hypothesis import given

from conftest import posets
from oracles import brute_height_width, brute_isomorphic
from pdl.enumerate import enumerate_posets
from pdl.errors import CycleDetected, EmptyLevel, IndexOutOfRange, ParseError
from pdl.poset import (
    antichain,
    canonical_form,
    chain,
    dual,
    find_isomorphism,
    format_poset,
    from_relations,
    height,
    is_weak_order,
    mask_of,
    max_antichain,
    min_antichain_partition,
    min_chain_partition,
    parallel,
    parse_poset,
    parse_posets,
    poset_from_covers,
    series,
    weak_order,
    width,
)

V = poset_from_covers(3, [(0, 1), (0, 2)])
N = from_relations(4, [(0, 2), (1, 2), (1, 3)])


def test_v_from_covers():
    assert V.lt(0, 1) and V.lt(0, 2) and not V.comparable(1, 2)
    assert V.down == weak_order([1, 2]).down


def test_closure_adds_transitive_pair():
    p = poset_from_covers(3, [(0, 1), (1, 2)])
    assert p.lt(0, 2)
    assert p.covers() == [(0, 1), (1, 2)]


def test_redundant_pairs_accepted():
    p = poset_from_covers(3, [(0, 1), (1, 2), (0, 2)])
    assert p == chain(3)


def test_empty_relation_is_antichain():
    assert poset_from_covers(2, []) == antichain(2)


@pytest.mark.parametrize("pairs", [[(0, 1), (1, 0)], [(0, 1), (1, 2), (2, 0)], [(1, 1)]])
def test_cycles_rejected(pairs):
    with pytest.raises(CycleDetected):
        poset_from_covers(3, pairs)


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        poset_from_covers(2, [(0, 2)])


def test_height_width_examples():
    assert (height(chain(5)), width(chain(5))) == (5, 1)
    assert (height(V), width(V)) == (2, 2) == brute_height_width(V)


@pytest.mark.parametrize("p,expected", [(antichain(4), 4), (chain(4), 1), (V, 2)])
def test_min_chain_partition(p, expected):
    chains = min_chain_partition(p)
    assert len(chains) == expected
    assert sorted(e for c in chains for e in c) == list(range(p.n))
    assert all(p.is_chain(mask_of(c)) for c in chains)


def test_mirsky_levels():
    assert min_antichain_partition(chain(3)) == [[0], [1], [2]]
    assert min_antichain_partition(antichain(3)) == [[0, 1, 2]]
    assert min_antichain_partition(V) == [[0], [1, 2]]


def test_series_parallel():
    assert series(chain(2), chain(3)) == chain(5)
    p = parallel(chain(2), chain(2))
    assert (width(p), height(p)) == (2, 2)
    b = series(antichain(2), antichain(2))
    assert (height(b), width(b)) == (2, 2) == brute_height_width(b)


def test_weak_order():
    assert weak_order([1, 2]).down == V.down
    assert weak_order([4]) == antichain(4)
    assert weak_order([1, 1, 1]) == chain(3)
    with pytest.raises(EmptyLevel):
        weak_order([2, 0])


def test_is_weak_order():
    assert is_weak_order(V) == (True, [1, 2])
    assert is_weak_order(chain(4)) == (True, [1, 1, 1, 1])
    assert is_weak_order(N) == (False, [])


def test_dual():
    lam = dual(V)
    assert lam.lt(1, 0) and lam.lt(2, 0)
    assert canonical_form(dual(chain(4))) == canonical_form(chain(4))
    assert dual(dual(N)) == N


def test_canonical_form_examples():
    assert canonical_form(V) == canonical_form(V.relabel([2, 0, 1]))
    assert canonical_form(V) != canonical_form(chain(3))
    assert len({canonical_form(p) for p in enumerate_posets(4)}) == 16


@pytest.mark.parametrize("n", [3, 4, 5])
def test_canonical_form_matches_isomorphism(n):
    ps = enumerate_posets(n)
    # distinct catalogue entries are pairwise non-isomorphic
    for i, p in enumerate(ps):
        for q in ps[i + 1:]:
            if find_isomorphism(p, q) is not None:
                pytest.fail(f"{p} and {q} are isomorphic")
    if n <= 4:
        for i, p in enumerate(ps):
            for q in ps[i + 1:]:
                assert not brute_isomorphic(p, q)


@given(posets(max_n=6))
def test_canonical_form_is_relabel_invariant(p):
    perm = list(reversed(range(p.n)))
    q = p.relabel(perm)
    assert canonical_form(p) == canonical_form(q)
    assert find_isomorphism(p, q) is not None


@given(posets(max_n=5), posets(max_n=5))
def test_equal_form_iff_isomorphic(p, q):
    same = canonical_form(p) == canonical_form(q)
    assert same == (find_isomorphism(p, q) is not None)


@given(posets(max_n=8))
def test_order_axioms_and_closure(p):
    for i in range(p.n):
        assert not p.lt(i, i)
        for j in range(p.n):
            assert not (p.lt(i, j) and p.lt(j, i))
            for k in range(p.n):
                if p.lt(i, j) and p.lt(j, k):
                    assert p.lt(i, k)
    assert from_relations(p.n, p.relations()) == p
    assert from_relations(p.n, p.covers()) == p


@given(posets(max_n=8))
def test_dilworth_and_mirsky(p):
    h, w = brute_height_width(p)
    assert width(p) == w == len(min_chain_partition(p))
    assert height(p) == h == len(min_antichain_partition(p))
    a = max_antichain(p)
    assert len(a) == w and p.is_antichain(mask_of(a))


@given(posets(max_n=7))
def test_dual_preserves_height_width(p):
    assert (height(dual(p)), width(dual(p))) == (height(p), width(p))


@pytest.mark.parametrize("n", range(1, 8))
def test_dilworth_on_catalogue(n):
    for p in enumerate_posets(n):
        assert len(min_chain_partition(p)) == width(p)


# -- text format ---------------------------------------------------------------


def test_round_trip_text():
    text = format_poset(N)
    assert "cover 0 2" in text
    assert parse_poset(text) == N


def test_parse_comments_and_blocks():
    text = """
    # two posets
    poset A
    elements 3   # three
    cover 0 1
    cover 1 2
    cover 0 2    # redundant, accepted
    end
    poset B
    elements 2
    end
    """
    a, b = parse_posets(text)
    assert a == chain(3) and a.name == "A"
    assert b == antichain(2)


@pytest.mark.parametrize("text", [
    "poset A\nelements 2\ncover 0\nend\n",
    "poset A\ncover 0 1\nend\n",
    "poset A\nelements 2\n",
    "elements 2\n",
    "poset A\nelements 2\nfoo 1\nend\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_posets(text)


def test_writer_emits_reduction_only():
    p = from_relations(3, [(0, 1), (1, 2), (0, 2)])
    assert format_poset(p).count("cover") == 2
