import random
from itertools import combinations

import pytest

from semichain.enumeration import canonical_form
from semichain.order import (
    antichain_graph,
    is_antichain,
    is_chain,
    is_semilattice,
    max_antichain_size,
    min_chain_cover,
)
from semichain.sgcore import validate_associativity
from semichain.structure import power_profile
from semichain.witness import (
    LevelElement,
    check_level_element,
    ex_op,
    ex_r,
    ex_r_fibers,
    ex_truncate,
    level_elements,
    monogenic,
    odd_levels,
    stock,
)

import oracles

L = LevelElement


def test_ex_op_cases():
    assert ex_op(L(2, 1), L(2, 2)) == L(1, 0)
    assert ex_op(L(3, 0), L(3, 0)) == L(3, 0)
    assert ex_op(L(1, 0), L(4, 2)) == L(1, 0)
    assert ex_op(L(4, 2), L(1, 0)) == L(1, 0)


@pytest.mark.parametrize("bad", [(3, 1), (2, 0), (2, 3), (0, 0), (-1, 0)])
def test_invalid_points_rejected(bad):
    with pytest.raises(ValueError):
        check_level_element(bad)
    with pytest.raises(ValueError):
        ex_op(bad, (1, 0))
    with pytest.raises(ValueError):
        ex_r(bad)


def _random_point(rng, top=30):
    x = rng.randint(1, top)
    return L(x, 0) if x % 2 else L(x, rng.randint(1, x))


def test_ex_op_random_laws():
    rng = random.Random(7)
    for _ in range(10_000):
        a, b, c = (_random_point(rng) for _ in range(3))
        assert ex_op(a, b) == ex_op(b, a)
        assert ex_op(a, a) == a
        assert ex_op(ex_op(a, b), c) == ex_op(a, ex_op(b, c))


def test_truncation_sizes_and_order():
    assert ex_truncate(1)[0].order == 1
    t, elems = ex_truncate(4)
    assert t.order == 8
    assert elems == [L(1, 0), L(2, 1), L(2, 2), L(3, 0), L(4, 1), L(4, 2), L(4, 3), L(4, 4)]
    t2, _ = ex_truncate(2)
    assert t2.labels == ("1.0", "2.1", "2.2")
    assert t2(1, 2) == 0
    assert all(t2(0, x) == 0 for x in range(3))
    for n in range(1, 13):
        odd = (n + 1) // 2
        even = sum(2 * k for k in range(1, n // 2 + 1))
        assert ex_truncate(n)[0].order == odd + even


@pytest.mark.parametrize("n", range(1, 13))
def test_truncation_is_semilattice(n):
    t, _ = ex_truncate(n)
    assert validate_associativity(t) is None
    assert is_semilattice(t)


def test_ex_r_examples():
    assert ex_r(L(5, 0)) == L(5, 0)
    assert ex_r(L(4, 3)) == L(3, 0)
    fib = ex_r_fibers(6)[L(3, 0)]
    assert fib == [L(3, 0), L(4, 1), L(4, 2), L(4, 3), L(4, 4)]


@pytest.mark.parametrize("n", range(1, 13))
def test_ex_r_homomorphism_and_fibers(n):
    elems = level_elements(n)
    for a in elems:
        for b in elems:
            assert ex_r(ex_op(a, b)) == ex_op(ex_r(a), ex_r(b))
    for base, pre in ex_r_fibers(n).items():
        assert base.level % 2 == 1 and base.slot == 0
        if base.level + 1 <= n:
            assert len(pre) == base.level + 2  # 2k+1 at <2k-1, 0>
        else:
            assert len(pre) == 1


@pytest.mark.parametrize("n", range(1, 13))
def test_odd_levels_form_a_chain(n):
    t, _ = ex_truncate(n)
    assert is_chain(t, t.element_set(odd_levels(n)))


@pytest.mark.parametrize("n", range(2, 7))
def test_antichains_sit_in_one_even_level(n):
    t, elems = ex_truncate(n)
    ag = antichain_graph(t)
    # enumerate all antichains of size >= 2 by extending cliques of the antichain graph
    found = 0
    for a in oracles.subsets(t.order):
        if len(a) >= 2 and all(ag.adjacency[x] >> y & 1 for x, y in combinations(a, 2)):
            assert is_antichain(t, t.element_set(a))
            levels = {elems[x].level for x in a}
            assert len(levels) == 1 and levels.pop() % 2 == 0
            found += 1
    assert found > 0


@pytest.mark.parametrize("n", range(2, 9))
def test_antichain_and_cover_growth(n):
    t, _ = ex_truncate(n)
    assert max_antichain_size(t) == 2 * (n // 2)
    assert len(min_chain_cover(t)) == 2 * (n // 2)


def test_monogenic():
    assert monogenic(1, 1).order == 1
    g = monogenic(1, 4)
    assert canonical_form(g) == canonical_form(stock("cyclic_group", 4))
    t = monogenic(3, 4)
    assert t.order == 6
    p = power_profile(t, 0)
    assert (p.index, p.period) == (3, 4)
    assert [x for x in range(6) if t(x, x) == x] == [3]


def test_monogenic_with_index_one_is_a_group():
    from semichain.sgcore import has_identity

    for n in range(1, 8):
        g = monogenic(1, n)
        assert has_identity(g) is not None
        assert all(sorted(row) == list(range(n)) for row in g.rows)


def test_stock_families():
    assert stock("zero", 1).rows == stock("left_zero", 1).rows == stock("cyclic_group", 1).rows == ((0,),)
    for fam in ("left_zero", "right_zero", "zero", "cyclic_group"):
        for n in (1, 4, 9):
            assert validate_associativity(stock(fam, n)) is None
    assert stock("right_zero", 3)(0, 2) == 2
    with pytest.raises(ValueError):
        stock("nope", 3)
