from fractions import Fraction

import pytest

from fatcomplex.cocycle import (
    CyclicSetChain,
    EvenLength,
    LengthMismatch,
    RepeatedElement,
    adjusted_cz,
    c_fat,
    c_fat_tree_window,
    cup_product,
    cyclic_sign,
    cz,
    double_factorial,
    region_chain,
    tree_corner_chain,
)
from fatcomplex.ribbon import GraphMorphism, build_graph
from fatcomplex.trees import PlanarTree, chain_from_order, maximal_chains


def test_double_factorial():
    assert double_factorial(-1) == 1
    assert double_factorial(1) == 1
    assert double_factorial(3) == 3
    assert double_factorial(5) == 15
    assert double_factorial(7) == 105


def test_cyclic_sign_basics():
    assert cyclic_sign(("a", "b", "c"), ("a", "b", "c")) == 1
    assert cyclic_sign(("a", "c", "b"), ("a", "b", "c")) == -1
    # rotating the ambient set does not change the sign of an odd tuple
    assert cyclic_sign(("a", "b", "c"), ("b", "c", "a")) == 1
    # rotating the tuple itself is even
    assert cyclic_sign(("b", "c", "a"), ("a", "b", "c")) == 1
    with pytest.raises(EvenLength):
        cyclic_sign(("a", "b"), ("a", "b", "c"))
    with pytest.raises(RepeatedElement):
        cyclic_sign(("a", "a", "b"), ("a", "b", "c"))


def test_cyclic_sign_alternates_under_transposition():
    ambient = tuple(range(7))
    tup = (3, 0, 5, 2, 6)
    base = cyclic_sign(tup, ambient)
    for i in range(4):
        swapped = list(tup)
        swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
        assert cyclic_sign(tuple(swapped), ambient) == -base


def sign_sum_word(word):
    """Sum of sgn(a, b, c) over the positions of the letter 'a', where
    word is over the alphabet a, b, c and b, c appear once each."""
    ambient = tuple(range(len(word)))
    b = word.index("b")
    c = word.index("c")
    total = 0
    for i, ch in enumerate(word):
        if ch == "a":
            total += cyclic_sign((i, b, c), ambient)
    return total


def test_sign_sum_case_1_word():
    # the word a^m c a^(2n-m+3) b has sign sum 2n - 2m + 3
    for n in range(0, 3):
        for m in range(1, 2 * n + 3):
            word = "a" * m + "c" + "a" * (2 * n - m + 3) + "b"
            assert sign_sum_word(word) == 2 * n - 2 * m + 3


def test_sign_sum_case_2a_word():
    # sgn(a^(2n+3) b c) sums to 2n+3
    for n in range(0, 3):
        word = "a" * (2 * n + 3) + "b" + "c"
        assert sign_sum_word(word) == 2 * n + 3


def test_cz_case_2a_chain():
    # chain 5 -> 6 -> 7 with the new elements appended in cyclic order
    ambient = tuple(range(7))
    chain = CyclicSetChain(ambient, [frozenset(range(5)),
                                     frozenset(range(6)),
                                     frozenset(range(7))])
    assert cz(1, chain) == Fraction(-1, 84)
    assert adjusted_cz(1, chain) == Fraction(1, 168)


def test_cz_zero_when_size_stalls():
    ambient = tuple(range(5))
    chain = CyclicSetChain(ambient, [frozenset(range(4)),
                                     frozenset(range(4)),
                                     frozenset(range(5))])
    assert cz(1, chain) == 0


def test_cz_vanishing_split_chain():
    # a 4 -> 5 -> 6 chain whose first set straddles the two later
    # elements symmetrically has vanishing sign sum
    ambient = tuple(range(6))
    chain = CyclicSetChain(ambient, [frozenset({0, 1, 3, 4}),
                                     frozenset({0, 1, 2, 3, 4}),
                                     frozenset(range(6))])
    assert cz(1, chain) == 0


def test_no_3_4_5_chain_vanishes():
    # with |C_0| = 3 the sign sum is odd, so it can never vanish
    from itertools import combinations
    ambient = tuple(range(5))
    found_zero = False
    for c0 in combinations(range(5), 3):
        rest = [x for x in range(5) if x not in c0]
        for mid in rest:
            chain = CyclicSetChain(ambient, [frozenset(c0),
                                             frozenset(c0) | {mid},
                                             frozenset(range(5))])
            if cz(1, chain) == 0:
                found_zero = True
    assert not found_zero


def test_cz_length_mismatch():
    ambient = tuple(range(5))
    chain = CyclicSetChain(ambient, [frozenset(range(4)), frozenset(range(5))])
    with pytest.raises(LengthMismatch):
        cz(1, chain)


def test_c_fat_degenerate_simplex_is_zero():
    g = build_graph([(1, 2, 3), (6, 5, 4)], [(1, 4), (2, 5), (3, 6)])
    ident = GraphMorphism.identity(g)
    assert c_fat(1, [ident, ident]) == 0


def test_case_1_full_cocycle_value():
    # tree with one vertex of valence 2n+3 carrying both edges, collapsed
    # e1 then e2: the adjusted cocycle of the 2-simplex evaluates to
    # -(2n - 2m + 3) / (2 (2n+3) (2n+4) (2n+5))
    for n in (0, 1, 2):
        L = 2 * n + 5
        e1m, e1p, e2m, e2p = L, L + 1, L + 2, L + 3
        for m in range(1, 2 * n + 3):
            # leaves h_1..h_{2n+5} are 0..L-1
            v0 = (e1m,) + tuple(range(0, m - 1)) + (e2m,) + tuple(range(m + 1, 2 * n + 3))
            v1 = (e1p, 2 * n + 3, 2 * n + 4)
            v2 = (e2p, m - 1, m)
            t = PlanarTree(L, [v0, v1, v2], [(e1m, e1p), (e2m, e2p)])
            chain = chain_from_order(t, [(e1m, e1p), (e2m, e2p)])
            value = c_fat_tree_window(1, chain, 0)
            expected = Fraction(-(2 * n - 2 * m + 3),
                                2 * (2 * n + 3) * (2 * n + 4) * (2 * n + 5))
            assert value == expected


def test_corner_model_agrees_with_region_model_on_k2():
    for chain in maximal_chains(2):
        for cycle in chain.trees[0].vertices:
            corner = tree_corner_chain(chain, 0, 2, cycle)
            region = region_chain(chain, 0, 2, cycle)
            assert corner.sizes() == region.sizes()
            assert adjusted_cz(1, corner) == adjusted_cz(1, region)


def test_corner_model_agrees_with_region_model_on_k4_windows():
    for chain in maximal_chains(4)[:200]:
        for start, k in ((0, 1), (2, 1), (0, 2)):
            for cycle in chain.trees[start].vertices:
                corner = tree_corner_chain(chain, start, start + 2 * k, cycle)
                region = region_chain(chain, start, start + 2 * k, cycle)
                assert adjusted_cz(k, corner) == adjusted_cz(k, region)


def test_cup_product_single_part_is_window():
    chain = maximal_chains(2)[3]
    assert cup_product((1,), chain) == c_fat_tree_window(1, chain, 0)


def test_cocycle_coboundary_vanishes_on_nerve_simplices():
    # the alternating sum of the adjusted cocycle over the four 2-faces
    # of every 3-simplex over a codimension-3 base vanishes; the inner
    # faces involve composite two-edge collapses
    from fractions import Fraction

    from fatcomplex.graph_complex import dual_cell_simplices, enumerate_graphs
    from fatcomplex.ribbon import compose

    base = enumerate_graphs(6, valences=(6,))[0]
    count = 0
    for morphisms, _ in dual_cell_simplices(base):
        m1, m2, m3 = morphisms
        faces = [
            [m2, m3],
            [compose(m1, m2), m3],
            [m1, compose(m2, m3)],
            [m1, m2],
        ]
        total = Fraction(0)
        for i, face in enumerate(faces):
            total += (-1) ** i * c_fat(1, face)
        assert total == 0
        count += 1
    assert count == 84


def test_cup_product_vanishing_factor():
    # if some window has no growing vertex the product vanishes; windows
    # always have a growing vertex on maximal chains, so force a length
    # mismatch error instead
    chain = maximal_chains(2)[0]
    with pytest.raises(LengthMismatch):
        cup_product((1, 1), chain)
