import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coxbound.coxeter import (
    INF,
    CoxeterGroup,
    CoxeterMatrix,
    CoxeterMatrixError,
    Element,
    Finite,
    Infinite,
    NoJoinWithin,
    ResourceCapError,
    parse_matrix,
)

from conftest import FIXTURES, load


def dihedral(m):
    return CoxeterGroup(CoxeterMatrix.from_rows([[1, m], [m, 1]], ["s", "t"]))


# -- parsing ---------------------------------------------------------------


def test_parse_dinf():
    m = parse_matrix("2\n1 inf\ninf 1")
    assert m.rank == 2 and m.m(0, 1) == INF


def test_parse_remark_system():
    m = parse_matrix("3\n1 3 2\n3 1 inf\n2 inf 1")
    assert (m.m(0, 1), m.m(0, 2), m.m(1, 2)) == (3, 2, INF)


def test_parse_labels_and_comments():
    m = parse_matrix("# header\n2  # rank\nlabels x y\n1 4\n4 1\n")
    assert m.labels == ("x", "y") and m.m(0, 1) == 4


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("2\n1 1\n1 1", "row 1, col 2"),
        ("2\n1 3\n4 1", "not symmetric"),
        ("2\n2 3\n3 1", "diagonal"),
        ("2\n1 x\nx 1", "malformed token"),
        ("2\n1 3", "expected 2 matrix rows"),
        ("3\nlabels a b\n1 2 2\n2 1 2\n2 2 1", "labels"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(CoxeterMatrixError, match=fragment):
        parse_matrix(text)


# -- words -----------------------------------------------------------------


def test_reduce_ss():
    g = dihedral(3)
    assert g.reduce_word((0, 0)) == ()


def test_reduce_stst_in_i2_3():
    g = dihedral(3)
    assert g.reduce_word(g.parse_word("stst")) == g.parse_word("ts")


def test_reduce_dinf_unchanged():
    g = dihedral(INF)
    assert g.reduce_word(g.parse_word("stst")) == g.parse_word("stst")


def test_normal_form_tst():
    g = dihedral(3)
    assert g.format(g.element("tst")) == "sts"


def test_normal_form_empty():
    assert dihedral(3).normal_form(()) == Element(())


def test_free_product_words_already_normal(groups):
    g = groups["z2free3"]
    for x in g.ball(4).elements:
        assert g.normal_form(x.word) == x
        assert g.reduce_word(x.word) == x.word


def test_mul_examples():
    g = dihedral(3)
    s, st = g.element("s"), g.element("st")
    assert g.mul(s, s) == Element(())
    assert g.format(g.mul(st, st)) == "ts"
    assert g.format(g.inverse(st)) == "ts"


def test_descents():
    d = dihedral(INF)
    sts = d.element("sts")
    assert d.descents(Element(())) == frozenset()
    assert d.descents(sts, "left") == {0} and d.descents(sts, "right") == {0}
    g = dihedral(3)
    assert g.descents(g.element("sts"), "left") == {0, 1} == g.descents(g.element("sts"), "right")


def test_is_prefix_examples():
    d = dihedral(INF)
    assert d.is_prefix(d.element("st"), d.element("sts"))
    assert not d.is_prefix(d.element("ts"), d.element("sts"))
    v = d.element("stst")
    assert d.is_prefix(Element(()), v) and d.is_prefix(v, v)


def test_meet_examples():
    d = dihedral(INF)
    assert d.meet(d.element("st"), d.element("ts")) == Element(())
    g = dihedral(3)
    assert g.format(g.meet(g.element("sts"), g.element("st"))) == "st"
    assert g.meet(g.element("st"), Element(())) == Element(())


def test_join_examples():
    g = dihedral(3)
    assert g.format(g.join(g.element("s"), g.element("t"), 3)) == "sts"
    assert g.join(g.element("st"), Element(()), 3) == g.element("st")
    d = dihedral(INF)
    for cap in (1, 4, 7):
        assert d.join(d.element("s"), d.element("t"), cap) == NoJoinWithin(cap)


def test_join_rejects_small_cap():
    g = dihedral(3)
    with pytest.raises(ValueError):
        g.join(g.element("st"), g.element("t"), 1)


# -- balls ------------------------------------------------------------------


def test_ball_radius_zero():
    b = dihedral(INF).ball(0)
    assert b.strata_sizes() == [1] and b.elements == [Element(())]


def test_ball_dinf():
    assert dihedral(INF).ball(3).strata_sizes() == [1, 2, 2, 2]


def test_ball_free_product(groups):
    assert groups["z2free3"].ball(3).strata_sizes() == [1, 3, 6, 12]


@pytest.mark.parametrize("name, total", [("a3", 24), ("b3", 48), ("h3", 120), ("i2_3", 6), ("i2_4", 8)])
def test_finite_totals(groups, name, total):
    g = groups[name]
    assert len(g.whole_group()) == total


@pytest.mark.parametrize("m", range(2, 13))
def test_dihedral_orders(m):
    assert len(dihedral(m).whole_group()) == 2 * m


@pytest.mark.parametrize("name", ["a3", "b3", "h3"])
def test_finite_totals_by_matrix_dedup(groups, name):
    # independent oracle: closure of generator matrices, deduplicated numerically
    g = groups[name]
    mats = g.generator_matrices()
    seen = [np.eye(g.rank)]
    keys = {tuple(np.round(seen[0], 6).ravel())}
    frontier = list(seen)
    while frontier:
        nxt = []
        for M in frontier:
            for S in mats:
                P = M @ S
                k = tuple(np.round(P, 6).ravel())
                if k not in keys:
                    keys.add(k)
                    nxt.append(P)
        frontier = nxt
    assert len(keys) == len(g.whole_group())


def test_ball_order_and_closure(groups):
    g = groups["remark"]
    b = g.ball(5)
    assert b.elements[0] == Element(())
    assert b.elements == sorted(b.elements)
    assert sum(b.strata_sizes()) == len(b)
    for i, x in enumerate(b.elements):
        for s, j in b.adjacency[i]:
            y = g.mul(x, g.gen(s))
            if len(y) <= 5:
                assert j is not None and b.elements[j] == y
            else:
                assert j is None


def test_ball_words_are_normal_forms(groups):
    for name in ("affine_a2", "b3", "dinf_x_dinf", "odd_triangle"):
        g = groups[name]
        for x in g.ball(5).elements:
            assert g.normal_form(x.word) == x


def test_ball_mem_cap():
    g = load("z2free3")
    with pytest.raises(ResourceCapError) as exc:
        g.ball(20, mem_cap=1000)
    assert exc.value.strata[:3] == [1, 3, 6]


def test_strata_sizes_match_ball(groups):
    g = groups["affine_a2"]
    assert g.strata_sizes(9) == g.ball(9).strata_sizes()


def test_restricted_ball(groups):
    g = groups["dinf_x_dinf"]
    big = g.ball(5)
    small = g.ball(3)
    assert small.strata_sizes() == big.strata_sizes()[:4]


# -- geometric representation ---------------------------------------------------


def test_geom_identity_and_involution(groups):
    for g in groups.values():
        assert np.allclose(g.geom_matrix(Element(())), np.eye(g.rank))
        for s in g.generators:
            M = g.geom_matrix(g.gen(s))
            assert np.allclose(M @ M, np.eye(g.rank), atol=1e-9)
            assert abs(np.linalg.det(M) + 1) < 1e-9


def test_geom_braid():
    g = dihedral(3)
    assert g.elements_equal_oracle(g.parse_word("sts"), g.parse_word("tst"))


def test_element_order_examples():
    g = dihedral(3)
    assert g.element_order(g.element("s")) == Finite(2)
    assert g.element_order(g.element("st")) == Finite(3)
    d = dihedral(INF)
    assert isinstance(d.element_order(d.element("st")), Infinite)


def test_element_order_rejects_bad_cap():
    g = dihedral(3)
    with pytest.raises(ValueError):
        g.element_order(g.element("s"), 0)


def test_tits_oracle_agrees(groups):
    rng = np.random.default_rng(3)
    for name in ("b3", "h3", "remark", "odd_triangle"):
        g = groups[name]
        for _ in range(60):
            w = g.random_word(rng, 9)
            r = g.tits_reduce(w)
            assert len(r) == len(g.reduce_word(w))
            assert g.normal_form(r) == g.normal_form(w)


# -- properties ------------------------------------------------------------------


@pytest.mark.parametrize("name", FIXTURES)
def test_group_laws(groups, name):
    g = groups[name]
    rng = np.random.default_rng(0)
    e = Element(())
    for _ in range(60):
        u, v, w = (g.normal_form(g.random_word(rng, 6)) for _ in range(3))
        assert g.mul(g.mul(u, v), w) == g.mul(u, g.mul(v, w))
        assert g.mul(u, e) == u == g.mul(e, u)
        assert g.mul(u, g.inverse(u)) == e
        assert len(g.inverse(u)) == len(u)
        uv = g.mul(u, v)
        assert len(uv) <= len(u) + len(v)
        assert (len(uv) - len(u) - len(v)) % 2 == 0


@pytest.mark.parametrize("name", ["dinf", "i2_3", "z2free3", "remark"])
def test_meet_matches_prefix_sets(groups, name):
    g = groups[name]
    b = g.ball(4)
    prefixes = {x: {y for y in b.elements if g.is_prefix(y, x)} for x in b.elements}
    for x, y in itertools.combinations(b.elements, 2):
        common = prefixes[x] & prefixes[y]
        top = max(common, key=len)
        assert all(g.is_prefix(c, top) for c in common)
        assert g.meet(x, y) == top


def _words(rank, max_len):
    return st.lists(st.integers(0, rank - 1), max_size=max_len).map(tuple)


@settings(max_examples=150, deadline=None)
@given(_words(3, 10))
def test_normal_form_idempotent_hyp(w):
    g = load("odd_triangle")
    x = g.normal_form(w)
    assert g.normal_form(x.word) == x
    assert g.elements_equal_oracle(w, x.word)


@settings(max_examples=150, deadline=None)
@given(_words(4, 8), _words(4, 8))
def test_normal_form_vs_matrix_hyp(w1, w2):
    g = load("dinf_x_dinf")
    assert (g.normal_form(w1) == g.normal_form(w2)) == g.elements_equal_oracle(w1, w2)


@settings(max_examples=100, deadline=None)
@given(_words(3, 8), st.integers(0, 2))
def test_descent_definition_hyp(w, s):
    g = load("remark")
    x = g.normal_form(w)
    assert (s in g.descents(x, "right")) == (len(g.mul(x, g.gen(s))) < len(x))
    assert (s in g.descents(x, "left")) == (len(g.mul(g.gen(s), x)) < len(x))
