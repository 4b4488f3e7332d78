import itertools

import pytest
from hypothesis import given, settings, strategies as st

from coxbound.classify import (
    Affine,
    NonAffine,
    RankCapError,
    Spherical,
    canonical_form,
    centralizer_ball,
    classification,
    classify_component,
    free_product_of_finite,
    irreducible_components,
    is_amenable,
    is_finite,
    is_word_hyperbolic,
    odd_components,
    odd_has_cycle,
    small_at_infinity,
)
from coxbound.coxeter import INF, CoxeterGroup, CoxeterMatrix, Infinite

from conftest import load


def mat(rows, labels=None):
    return CoxeterMatrix.from_rows(rows, labels)


def tri(a, b, c):
    return mat([[1, a, b], [a, 1, c], [b, c, 1]])


def path(*ms):
    n = len(ms) + 1
    rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i, m in enumerate(ms):
        rows[i][i + 1] = rows[i + 1][i] = m
    return mat(rows)


def permuted(m, perm):
    n = m.rank
    return mat([[m.m(perm[i], perm[j]) for j in range(n)] for i in range(n)])


# -- components and catalog ------------------------------------------------------


def test_components_examples(groups):
    assert irreducible_components(groups["dinf"].matrix) == [(0, 1)]
    assert irreducible_components(mat([[1, 2], [2, 1]])) == [(0,), (1,)]
    assert irreducible_components(groups["dinf_x_dinf"].matrix) == [(0, 1), (2, 3)]


@pytest.mark.parametrize(
    "m, expect",
    [
        (path(3), Spherical("A_2")),
        (path(4), Spherical("B_2")),
        (path(5), Spherical("I_2(5)")),
        (path(6), Spherical("G_2")),
        (path(INF), Affine("~I_1")),
        (tri(3, 3, 3), Affine("~A_2")),
        (path(3, 3), Spherical("A_3")),
        (path(4, 3), Spherical("B_3")),
        (path(5, 3), Spherical("H_3")),
        (path(4, 4), Affine("~C_2")),
        (path(6, 3), Affine("~G_2")),
        (path(3, 3, 3), Spherical("A_4")),
        (path(3, 4, 3), Spherical("F_4")),
        (path(5, 3, 3), Spherical("H_4")),
        (path(3, 4, 3, 3), Affine("~F_4")),
        (tri(3, 3, 5), NonAffine()),
        (tri(INF, INF, INF), NonAffine()),
    ],
)
def test_classify_component(m, expect):
    got = classify_component(m)
    assert got == expect


def test_pretty_names():
    assert Affine("~A_2").pretty == "Ã₂"
    assert Affine("~I_1").pretty == "Ĩ₁"
    assert Spherical("I_2(5)").pretty == "I₂(5)"


def test_d4_star():
    rows = [[1, 3, 3, 3], [3, 1, 2, 2], [3, 2, 1, 2], [3, 2, 2, 1]]
    assert classify_component(mat(rows)) == Spherical("D_4")


def test_affine_d4():
    rows = [[1] + [3] * 4] + [[3] + [1 if i == j else 2 for j in range(4)] for i in range(4)]
    assert classify_component(mat(rows)) == Affine("~D_4")


@pytest.mark.parametrize("name, total", [("a3", 24), ("b3", 48), ("h3", 120)])
def test_finite_agrees_with_ball(groups, name, total):
    g = groups[name]
    assert is_finite(g.matrix)
    assert len(g.whole_group()) == total


def test_is_finite_examples(groups):
    m = groups["dinf"].matrix
    assert is_finite(m, [])
    assert is_finite(mat([[1, 2, 2], [2, 1, 2], [2, 2, 1]]))
    assert not is_finite(m)
    assert not is_finite(groups["remark"].matrix, [1, 2])


def test_amenable_examples(groups):
    assert is_amenable(groups["dinf"].matrix)
    assert not is_amenable(groups["z2free3"].matrix)
    assert is_amenable(groups["a3"].matrix)
    assert is_amenable(groups["dinf_x_dinf"].matrix)


# -- hyperbolicity --------------------------------------------------------------------


def test_moussong_affine(groups):
    rep = is_word_hyperbolic(groups["affine_a2"].matrix)
    assert not rep and rep.kind == "affine" and rep.subset == (0, 1, 2)


def test_moussong_product(groups):
    rep = is_word_hyperbolic(groups["dinf_x_dinf"].matrix)
    assert not rep and rep.kind == "product"
    t1, t2 = rep.split
    assert {t1, t2} == {(0, 1), (2, 3)}


@pytest.mark.parametrize("name", ["z2free3", "dinf", "remark", "odd_triangle", "a3"])
def test_moussong_hyperbolic(groups, name):
    assert is_word_hyperbolic(groups[name].matrix)


def test_rank_cap(groups):
    with pytest.raises(RankCapError, match="cap"):
        is_word_hyperbolic(groups["pentagon"].matrix, rank_cap=4)


# -- odd diagram and free products ------------------------------------------------


def test_odd_components():
    rac = load("pentagon").matrix
    comps = odd_components(rac)
    assert all(len(c) == 1 for c in comps)
    assert not any(odd_has_cycle(rac, c) for c in comps)
    (c,) = odd_components(tri(3, 3, 3))
    assert odd_has_cycle(tri(3, 3, 3), c)
    (c,) = odd_components(path(3, 3))
    assert not odd_has_cycle(path(3, 3), c)


def test_free_product_examples(groups):
    assert free_product_of_finite(groups["z2free3"].matrix) == [(0,), (1,), (2,)]
    # D∞ is Z2 * Z2
    assert free_product_of_finite(groups["dinf"].matrix) == [(0,), (1,)]
    assert free_product_of_finite(tri(3, INF, INF)) == [(0, 1), (2,)]
    assert free_product_of_finite(groups["remark"].matrix) is None


# -- smallness --------------------------------------------------------------------------


@pytest.mark.parametrize(
    "name, verdict, rule",
    [
        ("dinf", "Yes", "R5"),
        ("z2free3", "Yes", "R4"),
        ("remark", "Yes", "R6"),
        ("pentagon", "No", "R3"),
        ("dinf_x_dinf", "No", "R1"),
        ("affine_a2", "No", "R1"),
        ("odd_triangle", "No", "R2"),
        ("a3", "Yes", "R4"),
    ],
)
def test_smallness_fixtures(groups, name, verdict, rule):
    v = small_at_infinity(groups[name].matrix)
    assert (v.verdict, v.rule) == (verdict, rule)


def test_smallness_labels(groups):
    assert small_at_infinity(groups["dinf"].matrix).label == "R5/Ĩ₁"
    assert not small_at_infinity(groups["remark"].matrix).certified


def test_rules_agree(groups):
    for g in groups.values():
        v = small_at_infinity(g.matrix)
        decided = {verdict for _, verdict in v.rules if verdict != "Unknown"}
        assert decided <= {v.verdict}


def test_z2free3_fires_r3_and_r4(groups):
    v = small_at_infinity(groups["z2free3"].matrix)
    assert ("R3", "Yes") in v.rules and ("R4", "Yes") in v.rules


def test_composite_rule():
    m = mat([[1, INF, 2], [INF, 1, 2], [2, 2, 1]])
    v = small_at_infinity(m)
    assert (v.verdict, v.rule) == ("No", "R3-composite")


@pytest.mark.parametrize("name", ["pentagon", "dinf_x_dinf"])
def test_no_witness_commutes(groups, name):
    g = groups[name]
    v = small_at_infinity(g.matrix)
    assert v.verdict == "No"
    s = g.gen(g.labels.index(v.witness["generator"]))
    w = g.element(v.witness["element"])
    assert g.mul(s, w) == g.mul(w, s)
    assert isinstance(g.element_order(w), Infinite)


def test_probe_stable_in_radius(groups):
    m = groups["remark"].matrix
    verdicts = {r: small_at_infinity(m, probe_radius=r).verdict for r in range(2, 14)}
    # small radii may be Unknown (or an uncertified Yes), but never No
    assert "No" not in verdicts.values()
    assert all(verdicts[r] == "Yes" for r in range(8, 14))


def test_centralizer_examples():
    g = CoxeterGroup(mat([[1, 2, 2], [2, 1, INF], [2, INF, 1]], ["r", "s", "t"]))
    cb = set(map(g.format, centralizer_ball(g, 0, 4)))
    assert {"e", "r", "s", "t", "st", "ts"} <= cb
    assert len(centralizer_ball(g, 0, 6)) > len(cb)
    z = load("z2free3")
    assert set(map(z.format, centralizer_ball(z, 0, 6))) == {"e", "a"}


# -- properties --------------------------------------------------------------------


@pytest.mark.parametrize("name", ["a3", "b3", "h3", "affine_a2", "odd_triangle", "remark"])
def test_relabel_invariance(groups, name):
    m = groups[name].matrix
    base = classification(m)
    kinds = sorted(repr(t) for _, t in base)
    for perm in itertools.permutations(range(m.rank)):
        pm = permuted(m, perm)
        assert sorted(repr(t) for _, t in classification(pm)) == kinds
        assert canonical_form(pm) == canonical_form(m)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 5, 6, INF]), min_size=6, max_size=6), st.randoms())
def test_affine_subset_breaks_hyperbolicity(entries, rnd):
    n = 4
    rows = [[1] * n for _ in range(n)]
    for k, (i, j) in enumerate(itertools.combinations(range(n), 2)):
        rows[i][j] = rows[j][i] = entries[k]
    m = mat(rows)
    has_affine = any(
        len(irreducible_components(m, T)) == 1 and isinstance(classify_component(m, T), Affine)
        for size in (3, 4)
        for T in itertools.combinations(range(n), size)
    )
    if has_affine:
        assert not is_word_hyperbolic(m)
    perm = list(range(n))
    rnd.shuffle(perm)
    assert bool(is_word_hyperbolic(permuted(m, perm))) == bool(is_word_hyperbolic(m))
