"""Diagram-level decisions: irreducible components, finite and affine types,
Moussong hyperbolicity, the odd diagram, free product splittings and
smallness at infinity."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Sequence

import networkx as nx

from .coxeter import INF, CoxeterGroup, CoxeterMatrix, Element, Finite, Infinite

DEFAULT_RANK_CAP = 16


class RankCapError(ValueError):
    pass


@dataclass(frozen=True)
class Spherical:
    name: str

    @property
    def pretty(self) -> str:
        return _pretty(self.name)


@dataclass(frozen=True)
class Affine:
    name: str

    @property
    def pretty(self) -> str:
        return _pretty(self.name)


@dataclass(frozen=True)
class NonAffine:
    name: str = "non-affine"

    @property
    def pretty(self) -> str:
        return "non-affine"


_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _pretty(name: str) -> str:
    # "~A_2" -> "Ã₂", "I_2(5)" -> "I₂(5)"
    tilde = name.startswith("~")
    body = name[1:] if tilde else name
    letter, _, rest = body.partition("_")
    if "(" in rest:
        idx, _, par = rest.partition("(")
        rest = idx.translate(_SUB) + "(" + par
    else:
        rest = rest.translate(_SUB)
    return unicodedata.normalize("NFC", letter + ("\u0303" if tilde else "")) + rest


@dataclass(frozen=True)
class DiagramView:
    vertices: tuple[int, ...]
    coxeter_edges: dict
    commuting: frozenset
    infinite: frozenset
    odd_edges: frozenset


def diagram_view(m: CoxeterMatrix) -> DiagramView:
    n = m.rank
    cox, comm, inf, odd = {}, set(), set(), set()
    for s, t in combinations(range(n), 2):
        x = m.m(s, t)
        if x == 2:
            comm.add((s, t))
        else:
            cox[(s, t)] = x
            if x == INF:
                inf.add((s, t))
            elif x % 2 == 1:
                odd.add((s, t))
    return DiagramView(tuple(range(n)), cox, frozenset(comm), frozenset(inf), frozenset(odd))


def _components(nodes: Iterable[int], edges: Iterable[tuple[int, int]]) -> list[tuple[int, ...]]:
    g = nx.Graph()
    g.add_nodes_from(nodes)
    g.add_edges_from(edges)
    return sorted(tuple(sorted(c)) for c in nx.connected_components(g))


def irreducible_components(m: CoxeterMatrix, subset: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    nodes = sorted(range(m.rank) if subset is None else subset)
    edges = [(s, t) for s, t in combinations(nodes, 2) if m.m(s, t) != 2]
    return _components(nodes, edges)


# -- the classification catalogs ----------------------------------------------


def _path(n: int, labels: Sequence | None = None) -> list[tuple[int, int, float]]:
    labels = labels or [3] * (n - 1)
    return [(i, i + 1, labels[i]) for i in range(n - 1)]


def _star(arms: Sequence[int]) -> list[tuple[int, int, float]]:
    edges = []
    nxt = 1
    for arm in arms:
        prev = 0
        for _ in range(arm):
            edges.append((prev, nxt, 3))
            prev = nxt
            nxt += 1
    return edges


def _catalog(n: int) -> list[tuple[object, list[tuple[int, int, float]]]]:
    """Connected spherical and affine diagrams on n vertices."""
    out: list[tuple[object, list]] = []
    if n == 1:
        return [(Spherical("A_1"), [])]
    if n == 2:
        return []  # rank two is decided directly from m
    out.append((Spherical(f"A_{n}"), _path(n)))
    out.append((Spherical(f"B_{n}"), _path(n, [4] + [3] * (n - 2))))
    if n >= 4:
        out.append((Spherical(f"D_{n}"), _path(n - 1) + [(n - 3, n - 1, 3)]))
    if n in (6, 7, 8):
        out.append((Spherical(f"E_{n}"), _star([2, n - 4, 1])))
    if n == 4:
        out.append((Spherical("F_4"), _path(4, [3, 4, 3])))
        out.append((Spherical("H_4"), _path(4, [5, 3, 3])))
    if n == 3:
        out.append((Spherical("H_3"), _path(3, [5, 3])))
    # affine, rank n means type index n - 1
    k = n - 1
    cyc = _path(n) + [(n - 1, 0, 3)]
    out.append((Affine(f"~A_{k}"), cyc))
    if k >= 3:
        # fork at one end, 4 at the other
        out.append((Affine(f"~B_{k}"), [(0, 2, 3), (1, 2, 3)] + [(i, i + 1, 3) for i in range(2, n - 2)] + [(n - 2, n - 1, 4)]))
    if k >= 2:
        out.append((Affine(f"~C_{k}"), _path(n, [4] + [3] * (n - 3) + [4])))
    if k >= 4:
        body = [(0, 2, 3), (1, 2, 3)] + [(i, i + 1, 3) for i in range(2, n - 3)]
        out.append((Affine(f"~D_{k}"), body + [(n - 3, n - 2, 3), (n - 3, n - 1, 3)]))
    arms = {6: [2, 2, 2], 7: [3, 3, 1], 8: [5, 2, 1]}
    if k in arms:
        out.append((Affine(f"~E_{k}"), _star(arms[k])))
    if k == 4:
        out.append((Affine("~F_4"), _path(5, [3, 3, 4, 3])))
    if k == 2:
        out.append((Affine("~G_2"), _path(3, [3, 6])))
    return out


@lru_cache(maxsize=None)
def _catalog_graphs(n: int):
    res = []
    for typ, edges in _catalog(n):
        g = nx.Graph()
        g.add_nodes_from(range(n))
        for a, b, lab in edges:
            g.add_edge(a, b, m=lab)
        res.append((typ, g))
    return res


def _rank_two(mst: float):
    if mst == INF:
        return Affine("~I_1")
    mst = int(mst)
    named = {3: "A_2", 4: "B_2", 6: "G_2"}
    return Spherical(named.get(mst, f"I_2({mst})"))


def _diagram_graph(m: CoxeterMatrix, T: Sequence[int]) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(T)
    for s, t in combinations(T, 2):
        x = m.m(s, t)
        if x != 2:
            g.add_edge(s, t, m=x)
    return g


def _edge_match(a, b) -> bool:
    return a["m"] == b["m"]


def classify_component(m: CoxeterMatrix, T: Iterable[int] | None = None):
    """Spherical(name), Affine(name) or NonAffine for a connected diagram on T."""
    T = tuple(sorted(range(m.rank) if T is None else T))
    return _classify_cached(m, T)


@lru_cache(maxsize=200_000)
def _classify_cached(m: CoxeterMatrix, T: tuple[int, ...]):
    n = len(T)
    if n == 0:
        return Spherical("A_0")
    if n == 2:
        return _rank_two(m.m(*T))
    g = _diagram_graph(m, T)
    if not nx.is_connected(g):
        raise ValueError(f"generator subset {T} is not irreducible")
    if n >= 3 and any(d.get("m") == INF for _, _, d in g.edges(data=True)):
        return NonAffine()
    labels = sorted(d["m"] for _, _, d in g.edges(data=True))
    for typ, cg in _catalog_graphs(n):
        if cg.number_of_edges() != g.number_of_edges():
            continue
        if sorted(d["m"] for _, _, d in cg.edges(data=True)) != labels:
            continue
        if nx.is_isomorphic(g, cg, edge_match=_edge_match):
            return typ
    return NonAffine()


def classification(m: CoxeterMatrix) -> list[tuple[tuple[int, ...], object]]:
    return [(c, classify_component(m, c)) for c in irreducible_components(m)]


def is_finite(m: CoxeterMatrix, T: Iterable[int] | None = None) -> bool:
    return all(isinstance(classify_component(m, c), Spherical) for c in irreducible_components(m, T))


def is_amenable(m: CoxeterMatrix) -> bool:
    return all(isinstance(t, (Spherical, Affine)) for _, t in classification(m))


def canonical_form(m: CoxeterMatrix) -> tuple:
    """Relabelling-invariant key (minimum over all generator permutations); for small ranks."""
    n = m.rank
    best = None
    for perm in permutations(range(n)):
        key = tuple(m.m(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n))
        if best is None or key < best:
            best = key
    return (n, best)


# -- hyperbolicity ---------------------------------------------------------------


@dataclass(frozen=True)
class HyperbolicityReport:
    hyperbolic: bool
    kind: str | None = None  # "affine" or "product"
    subset: tuple[int, ...] = ()
    split: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self) -> bool:
        return self.hyperbolic


def is_word_hyperbolic(m: CoxeterMatrix, rank_cap: int = DEFAULT_RANK_CAP) -> HyperbolicityReport:
    n = m.rank
    if n > rank_cap:
        raise RankCapError(f"rank {n} exceeds the subset enumeration cap {rank_cap}; raise it with --rank-cap")
    for size in range(2, n + 1):
        for T in combinations(range(n), size):
            comps = irreducible_components(m, T)
            if len(comps) == 1:
                typ = classify_component(m, T)
                if size >= 3 and isinstance(typ, Affine):
                    return HyperbolicityReport(False, "affine", T)
            else:
                infinite = [c for c in comps if not is_finite(m, c)]
                if len(infinite) >= 2:
                    t1 = infinite[0]
                    t2 = tuple(sorted(set(T) - set(t1)))
                    return HyperbolicityReport(False, "product", T, (t1, t2))
    return HyperbolicityReport(True)


# -- odd diagram and free products -------------------------------------------------


def odd_components(m: CoxeterMatrix) -> list[tuple[int, ...]]:
    edges = [(s, t) for s, t in combinations(range(m.rank), 2) if m.m(s, t) != INF and m.m(s, t) % 2 == 1]
    return _components(range(m.rank), edges)


def odd_has_cycle(m: CoxeterMatrix, component: Sequence[int]) -> bool:
    comp = set(component)
    edges = [
        (s, t)
        for s, t in combinations(sorted(comp), 2)
        if m.m(s, t) != INF and m.m(s, t) % 2 == 1
    ]
    return len(edges) >= len(comp)


def free_product_of_finite(m: CoxeterMatrix) -> list[tuple[int, ...]] | None:
    edges = [(s, t) for s, t in combinations(range(m.rank), 2) if m.m(s, t) != INF]
    parts = _components(range(m.rank), edges)
    if all(is_finite(m, p) for p in parts):
        return parts
    return None


# -- smallness at infinity -----------------------------------------------------------


@dataclass
class SmallnessVerdict:
    verdict: str  # "Yes" | "No" | "Unknown"
    rule: str
    rules: list[tuple[str, str]] = field(default_factory=list)
    detail: str = ""
    witness: dict | None = None
    certified: bool = True

    @property
    def label(self) -> str:
        return f"{self.rule}/{self.detail}" if self.detail and self.rule == "R5" else self.rule


def centralizer_ball(group: CoxeterGroup, s: int, radius: int) -> list[Element]:
    ball = group.ball(radius)
    out = []
    for i, x in enumerate(ball.elements):
        # sw = ws  iff  s w s = w
        if group.mul_many(group.gen(s), x, group.gen(s)) == x:
            out.append(x)
    return out


def infinite_order_element(group: CoxeterGroup, T: Sequence[int]) -> Element | None:
    """An element of infinite order in W_T, or None if none is found among Coxeter elements and pairs."""
    cands = [group.normal_form(tuple(T))]
    cands += [group.normal_form((s, t)) for s, t in combinations(T, 2)]
    for x in cands:
        if isinstance(group.element_order(x), Infinite):
            return x
    return None


def _witness(group: CoxeterGroup, s: int, w: Element, how: str) -> dict:
    return {
        "generator": group.labels[s],
        "element": group.format(w),
        "order": "infinite",
        "evidence": how,
    }


def small_at_infinity(
    m: CoxeterMatrix,
    probe_radius: int = 10,
    order_cap: int = 64,
    rank_cap: int = DEFAULT_RANK_CAP,
) -> SmallnessVerdict:
    """Decide whether all reflection centralizers are finite.

    Rules are tried in a fixed order and the first match is the verdict; every
    other rule that also applies is recorded in ``rules`` and must agree.
    """
    if probe_radius < 1:
        raise ValueError("probe_radius must be >= 1")
    group = CoxeterGroup(m)
    fired: list[tuple[str, str]] = []
    primary: SmallnessVerdict | None = None

    def fire(rule, verdict, **kw):
        nonlocal primary
        fired.append((rule, verdict))
        if primary is None:
            primary = SmallnessVerdict(verdict, rule, **kw)

    comps = classification(m)

    hyp = is_word_hyperbolic(m, rank_cap)
    if not hyp:
        witness = None
        if hyp.kind == "product":
            t1, t2 = hyp.split
            s = t1[0]
            comp2 = next(c for c in irreducible_components(m, t2) if not is_finite(m, c))
            w = infinite_order_element(group, comp2)
            if w is not None:
                witness = _witness(group, s, w, "commutes with a special subgroup")
        cert = {"kind": hyp.kind, "subset": [m.labels[i] for i in hyp.subset]}
        if hyp.split:
            cert["split"] = [[m.labels[i] for i in part] for part in hyp.split]
        fire("R1", "No", detail=hyp.kind, witness=witness or {"certificate": cert})

    for comp in odd_components(m):
        if odd_has_cycle(m, comp):
            fire("R2", "No", detail="odd cycle", witness={"odd_component": [m.labels[i] for i in comp]})
            break

    if len(comps) == 1 and isinstance(comps[0][1], Affine):
        typ = comps[0][1]
        fire("R5", "Yes" if typ.name == "~I_1" else "No", detail=typ.pretty)

    infinite_comps = [c for c, t in comps if not isinstance(t, Spherical)]
    if len(comps) >= 2 and infinite_comps:
        big = infinite_comps[0]
        other = next(c for c, _ in comps if c != big)
        w = infinite_order_element(group, big)
        witness = _witness(group, other[0], w, "direct factor") if w is not None else None
        fire("R3-composite", "No", detail="infinite direct factor", witness=witness)

    fp = free_product_of_finite(m)
    if fp is not None:
        fire("R4", "Yes", detail="free product of finite groups", witness={"parts": [[m.labels[i] for i in p] for p in fp]})

    if m.is_right_angled():
        if fp is not None:
            fire("R3", "Yes", detail="right-angled free product")
        else:
            wit = _right_angled_witness(group)
            fire("R3", "No", detail="right-angled", witness=wit)

    if primary is None:
        verdict = _probe(group, probe_radius, order_cap)
        fired.append(("R6", verdict.verdict))
        primary = verdict

    primary.rules = fired
    return primary


def _right_angled_witness(group: CoxeterGroup) -> dict | None:
    m = group.matrix
    n = m.rank
    for r in range(n):
        for s, t in combinations(range(n), 2):
            if r in (s, t):
                continue
            if m.m(r, s) == 2 and m.m(r, t) == 2 and m.m(s, t) == INF:
                return _witness(group, r, group.normal_form((s, t)), "commutes with an infinite dihedral subgroup")
    return None


def _probe(group: CoxeterGroup, radius: int, order_cap: int) -> SmallnessVerdict:
    stable = True
    for s in group.generators:
        members = centralizer_ball(group, s, radius)
        for w in members:
            if isinstance(group.element_order(w, order_cap), Infinite):
                return SmallnessVerdict("No", "R6", detail="centralizer probe", witness=_witness(group, s, w, "centralizer probe"))
        outer = [w for w in members if len(w) >= radius - 1]
        if outer:
            stable = False
    if stable:
        return SmallnessVerdict("Yes", "R6", detail="probe", certified=False)
    return SmallnessVerdict("Unknown", "R6", detail="centralizer probe did not stabilise", certified=False)
