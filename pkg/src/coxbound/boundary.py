"""Boundary points as eventually periodic geodesic rays.

A ray is spelled p u u u ... where p and u are words and the whole spelling is
reduced up to a validated horizon.  Points are compared through horofunction
profiles f(v) = lim_n |alpha_n^-1 v| - n, which is a complete invariant of
points in the combinatorial compactification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coxeter import IDENTITY, CoxeterGroup, Element, Infinite, Word


class NonGeodesic(ValueError):
    def __init__(self, k: int):
        super().__init__(f"ray is not geodesic: power {k} of the period fails")
        self.k = k


class UnresolvedPeriodicity(RuntimeError):
    def __init__(self, message: str, prefixes: list[str]):
        super().__init__(message)
        self.prefixes = prefixes


class NotWithinHorizon:
    """Membership could not be confirmed inside the validated horizon (this is not a False)."""

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "NotWithinHorizon"

    def __eq__(self, other) -> bool:
        return isinstance(other, NotWithinHorizon)

    def __hash__(self):
        return 0


NOT_WITHIN_HORIZON = NotWithinHorizon()


def default_horizon(p_len: int, u_len: int, radius: int) -> int:
    return 8 * (p_len + u_len + radius)


@dataclass(frozen=True)
class RayPoint:
    prefix: Word
    period: Word
    horizon: int

    def letter(self, i: int) -> int:
        lp = len(self.prefix)
        if i < lp:
            return self.prefix[i]
        return self.period[(i - lp) % len(self.period)]

    def spelling(self, n: int) -> Word:
        return tuple(self.letter(i) for i in range(n))


def make_ray(group: CoxeterGroup, p, u, horizon: int | None = None, radius: int = 6) -> RayPoint:
    """Validate that p u u u ... is geodesic up to ``horizon`` letters."""
    p = _as_word(group, p)
    u = _as_word(group, u)
    if not u:
        raise ValueError("the period must be a nonempty word")
    if horizon is None:
        horizon = default_horizon(len(p), len(u), radius)
    if horizon < len(p) + 2 * len(u):
        raise ValueError(f"horizon must be at least |p| + 2|u| = {len(p) + 2 * len(u)}")
    cur: Word = ()
    for i, x in enumerate(p):
        if group._is_right_descent(cur, x):
            raise ValueError(f"prefix {group.format(p)} is not a reduced word")
        cur = cur + (x,)
    ray = RayPoint(p, u, horizon)
    for i in range(len(p), horizon):
        x = ray.letter(i)
        if group._is_right_descent(cur, x):
            raise NonGeodesic((i - len(p)) // len(u) + 1)
        cur = cur + (x,)
    return ray


def _as_word(group: CoxeterGroup, x) -> Word:
    if isinstance(x, Element):
        return x.word
    if isinstance(x, str):
        return group.parse_word(x)
    return tuple(x)


def parse_ray(group: CoxeterGroup, literal: str, horizon: int | None = None, radius: int = 6) -> RayPoint:
    """Parse ``prefix;period``, e.g. ``a;bc`` or ``;st``."""
    if literal.count(";") != 1:
        raise ValueError(f"ray literal must look like 'prefix;period', got {literal!r}")
    p, u = literal.split(";")
    return make_ray(group, p, u, horizon, radius)


def format_ray(group: CoxeterGroup, z: RayPoint) -> str:
    p = group.format(z.prefix) if z.prefix else ""
    return f"{p};{group.format(z.period)}"


def prefix_at(group: CoxeterGroup, z: RayPoint, n: int) -> Element:
    if n > z.horizon:
        raise ValueError(f"n = {n} is beyond the validated horizon {z.horizon}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return group.normal_form(z.spelling(n))


def cylinder_member(group: CoxeterGroup, w: Element, z: RayPoint):
    far = prefix_at(group, z, z.horizon)
    return True if group.is_prefix(w, far) else NOT_WITHIN_HORIZON


# -- profiles -----------------------------------------------------------------------


@dataclass
class HorofunctionProfile:
    radius: int
    values: dict[Element, int]
    stabilized: dict[Element, bool]
    history: dict[Element, list[int]] = field(default_factory=dict, repr=False)

    def key(self) -> tuple:
        return tuple(sorted((v.sort_key(), f) for v, f in self.values.items()))


def profile(group: CoxeterGroup, z: RayPoint | Element, radius: int, keep_history: bool = False) -> HorofunctionProfile:
    ball = group.ball(radius)
    if isinstance(z, Element):
        zinv = group.inverse(z)
        vals = {v: len(group.mul(zinv, v)) - len(z) for v in ball.elements}
        return HorofunctionProfile(radius, vals, {v: True for v in ball.elements})
    window = 2 * len(z.period)
    H = z.horizon
    vals, stab, hist = {}, {}, {}
    for v in ball.elements:
        # y_n = v^-1 alpha_n, grown letter by letter along the ray
        y = group.inverse(v).word
        seq = [len(y)]
        for i in range(H):
            y = group.right_multiply(y, z.letter(i))
            seq.append(len(y) - (i + 1))
        vals[v] = seq[-1]
        stab[v] = len(seq) > window and len(set(seq[-window - 1 :])) == 1
        if keep_history:
            hist[v] = seq
    return HorofunctionProfile(radius, vals, stab, hist)


@dataclass(frozen=True)
class Equal:
    radius: int


@dataclass(frozen=True)
class Distinct:
    witness: Element


@dataclass(frozen=True)
class Inconclusive:
    vertex: Element


def rays_equal(group: CoxeterGroup, z1: RayPoint, z2: RayPoint, radius: int):
    f1 = profile(group, z1, radius)
    f2 = profile(group, z2, radius)
    return compare_profiles(f1, f2)


def compare_profiles(f1: HorofunctionProfile, f2: HorofunctionProfile):
    pending = None
    for v in sorted(f1.values):
        if f1.stabilized[v] and f2.stabilized[v]:
            if f1.values[v] != f2.values[v]:
                return Distinct(v)
        elif pending is None:
            pending = v
    if pending is not None:
        return Inconclusive(pending)
    return Equal(f1.radius)


# -- the action ---------------------------------------------------------------------------


def canonical_ray(group: CoxeterGroup, p: Word, u: Word, horizon: int) -> RayPoint:
    """Shortest presentation: drop copies of u from the end of p, rotate shared
    final letters into the period, and replace u by its primitive root."""
    p = group.normal_form(p).word
    u = group.normal_form(u).word
    changed = True
    while changed:
        changed = False
        U = Element(u)
        P = Element(p)
        if len(p) >= len(u) and group.is_suffix(U, P):
            p = group.mul(P, group.inverse(U)).word
            changed = True
            continue
        common = group.descents(P, "right") & group.descents(U, "right")
        if p and common:
            x = group.gen(min(common))
            p = group.mul(P, x).word
            u = group.mul_many(x, U, x).word
            changed = True
    n = len(u)
    for d in range(1, n):
        if n % d:
            continue
        v = group.normal_form(u[:d])
        if len(v) == d and group.power(v, n // d).word == u:
            u = v.word
            break
    return make_ray(group, p, u, max(horizon, len(p) + 2 * len(u)))


def act(group: CoxeterGroup, w: Element, z: RayPoint) -> RayPoint:
    """The ray w.z, found where |w alpha_n| - n stops changing along the ray."""
    if not w.word:
        return z
    H = z.horizon
    lp, lu = len(z.prefix), len(z.period)
    cur = w.word
    h = [len(cur)]
    words = [cur]
    for i in range(H):
        cur = group.right_multiply(cur, z.letter(i))
        h.append(len(cur) - (i + 1))
        words.append(cur)
    window = 2 * lu
    N = None
    for n in range(lp, H - window + 1, lu):
        if len(set(h[n:])) == 1:
            N = n
            break
    if N is None:
        raise UnresolvedPeriodicity(
            f"translate by {group.format(w)} did not settle within horizon {H}",
            [group.format(x) for x in words[-4:]],
        )
    return canonical_ray(group, words[N], z.period, H + len(w))


# -- experiments --------------------------------------------------------------------------


@dataclass
class OrbitReport:
    depth: int
    hits: dict[Element, bool]
    elements_used: int
    unresolved: int = 0

    @property
    def all_hit(self) -> bool:
        return all(self.hits.values())


def minimality_experiment(group: CoxeterGroup, seed: RayPoint, depth: int, word_length: int) -> OrbitReport:
    keys = [group.ball(depth).elements[i] for i in group.ball(depth).strata[depth]]
    hits = {k: False for k in keys}
    used = 0
    unresolved = 0
    for g in group.ball(word_length).elements:
        used += 1
        try:
            z = act(group, g, seed)
        except UnresolvedPeriodicity:
            unresolved += 1
            continue
        f = profile(group, z, depth)
        for k in keys:
            if not hits[k] and f.stabilized[k] and f.values[k] == -len(k):
                hits[k] = True
    return OrbitReport(depth, hits, used, unresolved)


@dataclass
class ProximalityEntry:
    point: str
    converged: bool
    first_match: int | None


def proximality_experiment(
    group: CoxeterGroup, g: Element, points: Sequence[RayPoint], iterations: int, radius: int = 3
) -> list[ProximalityEntry]:
    if not isinstance(group.element_order(g), Infinite):
        raise ValueError(f"{group.format(g)} is not of infinite order")
    target = profile(group, make_ray(group, (), g.word, radius=radius), radius)
    out = []
    for z in points:
        first = None
        cur = z
        ok = False
        for k in range(iterations + 1):
            if k:
                cur = act(group, g, cur)
            ok = isinstance(compare_profiles(profile(group, cur, radius), target), Equal)
            if ok and first is None:
                first = k
            if not ok:
                first = None
        out.append(ProximalityEntry(format_ray(group, z), ok, first))
    return out


def sample_rays(group: CoxeterGroup, v: Element, max_period: int = 2, horizon: int | None = None) -> list[RayPoint]:
    """Periodic rays v u u u ... for every period u up to the given length that stays geodesic."""
    out = []
    for u in group.ball(max_period).elements[1:]:
        try:
            out.append(make_ray(group, v.word, u.word, horizon))
        except NonGeodesic:
            continue
    return out


def fixed_point_scan(
    group: CoxeterGroup, w: Element, depth: int, radius: int = 4, max_period: int = 2
) -> list[Element]:
    if not w.word:
        raise ValueError("w must not be the identity")
    ball = group.ball(depth)
    hit = []
    for i in ball.strata[depth]:
        v = ball.elements[i]
        for z in sample_rays(group, v, max_period):
            try:
                wz = act(group, w, z)
            except UnresolvedPeriodicity:
                continue
            if isinstance(rays_equal(group, wz, z, radius), Equal):
                hit.append(v)
                break
    return hit


@dataclass
class GromovReport:
    values: list[Fraction]
    trend: str  # "unbounded" | "bounded"
    plateau: Fraction | None


def gromov_equivalence(group: CoxeterGroup, z1: RayPoint, z2: RayPoint, horizon: int | None = None) -> GromovReport:
    """G(n) = min over i, j in [n, H] of the Gromov product <alpha_i, beta_j>_e, for n up to H/2."""
    H = horizon or min(z1.horizon, z2.horizon)
    H = min(H, z1.horizon, z2.horizon)
    # P[i][j] = <alpha_i, beta_j>
    P = [[Fraction(0)] * (H + 1) for _ in range(H + 1)]
    ainv: Word = ()
    for i in range(H + 1):
        if i:
            ainv = group.left_multiply(z1.letter(i - 1), ainv)
        y = ainv
        for j in range(H + 1):
            if j:
                y = group.right_multiply(y, z2.letter(j - 1))
            P[i][j] = Fraction(i + j - len(y), 2)
    # suffix minima
    M = [[Fraction(0)] * (H + 2) for _ in range(H + 2)]
    inf = Fraction(10**9)
    for i in range(H + 1, -1, -1):
        for j in range(H + 1, -1, -1):
            if i > H or j > H:
                M[i][j] = inf
            else:
                M[i][j] = min(P[i][j], M[i + 1][j], M[i][j + 1])
    G = [M[n][n] for n in range(H // 2 + 1)]
    half = len(G) // 2
    grows = G[-1] - G[half] >= Fraction(len(G) - 1 - half, 4) and G[-1] > G[half]
    if grows:
        return GromovReport(G, "unbounded", None)
    return GromovReport(G, "bounded", G[-1])
