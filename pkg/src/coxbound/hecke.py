"""Multi-parameter Hecke algebras: exact Laurent arithmetic, truncated operators
on l2 of a Cayley ball, singular value bounds, commutator decay, growth series
and the inverted convergence region R'."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .classify import is_finite, odd_components
from .coxeter import BallIndex, CoxeterGroup, CoxeterMatrix, Element, IDENTITY

DENSE_LIMIT = 5000


class HeckeModeError(TypeError):
    """Raised when exact and floating point Hecke elements are mixed."""


class ParameterError(ValueError):
    pass


def generator_classes(m: CoxeterMatrix) -> list[tuple[int, ...]]:
    """Conjugacy classes of generators (components of the odd diagram)."""
    return odd_components(m)


def class_of(m: CoxeterMatrix) -> list[int]:
    out = [0] * m.rank
    for c, comp in enumerate(generator_classes(m)):
        for s in comp:
            out[s] = c
    return out


# -- parameters ---------------------------------------------------------------------


@dataclass(frozen=True)
class ParameterQ:
    classes: tuple[tuple[int, ...], ...]
    values: tuple[Fraction | float, ...]

    def of(self, s: int) -> float:
        for c, comp in enumerate(self.classes):
            if s in comp:
                return self.values[c]
        raise KeyError(s)

    def per_generator(self, rank: int) -> list[float]:
        return [float(self.of(s)) for s in range(rank)]

    @classmethod
    def uniform(cls, m: CoxeterMatrix, q) -> "ParameterQ":
        classes = tuple(generator_classes(m))
        return cls(classes, tuple(q for _ in classes))

    @classmethod
    def from_generators(cls, m: CoxeterMatrix, values: Sequence) -> "ParameterQ":
        classes = tuple(generator_classes(m))
        vals = []
        for comp in classes:
            got = {values[s] for s in comp}
            if len(got) != 1:
                names = ", ".join(m.labels[s] for s in comp)
                raise ParameterError(f"generators {names} are conjugate and need equal q, got {sorted(got)}")
            vals.append(values[comp[0]])
        return cls(classes, tuple(vals))


def _parse_value(tok: str) -> Fraction:
    try:
        v = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"malformed q value {tok!r}") from None
    if v <= 0:
        raise ParameterError(f"q values must be positive, got {tok}")
    return v


def parse_parameters(text: str, m: CoxeterMatrix) -> ParameterQ:
    """Read lines ``class <label...> = <value>``; generators left out default to 1."""
    lookup = {lab: i for i, lab in enumerate(m.labels)}
    values: list[Fraction | None] = [None] * m.rank
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        head, eq, tail = body.partition("=")
        parts = head.split()
        if not eq or not parts or parts[0] != "class" or len(parts) < 2:
            raise ParameterError(f"line {lineno}: expected 'class <label...> = <value>'")
        v = _parse_value(tail.strip())
        for lab in parts[1:]:
            if lab not in lookup:
                raise ParameterError(f"line {lineno}: unknown generator {lab!r}")
            s = lookup[lab]
            if values[s] is not None and values[s] != v:
                raise ParameterError(f"line {lineno}: generator {lab} assigned twice")
            values[s] = v
    filled = [Fraction(1) if v is None else v for v in values]
    return ParameterQ.from_generators(m, filled)


def load_parameters(path, m: CoxeterMatrix) -> ParameterQ:
    with open(path, encoding="utf-8") as fh:
        return parse_parameters(fh.read(), m)


# -- Laurent scalars -------------------------------------------------------------------


def _exact(v) -> int | Fraction:
    # integers stay plain ints; Fraction arithmetic is only paid for when needed
    if isinstance(v, int):
        return v
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


class LaurentScalar:
    """Laurent polynomial in t_c = q_c^(1/2), one variable per generator class."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Mapping[tuple[int, ...], Fraction] | None = None, nvars: int = 1):
        self.nvars = nvars
        self.terms = {k: _exact(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "LaurentScalar":
        # terms already exact; only zeros need dropping
        out = cls.__new__(cls)
        out.nvars = nvars
        out.terms = {k: v for k, v in terms.items() if v}
        return out

    @classmethod
    def const(cls, c, nvars: int) -> "LaurentScalar":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "LaurentScalar":
        return cls({tuple(exps): c}, len(exps))

    def _coerce(self, other) -> "LaurentScalar":
        if isinstance(other, LaurentScalar):
            if other.nvars != self.nvars:
                raise ValueError("Laurent scalars over different variable sets")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentScalar.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentScalar._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar._raw({k: -v for k, v in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return LaurentScalar._raw(out, self.nvars)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, t: Sequence) -> Fraction | float:
        total = 0
        for k, v in self.terms.items():
            term = v
            for tc, e in zip(t, k):
                term = term * (tc ** e if e >= 0 else 1 / tc ** (-e))
            total += term
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            mono = "*".join(f"t{i}^{e}" for i, e in enumerate(k) if e)
            parts.append(f"{self.terms[k]}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


# -- the algebra -------------------------------------------------------------------------


class HeckeAlgebra:
    """The Hecke algebra of a Coxeter group, exact (Laurent) or at a numeric q."""

    def __init__(self, group: CoxeterGroup, q: ParameterQ | None = None):
        self.group = group
        self.classes = generator_classes(group.matrix)
        self.cls = class_of(group.matrix)
        self.exact = q is None
        self.q = q
        k = len(self.classes)
        if self.exact:
            self.p = []
            for s in group.generators:
                up = [0] * k
                up[self.cls[s]] = 1
                down = [0] * k
                down[self.cls[s]] = -1
                self.p.append(LaurentScalar({tuple(up): 1, tuple(down): -1}, k))
            self.one = LaurentScalar.const(1, k)
            self.zero = LaurentScalar({}, k)
        else:
            self.p = []
            for s in group.generators:
                qs = float(q.of(s))
                self.p.append((qs - 1.0) / math.sqrt(qs))
            self.one = 1.0
            self.zero = 0.0
        self._left: dict[tuple[int, Element], tuple[Element, bool]] = {}

    def _is_zero(self, c) -> bool:
        return c.is_zero() if self.exact else c == 0.0

    def basis(self, w: Element | str) -> "HeckeElement":
        if isinstance(w, str):
            w = self.group.element(w)
        return HeckeElement(self, {w: self.one})

    def identity(self) -> "HeckeElement":
        return self.basis(IDENTITY)

    def element(self, coeffs: Mapping[Element, object]) -> "HeckeElement":
        conv = {}
        for w, c in coeffs.items():
            if self.exact and not isinstance(c, LaurentScalar):
                c = LaurentScalar.const(c, len(self.classes))
            if not self.exact:
                if isinstance(c, LaurentScalar):
                    raise HeckeModeError("exact coefficient given to a numeric Hecke algebra")
                c = float(c)
            conv[w] = c
        return HeckeElement(self, conv)

    def left_step(self, s: int, w: Element) -> tuple[Element, bool]:
        key = (s, w)
        hit = self._left.get(key)
        if hit is None:
            sw = self.group.mul(self.group.gen(s), w)
            hit = (sw, len(sw) < len(w))
            self._left[key] = hit
        return hit

    def left_gen_mul(self, s: int, coeffs: Mapping[Element, object]) -> dict:
        out: dict[Element, object] = {}
        ps = self.p[s]
        for w, c in coeffs.items():
            sw, down = self.left_step(s, w)
            out[sw] = out[sw] + c if sw in out else c
            if down:
                extra = ps * c
                out[w] = out[w] + extra if w in out else extra
        return {w: c for w, c in out.items() if not self._is_zero(c)}

    def basis_product(self, u: Element, coeffs: Mapping[Element, object]) -> dict:
        """T_u times an element, applying the letters of u from the right."""
        cur = dict(coeffs)
        for s in reversed(u.word):
            cur = self.left_gen_mul(s, cur)
        return cur

    def evaluate_at(self, a: "HeckeElement", t: Sequence) -> dict:
        if not self.exact:
            raise HeckeModeError("evaluate_at needs an exact element")
        out = {}
        for w, c in a.coeffs.items():
            v = c.evaluate(t)
            if v != 0:
                out[w] = v
        return out


class HeckeElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: HeckeAlgebra, coeffs: Mapping[Element, object]):
        self.algebra = algebra
        self.coeffs = {w: c for w, c in coeffs.items() if not algebra._is_zero(c)}

    def _check(self, other: "HeckeElement"):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        if other.algebra.exact != self.algebra.exact:
            raise HeckeModeError("cannot mix exact and numeric Hecke elements")
        if other.algebra.group is not self.algebra.group:
            raise ValueError("Hecke elements over different Coxeter systems")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement(self.algebra, out)

    def __neg__(self):
        return HeckeElement(self.algebra, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HeckeElement":
        return HeckeElement(self.algebra, {w: c * v for w, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, HeckeElement):
            return self.scale(other)
        other = self._check(other)
        alg = self.algebra
        out: dict[Element, object] = {}
        for u, cu in self.coeffs.items():
            for w, c in alg.basis_product(u, other.coeffs).items():
                term = cu * c
                out[w] = out[w] + term if w in out else term
        return HeckeElement(alg, out)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def star(self) -> "HeckeElement":
        g = self.algebra.group
        return HeckeElement(self.algebra, {g.inverse(w): c for w, c in self.coeffs.items()})

    def trace(self):
        return self.coeffs.get(IDENTITY, self.algebra.zero)

    def support(self) -> list[Element]:
        return sorted(self.coeffs)

    def __repr__(self) -> str:
        g = self.algebra.group
        if not self.coeffs:
            return "0"
        return " + ".join(f"({self.coeffs[w]!r})T[{g.format(w)}]" for w in sorted(self.coeffs))


def hecke_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    return a * b


# -- operators on l2 of a ball ----------------------------------------------------------------


@dataclass
class OperatorMatrix:
    ball: BallIndex
    matrix: np.ndarray
    truncated: np.ndarray  # per column
    name: str = ""

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix(
            self.ball,
            self.matrix @ other.matrix,
            self.truncated | other.truncated | _feeds(other.matrix, self.truncated),
            f"{self.name}{other.name}",
        )


def _feeds(M: np.ndarray, bad: np.ndarray) -> np.ndarray:
    # columns of M whose image touches a flagged index
    if not bad.any():
        return np.zeros(M.shape[1], dtype=bool)
    return np.abs(M[bad, :]).sum(axis=0) > 0


def _p_values(q: ParameterQ | None, rank: int) -> list[float]:
    if q is None:
        return [0.0] * rank
    return [(qs - 1.0) / math.sqrt(qs) for qs in q.per_generator(rank)]


def generator_operator(ball: BallIndex, s: int, q: ParameterQ | None = None, right: bool = False) -> OperatorMatrix:
    """T_s (left) or T_s^r (right) at parameter q; q=None means q = 1."""
    n = len(ball)
    M = np.zeros((n, n))
    trunc = np.zeros(n, dtype=bool)
    ps = _p_values(q, ball.group.rank)[s]
    g = ball.group
    for i, x in enumerate(ball.elements):
        if right:
            j = ball.right(i, s)
            down = bool(ball.descents[i] >> s & 1)
        else:
            j = ball.left(s, i)
            down = s in g.descents(x, "left")
        if j is None:
            trunc[i] = True
            continue
        M[j, i] += 1.0
        if down:
            M[i, i] += ps
    name = f"T{'r' if right else ''}[{g.labels[s]}]"
    return OperatorMatrix(ball, M, trunc, name)


def projection(ball: BallIndex, w: Element, right: bool = False) -> OperatorMatrix:
    """P_w onto {v : w <=_R v}, or P_w^r onto {v : w <=_L v}."""
    g = ball.group
    test = g.is_suffix if right else g.is_prefix
    diag = np.array([1.0 if test(w, v) else 0.0 for v in ball.elements])
    name = f"P{'r' if right else ''}[{g.format(w)}]"
    return OperatorMatrix(ball, np.diag(diag), np.zeros(len(ball), dtype=bool), name)


def word_operator(ball: BallIndex, w: Element, q: ParameterQ | None = None, right: bool = False) -> OperatorMatrix:
    n = len(ball)
    op = OperatorMatrix(ball, np.eye(n), np.zeros(n, dtype=bool), "1")
    gens = [generator_operator(ball, s, q, right) for s in ball.group.generators]
    letters = w.word if not right else tuple(reversed(w.word))
    for s in letters:
        op = op @ gens[s]
    return op


def operator_matrices(q: ParameterQ | None, ball: BallIndex, projections: Iterable[Element] = ()) -> dict:
    g = ball.group
    out = {}
    for s in g.generators:
        out[("T", g.labels[s])] = generator_operator(ball, s, q)
        out[("Tr", g.labels[s])] = generator_operator(ball, s, q, right=True)
    for w in projections:
        out[("P", g.format(w))] = projection(ball, w)
        out[("Pr", g.format(w))] = projection(ball, w, right=True)
    return out


def operator_norm(M: np.ndarray, tol: float = 1e-10, max_iter: int = 10_000) -> float:
    if M.size == 0:
        return 0.0
    if max(M.shape) <= DENSE_LIMIT:
        return float(np.linalg.svd(M, compute_uv=False)[0]) if M.shape[1] else 0.0
    rng = np.random.default_rng(0)
    x = rng.standard_normal(M.shape[1])
    x /= np.linalg.norm(x)
    prev = 0.0
    for _ in range(max_iter):
        y = M.T @ (M @ x)
        nrm = np.linalg.norm(y)
        if nrm == 0:
            return 0.0
        x = y / nrm
        val = math.sqrt(nrm)
        if abs(val - prev) <= tol * max(val, 1.0):
            return val
        prev = val
    return prev


def commutator_tail_norm(A: OperatorMatrix, B: OperatorMatrix, min_length: int) -> float:
    """Norm of [A, B] on the columns of length >= min_length not affected by truncation."""
    if A.ball is not B.ball:
        raise ValueError("operators live on different balls")
    ball = A.ball
    C = A.matrix @ B.matrix - B.matrix @ A.matrix
    lengths = np.array([len(x) for x in ball.elements])
    bad = A.truncated | B.truncated | _feeds(B.matrix, A.truncated) | _feeds(A.matrix, B.truncated)
    cols = (lengths >= min_length) & ~bad
    return operator_norm(C[:, cols])


# -- singular value bounds on finite groups ----------------------------------------------------------


@dataclass(frozen=True)
class BoundsReport:
    element: str
    lower: float
    upper: float
    singular_values: tuple[float, ...]
    ok: bool


def singular_bounds_check(group: CoxeterGroup, w: Element, q: ParameterQ, tol: float = 1e-9) -> BoundsReport:
    if not is_finite(group.matrix):
        raise ValueError("singular value bounds are checked on the full regular representation; use a finite system")
    ball = group.whole_group()
    op = word_operator(ball, w, q)
    if op.truncated.any():
        raise RuntimeError("finite group ball is not closed")
    sv = np.linalg.svd(op.matrix, compute_uv=False)
    lo = hi = 1.0
    for s in w.word:
        t = math.sqrt(float(q.of(s)))
        lo *= min(t, 1 / t)
        hi *= max(t, 1 / t)
    ok = bool(sv.min() >= lo - tol and sv.max() <= hi + tol)
    return BoundsReport(group.format(w), lo, hi, tuple(float(x) for x in sv), ok)


# -- growth series ------------------------------------------------------------------------------------


@dataclass
class GrowthTable:
    counts: list[int]
    multidegree: dict[tuple[int, ...], int]
    classes: tuple[tuple[int, ...], ...]
    finite: bool = False

    @property
    def radius(self) -> int:
        return len(self.counts) - 1

    def stratum_multidegrees(self, n: int) -> dict[tuple[int, ...], int]:
        return {d: c for d, c in self.multidegree.items() if sum(d) == n}


def _multidegree(word: Sequence[int], cls: Sequence[int], k: int) -> tuple[int, ...]:
    d = [0] * k
    for s in word:
        d[cls[s]] += 1
    return tuple(d)


def growth_table(ball: BallIndex) -> GrowthTable:
    m = ball.group.matrix
    classes = tuple(generator_classes(m))
    cls = class_of(m)
    multi: dict[tuple[int, ...], int] = {}
    for x in ball.elements:
        d = _multidegree(x.word, cls, len(classes))
        multi[d] = multi.get(d, 0) + 1
    counts = ball.strata_sizes()
    finite = is_finite(m)
    return GrowthTable(counts, multi, classes, finite)


Series = dict  # multidegree tuple -> int


def _series_mul(a: Series, b: Series, cap: int) -> Series:
    out: Series = {}
    for d1, c1 in a.items():
        n1 = sum(d1)
        for d2, c2 in b.items():
            if n1 + sum(d2) > cap:
                continue
            d = tuple(x + y for x, y in zip(d1, d2))
            out[d] = out.get(d, 0) + c1 * c2
    return {d: c for d, c in out.items() if c}


def _series_div(num: Series, den: Series, cap: int, k: int) -> Series:
    # den has constant term 1; solve den * out = num degree by degree
    zero = (0,) * k
    if den.get(zero) != 1:
        raise ValueError("denominator must have constant term 1")
    tail = [(d, c) for d, c in den.items() if d != zero]
    out: Series = {}
    # all multidegrees up to cap, in order of total degree
    order = sorted((d for d in _all_degrees(k, cap)), key=lambda d: (sum(d), d))
    for d in order:
        v = num.get(d, 0)
        for e, c in tail:
            r = tuple(x - y for x, y in zip(d, e))
            if min(r) >= 0:
                v -= c * out.get(r, 0)
        if v:
            out[d] = v
    return out


def _all_degrees(k: int, cap: int):
    def rec(i, left):
        if i == k - 1:
            for x in range(left + 1):
                yield (x,)
            return
        for x in range(left + 1):
            for rest in rec(i + 1, left - x):
                yield (x,) + rest

    return rec(0, cap)


def growth_series(group: CoxeterGroup, radius: int) -> GrowthTable:
    """Growth table up to ``radius``.

    Finite groups are enumerated.  For infinite groups the series is obtained
    from the finite special subgroups through the identity
    1/W(x) = sum over finite W_T of (-1)^|T| x_{w_T} / W_T(x),
    so no ball needs to be built.
    """
    m = group.matrix
    if is_finite(m):
        table = growth_table(group.whole_group())
        counts = table.counts[: radius + 1]
        counts += [0] * (radius + 1 - len(counts))
        multi = {d: c for d, c in table.multidegree.items() if sum(d) <= radius}
        return GrowthTable(counts, multi, table.classes, True)
    classes = tuple(generator_classes(m))
    cls = class_of(m)
    k = len(classes)
    zero = (0,) * k
    terms = []  # (sign, top monomial, poincare polynomial)
    for size in range(0, m.rank + 1):
        for T in combinations(range(m.rank), size):
            if not is_finite(m, T):
                continue
            if not T:
                terms.append((1, zero, {zero: 1}))
                continue
            sub = CoxeterGroup(m.restrict(T))
            ball = sub.whole_group()
            poly: Series = {}
            top = zero
            for x in ball.elements:
                d = _multidegree([T[s] for s in x.word], cls, k)
                poly[d] = poly.get(d, 0) + 1
                if sum(d) > sum(top):
                    top = d
            terms.append(((-1) ** size, top, poly))
    D: Series = {zero: 1}
    for _, _, poly in terms:
        D = _series_mul(D, poly, radius)
    N: Series = {}
    for i, (sign, top, _) in enumerate(terms):
        part: Series = {top: sign}
        for j, (_, _, poly) in enumerate(terms):
            if j != i:
                part = _series_mul(part, poly, radius)
        for d, c in part.items():
            N[d] = N.get(d, 0) + c
    N = {d: c for d, c in N.items() if c}
    W = _series_div(D, N, radius, k)
    counts = [0] * (radius + 1)
    for d, c in W.items():
        counts[sum(d)] += c
    return GrowthTable(counts, W, classes, False)


def radius_estimate(table: GrowthTable, window: int = 10) -> float:
    """Root-test estimate 1/limsup a_n^(1/n), read off as a ratio over the last ``window`` strata."""
    a = table.counts
    if table.finite or a[-1] == 0:
        return math.inf
    R = len(a) - 1
    w = min(window, R)
    if w == 0 or a[R - w] == 0:
        return math.inf
    return 1.0 / (a[R] / a[R - w]) ** (1.0 / w)


@dataclass
class RPrimeReport:
    verdict: str  # InsideR' | Outside | Borderline
    patterns: dict[tuple[int, ...], dict] = field(default_factory=dict)
    note: str = ""


def pattern_sums(table: GrowthTable, q: Sequence[float], eps: Sequence[int]) -> list[float]:
    out = [0.0] * len(table.counts)
    for d, c in table.multidegree.items():
        n = sum(d)
        if n < len(out):
            term = float(c)
            for qc, e, x in zip(q, eps, d):
                term *= float(qc) ** (e * x)
            out[n] += term
    return out


def in_R_prime(q: ParameterQ, table: GrowthTable, margin: float = 0.05, window: int = 10) -> RPrimeReport:
    if table.finite:
        return RPrimeReport("InsideR'", {}, "finite: series entire")
    R = table.radius
    if R < window:
        raise ValueError(f"need at least {window} strata, got {R}")
    qs = [float(v) for v in q.values]
    patterns = {}
    inside = False
    all_out = True
    for eps in product((1, -1), repeat=len(qs)):
        b = pattern_sums(table, qs, eps)
        tail = b[R - window :]
        rho = (b[R] / b[R - window]) ** (1.0 / window) if b[R - window] > 0 else 0.0
        nondecreasing = all(y >= x * (1 - 1e-12) for x, y in zip(tail, tail[1:]))
        if rho < 1 - margin:
            status = "converges"
            inside = True
        elif rho > 1 + margin or (abs(rho - 1) <= margin and nondecreasing):
            status = "diverges"
        else:
            status = "borderline"
        if status != "diverges":
            all_out = False
        patterns[eps] = {"root_test": rho, "status": status}
    if inside:
        verdict = "InsideR'"
    elif all_out:
        verdict = "Outside"
    else:
        verdict = "Borderline"
    return RPrimeReport(verdict, patterns)
