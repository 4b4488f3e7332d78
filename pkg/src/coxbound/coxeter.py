"""Exact arithmetic in finite rank Coxeter groups.

Elements are stored as ShortLex-minimal reduced words over generator indices.
The word problem is solved combinatorially with braid moves: whether a letter
is a right descent of a reduced word is decided by peeling off the maximal
dihedral suffix for the pair (letter, last letter), which is a local form of
Tits' braid-move closure.  The floating point geometric representation is
kept only as an independent cross-check.
"""

from __future__ import annotations

import math
import re
import sys
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import numpy as np

INF = math.inf

Word = tuple[int, ...]

DEFAULT_MEM_CAP = 2_000_000

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))


class CoxeterMatrixError(ValueError):
    """Malformed or invalid Coxeter matrix input."""


class ResourceCapError(RuntimeError):
    """A ball enumeration exceeded its element cap."""

    def __init__(self, message: str, strata: list[int]):
        super().__init__(message)
        self.strata = strata


@dataclass(frozen=True)
class CoxeterMatrix:
    entries: tuple[tuple[float, ...], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        n = len(self.entries)
        if n == 0:
            raise CoxeterMatrixError("rank must be positive")
        if len(self.labels) != n:
            raise CoxeterMatrixError(f"expected {n} labels, got {len(self.labels)}")
        if len(set(self.labels)) != n:
            raise CoxeterMatrixError("generator labels must be distinct")
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise CoxeterMatrixError(f"row {i + 1}: expected {n} entries, got {len(row)}")
            for j, m in enumerate(row):
                if i == j and m != 1:
                    raise CoxeterMatrixError(f"row {i + 1}, col {j + 1}: diagonal entry must be 1")
                if i != j:
                    if m != INF and (int(m) != m or m < 2):
                        raise CoxeterMatrixError(
                            f"row {i + 1}, col {j + 1}: off-diagonal entry must be >= 2 or inf, got {m}"
                        )
                    if self.entries[j][i] != m:
                        raise CoxeterMatrixError(f"row {i + 1}, col {j + 1}: matrix is not symmetric")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def m(self, s: int, t: int) -> float:
        return self.entries[s][t]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]], labels: Sequence[str] | None = None) -> "CoxeterMatrix":
        n = len(rows)
        entries = tuple(tuple(INF if (x == INF or x is None) else int(x) for x in row) for row in rows)
        return cls(entries, tuple(labels) if labels is not None else default_labels(n))

    def restrict(self, subset: Iterable[int]) -> "CoxeterMatrix":
        idx = sorted(subset)
        return CoxeterMatrix(
            tuple(tuple(self.entries[i][j] for j in idx) for i in idx),
            tuple(self.labels[i] for i in idx),
        )

    def is_right_angled(self) -> bool:
        n = self.rank
        return all(self.entries[i][j] in (2, INF) for i in range(n) for j in range(n) if i != j)

    def to_text(self) -> str:
        lines = [str(self.rank), "labels " + " ".join(self.labels)]
        for row in self.entries:
            lines.append(" ".join("inf" if m == INF else str(int(m)) for m in row))
        return "\n".join(lines) + "\n"


def default_labels(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:n])
    return tuple(f"g{i}" for i in range(n))


def parse_matrix(text: str) -> CoxeterMatrix:
    """Parse the plain-text Coxeter matrix format.

    Line 1 holds the rank ``n``, an optional ``labels ...`` line follows,
    then ``n`` rows of ``n`` tokens (positive integers or ``inf``).
    Everything after ``#`` on a line is ignored.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise CoxeterMatrixError("empty matrix file")
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise CoxeterMatrixError(f"line {lineno}: expected the rank as an integer, got {head!r}") from None
    if n <= 0:
        raise CoxeterMatrixError(f"line {lineno}: rank must be positive")
    rest = lines[1:]
    labels = None
    if rest and rest[0][1].split()[0] == "labels":
        lineno, body = rest[0]
        labels = body.split()[1:]
        if len(labels) != n:
            raise CoxeterMatrixError(f"line {lineno}: expected {n} labels, got {len(labels)}")
        rest = rest[1:]
    if len(rest) != n:
        raise CoxeterMatrixError(f"expected {n} matrix rows, got {len(rest)}")
    rows = []
    for i, (lineno, body) in enumerate(rest):
        tokens = body.split()
        if len(tokens) != n:
            raise CoxeterMatrixError(f"line {lineno} (row {i + 1}): expected {n} tokens, got {len(tokens)}")
        row = []
        for j, tok in enumerate(tokens):
            if tok.lower() in ("inf", "∞"):
                row.append(INF)
                continue
            try:
                val = int(tok)
            except ValueError:
                raise CoxeterMatrixError(
                    f"line {lineno}, row {i + 1}, col {j + 1}: malformed token {tok!r}"
                ) from None
            if val <= 0:
                raise CoxeterMatrixError(f"row {i + 1}, col {j + 1}: entries must be positive, got {val}")
            row.append(val)
        rows.append(row)
    return CoxeterMatrix.from_rows(rows, labels)


def load_matrix(path) -> CoxeterMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


@dataclass(frozen=True)
class Element:
    """A group element, held as its ShortLex-minimal reduced word."""

    word: Word = ()

    @property
    def length(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def sort_key(self):
        return (len(self.word), self.word)

    def __lt__(self, other: "Element") -> bool:
        return self.sort_key() < other.sort_key()


IDENTITY = Element(())


@dataclass(frozen=True)
class Finite:
    order: int


@dataclass(frozen=True)
class Infinite:
    reason: str = ""


@dataclass(frozen=True)
class Unknown:
    reason: str = ""


@dataclass(frozen=True)
class NoJoinWithin:
    cap: int


class JoinAmbiguityError(RuntimeError):
    """Two incomparable minimal upper bounds: the weak order lattice property was violated."""


def _alternating(k: int, last: int, other: int) -> Word:
    """Alternating word of length k in {last, other} ending with ``last``."""
    out = []
    x = last
    for _ in range(k):
        out.append(x)
        x = other if x == last else last
    return tuple(reversed(out))


class CoxeterGroup:
    """A Coxeter system (W, S) given by its Coxeter matrix."""

    def __init__(self, matrix: CoxeterMatrix):
        self.matrix = matrix
        self.rank = matrix.rank
        self.labels = matrix.labels
        self._m = matrix.entries
        self._desc_cache: dict[tuple[Word, int], bool] = {}
        self._drop_cache: dict[tuple[Word, int], Word] = {}
        self._balls: dict[int, "BallIndex"] = {}
        self._gen_mats = None

    def __repr__(self) -> str:
        return f"CoxeterGroup(rank={self.rank}, labels={''.join(self.labels)!r})"

    @property
    def generators(self) -> range:
        return range(self.rank)

    def m(self, s: int, t: int) -> float:
        return self._m[s][t]

    # -- parsing and printing ------------------------------------------------

    def parse_word(self, text: str) -> Word:
        text = text.strip()
        if text in ("", "e", "1"):
            return ()
        lookup = {lab: i for i, lab in enumerate(self.labels)}
        if re.search(r"[\s.,]", text) or not all(len(lab) == 1 for lab in self.labels):
            tokens = [tok for tok in re.split(r"[\s.,]+", text) if tok]
        else:
            tokens = list(text)
        try:
            return tuple(lookup[tok] for tok in tokens)
        except KeyError as exc:
            raise ValueError(f"unknown generator {exc.args[0]!r} in word {text!r}") from None

    def element(self, word: str | Sequence[int]) -> Element:
        if isinstance(word, str):
            word = self.parse_word(word)
        return self.normal_form(word)

    def format(self, x: Element | Sequence[int]) -> str:
        word = x.word if isinstance(x, Element) else tuple(x)
        if not word:
            return "e"
        sep = "" if all(len(lab) == 1 for lab in self.labels) else "."
        return sep.join(self.labels[i] for i in word)

    # -- word problem ----------------------------------------------------------

    def _is_right_descent(self, w: Word, s: int) -> bool:
        # w must be reduced
        if not w:
            return False
        t = w[-1]
        if t == s:
            return True
        m = self._m[s][t]
        if m == INF:
            return False
        key = (w, s)
        hit = self._desc_cache.get(key)
        if hit is not None:
            return hit
        # s is a descent iff the {s,t}-suffix of w is the longest element of W_{s,t}
        cur = w[:-1]
        a, b = s, t
        result = True
        for _ in range(int(m) - 1):
            if not self._is_right_descent(cur, a):
                result = False
                break
            cur = self._drop_descent(cur, a)
            a, b = b, a
        self._desc_cache[key] = result
        return result

    def _drop_descent(self, w: Word, s: int) -> Word:
        # reduced word for w*s when s is a right descent of w
        t = w[-1]
        if t == s:
            return w[:-1]
        key = (w, s)
        hit = self._drop_cache.get(key)
        if hit is not None:
            return hit
        m = int(self._m[s][t])
        cur = w[:-1]
        a = s
        for _ in range(m - 1):
            cur = self._drop_descent(cur, a)
            a = t if a == s else s
        out = cur + _alternating(m - 1, t, s)
        self._drop_cache[key] = out
        return out

    def right_multiply(self, w: Word, s: int) -> Word:
        """Reduced word for w*s, given a reduced word w."""
        if self._is_right_descent(w, s):
            return self._drop_descent(w, s)
        return w + (s,)

    def left_multiply(self, s: int, w: Word) -> Word:
        rev = tuple(reversed(w))
        return tuple(reversed(self.right_multiply(rev, s)))

    def reduce_word(self, word: Iterable[int]) -> Word:
        """A reduced word for the same element (not necessarily ShortLex-minimal)."""
        cur: Word = ()
        for x in word:
            if not 0 <= x < self.rank:
                raise ValueError(f"generator index {x} out of range")
            cur = self.right_multiply(cur, x)
        return cur

    def _normal_of_reduced(self, w: Word) -> Word:
        # ShortLex-minimal word: repeatedly strip the smallest left descent
        rev = tuple(reversed(w))
        out = []
        while rev:
            for s in range(self.rank):
                if self._is_right_descent(rev, s):
                    out.append(s)
                    rev = self._drop_descent(rev, s)
                    break
        return tuple(out)

    def normal_form(self, word: Iterable[int]) -> Element:
        return Element(self._normal_of_reduced(self.reduce_word(word)))

    def tits_reduce(self, word: Iterable[int], max_states: int = 200_000) -> Word:
        """Reduce by Tits' procedure: close under braid moves, delete any ``ss``, repeat.

        Exponential in the worst case; meant as an independent check on short words.
        """
        cur = tuple(word)
        while True:
            seen = {cur}
            frontier = [cur]
            shorter = None
            while frontier and shorter is None:
                nxt = []
                for w in frontier:
                    for i in range(len(w) - 1):
                        if w[i] == w[i + 1]:
                            shorter = w[:i] + w[i + 2 :]
                            break
                    if shorter is not None:
                        break
                    for v in self._braid_neighbours(w):
                        if v not in seen:
                            seen.add(v)
                            nxt.append(v)
                if len(seen) > max_states:
                    raise RuntimeError("braid-move closure too large")
                frontier = nxt
            if shorter is None:
                return cur
            cur = shorter

    def _braid_neighbours(self, w: Word):
        n = len(w)
        for i in range(n - 1):
            s, t = w[i], w[i + 1]
            m = self._m[s][t]
            if m == INF or i + m > n:
                continue
            m = int(m)
            block = w[i : i + m]
            if all(block[k] == (s if k % 2 == 0 else t) for k in range(m)):
                swapped = tuple(t if k % 2 == 0 else s for k in range(m))
                yield w[:i] + swapped + w[i + m :]

    # -- group operations ------------------------------------------------------

    def mul(self, u: Element, v: Element) -> Element:
        cur = u.word
        for x in v.word:
            cur = self.right_multiply(cur, x)
        return Element(self._normal_of_reduced(cur))

    def mul_many(self, *xs: Element) -> Element:
        cur: Word = ()
        for x in xs:
            for s in x.word:
                cur = self.right_multiply(cur, s)
        return Element(self._normal_of_reduced(cur))

    def inverse(self, u: Element) -> Element:
        return Element(self._normal_of_reduced(tuple(reversed(u.word))))

    def length(self, u: Element) -> int:
        return len(u.word)

    def gen(self, s: int) -> Element:
        return Element((s,))

    def power(self, u: Element, k: int) -> Element:
        if k < 0:
            u, k = self.inverse(u), -k
        cur: Word = ()
        for _ in range(k):
            for x in u.word:
                cur = self.right_multiply(cur, x)
        return Element(self._normal_of_reduced(cur))

    def descents(self, u: Element, side: str = "right") -> frozenset[int]:
        if side == "right":
            return frozenset(s for s in self.generators if self._is_right_descent(u.word, s))
        if side == "left":
            rev = tuple(reversed(u.word))
            return frozenset(s for s in self.generators if self._is_right_descent(rev, s))
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def is_prefix(self, u: Element, v: Element) -> bool:
        """Weak right order: u <=_R v iff |u^-1 v| = |v| - |u|."""
        if len(u) > len(v):
            return False
        cur = tuple(reversed(u.word))
        for x in v.word:
            cur = self.right_multiply(cur, x)
        return len(cur) == len(v) - len(u)

    def is_suffix(self, u: Element, v: Element) -> bool:
        """Weak left order: u <=_L v iff |v u^-1| = |v| - |u|."""
        if len(u) > len(v):
            return False
        cur = v.word
        for x in reversed(u.word):
            cur = self.right_multiply(cur, x)
        return len(cur) == len(v) - len(u)

    def meet(self, u: Element, v: Element) -> Element:
        m = IDENTITY
        while True:
            for s in self.generators:
                if self._is_right_descent(m.word, s):
                    continue
                ms = self.mul(m, self.gen(s))
                if self.is_prefix(ms, u) and self.is_prefix(ms, v):
                    m = ms
                    break
            else:
                return m

    def join(self, u: Element, v: Element, cap: int) -> Element | NoJoinWithin:
        if cap < max(len(u), len(v)):
            raise ValueError("cap must be at least max(|u|, |v|)")
        return self._join(u, v, cap)

    def _join(self, u: Element, v: Element, cap: int) -> Element | NoJoinWithin:
        if not u.word:
            return v
        if not v.word:
            return u
        common = self.descents(u, "left") & self.descents(v, "left")
        if common:
            s = min(common)
            sub = self._join(self.mul(self.gen(s), u), self.mul(self.gen(s), v), cap - 1)
            if isinstance(sub, NoJoinWithin):
                return NoJoinWithin(cap)
            return self.mul(self.gen(s), sub)
        ball = self.ball(cap)
        bounds = ball.upper_cone(u) & ball.upper_cone(v)
        if not bounds:
            return NoJoinWithin(cap)
        minimal = [w for w in bounds if not any(x != w and ball.below(x, w) for x in bounds)]
        if len(minimal) > 1:
            raise JoinAmbiguityError(
                f"incomparable minimal upper bounds for {self.format(u)}, {self.format(v)}: "
                + ", ".join(self.format(ball.elements[w]) for w in sorted(minimal))
            )
        return ball.elements[minimal[0]]

    # -- balls ----------------------------------------------------------------

    def ball(self, radius: int, mem_cap: int = DEFAULT_MEM_CAP) -> "BallIndex":
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        for r, b in self._balls.items():
            if r >= radius:
                return b if r == radius else b.restrict(radius)
        b = BallIndex.build(self, radius, mem_cap)
        self._balls[radius] = b
        return b

    def whole_group(self, mem_cap: int = DEFAULT_MEM_CAP) -> "BallIndex":
        """All elements of a finite group (raises ResourceCapError if the cap is reached first)."""
        return BallIndex.build(self, None, mem_cap)

    def strata_sizes(self, radius: int, mem_cap: int = DEFAULT_MEM_CAP) -> list[int]:
        """Growth coefficients a_0..a_radius without materialising words."""
        eng = CayleyBFS(self)
        eng.grow(radius, mem_cap)
        return eng.strata_sizes(radius)

    def is_finite_by_bfs(self, cap: int = 100_000) -> bool | None:
        """True if the Cayley ball closes within ``cap`` elements, None if the cap is hit."""
        eng = CayleyBFS(self)
        try:
            eng.grow(None, cap)
        except ResourceCapError:
            return None
        return True

    # -- geometric representation oracle ----------------------------------------

    def bilinear_form(self) -> np.ndarray:
        n = self.rank
        B = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                m = self._m[i][j]
                B[i, j] = -1.0 if m == INF else -math.cos(math.pi / m)
        return B

    def generator_matrices(self) -> list[np.ndarray]:
        if self._gen_mats is None:
            B = self.bilinear_form()
            mats = []
            for s in range(self.rank):
                M = np.eye(self.rank)
                # sigma_s(alpha_t) = alpha_t - 2 B(alpha_s, alpha_t) alpha_s, stored column-wise
                M[s, :] -= 2.0 * B[s, :]
                mats.append(M)
            self._gen_mats = mats
        return self._gen_mats

    def word_matrix(self, word: Iterable[int]) -> np.ndarray:
        mats = self.generator_matrices()
        M = np.eye(self.rank)
        for x in word:
            M = M @ mats[x]
        return M

    def geom_matrix(self, u: Element) -> np.ndarray:
        return self.word_matrix(u.word)

    def elements_equal_oracle(self, w1: Sequence[int], w2: Sequence[int], tol: float = 1e-8) -> bool:
        return bool(np.allclose(self.word_matrix(w1), self.word_matrix(w2), atol=tol, rtol=0.0))

    def element_order(self, u: Element, cap: int = 64) -> Finite | Infinite | Unknown:
        if cap < 1:
            raise ValueError("cap must be >= 1")
        cur: Word = ()
        for k in range(1, cap + 1):
            for x in u.word:
                cur = self.right_multiply(cur, x)
            if not cur:
                return Finite(k)
        M = self.geom_matrix(u)
        rho = max(abs(np.linalg.eigvals(M)))
        if rho > 1 + 1e-6:
            return Infinite(f"spectral radius {rho:.6g}")
        # unit-modulus spectrum: a nontrivial Jordan block shows up as linear norm growth
        K = 64
        PK = np.linalg.matrix_power(M, K)
        n1 = np.linalg.norm(PK, 2)
        n2 = np.linalg.norm(PK @ PK, 2)
        n4 = np.linalg.norm(np.linalg.matrix_power(PK, 4), 2)
        if n1 > 4 * self.rank and n2 > 1.8 * n1 and n4 > 3.5 * n1:
            return Infinite("unipotent growth of matrix powers")
        return Unknown(f"no relation u^k = e for k <= {cap}")

    # -- misc -----------------------------------------------------------------

    def random_word(self, rng, max_len: int) -> Word:
        n = int(rng.integers(0, max_len + 1))
        return tuple(int(x) for x in rng.integers(0, self.rank, size=n))

    def all_words(self, length: int) -> Iterable[Word]:
        return product(range(self.rank), repeat=length)


class CayleyBFS:
    """Stratum-by-stratum enumeration of the Cayley graph using integer tables.

    Each element carries its right descent set and, for every pair {s, t} with
    finite m_st, the length of its maximal suffix lying in W_{s,t}.  These
    determine the descents of w*s, and a new element is created only from its
    canonical predecessor (w*c, c) with c the smallest right descent; every
    other incoming edge is routed to it by a dihedral braid walk.
    """

    def __init__(self, group: CoxeterGroup):
        self.group = group
        n = group.rank
        self.n = n
        self.pairs = [(s, t) for s in range(n) for t in range(s + 1, n) if group.m(s, t) != INF]
        self.pidx = {}
        for p, (s, t) in enumerate(self.pairs):
            self.pidx[s, t] = p
            self.pidx[t, s] = p
        self.level = [0]
        self.nbr = [[-1] * n]
        self.desc = [0]
        self.suffix = [[0] * len(self.pairs)]
        self.strata = [[0]]
        self.closed = False

    @property
    def size(self) -> int:
        return len(self.level)

    def strata_sizes(self, radius: int) -> list[int]:
        sizes = [len(x) for x in self.strata[: radius + 1]]
        return sizes + [0] * (radius + 1 - len(sizes))

    def grow(self, radius: int | None, cap: int = DEFAULT_MEM_CAP) -> None:
        while not self.closed and (radius is None or len(self.strata) <= radius):
            self._next_stratum(cap)

    def _next_stratum(self, cap: int) -> None:
        g = self.group
        n = self.n
        m = g._m
        pidx = self.pidx
        level, nbr, desc, suffix = self.level, self.nbr, self.desc, self.suffix
        cur = self.strata[-1]
        depth = len(self.strata)
        created = {}
        deferred = []
        new = []
        for u in cur:
            du = desc[u]
            su = suffix[u]
            for s in range(n):
                if du >> s & 1:
                    continue
                D = 1 << s
                for t in range(n):
                    if t != s:
                        mst = m[s][t]
                        if mst != INF and su[pidx[s, t]] == mst - 1:
                            D |= 1 << t
                c = (D & -D).bit_length() - 1
                if c == s:
                    w = len(level)
                    if w >= cap:
                        sizes = [len(x) for x in self.strata] + [len(new)]
                        raise ResourceCapError(
                            f"ball enumeration exceeded {cap} elements at length {depth}", sizes
                        )
                    level.append(depth)
                    row = [-1] * n
                    row[s] = u
                    nbr.append(row)
                    desc.append(D)
                    suffix.append(None)
                    nbr[u][s] = w
                    created[u, s] = w
                    new.append(w)
                else:
                    deferred.append((u, s, c))
        for u, s, t in deferred:
            mst = int(m[s][t])
            y = u
            a = t
            for _ in range(mst - 1):
                y = nbr[y][a]
                a = s if a == t else t
            # climb along the alternating word of length m-1 ending in s
            a = s if (mst - 1) % 2 == 1 else t
            v = y
            for _ in range(mst - 1):
                v = nbr[v][a]
                a = s if a == t else t
            w = created[v, t]
            nbr[u][s] = w
            nbr[w][s] = u
        P = len(self.pairs)
        for w in new:
            dw = desc[w]
            row = [0] * P
            for p, (a, b) in enumerate(self.pairs):
                ina = dw >> a & 1
                inb = dw >> b & 1
                if ina and inb:
                    row[p] = int(m[a][b])
                elif ina:
                    row[p] = suffix[nbr[w][a]][p] + 1
                elif inb:
                    row[p] = suffix[nbr[w][b]][p] + 1
            suffix[w] = row
        if new:
            self.strata.append(new)
        else:
            self.closed = True


@dataclass
class BallIndex:
    """The ball of given radius in the Cayley graph, in ShortLex order."""

    group: CoxeterGroup
    radius: int
    elements: list[Element]
    index: dict[Element, int]
    adjacency: list[list[tuple[int, int | None]]]
    strata: list[list[int]]
    descents: list[int] = field(repr=False)
    _inverse: list[int] | None = field(default=None, repr=False)
    _cones: dict[int, frozenset[int]] = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, group: CoxeterGroup, radius: int | None, mem_cap: int = DEFAULT_MEM_CAP) -> "BallIndex":
        eng = CayleyBFS(group)
        eng.grow(radius, mem_cap)
        if radius is None:
            radius = len(eng.strata) - 1
        words: list[Word | None] = [None] * eng.size
        words[0] = ()
        for stratum in eng.strata[1:]:
            for w in stratum:
                best = None
                d = eng.desc[w]
                for t in range(group.rank):
                    if d >> t & 1:
                        cand = words[eng.nbr[w][t]] + (t,)
                        if best is None or cand < best:
                            best = cand
                words[w] = best
        order = sorted(range(eng.size), key=lambda i: (eng.level[i], words[i]))
        pos = [0] * eng.size
        for p, i in enumerate(order):
            pos[i] = p
        elements = [Element(words[i]) for i in order]
        index = {x: p for p, x in enumerate(elements)}
        adjacency = []
        descents = []
        for i in order:
            row = []
            for s in range(group.rank):
                j = eng.nbr[i][s]
                row.append((s, pos[j] if j >= 0 else None))
            adjacency.append(row)
            descents.append(eng.desc[i])
        strata = []
        start = 0
        for stratum in eng.strata[: radius + 1]:
            strata.append(list(range(start, start + len(stratum))))
            start += len(stratum)
        while len(strata) < radius + 1:
            strata.append([])
        return cls(group, radius, elements, index, adjacency, strata, descents)

    def restrict(self, radius: int) -> "BallIndex":
        keep = sum(len(s) for s in self.strata[: radius + 1])
        adjacency = [
            [(s, j if j is not None and j < keep else None) for s, j in row] for row in self.adjacency[:keep]
        ]
        elements = self.elements[:keep]
        return BallIndex(
            self.group,
            radius,
            elements,
            {x: p for p, x in enumerate(elements)},
            adjacency,
            [list(s) for s in self.strata[: radius + 1]],
            self.descents[:keep],
        )

    def __len__(self) -> int:
        return len(self.elements)

    def strata_sizes(self) -> list[int]:
        return [len(s) for s in self.strata]

    def right(self, i: int, s: int) -> int | None:
        return self.adjacency[i][s][1]

    def inverse_index(self, i: int) -> int:
        if self._inverse is None:
            g = self.group
            self._inverse = [self.index[g.inverse(x)] for x in self.elements]
        return self._inverse[i]

    def left(self, s: int, i: int) -> int | None:
        j = self.right(self.inverse_index(i), s)
        return None if j is None else self.inverse_index(j)

    def upper_cone(self, u: Element) -> frozenset[int]:
        """Positions of v in the ball with u <=_R v (climb along length-increasing edges)."""
        start = self.index[u]
        hit = self._cones.get(start)
        if hit is not None:
            return hit
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for i in frontier:
                for s, j in self.adjacency[i]:
                    if j is not None and j not in seen and not (self.descents[i] >> s & 1):
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        cone = frozenset(seen)
        self._cones[start] = cone
        return cone

    def below(self, i: int, j: int) -> bool:
        return j in self.upper_cone(self.elements[i])

    def as_graph(self):
        """The ball as a FiniteRootedGraph with vertex ids given by formatted words."""
        from .graph import FiniteRootedGraph

        names = [self.group.format(x) for x in self.elements]
        edges = set()
        for i, row in enumerate(self.adjacency):
            for _, j in row:
                if j is not None:
                    edges.add(frozenset((names[i], names[j])))
        return FiniteRootedGraph(tuple(names), frozenset(edges), names[0])
