"""
Weighted Coxeter systems: validation, the word problem, enumeration of the
group (or of a ball in it), Bruhat order, parabolic subgroups and cosets.

Generators are addressed by their position ``0..n-1`` in the input order;
elements of an enumerated group are addressed by their index in the table,
with the identity at index 0.

>>> t = enumerate_group(named_system("B2", (1, 2)))
>>> len(t), t.words[t.longest()], t.weight[t.longest()]
(8, (0, 1, 0, 1), 6)
>>> canonical(t.system, (1, 0, 1, 0))
(0, 1, 0, 1)
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    BadMatrix, BadWeights, BallExceeded, CapExceeded, ClassTooLarge,
    ConfigError, InfiniteGroup, InfiniteParabolic,
)

__all__ = [
    "CoxeterSystem", "GroupTable", "Reflection", "WordStore",
    "validate", "named_system", "braid_class", "is_reduced", "canonical",
    "enumerate_group", "reflections", "eta", "bruhat_leq", "coset_min",
    "coset_max", "longest_element", "parabolic_table", "parabolic_embedding",
    "dihedral_element",
]

INF = 0  # encoding of m = infinity, as in the input format
DEFAULT_CLASS_CAP = 200_000
DEFAULT_ELEMENT_CAP = 100_000

Word = tuple[int, ...]


@dataclass(frozen=True)
class CoxeterSystem:
    generators: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]  # 0 encodes infinity
    weights: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.generators)

    def bond(self, s: int, t: int) -> int | None:
        """m(s, t), or None when infinite."""
        m = self.matrix[s][t]
        return None if m == INF else m

    def is_split(self) -> bool:
        return all(w == 1 for w in self.weights)

    def restrict(self, subset: Sequence[int]) -> CoxeterSystem:
        idx = list(subset)
        return CoxeterSystem(
            tuple(self.generators[i] for i in idx),
            tuple(tuple(self.matrix[i][j] for j in idx) for i in idx),
            tuple(self.weights[i] for i in idx),
        )


def validate(matrix: Sequence[Sequence[int]], weights: Sequence[int],
             generators: Sequence[str] | None = None) -> CoxeterSystem:
    """Check the Coxeter-matrix and weight-function axioms; 0 means infinity."""
    n = len(matrix)
    if n == 0:
        raise BadMatrix("empty matrix")
    if any(len(row) != n for row in matrix):
        raise BadMatrix("matrix is not square")
    for i in range(n):
        if matrix[i][i] != 1:
            raise BadMatrix(f"diagonal entry ({i},{i}) must be 1")
        for j in range(n):
            a = matrix[i][j]
            if not isinstance(a, int) or isinstance(a, bool):
                raise BadMatrix(f"entry ({i},{j}) is not an integer")
            if a != matrix[j][i]:
                raise BadMatrix(f"matrix not symmetric at ({i},{j})")
            if i != j and a != INF and a < 2:
                raise BadMatrix(f"off-diagonal entry ({i},{j}) = {a} must be >= 2 or 0 (infinity)")
    if len(weights) != n:
        raise BadWeights(f"expected {n} weights, got {len(weights)}")
    for i, w in enumerate(weights):
        if not isinstance(w, int) or isinstance(w, bool) or w <= 0:
            raise BadWeights(f"weight of generator {i} must be a positive integer")
    for i in range(n):
        for j in range(i + 1, n):
            m = matrix[i][j]
            if m != INF and m % 2 == 1 and weights[i] != weights[j]:
                raise BadWeights(
                    f"generators {i} and {j} have odd bond {m} but weights {weights[i]} != {weights[j]}")
    if generators is None:
        generators = [str(i + 1) for i in range(n)]
    if len(generators) != n or len(set(generators)) != n:
        raise BadMatrix("generator names must be distinct, one per row")
    return CoxeterSystem(tuple(generators), tuple(tuple(r) for r in matrix), tuple(weights))


# -- named types

def _chain(bonds: Sequence[int]) -> list[list[int]]:
    n = len(bonds) + 1
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i, b in enumerate(bonds):
        m[i][i + 1] = m[i + 1][i] = b
    return m


def _irreducible(name: str) -> list[list[int]]:
    key = name.replace("_", "").replace(" ", "").upper()
    if mt := re.fullmatch(r"I2\((\d+|INF|∞)\)|I2M?(\d+)|I2(INF|∞)", key):
        raw = next(g for g in mt.groups() if g)
        m = INF if raw in ("INF", "∞") else int(raw)
        return [[1, m], [m, 1]]
    mt = re.fullmatch(r"([A-HI])(\d+)", key)
    if not mt:
        raise ConfigError(f"unknown Coxeter type {name!r}")
    kind, n = mt.group(1), int(mt.group(2))
    if n < 1:
        raise ConfigError(f"rank must be positive in {name!r}")
    if kind == "A":
        return _chain([3] * (n - 1))
    if kind in ("B", "C") and n >= 2:
        return _chain([4] + [3] * (n - 2))
    if kind == "D" and n >= 4:
        m = _chain([3] * (n - 2) + [2])
        m[n - 3][n - 1] = m[n - 1][n - 3] = 3
        return m
    if kind == "E" and n in (6, 7, 8):
        # branch node attached to the third generator of an A_{n-1} chain
        m = _chain([3] * (n - 2) + [2])
        m[2][n - 1] = m[n - 1][2] = 3
        return m
    if kind == "F" and n == 4:
        return _chain([3, 4, 3])
    if kind == "G" and n == 2:
        return _chain([6])
    if kind == "H" and n in (3, 4):
        return _chain([5] + [3] * (n - 2))
    raise ConfigError(f"unknown Coxeter type {name!r}")


def named_system(name: str, weights: Sequence[int] | None = None) -> CoxeterSystem:
    """Expand a type shortcut such as ``A3``, ``B2``, ``I2(5)``, ``I2(inf)``, ``A1xA1``."""
    blocks = [_irreducible(part) for part in re.split(r"[x×]", name.replace("inf", "INF")) if part]
    n = sum(len(b) for b in blocks)
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, a in enumerate(row):
                m[off + i][off + j] = a
        off += len(b)
    return validate(m, list(weights) if weights is not None else [1] * n)


# -- word problem by braid closure

def _braid_neighbours(system: CoxeterSystem, w: Word) -> Iterable[Word]:
    n = len(w)
    for i in range(n - 1):
        s, t = w[i], w[i + 1]
        if s == t:
            continue
        m = system.matrix[s][t]
        if m == INF or i + m > n:
            continue
        if all(w[i + k] == (s if k % 2 == 0 else t) for k in range(2, m)):
            swapped = tuple(t if k % 2 == 0 else s for k in range(m))
            yield w[:i] + swapped + w[i + m:]


def _closure(system: CoxeterSystem, word: Word, cap: int, stop_on_square: bool) -> tuple[set[Word], bool]:
    seen = {word}
    queue = deque([word])
    while queue:
        w = queue.popleft()
        if stop_on_square and any(w[i] == w[i + 1] for i in range(len(w) - 1)):
            return seen, True
        for u in _braid_neighbours(system, w):
            if u not in seen:
                seen.add(u)
                if len(seen) > cap:
                    raise ClassTooLarge(f"braid class of {word} exceeds cap {cap}")
                queue.append(u)
    return seen, False


@dataclass
class WordStore:
    """Memo for the braid-closure word problem; one store per system."""
    system: CoxeterSystem
    cap: int = DEFAULT_CLASS_CAP
    canon: dict[Word, Word] = field(default_factory=dict)

    def braid_class(self, word: Sequence[int]) -> frozenset[Word]:
        cls, _ = _closure(self.system, tuple(word), self.cap, stop_on_square=False)
        return frozenset(cls)

    def is_reduced(self, word: Sequence[int]) -> bool:
        w = tuple(word)
        if w in self.canon:
            return True
        _, square = _closure(self.system, w, self.cap, stop_on_square=True)
        return not square

    def _reduced_canonical(self, w: Word) -> tuple[Word, frozenset[Word]]:
        if w in self.canon:
            c = self.canon[w]
            return c, frozenset()
        cls = self.braid_class(w)
        c = min(cls)
        for u in cls:
            self.canon[u] = c
        return c, cls

    def canonical(self, word: Sequence[int]) -> Word:
        """Letter-by-letter: append, or cancel against a braid-equivalent form ending in it."""
        cur: Word = ()
        for s in word:
            if not 0 <= s < self.system.rank:
                raise ConfigError(f"letter {s} is not a generator index")
            cand = cur + (s,)
            if cand in self.canon:
                cur = self.canon[cand]
                continue
            cls = self.braid_class(cur)
            ending = [u for u in cls if u[-1] == s] if cur else []
            if ending:
                cur, _ = self._reduced_canonical(min(ending)[:-1])
            else:
                cur, _ = self._reduced_canonical(cand)
        return cur


def braid_class(system: CoxeterSystem, word: Sequence[int], cap: int = DEFAULT_CLASS_CAP) -> frozenset[Word]:
    return WordStore(system, cap).braid_class(word)


def is_reduced(system: CoxeterSystem, word: Sequence[int], cap: int = DEFAULT_CLASS_CAP) -> bool:
    """Reduced iff no braid-equivalent word has two equal adjacent letters."""
    return WordStore(system, cap).is_reduced(word)


def canonical(system: CoxeterSystem, word: Sequence[int], store: WordStore | None = None) -> Word:
    """ShortLex-least reduced word of the element represented by ``word``."""
    return (store or WordStore(system)).canonical(word)


# -- enumeration

@dataclass
class GroupTable:
    system: CoxeterSystem
    words: list[Word]
    index: dict[Word, int]
    length: list[int]
    weight: list[int]                 # L(w)
    left: list[list[int]]             # left[w][s] = index of s*w, -1 outside the ball
    right: list[list[int]]            # right[w][s] = index of w*s
    ldesc: list[frozenset[int]]
    rdesc: list[frozenset[int]]
    inverse: list[int]
    finite: bool
    radius: int | None                # None when the table is the complete group

    def __len__(self) -> int:
        return len(self.words)

    @property
    def complete(self) -> bool:
        return self.radius is None

    def lmul(self, s: int, w: int) -> int:
        x = self.left[w][s]
        if x < 0:
            raise BallExceeded(f"s{s + 1} * {self.name(w)} leaves the ball of radius {self.radius}")
        return x

    def rmul(self, w: int, s: int) -> int:
        x = self.right[w][s]
        if x < 0:
            raise BallExceeded(f"{self.name(w)} * s{s + 1} leaves the ball of radius {self.radius}")
        return x

    def mul(self, x: int, y: int) -> int:
        for s in reversed(self.words[x]):
            y = self.lmul(s, y)
        return y

    def element(self, word: Sequence[int]) -> int:
        """Index of the product of ``word`` (any word, reduced or not)."""
        w = 0
        for s in word:
            w = self.rmul(w, s)
        return w

    def sgn(self, w: int) -> int:
        return -1 if self.length[w] % 2 else 1

    def longest(self) -> int:
        if not self.finite:
            raise InfiniteGroup("no longest element in an infinite group")
        return max(range(len(self)), key=self.length.__getitem__)

    def name(self, w: int) -> str:
        gens = self.system.generators
        if not self.words[w]:
            return "e"
        sep = "" if all(len(g) == 1 for g in gens) else "."
        return sep.join(gens[s] for s in self.words[w])

    def by_length_desc(self, elems: Iterable[int]) -> list[int]:
        return sorted(elems, key=lambda w: (-self.length[w], w))

    def lower_interval(self, w: int) -> list[int]:
        return sorted(bruhat_lower(self)[w])


def _left_string(table_left, ldesc, u: int, a: int, b: int, steps: int) -> int | None:
    """Walk down u by a, b, a, ... for ``steps`` steps; None unless each is a descent."""
    cur, letters = u, (a, b)
    for k in range(steps):
        c = letters[k % 2]
        if c not in ldesc[cur]:
            return None
        cur = table_left[cur][c]
    return cur


def enumerate_group(system: CoxeterSystem, radius: int | None = None,
                    cap: int = DEFAULT_ELEMENT_CAP) -> GroupTable:
    """
    Level-by-level BFS with left multiplication. A new element x = s*u has a
    second left descent t exactly when u begins with an alternating t,s,...
    string of length m(s,t)-1; the ShortLex word of x is its least left
    descent followed by the word of the corresponding shorter element.
    """
    n = system.rank
    words: list[Word] = [()]
    index: dict[Word, int] = {(): 0}
    length = [0]
    left: list[list[int]] = [[-1] * n]
    ldesc: list[frozenset[int]] = [frozenset()]
    level = [0]
    k = 0
    closed = False
    while True:
        if radius is not None and k >= radius:
            break
        pending: dict[Word, dict[int, int]] = {}
        ups: list[tuple[int, int, Word]] = []
        for u in level:
            for s in range(n):
                if s in ldesc[u]:
                    continue
                # x = s*u; collect left descents of x and the elements t*x
                down = {s: u}
                for t in range(n):
                    if t == s:
                        continue
                    m = system.matrix[s][t]
                    if m == INF:
                        continue
                    y = _left_string(left, ldesc, u, t, s, m - 1)
                    if y is None:
                        continue
                    # t*x = (s t s ... , m-1 letters) * y
                    cur = y
                    for j in range(m - 1):
                        c = s if (m - 2 - j) % 2 == 0 else t
                        cur = left[cur][c]
                    down[t] = cur
                first = min(down)
                key = (first,) + words[down[first]]
                pending.setdefault(key, down)
                ups.append((u, s, key))
        if not pending:
            closed = True
            break
        base = len(words)
        for key in sorted(pending):
            index[key] = len(words)
            words.append(key)
            length.append(k + 1)
            left.append([-1] * n)
            ldesc.append(frozenset(pending[key]))
        for key, down in pending.items():
            x = index[key]
            for t, y in down.items():
                left[x][t] = y
                left[y][t] = x
        for u, s, key in ups:
            assert left[u][s] == index[key]
        if len(words) > cap:
            raise CapExceeded(f"group has more than {cap} elements (radius {radius})")
        level = list(range(base, len(words)))
        k += 1
    size = len(words)
    inverse = [0] * size
    for w in range(1, size):
        cur = 0
        for s in words[w]:
            cur = left[cur][s]
        inverse[w] = cur
    # w*s = (s * w^-1)^-1
    right = [[-1] * n for _ in range(size)]
    for w in range(size):
        for s in range(n):
            x = left[inverse[w]][s]
            if x >= 0:
                right[w][s] = inverse[x]
    rdesc = [ldesc[inverse[w]] for w in range(size)]
    weight = [sum(system.weights[s] for s in words[w]) for w in range(size)]
    return GroupTable(system, words, index, length, weight, left, right, ldesc, rdesc,
                      inverse, finite=closed, radius=None if closed else radius)


# -- reflections

@dataclass(frozen=True)
class Reflection:
    element: int
    witness: tuple[int, int]  # (w, s) with t = w s w^-1


def reflections(table: GroupTable) -> list[Reflection]:
    if not table.complete:
        raise InfiniteGroup("reflections need a complete finite table")
    found: dict[int, Reflection] = {}
    for w in range(len(table)):
        for s in range(table.system.rank):
            t = table.mul(table.mul(w, table.lmul(s, 0)), table.inverse[w])
            if t not in found:
                found[t] = Reflection(t, (w, s))
    return [found[t] for t in sorted(found)]


def prefix_reflections(table: GroupTable, w: int) -> list[int]:
    """s1, s1 s2 s1, s1 s2 s3 s2 s1, ... for the canonical word of w."""
    out = []
    prefix = 0
    for s in table.words[w]:
        out.append(table.mul(table.rmul(prefix, s), table.inverse[prefix]))
        prefix = table.rmul(prefix, s)
    return out


def eta(table: GroupTable, w: int, t: int) -> int:
    """The reflection cocycle: -1 iff t is a prefix reflection of w."""
    return -1 if t in prefix_reflections(table, w) else 1


# -- Bruhat order

def bruhat_lower(table: GroupTable) -> list[frozenset[int]]:
    """For each w the set {y : y <= w}; cached on the table."""
    cached = getattr(table, "_bruhat_lower", None)
    if cached is not None:
        return cached
    below: list[frozenset[int]] = [frozenset()] * len(table)
    below[0] = frozenset({0})
    for w in sorted(range(1, len(table)), key=table.length.__getitem__):
        s = table.words[w][0]
        sw = table.left[w][s]
        prev = below[sw]
        # {y <= w} = {y <= sw} union s*{y <= sw}; all these lie in the ball
        below[w] = prev | {table.left[y][s] for y in prev}
    table._bruhat_lower = below  # type: ignore[attr-defined]
    return below


def bruhat_leq(table: GroupTable, y: int, w: int) -> bool:
    """Descent recursion: for sw < w, y <= w iff (sy <= sw if sy < y else y <= sw)."""
    while True:
        if y == 0:
            return True
        if table.length[y] > table.length[w]:
            return False
        if table.length[y] == table.length[w]:
            return y == w
        s = table.words[w][0]
        w = table.left[w][s]
        if s in table.ldesc[y]:
            y = table.left[y][s]


# -- cosets and parabolics

def coset_min(table: GroupTable, w: int, subset: Iterable[int]) -> int:
    """Shortest element of W_I w."""
    I = set(subset)
    while True:
        hit = next((s for s in sorted(I) if s in table.ldesc[w]), None)
        if hit is None:
            return w
        w = table.left[w][hit]


def coset_max(table: GroupTable, w: int, subset: Iterable[int]) -> int:
    """Longest element of W_I w; needs W_I finite."""
    I = sorted(set(subset))
    sub = parabolic_table(table, I)
    if not sub.finite:
        raise InfiniteParabolic(f"parabolic subgroup on {I} is infinite")
    while True:
        hit = next((s for s in I if s not in table.ldesc[w]), None)
        if hit is None:
            return w
        w = table.lmul(hit, w)


def longest_element(table: GroupTable) -> tuple[int, dict[int, int]]:
    """w0 and the permutation s -> w0 s w0 of the generators."""
    if not table.complete:
        raise InfiniteGroup("longest element needs a complete finite table")
    w0 = table.longest()
    perm = {}
    for s in range(table.system.rank):
        t = table.mul(table.mul(w0, table.lmul(s, 0)), w0)
        perm[s] = next(r for r in range(table.system.rank) if table.lmul(r, 0) == t)
    return w0, perm


def parabolic_table(table: GroupTable, subset: Iterable[int]) -> GroupTable:
    I = sorted(set(subset))
    radius = table.radius
    return enumerate_group(table.system.restrict(I), radius=radius)


def parabolic_embedding(table: GroupTable, sub: GroupTable, subset: Iterable[int]) -> list[int]:
    """Index in ``table`` of each element of the parabolic table ``sub``."""
    I = sorted(set(subset))
    return [table.element([I[s] for s in word]) for word in sub.words]


def dihedral_element(table: GroupTable, first: int, k: int) -> int:
    """a_k: the alternating product of k generators starting with ``first`` (0 or 1)."""
    other = 1 - first
    return table.element([first if i % 2 == 0 else other for i in range(k)])


def weight_of(system: CoxeterSystem, word: Sequence[int]) -> int:
    return sum(system.weights[s] for s in word)


def is_finite_type(system: CoxeterSystem, cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    try:
        return enumerate_group(system, cap=cap).finite
    except CapExceeded:
        return False
