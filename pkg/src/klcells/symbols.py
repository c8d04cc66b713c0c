"""
Ranked multisets, two-row symbols and the combinatorics of admissible
involutions used to label simple modules and constructible families for the
type-B weights L(s_1) = ... = L(s_{n-1}) = a, L(s_n) = b.

Write b = a*r + b' with 0 <= b' < a.

>>> lam = from_bipartition((), (1, 1), 2, a=1, b=2)
>>> print(lam)
0 1 2 3
  1 2
>>> rank(lam), a_of_symbol(lam), f_of_symbol(lam)
(2, 6, 1)
>>> a_of_symbol(shift(lam))
6
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

import networkx as nx

from .errors import NotInFamily, NTooSmall, ParityError, TTooSmall, WrongResidue

__all__ = [
    "RankedMultiset", "Symbol", "AdmissibleInvolution",
    "rank", "shift", "bar_complement", "from_bipartition", "to_bipartition",
    "a_of_symbol", "f_of_symbol", "admissible_involutions", "s_iota",
    "involution_graph", "constructible_family", "multisets", "symbols_of_rank",
    "stable_size", "base_multiset", "base_symbol", "random_symbol", "flatten",
]


def _split(a: int, b: int) -> tuple[int, int]:
    if a <= 0 or b < 0:
        raise NotInFamily(f"need a > 0 and b >= 0, got a={a}, b={b}")
    return divmod(b, a)


def _rank_offset(a: int, b: int, n_rows: int) -> int:
    # entry sum of the rank-0 object at this N
    r, bp = _split(a, b)
    return a * n_rows * n_rows + n_rows * (b - a) + a * comb(r, 2) + bp * r


@dataclass(frozen=True)
class RankedMultiset:
    entries: tuple[int, ...]
    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))
        r, bp = _split(self.a, self.b)
        e, a = self.entries, self.a
        if (len(e) - r) % 2 or len(e) < r or (e and e[0] < 0):
            raise NotInFamily(f"{len(e)} entries do not fit 2N+r with r={r}")
        n_rows = (len(e) - r) // 2
        if bp == 0:
            counts = {x: e.count(x) for x in set(e)}
            if any(x % a for x in e):
                raise NotInFamily("entries must be divisible by a")
            if max(counts.values(), default=0) > 2 or len(counts) < n_rows + r:
                raise NotInFamily("entries repeat too often")
        else:
            if any(x == y for x, y in zip(e, e[1:])):
                raise NotInFamily("entries must be distinct when b' > 0")
            zero = sum(1 for x in e if x % a == 0)
            res = sum(1 for x in e if x % a == bp)
            if zero != n_rows or res != n_rows + r:
                raise NotInFamily("wrong residue counts")
        extra = sum(e) - _rank_offset(self.a, self.b, n_rows)
        if extra < 0 or extra % a:
            raise NotInFamily("entry sum is not that of a ranked multiset")

    @property
    def r(self) -> int:
        return self.b // self.a

    @property
    def n_rows(self) -> int:
        return (len(self.entries) - self.r) // 2

    @property
    def singles(self) -> tuple[int, ...]:
        return tuple(x for x in self.entries if self.entries.count(x) == 1)

    @property
    def doubles(self) -> tuple[int, ...]:
        return tuple(sorted({x for x in self.entries if self.entries.count(x) == 2}))


@dataclass(frozen=True, eq=False)
class Symbol:
    """
    Rows top (N+r entries, all = b' mod a) and bottom (N entries, divisible
    by a), each strictly increasing. Equality is up to shift.
    """
    top: tuple[int, ...]
    bottom: tuple[int, ...]
    a: int
    b: int

    def __post_init__(self):
        r, bp = _split(self.a, self.b)
        top, bot, a = tuple(self.top), tuple(self.bottom), self.a
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bot)
        if len(top) != len(bot) + r:
            raise NotInFamily(f"top row needs {len(bot) + r} entries")
        if any(x >= y for x, y in zip(top, top[1:])) or any(x >= y for x, y in zip(bot, bot[1:])):
            raise NotInFamily("rows must be strictly increasing")
        if any(x < 0 or x % a != bp for x in top) or any(x < 0 or x % a for x in bot):
            raise NotInFamily("row residues are wrong")
        extra = sum(top) + sum(bot) - _rank_offset(a, self.b, len(bot))
        if extra < 0 or extra % a:
            raise NotInFamily("row sums are not those of a symbol")

    @property
    def r(self) -> int:
        return self.b // self.a

    @property
    def bprime(self) -> int:
        return self.b % self.a

    @property
    def n_rows(self) -> int:
        return len(self.bottom)

    def normalized(self) -> Symbol:
        """Smallest-N representative of the shift class."""
        s = self
        while s.bottom and s.top[0] == s.bprime and s.bottom[0] == 0:
            s = Symbol(tuple(x - s.a for x in s.top[1:]), tuple(x - s.a for x in s.bottom[1:]), s.a, s.b)
        return s

    def _key(self):
        n = self.normalized()
        return n.top, n.bottom, n.a, n.b

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Symbol):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __str__(self) -> str:
        top = " ".join(map(str, self.top))
        bot = " ".join(map(str, self.bottom))
        return f"{top}\n  {bot}" if bot else top

    def as_json(self) -> dict:
        return {"top": list(self.top), "bottom": list(self.bottom), "a": self.a, "b": self.b}


def flatten(sym: Symbol) -> RankedMultiset:
    return RankedMultiset(sym.top + sym.bottom, sym.a, sym.b)


def rank(x: Symbol | RankedMultiset) -> int:
    """n from: entry sum = a n + a N^2 + N(b-a) + a C(r,2) + b' r."""
    m = flatten(x) if isinstance(x, Symbol) else x
    return (sum(m.entries) - _rank_offset(m.a, m.b, m.n_rows)) // m.a


def shift(x: Symbol | RankedMultiset) -> Symbol | RankedMultiset:
    """N -> N+1: prepend b' (top) and 0 (bottom), add a to every old entry."""
    a, bp = x.a, x.b % x.a
    if isinstance(x, Symbol):
        return Symbol((bp,) + tuple(v + a for v in x.top), (0,) + tuple(v + a for v in x.bottom), a, x.b)
    return RankedMultiset((0, bp) + tuple(v + a for v in x.entries), a, x.b)


def base_multiset(a: int, b: int, n_rows: int) -> RankedMultiset:
    """The rank-0 multiset {0, a, ..., (N-1)a, b', a+b', ..., (N+r-1)a+b'}."""
    r, bp = _split(a, b)
    return RankedMultiset(tuple(a * i for i in range(n_rows)) + tuple(a * i + bp for i in range(n_rows + r)), a, b)


def base_symbol(a: int, b: int, n_rows: int) -> Symbol:
    r, bp = _split(a, b)
    return Symbol(tuple(a * i + bp for i in range(n_rows + r)), tuple(a * i for i in range(n_rows)), a, b)


def bar_complement(x: Symbol, t: int) -> Symbol:
    """
    Top row: {b', a+b', ..., ta+b'} minus {at+b'-mu_j};
    bottom row: {0, a, ..., ta} minus {at+b'-lambda_i}. Lands at N' = t+1-N-r.
    """
    a, bp = x.a, x.bprime
    ceiling = a * t + bp
    top_pool = {a * k + bp for k in range(t + 1)}
    bot_pool = {a * k for k in range(t + 1)}
    from_bottom = {ceiling - m for m in x.bottom}
    from_top = {ceiling - l for l in x.top}
    if not from_bottom <= top_pool or not from_top <= bot_pool:
        raise TTooSmall(f"t={t} is too small for this symbol")
    return Symbol(tuple(sorted(top_pool - from_bottom)), tuple(sorted(bot_pool - from_top)), a, x.b)


def from_bipartition(alpha: Sequence[int], beta: Sequence[int], n_rows: int, a: int, b: int) -> Symbol:
    """lambda_i = a(alpha_{N+r-i+1} + i - 1) + b', mu_j = a(beta_{N-j+1} + j - 1)."""
    r, bp = _split(a, b)
    al = sorted((p for p in alpha if p), reverse=True)
    be = sorted((p for p in beta if p), reverse=True)
    if len(al) > n_rows + r or len(be) > n_rows:
        raise NTooSmall(f"N={n_rows} is too small for these partitions")
    part = lambda seq, k: seq[k - 1] if k <= len(seq) else 0
    top = tuple(a * (part(al, n_rows + r - i + 1) + i - 1) + bp for i in range(1, n_rows + r + 1))
    bot = tuple(a * (part(be, n_rows - j + 1) + j - 1) for j in range(1, n_rows + 1))
    return Symbol(top, bot, a, b)


def to_bipartition(sym: Symbol) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a, bp, n, r = sym.a, sym.bprime, sym.n_rows, sym.r
    al = [(sym.top[i - 1] - bp) // a - (i - 1) for i in range(1, n + r + 1)]
    be = [sym.bottom[j - 1] // a - (j - 1) for j in range(1, n + 1)]
    return tuple(p for p in reversed(al) if p), tuple(p for p in reversed(be) if p)


def a_of_symbol(sym: Symbol) -> int:
    """A_N - B_N, pairwise minima of the symbol minus those of the rank-0 symbol."""
    def pair_mins(top, bot):
        return (sum(min(l, m) for l in top for m in bot)
                + sum(min(x, y) for x, y in itertools.combinations(top, 2))
                + sum(min(x, y) for x, y in itertools.combinations(bot, 2)))

    base = base_symbol(sym.a, sym.b, sym.n_rows)
    return pair_mins(sym.top, sym.bottom) - pair_mins(base.top, base.bottom)


def f_of_symbol(sym: Symbol) -> int:
    """1 if b' > 0; otherwise 2^d where 2d + r is the number of singles."""
    if sym.bprime:
        return 1
    d, odd = divmod(len(flatten(sym).singles) - sym.r, 2)
    assert not odd and d >= 0
    return 2 ** d


# -- admissible involutions

@dataclass(frozen=True)
class AdmissibleInvolution:
    elements: tuple[int, ...]
    r: int
    pairs: tuple[tuple[int, int], ...]  # the 2-orbits, each (smaller, larger), sorted

    @property
    def fixed(self) -> tuple[int, ...]:
        moved = {z for p in self.pairs for z in p}
        return tuple(z for z in self.elements if z not in moved)

    def __call__(self, z: int) -> int:
        for x, y in self.pairs:
            if z == x:
                return y
            if z == y:
                return x
        return z


def _pairings(zs: tuple[int, ...], r: int) -> set[frozenset[tuple[int, int]]]:
    if len(zs) == r:
        return {frozenset()}
    out = set()
    for i in range(len(zs) - 1):
        rest = zs[:i] + zs[i + 2:]
        for sub in _pairings(rest, r):
            out.add(sub | {(zs[i], zs[i + 1])})
    return out


def admissible_involutions(elements: Sequence[int], r: int) -> list[AdmissibleInvolution]:
    """All r-admissible involutions of a finite ordered set, by consecutive-pair removal."""
    zs = tuple(sorted(elements))
    if len(set(zs)) != len(zs):
        raise ParityError("the underlying set has repeated elements")
    if not 0 <= r <= len(zs) or (len(zs) - r) % 2:
        raise ParityError(f"need 0 <= r <= {len(zs)} and r = |Z| mod 2, got r={r}")
    return sorted((AdmissibleInvolution(zs, r, tuple(sorted(p))) for p in _pairings(zs, r)), key=lambda i: i.pairs)


def s_iota(inv: AdmissibleInvolution) -> list[frozenset[int]]:
    """Subsets meeting every 2-orbit exactly once."""
    return [frozenset(choice) for choice in itertools.product(*inv.pairs)]


def involution_graph(elements: Sequence[int], r: int) -> nx.Graph:
    """Vertices: subsets of size (|Z|-r)/2; edges join two subsets lying in a common S_iota."""
    zs = tuple(sorted(elements))
    if (len(zs) - r) % 2 or not 0 <= r <= len(zs):
        raise ParityError(f"need 0 <= r <= {len(zs)} and r = |Z| mod 2, got r={r}")
    g = nx.Graph()
    g.add_nodes_from(frozenset(c) for c in itertools.combinations(zs, (len(zs) - r) // 2))
    for inv in admissible_involutions(zs, r):
        fam = s_iota(inv)
        g.add_edges_from((y, y2) for y, y2 in itertools.combinations(fam, 2))
    return g


def constructible_family(multiset: RankedMultiset, inv: AdmissibleInvolution) -> list[Symbol]:
    """[Lambda_Y] for Y in S_iota: top row Z - Y plus the doubles, bottom row Y plus the doubles."""
    if multiset.b % multiset.a:
        raise WrongResidue("b' > 0: each multiset carries a single symbol")
    singles = multiset.singles
    if tuple(sorted(inv.elements)) != singles or inv.r != multiset.r:
        raise NotInFamily("the involution is not on the singles of this multiset")
    doubles = set(multiset.doubles)
    out = []
    for y in s_iota(inv):
        top = tuple(sorted(doubles | (set(singles) - y)))
        bot = tuple(sorted(doubles | y))
        out.append(Symbol(top, bot, multiset.a, multiset.b))
    return out


# -- enumeration

def multisets(a: int, b: int, n: int, n_rows: int) -> list[RankedMultiset]:
    """All members of rank n with 2N+r entries, sorted by entries."""
    r, bp = _split(a, b)
    target = a * n + _rank_offset(a, b, n_rows)
    size = 2 * n_rows + r
    top_value = (n_rows + r + n) * a + bp
    out: list[RankedMultiset] = []
    if bp == 0:
        values = list(range(0, top_value + 1, a))

        def rec(i: int, left: int, remaining: int, acc: list[int]) -> None:
            if left == 0:
                if remaining == 0:
                    try:
                        out.append(RankedMultiset(tuple(acc), a, b))
                    except NotInFamily:
                        pass
                return
            if i == len(values) or remaining < values[i] * left:
                return
            for mult in (2, 1, 0):
                if mult <= left:
                    rec(i + 1, left - mult, remaining - mult * values[i], acc + [values[i]] * mult)

        rec(0, size, target, [])
    else:
        zeros = range(0, top_value + 1, a)
        res = range(bp, top_value + 1, a)
        for z in itertools.combinations(zeros, n_rows):
            rest = target - sum(z)
            for y in itertools.combinations(res, n_rows + r):
                if sum(y) == rest:
                    out.append(RankedMultiset(z + y, a, b))
    return sorted(out, key=lambda m: m.entries)


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def symbols_of_rank(a: int, b: int, n: int, n_rows: int | None = None) -> list[Symbol]:
    """One symbol per bipartition of n, all at a common N (default: large enough for all)."""
    r, _ = _split(a, b)
    if n < 0:
        raise NotInFamily(f"rank must be non-negative, got {n}")
    n_rows = n if n_rows is None else n_rows
    out = []
    for k in range(n + 1):
        for al in _partitions(k):
            for be in _partitions(n - k):
                if len(al) <= n_rows + r and len(be) <= n_rows:
                    out.append(from_bipartition(al, be, n_rows, a, b))
    return out


def stable_size(a: int, b: int, n: int) -> dict:
    """
    Sizes of the rank-n multiset sets for N = 0..n+1 and the smallest N from
    which the shift maps are bijections. For N >= n every member at N+1
    contains 0 and b', so the count at N = n is already the limit.
    """
    sizes = [len(multisets(a, b, n, k)) for k in range(n + 2)]
    limit = sizes[n]
    threshold = min(k for k in range(n + 1) if sizes[k] == limit)
    return {"sizes": sizes, "stable": limit, "threshold": threshold}


def random_symbol(rng: random.Random, a: int, b: int, max_rank: int) -> Symbol:
    n = rng.randint(0, max_rank)
    k = rng.randint(0, n)
    al = rng.choice(list(_partitions(k)))
    be = rng.choice(list(_partitions(n - k)))
    need = max(len(al) - b // a, len(be), 0)
    return from_bipartition(al, be, need + rng.randint(0, 3), a, b)
