"""Pair colorings of element sequences and finite monochromatic extraction."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

from .order import is_chain
from .sgcore import CayleyTable, ElementSet


class ZChainPremiseError(ValueError):
    """The input sequence does not satisfy ``e_n e_m = e_n`` for all n < m."""

    def __init__(self, n: int, m: int, product: int):
        self.pair = (n, m)
        self.product = product
        super().__init__(f"premise fails at pair ({n}, {m}): e_n e_m = {product} != e_n")


class ZChainConclusionError(AssertionError):
    """A step of the chain computation failed even though the premise held."""


@dataclass(frozen=True)
class PairColoring:
    """Colors of the pairs ``n < m`` of ``range(item_count)``.

    ``rows[n]`` lists the colors of ``(n, n+1), ..., (n, item_count-1)``.
    """

    item_count: int
    palette_size: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_function(cls, item_count: int, palette_size: int, color: Callable[[int, int], int]):
        rows = []
        for n in range(item_count):
            row = tuple(color(n, m) for m in range(n + 1, item_count))
            for c in row:
                if not 0 <= c < palette_size:
                    raise ValueError(f"color {c} outside palette of size {palette_size}")
            rows.append(row)
        return cls(item_count, palette_size, tuple(rows))

    def color(self, n: int, m: int) -> int:
        if not 0 <= n < m < self.item_count:
            raise IndexError(f"pair ({n}, {m}) is not n < m < {self.item_count}")
        return self.rows[n][m - n - 1]

    def pairs(self):
        for n, m in combinations(range(self.item_count), 2):
            yield n, m, self.rows[n][m - n - 1]

    def is_monochromatic(self, indices: Sequence[int], color: int | None = None) -> bool:
        idx = sorted(indices)
        seen = {self.color(n, m) for n, m in combinations(idx, 2)}
        if color is None:
            return len(seen) <= 1
        return seen <= {color}


def _distinct(xs: Sequence[int]) -> list[int]:
    xs = list(xs)
    if len(set(xs)) != len(xs):
        raise ValueError("elements must be pairwise distinct")
    return xs


def chi5_color(table: CayleyTable, a: int, b: int) -> int:
    """Color of the pair (a, b) with a earlier in the sequence; first match wins."""
    t = table.rows
    ab, ba = t[a][b], t[b][a]
    if ab == a:
        return 0
    if ba == a:
        return 1
    if ab == b:
        return 2
    if ba == b:
        return 3
    return 4


def chi5(table: CayleyTable, xs: Sequence[int]) -> PairColoring:
    xs = _distinct(xs)
    return PairColoring.from_function(len(xs), 5, lambda n, m: chi5_color(table, xs[n], xs[m]))


def chi6_cases(table: CayleyTable, a: int, b: int) -> list[int]:
    """Every one of the six idempotent-pair cases that holds for (a, b).

    The cases are exclusive and exhaustive, so this always has length one;
    it is returned as a list so callers can assert that.
    """
    t = table.rows
    ab, ba = t[a][b], t[b][a]
    ab_in, ba_in = ab in (a, b), ba in (a, b)
    holds = [
        ab_in and ba_in,
        ab == a and not ba_in,
        ab == b and not ba_in,
        not ab_in and ba == a,
        not ab_in and ba == b,
        not ab_in and not ba_in,
    ]
    return [c for c, h in enumerate(holds) if h]


def chi6_color(table: CayleyTable, a: int, b: int) -> int:
    cases = chi6_cases(table, a, b)
    if len(cases) != 1:
        raise AssertionError(f"pair ({a}, {b}) matches cases {cases}, expected exactly one")
    return cases[0]


def chi6(table: CayleyTable, es: Sequence[int]) -> PairColoring:
    es = _distinct(es)
    t = table.rows
    for e in es:
        if t[e][e] != e:
            raise ValueError(f"element {e} is not idempotent")
    return PairColoring.from_function(len(es), 6, lambda n, m: chi6_color(table, es[n], es[m]))


@dataclass(frozen=True)
class Monochromatic:
    color: int
    indices: tuple[int, ...]
    guarantee: int  # size the pivot chain certifies by pigeonhole
    pivots: tuple[tuple[int, int | None], ...]  # (index, color toward later pivots)


def greedy_monochromatic(coloring: PairColoring) -> Monochromatic:
    """Pivot-and-refine extraction of a monochromatic index set.

    Take the least remaining index as pivot, keep the largest class of
    remaining indices by color toward the pivot (ties: smaller color), and
    repeat. Every pivot then sees all later pivots in one color, so the
    pivots sharing the most frequent color, plus the final pivot, form a
    monochromatic set.
    """
    n_items = coloring.item_count
    if n_items < 1:
        raise ValueError("need at least one item")
    remaining = list(range(n_items))
    pivots: list[tuple[int, int | None]] = []
    while remaining:
        p, rest = remaining[0], remaining[1:]
        if not rest:
            pivots.append((p, None))
            break
        classes: dict[int, list[int]] = {}
        for q in rest:
            classes.setdefault(coloring.color(p, q), []).append(q)
        c = min(classes, key=lambda k: (-len(classes[k]), k))
        pivots.append((p, c))
        remaining = classes[c]

    colored = [c for _, c in pivots if c is not None]
    if not colored:
        return Monochromatic(0, (pivots[0][0],), 1, tuple(pivots))
    counts = {c: colored.count(c) for c in set(colored)}
    color = min(counts, key=lambda k: (-counts[k], k))
    chosen = tuple(p for p, c in pivots if c == color or c is None)
    guarantee = -(-len(colored) // coloring.palette_size) + 1
    return Monochromatic(color, chosen, guarantee, tuple(pivots))


def exhaustive_monochromatic(coloring: PairColoring) -> int:
    """Size of the largest monochromatic index set, by brute force (small N)."""
    n = coloring.item_count
    if n <= 1:
        return n
    best = 1
    for mask in range(1, 1 << n):
        size = mask.bit_count()
        if size <= best:
            continue
        idx = [i for i in range(n) if mask >> i & 1]
        if coloring.is_monochromatic(idx):
            best = size
    return best


def replay_zchain(table: CayleyTable, es: Sequence[int], k: int) -> ElementSet:
    """Build ``Z_k = {e_n e_k : n > k}`` and replay why it is a chain.

    Requires ``e_n e_m = e_n`` for all n < m. Each step of
    ``(e_n e_k)(e_m e_k) = e_n (e_k e_m) e_k = e_n e_k e_k = e_n e_k`` is
    evaluated in the table.
    """
    es = _distinct(es)
    t = table.rows
    if not 0 <= k < len(es):
        raise IndexError(f"k={k} outside the sequence of length {len(es)}")
    for n, m in combinations(range(len(es)), 2):
        if t[es[n]][es[m]] != es[n]:
            raise ZChainPremiseError(n, m, t[es[n]][es[m]])

    ek = es[k]
    later = range(k + 1, len(es))
    for n in later:
        en = es[n]
        for m in later:
            em = es[m]
            lhs = t[t[en][ek]][t[em][ek]]
            regrouped = t[t[en][t[ek][em]]][ek]
            collapsed = t[t[en][ek]][ek]
            rhs = t[en][ek]
            if not lhs == regrouped == collapsed == rhs:
                raise ZChainConclusionError(
                    f"chain step fails for n={n}, m={m}, k={k}: "
                    f"{lhs}, {regrouped}, {collapsed}, {rhs} should coincide"
                )
    z = ElementSet.of(table.order, (t[es[n]][ek] for n in later))
    if not is_chain(table, z):
        raise ZChainConclusionError(f"Z_{k} = {z.to_list()} is not a chain")
    return z
